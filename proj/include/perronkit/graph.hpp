#pragma once

#include <span>
#include <vector>

#include "perronkit/tensor.hpp"

namespace perronkit {

/// Dense row-major n x n matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {}
  SquareMatrix(int n, std::vector<double> row_major);

  int size() const noexcept { return n_; }
  double operator()(int i, int j) const { return data_[offset(i, j)]; }
  double& operator()(int i, int j) { return data_[offset(i, j)]; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t offset(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// m_{ij} = sum of a_{i i2...im} over tuples (i2,...,im) that contain j.
/// A tuple counts once for each distinct j it contains.
using MajorizationMatrix = SquareMatrix;

/// Strongly connected components listed so that every edge i -> j (m_ij > 0)
/// goes from an earlier block to the same or a later block. Each block is
/// sorted; ties between ready blocks go to the smallest contained index.
struct CondensationOrder {
  std::vector<std::vector<int>> blocks;
};

MajorizationMatrix majorization(const NonnegativeTensor& tensor);

/// The matrix of an order-2 tensor, a_{ij} at (i, j).
SquareMatrix to_matrix(const NonnegativeTensor& matrix_tensor);

/// The order-2 tensor of a matrix.
NonnegativeTensor from_matrix(const SquareMatrix& matrix);

SquareMatrix submatrix(const SquareMatrix& matrix, std::span<const int> indices);

CondensationOrder scc_condensation(const SquareMatrix& matrix);

/// Strong connectivity of the digraph i -> j iff m_ij > 0. A 1 x 1 matrix is
/// irreducible whatever its entry.
bool is_irreducible(const SquareMatrix& matrix);

bool is_weakly_irreducible(const NonnegativeTensor& tensor);

}  // namespace perronkit
