#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace perronkit {

using Vector = std::vector<double>;

/// Order m (number of indices) and dimension n (range of each index).
struct TensorShape {
  int order = 2;
  int dim = 1;

  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

/// Throws std::invalid_argument unless order >= 2 and dim >= 1.
void validate(const TensorShape& shape);

/// A bijection on {0, ..., n-1}; `sigma(i)` is the image of i.
class IndexPermutation {
 public:
  IndexPermutation() = default;
  explicit IndexPermutation(std::vector<int> images);

  static IndexPermutation identity(int n);

  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(images_.size()); }
  std::span<const int> images() const { return images_; }
  IndexPermutation inverse() const;

  friend bool operator==(const IndexPermutation&, const IndexPermutation&) = default;

 private:
  std::vector<int> images_;
};

/// (sigma o tau)(i) = sigma(tau(i)).
IndexPermutation compose(const IndexPermutation& sigma, const IndexPermutation& tau);

/// One coordinate of a sparse tensor. Indices are 0-based here; the text
/// format and all user-facing messages are 1-based.
struct Entry {
  std::vector<int> index;
  double value = 0.0;
};

/// Sparse nonnegative tensor in coordinate form.
///
/// Entries are kept in lexicographic tuple order, zeros are dropped on
/// construction and duplicate tuples are rejected. Immutable once built.
class NonnegativeTensor {
 public:
  /// The zero tensor of the given shape.
  explicit NonnegativeTensor(TensorShape shape);
  NonnegativeTensor(TensorShape shape, std::vector<Entry> entries);

  const TensorShape& shape() const noexcept { return shape_; }
  int order() const noexcept { return shape_.order; }
  int dim() const noexcept { return shape_.dim; }
  std::size_t nnz() const noexcept { return values_.size(); }

  /// Index tuple of the k-th stored entry.
  std::span<const int> index(std::size_t k) const {
    return {indices_.data() + k * static_cast<std::size_t>(shape_.order),
            static_cast<std::size_t>(shape_.order)};
  }
  double value(std::size_t k) const { return values_[k]; }

  /// Value at a tuple; zero when not stored.
  double at(std::span<const int> index) const;

  std::vector<Entry> entries() const;

  friend bool operator==(const NonnegativeTensor&, const NonnegativeTensor&) = default;

 private:
  TensorShape shape_;
  std::vector<int> indices_;
  std::vector<double> values_;
};

/// (A x^{m-1})_i = sum over stored a_{i i2...im} of a * x_{i2} ... x_{im}.
Vector apply(const NonnegativeTensor& tensor, std::span<const double> x);

/// Keeps the entries whose indices all lie in `indices` (strictly increasing)
/// and renumbers them by position.
NonnegativeTensor principal_subtensor(const NonnegativeTensor& tensor,
                                      std::span<const int> indices);

NonnegativeTensor identity_tensor(TensorShape shape);

/// (sigma . A)_{i1...im} = a_{sigma(i1)...sigma(im)}.
NonnegativeTensor permute(const NonnegativeTensor& tensor, const IndexPermutation& sigma);

/// c * A for c >= 0.
NonnegativeTensor scale(const NonnegativeTensor& tensor, double factor);

/// x^{[p]}: each component raised to an integer power.
Vector elementwise_power(std::span<const double> x, int power);

double norm2(std::span<const double> x);

/// Integer power by repeated multiplication.
inline double ipow(double base, int exponent) {
  double result = 1.0;
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

}  // namespace perronkit
