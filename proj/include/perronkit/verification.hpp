#pragma once

// Brute-force reference implementations. They share no code path with the
// sparse kernels they check and are meant for tests and self-verification,
// not for production use.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "perronkit/error.hpp"
#include "perronkit/graph.hpp"
#include "perronkit/random.hpp"
#include "perronkit/tensor.hpp"

namespace perronkit::verification {

/// Largest dense array (number of entries) the oracles will build.
inline constexpr std::size_t kMaxDenseEntries = 10'000'000;

/// Full n^m array, first index most significant.
class DenseTensorView {
 public:
  explicit DenseTensorView(const NonnegativeTensor& tensor);

  const TensorShape& shape() const noexcept { return shape_; }
  double operator()(std::span<const int> index) const;
  std::span<const double> data() const noexcept { return data_; }

 private:
  TensorShape shape_;
  std::vector<double> data_;
};

/// Nested-loop (A x^{m-1})_i over all n^{m-1} tail tuples.
Vector brute_force_apply(const DenseTensorView& tensor, std::span<const double> x);

/// Every tuple (i2, ..., im) in [n]^{m-1} containing j, in lexicographic order.
std::vector<std::vector<int>> enumerate_index_class(int j, const TensorShape& shape);

/// Majorization matrix summed directly over enumerate_index_class.
SquareMatrix majorization_by_enumeration(const DenseTensorView& tensor);

/// Classical Frobenius normal form analysis of a nonnegative matrix.
struct MatrixReference {
  double rho = 0.0;
  /// Irreducible classes, topologically ordered (edges go forward).
  std::vector<std::vector<int>> classes;
  std::vector<double> class_radii;
  /// A class is final when no edge leaves it.
  std::vector<bool> final_class;
  /// Every final class attains rho and every other class stays below it.
  bool strongly_nonnegative = false;
};

/// Classes from boolean transitive closure, radii from plain shifted power
/// iteration (10^5 steps or stagnation). Limited to n <= 50.
MatrixReference matrix_reference(const SquareMatrix& matrix, double rho_equality_tol = 1e-6);

/// Each of the n^m tuples is stored with probability `density`, value
/// uniform in (0, 1). With `dyadic`, values are multiples of 1/64 so that
/// sums are exact in any order.
NonnegativeTensor random_tensor(Rng& rng, const TensorShape& shape, double density,
                                bool dyadic = false);

/// Random sparse matrix; with `small_integers` the entries are 1 or 2,
/// which produces ties between class radii.
SquareMatrix random_matrix(Rng& rng, int n, double density, bool small_integers = false);

struct CheckResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;
};

struct SelfCheckReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Runs the oracle-equivalence suite on `instances` random cases per check.
SelfCheckReport run_self_check(std::uint64_t seed, int instances);

}  // namespace perronkit::verification
