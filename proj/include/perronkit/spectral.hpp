#pragma once

#include <span>
#include <vector>

#include "perronkit/partition.hpp"
#include "perronkit/tensor.hpp"

namespace perronkit {

struct PowerMethodConfig {
  /// Stop once alpha - beta <= tolerance.
  double tolerance = 1e-10;
  int max_iterations = 100000;
  /// Iterate on B + I instead of B. Guarantees convergence for weakly
  /// irreducible B; the reported radius has the shift removed.
  bool shift = true;
};

/// Collatz-Wielandt bounds: beta <= rho <= alpha.
struct Bracket {
  double alpha = 0.0;
  double beta = 0.0;
};

struct BlockSpectrum {
  double rho = 0.0;
  /// Positive, 1-norm one.
  Vector vector;
  int iterations = 0;
  double gap = 0.0;
  /// Bounds at every iterate, shift removed.
  std::vector<Bracket> trace;
};

/// Higher-order power method for a weakly irreducible tensor.
///
/// Starts from the uniform vector e/n and repeats
///   x <- (A x^{m-1})^{[1/(m-1)]} / || . ||_1
/// with A = B + I when shifting, until the Collatz-Wielandt bounds at the
/// current iterate agree to `tolerance`. Returns the midpoint of the final
/// bounds and the iterate that achieved them. One-dimensional tensors are
/// solved in closed form.
///
/// Throws NotConverged when the budget runs out and ZeroIterate when an
/// iterate loses positivity (only possible for reducible input without shift).
BlockSpectrum power_method(const NonnegativeTensor& tensor, const PowerMethodConfig& config = {});

/// max and min over i of (A x^{m-1})_i / x_i^{m-1}. Requires x > 0.
Bracket collatz_wielandt(const NonnegativeTensor& tensor, std::span<const double> x);

/// A e^{m-1} > 0.
bool is_strictly_nonnegative(const NonnegativeTensor& tensor);

/// || A x^{m-1} - lambda x^{[m-1]} ||_2
double eigen_residual(const NonnegativeTensor& tensor, std::span<const double> x, double lambda);

/// Canonical partition plus the spectrum of every block, in block order.
struct BlockAnalysis {
  CanonicalPartition partition;
  std::vector<BlockSpectrum> spectra;

  /// Largest block radius.
  double radius() const;
};

/// Solves the blocks on up to `threads` worker threads. The result does not
/// depend on the thread count.
BlockAnalysis analyze_blocks(const NonnegativeTensor& tensor, const PowerMethodConfig& config = {},
                             int threads = 1);

double spectral_radius(const NonnegativeTensor& tensor, const PowerMethodConfig& config = {});

/// rho(A) > 0, decided blockwise.
bool is_nontrivially_nonnegative(const NonnegativeTensor& tensor,
                                 const PowerMethodConfig& config = {});

}  // namespace perronkit
