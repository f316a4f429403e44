#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "perronkit/error.hpp"
#include "perronkit/partition.hpp"
#include "perronkit/spectral.hpp"
#include "perronkit/tensor.hpp"

namespace perronkit {

struct FixedPointConfig {
  /// Initial scaling of the non-genuine block vectors.
  double gamma = 1e-3;
  /// Stop once || w_k - w_{k-1} ||_2 <= tolerance.
  double tolerance = 1e-10;
  int max_iterations = 100000;
  /// Relative tolerance for comparing block radii.
  double rho_equality_tol = 1e-6;
  /// On a monotonicity violation, retry with gamma / 10 up to this many times.
  int max_restarts = 6;
  PowerMethodConfig power{};
  /// Worker threads for the per-block spectra.
  int threads = 1;
  bool record_trace = false;
};

struct StronglyNonnegative {
  double lambda = 0.0;
};

/// The genuine blocks do not share one radius.
struct GenuineRadiiDiffer {
  double max = 0.0;
  double min = 0.0;
};

/// A non-genuine block reaches the common genuine radius.
struct NonGenuineTooLarge {
  int block = 0;  ///< position in the partition's block list
  double rho = 0.0;
  double lambda = 0.0;
};

using Outcome = std::variant<StronglyNonnegative, GenuineRadiiDiffer, NonGenuineTooLarge>;

struct Classification {
  Outcome outcome;
  CanonicalPartition partition;
  std::vector<BlockSpectrum> block_spectra;

  bool strongly_nonnegative() const {
    return std::holds_alternative<StronglyNonnegative>(outcome);
  }
  /// "strong", "genuine-mismatch" or "nongenuine-too-large".
  std::string_view status() const;
  /// Largest genuine-block radius.
  double lambda() const;
};

Classification classify(const NonnegativeTensor& tensor, const FixedPointConfig& config = {});

struct TraceRow {
  int iteration = 0;
  double residual = 0.0;
  double step = 0.0;
};

struct PerronResult {
  /// Positive eigenvector in original index order.
  Vector z;
  double lambda = 0.0;
  /// || A z^{m-1} - lambda z^{[m-1]} ||_2
  double residual = 0.0;
  int iterations = 0;
  /// No step decreased the iterate by more than the restart threshold.
  bool monotone = true;
  /// Largest componentwise decrease seen across accepted steps.
  double max_decrease = 0.0;
  /// Scaling actually used after restarts.
  double gamma = 0.0;
  int restarts = 0;
  std::vector<TraceRow> trace;
};

class NotStronglyNonnegative : public Error {
 public:
  explicit NotStronglyNonnegative(Classification classification);
  const Classification& classification() const noexcept { return classification_; }

 private:
  Classification classification_;
};

/// Decides strong nonnegativity and, when it holds, computes a positive
/// Perron vector.
///
/// Genuine blocks keep their unit 1-norm Perron vectors. The non-genuine
/// part starts at gamma times the block vectors and follows the monotone
/// fixed-point map until successive iterates agree to `tolerance`. A step
/// that decreases any component by more than 1e-12 restarts with gamma / 10.
///
/// Throws NotStronglyNonnegative, NotConverged or MonotonicityViolated.
PerronResult positive_perron_vector(const NonnegativeTensor& tensor,
                                    const FixedPointConfig& config = {});

/// Same, reusing an existing classification of `tensor`.
PerronResult positive_perron_vector(const NonnegativeTensor& tensor,
                                    const Classification& classification,
                                    const FixedPointConfig& config);

/// One fixed-point step: w = ((A z^{m-1})_R / lambda)^{[1/(m-1)]}, returned
/// for R = partition.nongenuine_indices() in that order.
Vector fixed_point_step(const NonnegativeTensor& tensor, const CanonicalPartition& partition,
                        std::span<const double> z, double lambda);

}  // namespace perronkit
