#include "perronkit/perron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace perronkit {

namespace {

constexpr double kRestartThreshold = 1e-12;

void validate(const FixedPointConfig& config) {
  if (!(config.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(config.tolerance > 0.0)) throw std::invalid_argument("fixed-point tolerance must be positive");
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(config.rho_equality_tol > 0.0)) throw std::invalid_argument("rho_equality_tol must be positive");
  if (config.max_restarts < 0) throw std::invalid_argument("max_restarts must be nonnegative");
}

// w_R from a precomputed image g = A z^{m-1}.
Vector step_from_image(std::span<const double> image, std::span<const int> rows, double lambda,
                       int degree) {
  Vector w(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double scaled = image[static_cast<std::size_t>(rows[k])] / lambda;
    w[k] = degree == 1 ? scaled : std::pow(scaled, 1.0 / degree);
  }
  return w;
}

double residual_from_image(std::span<const double> image, std::span<const double> z,
                           double lambda, int degree) {
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double d = image[i] - lambda * ipow(z[i], degree);
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

std::string_view Classification::status() const {
  return std::visit(
      [](const auto& o) -> std::string_view {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, StronglyNonnegative>) return "strong";
        else if constexpr (std::is_same_v<T, GenuineRadiiDiffer>) return "genuine-mismatch";
        else return "nongenuine-too-large";
      },
      outcome);
}

double Classification::lambda() const {
  double best = 0.0;
  for (std::size_t j = static_cast<std::size_t>(partition.s); j < block_spectra.size(); ++j) {
    best = std::max(best, block_spectra[j].rho);
  }
  return best;
}

NotStronglyNonnegative::NotStronglyNonnegative(Classification classification)
    : Error("tensor is not strongly nonnegative (" + std::string(classification.status()) + ")"),
      classification_(std::move(classification)) {}

Classification classify(const NonnegativeTensor& tensor, const FixedPointConfig& config) {
  validate(config);
  BlockAnalysis analysis = analyze_blocks(tensor, config.power, config.threads);
  Classification result{StronglyNonnegative{}, std::move(analysis.partition),
                        std::move(analysis.spectra)};
  const auto s = static_cast<std::size_t>(result.partition.s);
  const auto& spectra = result.block_spectra;

  double genuine_max = 0.0;
  double genuine_min = HUGE_VAL;
  for (std::size_t j = s; j < spectra.size(); ++j) {
    genuine_max = std::max(genuine_max, spectra[j].rho);
    genuine_min = std::min(genuine_min, spectra[j].rho);
  }
  if (genuine_max - genuine_min > config.rho_equality_tol * genuine_max) {
    result.outcome = GenuineRadiiDiffer{genuine_max, genuine_min};
    return result;
  }

  const double lambda = genuine_max;
  int worst = -1;
  for (std::size_t j = 0; j < s; ++j) {
    if (spectra[j].rho >= lambda * (1.0 - config.rho_equality_tol) &&
        (worst < 0 || spectra[j].rho > spectra[static_cast<std::size_t>(worst)].rho)) {
      worst = static_cast<int>(j);
    }
  }
  if (worst >= 0) {
    result.outcome = NonGenuineTooLarge{worst, spectra[static_cast<std::size_t>(worst)].rho, lambda};
    return result;
  }
  result.outcome = StronglyNonnegative{lambda};
  return result;
}

Vector fixed_point_step(const NonnegativeTensor& tensor, const CanonicalPartition& partition,
                        std::span<const double> z, double lambda) {
  const auto n = static_cast<std::size_t>(tensor.dim());
  if (z.size() != n) throw DimensionMismatch(n, z.size());
  if (!(lambda > 0.0)) throw std::invalid_argument("fixed-point step needs lambda > 0");
  if (partition.s < 1) throw std::invalid_argument("fixed-point step needs a non-genuine block");
  for (double v : z) {
    if (!(v > 0.0)) throw std::invalid_argument("fixed-point step needs a positive vector");
  }
  const std::vector<int> rows = partition.nongenuine_indices();
  return step_from_image(perronkit::apply(tensor, z), rows, lambda, tensor.order() - 1);
}

PerronResult positive_perron_vector(const NonnegativeTensor& tensor, const FixedPointConfig& config) {
  return positive_perron_vector(tensor, classify(tensor, config), config);
}

PerronResult positive_perron_vector(const NonnegativeTensor& tensor,
                                    const Classification& classification,
                                    const FixedPointConfig& config) {
  validate(config);
  if (!classification.strongly_nonnegative()) throw NotStronglyNonnegative(classification);

  const CanonicalPartition& partition = classification.partition;
  const auto& spectra = classification.block_spectra;
  const double lambda = std::get<StronglyNonnegative>(classification.outcome).lambda;
  const int degree = tensor.order() - 1;
  const auto n = static_cast<std::size_t>(tensor.dim());

  // Genuine blocks carry their own Perron vectors and are never touched again.
  Vector base(n, 0.0);
  for (std::size_t j = static_cast<std::size_t>(partition.s); j < partition.blocks.size(); ++j) {
    const auto& block = partition.blocks[j];
    for (std::size_t k = 0; k < block.size(); ++k) {
      base[static_cast<std::size_t>(block[k])] = spectra[j].vector[k];
    }
  }

  PerronResult result;
  result.lambda = lambda;
  result.gamma = config.gamma;

  if (partition.s == 0) {
    result.z = std::move(base);
    result.residual = eigen_residual(tensor, result.z, lambda);
    return result;
  }

  const std::vector<int> rows = partition.nongenuine_indices();
  double gamma = config.gamma;
  int failed_iteration = 0;
  double failed_decrease = 0.0;

  for (int restart = 0; restart <= config.max_restarts; ++restart, gamma /= 10.0) {
    Vector z = base;
    Vector w;
    w.reserve(rows.size());
    for (int j = 0; j < partition.s; ++j) {
      const auto& block = partition.blocks[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < block.size(); ++k) {
        const double value = gamma * spectra[static_cast<std::size_t>(j)].vector[k];
        z[static_cast<std::size_t>(block[k])] = value;
        w.push_back(value);
      }
    }

    PerronResult attempt;
    attempt.lambda = lambda;
    attempt.gamma = gamma;
    attempt.restarts = restart;
    Vector image = perronkit::apply(tensor, z);
    bool violated = false;
    double last_step = HUGE_VAL;

    for (int k = 1; k <= config.max_iterations; ++k) {
      Vector next = step_from_image(image, rows, lambda, degree);
      double decrease = 0.0;
      double step = 0.0;
      for (std::size_t p = 0; p < next.size(); ++p) {
        decrease = std::max(decrease, w[p] - next[p]);
        step += (next[p] - w[p]) * (next[p] - w[p]);
      }
      step = std::sqrt(step);
      last_step = step;
      if (decrease > kRestartThreshold) {
        violated = true;
        failed_iteration = k;
        failed_decrease = decrease;
        break;
      }
      attempt.max_decrease = std::max(attempt.max_decrease, decrease);

      w = std::move(next);
      for (std::size_t p = 0; p < rows.size(); ++p) z[static_cast<std::size_t>(rows[p])] = w[p];
      image = perronkit::apply(tensor, z);
      attempt.iterations = k;
      if (config.record_trace) {
        attempt.trace.push_back({k, residual_from_image(image, z, lambda, degree), step});
      }
      if (step <= config.tolerance) {
        attempt.residual = residual_from_image(image, z, lambda, degree);
        attempt.z = std::move(z);
        return attempt;
      }
    }
    if (!violated) {
      throw NotConverged("fixed-point iteration did not reach tolerance in " +
                             std::to_string(config.max_iterations) + " iterations",
                         std::move(z), config.max_iterations, last_step);
    }
  }
  throw MonotonicityViolated(gamma * 10.0, failed_iteration, failed_decrease);
}

}  // namespace perronkit
