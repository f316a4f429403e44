#include "perronkit/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "perronkit/error.hpp"

namespace perronkit {

namespace {

void validate(const PowerMethodConfig& config) {
  if (!(config.tolerance > 0.0)) throw std::invalid_argument("power method tolerance must be positive");
  if (config.max_iterations < 1) throw std::invalid_argument("power method needs max_iterations >= 1");
}

Bracket bounds(std::span<const double> image, std::span<const double> x, int degree) {
  Bracket b{-HUGE_VAL, HUGE_VAL};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ratio = image[i] / ipow(x[i], degree);
    b.alpha = std::max(b.alpha, ratio);
    b.beta = std::min(b.beta, ratio);
  }
  return b;
}

}  // namespace

BlockSpectrum power_method(const NonnegativeTensor& tensor, const PowerMethodConfig& config) {
  validate(config);
  const int n = tensor.dim();
  const int degree = tensor.order() - 1;

  if (n == 1) {
    const std::vector<int> diag(static_cast<std::size_t>(tensor.order()), 0);
    const double value = tensor.at(diag);
    return {value, {1.0}, 0, 0.0, {{value, value}}};
  }

  const double shift = config.shift ? 1.0 : 0.0;
  const double root = 1.0 / degree;
  Vector x(static_cast<std::size_t>(n), 1.0 / n);
  BlockSpectrum result;

  for (int iteration = 0;; ++iteration) {
    Vector image = perronkit::apply(tensor, x);
    if (config.shift) {
      for (std::size_t i = 0; i < image.size(); ++i) image[i] += ipow(x[i], degree);
    }
    const Bracket b = bounds(image, x, degree);
    result.trace.push_back({b.alpha - shift, b.beta - shift});

    const double gap = b.alpha - b.beta;
    if (gap <= config.tolerance) {
      result.rho = 0.5 * (b.alpha + b.beta) - shift;
      result.vector = std::move(x);
      result.iterations = iteration;
      result.gap = gap;
      return result;
    }
    if (iteration == config.max_iterations) {
      throw NotConverged("power method did not reach tolerance in " +
                             std::to_string(config.max_iterations) + " iterations",
                         std::move(x), iteration, gap);
    }

    double total = 0.0;
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (!(image[i] > 0.0)) {
        throw ZeroIterate("power iterate lost positivity at index " + std::to_string(i + 1));
      }
      x[i] = degree == 1 ? image[i] : std::pow(image[i], root);
      total += x[i];
    }
    for (double& v : x) v /= total;
  }
}

Bracket collatz_wielandt(const NonnegativeTensor& tensor, std::span<const double> x) {
  const auto n = static_cast<std::size_t>(tensor.dim());
  if (x.size() != n) throw DimensionMismatch(n, x.size());
  for (double v : x) {
    if (!(v > 0.0)) throw std::invalid_argument("Collatz-Wielandt bounds need a positive vector");
  }
  return bounds(perronkit::apply(tensor, x), x, tensor.order() - 1);
}

bool is_strictly_nonnegative(const NonnegativeTensor& tensor) {
  const Vector ones(static_cast<std::size_t>(tensor.dim()), 1.0);
  const Vector image = perronkit::apply(tensor, ones);
  return std::all_of(image.begin(), image.end(), [](double v) { return v > 0.0; });
}

double eigen_residual(const NonnegativeTensor& tensor, std::span<const double> x, double lambda) {
  Vector r = perronkit::apply(tensor, x);
  const int degree = tensor.order() - 1;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * ipow(x[i], degree);
  return norm2(r);
}

double BlockAnalysis::radius() const {
  double rho = 0.0;
  for (const auto& spectrum : spectra) rho = std::max(rho, spectrum.rho);
  return rho;
}

BlockAnalysis analyze_blocks(const NonnegativeTensor& tensor, const PowerMethodConfig& config,
                             int threads) {
  validate(config);
  BlockAnalysis analysis{canonical_partition(tensor), {}};
  const auto& blocks = analysis.partition.blocks;
  analysis.spectra.resize(blocks.size());

  std::vector<std::exception_ptr> failures(blocks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < blocks.size(); j = next++) {
      try {
        analysis.spectra[j] = power_method(principal_subtensor(tensor, blocks[j]), config);
      } catch (...) {
        failures[j] = std::current_exception();
      }
    }
  };

  const auto count = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                              blocks.size());
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return analysis;
}

double spectral_radius(const NonnegativeTensor& tensor, const PowerMethodConfig& config) {
  return analyze_blocks(tensor, config).radius();
}

bool is_nontrivially_nonnegative(const NonnegativeTensor& tensor, const PowerMethodConfig& config) {
  return spectral_radius(tensor, config) > 0.0;
}

}  // namespace perronkit
