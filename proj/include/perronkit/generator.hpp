#pragma once

#include <cstdint>
#include <vector>

#include "perronkit/spectral.hpp"
#include "perronkit/tensor.hpp"

namespace perronkit {

/// Random third-order instances with a prescribed block chain. Blocks are
/// laid out contiguously in the given order; the last one is the unique
/// genuine block.
struct GeneratorSpec {
  std::vector<int> block_sizes;
  /// Ratio of the final spectral radius to the largest raw block radius, > 1.
  double ratio = 2.0;
  /// Inclusion probability of each admissible coupling coordinate, in (0, 1].
  double density = 0.1;
  std::uint64_t seed = 0;
};

struct GeneratedTensor {
  NonnegativeTensor tensor;
  std::vector<std::vector<int>> blocks;
  /// Largest radius of the raw diagonal blocks.
  double base_radius = 0.0;
  /// Radius of the final block after rescaling, ratio * base_radius.
  double lambda = 0.0;
};

/// Builds a strongly nonnegative tensor:
///  - every diagonal block is dense with uniform (0,1) entries;
///  - each row of a non-genuine block couples, with probability `density`
///    per coordinate, to tuples drawn from its own and later blocks that
///    reach at least one later block; a row that drew nothing gets one
///    forced coupling;
///  - the final block is rescaled to radius ratio * (largest raw radius).
GeneratedTensor generate_instance(const GeneratorSpec& spec, const PowerMethodConfig& power = {});

NonnegativeTensor generate(const GeneratorSpec& spec, const PowerMethodConfig& power = {});

enum class NotStrongMode {
  /// Even seeds inflate, odd seeds add a genuine block.
  Automatic,
  /// One non-genuine block is rescaled to twice the final radius.
  InflateNonGenuine,
  /// One non-genuine block loses its couplings and is rescaled to half the
  /// final radius, giving two genuine blocks with different radii.
  SecondGenuine,
};

/// Same construction, then broken so that the result is never strongly
/// nonnegative. Needs at least two blocks.
GeneratedTensor generate_not_strong_instance(const GeneratorSpec& spec,
                                             NotStrongMode mode = NotStrongMode::Automatic,
                                             const PowerMethodConfig& power = {});

NonnegativeTensor generate_not_strong(const GeneratorSpec& spec,
                                      NotStrongMode mode = NotStrongMode::Automatic,
                                      const PowerMethodConfig& power = {});

}  // namespace perronkit
