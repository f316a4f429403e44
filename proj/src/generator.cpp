#include "perronkit/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "perronkit/random.hpp"

namespace perronkit {

namespace {

constexpr int kOrder = 3;

struct Parts {
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<Entry>> diagonal;   // per block, global indices
  std::vector<std::vector<Entry>> couplings;  // per block, global indices
  std::vector<double> radii;                  // raw diagonal-block radii
  int dim = 0;
};

void validate(const GeneratorSpec& spec) {
  if (spec.block_sizes.empty()) throw std::invalid_argument("generator needs at least one block");
  for (int size : spec.block_sizes) {
    if (size < 1) throw std::invalid_argument("block sizes must be positive");
  }
  if (!(spec.ratio > 1.0)) throw std::invalid_argument("ratio Rt must exceed 1");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
}

double block_radius(const std::vector<Entry>& entries, const std::vector<int>& block,
                    const PowerMethodConfig& power) {
  const int offset = block.front();
  std::vector<Entry> local = entries;
  for (Entry& e : local) {
    for (int& i : e.index) i -= offset;
  }
  const NonnegativeTensor sub({kOrder, static_cast<int>(block.size())}, std::move(local));
  return power_method(sub, power).rho;
}

void rescale(std::vector<Entry>& entries, double factor) {
  for (Entry& e : entries) e.value *= factor;
}

Parts build(const GeneratorSpec& spec, Rng& rng, const PowerMethodConfig& power) {
  validate(spec);
  Parts parts;
  for (int size : spec.block_sizes) {
    std::vector<int> block(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) block[static_cast<std::size_t>(k)] = parts.dim + k;
    parts.blocks.push_back(std::move(block));
    parts.dim += size;
  }
  const std::size_t r = parts.blocks.size();

  for (const auto& block : parts.blocks) {
    std::vector<Entry> dense;
    for (int i : block) {
      for (int j : block) {
        for (int k : block) dense.push_back({{i, j, k}, rng.uniform()});
      }
    }
    parts.radii.push_back(block_radius(dense, block, power));
    parts.diagonal.push_back(std::move(dense));
  }

  parts.couplings.resize(r);
  for (std::size_t b = 0; b + 1 < r; ++b) {
    const int own_begin = parts.blocks[b].front();
    const int own_end = parts.blocks[b].back() + 1;
    auto is_own = [&](int i) { return i >= own_begin && i < own_end; };
    // Tuples over own-and-later indices that reach at least one later block.
    std::vector<std::pair<int, int>> admissible;
    for (int i = own_begin; i < parts.dim; ++i) {
      for (int j = own_begin; j < parts.dim; ++j) {
        if (!(is_own(i) && is_own(j))) admissible.push_back({i, j});
      }
    }
    for (int row : parts.blocks[b]) {
      bool drew = false;
      for (const auto& [i, j] : admissible) {
        if (rng.bernoulli(spec.density)) {
          parts.couplings[b].push_back({{row, i, j}, rng.uniform()});
          drew = true;
        }
      }
      if (!drew) {
        const auto& [i, j] = admissible[static_cast<std::size_t>(rng.below(admissible.size()))];
        parts.couplings[b].push_back({{row, i, j}, rng.uniform()});
      }
    }
  }
  return parts;
}

GeneratedTensor assemble(Parts parts, double base_radius, double lambda) {
  std::vector<Entry> all;
  for (std::size_t b = 0; b < parts.blocks.size(); ++b) {
    std::move(parts.diagonal[b].begin(), parts.diagonal[b].end(), std::back_inserter(all));
    std::move(parts.couplings[b].begin(), parts.couplings[b].end(), std::back_inserter(all));
  }
  return {NonnegativeTensor({kOrder, parts.dim}, std::move(all)), std::move(parts.blocks),
          base_radius, lambda};
}

}  // namespace

GeneratedTensor generate_instance(const GeneratorSpec& spec, const PowerMethodConfig& power) {
  Rng rng(spec.seed);
  Parts parts = build(spec, rng, power);
  const double base = *std::max_element(parts.radii.begin(), parts.radii.end());
  const double lambda = base * spec.ratio;
  rescale(parts.diagonal.back(), lambda / parts.radii.back());
  return assemble(std::move(parts), base, lambda);
}

NonnegativeTensor generate(const GeneratorSpec& spec, const PowerMethodConfig& power) {
  return generate_instance(spec, power).tensor;
}

GeneratedTensor generate_not_strong_instance(const GeneratorSpec& spec, NotStrongMode mode,
                                             const PowerMethodConfig& power) {
  if (spec.block_sizes.size() < 2) {
    throw std::invalid_argument("a non-strong instance needs at least two blocks");
  }
  Rng rng(spec.seed);
  Parts parts = build(spec, rng, power);
  const double base = *std::max_element(parts.radii.begin(), parts.radii.end());
  const double lambda = base * spec.ratio;
  rescale(parts.diagonal.back(), lambda / parts.radii.back());

  if (mode == NotStrongMode::Automatic) {
    mode = spec.seed % 2 == 0 ? NotStrongMode::InflateNonGenuine : NotStrongMode::SecondGenuine;
  }
  const auto victim = static_cast<std::size_t>(rng.below(parts.blocks.size() - 1));
  if (mode == NotStrongMode::InflateNonGenuine) {
    rescale(parts.diagonal[victim], 2.0 * lambda / parts.radii[victim]);
  } else {
    parts.couplings[victim].clear();
    rescale(parts.diagonal[victim], 0.5 * lambda / parts.radii[victim]);
  }
  return assemble(std::move(parts), base, lambda);
}

NonnegativeTensor generate_not_strong(const GeneratorSpec& spec, NotStrongMode mode,
                                      const PowerMethodConfig& power) {
  return generate_not_strong_instance(spec, mode, power).tensor;
}

}  // namespace perronkit
