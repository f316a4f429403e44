#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "perronkit/fixtures.hpp"
#include "perronkit/generator.hpp"
#include "perronkit/graph.hpp"
#include "perronkit/partition.hpp"
#include "perronkit/random.hpp"
#include "perronkit/verification.hpp"

using namespace perronkit;

namespace {

using Blocks = std::vector<std::vector<int>>;

IndexPermutation random_permutation(Rng& rng, int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(images[static_cast<std::size_t>(i)], images[rng.below(static_cast<std::uint64_t>(i + 1))]);
  }
  return IndexPermutation(images);
}

std::set<std::vector<int>> genuine_sets(const CanonicalPartition& p) {
  std::set<std::vector<int>> out;
  for (std::size_t j = 0; j < p.blocks.size(); ++j) {
    if (p.genuine[j]) out.insert(p.blocks[j]);
  }
  return out;
}

}  // namespace

TEST_CASE("coupled triple") {
  const auto a = fixtures::coupled_triple();
  const auto p = canonical_partition(a);
  CHECK(p.blocks == Blocks{{0}, {1}, {2}});
  CHECK(p.genuine == std::vector<bool>{false, false, true});
  CHECK(p.s == 2);
  CHECK(p.sigma == IndexPermutation::identity(3));
  CHECK(p.nongenuine_indices() == std::vector<int>{0, 1});
  CHECK(verify_partition(a, p));

  const std::vector<int> three{2};
  const std::vector<int> one{0};
  const std::vector<int> all{0, 1, 2};
  CHECK(is_genuine(a, three));
  CHECK_FALSE(is_genuine(a, one));
  CHECK(is_genuine(a, all));
}

TEST_CASE("four-block chain") {
  const auto a = fixtures::four_block_chain();
  const auto p = canonical_partition(a);
  CHECK(p.blocks == Blocks{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(p.genuine == std::vector<bool>{false, false, false, true});
  CHECK(p.s == 3);
  CHECK(verify_partition(a, p));
}

TEST_CASE("weakly irreducible input gives one genuine block") {
  for (int k = 0; k < 4; ++k) {
    const auto p = canonical_partition(fixtures::four_block_chain_block(k));
    CHECK(p.blocks == Blocks{{0, 1}});
    CHECK(p.genuine == std::vector<bool>{true});
    CHECK(p.s == 0);
  }
  const auto p = canonical_partition(NonnegativeTensor({3, 1}));
  CHECK(p.blocks == Blocks{{0}});
  CHECK(p.s == 0);
}

TEST_CASE("genuine blocks move last without reordering the others") {
  // Order 2: 0 -> 1, 2 isolated, 3 -> 2. Condensation is {0},{1},{3},{2}
  // and {1} and {2} are genuine.
  SquareMatrix m(4);
  m(0, 1) = 1.0;
  m(3, 2) = 1.0;
  const auto p = canonical_partition(from_matrix(m));
  CHECK(p.blocks == Blocks{{0}, {3}, {1}, {2}});
  CHECK(p.genuine == std::vector<bool>{false, false, true, true});
  CHECK(p.sigma == IndexPermutation({0, 3, 1, 2}));
  CHECK(verify_partition(from_matrix(m), p));
}

TEST_CASE("audit rejects corrupted partitions") {
  const auto a = fixtures::coupled_triple();
  const auto good = canonical_partition(a);

  auto flag_first = good;
  flag_first.genuine[0] = true;
  CHECK_FALSE(verify_partition(a, flag_first));

  auto merged = good;
  merged.blocks = {{0, 1}, {2}};
  merged.genuine = {false, true};
  merged.s = 1;
  CHECK(audit_partition(a, merged).value().find("weakly irreducible") != std::string::npos);

  auto missing = good;
  missing.blocks = {{0}, {2}};
  missing.genuine = {false, true};
  missing.s = 1;
  missing.sigma = IndexPermutation({0, 2, 1});
  CHECK_FALSE(verify_partition(a, missing));

  auto wrong_s = good;
  wrong_s.s = 1;
  CHECK(audit_partition(a, wrong_s).value().find("s does not") != std::string::npos);

  auto wrong_sigma = good;
  wrong_sigma.sigma = IndexPermutation({1, 0, 2});
  CHECK_FALSE(verify_partition(a, wrong_sigma));

  // Reversing the chain breaks the zero pattern.
  const auto chain = fixtures::four_block_chain();
  auto reversed = canonical_partition(chain);
  std::swap(reversed.blocks[0], reversed.blocks[2]);
  reversed.sigma = IndexPermutation({4, 5, 2, 3, 0, 1, 6, 7});
  CHECK(audit_partition(chain, reversed).value().find("couples back") != std::string::npos);

  CHECK_FALSE(verify_partition(a, CanonicalPartition{}));
}

TEST_CASE("random tensors always yield a valid partition") {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const TensorShape shape{2 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(7))};
    const auto a = verification::random_tensor(rng, shape, 0.02 + 0.2 * rng.uniform());
    const auto p = canonical_partition(a);
    const auto problem = audit_partition(a, p);
    CHECK_MESSAGE(!problem.has_value(), problem.value_or(""));
    CHECK(p.s < static_cast<int>(p.blocks.size()));
  }
}

TEST_CASE("genuine blocks are invariant under relabelling") {
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng.below(7));
    const auto a = verification::random_tensor(rng, {3, n}, 0.02 + 0.15 * rng.uniform());
    const auto sigma = random_permutation(rng, n);
    const auto pa = canonical_partition(a);
    const auto pb = canonical_partition(permute(a, sigma));
    // Index i of sigma.A is index sigma(i) of A.
    std::set<std::vector<int>> mapped;
    for (auto block : genuine_sets(pb)) {
      for (int& i : block) i = sigma(i);
      std::sort(block.begin(), block.end());
      mapped.insert(block);
    }
    CHECK(mapped == genuine_sets(pa));
  }
}

TEST_CASE("order-2 blocks are the Frobenius normal form classes") {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const auto m = verification::random_matrix(rng, n, 0.05 + 0.3 * rng.uniform());
    const auto p = canonical_partition(from_matrix(m));
    const auto ref = verification::matrix_reference(m);
    Blocks ours = p.blocks;
    Blocks theirs = ref.classes;
    std::sort(ours.begin(), ours.end());
    std::sort(theirs.begin(), theirs.end());
    CHECK(ours == theirs);
  }
}

TEST_CASE("generator output has the intended partition") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate_instance({{3, 2, 4}, 1.5, 0.2, seed});
    const auto p = canonical_partition(g.tensor);
    CHECK(p.blocks == g.blocks);
    CHECK(p.s == 2);
    CHECK(verify_partition(g.tensor, p));
  }
}
