#include <algorithm>
#include <vector>

#include "doctest.h"
#include "perronkit/error.hpp"
#include "perronkit/fixtures.hpp"
#include "perronkit/graph.hpp"
#include "perronkit/random.hpp"
#include "perronkit/verification.hpp"

using namespace perronkit;

namespace {

using Blocks = std::vector<std::vector<int>>;

Blocks sorted(Blocks blocks) {
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

// Blocks cover [n], match the oracle's strongly connected classes and no
// edge runs backwards.
void check_condensation(const SquareMatrix& m) {
  const auto order = scc_condensation(m);
  const auto ref = verification::matrix_reference(m);
  CHECK(sorted(order.blocks) == sorted(ref.classes));

  std::vector<int> position(static_cast<std::size_t>(m.size()), -1);
  for (std::size_t b = 0; b < order.blocks.size(); ++b) {
    CHECK(std::is_sorted(order.blocks[b].begin(), order.blocks[b].end()));
    for (int i : order.blocks[b]) position[static_cast<std::size_t>(i)] = static_cast<int>(b);
  }
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (m(i, j) > 0.0) CHECK(position[static_cast<std::size_t>(i)] <= position[static_cast<std::size_t>(j)]);
    }
  }
}

}  // namespace

TEST_CASE("square matrix basics") {
  SquareMatrix m(2, {1.0, 2.0, 3.0, 4.0});
  CHECK(m(1, 0) == 3.0);
  m(1, 0) = 5.0;
  CHECK(m(1, 0) == 5.0);
  CHECK_THROWS_AS(SquareMatrix(2, {1.0, 2.0, 3.0}), DimensionMismatch);

  const std::vector<int> keep{1};
  CHECK(submatrix(m, keep) == SquareMatrix(1, {4.0}));

  const auto t = from_matrix(m);
  CHECK(t.shape() == TensorShape{2, 2});
  CHECK(to_matrix(t) == m);
  CHECK_THROWS_AS(to_matrix(fixtures::coupled_triple()), std::invalid_argument);
}

TEST_CASE("majorization examples") {
  CHECK(majorization(fixtures::coupled_triple()) ==
        SquareMatrix(3, {0, 1, 1, 1, 0, 1, 0, 0, 1}));
  CHECK(majorization(NonnegativeTensor({4, 3})) == SquareMatrix(3));

  const NonnegativeTensor single({3, 2}, {{{0, 1, 1}, 3.0}});
  CHECK(majorization(single) == SquareMatrix(2, {0, 3, 0, 0}));
  CHECK(majorization(single) ==
        verification::majorization_by_enumeration(verification::DenseTensorView(single)));

  // For a matrix the majorization is the matrix itself.
  const SquareMatrix m(3, {0.5, 0, 2, 0, 0, 1, 4, 0, 0});
  CHECK(majorization(from_matrix(m)) == m);
}

TEST_CASE("majorization rows vanish exactly for rows without entries") {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto a = verification::random_tensor(rng, {3, 5}, 0.05);
    const auto m = majorization(a);
    for (int i = 0; i < 5; ++i) {
      bool row_has_entry = false;
      for (std::size_t k = 0; k < a.nnz(); ++k) row_has_entry |= a.index(k)[0] == i;
      bool row_nonzero = false;
      for (int j = 0; j < 5; ++j) row_nonzero |= m(i, j) > 0.0;
      CHECK(row_has_entry == row_nonzero);
    }
  }
}

TEST_CASE("majorization matches index-class enumeration exactly") {
  Rng rng(32);
  for (int t = 0; t < 60; ++t) {
    const TensorShape shape{2 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(5))};
    const auto a = verification::random_tensor(rng, shape, 0.3, true);
    CHECK(majorization(a) == verification::majorization_by_enumeration(verification::DenseTensorView(a)));
  }
}

TEST_CASE("majorization commutes with restriction to a closed index set") {
  Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng.below(5));
    std::vector<int> inside;
    for (int i = 0; i < n; ++i) {
      if (rng.bernoulli(0.5)) inside.push_back(i);
    }
    if (inside.empty()) inside.push_back(0);
    auto in_set = [&](int i) { return std::find(inside.begin(), inside.end(), i) != inside.end(); };

    // Rows in the set only touch indices in the set.
    std::vector<Entry> entries;
    const auto dense = verification::random_tensor(rng, {3, n}, 0.4, true);
    for (const Entry& e : dense.entries()) {
      if (!in_set(e.index[0]) || (in_set(e.index[1]) && in_set(e.index[2]))) entries.push_back(e);
    }
    const NonnegativeTensor a({3, n}, entries);
    CHECK(majorization(principal_subtensor(a, inside)) == submatrix(majorization(a), inside));
  }
}

TEST_CASE("restriction counterexample without the closure hypothesis") {
  const auto a = fixtures::coupled_triple();
  const std::vector<int> first_two{0, 1};
  const auto restricted = majorization(principal_subtensor(a, first_two));
  const auto corner = submatrix(majorization(a), first_two);
  CHECK(restricted == SquareMatrix(2));
  CHECK(corner == SquareMatrix(2, {0, 1, 1, 0}));
  CHECK(restricted != corner);
}

TEST_CASE("condensation examples") {
  const auto m61 = majorization(fixtures::coupled_triple());
  CHECK(scc_condensation(m61).blocks == Blocks{{0, 1}, {2}});

  SquareMatrix id(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(scc_condensation(id).blocks == Blocks{{0}, {1}, {2}});

  SquareMatrix cycle(4);
  for (int i = 0; i < 4; ++i) cycle(i, (i + 1) % 4) = 1.0;
  CHECK(scc_condensation(cycle).blocks == Blocks{{0, 1, 2, 3}});
  CHECK(is_irreducible(cycle));

  // Edge 2 -> 0 forces {2} before {0}; {1} is free and wins the tie-break.
  SquareMatrix chain(3);
  chain(2, 0) = 1.0;
  CHECK(scc_condensation(chain).blocks == Blocks{{1}, {2}, {0}});
}

TEST_CASE("condensation agrees with the reachability oracle") {
  Rng rng(34);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.below(12));
    check_condensation(verification::random_matrix(rng, n, 0.05 + 0.3 * rng.uniform()));
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(SquareMatrix(2, {0, 1, 1, 0})));
  CHECK_FALSE(is_irreducible(SquareMatrix(2, {0, 1, 0, 0})));
  CHECK_FALSE(is_irreducible(majorization(fixtures::coupled_triple())));
  CHECK(is_irreducible(SquareMatrix(1)));
  CHECK(is_weakly_irreducible(NonnegativeTensor({3, 1})));
  CHECK_FALSE(is_weakly_irreducible(fixtures::coupled_triple()));
  CHECK_FALSE(is_weakly_irreducible(fixtures::four_block_chain()));
  for (int k = 0; k < 4; ++k) CHECK(is_weakly_irreducible(fixtures::four_block_chain_block(k)));

  Rng rng(35);
  for (int t = 0; t < 50; ++t) {
    const auto a = verification::random_tensor(rng, {3, 1 + static_cast<int>(rng.below(5))}, 0.2);
    const auto ref = verification::matrix_reference(majorization(a));
    CHECK(is_weakly_irreducible(a) == (ref.classes.size() == 1));
  }
}
