#include "perronkit/fixtures.hpp"

#include <stdexcept>

namespace perronkit::fixtures {

namespace {

using Slice = std::array<std::array<double, 2>, 2>;

struct Block {
  Slice first;   // A(:,:,1)
  Slice second;  // A(:,:,2)
};

// A(:,:,k)[i][j] is a_{ijk}.
const std::array<Block, 4> kBlocks{{
    {{{{0.4423, 0.3309}, {0.0196, 0.4243}}}, {{{0.2703, 0.8217}, {0.1971, 0.4299}}}},
    {{{{0.3185, 0.0900}, {0.5341, 0.1117}}}, {{{0.1363, 0.4952}, {0.6787, 0.1897}}}},
    {{{{0.6664, 0.6260}, {0.0835, 0.6609}}}, {{{0.7298, 0.9823}, {0.8908, 0.7690}}}},
    {{{{0.3642, 1.0317}, {0.6636, 0.5388}}}, {{{1.1045, 1.0251}, {0.5921, 1.0561}}}},
}};

struct Monomial {
  int row;  // 1-based
  int p;
  int q;
  double coefficient;
};

const Monomial kCouplings[] = {
    {1, 1, 7, 0.8085}, {1, 6, 7, 0.5880}, {1, 3, 8, 0.1548}, {1, 4, 8, 0.1999}, {1, 8, 8, 0.4070},
    {2, 2, 6, 0.7551}, {2, 3, 4, 0.7487}, {2, 3, 6, 0.8256}, {2, 4, 8, 1.0},
    {3, 3, 5, 0.5606}, {3, 4, 7, 0.9296}, {3, 2, 5, 0.9009},
    {4, 5, 8, 0.5747}, {4, 1, 6, 0.8452}, {4, 6, 7, 0.7386}, {4, 7, 7, 0.5860}, {4, 8, 8, 0.2467},
    {5, 3, 8, 0.1465}, {5, 4, 7, 0.1891},
    {6, 6, 8, 0.5801}, {6, 4, 7, 0.2819},
};

void append_block(std::vector<Entry>& entries, const Block& block, int offset) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      entries.push_back({{offset + i, offset + j, offset}, block.first[i][j]});
      entries.push_back({{offset + i, offset + j, offset + 1}, block.second[i][j]});
    }
  }
}

}  // namespace

NonnegativeTensor coupled_triple() {
  return NonnegativeTensor({3, 3}, {{{0, 1, 2}, 1.0}, {{1, 0, 2}, 1.0}, {{2, 2, 2}, 1.0}});
}

NonnegativeTensor four_block_chain() {
  std::vector<Entry> entries;
  for (int k = 0; k < 4; ++k) append_block(entries, kBlocks[static_cast<std::size_t>(k)], 2 * k);
  for (const Monomial& c : kCouplings) {
    entries.push_back({{c.row - 1, c.p - 1, c.q - 1}, c.coefficient});
  }
  return NonnegativeTensor({3, 8}, std::move(entries));
}

NonnegativeTensor four_block_chain_block(int k) {
  if (k < 0 || k >= 4) throw std::out_of_range("four_block_chain has blocks 0..3");
  std::vector<Entry> entries;
  append_block(entries, kBlocks[static_cast<std::size_t>(k)], 0);
  return NonnegativeTensor({3, 2}, std::move(entries));
}

}  // namespace perronkit::fixtures
