#include "perronkit/partition.hpp"

#include <algorithm>

#include "perronkit/graph.hpp"

namespace perronkit {

namespace {

void refine(const NonnegativeTensor& sub, const std::vector<int>& labels,
            std::vector<std::vector<int>>& out) {
  if (sub.dim() == 1) {
    out.push_back(labels);
    return;
  }
  const MajorizationMatrix mat = majorization(sub);
  if (is_irreducible(mat)) {
    out.push_back(labels);
    return;
  }
  for (const auto& block : scc_condensation(mat).blocks) {
    std::vector<int> child_labels;
    child_labels.reserve(block.size());
    for (int local : block) child_labels.push_back(labels[static_cast<std::size_t>(local)]);
    refine(principal_subtensor(sub, block), child_labels, out);
  }
}

std::string block_name(std::size_t j) { return "block " + std::to_string(j + 1); }

}  // namespace

std::vector<int> CanonicalPartition::nongenuine_indices() const {
  std::vector<int> out;
  for (int j = 0; j < s; ++j) {
    const auto& block = blocks[static_cast<std::size_t>(j)];
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

bool is_genuine(const NonnegativeTensor& tensor, std::span<const int> block) {
  std::vector<bool> inside(static_cast<std::size_t>(tensor.dim()), false);
  for (int i : block) inside[static_cast<std::size_t>(i)] = true;
  for (std::size_t k = 0; k < tensor.nnz(); ++k) {
    const auto idx = tensor.index(k);
    if (!inside[static_cast<std::size_t>(idx[0])]) continue;
    for (std::size_t p = 1; p < idx.size(); ++p) {
      if (!inside[static_cast<std::size_t>(idx[p])]) return false;
    }
  }
  return true;
}

CanonicalPartition canonical_partition(const NonnegativeTensor& tensor) {
  std::vector<int> all(static_cast<std::size_t>(tensor.dim()));
  for (int i = 0; i < tensor.dim(); ++i) all[static_cast<std::size_t>(i)] = i;

  std::vector<std::vector<int>> raw;
  refine(tensor, all, raw);

  // Stable move of genuine blocks behind the non-genuine ones.
  std::vector<std::vector<int>> nongenuine;
  std::vector<std::vector<int>> genuine;
  for (auto& block : raw) {
    (is_genuine(tensor, block) ? genuine : nongenuine).push_back(std::move(block));
  }

  CanonicalPartition result;
  result.s = static_cast<int>(nongenuine.size());
  for (auto& block : nongenuine) {
    result.blocks.push_back(std::move(block));
    result.genuine.push_back(false);
  }
  for (auto& block : genuine) {
    result.blocks.push_back(std::move(block));
    result.genuine.push_back(true);
  }

  std::vector<int> order;
  for (const auto& block : result.blocks) order.insert(order.end(), block.begin(), block.end());
  result.sigma = IndexPermutation(std::move(order));
  return result;
}

std::optional<std::string> audit_partition(const NonnegativeTensor& tensor,
                                           const CanonicalPartition& partition) {
  const int n = tensor.dim();
  const auto& blocks = partition.blocks;
  const std::size_t r = blocks.size();
  if (r == 0) return "no blocks";
  if (partition.genuine.size() != r) return "genuine flags do not match block count";

  std::vector<int> block_of(static_cast<std::size_t>(n), -1);
  std::vector<int> order;
  for (std::size_t j = 0; j < r; ++j) {
    if (blocks[j].empty()) return block_name(j) + " is empty";
    if (!std::is_sorted(blocks[j].begin(), blocks[j].end())) return block_name(j) + " is not sorted";
    for (int i : blocks[j]) {
      if (i < 0 || i >= n) return block_name(j) + " has an out-of-range index";
      if (block_of[static_cast<std::size_t>(i)] >= 0) return "index " + std::to_string(i + 1) + " appears twice";
      block_of[static_cast<std::size_t>(i)] = static_cast<int>(j);
      order.push_back(i);
    }
  }
  if (order.size() != static_cast<std::size_t>(n)) return "blocks do not cover every index";
  if (partition.sigma.size() != n || !std::ranges::equal(partition.sigma.images(), order)) {
    return "sigma does not list the blocks in order";
  }

  // Weak irreducibility of every diagonal block.
  for (std::size_t j = 0; j < r; ++j) {
    if (!is_weakly_irreducible(principal_subtensor(tensor, blocks[j]))) {
      return block_name(j) + " is not weakly irreducible";
    }
  }

  // Genuine flags, grouping and count.
  int nongenuine = 0;
  for (std::size_t j = 0; j < r; ++j) {
    const bool flag = partition.genuine[j];
    if (flag != is_genuine(tensor, blocks[j])) return block_name(j) + " has a wrong genuine flag";
    if (!flag) {
      if (static_cast<int>(j) != nongenuine) return "genuine blocks are not listed last";
      ++nongenuine;
    }
  }
  if (nongenuine != partition.s) return "s does not count the non-genuine blocks";
  if (partition.s >= static_cast<int>(r)) return "no genuine block";

  // Zero pattern: a row in block j never couples to an earlier block through
  // a tuple confined to blocks 1..j. Non-genuine blocks must also couple
  // into some strictly later block.
  std::vector<bool> escapes_forward(r, false);
  for (std::size_t k = 0; k < tensor.nnz(); ++k) {
    const auto idx = tensor.index(k);
    const int row_block = block_of[static_cast<std::size_t>(idx[0])];
    bool touches_earlier = false;
    bool touches_later = false;
    for (std::size_t p = 1; p < idx.size(); ++p) {
      const int b = block_of[static_cast<std::size_t>(idx[p])];
      touches_earlier = touches_earlier || b < row_block;
      touches_later = touches_later || b > row_block;
    }
    if (touches_earlier && !touches_later) {
      return block_name(static_cast<std::size_t>(row_block)) +
             " couples back into an earlier block";
    }
    if (touches_later) escapes_forward[static_cast<std::size_t>(row_block)] = true;
  }
  for (int j = 0; j < partition.s; ++j) {
    if (!escapes_forward[static_cast<std::size_t>(j)]) {
      return block_name(static_cast<std::size_t>(j)) + " is non-genuine without a forward coupling";
    }
  }
  return std::nullopt;
}

bool verify_partition(const NonnegativeTensor& tensor, const CanonicalPartition& partition) {
  return !audit_partition(tensor, partition).has_value();
}

}  // namespace perronkit
