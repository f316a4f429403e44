#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perronkit/tensor.hpp"

namespace perronkit {

/// Ordered blocks I_1, ..., I_r of {0, ..., n-1} such that every principal
/// sub-tensor A_{I_j} is weakly irreducible and no entry in a block's rows
/// couples back into earlier blocks through indices confined to blocks up to
/// its own. The first `s` blocks are non-genuine; the genuine blocks (rows
/// that never reach outside their own block) come last.
struct CanonicalPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<bool> genuine;
  int s = 0;
  /// sigma(p) is the original index sitting at position p of the canonical
  /// ordering, i.e. sigma . A has contiguous blocks.
  IndexPermutation sigma;

  /// Non-genuine indices R = I_1 u ... u I_s in block order.
  std::vector<int> nongenuine_indices() const;
};

CanonicalPartition canonical_partition(const NonnegativeTensor& tensor);

/// True iff no stored entry with first index in `block` has another index
/// outside `block`. Assumes A_block is weakly irreducible.
bool is_genuine(const NonnegativeTensor& tensor, std::span<const int> block);

/// Re-checks every structural condition of a canonical partition. Returns a
/// description of the first violation, or nullopt when the partition is valid.
std::optional<std::string> audit_partition(const NonnegativeTensor& tensor,
                                           const CanonicalPartition& partition);

bool verify_partition(const NonnegativeTensor& tensor, const CanonicalPartition& partition);

}  // namespace perronkit
