// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ntrmix {

inline constexpr int kDefaultEnumerationCap = 8;

/// A partition of the items {0, 1, ..., n-1} whose blocks carry ranks:
/// block j holds the items tied at the j-th largest latent time. Block
/// sizes d_j and the cumulative at-risk counts r_j = d_1 + ... + d_j drive
/// every probability formula downstream.
class OrderedPartition {
 public:
  OrderedPartition() = default;  // the empty partition (n = 0)
  OrderedPartition(int n_items, std::vector<std::vector<int>> blocks);

  int n_items() const { return n_items_; }
  int n_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  /// Block sizes d_1..d_k in rank order.
  std::vector<int> block_sizes() const;

  /// Cumulative at-risk counts r_1..r_k (r_k == n_items).
  std::vector<int> at_risk_counts() const;

  /// item -> rank index (0-based); canonical encoding for equality/keys.
  std::vector<int> rank_of_item() const;

  bool operator==(const OrderedPartition& other) const;

 private:
  int n_items_ = 0;
  std::vector<std::vector<int>> blocks_;  // each sorted ascending
};

/// An unordered partition in canonical form: blocks sorted by least element,
/// items sorted within each block.
class Partition {
 public:
  Partition() = default;
  Partition(int n_items, std::vector<std::vector<int>> blocks);

  int n_items() const { return n_items_; }
  int n_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  std::vector<int> block_sizes() const;

  /// Restricted-growth encoding: item -> index of its block in canonical
  /// order. Deterministic key for maps and frequency tables.
  std::vector<int> restricted_growth_string() const;

  bool operator==(const Partition& other) const;

 private:
  int n_items_ = 0;
  std::vector<std::vector<int>> blocks_;
};

/// Drops the ranks; blocks are re-sorted by least element.
Partition forget_order(const OrderedPartition& m);

/// All k! rank assignments of p's blocks, in lexicographic order of the
/// block-index permutation.
std::vector<OrderedPartition> orderings_of(const Partition& p);

/// Visits every ordered set partition of {0..n-1} exactly once:
/// restricted-growth strings in lexicographic order, then block
/// permutations in lexicographic order. Throws if n exceeds the cap.
void for_each_ordered_partition(
    int n, const std::function<void(const OrderedPartition&)>& visit,
    int cap = kDefaultEnumerationCap);

std::vector<OrderedPartition> enumerate_ordered(
    int n, int cap = kDefaultEnumerationCap);

void for_each_partition(int n,
                        const std::function<void(const Partition&)>& visit,
                        int cap = kDefaultEnumerationCap);

std::vector<Partition> enumerate_partitions(int n,
                                            int cap = kDefaultEnumerationCap);

}  // namespace ntrmix
