// Apache License, Version 2.0, refer to LICENSE.txt

#include "ntrmix/ordered_partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ntrmix {

namespace {

void validate_blocks(int n_items, std::vector<std::vector<int>>& blocks,
                     const char* who) {
  std::vector<char> seen(n_items, 0);
  int covered = 0;
  for (auto& block : blocks) {
    if (block.empty())
      throw std::invalid_argument(std::string(who) + ": empty block");
    std::sort(block.begin(), block.end());
    for (int item : block) {
      if (item < 0 || item >= n_items)
        throw std::invalid_argument(std::string(who) + ": item out of range");
      if (seen[item])
        throw std::invalid_argument(std::string(who) + ": duplicate item");
      seen[item] = 1;
      ++covered;
    }
  }
  if (covered != n_items)
    throw std::invalid_argument(std::string(who) +
                                ": blocks do not cover all items");
}

void sort_canonical(std::vector<std::vector<int>>& blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

OrderedPartition::OrderedPartition(int n_items,
                                   std::vector<std::vector<int>> blocks)
    : n_items_(n_items), blocks_(std::move(blocks)) {
  if (n_items < 0)
    throw std::invalid_argument("OrderedPartition: negative item count");
  validate_blocks(n_items_, blocks_, "OrderedPartition");
}

std::vector<int> OrderedPartition::block_sizes() const {
  std::vector<int> sizes(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    sizes[j] = static_cast<int>(blocks_[j].size());
  return sizes;
}

std::vector<int> OrderedPartition::at_risk_counts() const {
  std::vector<int> r(blocks_.size());
  int cum = 0;
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    cum += static_cast<int>(blocks_[j].size());
    r[j] = cum;
  }
  return r;
}

std::vector<int> OrderedPartition::rank_of_item() const {
  std::vector<int> rank(n_items_, -1);
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    for (int item : blocks_[j]) rank[item] = static_cast<int>(j);
  return rank;
}

bool OrderedPartition::operator==(const OrderedPartition& other) const {
  return n_items_ == other.n_items_ && blocks_ == other.blocks_;
}

Partition::Partition(int n_items, std::vector<std::vector<int>> blocks)
    : n_items_(n_items), blocks_(std::move(blocks)) {
  if (n_items < 0)
    throw std::invalid_argument("Partition: negative item count");
  validate_blocks(n_items_, blocks_, "Partition");
  sort_canonical(blocks_);
}

std::vector<int> Partition::block_sizes() const {
  std::vector<int> sizes(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    sizes[j] = static_cast<int>(blocks_[j].size());
  return sizes;
}

std::vector<int> Partition::restricted_growth_string() const {
  std::vector<int> rgs(n_items_, -1);
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    for (int item : blocks_[j]) rgs[item] = static_cast<int>(j);
  return rgs;
}

bool Partition::operator==(const Partition& other) const {
  return n_items_ == other.n_items_ && blocks_ == other.blocks_;
}

Partition forget_order(const OrderedPartition& m) {
  return Partition(m.n_items(), m.blocks());
}

std::vector<OrderedPartition> orderings_of(const Partition& p) {
  const int k = p.n_blocks();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<OrderedPartition> out;
  do {
    std::vector<std::vector<int>> blocks(k);
    for (int j = 0; j < k; ++j) blocks[j] = p.blocks()[perm[j]];
    out.emplace_back(p.n_items(), std::move(blocks));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

void for_each_partition(int n,
                        const std::function<void(const Partition&)>& visit,
                        int cap) {
  if (n < 0) throw std::invalid_argument("for_each_partition: n must be >= 0");
  if (n > cap)
    throw std::invalid_argument("for_each_partition: n exceeds enumeration cap");
  if (n == 0) {
    visit(Partition());
    return;
  }

  // Restricted-growth strings in lexicographic order: a[0] = 0 and
  // a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    int k = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> blocks(k);
    for (int i = 0; i < n; ++i) blocks[a[i]].push_back(i);
    visit(Partition(n, std::move(blocks)));

    int i = n - 1;
    while (i > 0) {
      if (a[i] <= prefix_max[i - 1]) break;
      --i;
    }
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

void for_each_ordered_partition(
    int n, const std::function<void(const OrderedPartition&)>& visit,
    int cap) {
  for_each_partition(
      n,
      [&](const Partition& p) {
        for (const OrderedPartition& m : orderings_of(p)) visit(m);
      },
      cap);
}

std::vector<OrderedPartition> enumerate_ordered(int n, int cap) {
  std::vector<OrderedPartition> out;
  for_each_ordered_partition(
      n, [&](const OrderedPartition& m) { out.push_back(m); }, cap);
  return out;
}

std::vector<Partition> enumerate_partitions(int n, int cap) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); }, cap);
  return out;
}

}  // namespace ntrmix
