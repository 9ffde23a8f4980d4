#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mapf {

inline constexpr std::size_t kMaxAgents = 64;

/// Bitset over agent indices [0, 64).
class AgentSet {
 public:
  constexpr AgentSet() = default;
  constexpr explicit AgentSet(std::uint64_t bits) : bits_(bits) {}
  AgentSet(std::initializer_list<std::size_t> agents) {
    for (std::size_t a : agents) insert(a);
  }

  static AgentSet of(std::size_t agent) { return AgentSet().insert(agent); }
  static AgentSet first_n(std::size_t n) {
    check(n == 0 ? 0 : n - 1);
    return AgentSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  AgentSet& insert(std::size_t agent) {
    check(agent);
    bits_ |= std::uint64_t{1} << agent;
    return *this;
  }
  constexpr bool contains(std::size_t agent) const { return agent < 64 && (bits_ >> agent) & 1; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool subset_of(AgentSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(AgentSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr AgentSet operator|(AgentSet o) const { return AgentSet(bits_ | o.bits_); }
  constexpr AgentSet operator&(AgentSet o) const { return AgentSet(bits_ & o.bits_); }
  AgentSet& operator|=(AgentSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr bool operator==(const AgentSet&) const = default;

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

 private:
  static void check(std::size_t agent) {
    if (agent >= kMaxAgents) throw std::out_of_range("agent index exceeds AgentSet capacity (64)");
  }
  std::uint64_t bits_ = 0;
};

/// How collision sets combine. Flat keeps one union of all colliding agents.
/// Partitioned keeps disjoint groups, merging groups that share an agent.
enum class MergeMode { Flat, Partitioned };

/// Collision set of a joint vertex. Groups are disjoint and non-empty.
class CollisionSet {
 public:
  CollisionSet() = default;

  const std::vector<AgentSet>& groups() const { return groups_; }
  bool empty() const { return groups_.empty(); }

  AgentSet members() const {
    AgentSet all;
    for (AgentSet g : groups_) all |= g;
    return all;
  }

  /// The group holding `agent`, or an empty set.
  AgentSet group_of(std::size_t agent) const {
    for (AgentSet g : groups_) {
      if (g.contains(agent)) return g;
    }
    return {};
  }

  /// True when absorbing `other` would change nothing.
  bool covers(const CollisionSet& other, MergeMode mode) const {
    if (mode == MergeMode::Flat) return other.members().subset_of(members());
    for (AgentSet g : other.groups_) {
      if (!covers_group(g)) return false;
    }
    return true;
  }

  /// Returns true when the set changed.
  bool absorb(AgentSet group, MergeMode mode) {
    if (group.empty()) return false;
    if (mode == MergeMode::Flat) {
      if (groups_.empty()) {
        groups_.push_back(group);
        return true;
      }
      const AgentSet before = groups_.front();
      groups_.front() |= group;
      return groups_.front() != before;
    }
    if (covers_group(group)) return false;
    AgentSet merged = group;
    std::vector<AgentSet> kept;
    kept.reserve(groups_.size() + 1);
    for (AgentSet g : groups_) {
      if (g.intersects(merged)) {
        merged |= g;
      } else {
        kept.push_back(g);
      }
    }
    kept.push_back(merged);
    groups_ = std::move(kept);
    return true;
  }

  bool absorb(const CollisionSet& other, MergeMode mode) {
    bool changed = false;
    for (AgentSet g : other.groups_) changed |= absorb(g, mode);
    return changed;
  }

  bool operator==(const CollisionSet& o) const {
    if (groups_.size() != o.groups_.size()) return false;
    for (AgentSet g : groups_) {
      if (!o.covers_group(g)) return false;
    }
    return true;
  }

 private:
  bool covers_group(AgentSet g) const {
    for (AgentSet h : groups_) {
      if (g.subset_of(h)) return true;
    }
    return false;
  }

  std::vector<AgentSet> groups_;
};

}  // namespace mapf
