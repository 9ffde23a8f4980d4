// Shared fixtures and random case generators for the test binaries.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mapf/instance.hpp"
#include "mapf/instance_io.hpp"

namespace mapf::testing {

// Two agents on an open 3x3 grid whose canonical paths cross on the top row.
// Each has an equal-cost route through the centre.
inline const char* const kCrossing =
    "3 3\n"
    "...\n"
    "...\n"
    "...\n"
    "1 0 0 2\n"
    "1 2 0 0\n";

// Three agents whose conflicts split into the pairs {0,1} and {1,2}.
inline const char* const kTwoPairs =
    "4 6\n"
    ".....@\n"
    "@.....\n"
    "....@.\n"
    "...@..\n"
    "3 5 1 1\n"
    "3 0 3 5\n"
    "1 4 3 2\n";

inline Instance fixture(const char* text) { return parse_instance(text); }

struct CaseGen {
  std::mt19937_64 rng;

  explicit CaseGen(std::uint64_t seed) : rng(seed) {}

  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  std::uint64_t seed() { return rng(); }

  /// Random solvable instance on a map of at most max_side x max_side.
  Instance instance(int min_side, int max_side, int min_agents, int max_agents, double obstacle_prob = 0.2) {
    while (true) {
      const int h = between(min_side, max_side);
      const int w = between(min_side, max_side);
      const int n = between(min_agents, max_agents);
      if (n > h * w / 2) continue;
      try {
        return generate_instance_on(h, w, n, seed(), obstacle_prob);
      } catch (const GenerationError&) {
      }
    }
  }
};

// Head-on corridor swaps and split maps: every one has no conflict-free plan.
inline std::vector<std::string> unsolvable_fixtures() {
  std::vector<std::string> out;
  for (int len = 2; len <= 7; ++len) {
    std::string row(static_cast<std::size_t>(len), '.');
    out.push_back("1 " + std::to_string(len) + "\n" + row + "\n0 0 0 " + std::to_string(len - 1) + "\n0 " +
                  std::to_string(len - 1) + " 0 0\n");
  }
  for (int len = 3; len <= 6; ++len) {
    const std::string last = std::to_string(len - 1);
    std::string body;
    for (int i = 0; i < len; ++i) body += ".\n";
    out.push_back(std::to_string(len) + " 1\n" + body + "0 0 " + last + " 0\n" + last + " 0 0 0\n");
  }
  out.push_back("1 5\n.....\n0 0 0 4\n0 2 0 2\n0 4 0 0\n");
  out.push_back("2 5\n.@@@.\n.....\n1 0 1 4\n1 4 1 0\n");
  out.push_back("3 5\n.@@@.\n.@@@.\n.....\n0 0 0 4\n0 4 0 0\n");
  out.push_back("1 7\n...@...\n0 0 0 2\n0 2 0 0\n0 4 0 6\n");
  out.push_back("4 4\n.@..\n.@..\n.@..\n.@..\n0 0 3 0\n3 0 0 0\n0 2 3 3\n");
  out.push_back("1 4\n....\n0 0 0 3\n0 1 0 2\n");
  out.push_back("1 4\n....\n0 1 0 3\n0 3 0 0\n");
  out.push_back("2 4\n.@@.\n....\n1 0 1 3\n1 3 1 0\n");
  out.push_back("3 3\n.@.\n.@.\n.@.\n0 0 2 0\n2 0 0 0\n0 2 2 2\n");
  out.push_back("1 6\n......\n0 0 0 5\n0 5 0 3\n");
  return out;
}

}  // namespace mapf::testing
