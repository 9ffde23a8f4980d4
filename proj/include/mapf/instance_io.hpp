#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mapf/instance.hpp"
#include "mapf/solution.hpp"

namespace mapf {

/// Malformed input; `line()` is 1-based within the offending text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// MovingAI benchmark formats. In `.map` bodies '.', 'G' and 'S' are passable;
// '@', 'O', 'T' and 'W' are obstacles. `.scen` rows are tab separated:
// bucket, map, width, height, start col, start row, goal col, goal row, length.

GridMap parse_movingai_map(std::string_view map_text);

/// Takes the first n_agents scenario rows, in file order.
Instance load_instance(std::string_view map_text, std::string_view scen_text, std::size_t n_agents);

std::string write_movingai_map(const GridMap& map);
std::string write_movingai_scen(const Instance& instance, std::string_view map_name = "instance.map");

// Single-file text format: "H W", H rows of '.'/'@', then one "sr sc gr gc"
// line per agent.

std::string write_instance(const Instance& instance);
Instance parse_instance(std::string_view text);

// Solution text: "cost N", then one line per agent of space separated "r,c"
// cells, one per time step.

std::string write_solution(const Solution& solution);
Solution parse_solution(std::string_view text);

}  // namespace mapf
