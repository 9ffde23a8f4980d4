#include "mapf/instance_io.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace mapf {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(sep, pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

int to_int(std::string_view s, std::size_t line, const char* what) {
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(std::string("expected integer ") + what + ", got '" + std::string(s) + "'", line);
  }
  return value;
}

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t") == std::string_view::npos; }

// Parses `height` grid rows starting at lines[first].
GridMap parse_rows(const std::vector<std::string_view>& lines, std::size_t first, int height,
                   int width) {
  std::vector<Cell> obstacles;
  for (int r = 0; r < height; ++r) {
    const std::size_t idx = first + static_cast<std::size_t>(r);
    if (idx >= lines.size()) {
      throw ParseError("expected " + std::to_string(height) + " map rows, found " + std::to_string(r),
                       idx + 1);
    }
    const std::string_view row = lines[idx];
    if (row.size() != static_cast<std::size_t>(width)) {
      throw ParseError("map row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(width),
                       idx + 1);
    }
    for (int c = 0; c < width; ++c) {
      switch (row[c]) {
        case '.':
        case 'G':
        case 'S':
          break;
        case '@':
        case 'O':
        case 'T':
        case 'W':
          obstacles.push_back({r, c});
          break;
        default:
          throw ParseError(std::string("unknown map character '") + row[c] + "'", idx + 1);
      }
    }
  }
  return GridMap(height, width, obstacles);
}

void check_endpoint(const GridMap& map, Cell c, std::size_t line, const char* what) {
  if (!map.in_bounds(c)) throw ParseError(std::string(what) + " outside map", line);
  if (!map.passable(c)) throw ParseError(std::string(what) + " on obstacle", line);
}

// Rejects trailing non-blank content after the grid body.
void expect_no_more_rows(const std::vector<std::string_view>& lines, std::size_t from) {
  for (std::size_t i = from; i < lines.size(); ++i) {
    if (!is_blank(lines[i])) throw ParseError("unexpected content after map body", i + 1);
  }
}

}  // namespace

GridMap parse_movingai_map(std::string_view map_text) {
  const auto lines = split_lines(map_text);
  int height = -1, width = -1;
  std::size_t i = 0;
  bool saw_type = false;
  for (; i < lines.size(); ++i) {
    const auto tok = split_ws(lines[i]);
    if (tok.empty()) continue;
    if (tok[0] == "map") {
      if (tok.size() != 1) throw ParseError("malformed 'map' line", i + 1);
      ++i;
      break;
    }
    if (tok.size() != 2) throw ParseError("malformed header line '" + std::string(lines[i]) + "'", i + 1);
    if (tok[0] == "type") {
      saw_type = true;
    } else if (tok[0] == "height") {
      height = to_int(tok[1], i + 1, "height");
    } else if (tok[0] == "width") {
      width = to_int(tok[1], i + 1, "width");
    } else {
      throw ParseError("unknown header key '" + std::string(tok[0]) + "'", i + 1);
    }
  }
  if (!saw_type) throw ParseError("missing 'type' header", 1);
  if (height <= 0 || width <= 0) throw ParseError("missing or non-positive height/width", i);
  GridMap map = parse_rows(lines, i, height, width);
  expect_no_more_rows(lines, i + static_cast<std::size_t>(height));
  return map;
}

Instance load_instance(std::string_view map_text, std::string_view scen_text, std::size_t n_agents) {
  if (n_agents == 0) throw std::invalid_argument("load_instance: n_agents must be >= 1");
  Instance inst{parse_movingai_map(map_text), {}, {}};
  const auto lines = split_lines(scen_text);
  std::size_t i = 0;
  // Optional "version X" header.
  while (i < lines.size() && is_blank(lines[i])) ++i;
  if (i < lines.size() && lines[i].starts_with("version")) ++i;
  for (; i < lines.size() && inst.starts.size() < n_agents; ++i) {
    if (is_blank(lines[i])) continue;
    auto fields = split(lines[i], '\t');
    if (fields.size() < 8) fields = split_ws(lines[i]);
    if (fields.size() < 8) throw ParseError("scenario row needs at least 8 fields", i + 1);
    const int map_w = to_int(fields[2], i + 1, "map width");
    const int map_h = to_int(fields[3], i + 1, "map height");
    if (map_w != inst.map.width() || map_h != inst.map.height()) {
      throw ParseError("scenario map size " + std::to_string(map_w) + "x" + std::to_string(map_h) +
                           " does not match map",
                       i + 1);
    }
    const Cell start{to_int(fields[5], i + 1, "start row"), to_int(fields[4], i + 1, "start col")};
    const Cell goal{to_int(fields[7], i + 1, "goal row"), to_int(fields[6], i + 1, "goal col")};
    check_endpoint(inst.map, start, i + 1, "start");
    check_endpoint(inst.map, goal, i + 1, "goal");
    for (std::size_t a = 0; a < inst.starts.size(); ++a) {
      if (inst.starts[a] == start) throw ParseError("start shared with agent " + std::to_string(a), i + 1);
      if (inst.goals[a] == goal) throw ParseError("goal shared with agent " + std::to_string(a), i + 1);
    }
    inst.starts.push_back(start);
    inst.goals.push_back(goal);
  }
  if (inst.starts.size() < n_agents) {
    throw ParseError("scenario has only " + std::to_string(inst.starts.size()) + " rows, " +
                         std::to_string(n_agents) + " requested",
                     lines.size());
  }
  check_instance(inst);
  return inst;
}

std::string write_movingai_map(const GridMap& map) {
  std::ostringstream os;
  os << "type octile\nheight " << map.height() << "\nwidth " << map.width() << "\nmap\n";
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) os << (map.passable(Cell{r, c}) ? '.' : '@');
    os << '\n';
  }
  return os.str();
}

std::string write_movingai_scen(const Instance& inst, std::string_view map_name) {
  std::ostringstream os;
  os << "version 1\n";
  for (std::size_t a = 0; a < inst.n_agents(); ++a) {
    const Cell s = inst.starts[a], g = inst.goals[a];
    // Manhattan distance stands in for the optimal-length column.
    const int dist = std::abs(s.row - g.row) + std::abs(s.col - g.col);
    os << 0 << '\t' << map_name << '\t' << inst.map.width() << '\t' << inst.map.height() << '\t'
       << s.col << '\t' << s.row << '\t' << g.col << '\t' << g.row << '\t' << dist << '\n';
  }
  return os.str();
}

std::string write_instance(const Instance& inst) {
  std::ostringstream os;
  os << inst.map.height() << ' ' << inst.map.width() << '\n';
  for (int r = 0; r < inst.map.height(); ++r) {
    for (int c = 0; c < inst.map.width(); ++c) os << (inst.map.passable(Cell{r, c}) ? '.' : '@');
    os << '\n';
  }
  for (std::size_t a = 0; a < inst.n_agents(); ++a) {
    os << inst.starts[a].row << ' ' << inst.starts[a].col << ' ' << inst.goals[a].row << ' '
       << inst.goals[a].col << '\n';
  }
  return os.str();
}

Instance parse_instance(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty instance", 1);
  const auto dims = split_ws(lines[0]);
  if (dims.size() != 2) throw ParseError("expected 'H W' header", 1);
  const int height = to_int(dims[0], 1, "height");
  const int width = to_int(dims[1], 1, "width");
  if (height <= 0 || width <= 0) throw ParseError("non-positive map dimensions", 1);
  Instance inst{parse_rows(lines, 1, height, width), {}, {}};
  for (std::size_t i = 1 + static_cast<std::size_t>(height); i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    const auto tok = split_ws(lines[i]);
    if (tok.size() != 4) throw ParseError("agent line needs 'sr sc gr gc'", i + 1);
    const Cell start{to_int(tok[0], i + 1, "start row"), to_int(tok[1], i + 1, "start col")};
    const Cell goal{to_int(tok[2], i + 1, "goal row"), to_int(tok[3], i + 1, "goal col")};
    check_endpoint(inst.map, start, i + 1, "start");
    check_endpoint(inst.map, goal, i + 1, "goal");
    inst.starts.push_back(start);
    inst.goals.push_back(goal);
  }
  if (inst.starts.empty()) throw ParseError("no agent lines", lines.size());
  check_instance(inst);
  return inst;
}

std::string write_solution(const Solution& sol) {
  std::ostringstream os;
  os << "cost " << sol.total_cost << '\n';
  for (const auto& path : sol.paths) {
    for (std::size_t t = 0; t < path.size(); ++t) os << (t ? " " : "") << path[t].row << ',' << path[t].col;
    os << '\n';
  }
  return os.str();
}

Solution parse_solution(std::string_view text) {
  const auto lines = split_lines(text);
  Solution sol;
  std::size_t i = 0;
  while (i < lines.size() && is_blank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError("empty solution", 1);
  const auto head = split_ws(lines[i]);
  if (head.size() != 2 || head[0] != "cost") throw ParseError("expected 'cost N' header", i + 1);
  sol.total_cost = to_int(head[1], i + 1, "cost");
  for (++i; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    std::vector<Cell> path;
    for (auto tok : split_ws(lines[i])) {
      const auto comma = tok.find(',');
      if (comma == std::string_view::npos) throw ParseError("expected 'r,c' cell, got '" + std::string(tok) + "'", i + 1);
      path.push_back({to_int(tok.substr(0, comma), i + 1, "row"), to_int(tok.substr(comma + 1), i + 1, "col")});
    }
    sol.paths.push_back(std::move(path));
  }
  if (sol.paths.empty()) throw ParseError("solution has no paths", lines.size());
  return sol;
}

}  // namespace mapf
