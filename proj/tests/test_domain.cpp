#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mapf/instance_io.hpp"
#include "support.hpp"

using namespace mapf;

namespace {

std::set<Cell> as_set(const std::vector<Cell>& v) { return {v.begin(), v.end()}; }

std::string movingai_map(int h, int w, const std::vector<std::string>& rows) {
  std::ostringstream os;
  os << "type octile\nheight " << h << "\nwidth " << w << "\nmap\n";
  for (const auto& r : rows) os << r << '\n';
  return os.str();
}

}  // namespace

TEST_CASE("neighbors: open interior, corner and obstacle clipping") {
  const GridMap open(3, 3);
  CHECK(as_set(neighbors(open, {1, 1})) == std::set<Cell>{{1, 1}, {0, 1}, {2, 1}, {1, 0}, {1, 2}});
  CHECK(neighbors(open, {0, 0}).size() == 3);
  CHECK(as_set(neighbors(open, {0, 0})) == std::set<Cell>{{0, 0}, {0, 1}, {1, 0}});

  const GridMap walled(3, 3, {{0, 1}});
  CHECK(as_set(neighbors(walled, {0, 0})) == std::set<Cell>{{0, 0}, {1, 0}});
  CHECK_THROWS_AS(neighbors(walled, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(neighbors(walled, {3, 0}), std::invalid_argument);
}

TEST_CASE("neighbors: id variant matches the cell variant") {
  const GridMap map(4, 5, {{1, 1}, {2, 3}});
  std::array<CellId, 5> out{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 5; ++c) {
      if (!map.passable(Cell{r, c})) continue;
      const auto cells = neighbors(map, Cell{r, c});
      const std::size_t k = neighbors(map, map.id(Cell{r, c}), out);
      REQUIRE(k == cells.size());
      for (std::size_t i = 0; i < k; ++i) CHECK(map.cell(out[i]) == cells[i]);
    }
  }
}

TEST_CASE("GridMap invariants") {
  const GridMap map(4, 6, {{0, 0}, {3, 5}, {0, 0}});
  CHECK(map.obstacle_count() == 2);
  CHECK(map.passable_count() == 22);
  CHECK_THROWS_AS(GridMap(2, 2, {{2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(GridMap(0, 3), std::invalid_argument);
}

TEST_CASE("generate_instance: one agent per hundred passable cells") {
  const auto [h, w] = generator_shape(1, 0.0, 0.01);
  CHECK(h * w == 100);
  double passable = 0;
  for (std::uint64_t s = 0; s < 100; ++s) passable += generate_instance(1, s).map.passable_count();
  CHECK(passable / 100 == doctest::Approx(100).epsilon(0.10));
}

TEST_CASE("generate_instance: deterministic for a fixed seed") {
  CHECK(generate_instance(4, 7) == generate_instance(4, 7));
  CHECK(write_instance(generate_instance(4, 7)) == write_instance(generate_instance(4, 7)));
  CHECK_FALSE(generate_instance(4, 7) == generate_instance(4, 8));
}

TEST_CASE("generate_instance: zero obstacle probability") {
  const Instance inst = generate_instance(2, 3, 0.0);
  CHECK(inst.map.cell_count() == 200);
  CHECK(inst.map.obstacle_count() == 0);
}

TEST_CASE("generate_instance: bad parameters") {
  CHECK_THROWS_AS(generate_instance(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_instance(3, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_instance(3, 1, 0.2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_instance_on(2, 2, 5, 1), GenerationError);
}

TEST_CASE("property: generated instances are valid and near the target density") {
  for (int n : {1, 3, 8, 20}) {
    double passable = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Instance inst = generate_instance(n, 1000 + s);
      REQUIRE(instance_defects(inst).empty());
      REQUIRE(inst.n_agents() == static_cast<std::size_t>(n));
      passable += inst.map.passable_count();
    }
    CHECK(passable / 100 == doctest::Approx(n / 0.01).epsilon(0.10));
  }
}

TEST_CASE("instance_defects reports each broken invariant") {
  Instance inst;
  inst.map = GridMap(2, 3, {{0, 1}, {1, 1}});
  inst.starts = {{0, 0}, {0, 0}};
  inst.goals = {{0, 2}, {0, 1}};
  const auto defects = instance_defects(inst);
  CHECK(defects.size() == 2);
  CHECK_THROWS_AS(check_instance(inst), std::invalid_argument);

  inst.starts = {{0, 0}, {1, 0}};
  inst.goals = {{0, 2}, {1, 2}};
  CHECK(instance_defects(inst).size() == 2);
  inst.goals = {{1, 0}, {0, 0}};
  CHECK(instance_defects(inst).empty());
}

TEST_CASE("load_instance: minimal MovingAI files") {
  const std::string map = movingai_map(2, 2, {"..", ".."});
  const std::string scen = "version 1\n0\tm.map\t2\t2\t0\t0\t1\t1\t2\n";
  const Instance inst = load_instance(map, scen, 1);
  CHECK(inst.n_agents() == 1);
  CHECK(inst.starts[0] == Cell{0, 0});
  CHECK(inst.goals[0] == Cell{1, 1});
}

TEST_CASE("load_instance: row count mismatch names the line") {
  const std::string map = movingai_map(2, 2, {"..", "..", ".."});
  try {
    parse_movingai_map(map);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
  }
  CHECK_THROWS_AS(parse_movingai_map("type octile\nheight 2\nwidth 2\n..\n..\n"), ParseError);
  CHECK_THROWS_AS(parse_movingai_map(movingai_map(2, 2, {"..", ".x"})), ParseError);
}

TEST_CASE("load_instance: scenario rows in file order") {
  std::vector<std::string> rows(8, "........");
  rows[2][6] = '@';
  rows[6][0] = 'T';
  const std::string map = movingai_map(8, 8, rows);
  std::ostringstream scen;
  scen << "version 1\n";
  // goal (row r, col 7-r) from start (row r, col r) for r = 0..7, then four more.
  const int pts[12][4] = {{0, 0, 7, 0}, {1, 1, 6, 1}, {2, 2, 5, 2}, {3, 3, 4, 3}, {4, 4, 3, 4}, {5, 5, 2, 5},
                          {6, 6, 1, 6}, {7, 7, 0, 7}, {0, 1, 1, 0}, {0, 2, 2, 0}, {0, 3, 3, 0}, {0, 4, 4, 0}};
  for (const auto& p : pts) scen << "0\tm.map\t8\t8\t" << p[0] << '\t' << p[1] << '\t' << p[2] << '\t' << p[3] << "\t7\n";
  const Instance inst = load_instance(map, scen.str(), 5);
  REQUIRE(inst.n_agents() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(inst.starts[i] == Cell{pts[i][1], pts[i][0]});
    CHECK(inst.goals[i] == Cell{pts[i][3], pts[i][2]});
  }
  CHECK_FALSE(inst.map.passable(Cell{2, 6}));
  CHECK_FALSE(inst.map.passable(Cell{6, 0}));
  CHECK_THROWS_AS(load_instance(map, scen.str(), 13), ParseError);
}

TEST_CASE("load_instance: start on an obstacle") {
  const std::string map = movingai_map(2, 2, {"@.", ".."});
  try {
    load_instance(map, "version 1\n0\tm.map\t2\t2\t0\t0\t1\t1\t2\n", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("internal format: explicit text and all-passable body") {
  Instance inst;
  inst.map = GridMap(2, 3);
  inst.starts = {{0, 0}};
  inst.goals = {{1, 2}};
  CHECK(write_instance(inst) == "2 3\n...\n...\n0 0 1 2\n");
  CHECK(parse_instance(write_instance(inst)) == inst);
}

TEST_CASE("property: round trips through both formats") {
  testing::CaseGen gen(42);
  for (int i = 0; i < 100; ++i) {
    const Instance inst = generate_instance(gen.between(1, 12), gen.seed(), 0.2, 0.05);
    const std::string text = write_instance(inst);
    const Instance back = parse_instance(text);
    REQUIRE(back == inst);
    REQUIRE(write_instance(back) == text);
    const Instance via_movingai =
        load_instance(write_movingai_map(inst.map), write_movingai_scen(inst), inst.n_agents());
    REQUIRE(via_movingai == inst);
  }
}

TEST_CASE("conflict model names") {
  CHECK(parse_conflict_model("vertex") == ConflictModel::VertexOnly);
  CHECK(parse_conflict_model("vertex_swap") == ConflictModel::VertexAndSwap);
  CHECK(parse_conflict_model(to_string(ConflictModel::VertexOnly)) == ConflictModel::VertexOnly);
  CHECK_THROWS_AS(parse_conflict_model("edge"), std::invalid_argument);
}
