// mapf: benchmark harness, single-instance solver and solution validator.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mapf/bench.hpp"
#include "mapf/instance_io.hpp"
#include "mapf/validate.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

struct InstanceArgs {
  std::string map, scen, instance;
  std::size_t agents = 0;

  void add(CLI::App* app) {
    app->add_option("--map", map, "MovingAI .map file");
    app->add_option("--scen", scen, "MovingAI .scen file");
    app->add_option("--agents", agents, "number of scenario rows to use");
    app->add_option("--instance", instance, "internal single-file instance (instead of --map/--scen)");
  }

  mapf::Instance load() const {
    if (!instance.empty()) return mapf::parse_instance(read_file(instance));
    if (map.empty() || scen.empty() || agents == 0) {
      throw std::invalid_argument("give --instance, or --map, --scen and --agents");
    }
    return mapf::load_instance(read_file(map), read_file(scen), agents);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal multi-agent path finding: M*, BPM*, rM*, rBPM*"};
  app.require_subcommand(1);

  auto* bench = app.add_subcommand("bench", "benchmark suites");
  bench->require_subcommand(1);
  auto* run = bench->add_subcommand("run", "run a benchmark suite from a config file");
  std::string config_path, out_dir;
  bool quiet = false;
  run->add_option("--config", config_path, "key = value config file")->required();
  run->add_option("--out-dir", out_dir, "override out_dir");
  run->add_flag("--quiet", quiet, "no per-run progress lines");

  auto* gen = bench->add_subcommand("gen", "generate one random instance");
  int gen_agents = 1;
  std::uint64_t gen_seed = 0;
  double obstacle_prob = 0.2, density = 0.01;
  std::string movingai_prefix;
  gen->add_option("--agents", gen_agents)->required()->check(CLI::Range(1, 64));
  gen->add_option("--seed", gen_seed)->required();
  gen->add_option("--obstacle-prob", obstacle_prob);
  gen->add_option("--density", density);
  gen->add_option("--movingai", movingai_prefix, "write PREFIX.map and PREFIX.scen instead of stdout");

  auto* solve = app.add_subcommand("solve", "solve one instance");
  InstanceArgs solve_in;
  solve_in.add(solve);
  std::string solver = "bpmstar", conflicts = "vertex_swap", csv_out, solution_out;
  double timeout = 60.0;
  solve->add_option("--solver", solver)->check(CLI::IsMember(mapf::kSolverNames));
  solve->add_option("--conflicts", conflicts)->check(CLI::IsMember({"vertex", "vertex_swap"}));
  solve->add_option("--timeout", timeout, "seconds")->check(CLI::PositiveNumber);
  solve->add_option("--out", csv_out, "CSV record file");
  solve->add_option("--solution", solution_out, "write the solution paths here");

  auto* val = app.add_subcommand("validate", "validate a solution file");
  InstanceArgs val_in;
  val_in.add(val);
  std::string solution_in, val_conflicts = "vertex_swap";
  val->add_option("--solution", solution_in)->required();
  val->add_option("--conflicts", val_conflicts)->check(CLI::IsMember({"vertex", "vertex_swap"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto cfg = mapf::parse_bench_config(read_file(config_path));
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      const auto records = mapf::run_suite(cfg, quiet ? nullptr : &std::cerr);
      std::cout << mapf::summary_csv(mapf::summarize(records));
      return 0;
    }
    if (gen->parsed()) {
      const auto inst = mapf::generate_instance(gen_agents, gen_seed, obstacle_prob, density);
      if (movingai_prefix.empty()) {
        std::cout << mapf::write_instance(inst);
      } else {
        const std::string map_name = std::filesystem::path(movingai_prefix + ".map").filename().string();
        write_file(movingai_prefix + ".map", mapf::write_movingai_map(inst.map));
        write_file(movingai_prefix + ".scen", mapf::write_movingai_scen(inst, map_name));
      }
      return 0;
    }
    if (solve->parsed()) {
      const auto inst = solve_in.load();
      mapf::SolveOptions opts;
      opts.model = mapf::parse_conflict_model(conflicts);
      opts.budget.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = mapf::solve_with(solver, inst, opts);
      mapf::BenchRecord rec;
      rec.solver = solver;
      rec.n_agents = static_cast<int>(inst.n_agents());
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      rec.outcome = res.outcome;
      rec.expansions = res.stats.expansions;
      rec.generated = res.stats.generated;
      rec.bypass_successes = res.stats.bypass_successes;
      rec.bypass_failures = res.stats.bypass_failures;
      if (res.solution) {
        rec.cost = res.solution->total_cost;
        rec.valid = mapf::validate(inst, *res.solution, opts.model).ok;
        if (!solution_out.empty()) write_file(solution_out, mapf::write_solution(*res.solution));
      }
      const std::string row = mapf::to_csv_row(rec);
      if (!csv_out.empty()) write_file(csv_out, std::string(mapf::kRecordHeader) + "\n" + row + "\n");
      std::cout << mapf::kRecordHeader << '\n' << row << '\n';
      return res.outcome == mapf::Outcome::Solved ? 0 : 2;
    }
    if (val->parsed()) {
      const auto inst = val_in.load();
      const auto sol = mapf::parse_solution(read_file(solution_in));
      const auto rep = mapf::validate(inst, sol, mapf::parse_conflict_model(val_conflicts));
      std::cout << mapf::to_text(rep);
      return rep.ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
