#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapf/instance.hpp"
#include "mapf/solution.hpp"

namespace mapf {

inline const std::vector<std::string> kSolverNames = {"mstar", "bpmstar", "rmstar", "rbpmstar", "oracle"};

/// Runs the named solver: mstar, bpmstar, rmstar, rbpmstar or oracle.
SolveResult solve_with(std::string_view solver, const Instance& instance, const SolveOptions& options);

struct BenchConfig {
  std::vector<int> agent_counts{5, 10, 15, 20, 25, 30, 35, 40};
  int instances_per_group = 25;
  double timeout_secs = 60.0;
  std::vector<std::string> solvers{"mstar", "bpmstar", "rmstar", "rbpmstar"};
  std::uint64_t seed = 1;
  ConflictModel conflict_model = ConflictModel::VertexAndSwap;
  std::filesystem::path out_dir = "bench_out";
  int threads = 1;
  std::size_t max_vertices = Budget{}.max_vertices;
  double obstacle_prob = 0.2;
  double density = 0.01;
  /// Also writes every instance in the internal text format.
  bool save_instances = false;
};

/// Parses `key = value` lines; `#` starts a comment; lists are comma
/// separated. Throws std::invalid_argument naming the line on bad input.
BenchConfig parse_bench_config(std::string_view text);
std::string format_bench_config(const BenchConfig& config);

/// Seed of instance `index` in the group with `n_agents` agents.
std::uint64_t instance_seed(std::uint64_t suite_seed, int n_agents, int index);

struct BenchRecord {
  std::string solver;
  int n_agents = 0;
  int index = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::NoPath;
  std::optional<Cost> cost;
  double wall_ms = 0.0;
  std::uint64_t expansions = 0;
  std::uint64_t generated = 0;
  std::uint64_t bypass_successes = 0;
  std::uint64_t bypass_failures = 0;
  /// Solved runs only: whether the solution passed the validator.
  bool valid = true;
};

inline const char* const kRecordHeader =
    "solver,n_agents,instance,seed,outcome,cost,wall_ms,expansions,generated,bypass_successes,bypass_failures,"
    "valid";

std::string csv_field(std::string_view field);
std::string to_csv_row(const BenchRecord& record);
/// Records sorted by (n_agents, index, solver order).
void sort_records(std::vector<BenchRecord>& records);

/// Generates every instance group and runs each solver on it. Writes
/// records.partial.csv as runs finish, then the sorted records.csv,
/// instances.csv and run_meta.txt. `log` receives one line per run.
std::vector<BenchRecord> run_suite(const BenchConfig& config, std::ostream* log = nullptr);

struct SummaryRow {
  std::string solver;
  int n_agents = 0;
  int runs = 0;
  int solved = 0;
  int nopath = 0;
  int timeout = 0;
  double success_rate = 0.0;
  std::optional<double> median_ms;
  std::optional<double> median_expansions;
};

double median(std::vector<double> values);
/// One row per (solver, n_agents). Medians cover solved runs only.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& summary);

/// Writes success_rate.dat, median_time.dat and matching .svg charts.
void emit_plots(const std::vector<SummaryRow>& summary, const std::filesystem::path& out_dir);
std::string plot_data(const std::vector<SummaryRow>& summary, bool success_rate);
std::string plot_svg(const std::vector<SummaryRow>& summary, bool success_rate);

}  // namespace mapf
