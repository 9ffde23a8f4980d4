#include "mapf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mapf/bypass.hpp"
#include "mapf/instance_io.hpp"
#include "mapf/mstar.hpp"
#include "mapf/recursion.hpp"
#include "mapf/validate.hpp"
#include "rng.hpp"

namespace mapf {

SolveResult solve_with(std::string_view solver, const Instance& instance, const SolveOptions& options) {
  if (solver == "mstar") return solve_mstar(instance, options);
  if (solver == "bpmstar") return solve_bpmstar(instance, options);
  if (solver == "rmstar") return solve_recursive(instance, false, options);
  if (solver == "rbpmstar") return solve_recursive(instance, true, options);
  if (solver == "oracle") return oracle_solve(instance, options);
  throw std::invalid_argument("unknown solver '" + std::string(solver) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto end = s.find(',', pos);
    const auto item = trim(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (!item.empty()) out.push_back(item);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, std::string_view key) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": bad value '" + std::string(s) +
                                "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view s, std::size_t line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("config line " + std::to_string(line) + ": expected boolean, got '" + std::string(s) + "'");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int solver_rank(std::string_view s) {
  const auto it = std::find(kSolverNames.begin(), kSolverNames.end(), s);
  return static_cast<int>(it - kSolverNames.begin());
}

bool solver_less(const std::string& a, const std::string& b) {
  const int ra = solver_rank(a), rb = solver_rank(b);
  return ra != rb ? ra < rb : a < b;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "agent_counts") {
      cfg.agent_counts.clear();
      for (auto item : split_list(value)) cfg.agent_counts.push_back(parse_number<int>(item, line_no, key));
    } else if (key == "instances_per_group") {
      cfg.instances_per_group = parse_number<int>(value, line_no, key);
    } else if (key == "timeout_secs") {
      cfg.timeout_secs = std::stod(std::string(value));
    } else if (key == "solvers") {
      cfg.solvers.clear();
      for (auto item : split_list(value)) {
        if (solver_rank(item) == static_cast<int>(kSolverNames.size())) {
          throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown solver '" +
                                      std::string(item) + "'");
        }
        cfg.solvers.emplace_back(item);
      }
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "conflict_model") {
      cfg.conflict_model = parse_conflict_model(value);
    } else if (key == "out_dir") {
      cfg.out_dir = std::string(value);
    } else if (key == "threads") {
      cfg.threads = parse_number<int>(value, line_no, key);
    } else if (key == "max_vertices") {
      cfg.max_vertices = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "obstacle_prob") {
      cfg.obstacle_prob = std::stod(std::string(value));
    } else if (key == "density") {
      cfg.density = std::stod(std::string(value));
    } else if (key == "save_instances") {
      cfg.save_instances = parse_bool(value, line_no);
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (cfg.agent_counts.empty()) throw std::invalid_argument("config: agent_counts is empty");
  for (int n : cfg.agent_counts) {
    if (n < 1 || n > static_cast<int>(kMaxAgents)) throw std::invalid_argument("config: agent count out of range");
  }
  if (cfg.instances_per_group < 1) throw std::invalid_argument("config: instances_per_group must be >= 1");
  if (!(cfg.timeout_secs > 0)) throw std::invalid_argument("config: timeout_secs must be > 0");
  if (cfg.solvers.empty()) throw std::invalid_argument("config: no solvers");
  if (cfg.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  return cfg;
}

std::string format_bench_config(const BenchConfig& c) {
  std::ostringstream os;
  os << "agent_counts = ";
  for (std::size_t i = 0; i < c.agent_counts.size(); ++i) os << (i ? "," : "") << c.agent_counts[i];
  os << "\ninstances_per_group = " << c.instances_per_group << "\ntimeout_secs = " << c.timeout_secs
     << "\nsolvers = ";
  for (std::size_t i = 0; i < c.solvers.size(); ++i) os << (i ? "," : "") << c.solvers[i];
  os << "\nseed = " << c.seed << "\nconflict_model = " << to_string(c.conflict_model)
     << "\nout_dir = " << c.out_dir.string() << "\nthreads = " << c.threads << "\nmax_vertices = " << c.max_vertices
     << "\nobstacle_prob = " << c.obstacle_prob << "\ndensity = " << c.density
     << "\nsave_instances = " << (c.save_instances ? "true" : "false") << '\n';
  return os.str();
}

std::uint64_t instance_seed(std::uint64_t suite_seed, int n_agents, int index) {
  return detail::splitmix64(detail::splitmix64(suite_seed ^ (static_cast<std::uint64_t>(n_agents) << 32)) +
                            static_cast<std::uint64_t>(index));
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << csv_field(r.solver) << ',' << r.n_agents << ',' << r.index << ',' << r.seed << ',' << to_string(r.outcome)
     << ',' << (r.cost ? std::to_string(*r.cost) : "") << ',' << fixed(r.wall_ms, 3) << ',' << r.expansions << ','
     << r.generated << ',' << r.bypass_successes << ',' << r.bypass_failures << ',' << (r.valid ? 1 : 0);
  return os.str();
}

void sort_records(std::vector<BenchRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    if (a.n_agents != b.n_agents) return a.n_agents < b.n_agents;
    if (a.index != b.index) return a.index < b.index;
    return solver_less(a.solver, b.solver);
  });
}

std::vector<BenchRecord> run_suite(const BenchConfig& cfg, std::ostream* log) {
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.save_instances) std::filesystem::create_directories(cfg.out_dir / "instances");

  struct Task {
    std::size_t instance;
    std::string solver;
  };
  struct Item {
    int n_agents;
    int index;
    std::uint64_t seed;
    Instance instance;
  };
  std::vector<Item> items;
  std::ostringstream inst_csv;
  inst_csv << "n_agents,instance,seed,height,width,obstacles,fingerprint\n";
  for (int n : cfg.agent_counts) {
    for (int i = 0; i < cfg.instances_per_group; ++i) {
      const std::uint64_t seed = instance_seed(cfg.seed, n, i);
      Instance inst = generate_instance(n, seed, cfg.obstacle_prob, cfg.density);
      const std::string text = write_instance(inst);
      char fp[17];
      std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
      inst_csv << n << ',' << i << ',' << seed << ',' << inst.map.height() << ',' << inst.map.width() << ','
               << inst.map.obstacle_count() << ',' << fp << '\n';
      if (cfg.save_instances) {
        write_file(cfg.out_dir / "instances" / ("n" + std::to_string(n) + "_" + std::to_string(i) + ".txt"), text);
      }
      items.push_back({n, i, seed, std::move(inst)});
    }
  }
  write_file(cfg.out_dir / "instances.csv", inst_csv.str());

  std::vector<Task> tasks;
  for (std::size_t k = 0; k < items.size(); ++k) {
    for (const auto& s : cfg.solvers) tasks.push_back({k, s});
  }

  std::ofstream partial(cfg.out_dir / "records.partial.csv", std::ios::trunc);
  if (!partial) throw std::runtime_error("cannot open records.partial.csv in " + cfg.out_dir.string());
  partial << kRecordHeader << '\n' << std::flush;

  std::vector<BenchRecord> records(tasks.size());
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Item& item = items[tasks[t].instance];
      SolveOptions opts;
      opts.model = cfg.conflict_model;
      opts.budget.timeout = std::chrono::milliseconds(static_cast<long long>(std::llround(cfg.timeout_secs * 1000)));
      opts.budget.max_vertices = cfg.max_vertices;
      BenchRecord rec;
      rec.solver = tasks[t].solver;
      rec.n_agents = item.n_agents;
      rec.index = item.index;
      rec.seed = item.seed;
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const SolveResult res = solve_with(rec.solver, item.instance, opts);
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rec.outcome = res.outcome;
        rec.expansions = res.stats.expansions;
        rec.generated = res.stats.generated;
        rec.bypass_successes = res.stats.bypass_successes;
        rec.bypass_failures = res.stats.bypass_failures;
        if (res.solution) {
          rec.cost = res.solution->total_cost;
          rec.valid = validate(item.instance, *res.solution, cfg.conflict_model).ok;
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
      std::lock_guard lock(mu);
      records[t] = rec;
      partial << to_csv_row(rec) << '\n' << std::flush;
      if (log) {
        *log << rec.solver << " n=" << rec.n_agents << " i=" << rec.index << ' ' << to_string(rec.outcome)
             << " cost=" << (rec.cost ? std::to_string(*rec.cost) : "-") << " ms=" << fixed(rec.wall_ms, 1)
             << " exp=" << rec.expansions << '\n'
             << std::flush;
      }
    }
  };
  if (cfg.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < cfg.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  partial.close();

  sort_records(records);
  std::ostringstream csv;
  csv << kRecordHeader << '\n';
  for (const auto& r : records) csv << to_csv_row(r) << '\n';
  write_file(cfg.out_dir / "records.csv", csv.str());
  std::filesystem::remove(cfg.out_dir / "records.partial.csv");

  const auto summary = summarize(records);
  write_file(cfg.out_dir / "summary.csv", summary_csv(summary));
  emit_plots(summary, cfg.out_dir);
  std::ostringstream meta;
  meta << format_bench_config(cfg) << "worker_threads = " << cfg.threads
       << "\nhardware_concurrency = " << std::thread::hardware_concurrency()
       << "\nwall_time_note = wall_ms is measured per run while " << cfg.threads << " run(s) execute concurrently\n";
  write_file(cfg.out_dir / "run_meta.txt", meta.str());
  return records;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::pair<int, std::string>, std::vector<const BenchRecord*>> groups;
  std::vector<std::string> solvers;
  for (const auto& r : records) {
    groups[{r.n_agents, r.solver}].push_back(&r);
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) solvers.push_back(r.solver);
  }
  std::sort(solvers.begin(), solvers.end(), solver_less);
  std::vector<SummaryRow> out;
  for (const auto& s : solvers) {
    for (const auto& [key, recs] : groups) {
      if (key.second != s) continue;
      SummaryRow row;
      row.solver = s;
      row.n_agents = key.first;
      std::vector<double> times, exps;
      for (const BenchRecord* r : recs) {
        ++row.runs;
        switch (r->outcome) {
          case Outcome::Solved:
            ++row.solved;
            times.push_back(r->wall_ms);
            exps.push_back(static_cast<double>(r->expansions));
            break;
          case Outcome::NoPath:
            ++row.nopath;
            break;
          case Outcome::Timeout:
            ++row.timeout;
            break;
        }
      }
      row.success_rate = static_cast<double>(row.solved) / row.runs;
      if (!times.empty()) {
        row.median_ms = median(times);
        row.median_expansions = median(exps);
      }
      out.push_back(row);
    }
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream os;
  os << "solver,n_agents,runs,solved,nopath,timeout,success_rate,median_ms,median_expansions\n";
  for (const auto& r : summary) {
    os << csv_field(r.solver) << ',' << r.n_agents << ',' << r.runs << ',' << r.solved << ',' << r.nopath << ','
       << r.timeout << ',' << fixed(r.success_rate, 4) << ',' << (r.median_ms ? fixed(*r.median_ms, 3) : "") << ','
       << (r.median_expansions ? fixed(*r.median_expansions, 1) : "") << '\n';
  }
  return os.str();
}

std::string plot_data(const std::vector<SummaryRow>& summary, bool success_rate) {
  std::ostringstream os;
  os << (success_rate ? "# solver n_agents success_rate\n" : "# solver n_agents median_ms\n");
  for (const auto& r : summary) {
    os << r.solver << ' ' << r.n_agents << ' ';
    if (success_rate) {
      os << fixed(r.success_rate, 4);
    } else {
      os << (r.median_ms ? fixed(*r.median_ms, 3) : "nan");
    }
    os << '\n';
  }
  return os.str();
}

std::string plot_svg(const std::vector<SummaryRow>& summary, bool success_rate) {
  constexpr double W = 640, H = 400, L = 70, R = 150, T = 40, B = 50;
  static const char* const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::vector<std::string> solvers;
  int xmin = 0, xmax = 1;
  double ymax = success_rate ? 1.0 : 0.0;
  bool first = true;
  for (const auto& r : summary) {
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) solvers.push_back(r.solver);
    xmin = first ? r.n_agents : std::min(xmin, r.n_agents);
    xmax = first ? r.n_agents : std::max(xmax, r.n_agents);
    first = false;
    if (!success_rate && r.median_ms) ymax = std::max(ymax, *r.median_ms);
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax <= 0) ymax = 1.0;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - y / ymax * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << (success_rate ? "Success rate" : "Median time of solved runs (ms)") << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = ymax * k / 4;
    os << "<text x=\"" << L - 6 << "\" y=\"" << fixed(py(y) + 4, 1)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << (success_rate ? fixed(y, 2) : fixed(y, 0)) << "</text>\n";
  }
  std::vector<int> xs;
  for (const auto& r : summary) {
    if (std::find(xs.begin(), xs.end(), r.n_agents) == xs.end()) xs.push_back(r.n_agents);
  }
  for (int x : xs) {
    os << "<text x=\"" << fixed(px(x), 1) << "\" y=\"" << H - B + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << x << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">agents</text>\n";
  for (std::size_t s = 0; s < solvers.size(); ++s) {
    const char* color = colors[s % 6];
    std::ostringstream pts;
    for (const auto& r : summary) {
      if (r.solver != solvers[s]) continue;
      const std::optional<double> y = success_rate ? std::optional<double>(r.success_rate) : r.median_ms;
      if (!y) continue;
      pts << fixed(px(r.n_agents), 1) << ',' << fixed(py(*y), 1) << ' ';
      os << "<circle cx=\"" << fixed(px(r.n_agents), 1) << "\" cy=\"" << fixed(py(*y), 1) << "\" r=\"3\" fill=\""
         << color << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
    const double ly = T + 18.0 * s + 10;
    os << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 40 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 46 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"12\">"
       << solvers[s] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_plots(const std::vector<SummaryRow>& summary, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "success_rate.dat", plot_data(summary, true));
  write_file(out_dir / "median_time.dat", plot_data(summary, false));
  write_file(out_dir / "success_rate.svg", plot_svg(summary, true));
  write_file(out_dir / "median_time.svg", plot_svg(summary, false));
}

}  // namespace mapf
