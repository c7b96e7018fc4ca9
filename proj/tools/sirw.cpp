// Command-line front end: experiment runner and one-off trace simulator.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sirw/experiments.hpp"
#include "sirw/graph.hpp"
#include "sirw/timelines.hpp"
#include "sirw/walk.hpp"
#include "sirw/weights.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitThresholdFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitTieAbort = 3;

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("SIRW_SEED");
  if (!s || !*s) return std::nullopt;
  return std::strtoull(s, nullptr, 10);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

sirw::Graph parse_graph(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts[0] == "line" && parts.size() == 1) return sirw::Graph::line();
  if (parts[0] == "cycle" && parts.size() == 2)
    return sirw::Graph::cycle(std::stoi(parts[1]));
  throw std::invalid_argument("unknown graph spec: " + spec +
                              " (expected line or cycle:N)");
}

sirw::WeightFunction parse_weight(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts[0] == "power" && parts.size() == 3)
    return sirw::WeightFunction::power(std::stod(parts[1]),
                                       std::stod(parts[2]));
  if (parts[0] == "table" && parts.size() == 2) {
    std::vector<double> vals;
    for (const auto& v : split(parts[1], ',')) vals.push_back(std::stod(v));
    return sirw::WeightFunction::table(std::move(vals));
  }
  if (parts[0] == "alternating" && parts.size() == 5) {
    // alternating:<even scale>:<even base>:<odd scale>:<odd base>
    auto rule = [](const std::string& scale, const std::string& base) {
      sirw::AlternatingRule r;
      r.scale = std::stod(scale);
      r.base = std::stod(base);
      r.type = r.base == 1.0 ? sirw::AlternatingRule::Type::constant
                             : sirw::AlternatingRule::Type::geometric;
      return r;
    };
    return sirw::WeightFunction::alternating(rule(parts[1], parts[2]),
                                             rule(parts[3], parts[4]));
  }
  throw std::invalid_argument(
      "unknown weight spec: " + spec +
      " (expected power:delta:rho, table:v1,v2,..., or "
      "alternating:es:eb:os:ob)");
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

int cmd_run(const std::string& config_path,
            std::optional<std::uint64_t> seed_flag,
            std::optional<std::int64_t> reps_flag, const std::string& out_dir,
            std::optional<std::string> format_flag,
            std::optional<int> parallel_flag) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config " << config_path << "\n";
    return kExitConfigError;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  sirw::ExperimentConfig cfg = sirw::config_from_json(buf.str());
  if (seed_flag)
    cfg.seed = *seed_flag;
  else if (auto env = env_seed(); env && cfg.seed == 1)
    cfg.seed = *env;
  if (reps_flag) cfg.reps = *reps_flag;
  if (format_flag) cfg.format = *format_flag;
  if (parallel_flag) cfg.parallel = *parallel_flag;

  sirw::Report report = sirw::run_experiment(cfg);

  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  bool want_json = cfg.format == "json" || cfg.format == "both";
  bool want_csv = cfg.format == "csv" || cfg.format == "both";
  if (want_json)
    write_file(dir / (report.experiment_id + "_report.json"),
               report.to_json());
  if (want_csv) {
    std::ostringstream checks;
    checks << "check,pass,value,threshold\n";
    for (const auto& c : report.checks)
      checks << c.name << "," << (c.pass ? 1 : 0) << ","
             << std::setprecision(17) << c.value << ",\"" << c.threshold
             << "\"\n";
    write_file(dir / (report.experiment_id + "_checks.csv"), checks.str());
  }
  for (const auto& [name, body] : report.series)
    write_file(dir / name, body);

  for (const auto& c : report.checks)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << report.experiment_id
              << "." << c.name << "  value=" << c.value << "  ("
              << c.threshold << ")\n";
  std::cout << (report.pass ? "PASS" : "FAIL") << "  " << report.experiment_id
            << "\n";
  return report.pass ? kExitPass : kExitThresholdFailure;
}

int cmd_simulate(const std::string& graph_spec, const std::string& weight_spec,
                 const std::string& mode_spec, std::int64_t steps,
                 std::uint64_t seed, sirw::Vertex x0,
                 const std::string& trace_path) {
  sirw::Graph g = parse_graph(graph_spec);
  sirw::WeightFunction w = parse_weight(weight_spec);
  sirw::Mode mode;
  if (mode_spec == "vertex")
    mode = sirw::Mode::vertex;
  else if (mode_spec == "edge")
    mode = sirw::Mode::edge;
  else
    throw std::invalid_argument("mode must be vertex or edge");
  sirw::Walker walker(g, w, mode, x0, seed);
  sirw::Trace t = walker.run(steps);
  std::ostringstream csv;
  csv << "n,position\n";
  for (std::size_t n = 0; n < t.positions.size(); ++n)
    csv << n << "," << t.positions[n] << "\n";
  if (trace_path.empty() || trace_path == "-")
    std::cout << csv.str();
  else
    write_file(trace_path, csv.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-interacting random walk simulator and experiment suite"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-experiments",
                                  "List available experiments");

  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  std::string config_path, out_dir = ".";
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::int64_t> reps_flag;
  std::optional<std::string> format_flag;
  std::optional<int> parallel_flag;
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--seed", seed_flag, "Master seed (overrides config)");
  run->add_option("--reps", reps_flag, "Replication count (overrides config)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", format_flag, "json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  run->add_option("--parallel", parallel_flag, "Worker thread count");

  auto* sim = app.add_subcommand("simulate", "Simulate one trace to CSV");
  std::string graph_spec = "line", weight_spec = "power:0:1",
              mode_spec = "vertex", trace_path;
  std::int64_t steps = 1000;
  std::uint64_t sim_seed = env_seed().value_or(1);
  sirw::Vertex x0 = 0;
  sim->add_option("--graph", graph_spec, "line or cycle:N");
  sim->add_option("--weight", weight_spec,
                  "power:delta:rho, table:v1,v2,..., or "
                  "alternating:es:eb:os:ob");
  sim->add_option("--mode", mode_spec, "vertex or edge");
  sim->add_option("--steps", steps, "Number of steps");
  sim->add_option("--seed", sim_seed, "Seed (SIRW_SEED fallback)");
  sim->add_option("--x0", x0, "Starting vertex");
  sim->add_option("--trace", trace_path, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (list->parsed()) {
      for (const auto& info : sirw::experiment_catalog())
        std::cout << info.id << "  (reps=" << info.default_reps
                  << ", steps=" << info.default_steps << ")\n    "
                  << info.description << "\n";
      return kExitPass;
    }
    if (run->parsed())
      return cmd_run(config_path, seed_flag, reps_flag, out_dir, format_flag,
                     parallel_flag);
    if (sim->parsed())
      return cmd_simulate(graph_spec, weight_spec, mode_spec, steps, sim_seed,
                          x0, trace_path);
  } catch (const sirw::TieAbortError& e) {
    std::cerr << "tie-abort: " << e.what() << "\n";
    return kExitTieAbort;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitPass;
}
