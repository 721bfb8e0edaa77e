// grasspack: bounds, packing experiments, configuration evaluation and export.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "grasspack/bounds.hpp"
#include "grasspack/config_io.hpp"
#include "grasspack/error.hpp"
#include "grasspack/harness.hpp"

namespace gp = grasspack;

namespace {

// "4..12", "3,5,7" or "6".
std::vector<long> parse_range(const std::string& text) {
  std::vector<long> out;
  auto to_long = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw gp::Error(gp::Errc::InvalidInput, fmt::format("bad range '{}'", text));
    }
    return v;
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const long lo = to_long(text.substr(0, dots));
    const long hi = to_long(text.substr(dots + 2));
    if (hi < lo) throw gp::Error(gp::Errc::InvalidInput, fmt::format("empty range '{}'", text));
    for (long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(to_long(text.substr(start, comma - start)));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

gp::Sweep parse_sweep(const std::string& text) {
  gp::Sweep s;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &s.min_factor, &s.max_factor, &s.steps, &tail) != 3) {
    throw gp::Error(gp::Errc::InvalidInput, fmt::format("sweep must look like 1.0:2.0:8, got '{}'", text));
  }
  return s;
}

struct Shape {
  std::string space = "projective";
  std::string field = "R";
  std::string metric = "chordal";
  std::string d;
  std::string K = "1";
  std::string N;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--space", space, "projective, grassmann or sphere")->capture_default_str();
    cmd->add_option("--field", field, "R or C")->capture_default_str();
    cmd->add_option("--metric", metric, "chordal, spectral or fs")->capture_default_str();
    cmd->add_option("-d", d, "ambient dimension(s), e.g. 3 or 4..12 or 4,6")->required();
    cmd->add_option("-K", K, "subspace dimension(s)")->capture_default_str();
    cmd->add_option("-N", N, "number of subspaces")->required();
  }
};

int run_bound(const Shape& shape) {
  const gp::Space space = gp::parse_space(shape.space);
  const gp::Field field = gp::parse_field(shape.field);
  const gp::Metric metric = gp::parse_metric(shape.metric);
  fmt::print("d,K,N,bound,attainable,attainability_limit,equidistance_implied,angle_degrees,mu\n");
  for (long d : parse_range(shape.d)) {
    for (long K : parse_range(shape.K)) {
      for (long N : parse_range(shape.N)) {
        gp::BoundReport r;
        if (space == gp::Space::Projective) {
          r = gp::rankin_projective(d, N, field);
        } else if (space == gp::Space::Grassmann && metric == gp::Metric::Chordal) {
          r = gp::rankin_chordal(d, K, N, field);
        } else if (space == gp::Space::Grassmann && metric == gp::Metric::Spectral) {
          r = gp::rankin_spectral(d, K, N, field);
        } else {
          throw gp::Error(gp::Errc::InvalidInput, "bounds exist for projective, chordal and spectral packings");
        }
        const double mu = gp::mu_from_bound(space, metric, field, d, K, N);
        fmt::print("{},{},{},{:.17g},{},{},{},{},{:.17g}\n", d, K, N, r.bound_value, r.attainable,
                   r.attainability_limit, r.equidistance_implied,
                   space == gp::Space::Projective ? fmt::format("{:.17g}", r.angle_degrees) : "",
                   mu);
      }
    }
  }
  return 0;
}

struct SolveOptions {
  Shape shape;
  std::string mu_from_ref;
  bool mu_from_bound = false;
  std::optional<double> mu;
  std::string sweep;
  std::size_t trials = 10;
  std::size_t max_iter = 5000;
  double stop_slack = 1e-5;
  std::uint64_t seed = 0;
  std::optional<double> tau;
  std::size_t init_draws = 10000;
  std::string out;
  bool no_timestamp = false;
  std::size_t workers = 0;
  std::string save_config;
};

int run_solve(const SolveOptions& o) {
  gp::ExperimentSpec spec;
  spec.space = gp::parse_space(o.shape.space);
  spec.field = gp::parse_field(o.shape.field);
  spec.metric = gp::parse_metric(o.shape.metric);
  spec.d_values = parse_range(o.shape.d);
  spec.K_values = parse_range(o.shape.K);
  spec.N_values = parse_range(o.shape.N);
  spec.trials = o.trials;
  spec.max_iterations = o.max_iter;
  spec.stop_slack = o.stop_slack;
  spec.seed = o.seed;
  spec.tau = o.tau;
  spec.max_draws = o.init_draws;
  spec.workers = o.workers;
  if (!o.sweep.empty()) spec.sweep = parse_sweep(o.sweep);

  const int sources = (!o.mu_from_ref.empty()) + o.mu_from_bound + o.mu.has_value();
  if (sources != 1) {
    throw gp::Error(gp::Errc::InvalidInput, "give exactly one of --mu-from-ref, --mu-from-bound, --mu");
  }
  if (!o.mu_from_ref.empty()) {
    spec.mu_source = gp::MuSource::ReferenceFile;
    spec.reference = gp::ReferenceTable::read_csv(o.mu_from_ref);
  } else if (o.mu_from_bound) {
    spec.mu_source = gp::MuSource::RankinBound;
  } else {
    spec.mu_source = gp::MuSource::Explicit;
    spec.mu_explicit = *o.mu;
  }

  const gp::ExperimentResult result = gp::run_experiment(spec);
  gp::CsvOptions csv;
  csv.timestamp = !o.no_timestamp;
  csv.seed = o.seed;
  if (o.out.empty() || o.out == "-") {
    std::cout << gp::results_to_csv(result.rows, csv);
  } else {
    gp::export_results(result.rows, gp::ExportFormat::Csv, o.out, csv);
  }
  if (!o.save_config.empty()) {
    std::filesystem::create_directories(o.save_config);
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      if (!result.best_configs[i]) continue;
      const gp::ResultRow& r = result.rows[i];
      gp::write_configuration(std::filesystem::path(o.save_config) /
                                  fmt::format("d{}_K{}_N{}.json", r.d, r.K, r.N),
                              *result.best_configs[i]);
    }
  }

  bool any_failed = false;
  for (const gp::ResultRow& r : result.rows) {
    if (r.failed()) {
      any_failed = true;
      fmt::print(stderr, "cell d={} K={} N={} failed: {}\n", r.d, r.K, r.N, r.note);
    }
  }
  return any_failed ? 2 : 0;
}

int run_export(const std::string& in, const std::string& format, const std::string& out,
               bool no_timestamp) {
  const std::vector<gp::ResultRow> rows = gp::read_results(in);
  const gp::ExportFormat fmt_kind = gp::parse_export_format(format);
  gp::CsvOptions csv;
  csv.timestamp = !no_timestamp;
  if (out.empty() || out == "-") {
    if (rows.empty()) throw gp::Error(gp::Errc::InvalidInput, "nothing to export");
    std::cout << (fmt_kind == gp::ExportFormat::Csv ? gp::results_to_csv(rows, csv)
                                                    : gp::plot_data_csv(rows));
  } else {
    gp::export_results(rows, fmt_kind, out, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packings in Grassmannian spaces by alternating projection"};
  app.require_subcommand(1);

  Shape bound_shape;
  CLI::App* bound = app.add_subcommand("bound", "Rankin bound and feasibility parameter");
  bound_shape.add_to(bound);

  SolveOptions so;
  CLI::App* solve = app.add_subcommand("solve", "Run packing trials and report results");
  so.shape.add_to(solve);
  solve->add_option("--mu-from-ref", so.mu_from_ref, "reference CSV (d,K,N,value,unit)");
  solve->add_flag("--mu-from-bound", so.mu_from_bound, "target the Rankin bound");
  solve->add_option("--mu", so.mu, "explicit feasibility parameter");
  solve->add_option("--sweep", so.sweep, "min:max:steps multiples of the base mu");
  solve->add_option("--trials", so.trials)->capture_default_str();
  solve->add_option("--max-iter", so.max_iter)->capture_default_str();
  solve->add_option("--stop-slack", so.stop_slack)->capture_default_str();
  solve->add_option("--seed", so.seed)->capture_default_str();
  solve->add_option("--tau", so.tau, "similarity cap for the starting configuration");
  solve->add_option("--init-draws", so.init_draws)->capture_default_str();
  solve->add_option("--out", so.out, "results CSV (default stdout)");
  solve->add_flag("--no-timestamp", so.no_timestamp);
  solve->add_option("--workers", so.workers, "worker threads (default GRASSPACK_WORKERS or all cores)");
  solve->add_option("--save-config", so.save_config, "directory for the best configuration of each cell");

  std::string eval_path;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a configuration file");
  eval->add_option("config", eval_path)->required();

  std::string export_in = "results.csv";
  std::string export_format = "csv";
  std::string export_out;
  bool export_no_timestamp = false;
  CLI::App* exp = app.add_subcommand("export", "Convert a results CSV");
  exp->add_option("--in", export_in)->capture_default_str();
  exp->add_option("--format", export_format, "csv or plot_data")->capture_default_str();
  exp->add_option("--out", export_out, "output path (default stdout)");
  exp->add_flag("--no-timestamp", export_no_timestamp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*bound) return run_bound(bound_shape);
    if (*solve) return run_solve(so);
    if (*eval) {
      std::cout << gp::format_evaluation(gp::evaluate_file(eval_path));
      return 0;
    }
    if (*exp) return run_export(export_in, export_format, export_out, export_no_timestamp);
  } catch (const gp::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}
