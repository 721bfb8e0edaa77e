#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "grasspack/bounds.hpp"
#include "grasspack/error.hpp"
#include "grasspack/harness.hpp"
#include "grasspack/init.hpp"
#include "grasspack/solver.hpp"

namespace grasspack {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

double mu_cap(Metric metric, long K) {
  return metric == Metric::Chordal ? std::sqrt(static_cast<double>(K)) : 1.0;
}

// Squared bound clipped to the metric's range before converting to mu.
double mu_from_squared(double rho2, Metric metric, long K) {
  const double hi = metric == Metric::Chordal ? static_cast<double>(K) : 1.0;
  return mu_from_rho(std::sqrt(std::clamp(rho2, 0.0, hi)), metric, K);
}

std::vector<CellKey> cells_of(const ExperimentSpec& spec) {
  std::vector<CellKey> cells;
  for (long d : spec.d_values) {
    for (long K : spec.K_values) {
      for (long N : spec.N_values) cells.push_back({d, K, N});
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GRASSPACK_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Run {
  bool ok = false;
  double value = 0.0;  // in the row unit
  double mu = 0.0;
  std::size_t iterations = 0;
  std::optional<Configuration> config;
};

struct Task {
  std::size_t cell;
  std::size_t mu_index;
  std::size_t trial;
};

double value_in_unit(const SolveReport& rep, Unit unit, Metric metric) {
  switch (unit) {
    case Unit::Degrees:
      return std::acos(std::clamp(rep.mu_achieved, -1.0, 1.0)) * kDeg;
    case Unit::SquaredDiameter:
      return rep.final_diameter * rep.final_diameter;
    case Unit::ScaledFs:
      return rep.final_diameter * 2.0 / std::numbers::pi;
  }
  (void)metric;
  return 0.0;
}

}  // namespace

std::string_view to_string(Space space) noexcept {
  switch (space) {
    case Space::Projective: return "projective";
    case Space::Grassmann: return "grassmann";
    case Space::Sphere: return "sphere";
  }
  return "?";
}

std::string_view to_string(Unit unit) noexcept {
  switch (unit) {
    case Unit::Degrees: return "degrees";
    case Unit::SquaredDiameter: return "squared_diameter";
    case Unit::ScaledFs: return "scaled_fs";
  }
  return "?";
}

Space parse_space(std::string_view text) {
  if (text == "projective") return Space::Projective;
  if (text == "grassmann" || text == "grassmannian") return Space::Grassmann;
  if (text == "sphere") return Space::Sphere;
  throw Error(Errc::InvalidInput, fmt::format("unknown space '{}'", text));
}

Unit parse_unit(std::string_view text) {
  if (text == "degrees") return Unit::Degrees;
  if (text == "squared_diameter") return Unit::SquaredDiameter;
  if (text == "scaled_fs") return Unit::ScaledFs;
  throw Error(Errc::InvalidInput, fmt::format("unknown unit '{}'", text));
}

Metric effective_metric(const ExperimentSpec& spec) {
  switch (spec.space) {
    case Space::Projective: return Metric::Chordal;
    case Space::Sphere: return Metric::Sphere;
    case Space::Grassmann: break;
  }
  return spec.metric;
}

Unit result_unit(Space space, Metric metric) {
  if (space != Space::Grassmann) return Unit::Degrees;
  return metric == Metric::FubiniStudy ? Unit::ScaledFs : Unit::SquaredDiameter;
}

void validate(const ExperimentSpec& spec) {
  auto fail = [](const std::string& what) { throw Error(Errc::InvalidInput, what); };
  if (spec.d_values.empty() || spec.K_values.empty() || spec.N_values.empty()) {
    fail("d, K and N ranges must be nonempty");
  }
  if (spec.trials == 0) fail("trials must be positive");
  if (spec.space != Space::Grassmann) {
    for (long K : spec.K_values) {
      if (K != 1) fail(fmt::format("{} space needs K = 1", to_string(spec.space)));
    }
  }
  if (spec.space == Space::Sphere && spec.field != Field::Real) fail("sphere packings are real");
  if (spec.space == Space::Grassmann &&
      (spec.metric == Metric::Geodesic || spec.metric == Metric::Sphere)) {
    fail(fmt::format("metric {} is not available for subspaces", to_string(spec.metric)));
  }
  if (spec.space == Space::Sphere && spec.mu_source == MuSource::RankinBound) {
    fail("no Rankin bound is used for sphere packings; give a reference or explicit mu");
  }
  if (spec.mu_source == MuSource::ReferenceFile && spec.reference.empty()) {
    fail("reference source selected without reference rows");
  }
  for (long d : spec.d_values) {
    for (long K : spec.K_values) {
      if (K < 1 || K >= d) fail(fmt::format("need 1 <= K < d (got d={}, K={})", d, K));
    }
  }
  for (long N : spec.N_values) {
    if (N < 2) fail("N must be at least 2");
  }
  if (spec.sweep) {
    const Sweep& s = *spec.sweep;
    if (s.steps < 1 || !(s.min_factor >= 0.0) || !(s.max_factor >= s.min_factor)) {
      fail("sweep needs steps >= 1 and 0 <= min_factor <= max_factor");
    }
  }
  if (!(spec.stop_slack >= 0.0)) fail("stop slack must be nonnegative");
  if (spec.tau && !(*spec.tau > 0.0)) fail("tau must be positive");
}

double mu_from_reference(const ReferenceRow& ref, Space space, Metric metric) {
  const long K = ref.key.K;
  switch (ref.unit) {
    case Unit::Degrees: {
      if (space == Space::Grassmann && metric != Metric::FubiniStudy) {
        throw Error(Errc::InvalidInput, "degree references apply to lines, points or Fubini-Study");
      }
      return std::cos(ref.value / kDeg);
    }
    case Unit::SquaredDiameter: {
      if (space == Space::Sphere) {
        throw Error(Errc::InvalidInput, "sphere references must be in degrees");
      }
      const Metric m = space == Space::Projective ? Metric::Chordal : metric;
      if (m == Metric::FubiniStudy) {
        throw Error(Errc::InvalidInput, "Fubini-Study references are angles");
      }
      return mu_from_squared(ref.value, m, K);
    }
    case Unit::ScaledFs:
      if (space != Space::Grassmann || metric != Metric::FubiniStudy) {
        throw Error(Errc::InvalidInput, "scaled_fs references need the Fubini-Study metric");
      }
      return std::cos(std::clamp(ref.value, 0.0, 1.0) * std::numbers::pi / 2);
  }
  return 0.0;
}

double mu_from_bound(Space space, Metric metric, Field field, long d, long K, long N) {
  switch (space) {
    case Space::Projective:
      return mu_from_squared(rankin_projective(d, N, field).bound_value, Metric::Chordal, 1);
    case Space::Sphere:
      throw Error(Errc::InvalidInput, "no Rankin bound is used for sphere packings");
    case Space::Grassmann: break;
  }
  switch (metric) {
    case Metric::Chordal:
      return mu_from_squared(rankin_chordal(d, K, N, field).bound_value, metric, K);
    case Metric::Spectral:
      return mu_from_squared(rankin_spectral(d, K, N, field).bound_value, metric, K);
    case Metric::FubiniStudy:
      return 0.0;
    default: break;
  }
  throw Error(Errc::InvalidInput, fmt::format("no bound for metric {}", to_string(metric)));
}

double bound_in_unit(Space space, Metric metric, Field field, long d, long K, long N) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  switch (space) {
    case Space::Projective: return rankin_projective(d, N, field).angle_degrees;
    case Space::Sphere: return nan;
    case Space::Grassmann: break;
  }
  switch (metric) {
    case Metric::Chordal:
      return std::min(rankin_chordal(d, K, N, field).bound_value, static_cast<double>(K));
    case Metric::Spectral:
      return std::min(rankin_spectral(d, K, N, field).bound_value, 1.0);
    case Metric::FubiniStudy: return 1.0;
    default: return nan;
  }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  const Metric metric = effective_metric(spec);
  const Unit unit = result_unit(spec.space, metric);
  const std::vector<CellKey> cells = cells_of(spec);

  ExperimentResult out;
  out.rows.resize(cells.size());
  out.best_configs.resize(cells.size());

  const std::size_t n_mu = spec.sweep ? static_cast<std::size_t>(spec.sweep->steps) : 1;
  std::vector<std::vector<double>> mus(cells.size());
  std::vector<Task> tasks;

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const CellKey& key = cells[c];
    ResultRow& row = out.rows[c];
    row.d = key.d;
    row.K = key.K;
    row.N = key.N;
    row.field = spec.field;
    row.metric = metric;
    row.unit = unit;
    row.trials = spec.trials;
    row.bound = bound_in_unit(spec.space, metric, spec.field, key.d, key.K, key.N);
    if (const ReferenceRow* ref = spec.reference.find(key)) {
      if (ref->unit == unit) row.reference = ref->value;
    }

    double base = 0.0;
    switch (spec.mu_source) {
      case MuSource::Explicit: base = spec.mu_explicit; break;
      case MuSource::RankinBound:
        base = mu_from_bound(spec.space, metric, spec.field, key.d, key.K, key.N);
        break;
      case MuSource::ReferenceFile: {
        const ReferenceRow* ref = spec.reference.find(key);
        if (!ref) {
          row.trials_failed = spec.trials;
          row.best_diameter = row.avg_diameter = std::numeric_limits<double>::quiet_NaN();
          row.note = "missing reference row; cell skipped";
          continue;
        }
        base = mu_from_reference(*ref, spec.space, metric);
        break;
      }
    }

    const double hi = mu_cap(metric, key.K);
    for (std::size_t i = 0; i < n_mu; ++i) {
      double f = 1.0;
      if (spec.sweep) {
        const Sweep& s = *spec.sweep;
        f = n_mu == 1 ? s.min_factor
                      : s.min_factor + (s.max_factor - s.min_factor) * static_cast<double>(i) /
                                           static_cast<double>(n_mu - 1);
      }
      double mu = base * f;
      // Scaling a negative sphere target still moves it toward larger mu.
      if (base < 0.0 && spec.sweep) mu = base + std::abs(base) * (f - spec.sweep->min_factor);
      mus[c].push_back(std::min(mu, hi));
    }
    for (std::size_t i = 0; i < n_mu; ++i) {
      for (std::size_t t = 0; t < spec.trials; ++t) tasks.push_back({c, i, t});
    }
  }

  InitParams init;
  init.max_draws = spec.max_draws;
  init.seed = spec.seed;
  init.similarity = spec.space == Space::Sphere ? Similarity::SignedInner : Similarity::Frobenius;

  std::vector<Run> runs(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      const CellKey& key = cells[task.cell];
      Run& run = runs[i];
      run.mu = mus[task.cell][task.mu_index];
      try {
        InitParams p = init;
        p.stream = task.trial;
        p.tau = spec.tau ? *spec.tau
                         : (spec.space == Space::Grassmann ? std::sqrt(static_cast<double>(key.K))
                                                           : 0.9);
        const Configuration start = initial_configuration(key.d, key.K, key.N, spec.field, p);
        SolveParams sp;
        sp.max_iterations = spec.max_iterations;
        sp.stop_slack = spec.stop_slack;
        sp.metric = metric;
        sp.mu = run.mu;
        sp.d = key.d;
        sp.K = key.K;
        sp.N = key.N;
        const SolveReport rep = alternate(gram(start), sp);
        run.value = value_in_unit(rep, unit, metric);
        run.iterations = rep.iterations_used;
        run.config = rep.final_config;
        run.ok = std::isfinite(run.value);
      } catch (const Error&) {
        run.ok = false;
      } catch (...) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };

  const std::size_t n_workers = std::min(resolve_workers(spec.workers), std::max<std::size_t>(tasks.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  // Aggregate over the fixed task order, so the result does not depend on scheduling.
  std::size_t k = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (mus[c].empty()) continue;
    ResultRow& row = out.rows[c];
    std::vector<const Run*> trial_best(spec.trials, nullptr);
    double iter_sum = 0.0;
    std::size_t iter_count = 0;
    for (std::size_t i = 0; i < n_mu; ++i) {
      for (std::size_t t = 0; t < spec.trials; ++t, ++k) {
        const Run& run = runs[k];
        if (!run.ok) continue;
        iter_sum += static_cast<double>(run.iterations);
        ++iter_count;
        if (!trial_best[t] || run.value > trial_best[t]->value) trial_best[t] = &run;
      }
    }
    const Run* best = nullptr;
    double sum = 0.0;
    std::size_t ok = 0;
    for (const Run* r : trial_best) {
      if (!r) continue;
      ++ok;
      sum += r->value;
      if (!best || r->value > best->value) best = r;
    }
    row.trials_failed = spec.trials - ok;
    row.mu_target = mus[c].front();
    if (best) {
      row.best_diameter = best->value;
      row.avg_diameter = std::min(sum / static_cast<double>(ok), best->value);
      row.avg_iterations = iter_sum / static_cast<double>(iter_count);
      row.mu_target = best->mu;
      out.best_configs[c] = best->config;
    } else {
      row.best_diameter = row.avg_diameter = std::numeric_limits<double>::quiet_NaN();
      row.note = "all trials failed";
    }
    if (std::isfinite(row.reference) && best) row.error_vs_reference = row.reference - row.best_diameter;
  }
  return out;
}

void compare_reference(std::vector<ResultRow>& rows, const ReferenceTable& ref) {
  for (ResultRow& row : rows) {
    const ReferenceRow* r = ref.find({row.d, row.K, row.N});
    if (!r) continue;
    if (r->unit != row.unit) {
      throw Error(Errc::InvalidInput,
                  fmt::format("reference for ({}, {}, {}) is in {} but results are in {}", row.d,
                              row.K, row.N, to_string(r->unit), to_string(row.unit)));
    }
    row.reference = r->value;
    row.error_vs_reference = r->value - row.best_diameter;
  }
}

}  // namespace grasspack
