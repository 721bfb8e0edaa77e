#pragma once

// Experiment runner: multi-trial solves over (d, K, N) grids, mu derived from
// reference tables, Rankin bounds or sweeps, and flat-file outputs.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grasspack/geometry.hpp"

namespace grasspack {

enum class Space { Projective, Grassmann, Sphere };

/// degrees: angle of the closest pair (lines, points on a sphere, or the
/// Fubini-Study angle); squared_diameter: squared chordal/spectral diameter;
/// scaled_fs: Fubini-Study diameter times 2/pi.
enum class Unit { Degrees, SquaredDiameter, ScaledFs };

std::string_view to_string(Space space) noexcept;
std::string_view to_string(Unit unit) noexcept;
Space parse_space(std::string_view text);
Unit parse_unit(std::string_view text);

struct CellKey {
  long d = 0;
  long K = 1;
  long N = 0;
  auto operator<=>(const CellKey&) const = default;
};

struct ReferenceRow {
  CellKey key;
  double value = 0.0;
  Unit unit = Unit::Degrees;
};

/// Best-known values keyed by (d, K, N). Plain CSV `d,K,N,value,unit`, an
/// optional header line, `#` comments.
class ReferenceTable {
 public:
  /// Throws InvalidInput on a duplicate key.
  void add(const ReferenceRow& row);
  const ReferenceRow* find(const CellKey& key) const;
  const std::vector<ReferenceRow>& rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }

  static ReferenceTable parse_csv(std::string_view text);
  static ReferenceTable read_csv(const std::filesystem::path& path);

 private:
  std::vector<ReferenceRow> rows_;
};

enum class MuSource { ReferenceFile, RankinBound, Explicit };

/// mu grid mu_base * f for f linear in [min_factor, max_factor], `steps`
/// points including both ends.
struct Sweep {
  double min_factor = 1.0;
  double max_factor = 2.0;
  int steps = 1;
};

struct ExperimentSpec {
  Space space = Space::Projective;
  Field field = Field::Real;
  Metric metric = Metric::Chordal;
  std::vector<long> d_values;
  std::vector<long> K_values{1};
  std::vector<long> N_values;
  std::size_t trials = 10;
  MuSource mu_source = MuSource::RankinBound;
  double mu_explicit = 0.0;
  std::optional<Sweep> sweep;
  ReferenceTable reference;
  std::size_t max_iterations = 5000;
  double stop_slack = 1e-5;
  /// Similarity cap for the starting configuration; defaults to 0.9 for
  /// lines and points and to sqrt(K) (no constraint) for subspaces.
  std::optional<double> tau;
  std::size_t max_draws = 10000;
  std::uint64_t seed = 0;
  /// 0 = GRASSPACK_WORKERS, else hardware concurrency.
  std::size_t workers = 0;
};

/// Throws InvalidInput on inconsistent specs (sphere with K != 1, projective
/// with K != 1, geodesic metric, reference source without a table, ...).
void validate(const ExperimentSpec& spec);

/// Metric actually iterated for a space (projective and sphere override the
/// requested metric with Chordal and Sphere).
Metric effective_metric(const ExperimentSpec& spec);
Unit result_unit(Space space, Metric metric);

struct ResultRow {
  long d = 0;
  long K = 1;
  long N = 0;
  Field field = Field::Real;
  Metric metric = Metric::Chordal;
  Unit unit = Unit::Degrees;
  double mu_target = 0.0;
  double best_diameter = 0.0;
  double avg_diameter = 0.0;
  double error_vs_reference = std::numeric_limits<double>::quiet_NaN();
  double reference = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
  double avg_iterations = 0.0;
  std::size_t trials = 0;
  std::size_t trials_failed = 0;
  std::string note;

  /// No successful trial (or the cell was skipped).
  bool failed() const noexcept { return trials_failed >= trials; }
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // ordered by (d, K, N)
  /// Best configuration found for each row, when any trial succeeded.
  std::vector<std::optional<Configuration>> best_configs;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Converts a reference value into the feasibility parameter for the space.
double mu_from_reference(const ReferenceRow& ref, Space space, Metric metric);
/// mu at the Rankin bound (Fubini-Study uses the trivial bound pi/2, mu = 0).
double mu_from_bound(Space space, Metric metric, Field field, long d, long K, long N);
/// Bound expressed in the row unit, NaN where no bound applies.
double bound_in_unit(Space space, Metric metric, Field field, long d, long K, long N);

/// Fills reference and error = reference - best_diameter for every row with a
/// matching key. Throws InvalidInput on a unit mismatch.
void compare_reference(std::vector<ResultRow>& rows, const ReferenceTable& ref);

struct MetricSummary {
  Metric metric;
  double diameter;            // radians for Sphere and angles, chordal units otherwise
  double max_block_magnitude;  // NaN where undefined (geodesic)
};

struct Evaluation {
  Field field;
  long d, K, N;
  std::vector<MetricSummary> metrics;
  double line_angle_degrees = std::numeric_limits<double>::quiet_NaN();    // K = 1
  double sphere_angle_degrees = std::numeric_limits<double>::quiet_NaN();  // real K = 1
  double gram_lambda_min = 0.0;
  double gram_lambda_max = 0.0;
};

Evaluation evaluate(const Configuration& config);
/// Reads a configuration file; ParseError or IoError on failure.
Evaluation evaluate_file(const std::filesystem::path& path);
std::string format_evaluation(const Evaluation& ev);

struct CsvOptions {
  bool timestamp = true;
  std::optional<std::uint64_t> seed;
};

std::string results_to_csv(const std::vector<ResultRow>& rows, const CsvOptions& options = {});
std::vector<ResultRow> results_from_csv(std::string_view text);
std::string plot_data_csv(const std::vector<ResultRow>& rows);

enum class ExportFormat { Csv, PlotData };
ExportFormat parse_export_format(std::string_view text);

/// Writes rows in the requested format. Throws InvalidInput on empty input
/// and IoError when the path cannot be written.
void export_results(const std::vector<ResultRow>& rows, ExportFormat format,
                    const std::filesystem::path& path, const CsvOptions& options = {});
std::vector<ResultRow> read_results(const std::filesystem::path& path);

}  // namespace grasspack
