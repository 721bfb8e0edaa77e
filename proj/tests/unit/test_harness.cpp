#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "grasspack/config_io.hpp"
#include "grasspack/error.hpp"
#include "grasspack/harness.hpp"

using namespace grasspack;

namespace {

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("grasspack_harness_" + name);
}

ExperimentSpec projective_spec(long d, std::vector<long> Ns) {
  ExperimentSpec s;
  s.space = Space::Projective;
  s.field = Field::Real;
  s.d_values = {d};
  s.N_values = std::move(Ns);
  s.seed = 42;
  s.workers = 1;
  return s;
}

std::size_t data_lines(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++n;
  }
  return n;
}

}  // namespace

TEST(ReferenceTable, ParsesAndRejectsDuplicates) {
  const ReferenceTable t = ReferenceTable::parse_csv("d,K,N,value,unit\n# note\n3,1,4,70.529,degrees\n4,2,6,1.2,squared_diameter\n");
  ASSERT_EQ(t.rows().size(), 2u);
  EXPECT_EQ(t.find({4, 2, 6})->unit, Unit::SquaredDiameter);
  EXPECT_EQ(t.find({4, 2, 7}), nullptr);
  EXPECT_THROW(ReferenceTable::parse_csv("3,1,4,70,degrees\n3,1,4,71,degrees\n"), Error);
  try {
    ReferenceTable::parse_csv("d,K,N,value,unit\n3,1,x,70,degrees\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(RunExperiment, ProjectiveFromReference) {
  ExperimentSpec s = projective_spec(3, {4});
  s.mu_source = MuSource::ReferenceFile;
  s.reference = ReferenceTable::parse_csv("3,1,4,70.529,degrees\n");
  const ExperimentResult r = run_experiment(s);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_GE(r.rows[0].best_diameter, 70.52);
  EXPECT_LE(r.rows[0].avg_iterations, 5000.0);
  EXPECT_NEAR(r.rows[0].error_vs_reference, 70.529 - r.rows[0].best_diameter, 1e-15);
  ASSERT_TRUE(r.best_configs[0].has_value());
}

TEST(RunExperiment, SphereFromReference) {
  ExperimentSpec s = projective_spec(3, {6});
  s.space = Space::Sphere;
  s.mu_source = MuSource::ReferenceFile;
  s.reference = ReferenceTable::parse_csv("3,1,6,90.000,degrees\n");
  EXPECT_GE(run_experiment(s).rows[0].best_diameter, 89.99);
}

TEST(RunExperiment, ComplexChordalFromBound) {
  ExperimentSpec s;
  s.space = Space::Grassmann;
  s.field = Field::Complex;
  s.metric = Metric::Chordal;
  s.d_values = {4};
  s.K_values = {2};
  s.N_values = {6};
  s.mu_source = MuSource::RankinBound;
  s.seed = 1;
  const ExperimentResult r = run_experiment(s);
  EXPECT_GE(r.rows[0].best_diameter, 1.2 - 1e-3);
  EXPECT_LE(r.rows[0].best_diameter, r.rows[0].bound + 1e-6);
  EXPECT_EQ(r.rows[0].unit, Unit::SquaredDiameter);
}

TEST(RunExperiment, MissingReferenceGivesFailedRow) {
  ExperimentSpec s = projective_spec(3, {4, 5});
  s.trials = 2;
  s.mu_source = MuSource::ReferenceFile;
  s.reference = ReferenceTable::parse_csv("3,1,4,70.529,degrees\n");
  const ExperimentResult r = run_experiment(s);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.rows[0].failed());
  EXPECT_TRUE(r.rows[1].failed());
  EXPECT_FALSE(r.rows[1].note.empty());
}

TEST(RunExperiment, RowInvariantsAndOrdering) {
  ExperimentSpec s = projective_spec(3, {7, 4, 5});
  s.trials = 4;
  s.sweep = Sweep{1.0, 1.5, 3};
  s.max_iterations = 500;
  const ExperimentResult r = run_experiment(s);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].N, 4);
  EXPECT_EQ(r.rows[2].N, 7);
  for (const ResultRow& row : r.rows) {
    EXPECT_LE(row.avg_diameter, row.best_diameter);
    EXPECT_LE(row.best_diameter, row.bound + 1e-6);
    EXPECT_EQ(row.trials, 4u);
    EXPECT_LE(row.trials_failed, row.trials);
  }
}

TEST(RunExperiment, WorkerCountDoesNotChangeResults) {
  ExperimentSpec s = projective_spec(4, {5, 6, 7});
  s.trials = 3;
  s.max_iterations = 300;
  s.workers = 1;
  const std::string one = results_to_csv(run_experiment(s).rows, {false, s.seed});
  s.workers = 4;
  const std::string four = results_to_csv(run_experiment(s).rows, {false, s.seed});
  EXPECT_EQ(one, four);
}

TEST(RunExperiment, InvalidSpecRejected) {
  ExperimentSpec s = projective_spec(3, {4});
  s.K_values = {2};
  EXPECT_THROW(run_experiment(s), Error);
  s = projective_spec(3, {4});
  s.space = Space::Sphere;
  s.mu_source = MuSource::RankinBound;
  EXPECT_THROW(run_experiment(s), Error);
  s = projective_spec(3, {4});
  s.mu_source = MuSource::ReferenceFile;
  EXPECT_THROW(run_experiment(s), Error);
}

TEST(MuDerivation, ReferenceAndBound) {
  EXPECT_NEAR(mu_from_reference({{3, 1, 4}, 60.0, Unit::Degrees}, Space::Projective, Metric::Chordal), 0.5, 1e-15);
  EXPECT_NEAR(mu_from_reference({{4, 2, 3}, 1.5, Unit::SquaredDiameter}, Space::Grassmann, Metric::Chordal),
              std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(mu_from_reference({{3, 1, 4}, 109.4712206, Unit::Degrees}, Space::Sphere, Metric::Sphere),
              -1.0 / 3.0, 1e-9);
  EXPECT_NEAR(mu_from_bound(Space::Projective, Metric::Chordal, Field::Real, 3, 1, 4), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(mu_from_bound(Space::Grassmann, Metric::Spectral, Field::Complex, 4, 2, 3), 0.5, 1e-15);
  EXPECT_EQ(mu_from_bound(Space::Grassmann, Metric::FubiniStudy, Field::Complex, 4, 2, 3), 0.0);
  EXPECT_THROW(mu_from_reference({{4, 2, 3}, 60.0, Unit::Degrees}, Space::Grassmann, Metric::Chordal), Error);
}

TEST(CompareReference, ErrorIsDirectSubtraction) {
  std::vector<ResultRow> rows(2);
  rows[0].d = 3, rows[0].N = 14, rows[0].best_diameter = 38.462;
  rows[1].d = 3, rows[1].N = 4, rows[1].best_diameter = 70.529;
  const ReferenceTable ref = ReferenceTable::parse_csv("3,1,14,38.682,degrees\n3,1,4,70.529,degrees\n");
  compare_reference(rows, ref);
  EXPECT_EQ(rows[0].error_vs_reference, 38.682 - 38.462);
  EXPECT_EQ(rows[1].error_vs_reference, 0.0);
  rows[0].unit = Unit::SquaredDiameter;
  EXPECT_THROW(compare_reference(rows, ref), Error);
}

TEST(Evaluate, OrthonormalLines) {
  CMatrix x = CMatrix::Identity(3, 3);
  const Evaluation ev = evaluate(Configuration::from_matrix(Field::Real, 1, x));
  EXPECT_NEAR(ev.line_angle_degrees, 90.0, 1e-12);
  for (const MetricSummary& m : ev.metrics) {
    if (m.metric == Metric::Chordal || m.metric == Metric::Spectral) EXPECT_NEAR(m.diameter, 1.0, 1e-12);
    if (m.metric == Metric::FubiniStudy) EXPECT_NEAR(m.diameter, M_PI / 2, 1e-12);
  }
  EXPECT_NEAR(ev.gram_lambda_min, 1.0, 1e-12);
}

TEST(Evaluate, SolverOutputRoundTrip) {
  ExperimentSpec s;
  s.space = Space::Grassmann;
  s.field = Field::Complex;
  s.metric = Metric::Spectral;
  s.d_values = {4};
  s.K_values = {2};
  s.N_values = {4};
  s.trials = 2;
  s.seed = 9;
  const ExperimentResult r = run_experiment(s);
  ASSERT_TRUE(r.best_configs[0]);
  const auto path = temp("eval.json");
  write_configuration(path, *r.best_configs[0]);
  const Evaluation ev = evaluate_file(path);
  for (const MetricSummary& m : ev.metrics) {
    if (m.metric == Metric::Spectral) EXPECT_NEAR(m.diameter * m.diameter, r.rows[0].best_diameter, 1e-9);
  }
  std::filesystem::remove(path);
}

TEST(Evaluate, CorruptFileIsParseError) {
  const auto path = temp("corrupt.json");
  std::ofstream(path) << "{\"field\": \"R\", \"d\": 3,";
  try {
    evaluate_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
  std::filesystem::remove(path);
}

TEST(Export, OneRowIsHeaderPlusRow) {
  ResultRow row;
  row.d = 3, row.N = 4, row.best_diameter = 70.5, row.avg_diameter = 70.0, row.trials = 10;
  const std::string csv = results_to_csv({row}, {false, std::nullopt});
  EXPECT_EQ(data_lines(csv), 2u);
  EXPECT_EQ(csv.substr(csv.find("d,K,N"), 5), "d,K,N");
}

TEST(Export, CsvRoundTripAt17Digits) {
  ExperimentSpec s = projective_spec(3, {4, 5});
  s.trials = 3;
  s.mu_source = MuSource::ReferenceFile;
  s.reference = ReferenceTable::parse_csv("3,1,4,70.529,degrees\n3,1,5,63.435,degrees\n");
  const std::vector<ResultRow> rows = run_experiment(s).rows;
  const auto path = temp("rows.csv");
  export_results(rows, ExportFormat::Csv, path);
  const std::vector<ResultRow> back = read_results(path);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].best_diameter, rows[i].best_diameter);
    EXPECT_EQ(back[i].avg_diameter, rows[i].avg_diameter);
    EXPECT_EQ(back[i].mu_target, rows[i].mu_target);
    EXPECT_EQ(back[i].error_vs_reference, rows[i].error_vs_reference);
    EXPECT_EQ(back[i].avg_iterations, rows[i].avg_iterations);
    EXPECT_EQ(back[i].trials_failed, rows[i].trials_failed);
  }
  std::filesystem::remove(path);
}

TEST(Export, PlotDataSeriesForComplexChordal) {
  std::vector<ResultRow> rows;
  for (long N = 20; N >= 3; --N) {
    ResultRow r;
    r.d = 4, r.K = 2, r.N = N, r.best_diameter = 1.0, r.bound = bound_in_unit(Space::Grassmann, Metric::Chordal, Field::Complex, 4, 2, N);
    rows.push_back(r);
  }
  const std::string out = plot_data_csv(rows);
  EXPECT_EQ(data_lines(out), 19u);
  EXPECT_NE(out.find("4,2,3,1,1.5,\n"), std::string::npos);
  EXPECT_LT(out.find("4,2,3,"), out.find("4,2,20,"));
}

TEST(Export, UnwritablePathAndEmptyInput) {
  ResultRow row;
  row.trials = 1;
  try {
    export_results({row}, ExportFormat::Csv, "/nonexistent-dir/x.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoError);
  }
  EXPECT_THROW(export_results({}, ExportFormat::Csv, temp("empty.csv")), Error);
}
