#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "grasspack/error.hpp"
#include "grasspack/harness.hpp"

namespace grasspack {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = line.find(',');
    out.push_back(trim(line.substr(0, pos)));
    if (pos == std::string_view::npos) return out;
    line.remove_prefix(pos + 1);
  }
}

// Lines with their 1-based numbers, skipping blanks and # comments.
std::vector<std::pair<std::size_t, std::string_view>> data_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t no = 0;
  while (!text.empty()) {
    ++no;
    const auto pos = text.find('\n');
    std::string_view line = trim(text.substr(0, pos));
    text.remove_prefix(pos == std::string_view::npos ? text.size() : pos + 1);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(no, line);
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(Errc::ParseError, fmt::format("line {}: {}", line, what));
}

long to_long(std::string_view s, std::size_t line, std::string_view column) {
  try {
    std::size_t used = 0;
    const long v = std::stol(std::string(s), &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  parse_fail(line, fmt::format("column {}: expected an integer, got '{}'", column, s));
}

double to_double(std::string_view s, std::size_t line, std::string_view column) {
  if (s.empty() || s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  parse_fail(line, fmt::format("column {}: expected a number, got '{}'", column, s));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, fmt::format("cannot write '{}'", path.string()));
  out << text;
  out.flush();
  if (!out) throw Error(Errc::IoError, fmt::format("write to '{}' failed", path.string()));
}

std::string num(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{:.17g}", v);
}

constexpr std::string_view kResultHeader =
    "d,K,N,field,metric,unit,mu_target,best_diameter,avg_diameter,error_vs_reference,"
    "reference,bound,avg_iterations,trials,trials_failed,note";

}  // namespace

void ReferenceTable::add(const ReferenceRow& row) {
  if (find(row.key)) {
    throw Error(Errc::InvalidInput, fmt::format("duplicate reference row ({}, {}, {})", row.key.d,
                                                row.key.K, row.key.N));
  }
  rows_.push_back(row);
}

const ReferenceRow* ReferenceTable::find(const CellKey& key) const {
  for (const ReferenceRow& r : rows_) {
    if (r.key == key) return &r;
  }
  return nullptr;
}

ReferenceTable ReferenceTable::parse_csv(std::string_view text) {
  ReferenceTable table;
  bool first = true;
  for (auto [no, line] : data_lines(text)) {
    const auto cols = split(line);
    if (first && !cols.empty() && cols[0] == "d") {
      first = false;
      continue;
    }
    first = false;
    if (cols.size() != 5) parse_fail(no, fmt::format("expected 5 columns, got {}", cols.size()));
    ReferenceRow row;
    row.key = {to_long(cols[0], no, "d"), to_long(cols[1], no, "K"), to_long(cols[2], no, "N")};
    row.value = to_double(cols[3], no, "value");
    if (!std::isfinite(row.value)) parse_fail(no, "column value: must be finite");
    try {
      row.unit = parse_unit(cols[4]);
    } catch (const Error& e) {
      parse_fail(no, fmt::format("column unit: {}", e.what()));
    }
    try {
      table.add(row);
    } catch (const Error& e) {
      parse_fail(no, e.what());
    }
  }
  return table;
}

ReferenceTable ReferenceTable::read_csv(const std::filesystem::path& path) {
  return parse_csv(read_text(path));
}

std::string results_to_csv(const std::vector<ResultRow>& rows, const CsvOptions& options) {
  std::string out;
  if (options.timestamp) {
    out += fmt::format("# generated {}\n", [] {
      const std::time_t now = std::time(nullptr);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      return std::string(buf);
    }());
  }
  if (options.seed) out += fmt::format("# seed {}\n", *options.seed);
  if (!rows.empty()) {
    out += "# avg_iterations counts each run at the iteration where it stopped\n";
  }
  out += kResultHeader;
  out += '\n';
  for (const ResultRow& r : rows) {
    std::string note = r.note;
    for (char& ch : note) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.d, r.K, r.N,
                       to_string(r.field), to_string(r.metric), to_string(r.unit), num(r.mu_target),
                       num(r.best_diameter), num(r.avg_diameter), num(r.error_vs_reference),
                       num(r.reference), num(r.bound), num(r.avg_iterations), r.trials,
                       r.trials_failed, note);
  }
  return out;
}

std::vector<ResultRow> results_from_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  bool header = false;
  for (auto [no, line] : data_lines(text)) {
    if (!header) {
      if (line != kResultHeader) parse_fail(no, "missing results header");
      header = true;
      continue;
    }
    const auto c = split(line);
    if (c.size() != 16) parse_fail(no, fmt::format("expected 16 columns, got {}", c.size()));
    ResultRow r;
    r.d = to_long(c[0], no, "d");
    r.K = to_long(c[1], no, "K");
    r.N = to_long(c[2], no, "N");
    try {
      r.field = parse_field(c[3]);
      r.metric = parse_metric(c[4]);
      r.unit = parse_unit(c[5]);
    } catch (const Error& e) {
      parse_fail(no, e.what());
    }
    r.mu_target = to_double(c[6], no, "mu_target");
    r.best_diameter = to_double(c[7], no, "best_diameter");
    r.avg_diameter = to_double(c[8], no, "avg_diameter");
    r.error_vs_reference = to_double(c[9], no, "error_vs_reference");
    r.reference = to_double(c[10], no, "reference");
    r.bound = to_double(c[11], no, "bound");
    r.avg_iterations = to_double(c[12], no, "avg_iterations");
    r.trials = static_cast<std::size_t>(to_long(c[13], no, "trials"));
    r.trials_failed = static_cast<std::size_t>(to_long(c[14], no, "trials_failed"));
    r.note = std::string(c[15]);
    rows.push_back(std::move(r));
  }
  if (!header) throw Error(Errc::ParseError, "results file has no header");
  return rows;
}

std::string plot_data_csv(const std::vector<ResultRow>& rows) {
  std::map<std::pair<long, long>, std::vector<const ResultRow*>> series;
  for (const ResultRow& r : rows) series[{r.d, r.K}].push_back(&r);
  std::string out = "d,K,N,achieved,bound,reference\n";
  for (auto& [dk, list] : series) {
    std::stable_sort(list.begin(), list.end(),
                     [](const ResultRow* a, const ResultRow* b) { return a->N < b->N; });
    for (const ResultRow* r : list) {
      out += fmt::format("{},{},{},{},{},{}\n", r->d, r->K, r->N, num(r->best_diameter),
                         num(r->bound), num(r->reference));
    }
  }
  return out;
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "csv") return ExportFormat::Csv;
  if (text == "plot_data") return ExportFormat::PlotData;
  throw Error(Errc::InvalidInput, fmt::format("unknown export format '{}'", text));
}

void export_results(const std::vector<ResultRow>& rows, ExportFormat format,
                    const std::filesystem::path& path, const CsvOptions& options) {
  if (rows.empty()) throw Error(Errc::InvalidInput, "nothing to export");
  write_text(path, format == ExportFormat::Csv ? results_to_csv(rows, options) : plot_data_csv(rows));
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  return results_from_csv(read_text(path));
}

}  // namespace grasspack
