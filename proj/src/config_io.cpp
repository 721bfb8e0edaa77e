#include "grasspack/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "grasspack/error.hpp"
#include "json.hpp"

namespace grasspack {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, where + ": " + what);
}

long read_count(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_fail(key, "missing field");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) parse_fail(key, "expected an integer");
  return v.get<long>();
}

double read_number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  return v.get<double>();
}

}  // namespace

std::string configuration_to_json(const Configuration& config) {
  const bool real = config.field() == Field::Real;
  json blocks = json::array();
  for (Index n = 0; n < config.N(); ++n) {
    const CMatrix b = config.block(n);
    json entries = json::array();
    for (Index i = 0; i < b.rows(); ++i) {
      for (Index j = 0; j < b.cols(); ++j) {
        if (real) {
          entries.push_back(b(i, j).real());
        } else {
          entries.push_back(json::array({b(i, j).real(), b(i, j).imag()}));
        }
      }
    }
    blocks.push_back(std::move(entries));
  }
  json doc = {{"field", std::string(to_string(config.field()))},
              {"d", config.d()},
              {"K", config.K()},
              {"N", config.N()},
              {"blocks", std::move(blocks)}};
  return doc.dump(1) + "\n";
}

Configuration configuration_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min(static_cast<std::size_t>(e.byte), text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    parse_fail("line " + std::to_string(line), e.what());
  }
  if (!doc.is_object()) parse_fail("document", "expected a JSON object");
  if (!doc.contains("field") || !doc.at("field").is_string()) {
    parse_fail("field", "expected \"R\" or \"C\"");
  }
  Field field;
  try {
    field = parse_field(doc.at("field").get<std::string>());
  } catch (const Error& e) {
    parse_fail("field", e.what());
  }
  const long d = read_count(doc, "d");
  const long k = read_count(doc, "K");
  const long n = read_count(doc, "N");
  if (d < 1 || k < 1 || k > d || n < 2) parse_fail("d/K/N", "need 1 <= K <= d and N >= 2");
  if (!doc.contains("blocks") || !doc.at("blocks").is_array()) {
    parse_fail("blocks", "expected an array of blocks");
  }
  const json& blocks = doc.at("blocks");
  if (static_cast<long>(blocks.size()) != n) {
    parse_fail("blocks", "expected " + std::to_string(n) + " blocks, found " +
                             std::to_string(blocks.size()));
  }

  std::vector<CMatrix> frames;
  frames.reserve(static_cast<std::size_t>(n));
  for (long b = 0; b < n; ++b) {
    const std::string where = "blocks[" + std::to_string(b) + "]";
    const json& entries = blocks.at(static_cast<std::size_t>(b));
    if (!entries.is_array() || static_cast<long>(entries.size()) != d * k) {
      parse_fail(where, "expected " + std::to_string(d * k) + " entries");
    }
    CMatrix frame(d, k);
    for (long idx = 0; idx < d * k; ++idx) {
      const std::string at = where + "[" + std::to_string(idx) + "]";
      const json& e = entries.at(static_cast<std::size_t>(idx));
      double re = 0.0;
      double im = 0.0;
      if (e.is_array()) {
        if (e.empty() || e.size() > 2) parse_fail(at, "expected [re] or [re, im]");
        re = read_number(e.at(0), at);
        if (e.size() == 2) im = read_number(e.at(1), at);
      } else {
        re = read_number(e, at);
      }
      if (field == Field::Real && im != 0.0) parse_fail(at, "real configuration with imaginary part");
      frame(idx / k, idx % k) = cplx(re, im);
    }
    frames.push_back(std::move(frame));
  }
  try {
    return Configuration::from_blocks(field, frames);
  } catch (const Error& e) {
    parse_fail("blocks", e.what());
  }
}

void write_configuration(const std::filesystem::path& path, const Configuration& config) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  out << configuration_to_json(config);
  if (!out) throw Error(Errc::IoError, "write to " + path.string() + " failed");
}

Configuration read_configuration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return configuration_from_json(buf.str());
}

}  // namespace grasspack
