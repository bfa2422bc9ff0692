#include "unidec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unidec/errors.hpp"

namespace unidec {

namespace {

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ConfigError("matrix entry must be a number or an [re, im] pair, got " + e.dump());
}

bool is_entry(const Json& e) {
  return e.is_number() || (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number());
}

}  // namespace

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array");
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  // [[1, 0], [3, 0]] reads both ways; a non-square flat count settles it as rows.
  const bool nested = j[0].is_array() && (!is_entry(j[0]) || root * root != j.size());
  if (nested) {
    const auto n = static_cast<Eigen::Index>(j.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw ConfigError("matrix rows must all have length " + std::to_string(n));
      }
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
  }
  const auto count = static_cast<double>(j.size());
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(count)));
  if (n * n != static_cast<Eigen::Index>(j.size())) {
    throw ConfigError("flat matrix has " + std::to_string(j.size()) + " entries, not a square count");
  }
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = entry_from_json(j[static_cast<std::size_t>(r * n + c)]);
    }
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return out;
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("channel: expected an object");
  if (j.contains("adc")) {
    const Json& a = j.at("adc");
    AdcParams p;
    p.gamma = a.value("gamma", 0.0);
    p.t = a.value("t", 0.0);
    p.lambda_th = a.value("lambda_th", 1.0);
    return make_adc(p);
  }
  if (!j.contains("kraus")) throw ConfigError("channel: missing 'kraus' or 'adc' key");
  const Json& list = j.at("kraus");
  if (!list.is_array() || list.empty()) throw ConfigError("channel: 'kraus' must be a non-empty list");
  std::vector<Matrix> ops;
  for (const auto& m : list) ops.push_back(matrix_from_json(m));
  return KrausChannel(std::move(ops), j.value("label", std::string("user")));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

KrausChannel load_channel_file(const std::string& path) { return channel_from_json(read_json_file(path)); }

Observable observable_from_json(const Json& j, Eigen::Index dim) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if ((name == "x" || name == "y" || name == "z") && dim != 2) {
      throw ConfigError("observable '" + name + "' requires dimension 2");
    }
    if (name == "x") return Observable::pauli_x();
    if (name == "y") return Observable::pauli_y();
    if (name == "z") return Observable::pauli_z();
    if (name == "p0") return Observable::population(0, dim);
    if (name == "p1") return Observable::population(1, dim);
    const std::string prefix = "population:";
    if (name.rfind(prefix, 0) == 0) {
      return Observable::population(std::stol(name.substr(prefix.size())), dim);
    }
    throw ConfigError("unknown observable '" + name + "'");
  }
  Matrix m = matrix_from_json(j);
  if (m.rows() != dim) throw ConfigError("observable dimension does not match the channel");
  return Observable(std::move(m));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CsvWriter::CsvWriter(const std::string& metadata, const std::vector<std::string>& header)
    : columns_(header.size()) {
  text_ = "# " + metadata + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
  text_ += "\n";
}

void CsvWriter::separator() {
  if (in_row_ > 0) text_ += ",";
  ++in_row_;
}

CsvWriter& CsvWriter::cell(double value) {
  separator();
  text_ += format_number(value);
  return *this;
}

CsvWriter& CsvWriter::cell(std::uint64_t value) {
  separator();
  text_ += std::to_string(value);
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& value) {
  separator();
  text_ += value;
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) {
    throw Error("CsvWriter: row has " + std::to_string(in_row_) + " cells, expected " +
                std::to_string(columns_));
  }
  text_ += "\n";
  in_row_ = 0;
  ++rows_;
}

}  // namespace unidec
