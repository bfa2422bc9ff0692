#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "unidec/channels.hpp"
#include "unidec/observable.hpp"

namespace unidec {

using Json = nlohmann::json;

// A matrix is either a flat row-major list of N^2 entries or a list of N
// rows. Each entry is a [re, im] pair or a bare real number. A list of
// pairs whose length is not a perfect square is read as rows.
Matrix matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);

// {"label": ..., "kraus": [matrix, ...]} or
// {"adc": {"gamma": ..., "t": ..., "lambda_th": ...}}.
KrausChannel channel_from_json(const Json& j);
KrausChannel load_channel_file(const std::string& path);

// "x", "y", "z", "p0", "p1", "population:<k>" or a matrix.
Observable observable_from_json(const Json& j, Eigen::Index dim);

Json read_json_file(const std::string& path);

// 17 significant digits, "nan" for NaN.
std::string format_number(double value);

// FNV-1a 64-bit, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

class CsvWriter {
 public:
  // The first line is a '#' comment carrying the metadata, then the header.
  CsvWriter(const std::string& metadata, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::uint64_t value);
  CsvWriter& cell(const std::string& value);
  void end_row();

  const std::string& str() const { return text_; }
  std::size_t rows() const { return rows_; }

 private:
  void separator();

  std::string text_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace unidec
