#include "momenta/matrix_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace momenta {

namespace {

LoadedMatrix finish(ComplexMatrix m) {
  LoadedMatrix out;
  if (!m.allFinite()) throw ParseError("matrix contains non-finite entries");
  if (is_hermitian(m)) {
    out.matrix = hermitize(m);
    out.hermitian = true;
  } else {
    out.matrix = std::move(m);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view field, std::size_t row, std::size_t col) {
  const std::string token(trim(field));
  if (token.empty()) {
    throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) + ": empty field");
  }
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE) {
    throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) + ": '" + token +
                     "' is not a real number");
  }
  return value;
}

}  // namespace

LoadedMatrix parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries")) {
    throw ParseError("matrix JSON needs \"rows\", \"cols\" and \"entries\"");
  }
  if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer()) {
    throw ParseError("\"rows\" and \"cols\" must be integers");
  }
  const auto rows = doc["rows"].get<long long>();
  const auto cols = doc["cols"].get<long long>();
  if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive");
  if (rows != cols) {
    throw ParseError("matrix is not square: " + std::to_string(rows) + " rows, " + std::to_string(cols) + " columns");
  }
  const auto& entries = doc["entries"];
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols) {
    throw ParseError("\"entries\" must be an array of " + std::to_string(rows * cols) + " [re, im] pairs");
  }
  ComplexMatrix m(rows, cols);
  for (long long idx = 0; idx < rows * cols; ++idx) {
    const auto& e = entries[static_cast<std::size_t>(idx)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("entry " + std::to_string(idx) + " (row " + std::to_string(idx / cols + 1) + ", column " +
                       std::to_string(idx % cols + 1) + ") is not a [re, im] pair");
    }
    m(idx / cols, idx % cols) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return finish(std::move(m));
}

LoadedMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    std::size_t col = 1;
    while (true) {
      const auto comma = line.find(',', start);
      const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      row.push_back(parse_real(field, line_no, col));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
      ++col;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("CSV matrix is empty");
  const auto n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ParseError("CSV matrix is not square: row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " columns, expected " + std::to_string(n) + " (" +
                       std::to_string(n) + " rows)");
    }
  }
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return finish(std::move(m));
}

LoadedMatrix parse_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto ext = path.extension().string();
  if (ext == ".json") return parse_matrix_json(text);
  if (ext == ".csv") return parse_matrix_csv(text);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix_csv(text);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string write_matrix_json(const ComplexMatrix& m) {
  std::string out = "{\"rows\": " + std::to_string(m.rows()) + ", \"cols\": " + std::to_string(m.cols()) +
                    ", \"entries\": [";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i || j) out += ", ";
      out += "[" + format_double(m(i, j).real()) + ", " + format_double(m(i, j).imag()) + "]";
    }
  out += "]}\n";
  return out;
}

std::string write_matrix_csv(const ComplexMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j).imag() != 0.0) throw DomainError("write_matrix_csv: complex entries cannot be written as CSV");
      if (j) out += ",";
      out += format_double(m(i, j).real());
    }
    out += "\n";
  }
  return out;
}

}  // namespace momenta
