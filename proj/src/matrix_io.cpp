#include "l1inf/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace l1inf {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string field;
  while (ss >> field) fields.push_back(field);
  return fields;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

template <typename T>
T parse_number(const std::string& field, std::size_t line_no, const char* what) {
  T value{};
  const char* first = field.data();
  const char* last = first + field.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line_no, std::string("cannot parse ") + what + " '" + field + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

DenseMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  std::size_t n = 0;
  std::size_t m = 0;
  while (true) {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, "missing header 'n m'");
    ++line_no;
    if (!is_blank(line)) break;
  }
  {
    auto header = split_fields(line);
    if (header.size() != 2) throw ParseError(line_no, "header must be 'n m'");
    n = parse_number<std::size_t>(header[0], line_no, "row count");
    m = parse_number<std::size_t>(header[1], line_no, "column count");
    if (n == 0 || m == 0) throw ParseError(line_no, "dimensions must be positive");
  }

  std::vector<double> values(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError(line_no + 1, "expected " + std::to_string(n) + " rows, found " +
                                        std::to_string(i));
    }
    ++line_no;
    auto fields = split_fields(line);
    if (fields.size() != m) {
      throw ParseError(line_no, "expected " + std::to_string(m) + " values, found " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double v = parse_number<double>(fields[j], line_no, "value");
      if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value '" + fields[j] + "'");
      values[j * n + i] = v;
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) throw ParseError(line_no, "unexpected content after last row");
  }
  return DenseMatrix::from_column_major(n, m, std::move(values));
}

DenseMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const DenseMatrix& x) {
  out << x.rows() << ' ' << x.cols() << '\n';
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (j) out << ' ';
      out << format_real(x(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& x) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_matrix(out, x);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace l1inf
