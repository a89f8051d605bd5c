#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "l1inf/matrix.hpp"

namespace l1inf {

/// Malformed matrix text. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text format: a header line "n m", then n lines of m whitespace-separated
// decimal reals. Blank lines after the last row are ignored.
DenseMatrix read_matrix(std::istream& in);
DenseMatrix read_matrix_file(const std::filesystem::path& path);

/// Writes each value in its shortest form that reads back exactly.
void write_matrix(std::ostream& out, const DenseMatrix& x);
void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& x);

/// Shortest-exact decimal rendering used by every text output in the project.
std::string format_real(double v);

}  // namespace l1inf
