#include "rectexp/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "rectexp/errors.hpp"

namespace rectexp {

namespace {

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line)
{
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;
    return true;
  }
  return false;
}

enum class Field
{
  Real,
  Complex
};
enum class Symmetry
{
  General,
  Symmetric,
  Skew,
  Hermitian
};

Complex read_value(std::istringstream& ls, Field field, const std::string& line)
{
  double re = 0.0;
  double im = 0.0;
  if (!(ls >> re)) throw IoError("matrix market: cannot parse value in line '" + line + "'");
  if (field == Field::Complex && !(ls >> im))
    throw IoError("matrix market: missing imaginary part in line '" + line + "'");
  return {re, im};
}

void place(ComplexMatrix& a, std::size_t i, std::size_t j, Complex v, Symmetry sym)
{
  a(i, j) = v;
  if (i == j) return;
  switch (sym) {
    case Symmetry::General: break;
    case Symmetry::Symmetric: a(j, i) = v; break;
    case Symmetry::Skew: a(j, i) = -v; break;
    case Symmetry::Hermitian: a(j, i) = std::conj(v); break;
  }
}

}  // namespace

ComplexMatrix read_matrix_market(std::istream& in)
{
  std::string header;
  if (!std::getline(in, header)) throw IoError("matrix market: empty input");
  std::istringstream hs(header);
  std::string banner, object, format, field_s, sym_s;
  hs >> banner >> object >> format >> field_s >> sym_s;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix")
    throw IoError("matrix market: missing '%%MatrixMarket matrix' banner");
  format = lower(format);
  field_s = lower(field_s);
  sym_s = lower(sym_s);

  Field field;
  if (field_s == "real" || field_s == "integer" || field_s == "double")
    field = Field::Real;
  else if (field_s == "complex")
    field = Field::Complex;
  else
    throw IoError("matrix market: unsupported field '" + field_s + "'");

  Symmetry sym;
  if (sym_s == "general")
    sym = Symmetry::General;
  else if (sym_s == "symmetric")
    sym = Symmetry::Symmetric;
  else if (sym_s == "skew-symmetric")
    sym = Symmetry::Skew;
  else if (sym_s == "hermitian")
    sym = Symmetry::Hermitian;
  else
    throw IoError("matrix market: unsupported symmetry '" + sym_s + "'");

  std::string line;
  if (!next_data_line(in, line)) throw IoError("matrix market: missing size line");
  std::istringstream ss(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(ss >> rows >> cols) || rows < 0 || cols < 0) throw IoError("matrix market: bad size line '" + line + "'");

  ComplexMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  if (format == "array") {
    if (sym != Symmetry::General && rows != cols) throw IoError("matrix market: symmetric array must be square");
    for (long j = 0; j < cols; ++j) {
      const long first = sym == Symmetry::General ? 0 : (sym == Symmetry::Skew ? j + 1 : j);
      for (long i = first; i < rows; ++i) {
        if (!next_data_line(in, line)) throw IoError("matrix market: array data ends early");
        std::istringstream ls(line);
        place(a, i, j, read_value(ls, field, line), sym);
      }
    }
  } else if (format == "coordinate") {
    if (!(ss >> nnz) || nnz < 0) throw IoError("matrix market: coordinate size line needs nnz");
    for (long e = 0; e < nnz; ++e) {
      if (!next_data_line(in, line)) throw IoError("matrix market: coordinate data ends early");
      std::istringstream ls(line);
      long i = 0, j = 0;
      if (!(ls >> i >> j) || i < 1 || j < 1 || i > rows || j > cols)
        throw IoError("matrix market: bad coordinate entry '" + line + "'");
      place(a, i - 1, j - 1, read_value(ls, field, line), sym);
    }
  } else {
    throw IoError("matrix market: unsupported format '" + format + "'");
  }
  return a;
}

ComplexMatrix read_matrix_market(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_matrix_market(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_matrix_market(std::ostream& out, const ComplexMatrix& a)
{
  out << "%%MatrixMarket matrix array complex general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  char buf[96];
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", a(i, j).real(), a(i, j).imag());
      out << buf;
    }
}

void write_matrix_market(const std::filesystem::path& path, const ComplexMatrix& a)
{
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_matrix_market(out, a);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace rectexp
