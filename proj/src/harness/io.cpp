#include "lvs/io.hpp"

#include "lvs/error.hpp"

#include <cmath>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace lvs::io {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

double parse_double(const std::string& tok, const std::string& source, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    fail(source, line, "cannot parse number '" + tok + "'");
  }
  if (used != tok.size()) fail(source, line, "cannot parse number '" + tok + "'");
  if (!std::isfinite(v)) fail(source, line, "non-finite value '" + tok + "'");
  return v;
}

long long parse_count(const std::string& tok, const std::string& source, std::size_t line) {
  long long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    fail(source, line, "expected an integer, got '" + tok + "'");
  }
  return v;
}

void check_size(long long rows, long long cols, const std::string& source, std::size_t line) {
  if (rows < 1 || cols < 1) fail(source, line, "dimensions must be positive");
  if (static_cast<double>(rows) * static_cast<double>(cols) > kMaxEntries) {
    fail(source, line, "matrix with " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " entries exceeds the dense limit");
  }
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && lower(s.substr(s.size() - suffix.size())) == suffix;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Matrix read_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) fail(source, 1, "empty file");
  ++lineno;
  const auto head = split_ws(lower(line));
  if (head.size() != 5 || head[0] != "%%matrixmarket" || head[1] != "matrix") {
    fail(source, lineno, "malformed Matrix Market header '" + line + "'");
  }
  const bool coordinate = head[2] == "coordinate";
  if (!coordinate && head[2] != "array") fail(source, lineno, "unknown storage '" + head[2] + "'");
  if (head[3] != "real") fail(source, lineno, "only real matrices are supported, got '" + head[3] + "'");
  if (head[4] != "general") fail(source, lineno, "only general symmetry is supported, got '" + head[4] + "'");

  // Size line.
  std::vector<std::string> size;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    size = split_ws(line);
    break;
  }
  if (size.empty()) fail(source, lineno, "missing size line");
  if (size.size() != (coordinate ? 3U : 2U)) fail(source, lineno, "malformed size line '" + line + "'");
  const long long rows = parse_count(size[0], source, lineno);
  const long long cols = parse_count(size[1], source, lineno);
  check_size(rows, cols, source, lineno);
  const long long expected = coordinate ? parse_count(size[2], source, lineno) : rows * cols;
  if (expected < 0) fail(source, lineno, "negative entry count");

  Matrix a = Matrix::Zero(rows, cols);
  long long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    const auto tok = split_ws(line);
    if (coordinate) {
      if (tok.size() != 3) fail(source, lineno, "expected 'row col value'");
      if (seen >= expected) fail(source, lineno, "more entries than declared");
      const long long i = parse_count(tok[0], source, lineno);
      const long long j = parse_count(tok[1], source, lineno);
      if (i < 1 || i > rows || j < 1 || j > cols) fail(source, lineno, "index out of range");
      a(i - 1, j - 1) += parse_double(tok[2], source, lineno);
      ++seen;
    } else {
      for (const auto& t : tok) {
        if (seen >= expected) fail(source, lineno, "more entries than declared");
        // Array format is column-major.
        a(seen % rows, seen / rows) = parse_double(t, source, lineno);
        ++seen;
      }
    }
  }
  if (seen != expected) {
    fail(source, lineno, "expected " + std::to_string(expected) + " entries, found " + std::to_string(seen));
  }
  return a;
}

Matrix read_csv_matrix(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto tok = split_ws(cell);
      if (tok.size() != 1) fail(source, lineno, "empty or malformed cell");
      row.push_back(parse_double(tok[0], source, lineno));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(source, lineno, "row has " + std::to_string(row.size()) + " values, expected " +
                               std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
    check_size(static_cast<long long>(rows.size()), static_cast<long long>(rows.front().size()), source, lineno);
  }
  if (rows.empty()) fail(source, lineno, "no data");
  Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return a;
}

Vector read_vector(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '#') continue;
    const auto tok = split_ws(line);
    if (tok.size() != 1) fail(source, lineno, "expected one value per line");
    values.push_back(parse_double(tok[0], source, lineno));
  }
  if (values.empty()) fail(source, lineno, "no data");
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

Matrix load_matrix(const std::string& path, MatrixFormat format) {
  if (format == MatrixFormat::automatic) {
    format = has_suffix(path, ".mtx") || has_suffix(path, ".mm") ? MatrixFormat::matrix_market : MatrixFormat::csv;
  }
  auto in = open_in(path);
  return format == MatrixFormat::matrix_market ? read_matrix_market(in, path) : read_csv_matrix(in, path);
}

Vector load_vector(const std::string& path) {
  auto in = open_in(path);
  if (has_suffix(path, ".mtx") || has_suffix(path, ".mm")) {
    const Matrix m = read_matrix_market(in, path);
    if (m.cols() != 1) throw InputError(path + ": vector file must have one column");
    return m.col(0);
  }
  return read_vector(in, path);
}

void write_matrix_market(std::ostream& out, const Matrix& a, bool coordinate) {
  if (coordinate) {
    Index nnz = 0;
    for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows(); ++i) nnz += a(i, j) != 0.0;
    out << "%%MatrixMarket matrix coordinate real general\n" << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
    for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows(); ++i)
        if (a(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << format_double(a(i, j)) << '\n';
    return;
  }
  out << "%%MatrixMarket matrix array real general\n" << a.rows() << ' ' << a.cols() << '\n';
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) out << format_double(a(i, j)) << '\n';
}

void save_matrix(const std::string& path, const Matrix& a, bool coordinate) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_matrix_market(out, a, coordinate);
}

void save_vector(const std::string& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  for (Index i = 0; i < v.size(); ++i) out << format_double(v(i)) << '\n';
}

}  // namespace lvs::io
