#pragma once

#include "lvs/linalg.hpp"

#include <iosfwd>
#include <string>

namespace lvs::io {

enum class MatrixFormat { automatic, matrix_market, csv };

/// Largest n * d accepted for dense materialization.
inline constexpr double kMaxEntries = 1e7;

/// Matrix Market "matrix array|coordinate real general". Coordinate
/// duplicates are summed. Errors name the offending line.
Matrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");
/// Comma-separated rows, one matrix row per line.
Matrix read_csv_matrix(std::istream& in, const std::string& source = "<stream>");
/// One value per line; blank lines and '#' comments are skipped.
Vector read_vector(std::istream& in, const std::string& source = "<stream>");

/// `automatic` picks Matrix Market for .mtx/.mm and CSV otherwise.
Matrix load_matrix(const std::string& path, MatrixFormat format = MatrixFormat::automatic);
/// Accepts the one-value-per-line format and n x 1 Matrix Market files.
Vector load_vector(const std::string& path);

void write_matrix_market(std::ostream& out, const Matrix& a, bool coordinate = false);
void save_matrix(const std::string& path, const Matrix& a, bool coordinate = false);
void save_vector(const std::string& path, const Vector& v);

}  // namespace lvs::io
