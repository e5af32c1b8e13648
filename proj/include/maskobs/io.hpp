#pragma once

// Plain-text records shared by the CLI and external tools.
//
//   matrix R C          followed by R rows of C complex entries "re,im"
//   vector N            followed by one row of N complex entries
//   coeffs D a0 a1 ...  observable coefficients, D^2 reals after D
//   bloch D b1 ...      Bloch vector, D^2 - 1 reals after D
//
// Tokens are whitespace separated, '#' starts a comment, blank lines are
// ignored. A bare real "x" is accepted wherever "x,0" is. Rendering uses
// 17 significant digits so parse(render(x)) == x bit for bit.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maskobs/bloch.hpp"

namespace maskobs {

using Record = std::variant<Matrix, Vector, ObservableCoeffs, BlochVector>;

/// All records in `text`, in order. Throws ParseError (with line and
/// column) on malformed input and DimensionMismatch when a coeffs, bloch or
/// vector record has the wrong number of values.
std::vector<Record> parse_records(std::string_view text);
/// Exactly one record.
Record parse_matrix(std::string_view text);

std::string render(const Matrix& m);
std::string render(const Vector& v);
std::string render(const ObservableCoeffs& c);
std::string render(const BlochVector& b);
std::string render(const Record& r);

std::string read_file(const std::string& path);

}  // namespace maskobs
