#include "maskobs/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "maskobs/error.hpp"

namespace maskobs {

namespace {

struct Token {
  std::string_view text;
  int line = 0;
  int column = 0;
};

using Line = std::vector<Token>;

[[noreturn]] void fail(const Token& at, const std::string& message,
                       ErrorCode code = ErrorCode::ParseError) {
  throw Error(code, "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) +
                        ": " + message);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t begin = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > begin) tokens.push_back({raw.substr(begin, i - begin), line_no, static_cast<int>(begin) + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

double parse_real(const Token& tok, std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    fail(tok, "expected a finite real number, got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(const Token& tok) { return parse_real(tok, tok.text); }

Complex parse_complex(const Token& tok) {
  const auto comma = tok.text.find(',');
  if (comma == std::string_view::npos) return Complex(parse_real(tok), 0.0);
  return Complex(parse_real(tok, tok.text.substr(0, comma)), parse_real(tok, tok.text.substr(comma + 1)));
}

int parse_size(const Token& tok) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || value <= 0) {
    fail(tok, "expected a positive integer, got '" + std::string(tok.text) + "'");
  }
  return value;
}

void expect_count(const Line& line, std::size_t count, const char* what) {
  if (line.size() != count) {
    const Token& at = line.size() > count ? line[count] : line.back();
    fail(at, std::string(what) + " needs " + std::to_string(count) + " tokens, found " +
                 std::to_string(line.size()));
  }
}

std::string format_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) { return format_exact(z.real()) + "," + format_exact(z.imag()); }

}  // namespace

std::vector<Record> parse_records(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  std::vector<Record> out;
  std::size_t li = 0;
  while (li < lines.size()) {
    const Line& header = lines[li++];
    const std::string_view kind = header[0].text;
    if (kind == "matrix") {
      expect_count(header, 3, "matrix header");
      const int rows = parse_size(header[1]);
      const int cols = parse_size(header[2]);
      Matrix m(rows, cols);
      for (int r = 0; r < rows; ++r) {
        if (li >= lines.size()) {
          fail(header[0], "matrix declares " + std::to_string(rows) + " rows, found " + std::to_string(r),
               ErrorCode::DimensionMismatch);
        }
        const Line& row = lines[li++];
        expect_count(row, static_cast<std::size_t>(cols), "matrix row");
        for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
      }
      out.emplace_back(std::move(m));
    } else if (kind == "vector") {
      expect_count(header, 2, "vector header");
      const int n = parse_size(header[1]);
      if (li >= lines.size()) fail(header[0], "vector has no entries", ErrorCode::DimensionMismatch);
      const Line& row = lines[li++];
      if (row.size() != static_cast<std::size_t>(n)) {
        fail(row.front(), "vector declares " + std::to_string(n) + " entries, found " +
                              std::to_string(row.size()), ErrorCode::DimensionMismatch);
      }
      Vector v(n);
      for (int i = 0; i < n; ++i) v(i) = parse_complex(row[static_cast<std::size_t>(i)]);
      out.emplace_back(std::move(v));
    } else if (kind == "coeffs" || kind == "bloch") {
      if (header.size() < 2) fail(header[0], std::string(kind) + " needs a dimension");
      const int d = parse_size(header[1]);
      if (d < 2) fail(header[1], "dimension must be >= 2");
      const bool coeffs = kind == "coeffs";
      const std::size_t expected = static_cast<std::size_t>(coeffs ? d * d : d * d - 1);
      if (header.size() - 2 != expected) {
        fail(header.back(), std::string(kind) + " " + std::to_string(d) + " needs " + std::to_string(expected) +
                                " values, found " + std::to_string(header.size() - 2),
             ErrorCode::DimensionMismatch);
      }
      RealVector values(static_cast<Eigen::Index>(expected));
      for (std::size_t i = 0; i < expected; ++i) values(static_cast<Eigen::Index>(i)) = parse_real(header[i + 2]);
      if (coeffs) {
        out.emplace_back(ObservableCoeffs{d, values(0), values.tail(values.size() - 1)});
      } else {
        out.emplace_back(BlochVector{d, values});
      }
    } else {
      fail(header[0], "unknown record kind '" + std::string(kind) + "'");
    }
  }
  return out;
}

Record parse_matrix(std::string_view text) {
  std::vector<Record> records = parse_records(text);
  if (records.size() != 1) {
    throw Error(ErrorCode::ParseError, "expected exactly one record, found " + std::to_string(records.size()));
  }
  return std::move(records.front());
}

std::string render(const Matrix& m) {
  std::string out = "matrix " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ' ';
      out += format_complex(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string render(const Vector& v) {
  std::string out = "vector " + std::to_string(v.size()) + "\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_complex(v(i));
  }
  return out + "\n";
}

std::string render(const ObservableCoeffs& c) {
  std::string out = "coeffs " + std::to_string(c.dimension) + " " + format_exact(c.a0);
  for (Eigen::Index i = 0; i < c.a.size(); ++i) out += " " + format_exact(c.a(i));
  return out + "\n";
}

std::string render(const BlochVector& b) {
  std::string out = "bloch " + std::to_string(b.dimension);
  for (Eigen::Index i = 0; i < b.b.size(); ++i) out += " " + format_exact(b.b(i));
  return out + "\n";
}

std::string render(const Record& r) {
  return std::visit([](const auto& value) { return render(value); }, r);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace maskobs
