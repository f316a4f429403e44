#include "perronkit/tensor_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

#include "perronkit/error.hpp"

namespace perronkit {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int parse_int(std::string_view field, int line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(field) + "'");
  }
  return value;
}

double parse_value(std::string_view field, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError(line, "expected a decimal value, got '" + std::string(field) + "'");
  }
  if (value < 0.0) throw ParseError(line, "negative value " + std::string(field));
  return value;
}

}  // namespace

NonnegativeTensor read_tensor(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  TensorShape shape;
  std::vector<Entry> entries;
  std::set<std::vector<int>> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_fields(line);

    if (!have_header) {
      if (fields.size() != 2) throw ParseError(line_no, "header must be 'm n'");
      shape = {parse_int(fields[0], line_no), parse_int(fields[1], line_no)};
      if (shape.order < 2 || shape.dim < 1) {
        throw ParseError(line_no, "need m >= 2 and n >= 1");
      }
      have_header = true;
      continue;
    }

    const auto m = static_cast<std::size_t>(shape.order);
    if (fields.size() != m + 1) {
      throw ParseError(line_no, "expected " + std::to_string(m) + " indices and a value");
    }
    Entry e{std::vector<int>(m), 0.0};
    for (std::size_t p = 0; p < m; ++p) {
      const int i = parse_int(fields[p], line_no);
      if (i < 1 || i > shape.dim) {
        throw ParseError(line_no, "index " + std::to_string(i) + " outside 1.." +
                                      std::to_string(shape.dim));
      }
      e.index[p] = i - 1;
    }
    e.value = parse_value(fields[m], line_no);
    if (!seen.insert(e.index).second) throw ParseError(line_no, "duplicate index tuple");
    entries.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(line_no, "missing 'm n' header");
  return NonnegativeTensor(shape, std::move(entries));
}

NonnegativeTensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_tensor(in);
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error("cannot format value");
  return std::string(buffer, ptr);
}

void write_tensor(std::ostream& out, const NonnegativeTensor& tensor) {
  out << tensor.order() << ' ' << tensor.dim() << '\n';
  for (std::size_t k = 0; k < tensor.nnz(); ++k) {
    for (int i : tensor.index(k)) out << (i + 1) << ' ';
    out << format_double(tensor.value(k)) << '\n';
  }
}

void write_tensor_file(const std::filesystem::path& path, const NonnegativeTensor& tensor) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_tensor(out, tensor);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace perronkit
