#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vbp/core.hpp"

namespace vbp {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "bad number '" + std::string(tok) + "'");
  return value;
}

bool blank(std::string_view line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Instance read_vbp(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!blank(line)) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(lineno, "missing header 'n d'");
  const auto header = split_ws(line);
  if (header.size() != 2) throw ParseError(lineno, "header must be 'n d'");
  const auto n = parse_number<std::size_t>(header[0], lineno);
  const auto d = parse_number<std::size_t>(header[1], lineno);
  if (d == 0) throw ParseError(lineno, "d must be positive");

  std::vector<ItemVector> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line()) throw ParseError(lineno, "expected " + std::to_string(n) + " item rows");
    ItemVector row;
    for (auto tok : split_ws(line)) {
      const double v = parse_number<double>(tok, lineno);
      if (!std::isfinite(v)) throw ParseError(lineno, "non-finite component");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (next_line()) throw ParseError(lineno, "trailing content after item rows");
  return Instance::validate(d, std::move(rows));
}

Instance read_vbp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_vbp(in);
}

void write_vbp(std::ostream& out, const Instance& inst) {
  out << inst.size() << ' ' << inst.dims() << '\n';
  char buf[64];
  for (const auto& item : inst.items()) {
    for (std::size_t k = 0; k < item.size(); ++k) {
      const auto res = std::to_chars(buf, buf + sizeof buf, item[k]);
      if (k) out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

void write_vbp_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_vbp(out, inst);
}

}  // namespace vbp
