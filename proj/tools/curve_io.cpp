#include "curve_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace frechet::cli {

namespace {

[[noreturn]] void fail(const std::string& name, std::size_t line,
                       const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string serialize_curve(const Curve& c) {
  std::string out = std::to_string(c.dim()) + "\n" +
                    std::to_string(c.num_vertices()) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < c.num_vertices(); ++i) {
    for (std::size_t k = 0; k < c.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", c.coord(i, k));
      if (k) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Curve parse_curve(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) fail(name, lineno + 1, "unexpected end of file");
    ++lineno;
    return line;
  };

  auto parse_count = [&](const std::string& what) -> std::size_t {
    const std::string& s = next_line();
    try {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos != s.size() || v <= 0) throw std::invalid_argument(s);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      fail(name, lineno, "expected " + what + ", got \"" + s + "\"");
    }
  };

  std::size_t dim = parse_count("a positive dimension");
  std::size_t n = parse_count("a positive vertex count");
  if (n < 2) fail(name, lineno, "curves need at least 2 vertices");

  std::vector<double> flat;
  flat.reserve(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream row(next_line());
    for (std::size_t k = 0; k < dim; ++k) {
      double v;
      if (!(row >> v))
        fail(name, lineno,
             "expected " + std::to_string(dim) + " coordinates");
      flat.push_back(v);
    }
    std::string rest;
    if (row >> rest)
      fail(name, lineno, "trailing data \"" + rest + "\" after coordinates");
  }
  return Curve(dim, std::move(flat));
}

Curve read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  return parse_curve(in, path);
}

void write_curve_file(const std::string& path, const Curve& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << serialize_curve(c);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace frechet::cli
