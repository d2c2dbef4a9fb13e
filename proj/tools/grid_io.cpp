#include "grid_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fm::cli {
namespace {

constexpr const char* kMagic = "# fm-grid v1";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw std::invalid_argument("grid file: bad number '" + text + "'");
  }
  return v;
}

}  // namespace

void write_grid_csv(std::ostream& out, const GridField& field, double b) {
  out << kMagic << " nx=" << field.nx << " ny=" << field.ny << " x0=" << g17(field.domain.x0)
      << " x1=" << g17(field.domain.x1) << " y0=" << g17(field.domain.y0)
      << " y1=" << g17(field.domain.y1) << " b=" << g17(b) << "\n";
  out << "x,y,f\n";
  for (int j = 0; j < field.ny + 2; ++j) {
    for (int i = 0; i < field.nx + 2; ++i) {
      out << g17(field.x(i)) << ',' << g17(field.y(j)) << ',' << g17(field.at(i, j)) << '\n';
    }
  }
}

GridFile read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0) {
    throw std::invalid_argument("grid file: missing '# fm-grid v1' header");
  }
  std::map<std::string, std::string> meta;
  std::istringstream tokens(line.substr(std::string(kMagic).size()));
  std::string tok;
  while (tokens >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid file: bad header token '" + tok + "'");
    meta[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"nx", "ny", "x0", "x1", "y0", "y1", "b"}) {
    if (!meta.count(key)) throw std::invalid_argument(std::string("grid file: header lacks ") + key);
  }
  GridFile file;
  GridField& g = file.field;
  g.nx = std::stoi(meta["nx"]);
  g.ny = std::stoi(meta["ny"]);
  if (g.nx < 1 || g.ny < 1) throw std::invalid_argument("grid file: nonpositive grid size");
  g.domain = {parse_real(meta["x0"]), parse_real(meta["x1"]), parse_real(meta["y0"]),
              parse_real(meta["y1"])};
  file.b = parse_real(meta["b"]);
  if (!std::getline(in, line) || line != "x,y,f") {
    throw std::invalid_argument("grid file: expected column header 'x,y,f'");
  }
  const std::size_t count = static_cast<std::size_t>(g.nx + 2) * (g.ny + 2);
  g.f.reserve(count);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw std::invalid_argument("grid file: bad row '" + line + "'");
    }
    g.f.push_back(parse_real(line.substr(c2 + 1)));
  }
  if (g.f.size() != count) {
    throw std::invalid_argument("grid file: expected " + std::to_string(count) + " rows, found " +
                                std::to_string(g.f.size()));
  }
  return file;
}

}  // namespace fm::cli
