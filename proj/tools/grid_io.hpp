#pragma once

// Grid file format (CSV):
//   # fm-grid v1 nx=<int> ny=<int> x0=<g> x1=<g> y0=<g> y1=<g> b=<g>
//   x,y,f
//   <x>,<y>,<f>        one row per node, boundary included, x fastest
// All reals are written with 17 significant digits, so reading a file back
// reproduces every value bit for bit.

#include <istream>
#include <ostream>

#include "fm/solver.hpp"

namespace fm::cli {

struct GridFile {
  GridField field;
  double b = 0.0;
};

void write_grid_csv(std::ostream& out, const GridField& field, double b);

// Throws std::invalid_argument on a malformed or inconsistent file.
GridFile read_grid_csv(std::istream& in);

}  // namespace fm::cli
