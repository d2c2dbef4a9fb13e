#pragma once

// Dirichlet problem for the horizontal minimal-graph equation on a rectangle,
// discretized with second-order central differences and solved by damped
// Newton with a forward-mode Jacobian.

#include <functional>
#include <vector>

#include "fm/graph_pde.hpp"

namespace fm {

struct Rect {
  double x0, x1, y0, y1;
};

// Node values on an (nx + 2) x (ny + 2) grid, boundary included, stored
// row-major with x fastest: f[j * (nx + 2) + i] sits at (x(i), y(j)).
struct GridField {
  Rect domain{};
  int nx = 0;
  int ny = 0;
  std::vector<double> f;

  int row() const { return nx + 2; }
  double hx() const { return (domain.x1 - domain.x0) / (nx + 1); }
  double hy() const { return (domain.y1 - domain.y0) / (ny + 1); }
  double x(int i) const { return domain.x0 + i * hx(); }
  double y(int j) const { return domain.y0 + j * hy(); }
  double& at(int i, int j) { return f[static_cast<std::size_t>(j) * row() + i]; }
  double at(int i, int j) const { return f[static_cast<std::size_t>(j) * row() + i]; }
};

class GridProblem {
 public:
  using Boundary = std::function<double(double, double)>;

  // Throws DomainError unless nx, ny >= 8, the rectangle is nondegenerate and
  // 0 <= b < 1/2.
  GridProblem(Rect domain, int nx, int ny, double b, Boundary boundary);

  const Rect& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double b() const { return b_; }
  const Boundary& boundary() const { return boundary_; }

  // Boundary samples on the edge nodes; the interior holds a Coons
  // (bilinearly blended) interpolation of the edges.
  GridField initial_guess() const;

 private:
  Rect domain_;
  int nx_, ny_;
  double b_;
  Boundary boundary_;
};

struct GridSolution {
  GridField field;
  double residual_norm = 0.0;
  int iterations = 0;
  std::vector<double> history;  // residual max-norm before each Newton step and at exit
};

// Stencil residual at interior nodes, ordered like the interior of GridField.
// Throws std::invalid_argument if f does not match the grid.
std::vector<double> assemble_residual(const GridProblem& problem, const GridField& f);

// Throws NonConvergenceError after max_iter steps and StagnationError when
// the line search falls below a step of 2^-20.
GridSolution solve_minimal_graph(const GridProblem& problem, double tol = 1e-9,
                                 int max_iter = 50);
// Same, starting from the interior of `start`; its boundary is replaced by
// the problem's data.
GridSolution solve_minimal_graph(const GridProblem& problem, const GridField& start,
                                 double tol = 1e-9, int max_iter = 50);

// Max-norm of the residual of the least-squares affine fit over all nodes.
double planarity_deviation(const GridField& f);
inline double planarity_deviation(const GridSolution& sol) {
  return planarity_deviation(sol.field);
}

}  // namespace fm
