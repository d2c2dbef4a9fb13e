#include "fm/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fm/dual.hpp"
#include "fm/error.hpp"
#include "fm/metric.hpp"
#include "fm/parallel.hpp"

namespace fm {
namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1.0 / (1 << 20);

// Stencil slots: 0 SW, 1 S, 2 SE, 3 W, 4 C, 5 E, 6 NW, 7 N, 8 NE.
constexpr std::array<int, 9> kDi{-1, 0, 1, -1, 0, 1, -1, 0, 1};
constexpr std::array<int, 9> kDj{-1, -1, -1, 0, 0, 0, 1, 1, 1};

template <typename T>
T stencil_residual(const std::array<T, 9>& u, double hx, double hy, double b) {
  GraphPointT<T> gp;
  gp.f1 = (u[5] - u[3]) / (2.0 * hx);
  gp.f2 = (u[7] - u[1]) / (2.0 * hy);
  gp.h11 = (u[5] - 2.0 * u[4] + u[3]) / (hx * hx);
  gp.h22 = (u[7] - 2.0 * u[4] + u[1]) / (hy * hy);
  gp.h12 = (u[8] - u[6] - u[2] + u[0]) / (4.0 * hx * hy);
  return graph_residual(gp, T(b));
}

void check_shape(const GridProblem& p, const GridField& f) {
  if (f.nx != p.nx() || f.ny != p.ny() ||
      f.f.size() != static_cast<std::size_t>(p.nx() + 2) * (p.ny() + 2)) {
    throw std::invalid_argument("grid field shape does not match the problem");
  }
}

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

using Jet9 = Dual<double, 9>;

Eigen::SparseMatrix<double> assemble_jacobian(const GridProblem& p, const GridField& f) {
  const int nx = p.nx();
  const int ny = p.ny();
  const double hx = f.hx();
  const double hy = f.hy();
  // Per-node rows, filled in parallel and gathered in a fixed order.
  std::vector<std::array<double, 9>> rows(static_cast<std::size_t>(nx) * ny);
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t jj) {
    const int j = static_cast<int>(jj) + 1;
    for (int i = 1; i <= nx; ++i) {
      std::array<Jet9, 9> u;
      for (int s = 0; s < 9; ++s) u[s] = Jet9::variable(f.at(i + kDi[s], j + kDj[s]), s);
      const Jet9 r = stencil_residual(u, hx, hy, p.b());
      rows[static_cast<std::size_t>(j - 1) * nx + (i - 1)] = r.grad;
    }
  });

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(rows.size() * 9);
  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      const int row = (j - 1) * nx + (i - 1);
      for (int s = 0; s < 9; ++s) {
        const int ci = i + kDi[s];
        const int cj = j + kDj[s];
        if (ci < 1 || ci > nx || cj < 1 || cj > ny) continue;
        trip.emplace_back(row, (cj - 1) * nx + (ci - 1), rows[row][s]);
      }
    }
  }
  Eigen::SparseMatrix<double> jac(nx * ny, nx * ny);
  jac.setFromTriplets(trip.begin(), trip.end());
  return jac;
}

}  // namespace

GridProblem::GridProblem(Rect domain, int nx, int ny, double b, Boundary boundary)
    : domain_(domain), nx_(nx), ny_(ny), b_(b), boundary_(std::move(boundary)) {
  if (nx < 8 || ny < 8) {
    throw DomainError("grid needs at least 8 interior nodes per axis");
  }
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0)) {
    throw DomainError("grid rectangle must have x0 < x1 and y0 < y1");
  }
  (void)MetricParams(b, PhiFamily::kMatsumoto);
  if (!boundary_) throw DomainError("grid problem needs boundary data");
}

GridField GridProblem::initial_guess() const {
  GridField g{domain_, nx_, ny_,
              std::vector<double>(static_cast<std::size_t>(nx_ + 2) * (ny_ + 2), 0.0)};
  const int ie = nx_ + 1;
  const int je = ny_ + 1;
  for (int i = 0; i <= ie; ++i) {
    g.at(i, 0) = boundary_(g.x(i), g.y(0));
    g.at(i, je) = boundary_(g.x(i), g.y(je));
  }
  for (int j = 0; j <= je; ++j) {
    g.at(0, j) = boundary_(g.x(0), g.y(j));
    g.at(ie, j) = boundary_(g.x(ie), g.y(j));
  }
  for (int j = 1; j < je; ++j) {
    const double v = double(j) / je;
    for (int i = 1; i < ie; ++i) {
      const double u = double(i) / ie;
      const double edges = (1 - v) * g.at(i, 0) + v * g.at(i, je) + (1 - u) * g.at(0, j) +
                           u * g.at(ie, j);
      const double corners = (1 - u) * (1 - v) * g.at(0, 0) + u * (1 - v) * g.at(ie, 0) +
                             (1 - u) * v * g.at(0, je) + u * v * g.at(ie, je);
      g.at(i, j) = edges - corners;
    }
  }
  return g;
}

std::vector<double> assemble_residual(const GridProblem& problem, const GridField& f) {
  check_shape(problem, f);
  const int nx = problem.nx();
  const double hx = f.hx();
  const double hy = f.hy();
  std::vector<double> out(static_cast<std::size_t>(nx) * problem.ny());
  parallel_for(static_cast<std::size_t>(problem.ny()), [&](std::size_t jj) {
    const int j = static_cast<int>(jj) + 1;
    for (int i = 1; i <= nx; ++i) {
      std::array<double, 9> u;
      for (int s = 0; s < 9; ++s) u[s] = f.at(i + kDi[s], j + kDj[s]);
      out[static_cast<std::size_t>(j - 1) * nx + (i - 1)] =
          stencil_residual(u, hx, hy, problem.b());
    }
  });
  return out;
}

GridSolution solve_minimal_graph(const GridProblem& problem, double tol, int max_iter) {
  return solve_minimal_graph(problem, problem.initial_guess(), tol, max_iter);
}

GridSolution solve_minimal_graph(const GridProblem& problem, const GridField& start, double tol,
                                 int max_iter) {
  if (!(tol > 0.0)) throw DomainError("solver tolerance must be positive");
  check_shape(problem, start);
  const int nx = problem.nx();
  const int ny = problem.ny();
  GridSolution sol;
  sol.field = problem.initial_guess();
  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) sol.field.at(i, j) = start.at(i, j);
  }
  std::vector<double> res = assemble_residual(problem, sol.field);
  double norm = max_norm(res);
  sol.history.push_back(norm);

  while (norm > tol) {
    if (sol.iterations >= max_iter) {
      throw NonConvergenceError("Newton iteration did not reach " + std::to_string(tol) +
                                    " in " + std::to_string(max_iter) + " steps",
                                sol.history);
    }
    const Eigen::SparseMatrix<double> jac = assemble_jacobian(problem, sol.field);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(jac);
    if (lu.info() != Eigen::Success) {
      throw StagnationError("Newton Jacobian is singular", sol.history);
    }
    Eigen::VectorXd rhs(nx * ny);
    for (int k = 0; k < nx * ny; ++k) rhs[k] = -res[k];
    const Eigen::VectorXd step = lu.solve(rhs);

    double t = 1.0;
    GridField trial = sol.field;
    std::vector<double> trial_res;
    double trial_norm = 0.0;
    for (;;) {
      for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
          trial.at(i, j) = sol.field.at(i, j) + t * step[(j - 1) * nx + (i - 1)];
        }
      }
      trial_res = assemble_residual(problem, trial);
      trial_norm = max_norm(trial_res);
      if (trial_norm <= (1.0 - kArmijo * t) * norm) break;
      t *= 0.5;
      if (t < kMinStep) {
        throw StagnationError("line search stalled at residual " + std::to_string(norm),
                              sol.history);
      }
    }
    sol.field = std::move(trial);
    res = std::move(trial_res);
    norm = trial_norm;
    ++sol.iterations;
    sol.history.push_back(norm);
  }
  sol.residual_norm = norm;
  return sol;
}

double planarity_deviation(const GridField& f) {
  const int nxt = f.nx + 2;
  const int nyt = f.ny + 2;
  if (f.f.size() != static_cast<std::size_t>(nxt) * nyt) {
    throw std::invalid_argument("grid field size does not match its shape");
  }
  // Centered coordinates keep the normal equations well conditioned.
  const double xc = 0.5 * (f.domain.x0 + f.domain.x1);
  const double yc = 0.5 * (f.domain.y0 + f.domain.y1);
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (int j = 0; j < nyt; ++j) {
    for (int i = 0; i < nxt; ++i) {
      const Eigen::Vector3d row(1.0, f.x(i) - xc, f.y(j) - yc);
      ata += row * row.transpose();
      atb += row * f.at(i, j);
    }
  }
  const Eigen::Vector3d c = ata.ldlt().solve(atb);
  double worst = 0.0;
  for (int j = 0; j < nyt; ++j) {
    for (int i = 0; i < nxt; ++i) {
      const double fit = c[0] + c[1] * (f.x(i) - xc) + c[2] * (f.y(j) - yc);
      worst = std::max(worst, std::abs(f.at(i, j) - fit));
    }
  }
  return worst;
}

}  // namespace fm
