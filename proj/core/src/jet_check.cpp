#include "fm/jet_check.hpp"

#include <algorithm>
#include <cmath>

namespace fm {
namespace {

using D1 = Dual<double, 6>;
using D2 = Dual<D1, 6>;

double jet_scale(const ImmersionJet1& z) {
  double m = 1.0;
  for (const auto& row : z) {
    for (double v : row) m = std::max(m, std::abs(v));
  }
  return m;
}

template <typename M>
double max_abs(const M& m) {
  double out = 0.0;
  for (const auto& row : m) {
    for (double v : row) out = std::max(out, std::abs(v));
  }
  return out;
}

template <typename M>
double relative_gap(const M& a, const M& ref) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) gap = std::max(gap, std::abs(a[i][j] - ref[i][j]));
  }
  const double scale = max_abs(ref);
  return scale > 0.0 ? gap / scale : gap;
}

}  // namespace

JetGradient area_integrand_grad_dual(const ImmersionJet1& z, double b) {
  JetMatrix<D1> zd;
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) zd[i][e] = D1::variable(z[i][e], 2 * i + e);
  }
  const D1 f = area_integrand(zd, D1(b));
  JetGradient g;
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) g[i][e] = f.grad[2 * i + e];
  }
  return g;
}

JetHessian area_integrand_hess_dual(const ImmersionJet1& z, double b) {
  JetMatrix<D2> zd;
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) {
      const int k = 2 * i + e;
      zd[i][e] = D2::variable(D1::variable(z[i][e], k), k);
    }
  }
  const D2 f = area_integrand(zd, D2(b));
  JetHessian h;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) h[r][c] = f.grad[r].grad[c];
  }
  return h;
}

JetGradient area_integrand_grad_fd(const ImmersionJet1& z, double b, double h) {
  const double step = h * jet_scale(z);
  JetGradient g;
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) {
      ImmersionJet1 plus = z;
      ImmersionJet1 minus = z;
      plus[i][e] += step;
      minus[i][e] -= step;
      g[i][e] = (area_integrand(plus, b) - area_integrand(minus, b)) / (2.0 * step);
    }
  }
  return g;
}

JetHessian area_integrand_hess_fd(const ImmersionJet1& z, double b, double h) {
  const double base = h * jet_scale(z);
  auto shifted = [&](int r, double dr, int c, double dc) {
    ImmersionJet1 w = z;
    w[r / 2][r % 2] += dr;
    w[c / 2][c % 2] += dc;
    return area_integrand(w, b);
  };
  auto four_point = [&](int r, int c, double step) {
    return (shifted(r, step, c, step) - shifted(r, step, c, -step) - shifted(r, -step, c, step) +
            shifted(r, -step, c, -step)) /
           (4.0 * step * step);
  };
  JetHessian out;
  for (int r = 0; r < 6; ++r) {
    for (int c = r; c < 6; ++c) {
      // One Richardson step removes the h^2 term.
      const double v = (4.0 * four_point(r, c, base) - four_point(r, c, 2.0 * base)) / 3.0;
      out[r][c] = v;
      out[c][r] = v;
    }
  }
  return out;
}

DerivativeErrors derivative_errors(const ImmersionJet1& z, double b) {
  const JetGradient g = area_integrand_grad(z, b);
  const JetHessian h = area_integrand_hess(z, b);
  return {
      relative_gap(g, area_integrand_grad_dual(z, b)),
      relative_gap(h, area_integrand_hess_dual(z, b)),
      relative_gap(g, area_integrand_grad_fd(z, b)),
      relative_gap(h, area_integrand_hess_fd(z, b)),
  };
}

}  // namespace fm
