#include "fm/translation.hpp"

#include <stdexcept>
#include <vector>

#include "fm/error.hpp"
#include "fm/jet.hpp"

namespace fm {
namespace {

// Half the jet bracket of the translation jet with (f'', g'') = (1, 0).
Rational half_bracket_lambda(const Rational& fp, const Rational& gp, const Rational& b) {
  const auto [z, j2] = translation_jets(fp, Rational(1), gp, Rational(0));
  return mce0_bracket(z, j2, b) / 2;
}

Rational half_bracket_mu(const Rational& fp, const Rational& gp, const Rational& b) {
  const auto [z, j2] = translation_jets(fp, Rational(0), gp, Rational(1));
  return mce0_bracket(z, j2, b) / 2;
}

LambdaPolynomial build_lambda_polynomial() {
  constexpr int nr = LambdaPolynomial::kDegR + 1;
  constexpr int ns = LambdaPolynomial::kDegS + 1;
  constexpr int nb = LambdaPolynomial::kDegB2 + 1;
  std::vector<Rational> slopes_r, slopes_s, bs, r_nodes, s_nodes, b2_nodes;
  for (int i = 0; i < nr; ++i) {
    slopes_r.emplace_back(i);
    r_nodes.emplace_back(i * i);
  }
  for (int j = 0; j < ns; ++j) {
    slopes_s.emplace_back(j);
    s_nodes.emplace_back(j * j);
  }
  for (int k = 0; k < nb; ++k) {
    bs.emplace_back(k, 10);
    bs.back().canonicalize();
    b2_nodes.push_back(bs.back() * bs.back());
  }

  // values[i][j][k] -> coefficients in r, then s, then b^2.
  std::vector<std::vector<std::vector<Rational>>> a(
      nr, std::vector<std::vector<Rational>>(ns, std::vector<Rational>(nb)));
  for (int j = 0; j < ns; ++j) {
    for (int k = 0; k < nb; ++k) {
      std::vector<Rational> y;
      for (int i = 0; i < nr; ++i) y.push_back(half_bracket_lambda(slopes_r[i], slopes_s[j], bs[k]));
      const Poly pr = interpolate(r_nodes, y);
      for (int i = 0; i < nr; ++i) a[i][j][k] = pr.coeff(i);
    }
  }
  for (int i = 0; i < nr; ++i) {
    for (int k = 0; k < nb; ++k) {
      std::vector<Rational> y;
      for (int j = 0; j < ns; ++j) y.push_back(a[i][j][k]);
      const Poly ps = interpolate(s_nodes, y);
      for (int j = 0; j < ns; ++j) a[i][j][k] = ps.coeff(j);
    }
  }
  LambdaPolynomial::Coeffs c;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ns; ++j) {
      const Poly pb = interpolate(b2_nodes, a[i][j]);
      for (int k = 0; k < nb; ++k) c[i][j][k] = pb.coeff(k);
    }
  }
  LambdaPolynomial poly(c);

  // Off-grid checks of both lambda and the r <-> s exchange giving mu.
  const std::array<std::array<Rational, 3>, 3> probes{{
      {Rational(5), Rational(4), Rational(3, 10)},
      {Rational(1, 2), Rational(7, 3), Rational(2, 5)},
      {Rational(-3, 4), Rational(6), Rational(9, 20)},
  }};
  for (const auto& pr : probes) {
    const Rational r = pr[0] * pr[0];
    const Rational s = pr[1] * pr[1];
    const Rational b2 = pr[2] * pr[2];
    if (poly(r, s, b2) != half_bracket_lambda(pr[0], pr[1], pr[2]) ||
        poly(s, r, b2) != half_bracket_mu(pr[0], pr[1], pr[2])) {
      throw std::logic_error("translation coefficient interpolation failed its off-grid check");
    }
  }
  return poly;
}

void require_b2_range(const Rational& b2) {
  if (b2 < 0 || b2 >= Rational(1, 4)) {
    throw DomainError("b^2 must lie in [0, 1/4), got " + to_string(b2));
  }
}

}  // namespace

LambdaPolynomial::LambdaPolynomial(Coeffs c) : c_(std::move(c)) {
  for (int i = 0; i <= kDegR; ++i) {
    for (int j = 0; j <= kDegS; ++j) {
      for (int k = 0; k <= kDegB2; ++k) d_[i][j][k] = c_[i][j][k].get_d();
    }
  }
}

Rational LambdaPolynomial::operator()(const Rational& r, const Rational& s,
                                      const Rational& b2) const {
  Rational acc = 0;
  for (int i = kDegR; i >= 0; --i) {
    Rational in_s = 0;
    for (int j = kDegS; j >= 0; --j) {
      Rational in_b = 0;
      for (int k = kDegB2; k >= 0; --k) in_b = in_b * b2 + c_[i][j][k];
      in_s = in_s * s + in_b;
    }
    acc = acc * r + in_s;
  }
  return acc;
}

double LambdaPolynomial::operator()(double r, double s, double b2) const {
  double acc = 0.0;
  for (int i = kDegR; i >= 0; --i) {
    double in_s = 0.0;
    for (int j = kDegS; j >= 0; --j) {
      double in_b = 0.0;
      for (int k = kDegB2; k >= 0; --k) in_b = in_b * b2 + d_[i][j][k];
      in_s = in_s * s + in_b;
    }
    acc = acc * r + in_s;
  }
  return acc;
}

const LambdaPolynomial& lambda_polynomial() {
  static const LambdaPolynomial poly = build_lambda_polynomial();
  return poly;
}

LambdaMu lambda_mu(double r, double s, double b) {
  const LambdaPolynomial& poly = lambda_polynomial();
  const double b2 = b * b;
  return {poly(r, s, b2), poly(s, r, b2)};
}

std::pair<Rational, Rational> lambda_mu_exact(const Rational& r, const Rational& s,
                                              const Rational& b2) {
  const LambdaPolynomial& poly = lambda_polynomial();
  return {poly(r, s, b2), poly(s, r, b2)};
}

double translation_residual(const TranslationPoint& tp, double b) {
  const LambdaMu lm = lambda_mu(tp.r(), tp.s(), b);
  return lm.lambda * tp.fpp + lm.mu * tp.gpp;
}

KLPolys kl_polys(const Rational& b2) {
  require_b2_range(b2);
  const LambdaPolynomial& poly = lambda_polynomial();
  // K(p) = lambda at q = 0; L(p) = K(p) - lambda at q = 1. One spare node
  // each so an unexpected degree would show up.
  std::vector<Rational> nodes, k_vals, l_vals;
  for (int i = 0; i < 5; ++i) {
    const Rational p(i);
    nodes.push_back(p);
    const Rational k = poly(p / 2, p / 2, b2);
    k_vals.push_back(k);
    l_vals.push_back(k - poly((p + 1) / 2, (p - 1) / 2, b2));
  }
  KLPolys out{b2, interpolate(nodes, k_vals), interpolate(nodes, l_vals)};
  if (out.K.degree() != 3 || out.L.degree() != 2) {
    throw std::logic_error("K and L do not have degrees 3 and 2");
  }
  return out;
}

Rational kl_ratio_derivative(const Rational& b2, const Rational& p) {
  const KLPolys kl = kl_polys(b2);
  const Rational l = kl.L(p);
  if (l == 0) throw PoleError("L(p) vanishes at p = " + to_string(p));
  Rational out = (kl.K.derivative()(p) * l - kl.K(p) * kl.L.derivative()(p)) / (l * l);
  out.canonicalize();
  return out;
}

Rational kl_ratio_closed_form_candidate(const Rational& b2, const Rational& p) {
  const Rational b4 = b2 * b2;
  const Rational sq = (2 + b2) * (2 + b2);
  const Rational t = (4 - 16 * b2) + p * (8 - 12 * b2 + 4 * b4) + p * p * sq;
  if (t == 0) throw PoleError("closed-form denominator vanishes");
  Rational out = p + (8 + 32 * b2 - 10 * b4) / sq +
                 4 * b4 / t * ((132 - 60 * b2 + 9 * b4) / sq * p + 2 * (66 - 21 * b2) / sq);
  out.canonicalize();
  return out;
}

CompatibilityReport compatibility_check(const Rational& b2) {
  CompatibilityReport rep{b2, kl_polys(b2), {}, {}, false, false, false, false};
  const Poly& K = rep.kl.K;
  const Poly& L = rep.kl.L;
  const Poly Kp = K.derivative();
  const Poly Kpp = Kp.derivative();
  const Poly Lp = L.derivative();
  const Poly Lpp = Lp.derivative();

  rep.e21 = Kpp * L * L * L - K * L * L * Lpp - Rational(2) * Kp * Lp * L * L +
            Rational(2) * K * L * Lp * Lp;
  rep.e22 = Rational(-1) * Kpp * K * K * L + K * K * K * Lpp -
            Rational(2) * Kp * K * K * Lp + Rational(2) * Kp * Kp * K * L -
            Rational(2) * K * L * L * L;
  rep.both_vanish = rep.e21.is_zero() && rep.e22.is_zero();
  rep.ratio_is_p_plus_2 = K == Poly(std::vector<Rational>{2, 1}) * L;

  // u = K - L q, v = K + L q; psi = log u - log v.
  rep.reduction_consistent = true;
  for (const Rational& p : {Rational(1), Rational(3, 2), Rational(4)}) {
    for (const Rational& q : {Rational(1, 3), Rational(-1, 2), Rational(3, 4)}) {
      const Rational k = K(p), kp = Kp(p), kpp = Kpp(p);
      const Rational l = L(p), lp = Lp(p), lpp = Lpp(p);
      const Rational u = k - l * q, up = kp - lp * q, upp = kpp - lpp * q;
      const Rational v = k + l * q, vp = kp + lp * q, vpp = kpp + lpp * q;
      const Rational lhs =
          ((upp * u - up * up + l * l) * v * v - (vpp * v - vp * vp + l * l) * u * u);
      const Rational rhs = -2 * (q * q * q * rep.e21(p) + q * rep.e22(p));
      if (lhs != rhs) rep.reduction_consistent = false;
    }
  }

  rep.closed_form_candidate_matches = true;
  for (int i = 0; i < 4; ++i) {
    const Rational p(i);
    if (kl_ratio_closed_form_candidate(b2, p) != K(p) / L(p)) {
      rep.closed_form_candidate_matches = false;
    }
  }
  return rep;
}

}  // namespace fm
