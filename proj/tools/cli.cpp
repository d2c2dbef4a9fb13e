#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fm/error.hpp"
#include "fm/graph_pde.hpp"
#include "fm/jet_check.hpp"
#include "fm/metric.hpp"
#include "fm/solver.hpp"
#include "fm/translation.hpp"
#include "fm/volume.hpp"
#include "grid_io.hpp"

namespace fm::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

// Raised when a computed self-check does not hold.
struct PropertyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  bool no_timestamp = false;
  std::uint64_t seed = 1;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw DomainError(what + ": '" + text + "' is not a finite number");
  }
  return v;
}

// "k1=v1,k2=v2"; keys must come from `allowed`, missing keys stay 0.
std::map<std::string, double> parse_point(const std::string& text,
                                          const std::vector<std::string>& allowed) {
  std::map<std::string, double> out;
  for (const auto& key : allowed) out[key] = 0.0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("--point: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (!out.count(key)) throw DomainError("--point: unknown key '" + key + "'");
    out[key] = parse_double(item.substr(eq + 1), "--point " + key);
  }
  return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
  return out;
}

TiltedFrame parse_frame(const std::string& text) {
  const std::vector<double> k = parse_list(text, "--frame");
  if (k.size() != 3) throw DomainError("--frame needs three comma-separated components");
  const double n = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  if (!(std::abs(n - 1.0) <= 1e-12)) throw DomainError("--frame must be a unit vector");
  return TiltedFrame::with_last_row({k[0], k[1], k[2]});
}

MetricParams checked_matsumoto(double b) { return MetricParams(b, PhiFamily::kMatsumoto); }

json rational_json(const Rational& q) { return to_string(q); }

json lowest_term_json(const Poly& p) {
  const auto t = p.lowest_term();
  if (!t) return nullptr;
  return json{{"degree", t->first}, {"coefficient", rational_json(t->second)}};
}

ImmersionJet1 random_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    ImmersionJet1 z;
    for (auto& row : z) {
      for (double& v : row) v = u(rng);
    }
    const Sym2 a = gram(z);
    const double tr = a.xx + a.yy;
    if (det(a) > 1e-3 * tr * tr) return z;
  }
}

// ---- commands --------------------------------------------------------------

json cmd_volume(const std::vector<double>& bs, int n, const std::string& family_name,
                const std::string& branch_name, int initial, int max_nodes) {
  const PhiFamily family = parse_phi_family(family_name);
  VolumeBranch branch;
  if (branch_name == "bh") {
    branch = VolumeBranch::kBusemannHausdorff;
  } else if (branch_name == "ht") {
    branch = VolumeBranch::kHolmesThompson;
  } else {
    throw DomainError("--branch must be 'bh' or 'ht', got '" + branch_name + "'");
  }
  json results = json::array();
  bool ok = true;
  for (double b : bs) {
    const MetricParams params(b, family);
    const VolumeFactorRequest req(params, n, NodePolicy{initial, max_nodes}, branch);
    const QuadratureEstimate est = bh_factor_quadrature_detailed(req);
    json rec{{"b", b}, {"family", std::string(to_string(family))}, {"n", n},
             {"quadrature", est.value}, {"nodes", est.nodes}};
    std::optional<double> closed;
    if (n == 2 && family == PhiFamily::kMatsumoto) closed = bh_factor_closed_matsumoto(b);
    if (n == 2 && family == PhiFamily::kRanders) closed = std::pow(1.0 - b * b, 1.5);
    if (family == PhiFamily::kEuclidean) closed = 1.0;
    if (closed) {
      const double diff = std::abs(est.value - *closed);
      rec["closed"] = *closed;
      rec["abs_diff"] = diff;
      if (!(diff <= 1e-10)) ok = false;
    } else {
      rec["closed"] = nullptr;
    }
    rec["euclidean_degeneration"] = params.euclidean_degeneration();
    results.push_back(rec);
  }
  json out{{"results", results}};
  if (!ok) throw PropertyFailure(out.dump());
  return out;
}

json cmd_residual_graph(const std::vector<double>& bs, const std::string& point,
                        const std::string& frame_text) {
  const auto v = parse_point(point, {"f1", "f2", "h11", "h12", "h22"});
  const GraphPoint gp{v.at("f1"), v.at("f2"), v.at("h11"), v.at("h12"), v.at("h22")};
  std::optional<TiltedFrame> frame;
  if (!frame_text.empty()) frame = parse_frame(frame_text);
  json results = json::array();
  for (double b : bs) {
    const MetricParams params = checked_matsumoto(b);
    json rec{{"b", b}, {"W2", gp.W2()}, {"residual", graph_residual(gp, b)}};
    if (frame) {
      const Vec3& k = frame->k();
      rec["frame_k"] = {k[0], k[1], k[2]};
      rec["tilted_residual"] = tilted_graph_residual(gp, *frame, b);
    }
    rec["euclidean_degeneration"] = params.euclidean_degeneration();
    results.push_back(rec);
  }
  return json{{"point", {{"f1", gp.f1}, {"f2", gp.f2}, {"h11", gp.h11}, {"h12", gp.h12},
                         {"h22", gp.h22}}},
              {"results", results}};
}

json cmd_residual_translation(const std::vector<double>& bs, const std::string& point) {
  const auto v = parse_point(point, {"fp", "fpp", "gp", "gpp"});
  const TranslationPoint tp{v.at("fp"), v.at("fpp"), v.at("gp"), v.at("gpp")};
  json results = json::array();
  for (double b : bs) {
    const MetricParams params = checked_matsumoto(b);
    const LambdaMu lm = lambda_mu(tp.r(), tp.s(), b);
    results.push_back({{"b", b},
                       {"lambda", lm.lambda},
                       {"mu", lm.mu},
                       {"residual", translation_residual(tp, b)},
                       {"euclidean_degeneration", params.euclidean_degeneration()}});
  }
  return json{{"point", {{"fp", tp.fp}, {"fpp", tp.fpp}, {"gp", tp.gp}, {"gpp", tp.gpp}}},
              {"results", results}};
}

json cmd_check_derivatives(const std::vector<double>& bs, int samples, std::uint64_t seed) {
  constexpr double kDualTol = 1e-9;
  constexpr double kFdTol = 1e-6;
  if (samples < 1) throw DomainError("--samples must be positive");
  json results = json::array();
  bool ok = true;
  for (double b : bs) {
    checked_matsumoto(b);
    std::mt19937_64 rng(seed);
    DerivativeErrors worst;
    for (int s = 0; s < samples; ++s) {
      const DerivativeErrors e = derivative_errors(random_jet(rng), b);
      worst.grad_vs_dual = std::max(worst.grad_vs_dual, e.grad_vs_dual);
      worst.hess_vs_dual = std::max(worst.hess_vs_dual, e.hess_vs_dual);
      worst.grad_vs_fd = std::max(worst.grad_vs_fd, e.grad_vs_fd);
      worst.hess_vs_fd = std::max(worst.hess_vs_fd, e.hess_vs_fd);
    }
    const bool pass = worst.grad_vs_dual <= kDualTol && worst.hess_vs_dual <= kDualTol &&
                      worst.grad_vs_fd <= kFdTol && worst.hess_vs_fd <= kFdTol;
    ok = ok && pass;
    results.push_back({{"b", b},
                       {"samples", samples},
                       {"grad_vs_dual", worst.grad_vs_dual},
                       {"hess_vs_dual", worst.hess_vs_dual},
                       {"grad_vs_fd", worst.grad_vs_fd},
                       {"hess_vs_fd", worst.hess_vs_fd},
                       {"pass", pass}});
  }
  json out{{"tolerances", {{"dual", kDualTol}, {"fd", kFdTol}}}, {"results", results}};
  if (!ok) throw PropertyFailure(out.dump());
  return out;
}

json cmd_check_translation(const std::vector<std::string>& b2s, const std::vector<std::string>& ps) {
  std::vector<Rational> nodes;
  for (const auto& p : ps) nodes.push_back(parse_rational(p));
  json results = json::array();
  bool ok = true;
  for (const auto& text : b2s) {
    const Rational b2 = parse_rational(text);
    const CompatibilityReport rep = compatibility_check(b2);
    json derivs = json::array();
    bool all_one = true;
    bool none_pm_one = true;
    for (const auto& p : nodes) {
      const Rational d = kl_ratio_derivative(b2, p);
      const bool pm_one = d == 1 || d == -1;
      all_one = all_one && d == 1;
      none_pm_one = none_pm_one && !pm_one;
      derivs.push_back({{"p", rational_json(p)},
                        {"value", rational_json(d)},
                        {"approx", d.get_d()},
                        {"is_pm_one", pm_one}});
    }
    const bool euclid = b2 == 0;
    const bool consistent = euclid ? (all_one && rep.both_vanish && rep.ratio_is_p_plus_2)
                                   : (none_pm_one && !rep.both_vanish);
    ok = ok && consistent && rep.reduction_consistent;
    std::string conclusion;
    if (euclid && consistent) {
      conclusion = "(K/L)_p = 1 at all nodes; rigidity criterion satisfied only at b=0";
    } else if (!euclid && consistent) {
      conclusion = "|(K/L)_p| != 1 at all nodes; only planar minimal translation surfaces";
    } else {
      conclusion = "rigidity criterion inconsistent with the exact polynomials";
    }
    results.push_back({{"b2", rational_json(b2)},
                       {"K", rep.kl.K.to_string("p")},
                       {"L", rep.kl.L.to_string("p")},
                       {"kl_ratio_derivative", derivs},
                       {"e21_zero", rep.e21.is_zero()},
                       {"e22_zero", rep.e22.is_zero()},
                       {"e21_lowest_term", lowest_term_json(rep.e21)},
                       {"e22_lowest_term", lowest_term_json(rep.e22)},
                       {"both_vanish", rep.both_vanish},
                       {"ratio_is_p_plus_2", rep.ratio_is_p_plus_2},
                       {"reduction_consistent", rep.reduction_consistent},
                       {"closed_form_candidate_matches", rep.closed_form_candidate_matches},
                       {"conclusion", conclusion}});
  }
  json out{{"results", results}};
  if (!ok) throw PropertyFailure(out.dump());
  return out;
}

json cmd_ellipticity(const std::vector<double>& bs, const std::string& frame_text, int samples,
                     std::uint64_t seed, const BoundSamplerConfig& config) {
  if (samples < 1) throw DomainError("--samples must be positive");
  const TiltedFrame frame = parse_frame(frame_text);
  json results = json::array();
  bool ok = true;
  for (double b : bs) {
    checked_matsumoto(b);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> grad(-10.0, 10.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double min_ratio = INFINITY;
    double min_divisor = INFINITY;
    bool strict = true;
    for (int s = 0; s < samples; ++s) {
      const GraphPoint gp{grad(rng), grad(rng), 0.0, 0.0, 0.0};
      const double a = angle(rng);
      const Vec2 xi{std::cos(a), std::sin(a)};
      const PdeCoefficients c = ellipticity_coefficients(gp, frame, b);
      const double lower = 1.0 / c.W2;
      const double form = c.quadratic_form(xi);
      strict = strict && form > lower;
      min_ratio = std::min(min_ratio, form / lower);
      min_divisor = std::min(min_divisor, c.Sb * (c.Sb - 2.0 * b * b * c.w * c.w));
    }
    const BoundEstimate bound = mean_curvature_type_bound(frame, b, config);
    BoundSamplerConfig wide = config;
    wide.t_max *= 10.0;
    const BoundEstimate wider = mean_curvature_type_bound(frame, b, wide);
    const double change =
        bound.value > 0.0 ? std::abs(wider.value - bound.value) / bound.value : wider.value;
    const bool stable = std::isfinite(bound.value) && change < 0.01;
    ok = ok && strict && min_divisor > 0.0 && stable;
    results.push_back({{"b", b},
                       {"samples", samples},
                       {"lower_bound_strict", strict},
                       {"min_form_over_bound", min_ratio},
                       {"min_divisor", min_divisor},
                       {"bound_estimate", bound.value},
                       {"bound_at_radius", bound.at_radius},
                       {"bound_estimate_wide", wider.value},
                       {"bound_relative_change", change},
                       {"bound_stable", stable}});
  }
  const Vec3& k = frame.k();
  json out{{"frame_k", {k[0], k[1], k[2]}},
           {"sampler",
            {{"angle_nodes", config.angle_nodes},
             {"radius_nodes", config.radius_nodes},
             {"t_max", config.t_max}}},
           {"results", results}};
  if (!ok) throw PropertyFailure(out.dump());
  return out;
}

struct BoundarySpec {
  std::string name;
  GridProblem::Boundary fn;
};

BoundarySpec parse_boundary(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_list(text.substr(colon + 1), "--boundary");
  if (kind == "affine") {
    if (args.size() != 3) throw DomainError("--boundary affine:a,b,c needs three numbers");
    const double a = args[0], b = args[1], c = args[2];
    return {text, [a, b, c](double x, double y) { return a * x + b * y + c; }};
  }
  if (kind == "zero" && args.empty()) return {text, [](double, double) { return 0.0; }};
  if (kind == "scherk" && args.empty()) {
    return {text, [](double x, double y) { return std::log(std::cos(y) / std::cos(x)); }};
  }
  if (kind == "saddle") {
    if (args.size() != 1) throw DomainError("--boundary saddle:c needs one number");
    const double c = args[0];
    return {text, [c](double x, double y) { return c * (x * x - y * y); }};
  }
  throw DomainError("--boundary: unknown kind '" + text + "'");
}

json cmd_solve(double b, int grid, const std::string& domain_text, const std::string& boundary_text,
               double tol, int max_iter, const std::string& out_path) {
  const std::vector<double> d = parse_list(domain_text, "--domain");
  if (d.size() != 4) throw DomainError("--domain needs x0,x1,y0,y1");
  if (grid < 10) throw DomainError("--grid counts nodes per side including the boundary; need >= 10");
  const BoundarySpec boundary = parse_boundary(boundary_text);
  const GridProblem problem({d[0], d[1], d[2], d[3]}, grid - 2, grid - 2, b, boundary.fn);
  const GridSolution sol = solve_minimal_graph(problem, tol, max_iter);
  double max_dev = 0.0;
  const GridField& f = sol.field;
  for (int j = 0; j < f.ny + 2; ++j) {
    for (int i = 0; i < f.nx + 2; ++i) {
      max_dev = std::max(max_dev, std::abs(f.at(i, j) - boundary.fn(f.x(i), f.y(j))));
    }
  }
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw DomainError("cannot open '" + out_path + "' for writing");
    write_grid_csv(file, f, b);
  }
  return json{{"b", b},
              {"grid", grid},
              {"nx", f.nx},
              {"ny", f.ny},
              {"boundary", boundary.name},
              {"iterations", sol.iterations},
              {"residual_norm", sol.residual_norm},
              {"history", sol.history},
              {"planarity_deviation", planarity_deviation(sol)},
              {"max_deviation_from_boundary_function", max_dev},
              {"output", out_path.empty() ? json(nullptr) : json(out_path)},
              {"euclidean_degeneration", b == 0.0}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal surfaces in the Matsumoto space: checks and solvers", "fm"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--no-timestamp", common.no_timestamp, "Omit the timestamp from JSON output");
  app.add_option("--seed", common.seed, "Seed for sampled checks")->capture_default_str();

  std::function<json()> action;
  std::string command;

  // volume
  auto* vol = app.add_subcommand("volume", "Busemann-Hausdorff volume factor f(b)")->fallthrough();
  std::vector<double> vol_b;
  int vol_n = 2, vol_initial = 64, vol_max = 16384;
  std::string vol_family = "matsumoto", vol_branch = "bh";
  vol->add_option("--b", vol_b, "b values (comma-separated)")->required()->delimiter(',');
  vol->add_option("--n", vol_n, "Dimension n >= 2")->capture_default_str();
  vol->add_option("--family", vol_family, "matsumoto | randers | euclidean")->capture_default_str();
  vol->add_option("--branch", vol_branch, "bh | ht")->capture_default_str();
  vol->add_option("--initial-nodes", vol_initial)->capture_default_str();
  vol->add_option("--max-nodes", vol_max)->capture_default_str();
  vol->callback([&] {
    command = "volume";
    action = [&] { return cmd_volume(vol_b, vol_n, vol_family, vol_branch, vol_initial, vol_max); };
  });

  // residual-graph
  auto* rg = app.add_subcommand("residual-graph", "Minimal-graph operator at a point")->fallthrough();
  std::vector<double> rg_b;
  std::string rg_point, rg_frame;
  rg->add_option("--b", rg_b)->required()->delimiter(',');
  rg->add_option("--point", rg_point, "f1=..,f2=..,h11=..,h12=..,h22=..")->required();
  rg->add_option("--frame", rg_frame, "Unit vector k1,k2,k3 (last frame row) for a tilted plane");
  rg->callback([&] {
    command = "residual-graph";
    action = [&] { return cmd_residual_graph(rg_b, rg_point, rg_frame); };
  });

  // residual-translation
  auto* rt = app.add_subcommand("residual-translation", "Translation-surface operator at a point")
                 ->fallthrough();
  std::vector<double> rt_b;
  std::string rt_point;
  rt->add_option("--b", rt_b)->required()->delimiter(',');
  rt->add_option("--point", rt_point, "fp=..,fpp=..,gp=..,gpp=..")->required();
  rt->callback([&] {
    command = "residual-translation";
    action = [&] { return cmd_residual_translation(rt_b, rt_point); };
  });

  // check-derivatives
  auto* cd = app.add_subcommand("check-derivatives", "Closed-form derivatives vs dual numbers and differences")
                 ->fallthrough();
  std::vector<double> cd_b{0.0, 0.2, 0.4};
  int cd_samples = 200;
  cd->add_option("--b", cd_b)->delimiter(',')->capture_default_str();
  cd->add_option("--samples", cd_samples)->capture_default_str();
  cd->callback([&] {
    command = "check-derivatives";
    action = [&] { return cmd_check_derivatives(cd_b, cd_samples, common.seed); };
  });

  // check-translation
  auto* ct = app.add_subcommand("check-translation", "Exact K/L rigidity report")->fallthrough();
  std::vector<std::string> ct_b2{"0"};
  std::vector<std::string> ct_p{"0", "1/2", "1", "2", "5", "10"};
  ct->add_option("--b2", ct_b2, "Exact b^2 values, e.g. 0,1/100,0.09")->delimiter(',')->capture_default_str();
  ct->add_option("--p", ct_p, "Exact p nodes")->delimiter(',')->capture_default_str();
  ct->callback([&] {
    command = "check-translation";
    action = [&] { return cmd_check_translation(ct_b2, ct_p); };
  });

  // ellipticity
  auto* el = app.add_subcommand("ellipticity", "Coefficient lower bound and mean-curvature-type constant")
                 ->fallthrough();
  std::vector<double> el_b{0.3};
  std::string el_frame = "0,0,1";
  int el_samples = 10000;
  BoundSamplerConfig el_cfg;
  el->add_option("--b", el_b)->delimiter(',')->capture_default_str();
  el->add_option("--frame", el_frame, "Unit vector k1,k2,k3")->capture_default_str();
  el->add_option("--samples", el_samples)->capture_default_str();
  el->add_option("--t-max", el_cfg.t_max)->capture_default_str();
  el->add_option("--angle-nodes", el_cfg.angle_nodes)->capture_default_str();
  el->add_option("--radius-nodes", el_cfg.radius_nodes)->capture_default_str();
  el->callback([&] {
    command = "ellipticity";
    action = [&] { return cmd_ellipticity(el_b, el_frame, el_samples, common.seed, el_cfg); };
  });

  // solve
  auto* sv = app.add_subcommand("solve", "Dirichlet problem for the minimal-graph equation")->fallthrough();
  double sv_b = 0.0, sv_tol = 1e-9;
  int sv_grid = 65, sv_iter = 50;
  std::string sv_domain = "-1,1,-1,1", sv_boundary = "scherk", sv_out;
  sv->add_option("--b", sv_b)->capture_default_str();
  sv->add_option("--grid", sv_grid, "Nodes per side, boundary included")->capture_default_str();
  sv->add_option("--domain", sv_domain, "x0,x1,y0,y1")->capture_default_str();
  sv->add_option("--boundary", sv_boundary, "affine:a,b,c | zero | scherk | saddle:c")
      ->capture_default_str();
  sv->add_option("--tol", sv_tol)->capture_default_str();
  sv->add_option("--max-iter", sv_iter)->capture_default_str();
  sv->add_option("--out", sv_out, "Write the solution grid as CSV");
  sv->callback([&] {
    command = "solve";
    action = [&] { return cmd_solve(sv_b, sv_grid, sv_domain, sv_boundary, sv_tol, sv_iter, sv_out); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Name a stray leading token that CLI11 only reports as a missing subcommand.
    for (int i = 1; i < argc; ++i) {
      const std::string tok = argv[i];
      if (tok == "--seed") {
        ++i;
        continue;
      }
      if (tok.rfind("-", 0) == 0) continue;
      if (app.get_subcommand_no_throw(tok) == nullptr) {
        err << "usage error: unknown command '" << tok << "'\n";
        return kValidationError;
      }
      break;
    }
    err << "usage error: " << e.what() << "\n";
    return kValidationError;
  }

  json record{{"command", command}, {"version", kVersion}};
  if (!common.no_timestamp) record["timestamp"] = utc_timestamp();
  int status = kOk;
  try {
    record["seed"] = common.seed;
    record.update(action());
    record["status"] = "ok";
  } catch (const PropertyFailure& e) {
    record.update(json::parse(e.what()));
    record["status"] = "property-check-failed";
    status = kPropertyFailure;
  } catch (const NumericalError& e) {
    record["status"] = "non-convergence";
    record["error"] = e.what();
    record["history"] = e.history();
    status = kNonConvergence;
  } catch (const DomainError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  }
  out << record.dump(2) << "\n";
  return status;
}

}  // namespace fm::cli
