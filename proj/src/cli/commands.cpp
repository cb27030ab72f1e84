#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>

#include "CLI11.hpp"
#include "zlab/cli.hpp"
#include "zlab/counterexamples.hpp"
#include "zlab/cutoff.hpp"
#include "zlab/fft.hpp"
#include "zlab/fit.hpp"
#include "zlab/ground_state.hpp"
#include "zlab/blowup.hpp"
#include "zlab/localize.hpp"
#include "zlab/norms.hpp"
#include "zlab/propagators.hpp"
#include "zlab/quadrature.hpp"
#include "zlab/regimes.hpp"
#include "zlab/solver.hpp"
#include "zlab/trajectory_io.hpp"

#ifndef ZLAB_VERSION
#define ZLAB_VERSION "0.0.0"
#endif

namespace zlab::cli {

namespace {

// Mass of the ground state of -Q + Delta Q + Q^3 = 0 in R^2.
constexpr double kTownesMass = 11.700896;

struct Output {
  Table table;
  std::optional<Plot> plot;
  std::vector<Check> checks;
  Json measured = Json::object();
};

const Json& param(const ExperimentConfig& c, const char* key) {
  const auto it = c.parameters.find(key);
  if (it == c.parameters.end() || it->is_null()) throw UsageError(std::string("missing required key: ") + key);
  return *it;
}

double pd(const ExperimentConfig& c, const char* key) { return param(c, key).get<double>(); }
int pi(const ExperimentConfig& c, const char* key) { return param(c, key).get<int>(); }
bool pb(const ExperimentConfig& c, const char* key) { return param(c, key).get<bool>(); }
std::string ps(const ExperimentConfig& c, const char* key) {
  const Json& v = param(c, key);
  if (!v.is_string()) throw UsageError(std::string("key ") + key + ": expected string");
  return v.get<std::string>();
}
std::vector<double> pv(const ExperimentConfig& c, const char* key) { return param(c, key).get<std::vector<double>>(); }

std::optional<double> opt_number(const ExperimentConfig& c, const char* key) {
  const auto it = c.parameters.find(key);
  if (it == c.parameters.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw UsageError(std::string("key ") + key + ": expected number");
  return it->get<double>();
}

int positive_int(const ExperimentConfig& c, const char* key) {
  const int v = pi(c, key);
  if (v < 1) throw UsageError(std::string("key ") + key + " must be >= 1");
  return v;
}

Check upper(const std::string& name, double value, double tol) { return {name, value, tol, value <= tol}; }

std::vector<double> dyadic_range(double lo, double hi) {
  if (!(lo > 0) || !(hi >= lo)) throw UsageError("need 0 < nMin <= nMax");
  std::vector<double> out;
  for (double N = lo; N <= hi * (1 + 1e-12); N *= 2) out.push_back(N);
  return out;
}

Plot loglog(const std::string& title, const std::string& xl, const std::string& yl, Series s) {
  Plot p;
  p.title = title;
  p.xlabel = xl;
  p.ylabel = yl;
  p.logx = p.logy = true;
  p.series.push_back(std::move(s));
  return p;
}

// ---- frequency toolkit ----

Output psi_check(const ExperimentConfig& c) {
  Output o;
  o.table.columns = {"partition", "A", "samples", "max_deviation"};
  const int samples = positive_int(c, "samples");
  const int top = pi(c, "topExponent");
  if (top < 1 || top > 40) throw UsageError("topExponent must lie in [1, 40]");
  Rng rng(c.seed);
  const double R = std::ldexp(1.0, top);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double r = rng.uniform(-R, R);
    double acc = 0.0;
    for (int n = 0; n <= top; ++n) acc += psi_N(std::ldexp(1.0, n), r);
    worst = std::max(worst, std::fabs(acc - 1.0));
  }
  o.table.add({"radial", "", std::to_string(samples), num(worst)});
  o.checks.push_back(upper("radial_partition", worst, 1e-12));
  const int na = positive_int(c, "angularSamples");
  for (double Ad : pv(c, "angularA")) {
    const int A = static_cast<int>(Ad);
    if (A != Ad || !is_dyadic(A)) throw UsageError("angularA entries must be dyadic integers");
    double w = 0.0;
    for (int m = 0; m < na; ++m) {
      const double th = -kPi + 2.0 * kPi * (m + rng.uniform()) / na;
      double acc = 0.0;
      for (int j = 0; j < A; ++j) acc += beta_A_j(A, j, th);
      w = std::max(w, std::fabs(acc - 1.0));
    }
    o.table.add({"angular", std::to_string(A), std::to_string(na), num(w)});
    o.checks.push_back(upper("angular_partition_A" + std::to_string(A), w, 1e-12));
  }
  return o;
}

// ---- norms ----

double parse_p(const Json& v) {
  if (v.is_number()) return v.get<double>();
  const std::string s = v.get<std::string>();
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw UsageError("p must be 1, 2 or inf");
  }
}

Output norm_cmd(const ExperimentConfig& c) {
  Output o;
  const SpaceTimeGrid g(FrequencyGrid(pd(c, "mBox"), pi(c, "n")), pd(c, "tWindow"), pi(c, "nT"));
  const Flavor f = parse_flavor(ps(c, "flavor"));
  const double N = pd(c, "N"), L = pd(c, "L");
  SpaceTimeField w(g);
  Rng rng(c.seed);
  for (auto& z : w.values) {
    const double re = rng.normal();
    z = cplx(re, rng.normal());
  }
  w = project_modulation(project_dyadic(w, N), L, f);
  const auto bt = block_table(w, f);
  const double p = parse_p(param(c, "p"));
  const double value = bourgain_norm(bt, pd(c, "sigma"), pd(c, "b"), p);
  o.table.columns = {"N", "L", "mass_sq"};
  for (std::size_t i = 0; i < bt.N.size(); ++i)
    for (std::size_t k = 0; k < bt.L.size(); ++k)
      o.table.add({num(bt.N[i]), num(bt.L[k]), num(bt.at(i, k))});
  o.measured["norm"] = value;
  o.measured["l2"] = l2_norm(w);
  o.checks.push_back({"norm_finite", value, 0.0, std::isfinite(value)});
  return o;
}

// ---- estimates ----

struct EstimatePoint {
  bool bilinear = true;
  BilinearCase bc = BilinearCase::SchSch;
  Regime rg = Regime::TransLowMod;
  TileSpec t;
};

// Two admissible parameter points per estimate.
EstimatePoint builtin_point(const std::string& name, int point) {
  if (point != 1 && point != 2) throw UsageError("point must be 1 or 2");
  EstimatePoint e;
  TileSpec& t = e.t;
  const bool p1 = point == 1;
  auto sectors = [&t](int A, int j1, int j2) {
    t.A = A;
    t.j1 = j1;
    t.j2 = j2;
  };
  if (name == "SchSch" || name == "WaveSchCube" || name == "WaveSchAnnulus") {
    e.bc = parse_bilinear_case(name);
    if (e.bc == BilinearCase::SchSch) {
      if (p1) {
        t.N1 = t.N2 = 4;
      } else {
        t.N1 = 2;
        t.N2 = 8;
        t.L2 = 2;
      }
    } else if (e.bc == BilinearCase::WaveSchCube) {
      t.N1 = 16;
      t.cube_side = p1 ? 1.0 : 4.0;
      t.cube_center = {8.0, 0.0};
    } else {
      t.N = p1 ? 4 : 8;
      t.N1 = 16;
    }
    return e;
  }
  e.bilinear = false;
  e.rg = parse_regime(name);
  switch (e.rg) {
    case Regime::TransLowMod:
      if (p1) {
        t.N = t.N1 = t.N2 = 256;
        sectors(64, 0, 16);
      } else {
        t.N = 256;
        t.N1 = t.N2 = 512;
        sectors(128, 3, 27);
        t.L = 2;
        t.L1 = 4;
      }
      break;
    case Regime::TransHighMod:
      if (p1) {
        t.N = t.N1 = t.N2 = 256;
        sectors(64, 0, 16);
        t.L = 64;
      } else {
        t.N = t.N1 = t.N2 = 128;
        sectors(128, 0, 24);
        t.L1 = 16;
      }
      break;
    case Regime::ParallelHH:
      if (p1) {
        t.N = 16;
        t.N1 = t.N2 = 64;
        sectors(64, 0, 4);
      } else {
        t.N = 32;
        t.N1 = t.N2 = 128;
        sectors(64, 0, 8);
        t.L = t.L2 = 2;
      }
      break;
    case Regime::HighLow:
      t.N = 32;
      if (p1) {
        t.N1 = 2;
        t.N2 = 32;
        t.L = 2048;
      } else {
        t.N1 = 32;
        t.N2 = 2;
        t.L = 512;
      }
      break;
    case Regime::SmallWave:
      t.N = p1 ? 1 : 2;
      t.N1 = t.N2 = p1 ? 8 : 16;
      break;
  }
  return e;
}

Output estimate_sweep(const ExperimentConfig& c) {
  Output o;
  EstimatePoint e = builtin_point(ps(c, "estimate"), pi(c, "point"));
  TileSpec& t = e.t;
  for (auto [key, slot] : {std::pair{"N", &t.N}, {"N1", &t.N1}, {"N2", &t.N2}, {"L", &t.L}, {"L1", &t.L1}, {"L2", &t.L2}})
    if (auto v = opt_number(c, key)) *slot = *v;
  for (auto [key, slot] : {std::pair{"A", &t.A}, {"j1", &t.j1}, {"j2", &t.j2}})
    if (auto v = opt_number(c, key)) *slot = static_cast<int>(*v);
  if (auto v = opt_number(c, "sign")) t.sign = static_cast<int>(*v);
  if (auto v = opt_number(c, "d")) t.cube_side = *v;
  if (auto v = opt_number(c, "cubeX")) t.cube_center[0] = *v;
  if (auto v = opt_number(c, "cubeY")) t.cube_center[1] = *v;
  const int level = positive_int(c, "level");
  const bool refine = pb(c, "refine");
  auto eval = [&](std::uint64_t s, int lv) {
    return e.bilinear ? check_bilinear_strichartz(t, e.bc, {s}, lv) : check_regime(t, e.rg, {s}, lv);
  };
  o.table.columns = {"seed", "ratio"};
  if (refine) o.table.columns.push_back("ratio_refined");
  double m1 = 0.0, m2 = 0.0;
  bool finite = true;
  SweepResult first;
  for (std::uint64_t s : seed_list(c.seed, positive_int(c, "seeds"))) {
    const SweepResult r = eval(s, level);
    if (first.parameters.empty()) first = r;
    std::vector<std::string> row{std::to_string(s), num(r.maxRatio)};
    finite = finite && std::isfinite(r.maxRatio);
    m1 = std::max(m1, r.maxRatio);
    if (refine) {
      const double r2 = eval(s, 2 * level).maxRatio;
      finite = finite && std::isfinite(r2);
      m2 = std::max(m2, r2);
      row.push_back(num(r2));
    }
    o.table.add(std::move(row));
  }
  Json params = Json::object();
  for (const auto& [k, v] : first.parameters) params[k] = v;
  o.measured["estimate"] = ps(c, "estimate");
  o.measured["parameters"] = params;
  o.measured["rhs"] = e.bilinear ? bilinear_rhs(t, e.bc) : regime_rhs(t, e.rg);
  o.measured["maxRatio"] = m1;
  o.checks.push_back({"max_ratio_finite", m1, 0.0, finite && m1 > 0.0});
  if (refine) {
    o.measured["maxRatioRefined"] = m2;
    const double f = m1 > 0 && m2 > 0 ? std::max(m1 / m2, m2 / m1) : INFINITY;
    o.checks.push_back(upper("refinement_factor", f, 2.0));
  }
  return o;
}

Output trilinear_sweep(const ExperimentConfig& c) {
  Output o;
  const TrilinearGrid g{pi(c, "n"), pi(c, "nT")};
  const TrilinearGrid fine{2 * g.n, 2 * g.n_t};
  const bool refine = pb(c, "refine"), conj = pb(c, "conjugate");
  o.table.columns = {"seed", "ratio"};
  if (refine) o.table.columns.push_back("ratio_refined");
  if (conj) o.table.columns.push_back("ratio_conjugate");
  if (conj && refine) o.table.columns.push_back("ratio_conjugate_refined");
  std::map<std::string, double> mx;
  bool finite = true;
  for (std::uint64_t s : seed_list(c.seed, positive_int(c, "seeds"))) {
    std::vector<std::string> row{std::to_string(s)};
    auto put = [&](const std::string& key, const TrilinearGrid& gr, bool cj) {
      const double r = check_trilinear_full({s}, gr, cj).maxRatio;
      finite = finite && std::isfinite(r);
      mx[key] = std::max(mx[key], r);
      row.push_back(num(r));
    };
    put("ratio", g, false);
    if (refine) put("ratio_refined", fine, false);
    if (conj) put("ratio_conjugate", g, true);
    if (conj && refine) put("ratio_conjugate_refined", fine, true);
    o.table.add(std::move(row));
  }
  for (const auto& [k, v] : mx) o.measured["max_" + k] = v;
  o.checks.push_back({"max_ratio_finite", mx["ratio"], 0.0, finite && mx["ratio"] > 0.0});
  auto factor = [](double a, double b) { return a > 0 && b > 0 ? std::max(a / b, b / a) : INFINITY; };
  if (refine) o.checks.push_back(upper("refinement_factor", factor(mx["ratio"], mx["ratio_refined"]), 2.0));
  if (conj && refine)
    o.checks.push_back(
        upper("conjugate_refinement_factor", factor(mx["ratio_conjugate"], mx["ratio_conjugate_refined"]), 2.0));
  return o;
}

// ---- sharpness ----

void slope_output(Output& o, const std::vector<std::pair<double, double>>& pts, double predicted,
                  const std::string& title) {
  const ExponentFit fit = fit_exponent(pts);
  o.measured["fittedSlope"] = fit.slope;
  o.measured["predictedExponent"] = predicted;
  o.measured["fitResidual"] = fit.residual;
  // Lower-bound protocol: the ratio must grow at least at the predicted rate.
  o.checks.push_back({"slope_at_least_predicted", fit.slope - predicted, -0.15, fit.slope >= predicted - 0.15});
  Series s{"ratio", {}, {}};
  for (const auto& [x, y] : pts) {
    s.x.push_back(x);
    s.y.push_back(y);
  }
  o.plot = loglog(title, "N", "ratio", std::move(s));
}

Output counterexample(const ExperimentConfig& c) {
  Output o;
  const std::string lemma = ps(c, "lemma");
  if (lemma != "c1" && lemma != "c2") throw UsageError("lemma must be c1 or c2");
  CounterexampleParams p;
  p.sigma = pd(c, "sigma");
  p.k = pd(c, "k");
  p.ell = pd(c, "ell");
  p.b_prime = pd(c, "bPrime");
  p.b1 = pd(c, "b1");
  p.b2 = pd(c, "b2");
  p.q = positive_int(c, "q");
  p.panels = positive_int(c, "panels");
  o.table.columns = {"N", "ratio"};
  std::vector<std::pair<double, double>> pts;
  for (double N : dyadic_range(pd(c, "nMin"), pd(c, "nMax"))) {
    p.N = N;
    const double r = lemma == "c1" ? counterexample_c1(p) : counterexample_c2(p);
    pts.push_back({N, r});
    o.table.add({num(N), num(r)});
  }
  const double pred = lemma == "c1" ? predicted_exponent_c1(p) : predicted_exponent_c2(p);
  slope_output(o, pts, pred, "counterexample " + lemma);
  return o;
}

Output duhamel_lb(const ExperimentConfig& c) {
  Output o;
  const int prop = pi(c, "prop");
  if (prop != 1 && prop != 2) throw UsageError("prop must be 1 or 2");
  const double k = pd(c, "k"), ell = pd(c, "ell"), T = pd(c, "T");
  const double t = pd(c, "tFraction") * T;
  const int q = positive_int(c, "q");
  o.table.columns = {"N", "raw", "normalized"};
  std::vector<std::pair<double, double>> pts;
  double lowest = INFINITY;
  for (double N : dyadic_range(pd(c, "nMin"), pd(c, "nMax"))) {
    const auto r = prop == 1 ? duhamel_lower_bound_1(N, T, k, ell, t, q) : duhamel_lower_bound_2(N, T, k, ell, t, q);
    pts.push_back({N, r.raw});
    lowest = std::min(lowest, r.normalized);
    o.table.add({num(N), num(r.raw), num(r.normalized)});
  }
  const double pred = prop == 1 ? -ell - 0.5 : ell - 2 * k + 0.5;
  o.measured["minNormalized"] = lowest;
  slope_output(o, pts, pred, "Duhamel lower bound " + std::to_string(prop));
  return o;
}

Output localize_check(const ExperimentConfig& c) {
  Output o;
  const auto r = localize_map(pd(c, "N1"), pi(c, "A"), pd(c, "kOffset"), pd(c, "mesh"));
  o.table.columns = {"j", "k"};
  for (std::size_t i = 0; i < r.k_of_j.size(); ++i)
    o.table.add({std::to_string(r.j_min + static_cast<long long>(i)), std::to_string(r.k_of_j[i])});
  o.measured["pairsChecked"] = r.pairs_checked;
  o.measured["worstOffset"] = r.worst_offset;
  o.checks.push_back(upper("containment_violations", static_cast<double>(r.containment_violations), 0.0));
  o.checks.push_back(upper("max_multiplicity", static_cast<double>(r.max_multiplicity), 100.0));
  return o;
}

// ---- solver ----

SpatialField sample(const FrequencyGrid& g, const std::function<cplx(double, double)>& f) {
  std::vector<cplx> p(g.size());
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) p[g.index(j1, j2)] = f(g.x(j1), g.x(j2));
  return from_physical(g, std::move(p));
}

SpatialField gaussian_u(const FrequencyGrid& g, double amp) {
  return sample(g, [amp](double x, double y) { return amp * std::exp(-(x * x + y * y) / 4.5) * cplx(1.0, 0.3 * x); });
}

SpatialField gaussian_n(const FrequencyGrid& g, double amp) {
  return sample(g, [amp](double x, double y) { return cplx(amp * std::exp(-((x - 1) * (x - 1) + y * y) / 2.0), 0.0); });
}

SolverConfig solver_config(const ExperimentConfig& c, int snapshot_every) {
  SolverConfig s;
  s.grid = FrequencyGrid(pd(c, "mBox"), pi(c, "n"));
  s.dt = pd(c, "dt");
  s.snapshot_every = snapshot_every;
  return s;
}

void diagnostics_output(Output& o, const Trajectory& tr, double tol, const std::string& title) {
  o.table.columns = {"t", "mass", "Hm12_n", "Hm32_dtn"};
  const double m0 = tr.diagnostics.front().mass;
  double drift = 0.0;
  Series s{"mass drift", {}, {}};
  for (const auto& d : tr.diagnostics) {
    o.table.add({num(d.t), num(d.mass), num(d.hm12_n), num(d.hm32_dtn)});
    drift = std::max(drift, std::fabs(d.mass - m0) / m0);
    s.x.push_back(d.t);
    s.y.push_back(d.mass);
  }
  o.measured["initialMass"] = m0;
  o.measured["aborted"] = tr.aborted;
  if (tr.aborted) o.measured["abortReason"] = tr.abort_reason;
  o.checks.push_back(upper("mass_drift", drift, tol));
  Plot p;
  p.title = title;
  p.xlabel = "t";
  p.ylabel = "mass";
  p.series.push_back(std::move(s));
  o.plot = std::move(p);
}

Output solve_cmd(const ExperimentConfig& c, const std::filesystem::path& dir, std::vector<std::string>& files) {
  Output o;
  SolverConfig s = solver_config(c, positive_int(c, "snapshotEvery"));
  s.wave_speed = pd(c, "waveSpeed");
  s.dealias = pb(c, "dealias");
  const std::string integ = ps(c, "integrator");
  if (integ == "strang")
    s.integrator = Integrator::StrangSplit;
  else if (integ == "rk4")
    s.integrator = Integrator::InteractionRK4;
  else
    throw UsageError("integrator must be strang or rk4");
  const auto& g = s.grid;
  const auto tr = solve_speed(s, gaussian_u(g, pd(c, "uAmp")), gaussian_n(g, pd(c, "nAmp")),
                              gaussian_n(g, pd(c, "n1Amp")), pd(c, "T"));
  diagnostics_output(o, tr, pd(c, "massTolerance"), "Zakharov mass");
  if (pb(c, "writeTrajectory")) {
    const auto path = (dir / "solve.trj").string();
    write_trajectory(path, tr);
    files.push_back(path);
  }
  return o;
}

Output nls_cmd(const ExperimentConfig& c) {
  Output o;
  const SolverConfig s = solver_config(c, positive_int(c, "snapshotEvery"));
  const auto tr = solve_nls(s, gaussian_u(s.grid, pd(c, "uAmp")), pd(c, "T"));
  diagnostics_output(o, tr, pd(c, "massTolerance"), "NLS mass");
  return o;
}

Output subsonic(const ExperimentConfig& c) {
  Output o;
  SolverConfig s = solver_config(c, 1 << 30);
  const double T = pd(c, "T");
  const auto u0 = gaussian_u(s.grid, pd(c, "uAmp"));
  auto p = to_physical(u0);
  for (auto& z : p) z = -std::norm(z);
  const auto n0 = from_physical(s.grid, std::move(p));
  const SpatialField n1(s.grid);
  const auto ref = solve_nls(s, u0, T).snapshots.back().u;
  o.table.columns = {"lambda", "distance"};
  Series ser{"distance", {}, {}};
  double prev = INFINITY, worst = 0.0;
  for (double lam : pv(c, "speeds")) {
    s.wave_speed = lam;
    const double e = l2_norm(solve_speed(s, u0, n0, n1, T).snapshots.back().u - ref);
    o.table.add({num(lam), num(e)});
    if (std::isfinite(prev)) worst = std::max(worst, e / prev);
    prev = e;
    ser.x.push_back(lam);
    ser.y.push_back(e);
  }
  o.checks.push_back({"strictly_decreasing", worst, 1.0, worst < 1.0});
  o.plot = loglog("distance to NLS", "lambda", "L2 distance", std::move(ser));
  return o;
}

Output ground_state_cmd(const ExperimentConfig& c) {
  Output o;
  const double tol = pd(c, "tol");
  const auto gs = ground_state(FrequencyGrid(pd(c, "mBox"), pi(c, "n")), tol, positive_int(c, "maxIter"));
  const double mass = std::pow(l2_norm(gs.Q), 2);
  o.table.columns = {"iterations", "fixed_point_residual", "pde_residual", "stabilizing_factor", "mass"};
  o.table.add({std::to_string(gs.iterations), num(gs.fixed_point_residual), num(gs.pde_residual),
               num(gs.stabilizing_factor), num(mass)});
  o.measured["mass"] = mass;
  o.measured["referenceMass"] = kTownesMass;
  o.checks.push_back(upper("fixed_point_residual", gs.fixed_point_residual, tol));
  o.checks.push_back(upper("mass_relative_error", std::fabs(mass - kTownesMass) / kTownesMass, pd(c, "massTolerance")));
  return o;
}

Output blowup_trace(const ExperimentConfig& c) {
  Output o;
  const FrequencyGrid g(pd(c, "mBox"), pi(c, "n"));
  const double omega = pd(c, "omega"), T = pd(c, "T");
  const std::string profile = ps(c, "profile");
  AnsatzSpec spec;
  if (profile == "ground-state")
    spec = ansatz_from_ground_state(ground_state(g, 1e-10).Q, omega, pd(c, "theta"), T);
  else if (profile == "gaussian")
    spec = gaussian_ansatz(g, omega, pd(c, "theta"), T);
  else
    throw UsageError("profile must be ground-state or gaussian");
  const int pts = pi(c, "points");
  const double s0 = pd(c, "sMin"), s1 = pd(c, "sMax");
  if (pts < 3 || !(s0 > 0) || !(s1 > s0)) throw UsageError("need points >= 3 and 0 < sMin < sMax");
  std::vector<double> times;
  for (int i = 0; i < pts; ++i) times.push_back(T - omega * s0 * std::pow(s1 / s0, double(i) / (pts - 1)));
  const auto rows = blowup_norm_trace(spec, times);
  o.table.columns = {"t", "s", "Hm12_n", "Hdotm12_n", "Hm32_dtn", "L2_u"};
  std::vector<std::pair<double, double>> fit_pts;
  double l2_dev = 0.0;
  Series ser{"Hdot^-1/2 norm of n", {}, {}};
  for (const auto& r : rows) {
    o.table.add({num(r.t), num(r.s), num(r.hm12_n), num(r.hdot_m12_n), num(r.hm32_dtn), num(r.l2_u)});
    fit_pts.push_back({T - r.t, r.hdot_m12_n});
    l2_dev = std::max(l2_dev, std::fabs(r.l2_u - rows.front().l2_u) / rows.front().l2_u);
    ser.x.push_back(T - r.t);
    ser.y.push_back(r.hdot_m12_n);
  }
  const double slope = fit_exponent(fit_pts).slope;
  o.measured["fittedSlope"] = slope;
  o.checks.push_back({"rate_slope", slope, 0.05, std::fabs(slope + 0.5) <= 0.05});
  o.checks.push_back(upper("l2_constant", l2_dev, 1e-6));
  o.plot = loglog("blow-up trace", "T - t", "norm", std::move(ser));
  return o;
}

Output lifespan(const ExperimentConfig& c) {
  Output o;
  const double r = pd(c, "r"), c0 = pd(c, "c0");
  const auto Rs = pv(c, "R");
  if (Rs.size() < 2) throw UsageError("R needs at least two values");
  o.table.columns = {"R", "T"};
  Series ser{"lifespan", {}, {}};
  for (double R : Rs) {
    const double T = lifespan_bound(R, r, c0);
    o.table.add({num(R), num(T)});
    ser.x.push_back(R);
    ser.y.push_back(T);
  }
  const std::size_t n = Rs.size();
  const double tail = std::log(ser.y[n - 1] / ser.y[n - 2]) / std::log(ser.x[n - 1] / ser.x[n - 2]);
  o.measured["tailSlope"] = tail;
  o.checks.push_back({"tail_slope", tail, 1e-3, std::fabs(tail + 2.0) <= 1e-3});
  const double unit = lifespan_bound(1.0, 1.0, 1.0);
  o.checks.push_back({"unit_value", unit, 0.0, unit == 0.5});
  o.plot = loglog("lifespan bound", "R", "T", std::move(ser));
  return o;
}

Output dispatch(const ExperimentConfig& c, const std::filesystem::path& dir, std::vector<std::string>& files) {
  const std::string& k = c.command;
  if (k == "psi-check") return psi_check(c);
  if (k == "norm") return norm_cmd(c);
  if (k == "estimate-sweep") return estimate_sweep(c);
  if (k == "trilinear-sweep") return trilinear_sweep(c);
  if (k == "counterexample") return counterexample(c);
  if (k == "duhamel-lb") return duhamel_lb(c);
  if (k == "localize-check") return localize_check(c);
  if (k == "solve") return solve_cmd(c, dir, files);
  if (k == "nls") return nls_cmd(c);
  if (k == "subsonic") return subsonic(c);
  if (k == "ground-state") return ground_state_cmd(c);
  if (k == "blowup-trace") return blowup_trace(c);
  if (k == "lifespan") return lifespan(c);
  throw UsageError("unknown command: " + k);
}

}  // namespace

int run(const ExperimentConfig& c, std::ostream& log) {
  namespace fs = std::filesystem;
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.command = c.command;
  m.config = config_to_json(c);
  m.version = ZLAB_VERSION;
  m.seed = c.seed;
  const fs::path dir(c.outputDir);
  int code = 0;
  try {
    Output o = dispatch(c, dir, m.files);
    const std::string data = (dir / (c.command + (c.format == "json" ? ".json" : ".csv"))).string();
    if (c.format == "json")
      write_atomic(data, table_to_json(o.table).dump(2) + "\n");
    else
      emit_csv(data, o.table);
    m.files.push_back(data);
    if (o.plot) {
      const std::string svg = (dir / (c.command + ".svg")).string();
      emit_svg(svg, *o.plot);
      m.files.push_back(svg);
    }
    m.checks = std::move(o.checks);
    m.measured = std::move(o.measured);
    for (const auto& ch : m.checks)
      if (!ch.pass) code = 1;
  } catch (const UsageError& e) {
    m.error = e.what();
    code = 2;
  } catch (const std::invalid_argument& e) {
    m.error = e.what();
    code = 2;
  } catch (const std::exception& e) {
    m.error = e.what();
    code = 1;
  }
  m.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string manifest = (dir / (c.command + ".manifest.json")).string();
  try {
    emit_manifest(manifest, m);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return code == 0 ? 1 : code;
  }
  for (const auto& ch : m.checks)
    log << (ch.pass ? "PASS " : "FAIL ") << ch.name << " value=" << ch.value << " tolerance=" << ch.tolerance << "\n";
  if (!m.error.empty()) log << "error: " << m.error << "\n";
  log << "manifest: " << manifest << "\n";
  return code;
}

namespace {

// Splits `--key value`, `--key=value` and bare `--flag` tokens.
std::vector<std::pair<std::string, std::string>> command_flags(const std::vector<std::string>& rest) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const std::string& a = rest[i];
    if (a.size() < 3 || a.compare(0, 2, "--") != 0) throw UsageError("unexpected argument: " + a);
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      out.push_back({a.substr(2, eq - 2), a.substr(eq + 1)});
    } else if (i + 1 < rest.size() && rest[i + 1].compare(0, 2, "--") != 0) {
      out.push_back({a.substr(2), rest[i + 1]});
      ++i;
    } else {
      out.push_back({a.substr(2), "true"});
    }
  }
  return out;
}

std::string usage() {
  std::string s = "usage: zlab <command> [--config path] [--seed u64] [--out dir] [--format csv|json] [--key value ...]\n"
                  "commands:";
  for (const auto& n : command_names()) s += " " + n;
  return s + "\n";
}

}  // namespace

int main_entry(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << usage();
    return 2;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h") {
    std::cout << usage();
    return 0;
  }
  if (command == "--version") {
    std::cout << ZLAB_VERSION << "\n";
    return 0;
  }
  CLI::App app{"zlab " + command};
  app.allow_extras();
  std::string config_path, out, format;
  std::uint64_t seed = 0;
  auto* o_config = app.add_option("--config", config_path);
  auto* o_seed = app.add_option("--seed", seed);
  auto* o_out = app.add_option("--out", out);
  auto* o_format = app.add_option("--format", format);
  try {
    app.parse(argc - 1, argv + 1);
    const bool known =
        std::find(command_names().begin(), command_names().end(), command) != command_names().end();
    if (!known) throw UsageError("unknown command: " + command);
    const auto cfg = parse_config(command, *o_config ? std::optional(config_path) : std::nullopt,
                                  command_flags(app.remaining()), *o_seed ? std::optional(seed) : std::nullopt,
                                  *o_out ? std::optional(out) : std::nullopt,
                                  *o_format ? std::optional(format) : std::nullopt);
    return run(cfg, std::cout);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << usage();
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace zlab::cli
