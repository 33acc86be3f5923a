// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fourmode/fourmode.hpp"

using namespace fourmode;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

/// |a - b| relative to the larger entry magnitude, floored at 1.
template <typename A, typename B>
double scaled_diff(const A& a, const B& b) {
  const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

double state_diff(const GaussianState& a, const GaussianState& b) {
  double scale = 1.0, d = 0.0;
  for (int j = 1; j <= kModes; ++j) {
    scale = std::max({scale, std::abs(a.b(j)), std::abs(b.b(j))});
    d = std::max(d, std::abs(a.b(j) - b.b(j)));
  }
  const Complex pa[] = {a.d12, a.d14, a.d23, a.d34, a.dbar13, a.dbar24};
  const Complex pb[] = {b.d12, b.d14, b.d23, b.d34, b.dbar13, b.dbar24};
  for (int k = 0; k < 6; ++k) {
    scale = std::max({scale, std::abs(pa[k]), std::abs(pb[k])});
    d = std::max(d, std::abs(pa[k] - pb[k]));
  }
  return d / scale;
}

GridSpec symmetric_grid() {
  GridSpec spec;
  spec.axes = {Axis::parse(AxisParam::g1t, "0:5.9:0.1"), Axis::parse(AxisParam::g23t, "0:7:0.1")};
  return spec;
}

std::vector<SystemConfig> configs_of(const GridSpec& spec, const SystemConfig& base = {}) {
  std::vector<SystemConfig> out;
  for (std::size_t k = 0; k < spec.size(); ++k) out.push_back(spec.config_at(base, k));
  return out;
}

// Noiseless states over the symmetric grid, shared by several criteria.
const std::vector<SystemConfig>& grid_configs() {
  static const auto cfgs = configs_of(symmetric_grid());
  return cfgs;
}
const std::vector<GaussianState>& grid_states() {
  static const auto states = parallel_map<GaussianState>(grid_configs().size(), default_threads(),
                                                         [](std::size_t k) { return evolve_state(grid_configs()[k]); });
  return states;
}

Outcome ac1() {
  const SweepRow r = evaluate_point(SystemConfig::symmetric(1.0, 0.0));
  const double tau_err = std::abs(r.tau - (1.0 - std::exp(-2.0)) / 2.0);
  const double e_err = std::abs(r.E_pair[0] - 2.0);
  const double r_err = std::abs(r.R[0]);
  const double b_err = std::abs(r.B[0] - std::sinh(1.0) * std::sinh(1.0));
  return {tau_err < 1e-9 && e_err < 1e-8 && r_err < 1e-10 && b_err < 1e-9,
          "|dtau|=" + sci(tau_err) + " |dE12|=" + sci(e_err) + " |R12|=" + sci(r_err) + " |dB1|=" + sci(b_err)};
}

Outcome ac2() {
  const auto& st = grid_states();
  double tau_max = 0.0;
  for (const auto& s : st) tau_max = std::max(tau_max, lee_depth(build_normal_covariance(s)).tau);
  return {tau_max <= 0.5 + 1e-9, "max tau=" + format_double(tau_max) + " over " + std::to_string(st.size()) + " points"};
}

Outcome ac3() {
  double worst = 0.0;
  for (const auto& s : grid_states()) worst = std::max(worst, std::abs(s.B[0] + s.B[3] - s.B[1] - s.B[2]));
  return {worst <= 1e-9, "max |B1+B4-B2-B3|=" + sci(worst)};
}

Outcome ac4() {
  const auto& cfgs = grid_configs();
  const auto& states = grid_states();
  struct Worst {
    double prop = 0, ode = 0, neg = 0;
  };
  const auto per_point = parallel_map<Worst>(cfgs.size(), default_threads(), [&](std::size_t k) {
    Worst w;
    const SystemConfig& cfg = cfgs[k];
    w.prop = scaled_diff(analytic_propagator(cfg).m, numeric_propagator(cfg).m);
    w.ode = state_diff(extract_correlators(evolve_second_moments(cfg)), states[k]);
    for (auto [i, j] : {std::pair{1, 2}, std::pair{3, 4}, std::pair{1, 4}}) {
      const GaussianState& s = states[k];
      const ReducedState red = reduce_modes(s, ModeSet{i, j});
      const double ppt = log_negativity(red.sigma, Bipartition::of(ModeSet{i}, red.sigma.modes)).value;
      const double cf = two_mode_negativity_closed_form(s.b(i), s.b(j), s.pair(i, j));
      w.neg = std::max(w.neg, std::abs(ppt - cf));
    }
    return w;
  });
  Worst w;
  for (const auto& p : per_point) {
    w.prop = std::max(w.prop, p.prop);
    w.ode = std::max(w.ode, p.ode);
    w.neg = std::max(w.neg, p.neg);
  }
  return {w.prop < 1e-8 && w.ode < 1e-8 && w.neg < 1e-8,
          "analytic/expm=" + sci(w.prop) + " ode/propagator=" + sci(w.ode) + " closed-form/PPT=" + sci(w.neg) +
              " (scale-relative for matrices and states)"};
}

Outcome ac5() {
  double worst = 0.0;
  for (const auto& cfg : grid_configs()) worst = std::max(worst, pseudo_unitarity_defect(numeric_propagator(cfg)));
  return {worst < 1e-9, "max ||MKM^dag-K||_max=" + sci(worst)};
}

Outcome ac6() {
  double worst = 0.0;
  for (double g1 : {0.5, 1.0, 2.0}) {
    const Axis g23 = Axis::parse(AxisParam::g23t, "0:7:0.1");
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = 0; k < g23.count(); ++k) {
      const double e = evaluate_point(SystemConfig::symmetric(g1, g23.at(k))).E_bip[3];
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    worst = std::max(worst, hi - lo);
  }
  return {worst < 1e-8, "max spread of E_13x24 over g23t=" + sci(worst)};
}

Outcome ac7() {
  double worst = 0.0;
  for (const auto& s : grid_states()) {
    for (auto [i, j] : {std::pair{1, 3}, std::pair{2, 4}}) {
      const ReducedState red = reduce_modes(s, ModeSet{i, j});
      worst = std::max(worst, log_negativity(red.sigma, Bipartition::of(ModeSet{i}, red.sigma.modes)).value);
    }
  }
  return {worst < 1e-10, "max E_1x3, E_2x4=" + sci(worst)};
}

Outcome ac8() {
  std::size_t checked = 0, disagree = 0;
  for (const auto& s : grid_states()) {
    const double r = noise_reduction_factor(s, 1, 2);
    const double margin = pair_entanglement_margin(s.b(1), s.b(2), s.d12);
    if (std::abs(1.0 - r) <= 1e-9 || std::abs(margin) <= 1e-9) continue;
    ++checked;
    if ((r < 1.0) != (margin > 0.0)) ++disagree;
  }
  return {disagree == 0 && checked > 0,
          std::to_string(checked) + " points checked, " + std::to_string(disagree) + " disagreements"};
}

Outcome ac9() {
  std::vector<GaussianState> states = grid_states();
  for (double g1 : {0.5, 1.0, 5.0}) {
    GridSpec slice;
    slice.axes = {Axis::parse(AxisParam::g2t, "0:7:0.1"), Axis::parse(AxisParam::g3t, "0:7:0.1")};
    SystemConfig base;
    base.g1t = g1;
    const auto cfgs = configs_of(slice, base);
    const auto st = parallel_map<GaussianState>(cfgs.size(), default_threads(),
                                                [&](std::size_t k) { return evolve_state(cfgs[k]); });
    states.insert(states.end(), st.begin(), st.end());
  }
  std::size_t violations = 0;
  for (const auto& s : states)
    for (auto [i, j] : {std::pair{1, 2}, std::pair{3, 4}, std::pair{1, 4}})
      if (noise_reduction_factor(s, i, j) < 1.0 - 1e-9 && !pair_entanglement_test(s.b(i), s.b(j), s.pair(i, j)))
        ++violations;
  return {violations == 0,
          std::to_string(states.size()) + " states x 3 pairs, " + std::to_string(violations) + " ssn-but-separable"};
}

Outcome ac10() {
  std::size_t region_no_ssn = 0, region_ssn = 0;
  for (const auto& s : grid_states()) {
    const double e = two_mode_negativity_closed_form(s.b(1), s.b(4), s.d14);
    const double r = noise_reduction_factor(s, 1, 4);
    if (e > 1e-6 && r > 1.0 + 1e-6) ++region_no_ssn;
    if (e > 1e-6 && r < 1.0 - 1e-6) ++region_ssn;
  }
  const Axis g23 = Axis::parse(AxisParam::g2t, "0:7:0.1");
  const double f_low = phase_diagram_slice(0.5, g23, g23).hidden_fraction();
  const double f_high = phase_diagram_slice(5.0, g23, g23).hidden_fraction();
  return {region_no_ssn > 0 && region_ssn > 0 && f_high > f_low,
          "E_1x4>0 with R>1: " + std::to_string(region_no_ssn) + " pts, with R<1: " + std::to_string(region_ssn) +
              " pts; hidden fraction g1t=0.5: " + sci(f_low) + ", g1t=5: " + sci(f_high)};
}

Outcome ac11() {
  // Uniform damping at g = 0.7.
  std::size_t increases = 0;
  double worst_rise = 0.0;
  const Axis gamma = Axis::parse(AxisParam::gamma_t, "0:3:0.1");
  std::vector<std::vector<double>> e_series;
  for (std::size_t k = 0; k < gamma.count(); ++k) {
    SystemConfig cfg;
    cfg.g1t = cfg.g2t = cfg.g3t = 0.7;
    cfg.gamma_t.fill(gamma.at(k));
    const GaussianState st = evolve_state(cfg);
    const SymmetricCovariance sigma = build_symmetric_covariance(st);
    std::vector<double> es;
    for (const char* b : {"1x234", "2x134", "3x124", "4x123", "12x34", "13x24", "14x23"})
      es.push_back(log_negativity(sigma, Bipartition::parse(b)).value);
    e_series.push_back(es);
  }
  for (std::size_t k = 1; k < e_series.size(); ++k)
    for (std::size_t b = 0; b < e_series[k].size(); ++b) {
      const double rise = e_series[k][b] - e_series[k - 1][b];
      worst_rise = std::max(worst_rise, rise);
      if (rise > 0.0) ++increases;
    }

  // Damping of the down-converted modes only, gamma_1 t = gamma_2 t = g1 t.
  std::size_t tau_violations = 0, sampled = 0;
  GridSpec spec = symmetric_grid();
  spec.damped_modes = ModeSet{1, 2};
  spec.gamma_follows_g1 = true;
  const auto damped = configs_of(spec);
  const auto taus = parallel_map<double>(damped.size(), default_threads(), [&](std::size_t k) {
    return lee_depth(build_normal_covariance(evolve_state(damped[k]))).tau;
  });
  for (std::size_t k = 0; k < damped.size(); ++k) {
    ++sampled;
    const double tau0 = lee_depth(build_normal_covariance(grid_states()[k])).tau;
    if (taus[k] > tau0) ++tau_violations;
  }
  return {increases == 0 && tau_violations == 0,
          "E increases: " + std::to_string(increases) + " (max rise " + sci(worst_rise) + "); tau(damped 12) > tau(0) at " +
              std::to_string(tau_violations) + "/" + std::to_string(sampled) + " points"};
}

Outcome ac12() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    SystemConfig cfg;
    cfg.g1t = u(rng);
    cfg.g2t = u(rng);
    cfg.g3t = u(rng);
    worst = std::max(worst, moment_deviation(fock_moments(fock_evolve(cfg, 10)), evolve_state(cfg)));
  }
  return {worst < 1e-4, "20 configs, max deviation=" + sci(worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 = no runtime limit
  };
  const std::vector<Criterion> criteria = {
      {"AC1  squeezer closed forms", ac1, 1.0},
      {"AC2  tau <= 1/2 on grid", ac2, 30.0},
      {"AC3  photon-number conservation", ac3, 0.0},
      {"AC4  route equivalence", ac4, 0.0},
      {"AC5  pseudo-unitarity", ac5, 0.0},
      {"AC6  E_13x24 independent of g23t", ac6, 0.0},
      {"AC7  no 1-3 / 2-4 entanglement", ac7, 0.0},
      {"AC8  equal-population equivalence", ac8, 0.0},
      {"AC9  sub-shot-noise implies entangled", ac9, 0.0},
      {"AC10 E_1x4/R_1x4 regions and hidden-entanglement trend", ac10, 0.0},
      {"AC11 damping monotonicity", ac11, 0.0},
      {"AC12 Fock oracle agreement", ac12, 120.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over time budget " + format_double(c.budget_s) + " s";
    }
    std::printf("[%s] %-40s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
