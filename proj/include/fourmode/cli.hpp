#pragma once

// Command-line front end: evolve, sweep, phase, contour, oracle-check.
// Exit status 0 on success, 1 on usage errors, 2 on numerical failures.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fourmode/config.hpp"
#include "fourmode/contour.hpp"
#include "fourmode/correlations.hpp"
#include "fourmode/entanglement.hpp"
#include "fourmode/error.hpp"
#include "fourmode/fock_oracle.hpp"
#include "fourmode/moments.hpp"
#include "fourmode/nonclassicality.hpp"
#include "fourmode/sweep.hpp"

namespace fourmode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

namespace detail {

struct CommonOptions {
  std::string config_path;
  std::optional<double> gamma_t;
  std::optional<double> n_d;
  std::optional<int> steps;
  std::string log_base;
};

inline void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "JSON run configuration (keys g1t g2t g3t gamma_t n_d steps log_base)");
  sub->add_option("--n-d", o.n_d, "Uniform reservoir occupation n_d for all modes");
  sub->add_option("--steps", o.steps, "RK4 steps for damped evolution");
  sub->add_option("--log-base", o.log_base, "Negativity logarithm: natural or two");
}

inline RunConfigFile base_config(const CommonOptions& o) {
  RunConfigFile rc = o.config_path.empty() ? RunConfigFile{} : load_run_config(o.config_path);
  if (o.gamma_t) rc.system.gamma_t.fill(*o.gamma_t);
  if (o.n_d) rc.system.n_d.fill(*o.n_d);
  if (o.steps) rc.system.steps = *o.steps;
  if (!o.log_base.empty()) rc.log_base = parse_log_base(o.log_base);
  return rc;
}

/// Output stream: the file named by `path`, or `fallback` when empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorKind::invalid_config, "cannot write '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

struct RangeOptions {
  std::string g1t, g2t, g3t, g23t, gamma_t;
};

inline void add_ranges(CLI::App* sub, RangeOptions& r) {
  sub->add_option("--g1t", r.g1t, "g1 t: value or start:stop:step");
  sub->add_option("--g2t", r.g2t, "g2 t: value or start:stop:step");
  sub->add_option("--g3t", r.g3t, "g3 t: value or start:stop:step");
  sub->add_option("--g23t", r.g23t, "g2 t = g3 t: value or start:stop:step");
  sub->add_option("--gamma-t", r.gamma_t, "gamma t on damped modes: value or start:stop:step");
}

/// Range flags become axes; single values are fixed into `base`.
inline GridSpec grid_from_ranges(const RangeOptions& r, SystemConfig& base, ModeSet damped) {
  GridSpec spec;
  spec.damped_modes = damped;
  auto take = [&](const std::string& text, AxisParam p) {
    if (text.empty()) return;
    const Axis ax = Axis::parse(p, text);
    if (text.find(':') != std::string::npos) {
      spec.axes.push_back(ax);
      return;
    }
    switch (p) {
      case AxisParam::g1t: base.g1t = ax.start; break;
      case AxisParam::g2t: base.g2t = ax.start; break;
      case AxisParam::g3t: base.g3t = ax.start; break;
      case AxisParam::g23t: base.g2t = base.g3t = ax.start; break;
      case AxisParam::gamma_t:
        for (int m : damped.modes()) base.gamma_t[static_cast<std::size_t>(m - 1)] = ax.start;
        break;
    }
  };
  take(r.g1t, AxisParam::g1t);
  take(r.g2t, AxisParam::g2t);
  take(r.g3t, AxisParam::g3t);
  take(r.g23t, AxisParam::g23t);
  take(r.gamma_t, AxisParam::gamma_t);
  return spec;
}

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline void write_report_text(std::ostream& os, const RunConfigFile& rc, const GaussianState& st, double tau,
                              const std::vector<std::pair<std::string, double>>& negs,
                              const std::vector<std::pair<std::string, double>>& rs,
                              const std::vector<std::pair<std::string, PairClassification>>& cls) {
  const SystemConfig& c = rc.system;
  auto f = format_double;
  auto z = [&](Complex v) { return "[" + f(v.real()) + ", " + f(v.imag()) + "]"; };
  os << "# fourmode " << kVersion << '\n';
  os << "config:\n";
  os << "  g1t: " << f(c.g1t) << "\n  g2t: " << f(c.g2t) << "\n  g3t: " << f(c.g3t) << '\n';
  os << "  gamma_t: [" << f(c.gamma_t[0]) << ", " << f(c.gamma_t[1]) << ", " << f(c.gamma_t[2]) << ", "
     << f(c.gamma_t[3]) << "]\n";
  os << "  n_d: [" << f(c.n_d[0]) << ", " << f(c.n_d[1]) << ", " << f(c.n_d[2]) << ", " << f(c.n_d[3]) << "]\n";
  os << "  steps: " << c.steps << "\n  log_base: " << to_string(rc.log_base) << '\n';
  os << "state:\n";
  for (int j = 1; j <= kModes; ++j) os << "  B" << j << ": " << f(st.b(j)) << '\n';
  os << "  D12: " << z(st.d12) << "\n  D14: " << z(st.d14) << "\n  D23: " << z(st.d23) << "\n  D34: " << z(st.d34)
     << "\n  Dbar13: " << z(st.dbar13) << "\n  Dbar24: " << z(st.dbar24) << '\n';
  os << "tau: " << f(tau) << '\n';
  os << "negativity:\n";
  for (const auto& [k, v] : negs) os << "  E_" << k << ": " << f(v) << '\n';
  os << "noise_reduction:\n";
  for (const auto& [k, v] : rs) os << "  R_" << k << ": " << f(v) << '\n';
  os << "classification:\n";
  for (const auto& [k, v] : cls)
    os << "  class_" << k << ": " << to_string(v.label) << (v.boundary ? " (boundary)" : "") << '\n';
}

inline int run_evolve(const RunConfigFile& rc, bool json_style, std::ostream& out) {
  const GaussianState st = evolve_state(rc.system);
  const double tau = lee_depth(build_normal_covariance(st)).tau;
  const SymmetricCovariance sigma = build_symmetric_covariance(st);

  std::vector<std::pair<std::string, double>> negs;
  for (const char* b : {"1x234", "2x134", "3x124", "4x123", "12x34", "13x24", "14x23"})
    negs.emplace_back(b, log_negativity(sigma, Bipartition::parse(b), rc.log_base).value);
  std::vector<std::pair<std::string, double>> rs;
  for (int i = 1; i <= kModes; ++i) {
    for (int j = i + 1; j <= kModes; ++j) {
      const ReducedState red = reduce_modes(st, ModeSet{i, j});
      const std::string name = std::to_string(i) + "x" + std::to_string(j);
      negs.emplace_back(name, log_negativity(red.sigma, Bipartition::of(ModeSet{i}, red.sigma.modes), rc.log_base).value);
      rs.emplace_back(name, noise_reduction_factor(st, i, j));
    }
  }
  std::vector<std::pair<std::string, PairClassification>> cls;
  for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 4}, std::pair{2, 3}, std::pair{3, 4}})
    cls.emplace_back(std::to_string(i) + "x" + std::to_string(j), classify_pair(st, i, j, rc.log_base));

  if (!json_style) {
    write_report_text(out, rc, st, tau, negs, rs, cls);
    return kExitOk;
  }
  nlohmann::ordered_json j;
  j["version"] = std::string(kVersion);
  j["config"] = {{"g1t", rc.system.g1t},         {"g2t", rc.system.g2t}, {"g3t", rc.system.g3t},
                 {"gamma_t", rc.system.gamma_t}, {"n_d", rc.system.n_d}, {"steps", rc.system.steps},
                 {"log_base", std::string(to_string(rc.log_base))}};
  j["state"] = {{"B", st.B},
                {"D12", complex_json(st.d12)},
                {"D14", complex_json(st.d14)},
                {"D23", complex_json(st.d23)},
                {"D34", complex_json(st.d34)},
                {"Dbar13", complex_json(st.dbar13)},
                {"Dbar24", complex_json(st.dbar24)}};
  j["tau"] = tau;
  for (const auto& [k, v] : negs) j["negativity"]["E_" + k] = v;
  for (const auto& [k, v] : rs) j["noise_reduction"]["R_" + k] = v;
  for (const auto& [k, v] : cls)
    j["classification"]["class_" + k] = {{"label", std::string(to_string(v.label))}, {"boundary", v.boundary}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace detail

inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"Four-mode Gaussian optics: nonclassicality, entanglement and photon statistics", "fourmode"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  detail::CommonOptions common;
  unsigned threads = default_threads();

  // evolve
  auto* evolve = app.add_subcommand("evolve", "Evolve one configuration and print the full report");
  std::optional<double> ev_g1, ev_g2, ev_g3, ev_g23;
  bool json_style = false;
  std::optional<double> ev_gamma;
  evolve->add_option("--g1t", ev_g1, "g1 t");
  evolve->add_option("--g2t", ev_g2, "g2 t");
  evolve->add_option("--g3t", ev_g3, "g3 t");
  evolve->add_option("--g23t", ev_g23, "g2 t = g3 t");
  evolve->add_option("--gamma-t", ev_gamma, "Uniform gamma t for all modes");
  evolve->add_flag("--json-style", json_style, "Machine-readable JSON report");
  detail::add_common(evolve, common);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Grid sweep to CSV (up to three range axes)");
  detail::RangeOptions sw_ranges;
  std::string sw_out, sw_damped = "1234";
  bool sw_follow = false;
  detail::add_ranges(sweep, sw_ranges);
  sweep->add_option("--damped-modes", sw_damped, "Modes receiving gamma t, e.g. 12")->capture_default_str();
  sweep->add_flag("--gamma-follows-g1", sw_follow, "Set gamma t = g1 t on the damped modes");
  sweep->add_option("--threads", threads, "Worker threads")->capture_default_str();
  sweep->add_option("-o,--output", sw_out, "Output file (default stdout)");
  detail::add_common(sweep, common);

  // phase
  auto* phase = app.add_subcommand("phase", "Classification slice of pair 3x4 over (g2t, g3t)");
  double ph_g1 = 0.5;
  std::string ph_g2 = "0:7:0.05", ph_g3 = "0:7:0.05", ph_out;
  phase->add_option("--g1t", ph_g1, "Fixed g1 t")->capture_default_str();
  phase->add_option("--g2t", ph_g2, "g2 t range start:stop:step")->capture_default_str();
  phase->add_option("--g3t", ph_g3, "g3 t range start:stop:step")->capture_default_str();
  phase->add_option("--threads", threads, "Worker threads")->capture_default_str();
  phase->add_option("-o,--output", ph_out, "Output file (default stdout)");
  detail::add_common(phase, common);

  // contour
  auto* contour = app.add_subcommand("contour", "Level-set polylines of a sweep column over two axes");
  detail::RangeOptions ct_ranges;
  std::string ct_field, ct_format = "csv", ct_out, ct_damped = "1234";
  double ct_level = 0.0;
  contour->add_option("--field", ct_field, "Sweep column, e.g. E_1x4 or R_1x4")->required();
  contour->add_option("--level", ct_level, "Contour level")->required();
  contour->add_option("--format", ct_format, "csv or json")->capture_default_str();
  detail::add_ranges(contour, ct_ranges);
  contour->add_option("--damped-modes", ct_damped, "Modes receiving gamma t")->capture_default_str();
  contour->add_option("--threads", threads, "Worker threads")->capture_default_str();
  contour->add_option("-o,--output", ct_out, "Output file (default stdout)");
  detail::add_common(contour, common);

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check", "Compare Fock-space moments with the Gaussian pipeline");
  double oc_g1 = 0, oc_g2 = 0, oc_g3 = 0, oc_tol = 1e-4;
  int oc_cutoff = 10, oc_steps = 1000;
  oracle->add_option("--g1t", oc_g1, "g1 t")->capture_default_str();
  oracle->add_option("--g2t", oc_g2, "g2 t")->capture_default_str();
  oracle->add_option("--g3t", oc_g3, "g3 t")->capture_default_str();
  oracle->add_option("--cutoff", oc_cutoff, "Photons per mode in the truncated lattice")->capture_default_str();
  oracle->add_option("--fock-steps", oc_steps, "RK4 steps of the Fock evolution")->capture_default_str();
  oracle->add_option("--tolerance", oc_tol, "Largest accepted deviation")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (evolve->parsed()) {
      if (ev_gamma) common.gamma_t = ev_gamma;
      RunConfigFile rc = detail::base_config(common);
      if (ev_g1) rc.system.g1t = *ev_g1;
      if (ev_g23) rc.system.g2t = rc.system.g3t = *ev_g23;
      if (ev_g2) rc.system.g2t = *ev_g2;
      if (ev_g3) rc.system.g3t = *ev_g3;
      validate(rc.system);
      return detail::run_evolve(rc, json_style, out);
    }
    if (sweep->parsed()) {
      RunConfigFile rc = detail::base_config(common);
      GridSpec spec = detail::grid_from_ranges(sw_ranges, rc.system, ModeSet::parse(sw_damped));
      spec.gamma_follows_g1 = sw_follow;
      if (spec.axes.empty()) {
        spec.axes = {Axis::parse(AxisParam::g1t, "0:5.9:0.05"), Axis::parse(AxisParam::g23t, "0:7:0.05")};
      }
      validate(rc.system);
      const auto rows = grid_sweep(spec, rc.system, rc.log_base, threads);
      detail::Sink sink(sw_out, out);
      write_csv(*sink, rows);
      return kExitOk;
    }
    if (phase->parsed()) {
      RunConfigFile rc = detail::base_config(common);
      const PhaseSlice slice = phase_diagram_slice(ph_g1, Axis::parse(AxisParam::g2t, ph_g2),
                                                   Axis::parse(AxisParam::g3t, ph_g3), rc.system, threads);
      detail::Sink sink(ph_out, out);
      write_phase_csv(*sink, slice);
      return kExitOk;
    }
    if (contour->parsed()) {
      if (ct_format != "csv" && ct_format != "json")
        throw Error(ErrorKind::invalid_config, "--format must be csv or json");
      RunConfigFile rc = detail::base_config(common);
      GridSpec spec = detail::grid_from_ranges(ct_ranges, rc.system, ModeSet::parse(ct_damped));
      if (spec.axes.empty())
        spec.axes = {Axis::parse(AxisParam::g1t, "0:5.9:0.05"), Axis::parse(AxisParam::g23t, "0:7:0.05")};
      validate(rc.system);
      const ContourSet set = contour_extract(ct_field, spec, ct_level, rc.system, rc.log_base, threads);
      detail::Sink sink(ct_out, out);
      if (ct_format == "json")
        write_contour_json(*sink, set, ct_field);
      else
        write_contour_csv(*sink, set, ct_field);
      return kExitOk;
    }
    if (oracle->parsed()) {
      SystemConfig cfg;
      cfg.g1t = oc_g1;
      cfg.g2t = oc_g2;
      cfg.g3t = oc_g3;
      const FockMoments fm = fock_moments(fock_evolve(cfg, oc_cutoff, oc_steps));
      const double dev = moment_deviation(fm, evolve_state(cfg));
      out << "# fourmode " << kVersion << '\n';
      out << "cutoff: " << oc_cutoff << '\n';
      out << "max_deviation: " << format_double(dev) << '\n';
      out << "tolerance: " << format_double(oc_tol) << '\n';
      out << "status: " << (dev < oc_tol ? "ok" : "exceeded") << '\n';
      return dev < oc_tol ? kExitOk : kExitNumerical;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e.kind()) ? kExitUsage : kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace fourmode::cli
