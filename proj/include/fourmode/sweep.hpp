#pragma once

// Full per-point pipeline, grid sweeps and CSV output.

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fourmode/correlations.hpp"
#include "fourmode/entanglement.hpp"
#include "fourmode/error.hpp"
#include "fourmode/evolution.hpp"
#include "fourmode/model.hpp"
#include "fourmode/moments.hpp"
#include "fourmode/nonclassicality.hpp"

#ifndef FOURMODE_VERSION
#define FOURMODE_VERSION "0.0.0"
#endif

namespace fourmode {

inline constexpr std::string_view kVersion = FOURMODE_VERSION;

inline const std::array<Bipartition, 4>& reported_bipartitions() {
  static const std::array<Bipartition, 4> bips = {
      Bipartition::parse("1x234"), Bipartition::parse("3x124"), Bipartition::parse("12x34"),
      Bipartition::parse("13x24")};
  return bips;
}

inline constexpr std::array<std::array<int, 2>, 4> kReportedPairs = {{{1, 2}, {3, 4}, {1, 4}, {2, 3}}};
inline constexpr std::array<std::array<int, 2>, 3> kClassifiedPairs = {{{1, 2}, {3, 4}, {1, 4}}};

/// State at s = 1 from vacuum: the exponential propagator when noiseless,
/// the moment ODE otherwise.
inline GaussianState evolve_state(const SystemConfig& cfg) {
  if (cfg.noiseless()) return noiseless_state_from_propagator(numeric_propagator(cfg));
  return extract_correlators(evolve_second_moments(cfg));
}

struct SweepRow {
  double g1t = 0, g2t = 0, g3t = 0, gamma_t = 0;
  std::array<double, 4> B{};
  double tau = 0;
  std::array<double, 4> E_bip{};   // 1x234, 3x124, 12x34, 13x24
  std::array<double, 4> E_pair{};  // 1x2, 3x4, 1x4, 2x3
  std::array<double, 3> R{};       // 1x2, 3x4, 1x4
  std::array<PairLabel, 3> cls{};  // 1x2, 3x4, 1x4
  std::string error;

  bool ok() const { return error.empty(); }
};

inline double max_gamma(const SystemConfig& cfg) {
  return *std::max_element(cfg.gamma_t.begin(), cfg.gamma_t.end());
}

inline SweepRow evaluate_state(const SystemConfig& cfg, const GaussianState& st,
                               LogBase base = LogBase::natural) {
  SweepRow row;
  row.g1t = cfg.g1t;
  row.g2t = cfg.g2t;
  row.g3t = cfg.g3t;
  row.gamma_t = max_gamma(cfg);
  row.B = st.B;
  row.tau = lee_depth(build_normal_covariance(st)).tau;

  const SymmetricCovariance sigma = build_symmetric_covariance(st);
  const auto& bips = reported_bipartitions();
  for (std::size_t k = 0; k < bips.size(); ++k) row.E_bip[k] = log_negativity(sigma, bips[k], base).value;

  for (std::size_t k = 0; k < kReportedPairs.size(); ++k) {
    const auto [i, j] = kReportedPairs[k];
    const ReducedState red = reduce_modes(st, ModeSet{i, j});
    row.E_pair[k] = log_negativity(red.sigma, Bipartition::of(ModeSet{i}, red.sigma.modes), base).value;
  }
  for (std::size_t k = 0; k < kClassifiedPairs.size(); ++k) {
    const auto [i, j] = kClassifiedPairs[k];
    const PairClassification c = classify_pair(st, i, j, base);
    row.R[k] = c.R;
    row.cls[k] = c.label;
  }
  return row;
}

inline SweepRow evaluate_point(const SystemConfig& cfg, LogBase base = LogBase::natural) {
  return evaluate_state(cfg, evolve_state(cfg), base);
}

// ---------------------------------------------------------------------------

enum class AxisParam { g1t, g2t, g3t, g23t, gamma_t };

inline std::string_view to_string(AxisParam p) {
  switch (p) {
    case AxisParam::g1t: return "g1t";
    case AxisParam::g2t: return "g2t";
    case AxisParam::g3t: return "g3t";
    case AxisParam::g23t: return "g23t";
    case AxisParam::gamma_t: return "gamma_t";
  }
  return "?";
}

inline AxisParam parse_axis_param(std::string_view name) {
  for (AxisParam p : {AxisParam::g1t, AxisParam::g2t, AxisParam::g3t, AxisParam::g23t, AxisParam::gamma_t})
    if (to_string(p) == name) return p;
  throw Error(ErrorKind::invalid_config, "unknown axis '" + std::string(name) + "'");
}

struct Axis {
  AxisParam param = AxisParam::g1t;
  double start = 0, stop = 0, step = 1;

  std::size_t count() const {
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  }
  /// Grid value snapped to 12 decimals so 0.1-steps print as written.
  double at(std::size_t i) const {
    const double v = start + static_cast<double>(i) * step;
    return std::round(v * 1e12) / 1e12;
  }

  /// "start:stop:step" or a single value.
  static Axis parse(AxisParam param, const std::string& text) {
    auto num = [&](const std::string& s) {
      double v = 0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error(ErrorKind::invalid_config, "bad number '" + s + "' in range '" + text + "'");
      return v;
    };
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      const auto colon = text.find(':', pos);
      parts.push_back(text.substr(pos, colon - pos));
      if (colon == std::string::npos) break;
      pos = colon + 1;
    }
    Axis ax{param};
    if (parts.size() == 1) {
      ax.start = ax.stop = num(parts[0]);
      ax.step = 1.0;
    } else if (parts.size() == 3) {
      ax.start = num(parts[0]);
      ax.stop = num(parts[1]);
      ax.step = num(parts[2]);
    } else {
      throw Error(ErrorKind::invalid_config, "range must be start:stop:step, got '" + text + "'");
    }
    return ax;
  }
};

struct GridSpec {
  std::vector<Axis> axes;
  ModeSet damped_modes = ModeSet::all();  // modes receiving the gamma_t axis value
  bool gamma_follows_g1 = false;          // gamma_j t = g1 t on damped modes

  void validate() const {
    if (axes.empty() || axes.size() > 3) throw Error(ErrorKind::invalid_config, "grid needs 1 to 3 axes");
    unsigned touched = 0;
    for (const Axis& ax : axes) {
      if (!(ax.step > 0) || !std::isfinite(ax.start) || !std::isfinite(ax.stop) || ax.start > ax.stop)
        throw Error(ErrorKind::invalid_config,
                    "axis " + std::string(to_string(ax.param)) + " needs start <= stop and step > 0");
      unsigned mask = 0;
      switch (ax.param) {
        case AxisParam::g1t: mask = 1; break;
        case AxisParam::g2t: mask = 2; break;
        case AxisParam::g3t: mask = 4; break;
        case AxisParam::g23t: mask = 2 | 4; break;
        case AxisParam::gamma_t: mask = 8; break;
      }
      if (touched & mask) throw Error(ErrorKind::invalid_config, "axes must be distinct");
      touched |= mask;
    }
    if (gamma_follows_g1 && (touched & 8))
      throw Error(ErrorKind::invalid_config, "gamma_t axis conflicts with gamma-follows-g1");
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (const Axis& ax : axes) n *= ax.count();
    return n;
  }

  /// Per-axis indices of a flat index; the first axis varies slowest.
  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      const std::size_t n = axes[k].count();
      idx[k] = flat % n;
      flat /= n;
    }
    return idx;
  }

  /// Configuration with axis k set to values[k].
  SystemConfig config_with(const SystemConfig& base, const std::vector<double>& values) const {
    SystemConfig cfg = base;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const double v = values[k];
      switch (axes[k].param) {
        case AxisParam::g1t: cfg.g1t = v; break;
        case AxisParam::g2t: cfg.g2t = v; break;
        case AxisParam::g3t: cfg.g3t = v; break;
        case AxisParam::g23t: cfg.g2t = cfg.g3t = v; break;
        case AxisParam::gamma_t:
          for (int m : damped_modes.modes()) cfg.gamma_t[static_cast<std::size_t>(m - 1)] = v;
          break;
      }
    }
    if (gamma_follows_g1)
      for (int m : damped_modes.modes()) cfg.gamma_t[static_cast<std::size_t>(m - 1)] = cfg.g1t;
    return cfg;
  }

  SystemConfig config_at(const SystemConfig& base, std::size_t flat) const {
    const auto idx = unflatten(flat);
    std::vector<double> values(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) values[k] = axes[k].at(idx[k]);
    return config_with(base, values);
  }
};

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Evaluates `fn(flat_index)` for every index and returns results in index
/// order, independent of the thread count.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<T> out(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
    });
  }
  pool.clear();
  return out;
}

/// One row per grid point in lexicographic axis order. Failures at a point
/// land in the row's error column.
inline std::vector<SweepRow> grid_sweep(const GridSpec& spec, const SystemConfig& base,
                                        LogBase log_base = LogBase::natural,
                                        unsigned threads = default_threads()) {
  spec.validate();
  return parallel_map<SweepRow>(spec.size(), threads, [&](std::size_t flat) {
    const SystemConfig cfg = spec.config_at(base, flat);
    try {
      return evaluate_point(cfg, log_base);
    } catch (const std::exception& e) {
      SweepRow row;
      row.g1t = cfg.g1t;
      row.g2t = cfg.g2t;
      row.g3t = cfg.g3t;
      row.gamma_t = max_gamma(cfg);
      row.error = e.what();
      return row;
    }
  });
}

// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 24> kCsvColumns = {
    "g1t",     "g2t",     "g3t",      "gamma_t",  "B1",    "B2",    "B3",    "B4",
    "tau",     "E_1x234", "E_3x124",  "E_12x34",  "E_13x24", "E_1x2", "E_3x4", "E_1x4",
    "E_2x3",   "R_1x2",   "R_3x4",    "R_1x4",    "class_1x2", "class_3x4", "class_1x4", "error"};

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Numeric column by CSV name; throws field-not-found.
inline double row_field(const SweepRow& row, std::string_view name) {
  if (name == "g1t") return row.g1t;
  if (name == "g2t") return row.g2t;
  if (name == "g3t") return row.g3t;
  if (name == "gamma_t") return row.gamma_t;
  if (name == "tau") return row.tau;
  for (std::size_t k = 0; k < 4; ++k)
    if (name == kCsvColumns[4 + k]) return row.B[k];
  for (std::size_t k = 0; k < 4; ++k)
    if (name == kCsvColumns[9 + k]) return row.E_bip[k];
  for (std::size_t k = 0; k < 4; ++k)
    if (name == kCsvColumns[13 + k]) return row.E_pair[k];
  for (std::size_t k = 0; k < 3; ++k)
    if (name == kCsvColumns[17 + k]) return row.R[k];
  throw Error(ErrorKind::field_not_found, "no numeric column '" + std::string(name) + "'");
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' ? ' ' : c);
  }
  return out + "\"";
}

inline void write_csv_header(std::ostream& os, const std::vector<std::string>& comments = {}) {
  os << "# fourmode " << kVersion << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  for (std::size_t k = 0; k < kCsvColumns.size(); ++k) os << (k ? "," : "") << kCsvColumns[k];
  os << '\n';
}

inline void write_csv_row(std::ostream& os, const SweepRow& r) {
  os << format_double(r.g1t) << ',' << format_double(r.g2t) << ',' << format_double(r.g3t) << ','
     << format_double(r.gamma_t);
  if (!r.ok()) {
    for (std::size_t k = 4; k + 1 < kCsvColumns.size(); ++k) os << ',';
    os << ',' << csv_escape(r.error) << '\n';
    return;
  }
  for (double b : r.B) os << ',' << format_double(b);
  os << ',' << format_double(r.tau);
  for (double e : r.E_bip) os << ',' << format_double(e);
  for (double e : r.E_pair) os << ',' << format_double(e);
  for (double v : r.R) os << ',' << format_double(v);
  for (PairLabel c : r.cls) os << ',' << to_string(c);
  os << ",\n";
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  std::vector<std::string> comments;
  const bool asymmetric = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.g2t != r.g3t; });
  if (asymmetric) comments.push_back("E_12x34: PPT-necessary-only where g2t != g3t");
  write_csv_header(os, comments);
  for (const SweepRow& r : rows) write_csv_row(os, r);
}

// ---------------------------------------------------------------------------

struct PhaseSlice {
  double g1t = 0;
  Axis x, y;                                 // g2t (slow), g3t (fast)
  std::vector<PairClassification> cells;     // row-major over (x, y)
  std::array<std::size_t, 3> counts{};       // indexed by PairLabel

  const PairClassification& at(std::size_t ix, std::size_t iy) const { return cells[ix * y.count() + iy]; }
  /// Share of entangled points without sub-shot-noise correlations.
  double hidden_fraction() const {
    const std::size_t ent = counts[1] + counts[2];
    return ent ? static_cast<double>(counts[1]) / static_cast<double>(ent) : 0.0;
  }
};

/// Classification of the up-converted pair (3, 4) over a (g2t, g3t) plane.
inline PhaseSlice phase_diagram_slice(double g1t, const Axis& g2_axis, const Axis& g3_axis,
                                      const SystemConfig& base = {}, unsigned threads = default_threads()) {
  GridSpec spec;
  spec.axes = {Axis{AxisParam::g2t, g2_axis.start, g2_axis.stop, g2_axis.step},
               Axis{AxisParam::g3t, g3_axis.start, g3_axis.stop, g3_axis.step}};
  spec.validate();
  SystemConfig cfg0 = base;
  cfg0.g1t = g1t;
  validate(cfg0);

  PhaseSlice out;
  out.g1t = g1t;
  out.x = spec.axes[0];
  out.y = spec.axes[1];
  out.cells = parallel_map<PairClassification>(spec.size(), threads, [&](std::size_t flat) {
    return classify_pair(evolve_state(spec.config_at(cfg0, flat)), 3, 4);
  });
  for (const auto& c : out.cells) ++out.counts[static_cast<std::size_t>(c.label)];
  return out;
}

inline void write_phase_csv(std::ostream& os, const PhaseSlice& slice) {
  os << "# fourmode " << kVersion << '\n';
  os << "# pair 3x4 at g1t=" << format_double(slice.g1t) << "; separable=" << slice.counts[0]
     << " entangled_no_ssn=" << slice.counts[1] << " entangled_ssn=" << slice.counts[2] << '\n';
  os << "g1t,g2t,g3t,E_3x4,R_3x4,class_3x4,boundary\n";
  for (std::size_t ix = 0; ix < slice.x.count(); ++ix) {
    for (std::size_t iy = 0; iy < slice.y.count(); ++iy) {
      const auto& c = slice.at(ix, iy);
      os << format_double(slice.g1t) << ',' << format_double(slice.x.at(ix)) << ','
         << format_double(slice.y.at(iy)) << ',' << format_double(c.E) << ',' << format_double(c.R) << ','
         << to_string(c.label) << ',' << (c.boundary ? 1 : 0) << '\n';
    }
  }
}

}  // namespace fourmode
