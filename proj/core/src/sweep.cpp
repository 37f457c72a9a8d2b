#include "qring/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qring {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EmitterArray make_geometry(const SweepSpec& spec, double a) {
  switch (spec.geometry) {
    case OligomerTag::Ring: return build_ring(spec.n_d, a);
    case OligomerTag::RingPlusCenter: return build_ring_plus_center(spec.n_d, a);
    case OligomerTag::DoubleRing: return build_double_ring(spec.n_d, a, spec.ratio, spec.twist);
    default: throw std::domain_error("sweep: custom geometries are not sweepable");
  }
}

// deterministic state ordering for spectrum columns: zone position, then Re
template <typename State>
std::vector<const State*> ordered(const std::vector<State>& states, int n_d) {
  const auto zone = brillouin_zone(n_d);
  auto zone_pos = [&](const State& s) {
    if (!s.momentum) return static_cast<int>(zone.size());
    return static_cast<int>(std::find(zone.begin(), zone.end(), *s.momentum) - zone.begin());
  };
  std::vector<const State*> out;
  for (const auto& s : states) out.push_back(&s);
  std::sort(out.begin(), out.end(), [&](const State* a, const State* b) {
    const int za = zone_pos(*a), zb = zone_pos(*b);
    if (za != zb) return za < zb;
    if (a->energy.real() != b->energy.real()) return a->energy.real() < b->energy.real();
    return a->energy.imag() < b->energy.imag();
  });
  return out;
}

}  // namespace

int Table::failed_rows() const {
  int n = 0;
  for (const auto& e : row_error) {
    if (!e.empty()) ++n;
  }
  return n;
}

void SweepSpec::validate() const {
  if (!(a_min > 0.0) || !(a_max >= a_min)) throw std::domain_error("sweep: invalid spacing bounds");
  if (a_count < 2 && a_max != a_min) throw std::domain_error("sweep: need at least 2 grid points");
  if (a_count < 1) throw std::domain_error("sweep: need at least 1 grid point");
  if (geometry == OligomerTag::DoubleRing && !(ratio > 1.0)) {
    throw std::domain_error("sweep: double ring requires b/a > 1");
  }
  if (target == SweepTarget::TwoMode && geometry == OligomerTag::Ring) {
    throw std::domain_error("sweep: two-mode target needs ring-center or double-ring geometry");
  }
  if (target == SweepTarget::B1Lifetime &&
      (geometry != OligomerTag::DoubleRing || n_d != 6)) {
    throw std::domain_error("sweep: product-state lifetime target needs the hexagonal double ring");
  }
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g;
  if (a_count == 1) {
    g.push_back(a_min);
    return g;
  }
  for (int i = 0; i < a_count; ++i) {
    g.push_back(a_min + (a_max - a_min) * i / (a_count - 1));
  }
  return g;
}

namespace {

void spectrum_columns(Table& t, int n_states) {
  t.columns = {"a"};
  for (int i = 0; i < n_states; ++i) {
    const std::string s = std::to_string(i);
    t.columns.push_back("m" + s);
    t.columns.push_back("dw" + s);
    t.columns.push_back("gamma" + s);
  }
}

template <typename State>
void append_spectrum_row(std::vector<double>& row, const std::vector<State>& states, int n_d) {
  for (const State* s : ordered(states, n_d)) {
    row.push_back(s->momentum ? double(*s->momentum) : kNaN);
    row.push_back(s->energy.real());
    row.push_back(s->decay_rate());
  }
}

}  // namespace

Table run_sweep(const SweepSpec& spec) {
  spec.validate();
  Table t;
  const auto grid = spec.grid();

  switch (spec.target) {
    case SweepTarget::SingleSpectrum:
    case SweepTarget::DoubleSpectrum: {
      const int n = make_geometry(spec, grid.front()).size();
      const int n_states =
          spec.target == SweepTarget::SingleSpectrum ? n : n * (n - 1) / 2;
      spectrum_columns(t, n_states);
      break;
    }
    case SweepTarget::TwoMode:
      t.columns = {"a",        "dw_sym",  "gamma_sym", "dw_anti", "gamma_anti",
                   "enh_sym",  "enh_anti", "phase_anti", "weight_a_anti"};
      break;
    case SweepTarget::B1Lifetime:
      t.columns = {"a",        "b_over_a", "gamma_mm", "enh_mm", "gamma_mp", "enh_mp",
                   "gamma_pm", "enh_pm",   "gamma_pp", "enh_pp"};
      break;
  }

  for (double a : grid) {
    std::vector<double> row{a};
    std::string err;
    try {
      switch (spec.target) {
        case SweepTarget::SingleSpectrum: {
          const auto states = solve_single(make_geometry(spec, a));
          append_spectrum_row(row, states, spec.n_d);
          break;
        }
        case SweepTarget::DoubleSpectrum: {
          const auto states = solve_double(make_geometry(spec, a));
          append_spectrum_row(row, states, spec.n_d);
          break;
        }
        case SweepTarget::TwoMode: {
          const TwoModeModel model =
              spec.geometry == OligomerTag::RingPlusCenter
                  ? ring_center_model(spec.n_d, a)
                  : ring_ring_model(spec.n_d, a, spec.ratio, spec.momentum);
          const cplx es = model.symmetric_energy();
          const cplx ea = model.antisymmetric_energy();
          const Eigen::Vector2cd va = model.antisymmetric_vector();
          row.insert(row.end(),
                     {es.real(), -2.0 * es.imag(), ea.real(), -2.0 * ea.imag(),
                      -0.5 / es.imag(), -0.5 / ea.imag(), std::arg(va(1) / va(0)),
                      std::norm(va(0))});
          break;
        }
        case SweepTarget::B1Lifetime: {
          const ProductStateSet set = b1_product_states(a, spec.ratio);
          row.push_back(spec.ratio);
          for (char s1 : {'-', '+'}) {
            for (char s2 : {'-', '+'}) {
              const double gm = set.states[set.index_of(s1, s2)].decay_rate();
              row.push_back(gm);
              row.push_back(units::gamma0 / gm);
            }
          }
          break;
        }
      }
    } catch (const std::exception& e) {
      err = e.what();
      row.assign(t.columns.size(), kNaN);
      row[0] = a;
    }
    t.rows.push_back(std::move(row));
    t.row_error.push_back(std::move(err));
  }
  return t;
}

namespace {

double b1_enhancement(double a, double ratio) {
  const ProductStateSet set = b1_product_states(a, ratio);
  return units::gamma0 / set.states[set.index_of('-', '-')].decay_rate();
}

double golden_axis(double lo, double hi, const std::function<double(double)>& f) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    if (f(c1) > f(c2)) {
      hi = c2;
    } else {
      lo = c1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OptimizationResult optimize_b1_lifetime(double a_lo, double a_hi, int a_count, double ratio_lo,
                                        double ratio_hi, int ratio_count, bool refine) {
  if (!(a_lo > 0.0) || a_hi < a_lo || !(ratio_lo > 1.0) || ratio_hi < ratio_lo) {
    throw std::domain_error("optimize: invalid bounds");
  }
  if (a_count < 1 || ratio_count < 1) throw std::domain_error("optimize: invalid grid counts");

  OptimizationResult res;
  res.surface.columns = {"a", "b_over_a", "enhancement"};
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a_count; ++i) {
    const double a = a_count == 1 ? a_lo : a_lo + (a_hi - a_lo) * i / (a_count - 1);
    for (int j = 0; j < ratio_count; ++j) {
      const double r =
          ratio_count == 1 ? ratio_lo : ratio_lo + (ratio_hi - ratio_lo) * j / (ratio_count - 1);
      std::vector<double> row{a, r, kNaN};
      std::string err;
      ++res.evaluations;
      try {
        row[2] = b1_enhancement(a, r);
        if (row[2] > best) {
          best = row[2];
          res.best_a = a;
          res.best_ratio = r;
        }
      } catch (const std::exception& e) {
        err = e.what();
      }
      res.surface.rows.push_back(std::move(row));
      res.surface.row_error.push_back(std::move(err));
    }
  }
  if (!std::isfinite(best)) {
    throw std::runtime_error("optimize: every grid point failed");
  }
  res.best_enhancement = best;

  if (refine && a_count > 1 && ratio_count > 1) {
    const double da = (a_hi - a_lo) / (a_count - 1);
    const double dr = (ratio_hi - ratio_lo) / (ratio_count - 1);
    double a = res.best_a, r = res.best_ratio;
    for (int pass = 0; pass < 2; ++pass) {
      a = golden_axis(std::max(a_lo, a - da), std::min(a_hi, a + da),
                      [&](double v) { return b1_enhancement(v, r); });
      r = golden_axis(std::max(ratio_lo, r - dr), std::min(ratio_hi, r + dr),
                      [&](double v) { return b1_enhancement(a, v); });
    }
    const double refined = b1_enhancement(a, r);
    if (refined > res.best_enhancement) {
      res.best_a = a;
      res.best_ratio = r;
      res.best_enhancement = refined;
    }
  }
  return res;
}

}  // namespace qring
