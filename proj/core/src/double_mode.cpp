#include "kipa/double_mode.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "kipa/errors.hpp"
#include "kipa/peaks.hpp"
#include "kipa/units.hpp"

namespace kipa {

namespace {

constexpr complex kI{0.0, 1.0};

void require_pump_rate(double g) {
  if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("g must be finite and >= 0");
}

Eigen::Matrix4cd bare_drift(const CoupledSystem& sys, double g, double da, double db) {
  const double ka = sys.mode_a().kappa();
  const double kb = sys.mode_b().kappa();
  const double j = sys.coupling();
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = -(kI * da + 0.5 * ka);
  m(0, 1) = -kI * j;
  m(0, 2) = -kI * g;
  m(1, 0) = -kI * j;
  m(1, 1) = -(kI * db + 0.5 * kb);
  m(2, 0) = kI * g;
  m(2, 2) = kI * da - 0.5 * ka;
  m(2, 3) = kI * j;
  m(3, 2) = kI * j;
  m(3, 3) = kI * db - 0.5 * kb;
  return m;
}

// Roots of s^2 + (p+q) s + pq - g^2 both in the left half plane.
bool pair_decays(complex p, complex q, double g) {
  const complex b = p + q;
  const complex c = p * q - g * g;
  const complex disc = std::sqrt(b * b - 4.0 * c);
  return (-b + disc).real() < 0.0 && (-b - disc).real() < 0.0;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

DoubleStability stability_double(const CoupledSystem& sys, double g) {
  const double ka = sys.mode_a().kappa();
  const double kb = sys.mode_b().kappa();
  const double j = sys.coupling();
  const double c0 = 4.0 * j * j / (ka * kb);
  const double thr = 0.5 * ka * (1.0 + c0);
  return {g < thr, c0, thr, thr - g};
}

double spectral_abscissa(const CoupledSystem& sys, double g, double delta_a, double delta_b) {
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(bare_drift(sys, g, delta_a, delta_b), false);
  return es.eigenvalues().real().maxCoeff();
}

double dynamical_threshold(const CoupledSystem& sys, double delta_a, double delta_b) {
  double lo = 0.0;
  double hi = sys.mode_a().kappa() + sys.mode_b().kappa() + sys.coupling() +
              std::abs(delta_a) + std::abs(delta_b);
  int grow = 0;
  while (spectral_abscissa(sys, hi, delta_a, delta_b) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 60) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (spectral_abscissa(sys, mid, delta_a, delta_b) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

HybridFrequencies hybridize(const CoupledSystem& sys, HybridizationForm form) {
  const double wa = sys.mode_a().omega0();
  const double wb = sys.mode_b().omega0();
  const double j = sys.coupling();
  const double dab = 0.5 * (wa - wb);
  const double mean = 0.5 * (wa + wb);
  const double r = form == HybridizationForm::as_printed ? std::sqrt(0.25 * dab * dab + j * j)
                                                          : std::sqrt(dab * dab + j * j);
  return {mean + r, mean - r, dab};
}

HybridModes hybrid_modes(const CoupledSystem& sys, HybridizationForm form) {
  const auto& a = sys.mode_a();
  const auto& b = sys.mode_b();
  const double theta = 0.5 * std::atan2(2.0 * sys.coupling(), a.omega0() - b.omega0());
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = 1.0 - c2;
  const auto hf = hybridize(sys, form);
  HybridModes m{};
  m.kappa_plus = c2 * a.kappa() + s2 * b.kappa();
  m.kappa_minus = s2 * a.kappa() + c2 * b.kappa();
  m.kappa_e_plus = c2 * a.kappa_e();
  m.kappa_e_minus = s2 * a.kappa_e();
  m.half_splitting = 0.5 * (hf.omega_plus - hf.omega_minus);
  m.mixing_angle = theta;
  return m;
}

double collective_pump_rate(const CoupledSystem& sys, double g) {
  const double theta =
      0.5 * std::atan2(2.0 * sys.coupling(), sys.mode_a().omega0() - sys.mode_b().omega0());
  return g * std::sin(theta) * std::cos(theta);
}

HybridFactors hybrid_factors(const HybridModes& m, double g_c, double delta, double phi_p,
                             double omega) noexcept {
  const double dp = delta + m.half_splitting;
  const double dm = delta - m.half_splitting;
  const double hp = 0.5 * m.kappa_plus;
  const double hm = 0.5 * m.kappa_minus;
  const complex num_p = hm - kI * (omega + dm);
  const complex num_m = hp - kI * (omega + dp);
  const complex den_p = (hp - kI * (omega - dp)) * num_p - g_c * g_c;
  const complex den_m = (hm - kI * (omega - dm)) * num_m - g_c * g_c;
  const complex idler_num = -kI * std::sqrt(m.kappa_e_plus * m.kappa_e_minus) * g_c *
                            std::polar(1.0, phi_p);
  return {m.kappa_e_plus * num_p / den_p - 1.0, idler_num / den_p,
          m.kappa_e_minus * num_m / den_m - 1.0, idler_num / den_m};
}

bool hybrid_stable(const HybridModes& m, double g_c, double delta) {
  const double dp = delta + m.half_splitting;
  const double dm = delta - m.half_splitting;
  const complex p1{0.5 * m.kappa_plus, dp};
  const complex q1{0.5 * m.kappa_minus, -dm};
  const complex p2{0.5 * m.kappa_minus, dm};
  const complex q2{0.5 * m.kappa_plus, -dp};
  return pair_decays(p1, q1, g_c) && pair_decays(p2, q2, g_c);
}

HybridGain double_mode_gain_hybrid(const HybridModes& modes, double g_c, double delta,
                                   double phi_p, std::span<const double> omega_grid) {
  require_pump_rate(g_c);
  if (!hybrid_stable(modes, g_c, delta)) {
    throw UnstableRegime("collective pump rate " + fmt(g_c) +
                         " rad/s drives a hybrid pair above threshold");
  }
  std::vector<double> f(omega_grid.begin(), omega_grid.end());
  std::vector<complex> sp(f.size()), ip(f.size()), sm(f.size()), im(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const auto h = hybrid_factors(modes, g_c, delta, phi_p, f[n]);
    sp[n] = h.signal_plus;
    ip[n] = h.idler_plus;
    sm[n] = h.signal_minus;
    im[n] = h.idler_minus;
  }
  HybridGain out{ComplexSpectrum(f, std::move(sp)), ComplexSpectrum(f, std::move(ip)),
                 ComplexSpectrum(f, std::move(sm)), ComplexSpectrum(f, std::move(im)), {}};
  const double limit = std::max({modes.kappa_plus, modes.kappa_minus, g_c});
  if (2.0 * modes.half_splitting <= limit) {
    out.warnings.push_back("RWAViolation: splitting " + fmt(2.0 * modes.half_splitting) +
                           " rad/s <= max(kappa_+, kappa_-, g) = " + fmt(limit) + " rad/s");
  }
  return out;
}

HybridGain double_mode_gain_hybrid(const CoupledSystem& sys, double g, double delta, double phi_p,
                                   std::span<const double> omega_grid, HybridizationForm form) {
  require_pump_rate(g);
  const auto st = stability_double(sys, g);
  if (!st.stable) {
    throw UnstableRegime("g = " + fmt(g) + " rad/s exceeds the coupled threshold " +
                         fmt(st.threshold) + " rad/s");
  }
  const auto modes = hybrid_modes(sys, form);
  const double g_c = collective_pump_rate(sys, g);
  auto out = double_mode_gain_hybrid(modes, g_c, delta, phi_p, omega_grid);
  out.warnings.clear();
  const double limit = std::max({modes.kappa_plus, modes.kappa_minus, g});
  if (2.0 * modes.half_splitting <= limit) {
    out.warnings.push_back("RWAViolation: splitting " + fmt(2.0 * modes.half_splitting) +
                           " rad/s <= max(kappa_+, kappa_-, g) = " + fmt(limit) + " rad/s");
  }
  return out;
}

BareFactors bare_mode_factors(const CoupledSystem& sys, double g, double delta_a, double delta_b,
                              double phi_p, double omega) noexcept {
  const double ka = sys.mode_a().kappa();
  const double kb = sys.mode_b().kappa();
  const double kae = sys.mode_a().kappa_e();
  const double kbe = sys.mode_b().kappa_e();
  const double j = sys.coupling();
  const double j2 = j * j;
  const complex e = std::polar(1.0, phi_p);
  const double root = std::sqrt(kae * kbe);

  const complex pa = 2.0 * (delta_a + omega) + kI * ka;
  const complex pb = 2.0 * (delta_b + omega) + kI * kb;
  const complex xa = 2.0 * kI * delta_a + ka - 2.0 * kI * omega;
  const complex xb = 2.0 * kI * delta_b + kb - 2.0 * kI * omega;
  const complex pp = -j2 + 0.25 * pa * pb;
  const complex inner = g * g * (-kb + 2.0 * kI * (delta_b + omega)) - xa * pp;
  const complex den = xb * inner - j2 * pa * pb + 4.0 * j2 * j2;

  BareFactors out;
  out.a_signal = -1.0 - 2.0 * kae * xb * pp / den;
  out.a_idler = 2.0 * g * j * e * root * xb / den;

  const complex ua = 0.5 * ka - kI * (omega - delta_a);
  const complex ub = 0.5 * kb - kI * (omega - delta_b);
  const complex va = 0.5 * ka - kI * (omega + delta_a);
  const complex vb = 0.5 * kb - kI * (omega + delta_b);
  const complex big_v = va + j2 / vb;
  const complex det = (ua + j2 / ub) * big_v - g * g;
  out.b_signal = kbe * (1.0 / ub - j2 * big_v / (ub * ub * det)) - 1.0;
  out.b_idler = -root * j * g * e / (ub * det);
  return out;
}

BareGain double_mode_gain_bare(const CoupledSystem& sys, double g, double delta_a,
                               double delta_b, double phi_p, std::span<const double> omega_grid) {
  require_pump_rate(g);
  const auto st = stability_double(sys, g);
  if (!st.stable) {
    throw UnstableRegime("g = " + fmt(g) + " rad/s exceeds the coupled threshold " +
                         fmt(st.threshold) + " rad/s");
  }
  const double abscissa = spectral_abscissa(sys, g, delta_a, delta_b);
  if (!(abscissa < 0.0)) {
    throw UnstableRegime("drift matrix has a growing mode (max Re = " + fmt(abscissa) +
                         " rad/s) at g = " + fmt(g) + " rad/s");
  }
  std::vector<double> f(omega_grid.begin(), omega_grid.end());
  std::vector<complex> as(f.size()), ai(f.size()), bs(f.size()), bi(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const auto b = bare_mode_factors(sys, g, delta_a, delta_b, phi_p, f[n]);
    as[n] = b.a_signal;
    ai[n] = b.a_idler;
    bs[n] = b.b_signal;
    bi[n] = b.b_idler;
  }
  return {ComplexSpectrum(f, std::move(as)), ComplexSpectrum(f, std::move(ai)),
          ComplexSpectrum(f, std::move(bs)), ComplexSpectrum(f, std::move(bi))};
}

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::single_minus: return "single_minus";
    case Regime::double_mode: return "double";
    case Regime::single_plus: return "single_plus";
  }
  return "unknown";
}

namespace {

double a_gain(const CoupledSystem& sys, double g, double da, double db, double w) {
  return std::norm(bare_mode_factors(sys, g, da, db, 0.0, w).a_signal);
}

// Best |G_aS|^2 over the probe band: coarse scan, then golden section.
double best_probe_gain(const CoupledSystem& sys, double g, double da, double db, double window) {
  constexpr int kCoarse = 1201;
  const double step = 2.0 * window / (kCoarse - 1);
  int best = 0;
  double best_val = -1.0;
  for (int k = 0; k < kCoarse; ++k) {
    const double v = a_gain(sys, g, da, db, -window + step * k);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  double lo = -window + step * std::max(best - 1, 0);
  double hi = -window + step * std::min(best + 1, kCoarse - 1);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = a_gain(sys, g, da, db, x1);
  double f2 = a_gain(sys, g, da, db, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = a_gain(sys, g, da, db, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = a_gain(sys, g, da, db, x2);
    }
  }
  return std::max({best_val, f1, f2});
}

}  // namespace

RegimeMap pump_regime_map(const CoupledSystem& sys, double g, std::span<const double> pump_grid,
                          double min_prominence_db) {
  require_pump_rate(g);
  for (std::size_t i = 1; i < pump_grid.size(); ++i) {
    if (!(pump_grid[i] > pump_grid[i - 1])) {
      throw ValidationError("pump grid must be strictly increasing");
    }
  }
  const double wa = sys.mode_a().omega0();
  const double wb = sys.mode_b().omega0();
  const double s = hybridize(sys, HybridizationForm::standard).omega_plus - 0.5 * (wa + wb);
  const double window =
      2.0 * s + 4.0 * std::max(sys.mode_a().kappa(), sys.mode_b().kappa()) + 2.0 * g;

  RegimeMap map;
  map.pump_grid.assign(pump_grid.begin(), pump_grid.end());
  map.peak_gain_db.resize(pump_grid.size());
  std::size_t unstable = 0;
  const bool coop_ok = stability_double(sys, g).stable;
  for (std::size_t i = 0; i < pump_grid.size(); ++i) {
    const double da = wa - 0.5 * pump_grid[i];
    const double db = wb - 0.5 * pump_grid[i];
    if (!coop_ok || !(spectral_abscissa(sys, g, da, db) < 0.0)) {
      map.peak_gain_db[i] = std::numeric_limits<double>::quiet_NaN();
      ++unstable;
      continue;
    }
    map.peak_gain_db[i] = to_db(best_probe_gain(sys, g, da, db, window));
  }
  if (unstable > 0) {
    map.warnings.push_back(std::to_string(unstable) + " of " + std::to_string(pump_grid.size()) +
                           " pump points are above threshold and were skipped");
  }

  const double centre = 0.5 * (wa + wb);
  const auto& y = map.peak_gain_db;
  std::map<Regime, std::pair<std::size_t, double>> best;  // index, refined pump
  for (const auto& pk : find_peaks(y, min_prominence_db)) {
    const double wp = refine_peak(map.pump_grid, y, pk.index);
    const double det = centre - 0.5 * wp;
    Regime r = Regime::double_mode;
    double dist = std::abs(det);
    if (std::abs(det + s) < dist) {
      r = Regime::single_minus;
      dist = std::abs(det + s);
    }
    if (std::abs(det - s) < dist) r = Regime::single_plus;
    auto it = best.find(r);
    if (it == best.end() || y[it->second.first] < pk.value) best[r] = {pk.index, wp};
  }
  // A ridge top split into near-equal maxima is placed at the centre of the
  // outermost ones.
  constexpr double kRidgeDb = 0.5;
  for (const auto& [r, peak] : best) {
    const auto [k, wp] = peak;
    const double floor = y[k] - kRidgeDb;
    std::size_t lo = k, hi = k;
    while (lo > 0 && y[lo - 1] >= floor) --lo;
    while (hi + 1 < y.size() && y[hi + 1] >= floor) ++hi;
    double first = wp, last = wp;
    for (std::size_t i = std::max<std::size_t>(lo, 1); i + 1 <= std::min(hi, y.size() - 2); ++i) {
      if (i == k || y[i] < y[i - 1] || y[i] < y[i + 1]) continue;
      const double w = refine_peak(map.pump_grid, y, i);
      first = std::min(first, w);
      last = std::max(last, w);
    }
    const double pump = 0.5 * (first + last);
    map.peaks.push_back({r, pump, wa - 0.5 * pump, y[k]});
  }
  std::sort(map.peaks.begin(), map.peaks.end(),
            [](const RegimePeak& p, const RegimePeak& q) { return p.pump_omega < q.pump_omega; });
  if (map.peaks.size() >= 2) {
    map.outer_separation = map.peaks.back().pump_omega - map.peaks.front().pump_omega;
  }
  return map;
}

}  // namespace kipa
