#include "kipa/fit/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kipa/errors.hpp"
#include "kipa/noise.hpp"
#include "kipa/peaks.hpp"
#include "kipa/units.hpp"

namespace kipa::fit {

const FitParam& FitResult::at(const std::string& name) const {
  for (const auto& p : params) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("no fit parameter named " + name);
}

double FitResult::sigma(const std::string& name) const {
  const auto& p = at(name);
  return p.sigma ? *p.sigma : std::numeric_limits<double>::quiet_NaN();
}

namespace {

constexpr complex kI{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_kind(const Trace& t, TraceKind kind, std::size_t min_points) {
  if (t.kind() != kind) {
    throw ValidationError(std::string("expected a ") + to_string(kind) + " trace, got " +
                          to_string(t.kind()));
  }
  if (t.size() < min_points) {
    throw ValidationError("need at least " + std::to_string(min_points) + " points, got " +
                          std::to_string(t.size()));
  }
}

// Full width where y crosses base + (y[k] - base)/2, linearly interpolated.
// A single missing side is mirrored from the other.
std::optional<double> half_width(std::span<const double> x, std::span<const double> y,
                                 std::size_t k, double base) {
  const double level = base + 0.5 * (y[k] - base);
  std::optional<double> left, right;
  for (std::size_t i = k; i-- > 0;) {
    if (y[i] <= level) {
      const double t = (level - y[i]) / (y[i + 1] - y[i]);
      left = x[k] - (x[i] + t * (x[i + 1] - x[i]));
      break;
    }
  }
  for (std::size_t i = k + 1; i < y.size(); ++i) {
    if (y[i] <= level) {
      const double t = (y[i - 1] - level) / (y[i - 1] - y[i]);
      right = (x[i - 1] + t * (x[i] - x[i - 1])) - x[k];
      break;
    }
  }
  if (left && right) return *left + *right;
  if (left) return 2.0 * *left;
  if (right) return 2.0 * *right;
  return std::nullopt;
}

FitParam param(std::string name, double value, double sigma, bool converged, std::string unit) {
  FitParam p{std::move(name), value, std::nullopt, std::move(unit)};
  if (converged) p.sigma = sigma;
  return p;
}

std::vector<double> shifted(std::span<const double> x, double ref) {
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v -= ref;
  return out;
}

void require_converged(const LmResult& lm, const char* what) {
  if (!lm.converged) {
    throw NotConverged(std::string(what) + " did not converge in " +
                       std::to_string(lm.iterations) + " iterations");
  }
}

}  // namespace

// ---------------------------------------------------------------- reflection

FitResult fit_reflection(const Trace& trace, std::optional<ReflectionGuess> init,
                         const LmOptions& options) {
  require_kind(trace, TraceKind::reflection, 4);
  const auto y = trace.y_complex();
  const std::size_t n = trace.size();
  const double f_ref = trace.x()[n / 2];
  const auto xs = shifted(trace.x(), f_ref);

  ReflectionGuess g0{};
  if (init) {
    g0 = *init;
    g0.f0_hz -= f_ref;
  } else {
    std::vector<double> absorbed(n);
    for (std::size_t i = 0; i < n; ++i) absorbed[i] = 1.0 - std::norm(y[i]);
    const auto [lo, hi] = std::minmax_element(absorbed.begin(), absorbed.end());
    if (!(*hi - *lo > 1e-6)) throw IllConditioned("trace shows no resonance dip");
    const auto k = static_cast<std::size_t>(hi - absorbed.begin());
    const auto width = half_width(xs, absorbed, k, std::max(0.0, *lo));
    if (!width || !(*width > 0.0)) throw IllConditioned("resonance width not resolved");
    const double eta = std::clamp(0.5 * (1.0 + y[k].real()), 0.05, 1.0);
    g0 = {xs[k], eta * *width, (1.0 - eta) * *width};
  }
  const double kappa0 = g0.kappa_e_hz + g0.kappa_i_hz;
  if (!(kappa0 > 0.0)) throw ValidationError("initial linewidth must be > 0");

  auto residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    const double ke = p(1);
    const double k = p(1) + p(2);
    if (!(ke > 0.0) || !(k > 0.0)) {
      r.setConstant(kNaN);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const complex model = ke / (0.5 * k - kI * (xs[i] - p(0))) - 1.0;
      const complex d = model - y[i];
      r(2 * i) = d.real();
      r(2 * i + 1) = d.imag();
    }
  };
  Eigen::VectorXd p0(3), scale(3);
  p0 << g0.f0_hz, g0.kappa_e_hz, g0.kappa_i_hz;
  scale.setConstant(kappa0);
  const auto lm = levenberg_marquardt(residuals, static_cast<Eigen::Index>(2 * n), p0, scale, options);
  require_converged(lm, "reflection fit");
  if (lm.rank < 3) throw IllConditioned("reflection Jacobian is rank deficient");

  FitResult out;
  out.converged = lm.converged;
  out.iterations = lm.iterations;
  out.residual_rms = std::sqrt(lm.rss / static_cast<double>(n));
  out.params.push_back(param("f0", lm.params(0) + f_ref, lm.sigma(0), true, "Hz"));
  out.params.push_back(param("kappa_e", lm.params(1), lm.sigma(1), true, "Hz"));
  out.params.push_back(param("kappa_i", lm.params(2), lm.sigma(2), true, "Hz"));
  if (lm.params(2) < 0.0) out.warnings.push_back("kappa_i fitted negative");
  return out;
}

// ---------------------------------------------------------------- bias sweep

FitResult fit_bias_sweep(const Trace& trace) {
  require_kind(trace, TraceKind::bias_shift, 3);
  return fit_bias_sweep(trace.x(), trace.y());
}

FitResult fit_bias_sweep(std::span<const double> i_dc, std::span<const double> f_hz) {
  if (i_dc.size() != f_hz.size()) throw ValidationError("bias sweep lengths differ");
  const std::size_t n = i_dc.size();
  if (n < 3) throw ValidationError("bias sweep needs at least 3 points");

  std::vector<double> x2(n);
  for (std::size_t i = 0; i < n; ++i) x2[i] = i_dc[i] * i_dc[i];
  const double nn = static_cast<double>(n);
  const double xm = std::accumulate(x2.begin(), x2.end(), 0.0) / nn;
  const double ym = std::accumulate(f_hz.begin(), f_hz.end(), 0.0) / nn;
  double sxx = 0.0, sxy = 0.0, sx2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x2[i] - xm) * (x2[i] - xm);
    sxy += (x2[i] - xm) * (f_hz[i] - ym);
    sx2 += x2[i] * x2[i];
  }
  if (!(sxx > 1e-20 * sx2) || sx2 == 0.0) {
    throw IllConditioned("bias currents do not span more than one value of I_dc^2");
  }
  const double c1 = sxy / sxx;
  const double c0 = ym - c1 * xm;
  if (!(c1 < 0.0) || !(c0 > 0.0)) {
    throw NonPhysical("resonance does not move down with bias (slope " + std::to_string(c1) +
                      " Hz/A^2)");
  }
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = f_hz[i] - (c0 + c1 * x2[i]);
    rss += r * r;
  }
  const double s2 = n > 2 ? rss / (nn - 2.0) : 0.0;
  const double var_c1 = s2 / sxx;
  const double var_c0 = s2 * (1.0 / nn + xm * xm / sxx);
  const double cov01 = -xm * s2 / sxx;
  const double i_star = std::sqrt(-c0 / (2.0 * c1));
  const double d0 = i_star / (2.0 * c0);
  const double d1 = -i_star / (2.0 * c1);
  const double var_is = d0 * d0 * var_c0 + d1 * d1 * var_c1 + 2.0 * d0 * d1 * cov01;

  FitResult out;
  out.converged = true;
  out.iterations = 0;
  out.residual_rms = std::sqrt(rss / nn);
  out.params.push_back(param("f0_zero", c0, std::sqrt(var_c0), true, "Hz"));
  out.params.push_back(param("I_star", i_star, std::sqrt(std::max(var_is, 0.0)), true, "A"));
  return out;
}

// ---------------------------------------------------------------- gain profile

FitResult fit_gain_profile(const Trace& trace, std::optional<double> kappa_hint,
                           const LmOptions& options) {
  require_kind(trace, TraceKind::gain_db, 5);
  if (kappa_hint && !(*kappa_hint > 0.0)) throw ValidationError("kappa hint must be > 0");
  const std::size_t n = trace.size();
  const auto y = trace.y();
  const double f_ref = trace.x()[n / 2];
  const auto xs = shifted(trace.x(), f_ref);
  std::vector<double> lin(n);
  for (std::size_t i = 0; i < n; ++i) lin[i] = from_db(y[i]);

  const auto kmax = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const auto kmin = static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
  const double span = xs.back() - xs.front();

  std::vector<Eigen::VectorXd> starts;
  double kappa0 = 0.0;
  if (y[kmax] >= 1.0) {
    const double g_peak = lin[kmax];
    const auto w = half_width(xs, lin, kmax, 1.0);
    const double width = w ? *w : 0.25 * span;
    constexpr double eta0 = 0.9;
    kappa0 = kappa_hint ? *kappa_hint
                        : (g_peak > 10.0 ? std::sqrt(g_peak) * width / eta0 : width);
    const double x2 = std::clamp(1.0 - 2.0 * eta0 / (std::sqrt(g_peak) + 1.0), 0.0, 1.0 - 1e-9);
    Eigen::VectorXd p(4);
    p << 0.5 * std::sqrt(x2) * kappa0, eta0 * kappa0, (1.0 - eta0) * kappa0, xs[kmax];
    starts.push_back(p);
  } else {
    const double depth = lin[kmin];
    std::vector<double> absorbed(n);
    for (std::size_t i = 0; i < n; ++i) absorbed[i] = 1.0 - lin[i];
    const auto w = half_width(xs, absorbed, kmin, 0.0);
    kappa0 = kappa_hint ? *kappa_hint : (w ? *w : 0.25 * span);
    const double eta0 = std::clamp(0.5 * (1.0 + std::sqrt(depth)), 0.05, 1.0);
    for (double gfrac : {0.0, 0.1}) {
      Eigen::VectorXd p(4);
      p << gfrac * kappa0, eta0 * kappa0, (1.0 - eta0) * kappa0, xs[kmin];
      starts.push_back(p);
    }
  }
  if (!(kappa0 > 0.0)) throw IllConditioned("gain profile width not resolved");

  auto residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    const double g = p(0);
    const double ke = p(1);
    const double k = p(1) + p(2);
    if (!(ke > 0.0) || !(k > 0.0)) {
      r.setConstant(kNaN);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const complex u = 0.5 * k - kI * (xs[i] - p(3));
      const complex gs = ke * u / (u * u - g * g) - 1.0;
      r(static_cast<Eigen::Index>(i)) = to_db(std::norm(gs)) - y[i];
    }
  };
  Eigen::VectorXd scale(4);
  scale << 0.5 * kappa0, kappa0, kappa0, kappa0;

  std::optional<LmResult> best;
  for (const auto& p0 : starts) {
    auto lm = levenberg_marquardt(residuals, static_cast<Eigen::Index>(n), p0, scale, options);
    const bool better = !best || (lm.converged && !best->converged) ||
                        (lm.converged == best->converged && lm.rss < best->rss);
    if (better) best = std::move(lm);
  }
  const auto& lm = *best;
  require_converged(lm, "gain profile fit");

  const double g = std::abs(lm.params(0));
  const double kappa = lm.params(1) + lm.params(2);
  if (g >= 0.5 * kappa) {
    std::ostringstream os;
    os << "best-fit g = " << g << " Hz is at or above kappa/2 = " << 0.5 * kappa << " Hz";
    throw UnstableFit(os.str());
  }

  FitResult out;
  out.converged = true;
  out.iterations = lm.iterations;
  out.residual_rms = std::sqrt(lm.rss / static_cast<double>(n));
  out.params.push_back(param("g", g, lm.sigma(0), true, "Hz"));
  out.params.push_back(param("kappa_e", lm.params(1), lm.sigma(1), true, "Hz"));
  out.params.push_back(param("kappa_i", lm.params(2), lm.sigma(2), true, "Hz"));
  out.params.push_back(param("f_center", lm.params(3) + f_ref, lm.sigma(3), true, "Hz"));
  if (lm.params(2) < 0.0) out.warnings.push_back("kappa_i fitted negative");
  return out;
}

// ---------------------------------------------------------------- noise vs temperature

FitResult fit_noise_temperature(const Trace& trace, double omega, const LmOptions& options) {
  require_kind(trace, TraceKind::noise_psd, 3);
  if (!(omega > 0.0)) throw ValidationError("omega must be > 0");
  const std::size_t n = trace.size();
  const auto t = trace.x();
  const auto y = trace.y();
  if (t.front() < 0.0) throw ValidationError("temperatures must be >= 0");
  const double quantum = constants::hbar * omega;

  // Rayleigh-Jeans start: slope of the hot half, intercept at T = 0.
  const std::size_t first = n / 2 >= 2 ? n - n / 2 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n - first);
  for (std::size_t i = first; i < n; ++i) {
    sx += t[i];
    sy += y[i];
    sxx += t[i] * t[i];
    sxy += t[i] * y[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double g0 = slope / constants::k_boltzmann;
  double n0 = intercept / (g0 * quantum);
  if (!(g0 > 0.0) || !std::isfinite(n0)) {
    g0 = std::abs(y[n - 1]) / (quantum * (half_coth(omega, t[n - 1]) + 0.5));
    n0 = 0.5;
  }

  double ymean = 0.0;
  for (double v : y) ymean += std::abs(v);
  ymean /= static_cast<double>(n);
  if (!(ymean > 0.0)) throw IllConditioned("noise trace is identically zero");

  std::vector<double> occ(n);
  for (std::size_t i = 0; i < n; ++i) occ[i] = half_coth(omega, t[i]);
  auto residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (std::size_t i = 0; i < n; ++i) {
      r(static_cast<Eigen::Index>(i)) = (p(0) * quantum * (occ[i] + p(1)) - y[i]) / ymean;
    }
  };
  Eigen::VectorXd p0(2), scale(2);
  p0 << g0, n0;
  scale << std::abs(g0), 1.0;
  const auto lm = levenberg_marquardt(residuals, static_cast<Eigen::Index>(n), p0, scale, options);
  require_converged(lm, "noise temperature fit");

  const double n_add = lm.params(1);
  if (n_add + 3.0 * lm.sigma(1) < 0.0) {
    throw NonPhysical("fitted n_add = " + std::to_string(n_add) + " is negative beyond 3 sigma");
  }
  FitResult out;
  out.converged = true;
  out.iterations = lm.iterations;
  out.residual_rms = std::sqrt(lm.rss / static_cast<double>(n)) * ymean;
  out.params.push_back(param("G_tot", lm.params(0), lm.sigma(0), true, "1"));
  out.params.push_back(param("n_add", n_add, lm.sigma(1), true, "quanta"));
  return out;
}

// ---------------------------------------------------------------- Lorentzian

FitResult fit_lorentzian(const Trace& trace, const LmOptions& options) {
  require_kind(trace, TraceKind::gain_db, 5);
  const std::size_t n = trace.size();
  const double f_ref = trace.x()[n / 2];
  const auto xs = shifted(trace.x(), f_ref);
  std::vector<double> lin(n);
  for (std::size_t i = 0; i < n; ++i) lin[i] = from_db(trace.y()[i]);

  const auto [lo_it, hi_it] = std::minmax_element(lin.begin(), lin.end());
  const double ymin = *lo_it;
  const double ymax = *hi_it;
  if (!(ymax - ymin > 1e-9 * std::abs(ymax))) throw NoPeak("trace is flat");
  const auto peaks = find_peaks(lin, 0.25 * (ymax - ymin));
  if (peaks.empty()) throw NoPeak("no interior peak on the grid");
  if (peaks.size() > 1) {
    throw NoPeak(std::to_string(peaks.size()) + " separate peaks; expected a single line");
  }
  const std::size_t k = peaks.front().index;
  const double b0 = ymin;
  const double a0 = lin[k] - b0;
  const auto w = half_width(xs, lin, k, b0);
  std::size_t above = 0;
  for (double v : lin) above += v >= b0 + 0.5 * a0 ? 1 : 0;
  if (!w || !(*w > 0.0) || above < 3) throw NoPeak("peak not resolved on the grid");

  auto residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (xs[i] - p(1)) / (0.5 * p(2));
      r(static_cast<Eigen::Index>(i)) = (p(0) / (1.0 + u * u) + p(3) - lin[i]) / a0;
    }
  };
  Eigen::VectorXd p0(4), scale(4);
  p0 << a0, xs[k], *w, b0;
  scale << a0, *w, *w, std::max(std::abs(b0), 1e-6 * a0);
  const auto lm = levenberg_marquardt(residuals, static_cast<Eigen::Index>(n), p0, scale, options);
  require_converged(lm, "Lorentzian fit");

  const double a = lm.params(0);
  const double b = lm.params(3);
  const double var_peak = lm.covariance(0, 0) + lm.covariance(3, 3) + 2.0 * lm.covariance(0, 3);
  const double sigma_peak = std::isinf(lm.sigma(0)) || std::isinf(lm.sigma(3))
                                ? std::numeric_limits<double>::infinity()
                                : std::sqrt(std::max(var_peak, 0.0));
  FitResult out;
  out.converged = true;
  out.iterations = lm.iterations;
  out.residual_rms = std::sqrt(lm.rss / static_cast<double>(n)) * a0;
  out.params.push_back(param("peak_lin", a + b, sigma_peak, true, "1"));
  out.params.push_back(param("f_peak", lm.params(1) + f_ref, lm.sigma(1), true, "Hz"));
  out.params.push_back(param("fwhm", std::abs(lm.params(2)), lm.sigma(2), true, "Hz"));
  out.params.push_back(param("baseline", b, lm.sigma(3), true, "1"));
  return out;
}

}  // namespace kipa::fit
