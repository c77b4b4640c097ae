#include "kipa/oracle/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kipa/errors.hpp"
#include "kipa/units.hpp"

namespace kipa::oracle {

namespace {

constexpr complex kI{0.0, 1.0};

struct Demod {
  complex signal;
  complex idler;
};

}  // namespace

TimeDomainRun TimeDomainRun::make(const ResonatorParams& res, double g, double delta,
                                  double phi_p, double drive_freq, complex drive_amp) {
  TimeDomainRun run{res, g, delta, phi_p, drive_freq, drive_amp, 0.0, 0.0, 0.0};
  const double fastest =
      std::max({res.kappa(), std::abs(delta) + std::abs(drive_freq), g});
  run.step = 1.0 / (50.0 * fastest);
  const double m = run.margin();
  run.settle_time = m > 0.0 ? 20.0 / m : 0.0;
  const double min_window = 4.0 / res.kappa();
  if (drive_freq == 0.0) {
    run.sample_time = min_window;
  } else {
    // Both halves of the window must hold whole periods of 2*drive_freq.
    const double unit = 2.0 * kPi / std::abs(drive_freq);
    run.sample_time = unit * std::max(1.0, std::ceil(min_window / unit));
  }
  return run;
}

double TimeDomainRun::margin() const {
  const complex root = std::sqrt(complex(g * g - delta * delta, 0.0));
  return 0.5 * res.kappa() - root.real();
}

void TimeDomainRun::validate() const {
  const double m = margin();
  if (!(m > 0.0)) {
    throw UnstableRegime("time-domain run has no decaying margin (g = " + std::to_string(g) +
                         " rad/s)");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step must be > 0");
  if (!(settle_time >= 10.0 / m)) {
    throw ValidationError("settle time must be at least 10/margin");
  }
  if (!(sample_time > 0.0)) throw ValidationError("sample time must be > 0");
}

TimeDomainResult time_domain_gain(const TimeDomainRun& run) {
  run.validate();
  const double sqrt_ke = std::sqrt(run.res.kappa_e());
  const complex damp = -(kI * run.delta + 0.5 * run.res.kappa());
  const complex pump = -kI * run.g * std::polar(1.0, run.phi_p);
  const double w = run.drive_freq;
  const complex alpha = run.drive_amp;

  auto drive = [&](double t) { return alpha * std::exp(-kI * (w * t)); };
  auto rhs = [&](double t, complex a) {
    return damp * a + pump * std::conj(a) + sqrt_ke * drive(t);
  };

  // Whole-step grid: the window splits into two halves of equal sample count.
  const long n_half = std::max(1L, static_cast<long>(std::ceil(0.5 * run.sample_time / run.step)));
  const double h = 0.5 * run.sample_time / static_cast<double>(n_half);
  const long n_settle = static_cast<long>(std::ceil(run.settle_time / h));

  complex a{0.0, 0.0};
  double t = 0.0;
  auto advance = [&]() {
    const complex k1 = rhs(t, a);
    const complex k2 = rhs(t + 0.5 * h, a + 0.5 * h * k1);
    const complex k3 = rhs(t + 0.5 * h, a + 0.5 * h * k2);
    const complex k4 = rhs(t + h, a + h * k3);
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  };

  for (long k = 0; k < n_settle; ++k) advance();

  auto demodulate = [&]() {
    Demod d{};
    for (long k = 0; k < n_half; ++k) {
      const complex out = sqrt_ke * a - drive(t);
      d.signal += out * std::exp(kI * (w * t));
      d.idler += out * std::exp(-kI * (w * t));
      advance();
    }
    d.signal /= static_cast<double>(n_half);
    d.idler /= static_cast<double>(n_half);
    return d;
  };
  const Demod first = demodulate();
  const Demod second = demodulate();

  const double spread = std::abs(first.signal - second.signal) + std::abs(first.idler - second.idler);
  const double size = std::abs(second.signal) + std::abs(second.idler) + 1e-300;
  if (spread > 1e-3 * size) {
    std::ostringstream os;
    os << "trailing window drifts by " << spread / size << " (relative)";
    throw NotSettled(os.str());
  }

  TimeDomainResult res{};
  res.degenerate = (w == 0.0);
  res.signal = 0.5 * (first.signal + second.signal) / alpha;
  // The mirror component is driven by conj(alpha).
  res.idler = res.degenerate ? complex{} : 0.5 * (first.idler + second.idler) / std::conj(alpha);
  res.signal_gain = std::norm(res.signal);
  res.idler_gain = std::norm(res.idler);
  res.steps = n_settle + 2 * n_half;
  return res;
}

}  // namespace kipa::oracle
