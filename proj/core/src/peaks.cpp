#include "kipa/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kipa {

std::vector<Peak> find_peaks(std::span<const double> y, double min_prominence) {
  std::vector<Peak> out;
  const std::size_t n = y.size();
  if (n < 3) return out;

  std::size_t i = 1;
  while (i + 1 < n) {
    if (std::isnan(y[i]) || std::isnan(y[i - 1]) || !(y[i - 1] < y[i])) {
      ++i;
      continue;
    }
    std::size_t ahead = i + 1;
    while (ahead + 1 < n && y[ahead] == y[i]) ++ahead;
    if (!std::isnan(y[ahead]) && y[ahead] < y[i]) {
      const std::size_t mid = (i + ahead - 1) / 2;
      const double v = y[mid];

      double left_min = v;
      for (std::size_t k = i; k-- > 0;) {
        if (std::isnan(y[k]) || y[k] > v) break;
        left_min = std::min(left_min, y[k]);
      }
      double right_min = v;
      for (std::size_t k = ahead; k < n; ++k) {
        if (std::isnan(y[k]) || y[k] > v) break;
        right_min = std::min(right_min, y[k]);
      }
      const double prom = v - std::max(left_min, right_min);
      if (prom >= min_prominence) out.push_back({mid, v, prom});
      i = ahead;
    } else {
      i = ahead;
    }
  }
  return out;
}

double refine_peak(std::span<const double> x, std::span<const double> y, std::size_t index) {
  if (index == 0 || index + 1 >= x.size()) return x[index];
  const double x0 = x[index - 1], x1 = x[index], x2 = x[index + 1];
  const double y0 = y[index - 1], y1 = y[index], y2 = y[index + 1];
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double curv = (d2 - d1) / (x2 - x0);
  if (!(curv < 0.0)) return x1;
  const double xv = 0.5 * (x0 + x1) - d1 / (2.0 * curv);
  return std::clamp(xv, x0, x2);
}

}  // namespace kipa
