#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kipa {

struct Peak {
  std::size_t index;
  double value;
  double prominence;
};

/// Local maxima whose topographic prominence reaches min_prominence.
/// Flat tops report their middle sample; NaN samples act as barriers.
std::vector<Peak> find_peaks(std::span<const double> y, double min_prominence);

/// Vertex of the parabola through (index-1, index, index+1); falls back to
/// x[index] at the edges or when the samples are collinear.
double refine_peak(std::span<const double> x, std::span<const double> y, std::size_t index);

}  // namespace kipa
