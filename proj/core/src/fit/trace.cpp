#include "kipa/fit/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kipa/errors.hpp"

namespace kipa::fit {

const char* to_string(TraceKind kind) noexcept {
  switch (kind) {
    case TraceKind::reflection: return "reflection";
    case TraceKind::gain_db: return "gain_db";
    case TraceKind::noise_psd: return "noise_psd";
    case TraceKind::bias_shift: return "bias_shift";
  }
  return "unknown";
}

std::optional<TraceKind> parse_trace_kind(std::string_view text) noexcept {
  for (auto k : {TraceKind::reflection, TraceKind::gain_db, TraceKind::noise_psd,
                 TraceKind::bias_shift}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

Trace::Trace(TraceKind kind, std::vector<double> x, std::vector<double> y)
    : kind_(kind), x_(std::move(x)), y_real_(std::move(y)) {
  if (kind == TraceKind::reflection) {
    throw ValidationError("reflection traces carry complex values");
  }
  if (x_.size() != y_real_.size()) throw ValidationError("trace x and y lengths differ");
  for (double v : y_real_) {
    if (!std::isfinite(v)) throw ValidationError("trace values must be finite");
  }
  check_x();
}

Trace::Trace(std::vector<double> x, std::vector<complex> y)
    : kind_(TraceKind::reflection), x_(std::move(x)), y_complex_(std::move(y)) {
  if (x_.size() != y_complex_.size()) throw ValidationError("trace x and y lengths differ");
  for (const auto& v : y_complex_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("trace values must be finite");
    }
  }
  check_x();
}

void Trace::check_x() const {
  for (double v : x_) {
    if (!std::isfinite(v)) throw ValidationError("trace x values must be finite");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw ValidationError("trace x must be strictly increasing");
  }
}

namespace {

std::vector<std::size_t> order_of(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  return idx;
}

template <typename T>
std::vector<T> permute(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v.at(i));
  return out;
}

}  // namespace

Trace Trace::from_unsorted(TraceKind kind, std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw ValidationError("trace x and y lengths differ");
  const auto idx = order_of(x);
  return Trace(kind, permute(x, idx), permute(y, idx));
}

Trace Trace::from_unsorted(std::vector<double> x, std::vector<complex> y) {
  if (x.size() != y.size()) throw ValidationError("trace x and y lengths differ");
  const auto idx = order_of(x);
  return Trace(permute(x, idx), permute(y, idx));
}

}  // namespace kipa::fit
