#include "kipa/io/trace_csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "kipa/errors.hpp"

namespace kipa::io {

namespace {

using fit::Trace;
using fit::TraceKind;

std::string at_line(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double parse_number(std::string_view field, std::size_t line) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(at_line(line, "cannot parse number '" + std::string(field) + "'"));
  }
  if (!std::isfinite(v)) throw ParseError(at_line(line, "non-finite value"));
  return v;
}

}  // namespace

std::string_view trace_columns(TraceKind kind) noexcept {
  switch (kind) {
    case TraceKind::reflection: return "freq_hz,re,im";
    case TraceKind::gain_db: return "freq_hz,gain_db";
    case TraceKind::noise_psd: return "temp_k,psd_w_per_hz";
    case TraceKind::bias_shift: return "idc_a,freq_hz";
  }
  return "";
}

Trace parse_trace(std::string_view text, std::optional<TraceKind> expected) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(at_line(1, "empty trace file"));

  constexpr std::string_view prefix = "# kind=";
  if (lines[0].substr(0, prefix.size()) != prefix) {
    throw ParseError(at_line(1, "expected '# kind=<kind>' header"));
  }
  const auto kind = fit::parse_trace_kind(lines[0].substr(prefix.size()));
  if (!kind) {
    throw SchemaMismatch(at_line(1, "unknown trace kind '" +
                                        std::string(lines[0].substr(prefix.size())) + "'"));
  }
  if (expected && *expected != *kind) {
    throw SchemaMismatch(at_line(1, std::string("expected kind ") + fit::to_string(*expected) +
                                        ", file declares " + fit::to_string(*kind)));
  }
  if (lines.size() < 2 || lines[1] != trace_columns(*kind)) {
    throw SchemaMismatch(at_line(2, "expected column header '" +
                                        std::string(trace_columns(*kind)) + "'"));
  }
  const std::size_t columns = *kind == TraceKind::reflection ? 3 : 2;

  std::vector<double> x;
  std::vector<double> yr;
  std::vector<complex> yc;
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view row = lines[li];
    if (row.empty()) throw ParseError(at_line(line_no, "blank row"));
    std::array<double, 3> v{};
    std::size_t col = 0;
    while (true) {
      const auto comma = row.find(',');
      if (col >= columns) throw ParseError(at_line(line_no, "too many columns"));
      v[col++] = parse_number(row.substr(0, comma), line_no);
      if (comma == std::string_view::npos) break;
      row.remove_prefix(comma + 1);
    }
    if (col != columns) {
      throw ParseError(at_line(line_no, "expected " + std::to_string(columns) + " columns"));
    }
    if (!x.empty() && !(v[0] > x.back())) {
      throw SchemaMismatch(at_line(line_no, "first column must be strictly increasing"));
    }
    x.push_back(v[0]);
    if (*kind == TraceKind::reflection) {
      yc.emplace_back(v[1], v[2]);
    } else {
      yr.push_back(v[1]);
    }
  }
  if (*kind == TraceKind::reflection) return Trace(std::move(x), std::move(yc));
  return Trace(*kind, std::move(x), std::move(yr));
}

Trace load_trace(const std::filesystem::path& path, std::optional<TraceKind> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open trace file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_trace(ss.str(), expected);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_trace(const Trace& trace) {
  std::string out = "# kind=";
  out += fit::to_string(trace.kind());
  out += '\n';
  out += trace_columns(trace.kind());
  out += '\n';
  const auto x = trace.x();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += format_double(x[i]);
    if (trace.is_complex()) {
      out += ',' + format_double(trace.y_complex()[i].real());
      out += ',' + format_double(trace.y_complex()[i].imag());
    } else {
      out += ',' + format_double(trace.y()[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void save_trace(const Trace& trace, const std::filesystem::path& path) {
  write_text(path, format_trace(trace));
}

std::string format_columns(std::string_view header, std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("column lengths differ");
  std::string out(header);
  out += '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += format_double(x[i]);
    out += ',';
    out += format_double(y[i]);
    out += '\n';
  }
  return out;
}

}  // namespace kipa::io
