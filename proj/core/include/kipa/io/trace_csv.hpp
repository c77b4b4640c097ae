#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "kipa/fit/trace.hpp"

namespace kipa::io {

/// Column header line for each trace kind.
std::string_view trace_columns(fit::TraceKind kind) noexcept;

/// Parses `# kind=<kind>`, the column header, then one row per point.
/// Throws ParseError (with the line number) on malformed text and
/// SchemaMismatch on a kind or header mismatch or non-increasing x.
fit::Trace parse_trace(std::string_view text, std::optional<fit::TraceKind> expected = std::nullopt);

/// A missing or unreadable file is reported as ParseError.
fit::Trace load_trace(const std::filesystem::path& path,
                      std::optional<fit::TraceKind> expected = std::nullopt);

/// Shortest round-trip decimal representation of every value.
std::string format_trace(const fit::Trace& trace);
void save_trace(const fit::Trace& trace, const std::filesystem::path& path);

/// Plot-ready two-column CSV (for example `freq_hz,gain_db` or `phase_rad,gain_db`).
std::string format_columns(std::string_view header, std::span<const double> x,
                           std::span<const double> y);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace kipa::io
