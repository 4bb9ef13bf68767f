#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "bobench/engine.hpp"

namespace bobench {

/// Line-delimited trace format: a header record, one record per evaluation
/// (initial design and decisions), and a closing summary record. Doubles are
/// serialized round-trippable, so replay sees the exact evaluated points.
void write_trace(const RunTrace& trace, std::ostream& os);
void write_trace_file(const RunTrace& trace, const std::filesystem::path& path);

RunTrace read_trace(std::istream& is);
RunTrace read_trace_file(const std::filesystem::path& path);

/// True when the file ends with a complete summary record.
bool trace_file_complete(const std::filesystem::path& path);

/// Equality of everything that is seed-determined (timing excluded).
bool traces_equivalent(const RunTrace& a, const RunTrace& b);

}  // namespace bobench
