#pragma once

#include <stdexcept>
#include <string>

namespace nph {

/// Filesystem-level failure (open/read/write).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// File content is not a valid table (bad magic, version, or structure).
/// Reported distinctly from io_error so callers can tell corruption from
/// filesystem trouble.
struct format_error : std::runtime_error {
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

/// Table construction failed (insertion overflow, hash family exhaustion).
struct build_error : std::runtime_error {
    explicit build_error(const std::string& what) : std::runtime_error(what) {}
};

/// A search ran out of probes without hitting a match or an empty slot.
/// Cannot happen for tables built here (fill factor < 1 leaves empties).
struct search_error : std::runtime_error {
    explicit search_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nph
