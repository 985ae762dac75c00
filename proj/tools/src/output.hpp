#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace shiftlab::cli {

/// Shortest round-trip decimal form, '.' separator, independent of the locale.
std::string fmt(double x);

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(const std::string& s);

/// One CSV record terminated by CRLF.
std::string csv_row(const std::vector<std::string>& fields);

/// Writes to `path.tmp` and renames over `path`.
void atomic_write(const std::string& path, const std::string& bytes);

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

/// Fixed colormap on [0, 1] through pinned control points.
Rgb colormap(double t);

/// 8-bit RGB PNG, rows top to bottom, no timestamp or text chunks.
std::string encode_png(const std::vector<Rgb>& pixels, int width, int height);

}  // namespace shiftlab::cli
