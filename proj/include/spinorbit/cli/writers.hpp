#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spinorbit/core.hpp"

namespace spinorbit::cli {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

struct PgmImage {
    std::string bytes;
    double min = 0.0;
    double max = 0.0;
};

/// Binary PGM (P5), 16-bit big-endian, linear map of [min, max] onto [0, 65535].
/// The first stored row is the top of the image (largest y).
PgmImage encode_pgm16(std::span<const double> values, std::size_t nx, std::size_t ny);

struct DecodedPgm {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<std::uint16_t> samples;  ///< file order
};

DecodedPgm decode_pgm16(const std::string& bytes);

/// Header line followed by one line per row; cells already formatted.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace spinorbit::cli
