#include "spinorbit/cli/writers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>

namespace spinorbit::cli {

std::string format_double(double v) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, result.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::IoError, "cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw Error(ErrorKind::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::IoError, "cannot move output into place at " + path.string());
    }
}

PgmImage encode_pgm16(std::span<const double> values, std::size_t nx, std::size_t ny) {
    if (values.size() != nx * ny || values.empty())
        throw Error(ErrorKind::InvalidArgument, "image size does not match its dimensions");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    PgmImage image{"P5\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n65535\n", *lo, *hi};
    image.bytes.reserve(image.bytes.size() + 2 * values.size());
    const double span = image.max - image.min;
    for (std::size_t row = 0; row < ny; ++row) {
        const std::size_t j = ny - 1 - row;
        for (std::size_t i = 0; i < nx; ++i) {
            const double v = values[j * nx + i];
            const double scaled = span > 0.0 ? (v - image.min) / span * 65535.0 : 0.0;
            const auto sample = static_cast<std::uint16_t>(std::clamp(std::lround(scaled), 0L, 65535L));
            image.bytes.push_back(static_cast<char>(sample >> 8));
            image.bytes.push_back(static_cast<char>(sample & 0xff));
        }
    }
    return image;
}

DecodedPgm decode_pgm16(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string magic;
    DecodedPgm out;
    int maxval = 0;
    in >> magic >> out.nx >> out.ny >> maxval;
    if (magic != "P5" || maxval != 65535 || !in) throw Error(ErrorKind::ParseError, "not a 16-bit P5 image");
    in.get();
    const std::size_t header = static_cast<std::size_t>(in.tellg());
    if (bytes.size() != header + 2 * out.nx * out.ny) throw Error(ErrorKind::ParseError, "truncated PGM payload");
    out.samples.resize(out.nx * out.ny);
    for (std::size_t k = 0; k < out.samples.size(); ++k) {
        const auto hi = static_cast<unsigned char>(bytes[header + 2 * k]);
        const auto lo = static_cast<unsigned char>(bytes[header + 2 * k + 1]);
        out.samples[k] = static_cast<std::uint16_t>((hi << 8) | lo);
    }
    return out;
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto append_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out += ',';
            out += cells[c];
        }
        out += '\n';
    };
    append_row(header);
    for (const auto& r : rows) append_row(r);
    return out;
}

}  // namespace spinorbit::cli
