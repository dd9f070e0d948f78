#pragma once

#include "fracsem/field.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracsem {

/// Fixed 32-byte header shared by grid and extension files.
///
///   offset 0  magic "FSGF"
///   offset 4  version (u16)
///   offset 6  n (u8)
///   offset 7  rule (u8): 0 sampled, 1 trapezoid, 2 gauss-legendre panels
///   offset 8  M (u32)
///   offset 12 y-node count (u32), 0 for plain grid fields
///   offset 16 L (f64)
///   offset 24 s (f64), 0 when not applicable
///
/// All integers and floats are little-endian.
struct FieldFileHeader {
    std::uint16_t version = 1;
    int n = 1;
    std::uint8_t rule = 0;
    std::uint32_t points_per_axis = 0;
    std::uint32_t y_count = 0;
    double half_width = 0.0;
    double s = 0.0;
};

inline constexpr std::size_t kFieldHeaderBytes = 32;
inline constexpr std::uint16_t kFieldFormatVersion = 1;

std::vector<unsigned char> encode_header(const FieldFileHeader& h);
FieldFileHeader decode_header(std::span<const unsigned char> bytes);
void append_f64(std::vector<unsigned char>& out, double v);
double read_f64(std::span<const unsigned char> bytes, std::size_t offset);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const unsigned char> bytes);
void write_text_atomic(const std::filesystem::path& path, std::string_view text);
std::vector<unsigned char> read_file(const std::filesystem::path& path);

void save_field(const GridField& g, const std::filesystem::path& path, double s = 0.0,
                std::uint8_t rule = 0);
GridField load_field(const std::filesystem::path& path);

/// One row per grid point: coordinates x1..xn then value, 17 significant digits.
std::string field_csv(const GridField& g);
void save_field_csv(const GridField& g, const std::filesystem::path& path);

/// "%.17g" formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace fracsem
