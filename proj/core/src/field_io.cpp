#include "fracsem/field_io.hpp"

#include "fracsem/error.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

namespace fracsem {

namespace {

void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
        out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xffu));
    }
}

std::uint64_t get_le(std::span<const unsigned char> bytes, std::size_t offset, int count) {
    std::uint64_t v = 0;
    for (int i = 0; i < count; ++i) {
        v |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
    }
    return v;
}

}  // namespace

void append_f64(std::vector<unsigned char>& out, double v) {
    put_le(out, std::bit_cast<std::uint64_t>(v), 8);
}

double read_f64(std::span<const unsigned char> bytes, std::size_t offset) {
    return std::bit_cast<double>(get_le(bytes, offset, 8));
}

std::vector<unsigned char> encode_header(const FieldFileHeader& h) {
    std::vector<unsigned char> out{'F', 'S', 'G', 'F'};
    put_le(out, h.version, 2);
    put_le(out, static_cast<std::uint64_t>(h.n), 1);
    put_le(out, h.rule, 1);
    put_le(out, h.points_per_axis, 4);
    put_le(out, h.y_count, 4);
    append_f64(out, h.half_width);
    append_f64(out, h.s);
    return out;
}

FieldFileHeader decode_header(std::span<const unsigned char> bytes) {
    if (bytes.size() < kFieldHeaderBytes) {
        throw Error(ErrorCode::header_mismatch, "file shorter than the 32-byte header");
    }
    if (std::memcmp(bytes.data(), "FSGF", 4) != 0) {
        throw Error(ErrorCode::header_mismatch, "bad magic, expected FSGF");
    }
    FieldFileHeader h;
    h.version = static_cast<std::uint16_t>(get_le(bytes, 4, 2));
    if (h.version != kFieldFormatVersion) {
        throw Error(ErrorCode::header_mismatch, "unsupported format version " + std::to_string(h.version));
    }
    h.n = static_cast<int>(bytes[6]);
    h.rule = bytes[7];
    h.points_per_axis = static_cast<std::uint32_t>(get_le(bytes, 8, 4));
    h.y_count = static_cast<std::uint32_t>(get_le(bytes, 12, 4));
    h.half_width = read_f64(bytes, 16);
    h.s = read_f64(bytes, 24);
    if (h.n < 1 || h.n > 3) {
        throw Error(ErrorCode::validation, "dimension in header must be 1, 2 or 3");
    }
    if (!is_power_of_two(h.points_per_axis) || h.points_per_axis < 16) {
        throw Error(ErrorCode::validation, "M in header must be a power of two >= 16");
    }
    return h;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const unsigned char> bytes) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::io, "cannot open " + tmp.string() + " for writing");
        }
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            throw Error(ErrorCode::io, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::io, "cannot rename into " + path.string());
    }
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
    write_file_atomic(path, std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void save_field(const GridField& g, const std::filesystem::path& path, double s, std::uint8_t rule) {
    FieldFileHeader h;
    h.n = g.n();
    h.rule = rule;
    h.points_per_axis = static_cast<std::uint32_t>(g.points_per_axis());
    h.half_width = g.half_width();
    h.s = s;
    auto bytes = encode_header(h);
    bytes.reserve(kFieldHeaderBytes + 8 * g.size());
    for (double v : g.values()) {
        append_f64(bytes, v);
    }
    write_file_atomic(path, bytes);
}

GridField load_field(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const FieldFileHeader h = decode_header(bytes);
    if (h.y_count != 0) {
        throw Error(ErrorCode::header_mismatch, "file holds an extension field, not a grid field");
    }
    std::size_t count = 1;
    for (int i = 0; i < h.n; ++i) {
        count *= h.points_per_axis;
    }
    if (bytes.size() != kFieldHeaderBytes + 8 * count) {
        throw Error(ErrorCode::header_mismatch, "payload size does not match header (expected " +
                                                    std::to_string(count) + " values)");
    }
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = read_f64(bytes, kFieldHeaderBytes + 8 * i);
    }
    return GridField(h.n, h.half_width, static_cast<int>(h.points_per_axis), std::move(values),
                     path.filename().string());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string field_csv(const GridField& g) {
    std::string out;
    for (int a = 0; a < g.n(); ++a) {
        out += "x" + std::to_string(a + 1) + ",";
    }
    out += "value\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point p = g.point(i);
        for (int a = 0; a < g.n(); ++a) {
            out += format_double(p[a]);
            out += ',';
        }
        out += format_double(g[i]);
        out += '\n';
    }
    return out;
}

void save_field_csv(const GridField& g, const std::filesystem::path& path) {
    write_text_atomic(path, field_csv(g));
}

}  // namespace fracsem
