#pragma once
// pgm.hpp - PGM (P5 binary, P2 ascii) reader/writer for 8-bit grayscale.
// Parse failures carry the byte offset of the offending input.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbp/image.hpp"

namespace vbp {

class PgmParseError : public std::runtime_error {
public:
    PgmParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (byte " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}

    [[nodiscard]] std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

/// Filesystem-level failure (open/write), as opposed to malformed content.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Header tokenizer: whitespace separates tokens, '#' starts a comment that
// runs to end of line.
class PgmScanner {
public:
    PgmScanner(const std::vector<char>& data) : data_(data) {}

    [[nodiscard]] std::size_t offset() const { return pos_; }
    [[nodiscard]] bool at_end() const { return pos_ >= data_.size(); }

    void skip_separators() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    /// Non-negative decimal token, bounded to keep dimensions sane.
    [[nodiscard]] std::uint32_t read_number(const char* field) {
        skip_separators();
        const std::size_t start = pos_;
        std::uint64_t value = 0;
        bool any = false;
        while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
            value = value * 10 + static_cast<std::uint64_t>(data_[pos_] - '0');
            if (value > 0xffffffffull) {
                throw PgmParseError(std::string("PGM ") + field + " is out of range", start);
            }
            ++pos_;
            any = true;
        }
        if (!any) {
            throw PgmParseError(std::string("expected PGM ") + field, pos_);
        }
        return static_cast<std::uint32_t>(value);
    }

    /// Exactly one whitespace byte after maxval, before P5 pixel data.
    void consume_single_separator() {
        if (at_end() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            throw PgmParseError("expected single whitespace before PGM pixel data", pos_);
        }
        ++pos_;
    }

    const std::vector<char>& data_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse a PGM image from an in-memory buffer.
[[nodiscard]] inline GrayImage parse_pgm(const std::vector<char>& data) {
    if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
        throw PgmParseError("not a PGM file (magic must be P2 or P5)", 0);
    }
    const bool binary = data[1] == '5';
    detail::PgmScanner scan(data);
    scan.pos_ = 2;

    const std::uint32_t width = scan.read_number("width");
    const std::uint32_t height = scan.read_number("height");
    if (width == 0 || height == 0) {
        throw PgmParseError("PGM dimensions must be positive", scan.offset());
    }
    if (static_cast<std::uint64_t>(width) * height > (std::uint64_t{1} << 30)) {
        throw PgmParseError("PGM dimensions are implausibly large", scan.offset());
    }
    const std::size_t maxval_at = (scan.skip_separators(), scan.offset());
    const std::uint32_t maxval = scan.read_number("maxval");
    if (maxval == 0 || maxval > 255) {
        throw PgmParseError("PGM maxval must be in [1, 255]", maxval_at);
    }

    GrayImage img(width, height);
    const std::size_t count = img.pixel_count();
    if (binary) {
        scan.consume_single_separator();
        if (data.size() - scan.offset() < count) {
            throw PgmParseError("PGM pixel data is truncated", data.size());
        }
        auto* dst = img.pixels().data();
        for (std::size_t i = 0; i < count; ++i) {
            dst[i] = static_cast<std::uint8_t>(data[scan.offset() + i]);
        }
    } else {
        auto* dst = img.pixels().data();
        for (std::size_t i = 0; i < count; ++i) {
            scan.skip_separators();
            const std::size_t at = scan.offset();
            if (scan.at_end()) {
                throw PgmParseError("PGM pixel data is truncated", at);
            }
            const std::uint32_t v = scan.read_number("pixel");
            if (v > maxval) {
                throw PgmParseError("PGM pixel exceeds maxval", at);
            }
            dst[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

/// Read a PGM file from disk.
[[nodiscard]] inline GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for reading: " + path);
    }
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_pgm(data);
}

/// Serialize to P5 (binary=true) or P2.
[[nodiscard]] inline std::string format_pgm(const GrayImage& img, bool binary = true) {
    std::ostringstream out;
    out << (binary ? "P5" : "P2") << '\n'
        << img.width() << ' ' << img.height() << '\n'
        << "255" << '\n';
    if (binary) {
        out.write(reinterpret_cast<const char*>(img.pixels().data()),
                  static_cast<std::streamsize>(img.pixel_count()));
    } else {
        for (std::size_t y = 0; y < img.height(); ++y) {
            for (std::size_t x = 0; x < img.width(); ++x) {
                if (x) out << ' ';
                out << static_cast<unsigned>(img.at(x, y));
            }
            out << '\n';
        }
    }
    return std::move(out).str();
}

/// Write a PGM file to disk.
inline void write_pgm(const GrayImage& img, const std::string& path, bool binary = true) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    const std::string payload = format_pgm(img, binary);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) {
        throw IoError("failed to write: " + path);
    }
}

} // namespace vbp
