#pragma once
// image.hpp - 8-bit grayscale raster plus deterministic test-pattern
// synthesis.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace vbp {

/// Row-major 8-bit grayscale image.
class GrayImage {
public:
    GrayImage() = default;

    GrayImage(std::size_t width, std::size_t height, std::uint8_t fill = 0)
        : width_(width), height_(height), pixels_(width * height, fill) {
        if (width == 0 || height == 0) {
            throw std::invalid_argument("GrayImage: dimensions must be positive");
        }
    }

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::size_t height() const { return height_; }
    [[nodiscard]] std::size_t pixel_count() const { return pixels_.size(); }

    [[nodiscard]] std::uint8_t at(std::size_t x, std::size_t y) const {
        check_coords(x, y);
        return pixels_[y * width_ + x];
    }

    void set(std::size_t x, std::size_t y, std::uint8_t value) {
        check_coords(x, y);
        pixels_[y * width_ + x] = value;
    }

    [[nodiscard]] std::span<const std::uint8_t> pixels() const { return pixels_; }
    [[nodiscard]] std::span<std::uint8_t> pixels() { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    void check_coords(std::size_t x, std::size_t y) const {
        if (x >= width_ || y >= height_) {
            throw std::out_of_range("GrayImage: pixel coordinates out of range");
        }
    }

    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

// ===== synthesis =====

enum class SynthPattern { Gradient, Constant, Checker, Random };

struct SynthSpec {
    SynthPattern pattern = SynthPattern::Gradient;
    std::size_t width = 0;
    std::size_t height = 0;
    std::uint8_t constant_value = 128; // Constant only
    std::uint8_t checker_low = 0;      // Checker only
    std::uint8_t checker_high = 255;   // Checker only
    std::size_t checker_cell = 8;      // Checker only
    std::uint32_t seed = 0;            // Random only
};

/// Deterministic cover generator: identical spec, identical pixels, on any
/// platform. Gradient is (x + width * y) mod 256; random draws one mt19937
/// output per pixel and keeps the low byte.
[[nodiscard]] inline GrayImage synthesize(const SynthSpec& spec) {
    GrayImage img(spec.width, spec.height);
    switch (spec.pattern) {
        case SynthPattern::Gradient:
            for (std::size_t y = 0; y < spec.height; ++y) {
                for (std::size_t x = 0; x < spec.width; ++x) {
                    img.set(x, y, static_cast<std::uint8_t>((x + spec.width * y) & 0xff));
                }
            }
            break;
        case SynthPattern::Constant:
            std::ranges::fill(img.pixels(), spec.constant_value);
            break;
        case SynthPattern::Checker: {
            if (spec.checker_cell == 0) {
                throw std::invalid_argument("synthesize: checker cell must be positive");
            }
            for (std::size_t y = 0; y < spec.height; ++y) {
                for (std::size_t x = 0; x < spec.width; ++x) {
                    const bool high = ((x / spec.checker_cell) + (y / spec.checker_cell)) % 2 != 0;
                    img.set(x, y, high ? spec.checker_high : spec.checker_low);
                }
            }
            break;
        }
        case SynthPattern::Random: {
            std::mt19937 engine(spec.seed);
            for (std::uint8_t& px : img.pixels()) {
                px = static_cast<std::uint8_t>(engine() & 0xff);
            }
            break;
        }
    }
    return img;
}

[[nodiscard]] inline std::optional<SynthPattern> parse_synth_pattern(std::string_view text) {
    if (text == "gradient") return SynthPattern::Gradient;
    if (text == "constant") return SynthPattern::Constant;
    if (text == "checker") return SynthPattern::Checker;
    if (text == "random") return SynthPattern::Random;
    return std::nullopt;
}

} // namespace vbp
