#pragma once
// stego.hpp - bit embedding and extraction at one virtual bit-plane.
//
// Eligibility is symmetric: a pixel participates only when BOTH settings of
// the plane bit in its canonical form are themselves canonical in-range
// strings. The test never looks at the message bit, so the extractor makes
// exactly the skip decisions the embedder made, on the stego image alone.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbp/bits.hpp"
#include "vbp/image.hpp"
#include "vbp/numeral_system.hpp"

namespace vbp {

// ===== errors =====

class CapacityError : public std::runtime_error {
public:
    CapacityError(std::uint64_t required, std::uint64_t available, std::size_t plane)
        : std::runtime_error("message needs " + std::to_string(required) +
                             " bit(s) but the cover holds " + std::to_string(available) +
                             " eligible pixel(s) at plane " + std::to_string(plane)),
          required_(required),
          available_(available) {}

    [[nodiscard]] std::uint64_t required() const { return required_; }
    [[nodiscard]] std::uint64_t available() const { return available_; }

private:
    std::uint64_t required_;
    std::uint64_t available_;
};

class CorruptStreamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ===== per-bit primitives =====

namespace detail {

inline void check_plane(const NumeralSystem& system, std::size_t plane) {
    if (plane >= system.plane_count()) {
        throw std::invalid_argument("stego: plane index out of range");
    }
}

inline void check_pixel(const NumeralSystem& system, std::uint32_t pixel) {
    if (pixel > system.max_value()) {
        throw std::out_of_range("stego: pixel value out of range");
    }
}

} // namespace detail

/// True iff both plane-bit variants of the pixel's canonical form are
/// canonical values in [0, max_value].
[[nodiscard]] inline bool pixel_eligible(const NumeralSystem& system, std::size_t plane,
                                         std::uint32_t pixel) {
    detail::check_plane(system, plane);
    detail::check_pixel(system, pixel);
    std::vector<std::uint8_t> scratch;
    const auto canon = system.canonical_bits(pixel, scratch);
    std::vector<std::uint8_t> variant(canon.begin(), canon.end());
    for (std::uint8_t b : {std::uint8_t{0}, std::uint8_t{1}}) {
        variant[plane] = b;
        if (!system.is_canonical(variant)) return false;
    }
    return true;
}

struct EmbedBitResult {
    std::uint32_t new_value = 0;
    bool embedded = false;
};

/// Write `bit` into the pixel's plane bit when eligible; otherwise pass the
/// pixel through untouched.
[[nodiscard]] inline EmbedBitResult embed_bit(const NumeralSystem& system, std::size_t plane,
                                              std::uint32_t pixel, std::uint8_t bit) {
    if (bit > 1) throw std::invalid_argument("embed_bit: bit must be 0 or 1");
    if (!pixel_eligible(system, plane, pixel)) return {pixel, false};
    std::vector<std::uint8_t> scratch;
    const auto canon = system.canonical_bits(pixel, scratch);
    std::vector<std::uint8_t> variant(canon.begin(), canon.end());
    variant[plane] = bit;
    return {system.decode(variant), true};
}

/// Plane bit of an eligible pixel; nullopt is the skip marker.
[[nodiscard]] inline std::optional<std::uint8_t>
extract_bit(const NumeralSystem& system, std::size_t plane, std::uint32_t pixel) {
    if (!pixel_eligible(system, plane, pixel)) return std::nullopt;
    std::vector<std::uint8_t> scratch;
    return system.canonical_bits(pixel, scratch)[plane];
}

// ===== message-level plumbing =====

namespace detail {

// Memoized per-value answers of the primitives above, so message loops cost
// one table lookup per pixel.
struct PlaneTable {
    std::vector<std::uint8_t> eligible;
    std::vector<std::uint8_t> plane_bit;
    std::vector<std::uint32_t> variant; // [value*2 + bit], eligible values only

    PlaneTable(const NumeralSystem& system, std::size_t plane) {
        check_plane(system, plane);
        const std::size_t count = static_cast<std::size_t>(system.max_value()) + 1;
        eligible.resize(count);
        plane_bit.resize(count);
        variant.resize(count * 2);
        for (std::uint32_t v = 0; v < count; ++v) {
            eligible[v] = pixel_eligible(system, plane, v) ? 1 : 0;
            if (eligible[v]) {
                variant[v * 2 + 0] = embed_bit(system, plane, v, 0).new_value;
                variant[v * 2 + 1] = embed_bit(system, plane, v, 1).new_value;
                plane_bit[v] = *extract_bit(system, plane, v);
            } else {
                variant[v * 2 + 0] = variant[v * 2 + 1] = v;
            }
        }
    }
};

} // namespace detail

enum class Traversal { RowMajor };
enum class LengthMode { LengthPrefix, ExplicitLength };

/// Everything embed and extract must agree on.
struct EmbedPlan {
    const NumeralSystem* system = nullptr;
    std::size_t plane = 0;
    Traversal traversal = Traversal::RowMajor;
    LengthMode length_mode = LengthMode::LengthPrefix;
    std::uint64_t explicit_bits = 0; // ExplicitLength only

    void validate() const {
        if (system == nullptr) throw std::invalid_argument("EmbedPlan: system is required");
        detail::check_plane(*system, plane);
    }
};

struct EmbedReport {
    std::uint64_t bits_embedded = 0;
    std::uint64_t pixels_visited = 0;
    std::uint64_t pixels_skipped = 0;
    std::uint64_t capacity_at_plane = 0;
};

/// Count of eligible pixels, i.e. embeddable bits, in the cover.
[[nodiscard]] inline std::uint64_t capacity(const GrayImage& cover, const NumeralSystem& system,
                                            std::size_t plane) {
    const detail::PlaneTable table(system, plane);
    std::uint64_t count = 0;
    for (std::uint8_t px : cover.pixels()) count += table.eligible[px];
    return count;
}

struct EmbedResult {
    GrayImage stego;
    EmbedReport report;
};

/// Embed the message (with a 32-bit big-endian bit-count prefix unless the
/// plan says ExplicitLength) into a copy of the cover. Rejects before
/// touching any pixel when the payload cannot fit.
[[nodiscard]] inline EmbedResult embed_message(const GrayImage& cover, const EmbedPlan& plan,
                                               const BitVec& message) {
    plan.validate();
    const NumeralSystem& system = *plan.system;
    if (system.max_value() > 255) {
        throw std::invalid_argument("embed_message: system exceeds 8-bit pixel range");
    }

    BitVec payload;
    if (plan.length_mode == LengthMode::LengthPrefix) {
        if (message.size() > 0xffffffffull) {
            throw std::invalid_argument("embed_message: message too long for 32-bit length prefix");
        }
        payload.reserve(message.size() + 32);
        append_u32_be(payload, static_cast<std::uint32_t>(message.size()));
        payload.insert(payload.end(), message.begin(), message.end());
    } else {
        if (plan.explicit_bits != message.size()) {
            throw std::invalid_argument(
                "embed_message: plan.explicit_bits does not match the message length");
        }
        payload = message;
    }

    const detail::PlaneTable table(system, plan.plane);
    std::uint64_t cap = 0;
    for (std::uint8_t px : cover.pixels()) cap += table.eligible[px];
    if (payload.size() > cap) {
        throw CapacityError(payload.size(), cap, plan.plane);
    }

    EmbedResult out{cover, {}};
    out.report.capacity_at_plane = cap;
    auto pixels = out.stego.pixels();
    std::size_t next_bit = 0;
    for (std::size_t i = 0; i < pixels.size() && next_bit < payload.size(); ++i) {
        ++out.report.pixels_visited;
        const std::uint8_t px = pixels[i];
        if (!table.eligible[px]) {
            ++out.report.pixels_skipped;
            continue;
        }
        const std::uint8_t bit = payload[next_bit++];
        if (bit > 1) throw std::invalid_argument("embed_message: message contains a non-bit value");
        pixels[i] = static_cast<std::uint8_t>(table.variant[px * 2 + bit]);
        ++out.report.bits_embedded;
    }
    return out;
}

/// Recover the embedded message. The plan must match the one used to embed.
[[nodiscard]] inline BitVec extract_message(const GrayImage& stego, const EmbedPlan& plan) {
    plan.validate();
    const NumeralSystem& system = *plan.system;
    if (system.max_value() > 255) {
        throw std::invalid_argument("extract_message: system exceeds 8-bit pixel range");
    }

    const detail::PlaneTable table(system, plan.plane);
    BitVec stream;
    std::uint64_t want = plan.length_mode == LengthMode::ExplicitLength
                             ? plan.explicit_bits
                             : 32; // prefix first, then the declared payload
    bool have_length = plan.length_mode == LengthMode::ExplicitLength;

    for (std::uint8_t px : stego.pixels()) {
        if (stream.size() >= want && have_length) break;
        if (!table.eligible[px]) continue;
        stream.push_back(table.plane_bit[px]);
        if (!have_length && stream.size() == 32) {
            want = 32ull + read_u32_be(stream);
            have_length = true;
        }
        if (have_length && stream.size() >= want) break;
    }

    if (stream.size() < want) {
        throw CorruptStreamError(
            plan.length_mode == LengthMode::LengthPrefix && stream.size() < 32
                ? "stego image holds fewer eligible pixels than the 32-bit length prefix"
                : "declared message length exceeds the eligible pixels available");
    }
    if (plan.length_mode == LengthMode::LengthPrefix) {
        stream.erase(stream.begin(), stream.begin() + 32);
    }
    return stream;
}

} // namespace vbp
