#pragma once
// bits.hpp - message bit streams and byte packing helpers.

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace vbp {

/// A message as individual bits, values 0/1, transmission order.
using BitVec = std::vector<std::uint8_t>;

/// Serialize bytes to bits, most significant bit of each byte first.
[[nodiscard]] inline BitVec bits_from_bytes(std::span<const std::uint8_t> bytes) {
    BitVec bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t byte : bytes) {
        for (int shift = 7; shift >= 0; --shift) {
            bits.push_back(static_cast<std::uint8_t>((byte >> shift) & 1));
        }
    }
    return bits;
}

/// Pack bits back to bytes (MSB first); a trailing partial byte is zero-padded.
[[nodiscard]] inline std::vector<std::uint8_t> bytes_from_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) {
            throw std::invalid_argument("bytes_from_bits: stream contains a non-bit value");
        }
        if (bits[i]) {
            bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
        }
    }
    return bytes;
}

/// Deterministic message bits: raw mt19937 outputs, one low bit per draw.
[[nodiscard]] inline BitVec random_bits(std::uint32_t seed, std::size_t count) {
    std::mt19937 engine(seed);
    BitVec bits(count);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(engine() & 1u);
    }
    return bits;
}

/// Cycle `base` until the stream is exactly `length` bits (truncates a longer base).
[[nodiscard]] inline BitVec repeat_to_length(const BitVec& base, std::size_t length) {
    if (base.empty()) {
        throw std::invalid_argument("repeat_to_length: empty base message");
    }
    BitVec bits(length);
    for (std::size_t i = 0; i < length; ++i) {
        bits[i] = base[i % base.size()];
    }
    return bits;
}

inline void append_u32_be(BitVec& bits, std::uint32_t value) {
    for (int shift = 31; shift >= 0; --shift) {
        bits.push_back(static_cast<std::uint8_t>((value >> shift) & 1u));
    }
}

[[nodiscard]] inline std::uint32_t read_u32_be(std::span<const std::uint8_t> bits) {
    if (bits.size() < 32) {
        throw std::invalid_argument("read_u32_be: fewer than 32 bits");
    }
    std::uint32_t value = 0;
    for (std::size_t i = 0; i < 32; ++i) {
        value = (value << 1) | (bits[i] & 1u);
    }
    return value;
}

} // namespace vbp
