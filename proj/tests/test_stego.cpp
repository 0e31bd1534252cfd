#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "vbp/bits.hpp"
#include "vbp/image.hpp"
#include "vbp/stego.hpp"

using vbp::BitVec;
using vbp::EmbedPlan;
using vbp::GrayImage;
using vbp::LengthMode;
using vbp::NumeralSystem;
using vbp::SynthPattern;
using vbp::WeightKind;

namespace {

const NumeralSystem& natural8() {
    static const auto sys = NumeralSystem::for_bit_depth(WeightKind::Natural, 8);
    return sys;
}

std::uint64_t eligible_count(const NumeralSystem& sys, std::size_t plane) {
    std::uint64_t count = 0;
    for (std::uint32_t v = 0; v <= sys.max_value(); ++v) {
        count += vbp::pixel_eligible(sys, plane, v) ? 1 : 0;
    }
    return count;
}

GrayImage gradient(std::size_t w, std::size_t h) {
    return vbp::synthesize({SynthPattern::Gradient, w, h});
}

} // namespace

TEST_CASE("toy example: flipping the top plane of 6 breaks canonicity") {
    const auto sys = NumeralSystem::with_plane_count(WeightKind::Natural, 3);
    // 6 = "111"; clearing plane 2 gives "011", the discarded duplicate of 3
    REQUIRE_FALSE(vbp::pixel_eligible(sys, 2, 6));
    const auto [value, embedded] = vbp::embed_bit(sys, 2, 6, 0);
    REQUIRE_FALSE(embedded);
    REQUIRE(value == 6);
    REQUIRE_FALSE(vbp::extract_bit(sys, 2, 6).has_value());
}

TEST_CASE("eligible pixel keeps its value when the bit already matches") {
    const auto& sys = natural8();
    for (std::size_t plane : {std::size_t{0}, std::size_t{5}, std::size_t{22}}) {
        for (std::uint32_t v = 0; v <= 255; ++v) {
            if (!vbp::pixel_eligible(sys, plane, v)) continue;
            const auto current = *vbp::extract_bit(sys, plane, v);
            const auto same = vbp::embed_bit(sys, plane, v, current);
            REQUIRE(same.embedded);
            REQUIRE(same.new_value == v);
        }
    }
}

TEST_CASE("pinned eligibility counts over all 256 pixel values") {
    REQUIRE(eligible_count(natural8(), 0) == 34);
    REQUIRE(eligible_count(natural8(), 1) == 34);
    REQUIRE(eligible_count(natural8(), 11) == 46);
    REQUIRE(eligible_count(natural8(), 22) == 46);

    const auto prime = NumeralSystem::for_bit_depth(WeightKind::Prime, 8);
    REQUIRE(eligible_count(prime, 0) == 180);
    REQUIRE(eligible_count(prime, 7) == 60);

    const auto fib = NumeralSystem::for_bit_depth(WeightKind::FibonacciP, 8, 1);
    REQUIRE(eligible_count(fib, 0) == 196);
    REQUIRE(eligible_count(fib, 10) == 224);

    const auto binary = NumeralSystem::for_bit_depth(WeightKind::Binary, 8);
    for (std::size_t plane = 0; plane < 8; ++plane) {
        REQUIRE(eligible_count(binary, plane) == 256);
    }
}

TEST_CASE("first eligible and ineligible natural pixels at plane 0") {
    const auto& sys = natural8();
    const std::uint32_t eligible[] = {0, 1, 23, 24, 45, 46};
    for (std::uint32_t v : eligible) REQUIRE(vbp::pixel_eligible(sys, 0, v));
    for (std::uint32_t v = 2; v <= 13; ++v) REQUIRE_FALSE(vbp::pixel_eligible(sys, 0, v));
}

TEST_CASE("embedding moves an eligible pixel by exactly the plane weight or not at all") {
    for (auto [kind, p] : {std::pair{WeightKind::Natural, 1u}, {WeightKind::Prime, 1u},
                           {WeightKind::Binary, 1u}, {WeightKind::FibonacciP, 1u}}) {
        const auto sys = NumeralSystem::for_bit_depth(kind, 8, p);
        for (std::size_t plane = 0; plane < sys.plane_count(); ++plane) {
            const auto w = sys.weight(plane);
            for (std::uint32_t v = 0; v <= 255; ++v) {
                for (std::uint8_t bit : {0, 1}) {
                    const auto r = vbp::embed_bit(sys, plane, v, bit);
                    if (!r.embedded) {
                        REQUIRE(r.new_value == v);
                        continue;
                    }
                    const auto delta = r.new_value > v ? r.new_value - v : v - r.new_value;
                    REQUIRE((delta == 0 || delta == w));
                    REQUIRE(*vbp::extract_bit(sys, plane, r.new_value) == bit);
                }
            }
        }
    }
}

TEST_CASE("eligibility is self-inverse under embedding, exhaustively") {
    for (auto [kind, p] : {std::pair{WeightKind::Natural, 1u}, {WeightKind::Prime, 1u},
                           {WeightKind::Binary, 1u}, {WeightKind::FibonacciP, 1u}}) {
        const auto sys = NumeralSystem::for_bit_depth(kind, 8, p);
        for (std::size_t plane = 0; plane < sys.plane_count(); ++plane) {
            for (std::uint32_t v = 0; v <= 255; ++v) {
                const bool before = vbp::pixel_eligible(sys, plane, v);
                for (std::uint8_t bit : {0, 1}) {
                    const auto r = vbp::embed_bit(sys, plane, v, bit);
                    REQUIRE(vbp::pixel_eligible(sys, plane, r.new_value) == before);
                }
            }
        }
    }
}

TEST_CASE("parameter guards") {
    const auto& sys = natural8();
    REQUIRE_THROWS_AS(vbp::pixel_eligible(sys, 23, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(vbp::embed_bit(sys, 0, 0, 2), std::invalid_argument);
    const auto toy = NumeralSystem::with_plane_count(WeightKind::Natural, 3);
    REQUIRE_THROWS_AS(vbp::pixel_eligible(toy, 0, 7), std::out_of_range);
}

TEST_CASE("empty message with a length prefix embeds exactly 32 bits") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(16, 16);
    const EmbedPlan plan{&sys, 0};
    const auto [stego, report] = vbp::embed_message(cover, plan, {});
    REQUIRE(report.bits_embedded == 32);
    REQUIRE(report.capacity_at_plane == 34);
    REQUIRE(report.pixels_visited == report.bits_embedded + report.pixels_skipped);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < cover.pixel_count(); ++i) {
        changed += cover.pixels()[i] != stego.pixels()[i] ? 1 : 0;
    }
    REQUIRE(changed <= 32);
    REQUIRE(vbp::extract_message(stego, plan).empty());
}

TEST_CASE("capacity boundary with the 32-bit prefix") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(16, 16);
    REQUIRE(vbp::capacity(cover, sys, 0) == 34);

    const EmbedPlan plan{&sys, 0};
    const BitVec fits(2, 1);
    const auto [stego, report] = vbp::embed_message(cover, plan, fits);
    REQUIRE(report.bits_embedded == 34);
    REQUIRE(vbp::extract_message(stego, plan) == fits);

    const BitVec overflow(3, 1);
    try {
        (void)vbp::embed_message(cover, plan, overflow);
        FAIL("expected CapacityError");
    } catch (const vbp::CapacityError& e) {
        REQUIRE(e.required() == 35);
        REQUIRE(e.available() == 34);
    }
}

TEST_CASE("all-zero message extracts as zeros of the declared length") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(16, 16);
    for (std::size_t plane : {std::size_t{0}, std::size_t{11}}) {
        const auto cap = vbp::capacity(cover, sys, plane);
        const BitVec zeros(static_cast<std::size_t>(cap), 0);
        const EmbedPlan plan{&sys, plane, vbp::Traversal::RowMajor, LengthMode::ExplicitLength,
                             cap};
        const auto [stego, report] = vbp::embed_message(cover, plan, zeros);
        REQUIRE(report.bits_embedded == cap);
        REQUIRE(vbp::extract_message(stego, plan) == zeros);
    }
}

TEST_CASE("prefix roundtrip across systems and planes") {
    const GrayImage cover = gradient(64, 64);
    for (auto [kind, p] : {std::pair{WeightKind::Natural, 1u}, {WeightKind::Prime, 1u},
                           {WeightKind::Binary, 1u}, {WeightKind::FibonacciP, 1u}}) {
        const auto sys = NumeralSystem::for_bit_depth(kind, 8, p);
        const std::size_t n = sys.plane_count();
        for (std::size_t plane : {std::size_t{0}, std::size_t{1}, n / 2, n - 1}) {
            const auto cap = vbp::capacity(cover, sys, plane);
            REQUIRE(cap > 32);
            const BitVec message = vbp::random_bits(static_cast<std::uint32_t>(plane) + 17,
                                                    static_cast<std::size_t>(cap) - 32);
            const EmbedPlan plan{&sys, plane};
            const auto [stego, report] = vbp::embed_message(cover, plan, message);
            REQUIRE(report.bits_embedded == cap);
            REQUIRE(vbp::extract_message(stego, plan) == message);
        }
    }
}

TEST_CASE("stego differs from cover only where bits landed") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(64, 64);
    const BitVec message = vbp::random_bits(3, 100);
    const EmbedPlan plan{&sys, 1};
    const auto [stego, report] = vbp::embed_message(cover, plan, message);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < cover.pixel_count(); ++i) {
        const auto a = cover.pixels()[i];
        const auto b = stego.pixels()[i];
        if (a != b) {
            ++changed;
            const auto delta = a > b ? a - b : b - a;
            REQUIRE(delta == sys.weight(1));
            REQUIRE(vbp::pixel_eligible(sys, 1, a));
        }
    }
    REQUIRE(changed <= report.bits_embedded);
}

TEST_CASE("embedding is deterministic") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(32, 32);
    const BitVec message = vbp::random_bits(5, 64);
    const EmbedPlan plan{&sys, 2};
    const auto first = vbp::embed_message(cover, plan, message);
    const auto second = vbp::embed_message(cover, plan, message);
    REQUIRE(first.stego == second.stego);
}

TEST_CASE("wrong-plane extraction yields a different stream, not an error") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(64, 64);
    const BitVec message = vbp::random_bits(11, 200);
    const EmbedPlan embed_plan{&sys, 2, vbp::Traversal::RowMajor, LengthMode::ExplicitLength,
                               message.size()};
    const auto [stego, report] = vbp::embed_message(cover, embed_plan, message);

    const EmbedPlan wrong_plane{&sys, 3, vbp::Traversal::RowMajor, LengthMode::ExplicitLength,
                                message.size()};
    const BitVec garbled = vbp::extract_message(stego, wrong_plane);
    REQUIRE(garbled.size() == message.size());
    REQUIRE_FALSE(garbled == message);
}

TEST_CASE("corrupt streams are rejected") {
    const auto& sys = natural8();
    SECTION("too few eligible pixels for the prefix") {
        const GrayImage constant = vbp::synthesize({SynthPattern::Constant, 8, 8, 2});
        REQUIRE(vbp::capacity(constant, sys, 0) == 0);
        const EmbedPlan plan{&sys, 0};
        REQUIRE_THROWS_AS(vbp::extract_message(constant, plan), vbp::CorruptStreamError);
    }
    SECTION("declared length exceeds the remaining capacity") {
        const GrayImage cover = gradient(16, 16);
        const BitVec ones(34, 1); // the 32-bit prefix reads back as 2^32 - 1
        const EmbedPlan raw{&sys, 0, vbp::Traversal::RowMajor, LengthMode::ExplicitLength, 34};
        const auto [stego, report] = vbp::embed_message(cover, raw, ones);
        const EmbedPlan prefixed{&sys, 0};
        REQUIRE_THROWS_AS(vbp::extract_message(stego, prefixed), vbp::CorruptStreamError);
    }
    SECTION("explicit length larger than capacity") {
        const GrayImage cover = gradient(16, 16);
        const EmbedPlan plan{&sys, 0, vbp::Traversal::RowMajor, LengthMode::ExplicitLength, 35};
        REQUIRE_THROWS_AS(vbp::extract_message(cover, plan), vbp::CorruptStreamError);
    }
}

TEST_CASE("plan validation") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(8, 8);
    REQUIRE_THROWS_AS(vbp::embed_message(cover, EmbedPlan{nullptr, 0}, {}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(vbp::embed_message(cover, EmbedPlan{&sys, 23}, {}),
                      std::invalid_argument);
    const EmbedPlan mismatched{&sys, 0, vbp::Traversal::RowMajor, LengthMode::ExplicitLength, 9};
    REQUIRE_THROWS_AS(vbp::embed_message(cover, mismatched, BitVec(4, 0)),
                      std::invalid_argument);
}

TEST_CASE("capacity of uniform images") {
    const auto& sys = natural8();
    // 0 stays eligible at plane 0 while 2 does not
    const GrayImage all_zero = vbp::synthesize({SynthPattern::Constant, 6, 7, 0});
    REQUIRE(vbp::capacity(all_zero, sys, 0) == 42);
    const GrayImage all_two = vbp::synthesize({SynthPattern::Constant, 6, 7, 2});
    REQUIRE(vbp::capacity(all_two, sys, 0) == 0);
}

TEST_CASE("zero-length explicit extraction returns an empty stream") {
    const auto& sys = natural8();
    const GrayImage cover = gradient(8, 8);
    const EmbedPlan plan{&sys, 0, vbp::Traversal::RowMajor, LengthMode::ExplicitLength, 0};
    REQUIRE(vbp::extract_message(cover, plan).empty());
}
