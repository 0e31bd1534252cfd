#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "vbp/bits.hpp"

using vbp::BitVec;

TEST_CASE("bytes to bits and back, most significant bit first") {
    const std::vector<std::uint8_t> bytes{0b10110001, 0x00, 0xff};
    const BitVec bits = vbp::bits_from_bytes(bytes);
    REQUIRE(bits.size() == 24);
    REQUIRE(bits[0] == 1);
    REQUIRE(bits[1] == 0);
    REQUIRE(bits[7] == 1);
    REQUIRE(vbp::bytes_from_bits(bits) == bytes);
}

TEST_CASE("partial trailing byte pads with zeros") {
    const BitVec bits{1, 0, 1};
    REQUIRE(vbp::bytes_from_bits(bits) == std::vector<std::uint8_t>{0b10100000});
    REQUIRE_THROWS_AS(vbp::bytes_from_bits(BitVec{0, 2}), std::invalid_argument);
}

TEST_CASE("32-bit big-endian length fields round trip") {
    BitVec bits;
    vbp::append_u32_be(bits, 0xdeadbeef);
    REQUIRE(bits.size() == 32);
    REQUIRE(vbp::read_u32_be(bits) == 0xdeadbeef);
    REQUIRE_THROWS_AS(vbp::read_u32_be(BitVec(31, 0)), std::invalid_argument);
}

TEST_CASE("random bit streams are seed-deterministic") {
    const BitVec a = vbp::random_bits(123, 500);
    const BitVec b = vbp::random_bits(123, 500);
    REQUIRE(a == b);
    REQUIRE(a.size() == 500);
    for (auto bit : a) REQUIRE(bit <= 1);
    REQUIRE_FALSE(vbp::random_bits(124, 500) == a);
}

TEST_CASE("repeat to length cycles the base message") {
    const BitVec base{1, 1, 0};
    REQUIRE(vbp::repeat_to_length(base, 7) == BitVec{1, 1, 0, 1, 1, 0, 1});
    REQUIRE(vbp::repeat_to_length(base, 2) == BitVec{1, 1});
    REQUIRE(vbp::repeat_to_length(base, 0).empty());
    REQUIRE_THROWS_AS(vbp::repeat_to_length({}, 4), std::invalid_argument);
}
