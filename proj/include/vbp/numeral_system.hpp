#pragma once
// numeral_system.hpp - weight sequences and the canonical bit-string codec
// behind virtual bit-plane decompositions.
//
// A numeral system here is a list of positive integer weights, one per
// (virtual) bit-plane, least significant first. A value's canonical form is
// the lexicographically highest bit string (read most-significant plane
// first) whose weighted sum equals the value; encoding is greedy from the
// top plane with a subset-sum feasibility prune, which provably yields that
// maximum for any positive weight set.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vbp {

// ===== weight functions =====

enum class WeightKind { Binary, Natural, Prime, FibonacciP };

/// Canonical label, e.g. "natural" or "fib:2".
[[nodiscard]] inline std::string to_string(WeightKind kind, unsigned fib_order = 1) {
    switch (kind) {
        case WeightKind::Binary: return "binary";
        case WeightKind::Natural: return "natural";
        case WeightKind::Prime: return "prime";
        case WeightKind::FibonacciP: return "fib:" + std::to_string(fib_order);
    }
    return "?";
}

/// Parse "binary" | "natural" | "prime" | "fib" | "fib:p".
[[nodiscard]] inline std::optional<std::pair<WeightKind, unsigned>>
parse_weight_kind(std::string_view text) {
    if (text == "binary") return {{WeightKind::Binary, 1u}};
    if (text == "natural") return {{WeightKind::Natural, 1u}};
    if (text == "prime") return {{WeightKind::Prime, 1u}};
    if (text == "fib") return {{WeightKind::FibonacciP, 1u}};
    if (text.starts_with("fib:")) {
        unsigned p = 0;
        for (char c : text.substr(4)) {
            if (c < '0' || c > '9' || p > 1000) return std::nullopt;
            p = p * 10 + static_cast<unsigned>(c - '0');
        }
        if (p == 0) return std::nullopt;
        return {{WeightKind::FibonacciP, p}};
    }
    return std::nullopt;
}

namespace detail {

[[nodiscard]] inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

} // namespace detail

/// Weight list for one decomposition, index 0 = least significant plane.
struct WeightFunction {
    WeightKind kind = WeightKind::Natural;
    unsigned fib_order = 1; // p, meaningful for FibonacciP only
    std::vector<std::uint32_t> weights;

    [[nodiscard]] std::string label() const { return to_string(kind, fib_order); }

    /// First `count` weights of the given kind. Natural: i+1. Binary: 2^i.
    /// Prime: 1 followed by the primes. Fibonacci-p: F_p(n)=F_p(n-1)+F_p(n-p-1)
    /// with the leading run of 1s collapsed to a single weight, so the list
    /// is strictly increasing.
    [[nodiscard]] static WeightFunction generate(WeightKind kind, std::size_t count,
                                                 unsigned fib_order = 1) {
        if (count == 0) throw std::invalid_argument("WeightFunction: count must be positive");
        if (kind == WeightKind::FibonacciP && fib_order == 0) {
            throw std::invalid_argument("WeightFunction: Fibonacci order p must be >= 1");
        }
        WeightFunction wf{kind, kind == WeightKind::FibonacciP ? fib_order : 1, {}};
        wf.weights.reserve(count);
        switch (kind) {
            case WeightKind::Natural:
                for (std::size_t i = 0; i < count; ++i) {
                    wf.weights.push_back(static_cast<std::uint32_t>(i + 1));
                }
                break;
            case WeightKind::Binary:
                if (count > 31) throw std::invalid_argument("WeightFunction: binary weight overflow");
                for (std::size_t i = 0; i < count; ++i) {
                    wf.weights.push_back(std::uint32_t{1} << i);
                }
                break;
            case WeightKind::Prime: {
                wf.weights.push_back(1);
                std::uint32_t candidate = 2;
                while (wf.weights.size() < count) {
                    if (detail::is_prime(candidate)) wf.weights.push_back(candidate);
                    ++candidate;
                }
                break;
            }
            case WeightKind::FibonacciP: {
                const unsigned p = fib_order;
                std::vector<std::uint64_t> raw;
                while (wf.weights.size() < count) {
                    const std::size_t n = raw.size();
                    const std::uint64_t term =
                        n <= p ? 1 : raw[n - 1] + raw[n - p - 1];
                    if (term > std::numeric_limits<std::uint32_t>::max()) {
                        throw std::invalid_argument("WeightFunction: Fibonacci weight overflow");
                    }
                    raw.push_back(term);
                    if (wf.weights.empty() || term > wf.weights.back()) {
                        wf.weights.push_back(static_cast<std::uint32_t>(term));
                    }
                }
                break;
            }
        }
        return wf;
    }
};

// ===== feasibility table =====

/// Subset-sum table: representable(m, v) is true iff v is a sum of distinct
/// weights among the m least significant ones. Row m is a bitset over
/// [0, max_sum].
class FeasibilityTable {
public:
    FeasibilityTable() = default;

    FeasibilityTable(std::span<const std::uint32_t> weights, std::uint32_t max_sum)
        : max_sum_(max_sum),
          words_(static_cast<std::size_t>(max_sum) / 64 + 1),
          rows_((weights.size() + 1) * words_, 0) {
        rows_[0] = 1; // empty prefix represents exactly 0
        for (std::size_t m = 0; m < weights.size(); ++m) {
            const std::uint64_t* prev = row(m);
            std::uint64_t* next = &rows_[(m + 1) * words_];
            std::copy(prev, prev + words_, next);
            or_shifted(next, prev, weights[m]);
        }
    }

    [[nodiscard]] bool representable(std::size_t prefix_len, std::uint32_t value) const {
        if (words_ == 0 || prefix_len >= rows_.size() / words_) {
            throw std::invalid_argument("FeasibilityTable: prefix length out of range");
        }
        if (value > max_sum_) return false;
        return (row(prefix_len)[value >> 6] >> (value & 63)) & 1u;
    }

    [[nodiscard]] std::uint32_t max_sum() const { return max_sum_; }

private:
    [[nodiscard]] const std::uint64_t* row(std::size_t m) const { return &rows_[m * words_]; }

    void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::uint32_t shift) const {
        const std::size_t word_shift = shift / 64;
        const unsigned bit_shift = shift % 64;
        for (std::size_t i = words_; i-- > word_shift;) {
            std::uint64_t v = src[i - word_shift] << bit_shift;
            if (bit_shift != 0 && i - word_shift > 0) {
                v |= src[i - word_shift - 1] >> (64 - bit_shift);
            }
            dst[i] |= v;
        }
    }

    std::uint32_t max_sum_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> rows_;
};

// ===== canonical representation =====

/// Canonical form of a value: bits[0] is the least significant plane.
struct Representation {
    std::vector<std::uint8_t> bits;
    std::uint32_t value = 0;

    /// Most significant plane first, e.g. "100" for value 3 in a 3-plane
    /// natural system.
    [[nodiscard]] std::string to_string() const {
        std::string s;
        s.reserve(bits.size());
        for (std::size_t i = bits.size(); i-- > 0;) {
            s.push_back(bits[i] ? '1' : '0');
        }
        return s;
    }

    bool operator==(const Representation&) const = default;
};

// ===== numeral system =====

/// Immutable bundle of a weight list with its codec state. All operations
/// are pure; instances are safe to share across threads.
class NumeralSystem {
public:
    static constexpr unsigned kMaxBitDepth = 16;

    /// System for k-bit pixels: the minimal plane count whose weight sum
    /// reaches 2^k - 1.
    [[nodiscard]] static NumeralSystem for_bit_depth(WeightKind kind, unsigned bit_depth,
                                                     unsigned fib_order = 1) {
        if (bit_depth < 1 || bit_depth > kMaxBitDepth) {
            throw std::invalid_argument("NumeralSystem: bit depth must be in [1, 16]");
        }
        const std::uint32_t target = (std::uint32_t{1} << bit_depth) - 1;
        std::size_t planes = 1;
        WeightFunction wf = WeightFunction::generate(kind, planes, fib_order);
        while (weight_sum(wf.weights) < target) {
            wf = WeightFunction::generate(kind, ++planes, fib_order);
        }
        return NumeralSystem(std::move(wf), bit_depth, target);
    }

    /// Fixed-size system whose pixel range is the full representable span
    /// [0, sum of weights]; used for small worked examples.
    [[nodiscard]] static NumeralSystem with_plane_count(WeightKind kind, std::size_t planes,
                                                        unsigned fib_order = 1) {
        WeightFunction wf = WeightFunction::generate(kind, planes, fib_order);
        const std::uint64_t sum = weight_sum(wf.weights);
        if (sum > std::numeric_limits<std::uint32_t>::max()) {
            throw std::invalid_argument("NumeralSystem: weight sum overflow");
        }
        const auto max_value = static_cast<std::uint32_t>(sum);
        return NumeralSystem(std::move(wf), std::bit_width(std::uint64_t{max_value}), max_value);
    }

    [[nodiscard]] WeightKind kind() const { return wf_.kind; }
    [[nodiscard]] unsigned fib_order() const { return wf_.fib_order; }
    [[nodiscard]] std::string label() const { return wf_.label(); }
    [[nodiscard]] std::size_t plane_count() const { return wf_.weights.size(); }
    [[nodiscard]] unsigned bit_depth() const { return bit_depth_; }
    [[nodiscard]] std::uint32_t max_value() const { return max_value_; }
    [[nodiscard]] std::uint32_t representable_max() const { return representable_max_; }
    [[nodiscard]] std::span<const std::uint32_t> weights() const { return wf_.weights; }
    [[nodiscard]] const FeasibilityTable& feasibility_table() const { return feasibility_; }

    [[nodiscard]] std::uint32_t weight(std::size_t plane) const {
        if (plane >= plane_count()) {
            throw std::invalid_argument("NumeralSystem: plane index out of range");
        }
        return wf_.weights[plane];
    }

    /// (0, sum of all weights). Interior gaps, possible in principle for
    /// exotic weight lists, are a feasibility_table question.
    [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> representable_range() const {
        return {0, representable_max_};
    }

    /// Canonical (lexicographically highest) form of `value`.
    [[nodiscard]] Representation encode(std::uint32_t value) const {
        Representation rep;
        rep.value = value;
        rep.bits.resize(plane_count());
        std::vector<std::uint8_t> scratch;
        const auto bits = canonical_bits(value, scratch);
        std::copy(bits.begin(), bits.end(), rep.bits.begin());
        return rep;
    }

    /// Weighted sum of an n-bit string; total on all n-bit strings.
    [[nodiscard]] std::uint32_t decode(std::span<const std::uint8_t> bits) const {
        if (bits.size() != plane_count()) {
            throw std::invalid_argument("NumeralSystem: bit string length does not match plane count");
        }
        std::uint32_t value = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] > 1) {
                throw std::invalid_argument("NumeralSystem: bit string contains a non-bit value");
            }
            if (bits[i]) value += wf_.weights[i];
        }
        return value;
    }

    /// Membership test for the value<->representation map: the string must
    /// decode into the pixel range and re-encode to itself.
    [[nodiscard]] bool is_canonical(std::span<const std::uint8_t> bits) const {
        const std::uint32_t value = decode(bits);
        if (value > max_value_) return false;
        std::vector<std::uint8_t> scratch;
        const auto canon = canonical_bits(value, scratch);
        return std::equal(bits.begin(), bits.end(), canon.begin());
    }

    /// Canonical bits without allocating when the value table is cached;
    /// the span stays valid until `scratch` is reused.
    [[nodiscard]] std::span<const std::uint8_t>
    canonical_bits(std::uint32_t value, std::vector<std::uint8_t>& scratch) const {
        const std::size_t n = plane_count();
        if (!canonical_cache_.empty() && value <= max_value_) {
            return {&canonical_cache_[static_cast<std::size_t>(value) * n], n};
        }
        scratch.resize(n);
        greedy_encode(value, scratch.data());
        return {scratch.data(), n};
    }

private:
    NumeralSystem(WeightFunction wf, unsigned bit_depth, std::uint32_t max_value)
        : wf_(std::move(wf)),
          bit_depth_(bit_depth),
          max_value_(max_value),
          representable_max_(static_cast<std::uint32_t>(weight_sum(wf_.weights))),
          feasibility_(wf_.weights, representable_max_) {
        const std::size_t n = plane_count();
        const std::size_t cache_bytes = (static_cast<std::size_t>(max_value_) + 1) * n;
        if (cache_bytes <= kCacheLimit) {
            canonical_cache_.resize(cache_bytes);
            for (std::uint32_t v = 0; v <= max_value_; ++v) {
                greedy_encode(v, &canonical_cache_[static_cast<std::size_t>(v) * n]);
            }
        }
    }

    [[nodiscard]] static std::uint64_t weight_sum(std::span<const std::uint32_t> weights) {
        std::uint64_t sum = 0;
        for (std::uint32_t w : weights) sum += w;
        return sum;
    }

    // Greedy from the most significant plane: set a bit iff its weight fits
    // and the remainder stays representable by the strictly lower planes.
    void greedy_encode(std::uint32_t value, std::uint8_t* out) const {
        if (value > representable_max_) {
            throw std::out_of_range("NumeralSystem: value exceeds representable range");
        }
        const std::size_t n = plane_count();
        if (!feasibility_.representable(n, value)) {
            throw std::out_of_range("NumeralSystem: value is not a sum of distinct weights");
        }
        std::uint32_t remainder = value;
        for (std::size_t i = n; i-- > 0;) {
            const std::uint32_t w = wf_.weights[i];
            if (w <= remainder && feasibility_.representable(i, remainder - w)) {
                out[i] = 1;
                remainder -= w;
            } else {
                out[i] = 0;
            }
        }
    }

    static constexpr std::size_t kCacheLimit = std::size_t{1} << 22;

    WeightFunction wf_;
    unsigned bit_depth_;
    std::uint32_t max_value_;
    std::uint32_t representable_max_;
    FeasibilityTable feasibility_;
    std::vector<std::uint8_t> canonical_cache_; // (max_value+1) rows of n bits
};

/// One (value, canonical string) row per value in [lo, hi].
[[nodiscard]] inline std::vector<std::pair<std::uint32_t, std::string>>
decomposition_table(const NumeralSystem& system, std::uint32_t lo, std::uint32_t hi) {
    if (lo > hi || hi > system.max_value()) {
        throw std::invalid_argument("decomposition_table: range must satisfy lo <= hi <= max_value");
    }
    std::vector<std::pair<std::uint32_t, std::string>> rows;
    rows.reserve(hi - lo + 1);
    for (std::uint32_t v = lo; v <= hi; ++v) {
        rows.emplace_back(v, system.encode(v).to_string());
    }
    return rows;
}

} // namespace vbp
