#pragma once
// metrics.hpp - distortion statistics: worst-case (weight-squared) WMSE and
// PSNR per plane, empirical MSE/PSNR between cover and stego, gray-level
// histograms with KL divergence, and the (system, plane) sweep table.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbp/bits.hpp"
#include "vbp/image.hpp"
#include "vbp/numeral_system.hpp"
#include "vbp/stego.hpp"

namespace vbp {

// ===== theoretical bounds =====

/// Worst-case per-pixel squared error at a plane: every embedded bit flips,
/// so each pixel moves by exactly the plane weight.
[[nodiscard]] inline double wmse_per_pixel(const NumeralSystem& system, std::size_t plane) {
    const double w = system.weight(plane);
    return w * w;
}

/// Same bound as a whole-image total, scaled by w*h.
[[nodiscard]] inline double wmse_total(const NumeralSystem& system, std::size_t plane,
                                       std::size_t width, std::size_t height) {
    return wmse_per_pixel(system, plane) * static_cast<double>(width) *
           static_cast<double>(height);
}

/// PSNR under the worst-case assumption: 10*log10(max^2 / W(plane)^2).
[[nodiscard]] inline double psnr_worst_db(const NumeralSystem& system, std::size_t plane) {
    const double peak = system.max_value();
    const double w = system.weight(plane);
    return 10.0 * std::log10((peak * peak) / (w * w));
}

// ===== empirical comparisons =====

[[nodiscard]] inline double mse_empirical(const GrayImage& cover, const GrayImage& stego) {
    if (cover.width() != stego.width() || cover.height() != stego.height()) {
        throw std::invalid_argument("mse_empirical: image dimensions differ");
    }
    if (cover.pixel_count() == 0) {
        throw std::invalid_argument("mse_empirical: empty image");
    }
    const auto a = cover.pixels();
    const auto b = stego.pixels();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]);
        total += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(total) / static_cast<double>(a.size());
}

/// MSE of zero maps to +infinity (identical images).
[[nodiscard]] inline double psnr_from_mse(double mse, std::uint32_t peak) {
    if (mse < 0) throw std::invalid_argument("psnr_from_mse: negative MSE");
    if (mse == 0) return std::numeric_limits<double>::infinity();
    const double p = peak;
    return 10.0 * std::log10((p * p) / mse);
}

[[nodiscard]] inline double psnr_empirical_db(const GrayImage& cover, const GrayImage& stego,
                                              unsigned bit_depth = 8) {
    if (bit_depth < 1 || bit_depth > 16) {
        throw std::invalid_argument("psnr_empirical_db: bit depth must be in [1, 16]");
    }
    const auto peak = static_cast<std::uint32_t>((1u << bit_depth) - 1);
    return psnr_from_mse(mse_empirical(cover, stego), peak);
}

// ===== histograms and relative entropy =====

/// 256-bin gray-level counts.
[[nodiscard]] inline std::vector<std::uint64_t> histogram(const GrayImage& image) {
    if (image.pixel_count() == 0) {
        throw std::invalid_argument("histogram: empty image");
    }
    std::vector<std::uint64_t> bins(256, 0);
    for (std::uint8_t px : image.pixels()) ++bins[px];
    return bins;
}

/// KL(p || q) in nats. Zero bins are lifted to one count in BOTH inputs
/// before normalization, so the divergence is always finite and the
/// smoothing treats the two histograms identically.
[[nodiscard]] inline double kl_divergence_nats(std::span<const std::uint64_t> p_counts,
                                               std::span<const std::uint64_t> q_counts) {
    if (p_counts.size() != q_counts.size() || p_counts.empty()) {
        throw std::invalid_argument("kl_divergence_nats: histograms must be same nonempty size");
    }
    double p_total = 0;
    double q_total = 0;
    for (std::size_t i = 0; i < p_counts.size(); ++i) {
        p_total += static_cast<double>(std::max<std::uint64_t>(p_counts[i], 1));
        q_total += static_cast<double>(std::max<std::uint64_t>(q_counts[i], 1));
    }
    double kl = 0;
    for (std::size_t i = 0; i < p_counts.size(); ++i) {
        const double p = static_cast<double>(std::max<std::uint64_t>(p_counts[i], 1)) / p_total;
        const double q = static_cast<double>(std::max<std::uint64_t>(q_counts[i], 1)) / q_total;
        kl += p * std::log(p / q);
    }
    return kl;
}

// ===== sweep =====

struct DistortionReport {
    std::string system;
    std::size_t plane = 0;
    std::uint32_t weight = 0;
    double wmse_per_pixel = 0;
    double psnr_worst_db = 0;
    double mse_empirical = 0;
    double psnr_empirical_db = 0;
    double kl_nats = 0;
    double capacity_fraction = 0;
};

/// Metrics for an already-produced cover/stego pair at one configuration.
[[nodiscard]] inline DistortionReport analyze_pair(const GrayImage& cover, const GrayImage& stego,
                                                   const NumeralSystem& system,
                                                   std::size_t plane) {
    DistortionReport r;
    r.system = system.label();
    r.plane = plane;
    r.weight = system.weight(plane);
    r.wmse_per_pixel = wmse_per_pixel(system, plane);
    r.psnr_worst_db = psnr_worst_db(system, plane);
    r.mse_empirical = mse_empirical(cover, stego);
    r.psnr_empirical_db = psnr_from_mse(r.mse_empirical, system.max_value());
    r.kl_nats = kl_divergence_nats(histogram(cover), histogram(stego));
    r.capacity_fraction = static_cast<double>(capacity(cover, system, plane)) /
                          static_cast<double>(cover.pixel_count());
    return r;
}

enum class SweepFill {
    ErrorIfTooLong,     // propagate CapacityError
    TruncateToCapacity, // drop trailing bits that do not fit
    RepeatToCapacity    // cycle the message until every eligible pixel is used
};

/// One report per (system, plane) pair. An empty `planes` list means every
/// plane of each system; otherwise out-of-range indices are skipped for
/// systems that lack them. Messages are embedded in raw (explicit-length)
/// mode so a fill really can use the entire capacity.
[[nodiscard]] inline std::vector<DistortionReport>
sweep(const GrayImage& cover, const BitVec& message, std::span<const NumeralSystem> systems,
      std::span<const std::size_t> planes = {}, SweepFill fill = SweepFill::ErrorIfTooLong) {
    std::vector<DistortionReport> reports;
    for (const NumeralSystem& system : systems) {
        std::vector<std::size_t> cell_planes;
        if (planes.empty()) {
            for (std::size_t p = 0; p < system.plane_count(); ++p) cell_planes.push_back(p);
        } else {
            for (std::size_t p : planes) {
                if (p < system.plane_count()) cell_planes.push_back(p);
            }
        }
        for (std::size_t plane : cell_planes) {
            const std::uint64_t cap = capacity(cover, system, plane);
            BitVec payload;
            switch (fill) {
                case SweepFill::ErrorIfTooLong:
                    payload = message;
                    break;
                case SweepFill::TruncateToCapacity:
                    payload.assign(message.begin(),
                                   message.begin() + static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(
                                                         message.size(), cap)));
                    break;
                case SweepFill::RepeatToCapacity:
                    payload = message.empty() ? BitVec{}
                                              : repeat_to_length(message, static_cast<std::size_t>(cap));
                    break;
            }
            EmbedPlan plan{&system, plane, Traversal::RowMajor, LengthMode::ExplicitLength,
                           payload.size()};
            const EmbedResult result = embed_message(cover, plan, payload);
            reports.push_back(analyze_pair(cover, result.stego, system, plane));
        }
    }
    return reports;
}

// ===== CSV emission =====

namespace detail {

// Locale-independent shortest-roundtrip formatting.
[[nodiscard]] inline std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

} // namespace detail

inline constexpr const char* kSweepCsvHeader =
    "system,plane,weight,wmse_per_pixel,psnr_worst_db,mse_empirical,"
    "psnr_empirical_db,kl_nats,capacity_fraction";

inline void write_csv(std::ostream& out, std::span<const DistortionReport> reports) {
    out << kSweepCsvHeader << '\n';
    for (const DistortionReport& r : reports) {
        out << r.system << ',' << r.plane << ',' << r.weight << ','
            << detail::format_double(r.wmse_per_pixel) << ','
            << detail::format_double(r.psnr_worst_db) << ','
            << detail::format_double(r.mse_empirical) << ','
            << detail::format_double(r.psnr_empirical_db) << ','
            << detail::format_double(r.kl_nats) << ','
            << detail::format_double(r.capacity_fraction) << '\n';
    }
}

[[nodiscard]] inline std::string to_csv(std::span<const DistortionReport> reports) {
    std::ostringstream out;
    write_csv(out, reports);
    return std::move(out).str();
}

} // namespace vbp
