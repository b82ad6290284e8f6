#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mlse/frame.hpp"

namespace mlse {

using Histogram = std::array<std::uint64_t, 256>;

/// 10*log10(255^2 / MSE). Identical planes yield +infinity, which report
/// serializers render as null, never as a fake large number.
double psnr(const FramePlane& a, const FramePlane& b);

/// Mean local SSIM over 11x11 Gaussian windows (sigma 1.5), stride 1,
/// valid-region windows only, C1 = (0.01*255)^2, C2 = (0.03*255)^2. Both
/// planes must be at least 11x11.
double ssim(const FramePlane& a, const FramePlane& b);

/// Shannon entropy of the 256-bin pixel histogram, in [0,8] bits.
double entropy(const FramePlane& plane);

/// Fraction of positions whose pixel values differ.
double npcr(const FramePlane& a, const FramePlane& b);

/// Mean absolute pixel difference normalized by L-1 = 255.
double uaci(const FramePlane& a, const FramePlane& b);

// Closed-form expected values for two independent uniform images over L
// gray levels. L must be a power of two in [2, 65536].
double expected_npcr(int levels);
double expected_uaci(int levels);

Histogram histogram(const FramePlane& plane);

/// Normalized L1 distance between two histograms of equal-size planes:
/// 0 = identical distributions, 1 = disjoint supports.
double histogram_distance(const Histogram& h1, const Histogram& h2);

/// (bits_encrypted - bits_plain) / bits_plain.
double bitrate_delta(std::uint64_t bits_encrypted, std::uint64_t bits_plain);

/// One encode-decode comparison bundle.
struct MetricsReport {
    double psnr_db = 0;  // +infinity when the planes are identical
    double ssim = 0;
    double entropy_bits = 0;
    double npcr = 0;
    double uaci = 0;
    double bitrate_delta = 0;
    Histogram hist{};

    static MetricsReport compare(const FramePlane& reference, const FramePlane& test,
                                 std::uint64_t bits_test = 0, std::uint64_t bits_reference = 0);

    /// Flat JSON object with the fixed field names psnr_db, ssim,
    /// entropy_bits, npcr, uaci, bitrate_delta. Infinite PSNR is null.
    std::string to_json() const;

    static std::string csv_header();
    std::string to_csv_row() const;
};

}  // namespace mlse
