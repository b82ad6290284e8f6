#pragma once

// Naive, formula-literal re-implementations used as oracles. Each one is an
// independent route: plain double loops, no shared accumulation tricks with
// the production code.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "mlse/codec_core.hpp"
#include "mlse/frame.hpp"

namespace testsupport {

inline double naive_mse(const mlse::FramePlane& a, const mlse::FramePlane& b) {
    double sum = 0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            const double d = double(a.at(x, y)) - double(b.at(x, y));
            sum += d * d;
        }
    }
    return sum / (double(a.width()) * double(a.height()));
}

inline double naive_psnr(const mlse::FramePlane& a, const mlse::FramePlane& b) {
    const double mse = naive_mse(a, b);
    if (mse == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

inline double naive_entropy(const mlse::FramePlane& plane) {
    std::array<double, 256> count{};
    for (int y = 0; y < plane.height(); ++y) {
        for (int x = 0; x < plane.width(); ++x) {
            count[plane.at(x, y)] += 1;
        }
    }
    const double total = double(plane.width()) * double(plane.height());
    double h = 0;
    for (int j = 0; j < 256; ++j) {
        if (count[j] > 0) {
            const double p = count[j] / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

inline double naive_npcr(const mlse::FramePlane& a, const mlse::FramePlane& b) {
    double changed = 0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            if (a.at(x, y) != b.at(x, y)) {
                changed += 1;
            }
        }
    }
    return changed / (double(a.width()) * double(a.height()));
}

inline double naive_uaci(const mlse::FramePlane& a, const mlse::FramePlane& b) {
    double sum = 0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            sum += std::abs(double(a.at(x, y)) - double(b.at(x, y)));
        }
    }
    return sum / (255.0 * double(a.width()) * double(a.height()));
}

// Quadruple-sum DCT-II straight from the 2-D definition.
inline mlse::CoeffArray naive_dct(const mlse::ResidualBlock& x) {
    mlse::CoeffArray out{};
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 8; ++k) {
        for (int l = 0; l < 8; ++l) {
            const double ak = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            const double al = l == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            double sum = 0;
            for (int m = 0; m < 8; ++m) {
                for (int n = 0; n < 8; ++n) {
                    sum += x[m * 8 + n] * std::cos((2 * m + 1) * k * pi / 16.0) *
                           std::cos((2 * n + 1) * l * pi / 16.0);
                }
            }
            out[k * 8 + l] = ak * al * sum;
        }
    }
    return out;
}

// Exhaustive mode re-search with its own SSE loop and argmin.
inline mlse::IntraMode exhaustive_best_mode(const mlse::Block8& orig,
                                            const mlse::ReferenceSamples& refs) {
    int best = 0;
    long long best_sse = -1;
    for (int m = 0; m < mlse::kNumIntraModes; ++m) {
        const mlse::Block8 pred = mlse::predict_block(mlse::IntraMode(m), refs);
        long long sse = 0;
        for (int i = 0; i < 64; ++i) {
            const long long d = (long long)orig[i] - (long long)pred[i];
            sse += d * d;
        }
        if (best_sse < 0 || sse < best_sse) {
            best_sse = sse;
            best = m;
        }
    }
    return mlse::IntraMode(best);
}

// Per-window SSIM evaluated with explicit centered moments (a different
// route than the production var = E[x^2] - mu^2 form).
inline double oracle_ssim(const mlse::FramePlane& a, const mlse::FramePlane& b) {
    constexpr int kWin = 11;
    constexpr double kSigma = 1.5;
    constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
    constexpr double kC2 = (0.03 * 255) * (0.03 * 255);
    std::array<double, kWin * kWin> w{};
    double wsum = 0;
    for (int y = 0; y < kWin; ++y) {
        for (int x = 0; x < kWin; ++x) {
            const double dx = x - kWin / 2;
            const double dy = y - kWin / 2;
            w[y * kWin + x] = std::exp(-(dx * dx + dy * dy) / (2 * kSigma * kSigma));
            wsum += w[y * kWin + x];
        }
    }
    for (auto& v : w) {
        v /= wsum;
    }

    double total = 0;
    long long windows = 0;
    for (int y0 = 0; y0 + kWin <= a.height(); ++y0) {
        for (int x0 = 0; x0 + kWin <= a.width(); ++x0) {
            double mu_a = 0;
            double mu_b = 0;
            for (int y = 0; y < kWin; ++y) {
                for (int x = 0; x < kWin; ++x) {
                    mu_a += w[y * kWin + x] * a.at(x0 + x, y0 + y);
                    mu_b += w[y * kWin + x] * b.at(x0 + x, y0 + y);
                }
            }
            double var_a = 0;
            double var_b = 0;
            double cov = 0;
            for (int y = 0; y < kWin; ++y) {
                for (int x = 0; x < kWin; ++x) {
                    const double da = a.at(x0 + x, y0 + y) - mu_a;
                    const double db = b.at(x0 + x, y0 + y) - mu_b;
                    var_a += w[y * kWin + x] * da * da;
                    var_b += w[y * kWin + x] * db * db;
                    cov += w[y * kWin + x] * da * db;
                }
            }
            total += ((2 * mu_a * mu_b + kC1) * (2 * cov + kC2)) /
                     ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
            ++windows;
        }
    }
    return total / double(windows);
}

inline mlse::FramePlane random_plane(std::mt19937& rng, int width, int height) {
    mlse::FramePlane plane(width, height);
    for (auto& s : plane.samples()) {
        s = std::uint8_t(rng());
    }
    return plane;
}

}  // namespace testsupport
