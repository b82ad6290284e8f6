#include "mlse/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace mlse {

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
constexpr double kC2 = (0.03 * 255) * (0.03 * 255);

void require_same_dims(const FramePlane& a, const FramePlane& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("planes must have equal dimensions");
    }
}

const std::array<double, kSsimWindow * kSsimWindow>& gaussian_window() {
    static const auto window = [] {
        std::array<double, kSsimWindow * kSsimWindow> w{};
        const int half = kSsimWindow / 2;
        double sum = 0;
        for (int y = 0; y < kSsimWindow; ++y) {
            for (int x = 0; x < kSsimWindow; ++x) {
                const double dx = x - half;
                const double dy = y - half;
                const double g = std::exp(-(dx * dx + dy * dy) / (2 * kSsimSigma * kSsimSigma));
                w[y * kSsimWindow + x] = g;
                sum += g;
            }
        }
        for (double& v : w) {
            v /= sum;
        }
        return w;
    }();
    return window;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

double psnr(const FramePlane& a, const FramePlane& b) {
    require_same_dims(a, b);
    double sum = 0;
    const auto& sa = a.samples();
    const auto& sb = b.samples();
    for (std::size_t i = 0; i < sa.size(); ++i) {
        const double d = double(sa[i]) - double(sb[i]);
        sum += d * d;
    }
    if (sum == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const double mse = sum / double(sa.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const FramePlane& a, const FramePlane& b) {
    require_same_dims(a, b);
    if (a.width() < kSsimWindow || a.height() < kSsimWindow) {
        throw std::invalid_argument("planes must be at least 11x11 for SSIM");
    }
    const auto& w = gaussian_window();
    double total = 0;
    std::uint64_t windows = 0;
    for (int y0 = 0; y0 + kSsimWindow <= a.height(); ++y0) {
        for (int x0 = 0; x0 + kSsimWindow <= a.width(); ++x0) {
            double mu_a = 0;
            double mu_b = 0;
            double aa = 0;
            double bb = 0;
            double ab = 0;
            int wi = 0;
            for (int y = 0; y < kSsimWindow; ++y) {
                for (int x = 0; x < kSsimWindow; ++x, ++wi) {
                    const double va = a.at(x0 + x, y0 + y);
                    const double vb = b.at(x0 + x, y0 + y);
                    const double g = w[wi];
                    mu_a += g * va;
                    mu_b += g * vb;
                    aa += g * va * va;
                    bb += g * vb * vb;
                    ab += g * va * vb;
                }
            }
            const double var_a = aa - mu_a * mu_a;
            const double var_b = bb - mu_b * mu_b;
            const double cov = ab - mu_a * mu_b;
            const double value = ((2 * mu_a * mu_b + kC1) * (2 * cov + kC2)) /
                                 ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
            total += value;
            ++windows;
        }
    }
    return total / double(windows);
}

double entropy(const FramePlane& plane) {
    if (plane.pixel_count() == 0) {
        throw std::invalid_argument("entropy of an empty plane");
    }
    const Histogram h = histogram(plane);
    const double total = double(plane.pixel_count());
    double bits = 0;
    for (std::uint64_t count : h) {
        if (count == 0) {
            continue;
        }
        const double p = double(count) / total;
        bits -= p * std::log2(p);
    }
    return bits;
}

double npcr(const FramePlane& a, const FramePlane& b) {
    require_same_dims(a, b);
    const auto& sa = a.samples();
    const auto& sb = b.samples();
    std::uint64_t changed = 0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        changed += sa[i] != sb[i];
    }
    return double(changed) / double(sa.size());
}

double uaci(const FramePlane& a, const FramePlane& b) {
    require_same_dims(a, b);
    const auto& sa = a.samples();
    const auto& sb = b.samples();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        total += std::uint64_t(sa[i] > sb[i] ? sa[i] - sb[i] : sb[i] - sa[i]);
    }
    return double(total) / (255.0 * double(sa.size()));
}

namespace {

void require_power_of_two_levels(int levels) {
    if (levels < 2 || levels > 65536 || (levels & (levels - 1)) != 0) {
        throw std::invalid_argument("level count must be a power of two in [2, 65536]");
    }
}

}  // namespace

double expected_npcr(int levels) {
    require_power_of_two_levels(levels);
    return 1.0 - 1.0 / double(levels);
}

double expected_uaci(int levels) {
    require_power_of_two_levels(levels);
    const std::uint64_t n = std::uint64_t(levels);
    // sum_{v=1}^{L-1} v(v+1) = (L-1)L(2L-1)/6 + (L-1)L/2
    const std::uint64_t sum = (n - 1) * n * (2 * n - 1) / 6 + (n - 1) * n / 2;
    return double(sum) / (double(n) * double(n) * double(n - 1));
}

Histogram histogram(const FramePlane& plane) {
    Histogram h{};
    for (std::uint8_t v : plane.samples()) {
        ++h[v];
    }
    return h;
}

double histogram_distance(const Histogram& h1, const Histogram& h2) {
    std::uint64_t t1 = 0;
    std::uint64_t t2 = 0;
    std::uint64_t l1 = 0;
    for (int i = 0; i < 256; ++i) {
        t1 += h1[i];
        t2 += h2[i];
        l1 += h1[i] > h2[i] ? h1[i] - h2[i] : h2[i] - h1[i];
    }
    if (t1 == 0 || t1 != t2) {
        throw std::invalid_argument("histograms must cover equal-size planes");
    }
    return double(l1) / (2.0 * double(t1));
}

double bitrate_delta(std::uint64_t bits_encrypted, std::uint64_t bits_plain) {
    if (bits_plain == 0) {
        throw std::invalid_argument("plain bit count must be positive");
    }
    return (double(bits_encrypted) - double(bits_plain)) / double(bits_plain);
}

MetricsReport MetricsReport::compare(const FramePlane& reference, const FramePlane& test,
                                     std::uint64_t bits_test, std::uint64_t bits_reference) {
    MetricsReport r;
    r.psnr_db = psnr(reference, test);
    r.ssim = mlse::ssim(reference, test);
    r.entropy_bits = entropy(test);
    r.npcr = mlse::npcr(reference, test);
    r.uaci = mlse::uaci(reference, test);
    r.bitrate_delta = bits_reference == 0 ? 0.0 : mlse::bitrate_delta(bits_test, bits_reference);
    r.hist = histogram(test);
    return r;
}

std::string MetricsReport::to_json() const {
    nlohmann::json j;
    if (std::isinf(psnr_db)) {
        j["psnr_db"] = nullptr;  // identical frames
    } else {
        j["psnr_db"] = psnr_db;
    }
    j["ssim"] = ssim;
    j["entropy_bits"] = entropy_bits;
    j["npcr"] = npcr;
    j["uaci"] = uaci;
    j["bitrate_delta"] = bitrate_delta;
    return j.dump();
}

std::string MetricsReport::csv_header() {
    return "psnr_db,ssim,entropy_bits,npcr,uaci,bitrate_delta";
}

std::string MetricsReport::to_csv_row() const {
    std::string row;
    row += std::isinf(psnr_db) ? "" : format_double(psnr_db);
    for (double v : {ssim, entropy_bits, npcr, uaci, bitrate_delta}) {
        row += ',';
        row += format_double(v);
    }
    return row;
}

}  // namespace mlse
