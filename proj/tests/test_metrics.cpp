#include <doctest.h>

#include <cmath>
#include <random>

#include "mlse/metrics.hpp"
#include "oracles.hpp"

using namespace mlse;
using testsupport::random_plane;

TEST_CASE("psnr of identical planes is the infinity sentinel") {
    const FramePlane x(16, 16, 42);
    CHECK(std::isinf(psnr(x, x)));
}

TEST_CASE("psnr of a plus-one offset is 10*log10(255^2)") {
    FramePlane a(16, 16, 100);
    FramePlane b(16, 16, 101);
    CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(255.0 * 255.0)).epsilon(1e-12));
}

TEST_CASE("psnr matches the naive oracle") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const FramePlane a = random_plane(rng, 8, 8);
        const FramePlane b = random_plane(rng, 8, 8);
        CHECK(std::abs(psnr(a, b) - testsupport::naive_psnr(a, b)) < 1e-9);
    }
}

TEST_CASE("psnr dimension mismatch is a contract violation") {
    const FramePlane a(16, 16);
    const FramePlane b(16, 24);
    CHECK_THROWS_AS((void)psnr(a, b), std::invalid_argument);
    CHECK_THROWS_AS((void)npcr(a, b), std::invalid_argument);
    CHECK_THROWS_AS((void)uaci(a, b), std::invalid_argument);
}

TEST_CASE("ssim of a plane with itself is one") {
    std::mt19937 rng(2);
    const FramePlane x = random_plane(rng, 24, 16);
    CHECK(ssim(x, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ssim of an inverted gradient is low and matches the oracle") {
    FramePlane x(32, 32);
    for (int y = 0; y < 32; ++y) {
        for (int x0 = 0; x0 < 32; ++x0) {
            x.at(x0, y) = std::uint8_t(4 * (x0 + y));
        }
    }
    FramePlane inverted(32, 32);
    for (int y = 0; y < 32; ++y) {
        for (int x0 = 0; x0 < 32; ++x0) {
            inverted.at(x0, y) = std::uint8_t(255 - x.at(x0, y));
        }
    }
    const double value = ssim(x, inverted);
    CHECK(std::abs(value - testsupport::oracle_ssim(x, inverted)) < 1e-9);
    CHECK(value < 0.2);
}

TEST_CASE("ssim of two constants reduces to the luminance term") {
    const FramePlane a(16, 16, 100);
    const FramePlane b(16, 16, 150);
    constexpr double c1 = (0.01 * 255) * (0.01 * 255);
    const double expected = (2.0 * 100 * 150 + c1) / (100.0 * 100 + 150.0 * 150 + c1);
    CHECK(ssim(a, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ssim matches the oracle on random planes") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const FramePlane a = random_plane(rng, 24, 24);
        const FramePlane b = random_plane(rng, 24, 24);
        CHECK(std::abs(ssim(a, b) - testsupport::oracle_ssim(a, b)) < 1e-9);
    }
}

TEST_CASE("ssim window size is enforced") {
    const FramePlane a(8, 8);
    CHECK_THROWS_AS((void)ssim(a, a), std::invalid_argument);
}

TEST_CASE("entropy of degenerate and uniform planes") {
    CHECK(entropy(FramePlane(16, 16, 7)) == 0.0);

    FramePlane uniform(16, 16);
    for (int i = 0; i < 256; ++i) {
        uniform.samples()[std::size_t(i)] = std::uint8_t(i);
    }
    CHECK(entropy(uniform) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("entropy matches the naive oracle") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const FramePlane a = random_plane(rng, 8, 8);
        CHECK(std::abs(entropy(a) - testsupport::naive_entropy(a)) < 1e-12);
    }
}

TEST_CASE("npcr basics") {
    const FramePlane x(8, 8, 9);
    CHECK(npcr(x, x) == 0.0);
    FramePlane y = x;
    y.at(3, 3) = 10;
    CHECK(npcr(x, y) == doctest::Approx(1.0 / 64).epsilon(1e-12));
}

TEST_CASE("npcr of independent random planes approaches 255/256") {
    std::mt19937 rng(5);
    const FramePlane a = random_plane(rng, 1024, 1024);
    const FramePlane b = random_plane(rng, 1024, 1024);
    CHECK(npcr(a, b) == doctest::Approx(255.0 / 256).epsilon(0.01));
}

TEST_CASE("uaci basics") {
    const FramePlane x(8, 8, 50);
    CHECK(uaci(x, x) == 0.0);
    const FramePlane zero(8, 8, 0);
    const FramePlane full(8, 8, 255);
    CHECK(uaci(zero, full) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("npcr and uaci match the naive oracles and are symmetric") {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const FramePlane a = random_plane(rng, 8, 8);
        const FramePlane b = random_plane(rng, 8, 8);
        CHECK(std::abs(npcr(a, b) - testsupport::naive_npcr(a, b)) < 1e-12);
        CHECK(std::abs(uaci(a, b) - testsupport::naive_uaci(a, b)) < 1e-12);
        CHECK(npcr(a, b) == npcr(b, a));
        CHECK(uaci(a, b) == uaci(b, a));
        CHECK(psnr(a, b) == psnr(b, a));
    }
}

TEST_CASE("expected npcr and uaci reproduce the published constants") {
    CHECK(std::abs(expected_npcr(256) - 0.996094) < 5e-7);
    CHECK(std::abs(expected_uaci(256) - 0.334635) < 5e-7);
    CHECK(expected_npcr(2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)expected_npcr(100), std::invalid_argument);
    CHECK_THROWS_AS((void)expected_uaci(0), std::invalid_argument);
    CHECK_THROWS_AS((void)expected_uaci(131072), std::invalid_argument);
}

TEST_CASE("histogram and its distance") {
    const FramePlane zeros(8, 8, 0);
    const Histogram h0 = histogram(zeros);
    CHECK(h0[0] == 64);
    for (int i = 1; i < 256; ++i) {
        CHECK(h0[std::size_t(i)] == 0);
    }
    CHECK(histogram_distance(h0, h0) == 0.0);

    const FramePlane full(8, 8, 255);
    CHECK(histogram_distance(h0, histogram(full)) == doctest::Approx(1.0));

    std::mt19937 rng(7);
    const FramePlane a = random_plane(rng, 16, 16);
    std::uint64_t total = 0;
    for (const std::uint64_t c : histogram(a)) {
        total += c;
    }
    CHECK(total == a.pixel_count());
}

TEST_CASE("bitrate delta") {
    CHECK(bitrate_delta(100, 100) == 0.0);
    CHECK(bitrate_delta(102, 100) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(bitrate_delta(95, 100) == doctest::Approx(-0.05).epsilon(1e-12));
    CHECK_THROWS_AS((void)bitrate_delta(10, 0), std::invalid_argument);
}

TEST_CASE("metrics report serialization") {
    const FramePlane a(16, 16, 10);
    FramePlane b = a;
    b.at(0, 0) = 11;
    const MetricsReport r = MetricsReport::compare(a, b, 102, 100);
    CHECK(r.to_json().find("\"psnr_db\":") != std::string::npos);
    CHECK(MetricsReport::csv_header() == "psnr_db,ssim,entropy_bits,npcr,uaci,bitrate_delta");
    CHECK(r.to_csv_row().find(',') != std::string::npos);

    // Identical planes: psnr serialized as null / empty, never a number.
    const MetricsReport same = MetricsReport::compare(a, a);
    CHECK(same.to_json().find("\"psnr_db\":null") != std::string::npos);
    CHECK(same.to_csv_row().substr(0, 1) == ",");
}
