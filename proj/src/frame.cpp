#include "mlse/frame.hpp"

#include <stdexcept>
#include <string>

namespace mlse {

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0 || width % kBlockSize != 0 || height % kBlockSize != 0) {
        throw std::invalid_argument("frame dimensions must be positive multiples of 8, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

FramePlane::FramePlane(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), samples_(std::size_t(width) * height, fill) {
    check_dims(width, height);
}

FramePlane::FramePlane(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    check_dims(width, height);
    if (samples_.size() != std::size_t(width) * height) {
        throw std::invalid_argument("sample buffer size does not match frame dimensions");
    }
}

void FramePlane::extract_block(int bx, int by, std::span<std::uint8_t, 64> out) const {
    if (bx < 0 || by < 0 || bx >= blocks_wide() || by >= blocks_high()) {
        throw std::invalid_argument("block address out of range");
    }
    const int x0 = bx * kBlockSize;
    const int y0 = by * kBlockSize;
    for (int y = 0; y < kBlockSize; ++y) {
        for (int x = 0; x < kBlockSize; ++x) {
            out[std::size_t(y) * kBlockSize + x] = at(x0 + x, y0 + y);
        }
    }
}

void FramePlane::store_block(int bx, int by, std::span<const std::uint8_t, 64> in) {
    if (bx < 0 || by < 0 || bx >= blocks_wide() || by >= blocks_high()) {
        throw std::invalid_argument("block address out of range");
    }
    const int x0 = bx * kBlockSize;
    const int y0 = by * kBlockSize;
    for (int y = 0; y < kBlockSize; ++y) {
        for (int x = 0; x < kBlockSize; ++x) {
            at(x0 + x, y0 + y) = in[std::size_t(y) * kBlockSize + x];
        }
    }
}

}  // namespace mlse
