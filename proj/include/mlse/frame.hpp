#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mlse {

inline constexpr int kBlockSize = 8;

// One 8-bit luma sample grid, row-major. Width and height must be positive
// multiples of 8; every codec and metric in this project operates on these.
class FramePlane {
public:
    FramePlane() = default;
    FramePlane(int width, int height, std::uint8_t fill = 0);
    FramePlane(int width, int height, std::vector<std::uint8_t> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    int blocks_wide() const { return width_ / kBlockSize; }
    int blocks_high() const { return height_ / kBlockSize; }
    std::size_t pixel_count() const { return samples_.size(); }

    std::uint8_t at(int x, int y) const { return samples_[std::size_t(y) * width_ + x]; }
    std::uint8_t& at(int x, int y) { return samples_[std::size_t(y) * width_ + x]; }

    const std::vector<std::uint8_t>& samples() const { return samples_; }
    std::vector<std::uint8_t>& samples() { return samples_; }

    // Copies the 8x8 block at block coordinates (bx, by) into `out`,
    // row-major.
    void extract_block(int bx, int by, std::span<std::uint8_t, 64> out) const;
    void store_block(int bx, int by, std::span<const std::uint8_t, 64> in);

    bool operator==(const FramePlane& other) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

}  // namespace mlse
