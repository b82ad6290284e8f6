#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace mlse {

inline constexpr int kNumIntraModes = 35;
inline constexpr int kNumMpmModes = 3;
inline constexpr int kNumRemainderModes = kNumIntraModes - kNumMpmModes;  // 32

/// One of the 35 intra predictors: 0 = planar, 1 = DC, 2..34 = angular.
class IntraMode {
public:
    static constexpr int kPlanar = 0;
    static constexpr int kDc = 1;
    static constexpr int kFirstAngular = 2;
    static constexpr int kLastAngular = 34;

    constexpr IntraMode() = default;
    explicit constexpr IntraMode(int index) : index_(std::uint8_t(index)) {
        if (index < 0 || index >= kNumIntraModes) {
            throw std::invalid_argument("intra mode index out of range");
        }
    }

    constexpr int index() const { return index_; }
    constexpr bool is_angular() const { return index_ >= kFirstAngular; }

    constexpr bool operator==(const IntraMode&) const = default;
    constexpr auto operator<=>(const IntraMode&) const = default;

private:
    std::uint8_t index_ = 0;
};

/// Coded representation of an intra mode: either a hit in the 3-entry MPM
/// list (mpm_idx) or the rank of the mode among the 32 non-MPM modes
/// (rem_idx). Exactly one of the two index fields is meaningful.
struct ModeSyntax {
    bool mpm_flag = false;
    std::uint8_t mpm_idx = 0;  // 0..2, valid iff mpm_flag
    std::uint8_t rem_idx = 0;  // 0..31, valid iff !mpm_flag

    static ModeSyntax mpm(int idx) { return ModeSyntax{true, std::uint8_t(idx), 0}; }
    static ModeSyntax remainder(int idx) { return ModeSyntax{false, 0, std::uint8_t(idx)}; }

    bool operator==(const ModeSyntax& o) const {
        if (mpm_flag != o.mpm_flag) return false;
        return mpm_flag ? mpm_idx == o.mpm_idx : rem_idx == o.rem_idx;
    }
};

inline constexpr int kMaxTrailingOnes = 3;

/// Quantized transform levels in scan order plus the trailing-ones view of
/// the tail: t1_count is the number of +-1 levels counted backwards from
/// last_pos, stopping at the first |level| != 1, capped at 3. t1_signs holds
/// one flag per trailing one, highest scan position first, 1 = positive.
struct CoeffBlock {
    std::array<int, 64> levels{};
    int last_pos = -1;  // scan index of the final nonzero, -1 when empty
    int t1_count = 0;
    std::array<std::uint8_t, kMaxTrailingOnes> t1_signs{};

    /// Builds a block from scan-order levels, deriving last_pos and the
    /// trailing-ones structure.
    static CoeffBlock from_levels(const std::array<int, 64>& levels);

    /// Scan position of trailing one `i` (0 = highest frequency).
    int t1_position(int i) const { return last_pos - i; }

    bool operator==(const CoeffBlock& o) const {
        return levels == o.levels;  // the rest is derived
    }
};

}  // namespace mlse
