#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlse/frame.hpp"

namespace mlse {

/// Deterministic stand-ins for the usual CIF test clips. Every generator is
/// a pure function of (id, seed, frame index).
enum class SyntheticId {
    GradientPan,    // translating linear ramp, wrapping at the far corner
    MovingBlocks,   // high-contrast rectangles on mid-gray, 2 px/frame
    TexturedNoise,  // fixed-seed smooth noise field, 1 px/frame
};

SyntheticId synthetic_from_name(const std::string& name);
std::string synthetic_name(SyntheticId id);
bool is_synthetic_name(const std::string& name);

FramePlane synthetic_frame(SyntheticId id, std::uint64_t seed, int width, int height,
                           int frame_idx);

std::vector<FramePlane> generate_synthetic(SyntheticId id, std::uint64_t seed, int width,
                                           int height, int count);

}  // namespace mlse
