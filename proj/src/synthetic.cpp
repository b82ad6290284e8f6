#include "mlse/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mlse {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Lattice value in [0,1), pure in all arguments.
double lattice_value(std::uint64_t seed, int octave, long i, long j) {
    const std::uint64_t h = splitmix64(seed ^ splitmix64(std::uint64_t(octave) * 0xA24BAED4963EE407ull ^
                                                         std::uint64_t(i) * 0x9FB21C651E98DF25ull ^
                                                         std::uint64_t(j) * 0xD6E8FEB86659FD93ull));
    return double(h >> 11) * 0x1.0p-53;
}

// Smooth toroidal value noise: bilinear interpolation of a seed-derived
// lattice with the given cell size.
double value_noise(std::uint64_t seed, int octave, int cell, int width, int height, int x, int y) {
    const int cells_x = (width + cell - 1) / cell;
    const int cells_y = (height + cell - 1) / cell;
    const int i = x / cell;
    const int j = y / cell;
    const double fx = double(x % cell) / cell;
    const double fy = double(y % cell) / cell;
    const double v00 = lattice_value(seed, octave, i, j);
    const double v10 = lattice_value(seed, octave, (i + 1) % cells_x, j);
    const double v01 = lattice_value(seed, octave, i, (j + 1) % cells_y);
    const double v11 = lattice_value(seed, octave, (i + 1) % cells_x, (j + 1) % cells_y);
    const double top = v00 + (v10 - v00) * fx;
    const double bottom = v01 + (v11 - v01) * fx;
    return top + (bottom - top) * fy;
}

FramePlane gradient_pan_frame(std::uint64_t, int width, int height, int frame_idx) {
    // V(u) for u in [0, w+h-2], translated along the diagonal and wrapping,
    // which sweeps a sharp 255->0 seam across later frames. Frame 0 is the
    // pure ramp.
    constexpr int kStep = 5;
    const int period = width + height - 1;
    const double scale = 255.0 / double(width + height - 2);
    FramePlane plane(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const int u = (x + y + frame_idx * kStep) % period;
            plane.at(x, y) = std::uint8_t(std::lround(u * scale));
        }
    }
    return plane;
}

struct Rect {
    int x0;
    int y0;
    int w;
    int h;
    int dx;
    int dy;
    std::uint8_t value;
};

FramePlane moving_blocks_frame(std::uint64_t seed, int width, int height, int frame_idx) {
    // One rectangle per cell of a 6x4 grid, jittered by the seed, each
    // translating 2 px/frame along a seed-chosen axis and wrapping.
    constexpr int kGridX = 6;
    constexpr int kGridY = 4;
    std::mt19937_64 rng(splitmix64(seed ^ 0x6D6F76696E67ull));
    std::vector<Rect> rects;
    rects.reserve(kGridX * kGridY);
    const int cell_w = width / kGridX;
    const int cell_h = height / kGridY;
    for (int gy = 0; gy < kGridY; ++gy) {
        for (int gx = 0; gx < kGridX; ++gx) {
            Rect r{};
            r.w = cell_w / 2 + int(rng() % std::uint64_t(cell_w / 2));
            r.h = cell_h / 2 + int(rng() % std::uint64_t(cell_h / 2));
            r.x0 = gx * cell_w + int(rng() % std::uint64_t(cell_w));
            r.y0 = gy * cell_h + int(rng() % std::uint64_t(cell_h));
            const bool bright = ((gx + gy) & 1) != 0;
            const int span = int(rng() % 40);
            r.value = std::uint8_t(bright ? 215 + span : 45 - span);
            switch (rng() % 4) {
                case 0: r.dx = 2; break;
                case 1: r.dx = -2; break;
                case 2: r.dy = 2; break;
                default: r.dy = -2; break;
            }
            rects.push_back(r);
        }
    }

    // Mid-gray carries a static hash dither, the way camera noise rides on
    // flat walls in the usual clips; a perfectly flat field would leave the
    // residual path with nothing to code.
    FramePlane plane(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::uint64_t h = splitmix64(seed ^ (std::uint64_t(y) << 20 | std::uint64_t(x)));
            plane.at(x, y) = std::uint8_t(121 + int(h % 15));  // 121..135, mean 128
        }
    }
    for (const Rect& r : rects) {
        const int x0 = ((r.x0 + r.dx * frame_idx) % width + width) % width;
        const int y0 = ((r.y0 + r.dy * frame_idx) % height + height) % height;
        for (int j = 0; j < r.h; ++j) {
            const int y = (y0 + j) % height;
            for (int i = 0; i < r.w; ++i) {
                plane.at((x0 + i) % width, y) = r.value;
            }
        }
    }
    return plane;
}

FramePlane textured_noise_frame(std::uint64_t seed, int width, int height, int frame_idx) {
    // Three value-noise octaves on a torus, panning 1 px/frame horizontally.
    // The sigmoid stretches the midtone-heavy octave sum into full-range
    // dark/bright patches.
    FramePlane plane(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const int sx = (x + frame_idx) % width;
            const double grain = value_noise(seed, 0, 4, width, height, sx, y);
            const double fine = value_noise(seed, 1, 8, width, height, sx, y);
            const double coarse = value_noise(seed, 2, 32, width, height, sx, y);
            const double v = 0.2 * grain + 0.35 * fine + 0.45 * coarse;
            const double stretched = 1.0 / (1.0 + std::exp(-9.0 * (v - 0.5)));
            plane.at(x, y) = std::uint8_t(std::lround(8 + stretched * 240));
        }
    }
    return plane;
}

}  // namespace

SyntheticId synthetic_from_name(const std::string& name) {
    if (name == "gradient_pan") return SyntheticId::GradientPan;
    if (name == "moving_blocks") return SyntheticId::MovingBlocks;
    if (name == "textured_noise") return SyntheticId::TexturedNoise;
    throw std::invalid_argument("unknown synthetic sequence '" + name + "'");
}

std::string synthetic_name(SyntheticId id) {
    switch (id) {
        case SyntheticId::GradientPan: return "gradient_pan";
        case SyntheticId::MovingBlocks: return "moving_blocks";
        case SyntheticId::TexturedNoise: return "textured_noise";
    }
    throw std::invalid_argument("bad synthetic id");
}

bool is_synthetic_name(const std::string& name) {
    return name == "gradient_pan" || name == "moving_blocks" || name == "textured_noise";
}

FramePlane synthetic_frame(SyntheticId id, std::uint64_t seed, int width, int height,
                           int frame_idx) {
    if (width % kBlockSize != 0 || height % kBlockSize != 0 || width <= 0 || height <= 0) {
        throw std::invalid_argument("synthetic dimensions must be positive multiples of 8");
    }
    switch (id) {
        case SyntheticId::GradientPan: return gradient_pan_frame(seed, width, height, frame_idx);
        case SyntheticId::MovingBlocks: return moving_blocks_frame(seed, width, height, frame_idx);
        case SyntheticId::TexturedNoise: return textured_noise_frame(seed, width, height, frame_idx);
    }
    throw std::invalid_argument("bad synthetic id");
}

std::vector<FramePlane> generate_synthetic(SyntheticId id, std::uint64_t seed, int width,
                                           int height, int count) {
    std::vector<FramePlane> frames;
    frames.reserve(std::size_t(count));
    for (int i = 0; i < count; ++i) {
        frames.push_back(synthetic_frame(id, seed, width, height, i));
    }
    return frames;
}

}  // namespace mlse
