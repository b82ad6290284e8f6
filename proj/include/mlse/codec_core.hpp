#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mlse/frame.hpp"
#include "mlse/syntax.hpp"

namespace mlse {

using Block8 = std::array<std::uint8_t, 64>;          // 8x8 samples, row-major
using ResidualBlock = std::array<int, 64>;            // signed sample differences
using CoeffArray = std::array<double, 64>;             // transform coefficients

/// Quantization parameter and its exponential step size, qstep = 2^((qp-4)/6).
struct QuantParams {
    int qp = 25;
    double qstep = 1.0;

    static QuantParams from_qp(int qp);
};

/// Reconstructed neighbor samples for one 8x8 block: the top-left corner,
/// 16 above/above-right samples (left to right) and 16 left/below-left
/// samples (top to bottom). Fully populated after construction; unavailable
/// neighbors are filled by the standard clockwise padding.
struct ReferenceSamples {
    std::uint8_t corner = 0;
    std::array<std::uint8_t, 16> above{};
    std::array<std::uint8_t, 16> left{};
};

ReferenceSamples build_reference_samples(const FramePlane& recon, int bx, int by);

Block8 predict_block(IntraMode mode, const ReferenceSamples& refs);

/// HEVC-style 3-entry most-probable-modes list. Absent neighbors default to
/// DC; the result always holds 3 distinct modes.
std::array<IntraMode, 3> mpm_list(std::optional<IntraMode> left, std::optional<IntraMode> above);

ModeSyntax encode_mode(IntraMode mode, const std::array<IntraMode, 3>& mpm);
IntraMode decode_mode(const ModeSyntax& syntax, const std::array<IntraMode, 3>& mpm);

std::uint64_t block_sse(std::span<const std::uint8_t, 64> a, std::span<const std::uint8_t, 64> b);

struct ModeDecision {
    IntraMode mode;
    ModeSyntax syntax;
};

/// Evaluates all 35 modes by SSE against `orig`, ties broken by lowest mode
/// index, and encodes the winner against the MPM list.
ModeDecision select_mode(const Block8& orig, const ReferenceSamples& refs,
                         const std::array<IntraMode, 3>& mpm);

// Orthonormal 2-D DCT-II over 8x8 residuals; inverse(forward(x)) == x to
// within 1e-6 per entry.
CoeffArray forward_transform(const ResidualBlock& residual);
CoeffArray inverse_transform(const CoeffArray& coeffs);

// level = round-half-away-from-zero(coeff / qstep); dequant = level * qstep.
// Levels beyond 2^15 in magnitude raise RangeError.
std::array<int, 64> quantize(const CoeffArray& coeffs, const QuantParams& q);
CoeffArray dequantize(const std::array<int, 64>& levels, const QuantParams& q);

// Standard 8x8 zigzag scan, (row,col) = (0,0),(0,1),(1,0),(2,0),(1,1),...
std::array<int, 64> zigzag(const std::array<int, 64>& block_rowmajor);
std::array<int, 64> inverse_zigzag(const std::array<int, 64>& scan_order);
int zigzag_index(int row, int col);

/// Keystream address of one coded block, minus the purpose tag.
struct BlockAddress {
    std::uint32_t frame_idx = 0;
    std::uint32_t block_idx = 0;
};

/// Interception points for the encryption layer. Both transforms are pure
/// functions of (site, input); the codec applies them only to the *written*
/// syntax, never to the reconstruction path.
struct SyntaxHooks {
    std::function<ModeSyntax(const BlockAddress&, const ModeSyntax&)> mode_syntax;
    std::function<std::uint8_t(const BlockAddress&, int, std::uint8_t)> t1_sign;
};

const SyntaxHooks& identity_hooks();

struct EncodedFrame {
    std::vector<std::uint8_t> payload;
    FramePlane recon;
};

/// Codes blocks in raster order: mode selection, residual DCT, quantization,
/// zigzag, entropy coding. Hooks rewrite the written mode syntax and
/// trailing-ones signs; reconstruction always uses the true values, so a
/// keyed decode is bit-identical to the unencrypted reconstruction.
EncodedFrame encode_frame(const FramePlane& orig, const QuantParams& q, const SyntaxHooks& hooks,
                          std::uint32_t frame_idx = 0);

/// Inverse pipeline. Hooks run on the parsed syntax before reconstruction:
/// correct-key hooks invert the encryption, identity hooks yield the
/// attacker view of an encrypted stream.
FramePlane decode_frame(std::span<const std::uint8_t> payload, int width, int height,
                        const QuantParams& q, const SyntaxHooks& hooks, std::uint32_t frame_idx = 0);

}  // namespace mlse
