#include "mlse/codec_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mlse/entropy_codec.hpp"
#include "mlse/errors.hpp"

namespace mlse {

namespace {

// intraPredAngle for modes 2..34 (index mode-2).
constexpr std::array<int, 33> kAngleTable = {
    32, 26, 21, 17, 13, 9, 5, 2, 0, -2, -5, -9, -13, -17, -21, -26, -32,
    -26, -21, -17, -13, -9, -5, -2, 0, 2, 5, 9, 13, 17, 21, 26, 32};

int inv_angle(int angle) {
    switch (angle < 0 ? -angle : angle) {
        case 2: return 4096;
        case 5: return 1638;
        case 9: return 910;
        case 13: return 630;
        case 17: return 482;
        case 21: return 390;
        case 26: return 315;
        case 32: return 256;
        default: throw std::invalid_argument("no inverse angle for a zero-angle mode");
    }
}

std::uint8_t clamp8(int v) { return std::uint8_t(std::clamp(v, 0, 255)); }

Block8 predict_planar(const ReferenceSamples& refs) {
    Block8 out{};
    const int top_right = refs.above[kBlockSize];  // first above-right sample
    const int bottom_left = refs.left[kBlockSize];  // first below-left sample
    for (int y = 0; y < kBlockSize; ++y) {
        for (int x = 0; x < kBlockSize; ++x) {
            const int horiz = (kBlockSize - 1 - x) * refs.left[y] + (x + 1) * top_right;
            const int vert = (kBlockSize - 1 - y) * refs.above[x] + (y + 1) * bottom_left;
            out[y * kBlockSize + x] = std::uint8_t((horiz + vert + kBlockSize) >> 4);
        }
    }
    return out;
}

Block8 predict_dc(const ReferenceSamples& refs) {
    int sum = 0;
    for (int i = 0; i < 16; ++i) {
        sum += refs.above[i] + refs.left[i];
    }
    const std::uint8_t dc = std::uint8_t((sum + 16) >> 5);
    Block8 out{};
    out.fill(dc);
    return out;
}

Block8 predict_angular(int mode, const ReferenceSamples& refs) {
    const int angle = kAngleTable[mode - 2];
    const bool vertical = mode >= 18;
    const auto& main_side = vertical ? refs.above : refs.left;
    const auto& other_side = vertical ? refs.left : refs.above;

    // Main reference line; index 0 holds the corner, negative indices the
    // projected extension for negative angles.
    std::array<int, 33> storage{};
    auto ref = [&storage](int i) -> int& { return storage[std::size_t(i + 16)]; };
    ref(0) = refs.corner;
    for (int k = 1; k <= 16; ++k) {
        ref(k) = main_side[k - 1];
    }
    if (angle < 0) {
        const int inv = inv_angle(angle);
        const int lowest = (kBlockSize * angle) >> 5;
        for (int x = -1; x >= lowest; --x) {
            ref(x) = other_side[((-x * inv + 128) >> 8) - 1];
        }
    }

    Block8 out{};
    for (int b = 0; b < kBlockSize; ++b) {  // distance from the reference line
        const int pos = (b + 1) * angle;
        const int idx = pos >> 5;
        const int frac = pos & 31;
        for (int a = 0; a < kBlockSize; ++a) {  // position along the reference line
            const int i1 = a + idx + 1;
            const int v =
                frac == 0 ? ref(i1) : ((32 - frac) * ref(i1) + frac * ref(i1 + 1) + 16) >> 5;
            // Vertical-family modes fill rows top-down; horizontal-family
            // modes are the transpose.
            if (vertical) {
                out[b * kBlockSize + a] = std::uint8_t(v);
            } else {
                out[a * kBlockSize + b] = std::uint8_t(v);
            }
        }
    }
    return out;
}

// Orthonormal DCT-II basis, kDctBasis[k][n] = alpha_k * cos(pi*(2n+1)*k/16).
const std::array<std::array<double, 8>, 8>& dct_basis() {
    static const auto basis = [] {
        std::array<std::array<double, 8>, 8> c{};
        for (int k = 0; k < 8; ++k) {
            const double alpha = k == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            for (int n = 0; n < 8; ++n) {
                c[k][n] = alpha * std::cos(std::numbers::pi * (2 * n + 1) * k / 16.0);
            }
        }
        return c;
    }();
    return basis;
}

const std::array<int, 64>& zigzag_table() {
    static const auto table = [] {
        std::array<int, 64> t{};
        int r = 0;
        int c = 0;
        for (int i = 0; i < 64; ++i) {
            t[i] = r * 8 + c;
            if (((r + c) & 1) == 0) {  // even diagonal: walking up-right
                if (c == 7) {
                    ++r;
                } else if (r == 0) {
                    ++c;
                } else {
                    --r;
                    ++c;
                }
            } else {  // odd diagonal: walking down-left
                if (r == 7) {
                    ++c;
                } else if (c == 0) {
                    ++r;
                } else {
                    ++r;
                    --c;
                }
            }
        }
        return t;
    }();
    return table;
}

void apply_t1_sign_hooks(CoeffBlock& block, const SyntaxHooks& hooks, const BlockAddress& addr) {
    if (!hooks.t1_sign) {
        return;
    }
    for (int i = 0; i < block.t1_count; ++i) {
        const std::uint8_t sign = hooks.t1_sign(addr, i, block.t1_signs[i]);
        block.t1_signs[i] = sign & 1;
        block.levels[block.t1_position(i)] = (sign & 1) ? 1 : -1;
    }
}

}  // namespace

QuantParams QuantParams::from_qp(int qp) {
    if (qp < 0 || qp > 51) {
        throw std::invalid_argument("qp must be in [0,51], got " + std::to_string(qp));
    }
    return QuantParams{qp, std::exp2((qp - 4) / 6.0)};
}

ReferenceSamples build_reference_samples(const FramePlane& recon, int bx, int by) {
    if (bx < 0 || by < 0 || bx >= recon.blocks_wide() || by >= recon.blocks_high()) {
        throw std::invalid_argument("block address out of range");
    }
    const int x0 = bx * kBlockSize;
    const int y0 = by * kBlockSize;

    // Clockwise reference line: below-left bottom -> left top -> corner ->
    // above left -> above-right end. Raster coding order makes below-left
    // always unavailable.
    std::array<int, 33> value{};
    std::array<bool, 33> avail{};
    const bool has_left = bx > 0;
    const bool has_above = by > 0;
    const bool has_above_right = by > 0 && bx + 1 < recon.blocks_wide();

    for (int j = 0; j < 16; ++j) {
        const int row = 15 - j;  // offset below y0 for j<8? no: row offset within the 16 left samples
        const int y = y0 + row;
        const bool in_block_range = row < kBlockSize;
        if (has_left && in_block_range) {
            avail[j] = true;
            value[j] = recon.at(x0 - 1, y);
        }
    }
    if (has_left && has_above) {
        avail[16] = true;
        value[16] = recon.at(x0 - 1, y0 - 1);
    }
    for (int i = 0; i < 16; ++i) {
        const int x = x0 + i;
        const bool in_range = i < kBlockSize ? has_above : has_above_right;
        if (in_range) {
            avail[17 + i] = true;
            value[17 + i] = recon.at(x, y0 - 1);
        }
    }

    ReferenceSamples refs;
    if (std::none_of(avail.begin(), avail.end(), [](bool a) { return a; })) {
        refs.corner = 128;
        refs.above.fill(128);
        refs.left.fill(128);
        return refs;
    }
    if (!avail[0]) {
        const auto first = std::find(avail.begin(), avail.end(), true);
        value[0] = value[std::size_t(first - avail.begin())];
    }
    for (int i = 1; i < 33; ++i) {
        if (!avail[i]) {
            value[i] = value[i - 1];
        }
    }

    for (int j = 0; j < 16; ++j) {
        refs.left[15 - j] = std::uint8_t(value[j]);
    }
    refs.corner = std::uint8_t(value[16]);
    for (int i = 0; i < 16; ++i) {
        refs.above[i] = std::uint8_t(value[17 + i]);
    }
    return refs;
}

Block8 predict_block(IntraMode mode, const ReferenceSamples& refs) {
    switch (mode.index()) {
        case IntraMode::kPlanar: return predict_planar(refs);
        case IntraMode::kDc: return predict_dc(refs);
        default: return predict_angular(mode.index(), refs);
    }
}

std::array<IntraMode, 3> mpm_list(std::optional<IntraMode> left, std::optional<IntraMode> above) {
    const IntraMode l = left.value_or(IntraMode(IntraMode::kDc));
    const IntraMode a = above.value_or(IntraMode(IntraMode::kDc));
    if (l == a) {
        if (!l.is_angular()) {
            return {IntraMode(IntraMode::kPlanar), IntraMode(IntraMode::kDc), IntraMode(26)};
        }
        const int m = l.index();
        const int prev = m - 1 < IntraMode::kFirstAngular ? IntraMode::kLastAngular : m - 1;
        const int next = m + 1 > IntraMode::kLastAngular ? IntraMode::kFirstAngular : m + 1;
        return {l, IntraMode(prev), IntraMode(next)};
    }
    for (const int fill : {IntraMode::kPlanar, IntraMode::kDc, 26}) {
        const IntraMode candidate(fill);
        if (candidate != l && candidate != a) {
            return {l, a, candidate};
        }
    }
    throw std::logic_error("mpm fill list exhausted");  // unreachable: 3 candidates, 2 taken
}

ModeSyntax encode_mode(IntraMode mode, const std::array<IntraMode, 3>& mpm) {
    for (int i = 0; i < 3; ++i) {
        if (mpm[i] == mode) {
            return ModeSyntax::mpm(i);
        }
    }
    int rank = 0;
    for (int m = 0; m < mode.index(); ++m) {
        const IntraMode candidate(m);
        if (candidate != mpm[0] && candidate != mpm[1] && candidate != mpm[2]) {
            ++rank;
        }
    }
    return ModeSyntax::remainder(rank);
}

IntraMode decode_mode(const ModeSyntax& syntax, const std::array<IntraMode, 3>& mpm) {
    if (syntax.mpm_flag) {
        if (syntax.mpm_idx > 2) {
            throw std::invalid_argument("mpm_idx must be in [0,2]");
        }
        return mpm[syntax.mpm_idx];
    }
    if (syntax.rem_idx >= kNumRemainderModes) {
        throw std::invalid_argument("rem_idx must be in [0,31]");
    }
    int rank = 0;
    for (int m = 0; m < kNumIntraModes; ++m) {
        const IntraMode candidate(m);
        if (candidate == mpm[0] || candidate == mpm[1] || candidate == mpm[2]) {
            continue;
        }
        if (rank == syntax.rem_idx) {
            return candidate;
        }
        ++rank;
    }
    throw std::logic_error("remainder rank exhausted");  // unreachable: 32 non-MPM modes
}

std::uint64_t block_sse(std::span<const std::uint8_t, 64> a, std::span<const std::uint8_t, 64> b) {
    std::uint64_t sse = 0;
    for (int i = 0; i < 64; ++i) {
        const int d = int(a[i]) - int(b[i]);
        sse += std::uint64_t(d * d);
    }
    return sse;
}

ModeDecision select_mode(const Block8& orig, const ReferenceSamples& refs,
                         const std::array<IntraMode, 3>& mpm) {
    IntraMode best(0);
    std::uint64_t best_sse = UINT64_MAX;
    for (int m = 0; m < kNumIntraModes; ++m) {
        const IntraMode mode(m);
        const Block8 pred = predict_block(mode, refs);
        const std::uint64_t sse = block_sse(orig, pred);
        if (sse < best_sse) {
            best_sse = sse;
            best = mode;
        }
    }
    return ModeDecision{best, encode_mode(best, mpm)};
}

CoeffArray forward_transform(const ResidualBlock& residual) {
    const auto& c = dct_basis();
    std::array<std::array<double, 8>, 8> tmp{};
    for (int k = 0; k < 8; ++k) {
        for (int col = 0; col < 8; ++col) {
            double acc = 0;
            for (int r = 0; r < 8; ++r) {
                acc += c[k][r] * residual[r * 8 + col];
            }
            tmp[k][col] = acc;
        }
    }
    CoeffArray out{};
    for (int k = 0; k < 8; ++k) {
        for (int l = 0; l < 8; ++l) {
            double acc = 0;
            for (int col = 0; col < 8; ++col) {
                acc += tmp[k][col] * c[l][col];
            }
            out[k * 8 + l] = acc;
        }
    }
    return out;
}

CoeffArray inverse_transform(const CoeffArray& coeffs) {
    const auto& c = dct_basis();
    std::array<std::array<double, 8>, 8> tmp{};
    for (int r = 0; r < 8; ++r) {
        for (int l = 0; l < 8; ++l) {
            double acc = 0;
            for (int k = 0; k < 8; ++k) {
                acc += c[k][r] * coeffs[k * 8 + l];
            }
            tmp[r][l] = acc;
        }
    }
    CoeffArray out{};
    for (int r = 0; r < 8; ++r) {
        for (int col = 0; col < 8; ++col) {
            double acc = 0;
            for (int l = 0; l < 8; ++l) {
                acc += tmp[r][l] * c[l][col];
            }
            out[r * 8 + col] = acc;
        }
    }
    return out;
}

std::array<int, 64> quantize(const CoeffArray& coeffs, const QuantParams& q) {
    std::array<int, 64> levels{};
    for (int i = 0; i < 64; ++i) {
        const long long level = std::llround(coeffs[i] / q.qstep);
        if (level > 32768 || level < -32768) {
            throw RangeError("quantized level magnitude exceeds 2^15");
        }
        levels[i] = int(level);
    }
    return levels;
}

CoeffArray dequantize(const std::array<int, 64>& levels, const QuantParams& q) {
    CoeffArray out{};
    for (int i = 0; i < 64; ++i) {
        out[i] = levels[i] * q.qstep;
    }
    return out;
}

std::array<int, 64> zigzag(const std::array<int, 64>& block_rowmajor) {
    const auto& table = zigzag_table();
    std::array<int, 64> out{};
    for (int i = 0; i < 64; ++i) {
        out[i] = block_rowmajor[table[i]];
    }
    return out;
}

std::array<int, 64> inverse_zigzag(const std::array<int, 64>& scan_order) {
    const auto& table = zigzag_table();
    std::array<int, 64> out{};
    for (int i = 0; i < 64; ++i) {
        out[table[i]] = scan_order[i];
    }
    return out;
}

int zigzag_index(int row, int col) {
    if (row < 0 || row > 7 || col < 0 || col > 7) {
        throw std::invalid_argument("zigzag position out of range");
    }
    const auto& table = zigzag_table();
    for (int i = 0; i < 64; ++i) {
        if (table[i] == row * 8 + col) {
            return i;
        }
    }
    throw std::logic_error("zigzag table incomplete");  // unreachable
}

const SyntaxHooks& identity_hooks() {
    static const SyntaxHooks hooks{
        [](const BlockAddress&, const ModeSyntax& s) { return s; },
        [](const BlockAddress&, int, std::uint8_t sign) { return sign; },
    };
    return hooks;
}

EncodedFrame encode_frame(const FramePlane& orig, const QuantParams& q, const SyntaxHooks& hooks,
                          std::uint32_t frame_idx) {
    const int bw = orig.blocks_wide();
    const int bh = orig.blocks_high();
    FramePlane recon(orig.width(), orig.height(), 0);
    std::vector<IntraMode> modes(std::size_t(bw) * bh);
    BitWriter sink;

    Block8 orig_block{};
    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            const std::uint32_t block_idx = std::uint32_t(by) * bw + bx;
            const BlockAddress addr{frame_idx, block_idx};

            const ReferenceSamples refs = build_reference_samples(recon, bx, by);
            const auto mpm = mpm_list(
                bx > 0 ? std::optional(modes[block_idx - 1]) : std::nullopt,
                by > 0 ? std::optional(modes[block_idx - bw]) : std::nullopt);
            orig.extract_block(bx, by, orig_block);
            const ModeDecision decision = select_mode(orig_block, refs, mpm);

            const Block8 pred = predict_block(decision.mode, refs);
            ResidualBlock residual{};
            for (int i = 0; i < 64; ++i) {
                residual[i] = int(orig_block[i]) - int(pred[i]);
            }
            const auto levels = quantize(forward_transform(residual), q);
            const CoeffBlock block = CoeffBlock::from_levels(zigzag(levels));

            ModeSyntax written_syntax = decision.syntax;
            if (hooks.mode_syntax) {
                written_syntax = hooks.mode_syntax(addr, written_syntax);
            }
            write_mode_syntax(sink, written_syntax);
            CoeffBlock written_block = block;
            apply_t1_sign_hooks(written_block, hooks, addr);
            write_coeff_block(sink, written_block);

            // Reconstruction from the true (pre-hook) mode and levels.
            const CoeffArray res = inverse_transform(dequantize(levels, q));
            Block8 rec{};
            for (int i = 0; i < 64; ++i) {
                rec[i] = clamp8(int(std::lround(pred[i] + res[i])));
            }
            recon.store_block(bx, by, rec);
            modes[block_idx] = decision.mode;
        }
    }
    return EncodedFrame{sink.take_bytes(), std::move(recon)};
}

FramePlane decode_frame(std::span<const std::uint8_t> payload, int width, int height,
                        const QuantParams& q, const SyntaxHooks& hooks, std::uint32_t frame_idx) {
    FramePlane recon(width, height, 0);
    const int bw = recon.blocks_wide();
    const int bh = recon.blocks_high();
    std::vector<IntraMode> modes(std::size_t(bw) * bh);
    BitReader source(payload);

    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            const std::uint32_t block_idx = std::uint32_t(by) * bw + bx;
            const BlockAddress addr{frame_idx, block_idx};

            ModeSyntax syntax = read_mode_syntax(source);
            if (hooks.mode_syntax) {
                syntax = hooks.mode_syntax(addr, syntax);
            }
            const auto mpm = mpm_list(
                bx > 0 ? std::optional(modes[block_idx - 1]) : std::nullopt,
                by > 0 ? std::optional(modes[block_idx - bw]) : std::nullopt);
            const IntraMode mode = decode_mode(syntax, mpm);

            CoeffBlock block = read_coeff_block(source);
            apply_t1_sign_hooks(block, hooks, addr);

            const auto levels = inverse_zigzag(block.levels);
            const CoeffArray res = inverse_transform(dequantize(levels, q));
            const ReferenceSamples refs = build_reference_samples(recon, bx, by);
            const Block8 pred = predict_block(mode, refs);
            Block8 rec{};
            for (int i = 0; i < 64; ++i) {
                rec[i] = clamp8(int(std::lround(pred[i] + res[i])));
            }
            recon.store_block(bx, by, rec);
            modes[block_idx] = mode;
        }
    }
    return recon;
}

}  // namespace mlse
