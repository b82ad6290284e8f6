#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mlse/syntax.hpp"

namespace mlse {

/// Most-significant-bit-first bit sink. The byte buffer grows as bits are
/// written; the final byte is zero-padded.
class BitWriter {
public:
    void put_bit(std::uint8_t bit);
    void put_bits(std::uint32_t value, int count);  // MSB of `count` bits first

    std::uint64_t bit_count() const { return bit_count_; }

    /// Finished byte buffer (zero-padded).
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t> take_bytes() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bit_count_ = 0;
};

/// Most-significant-bit-first reader over a byte buffer. Reading past the
/// end raises ParseError with the offending bit offset.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t read_bit();
    std::uint32_t read_bits(int count);

    std::uint64_t bit_position() const { return bit_position_; }
    std::uint64_t bits_remaining() const { return std::uint64_t(bytes_.size()) * 8 - bit_position_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::uint64_t bit_position_ = 0;
};

// Order-0 exp-Golomb, v in [0, 2^31). A prefix of more than 31 zeros on read
// is a ParseError.
void exp_golomb_write(BitWriter& sink, std::uint32_t value);
std::uint32_t exp_golomb_read(BitReader& source);

// Mode syntax layout: 1 bit mpm_flag; if set, truncated unary mpm_idx
// (0 -> "0", 1 -> "10", 2 -> "11"); otherwise 5-bit fixed rem_idx.
void write_mode_syntax(BitWriter& sink, const ModeSyntax& syntax);
ModeSyntax read_mode_syntax(BitReader& source);

// Coefficient block layout:
//   exp-Golomb of (last_pos + 1), 0 meaning an empty block; if nonempty:
//   significance bits for scan positions 0..last_pos-1 (last_pos implied),
//   2-bit t1_count, t1_count sign bits (highest frequency first, 1 =
//   positive), then for each remaining nonzero in reverse scan order
//   exp-Golomb of (|level| - 1) and one sign bit (1 = positive).
// The significance map fixes the nonzero count, so no encryption transform
// ever touches it.
void write_coeff_block(BitWriter& sink, const CoeffBlock& block);
CoeffBlock read_coeff_block(BitReader& source);

}  // namespace mlse
