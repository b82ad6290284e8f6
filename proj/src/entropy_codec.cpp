#include "mlse/entropy_codec.hpp"

#include <cmath>
#include <cstdlib>

#include "mlse/errors.hpp"

namespace mlse {

void BitWriter::put_bit(std::uint8_t bit) {
    if ((bit_count_ & 7) == 0) {
        bytes_.push_back(0);
    }
    if (bit & 1) {
        bytes_.back() |= std::uint8_t(0x80u >> (bit_count_ & 7));
    }
    ++bit_count_;
}

void BitWriter::put_bits(std::uint32_t value, int count) {
    if (count < 0 || count > 32) {
        throw std::invalid_argument("bit count must be in [0,32]");
    }
    for (int i = count - 1; i >= 0; --i) {
        put_bit(std::uint8_t((value >> i) & 1u));
    }
}

std::uint8_t BitReader::read_bit() {
    if (bit_position_ >= std::uint64_t(bytes_.size()) * 8) {
        throw ParseError("bitstream exhausted", bit_position_);
    }
    const std::uint8_t byte = bytes_[bit_position_ >> 3];
    const std::uint8_t bit = (byte >> (7 - (bit_position_ & 7))) & 1u;
    ++bit_position_;
    return bit;
}

std::uint32_t BitReader::read_bits(int count) {
    if (count < 0 || count > 32) {
        throw std::invalid_argument("bit count must be in [0,32]");
    }
    std::uint32_t value = 0;
    for (int i = 0; i < count; ++i) {
        value = value << 1 | read_bit();
    }
    return value;
}

void exp_golomb_write(BitWriter& sink, std::uint32_t value) {
    if (value >= 0x80000000u) {
        throw std::invalid_argument("exp-Golomb value must be below 2^31");
    }
    const std::uint32_t coded = value + 1;
    int length = 0;
    for (std::uint32_t v = coded; v > 1; v >>= 1) {
        ++length;
    }
    for (int i = 0; i < length; ++i) {
        sink.put_bit(0);
    }
    sink.put_bits(coded, length + 1);
}

std::uint32_t exp_golomb_read(BitReader& source) {
    int zeros = 0;
    while (source.read_bit() == 0) {
        if (++zeros > 31) {
            throw ParseError("malformed exp-Golomb prefix", source.bit_position());
        }
    }
    std::uint32_t coded = 1;
    for (int i = 0; i < zeros; ++i) {
        coded = coded << 1 | source.read_bit();
    }
    return coded - 1;
}

void write_mode_syntax(BitWriter& sink, const ModeSyntax& syntax) {
    if (syntax.mpm_flag) {
        if (syntax.mpm_idx > 2) {
            throw std::invalid_argument("mpm_idx must be in [0,2]");
        }
        sink.put_bit(1);
        if (syntax.mpm_idx == 0) {
            sink.put_bit(0);
        } else {
            sink.put_bit(1);
            sink.put_bit(std::uint8_t(syntax.mpm_idx - 1));
        }
    } else {
        if (syntax.rem_idx >= kNumRemainderModes) {
            throw std::invalid_argument("rem_idx must be in [0,31]");
        }
        sink.put_bit(0);
        sink.put_bits(syntax.rem_idx, 5);
    }
}

ModeSyntax read_mode_syntax(BitReader& source) {
    if (source.read_bit() == 1) {
        if (source.read_bit() == 0) {
            return ModeSyntax::mpm(0);
        }
        return ModeSyntax::mpm(1 + source.read_bit());
    }
    return ModeSyntax::remainder(int(source.read_bits(5)));
}

CoeffBlock CoeffBlock::from_levels(const std::array<int, 64>& levels) {
    CoeffBlock block;
    block.levels = levels;
    for (int i = 63; i >= 0; --i) {
        if (levels[i] != 0) {
            block.last_pos = i;
            break;
        }
    }
    for (int i = block.last_pos; i >= 0 && block.t1_count < kMaxTrailingOnes; --i) {
        if (std::abs(levels[i]) != 1) {
            break;
        }
        block.t1_signs[block.t1_count] = levels[i] > 0 ? 1 : 0;
        ++block.t1_count;
    }
    return block;
}

void write_coeff_block(BitWriter& sink, const CoeffBlock& block) {
    exp_golomb_write(sink, std::uint32_t(block.last_pos + 1));
    if (block.last_pos < 0) {
        return;
    }
    for (int i = 0; i < block.last_pos; ++i) {
        sink.put_bit(block.levels[i] != 0);
    }
    sink.put_bits(std::uint32_t(block.t1_count), 2);
    for (int i = 0; i < block.t1_count; ++i) {
        sink.put_bit(block.t1_signs[i]);
    }
    // Remaining nonzeros, highest scan position first.
    for (int i = block.last_pos - block.t1_count; i >= 0; --i) {
        const int level = block.levels[i];
        if (level == 0) {
            continue;
        }
        exp_golomb_write(sink, std::uint32_t(std::abs(level) - 1));
        sink.put_bit(level > 0);
    }
}

CoeffBlock read_coeff_block(BitReader& source) {
    const std::uint32_t coded_last = exp_golomb_read(source);
    if (coded_last > 64) {
        throw CorruptStreamError("coefficient end position out of range", source.bit_position());
    }
    std::array<int, 64> levels{};
    const int last_pos = int(coded_last) - 1;
    if (last_pos < 0) {
        return CoeffBlock{};
    }

    std::array<bool, 64> significant{};
    significant[last_pos] = true;
    for (int i = 0; i < last_pos; ++i) {
        significant[i] = source.read_bit() != 0;
    }

    const int t1_count = int(source.read_bits(2));
    if (t1_count > last_pos + 1) {
        throw CorruptStreamError("trailing-ones count exceeds coefficient count", source.bit_position());
    }
    std::array<std::uint8_t, kMaxTrailingOnes> t1_signs{};
    for (int i = 0; i < t1_count; ++i) {
        const int pos = last_pos - i;
        if (!significant[pos]) {
            throw CorruptStreamError("significance map inconsistent with trailing-ones structure",
                                     source.bit_position());
        }
        t1_signs[i] = source.read_bit();
        levels[pos] = t1_signs[i] ? 1 : -1;
    }

    for (int i = last_pos - t1_count; i >= 0; --i) {
        if (!significant[i]) {
            continue;
        }
        const std::uint32_t magnitude = exp_golomb_read(source) + 1;
        const std::uint8_t sign = source.read_bit();
        const long long value = sign ? (long long)magnitude : -(long long)magnitude;
        if (value > INT32_MAX || value < INT32_MIN) {
            throw CorruptStreamError("coefficient magnitude out of range", source.bit_position());
        }
        levels[i] = int(value);
    }

    CoeffBlock block = CoeffBlock::from_levels(levels);
    // The writer always emits the maximal trailing-ones run; anything else
    // is a non-canonical stream.
    if (block.t1_count != t1_count) {
        throw CorruptStreamError("significance map inconsistent with trailing-ones structure",
                                 source.bit_position());
    }
    return block;
}

}  // namespace mlse
