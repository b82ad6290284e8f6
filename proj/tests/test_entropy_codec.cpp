#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "mlse/entropy_codec.hpp"
#include "mlse/errors.hpp"

using namespace mlse;

namespace {

std::string bits_of(const BitWriter& w) {
    std::string s;
    for (std::uint64_t i = 0; i < w.bit_count(); ++i) {
        s += char('0' + ((w.bytes()[i >> 3] >> (7 - (i & 7))) & 1));
    }
    return s;
}

// Random scan-order level array with CAVLC-ish structure: a nonzero tail of
// small values so trailing ones actually occur.
std::array<int, 64> random_levels(std::mt19937& rng) {
    std::array<int, 64> levels{};
    const int nonzeros = int(rng() % 12);
    for (int i = 0; i < nonzeros; ++i) {
        const int pos = int(rng() % 64);
        const int magnitude = 1 + int(rng() % (rng() % 4 == 0 ? 40 : 2));
        levels[pos] = (rng() & 1) ? magnitude : -magnitude;
    }
    return levels;
}

}  // namespace

TEST_CASE("bit writer and reader round-trip with zero padding") {
    BitWriter w;
    w.put_bits(0b1011, 4);
    w.put_bit(1);
    CHECK(w.bit_count() == 5);
    CHECK(w.bytes().size() == 1);
    CHECK(w.bytes()[0] == 0b10111000);  // final byte zero-padded

    BitReader r(w.bytes());
    CHECK(r.read_bits(4) == 0b1011);
    CHECK(r.read_bit() == 1);
    CHECK(r.read_bits(3) == 0);
    CHECK_THROWS_AS((void)r.read_bit(), ParseError);
}

TEST_CASE("exp-Golomb layout examples") {
    BitWriter w;
    exp_golomb_write(w, 0);
    CHECK(bits_of(w) == "1");
    BitWriter w3;
    exp_golomb_write(w3, 3);
    CHECK(bits_of(w3) == "00100");
}

TEST_CASE("exp-Golomb round-trips exhaustively") {
    BitWriter w;
    for (std::uint32_t v = 0; v <= 100000; ++v) {
        exp_golomb_write(w, v);
    }
    BitReader r(w.bytes());
    for (std::uint32_t v = 0; v <= 100000; ++v) {
        CHECK(exp_golomb_read(r) == v);
    }
}

TEST_CASE("exp-Golomb rejects a runaway prefix") {
    const std::vector<std::uint8_t> zeros(8, 0);
    BitReader r(zeros);
    CHECK_THROWS_AS((void)exp_golomb_read(r), ParseError);
}

TEST_CASE("mode syntax layout examples") {
    BitWriter mpm0;
    write_mode_syntax(mpm0, ModeSyntax::mpm(0));
    CHECK(bits_of(mpm0) == "10");
    BitWriter mpm2;
    write_mode_syntax(mpm2, ModeSyntax::mpm(2));
    CHECK(bits_of(mpm2) == "111");
    BitWriter rem19;
    write_mode_syntax(rem19, ModeSyntax::remainder(19));
    CHECK(bits_of(rem19) == "010011");
}

TEST_CASE("mode syntax round-trips for every value") {
    for (int i = 0; i < 3; ++i) {
        BitWriter w;
        write_mode_syntax(w, ModeSyntax::mpm(i));
        BitReader r(w.bytes());
        CHECK(read_mode_syntax(r) == ModeSyntax::mpm(i));
    }
    for (int i = 0; i < 32; ++i) {
        BitWriter w;
        write_mode_syntax(w, ModeSyntax::remainder(i));
        BitReader r(w.bytes());
        CHECK(read_mode_syntax(r) == ModeSyntax::remainder(i));
    }
}

TEST_CASE("trailing-ones structure derivation") {
    std::array<int, 64> levels{};
    SUBCASE("empty block") {
        const CoeffBlock b = CoeffBlock::from_levels(levels);
        CHECK(b.last_pos == -1);
        CHECK(b.t1_count == 0);
    }
    SUBCASE("run capped at three") {
        levels[0] = 4;
        for (int i = 1; i <= 4; ++i) {
            levels[i] = 1;
        }
        const CoeffBlock b = CoeffBlock::from_levels(levels);
        CHECK(b.last_pos == 4);
        CHECK(b.t1_count == 3);
    }
    SUBCASE("zero interrupts the run") {
        levels[0] = 1;
        levels[2] = -1;  // gap at 1
        const CoeffBlock b = CoeffBlock::from_levels(levels);
        CHECK(b.last_pos == 2);
        CHECK(b.t1_count == 1);
        CHECK(b.t1_signs[0] == 0);  // negative
    }
    SUBCASE("large magnitude stops the run") {
        levels[3] = 5;
        levels[4] = -1;
        levels[5] = 1;
        const CoeffBlock b = CoeffBlock::from_levels(levels);
        CHECK(b.t1_count == 2);
        CHECK(b.t1_signs[0] == 1);  // level at scan 5, positive
        CHECK(b.t1_signs[1] == 0);
    }
}

TEST_CASE("coefficient block layout examples") {
    BitWriter empty;
    write_coeff_block(empty, CoeffBlock{});
    CHECK(bits_of(empty) == "1");

    std::array<int, 64> levels{};
    levels[0] = 1;  // single DC +1
    BitWriter single;
    write_coeff_block(single, CoeffBlock::from_levels(levels));
    CHECK(bits_of(single) == "010" "01" "1");
}

TEST_CASE("coefficient blocks round-trip") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 1000; ++trial) {
        const CoeffBlock block = CoeffBlock::from_levels(random_levels(rng));
        BitWriter w;
        write_coeff_block(w, block);
        BitReader r(w.bytes());
        const CoeffBlock back = read_coeff_block(r);
        CHECK(back == block);
        CHECK(back.t1_count == block.t1_count);
        CHECK(back.last_pos == block.last_pos);
    }
}

TEST_CASE("flipping trailing-ones signs never changes the bit length") {
    std::mt19937 rng(321);
    for (int trial = 0; trial < 1000; ++trial) {
        const CoeffBlock block = CoeffBlock::from_levels(random_levels(rng));
        BitWriter w;
        write_coeff_block(w, block);

        CoeffBlock flipped = block;
        for (int i = 0; i < flipped.t1_count; ++i) {
            if (rng() & 1) {
                flipped.t1_signs[std::size_t(i)] ^= 1;
                flipped.levels[std::size_t(flipped.t1_position(i))] *= -1;
            }
        }
        BitWriter wf;
        write_coeff_block(wf, flipped);
        CHECK(wf.bit_count() == w.bit_count());

        // ...and everything except the touched sign bits is untouched.
        BitReader r(wf.bytes());
        const CoeffBlock back = read_coeff_block(r);
        CHECK(back.last_pos == block.last_pos);
        CHECK(back.t1_count == block.t1_count);
        for (int i = 0; i <= block.last_pos; ++i) {
            CHECK(std::abs(back.levels[std::size_t(i)]) ==
                  std::abs(block.levels[std::size_t(i)]));
        }
    }
}

TEST_CASE("rewriting the mpm index changes length by at most one bit") {
    for (int from = 0; from < 3; ++from) {
        BitWriter w;
        write_mode_syntax(w, ModeSyntax::mpm(from));
        for (int to = 0; to < 3; ++to) {
            BitWriter w2;
            write_mode_syntax(w2, ModeSyntax::mpm(to));
            const auto a = std::int64_t(w.bit_count());
            const auto b = std::int64_t(w2.bit_count());
            CHECK(a - b <= 1);
            CHECK(b - a <= 1);
        }
    }
}

TEST_CASE("any scrambled syntax combination still parses") {
    // Mode syntax: all 3 mpm values and all 32 remainders parse (covered
    // above). Coefficient blocks: every combination of flipped signs parses
    // back to the same structure.
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const CoeffBlock block = CoeffBlock::from_levels(random_levels(rng));
        const int combos = 1 << block.t1_count;
        for (int mask = 0; mask < combos; ++mask) {
            CoeffBlock scrambled = block;
            for (int i = 0; i < block.t1_count; ++i) {
                if (mask & (1 << i)) {
                    scrambled.t1_signs[std::size_t(i)] ^= 1;
                    scrambled.levels[std::size_t(scrambled.t1_position(i))] *= -1;
                }
            }
            BitWriter w;
            write_coeff_block(w, scrambled);
            BitReader r(w.bytes());
            CHECK_NOTHROW((void)read_coeff_block(r));
        }
    }
}

TEST_CASE("corrupt streams raise typed errors") {
    SUBCASE("end position out of range") {
        BitWriter w;
        exp_golomb_write(w, 70);
        BitReader r(w.bytes());
        CHECK_THROWS_AS((void)read_coeff_block(r), CorruptStreamError);
    }
    SUBCASE("trailing-ones count exceeding coefficients") {
        BitWriter w;
        exp_golomb_write(w, 1);   // last_pos = 0
        w.put_bits(0b10, 2);      // t1_count = 2
        w.put_bits(0b11, 2);      // would-be signs
        BitReader r(w.bytes());
        CHECK_THROWS_AS((void)read_coeff_block(r), CorruptStreamError);
    }
    SUBCASE("non-canonical trailing-ones coding") {
        // last_pos = 1, both significant, t1_count = 1, then the remaining
        // level decodes to magnitude 1: the writer would have coded t1 = 2.
        BitWriter w;
        exp_golomb_write(w, 2);  // last_pos = 1
        w.put_bit(1);            // position 0 significant
        w.put_bits(0b01, 2);     // t1_count = 1
        w.put_bit(1);            // t1 sign
        exp_golomb_write(w, 0);  // |level|-1 = 0
        w.put_bit(1);            // sign
        BitReader r(w.bytes());
        CHECK_THROWS_AS((void)read_coeff_block(r), CorruptStreamError);
    }
    SUBCASE("truncation mid-block") {
        std::array<int, 64> levels{};
        levels[5] = 3;
        BitWriter w;
        write_coeff_block(w, CoeffBlock::from_levels(levels));
        std::vector<std::uint8_t> bytes = w.bytes();
        bytes.pop_back();
        BitReader r(bytes);
        CHECK_THROWS_AS((void)read_coeff_block(r), ParseError);
    }
}
