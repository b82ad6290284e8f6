#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlse/frame.hpp"
#include "mlse/keystream.hpp"
#include "mlse/sel_encrypt.hpp"

namespace mlse {

// 32-byte container header:
//   magic "MLSE" (4) | version (1) | width (2 BE) | height (2 BE) |
//   frame_count (4 BE) | qp (1) | level (1) | nonce (12) | reserved (5, zero)
// The nonce travels in the clear; the key never does. The stored level tells
// the decoder which hooks to invert.
struct ContainerHeader {
    static constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'L', 'S', 'E'};
    static constexpr std::uint8_t kVersion = 1;
    static constexpr std::size_t kSize = 32;

    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::uint32_t frame_count = 0;
    std::uint8_t qp = 0;
    EncryptionLevel level = EncryptionLevel::None;
    Nonce nonce;
};

/// One frame's entropy-coded payload, stored with a 4-byte big-endian length
/// prefix, in display order.
struct Container {
    ContainerHeader header;
    std::vector<std::vector<std::uint8_t>> payloads;

    std::uint64_t payload_bytes() const;

    bool operator==(const Container&) const = default;
};

std::vector<std::uint8_t> serialize_container(const Container& container);
Container parse_container(const std::vector<std::uint8_t>& bytes);

void write_container(const Container& container, const std::string& path);
Container read_container(const std::string& path);

/// Extracts `count` luma planes from a planar 4:2:0 file; chroma bytes are
/// skipped. Raises IngestError naming expected vs actual byte counts when
/// the file is short.
std::vector<FramePlane> read_yuv(const std::string& path, int width, int height, int count);

/// Number of whole 4:2:0 frames of the given size present in the file.
int count_yuv_frames(const std::string& path, int width, int height);

/// Writes planes as a planar 4:2:0 file with mid-gray chroma.
void write_yuv(const std::vector<FramePlane>& planes, const std::string& path);

/// Binary PGM (P5, maxval 255).
void write_pgm(const FramePlane& plane, const std::string& path);
FramePlane read_pgm(const std::string& path);

}  // namespace mlse
