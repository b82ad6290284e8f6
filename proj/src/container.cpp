#include "mlse/container.hpp"

#include <cstdio>
#include <fstream>
#include <limits>

#include "mlse/errors.hpp"

namespace mlse {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

class ByteCursor {
public:
    explicit ByteCursor(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint64_t offset() const { return offset_; }

    std::uint8_t u8(const char* what) {
        need(1, what);
        return bytes_[offset_++];
    }

    std::uint16_t u16(const char* what) {
        need(2, what);
        const std::uint16_t v = std::uint16_t(bytes_[offset_] << 8 | bytes_[offset_ + 1]);
        offset_ += 2;
        return v;
    }

    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v = v << 8 | bytes_[offset_ + i];
        }
        offset_ += 4;
        return v;
    }

    void copy(std::uint8_t* dst, std::size_t n, const char* what) {
        need(n, what);
        std::copy(bytes_.begin() + long(offset_), bytes_.begin() + long(offset_ + n), dst);
        offset_ += n;
    }

    std::uint64_t remaining() const { return bytes_.size() - offset_; }

private:
    void need(std::size_t n, const char* what) {
        if (offset_ + n > bytes_.size()) {
            throw FormatError(std::string("container truncated while reading ") + what, offset_);
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    std::uint64_t offset_ = 0;
};

void validate_header(const ContainerHeader& h, std::uint64_t magic_offset) {
    if (h.width == 0 || h.height == 0 || h.width % kBlockSize != 0 || h.height % kBlockSize != 0) {
        throw FormatError("frame dimensions must be positive multiples of 8", magic_offset + 5);
    }
    if (h.qp > 51) {
        throw FormatError("qp out of range", magic_offset + 13);
    }
}

}  // namespace

std::uint64_t Container::payload_bytes() const {
    std::uint64_t total = 0;
    for (const auto& p : payloads) {
        total += p.size();
    }
    return total;
}

std::vector<std::uint8_t> serialize_container(const Container& container) {
    const ContainerHeader& h = container.header;
    validate_header(h, 0);
    if (container.payloads.size() != h.frame_count) {
        throw std::invalid_argument("payload count does not match header frame count");
    }
    std::vector<std::uint8_t> out;
    out.reserve(ContainerHeader::kSize + container.payload_bytes() + 4 * container.payloads.size());
    out.insert(out.end(), ContainerHeader::kMagic.begin(), ContainerHeader::kMagic.end());
    out.push_back(ContainerHeader::kVersion);
    put_u16(out, h.width);
    put_u16(out, h.height);
    put_u32(out, h.frame_count);
    out.push_back(h.qp);
    out.push_back(std::uint8_t(h.level));
    out.insert(out.end(), h.nonce.bytes.begin(), h.nonce.bytes.end());
    out.insert(out.end(), 5, 0);  // reserved
    for (const auto& payload : container.payloads) {
        if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
            throw std::invalid_argument("frame payload too large");
        }
        put_u32(out, std::uint32_t(payload.size()));
        out.insert(out.end(), payload.begin(), payload.end());
    }
    return out;
}

Container parse_container(const std::vector<std::uint8_t>& bytes) {
    ByteCursor cur(bytes);
    std::array<std::uint8_t, 4> magic{};
    cur.copy(magic.data(), 4, "magic");
    if (magic != ContainerHeader::kMagic) {
        throw FormatError("bad magic", 0);
    }
    const std::uint8_t version = cur.u8("version");
    if (version != ContainerHeader::kVersion) {
        throw FormatError("unsupported version " + std::to_string(version), 4);
    }
    Container c;
    c.header.width = cur.u16("width");
    c.header.height = cur.u16("height");
    c.header.frame_count = cur.u32("frame count");
    c.header.qp = cur.u8("qp");
    const std::uint8_t level_code = cur.u8("level");
    if (level_code > 3) {
        throw FormatError("encryption level code out of range", 14);
    }
    c.header.level = level_from_code(level_code);
    cur.copy(c.header.nonce.bytes.data(), 12, "nonce");
    std::array<std::uint8_t, 5> reserved{};
    cur.copy(reserved.data(), 5, "reserved");
    for (std::uint8_t b : reserved) {
        if (b != 0) {
            throw FormatError("reserved bytes must be zero", 27);
        }
    }
    validate_header(c.header, 0);

    c.payloads.reserve(std::min<std::uint32_t>(c.header.frame_count, 4096));
    for (std::uint32_t i = 0; i < c.header.frame_count; ++i) {
        const std::uint64_t length_offset = cur.offset();
        const std::uint32_t length = cur.u32("frame length");
        if (length > cur.remaining()) {
            throw FormatError("frame length exceeds remaining data", length_offset);
        }
        std::vector<std::uint8_t> payload(length);
        cur.copy(payload.data(), length, "frame payload");
        c.payloads.push_back(std::move(payload));
    }
    if (cur.remaining() != 0) {
        throw FormatError("trailing bytes after final frame", cur.offset());
    }
    return c;
}

void write_container(const Container& container, const std::string& path) {
    const auto bytes = serialize_container(container);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), long(bytes.size()));
    if (!out) {
        throw Error("write failed for '" + path + "'");
    }
}

Container read_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    return parse_container(bytes);
}

std::vector<FramePlane> read_yuv(const std::string& path, int width, int height, int count) {
    if (count < 0) {
        throw std::invalid_argument("frame count must be non-negative");
    }
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) {
        throw IngestError("cannot open '" + path + "' for reading");
    }
    const std::uint64_t file_bytes = std::uint64_t(in.tellg());
    const std::uint64_t luma_bytes = std::uint64_t(width) * height;
    const std::uint64_t frame_bytes = luma_bytes * 3 / 2;  // 4:2:0
    const std::uint64_t needed = frame_bytes * std::uint64_t(count);
    if (file_bytes < needed) {
        throw IngestError("'" + path + "' too short: " + std::to_string(count) + " frames of " +
                          std::to_string(width) + "x" + std::to_string(height) + " need " +
                          std::to_string(needed) + " bytes, file has " + std::to_string(file_bytes));
    }
    in.seekg(0);
    std::vector<FramePlane> planes;
    planes.reserve(std::size_t(count));
    for (int f = 0; f < count; ++f) {
        std::vector<std::uint8_t> luma(luma_bytes);
        in.read(reinterpret_cast<char*>(luma.data()), long(luma_bytes));
        planes.emplace_back(width, height, std::move(luma));
        in.seekg(long(frame_bytes - luma_bytes), std::ios::cur);
    }
    return planes;
}

int count_yuv_frames(const std::string& path, int width, int height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("frame dimensions must be positive");
    }
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) {
        throw IngestError("cannot open '" + path + "' for reading");
    }
    const std::uint64_t size = std::uint64_t(in.tellg());
    const std::uint64_t frame_bytes = std::uint64_t(width) * height * 3 / 2;
    return int(size / frame_bytes);
}

void write_yuv(const std::vector<FramePlane>& planes, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    for (const auto& plane : planes) {
        out.write(reinterpret_cast<const char*>(plane.samples().data()),
                  long(plane.samples().size()));
        const std::vector<char> chroma(plane.samples().size() / 2, char(128));
        out.write(chroma.data(), long(chroma.size()));
    }
    if (!out) {
        throw Error("write failed for '" + path + "'");
    }
}

void write_pgm(const FramePlane& plane, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    char header[64];
    const int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", plane.width(),
                                plane.height());
    out.write(header, n);
    out.write(reinterpret_cast<const char*>(plane.samples().data()), long(plane.samples().size()));
    if (!out) {
        throw Error("write failed for '" + path + "'");
    }
}

FramePlane read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError("cannot open '" + path + "' for reading");
    }
    std::string magic;
    int width = 0;
    int height = 0;
    int maxval = 0;
    in >> magic >> width >> height >> maxval;
    if (!in || magic != "P5" || maxval != 255) {
        throw FormatError("not a maxval-255 binary PGM", 0);
    }
    in.get();  // single whitespace after maxval
    std::vector<std::uint8_t> samples(std::size_t(width) * height);
    in.read(reinterpret_cast<char*>(samples.data()), long(samples.size()));
    if (std::size_t(in.gcount()) != samples.size()) {
        throw FormatError("PGM pixel data truncated", std::uint64_t(in.tellg()));
    }
    return FramePlane(width, height, std::move(samples));
}

}  // namespace mlse
