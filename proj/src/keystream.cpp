#include "mlse/keystream.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstring>
#include <random>
#include <stdexcept>

#include "mlse/errors.hpp"

namespace mlse {

namespace {

std::atomic<std::uint64_t> g_uniform3_fallbacks{0};

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

template <std::size_t N>
std::array<std::uint8_t, N> parse_hex(const std::string& hex, const char* what) {
    if (hex.size() != 2 * N) {
        throw std::invalid_argument(std::string(what) + " must be " + std::to_string(2 * N) +
                                    " hex chars, got " + std::to_string(hex.size()));
    }
    std::array<std::uint8_t, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument(std::string(what) + " contains a non-hex character");
        }
        out[i] = std::uint8_t(hi << 4 | lo);
    }
    return out;
}

template <std::size_t N>
std::string format_hex(const std::array<std::uint8_t, N>& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * N);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

// One-shot AES-128-ECB of a single block. A fresh context per call keeps the
// handle stateless and thread-safe.
std::array<std::uint8_t, 16> aes128_block(const std::array<std::uint8_t, 16>& key,
                                          const std::array<std::uint8_t, 16>& in) {
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    if (ctx == nullptr) {
        throw Error("cipher context allocation failed");
    }
    std::array<std::uint8_t, 16> out{};
    int out_len = 0;
    const bool ok = EVP_EncryptInit_ex(ctx, EVP_aes_128_ecb(), nullptr, key.data(), nullptr) == 1 &&
                    EVP_CIPHER_CTX_set_padding(ctx, 0) == 1 &&
                    EVP_EncryptUpdate(ctx, out.data(), &out_len, in.data(), 16) == 1 &&
                    out_len == 16;
    EVP_CIPHER_CTX_free(ctx);
    if (!ok) {
        throw Error("block cipher invocation failed");
    }
    return out;
}

}  // namespace

SecretKey SecretKey::from_hex(const std::string& hex) { return SecretKey{parse_hex<16>(hex, "key")}; }
std::string SecretKey::to_hex() const { return format_hex(bytes); }

Nonce Nonce::from_hex(const std::string& hex) { return Nonce{parse_hex<12>(hex, "nonce")}; }
std::string Nonce::to_hex() const { return format_hex(bytes); }

std::uint32_t site_counter(const KeySite& site) {
    if (site.frame_idx >= kMaxFrames || site.block_idx >= kMaxBlocksPerFrame) {
        throw AddressingError("keystream site out of range: frame " + std::to_string(site.frame_idx) +
                              ", block " + std::to_string(site.block_idx) +
                              " exceeds the fixed counter layout");
    }
    return site.frame_idx * (1u << 20) + site.block_idx * 4u + std::uint32_t(site.purpose);
}

std::array<std::uint8_t, 16> KeystreamHandle::derive_site_block(const KeySite& site) const {
    const std::uint32_t counter = site_counter(site);
    std::array<std::uint8_t, 16> counter_block{};
    std::memcpy(counter_block.data(), nonce_.bytes.data(), 12);
    counter_block[12] = std::uint8_t(counter >> 24);
    counter_block[13] = std::uint8_t(counter >> 16);
    counter_block[14] = std::uint8_t(counter >> 8);
    counter_block[15] = std::uint8_t(counter);
    return aes128_block(key_.bytes, counter_block);
}

std::uint32_t first_bits(std::span<const std::uint8_t, 16> block, int n) {
    if (n < 1 || n > 32) {
        throw std::invalid_argument("bit count must be in [1,32], got " + std::to_string(n));
    }
    std::uint64_t word = 0;
    for (int i = 0; i < 5; ++i) {  // 40 bits is enough for any n <= 32
        word = word << 8 | block[i];
    }
    return std::uint32_t(word >> (40 - n)) & (n == 32 ? 0xffffffffu : ((1u << n) - 1u));
}

std::uint8_t bit_at(std::span<const std::uint8_t, 16> block, int bit_index) {
    if (bit_index < 0 || bit_index >= 128) {
        throw std::invalid_argument("bit index must be in [0,128)");
    }
    return (block[bit_index >> 3] >> (7 - (bit_index & 7))) & 1u;
}

int uniform3_from_block(std::span<const std::uint8_t, 16> block, bool* exhausted) {
    if (exhausted != nullptr) {
        *exhausted = false;
    }
    for (std::uint8_t b : block) {
        if (b != 255) {
            return b % 3;
        }
    }
    if (exhausted != nullptr) {
        *exhausted = true;
    }
    return 0;
}

std::uint32_t KeystreamHandle::keybits(const KeySite& site, int n) const {
    const auto block = derive_site_block(site);
    return first_bits(block, n);
}

std::uint8_t KeystreamHandle::keybit(const KeySite& site, int bit_index) const {
    const auto block = derive_site_block(site);
    return bit_at(block, bit_index);
}

int KeystreamHandle::key_uniform3(const KeySite& site) const {
    const auto block = derive_site_block(site);
    bool exhausted = false;
    const int value = uniform3_from_block(block, &exhausted);
    if (exhausted) {
        g_uniform3_fallbacks.fetch_add(1, std::memory_order_relaxed);
    }
    return value;
}

std::uint64_t uniform3_fallback_count() { return g_uniform3_fallbacks.load(std::memory_order_relaxed); }

std::pair<SecretKey, Nonce> generate_key_and_nonce() {
    std::random_device rd;
    auto fill = [&rd](std::uint8_t* dst, std::size_t n) {
        for (std::size_t i = 0; i < n; i += 4) {
            const std::uint32_t word = rd();
            for (std::size_t j = 0; j < 4 && i + j < n; ++j) {
                dst[i + j] = std::uint8_t(word >> (8 * j));
            }
        }
    };
    SecretKey key;
    Nonce nonce;
    fill(key.bytes.data(), key.bytes.size());
    fill(nonce.bytes.data(), nonce.bytes.size());
    return {key, nonce};
}

}  // namespace mlse
