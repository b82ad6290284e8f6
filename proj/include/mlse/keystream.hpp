#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace mlse {

/// 128-bit cipher key. Exactly 16 bytes; no weak-key screening.
struct SecretKey {
    std::array<std::uint8_t, 16> bytes{};

    /// Parses 32 lowercase/uppercase hex chars. Throws std::invalid_argument
    /// on anything else.
    static SecretKey from_hex(const std::string& hex);
    std::string to_hex() const;

    bool operator==(const SecretKey&) const = default;
};

/// 96-bit counter-mode nonce, carried in the container header in cleartext.
struct Nonce {
    std::array<std::uint8_t, 12> bytes{};

    static Nonce from_hex(const std::string& hex);
    std::string to_hex() const;

    bool operator==(const Nonce&) const = default;
};

/// What a keystream block is consumed for. The numeric values are part of
/// the counter layout and must not change.
enum class KeyPurpose : std::uint32_t {
    IpmMpm = 0,  // MPM list index scrambling
    IpmRem = 1,  // remainder index scrambling
    Sign = 2,    // trailing-ones sign flips
};

/// Address of one 128-bit keystream block. (frame_idx, block_idx, purpose)
/// uniquely identifies the block, which makes keystream consumption
/// order-independent: any worker can fetch any site's bits at any time and
/// always sees the same values.
struct KeySite {
    std::uint32_t frame_idx = 0;
    std::uint32_t block_idx = 0;  // raster order within the frame
    KeyPurpose purpose = KeyPurpose::IpmMpm;
};

// Counter layout limits. frame_idx occupies the top 12 bits of the 32-bit
// counter, block_idx the next 18, the purpose code the low 2.
inline constexpr std::uint32_t kMaxFrames = 1u << 12;
inline constexpr std::uint32_t kMaxBlocksPerFrame = 1u << 18;

/// Computes the 32-bit counter value for a site. Throws AddressingError when
/// the indices do not fit the layout.
std::uint32_t site_counter(const KeySite& site);

/// Deterministic, randomly-addressable pseudo-random bit supply: a block
/// cipher in counter mode over (key, nonce). Stateless with respect to
/// consumption; the same (key, nonce, site) always yields the same bits, so
/// handles are safe for simultaneous use from any number of workers.
class KeystreamHandle {
public:
    KeystreamHandle(SecretKey key, Nonce nonce) : key_(key), nonce_(nonce) {}

    const SecretKey& key() const { return key_; }
    const Nonce& nonce() const { return nonce_; }

    /// One 128-bit keystream block: E_key(nonce || big-endian counter).
    std::array<std::uint8_t, 16> derive_site_block(const KeySite& site) const;

    /// First n bits (most-significant-first) of the site's block, 1 <= n <= 32.
    std::uint32_t keybits(const KeySite& site, int n) const;

    /// Single bit of the site's block at `bit_index` in [0, 128).
    std::uint8_t keybit(const KeySite& site, int bit_index) const;

    /// Uniform draw over {0,1,2}: first byte of the block that is != 255,
    /// taken mod 3. The all-255 block (probability 2^-128) falls back to 0
    /// and bumps the uniform3_fallback_count() diagnostics counter.
    int key_uniform3(const KeySite& site) const;

private:
    SecretKey key_;
    Nonce nonce_;
};

// Bit/byte extraction helpers, exposed so their arithmetic can be tested in
// isolation from the cipher.
std::uint32_t first_bits(std::span<const std::uint8_t, 16> block, int n);
std::uint8_t bit_at(std::span<const std::uint8_t, 16> block, int bit_index);
int uniform3_from_block(std::span<const std::uint8_t, 16> block, bool* exhausted = nullptr);

/// Number of times key_uniform3 hit an all-255 block since process start.
std::uint64_t uniform3_fallback_count();

/// Fresh (key, nonce) pair from OS entropy.
std::pair<SecretKey, Nonce> generate_key_and_nonce();

}  // namespace mlse
