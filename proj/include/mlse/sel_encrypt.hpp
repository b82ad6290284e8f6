#pragma once

#include <cstdint>
#include <string>

#include "mlse/codec_core.hpp"
#include "mlse/keystream.hpp"

namespace mlse {

/// The three encryption levels plus the null level. Lightweight touches
/// intra-mode syntax only, Medium touches trailing-ones signs only,
/// Heavyweight touches both.
enum class EncryptionLevel : std::uint8_t {
    None = 0,
    Lightweight = 1,
    Medium = 2,
    Heavyweight = 3,
};

bool level_encrypts_ipm(EncryptionLevel level);
bool level_encrypts_signs(EncryptionLevel level);

/// CLI / config names: none | light | medium | heavy.
std::string level_name(EncryptionLevel level);
EncryptionLevel level_from_name(const std::string& name);
EncryptionLevel level_from_code(std::uint8_t code);

/// The MPM-index transform is additive, not an involution, so callers must
/// say which way they are going.
enum class CipherDirection { Encrypt, Decrypt };

// The three syntax transforms and their inverses. All map their domains onto
// themselves, so no illegal bitstream can be produced.
int encrypt_mpm_idx(int idx, int k3);
int decrypt_mpm_idx(int idx, int k3);
int encrypt_rem_idx(int idx, int k5);   // XOR, self-inverse
int encrypt_t1_sign(int sign, int k1);  // XOR, self-inverse

/// Builds the syntax hooks for one level and direction. Disabled transforms
/// and level None are identity. Hooks are pure functions of
/// (site, input, keystream) and safe for concurrent use across frames.
SyntaxHooks make_hooks(EncryptionLevel level, const KeystreamHandle& handle, CipherDirection dir);

}  // namespace mlse
