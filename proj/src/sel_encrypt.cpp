#include "mlse/sel_encrypt.hpp"

#include <stdexcept>

namespace mlse {

bool level_encrypts_ipm(EncryptionLevel level) {
    return level == EncryptionLevel::Lightweight || level == EncryptionLevel::Heavyweight;
}

bool level_encrypts_signs(EncryptionLevel level) {
    return level == EncryptionLevel::Medium || level == EncryptionLevel::Heavyweight;
}

std::string level_name(EncryptionLevel level) {
    switch (level) {
        case EncryptionLevel::None: return "none";
        case EncryptionLevel::Lightweight: return "light";
        case EncryptionLevel::Medium: return "medium";
        case EncryptionLevel::Heavyweight: return "heavy";
    }
    throw std::invalid_argument("bad encryption level value");
}

EncryptionLevel level_from_name(const std::string& name) {
    if (name == "none") return EncryptionLevel::None;
    if (name == "light") return EncryptionLevel::Lightweight;
    if (name == "medium") return EncryptionLevel::Medium;
    if (name == "heavy") return EncryptionLevel::Heavyweight;
    throw std::invalid_argument("unknown encryption level '" + name +
                                "' (expected none|light|medium|heavy)");
}

EncryptionLevel level_from_code(std::uint8_t code) {
    if (code > 3) {
        throw std::invalid_argument("encryption level code must be in [0,3]");
    }
    return EncryptionLevel(code);
}

int encrypt_mpm_idx(int idx, int k3) {
    if (idx < 0 || idx > 2 || k3 < 0 || k3 > 2) {
        throw std::invalid_argument("mpm index and key must be in [0,2]");
    }
    return (idx + k3) % 3;
}

int decrypt_mpm_idx(int idx, int k3) {
    if (idx < 0 || idx > 2 || k3 < 0 || k3 > 2) {
        throw std::invalid_argument("mpm index and key must be in [0,2]");
    }
    return (idx + 3 - k3) % 3;
}

int encrypt_rem_idx(int idx, int k5) {
    if (idx < 0 || idx > 31 || k5 < 0 || k5 > 31) {
        throw std::invalid_argument("remainder index and key must be in [0,31]");
    }
    return idx ^ k5;
}

int encrypt_t1_sign(int sign, int k1) {
    if ((sign & ~1) != 0 || (k1 & ~1) != 0) {
        throw std::invalid_argument("sign and key bit must be 0 or 1");
    }
    return sign ^ k1;
}

SyntaxHooks make_hooks(EncryptionLevel level, const KeystreamHandle& handle, CipherDirection dir) {
    SyntaxHooks hooks = identity_hooks();
    if (level_encrypts_ipm(level)) {
        hooks.mode_syntax = [handle, dir](const BlockAddress& addr, const ModeSyntax& s) {
            ModeSyntax out = s;
            if (s.mpm_flag) {
                const KeySite site{addr.frame_idx, addr.block_idx, KeyPurpose::IpmMpm};
                const int k3 = handle.key_uniform3(site);
                const int idx = dir == CipherDirection::Encrypt ? encrypt_mpm_idx(s.mpm_idx, k3)
                                                                : decrypt_mpm_idx(s.mpm_idx, k3);
                out.mpm_idx = std::uint8_t(idx);
            } else {
                const KeySite site{addr.frame_idx, addr.block_idx, KeyPurpose::IpmRem};
                const int k5 = int(handle.keybits(site, 5));
                out.rem_idx = std::uint8_t(encrypt_rem_idx(s.rem_idx, k5));
            }
            return out;
        };
    }
    if (level_encrypts_signs(level)) {
        hooks.t1_sign = [handle](const BlockAddress& addr, int sign_index, std::uint8_t sign) {
            // One fresh bit per trailing one, drawn from consecutive bits of
            // the site's SIGN block. A coefficient block never carries more
            // than 3 signs, so the 128-bit block cannot run out.
            const KeySite site{addr.frame_idx, addr.block_idx, KeyPurpose::Sign};
            const int k1 = handle.keybit(site, sign_index);
            return std::uint8_t(encrypt_t1_sign(sign, k1));
        };
    }
    return hooks;
}

}  // namespace mlse
