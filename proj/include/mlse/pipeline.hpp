#pragma once

#include <optional>
#include <vector>

#include "mlse/container.hpp"
#include "mlse/keystream.hpp"
#include "mlse/sel_encrypt.hpp"

namespace mlse {

/// Worker cap for frame-parallel encoding: MLSE_THREADS when set, otherwise
/// the hardware concurrency. Output bytes never depend on this value.
unsigned worker_cap();

/// Encodes a sequence into a container. Frames are independent (intra-only,
/// frame-addressed keystream sites), so they may be coded on several workers;
/// payloads land in display order and are byte-identical for any worker
/// count.
Container encode_sequence(const std::vector<FramePlane>& frames, int qp, EncryptionLevel level,
                          const SecretKey& key, const Nonce& nonce);

/// Decodes every frame. With a key, the container's level selects the hooks
/// to invert; without one, identity hooks yield the attacker view.
std::vector<FramePlane> decode_sequence(const Container& container,
                                        const std::optional<SecretKey>& key);

}  // namespace mlse
