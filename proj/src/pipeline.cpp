#include "mlse/pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "mlse/codec_core.hpp"
#include "mlse/errors.hpp"

namespace mlse {

namespace {

// Runs fn(i) for i in [0, n) on up to worker_cap() threads. Exceptions are
// collected and the first one rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = unsigned(std::min<std::size_t>(worker_cap(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace

unsigned worker_cap() {
    if (const char* env = std::getenv("MLSE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) {
            return unsigned(v);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

Container encode_sequence(const std::vector<FramePlane>& frames, int qp, EncryptionLevel level,
                          const SecretKey& key, const Nonce& nonce) {
    if (frames.empty()) {
        throw std::invalid_argument("cannot encode an empty sequence");
    }
    if (frames.size() >= kMaxFrames) {
        throw AddressingError("sequence exceeds " + std::to_string(kMaxFrames - 1) + " frames");
    }
    const int width = frames.front().width();
    const int height = frames.front().height();
    for (const auto& f : frames) {
        if (f.width() != width || f.height() != height) {
            throw std::invalid_argument("all frames must share one size");
        }
    }
    const QuantParams q = QuantParams::from_qp(qp);
    const KeystreamHandle handle(key, nonce);
    const SyntaxHooks hooks = make_hooks(level, handle, CipherDirection::Encrypt);

    Container c;
    c.header.width = std::uint16_t(width);
    c.header.height = std::uint16_t(height);
    c.header.frame_count = std::uint32_t(frames.size());
    c.header.qp = std::uint8_t(qp);
    c.header.level = level;
    c.header.nonce = nonce;
    c.payloads.resize(frames.size());

    parallel_for(frames.size(), [&](std::size_t i) {
        c.payloads[i] = encode_frame(frames[i], q, hooks, std::uint32_t(i)).payload;
    });
    return c;
}

std::vector<FramePlane> decode_sequence(const Container& container,
                                        const std::optional<SecretKey>& key) {
    const QuantParams q = QuantParams::from_qp(container.header.qp);
    SyntaxHooks hooks = identity_hooks();
    std::optional<KeystreamHandle> handle;
    if (key.has_value()) {
        handle.emplace(*key, container.header.nonce);
        hooks = make_hooks(container.header.level, *handle, CipherDirection::Decrypt);
    }
    std::vector<FramePlane> frames(container.payloads.size());
    parallel_for(container.payloads.size(), [&](std::size_t i) {
        frames[i] = decode_frame(container.payloads[i], container.header.width,
                                 container.header.height, q, hooks, std::uint32_t(i));
    });
    return frames;
}

}  // namespace mlse
