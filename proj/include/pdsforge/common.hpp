#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace pdsforge {

/// Dense element index within a single group; valid only together with the
/// group handle that produced it.
using ElementId = std::uint32_t;

/// All library failures carry a stable machine-readable code (e.g. "DivisionByZero",
/// "PartitionFailure") plus a human-readable message.  The code set is part of the
/// external interface; see README.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool cond, const std::string& code, const std::string& message) {
    if (!cond) fail(code, message);
}

namespace detail {
inline unsigned& default_thread_slot() {
    static unsigned slot = 0;  // 0 = not yet resolved
    return slot;
}
}  // namespace detail

/// Process-wide default worker count for census kernels.
/// 0 restores automatic resolution (PDSFORGE_THREADS env var, then hardware).
inline void set_default_threads(unsigned t) { detail::default_thread_slot() = t; }

/// Resolve a requested worker count: explicit request > process default >
/// PDSFORGE_THREADS > hardware concurrency.  Always at least 1.
inline unsigned effective_threads(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (unsigned d = detail::default_thread_slot(); d > 0) return d;
    if (const char* env = std::getenv("PDSFORGE_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace pdsforge
