#pragma once

#include <openssl/evp.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"

namespace pdsforge {

/// Incremental SHA-256, used to fingerprint element sets and censuses inside
/// certificates.  The algorithm name recorded next to every digest is "sha256".
class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
            fail("HashFailure", "could not initialise SHA-256");
    }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;
    ~Sha256() { EVP_MD_CTX_free(ctx_); }

    void update(const void* data, std::size_t n) {
        if (EVP_DigestUpdate(ctx_, data, n) != 1) fail("HashFailure", "SHA-256 update failed");
    }

    /// Append one value as 8 little-endian bytes (the canonical certificate encoding).
    void update_u64(std::uint64_t x) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((x >> (8 * i)) & 0xff);
        update(b, 8);
    }

    std::string hex_digest() {
        unsigned char out[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_, out, &len) != 1) fail("HashFailure", "SHA-256 final failed");
        static const char* digits = "0123456789abcdef";
        std::string hex;
        hex.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i) {
            hex.push_back(digits[out[i] >> 4]);
            hex.push_back(digits[out[i] & 0xf]);
        }
        return hex;
    }

private:
    EVP_MD_CTX* ctx_;
};

/// Digest of a sequence of 64-bit values in little-endian byte order.
inline std::string sha256_of_u64(const std::vector<std::uint64_t>& values) {
    Sha256 h;
    for (std::uint64_t v : values) h.update_u64(v);
    return h.hex_digest();
}

inline std::string sha256_of_i64(const std::vector<std::int64_t>& values) {
    Sha256 h;
    for (std::int64_t v : values) h.update_u64(static_cast<std::uint64_t>(v));
    return h.hex_digest();
}

}  // namespace pdsforge
