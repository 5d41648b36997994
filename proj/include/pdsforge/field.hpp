#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "common.hpp"

namespace pdsforge {

enum class SquareClass { Zero, Square, NonSquare };

inline const char* to_string(SquareClass c) {
    switch (c) {
        case SquareClass::Zero: return "Zero";
        case SquareClass::Square: return "Square";
        case SquareClass::NonSquare: return "NonSquare";
    }
    return "?";
}

/// GF(p^e) for odd p, e >= 1, with a canonical integer index for every element:
/// index = sum c_i p^i where the element is sum c_i a^i and a is a root of the
/// modulus.  When no modulus is supplied the lexicographically smallest monic
/// irreducible is chosen, comparing coefficient tuples (c_{e-1}, ..., c_0), so
/// every context (and hence every certificate) is reproducible across runs.
///
/// Negation, inversion and square-class tables are precomputed once; for very
/// small q a full multiplication table is kept as well.  All operations are
/// pure, so a context is freely shareable across threads.
class FieldCtx {
public:
    /// `modulus`, when given, lists coefficients ascending (constant term first)
    /// and must be monic of degree e.
    explicit FieldCtx(std::uint32_t p, std::uint32_t e = 1,
                      const std::vector<std::uint32_t>& modulus = {})
        : p_(p), e_(e) {
        require(is_odd_prime(p), "NotOddPrime",
                "field characteristic must be an odd prime, got " + std::to_string(p));
        require(e >= 1, "DegreeMismatch", "extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            require(q <= (1u << 16), "TooLarge", "field order must not exceed 2^16");
        }
        q_ = static_cast<std::uint32_t>(q);
        if (e_ > 1) {
            if (!modulus.empty()) {
                require(modulus.size() == e_ + 1 && modulus.back() % p_ == 1, "DegreeMismatch",
                        "modulus must be monic of degree e, coefficients ascending");
                modulus_.assign(modulus.begin(), modulus.end());
                for (auto& c : modulus_) c %= p_;
                require(is_irreducible(modulus_), "ReducibleModulus",
                        "supplied modulus is reducible over GF(p)");
            } else {
                modulus_ = smallest_irreducible();
            }
            build_reduction_rows();
        } else {
            require(modulus.empty(), "DegreeMismatch", "prime fields take no modulus");
        }
        build_tables();
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    /// Modulus coefficients ascending (empty for prime fields).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (e_ == 1) {
            std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint32_t s = a % p_ + b % p_;
            if (s >= p_) s -= p_;
            out += s * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return out;
    }

    std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg_[b]); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (e_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
        if (!mul_tab_.empty()) return mul_tab_[std::size_t{a} * q_ + b];
        return mul_slow(a, b);
    }

    std::uint32_t inv(std::uint32_t a) const {
        require(a != 0, "DivisionByZero", "inverse of zero");
        return inv_[a];
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    /// a^n with the exponent reduced mod (q-1) for nonzero a; 0^0 = 1 by convention,
    /// 0^n = 0 for n > 0, and negative powers of zero are a division by zero.
    std::uint32_t pow(std::uint32_t a, std::int64_t n) const {
        if (a == 0) {
            if (n > 0) return 0;
            if (n == 0) return 1;
            fail("DivisionByZero", "negative power of zero");
        }
        std::int64_t m = n % (q_ - 1);
        if (m < 0) m += q_ - 1;
        std::uint32_t base = a, out = 1;
        while (m > 0) {
            if (m & 1) out = mul(out, base);
            base = mul(base, base);
            m >>= 1;
        }
        return out;
    }

    SquareClass square_class(std::uint32_t a) const {
        return static_cast<SquareClass>(sqclass_[a]);
    }

    /// Least-index b such that -b is a nonsquare (the elliptic form coefficient).
    std::uint32_t nonsquare_witness() const { return witness_; }

    /// Base-p digit i of the canonical index (the coefficient of a^i).
    std::uint32_t coeff(std::uint32_t a, std::uint32_t i) const {
        for (std::uint32_t k = 0; k < i; ++k) a /= p_;
        return a % p_;
    }

    std::string label() const {
        return "GF(" + std::to_string(q_) + ")";
    }

private:
    static bool is_odd_prime(std::uint32_t p) {
        if (p < 3 || p % 2 == 0) return false;
        for (std::uint32_t d = 3; d * d <= p; d += 2)
            if (p % d == 0) return false;
        return true;
    }

    using Poly = std::vector<std::uint32_t>;  // coefficients ascending

    static std::size_t degree(const Poly& f) {
        std::size_t d = f.size();
        while (d > 0 && f[d - 1] == 0) --d;
        return d == 0 ? 0 : d - 1;
    }

    /// Remainder of f by monic g over GF(p).
    Poly poly_mod(Poly f, const Poly& g) const {
        std::size_t dg = degree(g);
        for (std::size_t i = f.size(); i-- > dg;) {
            std::uint32_t c = f[i] % p_;
            if (c == 0) continue;
            for (std::size_t j = 0; j <= dg; ++j) {
                std::uint64_t t = f[i - dg + j] + std::uint64_t{p_ - g[j] % p_} * c;
                f[i - dg + j] = static_cast<std::uint32_t>(t % p_);
            }
        }
        f.resize(dg);
        return f;
    }

    bool is_irreducible(const Poly& f) const {
        std::size_t d = degree(f);
        if (d < 1) return false;
        // Trial division by every monic polynomial of degree 1..d/2 (d <= 4 here,
        // so the divisor space is tiny).
        for (std::size_t dd = 1; dd <= d / 2; ++dd) {
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < dd; ++i) count *= p_;
            for (std::uint64_t k = 0; k < count; ++k) {
                Poly g(dd + 1, 0);
                std::uint64_t kk = k;
                for (std::size_t i = 0; i < dd; ++i) {
                    g[i] = static_cast<std::uint32_t>(kk % p_);
                    kk /= p_;
                }
                g[dd] = 1;
                Poly r = poly_mod(f, g);
                if (degree(r) == 0 && (r.empty() || r[0] == 0)) return false;
            }
        }
        return true;
    }

    /// Scan monic degree-e candidates ordered by the coefficient tuple
    /// (c_{e-1}, ..., c_0) and return the first irreducible one.
    Poly smallest_irreducible() const {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < e_; ++i) count *= p_;
        for (std::uint64_t k = 0; k < count; ++k) {
            Poly f(e_ + 1, 0);
            // Digit j of k (least significant first) is coefficient c_j, which makes
            // ascending k exactly the (c_{e-1}, ..., c_0) lexicographic order.
            std::uint64_t kk = k;
            for (std::uint32_t j = 0; j < e_; ++j) {
                f[j] = static_cast<std::uint32_t>(kk % p_);
                kk /= p_;
            }
            f[e_] = 1;
            if (is_irreducible(f)) return f;
        }
        fail("ReducibleModulus", "no irreducible modulus found (impossible)");
    }

    void build_reduction_rows() {
        // red_[k] = coefficients of x^{e+k} reduced mod the modulus, k in [0, e-1).
        red_.assign(e_ - 1, Poly(e_, 0));
        Poly cur(e_, 0);  // x^e mod f = -(c_0 + ... + c_{e-1} x^{e-1})
        for (std::uint32_t i = 0; i < e_; ++i) cur[i] = (p_ - modulus_[i] % p_) % p_;
        red_[0] = cur;
        for (std::uint32_t k = 1; k + 1 < e_; ++k) {
            Poly next(e_, 0);
            // multiply cur by x, folding the overflow term through red_[0]
            std::uint32_t top = cur[e_ - 1];
            for (std::uint32_t i = e_ - 1; i > 0; --i) next[i] = cur[i - 1];
            next[0] = 0;
            for (std::uint32_t i = 0; i < e_; ++i)
                next[i] = static_cast<std::uint32_t>((next[i] + std::uint64_t{top} * red_[0][i]) % p_);
            red_[k] = next;
            cur = next;
        }
    }

    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t da[8], db[8];
        for (std::uint32_t i = 0; i < e_; ++i) {
            da[i] = a % p_;
            a /= p_;
            db[i] = b % p_;
            b /= p_;
        }
        std::uint64_t conv[15] = {0};
        for (std::uint32_t i = 0; i < e_; ++i)
            for (std::uint32_t j = 0; j < e_; ++j) conv[i + j] += std::uint64_t{da[i]} * db[j];
        std::uint64_t out[8] = {0};
        for (std::uint32_t i = 0; i < e_; ++i) out[i] = conv[i] % p_;
        for (std::uint32_t k = e_; k <= 2 * (e_ - 1); ++k) {
            std::uint64_t c = conv[k] % p_;
            if (c == 0) continue;
            const Poly& row = red_[k - e_];
            for (std::uint32_t i = 0; i < e_; ++i) out[i] = (out[i] + c * row[i]) % p_;
        }
        std::uint32_t idx = 0, scale = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            idx += static_cast<std::uint32_t>(out[i]) * scale;
            scale *= p_;
        }
        return idx;
    }

    void build_tables() {
        neg_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            std::uint32_t out = 0, scale = 1, aa = a;
            for (std::uint32_t i = 0; i < e_; ++i) {
                std::uint32_t d = aa % p_;
                out += (d == 0 ? 0 : p_ - d) * scale;
                aa /= p_;
                scale *= p_;
            }
            neg_[a] = out;
        }
        if (e_ > 1 && std::uint64_t{q_} * q_ <= (1u << 20)) {
            mul_tab_.resize(std::size_t{q_} * q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t b = 0; b < q_; ++b)
                    mul_tab_[std::size_t{a} * q_ + b] = mul_slow(a, b);
        }
        inv_.assign(q_, 0);
        for (std::uint32_t a = 1; a < q_; ++a) inv_[a] = pow(a, static_cast<std::int64_t>(q_) - 2);
        sqclass_.assign(q_, 2);  // default NonSquare
        sqclass_[0] = 0;
        for (std::uint32_t x = 1; x < q_; ++x) sqclass_[mul(x, x)] = 1;
        witness_ = 0;
        for (std::uint32_t b = 1; b < q_; ++b) {
            if (square_class(neg_[b]) == SquareClass::NonSquare) {
                witness_ = b;
                break;
            }
        }
    }

    std::uint32_t p_, e_, q_;
    Poly modulus_;              // empty for e == 1
    std::vector<Poly> red_;     // x^{e+k} mod modulus
    std::vector<std::uint32_t> neg_, inv_, mul_tab_;
    std::vector<std::uint8_t> sqclass_;
    std::uint32_t witness_ = 0;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

inline FieldPtr field_new(std::uint32_t p, std::uint32_t e = 1,
                          const std::vector<std::uint32_t>& modulus = {}) {
    return std::make_shared<FieldCtx>(p, e, modulus);
}

/// Value-style element wrapper; mixing elements of different contexts is a
/// ContextMismatch error.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const FieldCtx* ctx, std::uint32_t idx) : ctx_(ctx), idx_(idx) {
        require(ctx != nullptr && idx < ctx->q(), "BadParameters", "element index out of range");
    }

    std::uint32_t index() const { return idx_; }
    const FieldCtx* ctx() const { return ctx_; }

    friend FieldElem operator+(FieldElem a, FieldElem b) {
        return FieldElem(a.same(b), a.ctx_->add(a.idx_, b.idx_));
    }
    friend FieldElem operator-(FieldElem a, FieldElem b) {
        return FieldElem(a.same(b), a.ctx_->sub(a.idx_, b.idx_));
    }
    friend FieldElem operator*(FieldElem a, FieldElem b) {
        return FieldElem(a.same(b), a.ctx_->mul(a.idx_, b.idx_));
    }
    friend FieldElem operator/(FieldElem a, FieldElem b) {
        return FieldElem(a.same(b), a.ctx_->div(a.idx_, b.idx_));
    }
    FieldElem operator-() const { return FieldElem(ctx_, ctx_->neg(idx_)); }
    FieldElem inv() const { return FieldElem(ctx_, ctx_->inv(idx_)); }
    FieldElem pow(std::int64_t n) const { return FieldElem(ctx_, ctx_->pow(idx_, n)); }
    SquareClass square_class() const { return ctx_->square_class(idx_); }

    friend bool operator==(FieldElem a, FieldElem b) {
        return a.same(b) != nullptr && a.idx_ == b.idx_;
    }
    friend bool operator!=(FieldElem a, FieldElem b) { return !(a == b); }

private:
    const FieldCtx* same(const FieldElem& other) const {
        require(ctx_ == other.ctx_, "ContextMismatch",
                "operands belong to different field contexts");
        return ctx_;
    }

    const FieldCtx* ctx_ = nullptr;
    std::uint32_t idx_ = 0;
};

inline FieldElem elem(const FieldPtr& ctx, std::uint32_t idx) { return FieldElem(ctx.get(), idx); }

}  // namespace pdsforge
