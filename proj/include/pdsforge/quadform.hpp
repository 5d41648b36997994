#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"
#include "field.hpp"

namespace pdsforge {

/// Row vector over a field context; coordinates are canonical field indices.
using Vec = std::vector<std::uint32_t>;

/// Dense square matrix over a field context, acting on row vectors from the
/// right: x -> xM.
struct Matrix {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> a;  // row-major field indices

    Matrix() = default;
    explicit Matrix(std::uint32_t n_) : n(n_), a(std::size_t{n_} * n_, 0) {}

    std::uint32_t& at(std::uint32_t i, std::uint32_t j) { return a[std::size_t{i} * n + j]; }
    std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return a[std::size_t{i} * n + j]; }

    static Matrix eye(std::uint32_t n) {
        Matrix m(n);
        for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

inline Matrix mat_mul(const FieldCtx& F, const Matrix& A, const Matrix& B) {
    require(A.n == B.n, "DimensionMismatch", "matrix sizes differ");
    Matrix C(A.n);
    for (std::uint32_t i = 0; i < A.n; ++i)
        for (std::uint32_t k = 0; k < A.n; ++k) {
            std::uint32_t aik = A.at(i, k);
            if (aik == 0) continue;
            for (std::uint32_t j = 0; j < A.n; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

inline Vec vec_mat(const FieldCtx& F, const Vec& x, const Matrix& M) {
    require(x.size() == M.n, "DimensionMismatch", "vector length does not match matrix");
    Vec y(M.n, 0);
    for (std::uint32_t i = 0; i < M.n; ++i) {
        std::uint32_t xi = x[i];
        if (xi == 0) continue;
        for (std::uint32_t j = 0; j < M.n; ++j) y[j] = F.add(y[j], F.mul(xi, M.at(i, j)));
    }
    return y;
}

inline Vec vec_add(const FieldCtx& F, const Vec& x, const Vec& y) {
    require(x.size() == y.size(), "DimensionMismatch", "vector lengths differ");
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = F.add(x[i], y[i]);
    return z;
}

/// Canonical vector index: sum coords[i] * q^i (coordinate 1 least significant).
inline std::uint64_t encode_vector(const FieldCtx& F, const Vec& x) {
    std::uint64_t idx = 0, scale = 1;
    for (std::uint32_t c : x) {
        idx += std::uint64_t{c} * scale;
        scale *= F.q();
    }
    return idx;
}

inline Vec decode_vector(const FieldCtx& F, std::uint32_t n, std::uint64_t idx) {
    Vec x(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        x[i] = static_cast<std::uint32_t>(idx % F.q());
        idx /= F.q();
    }
    return x;
}

/// Canonical nondegenerate quadratic form on GF(q)^{2m}:
///   eps = +1 (hyperbolic): Q(x) = x1 x2 + x3 x4 + ... + x_{2m-1} x_{2m}
///   eps = -1 (elliptic):   Q(x) = x1 x2 + ... + x_{2m-3} x_{2m-2}
///                                 + x_{2m-1}^2 + b x_{2m}^2, with -b a nonsquare
/// where b is the deterministic nonsquare witness of the field, so the form
/// (and everything derived from it) is reproducible across runs.
class QuadForm {
public:
    QuadForm(FieldPtr ctx, std::uint32_t m, int eps) : ctx_(std::move(ctx)), m_(m), eps_(eps) {
        require(m_ >= 2, "MTooSmall", "quadratic forms here need m >= 2");
        require(eps_ == 1 || eps_ == -1, "BadEps", "eps must be +1 or -1");
        b_ = (eps_ == -1) ? ctx_->nonsquare_witness() : 0;
    }

    const FieldPtr& ctx() const { return ctx_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t dim() const { return 2 * m_; }
    int eps() const { return eps_; }
    /// The elliptic coefficient (0 when eps = +1).
    std::uint32_t b() const { return b_; }

    std::uint32_t evaluate(const Vec& x) const {
        require(x.size() == dim(), "DimensionMismatch", "vector length must be 2m");
        const FieldCtx& F = *ctx_;
        std::uint32_t s = 0;
        std::uint32_t pairs = (eps_ == 1) ? m_ : m_ - 1;
        for (std::uint32_t i = 0; i < pairs; ++i) s = F.add(s, F.mul(x[2 * i], x[2 * i + 1]));
        if (eps_ == -1) {
            s = F.add(s, F.mul(x[2 * m_ - 2], x[2 * m_ - 2]));
            s = F.add(s, F.mul(b_, F.mul(x[2 * m_ - 1], x[2 * m_ - 1])));
        }
        return s;
    }

    /// beta(x,y) = Q(x+y) - Q(x) - Q(y); symmetric and bilinear.
    std::uint32_t bilinear(const Vec& x, const Vec& y) const {
        const FieldCtx& F = *ctx_;
        std::uint32_t s = evaluate(vec_add(F, x, y));
        s = F.sub(s, evaluate(x));
        return F.sub(s, evaluate(y));
    }

    SquareClass classify_vector(const Vec& x) const { return ctx_->square_class(evaluate(x)); }

    /// Basis of v-perp = { u : beta(u,v) = 0 } for nonsingular v, in a fixed
    /// echelon order (pivot = least coordinate with nonzero beta(e_i, v)).
    std::vector<Vec> perp_basis(const Vec& v) const {
        require(v.size() == dim(), "DimensionMismatch", "vector length must be 2m");
        const FieldCtx& F = *ctx_;
        bool zero = true;
        for (std::uint32_t c : v) zero = zero && c == 0;
        require(!zero, "ZeroVector", "perp space of the zero vector is everything");
        require(evaluate(v) != 0, "SingularVector",
                "anchor must be nonsingular (Q(v) != 0) for a regular decomposition");
        Vec coef(dim());
        for (std::uint32_t i = 0; i < dim(); ++i) {
            Vec e(dim(), 0);
            e[i] = 1;
            coef[i] = bilinear(e, v);
        }
        std::uint32_t pivot = dim();
        for (std::uint32_t i = 0; i < dim(); ++i)
            if (coef[i] != 0) {
                pivot = i;
                break;
            }
        require(pivot < dim(), "SingularVector", "form is degenerate at v");  // cannot happen
        std::vector<Vec> basis;
        std::uint32_t pivinv = F.inv(coef[pivot]);
        for (std::uint32_t i = 0; i < dim(); ++i) {
            if (i == pivot) continue;
            Vec u(dim(), 0);
            u[i] = 1;
            u[pivot] = F.neg(F.mul(coef[i], pivinv));
            basis.push_back(std::move(u));
        }
        return basis;
    }

    /// True iff Q(xM) = Q(x) for all x.  Exhaustive for q^{2m} <= 6561; above
    /// that the spanning set {e_i, e_i + e_j} decides (sufficient in odd
    /// characteristic: a quadratic form is determined by those values).
    bool is_isometry(const Matrix& M) const {
        require(M.n == dim(), "DimensionMismatch", "matrix must be 2m x 2m");
        const FieldCtx& F = *ctx_;
        std::uint64_t total = 1;
        bool small = true;
        for (std::uint32_t i = 0; i < dim() && small; ++i) {
            total *= F.q();
            small = total <= 6561;
        }
        if (small) {
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                Vec x = decode_vector(F, dim(), idx);
                if (evaluate(vec_mat(F, x, M)) != evaluate(x)) return false;
            }
            return true;
        }
        for (std::uint32_t i = 0; i < dim(); ++i) {
            Vec e(dim(), 0);
            e[i] = 1;
            if (evaluate(vec_mat(F, e, M)) != evaluate(e)) return false;
            for (std::uint32_t j = i + 1; j < dim(); ++j) {
                Vec s(dim(), 0);
                s[i] = 1;
                s[j] = 1;
                if (evaluate(vec_mat(F, s, M)) != evaluate(s)) return false;
            }
        }
        return true;
    }

private:
    FieldPtr ctx_;
    std::uint32_t m_;
    int eps_;
    std::uint32_t b_;
};

inline QuadForm quadform_new(FieldPtr ctx, std::uint32_t m, int eps) {
    return QuadForm(std::move(ctx), m, eps);
}

}  // namespace pdsforge
