#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "field.hpp"
#include "group.hpp"
#include "quadform.hpp"

namespace pdsforge {

// ---------------------------------------------------------------------------
// Partition schemes
// ---------------------------------------------------------------------------

/// An ordered, labeled partition of a group's nonidentity elements.  Classes
/// may be empty (the degenerate C0 convention); the identity belongs to no
/// class.  `family` is the canonical construction descriptor, e.g.
/// "semidirect-scheme:3:2:twisted".
struct PartitionScheme {
    GroupPtr group;
    std::vector<ElementSet> classes;
    std::vector<std::string> labels;
    std::string family;
};

/// Hard structural check: classes disjoint, identity-free, covering all of
/// G - {1}.  The set formulas feeding these partitions are transcription
/// sensitive, so any overlap or hole is a fatal PartitionFailure rather than
/// something to silently accept.
inline void require_exact_partition(const PartitionScheme& s) {
    ElementSet seen(s.group);
    std::size_t total = 0;
    for (std::size_t c = 0; c < s.classes.size(); ++c) {
        require(!s.classes[c].contains(Group::identity), "PartitionFailure",
                "class " + s.labels[c] + " contains the identity");
        require(seen.disjoint_with(s.classes[c]), "PartitionFailure",
                "class " + s.labels[c] + " overlaps an earlier class");
        seen |= s.classes[c];
        total += s.classes[c].size();
    }
    require(total == std::size_t{s.group->order()} - 1, "PartitionFailure",
            "classes cover " + std::to_string(total) + " of " +
                std::to_string(s.group->order() - 1) + " nonidentity elements");
}

// ---------------------------------------------------------------------------
// Matrix-affine groups on V = GF(q)^{2m}
// ---------------------------------------------------------------------------

enum class AffineKind { G1, G2, AbelianTV };

inline const char* affine_kind_name(AffineKind k) {
    switch (k) {
        case AffineKind::G1: return "affine-g1";
        case AffineKind::G2: return "affine-g2";
        case AffineKind::AbelianTV: return "affine-abelian";
    }
    return "?";
}

/// The 4x4 isometry family used by G1 at m = 2.  Entries are written in the
/// field (alpha is a field index, literal constants map through the canonical
/// encoding).
inline Matrix affine_c_matrix(const FieldCtx& F, int eps, std::uint32_t alpha) {
    Matrix M = Matrix::eye(4);
    std::uint32_t a = alpha, na = F.neg(alpha), a2 = F.mul(alpha, alpha);
    if (eps == 1) {
        M.at(0, 3) = a;
        M.at(1, 3) = na;
        M.at(2, 0) = a;
        M.at(2, 1) = na;
        M.at(2, 3) = a2;
    } else {
        M.at(0, 1) = F.neg(a2);
        M.at(0, 2) = a;
        M.at(2, 1) = F.neg(F.add(a, a));
    }
    return M;
}

/// The 2m x 2m isometry family used by G2 (and by G1 for m > 2): the 4x4
/// block below extended by the identity.
inline Matrix affine_b_matrix(const FieldCtx& F, std::uint32_t n, std::uint32_t alpha) {
    Matrix M = Matrix::eye(n);
    M.at(1, 2) = F.neg(alpha);
    M.at(3, 0) = alpha;
    return M;
}

/// Group of order q^{2m} on the carrier V = GF(q)^{2m} with the twisted law
///     x * y = x A_{alpha(y)} + y,
/// where alpha: V -> GF(q) is a linear functional and alpha -> A_alpha an
/// additive family of isometries of the canonical quadratic form.  The three
/// kinds differ only in the matrix family and functional:
///   G1:        C_alpha (m = 2) or block B_alpha (m > 2); alpha(x) is the
///              <v>-coordinate of x for a fixed nonsingular anchor v, i.e.
///              beta(x,v)/beta(v,v).
///   G2:        block B_alpha; alpha(x) = the e2-coordinate of x.
///   AbelianTV: A_alpha = I, so the law is plain vector addition.
///
/// Anchors for G1: v = e1+e2 when m = 2, eps = +1; v = e4 when m = 2,
/// eps = -1 (the least-index vector that every C_alpha fixes and that is
/// nonsingular for the elliptic form — e2, the other fixed coordinate vector,
/// has Q(e2) = 0 and admits no regular decomposition); v = e5+e6 when m > 2.
///
/// Elements are indexed by the canonical vector encoding (base q, coordinate 1
/// least significant).  The construction self-checks per instance: every
/// A_alpha is an isometry, the family is additive, and the anchor is fixed.
class AffineGroup final : public Group {
public:
    AffineGroup(FieldPtr field, std::uint32_t m, int eps, AffineKind kind)
        : Group(carrier_order(*field, m)),
          F_(std::move(field)),
          form_(F_, m, eps),
          kind_(kind),
          n_(2 * m) {
        if (kind_ == AffineKind::G2)
            require(m > 2 || eps == 1, "BadParameters",
                    "the G2 construction requires m > 2, or eps = +1 when m = 2");

        const FieldCtx& F = *F_;
        mats_.reserve(F.q());
        for (std::uint32_t a = 0; a < F.q(); ++a) {
            if (kind_ == AffineKind::AbelianTV)
                mats_.push_back(Matrix::eye(n_));
            else if (kind_ == AffineKind::G1 && m == 2)
                mats_.push_back(affine_c_matrix(F, eps, a));
            else
                mats_.push_back(affine_b_matrix(F, n_, a));
        }

        // Per-instance self-checks on the isometry family.
        for (std::uint32_t a = 0; a < F.q(); ++a) {
            require(form_.is_isometry(mats_[a]), "BadParameters",
                    "matrix family member is not an isometry (alpha index " + std::to_string(a) +
                        ")");
            for (std::uint32_t g = 0; g < F.q(); ++g) {
                Matrix prod = mat_mul(F, mats_[a], mats_[g]);
                require(prod.a == mats_[F.add(a, g)].a, "BadParameters",
                        "matrix family is not additive");
            }
        }

        // The alpha functional.
        Vec coef(n_, 0);
        if (kind_ == AffineKind::G1) {
            anchor_ = Vec(n_, 0);
            if (m == 2 && eps == 1) {
                anchor_[0] = 1;
                anchor_[1] = 1;
                anchor_label_ = "e1+e2";
            } else if (m == 2) {
                anchor_[3] = 1;
                anchor_label_ = "e4";
            } else {
                anchor_[4] = 1;
                anchor_[5] = 1;
                anchor_label_ = "e5+e6";
            }
            require(form_.evaluate(anchor_) != 0, "SingularVector", "anchor must be nonsingular");
            for (std::uint32_t a = 0; a < F.q(); ++a)
                require(vec_mat(F, anchor_, mats_[a]) == anchor_, "BadParameters",
                        "anchor is not fixed by the matrix family");
            std::uint32_t bvv = form_.bilinear(anchor_, anchor_);
            std::uint32_t bvv_inv = F.inv(bvv);
            for (std::uint32_t i = 0; i < n_; ++i) {
                Vec e(n_, 0);
                e[i] = 1;
                coef[i] = F.mul(form_.bilinear(e, anchor_), bvv_inv);
            }
        } else if (kind_ == AffineKind::G2) {
            coef[1] = 1;  // the e2-coordinate
        }

        // Per-element tables: coordinates, alpha value, square-class of Q.
        ElementId v = order();
        coords_.resize(std::size_t{v} * n_);
        alpha_.resize(v);
        cls_.resize(v);
        for (ElementId g = 0; g < v; ++g) {
            Vec x = decode_vector(F, n_, g);
            for (std::uint32_t i = 0; i < n_; ++i)
                coords_[std::size_t{g} * n_ + i] = static_cast<std::uint16_t>(x[i]);
            std::uint32_t a = 0;
            for (std::uint32_t i = 0; i < n_; ++i) a = F.add(a, F.mul(coef[i], x[i]));
            alpha_[g] = static_cast<std::uint16_t>(a);
            if (g == 0)
                cls_[g] = 0;
            else {
                switch (form_.classify_vector(x)) {
                    case SquareClass::Zero: cls_[g] = 1; break;
                    case SquareClass::Square: cls_[g] = 2; break;
                    case SquareClass::NonSquare: cls_[g] = 3; break;
                }
            }
        }

        abelian_ = probe_abelian();
        finalize_tables();
    }

    const FieldPtr& field() const { return F_; }
    const QuadForm& form() const { return form_; }
    AffineKind kind() const { return kind_; }
    std::uint32_t dim() const { return n_; }
    std::uint32_t alpha_of(ElementId g) const { return alpha_[g]; }
    const Matrix& matrix(std::uint32_t alpha) const { return mats_[alpha]; }
    /// Square-class code of the carrier vector: 0 zero vector, 1 singular
    /// nonzero, 2 square, 3 nonsquare.
    std::uint8_t vector_class(ElementId g) const { return cls_[g]; }
    const std::string& anchor_label() const { return anchor_label_; }

    Vec vector_of(ElementId g) const { return decode_vector(*F_, n_, g); }
    ElementId id_of(const Vec& x) const {
        return static_cast<ElementId>(encode_vector(*F_, x));
    }

    std::string spec_string() const override {
        std::string s = std::string(affine_kind_name(kind_)) + ":" + std::to_string(F_->q()) +
                        ":" + std::to_string(n_ / 2) + ":" + (form_.eps() == 1 ? "+1" : "-1");
        if (F_->e() > 1) {
            s += ":mod=";
            const auto& mod = F_->modulus();
            for (std::size_t i = 0; i < mod.size(); ++i)
                s += (i ? "," : "") + std::to_string(mod[i]);
        }
        return s;
    }

    std::string description() const override {
        std::string base;
        switch (kind_) {
            case AffineKind::G1:
                base = "twisted translation group G1 (anchor " + anchor_label_ + ")";
                break;
            case AffineKind::G2: base = "twisted translation group G2"; break;
            case AffineKind::AbelianTV: base = "translation group"; break;
        }
        return base + " on GF(" + std::to_string(F_->q()) + ")^" + std::to_string(n_) +
               ", eps=" + (form_.eps() == 1 ? "+1" : "-1");
    }

    bool is_abelian() const override { return abelian_; }

protected:
    ElementId mul_impl(ElementId a, ElementId b) const override {
        const FieldCtx& F = *F_;
        const Matrix& M = mats_[alpha_[b]];
        const std::uint16_t* x = &coords_[std::size_t{a} * n_];
        const std::uint16_t* y = &coords_[std::size_t{b} * n_];
        std::uint64_t idx = 0, scale = 1;
        for (std::uint32_t j = 0; j < n_; ++j) {
            std::uint32_t zj = 0;
            for (std::uint32_t i = 0; i < n_; ++i) {
                std::uint32_t mij = M.at(i, j);
                if (mij != 0 && x[i] != 0) zj = F.add(zj, F.mul(x[i], mij));
            }
            zj = F.add(zj, y[j]);
            idx += std::uint64_t{zj} * scale;
            scale *= F.q();
        }
        return static_cast<ElementId>(idx);
    }

    ElementId inv_impl(ElementId g) const override {
        const FieldCtx& F = *F_;
        const Matrix& M = mats_[F.neg(alpha_[g])];
        const std::uint16_t* x = &coords_[std::size_t{g} * n_];
        std::uint64_t idx = 0, scale = 1;
        for (std::uint32_t j = 0; j < n_; ++j) {
            std::uint32_t zj = 0;
            for (std::uint32_t i = 0; i < n_; ++i) {
                std::uint32_t mij = M.at(i, j);
                if (mij != 0 && x[i] != 0) zj = F.add(zj, F.mul(x[i], mij));
            }
            idx += std::uint64_t{F.neg(zj)} * scale;
            scale *= F.q();
        }
        return static_cast<ElementId>(idx);
    }

private:
    static std::uint64_t carrier_order(const FieldCtx& F, std::uint32_t m) {
        require(m >= 2, "MTooSmall", "affine constructions need m >= 2");
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < 2 * m; ++i) {
            v *= F.q();
            require(v <= (std::uint64_t{1} << 24), "TooLarge",
                    "affine carrier q^{2m} exceeds the supported bound");
        }
        return v;
    }

    bool probe_abelian() const {
        if (kind_ == AffineKind::AbelianTV) return true;  // plain vector addition
        for (ElementId a = 1; a < order(); ++a)
            for (ElementId b = a + 1; b < order(); ++b)
                if (mul_impl(a, b) != mul_impl(b, a)) return false;
        return true;
    }

    FieldPtr F_;
    QuadForm form_;
    AffineKind kind_;
    std::uint32_t n_;
    std::vector<Matrix> mats_;
    std::vector<std::uint16_t> coords_;
    std::vector<std::uint16_t> alpha_;
    std::vector<std::uint8_t> cls_;
    Vec anchor_;
    std::string anchor_label_ = "none";
    bool abelian_ = false;
};

using AffinePtr = std::shared_ptr<const AffineGroup>;

/// (group, labeled partition) pair returned by the construction entry points.
struct SchemeResult {
    GroupPtr group;
    PartitionScheme partition;
};

struct SetResult {
    GroupPtr group;
    ElementSet set;
};

namespace detail {

/// q = p^e for an odd prime p; returns (p, e) or fails.
inline std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q) {
    require(q >= 3 && q % 2 == 1, "BadParameters",
            "q must be an odd prime power, got " + std::to_string(q));
    std::uint32_t p = 0;
    for (std::uint32_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {q, 1};  // q itself prime
    std::uint32_t e = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    require(rest == 1, "BadParameters",
            "q must be an odd prime power, got " + std::to_string(q));
    return {p, e};
}

inline AffinePtr make_affine(std::uint32_t q, std::uint32_t m, int eps, AffineKind kind) {
    auto [p, e] = factor_prime_power(q);
    return std::make_shared<AffineGroup>(field_new(p, e), m, eps, kind);
}

/// D0/D1/D2 = nonzero carrier vectors with Q singular / square / nonsquare.
inline SchemeResult affine_family(std::uint32_t q, std::uint32_t m, int eps, AffineKind kind) {
    AffinePtr G = make_affine(q, m, eps, kind);
    PartitionScheme part;
    part.group = G;
    part.labels = {"D0", "D1", "D2"};
    part.family = G->spec_string();
    for (int c = 1; c <= 3; ++c) {
        ElementSet s(part.group);
        for (ElementId g = 1; g < G->order(); ++g)
            if (G->vector_class(g) == c) s.add(g);
        part.classes.push_back(std::move(s));
    }
    require_exact_partition(part);
    return {part.group, std::move(part)};
}

}  // namespace detail

inline SchemeResult affine_g1(std::uint32_t q, std::uint32_t m, int eps) {
    return detail::affine_family(q, m, eps, AffineKind::G1);
}

inline SchemeResult affine_g2(std::uint32_t q, std::uint32_t m, int eps) {
    return detail::affine_family(q, m, eps, AffineKind::G2);
}

inline SchemeResult affine_abelian(std::uint32_t q, std::uint32_t m, int eps) {
    return detail::affine_family(q, m, eps, AffineKind::AbelianTV);
}

/// The (q+3)-class refinement on the order-q^4 G2 carrier: D1, D2 and the q+1
/// two-dimensional invariant subspaces U_inf = <e4, e1>,
/// U_alpha = <e2 + alpha e4, alpha e1 - e3>, each minus the zero vector.
inline SchemeResult affine_scheme_q4(std::uint32_t q) {
    AffinePtr G = detail::make_affine(q, 2, 1, AffineKind::G2);
    const FieldCtx& F = *G->field();
    PartitionScheme part;
    part.group = G;
    part.family = "affine-scheme-q4:" + std::to_string(q);

    for (int c = 2; c <= 3; ++c) {
        ElementSet s(part.group);
        for (ElementId g = 1; g < G->order(); ++g)
            if (G->vector_class(g) == c) s.add(g);
        part.classes.push_back(std::move(s));
        part.labels.push_back(c == 2 ? "D1" : "D2");
    }

    auto span_class = [&](const Vec& v1, const Vec& v2) {
        ElementSet s(part.group);
        for (std::uint32_t a = 0; a < F.q(); ++a)
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                Vec x(4, 0);
                for (std::uint32_t i = 0; i < 4; ++i)
                    x[i] = F.add(F.mul(a, v1[i]), F.mul(b, v2[i]));
                ElementId g = G->id_of(x);
                if (g != Group::identity) s.add(g);
            }
        return s;
    };

    part.classes.push_back(span_class({0, 0, 0, 1}, {1, 0, 0, 0}));  // U_inf = <e4, e1>
    part.labels.push_back("Uinf");
    for (std::uint32_t a = 0; a < F.q(); ++a) {
        Vec va = {0, 1, 0, a};                    // e2 + alpha e4
        Vec ua = {a, 0, F.neg(1), 0};             // alpha e1 - e3
        part.classes.push_back(span_class(va, ua));
        part.labels.push_back("U" + std::to_string(a));
    }
    require_exact_partition(part);
    return {part.group, std::move(part)};
}

/// Paley-type fusion on the q^4 carrier: D1 together with the first (q+1)/2
/// subgroup classes in label order (U_inf first); |D| = (q^4 - 1)/2.
inline SetResult affine_paley_q4(std::uint32_t q) {
    SchemeResult s = affine_scheme_q4(q);
    ElementSet D = s.partition.classes[0];  // D1
    for (std::uint32_t i = 0; i < (q + 1) / 2; ++i) D |= s.partition.classes[2 + i];
    return {s.group, std::move(D)};
}

// ---------------------------------------------------------------------------
// Semidirect / abelian p-power schemes
// ---------------------------------------------------------------------------

namespace detail {

/// Element x^a y^b in either the semidirect backend or its abelian counterpart
/// (both encode (a, b) as a + p^t b).
inline ElementId xy_id(std::uint32_t pt, std::int64_t a, std::int64_t b) {
    std::int64_t m = pt;
    return static_cast<ElementId>(((a % m + m) % m) + m * ((b % m + m) % m));
}

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

/// One class of the 2p-class partition: the union over r in [1,t), j in
/// [0, p^{r-1}), k in [0, p) of the cyclic-subgroup differences
///   <x y^{i p^r + p j + k}>  minus  <x^{p^{t-r}} y^{j p^{t+1-r} + k p^{t-r}}>
/// together with (inside the j-union)
///   <x^{i p^r + j p} y>      minus  <x^{j p^{t-r+1}} y^{p^{t-r}}>.
/// Every subtrahend must be a subgroup of its minuend; a violation means the
/// formula was transcribed wrongly and is reported as PartitionFailure.
inline ElementSet p_class(const GroupPtr& G, std::uint32_t p, std::uint32_t t, std::uint32_t i) {
    std::uint32_t pt = static_cast<std::uint32_t>(ipow(p, t));
    ElementSet acc(G);
    auto piece = [&](std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
        ElementSet big = cyclic_subgroup(G, xy_id(pt, a1, b1));
        ElementSet small = cyclic_subgroup(G, xy_id(pt, a2, b2));
        require((small - big).empty(), "PartitionFailure",
                "subtracted cyclic subgroup is not contained in its parent");
        acc |= (big - small);
    };
    for (std::uint32_t r = 1; r < t; ++r) {
        std::uint64_t pr = ipow(p, r);
        for (std::uint64_t j = 0; j < ipow(p, r - 1); ++j) {
            for (std::uint32_t k = 0; k < p; ++k)
                piece(1, std::int64_t(i * pr + p * j + k), std::int64_t(ipow(p, t - r)),
                      std::int64_t(j * ipow(p, t + 1 - r) + k * ipow(p, t - r)));
            piece(std::int64_t(i * pr + j * p), 1, std::int64_t(j * ipow(p, t - r + 1)),
                  std::int64_t(ipow(p, t - r)));
        }
    }
    return acc;
}

}  // namespace detail

/// The 2p-class partition of the order-p^{2t} group (twisted semidirect or its
/// abelian counterpart Z_{p^t}^2): classes P1..P_{p-1}, then S0..S_{p-1} with
/// S_j = <x y^j> - {1}, then Sinf = <y> - {1}.
inline SchemeResult semidirect_scheme(std::uint32_t p, std::uint32_t t, bool twisted) {
    GroupPtr G;
    if (twisted) {
        G = semidirect_group(p, t);
    } else {
        std::uint64_t pt = detail::ipow(p, t);
        require(pt * pt <= (std::uint64_t{1} << 31), "TooLarge", "group order out of range");
        G = abelian_group({static_cast<std::uint32_t>(pt), static_cast<std::uint32_t>(pt)});
    }
    std::uint32_t pt = static_cast<std::uint32_t>(detail::ipow(p, t));

    PartitionScheme part;
    part.group = G;
    part.family = "semidirect-scheme:" + std::to_string(p) + ":" + std::to_string(t) + ":" +
                  (twisted ? "twisted" : "abelian");
    for (std::uint32_t i = 1; i < p; ++i) {
        part.classes.push_back(detail::p_class(G, p, t, i));
        part.labels.push_back("P" + std::to_string(i));
    }
    ElementSet one(G);
    one.add(Group::identity);
    for (std::uint32_t j = 0; j < p; ++j) {
        part.classes.push_back(cyclic_subgroup(G, detail::xy_id(pt, 1, j)) - one);
        part.labels.push_back("S" + std::to_string(j));
    }
    part.classes.push_back(cyclic_subgroup(G, detail::xy_id(pt, 0, 1)) - one);
    part.labels.push_back("Sinf");
    require_exact_partition(part);
    return {G, std::move(part)};
}

/// The Paley-type fusion of the 2p-class partition:
/// P1..P_{(p-1)/2} together with S0..S_{(p-1)/2}; size (p^{2t} - 1)/2.
inline SetResult semidirect_paley(std::uint32_t p, std::uint32_t t, bool twisted) {
    SchemeResult s = semidirect_scheme(p, t, twisted);
    ElementSet D(s.group);
    for (std::uint32_t i = 1; i <= (p - 1) / 2; ++i) D |= s.partition.classes[i - 1];
    for (std::uint32_t j = 0; j <= (p - 1) / 2; ++j) D |= s.partition.classes[(p - 1) + j];
    return {s.group, std::move(D)};
}

/// Pieces of the degree-2 class P_i as plain set differences, used to check
/// the two subgroup-sum census identities:
///   d[j] = <x y^{ip+j}> - <x^p y^{pj}>  (j in [0,p)),
///   e    = <x^{ip} y>   - <y^p>,
/// and residue = <x^p, y^p>, the subgroup the identities quotient by.
struct ClassPieces {
    std::vector<ElementSet> d;
    ElementSet e;
    ElementSet residue;
};

inline ClassPieces class_pieces(const GroupPtr& G, std::uint32_t p, std::uint32_t i) {
    std::uint64_t v = G->order();
    std::uint32_t pt = static_cast<std::uint32_t>(detail::ipow(p, 2));
    require(v == std::uint64_t{pt} * pt, "BadParameters",
            "piece decomposition is defined for t = 2 groups of order p^4");
    ClassPieces out{{}, ElementSet(G), ElementSet(G)};
    for (std::uint32_t j = 0; j < p; ++j)
        out.d.push_back(cyclic_subgroup(G, detail::xy_id(pt, 1, i * p + j)) -
                        cyclic_subgroup(G, detail::xy_id(pt, p, p * j)));
    out.e = cyclic_subgroup(G, detail::xy_id(pt, i * p, 1)) -
            cyclic_subgroup(G, detail::xy_id(pt, 0, p));
    out.residue = subgroup_generated(G, {detail::xy_id(pt, p, 0), detail::xy_id(pt, 0, p)});
    return out;
}

// ---------------------------------------------------------------------------
// Classical Paley sets and the Z3 x Z3 toy partitions
// ---------------------------------------------------------------------------

struct PaleyFieldResult {
    GroupPtr group;
    ElementSet set;
    bool is_pds;  // true when q = 1 mod 4 (PDS); false when q = 3 mod 4 (DS)
};

/// Nonzero squares in the additive group of GF(q).  The group is Z_p^e with
/// the canonical field index as element id.
inline PaleyFieldResult paley_field_set(std::uint32_t q) {
    auto [p, e] = detail::factor_prime_power(q);
    FieldPtr F = field_new(p, e);
    GroupPtr G = abelian_group(std::vector<std::uint32_t>(e, p));
    ElementSet D(G);
    for (std::uint32_t a = 1; a < q; ++a)
        if (F->square_class(a) == SquareClass::Square) D.add(a);
    return {G, std::move(D), q % 4 == 1};
}

struct Latin3Result {
    SchemeResult latin;      // (L0, L1, L2), sizes (4, 2, 2)
    SchemeResult neg_latin;  // (C0, C1, C2), sizes (0, 4, 4)
};

/// The two hand-sized partitions of Z3 x Z3 built from its four order-3
/// subgroups H1..H4 (minus identity): L = (H3 u H4, H1, H2) of Latin type and
/// C = (empty, H1 u H2, H3 u H4) of negative Latin type.
inline Latin3Result latin3_partitions() {
    GroupPtr G = abelian_group({3, 3});
    auto pair_set = [&](std::uint32_t a1, std::uint32_t b1, std::uint32_t a2, std::uint32_t b2) {
        ElementSet s(G);
        s.add(a1 + 3 * b1);
        s.add(a2 + 3 * b2);
        return s;
    };
    ElementSet H1 = pair_set(1, 0, 2, 0);
    ElementSet H2 = pair_set(1, 1, 2, 2);
    ElementSet H3 = pair_set(1, 2, 2, 1);
    ElementSet H4 = pair_set(0, 1, 0, 2);

    PartitionScheme L;
    L.group = G;
    L.family = "latin3:L";
    L.labels = {"L0", "L1", "L2"};
    L.classes = {H3 | H4, H1, H2};
    require_exact_partition(L);

    PartitionScheme C;
    C.group = G;
    C.family = "latin3:C";
    C.labels = {"C0", "C1", "C2"};
    C.classes = {ElementSet(G), H1 | H2, H3 | H4};
    require_exact_partition(C);

    return {{G, std::move(L)}, {G, std::move(C)}};
}

}  // namespace pdsforge
