#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "census.hpp"
#include "common.hpp"
#include "constructions.hpp"
#include "group.hpp"

namespace pdsforge {

// ---------------------------------------------------------------------------
// Set certificates
// ---------------------------------------------------------------------------

/// Outcome of a difference census on one set.
///   PDS        - regular set, census constant lambda on S and mu != lambda
///                off S (mu := 0 when S misses only the identity).
///   DS         - census constant on all of G - {1} (an ordinary difference
///                set; regularity not required, and the constant-census case
///                reports as DS even when the set happens to be regular).
///   NotRegular - PDS-shaped census, but the set contains the identity or is
///                not inverse-closed.
///   NotPDS     - anything else (census not two-valued, empty set, full
///                group).
enum class SetKind { PDS, DS, NotRegular, NotPDS };

inline const char* to_string(SetKind k) {
    switch (k) {
        case SetKind::PDS: return "PDS";
        case SetKind::DS: return "DS";
        case SetKind::NotRegular: return "NotRegular";
        case SetKind::NotPDS: return "NotPDS";
    }
    return "?";
}

struct Certificate {
    SetKind kind = SetKind::NotPDS;
    std::uint64_t v = 0;
    std::uint64_t k = 0;
    std::int64_t lambda = 0;
    std::int64_t mu = 0;
    bool regular = false;
    std::vector<std::string> type_tags;
    std::string set_hash;
    std::string census_checksum;
};

inline std::uint64_t integer_sqrt(std::uint64_t v) {
    std::uint64_t n = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (n * n > v) --n;
    while ((n + 1) * (n + 1) <= v) ++n;
    return n;
}

/// Parameter-family tags, evaluated by exact integer arithmetic:
///   Latin(n,r):     v = n^2, k = r(n-1), lambda = n + r^2 - 3r, mu = r^2 - r
///   NegLatin(n,r):  v = n^2, k = r(n+1), lambda = -n + r^2 + 3r, mu = r^2 + r
///   PaleyType:      (v, (v-1)/2, (v-5)/4, (v-1)/4)      [PDS only]
///   PaleyHadamard:  (v, (v-1)/2, (v-3)/4)               [DS only]
///   TrivialSubgroup: mu = 0 and lambda = k - 1 (S + {1} is a subgroup)
/// Parameter sets can satisfy several equations at once (a PDS with the
/// conference parameters at square order is simultaneously Latin, negative
/// Latin, and Paley-type); every applicable tag is listed.
inline std::vector<std::string> classify_parameters(SetKind kind, std::uint64_t v,
                                                    std::uint64_t k, std::int64_t lambda,
                                                    std::int64_t mu) {
    std::vector<std::string> tags;
    if (kind == SetKind::DS) {
        if (v % 4 == 3 && 2 * k == v - 1 && 4 * lambda == static_cast<std::int64_t>(v) - 3)
            tags.push_back("PaleyHadamard");
        return tags;
    }
    if (kind != SetKind::PDS) return tags;
    std::uint64_t n = integer_sqrt(v);
    if (n >= 2 && n * n == v) {
        std::int64_t ns = static_cast<std::int64_t>(n);
        if (k % (n - 1) == 0) {
            std::int64_t r = static_cast<std::int64_t>(k / (n - 1));
            if (lambda == ns + r * r - 3 * r && mu == r * r - r)
                tags.push_back("Latin(" + std::to_string(n) + "," + std::to_string(r) + ")");
        }
        if (k % (n + 1) == 0) {
            std::int64_t r = static_cast<std::int64_t>(k / (n + 1));
            if (lambda == -ns + r * r + 3 * r && mu == r * r + r)
                tags.push_back("NegLatin(" + std::to_string(n) + "," + std::to_string(r) + ")");
        }
    }
    if (v % 4 == 1 && 2 * k == v - 1 && 4 * lambda == static_cast<std::int64_t>(v) - 5 &&
        4 * mu == static_cast<std::int64_t>(v) - 1)
        tags.push_back("PaleyType");
    if (k >= 1 && mu == 0 && lambda == static_cast<std::int64_t>(k) - 1)
        tags.push_back("TrivialSubgroup");
    return tags;
}

/// Identity-free and inverse-closed.
inline bool verify_regularity(const ElementSet& S) {
    return !S.contains(Group::identity) && S.inverse_closed();
}

/// Full difference census of S with exact classification.  The census is the
/// sole evidence: lambda / mu are read off the counts, never assumed from the
/// construction.
inline Certificate verify_pds(const ElementSet& S, unsigned threads = 0) {
    const GroupPtr& G = S.owner();
    Certificate cert;
    cert.v = G->order();
    cert.k = S.size();
    cert.regular = verify_regularity(S);
    cert.set_hash = S.hash();

    Census c = difference_census(S, threads);
    cert.census_checksum = census_checksum(c);

    bool inside_ok = true, outside_ok = true;
    bool have_inside = false, have_outside = false;
    std::int64_t lam = 0, mu = 0;
    for (ElementId g = 1; g < G->order(); ++g) {
        if (S.contains(g)) {
            if (!have_inside) {
                lam = c[g];
                have_inside = true;
            } else if (c[g] != lam)
                inside_ok = false;
        } else {
            if (!have_outside) {
                mu = c[g];
                have_outside = true;
            } else if (c[g] != mu)
                outside_ok = false;
        }
    }
    cert.lambda = have_inside ? lam : 0;
    cert.mu = have_outside ? mu : 0;

    if (cert.k == 0 || cert.k == cert.v || !inside_ok || !outside_ok)
        cert.kind = SetKind::NotPDS;
    else if (have_outside && have_inside && lam == mu)
        cert.kind = SetKind::DS;
    else if (!have_inside)  // S = {1}: constant-zero census, a trivial DS
        cert.kind = SetKind::DS;
    else
        cert.kind = cert.regular ? SetKind::PDS : SetKind::NotRegular;

    cert.type_tags = classify_parameters(cert.kind, cert.v, cert.k, cert.lambda, cert.mu);
    return cert;
}

/// {1}, S and S^{(-1)} partition G (so S + its inverses + identity tile the
/// group with no overlap).
inline bool is_skew_hadamard(const ElementSet& S) {
    const GroupPtr& G = S.owner();
    if (S.contains(Group::identity)) return false;
    if (2 * std::uint64_t{S.size()} + 1 != G->order()) return false;
    bool skew = true;
    S.for_each([&](ElementId g) {
        if (S.contains(G->inverse(g))) skew = false;
    });
    return skew;
}

// ---------------------------------------------------------------------------
// Partition and scheme certification
// ---------------------------------------------------------------------------

struct PartitionReport {
    std::vector<Certificate> class_certs;
    bool all_pds = false;  // every nonempty class certifies as a PDS
};

/// Certify every class of a partition.  Empty classes (the degenerate C0
/// convention) are accepted as vacuous passes.
inline PartitionReport verify_partition(const PartitionScheme& part, unsigned threads = 0) {
    PartitionReport rep;
    rep.all_pds = true;
    for (const ElementSet& cl : part.classes) {
        rep.class_certs.push_back(verify_pds(cl, threads));
        if (cl.size() > 0 && rep.class_certs.back().kind != SetKind::PDS) rep.all_pds = false;
    }
    return rep;
}

struct AmorphicMode {
    bool all = true;  // exhaustive over all proper nonempty class unions
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

struct AmorphicReport {
    bool amorphic = false;
    std::uint64_t unions_checked = 0;
    std::string first_failure;  // empty when amorphic
};

/// A partition is amorphic when every union of classes is again a PDS.  The
/// exhaustive mode walks all 2^c - 2 proper nonempty unions; sample mode
/// draws masks from a seeded deterministic generator.  Unions that come out
/// empty (possible only through empty classes) pass vacuously.
inline AmorphicReport verify_amorphic(const PartitionScheme& part, const AmorphicMode& mode,
                                      unsigned threads = 0) {
    std::size_t c = part.classes.size();
    require(c >= 2, "BadParameters", "amorphic check needs at least two classes");
    require(c <= 20, "TooManyClasses",
            "amorphic check supports at most 20 classes, got " + std::to_string(c));
    std::uint64_t full = (std::uint64_t{1} << c) - 1;

    AmorphicReport rep;
    rep.amorphic = true;
    auto check_mask = [&](std::uint64_t mask) {
        ElementSet u(part.group);
        std::string names;
        for (std::size_t i = 0; i < c; ++i)
            if (mask >> i & 1) {
                u |= part.classes[i];
                names += (names.empty() ? "" : ",") + part.labels[i];
            }
        ++rep.unions_checked;
        if (u.size() == 0) return;
        Certificate cert = verify_pds(u, threads);
        if (cert.kind != SetKind::PDS && rep.amorphic) {
            rep.amorphic = false;
            rep.first_failure = "union {" + names + "} certifies as " +
                                std::string(to_string(cert.kind)) + " (v=" +
                                std::to_string(cert.v) + ", k=" + std::to_string(cert.k) +
                                ", lambda=" + std::to_string(cert.lambda) +
                                ", mu=" + std::to_string(cert.mu) + ")";
        }
    };

    if (mode.all) {
        for (std::uint64_t mask = 1; mask < full; ++mask) check_mask(mask);
    } else {
        std::mt19937_64 rng(mode.seed);
        for (std::uint64_t s = 0; s < mode.samples; ++s)
            check_mask(1 + rng() % (full - 1));  // uniform-enough over [1, full-1]
    }
    return rep;
}

/// Structure constants p[i][j][k] of the partition extended by the identity
/// class C0 = {1}: the convolution of the indicators of Ci and Cj must be
/// constant on every class Ck, and p[i][j][k] is that constant.  A
/// non-constant convolution is reported as NotAScheme with a witness.
struct SchemeConstants {
    std::vector<std::uint64_t> class_sizes;  // including the identity class
    std::vector<std::vector<std::vector<std::int64_t>>> p;
};

inline SchemeConstants scheme_constants(const PartitionScheme& part, unsigned threads = 0) {
    ElementSet one(part.group);
    one.add(Group::identity);
    std::vector<ElementSet> cls;
    std::vector<std::string> names;
    cls.push_back(one);
    names.push_back("C0");
    for (std::size_t i = 0; i < part.classes.size(); ++i) {
        cls.push_back(part.classes[i]);
        names.push_back(part.labels[i]);
    }
    std::size_t n = cls.size();

    SchemeConstants out;
    out.class_sizes.reserve(n);
    for (const auto& s : cls) out.class_sizes.push_back(s.size());
    out.p.assign(n, std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n, 0)));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Census conv = convolution(cls[i], cls[j], threads);
            for (std::size_t k = 0; k < n; ++k) {
                bool have = false;
                std::int64_t val = 0;
                ElementId first = 0;
                cls[k].for_each([&](ElementId g) {
                    if (!have) {
                        val = conv[g];
                        first = g;
                        have = true;
                    } else if (conv[g] != val)
                        fail("NotAScheme",
                             "convolution of " + names[i] + " and " + names[j] +
                                 " is not constant on " + names[k] + ": element " +
                                 std::to_string(first) + " -> " + std::to_string(val) +
                                 ", element " + std::to_string(g) + " -> " +
                                 std::to_string(conv[g]));
                });
                out.p[i][j][k] = have ? val : 0;
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Census identities
// ---------------------------------------------------------------------------

inline void require_census_equal(const Census& got, const Census& want, const std::string& what) {
    require(got.size() == want.size(), "SizeMismatch", what + ": census length mismatch");
    for (std::size_t g = 0; g < got.size(); ++g)
        require(got[g] == want[g], "IdentityFails",
                what + " fails at element " + std::to_string(g) + ": got " +
                    std::to_string(got[g]) + ", expected " + std::to_string(want[g]));
}

struct MixedProductReport {
    std::int64_t at_identity = 0;
    std::int64_t on_i = 0;
    std::int64_t on_j = 0;
    std::int64_t elsewhere = 0;
};

/// The class-product identities of an amorphic pair.  For one inverse-closed
/// class P with certificate (k, lambda, mu):
///     P * P = k 1  +  lambda P  +  mu (G - 1 - P),
/// and for distinct classes Pi, Pj with fused union certificate (lambda, mu),
/// the symmetrised product
///     Pi * Pj + Pj * Pi = (lambda - lambda_i - mu_j) Pi
///                         + (lambda - mu_i - lambda_j) Pj
///                         + (mu - mu_i - mu_j) (G - 1 - Pi - Pj),
/// both checked bin-for-bin against the actual convolution census.  A
/// mismatch raises IdentityFails with the offending element.
inline MixedProductReport verify_mixed_product(const PartitionScheme& part, std::size_t i,
                                               std::size_t j, unsigned threads = 0) {
    require(i < part.classes.size() && j < part.classes.size(), "BadParameters",
            "class index out of range");
    const ElementSet& Pi = part.classes[i];
    const ElementSet& Pj = part.classes[j];
    const GroupPtr& G = part.group;

    MixedProductReport rep;
    Census want(G->order(), 0);
    if (i == j) {
        Certificate ci = verify_pds(Pi, threads);
        require(ci.kind == SetKind::PDS, "BadParameters",
                "class " + part.labels[i] + " is not a PDS");
        rep.at_identity = static_cast<std::int64_t>(ci.k);
        rep.on_i = rep.on_j = ci.lambda;
        rep.elsewhere = ci.mu;
        want[Group::identity] = rep.at_identity;
        for (ElementId g = 1; g < G->order(); ++g)
            want[g] = Pi.contains(g) ? rep.on_i : rep.elsewhere;
    } else {
        Certificate ci = verify_pds(Pi, threads);
        Certificate cj = verify_pds(Pj, threads);
        Certificate cu = verify_pds(Pi | Pj, threads);
        require(ci.kind == SetKind::PDS && cj.kind == SetKind::PDS && cu.kind == SetKind::PDS,
                "BadParameters", "classes and their union must all be PDSs");
        rep.on_i = cu.lambda - ci.lambda - cj.mu;
        rep.on_j = cu.lambda - ci.mu - cj.lambda;
        rep.elsewhere = cu.mu - ci.mu - cj.mu;
        rep.at_identity = 0;
        for (ElementId g = 1; g < G->order(); ++g) {
            if (Pi.contains(g))
                want[g] = rep.on_i;
            else if (Pj.contains(g))
                want[g] = rep.on_j;
            else
                want[g] = rep.elsewhere;
        }
    }
    Census got = convolution(Pi, Pj, threads);
    if (i != j) census_add(got, convolution(Pj, Pi, threads));
    std::string what = (i == j) ? "class product " + part.labels[i] + " * " + part.labels[j]
                                : "symmetrised class product " + part.labels[i] + " * " +
                                      part.labels[j] + " + " + part.labels[j] + " * " +
                                      part.labels[i];
    require_census_equal(got, want, what);
    return rep;
}

/// Square-sum identity for the degree-2 class pieces (order p^4 groups):
///     sum_j D_j * D_j + E * E
///       = (p^2 - p)(p + 1) 1 + (p^2 - 2p) P_i + (p^2 - p) (R - 1),
/// where P_i is the union of the pieces and R = <x^p, y^p>.
inline void verify_square_piece_identity(const GroupPtr& G, std::uint32_t p, std::uint32_t i,
                                         unsigned threads = 0) {
    ClassPieces pc = class_pieces(G, p, i);
    Census lhs(G->order(), 0);
    for (const ElementSet& d : pc.d) census_add(lhs, convolution(d, d, threads));
    census_add(lhs, convolution(pc.e, pc.e, threads));

    ElementSet cls(G);
    for (const ElementSet& d : pc.d) cls |= d;
    cls |= pc.e;
    std::int64_t p2 = std::int64_t{p} * p;
    Census rhs(G->order(), 0);
    rhs[Group::identity] = (p2 - p) * (p + 1);
    census_add(rhs, census_of_set(cls, p2 - 2 * p));
    ElementSet res_minus_one = pc.residue;
    res_minus_one.remove(Group::identity);
    census_add(rhs, census_of_set(res_minus_one, p2 - p));
    require_census_equal(lhs, rhs, "square piece identity (p=" + std::to_string(p) +
                                       ", i=" + std::to_string(i) + ")");
}

/// Cross-sum identity for the same pieces:
///     sum_{j != j'} D_j * D_j' + sum_j (D_j * E + E * D_j)
///       = (p^2 - p) (G - R),
/// i.e. constant p^2 - p off the subgroup R = <x^p, y^p> and zero on it.
inline void verify_cross_piece_identity(const GroupPtr& G, std::uint32_t p, std::uint32_t i,
                                        unsigned threads = 0) {
    ClassPieces pc = class_pieces(G, p, i);
    Census lhs(G->order(), 0);
    for (std::size_t a = 0; a < pc.d.size(); ++a)
        for (std::size_t b = 0; b < pc.d.size(); ++b)
            if (a != b) census_add(lhs, convolution(pc.d[a], pc.d[b], threads));
    for (const ElementSet& d : pc.d) {
        census_add(lhs, convolution(d, pc.e, threads));
        census_add(lhs, convolution(pc.e, d, threads));
    }

    std::int64_t p2 = std::int64_t{p} * p;
    Census rhs(G->order(), p2 - p);
    pc.residue.for_each([&](ElementId g) { rhs[g] = 0; });
    require_census_equal(lhs, rhs, "cross piece identity (p=" + std::to_string(p) +
                                       ", i=" + std::to_string(i) + ")");
}

}  // namespace pdsforge
