#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "certify.hpp"
#include "common.hpp"
#include "constructions.hpp"
#include "group.hpp"

namespace pdsforge {

namespace detail {

inline std::shared_ptr<const ProductGroup> as_product(const GroupPtr& g) {
    auto p = std::dynamic_pointer_cast<const ProductGroup>(g);
    require(p != nullptr, "HandleMismatch", "expected a set in a direct product group");
    return p;
}

inline void add_cross(ElementSet& out, const ProductGroup& P, const ElementSet& A,
                      const ElementSet& B) {
    A.for_each([&](ElementId a) { B.for_each([&](ElementId b) { out.add(P.pair(a, b)); }); });
}

/// G minus D minus the identity — the "other half" in the product formulas.
inline ElementSet other_half(const ElementSet& D) {
    ElementSet c = D.complement();
    c.remove(Group::identity);
    return c;
}

inline Certificate require_paley_type(const SetResult& in, unsigned threads) {
    require(2 * std::uint64_t{in.set.size()} == in.group->order() - 1, "SizeMismatch",
            "Paley-type factor must have size (v-1)/2, got " + std::to_string(in.set.size()) +
                " in a group of order " + std::to_string(in.group->order()));
    Certificate cert = verify_pds(in.set, threads);
    bool tagged = false;
    for (const std::string& t : cert.type_tags)
        if (t == "PaleyType") tagged = true;
    require(cert.kind == SetKind::PDS && tagged, "NotPaleyType",
            "factor of order " + std::to_string(cert.v) +
                " does not certify as a Paley-type PDS (kind " + to_string(cert.kind) + ")");
    return cert;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Paley-type product
// ---------------------------------------------------------------------------

/// Product of two Paley-type PDSs living in groups of one common order v
/// (necessarily 1 mod 4): in G x G',
///     Dhat = (G - 1) x {1'}  u  D x D'  u  Dc x D'c,
/// where Dc = G - D - 1.  The result is again Paley-type, of order v^2.
/// Unequal factor orders raise SizeMismatch (the assembled set could not
/// have Paley cardinality otherwise); both factors are then certified by
/// census, and a factor failing it raises NotPaleyType.
inline SetResult paley_product(const SetResult& left, const SetResult& right,
                               unsigned threads = 0) {
    require(left.group->order() == right.group->order(), "SizeMismatch",
            "Paley product factors must have equal group orders, got " +
                std::to_string(left.group->order()) + " and " +
                std::to_string(right.group->order()));
    detail::require_paley_type(left, threads);
    detail::require_paley_type(right, threads);

    auto P = std::make_shared<ProductGroup>(left.group, right.group);
    ElementSet D(std::static_pointer_cast<const Group>(P));
    ElementSet lc = detail::other_half(left.set);
    ElementSet rc = detail::other_half(right.set);

    ElementSet one_r(right.group);
    one_r.add(Group::identity);
    ElementSet g_minus_one(left.group);
    for (ElementId g = 1; g < left.group->order(); ++g) g_minus_one.add(g);

    detail::add_cross(D, *P, g_minus_one, one_r);
    detail::add_cross(D, *P, left.set, right.set);
    detail::add_cross(D, *P, lc, rc);
    return {P, std::move(D)};
}

// ---------------------------------------------------------------------------
// Twin-order difference set product
// ---------------------------------------------------------------------------

/// Product of a Paley-type PDS (order v = 1 mod 4) with a skew-Hadamard
/// difference set (order v' = v +- 2): in G x G',
///     v' = v + 2:  Dhat = G x {1'}   u  D x D'  u  Dc x D'^(-1)
///     v' = v - 2:  Dhat = {1} x G'   u  D x D'  u  Dc x D'^(-1),
/// a difference set of order v v' with Paley-Hadamard parameters.  The left
/// factor is certified by census (NotPaleyType), the right factor must
/// satisfy the skew partition {1'} u D' u D'^(-1) = G' (NotSkewHadamard),
/// and the orders must differ by exactly 2 (SizeMismatch).
inline SetResult stanton_sprott_product(const SetResult& left, const SetResult& right,
                                        unsigned threads = 0) {
    std::uint64_t vl = left.group->order(), vr = right.group->order();
    require(vl + 2 == vr || vr + 2 == vl, "SizeMismatch",
            "factor orders must differ by exactly 2, got " + std::to_string(vl) + " and " +
                std::to_string(vr));
    detail::require_paley_type(left, threads);
    require(2 * std::uint64_t{right.set.size()} + 1 == vr, "SizeMismatch",
            "skew factor must have size (v-1)/2");
    require(is_skew_hadamard(right.set), "NotSkewHadamard",
            "right factor is not a skew Hadamard difference set");

    auto P = std::make_shared<ProductGroup>(left.group, right.group);
    ElementSet D(std::static_pointer_cast<const Group>(P));
    ElementSet lc = detail::other_half(left.set);
    ElementSet rinv = right.set.inverse_image();

    if (vr == vl + 2) {
        ElementSet one_r(right.group);
        one_r.add(Group::identity);
        detail::add_cross(D, *P, ElementSet::full(left.group), one_r);
    } else {
        ElementSet one_l(left.group);
        one_l.add(Group::identity);
        detail::add_cross(D, *P, one_l, ElementSet::full(right.group));
    }
    detail::add_cross(D, *P, left.set, right.set);
    detail::add_cross(D, *P, lc, rinv);
    return {P, std::move(D)};
}

// ---------------------------------------------------------------------------
// Fiber recipes
// ---------------------------------------------------------------------------

/// A product set described scheme-relatively: for each right-factor element
/// x', the fiber {g : (g, x') in D} as a union of classes of the left
/// partition augmented by the identity class (index 0 = {1}, index i = class
/// i-1).  The signature pins the classwise census parameters
/// (v, k_i, lambda_i, mu_i) the recipe was extracted against, identity class
/// first as (v, 1, 0, 0).
struct Recipe {
    std::vector<std::array<std::int64_t, 4>> signature;
    std::vector<std::vector<std::uint32_t>> fibers;
};

namespace detail {

inline std::vector<std::array<std::int64_t, 4>> partition_signature(const PartitionScheme& part,
                                                                    unsigned threads) {
    std::vector<std::array<std::int64_t, 4>> sig;
    std::int64_t v = static_cast<std::int64_t>(part.group->order());
    sig.push_back({v, 1, 0, 0});
    for (const ElementSet& cl : part.classes) {
        Certificate c = verify_pds(cl, threads);
        sig.push_back({v, static_cast<std::int64_t>(c.k), c.lambda, c.mu});
    }
    return sig;
}

}  // namespace detail

/// Express a set living in (left group) x (right group) as a recipe over a
/// partition of the left group.  Every fiber must be an exact union of
/// augmented classes; a fiber that meets a class without containing it
/// raises FiberNotClassUnion with the offending right element and class.
inline Recipe recipe_extract(const ElementSet& D, const PartitionScheme& part,
                             unsigned threads = 0) {
    auto P = detail::as_product(D.owner());
    require(P->left()->spec_string() == part.group->spec_string(), "HandleMismatch",
            "partition group does not match the left factor of the product");

    std::size_t nc = part.classes.size() + 1;
    std::vector<std::uint32_t> class_of(P->left()->order(), 0);
    std::vector<std::uint64_t> class_size(nc, 0);
    class_size[0] = 1;
    for (std::size_t i = 0; i < part.classes.size(); ++i) {
        part.classes[i].for_each(
            [&](ElementId g) { class_of[g] = static_cast<std::uint32_t>(i + 1); });
        class_size[i + 1] = part.classes[i].size();
    }

    Recipe r;
    r.signature = detail::partition_signature(part, threads);
    r.fibers.resize(P->right()->order());

    std::vector<std::uint64_t> hit(nc, 0);
    for (ElementId x = 0; x < P->right()->order(); ++x) {
        std::fill(hit.begin(), hit.end(), 0);
        for (ElementId g = 0; g < P->left()->order(); ++g)
            if (D.contains(P->pair(g, x))) ++hit[class_of[g]];
        for (std::uint32_t c = 0; c < nc; ++c) {
            if (hit[c] == 0) continue;
            require(hit[c] == class_size[c], "FiberNotClassUnion",
                    "fiber over right element " + std::to_string(x) + " meets class " +
                        std::to_string(c) + " in " + std::to_string(hit[c]) + " of " +
                        std::to_string(class_size[c]) + " elements");
            r.fibers[x].push_back(c);
        }
    }
    return r;
}

/// Rebuild a recipe over a (possibly different) partition with the same
/// signature and a right group of matching order.  extract followed by
/// instantiate over the same partition and right group is the identity.
inline SetResult recipe_instantiate(const Recipe& recipe, const PartitionScheme& part,
                                    const GroupPtr& right, unsigned threads = 0) {
    auto sig = detail::partition_signature(part, threads);
    require(sig.size() == recipe.signature.size(), "SignatureMismatch",
            "recipe expects " + std::to_string(recipe.signature.size()) +
                " classes (with identity), partition has " + std::to_string(sig.size()));
    for (std::size_t i = 0; i < sig.size(); ++i)
        for (std::size_t f = 0; f < 4; ++f)
            require(sig[i][f] == recipe.signature[i][f], "SignatureMismatch",
                    "class " + std::to_string(i) + " signature differs: partition gives (" +
                        std::to_string(sig[i][0]) + "," + std::to_string(sig[i][1]) + "," +
                        std::to_string(sig[i][2]) + "," + std::to_string(sig[i][3]) +
                        "), recipe expects (" + std::to_string(recipe.signature[i][0]) + "," +
                        std::to_string(recipe.signature[i][1]) + "," +
                        std::to_string(recipe.signature[i][2]) + "," +
                        std::to_string(recipe.signature[i][3]) + ")");
    require(recipe.fibers.size() == right->order(), "SizeMismatch",
            "recipe has " + std::to_string(recipe.fibers.size()) +
                " fibers, right group has order " + std::to_string(right->order()));

    auto P = std::make_shared<ProductGroup>(part.group, right);
    ElementSet D(std::static_pointer_cast<const Group>(P));
    ElementSet one(part.group);
    one.add(Group::identity);
    for (ElementId x = 0; x < right->order(); ++x) {
        ElementSet rx(right);
        rx.add(x);
        for (std::uint32_t c : recipe.fibers[x]) {
            require(c < part.classes.size() + 1, "SignatureMismatch",
                    "recipe references class index " + std::to_string(c) + " out of range");
            detail::add_cross(D, *P, c == 0 ? one : part.classes[c - 1], rx);
        }
    }
    return {P, std::move(D)};
}

// ---------------------------------------------------------------------------
// Three-class terrace combination
// ---------------------------------------------------------------------------

/// Combination mode for two 3-class partitions: each slot is 'L' (every
/// nonempty class certifies with a Latin tag) or 'C' (negative Latin tag).
/// LL and CC produce a Latin-typed 3-class partition of the product, LC and
/// CL a negative-Latin-typed one.
inline void require_triple_typed(const PartitionScheme& part, char slot, const char* side,
                                 unsigned threads) {
    require(part.classes.size() == 3, "BadParameters",
            std::string(side) + " input must have exactly 3 classes");
    require(slot == 'L' || slot == 'C', "BadParameters", "mode letters must be L or C");
    for (std::size_t i = 0; i < 3; ++i) {
        if (part.classes[i].empty()) continue;
        Certificate c = verify_pds(part.classes[i], threads);
        const std::string want = (slot == 'L') ? "Latin(" : "NegLatin(";
        bool tagged = false;
        for (const std::string& t : c.type_tags)
            if (t.rfind(want, 0) == 0) tagged = true;
        require(c.kind == SetKind::PDS && tagged, "SignatureMismatch",
                std::string(side) + " class " + part.labels[i] + " is not a " +
                    (slot == 'L' ? "Latin" : "negative-Latin") + "-type PDS");
    }
}

/// Terrace combination of two 3-class partitions (A0, A1, A2) of G and
/// (B0, B1, B2) of G', with A0+ = A0 u {1} and B0+ = B0 u {1'}:
///     C0 = A0+ x B0+  u  A1 x B1   u  A2 x B2   minus {(1,1')}
///     C1 = A0+ x B1   u  A1 x B2   u  A2 x B0+
///     C2 = A0+ x B2   u  A1 x B0+  u  A2 x B1
/// The same pattern serves every mode; the mode ("LL", "LC", "CL", "CC")
/// gates which input types are accepted and which output family is expected.
inline SchemeResult combine3(const PartitionScheme& A, const PartitionScheme& B,
                             const std::string& mode, unsigned threads = 0) {
    require(mode.size() == 2, "BadParameters", "mode must be two letters from {L, C}");
    require_triple_typed(A, mode[0], "left", threads);
    require_triple_typed(B, mode[1], "right", threads);

    auto P = std::make_shared<ProductGroup>(A.group, B.group);
    GroupPtr Pg = std::static_pointer_cast<const Group>(P);
    ElementSet A0p = A.classes[0], B0p = B.classes[0];
    A0p.add(Group::identity);
    B0p.add(Group::identity);
    const ElementSet* as[3] = {&A0p, &A.classes[1], &A.classes[2]};
    const ElementSet* bs[3] = {&B0p, &B.classes[1], &B.classes[2]};

    PartitionScheme out;
    out.group = Pg;
    out.family = "combine3:" + mode + ":(" + A.family + ")x(" + B.family + ")";
    out.labels = {"C0", "C1", "C2"};
    for (std::uint32_t c = 0; c < 3; ++c) {
        ElementSet cl(Pg);
        for (std::uint32_t i = 0; i < 3; ++i) detail::add_cross(cl, *P, *as[i], *bs[(i + c) % 3]);
        if (c == 0) cl.remove(Group::identity);  // (1, 1') sits in A0+ x B0+
        out.classes.push_back(std::move(cl));
    }
    require_exact_partition(out);
    return {Pg, std::move(out)};
}

}  // namespace pdsforge
