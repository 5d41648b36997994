#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdint>
#include <vector>

#include <pdsforge/census.hpp>
#include <pdsforge/certify.hpp>
#include <pdsforge/constructions.hpp>
#include <pdsforge/group_spec.hpp>

#include "test_util.hpp"

using namespace pdsforge;
using testutil::error_code_of;
using testutil::has_tag;
using testutil::params_of;

namespace {

std::vector<std::size_t> class_sizes(const PartitionScheme& part) {
    std::vector<std::size_t> out;
    for (const ElementSet& cl : part.classes) out.push_back(cl.size());
    return out;
}

}  // namespace

TEST_CASE("hyperbolic translation partition certifies Latin type", "[constructions]") {
    SchemeResult s = affine_g1(3, 2, +1);
    CHECK(s.group->order() == 81);
    CHECK_FALSE(s.group->is_abelian());
    CHECK(s.partition.labels == std::vector<std::string>{"D0", "D1", "D2"});
    CHECK(class_sizes(s.partition) == std::vector<std::size_t>{32, 24, 24});

    PartitionReport rep = verify_partition(s.partition);
    REQUIRE(rep.all_pds);
    CHECK(params_of(rep.class_certs[0]) == std::array<std::int64_t, 4>{81, 32, 13, 12});
    CHECK(has_tag(rep.class_certs[0], "Latin(9,4)"));
    for (int i : {1, 2}) {
        CHECK(params_of(rep.class_certs[i]) == std::array<std::int64_t, 4>{81, 24, 9, 6});
        CHECK(has_tag(rep.class_certs[i], "Latin(9,3)"));
    }
    auto A = std::dynamic_pointer_cast<const AffineGroup>(s.group);
    REQUIRE(A != nullptr);
    CHECK(A->anchor_label() == "e1+e2");
    CHECK(A->spec_string() == "affine-g1:3:2:+1");
}

TEST_CASE("elliptic translation partition certifies negative Latin type", "[constructions]") {
    SchemeResult s = affine_g1(3, 2, -1);
    CHECK(class_sizes(s.partition) == std::vector<std::size_t>{20, 30, 30});
    PartitionReport rep = verify_partition(s.partition);
    REQUIRE(rep.all_pds);
    CHECK(params_of(rep.class_certs[0]) == std::array<std::int64_t, 4>{81, 20, 1, 6});
    CHECK(has_tag(rep.class_certs[0], "NegLatin(9,2)"));
    for (int i : {1, 2}) {
        CHECK(params_of(rep.class_certs[i]) == std::array<std::int64_t, 4>{81, 30, 9, 12});
        CHECK(has_tag(rep.class_certs[i], "NegLatin(9,3)"));
    }
    // The e2 anchor is singular for this form; the family pins e4 instead.
    auto A = std::dynamic_pointer_cast<const AffineGroup>(s.group);
    CHECK(A->anchor_label() == "e4");
    CHECK(A->form().evaluate({0, 1, 0, 0}) == 0);
    CHECK(A->form().evaluate({0, 0, 0, 1}) != 0);
}

TEST_CASE("abelian translation variant keeps the class censuses", "[constructions]") {
    SchemeResult s = affine_abelian(3, 2, +1);
    CHECK(s.group->is_abelian());
    CHECK(class_sizes(s.partition) == std::vector<std::size_t>{32, 24, 24});
    PartitionReport rep = verify_partition(s.partition);
    REQUIRE(rep.all_pds);
    CHECK(params_of(rep.class_certs[0]) == std::array<std::int64_t, 4>{81, 32, 13, 12});
}

TEST_CASE("alpha functional is a homomorphism onto the field", "[constructions]") {
    for (AffineKind kind : {AffineKind::G1, AffineKind::G2}) {
        SchemeResult s = kind == AffineKind::G1 ? affine_g1(3, 2, +1) : affine_g2(3, 2, +1);
        auto A = std::dynamic_pointer_cast<const AffineGroup>(s.group);
        const FieldCtx& F = *A->field();
        for (ElementId a = 0; a < 81; ++a)
            for (ElementId b = 0; b < 81; ++b)
                CHECK(A->alpha_of(A->mul(a, b)) == F.add(A->alpha_of(a), A->alpha_of(b)));
    }
}

TEST_CASE("matrix family is an additive isometry family", "[constructions]") {
    for (int eps : {+1, -1}) {
        SchemeResult s = affine_g1(3, 2, eps);
        auto A = std::dynamic_pointer_cast<const AffineGroup>(s.group);
        const FieldCtx& F = *A->field();
        for (std::uint32_t a = 0; a < 3; ++a) {
            CHECK(A->form().is_isometry(A->matrix(a)));
            for (std::uint32_t b = 0; b < 3; ++b)
                CHECK(mat_mul(F, A->matrix(a), A->matrix(b)).a == A->matrix(F.add(a, b)).a);
        }
    }
}

TEST_CASE("centers and exponents separate the two twisted families", "[constructions]") {
    auto g1 = affine_g1(3, 2, +1);
    auto g2 = affine_g2(3, 2, +1);
    CHECK(center(g1.group).size() == 3);
    CHECK(center(g2.group).size() == 9);
    CHECK_FALSE(g1.group->is_abelian());
    CHECK_FALSE(g2.group->is_abelian());
    CHECK(exponent(*g1.group) == 9);
    CHECK(exponent(*g2.group) == 3);
}

TEST_CASE("second family needs m > 2 or the hyperbolic form", "[constructions]") {
    CHECK(error_code_of([] { affine_g2(3, 2, -1); }) == "BadParameters");
    SchemeResult s = affine_g2(3, 3, -1);  // m = 3 allows eps = -1
    CHECK(s.group->order() == 729);
    CHECK_FALSE(s.group->is_abelian());
    CHECK(verify_partition(s.partition).all_pds);
}

TEST_CASE("carrier and degree guards", "[constructions]") {
    CHECK(error_code_of([] { affine_g1(3, 1, +1); }) == "MTooSmall");
    CHECK(error_code_of([] { affine_g1(9, 4, +1); }) == "TooLarge");
    CHECK(error_code_of([] { affine_g1(8, 2, +1); }) == "BadParameters");
    CHECK(error_code_of([] { affine_g1(15, 2, +1); }) == "BadParameters");
    CHECK(error_code_of([] { affine_g1(3, 2, 0); }) == "BadEps");
}

TEST_CASE("extension field carrier works end to end", "[constructions]") {
    SchemeResult s = affine_g1(9, 2, +1);
    CHECK(s.group->order() == 6561);
    CHECK(s.group->spec_string() == "affine-g1:9:2:+1:mod=1,0,1");
    // Zero count of the hyperbolic form gives |D0| = 800 over GF(9).
    CHECK(class_sizes(s.partition) == std::vector<std::size_t>{800, 2880, 2880});
}

TEST_CASE("subspace refinement on the order-81 carrier", "[constructions]") {
    SchemeResult s = affine_scheme_q4(3);
    CHECK(s.partition.labels ==
          std::vector<std::string>{"D1", "D2", "Uinf", "U0", "U1", "U2"});
    CHECK(class_sizes(s.partition) == std::vector<std::size_t>{24, 24, 8, 8, 8, 8});
    // The four U classes are subgroups minus identity: closed once 1 is added.
    for (std::size_t i = 2; i < 6; ++i) {
        ElementSet H = s.partition.classes[i];
        H.add(Group::identity);
        H.for_each([&](ElementId a) {
            H.for_each([&](ElementId b) { CHECK(H.contains(s.group->mul(a, b))); });
        });
    }
    PartitionReport rep = verify_partition(s.partition);
    REQUIRE(rep.all_pds);
    CHECK(params_of(rep.class_certs[0]) == std::array<std::int64_t, 4>{81, 24, 9, 6});
    CHECK(params_of(rep.class_certs[2]) == std::array<std::int64_t, 4>{81, 8, 7, 0});
    CHECK(has_tag(rep.class_certs[2], "TrivialSubgroup"));
}

TEST_CASE("half-plus-one fusion has conference parameters", "[constructions]") {
    SetResult d = affine_paley_q4(3);
    CHECK(d.set.size() == 40);
    Certificate c = verify_pds(d.set);
    CHECK(c.kind == SetKind::PDS);
    CHECK(params_of(c) == std::array<std::int64_t, 4>{81, 40, 19, 20});
    CHECK(has_tag(c, "Latin(9,5)"));
    CHECK(has_tag(c, "NegLatin(9,4)"));
    CHECK(has_tag(c, "PaleyType"));
}

TEST_CASE("power-of-p scheme in twisted and split forms", "[constructions]") {
    for (bool twisted : {true, false}) {
        SchemeResult s = semidirect_scheme(3, 2, twisted);
        CHECK(s.partition.labels ==
              std::vector<std::string>{"P1", "P2", "S0", "S1", "S2", "Sinf"});
        CHECK(class_sizes(s.partition) == std::vector<std::size_t>{24, 24, 8, 8, 8, 8});
        CHECK(s.partition.family ==
              std::string("semidirect-scheme:3:2:") + (twisted ? "twisted" : "abelian"));
        PartitionReport rep = verify_partition(s.partition);
        REQUIRE(rep.all_pds);
        for (int i : {0, 1})
            CHECK(params_of(rep.class_certs[i]) == std::array<std::int64_t, 4>{81, 24, 9, 6});
        for (int i : {2, 3, 4, 5}) {
            CHECK(params_of(rep.class_certs[i]) == std::array<std::int64_t, 4>{81, 8, 7, 0});
            CHECK(has_tag(rep.class_certs[i], "TrivialSubgroup"));
        }
    }
}

TEST_CASE("the two group laws split the same partition formulas", "[constructions]") {
    // g = x y^4: its square lands on different elements in the two laws, yet
    // both squares stay inside the first degree class.
    SchemeResult tw = semidirect_scheme(3, 2, true);
    SchemeResult ab = semidirect_scheme(3, 2, false);
    ElementId g = detail::xy_id(9, 1, 4);
    ElementId sq_tw = tw.group->mul(g, g);
    ElementId sq_ab = ab.group->mul(g, g);
    CHECK(sq_tw == detail::xy_id(9, 8, 8));
    CHECK(sq_ab == detail::xy_id(9, 2, 8));
    CHECK(sq_tw != sq_ab);
    CHECK(tw.partition.classes[0].contains(sq_tw));
    CHECK(ab.partition.classes[0].contains(sq_ab));
    // Same labels and class sizes either way.
    CHECK(tw.partition.labels == ab.partition.labels);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(tw.partition.classes[i].size() == ab.partition.classes[i].size());
    // <x> - 1 and <y> - 1 do not feel the twist, so S0 and Sinf coincide as
    // index sets; the remaining classes are genuinely law-dependent.
    CHECK(tw.partition.classes[2].ids() == ab.partition.classes[2].ids());
    CHECK(tw.partition.classes[5].ids() == ab.partition.classes[5].ids());
    for (std::size_t i : {0u, 1u, 3u, 4u})
        CHECK(tw.partition.classes[i].ids() != ab.partition.classes[i].ids());
}

TEST_CASE("degree classes at p = 5", "[constructions]") {
    SchemeResult s = semidirect_scheme(5, 2, true);
    CHECK(class_sizes(s.partition) ==
          std::vector<std::size_t>{120, 120, 120, 120, 24, 24, 24, 24, 24, 24});
    Certificate c = verify_pds(s.partition.classes[0]);
    CHECK(params_of(c) == std::array<std::int64_t, 4>{625, 120, 35, 20});
    CHECK(c.kind == SetKind::PDS);
}

TEST_CASE("Paley fusion of the power-of-p scheme", "[constructions]") {
    SetResult d32 = semidirect_paley(3, 2, true);
    Certificate c32 = verify_pds(d32.set);
    CHECK(params_of(c32) == std::array<std::int64_t, 4>{81, 40, 19, 20});
    CHECK(has_tag(c32, "PaleyType"));
    // D = P1 u S0 u S1 at p = 3.
    SchemeResult s = semidirect_scheme(3, 2, true);
    ElementSet want = s.partition.classes[0] | s.partition.classes[2] | s.partition.classes[3];
    CHECK(d32.set == want);

    SetResult d52 = semidirect_paley(5, 2, true);
    CHECK(params_of(verify_pds(d52.set)) == std::array<std::int64_t, 4>{625, 312, 155, 156});
}

TEST_CASE("degree-class pieces partition their class", "[constructions]") {
    for (bool twisted : {true, false}) {
        SchemeResult s = semidirect_scheme(3, 2, twisted);
        for (std::uint32_t i : {1u, 2u}) {
            ClassPieces pc = class_pieces(s.group, 3, i);
            REQUIRE(pc.d.size() == 3);
            for (const ElementSet& d : pc.d) CHECK(d.size() == 6);
            CHECK(pc.e.size() == 6);
            CHECK(pc.residue.size() == 9);
            ElementSet u(s.group);
            for (const ElementSet& d : pc.d) u |= d;
            u |= pc.e;
            CHECK(u == s.partition.classes[i - 1]);
        }
    }
    CHECK(error_code_of([] {
              class_pieces(semidirect_group(3, 3), 3, 1);
          }) == "BadParameters");
}

TEST_CASE("square sets in prime and prime-power fields", "[constructions]") {
    PaleyFieldResult p5 = paley_field_set(5);
    CHECK(p5.is_pds);
    CHECK(p5.set.ids() == std::vector<ElementId>{1, 4});
    PaleyFieldResult p7 = paley_field_set(7);
    CHECK_FALSE(p7.is_pds);
    CHECK(p7.set.ids() == std::vector<ElementId>{1, 2, 4});
    PaleyFieldResult p9 = paley_field_set(9);
    CHECK(p9.group->spec_string() == "abelian:3,3");
    CHECK(p9.set.size() == 4);
    CHECK(params_of(verify_pds(p9.set)) == std::array<std::int64_t, 4>{9, 4, 1, 2});
    CHECK(error_code_of([] { paley_field_set(8); }) == "BadParameters");
    CHECK(error_code_of([] { paley_field_set(15); }) == "BadParameters");
    CHECK(error_code_of([] { paley_field_set(1); }) == "BadParameters");
}

TEST_CASE("toy partitions of the order-9 grid", "[constructions]") {
    Latin3Result r = latin3_partitions();
    CHECK(r.latin.partition.family == "latin3:L");
    CHECK(r.neg_latin.partition.family == "latin3:C");
    CHECK(r.latin.partition.classes[0].ids() == std::vector<ElementId>{3, 5, 6, 7});
    CHECK(r.latin.partition.classes[1].ids() == std::vector<ElementId>{1, 2});
    CHECK(r.latin.partition.classes[2].ids() == std::vector<ElementId>{4, 8});
    CHECK(r.neg_latin.partition.classes[0].empty());
    CHECK(r.neg_latin.partition.classes[1].ids() == std::vector<ElementId>{1, 2, 4, 8});
    CHECK(r.neg_latin.partition.classes[2].ids() == std::vector<ElementId>{3, 5, 6, 7});
}

TEST_CASE("partition exactness is enforced", "[constructions]") {
    GroupPtr G = abelian_group({7});
    auto scheme = [&](std::vector<std::vector<ElementId>> cls) {
        PartitionScheme p;
        p.group = G;
        p.family = "test";
        for (auto& ids : cls) {
            p.classes.push_back(ElementSet::of(G, ids));
            p.labels.push_back("C");
        }
        require_exact_partition(p);
    };
    CHECK(error_code_of([&] { scheme({{1, 2, 3}, {3, 4, 5, 6}}); }) == "PartitionFailure");
    CHECK(error_code_of([&] { scheme({{0, 1, 2, 3}, {4, 5, 6}}); }) == "PartitionFailure");
    CHECK(error_code_of([&] { scheme({{1, 2, 3}, {4, 5}}); }) == "PartitionFailure");
    CHECK(error_code_of([&] { scheme({{1, 2, 3}, {4, 5, 6}}); }) == "");
}

TEST_CASE("group descriptors parse and round-trip", "[constructions]") {
    for (const std::string& spec :
         {std::string("abelian:9,9"), std::string("semidirect:3:2"),
          std::string("affine-g1:3:2:+1"), std::string("affine-g2:3:2:+1"),
          std::string("affine-abelian:3:2:-1"),
          std::string("product:(abelian:9,9)x(semidirect:3:2)")}) {
        GroupPtr G = parse_group_spec(spec);
        CHECK(G->spec_string() == spec);
    }
    CHECK(parse_group_spec("abelian:3,3,3,3")->order() == 81);
    CHECK(error_code_of([] { parse_group_spec("nonsense:1"); }) == "BadParameters");
    CHECK(error_code_of([] { parse_group_spec("product:(abelian:9,9"); }) == "BadParameters");
    CHECK(error_code_of([] { parse_group_spec("affine-g1:3:2"); }) == "BadParameters");
    CHECK(error_code_of([] { parse_group_spec("affine-g1:3:2:+2"); }) == "BadEps");
    CHECK(error_code_of([] { parse_group_spec("semidirect:3"); }) == "BadParameters");
}

TEST_CASE("named set and partition descriptors", "[constructions]") {
    CHECK(build_named_set("paley-field:13").set.size() == 6);
    CHECK(build_named_set("affine-paley-q4:3").set.size() == 40);
    CHECK(build_named_set("semidirect-paley:3:2:twisted").set.size() == 40);
    CHECK(build_named_set("semidirect-paley:3:2:abelian").group->is_abelian());
    CHECK(build_named_partition("affine-g1:3:2:+1").partition.classes.size() == 3);
    CHECK(build_named_partition("affine-scheme-q4:3").partition.classes.size() == 6);
    CHECK(build_named_partition("semidirect-scheme:3:2:twisted").partition.classes.size() == 6);
    CHECK(build_named_partition("latin3:L").partition.family == "latin3:L");
    CHECK(build_named_partition("latin3:C").partition.family == "latin3:C");
    CHECK(error_code_of([] { build_named_set("unknown:3"); }) == "BadParameters");
    CHECK(error_code_of([] { build_named_partition("paley-field:5"); }) == "BadParameters");
    CHECK(error_code_of([] { build_named_set("semidirect-paley:3:2:weird"); }) ==
          "BadParameters");
}
