#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <pdsforge/census.hpp>
#include <pdsforge/certify.hpp>
#include <pdsforge/constructions.hpp>

#include "test_util.hpp"

using namespace pdsforge;
using testutil::error_code_of;
using testutil::has_tag;
using testutil::params_of;

namespace {

/// Independent reference census: literal double loop over ordered pairs of
/// distinct set elements, no diagonal trick, no threading.
Census naive_census(const ElementSet& S) {
    const GroupPtr& G = S.owner();
    Census c(G->order(), 0);
    std::vector<ElementId> ids = S.ids();
    for (ElementId a : ids)
        for (ElementId b : ids)
            if (a != b) ++c[G->mul(a, G->inverse(b))];
    return c;
}

std::int64_t census_total(const Census& c) {
    return std::accumulate(c.begin(), c.end(), std::int64_t{0});
}

ElementSet random_subset(const GroupPtr& G, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ElementSet S(G);
    while (S.size() < n) S.add(static_cast<ElementId>(rng() % G->order()));
    return S;
}

}  // namespace

TEST_CASE("difference census agrees with the literal pair loop", "[algebra]") {
    PaleyFieldResult p13 = paley_field_set(13);
    CHECK(difference_census(p13.set) == naive_census(p13.set));

    SchemeResult aff = affine_g1(3, 2, +1);
    for (const ElementSet& cl : aff.partition.classes)
        CHECK(difference_census(cl) == naive_census(cl));

    GroupPtr G = semidirect_group(5, 2);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        ElementSet S = random_subset(G, 10, seed);
        CHECK(difference_census(S) == naive_census(S));
    }
}

TEST_CASE("census totals and the empty identity bin", "[algebra]") {
    SetResult d = affine_paley_q4(3);
    Census c = difference_census(d.set);
    std::int64_t k = static_cast<std::int64_t>(d.set.size());
    CHECK(census_total(c) == k * (k - 1));
    // a * b^{-1} = 1 forces a = b, which the distinct-pair convention excludes
    CHECK(c[Group::identity] == 0);
}

TEST_CASE("convolution totals and singleton translation", "[algebra]") {
    GroupPtr G = semidirect_group(3, 2);
    ElementSet A = random_subset(G, 7, 11);
    ElementSet B = random_subset(G, 5, 12);
    Census c = convolution(A, B);
    CHECK(census_total(c) == 35);

    ElementSet single(G);
    ElementId g = 17;
    single.add(g);
    Census t = convolution(A, single);
    Census expect(G->order(), 0);
    A.for_each([&](ElementId a) { ++expect[G->mul(a, g)]; });
    CHECK(t == expect);

    // S * S^{(-1)} is the difference census plus the |S| diagonal at 1.
    Census prod = convolution(A, A.inverse_image());
    Census diff = difference_census(A);
    diff[Group::identity] += static_cast<std::int64_t>(A.size());
    CHECK(prod == diff);
}

TEST_CASE("census results are independent of the thread count", "[algebra]") {
    SetResult d = semidirect_paley(3, 2, true);
    Census base = difference_census(d.set, 1);
    std::string sum = census_checksum(base);
    CHECK(sum.size() == 64);
    for (unsigned t : {2u, 3u, 5u}) {
        Census c = difference_census(d.set, t);
        CHECK(c == base);
        CHECK(census_checksum(c) == sum);
    }
    ElementSet other = d.set.inverse_image();
    Census conv1 = convolution(d.set, other, 1);
    for (unsigned t : {2u, 4u}) CHECK(convolution(d.set, other, t) == conv1);
}

TEST_CASE("square-set certificates across small fields", "[algebra]") {
    Certificate p5 = verify_pds(paley_field_set(5).set);
    CHECK(p5.kind == SetKind::PDS);
    CHECK(params_of(p5) == std::array<std::int64_t, 4>{5, 2, 0, 1});
    CHECK(p5.type_tags == std::vector<std::string>{"PaleyType"});

    Certificate p13 = verify_pds(paley_field_set(13).set);
    CHECK(params_of(p13) == std::array<std::int64_t, 4>{13, 6, 2, 3});
    CHECK(p13.type_tags == std::vector<std::string>{"PaleyType"});

    // Conference parameters at square order satisfy all three equations.
    Certificate p9 = verify_pds(paley_field_set(9).set);
    CHECK(params_of(p9) == std::array<std::int64_t, 4>{9, 4, 1, 2});
    CHECK(p9.type_tags ==
          std::vector<std::string>{"Latin(3,2)", "NegLatin(3,1)", "PaleyType"});

    // q = 3 mod 4: squares are not inverse-closed and the census is flat.
    Certificate p7 = verify_pds(paley_field_set(7).set);
    CHECK(p7.kind == SetKind::DS);
    CHECK_FALSE(p7.regular);
    CHECK(params_of(p7) == std::array<std::int64_t, 4>{7, 3, 1, 1});
    CHECK(p7.type_tags == std::vector<std::string>{"PaleyHadamard"});
}

TEST_CASE("degenerate sets classify exactly", "[algebra]") {
    GroupPtr G9 = abelian_group({3, 3});

    ElementSet all_but_one(G9);
    for (ElementId g = 1; g < 9; ++g) all_but_one.add(g);
    Certificate c1 = verify_pds(all_but_one);
    CHECK(c1.kind == SetKind::PDS);
    CHECK(params_of(c1) == std::array<std::int64_t, 4>{9, 8, 7, 0});
    CHECK(c1.type_tags == std::vector<std::string>{"TrivialSubgroup"});

    ElementSet just_one(G9);
    just_one.add(Group::identity);
    Certificate c2 = verify_pds(just_one);
    CHECK(c2.kind == SetKind::DS);
    CHECK_FALSE(c2.regular);
    CHECK(params_of(c2) == std::array<std::int64_t, 4>{9, 1, 0, 0});
    CHECK(c2.type_tags.empty());

    ElementSet full(G9);
    for (ElementId g = 0; g < 9; ++g) full.add(g);
    CHECK(verify_pds(full).kind == SetKind::NotPDS);
    CHECK(verify_pds(ElementSet(G9)).kind == SetKind::NotPDS);

    // A subgroup of order 9 minus the identity, inside an order-81 carrier.
    GroupPtr G81 = semidirect_group(3, 2);
    ElementSet sub = cyclic_subgroup(G81, detail::xy_id(9, 1, 0));
    sub.remove(Group::identity);
    Certificate c3 = verify_pds(sub);
    CHECK(params_of(c3) == std::array<std::int64_t, 4>{81, 8, 7, 0});
    CHECK(c3.type_tags == std::vector<std::string>{"Latin(9,1)", "TrivialSubgroup"});
}

TEST_CASE("two-valued census without regularity is flagged", "[algebra]") {
    GroupPtr Z4 = abelian_group({4});
    ElementSet S = ElementSet::of(Z4, {0, 2});
    Certificate c = verify_pds(S);
    CHECK(c.kind == SetKind::NotRegular);
    CHECK_FALSE(c.regular);
    CHECK(params_of(c) == std::array<std::int64_t, 4>{4, 2, 2, 0});
    CHECK(c.type_tags.empty());
}

TEST_CASE("perturbing one element breaks the certificate", "[algebra]") {
    SchemeResult s = affine_g1(3, 2, +1);
    ElementSet D = s.partition.classes[0];
    ElementId out = D.ids().front();
    ElementId in = s.partition.classes[1].ids().front();
    D.remove(out);
    D.add(in);
    CHECK(verify_pds(D).kind == SetKind::NotPDS);
}

TEST_CASE("certificates satisfy the global counting identity", "[algebra]") {
    auto check_counts = [](const Certificate& c) {
        std::int64_t v = static_cast<std::int64_t>(c.v);
        std::int64_t k = static_cast<std::int64_t>(c.k);
        CHECK(k * (k - 1) == c.lambda * k + c.mu * (v - k - 1));
    };
    check_counts(verify_pds(paley_field_set(9).set));
    check_counts(verify_pds(paley_field_set(13).set));
    check_counts(verify_pds(affine_paley_q4(3).set));
    for (const Certificate& c : verify_partition(semidirect_scheme(3, 2, true).partition).class_certs)
        check_counts(c);
}

TEST_CASE("skew decomposition predicate", "[algebra]") {
    PaleyFieldResult p11 = paley_field_set(11);
    CHECK(is_skew_hadamard(p11.set));
    PaleyFieldResult p13 = paley_field_set(13);
    CHECK_FALSE(is_skew_hadamard(p13.set));  // inverse-closed, so never skew

    GroupPtr Z7 = abelian_group({7});
    CHECK(is_skew_hadamard(ElementSet::of(Z7, {1, 2, 4})));
    CHECK_FALSE(is_skew_hadamard(ElementSet::of(Z7, {1, 2, 5})));  // 5 = -2
    CHECK_FALSE(is_skew_hadamard(ElementSet::of(Z7, {0, 1, 2})));  // identity inside
    CHECK_FALSE(is_skew_hadamard(ElementSet::of(Z7, {1, 2})));     // wrong size
}

TEST_CASE("exhaustive amorphic sweep over the toy partitions", "[algebra]") {
    Latin3Result r = latin3_partitions();
    AmorphicMode all;
    AmorphicReport L = verify_amorphic(r.latin.partition, all);
    CHECK(L.amorphic);
    CHECK(L.unions_checked == 6);
    CHECK(L.first_failure.empty());
    AmorphicReport C = verify_amorphic(r.neg_latin.partition, all);
    CHECK(C.amorphic);
    CHECK(C.unions_checked == 6);
}

TEST_CASE("amorphic failure carries a witness", "[algebra]") {
    GroupPtr Z7 = abelian_group({7});
    PartitionScheme part;
    part.group = Z7;
    part.family = "test";
    part.classes = {ElementSet::of(Z7, {1, 2, 4}), ElementSet::of(Z7, {3, 5, 6})};
    part.labels = {"Q", "N"};
    AmorphicMode all;
    AmorphicReport rep = verify_amorphic(part, all);
    CHECK_FALSE(rep.amorphic);
    CHECK(rep.unions_checked == 2);
    CHECK(rep.first_failure.find("certifies as DS") != std::string::npos);
    CHECK(rep.first_failure.find("{Q}") != std::string::npos);
}

TEST_CASE("sampled amorphic mode is seed-deterministic", "[algebra]") {
    SchemeResult s = semidirect_scheme(3, 2, true);
    AmorphicMode mode;
    mode.all = false;
    mode.samples = 12;
    mode.seed = 42;
    AmorphicReport a = verify_amorphic(s.partition, mode);
    AmorphicReport b = verify_amorphic(s.partition, mode);
    CHECK(a.amorphic);
    CHECK(a.unions_checked == 12);
    CHECK(a.amorphic == b.amorphic);
    CHECK(a.unions_checked == b.unions_checked);
    CHECK(a.first_failure == b.first_failure);
}

TEST_CASE("amorphic guard rails", "[algebra]") {
    GroupPtr Z22 = abelian_group({22});
    PartitionScheme many;
    many.group = Z22;
    many.family = "test";
    for (ElementId g = 1; g < 22; ++g) {
        many.classes.push_back(ElementSet::of(Z22, {g}));
        many.labels.push_back("S" + std::to_string(g));
    }
    AmorphicMode all;
    CHECK(error_code_of([&] { verify_amorphic(many, all); }) == "TooManyClasses");

    GroupPtr Z7 = abelian_group({7});
    PartitionScheme one;
    one.group = Z7;
    one.family = "test";
    one.classes = {ElementSet::of(Z7, {1, 2, 3, 4, 5, 6})};
    one.labels = {"A"};
    CHECK(error_code_of([&] { verify_amorphic(one, all); }) == "BadParameters");
}

TEST_CASE("structure constants of the order-81 scheme", "[algebra]") {
    SchemeResult s = semidirect_scheme(3, 2, true);
    SchemeConstants sc = scheme_constants(s.partition);
    CHECK(sc.class_sizes ==
          std::vector<std::uint64_t>{1, 24, 24, 8, 8, 8, 8});
    std::size_t n = sc.class_sizes.size();

    // identity row: C0 * Cj concentrates on Cj with multiplicity one
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            CHECK(sc.p[0][j][k] == (j == k ? 1 : 0));

    // commutative scheme: constants symmetric in the first two indices
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            CHECK(sc.p[i][j] == sc.p[j][i]);

    // row sums against class sizes: sum_k p[i][j][k] |Ck| = |Ci| |Cj|
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t total = 0;
            for (std::size_t k = 0; k < n; ++k)
                total += sc.p[i][j][k] * static_cast<std::int64_t>(sc.class_sizes[k]);
            CHECK(total == static_cast<std::int64_t>(sc.class_sizes[i] * sc.class_sizes[j]));
        }

    CHECK(sc.p[1][1] == std::vector<std::int64_t>{24, 9, 6, 6, 6, 6, 6});
}

TEST_CASE("non-scheme partitions are rejected with a witness", "[algebra]") {
    GroupPtr Z7 = abelian_group({7});
    PartitionScheme part;
    part.group = Z7;
    part.family = "test";
    part.classes = {ElementSet::of(Z7, {1}), ElementSet::of(Z7, {2, 3, 4, 5, 6})};
    part.labels = {"A", "B"};
    CHECK(error_code_of([&] { scheme_constants(part); }) == "NotAScheme");
}

TEST_CASE("class products match the fused-union coefficients", "[algebra]") {
    for (bool twisted : {true, false}) {
        SchemeResult s = semidirect_scheme(3, 2, twisted);
        MixedProductReport sq = verify_mixed_product(s.partition, 0, 0);
        CHECK(sq.at_identity == 24);
        CHECK(sq.on_i == 9);
        CHECK(sq.on_j == 9);
        CHECK(sq.elsewhere == 6);

        MixedProductReport cross = verify_mixed_product(s.partition, 0, 1);
        CHECK(cross.at_identity == 0);
        CHECK(cross.on_i == 12);
        CHECK(cross.on_j == 12);
        CHECK(cross.elsewhere == 18);

        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                CHECK_NOTHROW(verify_mixed_product(s.partition, i, j));
    }
}

TEST_CASE("mixed product rejects non-PDS inputs", "[algebra]") {
    GroupPtr Z7 = abelian_group({7});
    PartitionScheme part;
    part.group = Z7;
    part.family = "test";
    part.classes = {ElementSet::of(Z7, {1, 2, 4}), ElementSet::of(Z7, {3, 5, 6})};
    part.labels = {"Q", "N"};
    CHECK(error_code_of([&] { verify_mixed_product(part, 0, 0); }) == "BadParameters");
    CHECK(error_code_of([&] { verify_mixed_product(part, 0, 2); }) == "BadParameters");
}

TEST_CASE("census comparison pinpoints the first bad bin", "[algebra]") {
    Census got = {3, 1, 2};
    Census want = {3, 1, 4};
    CHECK(error_code_of([&] { require_census_equal(got, want, "probe"); }) == "IdentityFails");
    Census shorter = {3, 1};
    CHECK(error_code_of([&] { require_census_equal(got, shorter, "probe"); }) == "SizeMismatch");
    CHECK_NOTHROW(require_census_equal(got, got, "probe"));
}

TEST_CASE("piece identities hold in both group laws", "[algebra]") {
    for (bool twisted : {true, false}) {
        SchemeResult s = semidirect_scheme(3, 2, twisted);
        for (std::uint32_t i : {1u, 2u}) {
            CHECK_NOTHROW(verify_square_piece_identity(s.group, 3, i));
            CHECK_NOTHROW(verify_cross_piece_identity(s.group, 3, i));
        }
    }
    CHECK(error_code_of([] {
              verify_square_piece_identity(semidirect_group(3, 3), 3, 1);
          }) == "BadParameters");
}

TEST_CASE("integer square root is exact at boundaries", "[algebra]") {
    CHECK(integer_sqrt(0) == 0);
    CHECK(integer_sqrt(1) == 1);
    CHECK(integer_sqrt(3) == 1);
    CHECK(integer_sqrt(4) == 2);
    CHECK(integer_sqrt(80) == 8);
    CHECK(integer_sqrt(81) == 9);
    CHECK(integer_sqrt(82) == 9);
    CHECK(integer_sqrt(6560) == 80);
    CHECK(integer_sqrt(6561) == 81);
    CHECK(integer_sqrt(4294967295ULL) == 65535);
    CHECK(integer_sqrt(4294967296ULL) == 65536);
}

TEST_CASE("parameter classification on raw tuples", "[algebra]") {
    using V = std::vector<std::string>;
    CHECK(classify_parameters(SetKind::PDS, 81, 40, 19, 20) ==
          V{"Latin(9,5)", "NegLatin(9,4)", "PaleyType"});
    CHECK(classify_parameters(SetKind::PDS, 81, 32, 13, 12) == V{"Latin(9,4)"});
    CHECK(classify_parameters(SetKind::PDS, 81, 20, 1, 6) == V{"NegLatin(9,2)"});
    CHECK(classify_parameters(SetKind::PDS, 81, 8, 7, 0) == V{"Latin(9,1)", "TrivialSubgroup"});
    CHECK(classify_parameters(SetKind::DS, 83, 41, 20, 20) == V{"PaleyHadamard"});
    CHECK(classify_parameters(SetKind::DS, 85, 42, 20, 20) == V{});   // v = 1 mod 4
    CHECK(classify_parameters(SetKind::DS, 81, 40, 19, 20) == V{});   // wrong shape
    CHECK(classify_parameters(SetKind::NotPDS, 81, 40, 19, 20) == V{});
    CHECK(classify_parameters(SetKind::NotRegular, 4, 2, 2, 0) == V{});
    CHECK(classify_parameters(SetKind::PDS, 6561, 3280, 1639, 1640) ==
          V{"Latin(81,41)", "NegLatin(81,40)", "PaleyType"});
}
