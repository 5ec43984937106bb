#include <catch2/catch.hpp>

#include "krl/catalog.hpp"
#include "krl/knots.hpp"

using namespace krl;

namespace {
Laurent L(const std::string& s) { return Laurent::parse(s); }
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(KnotDescriptor::torus(3, 3), invalid_descriptor);
    CHECK_THROWS_AS(KnotDescriptor::torus(4, 6), invalid_descriptor);
    CHECK_THROWS_AS(KnotDescriptor::two_bridge(4, 1), invalid_descriptor);
    CHECK_THROWS_AS(KnotDescriptor::two_bridge(9, 3), invalid_descriptor);
    auto tb = KnotDescriptor::two_bridge(5, 3);
    CHECK(tb.flags.count("alternating") == 1);
    CHECK(tb.flags.count("small") == 1);
    IMat bad(2);
    bad.at(0, 0) = 1;
    CHECK_THROWS_AS(KnotDescriptor::seifert(bad), invalid_descriptor);
}

TEST_CASE("alexander polynomials") {
    CHECK(alexander(KnotDescriptor::torus(2, 3)) == L("t-1+t^-1"));
    CHECK(alexander(KnotDescriptor::two_bridge(3, 1)) == L("t-1+t^-1"));
    CHECK(alexander(KnotDescriptor::two_bridge(5, 3)) == L("-t+3-t^-1"));
    CHECK(alexander(KnotDescriptor::raw(Laurent::constant(Rat(1)))) == L("1"));
    SECTION("torus examples") {
        CHECK(alexander(KnotDescriptor::torus(2, 5)) == L("t^2-t+1-t^-1+t^-2"));
        Laurent d34 = alexander(KnotDescriptor::torus(3, 4));
        CHECK(d34.is_palindromic());
        CHECK(d34.eval_one() == Rat(1));
        CHECK(d34.span() == 6);  // 2g = (3-1)(4-1) = 6
    }
}

TEST_CASE("two-bridge Minkus sum matches the Seifert-matrix oracle for p < 50") {
    for (long p = 3; p < 50; p += 2)
        for (long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            Laurent minkus = normalize_symmetric(two_bridge_alexander(p, q));
            Laurent oracle = normalize_symmetric(seifert_alexander_raw(two_bridge_seifert_matrix(p, q)));
            REQUIRE(minkus == oracle);
        }
}

TEST_CASE("two-bridge q and q' with q q' = 1 mod p give the same Alexander polynomial") {
    for (long p = 5; p < 40; p += 2)
        for (long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            long qi = mod_inverse(q, p);
            CHECK(alexander(KnotDescriptor::two_bridge(p, q)) == alexander(KnotDescriptor::two_bridge(p, qi)));
        }
}

TEST_CASE("determinant") {
    CHECK(determinant(KnotDescriptor::torus(2, 3)) == 3);
    CHECK(determinant(KnotDescriptor::raw(Laurent::constant(Rat(1)))) == 1);
    CHECK(determinant(KnotDescriptor::two_bridge(5, 3)) == 5);
    SECTION("always odd") {
        for (long p = 3; p < 30; p += 2)
            for (long q = 1; q < p; ++q) {
                if (std::gcd(p, q) != 1) continue;
                Int d = determinant(KnotDescriptor::two_bridge(p, q));
                CHECK(d % 2 == 1);
            }
    }
}

TEST_CASE("seifert matrices") {
    SECTION("trefoil") {
        IMat V = seifert_matrix(KnotDescriptor::torus(2, 3));
        REQUIRE(V.n == 2);
        CHECK(V.at(0, 0) == -1);
        CHECK(V.at(0, 1) == 1);
        CHECK(V.at(1, 0) == 0);
        CHECK(V.at(1, 1) == -1);
        CHECK(seifert_signature_at_minus1(V) == -2);
    }
    SECTION("T(2,5) is 4x4 bidiagonal with -1 diagonal, 1 superdiagonal") {
        IMat V = seifert_matrix(KnotDescriptor::torus(2, 5));
        REQUIRE(V.n == 4);
        for (int i = 0; i < 4; ++i) {
            CHECK(V.at(i, i) == -1);
            if (i < 3) CHECK(V.at(i, i + 1) == 1);
        }
        CHECK(normalize_symmetric(seifert_alexander_raw(V)) == alexander(KnotDescriptor::torus(2, 5)));
        CHECK(seifert_signature_at_minus1(V) == -4);
    }
    SECTION("figure eight has sigma = 0") {
        IMat V = seifert_matrix(KnotDescriptor::two_bridge(5, 3));
        CHECK(seifert_signature_at_minus1(V) == 0);
        CHECK(normalize_symmetric(seifert_alexander_raw(V)) == L("-t+3-t^-1"));
    }
    SECTION("generic torus rejected") {
        CHECK_THROWS_AS(seifert_matrix(KnotDescriptor::torus(3, 5)), unsupported);
    }
}

TEST_CASE("mirror") {
    auto k = KnotDescriptor::torus(2, 3);
    auto m = mirror(k);
    CHECK(m.mirrored());
    CHECK(!mirror(m).mirrored());
    CHECK(mirror(mirror(k)).flags == k.flags);
    CHECK(alexander(m) == alexander(k));
    CHECK(signature_at_minus1(m) == 2);
    CHECK(signature_at_minus1(k) == -2);
    SECTION("seifert presentation mirrors by -V^T") {
        IMat V = two_bridge_seifert_matrix(7, 1);
        auto s = KnotDescriptor::seifert(V);
        CHECK(seifert_matrix(mirror(s)) == V.negated_transpose());
        CHECK(signature_at_minus1(mirror(s)) == -signature_at_minus1(s));
        CHECK(alexander(mirror(s)) == alexander(s));
    }
}

TEST_CASE("canonical two-bridge enumeration") {
    auto small = canonical_two_bridge_fractions(8);
    // p=3: {1}; p=5: {1},{2}; p=7: {1}, {2,3,4,5}  (2 and 3 are mirror-inverse related)
    REQUIRE(small.size() == 5);
    CHECK(small[0] == std::pair<long, long>{3, 1});
    CHECK(small[4] == std::pair<long, long>{7, 2});
    SECTION("paper count: 12929 canonical fractions for p < 500") {
        CHECK(canonical_two_bridge_fractions(500).size() == 12929);
    }
}

TEST_CASE("catalog JSON lines") {
    std::string text =
        "{\"type\":\"torus\",\"p\":2,\"q\":3,\"name\":\"trefoil\"}\n"
        "{\"type\":\"two_bridge\",\"p\":479,\"q\":29}\n"
        "{\"type\":\"raw\",\"alexander\":\"t-1+t^-1\",\"flags\":[\"alternating\",\"small\"]}\n"
        "{\"type\":\"seifert\",\"seifert\":[[-1,1],[0,-1]]}\n";
    auto cat = load_catalog_text(text);
    REQUIRE(cat.entries.size() == 4);
    CHECK(cat.entries[0].kind == KnotKind::Torus);
    CHECK(cat.entries[0].name == "trefoil");
    CHECK(cat.entries[1].p == 479);
    CHECK(cat.entries[2].flags.count("alternating") == 1);
    CHECK(cat.entries[3].kind == KnotKind::Seifert);
    SECTION("bad line reports its number") {
        try {
            load_catalog_text("{\"type\":\"torus\",\"p\":2,\"q\":3}\n{\"type\":\"nope\"}\n");
            FAIL("expected catalog_parse_error");
        } catch (const catalog_parse_error& e) {
            CHECK(e.line == 2);
        }
    }
    SECTION("duplicate names rejected") {
        CHECK_THROWS_AS(load_catalog_text("{\"type\":\"torus\",\"p\":2,\"q\":3,\"name\":\"a\"}\n"
                                          "{\"type\":\"torus\",\"p\":2,\"q\":5,\"name\":\"a\"}\n"),
                        catalog_parse_error);
    }
}
