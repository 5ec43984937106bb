#include <catch2/catch.hpp>
#include <cmath>

#include "krl/riley.hpp"

using namespace krl;

namespace {
std::string word_str(const std::vector<RileyLetter>& w) {
    std::string s;
    for (auto& l : w) {
        s += (l.gen == 0 ? "a" : "b");
        if (l.exp < 0) s += "'";
    }
    return s;
}
}

TEST_CASE("riley_word") {
    CHECK(word_str(riley_word(3, 1)) == "ab");
    CHECK(word_str(riley_word(5, 3)) == "ab'a'b");
    CHECK_THROWS_AS(riley_word(4, 1), invalid_descriptor);
    SECTION("(p, q) vs (p, p-q): exponent-negated words") {
        for (auto [p, q] : {std::pair<long, long>{5, 1}, {7, 2}, {9, 4}, {11, 3}}) {
            auto w1 = riley_word(p, q);
            auto w2 = riley_word(p, p - q);
            REQUIRE(w1.size() == w2.size());
            for (size_t i = 0; i < w1.size(); ++i) {
                CHECK(w1[i].gen == w2[i].gen);
                CHECK(w1[i].exp == -w2[i].exp);
            }
        }
    }
}

TEST_CASE("riley_polynomial") {
    SECTION("(3,1) -> y - 1") {
        RileyData rd = riley_polynomial(3, 1);
        CHECK(rd.poly.str("y") == "y-1");
    }
    SECTION("(5,3) -> y^2 + y + 1, no real roots") {
        RileyData rd = riley_polynomial(5, 3);
        CHECK(rd.poly.str("y") == "y^2+y+1");
        CHECK(real_roots(rd).empty());
    }
    SECTION("degree is (p-1)/2") {
        for (auto [p, q] : {std::pair<long, long>{7, 3}, {13, 5}, {31, 12}})
            CHECK(riley_polynomial(p, q).poly.degree() == (p - 1) / 2);
    }
    SECTION("mirror fractions q and p - q give the same polynomial") {
        // exponent negation conjugates u -> -u, so p_K(u^2) is unchanged
        for (long p : {5L, 7L, 9L, 11L, 13L, 15L}) {
            for (long q = 1; q < p; ++q) {
                if (std::gcd(p, q) != 1) continue;
                CHECK(riley_polynomial(p, q).poly == riley_polynomial(p, p - q).poly);
            }
        }
    }
    SECTION("q and q' with q q' = 1 mod p: same real-root count and heights") {
        // The polynomial itself is a coordinate tied to the meridian pair of
        // the presentation and can differ between inverse fractions (e.g.
        // (7,3) gives y^3-y^2+2y-1 while (7,5) gives y^3+3y^2+2y-1, both with
        // field discriminant -23). The representation count and the height
        // census are the knot invariants.
        for (auto [p, q] : {std::pair<long, long>{7, 3}, {9, 5}, {11, 3}, {13, 5}}) {
            long qi = mod_inverse(q, p);
            RileyData r1 = riley_polynomial(p, q), r2 = riley_polynomial(p, qi);
            auto roots1 = real_roots(r1), roots2 = real_roots(r2);
            REQUIRE(roots1.size() == roots2.size());
            std::multiset<long> h1, h2;
            for (auto& r : roots1) h1.insert(height(r1, r).height);
            for (auto& r : roots2) h2.insert(height(r2, r).height);
            CHECK(h1 == h2);
        }
    }
}

TEST_CASE("representation identities at real roots") {
    for (auto [p, q] : {std::pair<long, long>{3, 1}, {7, 3}, {9, 5}, {11, 3}}) {
        RileyData rd = riley_polynomial(p, q);
        auto roots = real_roots(rd);
        for (auto& root : roots) {
            ParabolicRep rep = build_rep(rd, root, 192);
            // group relation rho(w) rho(a) = rho(b) rho(w) within 1e-9
            Mat2I W = evaluate_word(rep, rd.word, 192);
            Mat2I WA = m2_mul(W, rep.A, 192);
            Mat2I BW = m2_mul(rep.B, W, 192);
            for (auto [x, y] : {std::pair<DyI, DyI>{WA.a, BW.a}, {WA.b, BW.b}, {WA.c, BW.c}, {WA.d, BW.d}}) {
                DyI diff = di_sub(x, y, 192);
                CHECK(std::abs(diff.to_d()) < 1e-9);
            }
            // irreducibility witness: tr rho([a,b]) != 2
            Mat2I Ai = letter_matrix(rep, {0, -1}), Bi = letter_matrix(rep, {1, -1});
            Mat2I comm = m2_mul(m2_mul(rep.A, rep.B, 192), m2_mul(Ai, Bi, 192), 192);
            CHECK(std::abs(trace(comm, 192).to_d() - 2.0) > 1e-8);
            // tr rho(ab) = 2 - y for the y > 0 chart
            if (rep.root_sign > 0) {
                Mat2I AB = m2_mul(rep.A, rep.B, 192);
                AlgebraicReal y = root;
                y.refine_below(make_rat(1, 1000000000));
                CHECK(trace(AB, 192).to_d() == Approx(2.0 - y.mid().get_d()).margin(1e-8));
            }
        }
    }
}

TEST_CASE("trefoil heights") {
    RileyData rd = riley_polynomial(3, 1);
    auto roots = real_roots(rd);
    REQUIRE(roots.size() == 1);
    CHECK(cmp(roots[0], Rat(1)) == 0);
    HeightResult h = height(rd, roots[0]);
    CHECK(h.height == 1);
    CHECK(std::abs(h.longitude_trace + 2) < 1e-6);
}

TEST_CASE("height is stable under root refinement") {
    RileyData rd = riley_polynomial(7, 3);  // 5_2 knot
    auto roots = real_roots(rd);
    REQUIRE(!roots.empty());
    for (auto root : roots) {
        long h1 = height(rd, root).height;
        for (int i = 0; i < 60; ++i) root.refine();
        long h2 = height(rd, root).height;
        CHECK(h1 == h2);
    }
}

TEST_CASE("K(41,9) = K10a107: four parabolics, all at height 1, sigma = 0") {
    RileyData rd = riley_polynomial(41, 9);
    auto roots = real_roots(rd);
    CHECK(roots.size() == 4);
    Mod2Verdict v = enhanced_riley_mod2(41, 9);
    CHECK(v.sigma == 0);
    CHECK(v.real_root_count == 4);
    REQUIRE(v.height_census.count(1));
    CHECK(v.height_census.at(1) == 4);
    CHECK(v.parity_pattern_ok);  // sigma = 0: every census count must be even
    CHECK(v.longitude_traces_ok);
}

TEST_CASE("enhanced riley mod 2 on small knots") {
    SECTION("(3,1): one parabolic at height 1, |sigma| = 2") {
        Mod2Verdict v = enhanced_riley_mod2(3, 1);
        CHECK(v.sigma == -2);
        CHECK(v.height_census.at(1) == 1);
        CHECK(v.parity_pattern_ok);
        CHECK(v.riley_count_ok);
    }
    SECTION("sweep p < 40") {
        for (auto [p, q] : canonical_two_bridge_fractions(40)) {
            Mod2Verdict v = enhanced_riley_mod2(p, q);
            INFO("p=" << p << " q=" << q);
            CHECK(v.parity_pattern_ok);
            CHECK(v.riley_count_ok);
            CHECK(v.longitude_traces_ok);
            for (auto& [h, cnt] : v.height_census) CHECK(h % 2 == 1);
            // heights bounded by 2g - 1 = p - 2
            if (!v.height_census.empty()) CHECK(v.height_census.rbegin()->first <= p - 2);
        }
    }
}

TEST_CASE("certified isolation agrees with Sturm on mid-sized polynomials") {
    // force the Aberth path by gluing Riley polynomials into a degree > 64 product
    RileyData a = riley_polynomial(61, 17), b = riley_polynomial(61, 23), c = riley_polynomial(23, 7);
    ZPoly prod = a.poly * b.poly * c.poly;
    if (zgcd(a.poly, b.poly).degree() == 0 && zgcd(a.poly, c.poly).degree() == 0 &&
        zgcd(b.poly, c.poly).degree() == 0) {
        REQUIRE(prod.degree() > 64);
        auto fast = isolate_real_roots_certified(prod);
        size_t expected = sturm_isolate_all(a.poly).size() + sturm_isolate_all(b.poly).size() +
                          sturm_isolate_all(c.poly).size();
        CHECK(fast.size() == expected);
    }
}
