#include <catch2/catch.hpp>

#include "krl/sturm.hpp"

using namespace krl;

namespace {
Laurent L(const std::string& s) { return Laurent::parse(s); }

// deterministic palindromic Laurent polynomial generator
Laurent random_palindromic(uint64_t seed, int half_span) {
    uint64_t s = seed;
    auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    Laurent p;
    p.set(0, Rat(static_cast<long>(next() % 9) - 4));
    for (int k = 1; k <= half_span; ++k) {
        long c = static_cast<long>(next() % 9) - 4;
        if (c == 0 && k == half_span) c = 1;
        p.add(k, Rat(c));
        p.add(-k, Rat(c));
    }
    if (p.is_zero()) p.set(0, Rat(1));
    return p;
}
}  // namespace

TEST_CASE("laurent parse/print round-trip") {
    const char* cases[] = {
        "8*t^6-21*t^5+27*t^4-27*t^3+27*t^2-21*t+8",
        "t-1+t^-1",
        "-t+3-t^-1",
        "1",
        "0",
        "2/3*t^2-5+t^-4",
    };
    for (auto* c : cases) {
        Laurent p = Laurent::parse(c);
        CHECK(Laurent::parse(p.str()) == p);
    }
    CHECK(Laurent::parse("t-1+t^-1").str() == "t-1+t^-1");
    CHECK_THROWS_AS(Laurent::parse("t^"), parse_error);
    CHECK_THROWS_AS(Laurent::parse("+"), parse_error);
}

TEST_CASE("normalize_symmetric") {
    CHECK(normalize_symmetric(L("t^2-t+1")) == L("t-1+t^-1"));
    CHECK(normalize_symmetric(L("-t+1-t^-1")) == L("t-1+t^-1"));
    CHECK(normalize_symmetric(L("8*t^6-21*t^5+27*t^4-27*t^3+27*t^2-21*t+8")) ==
          L("8*t^3-21*t^2+27*t-27+27*t^-1-21*t^-2+8*t^-3"));
    CHECK_THROWS_AS(normalize_symmetric(L("t^2+t")), not_reciprocal);   // t(t+1): odd span center
    CHECK_THROWS_AS(normalize_symmetric(L("t-t^-1")), not_reciprocal);  // antisymmetric
    SECTION("result is palindromic with positive value at 1") {
        for (uint64_t seed = 1; seed <= 30; ++seed) {
            Laurent q = random_palindromic(seed, 1 + static_cast<int>(seed % 7));
            Laurent p = q.shifted(static_cast<long>(seed % 5));
            if (sgn(p.eval_one()) == 0) continue;
            Laurent n = normalize_symmetric(p);
            CHECK(n.is_palindromic());
            CHECK(sgn(n.eval_one()) > 0);
        }
    }
}

TEST_CASE("chebyshev_form basics") {
    CHECK(chebyshev_form(L("t-1+t^-1")) == ZPoly({std::vector<Int>{Int(-1), Int(1)}}));
    CHECK(chebyshev_form(L("1")) == ZPoly::constant(Int(1)));
    CHECK(chebyshev_form(L("t^2+1+t^-2")) == ZPoly({std::vector<Int>{Int(-1), Int(0), Int(1)}}));
    CHECK_THROWS_AS(chebyshev_form(L("t+1")), not_palindromic);
}

TEST_CASE("chebyshev_form back-substitution reproduces q") {
    // substitute x = t + 1/t back in and compare exactly
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        Laurent q = random_palindromic(seed, 1 + static_cast<int>(seed % 10));
        ZPoly g = chebyshev_form(q);
        Laurent x = L("t+t^-1");
        Laurent acc, xp = Laurent::constant(Rat(1));
        for (long i = 0; i <= g.degree(); ++i) {
            acc = acc + xp * Rat(g[i]);
            xp = xp * x;
        }
        // chebyshev_form clears denominators; compare up to that rational unit
        Laurent num = to_zpoly(q).degree() >= 0 ? acc : acc;
        Rat unit = q.coeff(q.max_exp()) / Rat(g.leading());
        CHECK(acc * unit == q);
    }
}

TEST_CASE("sturm_isolate") {
    SECTION("single simple root") {
        auto roots = sturm_isolate(ZPoly({std::vector<Int>{Int(-1), Int(1)}}), Rat(-2), Rat(2));
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 1);
        CHECK(cmp(roots[0].root, Rat(1)) == 0);
    }
    SECTION("double root reported with multiplicity 2") {
        // (x-1)^2
        auto roots = sturm_isolate(ZPoly({std::vector<Int>{Int(1), Int(-2), Int(1)}}), Rat(-2), Rat(2));
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 2);
        CHECK(cmp(roots[0].root, Rat(1)) == 0);
    }
    SECTION("K15a78855 Chebyshev form has 3 simple roots in (-2,2)") {
        Laurent d = L("8*t^6-21*t^5+27*t^4-27*t^3+27*t^2-21*t+8");
        ZPoly g = chebyshev_form(normalize_symmetric(d));
        auto roots = sturm_isolate(g, Rat(-2), Rat(2));
        REQUIRE(roots.size() == 3);
        for (auto& r : roots) CHECK(r.multiplicity == 1);
        // hence six simple unit-circle roots
        CHECK(count_unit_circle_roots(d) == 6);
    }
    SECTION("intervals disjoint, sign change at endpoints") {
        // (x-1)(x+1)(2x-3) * (x^2+1)
        ZPoly p = ZPoly({std::vector<Int>{Int(-1), Int(0), Int(1)}}) * ZPoly({std::vector<Int>{Int(-3), Int(2)}}) *
                  ZPoly({std::vector<Int>{Int(1), Int(0), Int(1)}});
        auto roots = sturm_isolate(p, Rat(-5), Rat(5));
        REQUIRE(roots.size() == 3);
        for (size_t i = 0; i + 1 < roots.size(); ++i) CHECK(roots[i].root.hi() < roots[i + 1].root.lo());
        ZPoly sf = squarefree_part(p);
        for (auto& r : roots) {
            if (r.root.exact()) {
                CHECK(sf.sign_at(r.root.lo()) == 0);
            } else {
                CHECK(sf.sign_at(r.root.lo()) * sf.sign_at(r.root.hi()) < 0);
            }
        }
    }
    SECTION("open interval excludes endpoint roots") {
        // x^2 - 4 on (-2, 2): both roots are endpoints
        auto roots = sturm_isolate(ZPoly({std::vector<Int>{Int(-4), Int(0), Int(1)}}), Rat(-2), Rat(2));
        CHECK(roots.empty());
    }
}

TEST_CASE("algebraic real refinement is nested and stable") {
    // sqrt(3) as root of x^2 - 3
    auto roots = sturm_isolate(ZPoly({std::vector<Int>{Int(-3), Int(0), Int(1)}}), Rat(0), Rat(2));
    REQUIRE(roots.size() == 1);
    AlgebraicReal r = roots[0].root;
    Rat lo = r.lo(), hi = r.hi();
    for (int i = 0; i < 50; ++i) {
        r.refine();
        CHECK(lo <= r.lo());
        CHECK(r.hi() <= hi);
        lo = r.lo();
        hi = r.hi();
    }
    CHECK(std::abs(r.approx() - 1.7320508075688772) < 1e-9);
}

TEST_CASE("count_unit_circle_roots") {
    CHECK(count_unit_circle_roots(L("t-1+t^-1")) == 2);  // trefoil
    CHECK(count_unit_circle_roots(L("1")) == 0);         // unknot
    CHECK(count_unit_circle_roots(L("-t+3-t^-1")) == 0); // figure eight
    SECTION("t09882 factored Alexander polynomial has 16") {
        Laurent f1 = L("t^4-t^3+t^2-t+1");
        Laurent f2 = L("t^14-t^12+t^7-t^2+1");
        CHECK(count_unit_circle_roots(f1 * f2) == 16);
    }
    SECTION("multiplicative over palindromic factors") {
        Laurent a = L("t-1+t^-1");
        Laurent b = L("t^2-t+1-t^-1+t^-2");
        CHECK(count_unit_circle_roots(a * b) ==
              count_unit_circle_roots(a) + count_unit_circle_roots(b));
        CHECK(count_unit_circle_roots(a * a) == 2 * count_unit_circle_roots(a));
    }
    SECTION("t = -1 contributes its multiplicity") {
        // (t + 2 + t^-1) = (1+t)^2/t has a double root at t = -1
        CHECK(count_unit_circle_roots(L("t+2+t^-1")) == 2);
    }
}

TEST_CASE("algebraic comparisons") {
    ZPoly x2m2({std::vector<Int>{Int(-2), Int(0), Int(1)}});  // x^2-2
    ZPoly x2m3({std::vector<Int>{Int(-3), Int(0), Int(1)}});  // x^2-3
    auto r2 = sturm_isolate(x2m2, Rat(0), Rat(2))[0].root;
    auto r3 = sturm_isolate(x2m3, Rat(0), Rat(2))[0].root;
    CHECK(cmp(r2, r3) == -1);
    CHECK(cmp(r3, r2) == 1);
    auto r2b = sturm_isolate(x2m2 * ZPoly({std::vector<Int>{Int(-5), Int(1)}}), Rat(1), Rat(3))[0].root;
    CHECK(cmp(r2, r2b) == 0);  // same sqrt(2) through different defining polynomials
    CHECK(sign_at(x2m3, r2) == -1);
    CHECK(sign_at(x2m2, r2) == 0);
}
