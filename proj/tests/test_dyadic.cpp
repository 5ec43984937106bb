#include <catch2/catch.hpp>
#include <cmath>

#include "krl/dyadic.hpp"

using namespace krl;

TEST_CASE("dyadic arithmetic") {
    Dyadic a(Int(3), -1);  // 1.5
    Dyadic b(Int(-5), -2); // -1.25
    CHECK(dy_add(a, b).to_d() == 0.25);
    CHECK(dy_mul(a, b).to_d() == -1.875);
    CHECK(dy_cmp(a, b) == 1);
    Dyadic q = dy_div(Dyadic(1), Dyadic(3), 64, true);
    CHECK(q.to_d() == Approx(1.0 / 3).epsilon(1e-15));
    CHECK(q.to_rat() < make_rat(1, 3));
    Dyadic qu = dy_div(Dyadic(1), Dyadic(3), 64, false);
    CHECK(make_rat(1, 3) < qu.to_rat());
}

TEST_CASE("dyadic sqrt directed") {
    Dyadic two(2);
    Dyadic lo = dy_sqrt(two, 100, true), hi = dy_sqrt(two, 100, false);
    CHECK(lo.to_rat() * lo.to_rat() <= Rat(2));
    CHECK(Rat(2) <= hi.to_rat() * hi.to_rat());
    CHECK(dy_sub(hi, lo).to_d() < 1e-28);
}

TEST_CASE("pi enclosure") {
    DyI pi = pi_enclosure(128);
    CHECK(pi.lo.to_d() == Approx(3.14159265358979323846).epsilon(1e-15));
    CHECK(dy_cmp(pi.lo, pi.hi) <= 0);
    CHECK(pi.width().to_d() < 1e-35);
    // truncation and round-up of pi * 10^20 sandwich the enclosure
    Rat ref_lo = Rat("314159265358979323846") / pow_rat(Rat(10), 20);
    Rat ref_hi = Rat("314159265358979323847") / pow_rat(Rat(10), 20);
    CHECK(pi.lo.to_rat() < ref_hi);
    CHECK(ref_lo < pi.hi.to_rat());
}

TEST_CASE("atan2 matches libm on samples") {
    const double xs[] = {1.0, 0.5, -0.7, 2.0, -3.0, 0.01, -0.01};
    const double ys[] = {0.5, -1.5, 2.0, 1e-3, -2.0, 1.0, -1.0};
    for (double x : xs)
        for (double y : ys) {
            DyI xi = DyI::from_rat(Rat(x), 96);
            DyI yi = DyI::from_rat(Rat(y), 96);
            DyI a = di_atan2(yi, xi, 96);
            double ref = std::atan2(y, x);
            CHECK(a.lo.to_d() <= ref + 1e-14);
            CHECK(ref - 1e-14 <= a.hi.to_d());
            CHECK(a.width().to_d() < 1e-20);
        }
}

TEST_CASE("interval ops are outward") {
    DyI third = di_div(DyI(Dyadic(1)), DyI(Dyadic(3)), 80);
    CHECK(third.lo.to_rat() < make_rat(1, 3));
    CHECK(make_rat(1, 3) < third.hi.to_rat());
    DyI s = di_sqrt(DyI::from_rat(Rat(2), 80), 80);
    CHECK(s.lo.to_rat() * s.lo.to_rat() < Rat(2));
    DyI p = di_mul(third, s, 80);
    CHECK(p.lo.to_d() == Approx(std::sqrt(2.0) / 3).epsilon(1e-12));
}
