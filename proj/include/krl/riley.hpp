#pragma once

// Riley polynomials of 2-bridge knots, certified real-root isolation,
// parabolic SL(2,R) representations, longitude traces, and integer heights
// computed as translation numbers of lifted circle maps.
//
// Circle model: the unit tangent circle (double cover of RP^1) with
// coordinate x in R/2Z scaled so the central element -I translates by 1; the
// elliptic rotation [[cos t, sin t],[-sin t, cos t]] translates by t/pi.
// Each parabolic generator is lifted to the map fixing the lifts of its
// fixed point; lifted maps compose along the longitude word and the height
// is the displacement at a lift of the fixed point of rho(longitude),
// corrected by the relator cocycle (which is checked to vanish).

#include <cmath>
#include <complex>
#include <cstdio>

#include "krl/dyadic.hpp"
#include "krl/knots.hpp"

namespace krl {

struct extraction_mismatch : error {
    using error::error;
};
struct not_squarefree : error {
    using error::error;
};
struct longitude_check_failed : error {
    using error::error;
};
struct parity_violation : error {
    using error::error;
};
struct complex_root : error {
    using error::error;
};

struct RileyLetter {
    int gen;  // 0 = a, 1 = b
    int exp;  // +-1
};

// w = a^{e1} b^{e2} a^{e3} ... b^{e_{p-1}}, e_i = (-1)^floor(i q / p)
inline std::vector<RileyLetter> riley_word(long p, long q) {
    if (!(p % 2 == 1 && p >= 3 && 0 < q && q < p && std::gcd(p, q) == 1))
        throw invalid_descriptor("riley_word: need p odd >= 3, 0 < q < p coprime");
    auto eps = two_bridge_epsilons(p, q);
    std::vector<RileyLetter> w;
    w.reserve(p - 1);
    for (long i = 0; i < p - 1; ++i) w.push_back({static_cast<int>(i % 2), eps[i]});
    return w;
}

// longitude lambda = reverse(w) . w . a^{-2e}, e the exponent sum of w
inline std::vector<RileyLetter> longitude_word(long p, long q) {
    auto w = riley_word(p, q);
    std::vector<RileyLetter> lam(w.rbegin(), w.rend());
    lam.insert(lam.end(), w.begin(), w.end());
    long e = 0;
    for (auto& l : w) e += l.exp;
    for (long i = 0; i < std::labs(2 * e); ++i) lam.push_back({0, e > 0 ? -1 : 1});
    return lam;
}

inline long exponent_sum_b(const std::vector<RileyLetter>& w) {
    long s = 0;
    for (auto& l : w)
        if (l.gen == 1) s += l.exp;
    return s;
}

struct RileyData {
    long p = 0, q = 0;
    std::vector<RileyLetter> word;
    ZPoly poly;  // p_K(y), leading coefficient positive
};

// W = prod over the word of A(u)^{+-1}, B(u)^{+-1} with A = [[1,u],[0,1]],
// B = [[1,0],[-u,1]]; then W A - B W = [[0, u p(u^2)],[u p(u^2), 0]], i.e.
// p_K(u^2) = W11 with W12 + W21 = 0.
inline RileyData riley_polynomial(long p, long q) {
    RileyData rd;
    rd.p = p;
    rd.q = q;
    rd.word = riley_word(p, q);
    // entries of W as polynomials in u
    ZPoly a = ZPoly::constant(Int(1)), b, c, d = ZPoly::constant(Int(1));
    ZPoly u = ZPoly::monomial(Int(1), 1);
    for (auto& l : rd.word) {
        if (l.gen == 0) {
            // right-multiply by A^exp: col2 += exp * u * col1
            ZPoly sa = u * a, sc = u * c;
            if (l.exp > 0) {
                b = b + sa;
                d = d + sc;
            } else {
                b = b - sa;
                d = d - sc;
            }
        } else {
            // right-multiply by B^exp: col1 -= exp * u * col2
            ZPoly sb = u * b, sd = u * d;
            if (l.exp > 0) {
                a = a - sb;
                c = c - sd;
            } else {
                a = a + sb;
                c = c + sd;
            }
        }
    }
    if (!(b + c).is_zero()) throw extraction_mismatch("riley_polynomial: W12 + W21 != 0");
    // W11 must be even in u; substitute y = u^2
    std::vector<Int> py((a.degree() / 2) + 1, Int(0));
    for (long i = 0; i <= a.degree(); ++i) {
        if (sgn(a[i]) == 0) continue;
        if (i % 2 != 0) throw extraction_mismatch("riley_polynomial: W11 has odd powers");
        py[i / 2] = a[i];
    }
    rd.poly = ZPoly(std::move(py));
    if (sgn(rd.poly.leading()) < 0) rd.poly = -rd.poly;
    if (rd.poly.degree() != (p - 1) / 2) throw extraction_mismatch("riley_polynomial: wrong degree");
    return rd;
}

// squarefreeness certificate: gcd(f, f') mod a word-size prime has degree 0
inline bool squarefree_mod_prime(const ZPoly& f, unsigned long prime) {
    auto reduce = [&](const ZPoly& g) {
        std::vector<unsigned long> r(g.degree() + 1);
        for (long i = 0; i <= g.degree(); ++i) {
            Int m = g[i] % static_cast<long>(prime);
            if (m < 0) m += static_cast<long>(prime);
            r[i] = m.get_ui();
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    };
    auto aa = reduce(f), bb = reduce(f.derivative());
    auto mulmod = [&](unsigned long x, unsigned long y) {
        return static_cast<unsigned long>((static_cast<unsigned __int128>(x) * y) % prime);
    };
    auto powmod = [&](unsigned long x, unsigned long e) {
        unsigned long r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, x);
            x = mulmod(x, x);
            e >>= 1;
        }
        return r;
    };
    while (!bb.empty()) {
        // aa mod bb
        unsigned long inv = powmod(bb.back(), prime - 2);
        while (aa.size() >= bb.size()) {
            unsigned long coef = mulmod(aa.back(), inv);
            size_t off = aa.size() - bb.size();
            for (size_t i = 0; i < bb.size(); ++i) {
                unsigned long sub = mulmod(coef, bb[i]);
                aa[off + i] = (aa[off + i] + prime - sub % prime) % prime;
            }
            while (!aa.empty() && aa.back() == 0) aa.pop_back();
            if (aa.size() < bb.size()) break;
        }
        std::swap(aa, bb);
    }
    return aa.size() <= 1;
}

inline void assert_squarefree(const ZPoly& f) {
    for (unsigned long prime : {2305843009213693951ull, 4611686018427387847ull, 1152921504606846883ull})
        if (squarefree_mod_prime(f, prime)) return;
    // modular checks inconclusive: decide exactly
    if (zgcd(f, f.derivative()).degree() > 0)
        throw not_squarefree("Riley polynomial has a repeated root (contradicts Riley's theorem)");
}

// ---------------------------------------------------------------------------
// root isolation: exact Sturm for moderate degree, Aberth iteration with
// disk certification for large degree
// ---------------------------------------------------------------------------
namespace detail {

struct CD {  // complex dyadic midpoint value
    Dyadic re, im;
};
inline CD cd_add(const CD& x, const CD& y, long p) {
    return {dy_round(dy_add(x.re, y.re), p, true), dy_round(dy_add(x.im, y.im), p, true)};
}
inline CD cd_sub(const CD& x, const CD& y, long p) {
    return {dy_round(dy_sub(x.re, y.re), p, true), dy_round(dy_sub(x.im, y.im), p, true)};
}
inline CD cd_mul(const CD& x, const CD& y, long p) {
    Dyadic re = dy_sub(dy_mul(x.re, y.re), dy_mul(x.im, y.im));
    Dyadic im = dy_add(dy_mul(x.re, y.im), dy_mul(x.im, y.re));
    return {dy_round(re, p, true), dy_round(im, p, true)};
}
inline CD cd_div(const CD& x, const CD& y, long p) {
    Dyadic n2 = dy_add(dy_mul(y.re, y.re), dy_mul(y.im, y.im));
    if (n2.is_zero()) throw error("cd_div by zero");
    Dyadic re = dy_add(dy_mul(x.re, y.re), dy_mul(x.im, y.im));
    Dyadic im = dy_sub(dy_mul(x.im, y.re), dy_mul(x.re, y.im));
    return {dy_div(re, n2, p, true), dy_div(im, n2, p, true)};
}
inline double cd_abs2(const CD& x) { return dy_add(dy_mul(x.re, x.re), dy_mul(x.im, x.im)).to_d(); }

struct CDI {  // complex interval
    DyI re, im;
};
inline CDI cdi_add(const CDI& x, const CDI& y, long p) { return {di_add(x.re, y.re, p), di_add(x.im, y.im, p)}; }
inline CDI cdi_mul(const CDI& x, const CDI& y, long p) {
    return {di_sub(di_mul(x.re, y.re, p), di_mul(x.im, y.im, p), p),
            di_add(di_mul(x.re, y.im, p), di_mul(x.im, y.re, p), p)};
}

inline CDI eval_poly_cdi(const ZPoly& f, const CDI& z, long prec) {
    CDI acc{DyI(Dyadic(0)), DyI(Dyadic(0))};
    for (long i = f.degree(); i >= 0; --i) {
        acc = cdi_mul(acc, z, prec);
        acc.re = di_add(acc.re, DyI::from_rat(Rat(f[i]), prec), prec);
    }
    return acc;
}

}  // namespace detail

// isolated real roots of a certified-squarefree polynomial, any degree
inline std::vector<AlgebraicReal> isolate_real_roots_certified(const ZPoly& f0) {
    ZPoly f = f0.pos_primitive();
    assert_squarefree(f);
    if (f.degree() <= 64) {
        std::vector<AlgebraicReal> out;
        for (auto& r : sturm_isolate_all(f)) out.push_back(r.root);
        return out;
    }
    long n = f.degree();
    // Fujiwara-style crude root radius from coefficient bit lengths
    double lead_bits = static_cast<double>(bit_length(f.leading()));
    double rlog = 1.0;
    for (long k = 1; k <= n; ++k) {
        if (sgn(f[n - k]) == 0) continue;
        double b = (static_cast<double>(bit_length(f[n - k])) - lead_bits) / k + 1.0;
        rlog = std::max(rlog, b);
    }
    if (rlog > 50) throw error("isolate_real_roots_certified: root radius too large for the fast path");
    // Newton-polygon radii (upper convex hull of (i, log2|a_i|)) for the
    // Aberth starting points
    std::vector<double> radii(n, 1.0);
    {
        std::vector<std::pair<long, double>> pts;
        for (long i = 0; i <= n; ++i)
            if (sgn(f[i]) != 0) pts.emplace_back(i, static_cast<double>(bit_length(f[i])));
        std::vector<std::pair<long, double>> hull;
        for (auto& p : pts) {
            while (hull.size() >= 2) {
                auto& a = hull[hull.size() - 2];
                auto& b = hull[hull.size() - 1];
                if ((b.second - a.second) * (p.first - a.first) <= (p.second - a.second) * (b.first - a.first))
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(p);
        }
        long idx = 0;
        for (size_t e = 0; e + 1 < hull.size(); ++e) {
            long m = hull[e + 1].first - hull[e].first;
            double r = std::pow(2.0, (hull[e].second - hull[e + 1].second) / m);
            for (long t = 0; t < m && idx < n; ++t) radii[idx++] = std::min(std::pow(2.0, rlog), r);
        }
        while (idx < n) radii[idx++] = 1.0;
    }
    // Coefficients can be hundreds of bits wide, so evaluation near a root
    // cancels far below double precision: the whole iteration runs on dyadic
    // midpoints at >= coefficient width. The Aberth repulsion sum only
    // steers, so it runs at reduced precision.
    long bits_needed = 64;
    for (long i = 0; i <= n; ++i) bits_needed = std::max(bits_needed, static_cast<long>(bit_length(f[i])));
    ZPoly fder = f.derivative();
    long cap = precision_cap();
    int attempt = 0;
    for (long prec = std::max(256L, bits_needed + 192); prec <= cap; prec *= 2, ++attempt) {
        using detail::CD;
        const long rep_prec = std::min(prec, 96L);
        // Points only need to be close enough for the inclusion disks to
        // certify; 2^-40 is plenty for the observed root separations and is
        // reachable despite the cancellation floor 2^(bits_needed - prec).
        const long acc = 80;  // threshold on |correction|^2
        std::vector<Dyadic> cf(n + 1), cfd(n);
        for (long i = 0; i <= n; ++i) cf[i] = Dyadic(f[i], 0);
        for (long i = 0; i < n; ++i) cfd[i] = Dyadic(fder[i], 0);
        auto newton_ratio = [&](const CD& zz) {
            CD pv{Dyadic(0), Dyadic(0)}, dv{Dyadic(0), Dyadic(0)};
            for (long i = n; i >= 0; --i) {
                pv = detail::cd_mul(pv, zz, prec);
                pv.re = dy_round(dy_add(pv.re, cf[i]), prec, true);
                if (i > 0) {
                    dv = detail::cd_mul(dv, zz, prec);
                    dv.re = dy_round(dy_add(dv.re, cfd[i - 1]), prec, true);
                }
            }
            if (dv.re.is_zero() && dv.im.is_zero()) return CD{Dyadic(Int(1), 40), Dyadic(0)};
            return detail::cd_div(pv, dv, prec);
        };
        uint64_t rng = 0x9e3779b97f4a7c15ull + 0x7f4a7c15ull * attempt;
        auto next_u = [&rng]() {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            return (rng >> 11) * 0x1.0p-53;
        };
        std::vector<CD> z(n);
        for (long j = 0; j < n; ++j) {
            double th = 2 * 3.14159265358979 * (j * 1.0 / n + 0.13 * (j % 5)) + 0.3 + 0.61 * attempt;
            double radius = radii[j] * (1.0 + 0.05 * ((j * 37) % 11));
            z[j] = {dy_from_rat(Rat(radius * std::cos(th)), prec, true), dy_from_rat(Rat(radius * std::sin(th)), prec, true)};
        }
        Dyadic small2 = dy_pow2(-acc);  // on squared corrections
        std::vector<char> frozen(n, 0);
        long nfrozen = 0, last_progress_sweep = 0;
        bool reseeded_since_progress = false;
        for (int sweep = 0; sweep < 2500 && nfrozen < n; ++sweep) {
            for (long j = 0; j < n; ++j) {
                if (frozen[j]) continue;
                CD w = newton_ratio(z[j]);
                CD s{Dyadic(0), Dyadic(0)};
                for (long k = 0; k < n; ++k) {
                    if (k == j) continue;
                    CD diff = detail::cd_sub(z[j], z[k], rep_prec);
                    if (diff.re.is_zero() && diff.im.is_zero()) diff.re = dy_pow2(-prec);
                    s = detail::cd_add(s, detail::cd_div(CD{Dyadic(1), Dyadic(0)}, diff, rep_prec), rep_prec);
                }
                CD denom = detail::cd_sub(CD{Dyadic(1), Dyadic(0)}, detail::cd_mul(w, s, rep_prec), rep_prec);
                CD corr = (denom.re.is_zero() && denom.im.is_zero()) ? w : detail::cd_div(w, denom, prec);
                z[j] = detail::cd_sub(z[j], corr, prec);
                Dyadic step2 = dy_round(dy_add(dy_mul(corr.re, corr.re), dy_mul(corr.im, corr.im)), 48, false);
                if (dy_cmp(step2, small2) < 0) {
                    frozen[j] = 1;
                    ++nfrozen;
                    last_progress_sweep = sweep;
                    reseeded_since_progress = false;
                }
            }
            if (std::getenv("KRL_DEBUG") && sweep % 25 == 0)
                std::fprintf(stderr, "[aberth] prec=%ld sweep=%d frozen=%ld\n", prec, sweep, nfrozen);
            // once progress stalls, re-seed only the points that are still
            // far from every root; points mid-convergence keep their state
            if (nfrozen < n && sweep - last_progress_sweep >= 50) {
                if (reseeded_since_progress) break;  // stuck at this precision: escalate
                reseeded_since_progress = true;
                Dyadic far2 = dy_pow2(-24);
                for (long j = 0; j < n; ++j) {
                    if (frozen[j]) continue;
                    CD w = newton_ratio(z[j]);
                    Dyadic w2 = dy_round(dy_add(dy_mul(w.re, w.re), dy_mul(w.im, w.im)), 48, false);
                    if (dy_cmp(w2, far2) < 0) continue;
                    double r = radii[std::min<long>(n - 1, static_cast<long>(next_u() * n))];
                    double th = 2 * 3.14159265358979 * next_u();
                    z[j] = {dy_from_rat(Rat(r * (0.5 + next_u()) * std::cos(th)), prec, true),
                            dy_from_rat(Rat(r * (0.5 + next_u()) * std::sin(th)), prec, true)};
                }
                last_progress_sweep = sweep;
            }
        }
        if (nfrozen < n) continue;
        // certification: disjoint inclusion disks r_j = n |p/p'| around each z_j
        std::vector<double> cr(n), cx(n), cy(n);
        std::vector<Rat> radius_hi(n);
        bool ok = true;
        for (long j = 0; j < n && ok; ++j) {
            detail::CDI zi{DyI(z[j].re), DyI(z[j].im)};
            detail::CDI pv = detail::eval_poly_cdi(f, zi, prec);
            detail::CDI dv = detail::eval_poly_cdi(f.derivative(), zi, prec);
            // |p| upper, |p'| lower
            DyI p2 = di_add(di_mul(pv.re, pv.re, prec), di_mul(pv.im, pv.im, prec), prec);
            DyI d2 = di_add(di_mul(dv.re, dv.re, prec), di_mul(dv.im, dv.im, prec), prec);
            if (d2.lo.sign() <= 0) {
                ok = false;
                break;
            }
            Rat ratio2 = p2.hi.to_rat() / d2.lo.to_rat();
            auto rb = rat_sqrt_bounds(ratio2 * Rat(n) * Rat(n));
            radius_hi[j] = rb.second;
            cr[j] = rb.second.get_d();
            cx[j] = z[j].re.to_d();
            cy[j] = z[j].im.to_d();
        }
        if (!ok) continue;
        // pairwise disjoint (exact rational comparison of squared distances)
        for (long j = 0; j < n && ok; ++j)
            for (long k = j + 1; k < n; ++k) {
                Rat dx = z[j].re.to_rat() - z[k].re.to_rat();
                Rat dy = z[j].im.to_rat() - z[k].im.to_rat();
                Rat rr = radius_hi[j] + radius_hi[k];
                if (!(dx * dx + dy * dy > rr * rr)) {
                    ok = false;
                    break;
                }
            }
        if (!ok) continue;
        // classify: disk off the real axis => nonreal; disk meeting the axis
        // must certify a sign change on its real slice
        std::vector<AlgebraicReal> out;
        long nonreal = 0;
        for (long j = 0; j < n && ok; ++j) {
            Rat im = z[j].im.to_rat();
            if (rat_abs(im) > radius_hi[j]) {
                ++nonreal;
                continue;
            }
            Rat lo = z[j].re.to_rat() - radius_hi[j], hi = z[j].re.to_rat() + radius_hi[j];
            int slo = f.sign_at(lo), shi = f.sign_at(hi);
            if (slo == 0) {  // the disk's single root is exactly lo
                out.push_back(AlgebraicReal(f, lo, lo));
            } else if (shi == 0) {
                out.push_back(AlgebraicReal(f, hi, hi));
            } else if (slo == shi) {
                ok = false;
                break;
            } else {
                out.push_back(AlgebraicReal(f, lo, hi));
            }
        }
        if (!ok || nonreal + static_cast<long>(out.size()) != n) continue;
        std::sort(out.begin(), out.end(), [](const AlgebraicReal& a, const AlgebraicReal& b) { return a.lo() < b.lo(); });
        return out;
    }
    throw precision_exhausted("isolate_real_roots_certified: precision cap reached");
}

inline std::vector<AlgebraicReal> real_roots(const RileyData& rd) { return isolate_real_roots_certified(rd.poly); }

// Tight dyadic enclosure of a certified root: interval Newton with exact
// dyadic bisection fallback. Rational bisection via AlgebraicReal::refine is
// far too slow at Riley degrees; this is the refinement route reps use.
inline DyI refine_root_dyadic(const ZPoly& f, const AlgebraicReal& root, long prec) {
    long wp = prec + 32;
    ZPoly fd = f.derivative();
    auto evalI = [&](const ZPoly& g, const DyI& x) {
        DyI acc{Dyadic(0)};
        for (long i = g.degree(); i >= 0; --i) acc = di_add(di_mul(acc, x, wp), DyI(Dyadic(g[i], 0)), wp);
        return acc;
    };
    auto exact_sign_at = [&](const Dyadic& x) {
        Dyadic acc(0);
        for (long i = f.degree(); i >= 0; --i) acc = dy_add(dy_mul(acc, x), Dyadic(f[i], 0));
        return acc.sign();
    };
    DyI X = DyI::from_rats(root.lo(), root.hi(), wp);
    Dyadic target = dy_pow2(-prec);
    int slo = 0;
    bool slo_known = false;
    for (int it = 0; it < 64 + 4 * static_cast<int>(prec); ++it) {
        if (dy_cmp(X.width(), target) < 0) return X;
        Dyadic hw = dy_round(Dyadic(X.width().m, X.width().e - 1), 64, true);
        Dyadic m = dy_add(X.lo, hw);
        DyI dp = evalI(fd, X);
        bool bisect = dp.sign() == 0;
        if (!bisect) {
            DyI pm = evalI(f, DyI(m));
            DyI N = di_sub(DyI(m), di_div(pm, dp, wp), wp);
            Dyadic nlo = dy_cmp(N.lo, X.lo) > 0 ? N.lo : X.lo;
            Dyadic nhi = dy_cmp(N.hi, X.hi) < 0 ? N.hi : X.hi;
            if (dy_cmp(nlo, nhi) > 0) throw error("refine_root_dyadic: empty Newton intersection");
            if (dy_cmp(dy_sub(nhi, nlo), X.width()) < 0) {
                X = DyI(nlo, nhi);
                continue;
            }
            bisect = true;  // no contraction; fall back to one bisection step
        }
        if (bisect) {
            int sm = exact_sign_at(m);
            if (sm == 0) return DyI(m, m);
            if (!slo_known) {
                slo = exact_sign_at(X.lo);
                slo_known = true;
                if (slo == 0) return DyI(X.lo, X.lo);
            }
            if (sm == slo)
                X.lo = m;
            else
                X.hi = m;
        }
    }
    throw precision_exhausted("refine_root_dyadic: no convergence");
}

// ---------------------------------------------------------------------------
// parabolic representation at a real root, as certified interval matrices
// ---------------------------------------------------------------------------
struct Mat2I {
    DyI a, b, c, d;
};
inline Mat2I m2_mul(const Mat2I& x, const Mat2I& y, long p) {
    return {di_add(di_mul(x.a, y.a, p), di_mul(x.b, y.c, p), p), di_add(di_mul(x.a, y.b, p), di_mul(x.b, y.d, p), p),
            di_add(di_mul(x.c, y.a, p), di_mul(x.d, y.c, p), p), di_add(di_mul(x.c, y.b, p), di_mul(x.d, y.d, p), p)};
}

struct ParabolicRep {
    AlgebraicReal root;
    int root_sign = 1;  // sign of y
    Mat2I A, B;         // rho(a), rho(b)
    long prec = 0;
};

// generator images: y > 0: A = [[1,u],[0,1]], B = [[1,0],[-u,1]], u = sqrt(y);
// y < 0: the real conjugated form A = [[1,v],[0,1]], B = [[1,0],[v,1]], v = sqrt(-y)
inline ParabolicRep build_rep(const RileyData& rd, const AlgebraicReal& root, long prec = 128) {
    ParabolicRep rep;
    rep.root = root;
    rep.prec = prec;
    DyI yv = refine_root_dyadic(root.defining_poly(), root, prec);
    int s = yv.sign();
    if (s == 0) throw error("build_rep: root interval straddles 0");
    rep.root_sign = s;
    DyI u = di_sqrt(s > 0 ? yv : -yv, prec);
    DyI one(Dyadic(1)), zero(Dyadic(0));
    rep.A = {one, u, zero, one};
    rep.B = {one, zero, s > 0 ? -u : u, one};
    return rep;
}

inline Mat2I letter_matrix(const ParabolicRep& rep, const RileyLetter& l) {
    const Mat2I& M = l.gen == 0 ? rep.A : rep.B;
    if (l.exp > 0) return M;
    // parabolic inverses are entrywise sign flips of the off-diagonal
    return {M.a, -M.b, -M.c, M.d};
}

inline Mat2I evaluate_word(const ParabolicRep& rep, const std::vector<RileyLetter>& word, long prec) {
    Mat2I acc{DyI(Dyadic(1)), DyI(Dyadic(0)), DyI(Dyadic(0)), DyI(Dyadic(1))};
    for (auto& l : word) acc = m2_mul(acc, letter_matrix(rep, l), prec);
    return acc;
}

inline DyI trace(const Mat2I& m, long prec) { return di_add(m.a, m.d, prec); }

// ---------------------------------------------------------------------------
// heights
// ---------------------------------------------------------------------------
namespace detail {

// displacement of the zero-lift of the parabolic `M` at circle point u,
// in (-1, 1): minus the principal rotation angle over pi
inline DyI step_displacement(const Mat2I& M, DyI& ux, DyI& uy, long prec, long ang_prec, const DyI& pi) {
    DyI vx = di_add(di_mul(M.a, ux, prec), di_mul(M.b, uy, prec), prec);
    DyI vy = di_add(di_mul(M.c, ux, prec), di_mul(M.d, uy, prec), prec);
    DyI dot = di_add(di_mul(ux, vx, prec), di_mul(uy, vy, prec), prec);
    DyI cross = di_sub(di_mul(ux, vy, prec), di_mul(uy, vx, prec), prec);
    DyI theta = di_atan2(cross, dot, ang_prec);
    DyI delta = -di_div(theta, pi, ang_prec);
    // rescale v by a power of two to keep magnitudes near 1 (exact)
    DyI n2 = di_add(di_mul(vx, vx, prec), di_mul(vy, vy, prec), prec);
    if (n2.lo.sign() <= 0) throw precision_exhausted("step_displacement: direction lost");
    long shift = (bit_length(n2.lo.m) + n2.lo.e) / 2;
    ux = di_scale2(vx, -shift);
    uy = di_scale2(vy, -shift);
    return delta;
}

}  // namespace detail

struct HeightResult {
    long height = 0;       // |lambda*|
    long lambda_star = 0;  // signed translation number of the lifted longitude
    double longitude_trace = -2;
};

// translation-number height of one parabolic representation
inline HeightResult height(const RileyData& rd, const AlgebraicReal& root) {
    auto lam = longitude_word(rd.p, rd.q);
    // relator w a w^-1 b^-1
    std::vector<RileyLetter> rel = rd.word;
    rel.push_back({0, 1});
    for (auto it = rd.word.rbegin(); it != rd.word.rend(); ++it) rel.push_back({it->gen, -it->exp});
    rel.push_back({1, -1});
    long nb = exponent_sum_b(rd.word);

    long cap = precision_cap();
    const long ang_prec = 96;
    for (long prec = 128; prec <= cap; prec *= 2) {
        try {
            ParabolicRep rep = build_rep(rd, root, prec);
            DyI pi = pi_enclosure(ang_prec);
            // longitude holonomy and its trace
            Mat2I L = evaluate_word(rep, lam, prec);
            DyI tr = trace(L, prec);
            DyI err = di_add(tr, DyI(Dyadic(2)), prec);
            Dyadic tol(Int(1), -20);  // ~1e-6
            if (dy_cmp(err.lo, tol) > 0 || dy_cmp(err.hi, -tol) < 0)
                throw longitude_check_failed("longitude trace is not -2 (convention failure)");
            if (dy_cmp(dy_sub(err.hi, err.lo), tol) > 0) throw precision_exhausted("longitude trace too wide");
            // fixed direction of L: eigenvector of eigenvalue -1, i.e. (L+I)v=0
            DyI r1x = L.b, r1y = -di_add(L.a, DyI(Dyadic(1)), prec);
            DyI r2x = di_add(L.d, DyI(Dyadic(1)), prec), r2y = -L.c;
            DyI n1 = di_add(di_mul(r1x, r1x, prec), di_mul(r1y, r1y, prec), prec);
            DyI n2 = di_add(di_mul(r2x, r2x, prec), di_mul(r2y, r2y, prec), prec);
            DyI ux = r1x, uy = r1y;
            if (dy_cmp(n2.lo, n1.lo) > 0) {
                ux = r2x;
                uy = r2y;
            }
            DyI nn = di_add(di_mul(ux, ux, prec), di_mul(uy, uy, prec), prec);
            if (nn.lo.sign() <= 0) throw precision_exhausted("longitude fixed point not certified");
            // displacement of the composed zero-lifts along lambda
            DyI total(Dyadic(0));
            DyI px = ux, py = uy;
            for (auto it = lam.rbegin(); it != lam.rend(); ++it) {
                DyI d = detail::step_displacement(letter_matrix(rep, *it), px, py, prec, ang_prec, pi);
                total = di_add(total, d, ang_prec + 32);
            }
            // relator cocycle at an arbitrary start point: must be an even
            // integer 2*k0 (expected 0)
            DyI rx(Dyadic(1)), ry(Dyadic(0));
            DyI rel_total(Dyadic(0));
            for (auto it = rel.rbegin(); it != rel.rend(); ++it) {
                DyI d = detail::step_displacement(letter_matrix(rep, *it), rx, ry, prec, ang_prec, pi);
                rel_total = di_add(rel_total, d, ang_prec + 32);
            }
            double k0d = rel_total.to_d() / 2.0;
            long k0 = std::lround(k0d);
            DyI k0err = di_sub(rel_total, DyI(Dyadic(2 * k0)), ang_prec);
            if (dy_cmp(k0err.hi, tol) > 0 || dy_cmp(k0err.lo, -tol) < 0)
                throw precision_exhausted("relator cocycle not certified to an even integer");
            DyI lam_star = di_add(total, DyI(Dyadic(4 * nb * k0)), ang_prec + 32);
            long m = std::lround(lam_star.to_d());
            DyI merr = di_sub(lam_star, DyI(Dyadic(m)), ang_prec);
            if (dy_cmp(merr.hi, tol) > 0 || dy_cmp(merr.lo, -tol) < 0)
                throw precision_exhausted("longitude displacement not certified to an integer");
            if (m % 2 == 0) throw parity_violation("longitude translation number is even (convention bug)");
            HeightResult out;
            out.lambda_star = m;
            out.height = std::labs(m);
            out.longitude_trace = tr.to_d();
            return out;
        } catch (const precision_exhausted&) {
            continue;
        }
    }
    throw precision_exhausted("height: precision cap reached");
}

// ---------------------------------------------------------------------------
// the mod-2 Enhanced Riley verdict for one knot
// ---------------------------------------------------------------------------
struct Mod2Verdict {
    long p = 0, q = 0;
    long degree = 0;
    long real_root_count = 0;
    int sigma = 0;
    std::map<long, long> height_census;  // height -> count
    bool longitude_traces_ok = false;
    bool parity_pattern_ok = false;  // count at odd height i odd iff i < |sigma|
    bool riley_count_ok = false;     // Riley/Gordon bound: 2 * #real roots >= |sigma|
};

inline Mod2Verdict enhanced_riley_mod2(long p, long q) {
    RileyData rd = riley_polynomial(p, q);
    auto roots = real_roots(rd);
    Mod2Verdict v;
    v.p = p;
    v.q = q;
    v.degree = rd.poly.degree();
    v.real_root_count = static_cast<long>(roots.size());
    v.sigma = seifert_signature_at_minus1(two_bridge_seifert_matrix(p, q));
    v.longitude_traces_ok = true;
    for (auto& r : roots) {
        HeightResult h = height(rd, r);
        v.height_census[h.height] += 1;
        if (std::abs(h.longitude_trace + 2) > 1e-6) v.longitude_traces_ok = false;
    }
    long abs_sigma = std::labs(v.sigma);
    v.parity_pattern_ok = true;
    long max_h = v.height_census.empty() ? 0 : v.height_census.rbegin()->first;
    for (long i = 1; i <= std::max(max_h, abs_sigma); i += 2) {
        long cnt = v.height_census.count(i) ? v.height_census.at(i) : 0;
        bool want_odd = i < abs_sigma;
        if ((cnt % 2 == 1) != want_odd) v.parity_pattern_ok = false;
    }
    // the real roots are the parabolics with tr(mu) = +2; the tr = -2 ones
    // are their images under the central twist, so the Riley/Gordon count of
    // parabolic representations is twice the root count
    v.riley_count_ok = 2 * v.real_root_count >= abs_sigma;
    return v;
}

}  // namespace krl
