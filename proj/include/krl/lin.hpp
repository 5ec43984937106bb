#pragma once

// The Casson-Lin counts h, h^c_SU, h^c_SL2R, the extended Lin invariant
// (exact for torus knots, conjectural closed form for 2-bridge), Milnor
// torsion, and the parity / degree-bound / L-space-pattern verdicts.
//
// h comes from class rules only: torus knots, alternating (small) knots and
// Montesinos knots. Anything else reports Unknown rather than a guess.

#include <optional>

#include "krl/signatures.hpp"

namespace krl {

struct HValue {
    std::optional<long> value;
    std::string provenance;  // torus | alternating | montesinos | unknot | user
    std::string note;        // why unknown, when unknown
    bool known() const { return value.has_value(); }
};

inline bool is_unknot_raw(const KnotDescriptor& k) {
    return k.kind == KnotKind::Raw && k.delta == Laurent::constant(Rat(1));
}

// h(K) by class rules; Unknown otherwise
inline HValue h_total(const KnotDescriptor& k) {
    HValue h;
    if (k.kind == KnotKind::Torus) {
        long g2 = (k.p - 1) * (k.q - 1) / 2;
        h.value = k.mirrored() ? -g2 : g2;
        h.provenance = "torus";
        return h;
    }
    if (is_unknot_raw(k)) {
        h.value = 0;
        h.provenance = "unknot";
        return h;
    }
    bool alt = k.flags.count("alternating") && (k.flags.count("small") || k.flags.count("rep_small"));
    bool mont = k.flags.count("montesinos") > 0;
    if (alt || mont) {
        int sigma = sigma_step(k).value_at_c(Rat(0));
        h.value = -sigma / 2;
        h.provenance = mont && !alt ? "montesinos" : "alternating";
        return h;
    }
    h.provenance = "none";
    h.note = "h needs a class rule (torus, alternating small, or Montesinos); none applies";
    return h;
}

// h^c_SU = -sigma_K(e^{2 i alpha}) / 2 at c = 2 cos alpha, c not in D_K
inline long h_su(const KnotDescriptor& k, const Rat& c) {
    if (!(Rat(-2) <= c && c <= Rat(2))) throw error("h_su: c outside [-2,2]");
    SignatureStep s = sigma_step(k);
    if (c == Rat(2) || c == Rat(-2)) return 0;  // outermost intervals, sigma = 0 there
    return -s.value_at_c(c) / 2;
}

inline std::optional<long> h_slr(const KnotDescriptor& k, const Rat& c) {
    HValue h = h_total(k);
    if (!h.known()) return std::nullopt;
    return *h.value - h_su(k, c);
}

// ---------------------------------------------------------------------------
// numerical semigroup generated by p and q
// ---------------------------------------------------------------------------
struct GapData {
    std::vector<long> gaps;  // N \ Gamma_{p,q}, sorted
    long frobenius = 0;      // pq - p - q
};

inline GapData semigroup_gaps(long p, long q) {
    if (!(2 <= p && p < q && std::gcd(p, q) == 1)) throw error("semigroup_gaps: need coprime 2 <= p < q");
    long n = p * q;
    std::vector<char> rep(n, 0);
    for (long a = 0; a * p < n; ++a)
        for (long b = 0; a * p + b * q < n; ++b) rep[a * p + b * q] = 1;
    GapData out;
    for (long i = 0; i < n; ++i)
        if (!rep[i]) out.gaps.push_back(i);
    out.frobenius = p * q - p - q;
    if (static_cast<long>(out.gaps.size()) != (p - 1) * (q - 1) / 2 || out.gaps.back() != out.frobenius)
        throw error("semigroup_gaps: sieve inconsistency");
    return out;
}

// htilde(T(p,q)) = sum over gaps i of t^i + t^-i
inline Laurent htilde_torus(long p, long q) {
    Laurent out;
    for (long i : semigroup_gaps(p, q).gaps) {
        out.add(i, Rat(1));
        out.add(-i, Rat(1));
    }
    return out;
}

// Enhanced Riley Conjecture closed form: -(t^sigma - t^-sigma)/(t - t^-1)
inline Laurent htilde_two_bridge_conjectured(long sigma) {
    if (sigma % 2 != 0) throw error("htilde_two_bridge_conjectured: sigma must be even");
    if (sigma == 0) return Laurent();
    Laurent num;
    num.set(sigma, Rat(-1));
    num.set(-sigma, Rat(1));
    Laurent den;
    den.set(1, Rat(1));
    den.set(-1, Rat(-1));
    return div_exact(num, den);
}

inline long htilde_degree(const Laurent& h) {
    if (h.is_zero()) return 0;
    return std::max(std::labs(h.max_exp()), std::labs(h.min_exp()));
}

// ---------------------------------------------------------------------------
// Milnor torsion tau_M = Delta / (1 - t) as a power series
// ---------------------------------------------------------------------------
struct MilnorTorsion {
    std::vector<Int> coeffs;  // a_0 .. a_N
    bool good = false;        // all a_n in {0,1}
    std::vector<long> gaps;   // { n < 2g : a_n = 0 }
    long two_g = 0;
    bool symmetric_ok = false;  // a_n = 1 - a_{2g-1-n} for n < 2g (when good)
};

inline MilnorTorsion milnor_torsion(const Laurent& delta, long N) {
    Laurent q = normalize_symmetric(delta);
    auto ord = q.ordinary_coeffs();  // degree 2g ordinary polynomial
    long two_g = static_cast<long>(ord.size()) - 1;
    MilnorTorsion out;
    out.two_g = two_g;
    long upto = std::max(N, two_g);
    Rat acc(0);
    out.good = true;
    for (long n = 0; n <= upto; ++n) {
        if (n < static_cast<long>(ord.size())) acc += ord[n];
        if (acc.get_den() != 1) throw error("milnor_torsion: non-integer coefficient");
        Int a = acc.get_num();
        if (n <= N) out.coeffs.push_back(a);
        if (a != 0 && a != 1) out.good = false;
        if (n < two_g && a == 0) out.gaps.push_back(n);
    }
    if (out.good && two_g > 0) {
        out.symmetric_ok = true;
        std::vector<Int> full;
        Rat acc2(0);
        for (long n = 0; n < two_g; ++n) {
            acc2 += ord[n];
            full.push_back(acc2.get_num());
        }
        for (long n = 0; n < two_g; ++n)
            if (full[n] != 1 - full[two_g - 1 - n]) out.symmetric_ok = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// conjecture verdicts
// ---------------------------------------------------------------------------
struct LSpaceVerdict {
    std::optional<bool> count_matches;  // (1) h = r/2, when h known
    bool heights_distinct = false;      // (2') unsigned proxy
    bool heights_in_gaps = false;       // (3') every height in a tau_M gap
    long r = 0;
    double gap_fill_ratio = 0;
};

inline LSpaceVerdict lspace_conjecture_check(const Laurent& delta, const std::vector<long>& heights,
                                             const std::optional<long>& h) {
    for (long x : heights)
        if (x < 0) throw error("lspace_conjecture_check: heights must be nonnegative");
    LSpaceVerdict v;
    v.r = count_unit_circle_roots(delta);
    if (h.has_value()) v.count_matches = (2 * *h == v.r);
    std::set<long> hs(heights.begin(), heights.end());
    v.heights_distinct = hs.size() == heights.size();
    MilnorTorsion tm = milnor_torsion(delta, 0);
    std::set<long> gaps(tm.gaps.begin(), tm.gaps.end());
    v.heights_in_gaps = true;
    long filled = 0;
    for (long x : heights) {
        if (gaps.count(x))
            ++filled;
        else
            v.heights_in_gaps = false;
    }
    v.gap_fill_ratio = gaps.empty() ? 0.0 : static_cast<double>(filled) / static_cast<double>(gaps.size());
    return v;
}

struct ParityVerdict {
    bool h_vs_sigma = false;    // h = sigma/2 mod 2
    bool sigma_vs_det = false;  // sigma/2 = (det-1)/2 mod 2 (Murasugi; must always hold)
    bool h_vs_det = false;
};

inline ParityVerdict parity_check(long h, int sigma, const Int& det) {
    auto mod2 = [](const Int& x) {
        Int r = x % 2;
        return r < 0 ? r + 2 : r;
    };
    ParityVerdict v;
    v.h_vs_sigma = mod2(Int(h)) == mod2(Int(sigma / 2));
    v.sigma_vs_det = mod2(Int(sigma / 2)) == mod2((det - 1) / 2);
    v.h_vs_det = mod2(Int(h)) == mod2((det - 1) / 2);
    return v;
}

// deg htilde <= 2g - 1, strict for hyperbolic fibered knots
inline bool milnor_wood_degree_check(const Laurent& htilde, long g, bool hyperbolic_fibered) {
    if (htilde.is_zero()) return true;
    long d = htilde_degree(htilde);
    return hyperbolic_fibered ? d < 2 * g - 1 : d <= 2 * g - 1;
}

}  // namespace krl
