#pragma once

// Knot descriptors and the derivation of Alexander polynomials and Seifert
// data from each presentation.
//
// Two-bridge knots use the exponent pattern eps_i = (-1)^floor(i*q/p) both
// for the Alexander polynomial (Minkus-style alternating sum) and, in
// riley.hpp, for the Riley word. Seifert matrices for two-bridge knots come
// from plumbing along the all-even continued fraction of p/q_e, where q_e is
// the even representative of +-q mod p. Chirality convention: TwoBridge(3,1)
// is the positive trefoil, sigma = -2.

#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "krl/sturm.hpp"

namespace krl {

struct invalid_descriptor : error {
    using error::error;
};
struct unsupported : error {
    using error::error;
};

// square integer matrix, row-major
struct IMat {
    int n = 0;
    std::vector<Int> a;
    IMat() = default;
    explicit IMat(int size) : n(size), a(size * size, Int(0)) {}
    Int& at(int i, int j) { return a[i * n + j]; }
    const Int& at(int i, int j) const { return a[i * n + j]; }
    IMat transposed() const {
        IMat t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t.at(i, j) = at(j, i);
        return t;
    }
    IMat negated_transpose() const {
        IMat t = transposed();
        for (auto& x : t.a) x = -x;
        return t;
    }
    friend bool operator==(const IMat& x, const IMat& y) { return x.n == y.n && x.a == y.a; }
};

// fraction-free (Bareiss) determinant of an integer matrix
inline Int bareiss_det(IMat m) {
    int n = m.n;
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (sgn(m.at(k, k)) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (sgn(m.at(i, k)) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = v / prev;  // exact by Bareiss
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

// det(V - t V^T) as a Laurent polynomial in t, by interpolation at integer
// points (the determinant has degree <= n in t).
inline Laurent seifert_alexander_raw(const IMat& V) {
    int n = V.n;
    if (n == 0) return Laurent::constant(Rat(1));
    IMat VT = V.transposed();
    std::vector<Rat> xs, ys;
    for (int j = 0; j <= n; ++j) {
        long t = j + 2;  // any n+1 distinct points
        IMat M(n);
        for (int i = 0; i < n * n; ++i) M.a[i] = V.a[i] - Int(t) * VT.a[i];
        xs.push_back(Rat(t));
        ys.push_back(Rat(bareiss_det(M)));
    }
    // Lagrange interpolation
    std::vector<Rat> coef(n + 1, Rat(0));
    for (int j = 0; j <= n; ++j) {
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (int k = 0; k <= n; ++k) {
            if (k == j) continue;
            std::vector<Rat> nb(basis.size() + 1, Rat(0));
            for (size_t i = 0; i < basis.size(); ++i) {
                nb[i + 1] += basis[i];
                nb[i] -= xs[k] * basis[i];
            }
            basis = std::move(nb);
            denom *= xs[j] - xs[k];
        }
        Rat w = ys[j] / denom;
        for (size_t i = 0; i < basis.size(); ++i) coef[i] += w * basis[i];
    }
    Laurent out;
    for (int i = 0; i <= n; ++i) out.add(i, coef[i]);
    return out;
}

// exact signature of the symmetric rational matrix M (dense, with pivoting)
inline int signature_exact(std::vector<std::vector<Rat>> m) {
    int n = static_cast<int>(m.size());
    std::vector<int> live(n);
    std::iota(live.begin(), live.end(), 0);
    int sig = 0;
    while (!live.empty()) {
        int k = static_cast<int>(live.size());
        int piv = -1;
        for (int i = 0; i < k; ++i)
            if (sgn(m[live[i]][live[i]]) != 0) {
                piv = i;
                break;
            }
        if (piv >= 0) {
            int p = live[piv];
            Rat d = m[p][p];
            sig += sgn(d);
            std::vector<int> rest;
            for (int i : live)
                if (i != p) rest.push_back(i);
            for (int i : rest)
                for (int j : rest) m[i][j] -= m[i][p] * m[p][j] / d;
            live = std::move(rest);
            continue;
        }
        // all diagonal entries zero: find a nonzero off-diagonal pair
        int a = -1, b = -1;
        for (int i = 0; i < k && a < 0; ++i)
            for (int j = i + 1; j < k; ++j)
                if (sgn(m[live[i]][live[j]]) != 0) {
                    a = live[i];
                    b = live[j];
                    break;
                }
        if (a < 0) break;  // zero block
        // hyperbolic pair contributes +1 -1; eliminate both rows/columns
        Rat h = m[a][b];
        std::vector<int> rest;
        for (int i : live)
            if (i != a && i != b) rest.push_back(i);
        for (int i : rest)
            for (int j : rest)
                m[i][j] -= (m[i][a] * m[b][j] + m[i][b] * m[a][j]) / h;
        live = std::move(rest);
    }
    return sig;
}

// signature of V + V^T for an integer matrix V
inline int seifert_signature_at_minus1(const IMat& V) {
    int n = V.n;
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rat(V.at(i, j) + V.at(j, i));
    return signature_exact(std::move(m));
}

// ---------------------------------------------------------------------------
// presentations
// ---------------------------------------------------------------------------
enum class KnotKind { Torus, TwoBridge, Seifert, Raw };

struct KnotDescriptor {
    KnotKind kind = KnotKind::Raw;
    long p = 0, q = 0;  // torus / two-bridge parameters
    IMat V;             // Seifert presentation
    Laurent delta;      // raw presentation
    std::set<std::string> flags;
    std::string name;

    bool mirrored() const { return flags.count("mirror_marker") > 0; }

    static KnotDescriptor torus(long p, long q) {
        if (!(2 <= p && p < q && std::gcd(p, q) == 1)) throw invalid_descriptor("torus needs 2 <= p < q coprime");
        KnotDescriptor k;
        k.kind = KnotKind::Torus;
        k.p = p;
        k.q = q;
        return k;
    }
    static KnotDescriptor two_bridge(long p, long q) {
        if (!(p % 2 == 1 && p >= 3 && 0 < q && q < p && std::gcd(p, q) == 1))
            throw invalid_descriptor("two_bridge needs p odd >= 3, 0 < q < p, coprime");
        KnotDescriptor k;
        k.kind = KnotKind::TwoBridge;
        k.p = p;
        k.q = q;
        k.flags.insert("alternating");
        k.flags.insert("small");
        return k;
    }
    static KnotDescriptor seifert(IMat V) {
        if (V.n % 2 != 0) throw invalid_descriptor("Seifert matrix must be 2g x 2g");
        IMat D(V.n);
        for (int i = 0; i < V.n; ++i)
            for (int j = 0; j < V.n; ++j) D.at(i, j) = V.at(i, j) - V.at(j, i);
        Int d = bareiss_det(D);
        if (d != 1 && d != -1) throw invalid_descriptor("det(V - V^T) must be +-1");
        KnotDescriptor k;
        k.kind = KnotKind::Seifert;
        k.V = std::move(V);
        return k;
    }
    static KnotDescriptor raw(Laurent delta) {
        KnotDescriptor k;
        k.kind = KnotKind::Raw;
        k.delta = std::move(delta);
        return k;
    }
};

inline KnotDescriptor mirror(KnotDescriptor k) {
    if (k.mirrored())
        k.flags.erase("mirror_marker");
    else
        k.flags.insert("mirror_marker");
    return k;
}

// exponent pattern eps_i = (-1)^floor(i q / p), i = 1..p-1. The pattern is a
// function of q mod 2p and the presentation it encodes needs q odd, so an
// even q is replaced by q + p (the same knot, same chirality).
inline std::vector<int> two_bridge_epsilons(long p, long q) {
    long qo = (q % 2 != 0) ? q : q + p;
    std::vector<int> eps;
    eps.reserve(p - 1);
    for (long i = 1; i < p; ++i) eps.push_back((i * qo / p) % 2 == 0 ? 1 : -1);
    return eps;
}

// all-even continued fraction p/q_e = [2b_1, ..., 2b_m], q_e the even
// representative of q mod p in (-p, p)
inline std::vector<long> even_continued_fraction(long p, long q) {
    long qe = (q % 2 == 0) ? q : q - p;
    std::vector<long> bs;
    Rat r = make_rat(p, qe);
    while (true) {
        // nearest even integer 2b to r (never a tie: r is never an odd integer)
        Rat half = r / 2 + make_rat(1, 2);
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
        long b = static_cast<long>(fl.get_si());
        bs.push_back(b);
        Rat rem = r - Rat(2 * b);
        if (sgn(rem) == 0) break;
        r = 1 / rem;
        if (bs.size() > static_cast<size_t>(p) + 2) throw error("even_continued_fraction: runaway");
    }
    if (bs.size() % 2 != 0) throw error("even_continued_fraction: odd length for a knot fraction");
    return bs;
}

// plumbed Seifert matrix from the even continued fraction: upper bidiagonal,
// diagonal (-1)^(i+1) b_i, superdiagonal 1
inline IMat two_bridge_seifert_matrix(long p, long q) {
    auto bs = even_continued_fraction(p, q);
    int m = static_cast<int>(bs.size());
    IMat V(m);
    for (int i = 0; i < m; ++i) {
        V.at(i, i) = (i % 2 == 0) ? Int(bs[i]) : Int(-bs[i]);
        if (i + 1 < m) V.at(i, i + 1) = 1;
    }
    return V;
}

// Seifert matrix where a canonical small model exists (Torus(2,q), TwoBridge,
// explicit Seifert); the mirror marker is applied as V -> -V^T.
inline IMat seifert_matrix(const KnotDescriptor& k) {
    IMat V;
    switch (k.kind) {
        case KnotKind::Torus:
            if (k.p != 2) throw unsupported("no canonical Seifert matrix for Torus(p>=3, q); use the Litherland path");
            V = two_bridge_seifert_matrix(k.q, 1);
            break;
        case KnotKind::TwoBridge:
            V = two_bridge_seifert_matrix(k.p, k.q);
            break;
        case KnotKind::Seifert:
            V = k.V;
            break;
        case KnotKind::Raw:
            throw unsupported("raw presentation carries no Seifert matrix");
    }
    return k.mirrored() ? V.negated_transpose() : V;
}

inline Laurent torus_alexander(long p, long q) {
    // (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))
    auto cyc = [](long n) {
        Laurent r;
        r.set(n, Rat(1));
        r.add(0, Rat(-1));
        return r;
    };
    Laurent num = cyc(p * q) * cyc(1);
    return div_exact(div_exact(num, cyc(p)), cyc(q));
}

inline Laurent two_bridge_alexander(long p, long q) {
    auto eps = two_bridge_epsilons(p, q);
    Laurent sum;
    long e = 0;
    sum.add(0, Rat(1));
    for (long k = 1; k < p; ++k) {
        e += eps[k - 1];
        sum.add(e, Rat(k % 2 == 0 ? 1 : -1));
    }
    return sum;
}

// palindromic, q(1) = 1 normalized Alexander polynomial
inline Laurent alexander(const KnotDescriptor& k) {
    Laurent raw;
    switch (k.kind) {
        case KnotKind::Torus:
            raw = torus_alexander(k.p, k.q);
            break;
        case KnotKind::TwoBridge:
            raw = two_bridge_alexander(k.p, k.q);
            break;
        case KnotKind::Seifert:
            raw = seifert_alexander_raw(k.V);
            break;
        case KnotKind::Raw:
            raw = k.delta;
            break;
    }
    return normalize_symmetric(raw);
}

// |Delta_K(-1)|, a positive odd integer
inline Int determinant(const KnotDescriptor& k) {
    Rat v = alexander(k).eval(Rat(-1));
    Int n = v.get_num();
    if (v.get_den() != 1) throw error("determinant: non-integer Delta(-1)");
    if (sgn(n) < 0) n = -n;
    return n;
}

// sigma(K) = sigma_K(-1) where a Seifert model exists
inline int signature_at_minus1(const KnotDescriptor& k) {
    IMat V = seifert_matrix(k);
    return seifert_signature_at_minus1(V);
}

// ---------------------------------------------------------------------------
// canonical 2-bridge enumeration: (p, q) modulo q ~ +-q^{+-1} mod p
// ---------------------------------------------------------------------------
inline long mod_inverse(long q, long p) {
    long t = 0, nt = 1, r = p, nr = q;
    while (nr != 0) {
        long c = r / nr;
        long tmp = t - c * nt;
        t = nt;
        nt = tmp;
        tmp = r - c * nr;
        r = nr;
        nr = tmp;
    }
    return ((t % p) + p) % p;
}

inline long canonical_two_bridge_q(long p, long q) {
    long qi = mod_inverse(q, p);
    return std::min(std::min(q, p - q), std::min(qi, p - qi));
}

inline std::vector<std::pair<long, long>> canonical_two_bridge_fractions(long p_max) {
    std::vector<std::pair<long, long>> out;
    for (long p = 3; p < p_max; p += 2)
        for (long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            if (canonical_two_bridge_q(p, q) == q) out.emplace_back(p, q);
        }
    return out;
}

}  // namespace krl
