#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace krl {

using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_exhausted : error {
    using error::error;
};

inline int sgn(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sgn(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = e > 0 ? e : -e;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (sgn(b) == 0) throw error("pow_rat: 0^negative");
        r = 1 / r;
    }
    return r;
}

inline size_t bit_length(const Int& a) { return mpz_sizeinbase(a.get_mpz_t(), 2); }

// floor(sqrt(a)) for a >= 0
inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Rat rat_abs(const Rat& a) { return sgn(a) < 0 ? Rat(-a) : a; }

inline std::string rat_str(const Rat& a) { return a.get_str(); }

}  // namespace krl
