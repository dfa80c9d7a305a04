#pragma once

#include <gmpxx.h>
#include <string>

namespace disthom {

// Exact arbitrary-precision integer. All linear algebra in this project is
// over Z; intermediate entries in an elimination are unbounded, so no
// fixed-width type is acceptable anywhere on the matrix path.
using Int = mpz_class;

inline int sign_of(const Int& a) { return mpz_sgn(a.get_mpz_t()); }

inline Int abs_of(const Int& a)
{
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Int gcd_of(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm_of(const Int& a, const Int& b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a)
{
    if (sign_of(d) == 0) return sign_of(a) == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient; caller guarantees divisibility.
inline Int exact_div(const Int& a, const Int& d)
{
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

// Quotient of a/b rounded to nearest (ties toward zero), so the remainder
// a - q*b satisfies |rem| <= |b|/2. Keeps entries small during elimination.
inline Int round_div(const Int& a, const Int& b)
{
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int r2 = abs_of(r) * 2;
    if (r2 > abs_of(b)) {
        if ((sign_of(a) < 0) != (sign_of(b) < 0))
            q -= 1;
        else
            q += 1;
    }
    return q;
}

inline bool fits_slong(const Int& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

inline std::string to_string(const Int& a) { return a.get_str(); }

} // namespace disthom
