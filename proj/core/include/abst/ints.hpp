#ifndef ABST_INTS_HPP
#define ABST_INTS_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace abst {

/// Arbitrary-precision integer used for all exponents, coefficients and counts.
using Int = mpz_class;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_prime(const Int& n) {
    return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// Largest k with p^k | n, for n != 0.
inline unsigned p_adic_valuation(Int n, const Int& p) {
    unsigned k = 0;
    while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++k;
    }
    return k;
}

inline bool fits_ulong(const Int& n) { return n >= 0 && n.fits_ulong_p(); }

inline std::string to_string(const Int& n) { return n.get_str(); }

}  // namespace abst

#endif
