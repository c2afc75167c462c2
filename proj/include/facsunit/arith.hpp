#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "facsunit/errors.hpp"

namespace facsunit {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(unsigned long m) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), m);
    return f;
}

inline Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int pow_ui(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

/// base^exp mod m, exp >= 0.
inline Int powmod(const Int& base, const Int& exp, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Least nonnegative residue of x mod m (m > 0).
inline Int mod_floor(const Int& x, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// log |x| for nonzero x, computed from the mantissa/exponent split so it
/// stays accurate for integers far beyond double range.
inline double log_abs(const Int& x) {
    signed long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

inline bool is_prime_small(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

/// Parse a nonnegative integer given either plainly ("123") or in
/// scientific shorthand ("1e58", "2.5e10" is rejected: mantissa must be
/// integral so the value stays exact).
inline Int parse_magnitude(const std::string& s) {
    auto epos = s.find_first_of("eE");
    if (epos == std::string::npos) return Int(s);
    Int mant(s.substr(0, epos));
    long exp10 = std::stol(s.substr(epos + 1));
    if (exp10 < 0) raise(errc::parameter_out_of_range, "negative exponent in magnitude " + s);
    return mant * pow_ui(10, static_cast<unsigned long>(exp10));
}

}  // namespace facsunit
