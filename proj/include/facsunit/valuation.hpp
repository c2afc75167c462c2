#pragma once

#include <bit>
#include <cstdint>
#include <optional>

#include "facsunit/arith.hpp"
#include "facsunit/errors.hpp"

namespace facsunit {

/// nu_p(x): the largest e with p^e | x.  Undefined at x = 0 (the scan code
/// skips zero arguments instead of calling this).
inline unsigned long nu(const Int& x, unsigned long p) {
    if (x == 0) raise(errc::zero_argument, "nu_p is undefined at 0");
    if (p < 2) raise(errc::parameter_out_of_range, "p must be a prime >= 2");
    Int cofactor;
    Int pz(p);
    return mpz_remove(cofactor.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
}

/// nu_p(m!) by Legendre's formula, sum of floor(m/p^i), without forming m!.
inline unsigned long nu_factorial(unsigned long m, unsigned long p) {
    if (p < 2) raise(errc::parameter_out_of_range, "p must be a prime >= 2");
    unsigned long total = 0;
    Int pk(p);
    Int mz(m);
    while (pk <= mz) {
        Int q = mz / pk;
        total += q.get_ui();
        pk *= p;
    }
    return total;
}

/// Residue of some integer x modulo 2^width, width in {24, 32, 64}.
struct TruncatedResidue {
    std::uint64_t residue = 0;
    unsigned width = 64;
};

/// Trailing-zero count of a truncated residue.  When the residue is nonzero
/// the answer equals nu_2(x) exactly; a zero residue only certifies
/// nu_2(x) >= width, reported as Saturated (nullopt) so the caller can
/// escalate the width or fall back to exact arithmetic.
inline std::optional<unsigned> nu2_truncated(TruncatedResidue r) {
    if (r.width == 0 || r.width > 64)
        raise(errc::parameter_out_of_range, "residue width must be in [1, 64]");
    std::uint64_t mask = r.width >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << r.width) - 1);
    std::uint64_t v = r.residue & mask;
    if (v == 0) return std::nullopt;  // Saturated
    return static_cast<unsigned>(std::countr_zero(v));
}

}  // namespace facsunit
