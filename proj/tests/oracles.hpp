#pragma once

// Brute-force reference implementations used to pin expected values.  These
// deliberately avoid the library's code paths: valuations by repeated
// division, lifted representatives by residue-class scan, box maxima by
// exact enumeration.

#include <optional>
#include <vector>

#include "facsunit/arith.hpp"

namespace oracles {

using facsunit::Int;

/// nu_p by repeated division.
inline unsigned long nu_by_division(Int x, const Int& p) {
    unsigned long e = 0;
    x = abs(x);
    while (x != 0 && x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

inline Int value_at(unsigned long n, const Int& t) { return Int(n) * facsunit::pow_ui(2, n) + 1 - t; }

/// All n in [0, p(p-1)) with p | n 2^n + 1 - t, by direct evaluation.
inline std::vector<unsigned long> residues_by_scan(unsigned long p, const Int& t) {
    std::vector<unsigned long> out;
    for (unsigned long n = 0; n < p * (p - 1); ++n)
        if (value_at(n, t) % p == 0) out.push_back(n);
    return out;
}

/// The unique n in [0, (p-1)p^k) with n = n0 (mod p(p-1)) and
/// p^k | n 2^n + 1 - t, found by stepping through the residue class.
/// Works modulo p^k so the giant 2^n never materializes.
inline std::optional<unsigned long> min_lift_by_scan(unsigned long p, const Int& t, unsigned long n0,
                                                     unsigned k) {
    Int pk = facsunit::pow_ui(p, k);
    Int t_red = facsunit::mod_floor(t, pk);
    Int range = Int(p - 1) * facsunit::pow_ui(p, k);
    Int step_pow = facsunit::powmod(2, p * (p - 1), pk);  // 2^{p(p-1)} mod p^k
    Int two_n = facsunit::powmod(2, n0, pk);
    for (Int n(n0); n < range; n += p * (p - 1)) {
        Int v = facsunit::mod_floor(facsunit::mod_floor(n, pk) * two_n + 1 - t_red, pk);
        if (v == 0) return n.get_ui();
        two_n = facsunit::mod_floor(two_n * step_pow, pk);
    }
    return std::nullopt;
}

/// max nu_p(n 2^n + 1 - t) over 0 <= n < limit, skipping exact zeros.
inline unsigned long max_nu_below_by_scan(unsigned long p, const Int& t, unsigned long limit) {
    unsigned long best = 0;
    for (unsigned long n = 0; n < limit; ++n) {
        Int v = value_at(n, t);
        if (v == 0) continue;
        best = std::max(best, nu_by_division(v, Int(p)));
    }
    return best;
}

struct BoxMax {
    unsigned long max_val = 0;
    bool any = false;
    std::vector<unsigned> argmax_exps;
    std::size_t argmax_shift = 0;
    std::uint64_t skipped = 0;
    std::uint64_t collapsed = 0;
    std::uint64_t scanned = 0;
};

/// Exact max* of nu_2 over a small box, enumerating every cell with full
/// precision.  Tie-break matches the scanner: least (exponents, shift).
/// Shifts with base offset -1 collapse at the s = 1 cell and are skipped
/// there, matching the scanner's convention.
inline BoxMax box_max_nu2_exact(const std::vector<unsigned long>& primes,
                                const std::vector<unsigned>& caps, const std::vector<Int>& shifts,
                                const std::vector<long>& base_offsets = {}) {
    BoxMax out;
    std::vector<unsigned> exps(primes.size(), 0);
    auto rec = [&](auto&& self, std::size_t dim, const Int& prefix) -> void {
        if (dim == primes.size()) {
            for (std::size_t j = 0; j < shifts.size(); ++j) {
                if (prefix == 1 && j < base_offsets.size() && base_offsets[j] == -1) {
                    ++out.collapsed;
                    continue;
                }
                Int x = prefix + shifts[j];
                if (x == 0) {
                    ++out.skipped;
                    continue;
                }
                ++out.scanned;
                unsigned long v = nu_by_division(x, Int(2));
                if (!out.any || v > out.max_val ||
                    (v == out.max_val &&
                     (exps < out.argmax_exps || (exps == out.argmax_exps && j < out.argmax_shift)))) {
                    out.any = true;
                    out.max_val = v;
                    out.argmax_exps = exps;
                    out.argmax_shift = j;
                }
            }
            return;
        }
        Int value = prefix;
        for (unsigned e = 0; e <= caps[dim]; ++e) {
            exps[dim] = e;
            self(self, dim + 1, value);
            value *= primes[dim];
        }
    };
    rec(rec, 0, Int(1));
    return out;
}

}  // namespace oracles
