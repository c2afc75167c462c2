#pragma once

#include <string>
#include <utility>
#include <vector>

#include "facsunit/arith.hpp"
#include "facsunit/errors.hpp"

namespace facsunit {

// The lifting machinery certifies upper bounds on nu_p(n 2^n + 1 - t).
// Writing n = n0 + (p-1)p l1 + (p-1)p^2 l2 + ... with digits l_j in
// [0, p-1], each digit is forced by the divisibility n 2^n + 1 - t = 0
// (mod p^{j+1}): since (p-1)p^j = phi(p^{j+1}), the exponent only matters
// modulo phi(p^{j+1}) and the stage-j congruence is linear in l_j.

struct LiftTask {
    unsigned long p = 3;  // odd prime
    Int t = 0;            // target shift; t = 0 is n 2^n + 1, t = 2 is n 2^n - 1
    unsigned long n0 = 0; // seed residue in [0, p(p-1))
    unsigned k = 1;       // certificate depth: digits l_1..l_{k-1}, nu_p >= k
};

struct LiftResult {
    unsigned long p = 3;
    Int t = 0;
    unsigned long n0 = 0;
    unsigned k = 1;
    std::vector<unsigned> digits;  // l_1 .. l_{k-1}
    Int n_final;                   // n_{k-1}, least nonnegative in its class mod (p-1)p^k

    /// Recheck every stage divisibility p^j | n_{j-1} 2^{n_{j-1}} + 1 - t
    /// from scratch.  Used by tests and the JSON audit path.
    bool verify() const;
};

namespace detail {

inline void check_odd_prime(unsigned long p) {
    if (p % 2 == 0) raise(errc::even_prime, "p = " + std::to_string(p) + ": lifting needs 2 invertible mod p");
    if (!is_prime_small(p)) raise(errc::parameter_out_of_range, "p = " + std::to_string(p) + " is not prime");
}

/// n 2^n + 1 - t mod m, with the exponent reduced mod phi when phi > 0.
inline Int value_mod(const Int& n, const Int& t, const Int& m, const Int& phi) {
    Int e = phi > 0 ? mod_floor(n, phi) : n;
    Int two_pow = powmod(2, e, m);
    return mod_floor(mod_floor(n, m) * two_pow + 1 - mod_floor(t, m), m);
}

/// Exact test for n 2^n + 1 - t == 0 without materializing n 2^n when it
/// is obviously larger than |t|.
inline bool value_is_zero(const Int& n, const Int& t) {
    if (n < 0) return false;
    size_t tbits = mpz_sizeinbase(t.get_mpz_t(), 2);
    if (n > static_cast<long>(tbits) + 64) return false;
    unsigned long nn = n.get_ui();
    return Int(nn) * pow_ui(2, nn) + 1 == t;
}

/// Incremental digit-lifting state for one residue branch.
class Lifter {
public:
    Lifter(unsigned long p, Int t, unsigned long n0) : p_(p), t_(std::move(t)), n_(n0), n0_(n0), pj_(p) {
        if (n0 >= p * (p - 1))
            raise(errc::parameter_out_of_range, "n0 must lie in [0, p(p-1))");
        if (value_mod(n_, t_, Int(p_), Int(p_ - 1)) != 0)
            raise(errc::bad_seed, "p does not divide n0 2^n0 + 1 - t at n0 = " + std::to_string(n0));
    }

    /// Extend the digit chain until depth k (digits l_1..l_{k-1} known).
    void extend_to(unsigned k) {
        while (depth() < k) step();
    }

    unsigned depth() const { return static_cast<unsigned>(digits_.size()) + 1; }
    const Int& representative() const { return n_; }
    const std::vector<unsigned>& digits() const { return digits_; }

    /// Whether the branch is pinned on an exact zero of n 2^n + 1 - t, in
    /// which case every further digit is 0 and the representative stalls.
    bool at_exact_zero() const { return value_is_zero(n_, t_); }

private:
    void step() {
        unsigned j = depth();  // computing digit l_j
        Int pj1 = pj_ * p_;
        Int phi = (p_ - 1) * pj_;
        Int v = value_mod(n_, t_, pj1, phi);
        if (mod_floor(v, pj_) != 0)
            raise(errc::internal_certificate_failure,
                  "stage " + std::to_string(j) + " divisibility lost (p = " + std::to_string(p_) + ")");
        Int w = v / pj_;  // in [0, p)
        // l_j = 2^{-n_{j-1}} * (value / p^j) mod p, inverse via Fermat.
        Int inv2n = powmod(2, Int(p_ - 1) - mod_floor(n_, Int(p_ - 1)), Int(p_));
        Int ell = mod_floor(inv2n * w, Int(p_));
        unsigned digit = static_cast<unsigned>(ell.get_ui());
        digits_.push_back(digit);
        n_ += (p_ - 1) * pj_ * digit;
        pj_ = pj1;
    }

    unsigned long p_;
    Int t_;
    Int n_;
    unsigned long n0_;
    Int pj_;  // p^depth
    std::vector<unsigned> digits_;
};

}  // namespace detail

/// The p-1 seed residues n0 in [0, p(p-1)) with p | n0 2^n0 + 1 - t,
/// found by direct scan; the count p-1 is a theorem and gets asserted.
inline std::vector<unsigned long> find_residues(unsigned long p, const Int& t) {
    detail::check_odd_prime(p);
    std::vector<unsigned long> out;
    unsigned long t_mod = mpz_fdiv_ui(t.get_mpz_t(), p);
    unsigned long pw = 1 % p;  // 2^n mod p, incrementally
    for (unsigned long n = 0; n < p * (p - 1); ++n) {
        if ((n % p * pw + 1 + (p - t_mod)) % p == 0) out.push_back(n);
        pw = pw * 2 % p;
    }
    if (out.size() != p - 1)
        raise(errc::internal_certificate_failure,
              "residue count " + std::to_string(out.size()) + " != p - 1 for p = " + std::to_string(p));
    return out;
}

/// Run the digit recursion to depth task.k.  Every stage divisibility is
/// checked before the next digit is emitted, and the final representative
/// is recertified at p^k.
inline LiftResult lift(const LiftTask& task) {
    detail::check_odd_prime(task.p);
    if (task.k < 1) raise(errc::parameter_out_of_range, "depth k must be >= 1");
    detail::Lifter lifter(task.p, task.t, task.n0);
    lifter.extend_to(task.k);

    LiftResult res;
    res.p = task.p;
    res.t = task.t;
    res.n0 = task.n0;
    res.k = task.k;
    res.digits = lifter.digits();
    res.n_final = lifter.representative();

    Int pk = pow_ui(task.p, task.k);
    if (detail::value_mod(res.n_final, task.t, pk, (task.p - 1) * pow_ui(task.p, task.k - 1)) != 0)
        raise(task.k == 1 ? errc::bad_seed : errc::internal_certificate_failure,
              "final certificate p^k | n 2^n + 1 - t failed");
    return res;
}

inline bool LiftResult::verify() const {
    Int n_cur(n0);
    Int pj(p);
    // Stage j certificate on the prefix n_{j-1}, then apply digit l_j.
    for (unsigned j = 1; j <= k; ++j) {
        if (detail::value_mod(n_cur, t, pj, Int(p - 1) * (pj / p)) != 0) return false;
        if (j <= digits.size()) {
            if (digits[j - 1] >= p) return false;
            n_cur += (p - 1) * pj * digits[j - 1];
        }
        pj *= p;
    }
    return n_cur == n_final && n_final >= 0 && n_final < Int(p - 1) * pow_ui(p, k);
}

struct ValuationBound {
    unsigned long p = 3;
    Int t = 0;
    Int limit;
    unsigned k_max = 0;
    // One (n0, representative at depth k_max) pair per residue branch.
    std::vector<std::pair<unsigned long, Int>> witnesses;
};

/// Least depth k such that every residue branch's representative at depth k
/// is >= limit.  Consequence: every n < limit with n 2^n + 1 - t != 0 has
/// nu_p(n 2^n + 1 - t) < k, since nu_p >= k forces n = rep (mod (p-1)p^k)
/// and rep is the least nonnegative member of that class.
///
/// A branch whose representative is an exact zero of n 2^n + 1 - t never
/// grows; the max* convention excludes that single n, so the branch counts
/// as covered once rep + (p-1)p^k >= limit.
inline ValuationBound max_valuation_below(unsigned long p, const Int& t, const Int& limit) {
    if (limit < 1) raise(errc::parameter_out_of_range, "limit must be >= 1");
    auto residues = find_residues(p, t);

    ValuationBound out;
    out.p = p;
    out.t = t;
    out.limit = limit;

    std::vector<detail::Lifter> branches;
    branches.reserve(residues.size());
    for (unsigned long n0 : residues) branches.emplace_back(p, t, n0);

    unsigned k = 1;
    for (auto& br : branches) {
        while (true) {
            br.extend_to(k);
            Int effective = br.representative();
            if (br.at_exact_zero()) effective += Int(p - 1) * pow_ui(p, br.depth());
            if (effective >= limit) break;
            ++k;
        }
    }
    // k now satisfies every branch; align all branches to depth k.
    for (size_t i = 0; i < branches.size(); ++i) {
        branches[i].extend_to(k);
        out.witnesses.emplace_back(residues[i], branches[i].representative());
    }
    out.k_max = k;
    return out;
}

}  // namespace facsunit
