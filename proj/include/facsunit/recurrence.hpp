#pragma once

#include <cstdlib>
#include <numeric>
#include <string>

#include "facsunit/arith.hpp"
#include "facsunit/errors.hpp"

namespace facsunit {

/// Order-3 integer recurrence u_{n+3} = r1 u_{n+2} + r2 u_{n+1} + r3 u_n
/// whose characteristic polynomial X^3 - r1 X^2 - r2 X - r3 is required to
/// factor as (X - alpha)^2 (X - beta) with integer roots.
struct RecurrenceSpec {
    long r1 = 0, r2 = 0, r3 = 0;
    long u0 = 0, u1 = 0, u2 = 0;

    // n 2^n + 1 and n 2^n - 1 share the characteristic polynomial
    // (X-2)^2 (X-1) = X^3 - 5X^2 + 8X - 4.
    static RecurrenceSpec cullen() { return {5, -8, 4, 1, 3, 9}; }
    static RecurrenceSpec woodall() { return {5, -8, 4, -1, 1, 7}; }
};

/// Y = max absolute value over the six defining integers.
inline long spec_height(const RecurrenceSpec& s) {
    long y = 0;
    for (long v : {s.r1, s.r2, s.r3, s.u0, s.u1, s.u2}) y = std::max(y, std::labs(v));
    return y;
}

/// Exact closed form u_n = (a n + c) alpha^n + b beta^n.  The rationals are
/// kept both as the literal Cramer data (delta_i over delta, unreduced) and
/// in canonical form.
struct ClosedForm {
    long alpha = 0, beta = 0;
    Int delta, delta1, delta2, delta3;
    Rat a, c, b;

    Int eval(unsigned long n) const {
        Rat value = (a * static_cast<long>(n) + c) * pow_int(Int(alpha), n) + b * pow_int(Int(beta), n);
        value.canonicalize();
        if (value.get_den() != 1)
            raise(errc::internal_certificate_failure, "closed form evaluated to a non-integer");
        return value.get_num();
    }
};

/// Extract the double root and solve the 3x3 Cramer system for (a, c, b).
///
/// Root extraction works over the integers: the degree-1 factor of
/// gcd(f, f') is (2 r1^2 + 6 r2) X + (r1 r2 + 9 r3), whose leading
/// coefficient equals 2 (alpha - beta)^2, so a vanishing lead means the
/// polynomial has no simple double root.  The candidate root is then
/// verified against all three Viete identities exactly.
inline ClosedForm derive_closed_form(const RecurrenceSpec& s) {
    long g = std::gcd(std::gcd(std::labs(s.r1), std::labs(s.r2)), std::labs(s.r3));
    if (g != 1)
        raise(errc::not_coprime, "gcd(r1, r2, r3) = " + std::to_string(g));

    Int r1(s.r1), r2(s.r2), r3(s.r3);
    Int lead = 2 * r1 * r1 + 6 * r2;
    Int neg_const = -(r1 * r2 + 9 * r3);
    if (lead == 0 || neg_const % lead != 0)
        raise(errc::no_double_root, "characteristic polynomial has no repeated integer root");
    Int alpha_z = neg_const / lead;
    Int beta_z = r1 - 2 * alpha_z;

    // Viete: 2a + b = r1 holds by construction; verify the other two.
    if (alpha_z * alpha_z + 2 * alpha_z * beta_z != -r2 || alpha_z * alpha_z * beta_z != r3)
        raise(errc::no_double_root, "Viete identities fail for the candidate roots");

    if (alpha_z == 0 || beta_z == 0) raise(errc::zero_root, "root of the characteristic polynomial is 0");
    if (abs(alpha_z) == abs(beta_z))
        raise(errc::degenerate_ratio, "|alpha| = |beta| = " + Int(abs(alpha_z)).get_str());

    Int root_gcd = gcd(alpha_z, beta_z);
    if (root_gcd != 1)
        raise(errc::not_coprime, "gcd(alpha, beta) = " + root_gcd.get_str());

    if (spec_height(s) < 3)
        raise(errc::invalid_spec, "height Y < 3 is impossible for a valid double-root recurrence");

    ClosedForm cf;
    cf.alpha = static_cast<long>(alpha_z.get_si());
    cf.beta = static_cast<long>(beta_z.get_si());

    // Cramer system for u_n = (a n + c) alpha^n + b beta^n at n = 0, 1, 2:
    //   | 0       1        1      |       (a)   (u0)
    //   | alpha   alpha    beta   |   x   (c) = (u1)
    //   | 2a^2    alpha^2  beta^2 |       (b)   (u2)
    const Int &A = alpha_z, &B = beta_z;
    Int u0(s.u0), u1(s.u1), u2(s.u2);
    cf.delta = -A * (A - B) * (A - B);
    cf.delta1 = u0 * (A * B * B - A * A * B) - (u1 * B * B - u2 * B) + A * A * u1 - u2 * A;
    cf.delta2 = -u0 * (A * B * B - 2 * A * A * B) + A * u2 - 2 * A * A * u1;
    cf.delta3 = -(A * u2 - 2 * A * A * u1) - u0 * A * A * A;

    cf.a = Rat(cf.delta1, cf.delta);
    cf.c = Rat(cf.delta2, cf.delta);
    cf.b = Rat(cf.delta3, cf.delta);
    cf.a.canonicalize();
    cf.c.canonicalize();
    cf.b.canonicalize();

    if (cf.a == 0)
        raise(errc::zero_linear_coefficient, "a = 0: the initial terms do not involve the double root");

    for (unsigned long n = 0; n < 3; ++n) {
        long expected = n == 0 ? s.u0 : (n == 1 ? s.u1 : s.u2);
        if (cf.eval(n) != expected)
            raise(errc::internal_certificate_failure, "closed form does not reproduce the initial terms");
    }
    return cf;
}

/// u_n by direct integer iteration of the recurrence.
inline Int eval_iter(const RecurrenceSpec& s, unsigned long n) {
    if (n == 0) return Int(s.u0);
    if (n == 1) return Int(s.u1);
    Int a(s.u0), b(s.u1), c(s.u2);
    for (unsigned long i = 3; i <= n; ++i) {
        Int next = s.r1 * c + s.r2 * b + s.r3 * a;
        a = b;
        b = c;
        c = next;
    }
    return c;
}

inline Int eval_closed(const ClosedForm& cf, unsigned long n) { return cf.eval(n); }

// Iteration is the default route (integer-only, allocation friendly); the
// closed form takes over past 10^6 where iterating would be wasteful.
inline Int eval_term(const RecurrenceSpec& s, unsigned long n) {
    if (n <= 1000000UL) return eval_iter(s, n);
    return derive_closed_form(s).eval(n);
}

inline Int eval_term(const ClosedForm& cf, unsigned long n) { return cf.eval(n); }

/// A solution u_n = A m! + B s is degenerate when A m! equals b beta^n or
/// (a n + c) alpha^n; those escape the effective bounds and are flagged.
inline bool is_degenerate(const ClosedForm& cf, const Int& A, unsigned long m, unsigned long n) {
    Rat target(A * factorial(m));
    Rat beta_part = cf.b * pow_int(Int(cf.beta), n);
    Rat poly_part = (cf.a * static_cast<long>(n) + cf.c) * pow_int(Int(cf.alpha), n);
    return target == beta_part || target == poly_part;
}

/// Absolute logarithmic height of a rational, h(p/q) = log max(|p|, |q|)
/// in lowest terms; h(0) = 0 by convention.
inline double rational_height(const Rat& q0) {
    Rat q = q0;
    q.canonicalize();
    if (q == 0) return 0.0;
    Int num = abs(q.get_num());
    const Int& den = q.get_den();
    return log_abs(num >= den ? num : den);
}

}  // namespace facsunit
