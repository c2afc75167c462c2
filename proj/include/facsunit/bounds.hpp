#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "facsunit/arith.hpp"
#include "facsunit/errors.hpp"
#include "facsunit/recurrence.hpp"

// Evaluators for the explicit constants of the effective theory: the e^{12X}
// endpoint, the zero/lower-bound lemmas, the linear-forms-in-logarithms
// bounds (archimedean and p-adic), and the x/(log x)^s inversion that turns
// implicit inequalities into explicit ones.  All logarithms are natural.

namespace facsunit {

struct XYResult {
    long X = 0;
    long Y = 0;
};

/// X = max{|u_i|, |r_i|, p_k, K, 11}; Y = max{|r_i|, |u_i|}.
inline XYResult compute_XY(const RecurrenceSpec& s, unsigned long p_k, unsigned long K) {
    XYResult r;
    r.Y = spec_height(s);
    r.X = std::max({r.Y, static_cast<long>(p_k), static_cast<long>(K), 11L});
    return r;
}

struct EndpointBound {
    double log_bound = 0;      // natural log of the bound, = 12 X
    unsigned exponent10 = 0;   // least d with 10^d > e^{12X}
    Int decimal_threshold;     // 10^d
};

inline EndpointBound endpoint_bound(long X) {
    if (X < 11) raise(errc::parameter_out_of_range, "X >= 11 by definition");
    EndpointBound out;
    out.log_bound = 12.0 * static_cast<double>(X);
    const double ln10 = std::log(10.0);
    auto d = static_cast<unsigned long>(std::floor(out.log_bound / ln10)) + 1;
    // Guard the float division against straddling an integer boundary.
    while (static_cast<double>(d) * ln10 <= out.log_bound) ++d;
    while (d > 1 && static_cast<double>(d - 1) * ln10 > out.log_bound) --d;
    out.exponent10 = static_cast<unsigned>(d);
    out.decimal_threshold = pow_ui(10, d);
    return out;
}

/// The three lemma-level bounds at height Y, prime p and candidate size n:
///   zero_bound        n < 39 Y log Y whenever u_n = 0
///   lower_beta_log    log |u_n| > n log|beta| - log(2 Y^3)   (|beta| > |alpha|)
///   lower_alpha_log   log |u_n| > log n + n log|alpha| - log(6 Y^3)
///   nu_upper          nu_p(u_n) <= 1.2e12 (p / log p)(log p + log Y) log^2 n
/// The root magnitudes default to 2, the smallest value a nondegenerate
/// dominant root can have, which is how the generic chains use them.
inline std::map<std::string, double> lemma_bounds(long Y, unsigned long p, double n,
                                                  double alpha_abs = 2.0, double beta_abs = 2.0) {
    if (Y < 3) raise(errc::domain_error, "Y >= 3 for every valid spec");
    if (n <= 1.0) raise(errc::parameter_out_of_range, "n must exceed 1");
    double lnY = std::log(static_cast<double>(Y));
    double lnp = std::log(static_cast<double>(p));
    double lnn = std::log(n);
    double y3 = 3.0 * lnY;
    std::map<std::string, double> out;
    out["zero_bound"] = 39.0 * static_cast<double>(Y) * lnY;
    out["lower_beta_log"] = n * std::log(beta_abs) - (std::log(2.0) + y3);
    out["lower_alpha_log"] = lnn + n * std::log(alpha_abs) - (std::log(6.0) + y3);
    out["nu_upper"] = 1.2e12 * (static_cast<double>(p) / lnp) * (lnp + lnY) * lnn * lnn;
    return out;
}

/// From T > x / (log x)^s conclude x < 2^s T (log T)^s; valid once
/// T > (4 s^2)^s.
inline double invert_log_bound(double T, unsigned s) {
    if (s < 1) raise(errc::parameter_out_of_range, "s >= 1");
    double hypothesis = std::pow(4.0 * s * s, static_cast<double>(s));
    if (T <= hypothesis)
        raise(errc::hypothesis_violated,
              "T = " + std::to_string(T) + " <= (4 s^2)^s = " + std::to_string(hypothesis));
    return std::pow(2.0, static_cast<double>(s)) * T * std::pow(std::log(T), static_cast<double>(s));
}

/// Archimedean lower bound: log|Lambda| > -1.4 * 30^{l+3} l^{4.5} D^2 *
/// A_1...A_l * log(eD) log(eB*).
inline double matveev_log_lower(unsigned l, unsigned D, std::span<const double> A, double B_star) {
    if (l < 1 || D < 1 || A.size() != l)
        raise(errc::parameter_out_of_range, "need l >= 1, D >= 1 and exactly l height terms");
    if (B_star < 3.0) raise(errc::parameter_out_of_range, "B* >= 3 by definition");
    double omega = 1.0;
    for (double a : A) {
        if (a < 0.16) raise(errc::parameter_out_of_range, "each A_j must be >= 0.16");
        omega *= a;
    }
    const double e = std::exp(1.0);
    return -1.4 * std::pow(30.0, static_cast<double>(l) + 3.0) * std::pow(static_cast<double>(l), 4.5) *
           static_cast<double>(D) * static_cast<double>(D) * omega * std::log(e * D) * std::log(e * B_star);
}

/// p-adic upper bound: nu_pi(Lambda) <= 19 (20 sqrt(l+1) D)^{2(l+1)}
/// e_pi^{l-1} (p^{f_pi} / (f_pi log p)^2) log(e^5 l D) H_1...H_l log B*.
inline double yu_valuation_upper(unsigned l, unsigned D, unsigned long p, unsigned e_pi, unsigned f_pi,
                                 std::span<const double> H, double B_star) {
    if (l < 1 || D < 1 || e_pi < 1 || f_pi < 1 || H.size() != l)
        raise(errc::parameter_out_of_range, "need l, D, e_pi, f_pi >= 1 and exactly l height terms");
    if (B_star < 3.0) raise(errc::parameter_out_of_range, "B* >= 3 by definition");
    double lnp = std::log(static_cast<double>(p));
    double prodH = 1.0;
    for (double h : H) {
        if (h < lnp) raise(errc::parameter_out_of_range, "each H_j must be >= log p");
        prodH *= h;
    }
    double base = 20.0 * std::sqrt(static_cast<double>(l) + 1.0) * static_cast<double>(D);
    double pf = std::pow(static_cast<double>(p), static_cast<double>(f_pi));
    double denom = static_cast<double>(f_pi) * lnp;
    return 19.0 * std::pow(base, 2.0 * (l + 1.0)) * std::pow(static_cast<double>(e_pi), static_cast<double>(l) - 1.0) *
           (pf / (denom * denom)) * std::log(std::exp(5.0) * l * D) * prodH * std::log(B_star);
}

struct PrimePiResult {
    unsigned long pi = 0;  // exact prime count by sieve
    double pi_upper = 0;   // 1.25 X / log X
    double m_log = 0;      // log M(X) = pi(X) log log X
};

inline PrimePiResult prime_pi_and_M(unsigned long X) {
    if (X < 2) raise(errc::parameter_out_of_range, "X >= 2");
    PrimePiResult out;
    out.pi = primes_up_to(X).size();
    double lx = std::log(static_cast<double>(X));
    out.pi_upper = 1.25 * static_cast<double>(X) / lx;
    out.m_log = static_cast<double>(out.pi) * std::log(lx);
    return out;
}

/// One logged evaluation; recompute_audit reruns the same code path from the
/// stored inputs, so equality is bit-exact.
struct AuditEntry {
    std::string formula;
    std::map<std::string, double> inputs;
    double value = 0;
};

struct BoundReport {
    long X = 0;
    long Y = 0;
    double log_n_bound = 0;  // 12 X
    double zero_bound = 0;
    std::map<unsigned long, double> nu_bounds;  // prime -> nu_p(u_n) cap at n = e^{12X}
    std::vector<AuditEntry> audit;
};

inline double recompute_audit(const AuditEntry& a) {
    const auto& in = a.inputs;
    if (a.formula == "endpoint_log_bound") return 12.0 * in.at("X");
    if (a.formula == "zero_bound") return 39.0 * in.at("Y") * std::log(in.at("Y"));
    if (a.formula == "nu_upper") {
        double lnp = std::log(in.at("p"));
        return 1.2e12 * (in.at("p") / lnp) * (lnp + std::log(in.at("Y"))) * in.at("log_n") * in.at("log_n");
    }
    if (a.formula == "pi_upper") return 1.25 * in.at("X") / std::log(in.at("X"));
    if (a.formula == "m_log") return in.at("pi") * std::log(std::log(in.at("X")));
    raise(errc::parameter_out_of_range, "unknown audit formula " + a.formula);
}

inline BoundReport make_bound_report(const RecurrenceSpec& spec, unsigned long p_k, unsigned long K) {
    derive_closed_form(spec);  // validates the spec
    BoundReport rep;
    auto xy = compute_XY(spec, p_k, K);
    rep.X = xy.X;
    rep.Y = xy.Y;
    rep.log_n_bound = 12.0 * static_cast<double>(rep.X);
    rep.audit.push_back({"endpoint_log_bound", {{"X", double(rep.X)}}, rep.log_n_bound});

    rep.zero_bound = 39.0 * static_cast<double>(rep.Y) * std::log(static_cast<double>(rep.Y));
    rep.audit.push_back({"zero_bound", {{"Y", double(rep.Y)}}, rep.zero_bound});

    double log_n = rep.log_n_bound;  // the worst n allowed by the endpoint
    for (unsigned long p : primes_up_to(p_k)) {
        double lnp = std::log(static_cast<double>(p));
        double v = 1.2e12 * (static_cast<double>(p) / lnp) * (lnp + std::log(static_cast<double>(rep.Y))) *
                   log_n * log_n;
        rep.nu_bounds[p] = v;
        rep.audit.push_back({"nu_upper", {{"p", double(p)}, {"Y", double(rep.Y)}, {"log_n", log_n}}, v});
    }

    auto pi = prime_pi_and_M(static_cast<unsigned long>(rep.X));
    rep.audit.push_back({"pi_upper", {{"X", double(rep.X)}}, pi.pi_upper});
    rep.audit.push_back({"m_log", {{"X", double(rep.X)}, {"pi", double(pi.pi)}}, pi.m_log});
    return rep;
}

}  // namespace facsunit
