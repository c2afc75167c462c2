#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "facsunit/arith.hpp"
#include "facsunit/errors.hpp"
#include "facsunit/recurrence.hpp"
#include "facsunit/valuation.hpp"

namespace facsunit {

/// Finite S-unit search space: numbers Prod p_i^{e_i} with 0 <= e_i <= cap_i.
struct SUnitBox {
    std::vector<unsigned long> primes;  // strictly increasing
    std::vector<unsigned> caps;         // inclusive upper bounds, one per prime

    void validate() const {
        if (primes.empty()) raise(errc::empty_box, "box has no primes");
        if (primes.size() != caps.size())
            raise(errc::parameter_out_of_range, "primes and caps differ in length");
        for (size_t i = 0; i < primes.size(); ++i) {
            if (!is_prime_small(primes[i]))
                raise(errc::parameter_out_of_range, std::to_string(primes[i]) + " is not prime");
            if (i > 0 && primes[i] <= primes[i - 1])
                raise(errc::parameter_out_of_range, "primes must be strictly increasing");
        }
    }

    Int cell_value(const std::vector<unsigned>& exps) const {
        Int s = 1;
        for (size_t i = 0; i < primes.size(); ++i) s *= pow_ui(primes[i], exps[i]);
        return s;
    }
};

enum class SmoothStatus { smooth, not_smooth, cap_exceeded };

struct SmoothDecomposition {
    SmoothStatus status = SmoothStatus::not_smooth;
    std::vector<unsigned> exponents;  // filled with whatever factored out
};

/// Factor |x| over the box primes.  not_smooth when a cofactor > 1 remains;
/// cap_exceeded when fully smooth but some exponent is over its cap.
inline SmoothDecomposition smooth_decompose(const Int& x, const SUnitBox& box) {
    if (x == 0) raise(errc::zero_argument, "cannot decompose 0");
    box.validate();
    SmoothDecomposition out;
    out.exponents.assign(box.primes.size(), 0);
    Int rest = abs(x);
    for (size_t i = 0; i < box.primes.size(); ++i) {
        Int p(box.primes[i]);
        Int reduced;
        out.exponents[i] = static_cast<unsigned>(mpz_remove(reduced.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
        rest = reduced;
    }
    if (rest != 1) {
        out.status = SmoothStatus::not_smooth;
        return out;
    }
    for (size_t i = 0; i < box.caps.size(); ++i)
        if (out.exponents[i] > box.caps[i]) {
            out.status = SmoothStatus::cap_exceeded;
            return out;
        }
    out.status = SmoothStatus::smooth;
    return out;
}

/// Shift list for a scan: exact values plus printable labels.  A nonzero
/// base_offset marks the shift as the composite "offset + rest"; the cell
/// with s = -offset is then a collapsed cell (the offset part cancels s and
/// the scanned value degenerates to the rest alone) and is skipped, since
/// it corresponds to the separately-handled family n 2^n = +-m! rather
/// than a genuine box instance.
struct ShiftSet {
    std::vector<Int> values;
    std::vector<std::string> labels;
    std::vector<long> base_offsets;  // 0 = plain shift, no collapse rule

    static ShiftSet pm1() {
        ShiftSet s;
        s.values = {Int(1), Int(-1)};
        s.labels = {"+1", "-1"};
        s.base_offsets = {0, 0};
        return s;
    }

    /// +-1 +- m! for every m in [lo, hi], enumerated m-major.
    static ShiftSet pm1_pm_factorial(unsigned lo, unsigned hi) {
        ShiftSet s;
        Int f = factorial(lo);
        for (unsigned m = lo; m <= hi; ++m) {
            std::string fm = std::to_string(m) + "!";
            s.values.push_back(1 + f);
            s.labels.push_back("+1+" + fm);
            s.base_offsets.push_back(1);
            s.values.push_back(1 - f);
            s.labels.push_back("+1-" + fm);
            s.base_offsets.push_back(1);
            s.values.push_back(-1 + f);
            s.labels.push_back("-1+" + fm);
            s.base_offsets.push_back(-1);
            s.values.push_back(-1 - f);
            s.labels.push_back("-1-" + fm);
            s.base_offsets.push_back(-1);
            if (m < hi) f *= (m + 1);
        }
        return s;
    }
};

struct ScanArgmax {
    std::vector<unsigned> exponents;
    std::size_t shift_index = 0;
    std::string shift_label;
};

struct ScanReport {
    unsigned max_val = 0;
    bool has_max = false;  // false when every cell was a zero skip
    ScanArgmax argmax;
    std::uint64_t count_scanned = 0;
    std::uint64_t count_skipped_zero = 0;
    std::uint64_t count_skipped_collapsed = 0;
    std::uint64_t width_escalations = 0;

    // Tie-break: lexicographically least (exponents, shift_index), so the
    // merged result is independent of how the box was partitioned.
    void consider(unsigned val, const std::vector<unsigned>& exps, std::size_t shift_idx) {
        if (!has_max || val > max_val) {
            has_max = true;
            max_val = val;
            argmax.exponents = exps;
            argmax.shift_index = shift_idx;
        } else if (val == max_val) {
            if (exps < argmax.exponents ||
                (exps == argmax.exponents && shift_idx < argmax.shift_index)) {
                argmax.exponents = exps;
                argmax.shift_index = shift_idx;
            }
        }
    }

    void merge(const ScanReport& o) {
        count_scanned += o.count_scanned;
        count_skipped_zero += o.count_skipped_zero;
        count_skipped_collapsed += o.count_skipped_collapsed;
        width_escalations += o.width_escalations;
        if (o.has_max) consider(o.max_val, o.argmax.exponents, o.argmax.shift_index);
    }
};

struct ScanOptions {
    unsigned width = 32;  // starting residue width; escalates 32 -> 64 -> exact
    unsigned workers = 1;
    std::optional<std::string> checkpoint_path;
    std::optional<unsigned> stop_after_blocks;  // test hook: abandon the run early
};

struct ScanOutcome {
    bool complete = false;
    unsigned blocks_done = 0;
    ScanReport report;
};

namespace detail {

// State shared read-only by all scan workers.
struct ScanTables {
    std::vector<std::vector<std::uint64_t>> pow64;  // p_i^e mod 2^64
    std::vector<std::uint64_t> shift64;             // shift mod 2^64
    const SUnitBox* box = nullptr;
    const ShiftSet* shifts = nullptr;
    unsigned width = 64;
};

inline std::uint64_t low64(const Int& x) {
    static_assert(sizeof(unsigned long) == 8, "scan residues assume 64-bit limbs");
    static const Int two64 = pow_ui(2, 64);
    Int r = mod_floor(x, two64);
    return mpz_get_ui(r.get_mpz_t());
}

/// Slow path for a saturated residue: exact arithmetic decides between a
/// genuine zero (skipped, the max* convention) and a large nu_2.
inline void scan_exact_cell(const ScanTables& t, const std::vector<unsigned>& exps, std::size_t j,
                            ScanReport& rep) {
    Int x = t.box->cell_value(exps) + t.shifts->values[j];
    if (x == 0) {
        ++rep.count_skipped_zero;
        return;
    }
    Int ax = abs(x);
    unsigned v = static_cast<unsigned>(mpz_scan1(ax.get_mpz_t(), 0));
    ++rep.count_scanned;
    rep.consider(v, exps, j);
}

inline void scan_cell(const ScanTables& t, std::uint64_t s64, std::vector<unsigned>& exps,
                      bool unit_cell, ScanReport& rep) {
    const std::size_t nshifts = t.shift64.size();
    for (std::size_t j = 0; j < nshifts; ++j) {
        // The s = 1 cell collapses against shifts whose base offset is -1.
        if (unit_cell && t.shifts->base_offsets[j] == -1) {
            ++rep.count_skipped_collapsed;
            continue;
        }
        std::uint64_t x = s64 + t.shift64[j];
        std::optional<unsigned> v = nu2_truncated({x, t.width});
        if (!v && t.width < 64) {
            ++rep.width_escalations;
            v = nu2_truncated({x, 64});
        }
        if (!v) {
            ++rep.width_escalations;
            scan_exact_cell(t, exps, j, rep);
            continue;
        }
        ++rep.count_scanned;
        rep.consider(*v, exps, j);
    }
}

inline void scan_dims(const ScanTables& t, std::size_t dim, std::uint64_t prefix,
                      std::vector<unsigned>& exps, bool zero_prefix, ScanReport& rep) {
    const auto& pw = t.pow64[dim];
    if (dim + 1 == t.pow64.size()) {
        for (unsigned e = 0; e <= t.box->caps[dim]; ++e) {
            exps[dim] = e;
            scan_cell(t, prefix * pw[e], exps, zero_prefix && e == 0, rep);
        }
        return;
    }
    for (unsigned e = 0; e <= t.box->caps[dim]; ++e) {
        exps[dim] = e;
        scan_dims(t, dim + 1, prefix * pw[e], exps, zero_prefix && e == 0, rep);
    }
}

inline nlohmann::json scan_report_to_json(const ScanReport& r) {
    nlohmann::json j{{"max_val", r.max_val},
                     {"has_max", r.has_max},
                     {"count_scanned", r.count_scanned},
                     {"count_skipped_zero", r.count_skipped_zero},
                     {"count_skipped_collapsed", r.count_skipped_collapsed},
                     {"width_escalations", r.width_escalations}};
    if (r.has_max)
        j["argmax"] = {{"exponents", r.argmax.exponents},
                       {"shift_index", r.argmax.shift_index},
                       {"shift", r.argmax.shift_label}};
    return j;
}

inline ScanReport scan_report_from_json(const nlohmann::json& j) {
    ScanReport r;
    r.max_val = j.at("max_val").get<unsigned>();
    r.has_max = j.at("has_max").get<bool>();
    r.count_scanned = j.at("count_scanned").get<std::uint64_t>();
    r.count_skipped_zero = j.at("count_skipped_zero").get<std::uint64_t>();
    r.count_skipped_collapsed = j.at("count_skipped_collapsed").get<std::uint64_t>();
    r.width_escalations = j.at("width_escalations").get<std::uint64_t>();
    if (r.has_max) {
        r.argmax.exponents = j.at("argmax").at("exponents").get<std::vector<unsigned>>();
        r.argmax.shift_index = j.at("argmax").at("shift_index").get<std::size_t>();
    }
    return r;
}

inline std::uint64_t scan_config_digest(const SUnitBox& box, const ShiftSet& shifts, unsigned width) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    for (auto p : box.primes) mix(p);
    for (auto c : box.caps) mix(c);
    mix(width);
    mix(shifts.values.size());
    for (const auto& v : shifts.values) mix(low64(v));
    for (long o : shifts.base_offsets) mix(static_cast<std::uint64_t>(o + 2));
    return h;
}

}  // namespace detail

/// max* of nu_2(s + shift) over the box, skipping exact zeros.  Partitioned
/// over the first prime's exponent; `workers` partitions run concurrently
/// per block and blocks complete in order, which is what makes checkpoint
/// files meaningful.
inline ScanOutcome run_shifted_nu2_scan(const SUnitBox& box, const ShiftSet& shifts,
                                        const ScanOptions& opts = {}) {
    box.validate();
    if (shifts.values.empty()) raise(errc::empty_box, "shift list is empty");
    if (shifts.values.size() != shifts.labels.size())
        raise(errc::parameter_out_of_range, "shift labels out of sync");
    for (auto p : box.primes)
        if (p == 2) raise(errc::parameter_out_of_range, "nu_2 scan box must use odd primes");
    if (opts.width != 24 && opts.width != 32 && opts.width != 64)
        raise(errc::parameter_out_of_range, "width must be 24, 32 or 64");

    ShiftSet normalized = shifts;
    if (normalized.base_offsets.empty()) normalized.base_offsets.assign(shifts.values.size(), 0);
    if (normalized.base_offsets.size() != normalized.values.size())
        raise(errc::parameter_out_of_range, "shift base offsets out of sync");

    detail::ScanTables tables;
    tables.box = &box;
    tables.shifts = &normalized;
    tables.width = opts.width;
    tables.pow64.resize(box.primes.size());
    for (size_t i = 0; i < box.primes.size(); ++i) {
        tables.pow64[i].resize(box.caps[i] + 1);
        std::uint64_t v = 1;
        for (unsigned e = 0; e <= box.caps[i]; ++e) {
            tables.pow64[i][e] = v;
            v *= box.primes[i];
        }
    }
    tables.shift64.reserve(shifts.values.size());
    for (const auto& s : shifts.values) tables.shift64.push_back(detail::low64(s));

    const unsigned partitions = box.caps[0] + 1;
    const unsigned workers = std::max(1u, opts.workers);
    const std::uint64_t digest = detail::scan_config_digest(box, normalized, opts.width);

    ScanOutcome outcome;
    unsigned first_block = 0;
    if (opts.checkpoint_path) {
        std::ifstream in(*opts.checkpoint_path);
        if (in) {
            nlohmann::json ck = nlohmann::json::parse(in);
            if (ck.at("config_digest").get<std::uint64_t>() != digest)
                raise(errc::parameter_out_of_range, "checkpoint belongs to a different scan config");
            if (ck.at("workers").get<unsigned>() != workers)
                raise(errc::parameter_out_of_range, "checkpoint written with a different worker count");
            first_block = ck.at("blocks_done").get<unsigned>();
            outcome.report = detail::scan_report_from_json(ck.at("report"));
        }
    }

    const unsigned total_blocks = (partitions + workers - 1) / workers;
    for (unsigned block = first_block; block < total_blocks; ++block) {
        unsigned lo = block * workers;
        unsigned hi = std::min(partitions, lo + workers);
        std::vector<ScanReport> partials(hi - lo);
        std::vector<std::thread> pool;
        for (unsigned e0 = lo; e0 < hi; ++e0) {
            pool.emplace_back([&tables, &partials, e0, lo] {
                std::vector<unsigned> exps(tables.pow64.size(), 0);
                exps[0] = e0;
                std::uint64_t prefix = tables.pow64[0][e0];
                if (tables.pow64.size() == 1)
                    detail::scan_cell(tables, prefix, exps, e0 == 0, partials[e0 - lo]);
                else
                    detail::scan_dims(tables, 1, prefix, exps, e0 == 0, partials[e0 - lo]);
            });
        }
        for (auto& th : pool) th.join();
        for (auto& part : partials) outcome.report.merge(part);
        outcome.blocks_done = block + 1;

        if (opts.checkpoint_path) {
            nlohmann::json ck{{"config_digest", digest},
                              {"workers", workers},
                              {"blocks_done", outcome.blocks_done},
                              {"report", detail::scan_report_to_json(outcome.report)}};
            std::ofstream out(*opts.checkpoint_path, std::ios::trunc);
            out << ck.dump(2) << "\n";
        }
        if (opts.stop_after_blocks && outcome.blocks_done >= *opts.stop_after_blocks &&
            outcome.blocks_done < total_blocks)
            return outcome;
    }

    if (outcome.report.has_max) {
        auto& am = outcome.report.argmax;
        am.shift_label = shifts.labels[am.shift_index];
        // The winner was found through truncated residues; recertify it exactly.
        Int x = box.cell_value(am.exponents) + shifts.values[am.shift_index];
        if (x == 0 || nu(x, 2) != outcome.report.max_val)
            raise(errc::internal_certificate_failure, "scan argmax failed exact recheck");
    }
    outcome.complete = true;
    return outcome;
}

/// Convenience wrapper when no checkpointing is involved.
inline ScanReport max_shifted_nu2(const SUnitBox& box, const ShiftSet& shifts,
                                  unsigned width = 32, unsigned workers = 1) {
    ScanOptions opts;
    opts.width = width;
    opts.workers = workers;
    return run_shifted_nu2_scan(box, shifts, opts).report;
}

enum class Family { cullen, woodall };

inline const char* family_name(Family f) { return f == Family::cullen ? "cullen" : "woodall"; }

/// One verified identity u_n + eps m! = sign_s * Prod p_i^{e_i}.
struct SolutionRecord {
    Family family = Family::cullen;
    unsigned n = 0;
    unsigned m = 0;
    int eps = 1;     // sign of the m! term
    Int value;       // u_n + eps m!
    int sign_s = 1;  // sign of the S-unit side
    std::vector<unsigned> exponents;
    bool degenerate = false;
};

struct SolveResult {
    std::vector<unsigned long> primes;  // exponent vector layout of the records
    std::vector<SolutionRecord> records;
    std::vector<Int> intersection;  // sorted distinct record values
};

/// Enumerate all u_n +- m! landing in the S-unit box.  `two_cap`, when set,
/// widens the box with prime 2 at that cap; the default reproduces the
/// odd-S-unit intersection (an even value then simply fails smoothness).
inline SolveResult solve_factorial_sunit(const std::vector<Family>& families, unsigned n_max,
                                         std::pair<unsigned, unsigned> m_range, const SUnitBox& box,
                                         std::optional<unsigned> two_cap = std::nullopt,
                                         unsigned workers = 1) {
    box.validate();
    if (m_range.first > m_range.second)
        raise(errc::parameter_out_of_range, "empty m range");

    SUnitBox eff = box;
    if (two_cap) {
        if (!eff.primes.empty() && eff.primes.front() <= 2)
            raise(errc::parameter_out_of_range, "two_cap requires an odd-prime box");
        eff.primes.insert(eff.primes.begin(), 2);
        eff.caps.insert(eff.caps.begin(), *two_cap);
    }

    std::vector<Int> facts(m_range.second + 1);
    facts[0] = 1;
    for (unsigned m = 1; m <= m_range.second; ++m) facts[m] = facts[m - 1] * m;

    struct FamilyCtx {
        Family fam;
        RecurrenceSpec spec;
        ClosedForm cf;
        std::vector<Int> terms;
    };
    std::vector<FamilyCtx> ctxs;
    for (Family fam : families) {
        FamilyCtx ctx;
        ctx.fam = fam;
        ctx.spec = fam == Family::cullen ? RecurrenceSpec::cullen() : RecurrenceSpec::woodall();
        ctx.cf = derive_closed_form(ctx.spec);
        ctx.terms.reserve(n_max + 1);
        for (unsigned n = 0; n <= n_max; ++n) ctx.terms.push_back(eval_iter(ctx.spec, n));
        ctxs.push_back(std::move(ctx));
    }

    // Buckets keyed by (family index, n) keep the output order independent
    // of how the n loop is spread across workers.
    std::vector<std::vector<SolutionRecord>> buckets(ctxs.size() * (n_max + 1));
    auto solve_one_n = [&](size_t fi, unsigned n) {
        const FamilyCtx& ctx = ctxs[fi];
        auto& bucket = buckets[fi * (n_max + 1) + n];
        for (unsigned m = m_range.first; m <= m_range.second; ++m) {
            for (int eps : {+1, -1}) {
                Int v = ctx.terms[n] + eps * facts[m];
                if (v == 0) continue;  // not an S-unit equation; s is positive
                auto sd = smooth_decompose(v, eff);
                if (sd.status != SmoothStatus::smooth) continue;
                SolutionRecord rec;
                rec.family = ctx.fam;
                rec.n = n;
                rec.m = m;
                rec.eps = eps;
                rec.value = v;
                rec.sign_s = v > 0 ? 1 : -1;
                rec.exponents = sd.exponents;
                rec.degenerate = is_degenerate(ctx.cf, Int(-eps), m, n);
                bucket.push_back(std::move(rec));
            }
        }
    };

    unsigned nworkers = std::max(1u, workers);
    if (nworkers == 1) {
        for (size_t fi = 0; fi < ctxs.size(); ++fi)
            for (unsigned n = 0; n <= n_max; ++n) solve_one_n(fi, n);
    } else {
        std::atomic<size_t> next{0};
        size_t total = ctxs.size() * (n_max + 1);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nworkers; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
                    solve_one_n(i / (n_max + 1), static_cast<unsigned>(i % (n_max + 1)));
            });
        for (auto& th : pool) th.join();
    }

    SolveResult out;
    out.primes = eff.primes;
    std::set<Int> values;
    for (auto& bucket : buckets)
        for (auto& rec : bucket) {
            values.insert(rec.value);
            out.records.push_back(std::move(rec));
        }
    out.intersection.assign(values.begin(), values.end());

    for (const auto& rec : out.records) {
        Int s = eff.cell_value(rec.exponents);
        if (rec.value != rec.sign_s * s)
            raise(errc::internal_certificate_failure, "solution record failed exact recheck");
    }
    return out;
}

}  // namespace facsunit
