#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>

#include "facsunit/search.hpp"
#include "oracles.hpp"

using namespace facsunit;

namespace {
const SUnitBox kFourPrimeBox{{2, 3, 5, 7}, {130, 130, 100, 80}};
}

TEST_CASE("smooth decomposition fixtures") {
    auto d = smooth_decompose(Int(2025), kFourPrimeBox);
    CHECK(d.status == SmoothStatus::smooth);
    CHECK(d.exponents == std::vector<unsigned>{0, 4, 2, 0});

    d = smooth_decompose(Int(5103), kFourPrimeBox);
    CHECK(d.status == SmoothStatus::smooth);
    CHECK(d.exponents == std::vector<unsigned>{0, 6, 0, 1});

    CHECK(smooth_decompose(Int(22), kFourPrimeBox).status == SmoothStatus::not_smooth);
    CHECK(smooth_decompose(Int(-2025), kFourPrimeBox).status == SmoothStatus::smooth);

    SUnitBox tight{{2, 3}, {2, 1}};
    CHECK(smooth_decompose(Int(8), tight).status == SmoothStatus::cap_exceeded);
    CHECK(smooth_decompose(Int(1), tight).exponents == std::vector<unsigned>{0, 0});

    CHECK_THROWS_MATCHES(smooth_decompose(Int(0), tight), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.kind() == errc::zero_argument; }));
}

TEST_CASE("toy box scan against the exact oracle") {
    // Box {3^a 5^b : a <= 2, b <= 1}, shifts +-1.  Enumerating the twelve
    // cells exactly: the max is nu_2(15 + 1) = 4, and (1, -1) is the one
    // zero skip.
    SUnitBox box{{3, 5}, {2, 1}};
    auto rep = max_shifted_nu2(box, ShiftSet::pm1(), 32, 1);
    CHECK(rep.max_val == 4);
    CHECK(rep.argmax.exponents == std::vector<unsigned>{1, 1});
    CHECK(rep.argmax.shift_label == "+1");
    CHECK(rep.count_skipped_zero == 1);
    CHECK(rep.count_skipped_collapsed == 0);
    CHECK(rep.count_scanned == 11);

    auto oracle = oracles::box_max_nu2_exact({3, 5}, {2, 1}, {Int(1), Int(-1)});
    CHECK(oracle.max_val == rep.max_val);
    CHECK(oracle.argmax_exps == rep.argmax.exponents);
    CHECK(oracle.skipped == rep.count_skipped_zero);
    CHECK(oracle.scanned == rep.count_scanned);
}

TEST_CASE("scan edge cases") {
    SUnitBox trivial{{3}, {0}};
    ShiftSet minus1;
    minus1.values = {Int(-1)};
    minus1.labels = {"-1"};
    auto rep = max_shifted_nu2(trivial, minus1);
    CHECK_FALSE(rep.has_max);
    CHECK(rep.count_skipped_zero == 1);
    CHECK(rep.count_scanned == 0);

    ShiftSet plus1;
    plus1.values = {Int(1)};
    plus1.labels = {"+1"};
    rep = max_shifted_nu2(trivial, plus1);
    CHECK(rep.max_val == 1);  // nu_2(2)

    CHECK_THROWS_MATCHES(max_shifted_nu2(trivial, ShiftSet{}), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.kind() == errc::empty_box; }));
    SUnitBox evenBox{{2, 3}, {1, 1}};
    CHECK_THROWS_AS(max_shifted_nu2(evenBox, ShiftSet::pm1()), error);
}

TEST_CASE("random boxes agree with the exact oracle at every width") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<unsigned long> primes = {3, 5, 7};
        std::vector<unsigned> caps = {static_cast<unsigned>(rng() % 7), static_cast<unsigned>(rng() % 5),
                                      static_cast<unsigned>(rng() % 4)};
        ShiftSet shifts = trial % 2 ? ShiftSet::pm1() : ShiftSet::pm1_pm_factorial(2, 5);
        auto oracle = oracles::box_max_nu2_exact(primes, caps, shifts.values, shifts.base_offsets);
        for (unsigned width : {24u, 32u, 64u}) {
            auto rep = max_shifted_nu2({primes, caps}, shifts, width, 1);
            CHECK(rep.has_max == oracle.any);
            CHECK(rep.max_val == oracle.max_val);
            CHECK(rep.argmax.exponents == oracle.argmax_exps);
            CHECK(rep.argmax.shift_index == oracle.argmax_shift);
            CHECK(rep.count_skipped_zero == oracle.skipped);
            CHECK(rep.count_skipped_collapsed == oracle.collapsed);
            CHECK(rep.count_scanned == oracle.scanned);
        }
    }
}

TEST_CASE("factorial shifts produce zero skips that need exact escalation") {
    // 2! - 1 = 1, 2! + 1 = 3, 3! - 1 = 5, 3! + 1 = 7, 4! + 1 = 25: each is a
    // box element, so the matching shift lands exactly on zero.  The s = 1
    // cell collapses against the six -1 +- m! shifts.
    SUnitBox box{{3, 5, 7}, {6, 4, 3}};
    auto rep = max_shifted_nu2(box, ShiftSet::pm1_pm_factorial(2, 4), 32, 1);
    CHECK(rep.count_skipped_zero == 5);
    CHECK(rep.count_skipped_collapsed == 6);
    CHECK(rep.width_escalations >= 2 * rep.count_skipped_zero);
}

TEST_CASE("scan is partition independent") {
    SUnitBox box{{3, 5, 7}, {12, 9, 7}};
    auto shifts = ShiftSet::pm1_pm_factorial(2, 9);
    auto base = max_shifted_nu2(box, shifts, 32, 1);
    for (unsigned workers : {2u, 8u}) {
        auto rep = max_shifted_nu2(box, shifts, 32, workers);
        CHECK(rep.max_val == base.max_val);
        CHECK(rep.argmax.exponents == base.argmax.exponents);
        CHECK(rep.argmax.shift_index == base.argmax.shift_index);
        CHECK(rep.count_scanned == base.count_scanned);
        CHECK(rep.count_skipped_zero == base.count_skipped_zero);
    }
}

TEST_CASE("interrupted scan resumes from its checkpoint") {
    SUnitBox box{{3, 5, 7}, {10, 8, 6}};
    auto shifts = ShiftSet::pm1_pm_factorial(2, 6);
    std::string path = "checkpoint_test.json";
    std::remove(path.c_str());

    ScanOptions opts;
    opts.width = 32;
    opts.workers = 2;
    auto uninterrupted = run_shifted_nu2_scan(box, shifts, opts);
    REQUIRE(uninterrupted.complete);

    opts.checkpoint_path = path;
    opts.stop_after_blocks = 2;
    auto partial = run_shifted_nu2_scan(box, shifts, opts);
    CHECK_FALSE(partial.complete);
    CHECK(partial.blocks_done == 2);

    opts.stop_after_blocks.reset();
    auto resumed = run_shifted_nu2_scan(box, shifts, opts);
    REQUIRE(resumed.complete);
    CHECK(resumed.report.max_val == uninterrupted.report.max_val);
    CHECK(resumed.report.argmax.exponents == uninterrupted.report.argmax.exponents);
    CHECK(resumed.report.argmax.shift_index == uninterrupted.report.argmax.shift_index);
    CHECK(resumed.report.count_scanned == uninterrupted.report.count_scanned);
    CHECK(resumed.report.count_skipped_zero == uninterrupted.report.count_skipped_zero);
    std::remove(path.c_str());
}

TEST_CASE("sampled cells match exact nu_2") {
    SUnitBox box{{3, 5, 7}, {60, 40, 30}};
    auto shifts = ShiftSet::pm1();
    std::mt19937_64 rng(2025);
    for (int i = 0; i < 10000; ++i) {
        std::vector<unsigned> exps = {static_cast<unsigned>(rng() % 61), static_cast<unsigned>(rng() % 41),
                                      static_cast<unsigned>(rng() % 31)};
        std::size_t j = rng() % 2;
        Int exact = box.cell_value(exps) + shifts.values[j];
        if (exact == 0) continue;
        std::uint64_t s64 = 1;
        for (size_t d = 0; d < exps.size(); ++d)
            for (unsigned e = 0; e < exps[d]; ++e) s64 *= box.primes[d];
        auto v = nu2_truncated({s64 + detail::low64(shifts.values[j]), 64});
        REQUIRE(v.has_value());
        CHECK(*v == nu(exact, 2));
    }
}

TEST_CASE("solver reproduces the published identities") {
    SUnitBox box{{3, 5, 7}, {130, 100, 80}};
    auto res = solve_factorial_sunit({Family::cullen, Family::woodall}, 30, {2, 500}, box);

    auto find = [&](Family f, unsigned n, unsigned m, int eps) -> const SolutionRecord* {
        for (const auto& r : res.records)
            if (r.family == f && r.n == n && r.m == m && r.eps == eps) return &r;
        return nullptr;
    };

    const auto* top_n = find(Family::cullen, 8, 4, -1);
    REQUIRE(top_n);
    CHECK(top_n->value == 2025);
    CHECK(top_n->sign_s == 1);
    CHECK(top_n->exponents == std::vector<unsigned>{4, 2, 0});
    CHECK_FALSE(top_n->degenerate);

    const auto* top_m = find(Family::woodall, 4, 7, +1);
    REQUIRE(top_m);
    CHECK(top_m->value == 5103);
    CHECK(top_m->exponents == std::vector<unsigned>{6, 0, 1});

    const auto* deg = find(Family::cullen, 1, 2, -1);
    REQUIRE(deg);
    CHECK(deg->value == 1);
    CHECK(deg->degenerate);

    // W_7 - 6! = 175 = 5^2 * 7; the printed table says 5! but 895 - 120 is
    // not 7-smooth.
    CHECK(find(Family::woodall, 7, 6, -1) != nullptr);
    CHECK(find(Family::woodall, 7, 5, -1) == nullptr);
}

TEST_CASE("solver respects the two-cap mode and cap monotonicity") {
    SUnitBox box{{3, 5, 7}, {130, 100, 80}};
    auto plain = solve_factorial_sunit({Family::cullen, Family::woodall}, 12, {2, 60}, box);
    auto two_cap = solve_factorial_sunit({Family::cullen, Family::woodall}, 12, {2, 60}, box, 130u);

    // u_n is odd and m! is even for m >= 2, so allowing powers of 2 admits
    // nothing new; only the exponent layout changes.
    REQUIRE(plain.records.size() == two_cap.records.size());
    for (size_t i = 0; i < plain.records.size(); ++i) {
        CHECK(two_cap.records[i].exponents.front() == 0);
        CHECK(std::vector<unsigned>(two_cap.records[i].exponents.begin() + 1,
                                    two_cap.records[i].exponents.end()) == plain.records[i].exponents);
    }
    CHECK(plain.intersection == two_cap.intersection);

    // Enlarging caps never removes a record.
    SUnitBox small{{3, 5, 7}, {5, 3, 2}};
    auto narrow = solve_factorial_sunit({Family::cullen, Family::woodall}, 12, {2, 60}, small);
    for (const auto& r : narrow.records) {
        bool found = false;
        for (const auto& R : plain.records)
            found |= (R.family == r.family && R.n == r.n && R.m == r.m && R.eps == r.eps);
        CHECK(found);
    }
}

TEST_CASE("solver parallelism does not change the output") {
    SUnitBox box{{3, 5, 7}, {130, 100, 80}};
    auto serial = solve_factorial_sunit({Family::cullen, Family::woodall}, 20, {2, 100}, box, {}, 1);
    auto parallel = solve_factorial_sunit({Family::cullen, Family::woodall}, 20, {2, 100}, box, {}, 4);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].value == parallel.records[i].value);
        CHECK(serial.records[i].n == parallel.records[i].n);
        CHECK(serial.records[i].m == parallel.records[i].m);
    }
    CHECK(serial.intersection == parallel.intersection);
}
