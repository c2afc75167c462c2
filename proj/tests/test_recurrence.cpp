#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "facsunit/recurrence.hpp"

using namespace facsunit;

namespace {

errc kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return errc::invalid_spec;
}

/// Random valid double-root spec: coprime nonzero roots of distinct
/// magnitude, initial terms that keep the n-coefficient alive.
RecurrenceSpec random_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> root(-12, 12);
    std::uniform_int_distribution<long> init(-50, 50);
    while (true) {
        long a = root(rng), b = root(rng);
        if (a == 0 || b == 0 || std::labs(a) == std::labs(b)) continue;
        if (std::gcd(std::labs(a), std::labs(b)) != 1) continue;
        RecurrenceSpec s;
        s.r1 = 2 * a + b;
        s.r2 = -(a * a + 2 * a * b);
        s.r3 = a * a * b;
        s.u0 = init(rng);
        s.u1 = init(rng);
        s.u2 = init(rng);
        try {
            derive_closed_form(s);
        } catch (const error&) {
            continue;  // e.g. a = 0 initials
        }
        return s;
    }
}

}  // namespace

TEST_CASE("closed form of the two named presets") {
    auto cf = derive_closed_form(RecurrenceSpec::cullen());
    CHECK(cf.alpha == 2);
    CHECK(cf.beta == 1);
    CHECK(cf.a == 1);
    CHECK(cf.c == 0);
    CHECK(cf.b == 1);
    CHECK(cf.delta == -2);

    auto wf = derive_closed_form(RecurrenceSpec::woodall());
    CHECK(wf.alpha == 2);
    CHECK(wf.beta == 1);
    CHECK(wf.a == 1);
    CHECK(wf.c == 0);
    CHECK(wf.b == -1);
}

TEST_CASE("derive_closed_form error taxonomy") {
    // Pure geometric initials u_n = 2^n leave no n alpha^n part.
    RecurrenceSpec geometric{5, -8, 4, 1, 2, 4};
    CHECK(kind_of([&] { derive_closed_form(geometric); }) == errc::zero_linear_coefficient);

    // X^3 - X^2 - X - 1 has no repeated root.
    CHECK(kind_of([] { derive_closed_form({1, 1, 1, 0, 1, 2}); }) == errc::no_double_root);

    // (X-1)^2 (X+1): |alpha| = |beta|.
    CHECK(kind_of([] { derive_closed_form({1, 1, -1, 0, 1, 2}); }) == errc::degenerate_ratio);

    // (X-2)^2 (X-4): gcd of coefficients is 4.
    CHECK(kind_of([] { derive_closed_form({8, -20, 16, 0, 1, 2}); }) == errc::not_coprime);

    // X^2 (X-1): double root 0.
    CHECK(kind_of([] { derive_closed_form({1, 0, 0, 0, 1, 2}); }) == errc::zero_root);

    // (X-1)^2 X: simple root 0.
    CHECK(kind_of([] { derive_closed_form({2, -1, 0, 0, 1, 2}); }) == errc::zero_root);
}

TEST_CASE("term evaluation fixtures") {
    auto cullen = RecurrenceSpec::cullen();
    auto woodall = RecurrenceSpec::woodall();
    CHECK(eval_term(cullen, 8) == 2049);   // 8 * 2^8 + 1
    CHECK(eval_term(woodall, 4) == 63);    // 5103 - 7!
    CHECK(eval_term(cullen, 0) == 1);
    CHECK(eval_term(woodall, 7) == 895);
    auto cf = derive_closed_form(cullen);
    CHECK(eval_closed(cf, 8) == 2049);
    CHECK(eval_term(cf, 20) == Int(20) * pow_ui(2, 20) + 1);
}

TEST_CASE("degeneracy fixtures") {
    auto cf = derive_closed_form(RecurrenceSpec::cullen());
    CHECK(is_degenerate(cf, Int(1), 2, 1));   // 2 = p(1) 2^1
    CHECK(is_degenerate(cf, Int(1), 4, 3));   // 24 = 3 * 2^3
    CHECK_FALSE(is_degenerate(cf, Int(1), 3, 5));
    auto wf = derive_closed_form(RecurrenceSpec::woodall());
    CHECK(is_degenerate(wf, Int(1), 2, 1));   // 2 = n 2^n at n = 1
    CHECK(is_degenerate(wf, Int(-1), 0, 9));  // -1 = b beta^9
}

TEST_CASE("rational height") {
    CHECK(rational_height(Rat(1)) == 0.0);
    CHECK_THAT(rational_height(Rat(3, 2)), Catch::Matchers::WithinAbs(std::log(3.0), 1e-12));
    CHECK(rational_height(Rat(0)) == 0.0);
    CHECK_THAT(rational_height(Rat(-7, 3)), Catch::Matchers::WithinAbs(std::log(7.0), 1e-12));
    CHECK_THAT(rational_height(Rat(2, 4)), Catch::Matchers::WithinAbs(std::log(2.0), 1e-12));

    auto cf = derive_closed_form(RecurrenceSpec::cullen());
    double hmax = std::max({rational_height(cf.a), rational_height(cf.b), rational_height(cf.c)});
    CHECK(hmax == 0.0);
    CHECK(hmax <= std::log(4.0 * 9 * 9 * 9));
}

TEST_CASE("closed form equals iteration on a random corpus") {
    std::mt19937_64 rng(123456);
    for (int trial = 0; trial < 200; ++trial) {
        auto spec = random_spec(rng);
        auto cf = derive_closed_form(spec);
        for (unsigned long n = 0; n <= 50; ++n) CHECK(eval_closed(cf, n) == eval_iter(spec, n));
    }
}

TEST_CASE("Cramer data honours the height bounds") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto spec = random_spec(rng);
        auto cf = derive_closed_form(spec);
        long y = spec_height(spec);
        CHECK(y >= 3);
        Int y3 = Int(y) * y * y;

        // |Delta| = |alpha| (alpha - beta)^2 exactly.
        Int ab = Int(cf.alpha) - cf.beta;
        CHECK(abs(cf.delta) == abs(Int(cf.alpha)) * ab * ab);
        CHECK(abs(cf.delta) <= y3);
        CHECK(abs(cf.delta1) <= 4 * y3);
        CHECK(abs(cf.delta2) <= 4 * y3);
        CHECK(abs(cf.delta3) <= 4 * y3);

        double hbound = std::log(4.0) + 3.0 * std::log(static_cast<double>(y));
        CHECK(rational_height(cf.a) <= hbound + 1e-12);
        CHECK(rational_height(cf.b) <= hbound + 1e-12);
        CHECK(rational_height(cf.c) <= hbound + 1e-12);
    }
}

TEST_CASE("degeneracy flag is stable under re-derivation") {
    std::mt19937_64 rng(4242);
    auto spec = random_spec(rng);
    auto cf1 = derive_closed_form(spec);
    auto cf2 = derive_closed_form(spec);
    for (unsigned long m = 0; m <= 6; ++m)
        for (unsigned long n = 0; n <= 10; ++n)
            for (long A : {-2, -1, 1, 2})
                CHECK(is_degenerate(cf1, Int(A), m, n) == is_degenerate(cf2, Int(A), m, n));
}
