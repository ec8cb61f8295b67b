#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wex/rng.hpp"
#include "wex/thermal.hpp"

using namespace wex;

namespace {
PureQubit random_pure(Philox& rng) {
    const auto u = rng.unit_sphere();
    return PureQubit{BlochVector{u[0], u[1], u[2]}};
}
const PureQubit kUp{BlochVector{0, 0, 1}};
const PureQubit kDown{BlochVector{0, 0, -1}};
const PureQubit kPlus{BlochVector{1, 0, 0}};
} // namespace

TEST_CASE("gap schedule closed form") {
    // tau = M closes the gap exactly.
    CHECK(gap_schedule(10, ExtractionParams(0.3, 1.0, 10)) == doctest::Approx(0.0));
    // eps at the floor approximates the eps = 0 value ln 19.
    CHECK(gap_schedule(1, ExtractionParams(kEpsMin, 1.0, 10)) ==
          doctest::Approx(std::log(19.0)).epsilon(1e-9));
    CHECK(gap_schedule(5, ExtractionParams(0.25, 2.0, 10)) ==
          doctest::Approx(0.5 * std::log(0.625 / 0.375)).epsilon(1e-12));
    CHECK(gap_schedule(5, ExtractionParams(0.25, 2.0, 10)) ==
          doctest::Approx(0.2554128118829953).epsilon(1e-9));
    CHECK_THROWS_AS(gap_schedule(0, ExtractionParams(0.25, 1.0, 10)), std::domain_error);
    CHECK_THROWS_AS(gap_schedule(11, ExtractionParams(0.25, 1.0, 10)), std::domain_error);
    CHECK_THROWS_AS(gap_schedule(1, ExtractionParams(0.25, 1.0)), std::domain_error);
}

TEST_CASE("gap schedule agrees with the occupation form") {
    // Two algebraically equivalent routes: Bloch-fraction form vs
    // p0 - tau dp over p1 + tau dp.
    Philox rng(41);
    for (int i = 0; i < 2000; ++i) {
        const long m = 1 + static_cast<long>(rng.next_double() * 50);
        const long tau = 1 + static_cast<long>(rng.next_double() * m) % m;
        const double eps = kEpsMin + (0.5 - kEpsMin) * rng.next_double();
        const double beta = 0.1 + 3.0 * rng.next_double();
        const ExtractionParams params(eps, beta, m);

        const double dp = (0.5 - eps) / static_cast<double>(m);
        const double p0 = (1.0 - eps) - static_cast<double>(tau) * dp;
        const double p1 = eps + static_cast<double>(tau) * dp;
        const double ref = std::log(p0 / p1) / beta;
        CHECK(gap_schedule(tau, params) == doctest::Approx(ref).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("work values") {
    const auto [w0h, w1h] = work_values(ExtractionParams(0.5, 1.0));
    CHECK(w0h == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(w1h == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    const auto [w0, w1] = work_values(ExtractionParams(0.25, 1.0));
    CHECK(w0 == doctest::Approx(std::log(1.5)).epsilon(1e-14));
    CHECK(w1 == doctest::Approx(std::log(0.5)).epsilon(1e-14));

    const auto [w0b, w1b] = work_values(ExtractionParams(0.25, 2.0));
    CHECK(w0b == doctest::Approx(0.5 * w0).epsilon(1e-14));
    CHECK(w1b == doctest::Approx(0.5 * w1).epsilon(1e-14));
}

TEST_CASE("extraction params validation") {
    CHECK_THROWS_AS(ExtractionParams(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(ExtractionParams(0.6, 1.0), std::domain_error);
    CHECK_THROWS_AS(ExtractionParams(0.25, 0.0), std::domain_error);
    CHECK_THROWS_AS(ExtractionParams(0.25, 1.0, -1), std::domain_error);
}

TEST_CASE("quasi-static rounds at the extremes") {
    Philox rng(43);
    const ExtractionParams params(0.25, 1.0);
    const auto [w0, w1] = work_values(params);
    for (int i = 0; i < 200; ++i) {
        const RoundOutcome same = run_round_quasistatic(kUp, kUp, params, rng);
        CHECK(same.branch == 0);
        CHECK(same.reward == 1);
        CHECK(same.delta_w == w0);
        const RoundOutcome orth = run_round_quasistatic(kUp, kDown, params, rng);
        CHECK(orth.branch == 1);
        CHECK(orth.reward == 0);
        CHECK(orth.delta_w == w1);
    }
}

TEST_CASE("quasi-static reward follows the Born rule") {
    Philox rng(47);
    const ExtractionParams params(0.1, 1.0);
    long ones = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i)
        ones += run_round_quasistatic(kUp, kPlus, params, rng).reward;
    const double phat = static_cast<double>(ones) / static_cast<double>(n);
    CHECK(std::abs(phat - 0.5) <= 3.0 * std::sqrt(0.25 / static_cast<double>(n)));
}

TEST_CASE("expected work equals the Born mixture exactly") {
    Philox rng(53);
    for (int i = 0; i < 10000; ++i) {
        const PureQubit psi = random_pure(rng);
        const PureQubit psi_k = random_pure(rng);
        const double eps = 1e-6 + (0.5 - 1e-6) * rng.next_double();
        const double beta = 0.5 + 2.0 * rng.next_double();
        const ExtractionParams params(eps, beta, 0);
        const auto [w0, w1] = work_values(params);
        const double p = fidelity(psi, psi_k);
        CHECK(expected_work(psi, psi_k, params) ==
              doctest::Approx(p * w0 + (1.0 - p) * w1).scale(1.0).epsilon(1e-13));
    }
}

TEST_CASE("expected work frozen example") {
    // fidelity 0.9, eps 0.1 at beta = 1: ln 2 + 0.9 ln 0.9 + 0.1 ln 0.1,
    // confirmed by the mixture route 0.9 w0 + 0.1 w1.
    const double s = std::sqrt(1.0 - 0.8 * 0.8); // Bloch angle giving fidelity 0.9
    const PureQubit psi_k{BlochVector{s, 0.0, 0.8}};
    const ExtractionParams params(0.1, 1.0);
    CHECK(fidelity(kUp, psi_k) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(expected_work(kUp, psi_k, params) ==
          doctest::Approx(0.3680642071684971).epsilon(1e-12));
    const auto [w0, w1] = work_values(params);
    CHECK(expected_work(kUp, psi_k, params) ==
          doctest::Approx(0.9 * w0 + 0.1 * w1).epsilon(1e-13));
}

TEST_CASE("quasi-static sample mean matches expected work") {
    Philox rng(59);
    const ExtractionParams params(0.2, 1.0);
    const PureQubit psi = kUp;
    const PureQubit psi_k{BlochVector{0.6, 0.0, 0.8}};
    double sum = 0.0, sum2 = 0.0;
    const long n = 100000;
    for (long i = 0; i < n; ++i) {
        const double dw = run_round_quasistatic(psi, psi_k, params, rng).delta_w;
        sum += dw;
        sum2 += dw * dw;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - expected_work(psi, psi_k, params)) <= 4.0 * se);
}

TEST_CASE("finite-M degenerate chain") {
    Philox rng(61);
    const ExtractionParams params(0.5, 1.0, 1);
    for (int i = 0; i < 50; ++i) {
        const RoundOutcome out = run_round_finite_m(kUp, kUp, params, rng);
        CHECK(out.branch == 0);
        CHECK(out.delta_w == doctest::Approx(0.0));
        CHECK(out.reward == 1); // dW == midpoint == 0
    }
}

TEST_CASE("finite-M expectation converges at rate 1/M") {
    const auto [w0, w1] = work_values(ExtractionParams(0.25, 1.0));
    double prev_err = 0.0;
    for (long m : {100L, 1000L, 10000L}) {
        const double err =
            std::abs(finite_m_expected_work(0, ExtractionParams(0.25, 1.0, m)) - w0);
        if (prev_err > 0.0) {
            const double ratio = prev_err / err;
            CHECK(ratio > 8.0);
            CHECK(ratio < 12.5);
        }
        prev_err = err;
    }
    // Branch 1 converges to w1 as well.
    const double err1 =
        std::abs(finite_m_expected_work(1, ExtractionParams(0.25, 1.0, 10000)) - w1);
    CHECK(err1 < 5e-3);
}

TEST_CASE("finite-M Monte Carlo agrees with the exact expectation") {
    Philox rng(67);
    const ExtractionParams params(0.25, 1.0, 100);
    const GapTable gaps(params);
    const double expect = finite_m_expected_work(0, params);
    double sum = 0.0, sum2 = 0.0;
    const long n = 20000;
    for (long i = 0; i < n; ++i) {
        const double dw = run_round_finite_m(kUp, kUp, params, gaps, rng).delta_w;
        sum += dw;
        sum2 += dw * dw;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - expect) <= 4.0 * se);
}

TEST_CASE("finite-M reward approximates the Born rule") {
    Philox rng(71);
    const ExtractionParams params(0.2, 1.0, 300);
    const GapTable gaps(params);
    const PureQubit psi_k{BlochVector{std::sqrt(1.0 - 0.64), 0.0, 0.8}};
    const double p = fidelity(kUp, psi_k);
    long ones = 0;
    const long n = 20000;
    for (long i = 0; i < n; ++i)
        ones += run_round_finite_m(kUp, psi_k, params, gaps, rng).reward;
    const double phat = static_cast<double>(ones) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    CHECK(std::abs(phat - p) <= 4.0 * se + 1e-3);
}

TEST_CASE("battery ledger accumulates exactly") {
    Philox rng(73);
    BatteryLedger battery;
    double total = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double dw = rng.next_double() - 0.5;
        battery.deposit(dw);
        total += dw;
    }
    CHECK(battery.mu == doctest::Approx(total).epsilon(1e-12));
    CHECK(battery.history.size() == 1000);
    double replay = 0.0;
    for (double dw : battery.history) replay += dw;
    CHECK(battery.mu == doctest::Approx(replay).epsilon(1e-9));
}
