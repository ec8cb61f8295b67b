#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "wex/jc.hpp"
#include "wex/rng.hpp"

using namespace wex;

namespace {
const PureQubit kUp{BlochVector{0, 0, 1}};
const PureQubit kDown{BlochVector{0, 0, -1}};
const PureQubit kPlus{BlochVector{1, 0, 0}};
} // namespace

TEST_CASE("jc_theta values and limit") {
    CHECK(jc_theta(0) == doctest::Approx(0.0));
    CHECK(jc_theta(3) == doctest::Approx(0.5 * M_PI * std::sqrt(0.75)).epsilon(1e-14));
    CHECK(jc_theta(3) == doctest::Approx(1.3603495231756633).epsilon(1e-12));
    double prev = -1.0;
    for (long n : {0L, 1L, 2L, 5L, 100L, 100000L}) {
        const double th = jc_theta(n);
        CHECK(th > prev);
        CHECK(th < 0.5 * M_PI);
        prev = th;
    }
    CHECK(jc_theta(1000000000000L) == doctest::Approx(0.5 * M_PI).epsilon(1e-9));
    CHECK_THROWS_AS(jc_theta(-1), std::domain_error);
}

TEST_CASE("outcome probabilities sum to one") {
    for (long n : {0L, 1L, 2L, 3L, 17L, 1000L, 1000000L}) {
        for (double p = 0.0; p <= 1.0; p += 0.0625) {
            const auto probs = jc_outcome_probs(p, n);
            CHECK(probs[0] + probs[1] + probs[2] == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(probs[0] >= 0.0);
            CHECK(probs[1] >= 0.0);
            CHECK(probs[2] >= 0.0);
        }
    }
    // n = 0 kills the downward branch exactly.
    CHECK(jc_outcome_probs(0.3, 0)[2] == 0.0);
}

TEST_CASE("perfect knowledge always charges") {
    Philox rng(101);
    for (int i = 0; i < 100; ++i) {
        const JcOutcome out = jc_round(kUp, kUp, JcParams(2.5, 7), rng);
        CHECK(out.n_next == 8);
        CHECK(out.delta_w == doctest::Approx(2.5));
        CHECK(out.reward == 1);
    }
}

TEST_CASE("occupation never drops below zero") {
    Philox rng(103);
    long n = 0;
    for (int i = 0; i < 20000; ++i) {
        const JcOutcome out = jc_round(kUp, kPlus, JcParams(1.0, n), rng);
        n = out.n_next;
        CHECK(n >= 0);
    }
}

TEST_CASE("n = 0 rounds are two-outcome Born trials") {
    Philox rng(107);
    long ups = 0;
    const long trials = 100000;
    for (long i = 0; i < trials; ++i) {
        const JcOutcome out = jc_round(kUp, kPlus, JcParams(1.0, 0), rng);
        CHECK(out.n_next >= 0);
        ups += out.reward;
    }
    const double phat = static_cast<double>(ups) / static_cast<double>(trials);
    CHECK(std::abs(phat - 0.5) <= 4.0 * std::sqrt(0.25 / static_cast<double>(trials)));
}

TEST_CASE("expected work closed form") {
    CHECK(jc_expected_work(1.0, 12, 3.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(jc_expected_work(0.0, 0, 3.0) == doctest::Approx(0.0));
    CHECK(jc_expected_work(0.5, 1000000000000L, 1.0) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("sample mean matches expected work") {
    Philox rng(109);
    for (const auto& [probe, n] :
         std::vector<std::pair<PureQubit, long>>{{kPlus, 0}, {kPlus, 5},
                                                 {PureQubit{BlochVector{0.6, 0, 0.8}}, 2}}) {
        const double p = fidelity(kUp, probe);
        double sum = 0.0, sum2 = 0.0;
        const long rounds = 100000;
        for (long i = 0; i < rounds; ++i) {
            const double dw = jc_round(kUp, probe, JcParams(1.0, n), rng).delta_w;
            sum += dw;
            sum2 += dw * dw;
        }
        const double mean = sum / rounds;
        const double se = std::sqrt((sum2 / rounds - mean * mean) / rounds);
        CHECK(std::abs(mean - jc_expected_work(p, n, 1.0)) <= 4.0 * se);
    }
}

TEST_CASE("round dissipation and its cap") {
    CHECK(jc_dissipation_round(1.0, 9, 2.0) == doctest::Approx(0.0));
    CHECK(jc_dissipation_round(0.0, 0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (long n : {0L, 1L, 4L, 1000L})
        for (double p = 0.0; p <= 1.0; p += 0.03125)
            CHECK(jc_dissipation_round(p, n, 1.5) <= 2.0 * 1.5 * (1.0 - p) + 1e-12);
}

TEST_CASE("dissipation equals the expected-work gap") {
    for (long n : {0L, 2L, 9L})
        for (double p : {0.0, 0.25, 0.6, 1.0})
            CHECK(jc_dissipation_round(p, n, 1.0) ==
                  doctest::Approx(1.0 - jc_expected_work(p, n, 1.0)).epsilon(1e-13));
}
