#ifndef WEX_VERIFY_HPP
#define WEX_VERIFY_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wex {

struct SuiteResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Suite (a): expected work vs the Born mixture of the two work values on
/// random inputs. w0_perturbation shifts one side of the identity and exists
/// so sensitivity can be demonstrated; zero in normal use.
SuiteResult verify_mixture_identity(long cases, std::uint64_t seed,
                                    double w0_perturbation = 0.0);

/// Suite (b): finite-M mean error versus the quasi-static work value decays
/// like 1/M (log-log slope -1 +/- 0.2 over M in {1e2, 1e3, 1e4}).
SuiteResult verify_finite_m_slope(long chains, std::uint64_t seed);

/// Suite (c): empirical tails of the swap chain against the Hoeffding bound,
/// allowing 3 sigma of counting error.
SuiteResult verify_hoeffding_tail(long chains, std::uint64_t seed);

/// Suite (d): relative entropy against the 16 eps (2 - ln eps) bound on
/// sampled instances with infidelity <= eps <= 1/2.
SuiteResult verify_rel_entropy_bound(long cases, std::uint64_t seed);

/// Suite (e): ladder-model outcome distribution, Monte Carlo mean work, and
/// the dissipation-regret bound.
SuiteResult verify_jc_invariants(long rounds, std::uint64_t seed);

/// Suite (f): register entropy h(eps) <= eps - eps ln eps on a grid, plus the
/// three-outcome reduction at theta = 0.
SuiteResult verify_landauer_bounds(long grid_points);

/// Run all suites with default sizes, printing one line per suite.
/// Returns 0 when everything passed, 2 otherwise.
int run_verify(std::ostream& os);

} // namespace wex

#endif // WEX_VERIFY_HPP
