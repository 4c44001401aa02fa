#pragma once

#include <span>
#include <vector>

#include "tent/prob.hpp"

namespace tent {

// D_t(P‖Q) = Σ p_i·arctan(p_i/q_i) − π/4 at order c = 1, with the
// conventions: a p_i = 0 term contributes 0, and p_i > 0 with q_i = 0
// contributes p_i·π/2. Summed term-by-term as p_i·(arctan(p_i/q_i) − π/4) so
// identical inputs cancel exactly to 0. Range [0, π/4] on proper vectors.
double t_divergence(const ProbabilityVector& p, const ProbabilityVector& q);

// Relative frequencies of `samples` over an ordered finite support (zeros
// allowed). Throws SampleOutsideSupport for any sample not in the support.
ProbabilityVector empirical_pmf(const std::vector<int>& samples,
                                const std::vector<int>& support);

namespace detail {
// Unvalidated fast path; both spans must be equal-length proper pmfs.
double t_divergence_raw(std::span<const double> p, std::span<const double> q);
}  // namespace detail

}  // namespace tent
