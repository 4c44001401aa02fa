#pragma once

#include <span>

#include "tent/prob.hpp"

namespace tent {

// Information content of a single event: arctan(1/p^c) − π/4, with the limit
// value π/4 at p = 0.
double information(double p_event, double c);

// H_c(p) = Σ p_i·arctan(1/p_i^c) − π/4 with 0·arctan(∞) = 0. Accepts proper
// and generalized vectors; range [0, π/4] proper, [−π/4, π/4] generalized.
double t_entropy(const ProbabilityVector& p, double c = 1.0);

// Baselines (proper vectors only; natural logarithm throughout).
double shannon_entropy(const ProbabilityVector& p);
double renyi_entropy(const ProbabilityVector& p, double alpha);
double tsallis_entropy(const ProbabilityVector& p, double q);

// Dispatch over the measure family.
double entropy(const ProbabilityVector& p, const EntropyMeasure& m);

// Joint and conditional t-entropy of a two-variable distribution.
// conditional_t_entropy(J, c, Axis::Y) is H(X|Y); Axis::X gives H(Y|X).
double joint_t_entropy(const JointDistribution& J, double c = 1.0);
double conditional_t_entropy(const JointDistribution& J, double c, Axis given);

// Row (Axis::X) or column (Axis::Y) marginal, validated proper.
ProbabilityVector marginal(const JointDistribution& J, Axis axis);

namespace detail {
// Unvalidated fast paths over raw spans for optimizer inner loops. The span
// must already satisfy the corresponding ProbabilityVector invariants.
double t_entropy_raw(std::span<const double> p, double c);
double shannon_raw(std::span<const double> p);
double renyi_raw(std::span<const double> p, double alpha);
double tsallis_raw(std::span<const double> p, double q);
double entropy_raw(std::span<const double> p, const EntropyMeasure& m);
}  // namespace detail

}  // namespace tent
