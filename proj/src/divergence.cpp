#include "tent/divergence.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "tent/numeric.hpp"

namespace tent {

namespace {
constexpr double kPi4 = 0.78539816339744830962;
}

namespace detail {

double t_divergence_raw(std::span<const double> p, std::span<const double> q) {
  // p_i·(arctan(p_i/q_i) − π/4): for p == q every ratio is exactly 1 and
  // arctan(1) − π/4 is exactly 0, so the identity-of-indiscernibles holds
  // bitwise. The q_i = 0 limit arctan(∞) = π/2 gives p_i·(π/2 − π/4) = p_i·π/4
  // per term, matching the aggregate p_i·π/2 convention once the global −π/4
  // is distributed over Σ p_i = 1.
  KahanSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pi = p[i];
    if (pi == 0.0) continue;
    double qi = q[i];
    double angle = (qi == 0.0) ? kPi4 : std::atan(pi / qi) - kPi4;
    acc.add(pi * angle);
  }
  return acc.value();
}

}  // namespace detail

double t_divergence(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) {
    std::ostringstream msg;
    msg << "distributions have lengths " << p.size() << " and " << q.size();
    throw Error(Errc::LengthMismatch, msg.str());
  }
  return detail::t_divergence_raw(p.probs(), q.probs());
}

ProbabilityVector empirical_pmf(const std::vector<int>& samples,
                                const std::vector<int>& support) {
  std::unordered_map<int, std::size_t> index;
  index.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) index[support[i]] = i;
  std::vector<double> counts(support.size(), 0.0);
  for (int s : samples) {
    auto it = index.find(s);
    if (it == index.end()) {
      std::ostringstream msg;
      msg << "sample value " << s << " is not in the model support";
      throw Error(Errc::SampleOutsideSupport, msg.str());
    }
    counts[it->second] += 1.0;
  }
  if (samples.empty())
    throw Error(Errc::ParameterOutOfRange, "need at least one sample");
  double n = static_cast<double>(samples.size());
  for (double& c : counts) c /= n;
  return ProbabilityVector::validate(std::move(counts), VectorKind::proper);
}

}  // namespace tent
