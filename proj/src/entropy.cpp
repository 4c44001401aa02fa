#include "tent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tent/numeric.hpp"

namespace tent {

namespace {

constexpr double kPi4 = 0.78539816339744830962;  // π/4
constexpr double kPi2 = 1.57079632679489661923;  // π/2

void require_positive_c(double c) {
  if (!(c > 0.0))
    throw Error(Errc::ParameterOutOfRange, "entropy order c must be > 0");
}

void require_proper(const ProbabilityVector& p, const char* what) {
  if (p.kind() != VectorKind::proper)
    throw Error(Errc::ParameterOutOfRange,
                std::string(what) + " requires a proper probability vector");
}

}  // namespace

double information(double p_event, double c) {
  require_positive_c(c);
  if (!(p_event >= 0.0) || p_event > 1.0)
    throw Error(Errc::ParameterOutOfRange, "event probability must be in [0, 1]");
  // arctan(1/p^c) − π/4 == π/4 − arctan(p^c) for p > 0, and the right-hand
  // side extends continuously to p = 0 with value π/4.
  // π/2 − π/4 is exact in doubles, so p = 1 gives exactly 0.
  return kPi4 - std::atan(std::pow(p_event, c));
}

namespace detail {

double t_entropy_raw(std::span<const double> p, double c) {
  // Terms are p_i·arctan(1/p_i^c) = p_i·(π/2 − arctan(p_i^c)); zero entries
  // are skipped (the 0·arctan(∞) = 0 convention). Sorting the terms before
  // the compensated sum makes the result a function of the entry multiset,
  // so permutations and appended zeros change nothing, bitwise.
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double pi : p) {
    if (pi == 0.0) continue;
    terms.push_back(pi * (kPi2 - std::atan(std::pow(pi, c))));
  }
  return stable_sum_inplace(terms) - kPi4;
}

double shannon_raw(std::span<const double> p) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double pi : p) {
    if (pi == 0.0) continue;  // 0·log 0 = 0
    terms.push_back(-pi * std::log(pi));
  }
  return stable_sum_inplace(terms);
}

double renyi_raw(std::span<const double> p, double alpha) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double pi : p) {
    if (pi == 0.0) continue;
    terms.push_back(std::pow(pi, alpha));
  }
  double s = stable_sum_inplace(terms);
  return std::log(s) / (1.0 - alpha);
}

double tsallis_raw(std::span<const double> p, double q) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double pi : p) {
    if (pi == 0.0) continue;
    terms.push_back(std::pow(pi, q));
  }
  double s = stable_sum_inplace(terms);
  return (1.0 - s) / (q - 1.0);
}

double entropy_raw(std::span<const double> p, const EntropyMeasure& m) {
  switch (m.family) {
    case EntropyMeasure::Family::TEntropy: return t_entropy_raw(p, m.param);
    case EntropyMeasure::Family::Shannon: return shannon_raw(p);
    case EntropyMeasure::Family::Renyi: return renyi_raw(p, m.param);
    case EntropyMeasure::Family::Tsallis: return tsallis_raw(p, m.param);
  }
  throw Error(Errc::InvalidConfig, "unknown entropy family");
}

}  // namespace detail

double t_entropy(const ProbabilityVector& p, double c) {
  require_positive_c(c);
  return detail::t_entropy_raw(p.probs(), c);
}

double shannon_entropy(const ProbabilityVector& p) {
  require_proper(p, "shannon_entropy");
  return detail::shannon_raw(p.probs());
}

double renyi_entropy(const ProbabilityVector& p, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0)
    throw Error(Errc::ParameterOutOfRange,
                "Renyi order alpha must be > 0 and != 1");
  require_proper(p, "renyi_entropy");
  return detail::renyi_raw(p.probs(), alpha);
}

double tsallis_entropy(const ProbabilityVector& p, double q) {
  if (!(q > 0.0) || q == 1.0)
    throw Error(Errc::ParameterOutOfRange,
                "Tsallis order q must be > 0 and != 1");
  require_proper(p, "tsallis_entropy");
  return detail::tsallis_raw(p.probs(), q);
}

double entropy(const ProbabilityVector& p, const EntropyMeasure& m) {
  switch (m.family) {
    case EntropyMeasure::Family::TEntropy: return t_entropy(p, m.param);
    case EntropyMeasure::Family::Shannon: return shannon_entropy(p);
    case EntropyMeasure::Family::Renyi: return renyi_entropy(p, m.param);
    case EntropyMeasure::Family::Tsallis: return tsallis_entropy(p, m.param);
  }
  throw Error(Errc::InvalidConfig, "unknown entropy family");
}

double joint_t_entropy(const JointDistribution& J, double c) {
  require_positive_c(c);
  return detail::t_entropy_raw(J.cells(), c);
}

double conditional_t_entropy(const JointDistribution& J, double c, Axis given) {
  require_positive_c(c);
  // H(X|Y) = Σ_{x,y} p(x,y)·arctan(1/p(x|y)^c) − π/4. Conditioning events
  // with zero marginal carry zero joint mass, so their cells are skipped by
  // the same zero-entry convention as the unconditional form.
  std::size_t nx = J.rows(), ny = J.cols();
  std::size_t outer = (given == Axis::Y) ? ny : nx;
  std::size_t inner = (given == Axis::Y) ? nx : ny;
  std::vector<double> terms;
  terms.reserve(nx * ny);
  for (std::size_t o = 0; o < outer; ++o) {
    double marg = 0.0;
    for (std::size_t i = 0; i < inner; ++i)
      marg += (given == Axis::Y) ? J.at(i, o) : J.at(o, i);
    if (marg == 0.0) continue;
    for (std::size_t i = 0; i < inner; ++i) {
      double joint = (given == Axis::Y) ? J.at(i, o) : J.at(o, i);
      if (joint == 0.0) continue;
      double cond = joint / marg;
      terms.push_back(joint * (kPi2 - std::atan(std::pow(cond, c))));
    }
  }
  return stable_sum_inplace(terms) - kPi4;
}

ProbabilityVector marginal(const JointDistribution& J, Axis axis) {
  std::size_t n = (axis == Axis::X) ? J.rows() : J.cols();
  std::size_t m = (axis == Axis::X) ? J.cols() : J.rows();
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    KahanSum acc;
    for (std::size_t j = 0; j < m; ++j)
      acc.add(axis == Axis::X ? J.at(i, j) : J.at(j, i));
    sums[i] = acc.value();
  }
  return ProbabilityVector::validate(std::move(sums), VectorKind::proper);
}

}  // namespace tent
