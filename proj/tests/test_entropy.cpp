#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "tent/entropy.hpp"
#include "tent/prob.hpp"

using tent::Axis;
using tent::EntropyMeasure;
using tent::Errc;
using tent::JointDistribution;
using tent::ProbabilityVector;
using tent::VectorKind;

namespace {

constexpr double kPi4 = 0.78539816339744830962;

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const tent::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

ProbabilityVector proper(std::vector<double> v) {
  return ProbabilityVector::validate(std::move(v), VectorKind::proper);
}

}  // namespace

TEST_CASE("probability vector validation") {
  CHECK(proper({0.5, 0.5}).size() == 2);
  CHECK(proper({0.5, 0.5}).mass() == doctest::Approx(1.0));

  CHECK(thrown_code([] { proper({0.5, 0.6}); }) == Errc::SumNotOne);
  CHECK(thrown_code([] { proper({0.9, 0.2, -0.1}); }) == Errc::NegativeEntry);
  CHECK(thrown_code([] {
          proper({std::nan(""), 1.0});
        }) == Errc::NegativeEntry);
  CHECK(thrown_code([] { proper({}); }) == Errc::ParameterOutOfRange);

  auto g = ProbabilityVector::validate({0.3, 0.3}, VectorKind::generalized);
  CHECK(g.kind() == VectorKind::generalized);
  CHECK(g.mass() == doctest::Approx(0.6));
  CHECK(thrown_code([] {
          ProbabilityVector::validate({0.8, 0.3}, VectorKind::generalized);
        }) == Errc::SumExceedsOne);

  // Tolerance boundary: 1e-9 slack accepted, larger rejected.
  CHECK_NOTHROW(proper({0.5, 0.5 + 5e-10}));
  CHECK(thrown_code([] { proper({0.5, 0.5 + 5e-9}); }) == Errc::SumNotOne);
}

TEST_CASE("measure construction enforces parameter constraints") {
  CHECK(EntropyMeasure::t(0.1).family == EntropyMeasure::Family::TEntropy);
  CHECK(std::string(EntropyMeasure::shannon().family_name()) == "shannon");
  CHECK(thrown_code([] { EntropyMeasure::t(0.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([] { EntropyMeasure::t(-1.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([] { EntropyMeasure::renyi(1.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([] { EntropyMeasure::renyi(-2.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([] { EntropyMeasure::tsallis(1.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([] { EntropyMeasure::tsallis(0.0); }) ==
        Errc::ParameterOutOfRange);
}

TEST_CASE("information function") {
  CHECK(tent::information(1.0, 1.0) == 0.0);  // arctan(1) − π/4, exactly
  CHECK(tent::information(0.0, 1.0) == kPi4);
  CHECK(std::fabs(tent::information(0.5, 1.0) - 0.3217505543966421934) <=
        1e-15);
  CHECK(thrown_code([] { tent::information(0.5, 0.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([] { tent::information(1.5, 1.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([] { tent::information(-0.1, 1.0); }) ==
        Errc::ParameterOutOfRange);
}

TEST_CASE("t-entropy closed forms and frozen values") {
  for (double c : {0.1, 1.0, 10.0, 50.0}) {
    for (int n : {2, 3, 7, 100}) {
      auto u = proper(std::vector<double>(n, 1.0 / n));
      double closed = std::atan(std::pow(double(n), c)) - kPi4;
      CHECK(std::fabs(tent::t_entropy(u, c) - closed) <= 1e-12);
    }
    // Degenerate vectors give exactly zero wherever the 1 sits.
    CHECK(tent::t_entropy(proper({1.0, 0.0, 0.0}), c) == 0.0);
    CHECK(tent::t_entropy(proper({0.0, 0.0, 1.0}), c) == 0.0);
  }
  CHECK(std::fabs(tent::t_entropy(proper({0.2, 0.8}), 1.0) -
                  0.2061262976486300275) <= 1e-15);
  CHECK(thrown_code([] { tent::t_entropy(proper({0.5, 0.5}), -1.0); }) ==
        Errc::ParameterOutOfRange);

  // Generalized vectors may score negative, but never below −π/4.
  auto g = ProbabilityVector::validate({0.1}, VectorKind::generalized);
  double h = tent::t_entropy(g, 1.0);
  CHECK(h < 0.0);
  CHECK(h >= -kPi4);
}

TEST_CASE("t-entropy is exactly symmetric and zero-extension invariant") {
  std::vector<double> v = {0.05, 0.3, 0.15, 0.5};
  std::vector<double> w = {0.5, 0.15, 0.05, 0.3};
  std::vector<double> z = {0.05, 0.3, 0.15, 0.5, 0.0, 0.0};
  for (double c : {0.1, 1.0, 10.0}) {
    double hv = tent::t_entropy(proper(v), c);
    CHECK(hv == tent::t_entropy(proper(w), c));
    CHECK(hv == tent::t_entropy(proper(z), c));
  }
}

TEST_CASE("baseline entropies") {
  CHECK(std::fabs(tent::shannon_entropy(proper({0.5, 0.5})) - std::log(2.0)) <=
        1e-15);
  CHECK(tent::shannon_entropy(proper({1.0, 0.0})) == 0.0);
  CHECK(tent::renyi_entropy(proper({0.0, 1.0}), 2.0) == 0.0);
  CHECK(tent::tsallis_entropy(proper({1.0, 0.0}), 2.0) == 0.0);

  CHECK(std::fabs(tent::renyi_entropy(proper({0.25, 0.75}), 2.0) -
                  0.47000362924573555365) <= 1e-15);
  CHECK(std::fabs(tent::tsallis_entropy(proper({0.25, 0.25, 0.25, 0.25}), 2.0) -
                  0.75) <= 1e-15);

  // Baselines are defined for proper vectors only.
  auto g = ProbabilityVector::validate({0.3, 0.3}, VectorKind::generalized);
  CHECK(thrown_code([&] { tent::shannon_entropy(g); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([&] { tent::renyi_entropy(g, 2.0); }) ==
        Errc::ParameterOutOfRange);
  CHECK(thrown_code([&] { tent::tsallis_entropy(g, 2.0); }) ==
        Errc::ParameterOutOfRange);
}

TEST_CASE("entropy dispatch") {
  auto u4 = proper({0.25, 0.25, 0.25, 0.25});
  CHECK(std::fabs(tent::entropy(u4, EntropyMeasure::t(1.0)) -
                  (std::atan(4.0) - kPi4)) <= 1e-15);
  CHECK(std::fabs(tent::entropy(u4, EntropyMeasure::shannon()) -
                  std::log(4.0)) <= 1e-15);
  CHECK(std::fabs(tent::entropy(u4, EntropyMeasure::tsallis(2.0)) - 0.75) <=
        1e-15);
}

TEST_CASE("joint distribution validation and t-entropy") {
  CHECK(thrown_code([] {
          JointDistribution::validate({{0.5, 0.5}, {0.0}});
        }) == Errc::LengthMismatch);
  CHECK(thrown_code([] {
          JointDistribution::validate({{0.7, -0.1}, {0.2, 0.2}});
        }) == Errc::NegativeEntry);
  CHECK(thrown_code([] {
          JointDistribution::validate({{0.5, 0.5}, {0.5, 0.5}});
        }) == Errc::SumNotOne);

  auto degenerate = JointDistribution::validate({{0.0, 0.0}, {0.0, 1.0}});
  CHECK(tent::joint_t_entropy(degenerate, 1.0) == 0.0);

  for (double c : {0.1, 1.0, 10.0}) {
    auto u = JointDistribution::validate({{0.25, 0.25}, {0.25, 0.25}});
    double closed = std::atan(std::pow(4.0, c)) - kPi4;
    CHECK(std::fabs(tent::joint_t_entropy(u, c) - closed) <= 1e-12);
  }

  auto J = JointDistribution::validate({{0.4, 0.1}, {0.1, 0.4}});
  CHECK(std::fabs(tent::joint_t_entropy(J, 1.0) - 0.4610593312093239951) <=
        1e-15);
}

TEST_CASE("conditional t-entropy") {
  auto J = JointDistribution::validate({{0.4, 0.1}, {0.1, 0.4}});
  // Each column conditions to (0.8, 0.2), so H(X|Y) = H_c((0.2, 0.8)).
  CHECK(std::fabs(tent::conditional_t_entropy(J, 1.0, Axis::Y) -
                  0.2061262976486300275) <= 1e-15);

  // X a deterministic function of Y: every conditional is degenerate.
  auto det = JointDistribution::validate({{0.5, 0.0}, {0.0, 0.5}});
  CHECK(tent::conditional_t_entropy(det, 1.0, Axis::Y) == 0.0);
  CHECK(tent::conditional_t_entropy(det, 1.0, Axis::X) == 0.0);

  // Product distribution: conditioning changes nothing.
  std::vector<double> px = {0.2, 0.5, 0.3};
  std::vector<double> py = {0.6, 0.4};
  std::vector<std::vector<double>> cells(3, std::vector<double>(2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) cells[i][j] = px[i] * py[j];
  auto prod = JointDistribution::validate(cells);
  for (double c : {0.1, 1.0, 10.0}) {
    double hx = tent::t_entropy(tent::marginal(prod, Axis::X), c);
    CHECK(std::fabs(tent::conditional_t_entropy(prod, c, Axis::Y) - hx) <=
          1e-12);
    // Conditioning can only reduce entropy.
    CHECK(tent::conditional_t_entropy(prod, c, Axis::Y) <= hx + 1e-12);
  }

  // A zero-marginal conditioning event contributes nothing: all mass sits in
  // column 0, so H(X|Y) equals the entropy of that column's conditional.
  auto zcol = JointDistribution::validate({{0.5, 0.0}, {0.5, 0.0}});
  CHECK(tent::conditional_t_entropy(zcol, 1.0, Axis::Y) ==
        tent::t_entropy(proper({0.5, 0.5}), 1.0));
}

TEST_CASE("marginals") {
  auto J = JointDistribution::validate({{0.4, 0.1}, {0.1, 0.4}});
  auto mx = tent::marginal(J, Axis::X);
  auto my = tent::marginal(J, Axis::Y);
  CHECK(mx[0] == doctest::Approx(0.5));
  CHECK(mx[1] == doctest::Approx(0.5));
  CHECK(my[0] == doctest::Approx(0.5));
  CHECK(my[1] == doctest::Approx(0.5));

  std::vector<double> px = {0.2, 0.5, 0.3};
  std::vector<double> py = {0.6, 0.4};
  std::vector<std::vector<double>> cells(3, std::vector<double>(2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) cells[i][j] = px[i] * py[j];
  auto prod = JointDistribution::validate(cells);
  auto rx = tent::marginal(prod, Axis::X);
  auto ry = tent::marginal(prod, Axis::Y);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(rx[i] - px[i]) <= 1e-15);
  for (int j = 0; j < 2; ++j) CHECK(std::fabs(ry[j] - py[j]) <= 1e-15);

  auto degenerate = JointDistribution::validate({{0.0, 0.0}, {0.0, 1.0}});
  CHECK(tent::marginal(degenerate, Axis::X)[1] == 1.0);
  CHECK(tent::marginal(degenerate, Axis::Y)[1] == 1.0);
}
