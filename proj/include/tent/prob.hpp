#pragma once

#include <cstddef>
#include <vector>

#include "tent/errors.hpp"

namespace tent {

enum class VectorKind { proper, generalized };

inline constexpr double kSimplexTolerance = 1e-9;

// Validated probability vector. `proper` sums to 1 within 1e-9; `generalized`
// is any non-negative vector with total mass ≤ 1 + 1e-9 (a sub-probability
// sequence). Inputs are rejected, never renormalized.
class ProbabilityVector {
 public:
  static ProbabilityVector validate(std::vector<double> raw, VectorKind kind);

  const std::vector<double>& probs() const { return probs_; }
  VectorKind kind() const { return kind_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  double mass() const { return mass_; }  // W(p), the total

 private:
  ProbabilityVector(std::vector<double> p, VectorKind k, double m)
      : probs_(std::move(p)), kind_(k), mass_(m) {}

  std::vector<double> probs_;
  VectorKind kind_;
  double mass_;
};

enum class Axis { X, Y };  // X indexes rows of a joint table, Y its columns

// Joint distribution of two finite variables; entries sum to 1 within 1e-9.
class JointDistribution {
 public:
  static JointDistribution validate(std::vector<std::vector<double>> table);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t x, std::size_t y) const { return cells_[x * cols_ + y]; }
  const std::vector<double>& cells() const { return cells_; }

 private:
  JointDistribution(std::vector<double> c, std::size_t r, std::size_t s)
      : cells_(std::move(c)), rows_(r), cols_(s) {}

  std::vector<double> cells_;  // row-major
  std::size_t rows_;
  std::size_t cols_;
};

// Tagged entropy family with its parameter. Parameter constraints are
// enforced at construction so downstream code can assume a valid measure.
struct EntropyMeasure {
  enum class Family { TEntropy, Shannon, Renyi, Tsallis };

  Family family;
  double param;  // c for TEntropy, alpha for Renyi, q for Tsallis; unused otherwise

  static EntropyMeasure t(double c);
  static EntropyMeasure shannon();
  static EntropyMeasure renyi(double alpha);
  static EntropyMeasure tsallis(double q);

  const char* family_name() const;
};

}  // namespace tent
