#include "tent/prob.hpp"

#include <cmath>
#include <sstream>

#include "tent/numeric.hpp"

namespace tent {

ProbabilityVector ProbabilityVector::validate(std::vector<double> raw,
                                              VectorKind kind) {
  if (raw.empty())
    throw Error(Errc::ParameterOutOfRange, "probability vector must be non-empty");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double v = raw[i];
    if (!(v >= 0.0)) {  // also rejects NaN
      std::ostringstream msg;
      msg << "entry " << i << " is " << v << "; entries must be >= 0";
      throw Error(Errc::NegativeEntry, msg.str());
    }
    if (v > 1.0 + kSimplexTolerance) {
      std::ostringstream msg;
      msg << "entry " << i << " is " << v << "; entries must be <= 1";
      throw Error(kind == VectorKind::proper ? Errc::SumNotOne
                                             : Errc::SumExceedsOne,
                  msg.str());
    }
  }
  double sum = stable_sum(raw);
  if (kind == VectorKind::proper) {
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      std::ostringstream msg;
      msg << "entries sum to " << sum << ", expected 1 within " << kSimplexTolerance;
      throw Error(Errc::SumNotOne, msg.str());
    }
  } else {
    if (sum > 1.0 + kSimplexTolerance) {
      std::ostringstream msg;
      msg << "entries sum to " << sum << ", expected <= 1 within "
          << kSimplexTolerance;
      throw Error(Errc::SumExceedsOne, msg.str());
    }
  }
  return ProbabilityVector(std::move(raw), kind, sum);
}

JointDistribution JointDistribution::validate(
    std::vector<std::vector<double>> table) {
  if (table.empty() || table[0].empty())
    throw Error(Errc::ParameterOutOfRange, "joint table must be non-empty");
  std::size_t rows = table.size();
  std::size_t cols = table[0].size();
  std::vector<double> cells;
  cells.reserve(rows * cols);
  for (std::size_t x = 0; x < rows; ++x) {
    if (table[x].size() != cols) {
      std::ostringstream msg;
      msg << "row " << x << " has " << table[x].size() << " cells, expected "
          << cols;
      throw Error(Errc::LengthMismatch, msg.str());
    }
    for (std::size_t y = 0; y < cols; ++y) {
      double v = table[x][y];
      if (!(v >= 0.0)) {
        std::ostringstream msg;
        msg << "cell (" << x << ", " << y << ") is " << v
            << "; cells must be >= 0";
        throw Error(Errc::NegativeEntry, msg.str());
      }
      cells.push_back(v);
    }
  }
  double sum = stable_sum(cells);
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream msg;
    msg << "cells sum to " << sum << ", expected 1 within " << kSimplexTolerance;
    throw Error(Errc::SumNotOne, msg.str());
  }
  return JointDistribution(std::move(cells), rows, cols);
}

EntropyMeasure EntropyMeasure::t(double c) {
  if (!(c > 0.0))
    throw Error(Errc::ParameterOutOfRange, "t-entropy order c must be > 0");
  return EntropyMeasure{Family::TEntropy, c};
}

EntropyMeasure EntropyMeasure::shannon() {
  return EntropyMeasure{Family::Shannon, 0.0};
}

EntropyMeasure EntropyMeasure::renyi(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0)
    throw Error(Errc::ParameterOutOfRange,
                "Renyi order alpha must be > 0 and != 1");
  return EntropyMeasure{Family::Renyi, alpha};
}

EntropyMeasure EntropyMeasure::tsallis(double q) {
  if (!(q > 0.0) || q == 1.0)
    throw Error(Errc::ParameterOutOfRange,
                "Tsallis order q must be > 0 and != 1");
  return EntropyMeasure{Family::Tsallis, q};
}

const char* EntropyMeasure::family_name() const {
  switch (family) {
    case Family::TEntropy: return "t";
    case Family::Shannon: return "shannon";
    case Family::Renyi: return "renyi";
    case Family::Tsallis: return "tsallis";
  }
  return "unknown";
}

}  // namespace tent
