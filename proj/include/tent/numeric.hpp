#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace tent {

// Compensated (Kahan) accumulator. Keeps absolute error at a few ulps of the
// running sum independent of the number of addends.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Order-independent sum: sorts the terms ascending, then Kahan-accumulates.
// Any permutation of the inputs produces bitwise-identical output, which the
// symmetry-sensitive entropy and distance paths rely on. The buffer is taken
// by value so callers can keep a scratch vector alive across calls.
inline double stable_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  KahanSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

inline double stable_sum_inplace(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  KahanSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

// Median of an unsorted sample (copies; even length averages the middle two).
inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace tent
