#pragma once

#include <cstdint>
#include <vector>

#include "tent/diffevo.hpp"
#include "tent/image.hpp"
#include "tent/prob.hpp"

namespace tent {

// Strictly increasing interior thresholds t_1 < … < t_{k−1}, each in
// [1, L−2]. Segment 1 covers gray levels [0, t_1], segment i covers
// [t_{i−1}+1, t_i], segment k covers [t_{k−1}+1, L−1] (the boundary
// conventions t_0 = 0 and t_k = L−1 are implied, never stored).
struct ThresholdSet {
  std::vector<int> thresholds;
  int k = 1;  // segment count = thresholds.size() + 1
  double objective = 0.0;
};

// One segment's normalized gray-level distribution. A segment with no
// histogram mass is flagged empty (mass 0, probs empty).
struct SegmentDistribution {
  int lo = 0;
  int hi = 0;
  double mass = 0.0;
  std::vector<double> probs;  // over levels lo..hi, sums to 1 when non-empty

  bool empty() const { return mass == 0.0; }
};

// Slices the histogram at the thresholds and normalizes each slice by its
// segment mass. Throws InvalidThresholds on malformed threshold sets.
std::vector<SegmentDistribution> segment_distributions(const Histogram& h,
                                                       const ThresholdSet& t);

// Posterior entropy φ(t_1,…,t_{k−1}) = Σ_i H(q_i) over the non-empty segment
// distributions; empty segments contribute 0.
double kapur_objective(const Histogram& h, const ThresholdSet& t,
                       const EntropyMeasure& m);

// Maximizes φ with differential evolution over [1, L−2]^{k−1}; candidates are
// decoded by round → sort → duplicate repair. Throws InfeasibleK when k
// exceeds the number of occupied gray levels (or the number of realizable
// segments, L−1). `threads` caps population evaluation only; the result is
// identical for any thread count.
ThresholdSet optimize_thresholds(const Histogram& h, int k,
                                 const EntropyMeasure& m, DEConfig de_cfg,
                                 std::uint64_t seed, unsigned threads = 1);

// Exact global maximizer by enumeration in lexicographic order (ties keep the
// lexicographically smallest vector). Throws TooManyCombinations when
// C(L−2, k−1) > 1e7.
ThresholdSet exhaustive_thresholds(const Histogram& h, int k,
                                   const EntropyMeasure& m);

// Replaces every pixel with its segment's representative level: the rounded
// mean gray level of the segment's histogram mass.
GrayImage apply_thresholds(const GrayImage& img, const ThresholdSet& t);

namespace detail {
// round → clamp → sort → bump duplicates upward, then cap from the right so
// the decoded vector is strictly increasing inside [1, L−2].
std::vector<int> decode_thresholds(const std::vector<double>& genotype, int L);
}  // namespace detail

}  // namespace tent
