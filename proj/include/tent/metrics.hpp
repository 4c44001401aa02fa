#pragma once

#include <vector>

namespace tent {

// A hard partition of n items into blocks; ids are arbitrary non-negative
// integers and need not be contiguous (everything is remapped internally).
using Partition = std::vector<int>;

// r × s block-overlap counts between two partitions of the same items; the
// shared basis for every agreement metric here.
struct ContingencyTable {
  std::size_t r = 0, s = 0;
  std::vector<long long> counts;  // row-major r × s
  std::vector<long long> row_sums;
  std::vector<long long> col_sums;
  long long n = 0;

  static ContingencyTable build(const Partition& a, const Partition& b);
  long long at(std::size_t i, std::size_t j) const { return counts[i * s + j]; }
};

// Normalized mutual information in [0, 1]: MI normalized by the arithmetic
// mean of the two Shannon entropies (natural log). Two single-block
// partitions score 1 (they are identical up to relabeling).
double nmi(const Partition& a, const Partition& b);

// Adjusted Rand index in [−1, 1] via pair counting; C(·,2)-scale sums use
// exact 64-bit integers, products are widened to double (their magnitude can
// exceed 2^63 on image-sized inputs).
double ari(const Partition& a, const Partition& b);

// Probabilistic Rand index in [0, 1]: mean pairwise agreement between the
// segmentation's co-label indicator and the empirical co-label frequency
// across the ground truths; one truth reduces it to the Rand index.
double pri(const Partition& seg, const std::vector<Partition>& truths);

// Global consistency error in [0, 1]: the smaller of the two one-sided local
// refinement error sums, divided by n.
double gce(const Partition& a, const Partition& b);

// Variation of information ≥ 0: H(a) + H(b) − 2·I(a;b), natural log.
double voi(const Partition& a, const Partition& b);

}  // namespace tent
