#include "tent/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tent/entropy.hpp"

namespace tent {

namespace {

void check_thresholds(const Histogram& h, const ThresholdSet& t) {
  int L = h.levels();
  if (t.k != static_cast<int>(t.thresholds.size()) + 1)
    throw Error(Errc::InvalidThresholds, "k must equal thresholds.size() + 1");
  int prev = 0;
  for (std::size_t i = 0; i < t.thresholds.size(); ++i) {
    int ti = t.thresholds[i];
    if (ti < 1 || ti > L - 2) {
      std::ostringstream msg;
      msg << "threshold " << ti << " outside [1, " << L - 2 << "]";
      throw Error(Errc::InvalidThresholds, msg.str());
    }
    if (i > 0 && ti <= prev)
      throw Error(Errc::InvalidThresholds, "thresholds must strictly increase");
    prev = ti;
  }
}

// φ over raw counts without building SegmentDistribution objects; scratch is
// reused across optimizer evaluations.
double objective_from_counts(const Histogram& h, const std::vector<int>& t,
                             const EntropyMeasure& m,
                             std::vector<double>& scratch) {
  int L = h.levels();
  double phi = 0.0;
  int lo = 0;
  for (std::size_t s = 0; s <= t.size(); ++s) {
    int hi = (s < t.size()) ? t[s] : L - 1;
    long long mass = 0;
    for (int v = lo; v <= hi; ++v) mass += h.counts[static_cast<std::size_t>(v)];
    if (mass > 0) {
      scratch.clear();
      double seg_mass = static_cast<double>(mass);
      for (int v = lo; v <= hi; ++v)
        scratch.push_back(
            static_cast<double>(h.counts[static_cast<std::size_t>(v)]) /
            seg_mass);
      phi += detail::entropy_raw(scratch, m);
    }
    lo = hi + 1;
  }
  return phi;
}

}  // namespace

Histogram histogram(const GrayImage& img) {
  img.check();
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(img.levels), 0);
  for (int v : img.pixels) ++h.counts[static_cast<std::size_t>(v)];
  h.total = static_cast<long long>(img.pixels.size());
  return h;
}

std::vector<SegmentDistribution> segment_distributions(const Histogram& h,
                                                       const ThresholdSet& t) {
  check_thresholds(h, t);
  int L = h.levels();
  std::vector<SegmentDistribution> out;
  out.reserve(static_cast<std::size_t>(t.k));
  int lo = 0;
  for (std::size_t s = 0; s <= t.thresholds.size(); ++s) {
    int hi = (s < t.thresholds.size()) ? t.thresholds[s] : L - 1;
    SegmentDistribution seg;
    seg.lo = lo;
    seg.hi = hi;
    long long mass = 0;
    for (int v = lo; v <= hi; ++v) mass += h.counts[static_cast<std::size_t>(v)];
    if (mass > 0) {
      seg.mass = static_cast<double>(mass) / static_cast<double>(h.total);
      seg.probs.reserve(static_cast<std::size_t>(hi - lo + 1));
      for (int v = lo; v <= hi; ++v)
        seg.probs.push_back(
            static_cast<double>(h.counts[static_cast<std::size_t>(v)]) /
            static_cast<double>(mass));
    }
    out.push_back(std::move(seg));
    lo = hi + 1;
  }
  return out;
}

double kapur_objective(const Histogram& h, const ThresholdSet& t,
                       const EntropyMeasure& m) {
  check_thresholds(h, t);
  std::vector<double> scratch;
  return objective_from_counts(h, t.thresholds, m, scratch);
}

namespace detail {

std::vector<int> decode_thresholds(const std::vector<double>& genotype, int L) {
  std::vector<int> t(genotype.size());
  for (std::size_t i = 0; i < genotype.size(); ++i)
    t[i] = std::clamp(static_cast<int>(std::lround(genotype[i])), 1, L - 2);
  std::sort(t.begin(), t.end());
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] <= t[i - 1]) t[i] = t[i - 1] + 1;
  // Cap from the right at strictly increasing ceilings L−2, L−3, …, then
  // restore strictness; stays inside [1, L−2] whenever k−1 ≤ L−2.
  for (std::size_t i = t.size(); i-- > 0;) {
    int cap = L - 2 - static_cast<int>(t.size() - 1 - i);
    if (t[i] > cap) t[i] = cap;
  }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] <= t[i - 1]) t[i] = t[i - 1] + 1;
  return t;
}

}  // namespace detail

ThresholdSet optimize_thresholds(const Histogram& h, int k,
                                 const EntropyMeasure& m, DEConfig de_cfg,
                                 std::uint64_t seed, unsigned threads) {
  int L = h.levels();
  if (k < 2 || k > L)
    throw Error(Errc::InvalidConfig, "segment count k must be in [2, L]");
  int occupied = h.occupied_levels();
  if (k > occupied) {
    std::ostringstream msg;
    msg << "k = " << k << " exceeds the " << occupied << " occupied gray levels";
    throw Error(Errc::InfeasibleK, msg.str());
  }
  if (k - 1 > L - 2) {
    std::ostringstream msg;
    msg << "k = " << k << " needs " << k - 1
        << " interior thresholds but only " << L - 2 << " positions exist";
    throw Error(Errc::InfeasibleK, msg.str());
  }

  std::size_t d = static_cast<std::size_t>(k - 1);
  BoxBounds bounds;
  bounds.lower.assign(d, 1.0);
  bounds.upper.assign(d, static_cast<double>(L - 2));
  de_cfg.seed = seed;

  auto objective = [&](const std::vector<double>& x) {
    std::vector<double> scratch;
    std::vector<int> t = detail::decode_thresholds(x, L);
    return objective_from_counts(h, t, m, scratch);
  };
  DEResult de = de_optimize(objective, bounds, de_cfg, OptSense::maximize,
                            threads);

  ThresholdSet best;
  best.thresholds = detail::decode_thresholds(de.best_x, L);
  best.k = k;
  std::vector<double> scratch;
  best.objective = objective_from_counts(h, best.thresholds, m, scratch);

  // DE may legitimately park thresholds so that a segment holds no mass
  // (empty segments score 0, keeping the landscape total). If that happened,
  // try an occupied-level quantile split, which is feasible whenever every
  // segment can own at least one occupied level, and keep it unless it loses.
  auto has_empty = [&](const std::vector<int>& t) {
    int lo = 0;
    for (std::size_t s = 0; s <= t.size(); ++s) {
      int hi = (s < t.size()) ? t[s] : L - 1;
      long long mass = 0;
      for (int v = lo; v <= hi; ++v)
        mass += h.counts[static_cast<std::size_t>(v)];
      if (mass == 0) return true;
      lo = hi + 1;
    }
    return false;
  };
  if (has_empty(best.thresholds)) {
    std::vector<int> levels;
    for (int v = 0; v < L; ++v)
      if (h.counts[static_cast<std::size_t>(v)] > 0) levels.push_back(v);
    int mcount = static_cast<int>(levels.size());
    std::vector<int> cuts(d);
    bool feasible = true;
    for (std::size_t i = 0; i < d; ++i) {
      // Segment i+1 starts at occupied index s_i; threshold sits just below.
      int s = static_cast<int>(((i + 1) * static_cast<std::size_t>(mcount)) /
                               static_cast<std::size_t>(k));
      s = std::max(s, static_cast<int>(i) + 1);
      if (s >= mcount) { feasible = false; break; }
      int ti = levels[static_cast<std::size_t>(s)] - 1;
      ti = std::clamp(ti, 1, L - 2);
      if (i > 0 && ti <= cuts[i - 1]) { feasible = false; break; }
      cuts[i] = ti;
    }
    if (feasible && !has_empty(cuts)) {
      double phi = objective_from_counts(h, cuts, m, scratch);
      if (phi >= best.objective) {
        best.thresholds = cuts;
        best.objective = phi;
      }
    }
  }
  return best;
}

ThresholdSet exhaustive_thresholds(const Histogram& h, int k,
                                   const EntropyMeasure& m) {
  int L = h.levels();
  if (k < 2 || k > L)
    throw Error(Errc::InvalidConfig, "segment count k must be in [2, L]");
  if (k - 1 > L - 2)
    throw Error(Errc::InfeasibleK, "more thresholds than interior positions");

  int d = k - 1;
  double combos = 1.0;
  for (int i = 0; i < d; ++i)
    combos *= static_cast<double>(L - 2 - i) / static_cast<double>(i + 1);
  if (combos > 1e7) {
    std::ostringstream msg;
    msg << "C(" << L - 2 << ", " << d << ") ~ " << combos << " exceeds 1e7";
    throw Error(Errc::TooManyCombinations, msg.str());
  }

  std::vector<int> t(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) t[static_cast<std::size_t>(i)] = 1 + i;
  std::vector<double> scratch;
  ThresholdSet best;
  best.k = k;
  bool first = true;
  while (true) {
    double phi = objective_from_counts(h, t, m, scratch);
    // Strict improvement only: lexicographic enumeration order means ties
    // keep the lexicographically smallest threshold vector.
    if (first || phi > best.objective) {
      best.objective = phi;
      best.thresholds = t;
      first = false;
    }
    // Advance the combination odometer (last position that can move).
    int i = d - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == L - 2 - (d - 1 - i)) --i;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j)
      t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

GrayImage apply_thresholds(const GrayImage& img, const ThresholdSet& t) {
  Histogram h = histogram(img);
  int L = h.levels();
  if (!t.thresholds.empty()) check_thresholds(h, t);

  std::vector<int> reps;
  int lo = 0;
  for (std::size_t s = 0; s <= t.thresholds.size(); ++s) {
    int hi = (s < t.thresholds.size()) ? t.thresholds[s] : L - 1;
    long long mass = 0;
    long long weighted = 0;
    for (int v = lo; v <= hi; ++v) {
      mass += h.counts[static_cast<std::size_t>(v)];
      weighted += h.counts[static_cast<std::size_t>(v)] * v;
    }
    int rep;
    if (mass > 0)
      rep = static_cast<int>(std::lround(static_cast<double>(weighted) /
                                         static_cast<double>(mass)));
    else
      rep = (lo + hi) / 2;  // arbitrary: no pixel maps here
    reps.push_back(std::clamp(rep, 0, L - 1));
    lo = hi + 1;
  }

  GrayImage out = img;
  for (int& v : out.pixels) {
    std::size_t seg = static_cast<std::size_t>(
        std::upper_bound(t.thresholds.begin(), t.thresholds.end(), v) -
        t.thresholds.begin());
    v = reps[seg];
  }
  return out;
}

}  // namespace tent
