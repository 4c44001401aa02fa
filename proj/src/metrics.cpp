#include "tent/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "tent/errors.hpp"
#include "tent/numeric.hpp"

namespace tent {

namespace {

void require_comparable(const Partition& a, const Partition& b) {
  if (a.empty() || b.empty())
    throw Error(Errc::LengthMismatch, "partitions must be non-empty");
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << "partitions have lengths " << a.size() << " and " << b.size();
    throw Error(Errc::LengthMismatch, msg.str());
  }
}

std::vector<std::size_t> dense_ids(const Partition& p, std::size_t& blocks) {
  std::unordered_map<int, std::size_t> remap;
  remap.reserve(p.size());
  std::vector<std::size_t> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [it, fresh] = remap.try_emplace(p[i], remap.size());
    (void)fresh;
    out[i] = it->second;
  }
  blocks = remap.size();
  return out;
}

long long choose2(long long m) { return m * (m - 1) / 2; }

double shannon_of_sums(const std::vector<long long>& sums, long long n) {
  std::vector<double> terms;
  terms.reserve(sums.size());
  for (long long s : sums) {
    if (s == 0) continue;
    double p = static_cast<double>(s) / static_cast<double>(n);
    terms.push_back(-p * std::log(p));
  }
  return stable_sum_inplace(terms);
}

double mutual_information(const ContingencyTable& t) {
  std::vector<double> terms;
  terms.reserve(t.counts.size());
  double n = static_cast<double>(t.n);
  for (std::size_t i = 0; i < t.r; ++i) {
    for (std::size_t j = 0; j < t.s; ++j) {
      long long c = t.at(i, j);
      if (c == 0) continue;
      double pij = static_cast<double>(c) / n;
      double ratio = (n * static_cast<double>(c)) /
                     (static_cast<double>(t.row_sums[i]) *
                      static_cast<double>(t.col_sums[j]));
      terms.push_back(pij * std::log(ratio));
    }
  }
  return stable_sum_inplace(terms);
}

// Rand index between two partitions via their contingency table.
double rand_index(const ContingencyTable& t) {
  long long s11 = 0;
  for (long long c : t.counts) s11 += choose2(c);
  long long sa = 0, sb = 0;
  for (long long c : t.row_sums) sa += choose2(c);
  for (long long c : t.col_sums) sb += choose2(c);
  long long pairs = choose2(t.n);
  if (pairs == 0) return 1.0;  // single item: trivially identical
  double agreements = static_cast<double>(pairs) + 2.0 * static_cast<double>(s11) -
                      static_cast<double>(sa) - static_cast<double>(sb);
  return agreements / static_cast<double>(pairs);
}

}  // namespace

ContingencyTable ContingencyTable::build(const Partition& a, const Partition& b) {
  require_comparable(a, b);
  ContingencyTable t;
  std::vector<std::size_t> ia = dense_ids(a, t.r);
  std::vector<std::size_t> ib = dense_ids(b, t.s);
  t.n = static_cast<long long>(a.size());
  t.counts.assign(t.r * t.s, 0);
  t.row_sums.assign(t.r, 0);
  t.col_sums.assign(t.s, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++t.counts[ia[i] * t.s + ib[i]];
    ++t.row_sums[ia[i]];
    ++t.col_sums[ib[i]];
  }
  return t;
}

double nmi(const Partition& a, const Partition& b) {
  ContingencyTable t = ContingencyTable::build(a, b);
  double ha = shannon_of_sums(t.row_sums, t.n);
  double hb = shannon_of_sums(t.col_sums, t.n);
  double denom = 0.5 * (ha + hb);
  // Both single-block: identical up to relabeling, and 0/0 is defined as 1.
  if (denom == 0.0) return 1.0;
  double value = mutual_information(t) / denom;
  return std::clamp(value, 0.0, 1.0);
}

double ari(const Partition& a, const Partition& b) {
  ContingencyTable t = ContingencyTable::build(a, b);
  long long s11 = 0;
  for (long long c : t.counts) s11 += choose2(c);
  long long sa = 0, sb = 0;
  for (long long c : t.row_sums) sa += choose2(c);
  for (long long c : t.col_sums) sb += choose2(c);
  long long pairs = choose2(t.n);
  if (pairs == 0) return 1.0;
  double expected = static_cast<double>(sa) * static_cast<double>(sb) /
                    static_cast<double>(pairs);
  double maximum = 0.5 * (static_cast<double>(sa) + static_cast<double>(sb));
  if (maximum == expected) return 1.0;  // both partitions trivially extreme
  return (static_cast<double>(s11) - expected) / (maximum - expected);
}

double pri(const Partition& seg, const std::vector<Partition>& truths) {
  if (truths.empty())
    throw Error(Errc::LengthMismatch, "need at least one ground truth");
  // Mean over truths of the Rand index: with several truths, the pairwise
  // co-label frequency is an average of 0/1 indicators, and the expectation
  // over pairs factors through each truth separately.
  std::vector<double> per_truth;
  per_truth.reserve(truths.size());
  for (const Partition& truth : truths)
    per_truth.push_back(rand_index(ContingencyTable::build(seg, truth)));
  return stable_sum_inplace(per_truth) / static_cast<double>(truths.size());
}

double gce(const Partition& a, const Partition& b) {
  ContingencyTable t = ContingencyTable::build(a, b);
  // One-sided local refinement error of a against b, summed over items:
  // Σ_u Σ_v n_uv·(a_u − n_uv)/a_u, and symmetrically for b against a.
  double err_ab = 0.0, err_ba = 0.0;
  for (std::size_t i = 0; i < t.r; ++i) {
    for (std::size_t j = 0; j < t.s; ++j) {
      long long c = t.at(i, j);
      if (c == 0) continue;
      err_ab += static_cast<double>(c) *
                static_cast<double>(t.row_sums[i] - c) /
                static_cast<double>(t.row_sums[i]);
      err_ba += static_cast<double>(c) *
                static_cast<double>(t.col_sums[j] - c) /
                static_cast<double>(t.col_sums[j]);
    }
  }
  return std::min(err_ab, err_ba) / static_cast<double>(t.n);
}

double voi(const Partition& a, const Partition& b) {
  ContingencyTable t = ContingencyTable::build(a, b);
  double ha = shannon_of_sums(t.row_sums, t.n);
  double hb = shannon_of_sums(t.col_sums, t.n);
  double value = ha + hb - 2.0 * mutual_information(t);
  return std::max(0.0, value);
}

}  // namespace tent
