#include "repan/pvalue_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "repan/rng.hpp"
#include "repan/special_functions.hpp"

namespace repan {

void PairedScores::validate() const {
  if (unit_ids.size() != scores_a.size() || unit_ids.size() != scores_b.size()) {
    throw std::invalid_argument("PairedScores: unit_ids, scores_a and scores_b must have equal length");
  }
  if (unit_ids.size() < 2) {
    throw std::invalid_argument("PairedScores: need at least 2 units");
  }
  std::set<std::string> seen;
  for (const auto& id : unit_ids) {
    if (!seen.insert(id).second) {
      throw std::invalid_argument("PairedScores: duplicate unit_id '" + id + "'");
    }
  }
}

void ContingencyCounts::validate() const {
  if (n00 < 0 || n01 < 0 || n10 < 0 || n11 < 0) {
    throw std::invalid_argument("ContingencyCounts: counts must be nonnegative");
  }
  if (total() < 1) {
    throw std::invalid_argument("ContingencyCounts: total count must be >= 1");
  }
}

void CorrelationTriple::validate() const {
  for (double r : {r_jk, r_jh, r_kh}) {
    if (!(std::abs(r) < 1.0)) {
      throw std::invalid_argument("CorrelationTriple: correlations must lie in (-1, 1)");
    }
  }
  if (n < 4) {
    throw std::invalid_argument("CorrelationTriple: need n >= 4, got " + std::to_string(n));
  }
}

double paired_bootstrap(const PairedScores& scores, int bootstrap_size,
                        int repetitions, std::uint64_t seed) {
  scores.validate();
  if (bootstrap_size < 1) {
    throw std::invalid_argument("paired_bootstrap: bootstrap_size must be >= 1");
  }
  if (repetitions < 1) {
    throw std::invalid_argument("paired_bootstrap: repetitions must be >= 1");
  }

  const std::size_t n = scores.size();

  // Canonical unit order, so the p-value depends only on the row multiset.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores.unit_ids[a] < scores.unit_ids[b];
  });

  std::vector<double> diff(n);
  bool all_zero = true;
  for (std::size_t j = 0; j < n; ++j) {
    diff[j] = scores.scores_a[order[j]] - scores.scores_b[order[j]];
    if (diff[j] != 0.0) all_zero = false;
  }
  if (all_zero) return 1.0;  // degenerate sample carries no evidence

  const double delta = std::accumulate(diff.begin(), diff.end(), 0.0) /
                       static_cast<double>(n);
  const double cutoff = 2.0 * delta;

  Rng rng(substream_seed(seed, 0));
  long long exceed = 0;
  for (int rep = 0; rep < repetitions; ++rep) {
    double sum = 0.0;
    for (int k = 0; k < bootstrap_size; ++k) {
      sum += diff[rng.next_below(n)];
    }
    if (sum / bootstrap_size > cutoff) ++exceed;
  }
  return static_cast<double>(exceed) / repetitions;
}

namespace {

struct SignedRankData {
  std::vector<double> ranks;  // of |d|, tie-averaged
  double w_plus = 0.0;
  int m = 0;
};

SignedRankData signed_rank_statistic(const PairedScores& scores) {
  std::vector<double> d;
  d.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double di = scores.scores_a[i] - scores.scores_b[i];
    if (di != 0.0) d.push_back(di);
  }
  if (d.empty()) {
    throw std::invalid_argument("wilcoxon_signed_rank: all paired differences are zero");
  }
  std::vector<double> abs_d(d.size());
  std::transform(d.begin(), d.end(), abs_d.begin(),
                 [](double x) { return std::abs(x); });
  SignedRankData out;
  out.m = static_cast<int>(d.size());
  out.ranks = rank_average_ties(abs_d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0.0) out.w_plus += out.ranks[i];
  }
  return out;
}

// Exact null distribution of W+ over all 2^m sign assignments, tabulated by
// dynamic programming over doubled ranks (tie-averaged ranks are
// half-integers, so doubling makes them exact integers).
double wilcoxon_exact_p(const SignedRankData& sr, Alternative alternative) {
  const int m = sr.m;
  long long total2 = 0;
  std::vector<long long> r2(sr.ranks.size());
  for (std::size_t i = 0; i < sr.ranks.size(); ++i) {
    r2[i] = std::llround(2.0 * sr.ranks[i]);
    total2 += r2[i];
  }
  std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
  counts[0] = 1.0;
  for (long long r : r2) {
    for (long long s = total2; s >= r; --s) {
      counts[s] += counts[s - r];
    }
  }
  const long long w2 = std::llround(2.0 * sr.w_plus);
  double ge = 0.0, le = 0.0;
  for (long long s = 0; s <= total2; ++s) {
    if (s >= w2) ge += counts[s];
    if (s <= w2) le += counts[s];
  }
  const double scale = std::exp2(-m);  // counts are exact, 2^-m is a power of two
  ge *= scale;
  le *= scale;
  switch (alternative) {
    case Alternative::greater: return ge;
    case Alternative::less: return le;
    case Alternative::two_sided: return std::min(1.0, 2.0 * std::min(ge, le));
  }
  throw std::logic_error("unreachable");
}

double wilcoxon_normal_p(const SignedRankData& sr, Alternative alternative) {
  const double m = sr.m;
  const double mu = m * (m + 1.0) / 4.0;

  // Tie correction: sum of (t^3 - t) over groups of tied |d|.
  std::vector<double> sorted_ranks = sr.ranks;
  std::sort(sorted_ranks.begin(), sorted_ranks.end());
  double tie_sum = 0.0;
  std::size_t i = 0;
  while (i < sorted_ranks.size()) {
    std::size_t j = i;
    while (j + 1 < sorted_ranks.size() && sorted_ranks[j + 1] == sorted_ranks[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_sum += t * t * t - t;
    i = j + 1;
  }
  const double sigma2 = m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - tie_sum / 48.0;
  const double sigma = std::sqrt(sigma2);
  const double w = sr.w_plus;
  switch (alternative) {
    case Alternative::greater:
      return std_normal_sf((w - mu - 0.5) / sigma);
    case Alternative::less:
      return std_normal_cdf((w - mu + 0.5) / sigma);
    case Alternative::two_sided:
      return std::min(1.0, 2.0 * std_normal_sf((std::abs(w - mu) - 0.5) / sigma));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

double wilcoxon_signed_rank(const PairedScores& scores, Alternative alternative,
                            int exact_limit) {
  scores.validate();
  const SignedRankData sr = signed_rank_statistic(scores);
  if (sr.m <= exact_limit) return wilcoxon_exact_p(sr, alternative);
  return wilcoxon_normal_p(sr, alternative);
}

namespace {

// P(Bin(n, 1/2) >= k), exact. For n <= 126 the binomial row fits in
// unsigned __int128, so the tail is an exact integer scaled by 2^-n and
// incurs a single rounding on conversion. Larger n falls back to summing
// exp(ln C(n, j) - n ln 2) from the small end of the tail.
double binomial_upper_tail_half(long long n, long long k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (n <= 126) {
    std::vector<unsigned __int128> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    for (long long i = 1; i <= n; ++i) {
      for (long long j = i; j >= 1; --j) row[j] += row[j - 1];
    }
    unsigned __int128 tail = 0;
    for (long long j = k; j <= n; ++j) tail += row[j];
    return std::ldexp(static_cast<double>(tail), static_cast<int>(-n));
  }
  const double log_half_n = n * std::log(0.5);
  double sum = 0.0;
  for (long long j = n; j >= k; --j) {  // ascending term size
    const double log_c = ln_gamma(n + 1.0) - ln_gamma(j + 1.0) - ln_gamma(n - j + 1.0);
    sum += std::exp(log_c + log_half_n);
  }
  return std::min(1.0, sum);
}

}  // namespace

double mcnemar(const ContingencyCounts& counts, McNemarMode mode) {
  counts.validate();
  const long long b = counts.n10;
  const long long c = counts.n01;
  const long long discordant = b + c;
  if (discordant < 1) {
    throw std::invalid_argument("mcnemar: no discordant pairs (n01 + n10 == 0)");
  }
  if (mode == McNemarMode::chi_squared_cc) {
    const double num = std::abs(static_cast<double>(b - c)) - 1.0;
    return chi_square_sf(num * num / static_cast<double>(discordant), 1);
  }
  const long long extreme = std::max(b, c);
  return std::min(1.0, 2.0 * binomial_upper_tail_half(discordant, extreme));
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spearman_rho: length mismatch");
  }
  if (x.size() < 3) {
    throw std::invalid_argument("spearman_rho: need n >= 3");
  }
  const auto rx = rank_average_ties(x);
  const auto ry = rank_average_ties(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;  // ranks always average to this
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("spearman_rho: zero rank variance (all values tied)");
  }
  return sxy / std::sqrt(sxx * syy);
}

double steiger_dependent_corr(const CorrelationTriple& triple,
                              Alternative alternative) {
  triple.validate();
  const double rbar = 0.5 * (triple.r_jk + triple.r_jh);
  const double rbar2 = rbar * rbar;
  const double psi = triple.r_kh * (1.0 - 2.0 * rbar2) -
                     0.5 * rbar2 * (1.0 - 2.0 * rbar2 - triple.r_kh * triple.r_kh);
  const double denom = (1.0 - rbar2) * (1.0 - rbar2);
  const double sbar = psi / denom;
  if (!(sbar < 1.0)) {
    throw std::domain_error("steiger_dependent_corr: degenerate correlation structure");
  }
  const double z = (fisher_z(triple.r_jk) - fisher_z(triple.r_jh)) *
                   std::sqrt((triple.n - 3.0) / (2.0 * (1.0 - sbar)));
  switch (alternative) {
    case Alternative::greater: return std_normal_sf(z);
    case Alternative::less: return std_normal_cdf(z);
    case Alternative::two_sided:
      return std::min(1.0, 2.0 * std_normal_sf(std::abs(z)));
  }
  throw std::logic_error("unreachable");
}

}  // namespace repan
