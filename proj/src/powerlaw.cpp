#include "dexnet/powerlaw.hpp"

#include <algorithm>
#include <cmath>

#include "dexnet/errors.hpp"
#include "dexnet/rng.hpp"

namespace dexnet {

namespace {

// Sup distance between the empirical step CDF of a sorted tail and the
// model CDF. In continuous mode both sides of each empirical step compare
// against F(x) = 1 - (x/xmin)^(1-alpha). In discrete mode the model is
// itself a step function over integers: P(X < x) uses the bin edge x - 1/2
// and P(X <= x) the edge x + 1/2, relative to xmin - 1/2.
double ks_on_sorted_tail(std::span<const double> tail, double alpha,
                         double xmin, FitMode mode) {
  const double n = static_cast<double>(tail.size());
  const bool discrete = mode == FitMode::discrete;
  const double base = discrete ? xmin - 0.5 : xmin;
  auto model_cdf = [&](double edge) {
    return 1.0 - std::pow(edge / base, 1.0 - alpha);
  };
  double worst = 0.0;
  std::size_t i = 0;
  while (i < tail.size()) {
    std::size_t j = i;
    while (j < tail.size() && tail[j] == tail[i]) ++j;
    const double x = tail[i];
    const double model_below = model_cdf(discrete ? x - 0.5 : x);
    const double model_at = model_cdf(discrete ? x + 0.5 : x);
    const double below = static_cast<double>(i) / n;       // P(X < x)
    const double at_or_below = static_cast<double>(j) / n;  // P(X <= x)
    worst = std::max(worst, std::abs(below - model_below));
    worst = std::max(worst, std::abs(at_or_below - model_at));
    i = j;
  }
  return worst;
}

// MLE alpha for the tail starting at sorted index k, using a precomputed
// suffix sum of ln(x). Returns 0 when the tail is degenerate.
double tail_alpha(std::span<const double> sorted, std::span<const double> suffix_log,
                  std::size_t k, double xmin, FitMode mode) {
  const auto n_tail = static_cast<double>(sorted.size() - k);
  const double shift = mode == FitMode::discrete ? xmin - 0.5 : xmin;
  const double log_sum = suffix_log[k] - n_tail * std::log(shift);
  if (!(log_sum > 0.0)) return 0.0;
  return 1.0 + n_tail / log_sum;
}

struct Candidate {
  double ks = 0;
  double xmin = 0;
  double alpha = 0;
  std::size_t n_tail = 0;
  bool valid = false;
};

// Smaller KS wins; exact ties go to the smaller xmin, so the scan result is
// independent of evaluation order.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.ks != b.ks) return a.ks < b.ks;
  return a.xmin < b.xmin;
}

Candidate evaluate_candidate(std::span<const double> sorted,
                             std::span<const double> suffix_log, double xmin,
                             FitMode mode) {
  Candidate c;
  c.xmin = xmin;
  const auto k = static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), xmin) - sorted.begin());
  if (sorted.size() - k < 2) return c;
  c.n_tail = sorted.size() - k;
  c.alpha = tail_alpha(sorted, suffix_log, k, xmin, mode);
  if (!(c.alpha > 1.0) || !std::isfinite(c.alpha)) return c;
  c.ks = ks_on_sorted_tail(sorted.subspan(k), c.alpha, xmin, mode);
  c.valid = true;
  return c;
}

}  // namespace

std::string fit_mode_str(FitMode mode) {
  return mode == FitMode::discrete ? "discrete" : "continuous";
}

double ks_distance(std::span<const double> samples, double alpha, double xmin,
                   FitMode mode) {
  if (!(alpha > 1.0)) throw ArgumentError("ks_distance requires alpha > 1");
  if (!(xmin > 0.0)) throw ArgumentError("ks_distance requires xmin > 0");
  std::vector<double> tail;
  for (double x : samples)
    if (x >= xmin) tail.push_back(x);
  if (tail.empty())
    throw ArgumentError("ks_distance: no samples at or above xmin");
  std::sort(tail.begin(), tail.end());
  return ks_on_sorted_tail(tail, alpha, xmin, mode);
}

FitResult fit(std::span<const double> samples, FitMode mode,
              std::optional<double> xmin_override, const FitOptions& options) {
  if (samples.size() < 10)
    throw ArgumentError("power-law fit requires at least 10 samples, got " +
                        std::to_string(samples.size()));
  std::vector<double> sorted;
  sorted.reserve(samples.size());
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw ArgumentError("power-law fit requires positive samples");
    sorted.push_back(x);
  }
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back())
    throw ArgumentError("degenerate input: all samples identical");

  std::vector<double> suffix_log(sorted.size() + 1, 0.0);
  for (std::size_t i = sorted.size(); i-- > 0;)
    suffix_log[i] = suffix_log[i + 1] + std::log(sorted[i]);

  std::vector<double> candidates;
  if (xmin_override) {
    if (!(*xmin_override > 0.0))
      throw ArgumentError("xmin override must be positive");
    candidates.push_back(*xmin_override);
  } else {
    const auto quantile_value = [&](double q) {
      auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1));
      return sorted[idx];
    };
    const double lo = quantile_value(options.candidate_lo_quantile);
    const double hi = quantile_value(options.candidate_hi_quantile);
    std::vector<double> distinct;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (i > 0 && sorted[i] == sorted[i - 1]) continue;
      if (sorted[i] >= lo && sorted[i] <= hi) distinct.push_back(sorted[i]);
    }
    if (distinct.empty()) distinct.push_back(lo);
    if (distinct.size() <= options.max_candidates) {
      candidates = std::move(distinct);
    } else {
      const double stride = static_cast<double>(distinct.size()) /
                            static_cast<double>(options.max_candidates);
      candidates.reserve(options.max_candidates);
      for (std::size_t i = 0; i < options.max_candidates; ++i)
        candidates.push_back(distinct[static_cast<std::size_t>(
            static_cast<double>(i) * stride)]);
    }
  }

  Candidate best;
  if (options.serial_scan) {
    for (double xmin : candidates) {
      Candidate c = evaluate_candidate(sorted, suffix_log, xmin, mode);
      if (better(c, best)) best = c;
    }
  } else {
    const auto count = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel
    {
      Candidate local;
#pragma omp for nowait
      for (std::int64_t i = 0; i < count; ++i) {
        Candidate c = evaluate_candidate(sorted, suffix_log,
                                         candidates[static_cast<std::size_t>(i)],
                                         mode);
        if (better(c, local)) local = c;
      }
#pragma omp critical(dexnet_fit_reduce)
      {
        if (better(local, best)) best = local;
      }
    }
  }

  if (!best.valid)
    throw ArgumentError("no usable xmin candidate (tail too small or flat)");

  FitResult result;
  result.alpha = best.alpha;
  result.xmin = best.xmin;
  result.n_tail = best.n_tail;
  result.sigma = (best.alpha - 1.0) / std::sqrt(static_cast<double>(best.n_tail));
  result.ks_distance = best.ks;
  result.mode = mode;
  return result;
}

double power_law_quantile(double alpha, double xmin, double u, FitMode mode) {
  if (!(alpha > 1.0)) throw ArgumentError("quantile requires alpha > 1");
  if (!(xmin > 0.0)) throw ArgumentError("quantile requires xmin > 0");
  if (!(u >= 0.0) || u >= 1.0) throw ArgumentError("quantile requires u in [0,1)");
  if (mode == FitMode::discrete) {
    const double y = (xmin - 0.5) * std::pow(1.0 - u, -1.0 / (alpha - 1.0));
    return std::floor(y + 0.5);
  }
  return xmin * std::pow(1.0 - u, -1.0 / (alpha - 1.0));
}

std::vector<double> synth_power_law(double alpha, double xmin, std::size_t n,
                                    std::uint64_t seed, FitMode mode) {
  if (n == 0) throw ArgumentError("sample count must be positive");
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(power_law_quantile(alpha, xmin, rng.uniform01(), mode));
  return out;
}

}  // namespace dexnet
