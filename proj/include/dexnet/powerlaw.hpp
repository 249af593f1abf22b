#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dexnet {

enum class FitMode { discrete, continuous };

std::string fit_mode_str(FitMode mode);

struct FitResult {
  double alpha = 0;        // MLE exponent on the fitted tail
  double xmin = 0;         // lower cut-off
  double sigma = 0;        // standard error of alpha, (alpha-1)/sqrt(n_tail)
  double ks_distance = 0;  // sup |empirical - fitted| CDF over the tail
  std::size_t n_tail = 0;  // samples >= xmin
  FitMode mode = FitMode::continuous;
};

struct FitOptions {
  // Candidate xmins are the distinct sample values between these sample
  // quantiles; when there are more distinct values than max_candidates the
  // list is thinned by even strides (KS scans over every distinct value of
  // a large continuous sample would be quadratic).
  double candidate_lo_quantile = 0.01;
  double candidate_hi_quantile = 0.95;
  std::size_t max_candidates = 512;
  bool serial_scan = false;  // reference path, kept for tests and benchmarks
};

// Maximum-likelihood power-law fit with automatic lower cut-off selection:
// the xmin (among candidates) minimizing the KS distance wins, ties going to
// the smallest xmin. Continuous mode: alpha = 1 + n / sum ln(x_i/xmin);
// discrete mode shifts the cut-off by 1/2, a rounding approximation whose
// alpha error stays under 1% for alpha <= 3.5 once xmin >= 3. Throws
// ArgumentError on nonpositive samples or fewer than 10 samples, and a
// degenerate-input ArgumentError when all samples are identical.
FitResult fit(std::span<const double> samples, FitMode mode,
              std::optional<double> xmin_override = std::nullopt,
              const FitOptions& options = {});

// KS distance between the empirical CDF of the tail (samples >= xmin) and
// the fitted power-law CDF. Throws ArgumentError when the tail is empty.
double ks_distance(std::span<const double> samples, double alpha, double xmin,
                   FitMode mode);

// Inverse-CDF draw at probability u in [0,1). Continuous:
// xmin * (1-u)^(-1/(alpha-1)); discrete: the same draw from xmin - 1/2,
// rounded to the nearest integer.
double power_law_quantile(double alpha, double xmin, double u, FitMode mode);

// n deterministic inverse-CDF samples for a given seed.
std::vector<double> synth_power_law(double alpha, double xmin, std::size_t n,
                                    std::uint64_t seed, FitMode mode);

}  // namespace dexnet
