#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace hbee::stats {

// Normal CDF and quantile (Wichura AS241), double precision.
double normal_cdf(double z);
double normal_quantile(double p);

// Mid-ranks (average ranks for ties), 1-based.
std::vector<double> midranks(std::span<const double> values);

// Cliff's delta: (#{x_i > y_j} - #{x_i < y_j}) / (n1*n2), in [-1, 1].
// O((n1+n2) log (n1+n2)) via sorted sweep.
double cliffs_delta(std::span<const double> x, std::span<const double> y);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int n1 = 0;
    int n2 = 0;
    bool tie_corrected = false;
    bool exact = false;
};

// Mann-Whitney U with U = #{x_i > y_j} + 0.5 * #{x_i = y_j}.
// Two-sided p: exact permutation enumeration (tie-safe) when the
// combination count is tractable and n1*n2 <= 10,000; otherwise normal
// approximation with tie and continuity corrections.
TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y);

// Wilcoxon signed-rank over paired differences. Zeros are dropped
// (committed convention); statistic W = min(W+, W-). Exact two-sided p
// by sign enumeration for n <= 20, otherwise normal approximation with
// tie correction and continuity correction. All-zero input returns
// W = 0, p = 1.0.
TestResult wilcoxon_signed_rank(std::span<const double> diffs);

struct EffectEstimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double ci_level = 0.95;
    int resamples = 0;
    std::uint64_t bootstrap_seed = 0;
    bool degenerate = false;          // all resamples identical; CI collapsed to the point
    bool containment_violated = false; // BCa pathology, reported rather than clamped
};

// Bias-corrected accelerated bootstrap CI (Efron-Tibshirani).
// Deterministic given (seed, B). z0 from the replicate fraction below
// the point estimate (half-weight on ties), acceleration from jackknife
// skewness.
EffectEstimate bca_interval(std::span<const double> sample,
                            const std::function<double(std::span<const double>)>& statistic,
                            int B = 1000, std::uint64_t seed = 42, double level = 0.95);

// Two-sample variant: groups are resampled independently within each
// replicate; the jackknife deletes one observation at a time across the
// pooled data.
EffectEstimate bca_interval_two_sample(
    std::span<const double> x, std::span<const double> y,
    const std::function<double(std::span<const double>, std::span<const double>)>& statistic,
    int B = 1000, std::uint64_t seed = 42, double level = 0.95);

struct SpearmanResult {
    double rho = 0.0;
    bool defined = false; // false when either input is constant
};

// Spearman correlation: Pearson over mid-rank-transformed values.
SpearmanResult spearman_rho(std::span<const double> x, std::span<const double> y);

// Gini coefficient of non-negative values with at least one positive:
// G = sum_{i,j} |v_i - v_j| / (2 n^2 mean), via sorted prefix sums.
double gini(std::span<const double> values);

// Lorenz curve points (population share, value share), ascending sort,
// from (0,0) to (1,1); n+1 points.
std::vector<std::pair<double, double>> lorenz_points(std::span<const double> values);

// Linear interpolation of the Lorenz curve at a population share.
double lorenz_share_at(const std::vector<std::pair<double, double>>& points, double pop_share);

// Conventional anchors for |delta| classification.
enum class DeltaMagnitude { Negligible, Small, Medium, Large };
DeltaMagnitude classify_delta(double delta);

} // namespace hbee::stats
