#include "hbee/stats.hpp"

#include "hbee/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hbee::stats {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / 1.4142135623730951);
}

// Wichura's algorithm AS241, PPND16. Relative error ~1e-16 in (0,1).
double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -v : v;
}

std::vector<double> midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j); // mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

namespace {

// #{x_i > y_j} + 0.5 #{x_i = y_j} via merge over sorted copies.
double dominance_count(std::span<const double> x, std::span<const double> y) {
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    double u = 0.0;
    std::size_t lo = 0, hi = 0; // ys strictly below xs[i] / ys at most xs[i]
    for (const double v : xs) {
        while (lo < ys.size() && ys[lo] < v) ++lo;
        if (hi < lo) hi = lo;
        while (hi < ys.size() && ys[hi] <= v) ++hi;
        u += static_cast<double>(lo) + 0.5 * static_cast<double>(hi - lo);
    }
    return u;
}

double tie_term(std::span<const double> pooled) {
    std::map<double, std::size_t> counts;
    for (double v : pooled) ++counts[v];
    double t = 0.0;
    for (const auto& [_, c] : counts) {
        const double cd = static_cast<double>(c);
        t += cd * cd * cd - cd;
    }
    return t;
}

// Exact permutation distribution of the mid-rank sum for group 1.
// Rank sums are half-integer; doubling keeps them integral. Returns
// the two-sided p for the symmetric null.
constexpr std::uint64_t kExactCombinationCap = 45'000'000;

std::uint64_t choose_capped(int n, int k) {
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        if (c > kExactCombinationCap) return kExactCombinationCap + 1;
    }
    return c;
}

struct ExactCounter {
    const std::vector<long long>& r2; // doubled mid-ranks, pooled, sorted ascending
    long long lo_threshold;           // count sums <= lo
    long long hi_threshold;           // count sums >= hi
    int n1;
    std::uint64_t below = 0, above = 0, total = 0;
    std::vector<long long> prefix; // prefix[i] = sum of r2[0..i)

    ExactCounter(const std::vector<long long>& ranks2, int n1_, long long lo, long long hi)
        : r2(ranks2), lo_threshold(lo), hi_threshold(hi), n1(n1_) {
        prefix.assign(r2.size() + 1, 0);
        for (std::size_t i = 0; i < r2.size(); ++i) prefix[i + 1] = prefix[i] + r2[i];
    }

    void run() { dfs(0, n1, 0); }

    void dfs(std::size_t idx, int remaining, long long sum) {
        if (remaining == 0) {
            ++total;
            if (sum <= lo_threshold) ++below;
            if (sum >= hi_threshold) ++above;
            return;
        }
        const std::size_t n = r2.size();
        if (n - idx < static_cast<std::size_t>(remaining)) return;
        const auto rem = static_cast<std::size_t>(remaining);
        const long long min_add = prefix[idx + rem] - prefix[idx];          // smallest remaining picks
        const long long max_add = prefix[n] - prefix[n - rem];              // largest remaining picks
        const bool can_below = sum + min_add <= lo_threshold;
        const bool can_above = sum + max_add >= hi_threshold;
        if (!can_below && !can_above) {
            // every completion lands strictly inside the thresholds
            total += count_completions(n - idx, remaining);
            return;
        }
        dfs(idx + 1, remaining - 1, sum + r2[idx]);
        dfs(idx + 1, remaining, sum);
    }

    static std::uint64_t count_completions(std::size_t n, int k) {
        std::uint64_t c = 1;
        for (int i = 1; i <= k; ++i) {
            c = c * (static_cast<std::uint64_t>(n) - static_cast<std::uint64_t>(k) +
                     static_cast<std::uint64_t>(i)) /
                static_cast<std::uint64_t>(i);
        }
        return c;
    }
};

} // namespace

double cliffs_delta(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("cliffs_delta: empty sample");
    const double n1n2 = static_cast<double>(x.size()) * static_cast<double>(y.size());
    const double u = dominance_count(x, y);
    // delta = 2U/(n1 n2) - 1 given the half-tie U convention
    return 2.0 * u / n1n2 - 1.0;
}

TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
    const int n1 = static_cast<int>(x.size());
    const int n2 = static_cast<int>(y.size());
    const double u = dominance_count(x, y);
    const double n1n2 = static_cast<double>(n1) * static_cast<double>(n2);

    std::vector<double> pooled(x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    const double ties = tie_term(pooled);

    TestResult res;
    res.statistic = u;
    res.n1 = n1;
    res.n2 = n2;
    res.tie_corrected = ties > 0.0;

    const bool exact_allowed =
        n1n2 <= 10'000.0 && choose_capped(n1 + n2, std::min(n1, n2)) <= kExactCombinationCap;

    if (exact_allowed) {
        // U = R1 - n1(n1+1)/2 where R1 is the mid-rank sum of group 1,
        // so the permutation distribution of R1 gives the exact p.
        auto ranks = midranks(pooled);
        std::vector<long long> r2(ranks.size());
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            r2[i] = static_cast<long long>(std::llround(2.0 * ranks[i]));
        }
        std::sort(r2.begin(), r2.end());

        const int ns = std::min(n1, n2);
        const double us = n1 == ns ? u : n1n2 - u; // U for the smaller group
        const long long base = static_cast<long long>(ns) * (ns + 1);
        const long long r1_2 = static_cast<long long>(std::llround(2.0 * us)) + base;
        const int n = n1 + n2;
        // null symmetric about ns(n+1)/2 in rank-sum terms (doubled: ns(n+1))
        const long long center2 = static_cast<long long>(ns) * (n + 1);
        const long long observed = r1_2;
        const long long mirrored = 2 * center2 - observed;
        const long long lo = std::min(observed, mirrored);
        const long long hi = std::max(observed, mirrored);

        ExactCounter counter(r2, ns, lo, hi);
        counter.run();
        double p = (static_cast<double>(counter.below) + static_cast<double>(counter.above)) /
                   static_cast<double>(counter.total);
        if (p > 1.0) p = 1.0;
        res.p_value = p;
        res.exact = true;
        return res;
    }

    const double n = static_cast<double>(n1 + n2);
    const double mean_u = n1n2 / 2.0;
    const double var_u = n1n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if (var_u <= 0.0) {
        res.p_value = 1.0;
        return res;
    }
    double num = std::fabs(u - mean_u) - 0.5; // continuity correction
    if (num < 0.0) num = 0.0;
    const double z = num / std::sqrt(var_u);
    res.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    return res;
}

TestResult wilcoxon_signed_rank(std::span<const double> diffs) {
    if (diffs.empty()) throw std::invalid_argument("wilcoxon_signed_rank: empty input");

    std::vector<double> nz;
    for (double d : diffs) {
        if (d != 0.0) nz.push_back(d);
    }

    TestResult res;
    res.n1 = static_cast<int>(nz.size());
    res.n2 = 0;
    if (nz.empty()) {
        res.statistic = 0.0;
        res.p_value = 1.0;
        res.exact = true;
        return res;
    }

    const std::size_t n = nz.size();
    std::vector<double> abs(n);
    for (std::size_t i = 0; i < n; ++i) abs[i] = std::fabs(nz[i]);
    auto ranks = midranks(abs);

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (nz[i] > 0.0) w_plus += ranks[i];
    }
    const double total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    const double w_minus = total - w_plus;
    res.statistic = std::min(w_plus, w_minus);

    std::map<double, std::size_t> tie_counts;
    for (double r : abs) ++tie_counts[r];
    res.tie_corrected = std::any_of(tie_counts.begin(), tie_counts.end(),
                                    [](const auto& kv) { return kv.second > 1; });

    if (n <= 20) {
        // Enumerate all sign assignments; the null distribution of W+ is
        // symmetric about total/2, so the two-sided p sums both tails.
        std::vector<long long> r2(n);
        for (std::size_t i = 0; i < n; ++i) r2[i] = static_cast<long long>(std::llround(2.0 * ranks[i]));
        const long long observed2 = static_cast<long long>(std::llround(2.0 * w_plus));
        const long long total2 = static_cast<long long>(std::llround(2.0 * total));
        const long long mirrored2 = total2 - observed2;
        const long long lo = std::min(observed2, mirrored2);
        const long long hi = std::max(observed2, mirrored2);

        std::uint64_t below = 0, above = 0;
        const std::uint64_t count = 1ULL << n;
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            long long s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1ULL << i)) s += r2[i];
            }
            if (s <= lo) ++below;
            if (s >= hi) ++above;
        }
        double p = (static_cast<double>(below) + static_cast<double>(above)) /
                   static_cast<double>(count);
        res.p_value = std::min(1.0, p);
        res.exact = true;
        return res;
    }

    double tie_corr = 0.0;
    for (const auto& [_, c] : tie_counts) {
        const double cd = static_cast<double>(c);
        tie_corr += cd * cd * cd - cd;
    }
    const double nn = static_cast<double>(n);
    const double mean_w = nn * (nn + 1.0) / 4.0;
    const double var_w = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_corr / 48.0;
    if (var_w <= 0.0) {
        res.p_value = 1.0;
        return res;
    }
    double num = std::fabs(w_plus - mean_w) - 0.5;
    if (num < 0.0) num = 0.0;
    const double z = num / std::sqrt(var_w);
    res.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    return res;
}

EffectEstimate bca_interval(std::span<const double> sample,
                            const std::function<double(std::span<const double>)>& statistic,
                            int B, std::uint64_t seed, double level) {
    const std::size_t n = sample.size();
    if (n < 2) throw std::invalid_argument("bca_interval: need at least 2 observations");
    if (B < 2) throw std::invalid_argument("bca_interval: need at least 2 resamples");

    EffectEstimate est;
    est.point = statistic(sample);
    est.ci_level = level;
    est.resamples = B;
    est.bootstrap_seed = seed;

    Rng rng = Rng::from_seed(seed, "bca");
    std::vector<double> boot(static_cast<std::size_t>(B));
    std::vector<double> resample(n);
    for (int b = 0; b < B; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            resample[i] = sample[rng.below(n)];
        }
        boot[static_cast<std::size_t>(b)] = statistic(resample);
    }

    std::vector<double> sorted = boot;
    std::sort(sorted.begin(), sorted.end());

    if (sorted.front() == sorted.back()) {
        est.ci_low = est.ci_high = est.point;
        est.degenerate = true;
        return est;
    }

    std::size_t below = 0, equal = 0;
    for (double v : boot) {
        if (v < est.point) ++below;
        else if (v == est.point) ++equal;
    }
    double frac = (static_cast<double>(below) + 0.5 * static_cast<double>(equal)) /
                  static_cast<double>(B);
    const double eps = 1.0 / (static_cast<double>(B) + 1.0);
    frac = std::clamp(frac, eps, 1.0 - eps);
    const double z0 = normal_quantile(frac);

    // jackknife acceleration
    std::vector<double> jack(n);
    std::vector<double> loo(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) loo[k++] = sample[j];
        }
        jack[i] = statistic(loo);
    }
    const double jack_mean = std::accumulate(jack.begin(), jack.end(), 0.0) / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (double v : jack) {
        const double d = jack_mean - v;
        num += d * d * d;
        den += d * d;
    }
    const double a = den > 0.0 ? num / (6.0 * std::pow(den, 1.5)) : 0.0;

    const double alpha = 1.0 - level;
    const auto adjusted = [&](double q) {
        const double zq = normal_quantile(q);
        const double t = z0 + zq;
        const double denom = 1.0 - a * t;
        if (denom <= 0.0) return q < 0.5 ? eps : 1.0 - eps; // pathological acceleration
        return std::clamp(normal_cdf(z0 + t / denom), eps, 1.0 - eps);
    };
    const double a1 = adjusted(alpha / 2.0);
    const double a2 = adjusted(1.0 - alpha / 2.0);

    const auto quantile = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::clamp(
            static_cast<long long>(std::floor(q * B)), 0LL, static_cast<long long>(B - 1)));
        return sorted[idx];
    };
    est.ci_low = quantile(a1);
    est.ci_high = quantile(a2);
    est.containment_violated = est.point < est.ci_low || est.point > est.ci_high;
    return est;
}

EffectEstimate bca_interval_two_sample(
    std::span<const double> x, std::span<const double> y,
    const std::function<double(std::span<const double>, std::span<const double>)>& statistic,
    int B, std::uint64_t seed, double level) {
    const std::size_t n1 = x.size();
    const std::size_t n2 = y.size();
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("bca_interval_two_sample: groups too small");
    if (B < 2) throw std::invalid_argument("bca_interval_two_sample: need at least 2 resamples");

    EffectEstimate est;
    est.point = statistic(x, y);
    est.ci_level = level;
    est.resamples = B;
    est.bootstrap_seed = seed;

    Rng rng = Rng::from_seed(seed, "bca2");
    std::vector<double> boot(static_cast<std::size_t>(B));
    std::vector<double> rx(n1), ry(n2);
    for (int b = 0; b < B; ++b) {
        for (std::size_t i = 0; i < n1; ++i) rx[i] = x[rng.below(n1)];
        for (std::size_t i = 0; i < n2; ++i) ry[i] = y[rng.below(n2)];
        boot[static_cast<std::size_t>(b)] = statistic(rx, ry);
    }
    std::vector<double> sorted = boot;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back()) {
        est.ci_low = est.ci_high = est.point;
        est.degenerate = true;
        return est;
    }

    std::size_t below = 0, equal = 0;
    for (double v : boot) {
        if (v < est.point) ++below;
        else if (v == est.point) ++equal;
    }
    double frac = (static_cast<double>(below) + 0.5 * static_cast<double>(equal)) /
                  static_cast<double>(B);
    const double eps = 1.0 / (static_cast<double>(B) + 1.0);
    frac = std::clamp(frac, eps, 1.0 - eps);
    const double z0 = normal_quantile(frac);

    // delete-one jackknife over the pooled observations
    std::vector<double> jack;
    jack.reserve(n1 + n2);
    {
        std::vector<double> loo(n1 - 1);
        for (std::size_t i = 0; i < n1; ++i) {
            std::size_t k = 0;
            for (std::size_t j = 0; j < n1; ++j) {
                if (j != i) loo[k++] = x[j];
            }
            jack.push_back(statistic(loo, y));
        }
    }
    {
        std::vector<double> loo(n2 - 1);
        for (std::size_t i = 0; i < n2; ++i) {
            std::size_t k = 0;
            for (std::size_t j = 0; j < n2; ++j) {
                if (j != i) loo[k++] = y[j];
            }
            jack.push_back(statistic(x, loo));
        }
    }
    const double jack_mean =
        std::accumulate(jack.begin(), jack.end(), 0.0) / static_cast<double>(jack.size());
    double num = 0.0, den = 0.0;
    for (double v : jack) {
        const double d = jack_mean - v;
        num += d * d * d;
        den += d * d;
    }
    const double a = den > 0.0 ? num / (6.0 * std::pow(den, 1.5)) : 0.0;

    const double alpha = 1.0 - level;
    const auto adjusted = [&](double q) {
        const double zq = normal_quantile(q);
        const double t = z0 + zq;
        const double denom = 1.0 - a * t;
        if (denom <= 0.0) return q < 0.5 ? eps : 1.0 - eps;
        return std::clamp(normal_cdf(z0 + t / denom), eps, 1.0 - eps);
    };
    const double a1 = adjusted(alpha / 2.0);
    const double a2 = adjusted(1.0 - alpha / 2.0);
    const auto quantile = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::clamp(
            static_cast<long long>(std::floor(q * B)), 0LL, static_cast<long long>(B - 1)));
        return sorted[idx];
    };
    est.ci_low = quantile(a1);
    est.ci_high = quantile(a2);
    est.containment_violated = est.point < est.ci_low || est.point > est.ci_high;
    return est;
}

SpearmanResult spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman_rho: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("spearman_rho: need at least 2 pairs");

    auto rx = midranks(x);
    auto ry = midranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    SpearmanResult r;
    if (sxx == 0.0 || syy == 0.0) {
        r.defined = false;
        return r;
    }
    r.rho = sxy / std::sqrt(sxx * syy);
    r.defined = true;
    return r;
}

double gini(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("gini: empty input");
    std::vector<double> v(values.begin(), values.end());
    double total = 0.0;
    for (double x : v) {
        if (x < 0.0) throw std::invalid_argument("gini: negative value");
        total += x;
    }
    if (total <= 0.0) throw std::invalid_argument("gini: all-zero input");

    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double weighted = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        weighted += static_cast<double>(i + 1) * v[i];
    }
    return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

std::vector<std::pair<double, double>> lorenz_points(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("lorenz_points: empty input");
    std::vector<double> v(values.begin(), values.end());
    double total = 0.0;
    for (double x : v) {
        if (x < 0.0) throw std::invalid_argument("lorenz_points: negative value");
        total += x;
    }
    if (total <= 0.0) throw std::invalid_argument("lorenz_points: all-zero input");

    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    std::vector<std::pair<double, double>> pts;
    pts.reserve(v.size() + 1);
    pts.emplace_back(0.0, 0.0);
    double cum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        cum += v[i];
        pts.emplace_back(static_cast<double>(i + 1) / n, cum / total);
    }
    return pts;
}

double lorenz_share_at(const std::vector<std::pair<double, double>>& points, double pop_share) {
    if (points.size() < 2) throw std::invalid_argument("lorenz_share_at: need a curve");
    if (pop_share <= 0.0) return 0.0;
    if (pop_share >= 1.0) return 1.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].first >= pop_share) {
            const auto& [x0, y0] = points[i - 1];
            const auto& [x1, y1] = points[i];
            if (x1 == x0) return y1;
            return y0 + (y1 - y0) * (pop_share - x0) / (x1 - x0);
        }
    }
    return 1.0;
}

DeltaMagnitude classify_delta(double delta) {
    const double d = std::fabs(delta);
    if (d < 0.147) return DeltaMagnitude::Negligible;
    if (d < 0.33) return DeltaMagnitude::Small;
    if (d < 0.474) return DeltaMagnitude::Medium;
    return DeltaMagnitude::Large;
}

} // namespace hbee::stats
