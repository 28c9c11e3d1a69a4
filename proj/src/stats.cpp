#include "forensics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace forensics {

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean of empty sample");
    double s = 0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

namespace {
double central_moment(std::span<const double> x, int k) {
    const double m = mean(x);
    double s = 0;
    for (double v : x) s += std::pow(v - m, k);
    return s / static_cast<double>(x.size());
}
}  // namespace

double sample_sd(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("sample sd needs n >= 2");
    const double m = mean(x);
    double s = 0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

double population_sd(std::span<const double> x) {
    return std::sqrt(central_moment(x, 2));
}

double skewness(std::span<const double> x) {
    const double m2 = central_moment(x, 2);
    if (m2 <= 0) throw std::invalid_argument("skewness undefined for constant sample");
    return central_moment(x, 3) / std::pow(m2, 1.5);
}

double excess_kurtosis(std::span<const double> x) {
    const double m2 = central_moment(x, 2);
    if (m2 <= 0) throw std::invalid_argument("kurtosis undefined for constant sample");
    return central_moment(x, 4) / (m2 * m2) - 3.0;
}

double normal_cdf(double x) {
    static const boost::math::normal_distribution<double> n01;
    return boost::math::cdf(n01, x);
}

double normal_quantile(double p) {
    static const boost::math::normal_distribution<double> n01;
    return boost::math::quantile(n01, p);
}

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    boost::math::students_t_distribution<double> dist(df);
    return 2.0 * boost::math::cdf(dist, -std::abs(t));
}

double f_upper_p(double f, double df1, double df2) {
    if (f <= 0) return 1.0;
    boost::math::fisher_f_distribution<double> dist(df1, df2);
    return boost::math::cdf(boost::math::complement(dist, f));
}

double ks_distance_to_std_normal(std::vector<double> x) {
    if (x.empty()) throw std::invalid_argument("KS distance of empty sample");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = normal_cdf(x[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

TestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch t test needs n >= 2 per sample");
    const double ma = mean(a), mb = mean(b);
    const double va = sample_sd(a) * sample_sd(a) / static_cast<double>(a.size());
    const double vb = sample_sd(b) * sample_sd(b) / static_cast<double>(b.size());
    if (va + vb == 0) return {0.0, 1.0};
    const double t = (ma - mb) / std::sqrt(va + vb);
    const double df = (va + vb) * (va + vb) /
                      (va * va / static_cast<double>(a.size() - 1) +
                       vb * vb / static_cast<double>(b.size() - 1));
    return {t, student_t_two_sided_p(t, df)};
}

namespace {

// Exact null distribution of the rank sum of the first sample (no ties):
// counts of subsets of {1..n} of size m per rank-sum, by DP.
double exact_mann_whitney_p(double u_obs, std::size_t n1, std::size_t n2) {
    const std::size_t n = n1 + n2;
    const std::size_t max_w = n1 * (2 * n - n1 + 1) / 2;
    // dp[k][w] = number of k-subsets of processed ranks with sum w
    std::vector<std::vector<double>> dp(n1 + 1, std::vector<double>(max_w + 1, 0.0));
    dp[0][0] = 1.0;
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t k = std::min(r, n1); k >= 1; --k) {
            for (std::size_t w = max_w; w >= r; --w) {
                if (dp[k - 1][w - r] > 0) dp[k][w] += dp[k - 1][w - r];
            }
        }
    }
    double total = 0;
    for (double c : dp[n1]) total += c;
    const double mu_u = static_cast<double>(n1 * n2) / 2.0;
    const double dev = std::abs(u_obs - mu_u);
    // two-sided: mass of U at least as extreme on either side
    double extreme = 0;
    const std::size_t min_w = n1 * (n1 + 1) / 2;
    for (std::size_t w = min_w; w <= max_w; ++w) {
        const double u = static_cast<double>(w - min_w);  // U = W - n1(n1+1)/2
        if (std::abs(u - mu_u) >= dev - 1e-12) extreme += dp[n1][w];
    }
    return std::min(1.0, extreme / total);
}

}  // namespace

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          std::size_t exact_limit) {
    const std::size_t n1 = a.size(), n2 = b.size();
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("mann-whitney needs non-empty samples");
    // midranks over the pooled sample
    struct Obs { double v; int grp; };
    std::vector<Obs> pool;
    pool.reserve(n1 + n2);
    for (double v : a) pool.push_back({v, 0});
    for (double v : b) pool.push_back({v, 1});
    std::sort(pool.begin(), pool.end(), [](const Obs& x, const Obs& y) { return x.v < y.v; });
    std::vector<double> rank(pool.size());
    bool ties = false;
    double tie_term = 0;  // sum of t^3 - t over tie groups
    for (std::size_t i = 0; i < pool.size();) {
        std::size_t j = i;
        while (j < pool.size() && pool[j].v == pool[i].v) ++j;
        const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) rank[k] = r;
        if (j - i > 1) {
            ties = true;
            const double t = static_cast<double>(j - i);
            tie_term += t * t * t - t;
        }
        i = j;
    }
    double w1 = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool[i].grp == 0) w1 += rank[i];
    const double u = w1 - static_cast<double>(n1 * (n1 + 1)) / 2.0;

    if (!ties && n1 <= exact_limit && n2 <= exact_limit)
        return {u, exact_mann_whitney_p(u, n1, n2)};

    const double n1d = static_cast<double>(n1), n2d = static_cast<double>(n2);
    const double nd = n1d + n2d;
    const double mu_u = n1d * n2d / 2.0;
    const double var_u = n1d * n2d / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    if (var_u <= 0) return {u, 1.0};
    const double z = (u - mu_u) / std::sqrt(var_u);
    return {u, 2.0 * normal_cdf(-std::abs(z))};
}

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS needs non-empty samples");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= v) ++i;
        while (j < sb.size() && sb[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / sa.size() -
                                 static_cast<double>(j) / sb.size()));
    }
    if (sa.size() == sb.size()) {
        // equal sizes: exact tail by the reflection principle,
        // P(D >= k/n) = 2 sum_j (-1)^{j-1} C(2n, n-jk) / C(2n, n)
        const double n = static_cast<double>(sa.size());
        const long k = std::lround(d * n);
        if (k <= 0) return {d, 1.0};
        auto lchoose = [](double m, double r) {
            return std::lgamma(m + 1.0) - std::lgamma(r + 1.0) - std::lgamma(m - r + 1.0);
        };
        const double denom = lchoose(2.0 * n, n);
        double p = 0, sign = 1;
        for (long j = 1; j * k <= static_cast<long>(n); ++j, sign = -sign)
            p += sign * std::exp(lchoose(2.0 * n, n - double(j) * double(k)) - denom);
        return {d, std::clamp(2.0 * p, 0.0, 1.0)};
    }
    const double ne = static_cast<double>(sa.size()) * sb.size() /
                      static_cast<double>(sa.size() + sb.size());
    // Stephens' scaling improves the asymptotic Kolmogorov tail at small n.
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    double p = 0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return {d, std::clamp(p, 0.0, 1.0)};
}

SimpleOls simple_ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("simple OLS needs n >= 3 paired observations");
    const std::size_t n = x.size();
    const double mx = mean(x), my = mean(y);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("simple OLS: constant regressor");
    SimpleOls r;
    r.n = n;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - r.intercept - r.slope * x[i];
        ssr += e * e;
    }
    const double s2 = ssr / static_cast<double>(n - 2);
    r.slope_se = std::sqrt(s2 / sxx);
    if (r.slope_se == 0) {
        r.p_value = r.slope == 0 ? 1.0 : 0.0;
    } else {
        r.p_value = student_t_two_sided_p(r.slope / r.slope_se, static_cast<double>(n - 2));
    }
    return r;
}

}  // namespace forensics
