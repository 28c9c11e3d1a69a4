#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace forensics {

double mean(std::span<const double> x);
double sample_sd(std::span<const double> x);      // n-1 denominator
double population_sd(std::span<const double> x);  // n denominator
// Population moment skewness m3 / m2^{3/2}.
double skewness(std::span<const double> x);
// Population excess kurtosis m4 / m2^2 - 3.
double excess_kurtosis(std::span<const double> x);

double normal_cdf(double x);
double normal_quantile(double p);
// Two-sided p-value for a t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);
// Upper-tail p-value for an F statistic.
double f_upper_p(double f, double df1, double df2);

// One-sample KS distance of x against the standard normal CDF.
double ks_distance_to_std_normal(std::vector<double> x);

struct TestResult {
    double statistic = 0;
    double p_value = 1;
};

// Welch unequal-variance t test, two-sided.
TestResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Mann-Whitney U, two-sided. Exact enumeration when both sides have
// n <= exact_limit and no ties; otherwise normal approximation with tie
// correction. Statistic is U of the first sample.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          std::size_t exact_limit = 20);

// Two-sample Kolmogorov-Smirnov, asymptotic p with Stephens' small-sample
// scaling.
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct SimpleOls {
    double slope = 0;
    double intercept = 0;
    double slope_se = 0;
    double p_value = 1;  // two-sided, classical, df = n-2
    std::size_t n = 0;
};

SimpleOls simple_ols(std::span<const double> x, std::span<const double> y);

}  // namespace forensics
