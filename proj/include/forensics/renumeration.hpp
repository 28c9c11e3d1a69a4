#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forensics/metrics.hpp"
#include "forensics/social.hpp"
#include "forensics/stats.hpp"

namespace forensics {

enum class TrendClass { Positive, Negative, None };

struct RenumerationRecord {
    std::string editor_id;
    std::int64_t article_count = 0;       // N_E
    std::int64_t refs_r1 = 0;             // C_{R=1}
    std::int64_t refs_r0 = 0;             // C_{R=0}
    std::int64_t editor_cites_r1 = 0;     // C_{E,R=1}
    std::int64_t editor_cites_r0 = 0;     // C_{E,R=0}
    std::int64_t total_refs = 0;          // T_E
    std::int64_t editor_cites = 0;        // C_E
    std::optional<double> rate_r1;        // f_{E,1}, undefined when C_{R=1} = 0
    std::optional<double> rate_r0;        // f_{E,0}
    std::optional<double> delta_c;        // (f1 - f0) * T_E
    std::optional<double> trend_slope;    // beta_tau of z on tau
    double trend_p = 1;
    TrendClass trend = TrendClass::None;
};

// Conditional editor citation rates per editor with N_E >= min_n.
// Trend classification uses articles with defined z and t <= 2014,
// significance level trend_alpha (two-sided).
std::vector<RenumerationRecord> conditional_rates(const std::vector<EditorProfile>& profiles,
                                                  const std::vector<TieAnnotation>& ties,
                                                  std::int64_t min_n = 20,
                                                  double trend_alpha = 0.1);

struct DeltaCSummary {
    double mean = 0;
    double sd = 0;          // sample sd
    double skewness = 0;    // population moments
    std::int64_t right_outliers = 0;  // beyond mean + 3 sd
    std::int64_t left_outliers = 0;   // below mean - 3 sd
    std::size_t n = 0;
    HistogramTable histogram;
};

DeltaCSummary delta_c_distribution(const std::vector<RenumerationRecord>& records,
                                   std::size_t bins = 50);

// Which editors exceed mean + 3 sd of delta_c.
std::vector<std::string> delta_c_right_outliers(const std::vector<RenumerationRecord>& records);

struct TwoSampleReport {
    TestResult welch_t;
    TestResult mann_whitney;
    TestResult kolmogorov_smirnov;
    std::size_t n0 = 0;  // defined f_{E,0}
    std::size_t n1 = 0;
    std::size_t excluded = 0;  // records with an undefined rate
    double mean_r0 = 0;
    double mean_r1 = 0;
};

TwoSampleReport two_sample_tests(const std::vector<RenumerationRecord>& records);

// Per-editor temporal trend of z over tau (simple OLS).
struct EditorTrend {
    std::optional<double> slope;
    double p_value = 1;
    TrendClass cls = TrendClass::None;
};

EditorTrend editor_trend(const EditorProfile& profile, double alpha = 0.1);

struct PowerLawFit {
    double exponent = 0;  // gamma in C ~ N^gamma
    double se = 0;
    std::size_t n_points = 0;
    std::size_t zero_c_excluded = 0;
};

// OLS on (log10 N_E, log10 C_E) per trend class, excluding the
// exclude_top largest-N_E points within the class and editors with
// C_E = 0 (reported in the result).
PowerLawFit power_law_fit(const std::vector<RenumerationRecord>& records, TrendClass cls,
                          std::size_t exclude_top = 2);

}  // namespace forensics
