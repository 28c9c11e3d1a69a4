#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "forensics/corpus.hpp"
#include "forensics/taxonomy.hpp"

namespace forensics {

// (refined subject area, pooled publication year) stratum key.
struct StratumKey {
    int s = 0;
    int t = 0;
    friend auto operator<=>(const StratumKey&, const StratumKey&) = default;
};

struct Stratum {
    StratumKey key;
    std::vector<std::size_t> members;  // article indices
    double mean_log = 0;               // mean of ln(1+c)
    double sd_log = 0;                 // sample sd of ln(1+c)
};

struct ImpactScore {
    double z = 0;
    int s = 0;
    int t = 0;                  // pooled year (2006 -> 2007)
    bool defined = false;       // false: unresolved SA, singleton stratum or sd 0
    bool model1_excluded = false;  // 2015 publications or undefined z
};

struct ImpactResult {
    std::vector<ImpactScore> scores;  // parallel to corpus.articles
    std::vector<Stratum> strata;
};

// 2006 publications are pooled with 2007.
inline int pooled_year(int year) { return year == 2006 ? 2007 : year; }

// z = (ln(1+c) - mean) / sd within each (s, pooled year) stratum, using
// the stratum's sample (n-1) standard deviation.
ImpactResult normalize(const Corpus& corpus, const std::vector<Classification>& classifications);

struct StratumNormalityRow {
    StratumKey key;
    std::size_t n = 0;
    double skewness = 0;
    double excess_kurtosis = 0;
    double ks_distance = 0;  // to N(0,1)
    bool flagged = false;    // ks_distance above threshold
};

std::vector<StratumNormalityRow> stratum_normality_report(const ImpactResult& impact,
                                                          double ks_threshold = 0.05);

}  // namespace forensics
