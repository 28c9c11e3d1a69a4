#include "forensics/impact.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "forensics/stats.hpp"

namespace forensics {

ImpactResult normalize(const Corpus& corpus, const std::vector<Classification>& classifications) {
    if (classifications.size() != corpus.articles.size())
        throw CorpusError("classification vector does not match corpus size");

    ImpactResult res;
    res.scores.resize(corpus.articles.size());

    std::map<StratumKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < corpus.articles.size(); ++i) {
        const auto& cls = classifications[i];
        auto& score = res.scores[i];
        score.t = pooled_year(corpus.articles[i].year);
        if (!cls.resolved()) continue;  // unresolved SA: excluded from strata
        score.s = cls.refined_sa;
        groups[{cls.refined_sa, score.t}].push_back(i);
    }

    for (auto& [key, members] : groups) {
        Stratum st;
        st.key = key;
        st.members = members;
        std::vector<double> logs;
        logs.reserve(members.size());
        for (std::size_t i : members)
            logs.push_back(std::log1p(static_cast<double>(corpus.articles[i].citation_count)));
        if (members.size() >= 2) {
            st.mean_log = mean(logs);
            st.sd_log = sample_sd(logs);
        }
        // rounding in the mean can leave a ~1e-17 sd on constant strata;
        // treat anything below the relative noise floor as zero spread
        const double sd_floor = 1e-12 * std::max(1.0, std::abs(st.mean_log));
        const bool defined = members.size() >= 2 && st.sd_log > sd_floor;
        for (std::size_t k = 0; k < members.size(); ++k) {
            auto& score = res.scores[members[k]];
            if (defined) {
                score.z = (logs[k] - st.mean_log) / st.sd_log;
                score.defined = true;
            }
        }
        res.strata.push_back(std::move(st));
    }

    for (std::size_t i = 0; i < res.scores.size(); ++i) {
        auto& score = res.scores[i];
        score.model1_excluded = !score.defined || corpus.articles[i].year >= 2015;
    }
    return res;
}

std::vector<StratumNormalityRow> stratum_normality_report(const ImpactResult& impact,
                                                          double ks_threshold) {
    std::vector<StratumNormalityRow> rows;
    for (const auto& st : impact.strata) {
        std::vector<double> zs;
        for (std::size_t i : st.members)
            if (impact.scores[i].defined) zs.push_back(impact.scores[i].z);
        if (zs.size() < 3) continue;  // z-undefined strata are excluded
        StratumNormalityRow row;
        row.key = st.key;
        row.n = zs.size();
        row.skewness = skewness(zs);
        row.excess_kurtosis = excess_kurtosis(zs);
        row.ks_distance = ks_distance_to_std_normal(zs);
        row.flagged = row.ks_distance > ks_threshold;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace forensics
