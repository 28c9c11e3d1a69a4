#include "forensics/renumeration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace forensics {

EditorTrend editor_trend(const EditorProfile& profile, double alpha) {
    std::vector<double> tau, z;
    for (const auto& a : profile.articles) {
        if (!a.z_defined || a.year > 2014) continue;
        tau.push_back(a.service_age_years);
        z.push_back(a.z);
    }
    EditorTrend t;
    if (tau.size() < 3) return t;
    bool constant = true;
    for (double v : tau)
        if (v != tau.front()) { constant = false; break; }
    if (constant) return t;
    const SimpleOls ols = simple_ols(tau, z);
    t.slope = ols.slope;
    t.p_value = ols.p_value;
    if (ols.p_value < alpha)
        t.cls = ols.slope > 0 ? TrendClass::Positive : TrendClass::Negative;
    return t;
}

std::vector<RenumerationRecord> conditional_rates(const std::vector<EditorProfile>& profiles,
                                                  const std::vector<TieAnnotation>& ties,
                                                  std::int64_t min_n, double trend_alpha) {
    std::unordered_map<std::string, const TieAnnotation*> tie_map;
    for (const auto& t : ties) tie_map[t.editor_id] = &t;

    std::vector<RenumerationRecord> out;
    for (const auto& p : profiles) {
        if (p.article_count < min_n) continue;
        auto it = tie_map.find(p.editor_id);
        if (it == tie_map.end())
            throw std::invalid_argument("missing tie annotation for editor " + p.editor_id);
        const auto& flags = it->second->article_repeat_flags;

        RenumerationRecord rec;
        rec.editor_id = p.editor_id;
        rec.article_count = p.article_count;
        for (std::size_t ai = 0; ai < p.articles.size(); ++ai) {
            const auto& a = p.articles[ai];
            if (flags[ai]) {
                rec.refs_r1 += a.total_refs;
                rec.editor_cites_r1 += a.editor_citing_refs;
            } else {
                rec.refs_r0 += a.total_refs;
                rec.editor_cites_r0 += a.editor_citing_refs;
            }
        }
        rec.total_refs = rec.refs_r0 + rec.refs_r1;
        rec.editor_cites = rec.editor_cites_r0 + rec.editor_cites_r1;
        if (rec.refs_r1 > 0)
            rec.rate_r1 = static_cast<double>(rec.editor_cites_r1) /
                          static_cast<double>(rec.refs_r1);
        if (rec.refs_r0 > 0)
            rec.rate_r0 = static_cast<double>(rec.editor_cites_r0) /
                          static_cast<double>(rec.refs_r0);
        if (rec.rate_r1 && rec.rate_r0)
            rec.delta_c = (*rec.rate_r1 - *rec.rate_r0) * static_cast<double>(rec.total_refs);

        const EditorTrend t = editor_trend(p, trend_alpha);
        rec.trend_slope = t.slope;
        rec.trend_p = t.p_value;
        rec.trend = t.cls;
        out.push_back(std::move(rec));
    }
    return out;
}

DeltaCSummary delta_c_distribution(const std::vector<RenumerationRecord>& records,
                                   std::size_t bins) {
    std::vector<double> dc;
    for (const auto& r : records)
        if (r.delta_c) dc.push_back(*r.delta_c);
    if (dc.size() < 3)
        throw std::invalid_argument("delta C distribution needs >= 3 defined records");

    DeltaCSummary s;
    s.n = dc.size();
    s.mean = mean(dc);
    s.sd = sample_sd(dc);
    if (s.sd == 0) throw std::invalid_argument("delta C values are constant (sd = 0)");
    s.skewness = skewness(dc);
    for (double v : dc) {
        if (v > s.mean + 3 * s.sd) ++s.right_outliers;
        if (v < s.mean - 3 * s.sd) ++s.left_outliers;
    }
    s.histogram = histogram("delta_C_E", dc, bins);
    return s;
}

std::vector<std::string> delta_c_right_outliers(const std::vector<RenumerationRecord>& records) {
    const DeltaCSummary s = delta_c_distribution(records);
    std::vector<std::string> out;
    for (const auto& r : records)
        if (r.delta_c && *r.delta_c > s.mean + 3 * s.sd) out.push_back(r.editor_id);
    return out;
}

TwoSampleReport two_sample_tests(const std::vector<RenumerationRecord>& records) {
    std::vector<double> f0, f1;
    std::size_t excluded = 0;
    for (const auto& r : records) {
        if (r.rate_r0 && r.rate_r1) {
            f0.push_back(*r.rate_r0);
            f1.push_back(*r.rate_r1);
        } else {
            ++excluded;
        }
    }
    if (f0.size() < 2)
        throw std::invalid_argument("two-sample tests need >= 2 editors with defined rates");
    TwoSampleReport rep;
    rep.n0 = f0.size();
    rep.n1 = f1.size();
    rep.excluded = excluded;
    rep.mean_r0 = mean(f0);
    rep.mean_r1 = mean(f1);
    rep.welch_t = welch_t_test(f0, f1);
    rep.mann_whitney = mann_whitney_u(f0, f1);
    rep.kolmogorov_smirnov = ks_two_sample(f0, f1);
    return rep;
}

PowerLawFit power_law_fit(const std::vector<RenumerationRecord>& records, TrendClass cls,
                          std::size_t exclude_top) {
    std::vector<const RenumerationRecord*> sel;
    PowerLawFit fit;
    for (const auto& r : records) {
        if (r.trend != cls) continue;
        if (r.editor_cites <= 0) {
            ++fit.zero_c_excluded;
            continue;
        }
        sel.push_back(&r);
    }
    std::sort(sel.begin(), sel.end(), [](const RenumerationRecord* a, const RenumerationRecord* b) {
        if (a->article_count != b->article_count) return a->article_count > b->article_count;
        return a->editor_id < b->editor_id;
    });
    if (sel.size() > exclude_top)
        sel.erase(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(exclude_top));
    else
        sel.clear();
    if (sel.size() < 3)
        throw std::invalid_argument("power-law fit needs >= 3 points after exclusions");

    std::vector<double> lx, ly;
    for (const auto* r : sel) {
        lx.push_back(std::log10(static_cast<double>(r->article_count)));
        ly.push_back(std::log10(static_cast<double>(r->editor_cites)));
    }
    const SimpleOls ols = simple_ols(lx, ly);
    fit.exponent = ols.slope;
    fit.se = ols.slope_se;
    fit.n_points = sel.size();
    return fit;
}

}  // namespace forensics
