#include "forensics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "forensics/stats.hpp"

namespace forensics {

std::pair<std::int64_t, double> editor_citation_rate(const ArticleRecord& article,
                                                     const EditorIdentity& editor) {
    if (article.references.empty()) return {0, 0.0};
    std::int64_t c = 0;
    if (!editor.degenerate) {
        const std::string ekey = editor.name.key();
        for (const auto& ref : article.references) {
            for (const auto& au : ref.authors) {
                if (au.key() == ekey) {
                    ++c;
                    break;  // one match per reference
                }
            }
        }
    }
    return {c, static_cast<double>(c) / static_cast<double>(article.references.size())};
}

std::vector<EditorProfile> build_profiles(const Corpus& corpus, const ImpactResult& impact) {
    if (impact.scores.size() != corpus.articles.size())
        throw CorpusError("impact scores do not match corpus size");

    std::unordered_map<std::string, std::vector<std::size_t>> by_editor;
    for (std::size_t i = 0; i < corpus.articles.size(); ++i)
        by_editor[corpus.articles[i].editor_id].push_back(i);

    auto eidx = corpus.editor_index();
    std::vector<EditorProfile> profiles;
    profiles.reserve(by_editor.size());

    for (const auto& ed : corpus.editors) {
        auto it = by_editor.find(ed.editor_id);
        if (it == by_editor.end()) continue;
        auto indices = it->second;
        std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
            const auto& A = corpus.articles[a];
            const auto& B = corpus.articles[b];
            if (A.accepted != B.accepted) return A.accepted < B.accepted;
            return A.doi < B.doi;
        });

        EditorProfile p;
        p.editor_id = ed.editor_id;
        p.article_count = static_cast<std::int64_t>(indices.size());
        const Date first = corpus.articles[indices.front()].accepted;
        const Date last = corpus.articles[indices.back()].accepted;
        p.service_days = days_between(first, last);
        p.days_per_article = static_cast<double>(p.service_days) / static_cast<double>(p.article_count);

        std::vector<double> durations;
        durations.reserve(indices.size());
        for (std::size_t i : indices) {
            const auto& art = corpus.articles[i];
            ProfileArticle pa;
            pa.article_index = i;
            pa.duration_days = art.duration_days();
            pa.service_age_years =
                static_cast<double>(days_between(first, art.accepted)) / kDaysPerYear;
            auto [c, f] = editor_citation_rate(art, ed);
            pa.editor_citing_refs = c;
            pa.total_refs = static_cast<std::int64_t>(art.references.size());
            pa.editor_cite_rate = f;
            pa.z = impact.scores[i].z;
            pa.z_defined = impact.scores[i].defined;
            pa.year = art.year;
            pa.pooled_year = impact.scores[i].t;
            pa.refined_sa = impact.scores[i].s;
            durations.push_back(static_cast<double>(pa.duration_days));
            p.editor_citing_refs += c;
            p.total_refs += pa.total_refs;
            p.articles.push_back(pa);
        }
        p.mean_duration = mean(durations);
        if (durations.size() >= 2 && p.mean_duration > 0)
            p.duration_cov = sample_sd(durations) / p.mean_duration;
        if (p.total_refs > 0)
            p.editor_cite_rate = static_cast<double>(p.editor_citing_refs) /
                                 static_cast<double>(p.total_refs);
        profiles.push_back(std::move(p));
    }

    // top-10 flag by N_E rank, editor_id tie-break
    auto ranked = rank_table(profiles, 10);
    std::unordered_map<std::string, bool> top;
    for (const auto& r : ranked) top[r.editor_id] = true;
    for (auto& p : profiles) p.top10 = top.count(p.editor_id) > 0;
    return profiles;
}

InequalitySummary lorenz_gini(std::vector<double> values) {
    if (values.size() < 2) throw std::invalid_argument("gini needs >= 2 values");
    double total = 0;
    for (double v : values) {
        if (v < 0) throw std::invalid_argument("gini needs non-negative values");
        total += v;
    }
    if (total <= 0) throw std::invalid_argument("gini undefined for all-zero values");
    std::sort(values.begin(), values.end());

    const double n = static_cast<double>(values.size());
    InequalitySummary out;
    out.lorenz.reserve(values.size() + 1);
    out.lorenz.emplace_back(0.0, 0.0);
    double cum = 0;
    // Sorted-sum identity for the population mean-absolute-difference Gini:
    // G = (2 * sum_i i*x_(i)) / (n * total) - (n+1)/n, i = 1..n ascending.
    double weighted = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        cum += values[i];
        weighted += static_cast<double>(i + 1) * values[i];
        out.lorenz.emplace_back(static_cast<double>(i + 1) / n, cum / total);
    }
    out.gini = 2.0 * weighted / (n * total) - (n + 1.0) / n;
    return out;
}

std::vector<RankRow> rank_table(const std::vector<EditorProfile>& profiles, std::size_t k) {
    std::vector<const EditorProfile*> order;
    order.reserve(profiles.size());
    for (const auto& p : profiles) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const EditorProfile* a, const EditorProfile* b) {
        if (a->article_count != b->article_count) return a->article_count > b->article_count;
        return a->editor_id < b->editor_id;
    });
    std::vector<RankRow> rows;
    const std::size_t m = std::min(k, order.size());
    rows.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        rows.push_back({i + 1, order[i]->editor_id, order[i]->article_count,
                        order[i]->mean_duration, i < 10});
    }
    return rows;
}

HistogramTable histogram(const std::string& name, const std::vector<double>& values,
                         std::size_t bins) {
    HistogramTable h;
    h.name = name;
    h.n = values.size();
    if (values.empty() || bins == 0) return h;
    h.mean = mean(values);
    auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    double lo = *mn_it, hi = *mx_it;
    if (lo == hi) hi = lo + 1.0;  // single-bin degenerate range
    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        ++h.counts[b];
    }
    return h;
}

std::vector<HistogramTable> distribution_tables(const std::vector<EditorProfile>& profiles,
                                                const std::vector<EditorTieStats>& ties,
                                                std::int64_t min_n, std::size_t bins) {
    std::unordered_map<std::string, const EditorTieStats*> tie_map;
    for (const auto& t : ties) tie_map[t.editor_id] = &t;

    std::vector<double> n_e, delta_a, f_a, d_e, delta_e, cov_e, k2_e, rho_e;
    for (const auto& p : profiles) {
        n_e.push_back(static_cast<double>(p.article_count));
        for (const auto& a : p.articles) delta_a.push_back(static_cast<double>(a.duration_days));
        if (p.article_count < min_n) continue;  // editor-level panels only
        d_e.push_back(p.days_per_article);
        delta_e.push_back(p.mean_duration);
        if (p.duration_cov) cov_e.push_back(*p.duration_cov);
        for (const auto& a : p.articles) f_a.push_back(a.editor_cite_rate);
        if (auto it = tie_map.find(p.editor_id); it != tie_map.end()) {
            k2_e.push_back(static_cast<double>(it->second->repeat_author_count));
            rho_e.push_back(it->second->repeat_article_fraction);
        }
    }

    std::vector<HistogramTable> out;
    out.push_back(histogram("N_E", n_e, bins));
    out.push_back(histogram("Delta_A", delta_a, bins));
    out.push_back(histogram("d_E", d_e, bins));
    out.push_back(histogram("Delta_E", delta_e, bins));
    out.push_back(histogram("f_A", f_a, bins));
    out.push_back(histogram("cov_E", cov_e, bins));
    out.push_back(histogram("K2_E", k2_e, bins));
    out.push_back(histogram("rho_E", rho_e, bins));
    return out;
}

}  // namespace forensics
