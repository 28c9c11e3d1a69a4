#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forensics/corpus.hpp"
#include "forensics/impact.hpp"

namespace forensics {

inline constexpr double kDaysPerYear = 365.25;

// Per-article quantities within an editor's set.
struct ProfileArticle {
    std::size_t article_index = 0;  // into corpus.articles
    std::int64_t duration_days = 0;
    double service_age_years = 0;   // tau: years since editor's first accepted article
    std::int64_t editor_citing_refs = 0;  // C_A
    std::int64_t total_refs = 0;
    double editor_cite_rate = 0;    // f_A, 0 when the article has no references
    double z = 0;
    bool z_defined = false;
    int year = 0;
    int pooled_year = 0;
    int refined_sa = 0;  // 0 = unresolved
};

struct EditorProfile {
    std::string editor_id;
    std::int64_t article_count = 0;      // N_E
    std::int64_t service_days = 0;       // L_E: first to last accepted article
    double days_per_article = 0;         // d_E = L_E / N_E
    double mean_duration = 0;            // Delta_E
    std::optional<double> duration_cov;  // cov_E, needs N_E >= 2
    std::int64_t editor_citing_refs = 0; // C_E
    std::int64_t total_refs = 0;         // T_E
    double editor_cite_rate = 0;         // f_E = C_E / T_E
    bool top10 = false;                  // T_{10,E}
    std::vector<ProfileArticle> articles;  // acceptance-date order
};

// C_A and f_A for one article against one editor. Degenerate editors
// always get C_A = 0; zero-reference articles get f_A = 0.
std::pair<std::int64_t, double> editor_citation_rate(const ArticleRecord& article,
                                                     const EditorIdentity& editor);

// Builds one profile per editor (including editors with no articles,
// N_E = 0 profiles are omitted). Sets the top10 flag by N_E rank with
// editor_id tie-break.
std::vector<EditorProfile> build_profiles(const Corpus& corpus, const ImpactResult& impact);

struct InequalitySummary {
    std::vector<std::pair<double, double>> lorenz;  // (population pct, cumulative share)
    double gini = 0;
};

// Population-formula Gini via the sorted identity; values must be
// non-negative with a positive sum.
InequalitySummary lorenz_gini(std::vector<double> values);

struct RankRow {
    std::size_t rank = 0;  // 1-based
    std::string editor_id;
    std::int64_t article_count = 0;
    double mean_duration = 0;
    bool top10 = false;
};

// Top-k by N_E descending, ties broken by editor_id ascending.
std::vector<RankRow> rank_table(const std::vector<EditorProfile>& profiles, std::size_t k);

struct HistogramTable {
    std::string name;
    std::vector<double> bin_edges;     // size bins+1
    std::vector<std::int64_t> counts;  // size bins
    double mean = 0;
    std::size_t n = 0;
};

// Fixed-width histogram over [min, max] of the data.
HistogramTable histogram(const std::string& name, const std::vector<double>& values,
                         std::size_t bins);

// Editor-level ties input for the K2/rho panels.
struct EditorTieStats {
    std::string editor_id;
    std::int64_t repeat_author_count = 0;  // K2_E
    double repeat_article_fraction = 0;    // rho_E
};

// Panels mirroring the headline distribution figures. min_n applies to
// the editor-level panels only.
std::vector<HistogramTable> distribution_tables(const std::vector<EditorProfile>& profiles,
                                                const std::vector<EditorTieStats>& ties,
                                                std::int64_t min_n = 10,
                                                std::size_t bins = 50);

}  // namespace forensics
