#include "forensics/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "forensics/econometrics.hpp"
#include "forensics/impact.hpp"
#include "forensics/metrics.hpp"
#include "forensics/taxonomy.hpp"

namespace forensics {

using nlohmann::json;

double SynthRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SynthRng::normal(double mu, double sd) {
    if (has_spare_) {
        has_spare_ = false;
        return mu + sd * spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mu + sd * r * std::cos(theta);
}

std::int64_t SynthRng::poisson(double lambda) {
    if (lambda <= 0) return 0;
    if (lambda > 50) {
        return std::max<std::int64_t>(0, std::llround(normal(lambda, std::sqrt(lambda))));
    }
    const double limit = std::exp(-lambda);
    std::int64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
        ++k;
        prod *= uniform();
    }
    return k;
}

std::int64_t SynthRng::binomial(std::int64_t n, double p) {
    if (p <= 0 || n <= 0) return 0;
    if (p >= 1) return n;
    std::int64_t c = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (uniform() < p) ++c;
    return c;
}

double SynthRng::pareto(double alpha, double xm) {
    double u = uniform();
    while (u <= 0) u = uniform();
    return xm * std::pow(u, -1.0 / alpha);
}

std::size_t SynthRng::uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

namespace {

const char* citing_model_name(CitingModel m) {
    return m == CitingModel::PerArticleMixture ? "per_article_mixture" : "conditional_rates";
}
const char* allocation_name(CitingAllocation a) {
    return a == CitingAllocation::Binomial ? "binomial" : "expected";
}
const char* planting_name(RepeatPlanting p) {
    return p == RepeatPlanting::Cliques ? "cliques" : "share";
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

SynthConfig synth_config_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    SynthConfig c;
    maybe(j, "seed", c.seed);
    maybe(j, "n_editors", c.n_editors);
    maybe(j, "power_law_alpha", c.power_law_alpha);
    maybe(j, "min_articles", c.min_articles);
    maybe(j, "max_articles", c.max_articles);
    maybe(j, "n_degenerate_pairs", c.n_degenerate_pairs);
    maybe(j, "first_year", c.first_year);
    maybe(j, "last_year", c.last_year);
    maybe(j, "sa_mixture", c.sa_mixture);
    maybe(j, "keywords_per_article", c.keywords_per_article);
    maybe(j, "ln_k_mean", c.ln_k_mean);
    maybe(j, "ln_k_sd", c.ln_k_sd);
    maybe(j, "mean_refs", c.mean_refs);
    maybe(j, "repeat_authors_per_editor", c.repeat_authors_per_editor);
    maybe(j, "repeat_articles_geom_p", c.repeat_articles_geom_p);
    maybe(j, "r1_share", c.r1_share);
    maybe(j, "p_article_cites", c.p_article_cites);
    maybe(j, "cite_rate", c.cite_rate);
    maybe(j, "base_rate", c.base_rate);
    maybe(j, "bias_gap", c.bias_gap);
    maybe(j, "n_biased_editors", c.n_biased_editors);
    maybe(j, "biased_editor_articles", c.biased_editor_articles);
    maybe(j, "citation_log_mean", c.citation_log_mean);
    maybe(j, "citation_log_sd", c.citation_log_sd);
    maybe(j, "delta_log_mean", c.delta_log_mean);
    maybe(j, "delta_log_sd", c.delta_log_sd);
    if (j.contains("repeat_planting"))
        c.repeat_planting = j.at("repeat_planting") == "share" ? RepeatPlanting::Share
                                                               : RepeatPlanting::Cliques;
    if (j.contains("citing_model"))
        c.citing_model = j.at("citing_model") == "conditional_rates"
                             ? CitingModel::ConditionalRates
                             : CitingModel::PerArticleMixture;
    if (j.contains("citing_allocation"))
        c.citing_allocation = j.at("citing_allocation") == "expected"
                                  ? CitingAllocation::Expected
                                  : CitingAllocation::Binomial;
    if (j.contains("acceptance_model")) {
        const json& a = j.at("acceptance_model");
        c.acceptance.enabled = true;
        maybe(a, "enabled", c.acceptance.enabled);
        maybe(a, "beta_z", c.acceptance.beta_z);
        maybe(a, "beta_ln_k", c.acceptance.beta_ln_k);
        maybe(a, "beta_f", c.acceptance.beta_f);
        maybe(a, "beta_ln_tau", c.acceptance.beta_ln_tau);
        maybe(a, "beta_r", c.acceptance.beta_r);
        maybe(a, "beta_f_x_r", c.acceptance.beta_f_x_r);
        maybe(a, "intercept_mean", c.acceptance.intercept_mean);
        maybe(a, "intercept_sd", c.acceptance.intercept_sd);
        maybe(a, "noise_sd", c.acceptance.noise_sd);
    }
    if (j.contains("impact_model")) {
        const json& a = j.at("impact_model");
        c.impact.enabled = true;
        maybe(a, "enabled", c.impact.enabled);
        maybe(a, "beta_ln_k", c.impact.beta_ln_k);
        maybe(a, "beta_ln_delta", c.impact.beta_ln_delta);
        maybe(a, "beta_ln_tau", c.impact.beta_ln_tau);
        maybe(a, "beta_r", c.impact.beta_r);
        maybe(a, "beta_r_x_ln_tau", c.impact.beta_r_x_ln_tau);
        maybe(a, "beta_t10_x_ln_tau", c.impact.beta_t10_x_ln_tau);
        maybe(a, "beta_t10_x_r_x_ln_tau", c.impact.beta_t10_x_r_x_ln_tau);
        maybe(a, "intercept_sd", c.impact.intercept_sd);
        maybe(a, "noise_sd", c.impact.noise_sd);
    }
    return c;
}

std::string synth_config_to_json(const SynthConfig& c) {
    json j{{"seed", c.seed},
           {"n_editors", c.n_editors},
           {"power_law_alpha", c.power_law_alpha},
           {"min_articles", c.min_articles},
           {"max_articles", c.max_articles},
           {"n_degenerate_pairs", c.n_degenerate_pairs},
           {"first_year", c.first_year},
           {"last_year", c.last_year},
           {"sa_mixture", c.sa_mixture},
           {"keywords_per_article", c.keywords_per_article},
           {"ln_k_mean", c.ln_k_mean},
           {"ln_k_sd", c.ln_k_sd},
           {"mean_refs", c.mean_refs},
           {"repeat_planting", planting_name(c.repeat_planting)},
           {"repeat_authors_per_editor", c.repeat_authors_per_editor},
           {"repeat_articles_geom_p", c.repeat_articles_geom_p},
           {"r1_share", c.r1_share},
           {"citing_model", citing_model_name(c.citing_model)},
           {"citing_allocation", allocation_name(c.citing_allocation)},
           {"p_article_cites", c.p_article_cites},
           {"cite_rate", c.cite_rate},
           {"base_rate", c.base_rate},
           {"bias_gap", c.bias_gap},
           {"n_biased_editors", c.n_biased_editors},
           {"biased_editor_articles", c.biased_editor_articles},
           {"citation_log_mean", c.citation_log_mean},
           {"citation_log_sd", c.citation_log_sd},
           {"delta_log_mean", c.delta_log_mean},
           {"delta_log_sd", c.delta_log_sd}};
    if (c.acceptance.enabled) {
        j["acceptance_model"] = json{{"enabled", true},
                                     {"beta_z", c.acceptance.beta_z},
                                     {"beta_ln_k", c.acceptance.beta_ln_k},
                                     {"beta_f", c.acceptance.beta_f},
                                     {"beta_ln_tau", c.acceptance.beta_ln_tau},
                                     {"beta_r", c.acceptance.beta_r},
                                     {"beta_f_x_r", c.acceptance.beta_f_x_r},
                                     {"intercept_mean", c.acceptance.intercept_mean},
                                     {"intercept_sd", c.acceptance.intercept_sd},
                                     {"noise_sd", c.acceptance.noise_sd}};
    }
    if (c.impact.enabled) {
        j["impact_model"] = json{{"enabled", true},
                                 {"beta_ln_k", c.impact.beta_ln_k},
                                 {"beta_ln_delta", c.impact.beta_ln_delta},
                                 {"beta_ln_tau", c.impact.beta_ln_tau},
                                 {"beta_r", c.impact.beta_r},
                                 {"beta_r_x_ln_tau", c.impact.beta_r_x_ln_tau},
                                 {"beta_t10_x_ln_tau", c.impact.beta_t10_x_ln_tau},
                                 {"beta_t10_x_r_x_ln_tau", c.impact.beta_t10_x_r_x_ln_tau},
                                 {"intercept_sd", c.impact.intercept_sd},
                                 {"noise_sd", c.impact.noise_sd}};
    }
    return j.dump(2);
}

namespace {

void validate(const SynthConfig& c) {
    auto fail = [](const std::string& m) { throw CorpusError("synth config: " + m); };
    if (c.n_editors < 1) fail("n_editors must be >= 1");
    if (c.sa_mixture.size() != kNumRefinedSubjectAreas) fail("sa_mixture needs 6 weights");
    double mix_sum = 0;
    for (double w : c.sa_mixture) {
        if (w < 0) fail("sa_mixture weights must be non-negative");
        mix_sum += w;
    }
    if (mix_sum <= 0) fail("sa_mixture must have positive total weight");
    if (c.first_year > c.last_year) fail("first_year > last_year");
    if (c.min_articles < 1 || c.max_articles < c.min_articles) fail("bad article count range");
    if (c.power_law_alpha <= 1.0) fail("power_law_alpha must exceed 1 (finite mean)");
    if (c.n_biased_editors > c.n_editors) fail("more biased editors than editors");
    if (c.n_degenerate_pairs * 2 > c.n_editors) fail("too many degenerate pairs");
    if (c.r1_share < 0 || c.r1_share > 1) fail("r1_share outside [0,1]");
    for (double p : {c.p_article_cites, c.cite_rate, c.base_rate, c.repeat_articles_geom_p})
        if (p < 0 || p > 1) fail("probability outside [0,1]");
    if (c.base_rate + c.bias_gap > 1 || c.base_rate + c.bias_gap < 0) fail("biased rate outside [0,1]");
    if (c.keywords_per_article < 1) fail("keywords_per_article must be >= 1");
    if (c.citation_log_sd <= 0 || c.delta_log_sd <= 0) fail("log-scale sds must be positive");
    if (c.n_biased_editors > 0 && c.biased_editor_articles < 2)
        fail("biased editors need >= 2 articles");
}

// Top-level class carrying each refined area (merged partners unused).
constexpr int kSaRepresentativeClass[kNumRefinedSubjectAreas] = {1, 2, 3, 4, 6, 8};

struct ArticleScratch {
    std::size_t editor = 0;
    Date accepted;
    int sa = 0;
    std::int64_t k_authors = 0;
    bool r_flag = false;
    std::int64_t n_refs = 0;
    std::int64_t citing_refs = 0;
    std::int64_t delta_days = 0;
    double z_target = 0;
    std::int64_t citations = 0;
    double tau = 0;
};

}  // namespace

SynthOutput generate(const SynthConfig& config) {
    validate(config);
    SynthRng rng(config.seed);

    SynthOutput out;
    GroundTruth& truth = out.truth;
    truth.config = config;
    truth.sa_counts.assign(kNumRefinedSubjectAreas, 0);

    const int n_ed = config.n_editors;

    // Editors. Biased editors come first; planted name collisions at the end.
    std::vector<EditorIdentity> editors(n_ed);
    for (int i = 0; i < n_ed; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "E%05d", i);
        editors[i].editor_id = buf;
        editors[i].name.surname = "ed" + std::to_string(i);
        editors[i].name.initial = 'A';
    }
    for (int p = 0; p < config.n_degenerate_pairs; ++p) {
        const int a = n_ed - 1 - 2 * p, b = n_ed - 2 - 2 * p;
        editors[a].name.surname = editors[b].name.surname = "dup" + std::to_string(p);
    }
    mark_degenerate_editors(editors);

    // Article counts.
    std::vector<std::int64_t> n_articles(n_ed);
    for (int i = 0; i < n_ed; ++i) {
        if (i < config.n_biased_editors) {
            n_articles[i] = config.biased_editor_articles;
        } else {
            const double x = rng.pareto(config.power_law_alpha,
                                        static_cast<double>(config.min_articles));
            n_articles[i] = std::clamp<std::int64_t>(static_cast<std::int64_t>(x),
                                                     config.min_articles, config.max_articles);
        }
    }

    // Top-10 by N_E, editor_id ascending tie-break (same rule as rank_table).
    std::vector<int> order(n_ed);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (n_articles[a] != n_articles[b]) return n_articles[a] > n_articles[b];
        return editors[a].editor_id < editors[b].editor_id;
    });
    std::vector<bool> top10(n_ed, false);
    for (int r = 0; r < std::min(10, n_ed); ++r) top10[order[r]] = true;

    // Accepted dates over the corpus window.
    const std::int64_t window_start = days_from_civil(config.first_year, 1, 1);
    const std::int64_t window_days =
        days_from_civil(config.last_year, 12, 31) - window_start + 1;

    std::vector<ArticleScratch> arts;
    std::vector<std::vector<std::size_t>> editor_articles(n_ed);
    double mix_total = 0;
    for (double w : config.sa_mixture) mix_total += w;

    for (int e = 0; e < n_ed; ++e) {
        std::vector<std::int64_t> dates(n_articles[e]);
        for (auto& d : dates)
            d = window_start + static_cast<std::int64_t>(rng.uniform() * window_days);
        std::sort(dates.begin(), dates.end());
        for (std::int64_t d : dates) {
            ArticleScratch a;
            a.editor = static_cast<std::size_t>(e);
            a.accepted = Date{d};
            double u = rng.uniform() * mix_total;
            a.sa = kNumRefinedSubjectAreas;
            for (int s = 0; s < kNumRefinedSubjectAreas; ++s) {
                if (u < config.sa_mixture[s]) {
                    a.sa = s + 1;
                    break;
                }
                u -= config.sa_mixture[s];
            }
            if (a.sa > kNumRefinedSubjectAreas) a.sa = kNumRefinedSubjectAreas;
            a.k_authors = std::clamp<std::int64_t>(
                std::llround(std::exp(rng.normal(config.ln_k_mean, config.ln_k_sd))), 1, 50);
            a.n_refs = std::max<std::int64_t>(1, rng.poisson(config.mean_refs));
            editor_articles[e].push_back(arts.size());
            arts.push_back(a);
            ++truth.sa_counts[a.sa - 1];
        }
    }

    // Repeat-author planting.
    std::vector<std::vector<std::string>> extra_authors(arts.size());
    std::vector<std::int64_t> planted_repeats(n_ed, 0);
    for (int e = 0; e < n_ed; ++e) {
        auto& idxs = editor_articles[e];
        const std::int64_t ne = static_cast<std::int64_t>(idxs.size());
        if (ne < 2) continue;
        auto pick_subset = [&](std::int64_t m) {
            std::vector<std::size_t> pool(idxs.begin(), idxs.end());
            for (std::int64_t i = 0; i < m; ++i) {
                const std::size_t j = i + rng.uniform_index(pool.size() - i);
                std::swap(pool[i], pool[j]);
            }
            pool.resize(static_cast<std::size_t>(m));
            return pool;
        };
        if (config.repeat_planting == RepeatPlanting::Cliques) {
            const std::int64_t m = rng.poisson(config.repeat_authors_per_editor);
            for (std::int64_t j = 0; j < m; ++j) {
                std::int64_t extra = 0;
                if (config.repeat_articles_geom_p < 1.0) {
                    double u = rng.uniform();
                    while (u <= 0) u = rng.uniform();
                    extra = static_cast<std::int64_t>(
                        std::log(u) / std::log(1.0 - config.repeat_articles_geom_p));
                }
                const std::int64_t size = std::min<std::int64_t>(ne, 2 + extra);
                const std::string key = "r" + std::to_string(e) + "_" + std::to_string(j);
                for (std::size_t ai : pick_subset(size)) {
                    extra_authors[ai].push_back(key);
                    arts[ai].r_flag = true;
                }
                ++planted_repeats[e];
            }
        } else {
            const std::int64_t m = std::llround(config.r1_share * static_cast<double>(ne));
            if (m >= 2) {
                const std::string key = "r" + std::to_string(e) + "_0";
                for (std::size_t ai : pick_subset(std::min(m, ne))) {
                    extra_authors[ai].push_back(key);
                    arts[ai].r_flag = true;
                }
                planted_repeats[e] = 1;
            }
        }
    }

    // Editor-citing reference counts.
    for (int e = 0; e < n_ed; ++e) {
        const bool degenerate = editors[e].degenerate;
        const bool biased = e < config.n_biased_editors;
        if (config.citing_model == CitingModel::PerArticleMixture) {
            for (std::size_t ai : editor_articles[e]) {
                if (degenerate) continue;
                if (rng.uniform() < config.p_article_cites)
                    arts[ai].citing_refs =
                        std::max<std::int64_t>(1, rng.binomial(arts[ai].n_refs, config.cite_rate));
            }
        } else {
            for (int rclass = 0; rclass < 2; ++rclass) {
                const double rate = (biased && rclass == 1)
                                        ? config.base_rate + config.bias_gap
                                        : config.base_rate;
                if (degenerate) continue;
                if (config.citing_allocation == CitingAllocation::Binomial) {
                    for (std::size_t ai : editor_articles[e]) {
                        if (static_cast<int>(arts[ai].r_flag) != rclass) continue;
                        arts[ai].citing_refs = rng.binomial(arts[ai].n_refs, rate);
                    }
                } else {
                    std::int64_t cum = 0, allocated = 0;
                    for (std::size_t ai : editor_articles[e]) {
                        if (static_cast<int>(arts[ai].r_flag) != rclass) continue;
                        cum += arts[ai].n_refs;
                        const std::int64_t target = std::llround(rate * static_cast<double>(cum));
                        arts[ai].citing_refs =
                            std::min(arts[ai].n_refs, target - allocated);
                        allocated += arts[ai].citing_refs;
                    }
                }
            }
        }
    }

    // Acceptance times, phase 1: exogenous lognormal.
    for (auto& a : arts)
        a.delta_days = std::max<std::int64_t>(
            0, std::llround(std::expm1(rng.normal(config.delta_log_mean, config.delta_log_sd))));

    // Service age from the editor's first accepted article.
    for (int e = 0; e < n_ed; ++e) {
        if (editor_articles[e].empty()) continue;
        const Date first = arts[editor_articles[e].front()].accepted;
        for (std::size_t ai : editor_articles[e])
            arts[ai].tau =
                static_cast<double>(days_between(first, arts[ai].accepted)) / kDaysPerYear;
    }

    // Citation impact targets and raw citation counts.
    std::vector<double> impact_intercept(n_ed, 0);
    if (config.impact.enabled)
        for (auto& b : impact_intercept) b = rng.normal(0, config.impact.intercept_sd);
    for (auto& a : arts) {
        if (config.impact.enabled) {
            const auto& m = config.impact;
            const double ln_tau = std::log(a.tau + kTauLogOffset);
            const double r = a.r_flag ? 1.0 : 0.0;
            const double t10 = top10[a.editor] ? 1.0 : 0.0;
            a.z_target = impact_intercept[a.editor] +
                         m.beta_ln_k * std::log(static_cast<double>(a.k_authors)) +
                         m.beta_ln_delta * std::log1p(static_cast<double>(a.delta_days)) +
                         m.beta_ln_tau * ln_tau + m.beta_r * r +
                         m.beta_r_x_ln_tau * r * ln_tau + m.beta_t10_x_ln_tau * t10 * ln_tau +
                         m.beta_t10_x_r_x_ln_tau * t10 * r * ln_tau +
                         rng.normal(0, m.noise_sd);
        } else {
            a.z_target = rng.normal(0, 1);
        }
        a.citations = std::max<std::int64_t>(
            0, std::llround(std::exp(config.citation_log_mean +
                                     config.citation_log_sd * a.z_target)) -
                   1);
    }

    // Materialize the corpus.
    Corpus& corpus = out.corpus;
    corpus.editors = editors;
    corpus.census_date = Date{days_from_civil(config.last_year + 1, 12, 3)};
    std::int64_t author_seq = 0, ref_author_seq = 0;
    corpus.articles.reserve(arts.size());
    for (std::size_t ai = 0; ai < arts.size(); ++ai) {
        const auto& s = arts[ai];
        ArticleRecord a;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "10.9999/synth.%07zu", ai);
        a.doi = buf;
        a.editor_id = editors[s.editor].editor_id;
        a.accepted = s.accepted;
        a.received = Date{s.accepted.days_since_epoch - s.delta_days};
        a.year = date_year(s.accepted);
        const std::int64_t base_authors =
            std::max<std::int64_t>(1, s.k_authors -
                                          static_cast<std::int64_t>(extra_authors[ai].size()));
        for (std::int64_t k = 0; k < base_authors; ++k)
            a.authors.push_back({"u" + std::to_string(author_seq++), 'A'});
        for (const auto& key : extra_authors[ai]) a.authors.push_back({key, 'A'});
        for (int k = 0; k < config.keywords_per_article; ++k)
            a.keywords.push_back("kw" + std::to_string(s.sa) + "_" +
                                 std::to_string(rng.uniform_index(10)));
        a.top_level_classes = {kSaRepresentativeClass[s.sa - 1]};
        for (std::int64_t r = 0; r < s.n_refs; ++r) {
            ReferenceEntry ref;
            if (r < s.citing_refs) {
                ref.authors.push_back(editors[s.editor].name);
                ref.authors.push_back({"x" + std::to_string(ref_author_seq++), 'B'});
            } else {
                ref.authors.push_back({"x" + std::to_string(ref_author_seq++), 'B'});
            }
            a.references.push_back(std::move(ref));
        }
        a.citation_count = s.citations;
        corpus.articles.push_back(std::move(a));
    }

    // Acceptance times, phase 2: model-driven, using the pipeline's own
    // normalized impact as the z covariate.
    if (config.acceptance.enabled) {
        const auto table = build_weight_table(corpus);
        const auto classes = classify_all(corpus, table);
        const auto impact = normalize(corpus, classes);
        std::vector<double> intercept(n_ed);
        for (auto& b : intercept)
            b = rng.normal(config.acceptance.intercept_mean, config.acceptance.intercept_sd);
        for (std::size_t ai = 0; ai < arts.size(); ++ai) {
            auto& s = arts[ai];
            auto& a = corpus.articles[ai];
            const auto& m = config.acceptance;
            const double z = impact.scores[ai].defined ? impact.scores[ai].z : 0.0;
            const double f = a.references.empty()
                                 ? 0.0
                                 : static_cast<double>(s.citing_refs) /
                                       static_cast<double>(a.references.size());
            const double r = s.r_flag ? 1.0 : 0.0;
            const double lin = intercept[s.editor] + m.beta_z * z +
                               m.beta_ln_k * std::log(static_cast<double>(a.authors.size())) +
                               m.beta_f * f + m.beta_f_x_r * f * r +
                               m.beta_ln_tau * std::log(s.tau + kTauLogOffset) + m.beta_r * r +
                               rng.normal(0, m.noise_sd);
            s.delta_days = std::max<std::int64_t>(0, std::llround(std::expm1(lin)));
            a.received = Date{a.accepted.days_since_epoch - s.delta_days};
        }
    }

    // Ground-truth bookkeeping.
    truth.editors.resize(n_ed);
    for (int e = 0; e < n_ed; ++e) {
        auto& g = truth.editors[e];
        g.editor_id = editors[e].editor_id;
        g.n_articles = n_articles[e];
        g.biased = e < config.n_biased_editors;
        g.top10 = top10[e];
        g.planted_repeat_authors = planted_repeats[e];
        for (std::size_t ai : editor_articles[e])
            if (arts[ai].r_flag) ++g.n_r1_articles;
    }
    truth.article_r_flags.reserve(arts.size());
    truth.article_f.reserve(arts.size());
    for (std::size_t ai = 0; ai < arts.size(); ++ai) {
        truth.article_r_flags.push_back(arts[ai].r_flag);
        truth.article_f.push_back(static_cast<double>(arts[ai].citing_refs) /
                                  static_cast<double>(arts[ai].n_refs));
        truth.total_references += arts[ai].n_refs;
        truth.total_authors +=
            static_cast<std::int64_t>(corpus.articles[ai].authors.size());
        truth.total_citations += arts[ai].citations;
        truth.sum_duration_days += arts[ai].delta_days;
    }
    truth.total_articles = static_cast<std::int64_t>(arts.size());
    return out;
}

void write_synth_output(const SynthOutput& out, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream f(fs::path(out_dir) / "editors.jsonl", std::ios::binary);
        for (const auto& e : out.corpus.editors) f << editor_to_jsonl(e) << '\n';
    }
    {
        std::ofstream f(fs::path(out_dir) / "articles.jsonl", std::ios::binary);
        for (const auto& a : out.corpus.articles) f << article_to_jsonl(a) << '\n';
    }
    {
        const GroundTruth& t = out.truth;
        json editors = json::array();
        for (const auto& g : t.editors)
            editors.push_back(json{{"editor_id", g.editor_id},
                                   {"n_articles", g.n_articles},
                                   {"biased", g.biased},
                                   {"top10", g.top10},
                                   {"planted_repeat_authors", g.planted_repeat_authors},
                                   {"n_r1_articles", g.n_r1_articles}});
        json r_flags = json::array();
        for (bool b : t.article_r_flags) r_flags.push_back(b ? 1 : 0);
        json root{{"config", json::parse(synth_config_to_json(t.config))},
                  {"editors", std::move(editors)},
                  {"article_r_flags", std::move(r_flags)},
                  {"totals",
                   json{{"articles", t.total_articles},
                        {"references", t.total_references},
                        {"authors", t.total_authors},
                        {"citations", t.total_citations},
                        {"duration_days", t.sum_duration_days}}},
                  {"sa_counts", t.sa_counts}};
        std::ofstream f(fs::path(out_dir) / "ground_truth.json", std::ios::binary);
        f << root.dump(2) << '\n';
    }
}

}  // namespace forensics
