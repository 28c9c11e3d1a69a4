#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "forensics/corpus.hpp"

namespace forensics {

// Deterministic pseudo-random stream: raw mt19937_64 output mapped through
// explicit local transforms (no standard-library distributions, whose
// streams differ across implementations).
class SynthRng {
  public:
    explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                       // [0, 1)
    double normal(double mu = 0, double sd = 1);  // Box-Muller, cached spare
    std::int64_t poisson(double lambda);
    std::int64_t binomial(std::int64_t n, double p);
    double pareto(double alpha, double xm = 1.0);
    std::size_t uniform_index(std::size_t n);  // 0..n-1

  private:
    std::uint64_t next_u64() { return engine_(); }
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

struct AcceptanceModelConfig {
    bool enabled = false;
    double beta_z = -0.05;
    double beta_ln_k = 0.05;
    double beta_f = -0.674;
    double beta_ln_tau = 0.17;
    double beta_r = -0.0878;
    double beta_f_x_r = 0.0;
    double intercept_mean = 4.8;   // ~ ln(mean acceptance days)
    double intercept_sd = 0.3;
    double noise_sd = 0.5;
};

struct ImpactModelConfig {
    bool enabled = false;
    double beta_ln_k = 0.285;
    double beta_ln_delta = -0.127;
    double beta_ln_tau = -0.178;
    double beta_r = 0.0895;
    double beta_r_x_ln_tau = 0.0;
    double beta_t10_x_ln_tau = 0.0;
    double beta_t10_x_r_x_ln_tau = 0.0;
    double intercept_sd = 0.5;     // editor fixed-effect spread
    double noise_sd = 0.5;
};

enum class CitingModel {
    PerArticleMixture,  // P(f > 0) mixture with a per-reference rate
    ConditionalRates,   // rates conditional on R, with optional bias gap
};

enum class CitingAllocation {
    Binomial,  // per-reference Bernoulli draws
    Expected,  // largest-remainder rounding of the expected counts
};

enum class RepeatPlanting {
    Cliques,  // Poisson number of repeat authors per editor
    Share,    // target fraction of R = 1 articles per editor
};

struct SynthConfig {
    std::uint64_t seed = 1;
    int n_editors = 500;
    double power_law_alpha = 1.362;  // N_E tail exponent (Gini ~ 0.58)
    std::int64_t min_articles = 1;
    std::int64_t max_articles = 600;
    int n_degenerate_pairs = 0;      // planted editor-name collisions

    int first_year = 2006;
    int last_year = 2015;

    std::vector<double> sa_mixture = {0.35, 0.30, 0.12, 0.08, 0.08, 0.07};
    int keywords_per_article = 8;

    double ln_k_mean = 1.2;  // authors per article, lognormal-ish
    double ln_k_sd = 0.5;

    double mean_refs = 33.0;

    RepeatPlanting repeat_planting = RepeatPlanting::Cliques;
    double repeat_authors_per_editor = 1.5;  // Poisson lambda (Cliques)
    double repeat_articles_geom_p = 0.6;     // extra articles beyond 2
    double r1_share = 0.3;                   // target share (Share mode)

    CitingModel citing_model = CitingModel::PerArticleMixture;
    CitingAllocation citing_allocation = CitingAllocation::Binomial;
    double p_article_cites = 0.08;   // PerArticleMixture
    double cite_rate = 0.036;        // per-reference rate when citing
    double base_rate = 0.0028;       // ConditionalRates: f0
    double bias_gap = 0.0013;        // biased editors: f1 = f0 + gap
    int n_biased_editors = 0;
    std::int64_t biased_editor_articles = 300;

    double citation_log_mean = 3.0;  // mu of ln(1+c) per stratum
    double citation_log_sd = 1.0;
    double delta_log_mean = 4.7;     // exogenous acceptance-time lognormal
    double delta_log_sd = 0.6;

    AcceptanceModelConfig acceptance;
    ImpactModelConfig impact;
};

SynthConfig synth_config_from_json(const std::string& json_text);
std::string synth_config_to_json(const SynthConfig& config);

struct GroundTruthEditor {
    std::string editor_id;
    std::int64_t n_articles = 0;
    bool biased = false;
    bool top10 = false;
    std::int64_t planted_repeat_authors = 0;
    std::int64_t n_r1_articles = 0;
};

struct GroundTruth {
    SynthConfig config;
    std::vector<GroundTruthEditor> editors;
    std::vector<bool> article_r_flags;       // planted R, corpus order
    std::vector<double> article_f;           // realized f_A
    std::int64_t total_articles = 0;
    std::int64_t total_references = 0;
    std::int64_t total_authors = 0;          // sum of k_A
    std::int64_t total_citations = 0;
    std::int64_t sum_duration_days = 0;
    std::vector<std::int64_t> sa_counts;     // planted refined-SA histogram
};

struct SynthOutput {
    Corpus corpus;
    GroundTruth truth;
};

// Deterministic given config.seed. Throws on infeasible configs.
SynthOutput generate(const SynthConfig& config);

// Writes articles.jsonl, editors.jsonl and ground_truth.json to out_dir.
void write_synth_output(const SynthOutput& out, const std::string& out_dir);

}  // namespace forensics
