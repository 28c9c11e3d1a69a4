// Acceptance gate: ten end-to-end criteria, one pass/fail line each.
#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forensics/corpus.hpp"
#include "forensics/econometrics.hpp"
#include "forensics/impact.hpp"
#include "forensics/metrics.hpp"
#include "forensics/pipeline.hpp"
#include "forensics/renumeration.hpp"
#include "forensics/social.hpp"
#include "forensics/stats.hpp"
#include "forensics/synth.hpp"
#include "forensics/taxonomy.hpp"

using namespace forensics;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct StageSet {
    Corpus corpus;
    std::vector<EditorProfile> profiles;
    std::vector<TieAnnotation> ties;
    ImpactResult impact;
    std::vector<Classification> classes;
};

StageSet run_stages(Corpus c) {
    StageSet s;
    s.corpus = std::move(c);
    const auto table = build_weight_table(s.corpus);
    s.classes = classify_all(s.corpus, table);
    s.impact = normalize(s.corpus, s.classes);
    s.profiles = build_profiles(s.corpus, s.impact);
    s.ties = tag_repeat_authors(s.corpus, s.profiles, build_blacklist(s.corpus.editors));
    return s;
}

// ---------------------------------------------------------------- criterion 1

Dataset random_panel(std::mt19937& gen, int n_clusters, int per_cluster, int k) {
    std::normal_distribution<double> n01;
    Dataset d;
    const int n = n_clusters * per_cluster;
    d.y.resize(n);
    d.X.resize(n, k);
    d.cluster.resize(n);
    d.n_clusters = n_clusters;
    for (int j = 0; j < k; ++j) d.names.push_back("x" + std::to_string(j));
    std::vector<double> beta(k), alpha(n_clusters);
    for (auto& b : beta) b = n01(gen);
    for (auto& a : alpha) a = 2.0 * n01(gen);
    int row = 0;
    for (int g = 0; g < n_clusters; ++g) {
        for (int i = 0; i < per_cluster; ++i, ++row) {
            double mu = alpha[g];
            for (int j = 0; j < k; ++j) {
                d.X(row, j) = n01(gen) + 0.3 * alpha[g];
                mu += beta[j] * d.X(row, j);
            }
            d.y[row] = mu + 0.5 * n01(gen);
            d.cluster[row] = g;
        }
    }
    return d;
}

bool criterion1() {
    const auto t0 = Clock::now();
    std::mt19937 gen(101);
    for (int rep = 0; rep < 25; ++rep) {
        const Dataset d = random_panel(gen, 50, 10, 5);
        const int n = static_cast<int>(d.y.size());
        const int k = 5, G = d.n_clusters;

        // brute-force dummy-variable OLS with a direct sandwich oracle
        Eigen::MatrixXd Z(n, k + G);
        Z.leftCols(k) = d.X;
        Z.rightCols(G).setZero();
        for (int i = 0; i < n; ++i) Z(i, k + d.cluster[i]) = 1.0;
        const Eigen::MatrixXd ztz = Z.transpose() * Z;
        const Eigen::VectorXd coef = ztz.ldlt().solve(Z.transpose() * d.y);
        const Eigen::VectorXd resid = d.y - Z * coef;
        const Eigen::MatrixXd bread =
            ztz.ldlt().solve(Eigen::MatrixXd::Identity(k + G, k + G));
        Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(G, k + G);
        for (int i = 0; i < n; ++i) scores.row(d.cluster[i]) += resid[i] * Z.row(i);
        const Eigen::MatrixXd meat = scores.transpose() * scores;
        const double c_small = double(G) / (G - 1.0) * (n - 1.0) / (n - double(k + G));
        const Eigen::MatrixXd vcov = c_small * bread * meat * bread;

        const FitResult fit = fit_fixed_effects(d);
        if (static_cast<int>(fit.beta.size()) != k) return false;
        for (int j = 0; j < k; ++j) {
            const double se_oracle = std::sqrt(vcov(j, j));
            if (std::abs(fit.beta[j] - coef[j]) > 1e-8 * std::max(1.0, std::abs(coef[j])))
                return false;
            if (std::abs(fit.se[j] - se_oracle) > 1e-8 * std::max(1.0, se_oracle))
                return false;
        }
    }
    const double dt = seconds_since(t0);
    std::cerr << "  [1] 25 panels in " << dt << " s\n";
    return dt < 5.0;
}

// ---------------------------------------------------------------- criterion 2

bool strata_invariant(const StageSet& s) {
    for (const auto& st : s.impact.strata) {
        std::vector<double> zs;
        for (std::size_t i : st.members)
            if (s.impact.scores[i].defined) zs.push_back(s.impact.scores[i].z);
        if (zs.size() < 2) continue;
        if (std::abs(mean(zs)) >= 1e-12) return false;
        if (std::abs(sample_sd(zs) - 1.0) >= 1e-12) return false;
    }
    return true;
}

bool criterion2() {
    SynthConfig cfg;
    cfg.seed = 202;
    cfg.n_editors = 300;
    cfg.max_articles = 100;
    const StageSet s = run_stages(generate(cfg).corpus);
    std::size_t defined = 0;
    for (const auto& sc : s.impact.scores) defined += sc.defined ? 1 : 0;
    std::cerr << "  [2] " << s.impact.strata.size() << " strata, " << defined
              << " defined scores\n";
    return defined > 0 && strata_invariant(s);
}

// ---------------------------------------------------------------- criterion 3

double pairwise_gini(const std::vector<double>& x) {
    double num = 0, sum = 0;
    for (double a : x) sum += a;
    for (double a : x)
        for (double b : x) num += std::abs(a - b);
    return num / (2.0 * double(x.size()) * sum);
}

bool criterion3() {
    std::mt19937 gen(303);
    std::uniform_real_distribution<double> u(0.1, 50.0);
    std::uniform_int_distribution<int> size(5, 500);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> x;
        const int n = size(gen);
        for (int i = 0; i < n; ++i) x.push_back(u(gen));
        if (std::abs(lorenz_gini(x).gini - pairwise_gini(x)) >= 1e-12) return false;
    }
    if (std::abs(lorenz_gini(std::vector<double>(40, 3.0)).gini) >= 1e-12) return false;

    SynthConfig cfg;
    cfg.seed = 304;
    cfg.n_editors = 20000;
    cfg.max_articles = 600;
    const SynthOutput out = generate(cfg);
    std::vector<double> counts;
    for (const auto& e : out.truth.editors) counts.push_back(double(e.n_articles));
    const double g = lorenz_gini(counts).gini;
    std::cerr << "  [3] power-law article-count Gini = " << g << "\n";
    return std::abs(g - 0.58) <= 0.01;
}

// ---------------------------------------------------------------- criterion 4

bool ci_covers(const FitResult& fit, const std::string& name, double truth) {
    const double b = fit.coef(name), se = fit.stderr_of(name);
    const double t = std::abs(b - truth) / se;
    return student_t_two_sided_p(t, fit.n_clusters - 1.0) >= 0.05;
}

bool criterion4() {
    const int reps = 100;
    int cover_r = 0, cover_f = 0, sign_r = 0, sign_f = 0;
    double worst = 0;
    for (int rep = 0; rep < reps; ++rep) {
        const auto t0 = Clock::now();
        SynthConfig cfg;
        cfg.seed = 40000 + rep;
        cfg.n_editors = 3000;
        cfg.min_articles = 3;
        cfg.max_articles = 600;
        cfg.p_article_cites = 0.3;
        cfg.cite_rate = 0.2;
        cfg.acceptance.enabled = true;  // beta_r -0.0878, beta_f -0.674
        const StageSet s = run_stages(generate(cfg).corpus);
        ModelInputs in{&s.corpus, &s.profiles, &s.ties, 10};
        const FitResult fit = fit_model(in, ModelVariant::II);
        if (ci_covers(fit, "R", cfg.acceptance.beta_r)) ++cover_r;
        if (ci_covers(fit, "f", cfg.acceptance.beta_f)) ++cover_f;
        if (fit.coef("R") < 0) ++sign_r;
        if (fit.coef("f") < 0) ++sign_f;
        worst = std::max(worst, seconds_since(t0));
    }
    std::cerr << "  [4] coverage R " << cover_r << "/100, f " << cover_f
              << "/100; signs " << sign_r << "," << sign_f << "; worst rep " << worst
              << " s\n";
    return cover_r >= 90 && cover_f >= 90 && sign_r == reps && sign_f == reps &&
           worst < 60.0;
}

// ---------------------------------------------------------------- criterion 5

SynthConfig model1_config(int seed, bool planted) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.n_editors = 3000;
    cfg.min_articles = 3;
    cfg.max_articles = 600;
    cfg.mean_refs = 5.0;
    // a healthy share of R = 1 articles among large editors identifies the
    // T10 x R x ln tau branch
    cfg.repeat_planting = RepeatPlanting::Share;
    cfg.r1_share = 0.3;
    cfg.impact.enabled = true;
    cfg.impact.beta_r_x_ln_tau = planted ? -0.025 : 0.0;
    cfg.impact.beta_t10_x_r_x_ln_tau = planted ? -0.103 : 0.0;
    cfg.impact.beta_r = planted ? 0.0895 : 0.0;
    return cfg;
}

bool criterion5() {
    int sign_rtau = 0, sign_t10 = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const StageSet s = run_stages(generate(model1_config(50000 + rep, true)).corpus);
        ModelInputs in{&s.corpus, &s.profiles, &s.ties, 10};
        const FitResult fit = fit_model(in, ModelVariant::ITop10);
        if (fit.coef("R_x_ln_tau") < 0) ++sign_rtau;
        if (fit.coef("T10_x_R_x_ln_tau") < 0) ++sign_t10;
    }
    int false_sig = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const StageSet s = run_stages(generate(model1_config(60000 + rep, false)).corpus);
        ModelInputs in{&s.corpus, &s.profiles, &s.ties, 10};
        const FitResult fit = fit_model(in, ModelVariant::ITop10);
        const int j = fit.index_of("R_x_ln_tau");
        if (fit.p_values[j] < 0.05) ++false_sig;
    }
    std::cerr << "  [5] signs " << sign_rtau << "," << sign_t10 << "/100; null false sig "
              << false_sig << "/100\n";
    return sign_rtau >= 95 && sign_t10 >= 95 && false_sig <= 10;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6() {
    int biased_total = 0, biased_hit = 0, clean_total = 0, clean_hit = 0;
    for (int rep = 0; rep < 5; ++rep) {
        SynthConfig cfg;
        cfg.seed = 6000 + rep;
        cfg.n_editors = 500;
        cfg.min_articles = 25;
        cfg.max_articles = 120;
        cfg.repeat_planting = RepeatPlanting::Share;
        cfg.r1_share = 0.3;
        cfg.citing_model = CitingModel::ConditionalRates;
        cfg.citing_allocation = CitingAllocation::Expected;
        cfg.base_rate = 0.0028;
        cfg.bias_gap = 0.0013;
        cfg.n_biased_editors = 10;
        cfg.biased_editor_articles = 300;  // ~10k refs at 33 per article
        const SynthOutput out = generate(cfg);
        const StageSet s = run_stages(out.corpus);
        const auto recs = conditional_rates(s.profiles, s.ties, 20);
        const auto flagged = delta_c_right_outliers(recs);
        std::set<std::string> flag_set(flagged.begin(), flagged.end());
        for (const auto& e : out.truth.editors) {
            if (e.biased) {
                ++biased_total;
                if (flag_set.count(e.editor_id)) ++biased_hit;
            } else {
                ++clean_total;
                if (flag_set.count(e.editor_id)) ++clean_hit;
            }
        }
    }
    const double recall = double(biased_hit) / double(biased_total);
    const double fp = double(clean_hit) / double(clean_total);
    std::cerr << "  [6] recall " << biased_hit << "/" << biased_total << " = " << recall
              << ", false positives " << clean_hit << "/" << clean_total << " = " << fp
              << "\n";
    return recall >= 0.8 && fp <= 0.02;
}

// ---------------------------------------------------------------- criterion 7

bool ks_uniform(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    const double n = double(p.size());
    double d = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d = std::max(d, std::abs(p[i] - double(i + 1) / n));
        d = std::max(d, std::abs(p[i] - double(i) / n));
    }
    return d < 1.358 / std::sqrt(n);  // 5% critical value
}

// P(D >= k/n) for equal sample sizes, reflection principle.
double ks_equal_tail(int n, int k) {
    auto lchoose = [](double m, double r) {
        return std::lgamma(m + 1.0) - std::lgamma(r + 1.0) - std::lgamma(m - r + 1.0);
    };
    const double denom = lchoose(2.0 * n, n);
    double p = 0, sign = 1;
    for (int j = 1; j * k <= n; ++j, sign = -sign)
        p += sign * std::exp(lchoose(2.0 * n, n - double(j) * double(k)) - denom);
    return std::clamp(2.0 * p, 0.0, 1.0);
}

// The exact KS p-value is discrete (atoms at P(D >= k/n)); uniformity is
// checked on the statistic's own support, not against a continuous U(0,1).
bool ks_uniform_discrete(const std::vector<double>& p, int n) {
    double d = 0;
    for (int k = 1; k <= n; ++k) {
        const double atom = ks_equal_tail(n, k);
        double frac = 0;
        for (double v : p)
            if (v <= atom + 1e-12) frac += 1.0;
        frac /= double(p.size());
        d = std::max(d, std::abs(frac - atom));
    }
    return d < 1.358 / std::sqrt(double(p.size()));
}

bool criterion7() {
    std::mt19937 gen(707);
    std::normal_distribution<double> n01;
    std::vector<double> pw, pm, pk;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> a, b;
        for (int i = 0; i < 200; ++i) {
            a.push_back(n01(gen));
            b.push_back(n01(gen));
        }
        pw.push_back(welch_t_test(a, b).p_value);
        pm.push_back(mann_whitney_u(a, b).p_value);
        pk.push_back(ks_two_sample(a, b).p_value);
    }
    const bool uniform = ks_uniform(pw) && ks_uniform(pm) && ks_uniform_discrete(pk, 200);

    bool power = true;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> a, b;
        for (int i = 0; i < 200; ++i) {
            a.push_back(n01(gen));
            b.push_back(n01(gen) + 1.0);
        }
        power = power && welch_t_test(a, b).p_value < 1e-3 &&
                mann_whitney_u(a, b).p_value < 1e-3 && ks_two_sample(a, b).p_value < 1e-3;
    }
    std::cerr << "  [7] null uniformity " << (uniform ? "ok" : "violated") << ", power "
              << (power ? "ok" : "violated") << "\n";
    return uniform && power;
}

// ---------------------------------------------------------------- criterion 8

bool criterion8() {
    // rule: the exception never leaves class 1 when a nonzero second exists
    SynthConfig cfg;
    cfg.seed = 808;
    cfg.n_editors = 200;
    cfg.max_articles = 80;
    const SynthOutput out = generate(cfg);
    const auto table = build_weight_table(out.corpus);
    const auto cls = classify_all(out.corpus, table);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (cls[i].pre_exception_class != 1) continue;
        // recompute the summed weight vector to find the second rank
        std::array<double, kNumTopLevelClasses> total{};
        for (const auto& kw : out.corpus.articles[i].keywords)
            if (const auto* row = table.find(kw))
                for (int c = 0; c < kNumTopLevelClasses; ++c) total[c] += (*row)[c];
        double second = 0;
        for (int c = 1; c < kNumTopLevelClasses; ++c) second = std::max(second, total[c]);
        if (second > 0 && cls[i].principal_class == 1) return false;
    }
    // refined totals conserved: histogram stages count the same articles
    const auto pre = sa_histogram(cls, HistogramStage::PreException);
    const auto post = sa_histogram(cls, HistogramStage::PostException);
    const auto refined = sa_histogram(cls, HistogramStage::Refined);
    auto sum = [](const std::vector<std::int64_t>& v) {
        std::int64_t s = 0;
        for (auto x : v) s += x;
        return s;
    };
    if (sum(pre) != sum(post) || sum(post) != sum(refined)) return false;
    // planted recovery exact
    std::size_t resolved = 0;
    std::vector<std::int64_t> hist(6, 0);
    for (const auto& r : cls) {
        if (r.refined_sa == 0) return false;
        ++hist[static_cast<std::size_t>(r.refined_sa - 1)];
        ++resolved;
    }
    for (std::size_t s = 0; s < 6; ++s)
        if (hist[s] != out.truth.sa_counts[s]) return false;
    // determinism of classification
    const auto cls2 = classify_all(out.corpus, build_weight_table(out.corpus));
    for (std::size_t i = 0; i < cls.size(); ++i)
        if (cls[i].principal_class != cls2[i].principal_class) return false;
    std::cerr << "  [8] " << resolved << "/" << cls.size()
              << " articles resolved, planted recovery exact\n";
    return resolved > 0;
}

// ---------------------------------------------------------------- criterion 9

bool criterion9() {
    const fs::path tmp = fs::temp_directory_path() / "forensics_acceptance_c9";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    SynthConfig cfg;
    cfg.seed = 909;
    cfg.n_editors = 1200;
    cfg.min_articles = 3;
    cfg.max_articles = 600;
    const SynthOutput out = generate(cfg);
    write_synth_output(out, tmp.string());
    std::cerr << "  [9] corpus articles: " << out.truth.total_articles << "\n";
    if (out.truth.total_articles < 10000) return false;

    PipelineConfig pc;
    pc.articles_path = (tmp / "articles.jsonl").string();
    pc.editors_path = (tmp / "editors.jsonl").string();
    pc.out_dir = (tmp / "a").string();
    const auto t0 = Clock::now();
    run_pipeline(pc);
    const double dt = seconds_since(t0);
    pc.out_dir = (tmp / "b").string();
    run_pipeline(pc);

    const std::vector<std::string> outputs = {
        "classes.csv", "impact.csv", "profiles.csv", "ties.csv", "blacklist.txt",
        "renum.csv", "tests.json", "fig3c.csv", "summary.json",
        "fit_model_I.json", "fit_model_I_rtau.json", "fit_model_I_top10.json",
        "fit_model_II.json", "fit_model_II_fxr.json"};
    bool identical = true;
    for (const auto& o : outputs)
        identical = identical && file_content_hash((tmp / "a" / o).string()) ==
                                     file_content_hash((tmp / "b" / o).string());
    std::cerr << "  [9] full pipeline " << dt << " s, outputs "
              << (identical ? "byte-identical" : "differ") << "\n";
    fs::remove_all(tmp);
    return identical && dt < 10.0;
}

// --------------------------------------------------------------- criterion 10

bool criterion10() {
    // a corpus supplied in the documented JSONL format flows through the
    // summary path and yields the complete headline statistic set; the
    // values themselves are data-dependent and documented as such.
    const fs::path tmp = fs::temp_directory_path() / "forensics_acceptance_c10";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    SynthConfig cfg;
    cfg.seed = 1010;
    cfg.n_editors = 400;
    cfg.max_articles = 200;
    cfg.acceptance.enabled = true;
    const SynthOutput out = generate(cfg);
    write_synth_output(out, tmp.string());

    PipelineConfig pc;
    pc.articles_path = (tmp / "articles.jsonl").string();
    pc.editors_path = (tmp / "editors.jsonl").string();
    pc.out_dir = (tmp / "out").string();
    const SummaryStats s = run_pipeline(pc);

    bool ok = s.total_articles > 0 && s.total_editors > 0;
    ok = ok && s.gini > 0 && s.gini < 1;                       // concentration panel
    ok = ok && s.top10_share > 0 && s.mean_duration_days > 0;  // activity panel
    ok = ok && s.fraction_f_zero >= 0 && s.fraction_r_one >= 0;

    // every documented artifact of the statistic set exists and is non-empty
    const std::vector<std::string> artifacts = {
        "classes.csv", "impact.csv", "profiles.csv", "ties.csv", "renum.csv",
        "tests.json", "fig3c.csv", "summary.json", "fit_model_I.json",
        "fit_model_I_rtau.json", "fit_model_I_top10.json", "fit_model_II.json",
        "fit_model_II_fxr.json"};
    for (const auto& a : artifacts)
        ok = ok && fs::exists(tmp / "out" / a) && fs::file_size(tmp / "out" / a) > 0;
    const std::vector<std::string> panels = {
        "dist_N_E.csv", "dist_Delta_A.csv", "dist_Delta_E.csv", "dist_cov_E.csv",
        "dist_d_E.csv", "dist_f_A.csv", "dist_K2_E.csv", "dist_rho_E.csv"};
    for (const auto& p : panels) ok = ok && fs::exists(tmp / "out" / "dists" / p);
    std::cerr << "  [10] summary + artifact set " << (ok ? "complete" : "incomplete")
              << " (values data-dependent by design)\n";
    fs::remove_all(tmp);
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        bool (*fn)();
    };
    const Criterion all[] = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                             {4, criterion4}, {5, criterion5}, {6, criterion6},
                             {7, criterion7}, {8, criterion8}, {9, criterion9},
                             {10, criterion10}};
    int failures = 0;
    for (const auto& c : all) {
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            std::cerr << "  [" << c.id << "] exception: " << e.what() << "\n";
            ok = false;
        }
        std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << std::endl;
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
