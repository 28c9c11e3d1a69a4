// forensics: editorial-metrics pipeline CLI.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "forensics/corpus.hpp"
#include "forensics/econometrics.hpp"
#include "forensics/impact.hpp"
#include "forensics/metrics.hpp"
#include "forensics/pipeline.hpp"
#include "forensics/renumeration.hpp"
#include "forensics/social.hpp"
#include "forensics/synth.hpp"
#include "forensics/taxonomy.hpp"

namespace {

// Exit codes: 0 ok, 2 usage, 3 input/ingest, 4 pipeline stage,
// 5 estimation, 6 invalid argument, 1 anything else.
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitStage = 4;
constexpr int kExitEstimation = 5;
constexpr int kExitBadArgument = 6;

using forensics::Classification;
using forensics::Corpus;
using forensics::ImpactResult;
using forensics::ImpactScore;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

// Reads classes.csv back into corpus order.
std::vector<Classification> read_classes_csv(const std::string& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) throw forensics::CorpusError("cannot open classes file: " + path);
    std::unordered_map<std::string, Classification> by_doi;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3)
            throw forensics::CorpusError("malformed classes row: " + line);
        Classification c;
        c.principal_class = std::stoi(f[1]);
        c.pre_exception_class = c.principal_class;
        c.refined_sa = std::stoi(f[2]);
        by_doi[f[0]] = c;
    }
    std::vector<Classification> out;
    out.reserve(corpus.articles.size());
    for (const auto& a : corpus.articles) {
        auto it = by_doi.find(a.doi);
        if (it == by_doi.end())
            throw forensics::CorpusError("classes file has no row for doi " + a.doi);
        out.push_back(it->second);
    }
    return out;
}

// Reads impact.csv back into corpus order. Strata are not reconstructed.
ImpactResult read_impact_csv(const std::string& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) throw forensics::CorpusError("cannot open impact file: " + path);
    std::unordered_map<std::string, ImpactScore> by_doi;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5)
            throw forensics::CorpusError("malformed impact row: " + line);
        ImpactScore sc;
        sc.s = std::stoi(f[1]);
        sc.t = std::stoi(f[2]);
        if (f[3] != "nan") {
            sc.z = std::stod(f[3]);
            sc.defined = true;
        }
        sc.model1_excluded = f[4] == "1";
        by_doi[f[0]] = sc;
    }
    ImpactResult out;
    out.scores.reserve(corpus.articles.size());
    for (const auto& a : corpus.articles) {
        auto it = by_doi.find(a.doi);
        if (it == by_doi.end())
            throw forensics::CorpusError("impact file has no row for doi " + a.doi);
        out.scores.push_back(it->second);
    }
    return out;
}

Corpus load_corpus_checked(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw forensics::CorpusError("corpus file not found: " + path);
    return forensics::load_corpus(path);
}

void report_diagnostics(const std::vector<forensics::IngestDiagnostic>& diags) {
    for (const auto& d : diags)
        std::cerr << d.file << ':' << d.line << ": rejected: " << d.message << '\n';
}

void apply_thread_cap() {
    if (const char* env = std::getenv("FORENSICS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) Eigen::setNbThreads(n);
    }
}

struct PrecomputedStages {
    std::vector<Classification> classes;
    ImpactResult impact;
    std::vector<forensics::EditorProfile> profiles;
    forensics::SurnameBlacklist blacklist;
    std::vector<forensics::TieAnnotation> ties;
};

PrecomputedStages run_stages(const Corpus& corpus, const std::string& blacklist_override) {
    PrecomputedStages st;
    const auto table = forensics::build_weight_table(corpus);
    st.classes = forensics::classify_all(corpus, table);
    st.impact = forensics::normalize(corpus, st.classes);
    st.profiles = forensics::build_profiles(corpus, st.impact);
    st.blacklist = blacklist_override.empty() ? forensics::build_blacklist(corpus.editors)
                                              : forensics::load_blacklist(blacklist_override);
    st.ties = forensics::tag_repeat_authors(corpus, st.profiles, st.blacklist);
    return st;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"editorial power / decision-bias forensics pipeline"};
    app.require_subcommand(1);

    // ingest
    std::string arg_articles, arg_editors, arg_corpus, arg_out, arg_census;
    auto* ingest_cmd = app.add_subcommand("ingest", "parse the JSONL corpus pair into corpus.bin");
    ingest_cmd->add_option("--articles", arg_articles, "articles.jsonl")->required();
    ingest_cmd->add_option("--editors", arg_editors, "editors.jsonl")->required();
    ingest_cmd->add_option("--out", arg_out, "output corpus cache")->required();
    ingest_cmd->add_option("--census", arg_census, "citation census date (YYYY-MM-DD)");

    // classify
    std::string cls_corpus, cls_out;
    auto* classify_cmd = app.add_subcommand("classify", "principal class and refined subject area");
    classify_cmd->add_option("--corpus", cls_corpus, "corpus.bin")->required();
    classify_cmd->add_option("--out", cls_out, "classes.csv")->required();

    // normalize
    std::string nrm_corpus, nrm_classes, nrm_out;
    auto* normalize_cmd = app.add_subcommand("normalize", "detrended citation z-scores");
    normalize_cmd->add_option("--corpus", nrm_corpus, "corpus.bin")->required();
    normalize_cmd->add_option("--classes", nrm_classes, "classes.csv")->required();
    normalize_cmd->add_option("--out", nrm_out, "impact.csv")->required();

    // metrics
    std::string met_corpus, met_impact, met_out, met_dist;
    std::int64_t met_min_n = 10;
    auto* metrics_cmd = app.add_subcommand("metrics", "per-editor activity and citing profiles");
    metrics_cmd->add_option("--corpus", met_corpus, "corpus.bin")->required();
    metrics_cmd->add_option("--impact", met_impact, "impact.csv")->required();
    metrics_cmd->add_option("--out", met_out, "profiles.csv")->required();
    metrics_cmd->add_option("--dist-out", met_dist, "distribution table directory");
    metrics_cmd->add_option("--min-n", met_min_n, "editor-level panel threshold");

    // ties
    std::string tie_corpus, tie_out, tie_blk_out, tie_blk_override;
    auto* ties_cmd = app.add_subcommand("ties", "repeat-author flags per article");
    ties_cmd->add_option("--corpus", tie_corpus, "corpus.bin")->required();
    ties_cmd->add_option("--out", tie_out, "ties.csv")->required();
    ties_cmd->add_option("--blacklist-out", tie_blk_out, "emitted surname blacklist");
    ties_cmd->add_option("--blacklist-override", tie_blk_override, "replacement blacklist file");

    // regress
    std::string reg_corpus, reg_out, reg_model = "I";
    std::int64_t reg_min_n = 10;
    auto* regress_cmd = app.add_subcommand("regress", "editor-clustered fixed-effects fits");
    regress_cmd->add_option("--corpus", reg_corpus, "corpus.bin")->required();
    regress_cmd->add_option("--model", reg_model, "I | I-rtau | I-top10 | II | II-fxr")
        ->check(CLI::IsMember({"I", "I-rtau", "I-top10", "II", "II-fxr"}));
    regress_cmd->add_option("--out", reg_out, "fit.json")->required();
    regress_cmd->add_option("--min-n", reg_min_n, "minimum editor article count");

    // renumerate
    std::string ren_corpus, ren_out, ren_tests, ren_scatter;
    std::int64_t ren_min_n = 20;
    double ren_alpha = 0.1;
    auto* renum_cmd = app.add_subcommand("renumerate", "conditional citing rates and delta C");
    renum_cmd->add_option("--corpus", ren_corpus, "corpus.bin")->required();
    renum_cmd->add_option("--min-n", ren_min_n, "minimum editor article count");
    renum_cmd->add_option("--trend-alpha", ren_alpha, "trend significance level");
    renum_cmd->add_option("--out", ren_out, "renum.csv")->required();
    renum_cmd->add_option("--tests-out", ren_tests, "two-sample test report");
    renum_cmd->add_option("--scatter-out", ren_scatter, "N_E vs C_E scatter data");

    // synth
    std::string syn_config, syn_out_dir;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus with ground truth");
    synth_cmd->add_option("--config", syn_config, "synth config json")->required();
    synth_cmd->add_option("--out-dir", syn_out_dir, "output directory")->required();

    // report
    std::string rep_config;
    auto* report_cmd = app.add_subcommand("report", "full pipeline run from a config file");
    report_cmd->add_option("--config", rep_config, "flat key=value config")->required();

    // summary
    std::string sum_corpus, sum_articles, sum_editors;
    std::int64_t sum_min_n = 10;
    auto* summary_cmd = app.add_subcommand("summary", "headline statistics table");
    summary_cmd->add_option("--corpus", sum_corpus, "corpus.bin");
    summary_cmd->add_option("--articles", sum_articles, "articles.jsonl (with --editors)");
    summary_cmd->add_option("--editors", sum_editors, "editors.jsonl");
    summary_cmd->add_option("--min-n", sum_min_n, "editor-level threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*ingest_cmd) {
            std::optional<forensics::Date> census;
            if (!arg_census.empty()) census = forensics::parse_date(arg_census);
            auto result = forensics::ingest(arg_articles, arg_editors, census);
            report_diagnostics(result.diagnostics);
            if (result.corpus.articles.empty())
                throw forensics::CorpusError("no valid articles in input");
            forensics::save_corpus(result.corpus, arg_out);
            std::cout << "ingested " << result.corpus.articles.size() << " articles, "
                      << result.corpus.editors.size() << " editors ("
                      << result.diagnostics.size() << " rejected lines)\n";
        } else if (*classify_cmd) {
            const Corpus corpus = load_corpus_checked(cls_corpus);
            const auto table = forensics::build_weight_table(corpus);
            forensics::write_classes_csv(cls_out, corpus, forensics::classify_all(corpus, table));
        } else if (*normalize_cmd) {
            const Corpus corpus = load_corpus_checked(nrm_corpus);
            const auto classes = read_classes_csv(nrm_classes, corpus);
            forensics::write_impact_csv(nrm_out, corpus, forensics::normalize(corpus, classes));
        } else if (*metrics_cmd) {
            const Corpus corpus = load_corpus_checked(met_corpus);
            const ImpactResult impact = read_impact_csv(met_impact, corpus);
            const auto profiles = forensics::build_profiles(corpus, impact);
            forensics::write_profiles_csv(met_out, profiles);
            if (!met_dist.empty()) {
                const auto blacklist = forensics::build_blacklist(corpus.editors);
                const auto ties = forensics::tag_repeat_authors(corpus, profiles, blacklist);
                std::vector<forensics::EditorTieStats> tie_stats;
                for (const auto& t : ties)
                    tie_stats.push_back({t.editor_id, t.repeat_author_count,
                                         t.repeat_article_fraction});
                forensics::write_distribution_csvs(
                    met_dist, forensics::distribution_tables(profiles, tie_stats, met_min_n));
            }
        } else if (*ties_cmd) {
            const Corpus corpus = load_corpus_checked(tie_corpus);
            const auto st = run_stages(corpus, tie_blk_override);
            if (!tie_blk_out.empty()) forensics::save_blacklist(st.blacklist, tie_blk_out);
            forensics::write_ties_csv(tie_out, corpus, st.profiles, st.ties);
        } else if (*regress_cmd) {
            const Corpus corpus = load_corpus_checked(reg_corpus);
            const auto st = run_stages(corpus, "");
            forensics::ModelInputs inputs{&corpus, &st.profiles, &st.ties, reg_min_n};
            forensics::ModelVariant v = forensics::ModelVariant::IBase;
            if (reg_model == "I-rtau") v = forensics::ModelVariant::IRTau;
            else if (reg_model == "I-top10") v = forensics::ModelVariant::ITop10;
            else if (reg_model == "II") v = forensics::ModelVariant::II;
            else if (reg_model == "II-fxr") v = forensics::ModelVariant::IIFxR;
            forensics::write_fit_json(reg_out, forensics::fit_model(inputs, v), reg_model);
        } else if (*renum_cmd) {
            const Corpus corpus = load_corpus_checked(ren_corpus);
            const auto st = run_stages(corpus, "");
            const auto records =
                forensics::conditional_rates(st.profiles, st.ties, ren_min_n, ren_alpha);
            forensics::write_renumeration_csv(ren_out, records);
            if (!ren_tests.empty())
                forensics::write_tests_json(ren_tests, forensics::two_sample_tests(records));
            if (!ren_scatter.empty()) forensics::write_fig3c_csv(ren_scatter, records);
        } else if (*synth_cmd) {
            std::ifstream in(syn_config);
            if (!in) throw forensics::CorpusError("cannot open config: " + syn_config);
            std::stringstream buf;
            buf << in.rdbuf();
            const auto config = forensics::synth_config_from_json(buf.str());
            const auto out = forensics::generate(config);
            forensics::write_synth_output(out, syn_out_dir);
            std::cout << "generated " << out.corpus.articles.size() << " articles for "
                      << out.corpus.editors.size() << " editors\n";
        } else if (*report_cmd) {
            const auto config = forensics::PipelineConfig::from_file(rep_config);
            const auto stats = forensics::run_pipeline(config);
            std::cout << "report written to " << config.out_dir << " ("
                      << stats.total_articles << " articles)\n";
        } else if (*summary_cmd) {
            forensics::PipelineConfig config;
            config.min_n_metrics = sum_min_n;
            Corpus corpus;
            if (!sum_corpus.empty()) {
                corpus = load_corpus_checked(sum_corpus);
            } else if (!sum_articles.empty() && !sum_editors.empty()) {
                auto result = forensics::ingest(sum_articles, sum_editors);
                report_diagnostics(result.diagnostics);
                corpus = std::move(result.corpus);
            } else {
                std::cerr << "summary needs --corpus or --articles/--editors\n";
                return kExitUsage;
            }
            if (corpus.articles.empty())
                throw forensics::CorpusError("corpus has no articles");
            const auto art = forensics::compute_artifacts(std::move(corpus), config);
            const auto s = forensics::summarize(art, sum_min_n);
            std::cout << "total_articles " << s.total_articles << '\n'
                      << "total_editors " << s.total_editors << '\n'
                      << "gini " << forensics::format_fixed(s.gini, 4) << '\n'
                      << "top10_articles " << s.top10_articles << '\n'
                      << "top10_share " << forensics::format_fixed(s.top10_share, 4) << '\n'
                      << "mean_duration_days " << forensics::format_fixed(s.mean_duration_days, 2)
                      << '\n'
                      << "mean_editor_duration_days "
                      << forensics::format_fixed(s.mean_editor_duration_days, 2) << '\n'
                      << "fraction_f_zero " << forensics::format_fixed(s.fraction_f_zero, 4)
                      << '\n'
                      << "fraction_r_one " << forensics::format_fixed(s.fraction_r_one, 4)
                      << '\n';
        }
    } catch (const forensics::PipelineError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitStage;
    } catch (const forensics::EconometricsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEstimation;
    } catch (const forensics::CorpusError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgument;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
