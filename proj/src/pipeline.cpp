#include "forensics/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace forensics {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_fixed(double v, int decimals) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    // avoid the platform-dependent negative zero
    std::string s = buf;
    bool all_zero = true;
    for (char c : s)
        if (c >= '1' && c <= '9') { all_zero = false; break; }
    if (all_zero && !s.empty() && s[0] == '-') s.erase(s.begin());
    return s;
}

std::string file_content_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot open file for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return out;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open config file: " + path);
    PipelineConfig c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CorpusError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "articles") c.articles_path = value;
        else if (key == "editors") c.editors_path = value;
        else if (key == "out_dir") c.out_dir = value;
        else if (key == "min_n_metrics") c.min_n_metrics = std::stoll(value);
        else if (key == "min_n_renum") c.min_n_renum = std::stoll(value);
        else if (key == "trend_alpha") c.trend_alpha = std::stod(value);
        else if (key == "blacklist_override") c.blacklist_override = value;
        else throw CorpusError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return c;
}

PipelineArtifacts compute_artifacts(Corpus corpus, const PipelineConfig& config) {
    PipelineArtifacts art;
    art.corpus = std::move(corpus);
    try {
        art.weight_table = build_weight_table(art.corpus);
        art.classifications = classify_all(art.corpus, art.weight_table);
    } catch (const std::exception& e) {
        throw PipelineError("classify", e.what());
    }
    try {
        art.impact = normalize(art.corpus, art.classifications);
    } catch (const std::exception& e) {
        throw PipelineError("normalize", e.what());
    }
    try {
        art.profiles = build_profiles(art.corpus, art.impact);
    } catch (const std::exception& e) {
        throw PipelineError("metrics", e.what());
    }
    try {
        art.blacklist = config.blacklist_override.empty()
                            ? build_blacklist(art.corpus.editors)
                            : load_blacklist(config.blacklist_override);
        art.ties = tag_repeat_authors(art.corpus, art.profiles, art.blacklist);
    } catch (const std::exception& e) {
        throw PipelineError("ties", e.what());
    }
    try {
        art.renumeration =
            conditional_rates(art.profiles, art.ties, config.min_n_renum, config.trend_alpha);
    } catch (const std::exception& e) {
        throw PipelineError("renumerate", e.what());
    }
    return art;
}

SummaryStats summarize(const PipelineArtifacts& art, std::int64_t min_n_metrics) {
    SummaryStats s;
    s.total_articles = static_cast<std::int64_t>(art.corpus.articles.size());
    s.total_editors = static_cast<std::int64_t>(art.corpus.editors.size());

    std::vector<double> counts;
    for (const auto& p : art.profiles) counts.push_back(static_cast<double>(p.article_count));
    if (counts.size() >= 2) s.gini = lorenz_gini(counts).gini;

    for (const auto& r : rank_table(art.profiles, 10)) s.top10_articles += r.article_count;
    if (s.total_articles > 0)
        s.top10_share = static_cast<double>(s.top10_articles) /
                        static_cast<double>(s.total_articles);

    std::int64_t f_zero = 0, r_one = 0, total = 0;
    double dur_sum = 0;
    for (const auto& p : art.profiles) {
        for (const auto& a : p.articles) {
            ++total;
            dur_sum += static_cast<double>(a.duration_days);
            if (a.editor_citing_refs == 0) ++f_zero;
        }
    }
    for (const auto& t : art.ties) r_one += static_cast<std::int64_t>(t.flagged_articles.size());
    if (total > 0) {
        s.mean_duration_days = dur_sum / static_cast<double>(total);
        s.fraction_f_zero = static_cast<double>(f_zero) / static_cast<double>(total);
        s.fraction_r_one = static_cast<double>(r_one) / static_cast<double>(total);
    }
    std::vector<double> editor_means;
    for (const auto& p : art.profiles)
        if (p.article_count >= min_n_metrics) editor_means.push_back(p.mean_duration);
    if (!editor_means.empty()) s.mean_editor_duration_days = mean(editor_means);
    return s;
}

namespace {

void require_stream(const std::ofstream& out, const std::string& path) {
    if (!out) throw CorpusError("cannot write output file: " + path);
}

}  // namespace

void write_classes_csv(const std::string& path, const Corpus& corpus,
                       const std::vector<Classification>& classes) {
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "doi,principal_class,refined_sa\n";
    for (std::size_t i = 0; i < corpus.articles.size(); ++i) {
        out << corpus.articles[i].doi << ',' << classes[i].principal_class << ','
            << classes[i].refined_sa << '\n';
    }
}

void write_impact_csv(const std::string& path, const Corpus& corpus, const ImpactResult& impact) {
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "doi,s,t,z,excluded_flag\n";
    for (std::size_t i = 0; i < corpus.articles.size(); ++i) {
        const auto& sc = impact.scores[i];
        out << corpus.articles[i].doi << ',' << sc.s << ',' << sc.t << ','
            << (sc.defined ? format_fixed(sc.z) : "nan") << ','
            << (sc.model1_excluded ? 1 : 0) << '\n';
    }
}

void write_profiles_csv(const std::string& path, const std::vector<EditorProfile>& profiles) {
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "editor_id,n_articles,service_days,days_per_article,mean_duration,duration_cov,"
           "editor_citing_refs,total_refs,editor_cite_rate,top10\n";
    for (const auto& p : profiles) {
        out << p.editor_id << ',' << p.article_count << ',' << p.service_days << ','
            << format_fixed(p.days_per_article) << ',' << format_fixed(p.mean_duration) << ','
            << (p.duration_cov ? format_fixed(*p.duration_cov) : "nan") << ','
            << p.editor_citing_refs << ',' << p.total_refs << ','
            << format_fixed(p.editor_cite_rate) << ',' << (p.top10 ? 1 : 0) << '\n';
    }
}

void write_distribution_csvs(const std::string& dir, const std::vector<HistogramTable>& tables) {
    fs::create_directories(dir);
    // Panel correspondence in the activity/renumeration figure set.
    static const std::map<std::string, std::string> kPanel = {
        {"N_E", "fig1B"},      {"Delta_A", "fig1D"}, {"d_E", "fig1E"},
        {"Delta_E", "fig1F"},  {"f_A", "fig1G"},     {"cov_E", "figS2A"},
        {"K2_E", "figS2B"},    {"rho_E", "figS2C"},
    };
    for (const auto& t : tables) {
        const std::string path = (fs::path(dir) / ("dist_" + t.name + ".csv")).string();
        std::ofstream out(path, std::ios::binary);
        require_stream(out, path);
        auto it = kPanel.find(t.name);
        out << "# figure: " << (it != kPanel.end() ? it->second : t.name) << '\n';
        out << "# mean=" << format_fixed(t.mean) << " n=" << t.n << '\n';
        out << "bin_low,bin_high,count\n";
        for (std::size_t b = 0; b < t.counts.size(); ++b) {
            out << format_fixed(t.bin_edges[b]) << ',' << format_fixed(t.bin_edges[b + 1]) << ','
                << t.counts[b] << '\n';
        }
    }
}

void write_ties_csv(const std::string& path, const Corpus& corpus,
                    const std::vector<EditorProfile>& profiles,
                    const std::vector<TieAnnotation>& ties) {
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "doi,editor_id,R\n";
    std::vector<char> flags(corpus.articles.size(), 0);
    for (const auto& t : ties)
        for (std::size_t idx : t.flagged_articles) flags[idx] = 1;
    for (std::size_t i = 0; i < corpus.articles.size(); ++i) {
        out << corpus.articles[i].doi << ',' << corpus.articles[i].editor_id << ','
            << static_cast<int>(flags[i]) << '\n';
    }
    (void)profiles;
}

void write_fit_json(const std::string& path, const FitResult& fit, const std::string& label) {
    json terms = json::array();
    for (std::size_t i = 0; i < fit.names.size(); ++i) {
        terms.push_back(json{{"term", fit.names[i]},
                             {"coef", format_fixed(fit.beta[static_cast<Eigen::Index>(i)])},
                             {"se", format_fixed(fit.se[static_cast<Eigen::Index>(i)])},
                             {"p", format_fixed(fit.p_values[static_cast<Eigen::Index>(i)])},
                             {"std_coef", format_fixed(fit.std_beta[static_cast<Eigen::Index>(i)])}});
    }
    json root{{"model", label},
              {"terms", std::move(terms)},
              {"dropped", fit.dropped},
              {"n", fit.n_obs},
              {"adj_r2", format_fixed(fit.adj_r_squared)},
              {"f", format_fixed(fit.f_statistic, 3)},
              {"f_p", format_fixed(fit.f_p_value)},
              {"df_model", fit.df_model},
              {"df_clusters", fit.n_clusters}};
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << root.dump(2) << '\n';
}

void write_renumeration_csv(const std::string& path,
                            const std::vector<RenumerationRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "editor_id,n_articles,refs_r0,refs_r1,editor_cites_r0,editor_cites_r1,total_refs,"
           "f0,f1,delta_c,trend_slope,trend_p,trend_class\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_fixed(*v) : "nan"; };
    for (const auto& r : records) {
        const char* cls = r.trend == TrendClass::Positive   ? "positive"
                          : r.trend == TrendClass::Negative ? "negative"
                                                            : "none";
        out << r.editor_id << ',' << r.article_count << ',' << r.refs_r0 << ',' << r.refs_r1
            << ',' << r.editor_cites_r0 << ',' << r.editor_cites_r1 << ',' << r.total_refs << ','
            << opt(r.rate_r0) << ',' << opt(r.rate_r1) << ',' << opt(r.delta_c) << ','
            << opt(r.trend_slope) << ',' << format_fixed(r.trend_p) << ',' << cls << '\n';
    }
}

void write_tests_json(const std::string& path, const TwoSampleReport& rep) {
    json root{{"welch_t", {{"statistic", format_fixed(rep.welch_t.statistic, 4)},
                           {"p", format_fixed(rep.welch_t.p_value)}}},
              {"mann_whitney", {{"statistic", format_fixed(rep.mann_whitney.statistic, 1)},
                                {"p", format_fixed(rep.mann_whitney.p_value)}}},
              {"kolmogorov_smirnov", {{"statistic", format_fixed(rep.kolmogorov_smirnov.statistic, 4)},
                                      {"p", format_fixed(rep.kolmogorov_smirnov.p_value)}}},
              {"n0", rep.n0},
              {"n1", rep.n1},
              {"excluded", rep.excluded},
              {"mean_f0", format_fixed(rep.mean_r0)},
              {"mean_f1", format_fixed(rep.mean_r1)}};
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << root.dump(2) << '\n';
}

void write_fig3c_csv(const std::string& path, const std::vector<RenumerationRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "# figure: fig3C\n";
    out << "editor_id,N_E,C_E,trend_class\n";
    for (const auto& r : records) {
        const char* cls = r.trend == TrendClass::Positive   ? "positive"
                          : r.trend == TrendClass::Negative ? "negative"
                                                            : "none";
        out << r.editor_id << ',' << r.article_count << ',' << r.editor_cites << ',' << cls
            << '\n';
    }
}

void write_summary_json(const std::string& path, const SummaryStats& s) {
    json root{{"total_articles", s.total_articles},
              {"total_editors", s.total_editors},
              {"gini", format_fixed(s.gini)},
              {"top10_articles", s.top10_articles},
              {"top10_share", format_fixed(s.top10_share)},
              {"mean_duration_days", format_fixed(s.mean_duration_days, 2)},
              {"mean_editor_duration_days", format_fixed(s.mean_editor_duration_days, 2)},
              {"fraction_f_zero", format_fixed(s.fraction_f_zero)},
              {"fraction_r_one", format_fixed(s.fraction_r_one)}};
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << root.dump(2) << '\n';
}

namespace {

SummaryStats summary_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open summary file: " + path);
    json j = json::parse(in);
    SummaryStats s;
    s.total_articles = j.at("total_articles").get<std::int64_t>();
    s.total_editors = j.at("total_editors").get<std::int64_t>();
    s.gini = std::stod(j.at("gini").get<std::string>());
    s.top10_articles = j.at("top10_articles").get<std::int64_t>();
    s.top10_share = std::stod(j.at("top10_share").get<std::string>());
    s.mean_duration_days = std::stod(j.at("mean_duration_days").get<std::string>());
    s.mean_editor_duration_days =
        std::stod(j.at("mean_editor_duration_days").get<std::string>());
    s.fraction_f_zero = std::stod(j.at("fraction_f_zero").get<std::string>());
    s.fraction_r_one = std::stod(j.at("fraction_r_one").get<std::string>());
    return s;
}

}  // namespace

SummaryStats run_pipeline(const PipelineConfig& config) {
    if (config.articles_path.empty() || config.editors_path.empty())
        throw PipelineError("ingest", "articles/editors paths not configured");
    fs::create_directories(config.out_dir);

    const std::vector<std::string> outputs = {
        "classes.csv", "impact.csv", "profiles.csv", "ties.csv", "blacklist.txt",
        "renum.csv", "tests.json", "fig3c.csv", "summary.json",
        "fit_model_I.json", "fit_model_I_rtau.json", "fit_model_I_top10.json",
        "fit_model_II.json", "fit_model_II_fxr.json"};

    // Staleness check: content hashes of all inputs.
    json hashes;
    hashes["articles"] = file_content_hash(config.articles_path);
    hashes["editors"] = file_content_hash(config.editors_path);
    if (!config.blacklist_override.empty())
        hashes["blacklist_override"] = file_content_hash(config.blacklist_override);
    const fs::path manifest_path = fs::path(config.out_dir) / "manifest.json";
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        json prev = json::parse(in, nullptr, false);
        if (!prev.is_discarded() && prev.value("inputs", json()) == hashes) {
            bool complete = true;
            for (const auto& o : outputs)
                if (!fs::exists(fs::path(config.out_dir) / o)) complete = false;
            if (complete)
                return summary_from_json((fs::path(config.out_dir) / "summary.json").string());
        }
    }

    IngestResult ing;
    try {
        ing = ingest(config.articles_path, config.editors_path);
    } catch (const std::exception& e) {
        throw PipelineError("ingest", e.what());
    }
    if (ing.corpus.articles.empty()) throw PipelineError("ingest", "corpus has no valid articles");

    PipelineArtifacts art = compute_artifacts(std::move(ing.corpus), config);
    art.diagnostics = std::move(ing.diagnostics);

    const fs::path out_dir(config.out_dir);
    write_classes_csv((out_dir / "classes.csv").string(), art.corpus, art.classifications);
    write_impact_csv((out_dir / "impact.csv").string(), art.corpus, art.impact);
    write_profiles_csv((out_dir / "profiles.csv").string(), art.profiles);
    write_distribution_csvs((out_dir / "dists").string(),
                            [&] {
                                std::vector<EditorTieStats> tie_stats;
                                for (const auto& t : art.ties)
                                    tie_stats.push_back({t.editor_id, t.repeat_author_count,
                                                         t.repeat_article_fraction});
                                return distribution_tables(art.profiles, tie_stats,
                                                           config.min_n_metrics);
                            }());
    save_blacklist(art.blacklist, (out_dir / "blacklist.txt").string());
    write_ties_csv((out_dir / "ties.csv").string(), art.corpus, art.profiles, art.ties);
    write_renumeration_csv((out_dir / "renum.csv").string(), art.renumeration);
    try {
        write_tests_json((out_dir / "tests.json").string(),
                         two_sample_tests(art.renumeration));
    } catch (const std::exception&) {
        // small corpora may not support the two-sample tests; skip the file
        std::ofstream out((out_dir / "tests.json").string(), std::ios::binary);
        out << "{}\n";
    }
    write_fig3c_csv((out_dir / "fig3c.csv").string(), art.renumeration);

    ModelInputs inputs{&art.corpus, &art.profiles, &art.ties, config.min_n_metrics};
    struct ModelJob { ModelVariant v; const char* file; const char* label; };
    const ModelJob jobs[] = {
        {ModelVariant::IBase, "fit_model_I.json", "I"},
        {ModelVariant::IRTau, "fit_model_I_rtau.json", "I-rtau"},
        {ModelVariant::ITop10, "fit_model_I_top10.json", "I-top10"},
        {ModelVariant::II, "fit_model_II.json", "II"},
        {ModelVariant::IIFxR, "fit_model_II_fxr.json", "II-fxr"},
    };
    for (const auto& job : jobs) {
        try {
            write_fit_json((out_dir / job.file).string(), fit_model(inputs, job.v), job.label);
        } catch (const std::exception&) {
            std::ofstream out((out_dir / job.file).string(), std::ios::binary);
            out << json{{"model", job.label}, {"error", "sample unsuitable for estimation"}}.dump(2)
                << '\n';
        }
    }

    const SummaryStats stats = summarize(art, config.min_n_metrics);
    write_summary_json((out_dir / "summary.json").string(), stats);

    std::ofstream mf(manifest_path, std::ios::binary);
    mf << json{{"inputs", hashes}}.dump(2) << '\n';
    return stats;
}

}  // namespace forensics
