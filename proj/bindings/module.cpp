#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "forensics/corpus.hpp"
#include "forensics/econometrics.hpp"
#include "forensics/impact.hpp"
#include "forensics/metrics.hpp"
#include "forensics/pipeline.hpp"
#include "forensics/renumeration.hpp"
#include "forensics/social.hpp"
#include "forensics/synth.hpp"
#include "forensics/taxonomy.hpp"

namespace py = pybind11;
using namespace forensics;

namespace {

Corpus ingest_corpus(const std::string& articles, const std::string& editors) {
    auto result = ingest(articles, editors);
    if (result.corpus.articles.empty())
        throw std::runtime_error("no valid articles in input");
    return std::move(result.corpus);
}

py::dict summary_dict(const Corpus& corpus, std::int64_t min_n) {
    PipelineConfig config;
    config.min_n_metrics = min_n;
    const auto art = compute_artifacts(corpus, config);
    const auto s = summarize(art, min_n);
    py::dict d;
    d["total_articles"] = s.total_articles;
    d["total_editors"] = s.total_editors;
    d["gini"] = s.gini;
    d["top10_articles"] = s.top10_articles;
    d["top10_share"] = s.top10_share;
    d["mean_duration_days"] = s.mean_duration_days;
    d["mean_editor_duration_days"] = s.mean_editor_duration_days;
    d["fraction_f_zero"] = s.fraction_f_zero;
    d["fraction_r_one"] = s.fraction_r_one;
    return d;
}

ModelVariant variant_from_name(const std::string& name) {
    if (name == "I") return ModelVariant::IBase;
    if (name == "I-rtau") return ModelVariant::IRTau;
    if (name == "I-top10") return ModelVariant::ITop10;
    if (name == "II") return ModelVariant::II;
    if (name == "II-fxr") return ModelVariant::IIFxR;
    throw std::invalid_argument("unknown model variant: " + name);
}

py::dict fit_dict(const Corpus& corpus, const std::string& model, std::int64_t min_n) {
    PipelineConfig config;
    config.min_n_metrics = min_n;
    const auto art = compute_artifacts(corpus, config);
    ModelInputs inputs{&art.corpus, &art.profiles, &art.ties, min_n};
    const FitResult fit = fit_model(inputs, variant_from_name(model));
    py::dict d;
    py::dict coefs, ses, ps;
    for (std::size_t i = 0; i < fit.names.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        coefs[py::str(fit.names[i])] = fit.beta[idx];
        ses[py::str(fit.names[i])] = fit.se[idx];
        ps[py::str(fit.names[i])] = fit.p_values[idx];
    }
    d["coef"] = coefs;
    d["se"] = ses;
    d["p"] = ps;
    d["dropped"] = fit.dropped;
    d["n"] = fit.n_obs;
    d["n_clusters"] = fit.n_clusters;
    d["adj_r2"] = fit.adj_r_squared;
    d["f"] = fit.f_statistic;
    d["f_p"] = fit.f_p_value;
    return d;
}

py::dict z_scores_dict(const Corpus& corpus) {
    const auto table = build_weight_table(corpus);
    const auto classes = classify_all(corpus, table);
    const auto impact = normalize(corpus, classes);
    py::dict d;
    for (std::size_t i = 0; i < corpus.articles.size(); ++i) {
        const auto& sc = impact.scores[i];
        py::dict row;
        row["s"] = sc.s;
        row["t"] = sc.t;
        row["z"] = sc.defined ? py::object(py::float_(sc.z)) : py::object(py::none());
        row["excluded"] = sc.model1_excluded;
        d[py::str(corpus.articles[i].doi)] = row;
    }
    return d;
}

py::dict generate_synth(const std::string& config_json, const std::string& out_dir) {
    const auto config = synth_config_from_json(config_json);
    const auto out = generate(config);
    if (!out_dir.empty()) write_synth_output(out, out_dir);
    py::dict d;
    d["n_articles"] = out.truth.total_articles;
    d["n_editors"] = static_cast<std::int64_t>(out.truth.editors.size());
    d["total_references"] = out.truth.total_references;
    d["total_citations"] = out.truth.total_citations;
    return d;
}

double gini_of(std::vector<double> values) { return lorenz_gini(std::move(values)).gini; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "editorial-forensics core bindings";

    py::class_<Corpus>(m, "Corpus")
        .def_property_readonly("n_articles",
                               [](const Corpus& c) { return c.articles.size(); })
        .def_property_readonly("n_editors",
                               [](const Corpus& c) { return c.editors.size(); });

    m.def("ingest", &ingest_corpus, py::arg("articles_path"), py::arg("editors_path"),
          "Parse an articles/editors JSONL pair into an in-memory corpus.");
    m.def("load_corpus", &load_corpus, py::arg("path"));
    m.def("save_corpus", &save_corpus, py::arg("corpus"), py::arg("path"));
    m.def("summary", &summary_dict, py::arg("corpus"), py::arg("min_n") = 10,
          "Headline statistics for a corpus.");
    m.def("fit_model", &fit_dict, py::arg("corpus"), py::arg("model"), py::arg("min_n") = 10,
          "Fixed-effects fit; model is one of I, I-rtau, I-top10, II, II-fxr.");
    m.def("z_scores", &z_scores_dict, py::arg("corpus"),
          "Per-article detrended citation z-scores keyed by doi.");
    m.def("generate_synth", &generate_synth, py::arg("config_json"), py::arg("out_dir") = "",
          "Generate a synthetic corpus; writes JSONL when out_dir is set.");
    m.def("gini", &gini_of, py::arg("values"), "Population Gini coefficient.");
    m.def("normalize_surname", &normalize_surname, py::arg("raw"));
}
