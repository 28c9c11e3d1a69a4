#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forensics/corpus.hpp"
#include "forensics/econometrics.hpp"
#include "forensics/impact.hpp"
#include "forensics/metrics.hpp"
#include "forensics/renumeration.hpp"
#include "forensics/social.hpp"
#include "forensics/taxonomy.hpp"

namespace forensics {

class PipelineError : public std::runtime_error {
  public:
    PipelineError(const std::string& stage, const std::string& message)
        : std::runtime_error("stage '" + stage + "': " + message), stage_(stage) {}
    const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

// Flat key=value configuration (documented keys; '#' comments allowed).
struct PipelineConfig {
    std::string articles_path;
    std::string editors_path;
    std::string out_dir = "out";
    std::int64_t min_n_metrics = 10;
    std::int64_t min_n_renum = 20;
    double trend_alpha = 0.1;
    std::string blacklist_override;  // optional path

    static PipelineConfig from_file(const std::string& path);
};

// In-memory artifact bundle for one full pipeline run.
struct PipelineArtifacts {
    Corpus corpus;
    std::vector<IngestDiagnostic> diagnostics;
    KeywordWeightTable weight_table;
    std::vector<Classification> classifications;
    ImpactResult impact;
    std::vector<EditorProfile> profiles;
    SurnameBlacklist blacklist;
    std::vector<TieAnnotation> ties;
    std::vector<RenumerationRecord> renumeration;
};

// Runs ingest -> classify -> normalize -> metrics -> ties -> renumerate on
// an already-loaded corpus. Regression fits are separate (fit_model).
PipelineArtifacts compute_artifacts(Corpus corpus, const PipelineConfig& config);

struct SummaryStats {
    std::int64_t total_articles = 0;
    std::int64_t total_editors = 0;
    double gini = 0;
    std::int64_t top10_articles = 0;
    double top10_share = 0;
    double mean_duration_days = 0;         // article level
    double mean_editor_duration_days = 0;  // editor level (N_E >= min)
    double fraction_f_zero = 0;
    double fraction_r_one = 0;
};

SummaryStats summarize(const PipelineArtifacts& artifacts, std::int64_t min_n_metrics);

// Full disk pipeline with content-hash staleness detection: when every
// input hash matches the manifest and all outputs exist, the run is
// skipped. Writes the complete artifact set under config.out_dir.
SummaryStats run_pipeline(const PipelineConfig& config);

// Fixed-format numeric output so golden files are platform-stable.
std::string format_fixed(double v, int decimals = 6);

// FNV-1a 64-bit content hash, hex-encoded.
std::string file_content_hash(const std::string& path);

// Stage output writers (also used by the CLI subcommands).
void write_classes_csv(const std::string& path, const Corpus& corpus,
                       const std::vector<Classification>& classes);
void write_impact_csv(const std::string& path, const Corpus& corpus, const ImpactResult& impact);
void write_profiles_csv(const std::string& path, const std::vector<EditorProfile>& profiles);
void write_distribution_csvs(const std::string& dir, const std::vector<HistogramTable>& tables);
void write_ties_csv(const std::string& path, const Corpus& corpus,
                    const std::vector<EditorProfile>& profiles,
                    const std::vector<TieAnnotation>& ties);
void write_fit_json(const std::string& path, const FitResult& fit, const std::string& label);
void write_renumeration_csv(const std::string& path,
                            const std::vector<RenumerationRecord>& records);
void write_tests_json(const std::string& path, const TwoSampleReport& report);
void write_fig3c_csv(const std::string& path, const std::vector<RenumerationRecord>& records);
void write_summary_json(const std::string& path, const SummaryStats& stats);

}  // namespace forensics
