#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "forensics/corpus.hpp"
#include "forensics/impact.hpp"
#include "forensics/metrics.hpp"
#include "forensics/social.hpp"

namespace forensics {

// Offset added to tau (years) before taking logs; tau = 0 occurs for
// every editor's first article.
inline constexpr double kTauLogOffset = 1.0 / kDaysPerYear;

class EconometricsError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A fitting problem: response, regressors (dummies included as columns),
// and the cluster index of each observation. The fixed effect absorbed by
// the within-transformation is the cluster itself.
struct Dataset {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<std::string> names;  // one per column of X
    std::vector<int> cluster;        // 0..n_clusters-1 per row
    int n_clusters = 0;
    std::vector<std::string> row_ids;  // optional (doi), for diagnostics
};

struct FitResult {
    std::vector<std::string> names;   // kept columns, in order
    std::vector<std::string> dropped; // collinear columns removed
    Eigen::VectorXd beta;
    Eigen::VectorXd se;               // cluster-robust
    Eigen::VectorXd p_values;         // t with G-1 df
    Eigen::VectorXd std_beta;         // beta * sd(x)/sd(y), raw sds
    Eigen::MatrixXd vcov;             // cluster-robust sandwich
    Eigen::VectorXd residuals;        // on the demeaned system
    Eigen::VectorXd col_means;        // raw means on the estimation sample
    Eigen::VectorXd col_sds;          // raw sample sds
    double y_sd = 0;
    double r_squared = 0;
    double adj_r_squared = 0;
    double f_statistic = 0;
    double f_p_value = 1;
    std::size_t n_obs = 0;
    int df_model = 0;
    int n_clusters = 0;

    int index_of(const std::string& name) const;
    double coef(const std::string& name) const { return beta[index_of(name)]; }
    double stderr_of(const std::string& name) const { return se[index_of(name)]; }
};

// Within-transformation fixed-effects least squares with cluster-robust
// (sandwich) covariance. Small-sample correction
// G/(G-1) * (N-1)/(N-K) with K = kept regressors + absorbed intercepts.
// Collinear columns (relative pivot tolerance 1e-10) are dropped.
FitResult fit_fixed_effects(const Dataset& data);

// beta_j * sd(x_j) / sd(y) using raw standard deviations on the
// estimation sample (already stored in FitResult::std_beta; this variant
// recomputes from caller-supplied sds).
Eigen::VectorXd standardized_coefficients(const FitResult& fit, const Eigen::VectorXd& x_sds,
                                          double y_sd);

// Point estimate and delta-method SE of a'beta.
std::pair<double, double> linear_combination(const FitResult& fit, const Eigen::VectorXd& a);

struct MarginalEffectPoint {
    double moderator = 0;
    double estimate = 0;
    double se = 0;
    double ci_low = 0;
    double ci_high = 0;
};

// Linear predictions over a moderator grid for one interaction branch:
// the gradient is evaluated at the raw covariate means, with the focal
// variable set per grid point and the branch indicator fixed.
std::vector<MarginalEffectPoint> marginal_effects(const FitResult& fit,
                                                  const std::string& focal,
                                                  const std::vector<std::string>& focal_products,
                                                  const std::vector<double>& grid,
                                                  double z_crit = 1.959963984540054);

enum class ModelVariant {
    IBase,    // ln k, ln(1+Delta), ln tau, R
    IRTau,    // + R x ln tau
    ITop10,   // + R x ln tau, T10 x ln tau, T10 x R x ln tau
    II,       // z, ln k, f, ln tau, R
    IIFxR,    // + f x R
};

struct ModelInputs {
    const Corpus* corpus = nullptr;
    const std::vector<EditorProfile>* profiles = nullptr;
    const std::vector<TieAnnotation>* ties = nullptr;
    std::int64_t min_editor_articles = 10;
};

// Builds the estimation sample: editors with N_E >= min, z defined, and
// (model I only) years <= 2014. Year and subject-area dummies omit the
// earliest year and s = 1.
Dataset build_model_dataset(const ModelInputs& inputs, ModelVariant variant);

FitResult fit_model(const ModelInputs& inputs, ModelVariant variant);

}  // namespace forensics
