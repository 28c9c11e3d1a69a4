#include "forensics/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "forensics/stats.hpp"

namespace forensics {

int FitResult::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw EconometricsError("no coefficient named '" + name + "'");
}

FitResult fit_fixed_effects(const Dataset& data) {
    const Eigen::Index n = data.y.size();
    const Eigen::Index k_all = data.X.cols();
    if (data.X.rows() != n) throw EconometricsError("X/y row mismatch");
    if (static_cast<Eigen::Index>(data.cluster.size()) != n)
        throw EconometricsError("cluster vector size mismatch");
    if (static_cast<Eigen::Index>(data.names.size()) != k_all)
        throw EconometricsError("column name count mismatch");
    const int G = data.n_clusters;
    if (G < 2) throw EconometricsError("need >= 2 clusters for fixed-effects estimation");

    for (Eigen::Index j = 0; j < k_all; ++j)
        if (!data.X.col(j).allFinite())
            throw EconometricsError("non-finite value in regressor '" + data.names[j] + "'");
    if (!data.y.allFinite()) throw EconometricsError("non-finite value in dependent variable");

    // Raw moments before demeaning (for standardized coefficients).
    Eigen::VectorXd col_means = data.X.colwise().mean();
    Eigen::VectorXd col_sds(k_all);
    for (Eigen::Index j = 0; j < k_all; ++j) {
        const double v = (data.X.col(j).array() - col_means[j]).square().sum() /
                         static_cast<double>(n - 1);
        col_sds[j] = std::sqrt(v);
    }
    const double y_mean = data.y.mean();
    const double y_sd =
        std::sqrt((data.y.array() - y_mean).square().sum() / static_cast<double>(n - 1));

    // Within-transformation: demean per cluster.
    std::vector<Eigen::Index> cluster_size(G, 0);
    for (Eigen::Index i = 0; i < n; ++i) ++cluster_size[data.cluster[i]];
    for (int g = 0; g < G; ++g)
        if (cluster_size[g] == 0) throw EconometricsError("empty cluster in dataset");

    Eigen::MatrixXd Xd = data.X;
    Eigen::VectorXd yd = data.y;
    {
        Eigen::MatrixXd xsum = Eigen::MatrixXd::Zero(G, k_all);
        Eigen::VectorXd ysum = Eigen::VectorXd::Zero(G);
        for (Eigen::Index i = 0; i < n; ++i) {
            xsum.row(data.cluster[i]) += data.X.row(i);
            ysum[data.cluster[i]] += data.y[i];
        }
        for (int g = 0; g < G; ++g) {
            xsum.row(g) /= static_cast<double>(cluster_size[g]);
            ysum[g] /= static_cast<double>(cluster_size[g]);
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            Xd.row(i) -= xsum.row(data.cluster[i]);
            yd[i] -= ysum[data.cluster[i]];
        }
    }

    // Rank detection on the demeaned design via column-pivoted QR.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivqr(Xd);
    pivqr.setThreshold(1e-10);
    const Eigen::Index rank = pivqr.rank();
    std::vector<Eigen::Index> kept, dropped_idx;
    {
        const auto& perm = pivqr.colsPermutation().indices();
        std::vector<bool> keep(k_all, false);
        for (Eigen::Index r = 0; r < rank; ++r) keep[perm[r]] = true;
        for (Eigen::Index j = 0; j < k_all; ++j)
            (keep[j] ? kept : dropped_idx).push_back(j);
    }
    if (kept.empty()) throw EconometricsError("all regressors collinear with fixed effects");

    FitResult fit;
    for (Eigen::Index j : kept) fit.names.push_back(data.names[j]);
    for (Eigen::Index j : dropped_idx) fit.dropped.push_back(data.names[j]);

    const Eigen::Index k = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd Xk(n, k);
    Eigen::VectorXd means_k(k), sds_k(k);
    for (Eigen::Index c = 0; c < k; ++c) {
        Xk.col(c) = Xd.col(kept[c]);
        means_k[c] = col_means[kept[c]];
        sds_k[c] = col_sds[kept[c]];
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Xk);
    fit.beta = qr.solve(yd);
    fit.residuals = yd - Xk * fit.beta;

    // Sandwich covariance clustered on the fixed-effect key.
    Eigen::MatrixXd xtx = Xk.transpose() * Xk;
    Eigen::MatrixXd bread = xtx.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
    {
        Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(G, k);
        for (Eigen::Index i = 0; i < n; ++i)
            scores.row(data.cluster[i]) += fit.residuals[i] * Xk.row(i);
        meat = scores.transpose() * scores;
    }
    const double Nd = static_cast<double>(n);
    const double Gd = static_cast<double>(G);
    const double K = static_cast<double>(k) + Gd;  // absorbed intercepts count
    if (Nd - K <= 0) throw EconometricsError("insufficient degrees of freedom");
    const double c_small = Gd / (Gd - 1.0) * (Nd - 1.0) / (Nd - K);
    fit.vcov = c_small * bread * meat * bread;
    fit.vcov = ((fit.vcov + fit.vcov.transpose()) / 2.0).eval();

    fit.se.resize(k);
    fit.p_values.resize(k);
    const double df_t = Gd - 1.0;
    for (Eigen::Index c = 0; c < k; ++c) {
        fit.se[c] = std::sqrt(std::max(0.0, fit.vcov(c, c)));
        fit.p_values[c] = fit.se[c] > 0
                              ? student_t_two_sided_p(fit.beta[c] / fit.se[c], df_t)
                              : (fit.beta[c] == 0 ? 1.0 : 0.0);
    }

    fit.col_means = means_k;
    fit.col_sds = sds_k;
    fit.y_sd = y_sd;
    fit.std_beta = standardized_coefficients(fit, sds_k, y_sd);

    const double sst = yd.squaredNorm();
    const double ssr = fit.residuals.squaredNorm();
    fit.r_squared = sst > 0 ? 1.0 - ssr / sst : 0.0;
    fit.adj_r_squared = sst > 0 ? 1.0 - (ssr / (Nd - K)) / (sst / (Nd - Gd)) : 0.0;

    // Cluster-robust Wald test that all kept slopes are zero.
    Eigen::VectorXd vb = fit.vcov.ldlt().solve(fit.beta);
    const double wald = fit.beta.dot(vb);
    fit.f_statistic = wald / static_cast<double>(k);
    fit.f_p_value = f_upper_p(fit.f_statistic, static_cast<double>(k), df_t);

    fit.n_obs = static_cast<std::size_t>(n);
    fit.df_model = static_cast<int>(k);
    fit.n_clusters = G;
    return fit;
}

Eigen::VectorXd standardized_coefficients(const FitResult& fit, const Eigen::VectorXd& x_sds,
                                          double y_sd) {
    if (x_sds.size() != fit.beta.size())
        throw EconometricsError("sd vector size mismatch");
    Eigen::VectorXd out(fit.beta.size());
    for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
        if (x_sds[j] <= 0 || y_sd <= 0) {
            out[j] = std::numeric_limits<double>::quiet_NaN();  // flagged undefined
        } else {
            out[j] = fit.beta[j] * x_sds[j] / y_sd;
        }
    }
    return out;
}

std::pair<double, double> linear_combination(const FitResult& fit, const Eigen::VectorXd& a) {
    if (a.size() != fit.beta.size()) throw EconometricsError("gradient size mismatch");
    const double est = a.dot(fit.beta);
    const double var = a.dot(fit.vcov * a);
    return {est, std::sqrt(std::max(0.0, var))};
}

std::vector<MarginalEffectPoint> marginal_effects(const FitResult& fit,
                                                  const std::string& focal,
                                                  const std::vector<std::string>& focal_products,
                                                  const std::vector<double>& grid,
                                                  double z_crit) {
    // Prediction gradient: all covariates at their raw means, the focal
    // variable at the grid value, and each focal interaction column equal
    // to (grid value) * (fixed level of the partner terms, taken as 1).
    const int fi = fit.index_of(focal);
    std::vector<int> prod_idx;
    prod_idx.reserve(focal_products.size());
    for (const auto& p : focal_products) prod_idx.push_back(fit.index_of(p));

    std::vector<MarginalEffectPoint> out;
    out.reserve(grid.size());
    for (double v : grid) {
        Eigen::VectorXd a = fit.col_means;
        a[fi] = v;
        for (int j : prod_idx) a[j] = v;
        auto [est, se] = linear_combination(fit, a);
        out.push_back({v, est, se, est - z_crit * se, est + z_crit * se});
    }
    return out;
}

namespace {

struct Row {
    double z = 0, ln_k = 0, ln_delta = 0, f = 0, ln_tau = 0;
    double r = 0, t10 = 0;
    int year = 0, sa = 0;
    std::string doi;
    std::string editor_id;
};

}  // namespace

Dataset build_model_dataset(const ModelInputs& inputs, ModelVariant variant) {
    if (!inputs.corpus || !inputs.profiles || !inputs.ties)
        throw EconometricsError("model inputs incomplete");
    const bool model1 = variant == ModelVariant::IBase || variant == ModelVariant::IRTau ||
                        variant == ModelVariant::ITop10;

    std::unordered_map<std::string, const TieAnnotation*> tie_map;
    for (const auto& t : *inputs.ties) tie_map[t.editor_id] = &t;

    std::vector<Row> rows;
    for (const auto& p : *inputs.profiles) {
        if (p.article_count < inputs.min_editor_articles) continue;
        auto it = tie_map.find(p.editor_id);
        if (it == tie_map.end()) throw EconometricsError("missing tie annotation for editor");
        const auto& flags = it->second->article_repeat_flags;
        for (std::size_t ai = 0; ai < p.articles.size(); ++ai) {
            const auto& a = p.articles[ai];
            if (!a.z_defined) continue;  // z needed in both models
            if (model1 && a.year > 2014) continue;
            Row r;
            r.z = a.z;
            const auto& art = inputs.corpus->articles[a.article_index];
            r.ln_k = std::log(static_cast<double>(art.authors.size()));
            r.ln_delta = std::log1p(static_cast<double>(a.duration_days));
            r.f = a.editor_cite_rate;
            r.ln_tau = std::log(a.service_age_years + kTauLogOffset);
            r.r = flags[ai] ? 1.0 : 0.0;
            r.t10 = p.top10 ? 1.0 : 0.0;
            r.year = a.pooled_year;
            r.sa = a.refined_sa;
            r.doi = art.doi;
            r.editor_id = p.editor_id;
            rows.push_back(std::move(r));
        }
    }
    if (rows.empty()) throw EconometricsError("estimation sample is empty");

    std::set<int> years, sas;
    for (const auto& r : rows) {
        years.insert(r.year);
        sas.insert(r.sa);
    }
    const int base_year = *years.begin();  // earliest year omitted
    std::vector<int> year_dummies(years.begin(), years.end());
    year_dummies.erase(year_dummies.begin());
    std::vector<int> sa_dummies;
    for (int s : sas)
        if (s != 1) sa_dummies.push_back(s);  // s = 1 omitted (or absent)
    (void)base_year;

    std::vector<std::string> names;
    if (!model1) names.push_back("z");
    names.push_back("ln_k");
    if (model1) names.push_back("ln_delta");
    if (!model1) names.push_back("f");
    names.push_back("ln_tau");
    names.push_back("R");
    if (variant == ModelVariant::IRTau || variant == ModelVariant::ITop10)
        names.push_back("R_x_ln_tau");
    if (variant == ModelVariant::ITop10) {
        names.push_back("T10_x_ln_tau");
        names.push_back("T10_x_R_x_ln_tau");
    }
    if (variant == ModelVariant::IIFxR) names.push_back("f_x_R");
    const std::size_t k_terms = names.size();
    for (int y : year_dummies) names.push_back("year_" + std::to_string(y));
    for (int s : sa_dummies) names.push_back("sa_" + std::to_string(s));

    Dataset d;
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    d.y.resize(n);
    d.X = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(names.size()));
    d.names = names;
    d.cluster.resize(rows.size());
    d.row_ids.reserve(rows.size());

    std::unordered_map<std::string, int> cluster_ids;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Row& r = rows[i];
        d.y[i] = model1 ? r.z : r.ln_delta;  // model II response is ln(1+Delta)
        std::size_t c = 0;
        if (!model1) d.X(i, c++) = r.z;
        d.X(i, c++) = r.ln_k;
        if (model1) d.X(i, c++) = r.ln_delta;
        if (!model1) d.X(i, c++) = r.f;
        d.X(i, c++) = r.ln_tau;
        d.X(i, c++) = r.r;
        if (variant == ModelVariant::IRTau || variant == ModelVariant::ITop10)
            d.X(i, c++) = r.r * r.ln_tau;
        if (variant == ModelVariant::ITop10) {
            d.X(i, c++) = r.t10 * r.ln_tau;
            d.X(i, c++) = r.t10 * r.r * r.ln_tau;
        }
        if (variant == ModelVariant::IIFxR) d.X(i, c++) = r.f * r.r;
        for (std::size_t j = 0; j < year_dummies.size(); ++j)
            d.X(i, c + j) = r.year == year_dummies[j] ? 1.0 : 0.0;
        c += year_dummies.size();
        for (std::size_t j = 0; j < sa_dummies.size(); ++j)
            d.X(i, c + j) = r.sa == sa_dummies[j] ? 1.0 : 0.0;

        auto [cit, inserted] =
            cluster_ids.emplace(r.editor_id, static_cast<int>(cluster_ids.size()));
        d.cluster[i] = cit->second;
        d.row_ids.push_back(r.doi);
    }
    d.n_clusters = static_cast<int>(cluster_ids.size());
    (void)k_terms;
    return d;
}

FitResult fit_model(const ModelInputs& inputs, ModelVariant variant) {
    return fit_fixed_effects(build_model_dataset(inputs, variant));
}

}  // namespace forensics
