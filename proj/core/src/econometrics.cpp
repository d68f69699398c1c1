#include "freight/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freight/csv.hpp"
#include "freight/errors.hpp"

namespace freight {

void ZoneCovariates::validate() const {
    const double props[] = {prop_black, prop_amerind, prop_haw, prop_asian, prop_hisp, prop_twomore};
    double sum = 0.0;
    for (double p : props) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError("covariate proportion out of [0,1] for zone " + zone_id);
        }
        sum += p;
    }
    if (sum > 1.0 + 1e-9) {
        throw ConfigError("covariate proportions sum above 1 for zone " + zone_id);
    }
    if (total_pop < 0.0) throw ConfigError("negative population for zone " + zone_id);
}

std::vector<ZoneCovariates> load_covariates(const std::string& path) {
    const CsvTable table = read_csv(path);
    const std::size_t c_id = table.column("zone_id");
    const std::size_t c_area = table.column("area");
    const std::size_t c_black = table.column("prop_black");
    const std::size_t c_amerind = table.column("prop_amerind");
    const std::size_t c_haw = table.column("prop_haw");
    const std::size_t c_asian = table.column("prop_asian");
    const std::size_t c_hisp = table.column("prop_hisp");
    const std::size_t c_twomore = table.column("prop_twomore");
    const std::size_t c_pop = table.column("total_pop");
    const std::size_t c_inc = table.column("med_income");

    std::vector<ZoneCovariates> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        ZoneCovariates cov;
        cov.zone_id = row.at(c_id);
        auto need = [&](std::size_t col) {
            const auto v = parse_double(row.at(col));
            if (!v) throw ConfigError("malformed covariate row for zone " + cov.zone_id);
            return *v;
        };
        cov.area = need(c_area);
        cov.prop_black = need(c_black);
        cov.prop_amerind = need(c_amerind);
        cov.prop_haw = need(c_haw);
        cov.prop_asian = need(c_asian);
        cov.prop_hisp = need(c_hisp);
        cov.prop_twomore = need(c_twomore);
        cov.total_pop = need(c_pop);
        cov.med_income = need(c_inc);
        cov.validate();
        out.push_back(std::move(cov));
    }
    return out;
}

namespace {

bool covariate_row_usable(const ZoneCovariates& cov) {
    return cov.med_income > 0.0 && cov.total_pop > 0.0 && cov.area > 0.0;
}

void fill_design_row(Eigen::MatrixXd& X, Eigen::Index row, const ZoneCovariates& cov) {
    X(row, 0) = 1.0;
    X(row, 1) = std::log(cov.area);
    X(row, 2) = cov.prop_black;
    X(row, 3) = cov.prop_amerind;
    X(row, 4) = cov.prop_haw;
    X(row, 5) = cov.prop_asian;
    X(row, 6) = cov.prop_twomore;
    X(row, 7) = cov.prop_hisp;
    X(row, 8) = std::log(cov.med_income);
    X(row, 9) = std::log(cov.total_pop);
}

}  // namespace

Design build_design(const std::vector<ZoneCovariates>& covariates, const EmissionsLedger& ledger,
                    Pollutant pollutant) {
    std::map<std::string, const ZoneCovariates*> by_zone;
    for (const auto& cov : covariates) by_zone[cov.zone_id] = &cov;

    struct Row {
        const ZoneCovariates* cov;
        double log_emissions;
    };
    std::vector<Row> rows;
    Design design;
    for (const auto& [zone_id, tons] : ledger.entries()) {
        const double emissions = tons[pollutant];
        if (emissions == 0.0) {
            ++design.dropped_zero_emission;
            continue;
        }
        const auto it = by_zone.find(zone_id);
        if (it == by_zone.end()) {
            throw DataError("no covariates for emitting zone: " + zone_id);
        }
        if (!covariate_row_usable(*it->second)) {
            ++design.dropped_bad_covariate;
            continue;
        }
        rows.push_back(Row{it->second, std::log(emissions)});
    }

    design.column_names = design_column_names();
    design.X.resize(static_cast<Eigen::Index>(rows.size()), 10);
    design.y.resize(static_cast<Eigen::Index>(rows.size()));
    design.row_zone_ids.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        fill_design_row(design.X, static_cast<Eigen::Index>(i), *rows[i].cov);
        design.y(static_cast<Eigen::Index>(i)) = rows[i].log_emissions;
        design.row_zone_ids.push_back(rows[i].cov->zone_id);
    }
    return design;
}

Design build_logit_design(const std::vector<ZoneCovariates>& covariates,
                          const std::map<std::string, bool>& importer_flags) {
    struct Row {
        const ZoneCovariates* cov;
        double flag;
    };
    std::vector<Row> rows;
    Design design;

    std::map<std::string, const ZoneCovariates*> by_zone;
    for (const auto& cov : covariates) by_zone[cov.zone_id] = &cov;

    for (const auto& [zone_id, cov] : by_zone) {
        const auto flag_it = importer_flags.find(zone_id);
        if (flag_it == importer_flags.end()) continue;
        if (!covariate_row_usable(*cov)) {
            ++design.dropped_bad_covariate;
            continue;
        }
        rows.push_back(Row{cov, flag_it->second ? 1.0 : 0.0});
    }

    design.column_names = design_column_names();
    design.X.resize(static_cast<Eigen::Index>(rows.size()), 10);
    design.y.resize(static_cast<Eigen::Index>(rows.size()));
    design.row_zone_ids.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        fill_design_row(design.X, static_cast<Eigen::Index>(i), *rows[i].cov);
        design.y(static_cast<Eigen::Index>(i)) = rows[i].flag;
        design.row_zone_ids.push_back(rows[i].cov->zone_id);
    }
    return design;
}

namespace {

std::vector<std::string> default_names(std::vector<std::string> names, Eigen::Index k) {
    if (names.empty()) {
        names.reserve(static_cast<std::size_t>(k));
        for (Eigen::Index j = 0; j < k; ++j) names.push_back("x" + std::to_string(j));
    }
    if (static_cast<Eigen::Index>(names.size()) != k) {
        throw NumericError("column name count does not match design width");
    }
    return names;
}

[[noreturn]] void throw_singular(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                                 const std::vector<std::string>& names) {
    const Eigen::Index k = static_cast<Eigen::Index>(names.size());
    const auto perm = qr.colsPermutation().indices();
    std::string collinear;
    for (Eigen::Index j = qr.rank(); j < k; ++j) {
        if (!collinear.empty()) collinear += ", ";
        collinear += names[static_cast<std::size_t>(perm(j))];
    }
    throw NumericError("singular design matrix; collinear columns: " + collinear);
}

}  // namespace

FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::vector<std::string> column_names) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (y.size() != n) throw NumericError("design and response lengths differ");
    if (n <= k) throw NumericError("need more observations than predictors");

    FitResult fit;
    fit.kind = FitKind::Ols;
    fit.column_names = default_names(std::move(column_names), k);
    fit.n = static_cast<std::size_t>(n);
    fit.k = static_cast<std::size_t>(k);
    fit.dof = fit.n - fit.k;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) throw_singular(qr, fit.column_names);

    fit.coefficients = qr.solve(y);
    fit.fitted = X * fit.coefficients;
    fit.residuals = y - fit.fitted;

    // (X'X)^-1 from the pivoted QR factors: X P = Q R.
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv = R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd xtx_inv = Rinv * Rinv.transpose();
    xtx_inv = qr.colsPermutation() * xtx_inv * qr.colsPermutation().transpose();

    const double ssr = fit.residuals.squaredNorm();
    const double sigma2 = ssr / static_cast<double>(fit.dof);
    fit.residual_std_error = std::sqrt(sigma2);
    fit.standard_errors.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.standard_errors(j) = std::sqrt(std::max(sigma2 * xtx_inv(j, j), 0.0));
    }

    fit.leverage.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        fit.leverage(i) = X.row(i) * xtx_inv * X.row(i).transpose();
    }

    const double y_mean = y.mean();
    const double sst = (y.array() - y_mean).matrix().squaredNorm();
    if (sst > 0.0) {
        fit.r2 = 1.0 - ssr / sst;
    } else {
        fit.r2 = ssr == 0.0 ? 1.0 : 0.0;
    }
    const double n_d = static_cast<double>(fit.n);
    const double k_d = static_cast<double>(fit.k);
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * (n_d - 1.0) / (n_d - k_d);
    if (k > 1) {
        const double denom = (1.0 - fit.r2) / (n_d - k_d);
        fit.f_statistic = denom > 0.0 ? (fit.r2 / (k_d - 1.0)) / denom
                                      : std::numeric_limits<double>::infinity();
    }
    return fit;
}

FitResult logit_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    std::vector<std::string> column_names) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (y.size() != n) throw NumericError("design and response lengths differ");
    if (n <= k) throw NumericError("need more observations than predictors");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (y(i) != 0.0 && y(i) != 1.0) throw NumericError("logit response must be 0/1");
    }

    FitResult fit;
    fit.kind = FitKind::Logit;
    fit.column_names = default_names(std::move(column_names), k);
    fit.n = static_cast<std::size_t>(n);
    fit.k = static_cast<std::size_t>(k);
    fit.dof = fit.n - fit.k;

    constexpr double kTol = 1e-8;
    constexpr std::size_t kMaxIter = 100;
    constexpr double kProbFloor = 1e-12;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd prob(n), weights(n);

    for (std::size_t iter = 1; iter <= kMaxIter; ++iter) {
        const Eigen::VectorXd eta = X * beta;
        for (Eigen::Index i = 0; i < n; ++i) {
            prob(i) = 1.0 / (1.0 + std::exp(-eta(i)));
            weights(i) = std::max(prob(i) * (1.0 - prob(i)), 0.0);
        }

        // Complete separation: every point predicted at its own label
        // while the linear predictor keeps growing.
        bool separated = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double err = std::abs(y(i) - prob(i));
            if (err > 1e-6) {
                separated = false;
                break;
            }
        }
        if (separated && iter > 1) {
            throw NumericError("complete separation detected in logit fit");
        }

        const Eigen::MatrixXd XtW = X.transpose() * weights.asDiagonal();
        const Eigen::MatrixXd hessian = XtW * X;
        const Eigen::VectorXd score = X.transpose() * (y - prob);

        Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
        if (ldlt.info() != Eigen::Success) {
            throw NumericError("logit weights collapsed; information matrix not factorizable");
        }
        const Eigen::VectorXd delta = ldlt.solve(score);
        if (!delta.allFinite()) {
            throw NumericError("logit update diverged");
        }
        beta += delta;
        fit.iterations = iter;
        if (delta.cwiseAbs().maxCoeff() < kTol) break;
        if (iter == kMaxIter) {
            throw NumericError("logit failed to converge in 100 iterations");
        }
    }

    const Eigen::VectorXd eta = X * beta;
    double loglik = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        prob(i) = 1.0 / (1.0 + std::exp(-eta(i)));
        const double p_clamped = std::clamp(prob(i), kProbFloor, 1.0 - kProbFloor);
        loglik += y(i) * std::log(p_clamped) + (1.0 - y(i)) * std::log(1.0 - p_clamped);
        weights(i) = std::max(prob(i) * (1.0 - prob(i)), 0.0);
    }

    fit.coefficients = beta;
    fit.fitted = prob;
    fit.residuals = y - prob;
    fit.log_likelihood = loglik;
    fit.aic = 2.0 * static_cast<double>(fit.k) - 2.0 * loglik;

    const Eigen::MatrixXd info = X.transpose() * weights.asDiagonal() * X;
    const Eigen::MatrixXd cov = info.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    fit.standard_errors.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.standard_errors(j) = std::sqrt(std::max(cov(j, j), 0.0));
    }
    return fit;
}

double effect_percent(double beta) {
    return 100.0 * (std::exp(beta) - 1.0);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw NumericError("normal quantile needs p in (0,1)");

    // Acklam's rational approximation, then one Halley refinement step
    // against erfc for near-double precision.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double coefficient_p_value(double beta, double standard_error) {
    if (standard_error <= 0.0) return beta == 0.0 ? 1.0 : 0.0;
    const double z = std::abs(beta / standard_error);
    return std::erfc(z / std::sqrt(2.0));
}

std::string significance_stars(double p_value) {
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.10) return "*";
    return "";
}

Diagnostics diagnostics(const FitResult& fit) {
    Diagnostics diag;
    const Eigen::Index n = fit.residuals.size();
    if (n == 0) return diag;

    std::vector<double> sorted(fit.residuals.data(), fit.residuals.data() + n);
    std::sort(sorted.begin(), sorted.end());
    diag.qq_points.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        diag.qq_points.emplace_back(normal_quantile(p), sorted[static_cast<std::size_t>(i)]);
    }

    const double spread = sorted.back() - sorted.front();
    const double sigma = fit.kind == FitKind::Ols
                             ? fit.residual_std_error
                             : std::sqrt(fit.residuals.squaredNorm() /
                                         std::max<double>(1.0, static_cast<double>(fit.dof)));
    // No residual variation, or residuals at rounding-noise level of an
    // exact fit: studentization is meaningless, report zeros and flag.
    const double fit_scale = fit.fitted.size() > 0 ? fit.fitted.cwiseAbs().maxCoeff() : 0.0;
    const double noise_floor = 1e-10 * std::max(1.0, fit_scale);
    diag.degenerate =
        spread == 0.0 || sigma == 0.0 || fit.residuals.cwiseAbs().maxCoeff() <= noise_floor;

    diag.studentized_residuals.resize(static_cast<std::size_t>(n), 0.0);
    if (!diag.degenerate) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double h = fit.leverage.size() == n ? fit.leverage(i) : 0.0;
            const double denom = sigma * std::sqrt(std::max(1.0 - h, 0.0));
            diag.studentized_residuals[static_cast<std::size_t>(i)] =
                denom > 0.0 ? fit.residuals(i) / denom : 0.0;
        }
    }
    return diag;
}

}  // namespace freight
