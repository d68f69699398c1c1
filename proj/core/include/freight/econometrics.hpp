#pragma once

/// @file econometrics.hpp
/// @brief Log-linear OLS and logistic regression for the demographic
/// disparity analysis, with classical standard errors and the normality
/// diagnostics (Q-Q pairs, internally studentized residuals).
///
/// Design matrices use a fixed column order:
///   [intercept, log(area), prop_black, prop_amerind, prop_haw,
///    prop_asian, prop_twomore, prop_hisp, log(med_income), log(total_pop)]
/// Proportions enter un-logged; area, income, and population are logged.

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "freight/inventory.hpp"
#include "freight/pollutant.hpp"

namespace freight {

struct ZoneCovariates {
    std::string zone_id;
    double area = 0.0;  // any consistent areal unit
    double prop_black = 0.0;
    double prop_amerind = 0.0;
    double prop_haw = 0.0;
    double prop_asian = 0.0;
    double prop_hisp = 0.0;
    double prop_twomore = 0.0;
    double total_pop = 0.0;
    double med_income = 0.0;  // $/household

    /// Proportions in [0,1] with sum <= 1 (groups are mutually
    /// exclusive); throws ConfigError otherwise.
    void validate() const;
};

/// Covariates CSV: zone_id plus the nine fields above.
std::vector<ZoneCovariates> load_covariates(const std::string& path);

inline const std::vector<std::string>& design_column_names() {
    static const std::vector<std::string> names = {
        "intercept",    "log_area",     "prop_black",     "prop_amerind", "prop_haw",
        "prop_asian",   "prop_twomore", "prop_hisp",      "log_med_income",
        "log_total_pop"};
    return names;
}

struct Design {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<std::string> row_zone_ids;
    std::vector<std::string> column_names;
    std::size_t dropped_zero_emission = 0;  // zones with E = 0 (log undefined)
    std::size_t dropped_bad_covariate = 0;  // med_income <= 0 or total_pop = 0
};

/// y = log(E[pollutant]) per zone.  Zones with zero emissions and zones
/// with unusable covariates are dropped and counted.  A ledger zone with
/// positive emissions but no covariate record is a fatal data error.
Design build_design(const std::vector<ZoneCovariates>& covariates, const EmissionsLedger& ledger,
                    Pollutant pollutant);

/// y = 0/1 importer flag per zone; same X construction and drop rules,
/// zones without a flag are skipped.
Design build_logit_design(const std::vector<ZoneCovariates>& covariates,
                          const std::map<std::string, bool>& importer_flags);

enum class FitKind { Ols, Logit };

struct FitResult {
    FitKind kind = FitKind::Ols;
    std::vector<std::string> column_names;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd fitted;     // Xb for OLS, probabilities for logit
    Eigen::VectorXd residuals;  // y - fitted
    Eigen::VectorXd leverage;   // hat-matrix diagonal (OLS only)
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t dof = 0;  // n - k

    // OLS statistics
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double f_statistic = 0.0;
    double residual_std_error = 0.0;

    // Logit statistics
    double log_likelihood = 0.0;
    double aic = 0.0;
    std::size_t iterations = 0;
};

/// Least squares via column-pivoted Householder QR; classical
/// homoskedastic standard errors from sigma^2 (X'X)^-1.  A rank-deficient
/// design throws NumericError naming the collinear columns.
FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::vector<std::string> column_names = {});

/// Maximum likelihood via iteratively reweighted least squares;
/// converges when max |delta beta| < 1e-8, capped at 100 iterations.
/// Complete separation (every observation classified perfectly while the
/// coefficients diverge) throws NumericError.
FitResult logit_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    std::vector<std::string> column_names = {});

/// Percent change in Y for a one-unit change in a non-log predictor:
/// 100 x (e^beta - 1).  For log-log pairs the elasticity is beta itself.
double effect_percent(double beta);

/// Standard normal quantile function (inverse CDF).
double normal_quantile(double p);

/// Upper-tail-symmetric normal CDF used for coefficient p-values.
double normal_cdf(double z);

/// Two-sided p-value under the normal approximation, and the
/// significance stars used in the regression tables
/// (*** p<0.01, ** p<0.05, * p<0.10).
double coefficient_p_value(double beta, double standard_error);
std::string significance_stars(double p_value);

struct Diagnostics {
    /// (theoretical quantile, sample quantile) pairs at plotting
    /// positions (i - 0.5)/n over the sorted residuals.
    std::vector<std::pair<double, double>> qq_points;
    /// Internally studentized residuals r_i / (sigma * sqrt(1 - h_ii)).
    std::vector<double> studentized_residuals;
    /// Set when the residuals carry no variation (perfect or constant
    /// fit); studentized values are reported as zero in that case.
    bool degenerate = false;
};

Diagnostics diagnostics(const FitResult& fit);

}  // namespace freight
