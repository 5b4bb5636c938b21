#pragma once

#include <span>
#include <string>
#include <vector>

#include "dqa/errors.hpp"

namespace dqa {

/// Rectangular numeric dataset with named columns; no missing cells.
struct Dataset {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;

    size_t n() const { return rows.size(); }
    size_t column_index(const std::string& name) const;  // throws DomainError if absent
    std::vector<double> column(const std::string& name) const;
};

Dataset load_csv(const std::string& path);
Dataset parse_csv(const std::string& text, const std::string& origin = "<string>");

// Compensated (Neumaier) summation; exactness matters at property-test scale.
double compensated_sum(std::span<const double> values);
double mean(std::span<const double> values);

struct Descriptives {
    double min, max, mean;
};
Descriptives descriptive_stats(std::span<const double> values);  // EmptyInputError

double pearson(std::span<const double> x, std::span<const double> y);

// Rank 1 = smallest; ties get average ranks, so Σranks = n(n+1)/2.
std::vector<double> rank_values(std::span<const double> values);
// Ties broken by input position (first occurrence ranks lower); always integral ranks.
std::vector<double> rank_values_ordinal(std::span<const double> values);

struct SpearmanResult {
    double r_s = 0.0;
    double sum_d_squared = 0.0;
    size_t n = 0;
    bool used_shortcut = false;  // d² formula only valid when both rankings are tie-free
};

SpearmanResult spearman(std::span<const double> rank_a, std::span<const double> rank_b);

// Critical value of r_s for a two-variable rank correlation, n in [5, 30],
// alpha in {0.05, 0.01}. Throws OutOfTableRangeError.
double spearman_critical(size_t n, double alpha);

struct CoefficientRow {
    std::string name;  // "(Constant)" for the intercept
    double b = 0.0;
    double std_error = 0.0;
    double beta_standardized = 0.0;  // 0 for the intercept row
    double t = 0.0;
    double sig = 0.0;
};

struct RegressionFit {
    std::string response;
    std::vector<std::string> predictors;
    std::vector<CoefficientRow> coefficients;  // intercept first, then predictors in order
};

struct RegressionSummary {
    double r = 0.0;
    double r_square = 0.0;
    double adjusted_r_square = 0.0;
    double std_error_of_estimate = 0.0;
    size_t n = 0;
    size_t k = 0;
};

struct OlsResult {
    RegressionFit fit;
    RegressionSummary summary;
    std::vector<double> residuals;
};

OlsResult ols_fit(const Dataset& d, const std::string& response,
                  const std::vector<std::string>& predictors);

// r = √r², adjusted R² = 1 − (1 − r²)(n − 1)/(n − k − 1).
std::pair<double, double> regression_summary_from(double r_square, size_t n, size_t k);

// Two-tailed p-value P(|T_df| >= |t|) via the regularized incomplete beta function.
double t_cdf_two_tailed(double t, size_t df);

// c with t_cdf_two_tailed(c, df) = alpha, found by bisection (±1e-6).
double t_critical(size_t df, double alpha);

enum class DfConvention { NMinus2, N };
std::string to_string(DfConvention c);

struct TTestResult {
    double r = 0.0;
    size_t n = 0;
    double t_statistic = 0.0;
    size_t df = 0;  // the df used for the critical-value lookup
    double alpha = 0.0;
    double critical_value = 0.0;
    bool reject_null = false;
    DfConvention convention = DfConvention::NMinus2;
    bool degenerate = false;  // |r| = 1: infinite statistic, reported as reject
};

// T = r√(N−2)/√(1−r²); the N−2 inside the radical never changes, only the
// df indexing the critical value follows the convention.
TTestResult correlation_t_test(double r, size_t n, double alpha,
                               DfConvention convention = DfConvention::NMinus2);

}  // namespace dqa
