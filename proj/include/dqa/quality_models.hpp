#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqa/errors.hpp"
#include "dqa/metrics.hpp"

namespace dqa {

/// Named linear-model coefficients: intercept plus per-term weights.
struct CoefficientSet {
    std::string model_name;
    double intercept = 0.0;
    std::vector<std::pair<std::string, double>> terms;

    std::optional<double> weight(const std::string& term_name) const;
};

// Built-in sets: "paper-modifiability", "paper-flexibility", "paper-testability".
const CoefficientSet& builtin_modifiability();
const CoefficientSet& builtin_flexibility();
const CoefficientSet& builtin_testability();

CoefficientSet load_coefficients(const std::string& path_or_builtin);
CoefficientSet parse_coefficients(const std::string& text, const std::string& origin = "<string>");
std::string serialize_coefficients(const CoefficientSet& c);

struct FactorScores {
    double modifiability = 0.0;
    double flexibility = 0.0;
};

double modifiability(const MetricVector& mv, const CoefficientSet& c = builtin_modifiability());
double flexibility(const MetricVector& mv, const CoefficientSet& c = builtin_flexibility());
double testability(const FactorScores& f, const CoefficientSet& c = builtin_testability());

struct TestabilityReport {
    std::string project;
    MetricVector metrics;
    FactorScores factors;
    double testability = 0.0;
    std::optional<double> rank;  // assigned by rank_projects; average ranks on ties
};

TestabilityReport evaluate_project(const std::string& project, const MetricVector& mv,
                                   const CoefficientSet& modif = builtin_modifiability(),
                                   const CoefficientSet& flex = builtin_flexibility(),
                                   const CoefficientSet& test = builtin_testability());

// Ascending ranks by testability value (rank 1 = lowest) unless descending is set.
// Input order is preserved; ties receive average ranks. Throws EmptyInputError.
std::vector<TestabilityReport> rank_projects(std::vector<TestabilityReport> reports,
                                             bool descending = false);

// CSV: project,enm,inm,cpm,com,modifiability,flexibility,testability,rank (4 decimals).
std::string reports_csv(const std::vector<TestabilityReport>& reports);

}  // namespace dqa
