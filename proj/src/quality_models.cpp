#include "dqa/quality_models.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dqa/format.hpp"
#include "dqa/stats.hpp"

namespace dqa {

using nlohmann::json;

std::optional<double> CoefficientSet::weight(const std::string& term_name) const {
    for (const auto& [name, w] : terms)
        if (name == term_name) return w;
    return std::nullopt;
}

const CoefficientSet& builtin_modifiability() {
    static const CoefficientSet c{
        "paper-modifiability",
        1.107,
        {{"Encapsulation", -0.102}, {"Inheritance", 1.810}, {"Coupling", 0.850}}};
    return c;
}

const CoefficientSet& builtin_flexibility() {
    static const CoefficientSet c{"paper-flexibility",
                                  1.051,
                                  {{"Encapsulation", 2.320},
                                   {"Coupling", 0.160},
                                   {"Cohesion", -2.283},
                                   {"Inheritance", 11.572}}};
    return c;
}

const CoefficientSet& builtin_testability() {
    static const CoefficientSet c{
        "paper-testability", -98.666, {{"Modifiability", 49.210}, {"Flexibility", -2.983}}};
    return c;
}

CoefficientSet parse_coefficients(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedDocumentError(origin + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("model") || !doc.contains("intercept") ||
        !doc.contains("terms"))
        throw MalformedDocumentError(origin +
                                     ": coefficient document needs model, intercept, terms");
    CoefficientSet c;
    c.model_name = doc["model"].get<std::string>();
    c.intercept = doc["intercept"].get<double>();
    for (const auto& t : doc["terms"]) {
        if (!t.contains("name") || !t.contains("weight"))
            throw MalformedDocumentError(origin + ": each term needs name and weight");
        std::string name = t["name"].get<std::string>();
        if (c.weight(name))
            throw MalformedDocumentError(origin + ": duplicate term '" + name + "'");
        c.terms.emplace_back(std::move(name), t["weight"].get<double>());
    }
    return c;
}

CoefficientSet load_coefficients(const std::string& path_or_builtin) {
    if (path_or_builtin == "paper-modifiability") return builtin_modifiability();
    if (path_or_builtin == "paper-flexibility") return builtin_flexibility();
    if (path_or_builtin == "paper-testability") return builtin_testability();
    if (path_or_builtin.rfind("paper-", 0) == 0)
        throw UnknownBuiltinError("unknown built-in coefficient set '" + path_or_builtin + "'");

    std::ifstream in(path_or_builtin, std::ios::binary);
    if (!in) throw FileNotFoundError("cannot open coefficient file: " + path_or_builtin);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_coefficients(buf.str(), path_or_builtin);
}

std::string serialize_coefficients(const CoefficientSet& c) {
    json doc;
    doc["model"] = c.model_name;
    doc["intercept"] = c.intercept;
    doc["terms"] = json::array();
    for (const auto& [name, w] : c.terms) doc["terms"].push_back({{"name", name}, {"weight", w}});
    return doc.dump(2) + "\n";
}

namespace {

double metric_by_name(const MetricVector& mv, const std::string& name) {
    if (name == "Encapsulation") return mv.enm;
    if (name == "Inheritance") return mv.inm;
    if (name == "Coupling") return mv.cpm;
    if (name == "Cohesion") return mv.com;
    throw DomainError("term '" + name + "' names no design-construct metric");
}

void require_terms(const CoefficientSet& c, std::initializer_list<const char*> names) {
    for (const char* n : names)
        if (!c.weight(n))
            throw MissingTermError("coefficient set '" + c.model_name + "' lacks term '" +
                                   std::string(n) + "'");
}

}  // namespace

double modifiability(const MetricVector& mv, const CoefficientSet& c) {
    require_terms(c, {"Encapsulation", "Inheritance", "Coupling"});
    double y = c.intercept;
    for (const auto& [name, w] : c.terms) y += w * metric_by_name(mv, name);
    return y;
}

double flexibility(const MetricVector& mv, const CoefficientSet& c) {
    require_terms(c, {"Encapsulation", "Coupling", "Cohesion", "Inheritance"});
    double y = c.intercept;
    for (const auto& [name, w] : c.terms) y += w * metric_by_name(mv, name);
    return y;
}

double testability(const FactorScores& f, const CoefficientSet& c) {
    require_terms(c, {"Modifiability", "Flexibility"});
    double y = c.intercept;
    for (const auto& [name, w] : c.terms) {
        if (name == "Modifiability")
            y += w * f.modifiability;
        else if (name == "Flexibility")
            y += w * f.flexibility;
        else
            throw DomainError("term '" + name + "' names no testability factor");
    }
    return y;
}

TestabilityReport evaluate_project(const std::string& project, const MetricVector& mv,
                                   const CoefficientSet& modif, const CoefficientSet& flex,
                                   const CoefficientSet& test) {
    TestabilityReport r;
    r.project = project;
    r.metrics = mv;
    r.factors.modifiability = modifiability(mv, modif);
    r.factors.flexibility = flexibility(mv, flex);
    r.testability = testability(r.factors, test);
    if (!std::isfinite(r.testability))
        throw DomainError("non-finite testability score for project '" + project + "'");
    return r;
}

std::vector<TestabilityReport> rank_projects(std::vector<TestabilityReport> reports,
                                             bool descending) {
    if (reports.empty()) throw EmptyInputError("rank_projects over an empty list");
    std::vector<double> values;
    values.reserve(reports.size());
    for (const auto& r : reports)
        values.push_back(descending ? -r.testability : r.testability);
    std::vector<double> ranks = rank_values(values);
    for (size_t i = 0; i < reports.size(); ++i) reports[i].rank = ranks[i];
    return reports;
}

std::string reports_csv(const std::vector<TestabilityReport>& reports) {
    std::ostringstream out;
    out << "project,enm,inm,cpm,com,modifiability,flexibility,testability,rank\n";
    for (const auto& r : reports) {
        out << r.project << ',' << fixed4(r.metrics.enm) << ',' << fixed4(r.metrics.inm) << ','
            << fixed4(r.metrics.cpm) << ',' << fixed4(r.metrics.com) << ','
            << fixed4(r.factors.modifiability) << ',' << fixed4(r.factors.flexibility) << ','
            << fixed4(r.testability) << ',';
        if (r.rank)
            out << fixed4(*r.rank);
        out << '\n';
    }
    return out.str();
}

}  // namespace dqa
