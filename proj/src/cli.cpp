#include "dqa/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqa/design_model.hpp"
#include "dqa/format.hpp"
#include "dqa/metrics.hpp"
#include "dqa/quality_models.hpp"
#include "dqa/replication.hpp"
#include "dqa/stats.hpp"

namespace dqa {

namespace {

using nlohmann::json;

enum class Format { Text, Csv, Json };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw DomainError("unknown output format '" + s + "'");
}

struct MeasureOptions {
    std::vector<std::string> model_files;
    std::string coeff_modifiability = "paper-modifiability";
    std::string coeff_flexibility = "paper-flexibility";
    std::string coeff_testability = "paper-testability";
    std::string aggregate = "mean";
    std::string format = "text";
    bool rank_desc = false;
    bool per_class = false;
};

int cmd_measure(const MeasureOptions& opt, std::ostream& out, std::ostream& err) {
    const Format format = parse_format(opt.format);
    Aggregate agg;
    if (opt.aggregate == "mean")
        agg = Aggregate::Mean;
    else if (opt.aggregate == "sum")
        agg = Aggregate::Sum;
    else
        throw DomainError("unknown aggregate mode '" + opt.aggregate + "'");

    const CoefficientSet modif = load_coefficients(opt.coeff_modifiability);
    const CoefficientSet flex = load_coefficients(opt.coeff_flexibility);
    const CoefficientSet test = load_coefficients(opt.coeff_testability);

    std::vector<TestabilityReport> reports;
    std::vector<MetricRow> class_rows;
    for (const auto& path : opt.model_files) {
        DesignModel m = load_design_model(path);
        ValidationReport v = validate_model(m);
        if (!v.clean()) {
            err << path << ": model validation failed\n";
            for (const auto& viol : v.violations) err << "  " << viol.message << '\n';
            return kExitInputError;
        }
        ResolvedHierarchy h = resolve_hierarchy(m);
        MetricVector mv = project_metrics(m, h, agg);
        reports.push_back(evaluate_project(m.project_name, mv, modif, flex, test));
        if (opt.per_class) {
            auto rows = metric_rows(m, h, agg);
            class_rows.insert(class_rows.end(), rows.begin(), rows.end());
        }
    }
    reports = rank_projects(std::move(reports), opt.rank_desc);

    switch (format) {
        case Format::Csv:
            if (opt.per_class) out << metrics_csv(class_rows) << '\n';
            out << reports_csv(reports);
            break;
        case Format::Text:
            if (opt.per_class) {
                out << "Per-class metrics\n" << metrics_csv(class_rows) << '\n';
            }
            out << "Project testability (score in model units; aggregate: " << opt.aggregate
                << ")\n";
            for (const auto& r : reports)
                out << "  " << r.project << ": enm=" << fixed4(r.metrics.enm)
                    << " inm=" << fixed4(r.metrics.inm) << " cpm=" << fixed4(r.metrics.cpm)
                    << " com=" << fixed4(r.metrics.com)
                    << " modifiability=" << fixed4(r.factors.modifiability)
                    << " flexibility=" << fixed4(r.factors.flexibility)
                    << " testability=" << fixed4(r.testability) << " rank=" << fixed4(*r.rank)
                    << '\n';
            break;
        case Format::Json: {
            json doc = json::array();
            for (const auto& r : reports)
                doc.push_back({{"project", r.project},
                               {"enm", r.metrics.enm},
                               {"inm", r.metrics.inm},
                               {"cpm", r.metrics.cpm},
                               {"com", r.metrics.com},
                               {"modifiability", r.factors.modifiability},
                               {"flexibility", r.factors.flexibility},
                               {"testability", r.testability},
                               {"rank", *r.rank}});
            out << doc.dump(2) << '\n';
            break;
        }
    }
    return kExitOk;
}

struct RankOptions {
    std::string input;
    std::string value_column = "testability";
    std::string label_column;
    std::string format = "text";
    bool rank_desc = false;
};

int cmd_rank(const RankOptions& opt, std::ostream& out, std::ostream&) {
    const Format format = parse_format(opt.format);
    Dataset d = load_csv(opt.input);
    if (d.rows.empty()) throw EmptyInputError(opt.input + ": no data rows");
    std::vector<double> values = d.column(opt.value_column);
    std::vector<double> keyed = values;
    if (opt.rank_desc)
        for (auto& v : keyed) v = -v;
    std::vector<double> ranks = rank_values(keyed);

    std::vector<std::string> labels;
    if (!opt.label_column.empty()) {
        const size_t j = d.column_index(opt.label_column);
        for (const auto& row : d.rows) labels.push_back(fixed4(row[j]));
    } else {
        for (size_t i = 0; i < d.rows.size(); ++i) labels.push_back("row" + std::to_string(i + 1));
    }

    if (format == Format::Json) {
        json doc = json::array();
        for (size_t i = 0; i < values.size(); ++i)
            doc.push_back({{"label", labels[i]}, {"value", values[i]}, {"rank", ranks[i]}});
        out << doc.dump(2) << '\n';
    } else {
        out << "label," << opt.value_column << ",rank\n";
        for (size_t i = 0; i < values.size(); ++i)
            out << labels[i] << ',' << fixed4(values[i]) << ',' << fixed4(ranks[i]) << '\n';
    }
    return kExitOk;
}

struct FitOptions {
    std::string input;
    std::string response;
    std::vector<std::string> predictors;
    std::string format = "text";
};

int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream&) {
    const Format format = parse_format(opt.format);
    Dataset d = load_csv(opt.input);
    OlsResult res = ols_fit(d, opt.response, opt.predictors);

    switch (format) {
        case Format::Text: {
            out << "Coefficients (response: " << res.fit.response << ")\n";
            out << "  name,B,Std. Error,Beta,t,Sig.\n";
            for (const auto& c : res.fit.coefficients) {
                out << "  " << c.name << ',' << fixed4(c.b) << ',' << fixed4(c.std_error) << ',';
                if (c.name == "(Constant)")
                    out << "";
                else
                    out << fixed4(c.beta_standardized);
                out << ',' << fixed4(c.t) << ',' << fixed4(c.sig) << '\n';
            }
            out << "Model Summary\n";
            out << "  R,R Square,Adjusted R Square,Std. Error of the Estimate\n";
            out << "  " << fixed4(res.summary.r) << ',' << fixed4(res.summary.r_square) << ','
                << fixed4(res.summary.adjusted_r_square) << ','
                << fixed4(res.summary.std_error_of_estimate) << '\n';
            break;
        }
        case Format::Csv: {
            out << "name,b,std_error,beta,t,sig\n";
            for (const auto& c : res.fit.coefficients)
                out << c.name << ',' << fixed4(c.b) << ',' << fixed4(c.std_error) << ','
                    << (c.name == "(Constant)" ? std::string() : fixed4(c.beta_standardized))
                    << ',' << fixed4(c.t) << ',' << fixed4(c.sig) << '\n';
            out << "\nr,r_square,adjusted_r_square,std_error_of_estimate,n,k\n";
            out << fixed4(res.summary.r) << ',' << fixed4(res.summary.r_square) << ','
                << fixed4(res.summary.adjusted_r_square) << ','
                << fixed4(res.summary.std_error_of_estimate) << ',' << res.summary.n << ','
                << res.summary.k << '\n';
            break;
        }
        case Format::Json: {
            json coeffs = json::array();
            for (const auto& c : res.fit.coefficients)
                coeffs.push_back({{"name", c.name},
                                  {"b", c.b},
                                  {"std_error", c.std_error},
                                  {"beta", c.beta_standardized},
                                  {"t", c.t},
                                  {"sig", c.sig}});
            json doc = {{"response", res.fit.response},
                        {"predictors", res.fit.predictors},
                        {"coefficients", coeffs},
                        {"summary",
                         {{"r", res.summary.r},
                          {"r_square", res.summary.r_square},
                          {"adjusted_r_square", res.summary.adjusted_r_square},
                          {"std_error_of_estimate", res.summary.std_error_of_estimate},
                          {"n", res.summary.n},
                          {"k", res.summary.k}}}};
            out << doc.dump(2) << '\n';
            break;
        }
    }
    return kExitOk;
}

struct CorrelateOptions {
    std::string input;
    std::string method = "pearson";
    std::vector<std::string> columns;
    std::string format = "text";
};

int cmd_correlate(const CorrelateOptions& opt, std::ostream& out, std::ostream&) {
    const Format format = parse_format(opt.format);
    if (opt.method != "pearson" && opt.method != "spearman")
        throw DomainError("unknown correlation method '" + opt.method + "'");
    Dataset d = load_csv(opt.input);
    if (d.rows.size() < 2) throw DomainError(opt.input + ": need at least 2 rows");

    std::vector<std::string> columns = opt.columns.empty() ? d.column_names : opt.columns;
    std::vector<std::vector<double>> data;
    for (const auto& name : columns) data.push_back(d.column(name));

    const size_t m = columns.size();
    std::vector<std::vector<std::string>> cells(m, std::vector<std::string>(m, "1.0000"));
    std::vector<std::string> notes;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            std::string cell;
            try {
                if (opt.method == "pearson") {
                    cell = fixed4(pearson(data[i], data[j]));
                } else {
                    SpearmanResult s =
                        spearman(rank_values(data[i]), rank_values(data[j]));
                    cell = fixed4(s.r_s);
                    if (s.used_shortcut)
                        notes.push_back(columns[i] + " x " + columns[j] +
                                        ": d-squared formula, sum_d_squared=" +
                                        fixed4(s.sum_d_squared) + ", n=" + std::to_string(s.n));
                    else
                        notes.push_back(columns[i] + " x " + columns[j] +
                                        ": ties present, computed as correlation of average ranks");
                }
            } catch (const ZeroVarianceError&) {
                cell = "NA";
            }
            cells[i][j] = cells[j][i] = cell;
        }
    }

    if (format == Format::Json) {
        json doc;
        doc["method"] = opt.method;
        doc["columns"] = columns;
        json matrix = json::array();
        for (size_t i = 0; i < m; ++i) {
            json row = json::array();
            for (size_t j = 0; j < m; ++j) row.push_back(cells[i][j]);
            matrix.push_back(std::move(row));
        }
        doc["matrix"] = matrix;
        doc["notes"] = notes;
        out << doc.dump(2) << '\n';
    } else {
        out << "column";
        for (const auto& name : columns) out << ',' << name;
        out << '\n';
        for (size_t i = 0; i < m; ++i) {
            out << columns[i];
            for (size_t j = 0; j < m; ++j) out << ',' << cells[i][j];
            out << '\n';
        }
        if (format == Format::Text)
            for (const auto& n : notes) out << "# " << n << '\n';
    }
    return kExitOk;
}

struct TTestOptions {
    double r = 0.0;
    size_t n = 0;
    double alpha = 0.05;
    std::string df_convention = "n-2";
    std::string format = "text";
};

int cmd_ttest_r(const TTestOptions& opt, std::ostream& out, std::ostream& err) {
    const Format format = parse_format(opt.format);
    DfConvention conv;
    if (opt.df_convention == "n-2")
        conv = DfConvention::NMinus2;
    else if (opt.df_convention == "n")
        conv = DfConvention::N;
    else
        throw DomainError("df convention must be 'n-2' or 'n'");

    TTestResult res = correlation_t_test(opt.r, opt.n, opt.alpha, conv);
    if (res.degenerate) err << "warning: |r| = 1 gives an infinite statistic\n";

    const std::string decision = res.reject_null ? "Reject" : "Accept";
    switch (format) {
        case Format::Text:
            out << "H0: the two variables are not highly correlated\n";
            out << "r = " << fixed4(res.r) << ", n = " << res.n << ", alpha = " << res.alpha
                << ", df = " << res.df << " (convention: " << to_string(res.convention) << ")\n";
            out << "t = " << fixed4(res.t_statistic)
                << ", critical value = " << fixed4(res.critical_value) << '\n';
            out << "Decision: " << decision << '\n';
            break;
        case Format::Csv:
            out << "r,n,alpha,df,df_convention,t,critical_value,decision\n";
            out << fixed4(res.r) << ',' << res.n << ',' << res.alpha << ',' << res.df << ','
                << to_string(res.convention) << ',' << fixed4(res.t_statistic) << ','
                << fixed4(res.critical_value) << ',' << decision << '\n';
            break;
        case Format::Json: {
            json doc = {{"r", res.r},
                        {"n", res.n},
                        {"alpha", res.alpha},
                        {"df", res.df},
                        {"df_convention", to_string(res.convention)},
                        {"t", res.t_statistic},
                        {"critical_value", res.critical_value},
                        {"reject_null", res.reject_null},
                        {"degenerate", res.degenerate}};
            out << doc.dump(2) << '\n';
            break;
        }
    }
    return kExitOk;
}

struct ReplicateOptions {
    std::string table = "all";
    std::string fixtures = "data/paper_fixtures.json";
    std::string format = "text";
};

int cmd_replicate_paper(const ReplicateOptions& opt, std::ostream& out, std::ostream&) {
    const Format format = parse_format(opt.format);
    PaperFixtures f = load_fixtures(opt.fixtures);

    ReplicationReport rep;
    if (opt.table == "all")
        rep = replicate_all(f);
    else if (opt.table == "1" || opt.table == "2")
        rep = replicate_table1_2(f);
    else if (opt.table == "3")
        rep = replicate_table3_means(f);
    else if (opt.table == "4")
        rep = replicate_table4(f);
    else if (opt.table == "5")
        rep = replicate_table5(f);
    else
        throw DomainError("table selector must be one of 1, 2, 3, 4, 5, all");

    if (format == Format::Csv)
        out << rep.to_csv();
    else if (format == Format::Json) {
        json doc = json::array();
        for (const auto& c : rep.checks)
            doc.push_back({{"check", c.id},
                           {"expected", c.expected},
                           {"computed", c.computed},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"note", c.note}});
        out << doc.dump(2) << '\n';
    } else
        out << rep.to_text();
    return rep.overall_pass() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Design-quality analyzer: design metrics, quality models, statistics"};
    app.require_subcommand(1);

    MeasureOptions measure;
    auto* sub_measure =
        app.add_subcommand("measure", "Compute metrics, factor scores and testability per project");
    sub_measure->add_option("models", measure.model_files, "class-model files")
        ->required()
        ->expected(-1);
    sub_measure->add_option("--modifiability-coefficients", measure.coeff_modifiability,
                            "coefficient file or built-in name");
    sub_measure->add_option("--flexibility-coefficients", measure.coeff_flexibility,
                            "coefficient file or built-in name");
    sub_measure->add_option("--testability-coefficients", measure.coeff_testability,
                            "coefficient file or built-in name");
    sub_measure->add_option("--aggregate", measure.aggregate, "mean|sum");
    sub_measure->add_flag("--rank-desc", measure.rank_desc, "rank 1 = highest value");
    sub_measure->add_flag("--per-class", measure.per_class, "also emit per-class metric rows");
    sub_measure->add_option("--format", measure.format, "text|csv|json");

    RankOptions rank;
    auto* sub_rank = app.add_subcommand("rank", "Rank rows of a CSV column (ascending)");
    sub_rank->add_option("--input", rank.input, "CSV file")->required();
    sub_rank->add_option("--column", rank.value_column, "value column");
    sub_rank->add_option("--label-column", rank.label_column, "label column");
    sub_rank->add_flag("--rank-desc", rank.rank_desc, "rank 1 = highest value");
    sub_rank->add_option("--format", rank.format, "text|csv|json");

    FitOptions fit;
    auto* sub_fit = app.add_subcommand("fit", "Ordinary-least-squares multiple regression");
    sub_fit->add_option("--input", fit.input, "CSV dataset")->required();
    sub_fit->add_option("--response", fit.response, "response column")->required();
    sub_fit->add_option("--predictors", fit.predictors, "predictor columns")
        ->required()
        ->delimiter(',');
    sub_fit->add_option("--format", fit.format, "text|csv|json");

    CorrelateOptions correlate;
    auto* sub_corr = app.add_subcommand("correlate", "Pairwise correlation matrix");
    sub_corr->add_option("--input", correlate.input, "CSV dataset")->required();
    sub_corr->add_option("--method", correlate.method, "pearson|spearman");
    sub_corr->add_option("--columns", correlate.columns, "columns (default: all)")->delimiter(',');
    sub_corr->add_option("--format", correlate.format, "text|csv|json");

    TTestOptions ttest;
    auto* sub_ttest = app.add_subcommand("ttest-r", "Significance test for a correlation r");
    sub_ttest->add_option("--r", ttest.r, "correlation coefficient")->required();
    sub_ttest->add_option("--n", ttest.n, "sample size")->required();
    sub_ttest->add_option("--alpha", ttest.alpha, "significance level");
    sub_ttest->add_option("--df-convention", ttest.df_convention, "n-2|n");
    sub_ttest->add_option("--format", ttest.format, "text|csv|json");

    ReplicateOptions replicate;
    auto* sub_repl =
        app.add_subcommand("replicate-paper", "Re-derive the published validation tables");
    sub_repl->add_option("--table", replicate.table, "1|2|3|4|5|all");
    sub_repl->add_option("--fixtures", replicate.fixtures, "fixture file");
    sub_repl->add_option("--format", replicate.format, "text|csv|json");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        if (sub_measure->parsed()) return cmd_measure(measure, out, err);
        if (sub_rank->parsed()) return cmd_rank(rank, out, err);
        if (sub_fit->parsed()) return cmd_fit(fit, out, err);
        if (sub_corr->parsed()) return cmd_correlate(correlate, out, err);
        if (sub_ttest->parsed()) return cmd_ttest_r(ttest, out, err);
        if (sub_repl->parsed()) return cmd_replicate_paper(replicate, out, err);
    } catch (const RankDeficientError& e) {
        err << "computation error: " << e.what() << '\n';
        return kExitCheckFailure;
    } catch (const FixtureCorruptionError& e) {
        err << "fixture error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const Error& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    }
    err << "no command given\n";
    return kExitInputError;
}

}  // namespace dqa
