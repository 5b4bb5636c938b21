#include "dqa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace dqa {

size_t Dataset::column_index(const std::string& name) const {
    for (size_t i = 0; i < column_names.size(); ++i)
        if (column_names[i] == name) return i;
    throw DomainError("no such column: '" + name + "'");
}

std::vector<double> Dataset::column(const std::string& name) const {
    const size_t j = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[j]);
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Dataset parse_csv(const std::string& text, const std::string& origin) {
    Dataset d;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (d.column_names.empty()) {
            for (auto& f : fields) {
                std::string name = trimmed(f);
                if (name.empty())
                    throw MalformedDocumentError(origin + ": empty column name in header");
                if (std::find(d.column_names.begin(), d.column_names.end(), name) !=
                    d.column_names.end())
                    throw MalformedDocumentError(origin + ": duplicate column '" + name + "'");
                d.column_names.push_back(name);
            }
            continue;
        }
        if (fields.size() != d.column_names.size())
            throw MalformedDocumentError(origin + ": line " + std::to_string(lineno) + " has " +
                                         std::to_string(fields.size()) + " fields, expected " +
                                         std::to_string(d.column_names.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            const std::string v = trimmed(f);
            try {
                size_t pos = 0;
                row.push_back(std::stod(v, &pos));
                if (pos != v.size()) throw std::invalid_argument(v);
            } catch (const std::exception&) {
                throw MalformedDocumentError(origin + ": line " + std::to_string(lineno) +
                                             ": not a number: '" + v + "'");
            }
        }
        d.rows.push_back(std::move(row));
    }
    if (d.column_names.empty()) throw MalformedDocumentError(origin + ": missing header row");
    return d;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError("cannot open dataset: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path);
}

double compensated_sum(std::span<const double> values) {
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double mean(std::span<const double> values) {
    if (values.empty()) throw EmptyInputError("mean of an empty list");
    return compensated_sum(values) / static_cast<double>(values.size());
}

Descriptives descriptive_stats(std::span<const double> values) {
    if (values.empty()) throw EmptyInputError("descriptive statistics of an empty list");
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi, mean(values)};
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatchError("pearson: lengths " + std::to_string(x.size()) + " vs " +
                                  std::to_string(y.size()));
    if (x.size() < 2) throw DomainError("pearson needs at least 2 points");
    const double mx = mean(x), my = mean(y);
    std::vector<double> sxy(x.size()), sxx(x.size()), syy(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy[i] = dx * dy;
        sxx[i] = dx * dx;
        syy[i] = dy * dy;
    }
    const double vxx = compensated_sum(sxx), vyy = compensated_sum(syy);
    if (vxx == 0.0 || vyy == 0.0) throw ZeroVarianceError("pearson: a column has zero variance");
    double r = compensated_sum(sxy) / std::sqrt(vxx * vyy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> rank_values(std::span<const double> values) {
    if (values.empty()) throw EmptyInputError("rank_values of an empty list");
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::vector<double> rank_values_ordinal(std::span<const double> values) {
    if (values.empty()) throw EmptyInputError("rank_values_ordinal of an empty list");
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (size_t i = 0; i < order.size(); ++i) ranks[order[i]] = static_cast<double>(i + 1);
    return ranks;
}

namespace {

bool tie_free(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

}  // namespace

SpearmanResult spearman(std::span<const double> rank_a, std::span<const double> rank_b) {
    if (rank_a.size() != rank_b.size())
        throw LengthMismatchError("spearman: lengths " + std::to_string(rank_a.size()) + " vs " +
                                  std::to_string(rank_b.size()));
    if (rank_a.size() < 2) throw DomainError("spearman needs at least 2 points");

    SpearmanResult res;
    res.n = rank_a.size();
    std::vector<double> d2(rank_a.size());
    for (size_t i = 0; i < rank_a.size(); ++i) {
        const double d = rank_a[i] - rank_b[i];
        d2[i] = d * d;
    }
    res.sum_d_squared = compensated_sum(d2);

    if (tie_free(rank_a) && tie_free(rank_b)) {
        const double n = static_cast<double>(res.n);
        res.r_s = 1.0 - 6.0 * res.sum_d_squared / (n * (n * n - 1.0));
        res.used_shortcut = true;
    } else {
        // The d² shortcut is invalid under ties; fall back to Pearson of the ranks.
        res.r_s = pearson(rank_a, rank_b);
        res.used_shortcut = false;
    }
    return res;
}

double spearman_critical(size_t n, double alpha) {
    if (n < 5 || n > 30)
        throw OutOfTableRangeError("spearman_critical: n = " + std::to_string(n) +
                                   " outside table range [5, 30]");
    const bool a05 = std::abs(alpha - 0.05) < 1e-12;
    const bool a01 = std::abs(alpha - 0.01) < 1e-12;
    if (!a05 && !a01)
        throw OutOfTableRangeError("spearman_critical: alpha must be 0.05 or 0.01");
    // One-tailed critical value via the t approximation r = t/sqrt(t² + n − 2),
    // rounded to the 4 decimals the table is quoted at. Reproduces the 0.4815
    // threshold at (23, 0.01).
    const double t = t_critical(n - 2, 2.0 * alpha);
    const double r = t / std::sqrt(t * t + static_cast<double>(n - 2));
    return std::round(r * 1e4) / 1e4;
}

namespace {

// Continued-fraction evaluation of the regularized incomplete beta I_x(a, b).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double t_cdf_two_tailed(double t, size_t df) {
    if (df < 1) throw DomainError("t_cdf_two_tailed: df must be >= 1");
    const double v = static_cast<double>(df);
    const double x = v / (v + t * t);
    return ibeta(v / 2.0, 0.5, x);
}

double t_critical(size_t df, double alpha) {
    if (df < 1) throw DomainError("t_critical: df must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("t_critical: alpha must be in (0, 1)");
    double lo = 0.0, hi = 1.0;
    while (t_cdf_two_tailed(hi, df) > alpha) {
        hi *= 2.0;
        if (hi > 1e12) throw DomainError("t_critical: no bracket found");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_cdf_two_tailed(mid, df) > alpha)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-10) break;
    }
    return 0.5 * (lo + hi);
}

std::string to_string(DfConvention c) {
    return c == DfConvention::NMinus2 ? "n-2" : "n";
}

TTestResult correlation_t_test(double r, size_t n, double alpha, DfConvention convention) {
    if (n < 3) throw TooFewPointsError("correlation_t_test needs n >= 3");
    if (std::abs(r) > 1.0) throw DomainError("correlation_t_test: |r| must be <= 1");

    TTestResult res;
    res.r = r;
    res.n = n;
    res.alpha = alpha;
    res.convention = convention;
    res.df = (convention == DfConvention::NMinus2) ? n - 2 : n;
    res.critical_value = t_critical(res.df, alpha);
    if (std::abs(r) == 1.0) {
        res.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), r);
        res.degenerate = true;
        res.reject_null = true;
        return res;
    }
    res.t_statistic = r * std::sqrt(static_cast<double>(n - 2)) / std::sqrt(1.0 - r * r);
    res.reject_null = std::abs(res.t_statistic) >= res.critical_value;
    return res;
}

std::pair<double, double> regression_summary_from(double r_square, size_t n, size_t k) {
    if (r_square < 0.0 || r_square > 1.0)
        throw DomainError("regression_summary_from: r_square outside [0, 1]");
    if (n <= k + 1) throw DomainError("regression_summary_from: n must exceed k + 1");
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    const double adjusted = 1.0 - (1.0 - r_square) * (nn - 1.0) / (nn - kk - 1.0);
    return {std::sqrt(r_square), adjusted};
}

namespace {

// Gauss-Jordan inverse of a symmetric positive (semi)definite p×p matrix,
// with a 1-norm condition estimate.
struct Inverse {
    std::vector<std::vector<double>> inv;
    double condition;
};

Inverse invert(std::vector<std::vector<double>> a) {
    const size_t p = a.size();
    double norm_a = 0.0;
    for (size_t j = 0; j < p; ++j) {
        double col = 0.0;
        for (size_t i = 0; i < p; ++i) col += std::abs(a[i][j]);
        norm_a = std::max(norm_a, col);
    }

    std::vector<std::vector<double>> inv(p, std::vector<double>(p, 0.0));
    for (size_t i = 0; i < p; ++i) inv[i][i] = 1.0;

    for (size_t col = 0; col < p; ++col) {
        size_t pivot = col;
        for (size_t i = col + 1; i < p; ++i)
            if (std::abs(a[i][col]) > std::abs(a[pivot][col])) pivot = i;
        if (a[pivot][col] == 0.0)
            throw RankDeficientError("design matrix is rank deficient (zero pivot)");
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);

        const double pv = a[col][col];
        for (size_t j = 0; j < p; ++j) {
            a[col][j] /= pv;
            inv[col][j] /= pv;
        }
        for (size_t i = 0; i < p; ++i) {
            if (i == col) continue;
            const double f = a[i][col];
            if (f == 0.0) continue;
            for (size_t j = 0; j < p; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }

    double norm_inv = 0.0;
    for (size_t j = 0; j < p; ++j) {
        double col = 0.0;
        for (size_t i = 0; i < p; ++i) col += std::abs(inv[i][j]);
        norm_inv = std::max(norm_inv, col);
    }
    return {std::move(inv), norm_a * norm_inv};
}

double sample_sd(std::span<const double> v) {
    const double m = mean(v);
    std::vector<double> sq(v.size());
    for (size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - m) * (v[i] - m);
    return std::sqrt(compensated_sum(sq) / static_cast<double>(v.size() - 1));
}

}  // namespace

OlsResult ols_fit(const Dataset& d, const std::string& response,
                  const std::vector<std::string>& predictors) {
    const size_t n = d.n();
    const size_t k = predictors.size();
    const size_t p = k + 1;
    if (n < k + 2)
        throw TooFewRowsError("ols_fit: need at least k + 2 = " + std::to_string(k + 2) +
                              " rows, got " + std::to_string(n));

    const std::vector<double> y = d.column(response);
    std::vector<std::vector<double>> x(n, std::vector<double>(p, 1.0));
    for (size_t j = 0; j < k; ++j) {
        const std::vector<double> col = d.column(predictors[j]);
        for (size_t i = 0; i < n; ++i) x[i][j + 1] = col[i];
    }

    // Normal equations with compensated accumulation.
    std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    std::vector<double> scratch(n);
    for (size_t a = 0; a < p; ++a) {
        for (size_t b = a; b < p; ++b) {
            for (size_t i = 0; i < n; ++i) scratch[i] = x[i][a] * x[i][b];
            xtx[a][b] = xtx[b][a] = compensated_sum(scratch);
        }
        for (size_t i = 0; i < n; ++i) scratch[i] = x[i][a] * y[i];
        xty[a] = compensated_sum(scratch);
    }

    Inverse iv = invert(xtx);
    if (!(iv.condition < 1e12))
        throw RankDeficientError("ols_fit: normal-equations condition estimate " +
                                 std::to_string(iv.condition) + " exceeds 1e12");

    std::vector<double> b(p, 0.0);
    for (size_t a = 0; a < p; ++a) {
        for (size_t j = 0; j < p; ++j) scratch[j] = iv.inv[a][j] * xty[j];
        b[a] = compensated_sum(std::span<const double>(scratch.data(), p));
    }

    OlsResult out;
    out.residuals.resize(n);
    std::vector<double> sq(n);
    for (size_t i = 0; i < n; ++i) {
        double fitted = 0.0;
        for (size_t a = 0; a < p; ++a) fitted += b[a] * x[i][a];
        out.residuals[i] = y[i] - fitted;
        sq[i] = out.residuals[i] * out.residuals[i];
    }
    const double sse = compensated_sum(sq);
    const double ybar = mean(y);
    for (size_t i = 0; i < n; ++i) sq[i] = (y[i] - ybar) * (y[i] - ybar);
    const double sst = compensated_sum(sq);
    if (sst == 0.0) throw ZeroVarianceError("ols_fit: response has zero variance");

    const double df_resid = static_cast<double>(n - k - 1);
    const double sigma2 = sse / df_resid;
    const double sd_y = sample_sd(y);

    out.fit.response = response;
    out.fit.predictors = predictors;
    for (size_t a = 0; a < p; ++a) {
        CoefficientRow row;
        row.name = (a == 0) ? "(Constant)" : predictors[a - 1];
        row.b = b[a];
        row.std_error = std::sqrt(sigma2 * iv.inv[a][a]);
        if (a > 0) {
            const std::vector<double> col = d.column(predictors[a - 1]);
            row.beta_standardized = b[a] * sample_sd(col) / sd_y;
        }
        row.t = (row.std_error > 0.0) ? row.b / row.std_error
                                      : std::copysign(std::numeric_limits<double>::infinity(), row.b);
        row.sig = t_cdf_two_tailed(row.t, n - k - 1);
        out.fit.coefficients.push_back(std::move(row));
    }

    out.summary.n = n;
    out.summary.k = k;
    out.summary.r_square = 1.0 - sse / sst;
    auto [r, adj] = regression_summary_from(std::clamp(out.summary.r_square, 0.0, 1.0), n, k);
    out.summary.r = r;
    out.summary.adjusted_r_square = adj;
    out.summary.std_error_of_estimate = std::sqrt(sigma2);
    return out;
}

}  // namespace dqa
