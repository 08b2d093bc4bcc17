#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "tscan/covariance.hpp"
#include "tscan/errors.hpp"
#include "tscan/linalg.hpp"

namespace tscan {

// A complete multi-channel panel: strictly increasing ISO-8601 dates, one
// fully populated row of values per date.
struct Panel {
    std::vector<std::string> dates;
    std::vector<std::string> channels;
    Matrix values;  // T x N
    std::vector<std::string> warnings;

    int steps() const { return values.rows(); }
    int width() const { return values.cols(); }
};

namespace detail {

inline std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && issp(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

inline char detect_delimiter(const std::string& header) {
    for (char c : {',', '\t', ';'})
        if (header.find(c) != std::string::npos) return c;
    return ',';
}

inline std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

inline bool iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace detail

// Parse a delimiter-separated panel: header `date,NAME1,...,NAMEN`, ISO
// dates, numeric cells, no gaps. Rows arriving out of order are sorted with
// a warning; duplicate dates and missing cells are errors naming the spot.
inline Panel load_panel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const char delim = detail::detect_delimiter(line);
    const auto header = detail::split(line, delim);
    if (header.size() < 2) throw ParseError(path + ": header needs date plus one channel");

    Panel panel;
    panel.channels.assign(header.begin() + 1, header.end());
    const int n = static_cast<int>(panel.channels.size());

    struct Row {
        std::string date;
        std::vector<double> v;
    };
    std::vector<Row> raw;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split(line, delim);
        if (static_cast<int>(cells.size()) != n + 1)
            throw ParseError(path + ": row " + std::to_string(line_no) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(n + 1));
        Row row;
        row.date = cells[0];
        if (!detail::iso_date(row.date))
            throw ParseError(path + ": row " + std::to_string(line_no) +
                             ": date not ISO-8601: '" + row.date + "'");
        row.v.resize(n);
        for (int j = 0; j < n; ++j) {
            const std::string& cell = cells[j + 1];
            if (cell.empty())
                throw MissingValue(path + ": row " + std::to_string(line_no) + ", column " +
                                   panel.channels[j]);
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            const auto res = std::from_chars(begin, end, row.v[j]);
            if (res.ec != std::errc{} || res.ptr != end)
                throw ParseError(path + ": row " + std::to_string(line_no) + ", column " +
                                 panel.channels[j] + ": not a number: '" + cell + "'");
        }
        raw.push_back(std::move(row));
    }
    if (raw.empty()) throw ParseError(path + ": no data rows");

    const bool sorted = std::is_sorted(raw.begin(), raw.end(),
                                       [](const Row& a, const Row& b) { return a.date < b.date; });
    if (!sorted) {
        std::stable_sort(raw.begin(), raw.end(),
                         [](const Row& a, const Row& b) { return a.date < b.date; });
        panel.warnings.push_back("rows were out of order and have been sorted by date");
    }
    for (std::size_t i = 1; i < raw.size(); ++i)
        if (raw[i].date == raw[i - 1].date)
            throw DuplicateDate(path + ": duplicate date " + raw[i].date);

    panel.values = Matrix(static_cast<int>(raw.size()), n);
    panel.dates.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        panel.dates.push_back(raw[i].date);
        for (int j = 0; j < n; ++j) panel.values(static_cast<int>(i), j) = raw[i].v[j];
    }
    return panel;
}

struct StandardizedReturns {
    Panel panel;                 // T-1 rows of standardized log-differences
    std::vector<double> scales;  // per-channel standard deviation removed
};

// r_tj = (ln v_tj - ln v_{t-1,j}) / s_j with s_j the sample standard
// deviation (about the mean) of channel j's log-differences over the whole
// panel. Output channels therefore have sample variance exactly 1.
inline StandardizedReturns standardized_returns(const Panel& prices) {
    const int t = prices.steps();
    const int n = prices.width();
    if (t < 3) throw ParseError("standardized_returns: need at least 3 rows");
    Matrix diffs(t - 1, n);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < n; ++j)
            if (!(prices.values(i, j) > 0.0))
                throw NonPositivePrice("channel " + prices.channels[j] + " at " +
                                       prices.dates[i]);
    for (int i = 1; i < t; ++i)
        for (int j = 0; j < n; ++j)
            diffs(i - 1, j) = std::log(prices.values(i, j)) - std::log(prices.values(i - 1, j));

    StandardizedReturns out;
    out.scales.resize(n);
    const int m = t - 1;
    for (int j = 0; j < n; ++j) {
        double mean = 0.0;
        for (int i = 0; i < m; ++i) mean += diffs(i, j);
        mean /= m;
        double ss = 0.0;
        for (int i = 0; i < m; ++i) {
            const double d = diffs(i, j) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / (m - 1));
        if (sd < 1e-12)
            throw DegenerateChannel("channel " + prices.channels[j] +
                                    " has (near-)constant log-differences");
        out.scales[j] = sd;
    }

    out.panel.channels = prices.channels;
    out.panel.dates.assign(prices.dates.begin() + 1, prices.dates.end());
    out.panel.warnings = prices.warnings;
    out.panel.values = Matrix(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.panel.values(i, j) = diffs(i, j) / out.scales[j];
    return out;
}

struct CovarianceEstimate {
    CovarianceModel model;
    std::vector<double> eigenvalues;  // descending
    bool jittered = false;
};

// Sample correlation matrix of a standardized panel (diagonal exactly 1)
// wrapped as a CovarianceModel. A failed factorization is retried once with
// +1e-8 I and flagged.
inline CovarianceEstimate estimate_covariance(const Panel& standardized) {
    const int t = standardized.steps();
    const int n = standardized.width();
    if (t - 1 <= n) throw ParseError("estimate_covariance: need more rows than channels");

    std::vector<double> mean(n, 0.0);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < n; ++j) mean[j] += standardized.values(i, j);
    for (double& v : mean) v /= t;

    Matrix cov(n, n);
    for (int i = 0; i < t; ++i)
        for (int a = 0; a < n; ++a) {
            const double da = standardized.values(i, a) - mean[a];
            for (int b = a; b < n; ++b)
                cov(a, b) += da * (standardized.values(i, b) - mean[b]);
        }
    Matrix corr(n, n);
    for (int a = 0; a < n; ++a) {
        corr(a, a) = 1.0;
        for (int b = a + 1; b < n; ++b) {
            const double c = cov(a, b) / std::sqrt(cov(a, a) * cov(b, b));
            // a unit correlation is a duplicated channel; no jitter makes
            // that model usable
            if (std::abs(c) >= 1.0 - 1e-10)
                throw NotPositiveDefinite("channels " + standardized.channels[a] + " and " +
                                          standardized.channels[b] +
                                          " are perfectly correlated");
            corr(a, b) = c;
            corr(b, a) = c;
        }
    }

    CovarianceEstimate out{CovarianceModel::make_identity(n), symmetric_eigenvalues(corr), false};
    try {
        out.model = CovarianceModel(corr);
    } catch (const NotPositiveDefinite&) {
        for (int a = 0; a < n; ++a) corr(a, a) += 1e-8;
        out.model = CovarianceModel(corr);  // propagates if still singular
        out.jittered = true;
    }
    return out;
}

// Lag-k autocorrelations, the model-check diagnostic for return series.
inline std::vector<double> autocorrelations(std::span<const double> x, int max_lag) {
    const int n = static_cast<int>(x.size());
    std::vector<double> acf;
    if (n < 2 || max_lag < 1) return acf;
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    if (var <= 0.0) return acf;
    for (int k = 1; k <= std::min(max_lag, n - 1); ++k) {
        double s = 0.0;
        for (int i = k; i < n; ++i) s += (x[i] - mean) * (x[i - k] - mean);
        acf.push_back(s / var);
    }
    return acf;
}

}  // namespace tscan
