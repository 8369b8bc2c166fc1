#include "cclust/expression.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "cclust/csv.hpp"
#include "cclust/error.hpp"

namespace cclust {

std::string_view to_string(Orientation o) noexcept {
    return o == Orientation::features_as_rows ? "features_as_rows" : "samples_as_rows";
}

Orientation parse_orientation(std::string_view text) {
    if (text == "features_as_rows") {
        return Orientation::features_as_rows;
    }
    if (text == "samples_as_rows") {
        return Orientation::samples_as_rows;
    }
    throw ConfigError("unknown orientation '" + std::string(text) + "'");
}

namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
    std::unordered_set<std::string_view> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second) {
            throw DataError(std::string("duplicate ") + what + " ID '" + id + "'");
        }
    }
}

}

bool ExpressionMatrix::has_missing() const noexcept {
    return std::any_of(missing.begin(), missing.end(), [](std::uint8_t m) { return m != 0; });
}

void ExpressionMatrix::validate() const {
    if (sample_ids.size() != values.rows() || feature_ids.size() != values.cols()) {
        throw DataError("expression matrix dimensions do not match its identifiers");
    }
    if (!missing.empty() && missing.size() != values.rows() * values.cols()) {
        throw DataError("expression matrix missing-value mask has the wrong size");
    }
    check_unique(sample_ids, "sample");
    check_unique(feature_ids, "feature");
}

ExpressionMatrix ExpressionMatrix::select_samples(std::span<const std::size_t> rows) const {
    ExpressionMatrix out;
    for (auto r : rows) {
        out.sample_ids.push_back(sample_ids[r]);
    }
    out.feature_ids = feature_ids;
    out.values = values.select_rows(rows);
    if (!missing.empty()) {
        const std::size_t p = features();
        out.missing.resize(rows.size() * p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::copy_n(missing.begin() + static_cast<std::ptrdiff_t>(rows[i] * p), p,
                        out.missing.begin() + static_cast<std::ptrdiff_t>(i * p));
        }
    }
    return out;
}

ExpressionMatrix ExpressionMatrix::select_features(std::span<const std::size_t> cols) const {
    ExpressionMatrix out;
    out.sample_ids = sample_ids;
    for (auto c : cols) {
        out.feature_ids.push_back(feature_ids[c]);
    }
    out.values = values.select_cols(cols);
    if (!missing.empty()) {
        out.missing.resize(samples() * cols.size());
        for (std::size_t i = 0; i < samples(); ++i) {
            for (std::size_t j = 0; j < cols.size(); ++j) {
                out.missing[i * cols.size() + j] = missing[i * features() + cols[j]];
            }
        }
    }
    return out;
}

const std::vector<std::string>& ViewSet::sample_ids() const {
    static const std::vector<std::string> none;
    return views.empty() ? none : views.front().data.sample_ids;
}

Matrix ViewSet::concatenated() const {
    if (views.size() == 1) {
        return views.front().data.values;
    }
    std::vector<Matrix> blocks;
    blocks.reserve(views.size());
    for (const auto& v : views) {
        blocks.push_back(v.data.values);
    }
    return Matrix::hstack(blocks);
}

ViewSet ViewSet::select_samples(std::span<const std::size_t> rows) const {
    ViewSet out;
    for (const auto& v : views) {
        out.views.push_back({v.name, v.data.select_samples(rows)});
    }
    return out;
}

void ViewSet::validate() const {
    if (views.empty()) {
        throw DataError("view set is empty");
    }
    for (const auto& v : views) {
        v.data.validate();
        if (v.data.sample_ids != views.front().data.sample_ids) {
            throw DataError("view '" + v.name + "' does not share the cohort's sample order");
        }
        if (v.data.has_missing()) {
            throw DataError("view '" + v.name + "' still has missing values");
        }
    }
}

ExpressionMatrix load_expression_matrix(const std::filesystem::path& path, Orientation orientation) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    const std::string where = path.string();

    std::string line;
    std::size_t lineno = 0;
    char delim = ',';
    std::vector<std::string> col_ids;
    std::vector<std::string> row_ids;
    std::vector<double> cells;
    std::vector<std::uint8_t> na;
    std::unordered_set<std::string> seen_rows;
    bool any_na = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        if (col_ids.empty()) {
            delim = line.find('\t') != std::string::npos ? '\t' : ',';
            auto header = csv::split(line, delim);
            if (header.size() < 2) {
                throw ParseError(where, lineno, "header needs an ID corner cell and at least one column ID");
            }
            std::unordered_set<std::string> seen;
            for (std::size_t c = 1; c < header.size(); ++c) {
                std::string id(header[c]);
                if (!seen.insert(id).second) {
                    throw ParseError(where, lineno, "duplicate ID '" + id + "' in header");
                }
                col_ids.push_back(std::move(id));
            }
            continue;
        }
        auto parts = csv::split(line, delim);
        if (parts.size() != col_ids.size() + 1) {
            throw ParseError(where, lineno,
                             "ragged row: expected " + std::to_string(col_ids.size() + 1) + " cells, found " +
                                 std::to_string(parts.size()));
        }
        std::string id(parts[0]);
        if (!seen_rows.insert(id).second) {
            throw ParseError(where, lineno, "duplicate ID '" + id + "'");
        }
        row_ids.push_back(std::move(id));
        for (std::size_t c = 1; c < parts.size(); ++c) {
            double v = 0;
            if (parts[c] == "NA") {
                na.push_back(1);
                any_na = true;
                cells.push_back(0.0);
                continue;
            }
            if (!csv::parse_number(parts[c], v)) {
                throw ParseError(where, lineno, "non-numeric cell '" + std::string(parts[c]) + "'");
            }
            na.push_back(0);
            cells.push_back(v);
        }
    }
    if (col_ids.empty()) {
        throw DataError(where + ": file is empty");
    }
    if (row_ids.empty()) {
        throw DataError(where + ": no data rows");
    }

    ExpressionMatrix out;
    Matrix raw(row_ids.size(), col_ids.size(), std::move(cells));
    if (orientation == Orientation::samples_as_rows) {
        out.sample_ids = std::move(row_ids);
        out.feature_ids = std::move(col_ids);
        out.values = std::move(raw);
        if (any_na) {
            out.missing = std::move(na);
        }
    } else {
        out.sample_ids = std::move(col_ids);
        out.feature_ids = std::move(row_ids);
        out.values = raw.transpose();
        if (any_na) {
            const std::size_t nf = out.features();
            const std::size_t ns = out.samples();
            out.missing.assign(ns * nf, 0);
            for (std::size_t f = 0; f < nf; ++f) {
                for (std::size_t s = 0; s < ns; ++s) {
                    out.missing[s * nf + f] = na[f * ns + s];
                }
            }
        }
    }
    return out;
}

void write_expression_matrix(const std::filesystem::path& path, const ExpressionMatrix& x, Orientation orientation,
                             char delimiter) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    const bool by_feature = orientation == Orientation::features_as_rows;
    const auto& cols = by_feature ? x.sample_ids : x.feature_ids;
    const auto& rows = by_feature ? x.feature_ids : x.sample_ids;
    out << (by_feature ? "feature_id" : "sample_id");
    for (const auto& id : cols) {
        out << delimiter << id;
    }
    out << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << rows[r];
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::size_t s = by_feature ? c : r;
            const std::size_t f = by_feature ? r : c;
            out << delimiter;
            if (x.is_missing(s, f)) {
                out << "NA";
            } else {
                out << csv::format_number(x.values(s, f));
            }
        }
        out << '\n';
    }
    if (!out) {
        throw DataError("write failed for " + path.string());
    }
}

ViewSet merge_views(std::vector<View> views) {
    if (views.empty()) {
        throw DataError("merge_views: no views supplied");
    }
    for (const auto& v : views) {
        v.data.validate();
    }

    std::vector<std::string> shared = views.front().data.sample_ids;
    std::sort(shared.begin(), shared.end());
    for (std::size_t v = 1; v < views.size(); ++v) {
        std::vector<std::string> other = views[v].data.sample_ids;
        std::sort(other.begin(), other.end());
        std::vector<std::string> both;
        std::set_intersection(shared.begin(), shared.end(), other.begin(), other.end(), std::back_inserter(both));
        shared = std::move(both);
    }
    if (shared.size() < 2) {
        throw DataError("views share " + std::to_string(shared.size()) + " sample(s); at least 2 are required");
    }

    ViewSet out;
    for (auto& v : views) {
        std::unordered_map<std::string_view, std::size_t> position;
        for (std::size_t i = 0; i < v.data.sample_ids.size(); ++i) {
            position.emplace(v.data.sample_ids[i], i);
        }
        std::vector<std::size_t> rows;
        rows.reserve(shared.size());
        for (const auto& id : shared) {
            rows.push_back(position.at(id));
        }
        ExpressionMatrix restricted = v.data.select_samples(rows);

        std::vector<std::size_t> complete;
        for (std::size_t f = 0; f < restricted.features(); ++f) {
            bool ok = true;
            for (std::size_t s = 0; s < restricted.samples() && ok; ++s) {
                ok = !restricted.is_missing(s, f);
            }
            if (ok) {
                complete.push_back(f);
            }
        }
        if (complete.empty()) {
            throw DataError("view '" + v.name + "' has no feature without missing values on the shared samples");
        }
        ExpressionMatrix clean = restricted.select_features(complete);
        clean.missing.clear();
        out.views.push_back({v.name, std::move(clean)});
    }
    return out;
}

std::vector<double> feature_variances(const ExpressionMatrix& x) {
    const std::size_t n = x.samples();
    const std::size_t p = x.features();
    if (n < 2) {
        throw DataError("variance needs at least 2 samples");
    }
    std::vector<double> mean(p, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        auto row = x.values.row(s);
        for (std::size_t f = 0; f < p; ++f) {
            mean[f] += row[f];
        }
    }
    for (double& m : mean) {
        m /= static_cast<double>(n);
    }
    std::vector<double> var(p, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        auto row = x.values.row(s);
        for (std::size_t f = 0; f < p; ++f) {
            const double d = row[f] - mean[f];
            var[f] += d * d;
        }
    }
    for (double& v : var) {
        v /= static_cast<double>(n - 1);
    }
    return var;
}

std::vector<std::size_t> rank_by_variance(std::span<const double> variances, std::span<const std::string> ids) {
    std::vector<std::size_t> order(variances.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (variances[a] != variances[b]) {
            return variances[a] > variances[b];
        }
        return ids[a] < ids[b];
    });
    return order;
}

VarianceSelection select_by_variance(const ExpressionMatrix& x, std::size_t n_top) {
    if (n_top < 1 || n_top > x.features()) {
        throw ConfigError("n_top=" + std::to_string(n_top) + " outside [1, " + std::to_string(x.features()) + "]");
    }
    if (x.has_missing()) {
        throw DataError("variance selection requires a matrix without missing values");
    }
    const auto var = feature_variances(x);
    const auto order = rank_by_variance(var, x.feature_ids);

    std::vector<std::uint8_t> kept(x.features(), 0);
    for (std::size_t i = 0; i < n_top; ++i) {
        kept[order[i]] = 1;
    }
    std::vector<std::size_t> cols;
    double total = 0;
    double kept_total = 0;
    for (std::size_t f = 0; f < x.features(); ++f) {
        total += var[f];
        if (kept[f]) {
            cols.push_back(f);
            kept_total += var[f];
        }
    }

    VarianceSelection out;
    out.matrix = x.select_features(cols);
    out.report.feature_ids = x.feature_ids;
    out.report.variances = var;
    out.report.kept = std::move(kept);
    out.report.kept_feature_ids = out.matrix.feature_ids;
    out.report.variance_explained = total > 0 ? kept_total / total : 1.0;
    return out;
}

void log_transform(ExpressionMatrix& x) {
    for (std::size_t s = 0; s < x.samples(); ++s) {
        for (std::size_t f = 0; f < x.features(); ++f) {
            if (x.is_missing(s, f)) {
                continue;
            }
            double& v = x.values(s, f);
            if (!(v > -1.0)) {
                throw DataError("log transform: value " + csv::format_number(v) + " at sample '" + x.sample_ids[s] +
                                "', feature '" + x.feature_ids[f] + "' is <= -1");
            }
            v = std::log2(v + 1.0);
        }
    }
}

void standardize_features(ExpressionMatrix& x) {
    const auto var = feature_variances(x);
    const std::size_t n = x.samples();
    for (std::size_t f = 0; f < x.features(); ++f) {
        double mean = 0;
        for (std::size_t s = 0; s < n; ++s) {
            mean += x.values(s, f);
        }
        mean /= static_cast<double>(n);
        const double sd = std::sqrt(var[f]);
        for (std::size_t s = 0; s < n; ++s) {
            double& v = x.values(s, f);
            v = sd > 0 ? (v - mean) / sd : 0.0;
        }
    }
}

void write_selection_report(const std::filesystem::path& path, const SelectionReport& report) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.feature_ids.size());
    for (std::size_t f = 0; f < report.feature_ids.size(); ++f) {
        rows.push_back({report.feature_ids[f], csv::format_number(report.variances[f]), report.kept[f] ? "1" : "0"});
    }
    csv::write_table(path, {"feature_id", "variance", "kept"}, rows);
}

}
