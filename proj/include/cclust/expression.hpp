#ifndef CCLUST_EXPRESSION_HPP
#define CCLUST_EXPRESSION_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cclust/matrix.hpp"

namespace cclust {

enum class Orientation { features_as_rows, samples_as_rows };

std::string_view to_string(Orientation o) noexcept;
Orientation parse_orientation(std::string_view text);

/// Samples × features expression values with identifiers.
struct ExpressionMatrix {
    std::vector<std::string> sample_ids;
    std::vector<std::string> feature_ids;
    Matrix values;
    /// Row-major samples × features flags; empty when nothing is missing.
    std::vector<std::uint8_t> missing;

    std::size_t samples() const noexcept { return values.rows(); }
    std::size_t features() const noexcept { return values.cols(); }
    bool has_missing() const noexcept;
    bool is_missing(std::size_t sample, std::size_t feature) const noexcept {
        return !missing.empty() && missing[sample * values.cols() + feature] != 0;
    }

    /// Check dimensions and identifier uniqueness; throws DataError.
    void validate() const;

    ExpressionMatrix select_samples(std::span<const std::size_t> rows) const;
    ExpressionMatrix select_features(std::span<const std::size_t> cols) const;
};

struct View {
    std::string name;
    ExpressionMatrix data;
};

/// Views over one cohort: every view lists the same samples in the same order.
struct ViewSet {
    std::vector<View> views;

    const std::vector<std::string>& sample_ids() const;
    std::size_t sample_count() const noexcept { return views.empty() ? 0 : views.front().data.samples(); }

    /// All views' features side by side.
    Matrix concatenated() const;

    ViewSet select_samples(std::span<const std::size_t> rows) const;

    /// Throws DataError if sample lists differ or any value is missing.
    void validate() const;
};

struct SelectionReport {
    std::vector<std::string> feature_ids;
    std::vector<double> variances;
    std::vector<std::uint8_t> kept;
    std::vector<std::string> kept_feature_ids;
    double variance_explained = 1.0;
};

struct VarianceSelection {
    ExpressionMatrix matrix;
    SelectionReport report;
};

/**
 * Read a tab- or comma-separated matrix with a header row of IDs and an ID
 * column. The delimiter is taken from the header line (tab if present). Cells
 * holding `NA` become missing values; any other non-numeric cell, ragged row
 * or duplicate ID raises ParseError with the offending line.
 */
ExpressionMatrix load_expression_matrix(const std::filesystem::path& path, Orientation orientation);

/// Write in the same format `load_expression_matrix` reads; values round-trip exactly.
void write_expression_matrix(const std::filesystem::path& path, const ExpressionMatrix& x, Orientation orientation,
                             char delimiter = '\t');

/**
 * Restrict views to their shared samples (sorted lexicographically) and drop,
 * per view, every feature with a missing value on those samples.
 */
ViewSet merge_views(std::vector<View> views);

/// Unbiased (n − 1) variance of every feature.
std::vector<double> feature_variances(const ExpressionMatrix& x);

/// Feature indices ordered by descending variance, ties by ascending ID.
std::vector<std::size_t> rank_by_variance(std::span<const double> variances, std::span<const std::string> ids);

/// Keep the `n_top` most variable features, in their input order.
VarianceSelection select_by_variance(const ExpressionMatrix& x, std::size_t n_top);

/// log2(x + 1) in place; values at or below −1 raise DataError.
void log_transform(ExpressionMatrix& x);

/// Centre and scale each feature to unit variance; constant features become zero.
void standardize_features(ExpressionMatrix& x);

/// CSV with columns feature_id, variance, kept.
void write_selection_report(const std::filesystem::path& path, const SelectionReport& report);

}

#endif
