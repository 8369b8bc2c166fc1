#ifndef CCLUST_MATRIX_HPP
#define CCLUST_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace cclust {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    /// Build from nested rows; all rows must have equal length.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {values_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {values_.data() + r * cols_, cols_}; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    /// Column `c` copied into a new vector.
    std::vector<double> column(std::size_t c) const;

    Matrix transpose() const;

    /// Rows listed in `indices`, in that order.
    Matrix select_rows(std::span<const std::size_t> indices) const;

    /// Columns listed in `indices`, in that order.
    Matrix select_cols(std::span<const std::size_t> indices) const;

    /// Concatenate matrices with equal row counts side by side.
    static Matrix hstack(std::span<const Matrix> blocks);

    /// True when every value is finite.
    bool all_finite() const noexcept;

    double frobenius_norm() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Matrix product.
Matrix multiply(const Matrix& a, const Matrix& b);

/// Square matrix whose (i, j) and (j, i) entries are always equal; writes go
/// through `set`, which updates both halves.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n, double fill = 0.0);

    /// Validate `m` as exactly symmetric; throws DataError otherwise.
    static SymmetricMatrix from_matrix(Matrix m);

    /// Symmetrize `m` as (m + mᵀ) / 2.
    static SymmetricMatrix symmetrized(const Matrix& m);

    std::size_t size() const noexcept { return full_.rows(); }

    double operator()(std::size_t i, std::size_t j) const noexcept { return full_(i, j); }

    void set(std::size_t i, std::size_t j, double v) noexcept {
        full_(i, j) = v;
        full_(j, i) = v;
    }

    std::span<const double> row(std::size_t i) const noexcept { return full_.row(i); }

    const Matrix& full() const noexcept { return full_; }

    /// Principal submatrix on `indices`.
    SymmetricMatrix subset(std::span<const std::size_t> indices) const;

    /// Simultaneous row/column permutation: result(i, j) = this(perm[i], perm[j]).
    SymmetricMatrix permuted(std::span<const std::size_t> perm) const { return subset(perm); }

    double frobenius_norm() const noexcept { return full_.frobenius_norm(); }

    friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

private:
    Matrix full_;
};

/// Eigenpairs of a symmetric matrix; eigenvalues ascending, eigenvector `j`
/// stored in column `j`.
struct EigenPairs {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

}

#endif
