#include "cclust/matrix.hpp"

#include <cmath>
#include <string>

#include "cclust/error.hpp"

namespace cclust {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill) :
    rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values) :
    rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw DataError("matrix value count " + std::to_string(values_.size()) + " does not match " +
                        std::to_string(rows) + "x" + std::to_string(cols));
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t nr = rows.size();
    const std::size_t nc = nr ? rows.front().size() : 0;
    Matrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        if (rows[r].size() != nc) {
            throw DataError("ragged row " + std::to_string(r) + " in matrix literal");
        }
        for (std::size_t c = 0; c < nc; ++c) {
            out(r, c) = rows[r][c];
        }
    }
    return out;
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        auto src = row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> indices) const {
    Matrix out(rows_, indices.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < indices.size(); ++j) {
            out(r, j) = (*this)(r, indices[j]);
        }
    }
    return out;
}

Matrix Matrix::hstack(std::span<const Matrix> blocks) {
    if (blocks.empty()) {
        return {};
    }
    const std::size_t nr = blocks.front().rows();
    std::size_t nc = 0;
    for (const auto& b : blocks) {
        if (b.rows() != nr) {
            throw DataError("hstack: row counts differ");
        }
        nc += b.cols();
    }
    Matrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        auto dst = out.row(r).begin();
        for (const auto& b : blocks) {
            auto src = b.row(r);
            dst = std::copy(src.begin(), src.end(), dst);
        }
    }
    return out;
}

bool Matrix::all_finite() const noexcept {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

double Matrix::frobenius_norm() const noexcept {
    double acc = 0;
    for (double v : values_) {
        acc += v * v;
    }
    return std::sqrt(acc);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DataError("multiply: inner dimensions differ");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto orow = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                orow[j] += aik * brow[j];
            }
        }
    }
    return out;
}

SymmetricMatrix::SymmetricMatrix(std::size_t n, double fill) : full_(n, n, fill) {}

SymmetricMatrix SymmetricMatrix::from_matrix(Matrix m) {
    if (m.rows() != m.cols()) {
        throw DataError("symmetric matrix must be square");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) {
                throw DataError("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
    SymmetricMatrix out;
    out.full_ = std::move(m);
    return out;
}

SymmetricMatrix SymmetricMatrix::symmetrized(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DataError("symmetric matrix must be square");
    }
    const std::size_t n = m.rows();
    SymmetricMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.full_(i, i) = m(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            out.set(i, j, 0.5 * (m(i, j) + m(j, i)));
        }
    }
    return out;
}

SymmetricMatrix SymmetricMatrix::subset(std::span<const std::size_t> indices) const {
    const std::size_t m = indices.size();
    SymmetricMatrix out(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto src = full_.row(indices[i]);
        auto dst = out.full_.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            dst[j] = src[indices[j]];
        }
    }
    return out;
}

}
