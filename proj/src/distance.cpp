#include "cclust/distance.hpp"

#include <cmath>
#include <string>

#include "cclust/error.hpp"
#include "cclust/kernels.hpp"

namespace cclust {

std::string_view to_string(Metric m) noexcept {
    switch (m) {
    case Metric::euclidean:
        return "euclidean";
    case Metric::squared_euclidean:
        return "squared_euclidean";
    case Metric::correlation:
        return "correlation";
    }
    return "unknown";
}

Metric parse_metric(std::string_view text) {
    for (Metric m : {Metric::euclidean, Metric::squared_euclidean, Metric::correlation}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    throw ConfigError("unknown distance metric '" + std::string(text) + "'");
}

namespace {

Matrix centred_unit_rows(const Matrix& x) {
    Matrix z = x;
    const double p = static_cast<double>(x.cols());
    for (std::size_t r = 0; r < z.rows(); ++r) {
        auto row = z.row(r);
        double mean = 0;
        for (double v : row) {
            mean += v;
        }
        mean /= p;
        double ss = 0;
        for (double& v : row) {
            v -= mean;
            ss += v * v;
        }
        if (!(ss > 0)) {
            throw DataError("row " + std::to_string(r) + " has zero variance; correlation distance is undefined");
        }
        const double inv = 1.0 / std::sqrt(ss);
        for (double& v : row) {
            v *= inv;
        }
    }
    return z;
}

}

SymmetricMatrix pairwise_distances(const Matrix& x, Metric metric) {
    if (x.rows() == 0 || x.cols() == 0) {
        throw DataError("pairwise_distances: empty input matrix");
    }
    const std::size_t n = x.rows();
    const Matrix& src = x;
    Matrix z;
    if (metric == Metric::correlation) {
        z = centred_unit_rows(x);
    }
    const Matrix& rows = metric == Metric::correlation ? z : src;

    SymmetricMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ri = rows.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sq = kernels::squared_distance(ri, rows.row(j));
            double d = sq;
            switch (metric) {
            case Metric::euclidean:
                d = std::sqrt(sq);
                break;
            case Metric::squared_euclidean:
                break;
            case Metric::correlation:
                d = 0.5 * sq;
                break;
            }
            out.set(i, j, d);
        }
    }
    return out;
}

void check_distance_matrix(const SymmetricMatrix& d) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (d(i, i) != 0.0) {
            throw DataError("distance matrix has nonzero diagonal at " + std::to_string(i));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = d(i, j);
            if (!std::isfinite(v) || v < 0) {
                throw DataError("distance matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") is negative or not finite");
            }
        }
    }
}

}
