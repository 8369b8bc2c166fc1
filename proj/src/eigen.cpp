#include "cclust/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cclust/error.hpp"
#include "cclust/kernels.hpp"
#include "cclust/random.hpp"

namespace cclust {

namespace {

double residual_bound(const SymmetricMatrix& s) {
    return 1e-8 * std::max(1.0, s.frobenius_norm());
}

std::vector<double> matvec(const SymmetricMatrix& s, std::span<const double> x) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = kernels::dot(s.row(i), x);
    }
    return out;
}

double norm2(std::span<const double> x) {
    return std::sqrt(kernels::dot(x, x));
}

// Picks `k` entries of an ascending-sorted spectrum from the requested end and
// packs them, still ascending, into an EigenPairs.
EigenPairs select_end(const std::vector<double>& values, const Matrix& vectors_as_rows,
                      const std::vector<std::size_t>& ascending, std::size_t k, SpectrumEnd which) {
    const std::size_t n = vectors_as_rows.cols();
    const std::size_t m = ascending.size();
    const std::size_t first = which == SpectrumEnd::smallest ? 0 : m - k;
    EigenPairs out;
    out.eigenvalues.resize(k);
    out.eigenvectors = Matrix(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = ascending[first + j];
        out.eigenvalues[j] = values[src];
        auto v = vectors_as_rows.row(src);
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, j) = v[r];
        }
    }
    canonicalize_signs(out.eigenvectors);
    return out;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

// Eigenvalues in the diagonal of the returned matrix, eigenvectors as rows of
// `vt`.
std::vector<double> jacobi_sweeps(const SymmetricMatrix& s, Matrix& vt, int max_sweeps) {
    const std::size_t n = s.size();
    Matrix a = s.full();
    vt = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        vt(i, i) = 1.0;
    }
    const double floor = 1e-17 * a.frobenius_norm();

    bool converged = n <= 1;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        std::size_t rotations = 0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double g = 100.0 * std::abs(apq);
                if (std::abs(apq) <= floor ||
                    (std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq))) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }

                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0) {
                        t = -t;
                    }
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                kernels::rotate(a.row(p), a.row(q), c, sn);
                for (std::size_t r = 0; r < n; ++r) {
                    a(r, p) = a(p, r);
                    a(r, q) = a(q, r);
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                kernels::rotate(vt.row(p), vt.row(q), c, sn);
                ++rotations;
            }
        }
        converged = rotations == 0;
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = a(i, i);
    }
    if (!converged) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += 2 * a(i, j) * a(i, j);
            }
        }
        throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps",
                               std::sqrt(off));
    }
    return values;
}

EigenPairs lanczos(const SymmetricMatrix& s, std::size_t k, SpectrumEnd which) {
    const std::size_t n = s.size();
    const double scale = std::max(1.0, s.frobenius_norm());
    const double target = 1e-10 * scale;
    const double bound = residual_bound(s);

    std::size_t m = std::min(n, std::max<std::size_t>(2 * k + 20, 40));
    for (;;) {
        Matrix basis(m, n);
        std::vector<double> alpha(m, 0.0);
        std::vector<double> beta(m, 0.0);
        Rng rng(0x1A2C3B4D5E6F7788ull);

        auto orthogonalize = [&](std::span<double> w, std::size_t upto) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t i = 0; i < upto; ++i) {
                    const double h = kernels::dot(w, basis.row(i));
                    kernels::axpy(-h, basis.row(i), w);
                }
            }
        };
        auto fresh_vector = [&](std::size_t upto) {
            std::vector<double> v(n);
            for (int attempt = 0; attempt < 8; ++attempt) {
                for (double& x : v) {
                    x = uniform01(rng) - 0.5;
                }
                orthogonalize(v, upto);
                const double nv = norm2(v);
                if (nv > 1e-8) {
                    for (double& x : v) {
                        x /= nv;
                    }
                    return v;
                }
            }
            throw NumericalError("Lanczos could not extend an orthonormal basis");
        };

        auto q0 = fresh_vector(0);
        std::copy(q0.begin(), q0.end(), basis.row(0).begin());
        for (std::size_t j = 0; j < m; ++j) {
            auto w = matvec(s, basis.row(j));
            alpha[j] = kernels::dot(w, basis.row(j));
            orthogonalize(w, j + 1);
            if (j + 1 == m) {
                break;
            }
            const double b = norm2(w);
            if (b <= 1e-12 * scale) {
                beta[j] = 0.0;
                auto v = fresh_vector(j + 1);
                std::copy(v.begin(), v.end(), basis.row(j + 1).begin());
            } else {
                beta[j] = b;
                auto next = basis.row(j + 1);
                for (std::size_t r = 0; r < n; ++r) {
                    next[r] = w[r] / b;
                }
            }
        }

        SymmetricMatrix tri(m);
        for (std::size_t j = 0; j < m; ++j) {
            tri.set(j, j, alpha[j]);
            if (j + 1 < m) {
                tri.set(j, j + 1, beta[j]);
            }
        }
        Matrix ut;
        const auto theta = jacobi_sweeps(tri, ut, 100);
        const auto order = ascending_order(theta);

        // Ritz vectors for the requested end, as rows.
        const std::size_t first = which == SpectrumEnd::smallest ? 0 : m - k;
        std::vector<double> values(k);
        std::vector<std::size_t> packed(k);
        Matrix ritz(k, n);
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t src = order[first + j];
            values[j] = theta[src];
            packed[j] = j;
            auto y = ritz.row(j);
            auto u = ut.row(src);
            for (std::size_t i = 0; i < m; ++i) {
                kernels::axpy(u[i], basis.row(i), y);
            }
        }
        auto pairs = select_end(values, ritz, packed, k, SpectrumEnd::smallest);
        const double res = max_residual(s, pairs);
        if (res <= target || m == n) {
            if (res > bound) {
                throw ConvergenceError("Lanczos eigensolver missed the residual bound", res);
            }
            return pairs;
        }
        m = std::min(n, 2 * m);
    }
}

}

void canonicalize_signs(Matrix& vectors) {
    for (std::size_t j = 0; j < vectors.cols(); ++j) {
        for (std::size_t r = 0; r < vectors.rows(); ++r) {
            const double v = vectors(r, j);
            if (std::abs(v) > 1e-12) {
                if (v < 0) {
                    for (std::size_t rr = 0; rr < vectors.rows(); ++rr) {
                        vectors(rr, j) = -vectors(rr, j);
                    }
                }
                break;
            }
        }
    }
}

double max_residual(const SymmetricMatrix& s, const EigenPairs& pairs) {
    double worst = 0;
    const std::size_t n = s.size();
    for (std::size_t j = 0; j < pairs.eigenvalues.size(); ++j) {
        const auto v = pairs.eigenvectors.column(j);
        const auto sv = matvec(s, v);
        double acc = 0;
        for (std::size_t r = 0; r < n; ++r) {
            const double d = sv[r] - pairs.eigenvalues[j] * v[r];
            acc += d * d;
        }
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

EigenPairs jacobi_eigen(const SymmetricMatrix& s, int max_sweeps) {
    Matrix vt;
    const auto values = jacobi_sweeps(s, vt, max_sweeps);
    return select_end(values, vt, ascending_order(values), s.size(), SpectrumEnd::smallest);
}

EigenPairs symmetric_eigen(const SymmetricMatrix& s, std::size_t k, SpectrumEnd which, const EigenOptions& options) {
    const std::size_t n = s.size();
    if (k < 1 || k > n) {
        throw ConfigError("symmetric_eigen: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    if (!s.full().all_finite()) {
        throw DataError("symmetric_eigen: matrix has non-finite entries");
    }

    const bool use_jacobi = options.method == EigenMethod::jacobi ||
                            (options.method == EigenMethod::automatic && n <= options.jacobi_max_n);
    if (!use_jacobi) {
        return lanczos(s, k, which);
    }

    Matrix vt;
    const auto values = jacobi_sweeps(s, vt, options.max_sweeps);
    auto pairs = select_end(values, vt, ascending_order(values), k, which);
    const double res = max_residual(s, pairs);
    if (res > residual_bound(s)) {
        throw ConvergenceError("Jacobi eigensolver missed the residual bound", res);
    }
    return pairs;
}

}
