#ifndef CCLUST_TEST_SUPPORT_HPP
#define CCLUST_TEST_SUPPORT_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/matrix.hpp"
#include "cclust/random.hpp"

namespace testing {

inline cclust::Matrix random_matrix(cclust::Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
    cclust::Matrix m(rows, cols);
    for (auto& v : m.values()) {
        v = scale * cclust::standard_normal(rng);
    }
    return m;
}

/// Symmetric with uniform [0, 1) entries; zero diagonal unless `diag`.
inline cclust::SymmetricMatrix random_affinity(cclust::Rng& rng, std::size_t n, bool diag = false) {
    cclust::SymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = diag ? i : i + 1; j < n; ++j) {
            a.set(i, j, cclust::uniform01(rng));
        }
    }
    return a;
}

inline cclust::ClusterAssignment random_labels(cclust::Rng& rng, std::size_t n, int k) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i)
                                                    : static_cast<int>(cclust::uniform_index(rng, static_cast<std::size_t>(k)));
    }
    return cclust::ClusterAssignment::from_labels(labels);
}

inline cclust::Matrix points_1d(std::initializer_list<double> xs) {
    cclust::Matrix m(xs.size(), 1);
    std::size_t i = 0;
    for (double x : xs) {
        m(i++, 0) = x;
    }
    return m;
}

/// Fresh empty directory under the system temp path.
inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("cclust_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}

#endif
