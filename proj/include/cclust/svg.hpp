#ifndef CCLUST_SVG_HPP
#define CCLUST_SVG_HPP

#include <string>
#include <vector>

#include "cclust/matrix.hpp"

namespace cclust::svg {

/// Square heatmap of values in [0, 1], white (0) to dark blue (1), rows top to bottom.
std::string heatmap(const Matrix& values, const std::string& title);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Step curves on [0, 1] × [0, 1] with a legend.
std::string cdf_plot(const std::vector<Series>& curves, const std::string& title);

/// Horizontal silhouette bars, one block per cluster, widths in [−1, 1].
std::string silhouette_plot(const std::vector<std::vector<double>>& cluster_widths, double asw,
                            const std::string& title);

}

#endif
