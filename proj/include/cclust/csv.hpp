#ifndef CCLUST_CSV_HPP
#define CCLUST_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/matrix.hpp"

namespace cclust::csv {

/// Shortest decimal form that parses back to the identical double.
std::string format_number(double v);

/// Parse a whole cell as a finite double (a leading '+' is allowed).
bool parse_number(std::string_view cell, double& out);

/// Split on `delim`, trimming spaces and one pair of surrounding double quotes.
std::vector<std::string_view> split(std::string_view line, char delim);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    /// 1-based source line of each row.
    std::vector<std::size_t> lines;
};

/// Read a delimited file with a header row; blank lines are skipped. The
/// delimiter is tab if the header contains one, else comma.
Table read_table(const std::filesystem::path& path);

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

/// N×N matrix with a `sample_id` corner cell, IDs across the header and down the first column.
void write_square(const std::filesystem::path& path, const std::vector<std::string>& ids, const Matrix& m);

struct Square {
    std::vector<std::string> ids;
    Matrix values;
};

Square read_square(const std::filesystem::path& path);

/// Two columns: sample_id, cluster.
void write_labels(const std::filesystem::path& path, const std::vector<std::string>& ids,
                  const ClusterAssignment& assignment);

struct Labels {
    std::vector<std::string> ids;
    std::vector<int> labels;
};

Labels read_labels(const std::filesystem::path& path);

}

#endif
