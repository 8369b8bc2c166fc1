#include "cclust/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "cclust/error.hpp"

namespace cclust::csv {

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool parse_number(std::string_view cell, double& out) {
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    if (cell.empty()) {
        return false;
    }
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return res.ec == std::errc() && res.ptr == cell.data() + cell.size() && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(delim, start);
        std::string_view cell = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\r')) {
            cell.remove_prefix(1);
        }
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) {
            cell.remove_suffix(1);
        }
        if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
            cell = cell.substr(1, cell.size() - 2);
        }
        cells.push_back(cell);
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return cells;
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    Table table;
    std::string line;
    std::size_t lineno = 0;
    char delim = ',';
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        if (!have_header) {
            delim = line.find('\t') != std::string::npos ? '\t' : ',';
            for (auto cell : split(line, delim)) {
                table.header.emplace_back(cell);
            }
            have_header = true;
            continue;
        }
        std::vector<std::string> row;
        for (auto cell : split(line, delim)) {
            row.emplace_back(cell);
        }
        table.rows.push_back(std::move(row));
        table.lines.push_back(lineno);
    }
    if (!have_header) {
        throw DataError(path.string() + ": file is empty");
    }
    return table;
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out << ',';
            }
            out << cells[i];
        }
        out << '\n';
    };
    emit(header);
    for (const auto& r : rows) {
        emit(r);
    }
    if (!out) {
        throw DataError("write failed for " + path.string());
    }
}

void write_square(const std::filesystem::path& path, const std::vector<std::string>& ids, const Matrix& m) {
    std::vector<std::string> header{"sample_id"};
    header.insert(header.end(), ids.begin(), ids.end());
    std::vector<std::vector<std::string>> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::string> r{ids[i]};
        for (double v : m.row(i)) {
            r.push_back(format_number(v));
        }
        rows.push_back(std::move(r));
    }
    write_table(path, header, rows);
}

Square read_square(const std::filesystem::path& path) {
    auto table = read_table(path);
    Square sq;
    sq.ids.assign(table.header.begin() + (table.header.empty() ? 0 : 1), table.header.end());
    const std::size_t n = sq.ids.size();
    if (table.rows.size() != n) {
        throw DataError(path.string() + ": expected " + std::to_string(n) + " rows in square matrix");
    }
    sq.values = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = table.rows[i];
        if (r.size() != n + 1) {
            throw ParseError(path.string(), table.lines[i], "expected " + std::to_string(n + 1) + " cells");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!parse_number(r[j + 1], sq.values(i, j))) {
                throw ParseError(path.string(), table.lines[i], "non-numeric cell '" + r[j + 1] + "'");
            }
        }
    }
    return sq;
}

void write_labels(const std::filesystem::path& path, const std::vector<std::string>& ids,
                  const ClusterAssignment& assignment) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        rows.push_back({ids[i], std::to_string(assignment[i])});
    }
    write_table(path, {"sample_id", "cluster"}, rows);
}

Labels read_labels(const std::filesystem::path& path) {
    auto table = read_table(path);
    Labels out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        double v;
        if (r.size() < 2 || !parse_number(r[1], v) || v < 0 || v != std::floor(v)) {
            throw ParseError(path.string(), table.lines[i], "expected sample_id and a nonnegative integer cluster");
        }
        out.ids.push_back(r[0]);
        out.labels.push_back(static_cast<int>(v));
    }
    return out;
}

}
