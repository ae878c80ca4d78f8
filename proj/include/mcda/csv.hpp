#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mcda/dataset.hpp"
#include "mcda/errors.hpp"
#include "mcda/subspace.hpp"
#include "mcda/text_format.hpp"
#include "mcda/types.hpp"

namespace mcda {

/// CSV dialect: comma separated, first row header, decimal point, no
/// quoting. A single-label file has one integer column named `label`; a
/// multi-label file has binary columns prefixed `label_`. Every other
/// column is a numeric feature, kept in header order. Rows are points and
/// are transposed into the internal column-per-point layout.
enum class CsvSchema { auto_detect, single_label, multi_label };

template <typename Scalar>
using AnyDataset = std::variant<LabeledDataset<Scalar>, MultiLabelDataset<Scalar>>;

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ' || cell.back() == '\t'))
            cell.pop_back();
        std::size_t start = 0;
        while (start < cell.size() && (cell[start] == ' ' || cell[start] == '\t')) ++start;
        cells.push_back(cell.substr(start));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline double parse_double_cell(const std::string& cell, long line_no,
                                const std::string& column) {
    double value = 0;
    const auto* begin = cell.data();
    const auto* end = cell.data() + cell.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end)
        throw DataError("NonNumericCell: line " + std::to_string(line_no) + ", column '" +
                        column + "': '" + cell + "'");
    return value;
}

inline long parse_int_cell(const std::string& cell, long line_no, const std::string& column) {
    long value = 0;
    const auto* begin = cell.data();
    const auto* end = cell.data() + cell.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end)
        throw DataError(cell.empty()
                            ? "MissingLabel: line " + std::to_string(line_no) + ", column '" +
                                  column + "' is empty"
                            : "BadLabel: line " + std::to_string(line_no) + ", column '" +
                                  column + "': '" + cell + "' is not an integer");
    return value;
}

}  // namespace detail

template <typename Scalar>
AnyDataset<Scalar> load_csv(const std::string& path, CsvSchema schema = CsvSchema::auto_detect) {
    std::ifstream in(path);
    if (!in) throw DataError("CannotOpen: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("EmptyFile: " + path);
    const auto header = detail::split_csv_line(line);

    std::vector<std::size_t> feature_cols, label_cols;
    long single_label_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "label") {
            if (single_label_col >= 0)
                throw DataError("DuplicateLabelColumn: " + path + " has two 'label' columns");
            single_label_col = static_cast<long>(c);
        } else if (header[c].rfind("label_", 0) == 0) {
            label_cols.push_back(c);
        } else {
            feature_cols.push_back(c);
        }
    }
    if (single_label_col >= 0 && !label_cols.empty())
        throw DataError("AmbiguousSchema: " + path + " mixes 'label' and 'label_*' columns");
    const bool multi = single_label_col < 0;
    if (multi && label_cols.empty())
        throw DataError("MissingLabelColumn: " + path + " has neither 'label' nor 'label_*'");
    if (schema == CsvSchema::single_label && multi)
        throw DataError("SchemaMismatch: " + path + " is not a single-label file");
    if (schema == CsvSchema::multi_label && !multi)
        throw DataError("SchemaMismatch: " + path + " is not a multi-label file");
    if (feature_cols.empty()) throw DataError("NoFeatureColumns: " + path);

    std::vector<std::vector<double>> rows;
    std::vector<long> labels;
    std::vector<std::vector<int>> indicators;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError("RowLengthMismatch: line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header.size()));
        std::vector<double> row;
        row.reserve(feature_cols.size());
        for (const auto c : feature_cols)
            row.push_back(detail::parse_double_cell(cells[c], line_no, header[c]));
        rows.push_back(std::move(row));
        if (!multi) {
            const auto c = static_cast<std::size_t>(single_label_col);
            const long lab = detail::parse_int_cell(cells[c], line_no, header[c]);
            if (lab < 1)
                throw DataError("BadLabel: line " + std::to_string(line_no) +
                                ": class ids start at 1, got " + std::to_string(lab));
            labels.push_back(lab);
        } else {
            std::vector<int> ind;
            ind.reserve(label_cols.size());
            int row_sum = 0;
            for (const auto c : label_cols) {
                const long v = detail::parse_int_cell(cells[c], line_no, header[c]);
                if (v != 0 && v != 1)
                    throw DataError("MalformedIndicator: line " + std::to_string(line_no) +
                                    ", column '" + header[c] + "': value " + std::to_string(v) +
                                    " is not 0 or 1");
                ind.push_back(static_cast<int>(v));
                row_sum += static_cast<int>(v);
            }
            if (row_sum == 0) throw UnlabeledRow(line_no);
            indicators.push_back(std::move(ind));
        }
    }
    if (rows.empty()) throw DataError("EmptyDataset: " + path + " has no data rows");

    const auto n = static_cast<Index>(rows.size());
    const auto p = static_cast<Index>(feature_cols.size());
    MatrixX<Scalar> features(p, n);
    for (Index i = 0; i < n; ++i)
        for (Index d = 0; d < p; ++d)
            features(d, i) = static_cast<Scalar>(
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)]);

    if (!multi) {
        long max_label = 0;
        for (const auto lab : labels) max_label = std::max(max_label, lab);
        VectorXi label_vec(n);
        for (Index i = 0; i < n; ++i)
            label_vec[i] = static_cast<int>(labels[static_cast<std::size_t>(i)]);
        return LabeledDataset<Scalar>(std::move(features), std::move(label_vec),
                                      static_cast<int>(max_label));
    }
    MatrixXi indicator(n, static_cast<Index>(label_cols.size()));
    for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < indicator.cols(); ++k)
            indicator(i, k) = indicators[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    return MultiLabelDataset<Scalar>(std::move(features), std::move(indicator));
}

template <typename Scalar>
LabeledDataset<Scalar> load_labeled_csv(const std::string& path) {
    return std::get<LabeledDataset<Scalar>>(load_csv<Scalar>(path, CsvSchema::single_label));
}

template <typename Scalar>
MultiLabelDataset<Scalar> load_multilabel_csv(const std::string& path) {
    return std::get<MultiLabelDataset<Scalar>>(load_csv<Scalar>(path, CsvSchema::multi_label));
}

namespace detail {

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("CannotWrite: " + path);
    return out;
}

}  // namespace detail

template <typename Scalar>
void write_csv(const LabeledDataset<Scalar>& data, const std::string& path) {
    auto out = detail::open_for_write(path);
    for (Index d = 0; d < data.dim(); ++d) out << "f_" << (d + 1) << ",";
    out << "label\n";
    for (Index i = 0; i < data.size(); ++i) {
        for (Index d = 0; d < data.dim(); ++d)
            out << detail::format_double(double(data.features(d, i))) << ",";
        out << data.labels[i] << "\n";
    }
    if (!out) throw DataError("CannotWrite: " + path);
}

template <typename Scalar>
void write_csv(const MultiLabelDataset<Scalar>& data, const std::string& path) {
    auto out = detail::open_for_write(path);
    for (Index d = 0; d < data.dim(); ++d) out << "f_" << (d + 1) << ",";
    for (Index k = 0; k < data.indicator.cols(); ++k)
        out << "label_" << (k + 1) << (k + 1 < data.indicator.cols() ? "," : "\n");
    for (Index i = 0; i < data.size(); ++i) {
        for (Index d = 0; d < data.dim(); ++d)
            out << detail::format_double(double(data.features(d, i))) << ",";
        for (Index k = 0; k < data.indicator.cols(); ++k)
            out << data.indicator(i, k) << (k + 1 < data.indicator.cols() ? "," : "\n");
    }
    if (!out) throw DataError("CannotWrite: " + path);
}

/// Projected coordinates G^T X plus the label column(s): the file external
/// plotting consumes. Columns dim_1..dim_k then label / label_1..label_K.
template <typename Scalar>
void dump_projection(const LabeledDataset<Scalar>& data, const Projection<Scalar>& projection,
                     const std::string& path) {
    const MatrixX<Scalar> reduced = projection.apply(data.features);
    auto out = detail::open_for_write(path);
    for (Index d = 0; d < reduced.rows(); ++d) out << "dim_" << (d + 1) << ",";
    out << "label\n";
    for (Index i = 0; i < reduced.cols(); ++i) {
        for (Index d = 0; d < reduced.rows(); ++d)
            out << detail::format_double(double(reduced(d, i))) << ",";
        out << data.labels[i] << "\n";
    }
    if (!out) throw DataError("CannotWrite: " + path);
}

template <typename Scalar>
void dump_projection(const MultiLabelDataset<Scalar>& data, const Projection<Scalar>& projection,
                     const std::string& path) {
    const MatrixX<Scalar> reduced = projection.apply(data.features);
    auto out = detail::open_for_write(path);
    for (Index d = 0; d < reduced.rows(); ++d) out << "dim_" << (d + 1) << ",";
    for (Index k = 0; k < data.indicator.cols(); ++k)
        out << "label_" << (k + 1) << (k + 1 < data.indicator.cols() ? "," : "\n");
    for (Index i = 0; i < reduced.cols(); ++i) {
        for (Index d = 0; d < reduced.rows(); ++d)
            out << detail::format_double(double(reduced(d, i))) << ",";
        for (Index k = 0; k < data.indicator.cols(); ++k)
            out << data.indicator(i, k) << (k + 1 < data.indicator.cols() ? "," : "\n");
    }
    if (!out) throw DataError("CannotWrite: " + path);
}

/// The transformation matrix itself (p rows, k columns g_1..g_k).
template <typename Scalar>
void write_projection_matrix(const MatrixX<Scalar>& g, const std::string& path) {
    auto out = detail::open_for_write(path);
    for (Index j = 0; j < g.cols(); ++j)
        out << "g_" << (j + 1) << (j + 1 < g.cols() ? "," : "\n");
    for (Index i = 0; i < g.rows(); ++i)
        for (Index j = 0; j < g.cols(); ++j)
            out << detail::format_double(double(g(i, j))) << (j + 1 < g.cols() ? "," : "\n");
    if (!out) throw DataError("CannotWrite: " + path);
}

template <typename Scalar>
MatrixX<Scalar> load_projection_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("CannotOpen: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("EmptyFile: " + path);
    const auto header = detail::split_csv_line(line);
    std::vector<std::vector<double>> rows;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError("RowLengthMismatch: line " + std::to_string(line_no));
        std::vector<double> row;
        for (std::size_t c = 0; c < cells.size(); ++c)
            row.push_back(detail::parse_double_cell(cells[c], line_no, header[c]));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("EmptyFile: " + path + " has no data rows");
    MatrixX<Scalar> g(static_cast<Index>(rows.size()), static_cast<Index>(header.size()));
    for (Index i = 0; i < g.rows(); ++i)
        for (Index j = 0; j < g.cols(); ++j)
            g(i, j) = static_cast<Scalar>(
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return g;
}

}  // namespace mcda
