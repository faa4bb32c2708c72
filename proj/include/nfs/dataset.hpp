#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nfs {

/// Tabular numeric data: named input attributes plus one output column.
/// Rows are stored row-major. Immutable after construction.
class Dataset {
public:
    /// Throws std::invalid_argument unless rows.size() == names.size() * outputs.size()
    /// and there is at least one row and one attribute.
    Dataset(std::vector<std::string> attribute_names, std::string output_name,
            std::vector<double> rows, std::vector<double> outputs);

    std::size_t size() const noexcept { return outputs_.size(); }
    std::size_t width() const noexcept { return attribute_names_.size(); }

    std::span<const double> row(std::size_t i) const {
        return {rows_.data() + i * width(), width()};
    }
    double at(std::size_t i, std::size_t attribute) const { return rows_[i * width() + attribute]; }
    std::vector<double> column(std::size_t attribute) const;

    std::span<const double> outputs() const noexcept { return outputs_; }
    std::span<const double> flat_rows() const noexcept { return rows_; }

    const std::vector<std::string>& attribute_names() const noexcept { return attribute_names_; }
    const std::string& output_name() const noexcept { return output_name_; }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<std::string> attribute_names_;
    std::string output_name_;
    std::vector<double> rows_;
    std::vector<double> outputs_;
};

struct AttributeStats {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
};

struct DatasetStats {
    std::vector<std::string> input_names;
    std::vector<AttributeStats> inputs;
    std::string output_name;
    AttributeStats output;

    /// Looks up an input or the output column by name; throws std::out_of_range.
    const AttributeStats& operator[](std::string_view name) const;
    bool contains(std::string_view name) const;
};

AttributeStats column_stats(std::span<const double> column);
DatasetStats compute_stats(const Dataset& d);

/// z(x, y) = g1 + g2 - g3 - g4, product Gaussians centred at (m/4, m/4),
/// (3m/4, 3m/4), (m/4, 3m/4) and (3m/4, m/4) with spread sigma.
double four_gausses_surface(double x, double y, double m = 10.0, double sigma = 2.0);

/// grid_n x grid_n samples on [0, m]^2, x varying slowest. Columns are
/// "input 1", "input 2" and "output".
Dataset four_gausses(double m = 10.0, double sigma = 2.0, int grid_n = 21);

/// Comma-separated, header row required, last column is the output.
/// Throws ParseError with 1-based line/column.
Dataset read_csv(std::istream& in);
Dataset load_csv(const std::filesystem::path& path);

/// Shortest round-trip decimal representation for every cell.
void write_csv(const Dataset& d, std::ostream& out);
void save_csv(const Dataset& d, const std::filesystem::path& path);

}  // namespace nfs
