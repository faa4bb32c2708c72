#include "nfs/dataset.hpp"

#include "nfs/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace nfs {

Dataset::Dataset(std::vector<std::string> attribute_names, std::string output_name,
                 std::vector<double> rows, std::vector<double> outputs)
    : attribute_names_(std::move(attribute_names)),
      output_name_(std::move(output_name)),
      rows_(std::move(rows)),
      outputs_(std::move(outputs)) {
    if (attribute_names_.empty()) throw std::invalid_argument("dataset needs at least one input attribute");
    if (outputs_.empty()) throw std::invalid_argument("dataset needs at least one row");
    if (rows_.size() != attribute_names_.size() * outputs_.size())
        throw std::invalid_argument("dataset rows do not match the attribute count");
}

std::vector<double> Dataset::column(std::size_t attribute) const {
    if (attribute >= width()) throw std::out_of_range("attribute index out of range");
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = at(i, attribute);
    return out;
}

const AttributeStats& DatasetStats::operator[](std::string_view name) const {
    for (std::size_t j = 0; j < input_names.size(); ++j)
        if (input_names[j] == name) return inputs[j];
    if (output_name == name) return output;
    throw std::out_of_range("no statistics for attribute '" + std::string(name) + "'");
}

bool DatasetStats::contains(std::string_view name) const {
    if (output_name == name) return true;
    for (const auto& n : input_names)
        if (n == name) return true;
    return false;
}

AttributeStats column_stats(std::span<const double> column) {
    if (column.empty()) throw std::invalid_argument("statistics of an empty column");
    const double n = static_cast<double>(column.size());
    double sum = 0.0;
    for (double v : column) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : column) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / n)};
}

DatasetStats compute_stats(const Dataset& d) {
    DatasetStats s;
    s.input_names = d.attribute_names();
    s.output_name = d.output_name();
    for (std::size_t j = 0; j < d.width(); ++j) s.inputs.push_back(column_stats(d.column(j)));
    s.output = column_stats(d.outputs());
    return s;
}

double four_gausses_surface(double x, double y, double m, double sigma) {
    const double two_s2 = 2.0 * sigma * sigma;
    auto bump = [two_s2](double v, double centre) { return std::exp(-(v - centre) * (v - centre) / two_s2); };
    const double lo = m / 4.0;
    const double hi = 3.0 * m / 4.0;
    return bump(x, lo) * bump(y, lo) + bump(x, hi) * bump(y, hi) - bump(x, lo) * bump(y, hi) -
           bump(x, hi) * bump(y, lo);
}

Dataset four_gausses(double m, double sigma, int grid_n) {
    if (!(sigma > 0.0)) throw std::invalid_argument("four_gausses: sigma must be positive");
    if (grid_n < 2) throw std::invalid_argument("four_gausses: grid_n must be at least 2");
    const auto n = static_cast<std::size_t>(grid_n);
    std::vector<double> rows;
    std::vector<double> outputs;
    rows.reserve(2 * n * n);
    outputs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = m * static_cast<double>(i) / static_cast<double>(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            const double y = m * static_cast<double>(j) / static_cast<double>(n - 1);
            rows.push_back(x);
            rows.push_back(y);
            outputs.push_back(four_gausses_surface(x, y, m, sigma));
        }
    }
    return Dataset({"input 1", "input 2"}, "output", std::move(rows), std::move(outputs));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

Dataset read_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;

    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (trim(line).empty()) continue;
        for (auto field : split_fields(line)) {
            if (field.empty())
                throw ParseError("empty column name", line_no, header.size() + 1);
            header.emplace_back(field);
        }
        break;
    }
    if (header.empty()) throw ParseError("empty file: header row required", line_no == 0 ? 1 : line_no, 0);
    if (header.size() < 2)
        throw ParseError("header needs at least one input column and the output column", line_no, 0);

    const std::size_t width = header.size() - 1;
    std::vector<double> rows;
    std::vector<double> outputs;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no, 0);
        for (std::size_t col = 0; col < fields.size(); ++col) {
            const auto field = fields[col];
            double value = 0.0;
            const auto* end = field.data() + field.size();
            auto [ptr, ec] = std::from_chars(field.data(), end, value);
            if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
                throw ParseError("not a finite number: '" + std::string(field) + "'", line_no, col + 1);
            (col < width ? rows : outputs).push_back(value);
        }
    }
    if (outputs.empty()) throw ParseError("no data rows after the header", line_no, 0);

    std::string output_name = header.back();
    header.pop_back();
    return Dataset(std::move(header), std::move(output_name), std::move(rows), std::move(outputs));
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return read_csv(in);
}

namespace {

void write_number(std::ostream& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("cannot format number");
    out.write(buf, ptr - buf);
}

void write_name(std::ostream& out, const std::string& name) {
    if (name.find_first_of(",\r\n") != std::string::npos)
        throw std::invalid_argument("column name '" + name + "' cannot be written as CSV");
    out << name;
}

}  // namespace

void write_csv(const Dataset& d, std::ostream& out) {
    for (const auto& name : d.attribute_names()) {
        write_name(out, name);
        out << ',';
    }
    write_name(out, d.output_name());
    out << '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (double v : d.row(i)) {
            write_number(out, v);
            out << ',';
        }
        write_number(out, d.outputs()[i]);
        out << '\n';
    }
}

void save_csv(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(d, out);
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace nfs
