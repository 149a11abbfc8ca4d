#include "wnk/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace wnk {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (res.ec != std::errc())
        throw std::runtime_error("fmt_double: formatting failed");
    return {buf, res.ptr};
}

std::string coeffs_to_json(std::string_view convention, std::span<const double> coeffs) {
    nlohmann::json j;
    j["convention"] = convention;
    j["K"] = coeffs.size();
    j["coeffs"] = std::vector<double>(coeffs.begin(), coeffs.end());
    return j.dump();
}

std::string test_function_to_json(const TestFunction& phi) {
    return coeffs_to_json(kCoeffConvention, phi.coeffs());
}

std::string distribution_to_json(const DistributionVector& x) {
    return coeffs_to_json(kCoeffConvention, x.coeffs());
}

namespace {

std::pair<BasisConfig, std::vector<double>> parse_coeff_json(const std::string& text,
                                                             int quadrature_order) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("coefficient file: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("convention") || !j.contains("K") || !j.contains("coeffs"))
        throw std::invalid_argument("coefficient file: missing convention/K/coeffs");
    const auto convention = j["convention"].get<std::string>();
    if (convention != kCoeffConvention)
        throw std::invalid_argument("coefficient file: unknown convention tag '" + convention +
                                    "'");
    const int K = j["K"].get<int>();
    auto coeffs = j["coeffs"].get<std::vector<double>>();
    if (static_cast<int>(coeffs.size()) != K)
        throw std::invalid_argument("coefficient file: K does not match coefficient count");
    return {make_basis(K, quadrature_order), std::move(coeffs)};
}

}  // namespace

TestFunction test_function_from_json(const std::string& text, int quadrature_order) {
    auto [basis, coeffs] = parse_coeff_json(text, quadrature_order);
    return {basis, std::move(coeffs)};
}

DistributionVector distribution_from_json(const std::string& text, int quadrature_order) {
    auto [basis, coeffs] = parse_coeff_json(text, quadrature_order);
    return {basis, std::move(coeffs)};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw io_error("write failed: " + path);
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
    if (header.empty()) throw std::invalid_argument("CsvTable: empty header");
    rows_.push_back(std::move(header));
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != width_) throw std::invalid_argument("CsvTable: row width mismatch");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace wnk
