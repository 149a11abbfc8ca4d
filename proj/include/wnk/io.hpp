#ifndef WNK_IO_HPP
#define WNK_IO_HPP

// Serialization: the shared coefficient-vector JSON format, locale-free
// numeric formatting, and a small CSV table writer. All numeric output is
// deterministic: reals are printed with 17 significant digits via
// std::to_chars, so doubles round-trip exactly and repeated runs are
// byte-identical.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wnk/basis.hpp"

namespace wnk {

// File-system failures; maps to CLI exit code 3 and WNK_ERR_IO.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 17 significant digits, '.' decimal point, no locale.
std::string fmt_double(double v);

// {"convention":"lambda=2k+2","K":<int>,"coeffs":[...]} ; readers reject
// unknown convention tags.
std::string coeffs_to_json(std::string_view convention, std::span<const double> coeffs);
std::string test_function_to_json(const TestFunction& phi);
std::string distribution_to_json(const DistributionVector& x);

TestFunction test_function_from_json(const std::string& text, int quadrature_order = 0);
DistributionVector distribution_from_json(const std::string& text, int quadrature_order = 0);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::string str() const;

    static std::string cell(double v) { return fmt_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::int64_t v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(std::string v) { return v; }

private:
    std::size_t width_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace wnk

#endif
