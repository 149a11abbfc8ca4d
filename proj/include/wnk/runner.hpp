#ifndef WNK_RUNNER_HPP
#define WNK_RUNNER_HPP

// Configuration-driven experiment commands. A command takes one JSON config
// object, runs the corresponding experiment, and returns the report JSON,
// the plot-ready CSV table, and the list of failed assertions. Writing files
// is left to the caller (the CLI), so commands are pure functions of the
// config.
//
// Commands: donsker | tightness | minlos | hemicompact | tables.

#include <stdexcept>
#include <string>
#include <vector>

namespace wnk {

// Invalid or inconsistent configuration; maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOutput {
    std::string report_json;
    std::string table_csv;
    std::vector<std::string> failures;  // one entry per failed assertion
};

RunOutput run_command(const std::string& config_json);

}  // namespace wnk

#endif
