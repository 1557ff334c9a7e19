#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace opnet::acceptance {

struct Options {
    std::uint64_t seed = 742025;
    int threads = 1;
    std::string out_dir;  // CSVs written here when non-empty
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // measured numbers
    std::vector<std::pair<std::string, std::string>> csv_files;  // name -> content
};

/// Runs every acceptance criterion at its pinned tolerance.
std::vector<CriterionResult> run_all(const Options& options);

/// Prints one PASS/FAIL line per criterion, writes CSVs when an output
/// directory is configured, and returns the number of failures.
int run_and_report(const Options& options, std::ostream& out);

}  // namespace opnet::acceptance
