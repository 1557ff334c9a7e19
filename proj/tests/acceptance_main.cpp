// Dedicated acceptance binary: one PASS/FAIL line per criterion, CSVs under
// ./acceptance_csv, nonzero exit on any failure.
#include <iostream>

#include "opnet/acceptance.hpp"

int main() {
    opnet::acceptance::Options options;
    options.out_dir = "acceptance_csv";
    return opnet::acceptance::run_and_report(options, std::cout);
}
