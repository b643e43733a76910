#pragma once

#include <map>
#include <string>
#include <vector>

#include "netgof/common.hpp"

namespace netgof {

// Flat key = value text: one pair per line, '#' comments, no nesting.
// Numeric grid values accept comma lists plus linspace(a,b,k) and
// logspace(a,b,k) shorthands.
std::map<std::string, std::string> parse_config(const std::string& text);

std::vector<double> parse_grid(const std::string& value);
std::vector<int> parse_int_grid(const std::string& value);

struct StudyOutput {
    std::string study;      // power, qq or size
    std::string csv;        // rendered result table
    std::string config_echo; // canonical resolved configuration
};

// Parses the config text, runs the requested study and renders its CSV.
// threads <= 0 means all available; the echo excludes thread count since it
// cannot change the results.
StudyOutput run_study_from_config(const std::string& text, int threads);

} // namespace netgof
