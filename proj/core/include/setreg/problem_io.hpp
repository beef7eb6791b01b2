#pragma once
#include <string>

#include "setreg/geometry.hpp"

namespace setreg {

// On-disk problem description (JSON, schema version 1). Unknown fields are
// rejected so golden inputs stay unambiguous.
struct ProblemFile {
    int dimension = 0;
    std::vector<SetDescriptor> sets;
    Vec reference_point;
    std::vector<Vec> start_points;
    int max_iterations = 20000;
    double stop_displacement = 1e-12;
};

// Parse + validate (reference point must lie in every set, tol 1e-9; all
// vectors must have the declared dimension). Throws ParseError on malformed
// or unknown content, ValidationError on semantic violations.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

std::string serialize_problem(const ProblemFile& pf);
void save_problem(const ProblemFile& pf, const std::string& path);

}  // namespace setreg
