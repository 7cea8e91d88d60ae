// acceptance.hpp — end-to-end acceptance suite: named physics criteria with
// pinned tolerances, runnable from the CLI (`accept`) and from ctest.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcqed {

struct CriterionResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

// Runs every acceptance criterion and returns one result per criterion.
std::vector<CriterionResult> run_acceptance();

// Prints one pass/fail line per criterion; returns true when all passed.
bool run_acceptance_and_print(std::ostream& os);

} // namespace tcqed
