// Acceptance suite runner: one pass/fail line per criterion; nonzero exit on
// any failure.

#include <iostream>

#include "tcqed/acceptance.hpp"

int main() {
    return tcqed::run_acceptance_and_print(std::cout) ? 0 : 1;
}
