#pragma once

#include <cstdint>
#include <iosfwd>

// Randomized property suites; returns the number of failed checks.
int run_selftest(std::uint64_t seed, std::ostream& out);
