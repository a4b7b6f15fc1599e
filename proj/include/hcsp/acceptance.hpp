#pragma once

#include <ostream>

namespace hcsp {

/// Runs the full acceptance suite, one pass/fail line per criterion.
/// Returns true iff every criterion passed.
bool run_acceptance_suite(std::ostream& out);

}  // namespace hcsp
