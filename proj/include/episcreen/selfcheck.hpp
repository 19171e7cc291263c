#pragma once

#include <string>

namespace episcreen {

// Built-in correctness checks over two tiny hand-verified sequences: support
// counting, minimal windows, generation probabilities, the exact expectation
// engine and the screening verdict, plus normalization and mass-conservation
// invariants. Returns the number of failed checks; appends one line per check
// to log. perturb shifts every computed expectation before comparison, so any
// nonzero value must make the suite fail (negative control for tests).
int run_selfcheck(std::string& log, double perturb = 0.0);

}  // namespace episcreen
