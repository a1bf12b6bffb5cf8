#pragma once

#include <iosfwd>

#include "ks/exponents.hpp"

namespace ks {

// Plain-text summary plus the machine-readable key=value block. Emitted
// fields: covered, lhs, threshold for a classification; a feasibility report
// adds p_floor, p, q_lower, q_upper, q, s, theta1, theta2, kappa1, kappa2,
// f1, f2.
void print_classification(std::ostream& os, const ModelParams& params,
                          const Classification& c);

void print_feasibility(std::ostream& os, const ModelParams& params, FeasibilityCase kind,
                       const Classification& c, const FeasibilityReport& rep);

const char* to_string(FeasibilityCase kind);

} // namespace ks
