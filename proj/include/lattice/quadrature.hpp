#pragma once

#include <functional>
#include <vector>

#include "lattice/errors.hpp"

namespace lattice {

/// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};

const GaussRule& gauss_rule(int points);

/// Integrates f over [a, b] with panels sized so that each spans at most
/// pi/4 of phase at the given oscillation rate (|d phase/dk| bound).
/// Throws QuadratureNonConvergence when more than panel_cap panels would be
/// needed; that signals t too large for the exact mode.
double oscillatory_integrate(const std::function<double(double)>& f, double a,
                             double b, double phase_rate, int min_panels = 16,
                             long panel_cap = 2'000'000, int points = 8);

long oscillatory_panel_count(double a, double b, double phase_rate,
                             int min_panels = 16);

}  // namespace lattice
