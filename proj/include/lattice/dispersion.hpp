#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lattice/circulant.hpp"

namespace lattice {

/// f(k) = |omega(k)| together with the first four k-derivatives and the
/// continuous branch of theta = arg omega with theta(0) = pi/2.
struct DispersionJet {
    double k = 0.0;
    double f = 0.0;
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
    double theta = 0.0;
};

/// Frequency part of the jet only (no tau, hence no theta). Enough for all
/// stationary-point and concavity work.
struct FrequencyJet {
    double f = 0.0;
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
};

struct AiryConstants {
    double v0 = 0.0;       // sound speed, f'(0)/(2 pi)
    double lambda0 = 0.0;  // Airy width scale
};

struct DegeneratePoint {
    double kstar = 0.0;
    double vstar = 0.0;       // f'(k*)/(2 pi)
    double lambdastar = 0.0;  // (1/2pi) (|f''''(k*)|/4!)^{1/4}
    int sign = 0;             // sign of f''''(k*)
    int order = 0;            // vanishing derivatives among f'', f''' at k*
};

struct StationaryPoint {
    double k = 0.0;
    int branch = 0;  // +1: f'(k) = +2 pi xi, -1: f'(k) = -2 pi xi
    int order = 0;   // first ell >= 2 with f^(ell)(k) != 0 (0 if unresolved)
};

std::complex<double> omega_eval(double k, const LocalSquareRoot& sq);

FrequencyJet frequency_jet(double k, const CouplingVector& c);

/// Continuous branch of arg omega with theta(0) = pi/2, accumulated along a
/// fine walk from k = 0.
double theta_branch(double k, const LocalSquareRoot& sq);

DispersionJet dispersion_jet(double k, const CouplingVector& c,
                             const LocalSquareRoot& sq);

AiryConstants airy_constants(const CouplingVector& c);

/// All k in (0, 1/2] with f'(k) = +-2 pi xi, classified by the first
/// nonvanishing higher derivative. Empty when |xi| > v0.
std::vector<StationaryPoint> stationary_points(const CouplingVector& c,
                                               const LocalSquareRoot& sq,
                                               double xi);

struct DegenerateFamily {
    CouplingVector couplings;
    bool quartic_nondegenerate = false;  // f''''(1/2) != 0
};

/// Completes kappa_1..kappa_{m-1} with the kappa_m that forces f''(1/2) = 0.
DegenerateFamily degenerate_family_half(const std::vector<double>& kappa_partial);

/// Certifies k* = 1/2 as an order-2 degenerate point of the given couplings
/// (f''(1/2) ~ 0, f''''(1/2) != 0), if it is one.
std::optional<DegeneratePoint> degenerate_point_half(const CouplingVector& c);

struct InteriorDegeneracy {
    CouplingVector couplings;  // one designated coupling adjusted
    DegeneratePoint point;
};

/// Newton iteration on (f'', f''')(k, kappa_adj) = 0 from the given seed,
/// adjusting kappa_3 when m = 3 and kappa_4 when m >= 4. Empty on failure.
std::optional<InteriorDegeneracy> degenerate_family_interior(
    const CouplingVector& c, double k_seed);

/// True iff f'' < -tol on a dense grid of (0, 1/2] with local refinement at
/// interior maxima of f''.
bool concavity_check(const CouplingVector& c);

}  // namespace lattice
