#pragma once

#include <complex>

#include "lattice/correlations.hpp"
#include "lattice/dispersion.hpp"

namespace lattice {

/// Airy function Ai(x) on [-40, 40] to absolute error <= 1e-10
/// (Maclaurin series / Poincare asymptotics switching). DomainError outside.
double airy_fn(double x);

namespace detail {
/// Unrestricted evaluator used by the parametrices, whose second Airy term
/// needs arguments far beyond the public domain. Asymptotic regime below -1e10
/// cannot resolve the phase in binary64 and raises DomainError.
double airy_ai(double x);
}  // namespace detail

/// Pearcey integral P_sign(a) = int exp(i(sign y^4 + a y)) dy for real a,
/// |a| <= 100, via steepest-descent legs through the real saddle (the
/// rotated-path representation continued off a = 0). P_- = conj(P_+).
std::complex<double> pearcey_fn(int sign, double a);

/// Airy parametrix of the sound peaks (both counter-propagating terms).
double airy_parametrix(const CorrelationIndex& idx, const ChainModel& model,
                       double beta);

/// Pearcey parametrix at a certified degenerate point: interior case for
/// k* in (0, 1/2), half case (with its (-1)^j factor) for k* = 1/2.
double pearcey_parametrix(const CorrelationIndex& idx, const DegeneratePoint& point,
                          const ChainModel& model, double beta);

}  // namespace lattice
