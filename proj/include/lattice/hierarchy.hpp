#pragma once

#include <vector>

#include "lattice/circulant.hpp"
#include "lattice/dynamics.hpp"

namespace lattice {

/// Conserved charge H_k of the circulant hierarchy. Even kind pairs with the
/// symmetric generator G_k, odd kind with the antisymmetric S_k.
struct ChargeSpec {
    int k = 0;
    ChargeKind kind = ChargeKind::even_type;
};

/// Local density of the charge. Even kind: e_j = (p_j p_{j+k} + r_j r_{j+k})/2.
/// Odd kind: e_j = (sum_l tau_l p_{j+l}) (r_{j+k} - r_{j-k}); its site sum
/// equals twice the operator form p^T T^T S_k T q.
std::vector<double> charge_density(const ChargeSpec& spec, const ChainState& state,
                                   const LocalSquareRoot& sq);

double charge_value(const ChargeSpec& spec, const ChainState& state,
                    const LocalSquareRoot& sq);

/// Max relative drift of H_k along a trajectory.
double conservation_check(const ChargeSpec& spec,
                          const std::vector<ChainState>& trajectory,
                          const LocalSquareRoot& sq);

struct CurrentTriple {
    std::vector<double> jr, jp, je;
};

/// Local currents with u_dot(j) = J(j) - J(j-1) for u = (r, p, e).
CurrentTriple currents(const ChainState& state, const LocalSquareRoot& sq);

/// Time derivatives of r and p from the equations of motion (used by the
/// telescoping checks).
std::vector<double> elongation_rate(const ChainState& state,
                                    const LocalSquareRoot& sq);
std::vector<double> momentum_rate(const ChainState& state,
                                  const LocalSquareRoot& sq);

struct PotentialTrace {
    std::vector<double> times;
    std::vector<double> phi_r, phi_p, phi_e;
};

/// Phi(j, t) = int_0^t J(j) dt' + sum_{l<=j} u(l, 0) by cumulative Simpson
/// over a uniformly sampled trajectory.
PotentialTrace potential_trace(const std::vector<ChainState>& trajectory,
                               long long j, const LocalSquareRoot& sq);

/// Exact harmonic-flow value of Phi_2(j, t) for the nearest-neighbour chain,
/// integrating the elongation mode-by-mode (test oracle for the Simpson
/// route and for the Gaussianity checks).
double phi2_harmonic_exact(const ChainState& initial, long long j, double t,
                           const ChainModel& model);

struct VariancePair {
    double sigma1_sq = 0.0;
    double sigma2_sq = 0.0;
};

/// Quadrature of the closed-form variance integrals of the potential
/// functions for the nearest-neighbour chain.
VariancePair variance_integrals(long long j, double t, double kappa1, double beta);
VariancePair variance_integrals(long long j, double t, const CouplingVector& c,
                                double beta);

}  // namespace lattice
