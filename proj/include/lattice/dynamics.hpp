#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lattice/circulant.hpp"
#include "lattice/correlations.hpp"
#include "lattice/rng.hpp"

namespace lattice {

/// Point of the reduced phase space: sum p = sum q = 0, r = T q.
struct ChainState {
    std::vector<double> p, q, r;
    double time = 0.0;

    int size() const { return static_cast<int>(p.size()); }
};

struct NonlinearModel {
    ChainModel base;
    double chi = 0.0;    // cubic strength
    double gamma = 0.0;  // quartic strength, >= 0 so the well is confining

    bool is_linear() const { return chi == 0.0 && gamma == 0.0; }
    void validate() const;
};

struct EnsembleSpec {
    long replicas = 0;
    std::uint64_t seed = 0;
    int n = 0;  // odd chain length
    double beta = 1.0;
    double dt = 0.02;
    /// Requested entries; their t values define the snapshot times.
    std::vector<CorrelationIndex> observables;
};

/// Draws (p, q, r) from the Gibbs measure in Fourier variables: mode 0
/// pinned to zero, independent Gaussians of variance 1/(2 beta) for the
/// momentum components and 1/(2 beta |omega_j|^2) for the position ones.
ChainState gibbs_sample(const ChainModel& model, int n, double beta,
                        SplitMix64& rng);

/// Exact harmonic evolution by mode rotation; returns the state at
/// state.time + t.
ChainState harmonic_propagate(const ChainState& state, double t,
                              const ChainModel& model);

/// F_j = -dH/dq_j for the cubic/quartic perturbed Hamiltonian; reduces to
/// -A q when chi = gamma = 0.
std::vector<double> nonlinear_force(std::span<const double> q,
                                    const NonlinearModel& model);

/// Velocity-Verlet trajectory (state at every step, initial included).
/// Throws BlowUp when |q|_max exceeds 1e6.
std::vector<ChainState> integrate(const ChainState& initial,
                                  const NonlinearModel& model, double dt,
                                  long steps);

double harmonic_energy(const ChainState& state);
double nonlinear_energy(const ChainState& state, const NonlinearModel& model);

/// Ensemble estimate of the connected correlations with standard errors.
/// Replicas are independent streams keyed by (seed, replica index); the
/// accumulation order is pinned to ascending replica index, so results are
/// byte-identical for any worker count.
CorrelationDataset mc_correlations(const EnsembleSpec& spec,
                                   const NonlinearModel& model, int threads = 0);

/// Plain single-threaded loop kept as the reference the OpenMP engine is
/// tested against.
CorrelationDataset mc_correlations_reference(const EnsembleSpec& spec,
                                             const NonlinearModel& model);

}  // namespace lattice
