#pragma once

#include <complex>
#include <span>
#include <vector>

#include "lattice/errors.hpp"

namespace lattice {

/// Spring constants kappa_1..kappa_m of the short-range interaction.
/// kappa_1 > 0, kappa_m > 0, the interior ones nonnegative.
struct CouplingVector {
    int m = 0;
    std::vector<double> kappa;  // kappa[s-1] = kappa_s

    void validate() const;
};

/// Nonzero half a_0..a_m of the m-physical generator of the interaction
/// matrix A: a_0 = 2 sum kappa_s, a_s = -kappa_s.
struct PhysicalGenerator {
    std::vector<double> a;

    int m() const { return static_cast<int>(a.size()) - 1; }
};

/// Generator tau_0..tau_m of the localized square root T, with
/// sum tau_s = 0 and sum s*tau_s = +sqrt(sum s^2 kappa_s).
struct LocalSquareRoot {
    std::vector<double> tau;

    int m() const { return static_cast<int>(tau.size()) - 1; }
};

PhysicalGenerator interaction_generator(const CouplingVector& c);

/// Fejer-Riesz factorization of the symbol of A. Roots of the degree-2m
/// polynomial z^m l(z) are classified against the unit circle; the outside
/// roots and half of the z=1 cluster build Q, whose coefficients are tau.
LocalSquareRoot localized_square_root(const CouplingVector& c);

namespace detail {
/// Classification + assembly step of the factorization, split out so the
/// unit-circle guards can be exercised on synthetic root sets.
LocalSquareRoot tau_from_symbol_roots(const std::vector<std::complex<double>>& roots,
                                      double a0, int m);
}  // namespace detail

/// Embeds the banded half onto Z/NZ (Definition-style m-physical pattern:
/// gen[s] = gen[N-s] = a_s).
std::vector<double> physical_embedding(const PhysicalGenerator& a, int n);
/// gen[s] = tau_s for s <= m, zero beyond.
std::vector<double> half_physical_embedding(const LocalSquareRoot& sq, int n);

/// y_k = sum_j gen_{(j-k) mod N} x_j, skipping zero generator entries.
std::vector<double> apply_circulant(std::span<const double> gen,
                                    std::span<const double> x);

/// Same action through the discrete-Fourier diagonalization; O(N^2),
/// intended as a cross-check of the banded loop.
std::vector<double> apply_circulant_dft(std::span<const double> gen,
                                        std::span<const double> x);

/// r = T q, i.e. r_j = sum_s tau_s (q_{j+s} - q_j).
std::vector<double> elongation(std::span<const double> q,
                               const LocalSquareRoot& sq);

/// (A x)_k without building A: a_0 x_k + sum_s a_s (x_{k+s} + x_{k-s}).
std::vector<double> apply_interaction(const PhysicalGenerator& a,
                                      std::span<const double> x);

/// max-norm of T^T T - A assembled from the generators (autocorrelation of
/// the tau embedding against the a embedding).
double factorization_residual(const LocalSquareRoot& sq,
                              const CouplingVector& c, int n);

/// Model bundle used by the higher-level modules.
struct ChainModel {
    CouplingVector couplings;
    PhysicalGenerator gen;
    LocalSquareRoot sqroot;
};

ChainModel make_chain_model(const CouplingVector& c);

ChainModel preset_nn();        // m=1, kappa=(1)
ChainModel preset_example1();  // m=2, kappa=(1, 1/4)
ChainModel preset_example2();  // m=3, kappa=(1, 1/8, 7/72)

}  // namespace lattice
