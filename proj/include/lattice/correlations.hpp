#pragma once

#include <string>
#include <vector>

#include "lattice/circulant.hpp"
#include "lattice/dispersion.hpp"

namespace lattice {

/// Observable indices: 1 = elongation r, 2 = momentum p, 3 = energy e.
struct CorrelationIndex {
    int alpha = 1;
    int alphaprime = 1;
    long long j = 0;
    double t = 0.0;
};

enum class CorrelationMethod { exact, finiteN, autoselect };

struct CorrelationEntry {
    CorrelationIndex idx;
    double value = 0.0;
    double stderr_ = 0.0;
    std::string method;
};

struct CorrelationDataset {
    std::string model_descriptor;
    std::vector<CorrelationEntry> entries;
};

/// N -> infinity limiting correlation S_{alpha alpha'}(j, t) by
/// oscillation-resolved Gauss-Legendre panels over [0, 1]. Cross r/p-with-e
/// entries are exact zeros.
double limit_correlation(const CorrelationIndex& idx, const ChainModel& model,
                         double beta, long panel_cap = 2'000'000);

/// Cached spectrum omega_l = omega(l/N), l = 1..N-1.
struct FiniteSpectrum {
    int n = 0;
    std::vector<double> f;      // |omega_l|
    std::vector<double> costh;  // Re omega_l / |omega_l|
    std::vector<double> sinth;  // Im omega_l / |omega_l|
};

FiniteSpectrum finite_spectrum(const ChainModel& model, int n);

/// Finite-N correlation S^N_{alpha alpha'}(j, t) as the exact discrete sum.
double finite_correlation(const CorrelationIndex& idx, const ChainModel& model,
                          double beta, int n);
double finite_correlation(const CorrelationIndex& idx, const FiniteSpectrum& spec,
                          double beta);

/// Grid driver. Method autoselect falls back from quadrature to a finite-N
/// sum (N >= 40 t v0, odd) when the panel cap would be exceeded.
CorrelationDataset correlation_field(int alpha, int alphaprime, long long j_lo,
                                     long long j_hi, const std::vector<double>& t_list,
                                     const ChainModel& model, double beta,
                                     CorrelationMethod method, int threads = 0);

/// Serial reference for the grid driver; the OpenMP path must match it
/// bit for bit.
CorrelationDataset correlation_field_reference(int alpha, int alphaprime,
                                               long long j_lo, long long j_hi,
                                               const std::vector<double>& t_list,
                                               const ChainModel& model, double beta,
                                               CorrelationMethod method);

enum class ChargeKind { even_type, odd_type };

/// Limiting correlation of two conserved-charge densities (double integrals
/// of the charge-hierarchy appendix, evaluated as tensor products of 1D
/// panel integrals). kidx indexes the density at (j, t), nidx the one at the
/// origin.
double hierarchy_correlation(int kidx, ChargeKind kkind, int nidx, ChargeKind nkind,
                             long long j, double t, const ChainModel& model,
                             double beta, long panel_cap = 2'000'000);

}  // namespace lattice
