// Test-side oracles, independent of the library implementation paths they
// check: dense matrix assembly for the factorization residual, damped
// contour quadrature for Ai, the literal rotated-path representation for the
// Pearcey integrals, and small statistics helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "lattice/circulant.hpp"
#include "lattice/quadrature.hpp"

namespace oracle {

/// Dense circulant matrix from a full generator: M[k][j] = gen[(j-k) mod N].
inline std::vector<std::vector<double>> dense_circulant(
    const std::vector<double>& gen) {
    const int n = static_cast<int>(gen.size());
    std::vector<std::vector<double>> mat(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) mat[k][j] = gen[((j - k) % n + n) % n];
    return mat;
}

/// max-norm of T^T T - A computed with dense matrices.
inline double dense_residual(const lattice::LocalSquareRoot& sq,
                             const lattice::CouplingVector& c, int n) {
    const auto T = dense_circulant(lattice::half_physical_embedding(sq, n));
    const auto A = dense_circulant(
        lattice::physical_embedding(lattice::interaction_generator(c), n));
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int l = 0; l < n; ++l) acc += T[l][i] * T[l][j];
            worst = std::max(worst, std::abs(acc - A[i][j]));
        }
    return worst;
}

/// Paper closed form of tau for m = 2.
inline std::vector<double> tau_m2_closed_form(double k1, double k2) {
    const double s = std::sqrt(k1 + 4.0 * k2);
    return {-0.5 * std::sqrt(k1) - 0.5 * s, std::sqrt(k1),
            -0.5 * std::sqrt(k1) + 0.5 * s};
}

/// Ai(w) by quadrature of the contour-damped integral
/// (1/pi) Re[e^{i pi/6} int_0^inf exp(-u^3/3 - wu/2) exp(i sqrt(3) w u / 2) du].
/// Absolutely convergent and well conditioned for w >= -12.
inline double airy_quadrature(double w) {
    const auto& rule = lattice::gauss_rule(12);
    const std::complex<double> rot = std::polar(1.0, M_PI / 6.0);
    const std::complex<double> I(0.0, 1.0);
    const double S = 14.0;
    const int panels = 400;
    const double h = S / panels;
    std::complex<double> acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (size_t i = 0; i < rule.node.size(); ++i) {
            const double u = mid + 0.5 * h * rule.node[i];
            const std::complex<double> expo =
                -u * u * u / 3.0 - 0.5 * w * u + I * (std::sqrt(3.0) / 2.0) * w * u;
            acc += rule.weight[i] * 0.5 * h * std::exp(expo);
        }
    }
    return (rot * acc).real() / M_PI;
}

/// Literal rotated-path Pearcey representation (positive quartic):
/// P_+(a) = 2 e^{i pi/8} int_0^inf e^{-t^4} cos(a e^{i pi/8} t) dt,
/// truncated at T = 6 with 512 Gauss-Legendre nodes. Loses absolute accuracy
/// beyond |a| of about 40 (cosh growth), fine as an oracle below that.
inline std::complex<double> pearcey_rotated(int sign, double a) {
    const auto& rule = lattice::gauss_rule(8);
    const double rot_angle = sign > 0 ? M_PI / 8.0 : -M_PI / 8.0;
    const std::complex<double> rot = std::polar(1.0, rot_angle);
    const int panels = 64;  // 64 x 8 = 512 nodes
    const double T = 6.0;
    const double h = T / panels;
    std::complex<double> acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (size_t i = 0; i < rule.node.size(); ++i) {
            const double t = mid + 0.5 * h * rule.node[i];
            acc += rule.weight[i] * 0.5 * h * std::exp(-t * t * t * t) *
                   std::cos(a * rot * t);
        }
    }
    return 2.0 * rot * acc;
}

struct Moments {
    double mean = 0.0, var = 0.0, skewness = 0.0, excess_kurtosis = 0.0;
};

inline Moments sample_moments(const std::vector<double>& xs) {
    Moments m;
    const double n = static_cast<double>(xs.size());
    m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - m.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m.var = m2 * n / (n - 1.0);
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return m;
}

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
