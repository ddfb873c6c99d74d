#include "lattice/circulant.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace lattice {

namespace {

constexpr double kAtOneTol = 1e-7;      // |z - 1| below this joins the z=1 cluster
constexpr double kUnitCircleTol = 1e-9; // ||z| - 1| below this (away from 1) is fatal

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeff) {
    // coeff[0] + coeff[1] z + ... + coeff[n] z^n, companion-matrix eigenvalues.
    const int n = static_cast<int>(coeff.size()) - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeff[i] / coeff[n];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()[i];
    return roots;
}

}  // namespace

void CouplingVector::validate() const {
    if (m < 1) throw InvalidCoupling("interaction range m must be >= 1");
    if (static_cast<int>(kappa.size()) != m)
        throw InvalidCoupling("kappa must have exactly m entries");
    if (!(kappa.front() > 0.0)) throw InvalidCoupling("kappa_1 must be > 0");
    if (!(kappa.back() > 0.0)) throw InvalidCoupling("kappa_m must be > 0");
    for (int s = 1; s + 1 < m; ++s)
        if (kappa[s] < 0.0) throw InvalidCoupling("interior kappa_s must be >= 0");
    for (double k : kappa)
        if (!std::isfinite(k)) throw InvalidCoupling("kappa entries must be finite");
}

PhysicalGenerator interaction_generator(const CouplingVector& c) {
    c.validate();
    PhysicalGenerator g;
    g.a.resize(c.m + 1);
    g.a[0] = 2.0 * std::accumulate(c.kappa.begin(), c.kappa.end(), 0.0);
    for (int s = 1; s <= c.m; ++s) g.a[s] = -c.kappa[s - 1];
    return g;
}

LocalSquareRoot localized_square_root(const CouplingVector& c) {
    c.validate();
    const int m = c.m;
    const double a0 = 2.0 * std::accumulate(c.kappa.begin(), c.kappa.end(), 0.0);

    // P(z) = z^m l(z), degree 2m, palindromic: p[m-s] = p[m+s] = -kappa_s.
    std::vector<double> p(2 * m + 1, 0.0);
    p[m] = a0;
    for (int s = 1; s <= m; ++s) {
        p[m - s] = -c.kappa[s - 1];
        p[m + s] = -c.kappa[s - 1];
    }
    return detail::tau_from_symbol_roots(polynomial_roots(p), a0, m);
}

LocalSquareRoot detail::tau_from_symbol_roots(
    const std::vector<std::complex<double>>& roots, double a0, int m) {
    int cluster_at_one = 0;
    std::vector<std::complex<double>> outside;
    for (const auto& z : roots) {
        if (std::abs(z - 1.0) <= kAtOneTol) {
            ++cluster_at_one;
            continue;
        }
        if (std::abs(std::abs(z) - 1.0) <= kUnitCircleTol)
            throw RootClassificationError(
                "symbol root on the unit circle away from z=1; couplings are "
                "numerically degenerate");
        if (std::abs(z) > 1.0) outside.push_back(z);
    }
    if (cluster_at_one % 2 != 0 || cluster_at_one == 0)
        throw RootClassificationError("z=1 root cluster has odd multiplicity");
    const int rho = cluster_at_one / 2;
    if (static_cast<int>(outside.size()) != m - rho)
        throw RootClassificationError("inside/outside root count mismatch");

    // Deterministic assembly: outside roots sorted by (Re, Im) so conjugate
    // pairs sit adjacent and tau is bit-stable across runs.
    std::sort(outside.begin(), outside.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    std::vector<std::complex<double>> q{1.0};
    auto multiply_linear = [&q](std::complex<double> root) {
        q.push_back(0.0);
        for (int i = static_cast<int>(q.size()) - 1; i > 0; --i)
            q[i] = q[i - 1] - root * q[i];
        q[0] *= -root;
    };
    for (int i = 0; i < rho; ++i) multiply_linear(1.0);
    for (const auto& z : outside) multiply_linear(z);

    double max_mag = 0.0, max_imag = 0.0;
    for (const auto& s : q) {
        max_mag = std::max(max_mag, std::abs(s));
        max_imag = std::max(max_imag, std::abs(s.imag()));
    }
    if (max_imag > 1e-9 * max_mag)
        throw NonRealCoefficient("residual imaginary part in square-root coefficients");

    std::vector<double> s(q.size());
    for (size_t i = 0; i < q.size(); ++i) s[i] = q[i].real();

    double sum_sq = 0.0, weighted = 0.0;
    for (int j = 0; j <= m; ++j) {
        sum_sq += s[j] * s[j];
        weighted += j * s[j];
    }
    double d = std::sqrt(a0 / sum_sq);
    if (weighted < 0.0) d = -d;

    LocalSquareRoot out;
    out.tau.resize(m + 1);
    for (int j = 0; j <= m; ++j) out.tau[j] = d * s[j];
    return out;
}

std::vector<double> physical_embedding(const PhysicalGenerator& a, int n) {
    const int m = a.m();
    if (n <= 2 * m || n % 2 == 0)
        throw DimensionMismatch("N must be odd and > 2m");
    std::vector<double> gen(n, 0.0);
    gen[0] = a.a[0];
    for (int s = 1; s <= m; ++s) {
        gen[s] = a.a[s];
        gen[n - s] = a.a[s];
    }
    return gen;
}

std::vector<double> half_physical_embedding(const LocalSquareRoot& sq, int n) {
    const int m = sq.m();
    if (n <= 2 * m || n % 2 == 0)
        throw DimensionMismatch("N must be odd and > 2m");
    std::vector<double> gen(n, 0.0);
    for (int s = 0; s <= m; ++s) gen[s] = sq.tau[s];
    return gen;
}

std::vector<double> apply_circulant(std::span<const double> gen,
                                    std::span<const double> x) {
    const int n = static_cast<int>(gen.size());
    if (x.size() != gen.size()) throw DimensionMismatch("generator/vector size mismatch");
    std::vector<int> support;
    for (int s = 0; s < n; ++s)
        if (gen[s] != 0.0) support.push_back(s);
    std::vector<double> y(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int s : support) {
            int idx = k + s;
            if (idx >= n) idx -= n;
            acc += gen[s] * x[idx];
        }
        y[k] = acc;
    }
    return y;
}

std::vector<double> apply_circulant_dft(std::span<const double> gen,
                                        std::span<const double> x) {
    const int n = static_cast<int>(gen.size());
    if (x.size() != gen.size()) throw DimensionMismatch("generator/vector size mismatch");
    const double two_pi = 2.0 * M_PI;
    using cd = std::complex<double>;
    // Eigenvalue of the circulant on Fourier mode e_j(k) = exp(2 pi i jk/N)
    // is lambda_j = sum_s gen_s exp(2 pi i js/N).
    std::vector<cd> lambda(n), coef(n);
    for (int j = 0; j < n; ++j) {
        cd acc = 0.0;
        for (int s = 0; s < n; ++s)
            acc += gen[s] * std::polar(1.0, two_pi * j * s / n);
        lambda[j] = acc;
    }
    for (int j = 0; j < n; ++j) {
        cd acc = 0.0;
        for (int k = 0; k < n; ++k)
            acc += x[k] * std::polar(1.0, -two_pi * j * k / n);
        coef[j] = acc / static_cast<double>(n);
    }
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) {
        cd acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += lambda[j] * coef[j] * std::polar(1.0, two_pi * j * k / n);
        y[k] = acc.real();
    }
    return y;
}

std::vector<double> elongation(std::span<const double> q, const LocalSquareRoot& sq) {
    const int n = static_cast<int>(q.size());
    const int m = sq.m();
    if (n <= 2 * m) throw DimensionMismatch("N must exceed 2m");
    std::vector<double> r(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int s = 0; s <= m; ++s) {
            int idx = j + s;
            if (idx >= n) idx -= n;
            acc += sq.tau[s] * q[idx];
        }
        r[j] = acc;
    }
    return r;
}

std::vector<double> apply_interaction(const PhysicalGenerator& a,
                                      std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    const int m = a.m();
    if (n <= 2 * m) throw DimensionMismatch("N must exceed 2m");
    std::vector<double> y(n);
    for (int j = 0; j < n; ++j) {
        double acc = a.a[0] * x[j];
        for (int s = 1; s <= m; ++s) {
            int up = j + s;
            if (up >= n) up -= n;
            int dn = j - s;
            if (dn < 0) dn += n;
            acc += a.a[s] * (x[up] + x[dn]);
        }
        y[j] = acc;
    }
    return y;
}

double factorization_residual(const LocalSquareRoot& sq, const CouplingVector& c,
                              int n) {
    const auto tau_full = half_physical_embedding(sq, n);
    const auto a_full = physical_embedding(interaction_generator(c), n);
    // Generator of T^T T at offset v is the cyclic autocorrelation
    // sum_u tau_u tau_{u+v}.
    double worst = 0.0;
    for (int v = 0; v < n; ++v) {
        double acc = 0.0;
        for (int u = 0; u <= sq.m(); ++u) {
            int idx = u + v;
            if (idx >= n) idx -= n;
            acc += tau_full[u] * tau_full[idx];
        }
        worst = std::max(worst, std::abs(acc - a_full[v]));
    }
    return worst;
}

ChainModel make_chain_model(const CouplingVector& c) {
    ChainModel model;
    model.couplings = c;
    model.gen = interaction_generator(c);
    model.sqroot = localized_square_root(c);
    return model;
}

ChainModel preset_nn() { return make_chain_model({1, {1.0}}); }

ChainModel preset_example1() { return make_chain_model({2, {1.0, 0.25}}); }

ChainModel preset_example2() { return make_chain_model({3, {1.0, 1.0 / 8.0, 7.0 / 72.0}}); }

}  // namespace lattice
