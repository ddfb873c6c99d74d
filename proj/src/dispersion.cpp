#include "lattice/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace lattice {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Inside this distance from the endpoints the f-jet switches from the
// g = f^2 route to the series of f(k) = k sqrt(P(k)); avoids 0/0 where f -> 0.
constexpr double kSeriesWindow = 1e-3;

double moment(const CouplingVector& c, int power) {
    double acc = 0.0;
    for (int s = 1; s <= c.m; ++s) acc += std::pow(s, power) * c.kappa[s - 1];
    return acc;
}

// g(k) = f(k)^2 = 2 sum kappa_s (1 - cos(2 pi s k)) and derivatives.
struct GJet {
    double g, g1, g2, g3, g4;
};

GJet g_jet(double k, const CouplingVector& c) {
    GJet out{0.0, 0.0, 0.0, 0.0, 0.0};
    for (int s = 1; s <= c.m; ++s) {
        const double w = kTwoPi * s;
        const double a = w * k;
        const double cs = std::cos(a), sn = std::sin(a);
        const double kap = c.kappa[s - 1];
        out.g += 2.0 * kap * (1.0 - cs);
        out.g1 += 2.0 * kap * w * sn;
        out.g2 += 2.0 * kap * w * w * cs;
        out.g3 += -2.0 * kap * w * w * w * sn;
        out.g4 += -2.0 * kap * w * w * w * w * cs;
    }
    return out;
}

// Series route: f(k) = k h(k), h = sqrt(P), P(k) = g(k)/k^2 expanded as an
// even polynomial through k^14.
FrequencyJet series_jet(double k, const CouplingVector& c) {
    double coef[8];  // P(k) = sum_n coef[n-1] k^(2n-2)
    for (int n = 1; n <= 8; ++n) {
        double fact = 1.0;  // (2n)!
        for (int i = 2; i <= 2 * n; ++i) fact *= i;
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        coef[n - 1] = sign * 2.0 * std::pow(kTwoPi, 2 * n) * moment(c, 2 * n) / fact;
    }
    double P = 0.0, P1 = 0.0, P2 = 0.0, P3 = 0.0, P4 = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const int e = 2 * n - 2;
        const double c0 = coef[n - 1];
        P += c0 * std::pow(k, e);
        if (e >= 1) P1 += c0 * e * std::pow(k, e - 1);
        if (e >= 2) P2 += c0 * e * (e - 1) * std::pow(k, e - 2);
        if (e >= 3) P3 += c0 * e * (e - 1) * (e - 2) * std::pow(k, e - 3);
        if (e >= 4) P4 += c0 * e * (e - 1) * (e - 2) * (e - 3) * std::pow(k, e - 4);
    }
    const double h = std::sqrt(P);
    const double h1 = P1 / (2.0 * h);
    const double h2 = (P2 - 2.0 * h1 * h1) / (2.0 * h);
    const double h3 = (P3 - 6.0 * h1 * h2) / (2.0 * h);
    const double h4 = (P4 - 6.0 * h2 * h2 - 8.0 * h1 * h3) / (2.0 * h);
    FrequencyJet out;
    out.f = k * h;
    out.d1 = h + k * h1;
    out.d2 = 2.0 * h1 + k * h2;
    out.d3 = 3.0 * h2 + k * h3;
    out.d4 = 4.0 * h3 + k * h4;
    return out;
}

}  // namespace

std::complex<double> omega_eval(double k, const LocalSquareRoot& sq) {
    if (k < 0.0 || k > 1.0) throw RangeError("wavenumber must lie in [0, 1]");
    double re = 0.0, im = 0.0;
    for (int s = 1; s <= sq.m(); ++s) {
        const double a = kTwoPi * s * k;
        re -= sq.tau[s] * (1.0 - std::cos(a));
        im += sq.tau[s] * std::sin(a);
    }
    return {re, im};
}

FrequencyJet frequency_jet(double k, const CouplingVector& c) {
    if (k < 0.0 || k > 1.0) throw RangeError("wavenumber must lie in [0, 1]");
    if (k < kSeriesWindow) return series_jet(k, c);
    if (k > 1.0 - kSeriesWindow) {
        FrequencyJet mirror = series_jet(1.0 - k, c);
        mirror.d1 = -mirror.d1;
        mirror.d3 = -mirror.d3;
        return mirror;
    }
    const GJet g = g_jet(k, c);
    FrequencyJet out;
    out.f = std::sqrt(g.g);
    out.d1 = g.g1 / (2.0 * out.f);
    out.d2 = (g.g2 - 2.0 * out.d1 * out.d1) / (2.0 * out.f);
    out.d3 = (g.g3 - 6.0 * out.d1 * out.d2) / (2.0 * out.f);
    out.d4 = (g.g4 - 6.0 * out.d2 * out.d2 - 8.0 * out.d1 * out.d3) / (2.0 * out.f);
    return out;
}

double theta_branch(double k, const LocalSquareRoot& sq) {
    if (k < 0.0 || k > 1.0) throw RangeError("wavenumber must lie in [0, 1]");
    if (k == 0.0) return 0.5 * M_PI;
    double target = k;
    if (target > 1.0 - 1e-9) target = 1.0 - 1e-9;  // omega(1) = 0, use the limit
    const long steps = std::max<long>(1, static_cast<long>(std::ceil(target / 1e-3)));
    double theta = 0.5 * M_PI;
    for (long i = 1; i <= steps; ++i) {
        const double kk = target * static_cast<double>(i) / static_cast<double>(steps);
        const auto w = omega_eval(kk, sq);
        const double raw = std::atan2(w.imag(), w.real());
        theta = raw + kTwoPi * std::round((theta - raw) / kTwoPi);
    }
    return theta;
}

DispersionJet dispersion_jet(double k, const CouplingVector& c,
                             const LocalSquareRoot& sq) {
    const FrequencyJet fj = frequency_jet(k, c);
    DispersionJet out;
    out.k = k;
    out.f = fj.f;
    out.d1 = fj.d1;
    out.d2 = fj.d2;
    out.d3 = fj.d3;
    out.d4 = fj.d4;
    out.theta = theta_branch(k, sq);
    return out;
}

AiryConstants airy_constants(const CouplingVector& c) {
    c.validate();
    AiryConstants out;
    out.v0 = std::sqrt(moment(c, 2));
    out.lambda0 = 0.5 * std::cbrt(moment(c, 4) / out.v0);
    return out;
}

std::vector<StationaryPoint> stationary_points(const CouplingVector& c,
                                               const LocalSquareRoot& sq,
                                               double xi) {
    (void)sq;
    c.validate();
    const double v0 = std::sqrt(moment(c, 2));
    std::vector<StationaryPoint> out;
    if (std::abs(xi) > v0) return out;

    auto classify = [&](double k) {
        const FrequencyJet j = frequency_jet(k, c);
        const double s2 = std::max(1.0, kTwoPi * kTwoPi * moment(c, 2));
        const double s3 = std::max(1.0, std::pow(kTwoPi, 3) * moment(c, 3));
        const double s4 = std::max(1.0, std::pow(kTwoPi, 4) * moment(c, 4));
        if (std::abs(j.d2) > 1e-6 * s2) return 2;
        if (std::abs(j.d3) > 1e-6 * s3) return 3;
        if (std::abs(j.d4) > 1e-6 * s4) return 4;
        return 0;
    };

    auto scan_branch = [&](int branch) {
        const double target = branch * kTwoPi * xi;
        const long cells = 4L * c.m * 64L;
        auto d = [&](double k) { return frequency_jet(k, c).d1 - target; };
        double prev_k = 0.25 / static_cast<double>(cells);
        double prev_d = d(prev_k);
        std::vector<double> roots;
        auto bisect = [&](double lo, double hi, double flo) {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = d(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if (hi - lo < 1e-14) break;
            }
            return 0.5 * (lo + hi);
        };
        const double dscale = kTwoPi * kTwoPi * std::max(1.0, moment(c, 2));
        for (long i = 2; i <= 2 * cells; ++i) {
            const double k = 0.5 * static_cast<double>(i) / (2.0 * cells);
            const double dk = d(k);
            if (dk == 0.0) {
                roots.push_back(k);
            } else if ((dk < 0.0) != (prev_d < 0.0)) {
                roots.push_back(bisect(prev_k, k, prev_d));
            } else if (std::abs(dk) < 1e-7 * dscale && std::abs(dk) <= std::abs(prev_d)) {
                // possible tangential root; polish by Newton on d and accept
                // if the residual collapses
                double kk = k;
                for (int it = 0; it < 60; ++it) {
                    const FrequencyJet j = frequency_jet(kk, c);
                    if (std::abs(j.d2) < 1e-14 * dscale) break;
                    const double step = (j.d1 - target) / j.d2;
                    kk -= step;
                    if (kk <= 0.0 || kk > 0.5) {
                        kk = -1.0;
                        break;
                    }
                    if (std::abs(step) < 1e-15) break;
                }
                if (kk > 0.0 && std::abs(d(kk)) < 1e-10 * dscale) roots.push_back(kk);
            }
            prev_k = k;
            prev_d = dk;
        }
        std::sort(roots.begin(), roots.end());
        double last = -1.0;
        for (double k : roots) {
            if (last >= 0.0 && std::abs(k - last) < 1e-9) continue;
            last = k;
            out.push_back({k, branch, classify(k)});
        }
    };

    scan_branch(+1);
    if (xi != 0.0) scan_branch(-1);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.branch > b.branch;
    });
    return out;
}

DegenerateFamily degenerate_family_half(const std::vector<double>& kappa_partial) {
    const int m = static_cast<int>(kappa_partial.size()) + 1;
    if (m < 2) throw InfeasibleFamily("need at least kappa_1 to build the family");
    double acc = 0.0, quartic = 0.0;
    for (int s = 1; s <= m - 1; ++s) {
        const double sign = (s % 2 == 1) ? 1.0 : -1.0;
        acc += sign * s * s * kappa_partial[s - 1];
        quartic += sign * std::pow(s, 4) * kappa_partial[s - 1];
    }
    const double msign = (m % 2 == 0) ? 1.0 : -1.0;
    const double kappa_m = msign * acc / (static_cast<double>(m) * m);
    if (!(kappa_m > 0.0))
        throw InfeasibleFamily("family closure kappa_m is not positive");
    DegenerateFamily fam;
    fam.couplings.m = m;
    fam.couplings.kappa = kappa_partial;
    fam.couplings.kappa.push_back(kappa_m);
    fam.couplings.validate();
    quartic += ((m % 2 == 1) ? 1.0 : -1.0) * std::pow(m, 4) * kappa_m;
    fam.quartic_nondegenerate = std::abs(quartic) > 1e-12 * std::pow(m, 4);
    return fam;
}

std::optional<DegeneratePoint> degenerate_point_half(const CouplingVector& c) {
    const FrequencyJet j = frequency_jet(0.5, c);
    const double s2 = kTwoPi * kTwoPi * moment(c, 2);
    const double s4 = std::pow(kTwoPi, 4) * moment(c, 4);
    if (std::abs(j.d2) > 1e-9 * s2) return std::nullopt;
    if (std::abs(j.d4) < 1e-9 * s4) return std::nullopt;
    DegeneratePoint pt;
    pt.kstar = 0.5;
    pt.vstar = 0.0;  // f'(1/2) = 0 by the k -> 1-k symmetry
    pt.lambdastar = (1.0 / kTwoPi) * std::pow(std::abs(j.d4) / 24.0, 0.25);
    pt.sign = (j.d4 > 0.0) ? 1 : -1;
    pt.order = 2;
    return pt;
}

std::optional<InteriorDegeneracy> degenerate_family_interior(const CouplingVector& c,
                                                             double k_seed) {
    c.validate();
    if (c.m < 3) return std::nullopt;
    if (k_seed <= 0.0 || k_seed >= 0.5) return std::nullopt;
    const int adjust = (c.m == 3) ? 3 : 4;  // 1-based coupling index

    CouplingVector cur = c;
    double k = k_seed;
    const double tol = 1e-11;

    auto fd_kappa_derivs = [&](double& d2_dkap, double& d3_dkap) {
        const double base = cur.kappa[adjust - 1];
        const double h = 1e-6 * std::max(1.0, std::abs(base));
        CouplingVector up = cur, dn = cur;
        up.kappa[adjust - 1] = base + h;
        dn.kappa[adjust - 1] = std::max(base - h, 1e-12);
        const FrequencyJet ju = frequency_jet(k, up);
        const FrequencyJet jd = frequency_jet(k, dn);
        const double denom = up.kappa[adjust - 1] - dn.kappa[adjust - 1];
        d2_dkap = (ju.d2 - jd.d2) / denom;
        d3_dkap = (ju.d3 - jd.d3) / denom;
    };

    for (int it = 0; it < 100; ++it) {
        const FrequencyJet j = frequency_jet(k, cur);
        if (std::abs(j.d2) <= tol && std::abs(j.d3) <= tol) {
            if (std::abs(j.d4) < 1e-6) return std::nullopt;
            const double v0 = std::sqrt(moment(cur, 2));
            const double vstar = j.d1 / kTwoPi;
            if (!(vstar > 1e-9 && vstar < v0 * (1.0 - 1e-12))) return std::nullopt;
            InteriorDegeneracy out;
            out.couplings = cur;
            out.point.kstar = k;
            out.point.vstar = vstar;
            out.point.lambdastar = (1.0 / kTwoPi) * std::pow(std::abs(j.d4) / 24.0, 0.25);
            out.point.sign = (j.d4 > 0.0) ? 1 : -1;
            out.point.order = 2;
            return out;
        }
        double a12, a22;
        fd_kappa_derivs(a12, a22);
        // Solve [f''' a12; f'''' a22] (dk, dkap)^T = -(f'', f''')^T.
        const double det = j.d3 * a22 - j.d4 * a12;
        if (std::abs(det) < 1e-14) return std::nullopt;
        double dk = (-j.d2 * a22 + j.d3 * a12) / det;
        double dkap = (-j.d3 * j.d3 + j.d2 * j.d4) / det;
        dk = std::clamp(dk, -0.05, 0.05);
        const double cap = 0.2 * std::max(1.0, std::abs(cur.kappa[adjust - 1]));
        dkap = std::clamp(dkap, -cap, cap);
        k += dk;
        cur.kappa[adjust - 1] += dkap;
        if (k <= 0.0 || k >= 0.5) return std::nullopt;
        if (!(cur.kappa[adjust - 1] > 0.0)) return std::nullopt;
        if (!(cur.kappa.back() > 0.0)) return std::nullopt;
    }
    return std::nullopt;
}

bool concavity_check(const CouplingVector& c) {
    c.validate();
    const double v0 = std::sqrt(moment(c, 2));
    const double tol = 1e-12 * kTwoPi * kTwoPi * v0;
    const long n = 2048L * c.m;
    auto d2 = [&](double k) { return frequency_jet(k, c).d2; };

    std::vector<double> ks(n), vals(n);
    for (long i = 1; i <= n; ++i) {
        ks[i - 1] = 0.5 * static_cast<double>(i) / static_cast<double>(n);
        vals[i - 1] = d2(ks[i - 1]);
        if (vals[i - 1] >= -tol) return false;
    }
    // Refine interior local maxima of f'' by golden section; a narrow bump
    // between grid points must not cross -tol.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (long i = 1; i + 1 < n; ++i) {
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1]) {
            double a = ks[i - 1], b = ks[i + 1];
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = d2(x1), f2 = d2(x2);
            for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
                if (f1 < f2) {  // maximize
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = d2(x2);
                } else {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = d2(x1);
                }
            }
            if (std::max(f1, f2) >= -tol) return false;
        }
    }
    return true;
}

}  // namespace lattice
