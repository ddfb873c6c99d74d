#include "lattice/hierarchy.hpp"

#include <cmath>

#include "fft.hpp"
#include "lattice/quadrature.hpp"

namespace lattice {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

int wrap(int j, int n) {
    j %= n;
    return j < 0 ? j + n : j;
}

}  // namespace

std::vector<double> charge_density(const ChargeSpec& spec, const ChainState& state,
                                   const LocalSquareRoot& sq) {
    const int n = state.size();
    if (spec.k < 0 || spec.k >= n) throw IndexError("charge index out of range");
    if (spec.kind == ChargeKind::odd_type && spec.k < 1)
        throw IndexError("odd-kind charge index must be >= 1");
    std::vector<double> density(n);
    if (spec.kind == ChargeKind::even_type) {
        for (int j = 0; j < n; ++j) {
            const int jk = wrap(j + spec.k, n);
            density[j] = 0.5 * (state.p[j] * state.p[jk] + state.r[j] * state.r[jk]);
        }
        return density;
    }
    const int m = sq.m();
    for (int j = 0; j < n; ++j) {
        double tp = 0.0;
        for (int l = 0; l <= m; ++l) tp += sq.tau[l] * state.p[wrap(j + l, n)];
        density[j] =
            tp * (state.r[wrap(j + spec.k, n)] - state.r[wrap(j - spec.k, n)]);
    }
    return density;
}

double charge_value(const ChargeSpec& spec, const ChainState& state,
                    const LocalSquareRoot& sq) {
    double acc = 0.0;
    for (double v : charge_density(spec, state, sq)) acc += v;
    return acc;
}

double conservation_check(const ChargeSpec& spec,
                          const std::vector<ChainState>& trajectory,
                          const LocalSquareRoot& sq) {
    if (trajectory.empty()) throw InsufficientSamples("empty trajectory");
    const double h0 = charge_value(spec, trajectory.front(), sq);
    const double scale = std::max(1.0, std::abs(h0));
    double worst = 0.0;
    for (const auto& st : trajectory)
        worst = std::max(worst, std::abs(charge_value(spec, st, sq) - h0) / scale);
    return worst;
}

CurrentTriple currents(const ChainState& state, const LocalSquareRoot& sq) {
    const int n = state.size();
    const int m = sq.m();
    // suffix[s] = sum_{l=s..m} tau_l
    std::vector<double> suffix(m + 2, 0.0);
    for (int s = m; s >= 0; --s) suffix[s] = suffix[s + 1] + sq.tau[s];
    CurrentTriple out;
    out.jr.resize(n);
    out.jp.resize(n);
    out.je.resize(n);
    for (int j = 0; j < n; ++j) {
        double jr = 0.0;
        for (int s = 0; s <= m - 1; ++s)
            jr += state.p[wrap(j + 1 + s, n)] * suffix[s + 1];
        double jp = 0.0;
        for (int s = 1; s <= m; ++s) jp += state.r[wrap(j + 1 - s, n)] * suffix[s];
        double je = 0.0;
        for (int s = 1; s <= m; ++s) {
            double inner = 0.0;
            for (int l = 0; l <= s - 1; ++l)
                inner += state.r[wrap(j + 1 - s + l, n)] * state.p[wrap(j + 1 + l, n)];
            je += sq.tau[s] * inner;
        }
        out.jr[j] = jr;
        out.jp[j] = jp;
        out.je[j] = je;
    }
    return out;
}

std::vector<double> elongation_rate(const ChainState& state,
                                    const LocalSquareRoot& sq) {
    const int n = state.size();
    const int m = sq.m();
    std::vector<double> rate(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 1; l <= m; ++l)
            acc += sq.tau[l] * (state.p[wrap(j + l, n)] - state.p[j]);
        rate[j] = acc;
    }
    return rate;
}

std::vector<double> momentum_rate(const ChainState& state,
                                  const LocalSquareRoot& sq) {
    const int n = state.size();
    const int m = sq.m();
    std::vector<double> rate(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 1; l <= m; ++l)
            acc += sq.tau[l] * (state.r[j] - state.r[wrap(j - l, n)]);
        rate[j] = acc;
    }
    return rate;
}

namespace {

// Cumulative integral matching composite Simpson at even nodes: each new
// point adds the integral of the local parabola through three samples.
std::vector<double> cumulative_simpson(const std::vector<double>& values, double dt) {
    const size_t n = values.size();
    std::vector<double> out(n, 0.0);
    if (n < 3) throw InsufficientSamples("need at least 3 uniform samples");
    for (size_t i = 0; i + 1 < n; ++i) {
        double a, b, c;  // parabola through (i-1, i, i+1) or (i, i+1, i+2)
        if (i + 2 < n) {
            a = values[i];
            b = values[i + 1];
            c = values[i + 2];
            out[i + 1] = out[i] + dt * (5.0 * a + 8.0 * b - c) / 12.0;
        } else {
            a = values[i - 1];
            b = values[i];
            c = values[i + 1];
            out[i + 1] = out[i] + dt * (-a + 8.0 * b + 5.0 * c) / 12.0;
        }
    }
    return out;
}

}  // namespace

PotentialTrace potential_trace(const std::vector<ChainState>& trajectory,
                               long long j, const LocalSquareRoot& sq) {
    if (trajectory.size() < 3)
        throw InsufficientSamples("potential trace needs at least 3 samples");
    const int n = trajectory.front().size();
    const int site = wrap(static_cast<int>(((j % n) + n) % n), n);
    const double dt = trajectory[1].time - trajectory[0].time;
    for (size_t i = 1; i < trajectory.size(); ++i) {
        const double step = trajectory[i].time - trajectory[i - 1].time;
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw InsufficientSamples("trajectory must be uniformly sampled");
    }

    std::vector<double> jr(trajectory.size()), jp(trajectory.size()),
        je(trajectory.size());
    for (size_t i = 0; i < trajectory.size(); ++i) {
        const CurrentTriple cur = currents(trajectory[i], sq);
        jr[i] = cur.jr[site];
        jp[i] = cur.jp[site];
        je[i] = cur.je[site];
    }
    double base_r = 0.0, base_p = 0.0, base_e = 0.0;
    const ChainState& init = trajectory.front();
    for (int l = 0; l <= site; ++l) {
        base_r += init.r[l];
        base_p += init.p[l];
        base_e += 0.5 * (init.p[l] * init.p[l] + init.r[l] * init.r[l]);
    }

    PotentialTrace out;
    out.times.resize(trajectory.size());
    for (size_t i = 0; i < trajectory.size(); ++i) out.times[i] = trajectory[i].time;
    out.phi_r = cumulative_simpson(jr, dt);
    out.phi_p = cumulative_simpson(jp, dt);
    out.phi_e = cumulative_simpson(je, dt);
    for (size_t i = 0; i < trajectory.size(); ++i) {
        out.phi_r[i] += base_r;
        out.phi_p[i] += base_p;
        out.phi_e[i] += base_e;
    }
    return out;
}

double phi2_harmonic_exact(const ChainState& initial, long long j, double t,
                           const ChainModel& model) {
    if (model.couplings.m != 1)
        throw RangeError("Phi_2 closed form is nearest-neighbour only");
    const int n = initial.size();
    const int site = wrap(static_cast<int>(((j % n) + n) % n), n);
    const double kappa1 = model.couplings.kappa[0];

    detail::RealFourier fft(n);
    const int half = n / 2 + 1;
    std::vector<std::complex<double>> w(half), qhat(half), integ(half);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    fft.analyze(initial.p.data(), w.data());
    fft.analyze(initial.q.data(), qhat.data());
    for (auto& z : w) z *= scale;
    for (auto& z : qhat) z *= scale;

    // int_0^t qhat_l dt' = qhat_l sin(ft)/f + w_l (1-cos(ft))/f^2, then
    // rhat = omega * qhat. omega_l = sum_s tau_s exp(2 pi i s l / N); we need
    // the half-spectrum of conj? r = F^-1 rhat, synthesize takes rhat itself.
    integ[0] = 0.0;
    for (int l = 1; l < half; ++l) {
        double g = 0.0;
        for (int s = 1; s <= model.couplings.m; ++s)
            g += 2.0 * model.couplings.kappa[s - 1] *
                 (1.0 - std::cos(kTwoPi * s * l / n));
        const double f = std::sqrt(g);
        std::complex<double> omega = 0.0;
        for (int s = 0; s <= model.sqroot.m(); ++s)
            omega += model.sqroot.tau[s] * std::polar(1.0, kTwoPi * s * l / n);
        const std::complex<double> qint =
            qhat[l] * (std::sin(f * t) / f) + w[l] * ((1.0 - std::cos(f * t)) / (f * f));
        integ[l] = omega * qint;
    }
    std::vector<double> r_time_integral(n);
    for (auto& z : integ) z *= scale;  // synthesize(x)/sqrt(N) inverts analyze/sqrt(N)
    fft.synthesize(integ.data(), r_time_integral.data());

    double phi = std::sqrt(kappa1) * r_time_integral[site];
    for (int l = 0; l <= site; ++l) phi += initial.p[l];
    return phi;
}

namespace {

VariancePair variance_impl(long long j, double t, double kappa1, double beta) {
    if (!(kappa1 > 0.0)) throw RangeError("kappa_1 must be positive");
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    const double J = static_cast<double>(j) + 1.0;
    const double v0 = std::sqrt(kappa1);
    const double rate = t * kTwoPi * v0 + kTwoPi * std::abs(J);

    // |omega|^2 = 4 kappa_1 sin^2(pi k); the integrands are written through
    // sin^2 half-angle forms so the k -> 0 limits are evaluated stably.
    auto f_of = [&](double k) { return 2.0 * v0 * std::abs(std::sin(M_PI * k)); };

    auto integrand1 = [&](double k) {
        const double f = f_of(k);
        const double sa = std::sin(0.5 * (f * t - kTwoPi * J * k));
        const double sb = std::sin(0.5 * (f * t + kTwoPi * J * k));
        const double s = std::sin(M_PI * k);
        const double denom = 4.0 * kappa1 * s * s;
        if (denom < 1e-280) {  // analytic k -> 0 limit of the bracket / f^2
            return 0.5 * t * t + (J * J) / (2.0 * kappa1);
        }
        return (sa * sa + sb * sb) / denom;
    };
    auto integrand2 = [&](double k) {
        const double f = f_of(k);
        const double sh = std::sin(0.5 * f * t);
        const double s = std::sin(M_PI * k);
        const double denom = 4.0 * kappa1 * s * s;
        if (denom < 1e-280) return 0.5 * t * t * std::cos(kTwoPi * J * k);
        return 2.0 * sh * sh * std::cos(kTwoPi * J * k) / denom;
    };

    VariancePair out;
    out.sigma1_sq = (2.0 * kappa1 / beta) *
                    oscillatory_integrate(integrand1, 0.0, 1.0, rate, 64);
    out.sigma2_sq = (2.0 * kappa1 / beta) *
                        oscillatory_integrate(integrand2, 0.0, 1.0, rate, 64) +
                    J / beta;
    return out;
}

}  // namespace

VariancePair variance_integrals(long long j, double t, double kappa1, double beta) {
    return variance_impl(j, t, kappa1, beta);
}

VariancePair variance_integrals(long long j, double t, const CouplingVector& c,
                                double beta) {
    if (c.m != 1)
        throw RangeError("variance integrals are derived for nearest-neighbour "
                         "interactions (m = 1)");
    return variance_impl(j, t, c.kappa[0], beta);
}

}  // namespace lattice
