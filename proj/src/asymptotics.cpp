#include "lattice/asymptotics.hpp"

#include <cmath>

#include "lattice/quadrature.hpp"

namespace lattice {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kAiryZero = 0.3550280538878172;   // Ai(0) = 3^(-2/3)/Gamma(2/3)
constexpr double kAiryPrime = 0.2588194037928068;  // -Ai'(0) = 3^(-1/3)/Gamma(1/3)
constexpr double kSeriesEdge = 8.0;  // series/asymptotics crossover

double airy_series(double x) {
    // Ai = c1 f - c2 g with the two standard Maclaurin series.
    double f = 1.0, g = x;
    double tf = 1.0, tg = x;
    for (int n = 1; n < 120; ++n) {
        tf *= x * x * x / ((3.0 * n) * (3.0 * n - 1.0) * (3.0 * n - 2.0)) * (3.0 * n - 2.0);
        tg *= x * x * x / ((3.0 * n + 1.0) * (3.0 * n) * (3.0 * n - 1.0)) * (3.0 * n - 1.0);
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-20 && std::abs(tg) < 1e-20) break;
    }
    return kAiryZero * f - kAiryPrime * g;
}

// Poincare coefficients u_n of the Airy asymptotics, accumulated until the
// terms stop decreasing.
double airy_asymptotic_pos(double x) {
    const double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    if (zeta > 700.0) return 0.0;  // exp underflow
    double term = 1.0, sum = 1.0, u = 1.0;
    for (int n = 1; n < 60; ++n) {
        u *= (6.0 * n - 5.0) * (6.0 * n - 3.0) * (6.0 * n - 1.0) /
             (216.0 * n * (2.0 * n - 1.0));
        const double next = ((n % 2 == 1) ? -1.0 : 1.0) * u / std::pow(zeta, n);
        if (std::abs(next) >= std::abs(term) && n > 2) break;
        term = next;
        sum += next;
    }
    return std::exp(-zeta) * sum / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25));
}

double airy_asymptotic_neg(double x) {
    const double z = -x;
    const double zeta = (2.0 / 3.0) * std::pow(z, 1.5);
    // Two interleaved sums (DLMF 9.7.9).
    double even_sum = 0.0, odd_sum = 0.0;
    double u = 1.0, prev = 1e300;
    for (int n = 0; n < 60; ++n) {
        const double term = u / std::pow(zeta, n);
        if (std::abs(term) >= prev) break;
        prev = std::abs(term);
        const double signed_term = ((n / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        if (n % 2 == 0)
            even_sum += signed_term;
        else
            odd_sum += signed_term;
        u *= (6.0 * (n + 1) - 5.0) * (6.0 * (n + 1) - 3.0) * (6.0 * (n + 1) - 1.0) /
             (216.0 * (n + 1) * (2.0 * (n + 1) - 1.0));
    }
    const double phase = zeta - 0.25 * M_PI;
    return (std::cos(phase) * even_sum + std::sin(phase) * odd_sum) /
           (std::sqrt(M_PI) * std::pow(z, 0.25));
}

}  // namespace

namespace detail {

double airy_ai(double x) {
    if (x < -1e10)
        throw DomainError("Airy phase is not resolvable in double precision");
    if (std::abs(x) <= kSeriesEdge) return airy_series(x);
    return (x > 0.0) ? airy_asymptotic_pos(x) : airy_asymptotic_neg(x);
}

}  // namespace detail

double airy_fn(double x) {
    if (!(x >= -40.0 && x <= 40.0))
        throw DomainError("airy_fn defined on [-40, 40]");
    return detail::airy_ai(x);
}

std::complex<double> pearcey_fn(int sign, double a) {
    if (sign != 1 && sign != -1) throw DomainError("Pearcey sign must be +-1");
    if (!(std::abs(a) <= 100.0)) throw DomainError("Pearcey argument limited to |a| <= 100");
    // P_+(a): deform the real line through the single real saddle y* of
    // y^4 + a y onto straight legs in the exp(i pi/8) valley directions.
    // Along both legs Re[i(y^4 + ay)] <= 0 for every real a, so the
    // integrand never exceeds 1 in magnitude.
    const double ystar = -std::cbrt(a / 4.0);
    const std::complex<double> dir = std::polar(1.0, M_PI / 8.0);
    const std::complex<double> I(0.0, 1.0);
    auto exponent = [&](const std::complex<double>& y) {
        return I * (y * y * y * y + a * y);
    };
    const GaussRule& rule = gauss_rule(12);
    const int panels = 96;
    const double S = 6.0;
    const double h = S / panels;
    std::complex<double> acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (size_t i = 0; i < rule.node.size(); ++i) {
            const double s = mid + 0.5 * h * rule.node[i];
            const std::complex<double> right = std::exp(exponent(ystar + dir * s));
            const std::complex<double> left = std::exp(exponent(ystar - dir * s));
            acc += rule.weight[i] * 0.5 * h * (right + left);
        }
    }
    const std::complex<double> plus = dir * acc;
    return (sign == 1) ? plus : std::conj(plus);
}

double airy_parametrix(const CorrelationIndex& idx, const ChainModel& model,
                       double beta) {
    if (!(idx.t > 0.0)) throw RegimeError("Airy parametrix needs t > 0");
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    const bool a3 = idx.alpha == 3, b3 = idx.alphaprime == 3;
    if (a3 != b3) return 0.0;
    const AiryConstants ac = airy_constants(model.couplings);
    const double scale = ac.lambda0 * std::cbrt(idx.t);
    const double jj = static_cast<double>(idx.j);
    const double right = detail::airy_ai((jj - ac.v0 * idx.t) / scale);
    const double left = detail::airy_ai(-(jj + ac.v0 * idx.t) / scale);
    if (a3)
        return (right * right + left * left) /
               (2.0 * beta * beta * scale * scale);
    if (idx.alpha == idx.alphaprime) return (right + left) / (2.0 * beta * scale);
    return (left - right) / (2.0 * beta * scale);  // S12 = S21
}

double pearcey_parametrix(const CorrelationIndex& idx, const DegeneratePoint& point,
                          const ChainModel& model, double beta) {
    if (!(idx.t > 0.0)) throw RegimeError("Pearcey parametrix needs t > 0");
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    if (point.sign == 0 || !(point.lambdastar > 0.0))
        throw RegimeError("degenerate point is not certified");
    const bool a3 = idx.alpha == 3, b3 = idx.alphaprime == 3;
    if (a3 != b3) return 0.0;

    const double t = idx.t;
    const double jj = static_cast<double>(idx.j);
    const double width = point.lambdastar * std::pow(t, 0.25);
    const double pref = 1.0 / (2.0 * beta * M_PI * width);
    const bool half_case = std::abs(point.kstar - 0.5) < 1e-12;

    if (half_case) {
        const double w = jj / width;
        if (std::abs(w) > 50.0)
            throw RegimeError("site outside the Pearcey parametrix window");
        const std::complex<double> P = pearcey_fn(point.sign, w);
        if (a3) return std::norm(P) / (4.0 * beta * beta * M_PI * M_PI * width * width);
        const double fj = frequency_jet(0.5, model.couplings).f;
        const std::complex<double> ph = std::polar(1.0, t * fj);
        const double parity = (idx.j % 2 == 0) ? 1.0 : -1.0;
        if (idx.alpha == idx.alphaprime) return parity * pref * (ph * P).real();
        double odd_tau = 0.0;
        for (int s = 1; s <= model.sqroot.m(); s += 2) odd_tau += model.sqroot.tau[s];
        const double sgn = (odd_tau >= 0.0) ? 1.0 : -1.0;
        return -sgn * parity * pref * (ph * P).imag();
    }

    const double w = (point.vstar * t - std::abs(jj)) / width;
    if (std::abs(w) > 50.0)
        throw RegimeError("site outside the Pearcey parametrix window");
    const std::complex<double> P = pearcey_fn(point.sign, w);
    const double fstar = frequency_jet(point.kstar, model.couplings).f;
    // phi_- for j >= 0, phi_+ with theta -> -theta for j < 0; both give
    // t f(k*) - 2 pi k* |j| in the exponent.
    const double phase = t * fstar - kTwoPi * point.kstar * std::abs(jj);
    const double theta = theta_branch(point.kstar, model.sqroot);
    const double theta_eff = (jj >= 0.0) ? theta : -theta;
    const std::complex<double> ph = std::polar(1.0, phase);

    auto s_pair = [&](int alpha, int alphaprime) {
        if (alpha == alphaprime) return pref * (ph * P).real();
        if (alpha == 1)  // S12
            return pref * (ph * std::polar(1.0, -theta_eff) * P).imag();
        return -pref * (ph * std::polar(1.0, theta_eff) * P).imag();  // S21
    };
    if (a3) {
        // Theorem-level combination 1/2 sum of squares of the four pair
        // parametrices; the interior statement itself covers alpha <= 2.
        const double s11 = s_pair(1, 1);
        const double s12 = s_pair(1, 2);
        const double s21 = s_pair(2, 1);
        return 0.5 * (2.0 * s11 * s11 + s12 * s12 + s21 * s21);
    }
    return s_pair(idx.alpha, idx.alphaprime);
}

}  // namespace lattice
