#include "lattice/correlations.hpp"

#include <omp.h>

#include <cmath>
#include <functional>

#include "lattice/quadrature.hpp"

namespace lattice {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct NodeState {
    double f;       // |omega(k)|
    double costh;   // cos theta(k)
    double sinth;   // sin theta(k)
};

NodeState node_state(double k, const ChainModel& model) {
    double g = 0.0, re = 0.0, im = 0.0;
    const int m = model.couplings.m;
    for (int s = 1; s <= m; ++s) {
        const double a = kTwoPi * s * k;
        const double cs = std::cos(a), sn = std::sin(a);
        g += 2.0 * model.couplings.kappa[s - 1] * (1.0 - cs);
        re -= model.sqroot.tau[s] * (1.0 - cs);
        im += model.sqroot.tau[s] * sn;
    }
    NodeState st;
    st.f = std::sqrt(g);
    if (st.f > 0.0) {
        st.costh = re / st.f;
        st.sinth = im / st.f;
    } else {
        st.costh = 0.0;
        st.sinth = 1.0;  // theta(0) = pi/2 limit
    }
    return st;
}

int min_panels_for(const ChainModel& model) { return 16 + 8 * model.couplings.m; }

double pair_integral(int alpha, int alphaprime, long long j, double t,
                     const ChainModel& model, double beta, long panel_cap) {
    const double v0 = std::sqrt([&] {
        double acc = 0.0;
        for (int s = 1; s <= model.couplings.m; ++s)
            acc += static_cast<double>(s) * s * model.couplings.kappa[s - 1];
        return acc;
    }());
    const double rate = t * kTwoPi * v0 + kTwoPi * std::abs(static_cast<double>(j));
    const double jj = static_cast<double>(j);

    std::function<double(double)> integrand;
    double sign = 1.0;
    if (alpha == alphaprime) {  // (1,1) and (2,2) coincide
        integrand = [&](double k) {
            const NodeState st = node_state(k, model);
            return std::cos(st.f * t) * std::cos(kTwoPi * k * jj);
        };
    } else if (alpha == 1 && alphaprime == 2) {
        integrand = [&](double k) {
            const NodeState st = node_state(k, model);
            const double a = kTwoPi * k * jj;
            return std::sin(st.f * t) *
                   (std::cos(a) * st.costh - std::sin(a) * st.sinth);
        };
    } else {  // (2,1)
        sign = -1.0;
        integrand = [&](double k) {
            const NodeState st = node_state(k, model);
            const double a = kTwoPi * k * jj;
            return std::sin(st.f * t) *
                   (std::cos(a) * st.costh + std::sin(a) * st.sinth);
        };
    }
    return sign / beta *
           oscillatory_integrate(integrand, 0.0, 1.0, rate, min_panels_for(model),
                                 panel_cap);
}

}  // namespace

double limit_correlation(const CorrelationIndex& idx, const ChainModel& model,
                         double beta, long panel_cap) {
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    if (idx.t < 0.0) throw RangeError("time must be nonnegative");
    const bool a3 = idx.alpha == 3, b3 = idx.alphaprime == 3;
    if (idx.alpha < 1 || idx.alpha > 3 || idx.alphaprime < 1 || idx.alphaprime > 3)
        throw IndexError("observable index must be 1, 2 or 3");
    if (a3 != b3) return 0.0;
    if (a3 && b3) {
        const double s11 = pair_integral(1, 1, idx.j, idx.t, model, beta, panel_cap);
        const double s12 = pair_integral(1, 2, idx.j, idx.t, model, beta, panel_cap);
        const double s21 = pair_integral(2, 1, idx.j, idx.t, model, beta, panel_cap);
        return 0.5 * (2.0 * s11 * s11 + s12 * s12 + s21 * s21);
    }
    return pair_integral(idx.alpha, idx.alphaprime, idx.j, idx.t, model, beta,
                         panel_cap);
}

FiniteSpectrum finite_spectrum(const ChainModel& model, int n) {
    if (n % 2 == 0 || n <= 2 * model.couplings.m)
        throw DimensionMismatch("N must be odd and > 2m");
    FiniteSpectrum spec;
    spec.n = n;
    spec.f.resize(n - 1);
    spec.costh.resize(n - 1);
    spec.sinth.resize(n - 1);
    for (int l = 1; l < n; ++l) {
        const NodeState st = node_state(static_cast<double>(l) / n, model);
        spec.f[l - 1] = st.f;
        spec.costh[l - 1] = st.costh;
        spec.sinth[l - 1] = st.sinth;
    }
    return spec;
}

double finite_correlation(const CorrelationIndex& idx, const FiniteSpectrum& spec,
                          double beta) {
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    const bool a3 = idx.alpha == 3, b3 = idx.alphaprime == 3;
    if (a3 != b3) return 0.0;
    const int n = spec.n;
    auto pair_sum = [&](int alpha, int alphaprime) {
        double acc = 0.0;
        const double jj = static_cast<double>(idx.j);
        if (alpha == alphaprime) {
            for (int l = 1; l < n; ++l)
                acc += std::cos(spec.f[l - 1] * idx.t) * std::cos(kTwoPi * l * jj / n);
            return acc / (n * beta);
        }
        const double sign = (alpha == 1) ? 1.0 : -1.0;
        const double thsign = (alpha == 1) ? 1.0 : -1.0;
        for (int l = 1; l < n; ++l) {
            const double a = kTwoPi * l * jj / n;
            // cos(a + theta) resp. cos(a - theta) without branch tracking
            const double c =
                std::cos(a) * spec.costh[l - 1] - thsign * std::sin(a) * spec.sinth[l - 1];
            acc += std::sin(spec.f[l - 1] * idx.t) * c;
        }
        return sign * acc / (n * beta);
    };
    if (a3) {
        const double s11 = pair_sum(1, 1);
        const double s12 = pair_sum(1, 2);
        const double s21 = pair_sum(2, 1);
        return 0.5 * (2.0 * s11 * s11 + s12 * s12 + s21 * s21) +
               3.0 * (n - 1.0) / (2.0 * static_cast<double>(n) * n * beta * beta);
    }
    return pair_sum(idx.alpha, idx.alphaprime);
}

double finite_correlation(const CorrelationIndex& idx, const ChainModel& model,
                          double beta, int n) {
    return finite_correlation(idx, finite_spectrum(model, n), beta);
}

namespace {

int fallback_n(double t, double v0, long long j) {
    double need = std::max({40.0 * t * v0, 8.0 * std::abs(static_cast<double>(j)),
                            1001.0});
    int n = static_cast<int>(std::ceil(need));
    if (n % 2 == 0) ++n;
    return n;
}

CorrelationDataset field_impl(int alpha, int alphaprime, long long j_lo,
                              long long j_hi, const std::vector<double>& t_list,
                              const ChainModel& model, double beta,
                              CorrelationMethod method, int threads) {
    if (j_hi < j_lo) throw RangeError("empty site range");
    CorrelationDataset out;
    out.model_descriptor = "m=" + std::to_string(model.couplings.m);
    const long long njs = j_hi - j_lo + 1;
    const long long total = njs * static_cast<long long>(t_list.size());
    out.entries.resize(total);
    if (total == 0) return out;

    const double v0 = airy_constants(model.couplings).v0;
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
    for (long long e = 0; e < total; ++e) {
        const long long jt = e / njs;
        const long long j = j_lo + (e % njs);
        const double t = t_list[static_cast<size_t>(jt)];
        CorrelationIndex idx{alpha, alphaprime, j, t};
        CorrelationEntry entry;
        entry.idx = idx;
        switch (method) {
            case CorrelationMethod::exact:
                entry.value = limit_correlation(idx, model, beta);
                entry.method = "exact";
                break;
            case CorrelationMethod::finiteN:
                entry.value = finite_correlation(idx, model, beta, fallback_n(t, v0, j));
                entry.method = "finiteN";
                break;
            case CorrelationMethod::autoselect:
                try {
                    entry.value = limit_correlation(idx, model, beta);
                    entry.method = "exact";
                } catch (const QuadratureNonConvergence&) {
                    entry.value =
                        finite_correlation(idx, model, beta, fallback_n(t, v0, j));
                    entry.method = "finiteN";
                }
                break;
        }
        out.entries[static_cast<size_t>(e)] = entry;
    }
    return out;
}

}  // namespace

CorrelationDataset correlation_field(int alpha, int alphaprime, long long j_lo,
                                     long long j_hi, const std::vector<double>& t_list,
                                     const ChainModel& model, double beta,
                                     CorrelationMethod method, int threads) {
    return field_impl(alpha, alphaprime, j_lo, j_hi, t_list, model, beta, method,
                      threads);
}

CorrelationDataset correlation_field_reference(int alpha, int alphaprime,
                                               long long j_lo, long long j_hi,
                                               const std::vector<double>& t_list,
                                               const ChainModel& model, double beta,
                                               CorrelationMethod method) {
    return field_impl(alpha, alphaprime, j_lo, j_hi, t_list, model, beta, method, 1);
}

double hierarchy_correlation(int kidx, ChargeKind kkind, int nidx, ChargeKind nkind,
                             long long j, double t, const ChainModel& model,
                             double beta, long panel_cap) {
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    if (kidx < 0 || nidx < 0) throw IndexError("charge index must be nonnegative");
    if (kkind == ChargeKind::odd_type && kidx < 1)
        throw IndexError("odd-type charge index must be >= 1");
    if (nkind == ChargeKind::odd_type && nidx < 1)
        throw IndexError("odd-type charge index must be >= 1");

    const double v0 = airy_constants(model.couplings).v0;
    const int min_p = min_panels_for(model);
    const double jj = static_cast<double>(j);

    auto integral = [&](const std::function<double(double, const NodeState&)>& fn,
                        double site_freq) {
        const double rate = t * kTwoPi * v0 + kTwoPi * std::abs(site_freq);
        return oscillatory_integrate(
            [&](double k) { return fn(k, node_state(k, model)); }, 0.0, 1.0, rate,
            min_p, panel_cap);
    };

    const double pref = 1.0 / (2.0 * beta * beta);

    if (kkind == ChargeKind::even_type && nkind == ChargeKind::even_type) {
        auto Ic = [&](double a) {
            return integral(
                [&](double k, const NodeState& st) {
                    return std::cos(st.f * t) * std::cos(kTwoPi * k * a);
                },
                a);
        };
        auto Ac = [&](double a) {
            return integral(
                [&](double k, const NodeState& st) {
                    return std::sin(st.f * t) * std::cos(kTwoPi * k * a) * st.costh;
                },
                a);
        };
        auto Bs = [&](double a) {
            return integral(
                [&](double k, const NodeState& st) {
                    return std::sin(st.f * t) * std::sin(kTwoPi * k * a) * st.sinth;
                },
                a);
        };
        return pref * (Ic(jj - nidx) * Ic(jj + kidx) + Ic(jj) * Ic(jj + kidx - nidx) +
                       Ac(jj - nidx) * Ac(jj + kidx) + Bs(jj - nidx) * Bs(jj + kidx));
    }

    if (kkind == ChargeKind::odd_type && nkind == ChargeKind::odd_type) {
        // Printed for S_{n+3,k+3}: first slot odd index n, second odd index k.
        const int nn = kidx, kk = nidx;
        auto F1 = [&](double a) {
            return integral(
                [&](double k, const NodeState& st) {
                    return st.f * std::sin(st.f * t) * std::sin(kTwoPi * k * jj) *
                           std::sin(kTwoPi * k * a);
                },
                std::abs(jj) + a);
        };
        auto F2 = [&]() {
            return integral(
                [&](double k, const NodeState& st) {
                    return st.f * st.f * std::cos(st.f * t) * std::cos(kTwoPi * k * jj);
                },
                jj);
        };
        auto F3 = [&]() {
            return integral(
                [&](double k, const NodeState& st) {
                    return std::cos(st.f * t) * std::cos(kTwoPi * k * jj) *
                           std::sin(kTwoPi * k * nn) * std::sin(kTwoPi * k * kk);
                },
                std::abs(jj) + nn + kk);
        };
        return pref * (F1(nn) * F1(kk) + F2() * F3());
    }

    // Mixed case: the appendix fixes the even-type density at (j, t) and the
    // odd-type one at the origin; map either argument order onto that layout.
    const int even_idx = (kkind == ChargeKind::even_type) ? kidx : nidx;
    const int odd_idx = (kkind == ChargeKind::odd_type) ? kidx : nidx;
    auto X = [&](bool use_sin) {
        return integral(
            [&](double k, const NodeState& st) {
                const double a = kTwoPi * k * jj;
                const double site = std::cos(a) * st.costh + std::sin(a) * st.sinth;
                return site * (use_sin ? std::sin(st.f * t) : std::cos(st.f * t));
            },
            jj);
    };
    auto Y = [&](bool first_term, bool use_sin) {
        return integral(
            [&](double k, const NodeState& st) {
                const double time = use_sin ? std::sin(st.f * t) : std::cos(st.f * t);
                if (first_term)
                    return std::cos(kTwoPi * k * jj) * std::sin(kTwoPi * k * odd_idx) *
                           std::sin(kTwoPi * k * even_idx) * time;
                return std::sin(kTwoPi * k * jj) * std::sin(kTwoPi * k * odd_idx) *
                       std::cos(kTwoPi * k * even_idx) * time;
            },
            std::abs(jj) + odd_idx + even_idx);
    };
    const double xs = X(true), xc = X(false);
    const double term1 = xs * Y(true, false) + xc * Y(true, true);
    const double term2 = xs * Y(false, false) - xc * Y(false, true);
    return pref * (term1 + term2);
}

}  // namespace lattice
