#include "lattice/dynamics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "fft.hpp"
#include "lattice/dispersion.hpp"

namespace lattice {

namespace {

constexpr double kBlowUpLimit = 1e6;

std::vector<double> mode_frequencies(const ChainModel& model, int n) {
    std::vector<double> f(n / 2 + 1, 0.0);
    for (int j = 1; j <= n / 2; ++j) {
        double g = 0.0;
        for (int s = 1; s <= model.couplings.m; ++s)
            g += 2.0 * model.couplings.kappa[s - 1] *
                 (1.0 - std::cos(2.0 * M_PI * s * j / n));
        f[j] = std::sqrt(g);
    }
    return f;
}

// Per-thread scratch for the ensemble engine.
struct Workspace {
    explicit Workspace(int n)
        : fft(n), w(n / 2 + 1), qhat(n / 2 + 1), wt(n / 2 + 1), qt(n / 2 + 1),
          p(n), q(n), r(n), e(n), p0(n), r0(n), e0(n), force(n), scratch(n) {}
    detail::RealFourier fft;
    std::vector<std::complex<double>> w, qhat, wt, qt;
    std::vector<double> p, q, r, e, p0, r0, e0, force, scratch;
};

// Draw order per mode j = 1..(N-1)/2: Re w, Im w, Re qhat, Im qhat, where
// w stores conj(phat).
void sample_spectra(const std::vector<double>& fmode, double beta, SplitMix64& rng,
                    std::vector<std::complex<double>>& w,
                    std::vector<std::complex<double>>& qhat) {
    const int half = static_cast<int>(fmode.size());
    const double sigma = std::sqrt(0.5 / beta);
    w[0] = 0.0;
    qhat[0] = 0.0;
    for (int j = 1; j < half; ++j) {
        const double a = rng.next_gaussian(), b = rng.next_gaussian();
        const double c = rng.next_gaussian(), d = rng.next_gaussian();
        w[j] = {sigma * a, sigma * b};
        const double sq = sigma / fmode[j];
        qhat[j] = {sq * c, sq * d};
    }
}

void synthesize_state(Workspace& ws, const ChainModel& model,
                      const std::vector<std::complex<double>>& w,
                      const std::vector<std::complex<double>>& qhat,
                      std::vector<double>& p, std::vector<double>& q,
                      std::vector<double>& r) {
    const int n = ws.fft.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ws.wt = w;
    for (auto& z : ws.wt) z *= scale;
    ws.fft.synthesize(ws.wt.data(), p.data());
    ws.qt = qhat;
    for (auto& z : ws.qt) z *= scale;
    ws.fft.synthesize(ws.qt.data(), q.data());
    const auto rr = elongation(q, model.sqroot);
    std::copy(rr.begin(), rr.end(), r.begin());
}

void rotate_modes(const std::vector<double>& fmode,
                  const std::vector<std::complex<double>>& w,
                  const std::vector<std::complex<double>>& qhat, double t,
                  std::vector<std::complex<double>>& wt,
                  std::vector<std::complex<double>>& qt) {
    const int half = static_cast<int>(fmode.size());
    wt[0] = 0.0;
    qt[0] = 0.0;
    for (int j = 1; j < half; ++j) {
        const double c = std::cos(fmode[j] * t), s = std::sin(fmode[j] * t);
        qt[j] = qhat[j] * c + w[j] * (s / fmode[j]);
        wt[j] = w[j] * c - qhat[j] * (fmode[j] * s);
    }
}

void force_into(std::span<const double> q, const NonlinearModel& model,
                std::vector<double>& scratch, std::vector<double>& out) {
    const int n = static_cast<int>(q.size());
    std::fill(out.begin(), out.end(), 0.0);
    const double chi = model.chi, gamma = model.gamma;
    for (int s = 1; s <= model.base.couplings.m; ++s) {
        const double kap = model.base.couplings.kappa[s - 1];
        for (int j = 0; j < n - s; ++j) {
            const double d = q[j + s] - q[j];
            scratch[j] = kap * (d + chi * d * d + gamma * d * d * d);
        }
        for (int j = n - s; j < n; ++j) {
            const double d = q[j + s - n] - q[j];
            scratch[j] = kap * (d + chi * d * d + gamma * d * d * d);
        }
        for (int j = 0; j < s; ++j) out[j] += scratch[j] - scratch[j - s + n];
        for (int j = s; j < n; ++j) out[j] += scratch[j] - scratch[j - s];
    }
}

void verlet_steps(std::vector<double>& p, std::vector<double>& q,
                  const NonlinearModel& model, double dt, long steps,
                  std::vector<double>& force, std::vector<double>& scratch) {
    const int n = static_cast<int>(q.size());
    force_into(q, model, scratch, force);
    for (long step = 0; step < steps; ++step) {
        for (int j = 0; j < n; ++j) p[j] += 0.5 * dt * force[j];
        double qmax = 0.0;
        for (int j = 0; j < n; ++j) {
            q[j] += dt * p[j];
            qmax = std::max(qmax, std::abs(q[j]));
        }
        if (qmax > kBlowUpLimit)
            throw BlowUp("coordinate magnitude exceeded 1e6; unstable dt or "
                         "non-confining parameters");
        force_into(q, model, scratch, force);
        for (int j = 0; j < n; ++j) p[j] += 0.5 * dt * force[j];
    }
}

}  // namespace

void NonlinearModel::validate() const {
    base.couplings.validate();
    if (gamma < 0.0) throw RangeError("quartic strength gamma must be >= 0");
    if (!std::isfinite(chi) || !std::isfinite(gamma))
        throw RangeError("nonlinearity parameters must be finite");
}

ChainState gibbs_sample(const ChainModel& model, int n, double beta,
                        SplitMix64& rng) {
    if (n % 2 == 0 || n <= 2 * model.couplings.m)
        throw DimensionMismatch("N must be odd and > 2m");
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    Workspace ws(n);
    const auto fmode = mode_frequencies(model, n);
    sample_spectra(fmode, beta, rng, ws.w, ws.qhat);
    ChainState st;
    st.p.resize(n);
    st.q.resize(n);
    st.r.resize(n);
    synthesize_state(ws, model, ws.w, ws.qhat, st.p, st.q, st.r);
    st.time = 0.0;
    return st;
}

ChainState harmonic_propagate(const ChainState& state, double t,
                              const ChainModel& model) {
    const int n = state.size();
    Workspace ws(n);
    const auto fmode = mode_frequencies(model, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    // w = conj(phat) = analyze(p)/sqrt(N), qhat = analyze(q)/sqrt(N)
    ws.fft.analyze(state.p.data(), ws.w.data());
    ws.fft.analyze(state.q.data(), ws.qhat.data());
    for (auto& z : ws.w) z *= scale;
    for (auto& z : ws.qhat) z *= scale;
    ws.w[0] = 0.0;
    ws.qhat[0] = 0.0;
    rotate_modes(fmode, ws.w, ws.qhat, t, ws.wt, ws.qt);
    ChainState out;
    out.p.resize(n);
    out.q.resize(n);
    out.r.resize(n);
    synthesize_state(ws, model, ws.wt, ws.qt, out.p, out.q, out.r);
    out.time = state.time + t;
    return out;
}

std::vector<double> nonlinear_force(std::span<const double> q,
                                    const NonlinearModel& model) {
    model.validate();
    std::vector<double> out(q.size()), scratch(q.size());
    force_into(q, model, scratch, out);
    return out;
}

std::vector<ChainState> integrate(const ChainState& initial,
                                  const NonlinearModel& model, double dt,
                                  long steps) {
    model.validate();
    if (!(dt > 0.0)) throw RangeError("dt must be positive");
    std::vector<ChainState> trajectory;
    trajectory.reserve(steps + 1);
    trajectory.push_back(initial);
    std::vector<double> p = initial.p, q = initial.q;
    std::vector<double> force(p.size()), scratch(p.size());
    for (long s = 0; s < steps; ++s) {
        verlet_steps(p, q, model, dt, 1, force, scratch);
        ChainState st;
        st.p = p;
        st.q = q;
        st.r = elongation(q, model.base.sqroot);
        st.time = initial.time + dt * static_cast<double>(s + 1);
        trajectory.push_back(std::move(st));
    }
    return trajectory;
}

double harmonic_energy(const ChainState& state) {
    double acc = 0.0;
    for (size_t j = 0; j < state.p.size(); ++j)
        acc += 0.5 * (state.p[j] * state.p[j] + state.r[j] * state.r[j]);
    return acc;
}

double nonlinear_energy(const ChainState& state, const NonlinearModel& model) {
    const int n = state.size();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += 0.5 * state.p[j] * state.p[j];
    for (int s = 1; s <= model.base.couplings.m; ++s) {
        const double kap = model.base.couplings.kappa[s - 1];
        for (int j = 0; j < n; ++j) {
            const int idx = (j + s < n) ? j + s : j + s - n;
            const double d = state.q[idx] - state.q[j];
            acc += kap * (0.5 * d * d + model.chi / 3.0 * d * d * d +
                          model.gamma / 4.0 * d * d * d * d);
        }
    }
    return acc;
}

namespace {

struct EnsembleLayout {
    std::vector<double> snapshots;            // sorted unique times
    std::vector<std::vector<size_t>> groups;  // entry indices per snapshot
    size_t n_entries = 0;
    // contribution vector: [entries | means alpha=1..3 per snapshot | means at 0]
    size_t mean_offset(size_t snap, int alpha) const {
        return n_entries + 3 * snap + static_cast<size_t>(alpha - 1);
    }
    size_t mean0_offset(int alpha) const {
        return n_entries + 3 * snapshots.size() + static_cast<size_t>(alpha - 1);
    }
    size_t total() const { return n_entries + 3 * snapshots.size() + 3; }
};

EnsembleLayout build_layout(const EnsembleSpec& spec) {
    EnsembleLayout layout;
    layout.n_entries = spec.observables.size();
    std::map<double, std::vector<size_t>> by_t;
    for (size_t e = 0; e < spec.observables.size(); ++e) {
        const auto& idx = spec.observables[e];
        if (idx.alpha < 1 || idx.alpha > 3 || idx.alphaprime < 1 || idx.alphaprime > 3)
            throw IndexError("observable index must be 1, 2 or 3");
        if (idx.t < 0.0) throw RangeError("snapshot times must be nonnegative");
        by_t[idx.t].push_back(e);
    }
    for (auto& [t, entries] : by_t) {
        layout.snapshots.push_back(t);
        layout.groups.push_back(std::move(entries));
    }
    return layout;
}

void validate_spec(const EnsembleSpec& spec, const NonlinearModel& model,
                   const EnsembleLayout& layout) {
    model.validate();
    if (spec.replicas < 1) throw RangeError("replica count must be >= 1");
    if (spec.n % 2 == 0 || spec.n <= 2 * model.base.couplings.m)
        throw DimensionMismatch("N must be odd and > 2m");
    if (!(spec.beta > 0.0)) throw RangeError("beta must be positive");
    if (!(spec.dt > 0.0)) throw RangeError("dt must be positive");
    const auto fmode = mode_frequencies(model.base, spec.n);
    const double fmax = *std::max_element(fmode.begin(), fmode.end());
    if (spec.dt * fmax > 0.5)
        throw RangeError("dt violates the stability margin dt*max f <= 0.5");
    for (double t : layout.snapshots) {
        const double ratio = t / spec.dt;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            throw RangeError("snapshot times must be multiples of dt");
    }
}

// One replica's contribution, written into `contrib` (layout above).
// Returns false when the trajectory blew up.
bool run_replica(const EnsembleSpec& spec, const NonlinearModel& model,
                 const EnsembleLayout& layout, const std::vector<double>& fmode,
                 std::uint64_t replica, Workspace& ws, std::vector<double>& contrib) {
    const int n = spec.n;
    std::fill(contrib.begin(), contrib.end(), 0.0);
    SplitMix64 rng = replica_stream(spec.seed, replica);
    sample_spectra(fmode, spec.beta, rng, ws.w, ws.qhat);
    synthesize_state(ws, model.base, ws.w, ws.qhat, ws.p, ws.q, ws.r);
    for (int j = 0; j < n; ++j)
        ws.e[j] = 0.5 * (ws.p[j] * ws.p[j] + ws.r[j] * ws.r[j]);
    std::copy(ws.p.begin(), ws.p.end(), ws.p0.begin());
    std::copy(ws.r.begin(), ws.r.end(), ws.r0.begin());
    std::copy(ws.e.begin(), ws.e.end(), ws.e0.begin());

    auto observable0 = [&](int alpha) -> const std::vector<double>& {
        return alpha == 1 ? ws.r0 : (alpha == 2 ? ws.p0 : ws.e0);
    };
    auto observable_t = [&](int alpha) -> const std::vector<double>& {
        return alpha == 1 ? ws.r : (alpha == 2 ? ws.p : ws.e);
    };
    for (int alpha = 1; alpha <= 3; ++alpha) {
        double mean = 0.0;
        for (double v : observable0(alpha)) mean += v;
        contrib[layout.mean0_offset(alpha)] = mean / n;
    }

    double current_t = 0.0;
    const bool linear = model.is_linear();
    try {
        for (size_t snap = 0; snap < layout.snapshots.size(); ++snap) {
            const double t = layout.snapshots[snap];
            if (linear) {
                rotate_modes(fmode, ws.w, ws.qhat, t, ws.wt, ws.qt);
                synthesize_state(ws, model.base, ws.wt, ws.qt, ws.p, ws.q, ws.r);
            } else if (t > current_t) {
                const long steps =
                    static_cast<long>(std::llround((t - current_t) / spec.dt));
                verlet_steps(ws.p, ws.q, model, spec.dt, steps, ws.force, ws.scratch);
                const auto rr = elongation(ws.q, model.base.sqroot);
                std::copy(rr.begin(), rr.end(), ws.r.begin());
                current_t = t;
            }
            for (int j = 0; j < n; ++j)
                ws.e[j] = 0.5 * (ws.p[j] * ws.p[j] + ws.r[j] * ws.r[j]);

            for (int alpha = 1; alpha <= 3; ++alpha) {
                double mean = 0.0;
                for (double v : observable_t(alpha)) mean += v;
                contrib[layout.mean_offset(snap, alpha)] = mean / n;
            }
            for (size_t e : layout.groups[snap]) {
                const auto& idx = spec.observables[e];
                const auto& ua = observable_t(idx.alpha);
                const auto& ub = observable0(idx.alphaprime);
                const long long jmod = ((idx.j % n) + n) % n;
                const int shift = static_cast<int>(jmod);
                double acc = 0.0;
                for (int o = 0; o < n - shift; ++o) acc += ua[o + shift] * ub[o];
                for (int o = n - shift; o < n; ++o) acc += ua[o + shift - n] * ub[o];
                contrib[e] = acc / n;
            }
        }
    } catch (const BlowUp&) {
        return false;
    }
    return true;
}

CorrelationDataset ensemble_engine(const EnsembleSpec& spec,
                                   const NonlinearModel& model, int threads,
                                   bool use_openmp) {
    const EnsembleLayout layout = build_layout(spec);
    validate_spec(spec, model, layout);
    const auto fmode = mode_frequencies(model.base, spec.n);
    const size_t width = layout.total();

    std::vector<double> acc(width, 0.0), accsq(layout.n_entries, 0.0);
    long ok_count = 0, aborted = 0;

    const long block = 64;
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
    std::vector<std::unique_ptr<Workspace>> pool(
        static_cast<size_t>(std::max(1, nthreads)));
    std::vector<std::vector<double>> contribs(block, std::vector<double>(width));
    std::vector<char> status(block, 0);

    for (long base = 0; base < spec.replicas; base += block) {
        const long count = std::min(block, spec.replicas - base);
        if (use_openmp) {
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
            for (long i = 0; i < count; ++i) {
                auto& slot = pool[static_cast<size_t>(omp_get_thread_num())];
                if (!slot) slot = std::make_unique<Workspace>(spec.n);
                status[i] = run_replica(spec, model, layout, fmode,
                                        static_cast<std::uint64_t>(base + i), *slot,
                                        contribs[i])
                                ? 1
                                : 0;
            }
        } else {
            if (!pool[0]) pool[0] = std::make_unique<Workspace>(spec.n);
            for (long i = 0; i < count; ++i)
                status[i] = run_replica(spec, model, layout, fmode,
                                        static_cast<std::uint64_t>(base + i), *pool[0],
                                        contribs[i])
                                ? 1
                                : 0;
        }
        // Deterministic reduction in ascending replica order.
        for (long i = 0; i < count; ++i) {
            if (!status[i]) {
                ++aborted;
                continue;
            }
            ++ok_count;
            const auto& c = contribs[i];
            for (size_t k = 0; k < width; ++k) acc[k] += c[k];
            for (size_t k = 0; k < layout.n_entries; ++k) accsq[k] += c[k] * c[k];
        }
    }

    if (aborted > 0 && static_cast<double>(aborted) > 0.001 * spec.replicas)
        throw BlowUp("more than 0.1% of replicas aborted");
    if (ok_count == 0) throw BlowUp("all replicas aborted");

    CorrelationDataset out;
    out.model_descriptor = "m=" + std::to_string(model.base.couplings.m) +
                           " chi=" + std::to_string(model.chi) +
                           " gamma=" + std::to_string(model.gamma);
    out.entries.resize(layout.n_entries);
    const double M = static_cast<double>(ok_count);
    for (size_t snap = 0; snap < layout.snapshots.size(); ++snap) {
        for (size_t e : layout.groups[snap]) {
            const auto& idx = spec.observables[e];
            const double mean_x = acc[e] / M;
            const double mean_a = acc[layout.mean_offset(snap, idx.alpha)] / M;
            const double mean_b = acc[layout.mean0_offset(idx.alphaprime)] / M;
            CorrelationEntry entry;
            entry.idx = idx;
            entry.value = mean_x - mean_a * mean_b;
            const double var = std::max(0.0, accsq[e] / M - mean_x * mean_x);
            entry.stderr_ = (ok_count > 1) ? std::sqrt(var / (M - 1.0)) : 0.0;
            entry.method = "mc";
            out.entries[e] = entry;
        }
    }
    return out;
}

}  // namespace

CorrelationDataset mc_correlations(const EnsembleSpec& spec,
                                   const NonlinearModel& model, int threads) {
    return ensemble_engine(spec, model, threads, /*use_openmp=*/true);
}

CorrelationDataset mc_correlations_reference(const EnsembleSpec& spec,
                                             const NonlinearModel& model) {
    return ensemble_engine(spec, model, 1, /*use_openmp=*/false);
}

}  // namespace lattice
