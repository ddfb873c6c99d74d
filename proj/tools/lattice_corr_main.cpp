#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lattice/asymptotics.hpp"
#include "lattice/dataset.hpp"
#include "lattice/dynamics.hpp"
#include "lattice/hierarchy.hpp"

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Experiment {
    lattice::ChainModel model;
    std::string model_name;  // preset name or "custom"
    double beta = 1.0;
    std::string mode;
    long long j_min = 0, j_max = 0;
    std::vector<double> t_list;
    std::vector<std::pair<int, int>> observables;
    // MC block
    long replicas = 10000;
    std::uint64_t seed = 0;
    double dt = 0.02;
    double chi = 0.0, gamma = 0.0;
    std::string out_path = "dataset.csv";
    std::string out_format = "csv";
};

lattice::ChainModel model_from_preset(const std::string& name) {
    if (name == "nn") return lattice::preset_nn();
    if (name == "example1") return lattice::preset_example1();
    if (name == "example2") return lattice::preset_example2();
    throw ConfigError("model.preset: unknown preset '" + name +
                      "' (expected nn|example1|example2)");
}

Experiment parse_config(const json& doc) {
    Experiment exp;
    try {
        if (!doc.contains("model")) throw ConfigError("model: required field missing");
        const auto& model = doc.at("model");
        if (model.contains("preset")) {
            exp.model_name = model.at("preset").get<std::string>();
            exp.model = model_from_preset(exp.model_name);
        } else {
            exp.model_name = "custom";
            lattice::CouplingVector c;
            c.m = model.value("m", 0);
            if (!model.contains("kappa"))
                throw ConfigError("model.kappa: required for custom models");
            c.kappa = model.at("kappa").get<std::vector<double>>();
            if (c.m == 0) c.m = static_cast<int>(c.kappa.size());
            try {
                exp.model = lattice::make_chain_model(c);
            } catch (const lattice::InvalidCoupling& err) {
                throw ConfigError(std::string("model.kappa: ") + err.what());
            }
        }
        exp.beta = doc.value("beta", 1.0);
        if (!(exp.beta > 0.0)) throw ConfigError("beta: must be positive");
        exp.mode = doc.value("mode", "exact");
        const bool known = exp.mode == "exact" || exp.mode == "finiteN" ||
                           exp.mode == "airy" || exp.mode == "pearcey" ||
                           exp.mode == "mc";
        if (!known)
            throw ConfigError("mode: expected exact|finiteN|airy|pearcey|mc");
        if (!doc.contains("grid")) throw ConfigError("grid: required field missing");
        const auto& grid = doc.at("grid");
        exp.j_min = grid.value("j_min", 0LL);
        exp.j_max = grid.value("j_max", 0LL);
        if (exp.j_max < exp.j_min) throw ConfigError("grid.j_max: must be >= j_min");
        if (!grid.contains("t")) throw ConfigError("grid.t: required list of times");
        exp.t_list = grid.at("t").get<std::vector<double>>();
        for (double t : exp.t_list)
            if (t < 0.0) throw ConfigError("grid.t: times must be nonnegative");
        if (doc.contains("observables")) {
            for (const auto& pair : doc.at("observables")) {
                const int a = pair.at(0).get<int>(), b = pair.at(1).get<int>();
                if (a < 1 || a > 3 || b < 1 || b > 3)
                    throw ConfigError("observables: indices must be in 1..3");
                exp.observables.emplace_back(a, b);
            }
        } else {
            exp.observables = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}};
        }
        if (doc.contains("mc")) {
            const auto& mc = doc.at("mc");
            exp.replicas = mc.value("replicas", 10000L);
            exp.seed = mc.value("seed", 0ULL);
            exp.dt = mc.value("dt", 0.02);
            exp.chi = mc.value("chi", 0.0);
            exp.gamma = mc.value("gamma", 0.0);
            if (exp.replicas < 1) throw ConfigError("mc.replicas: must be >= 1");
            if (!(exp.dt > 0.0)) throw ConfigError("mc.dt: must be positive");
            if (exp.gamma < 0.0) throw ConfigError("mc.gamma: must be >= 0");
        }
        if (doc.contains("output")) {
            exp.out_path = doc.at("output").value("path", exp.out_path);
            exp.out_format = doc.at("output").value("format", exp.out_format);
            if (exp.out_format != "csv" && exp.out_format != "json")
                throw ConfigError("output.format: expected csv|json");
        }
    } catch (const json::exception& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
    return exp;
}

json config_echo(const Experiment& exp, int n_override) {
    json doc;
    doc["model"] = {{"m", exp.model.couplings.m}, {"kappa", exp.model.couplings.kappa}};
    if (exp.model_name != "custom") doc["model"]["preset"] = exp.model_name;
    doc["beta"] = exp.beta;
    doc["mode"] = exp.mode;
    doc["grid"] = {{"j_min", exp.j_min}, {"j_max", exp.j_max}, {"t", exp.t_list}};
    auto obs = json::array();
    for (const auto& [a, b] : exp.observables) obs.push_back({a, b});
    doc["observables"] = std::move(obs);
    doc["mc"] = {{"replicas", exp.replicas}, {"seed", exp.seed},    {"dt", exp.dt},
                 {"chi", exp.chi},           {"gamma", exp.gamma}};
    doc["output"] = {{"path", exp.out_path}, {"format", exp.out_format}};
    if (n_override > 0) doc["finite_n"] = n_override;
    return doc;
}

int resolve_threads() {
    const char* env = std::getenv("LATTICE_CORR_THREADS");
    if (!env) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 0;
}

lattice::Dataset run_experiment(const Experiment& exp) {
    using namespace lattice;
    Dataset ds;
    const int threads = resolve_threads();
    ds.meta = config_echo(exp, 0);
    ds.meta["version"] = kCodeVersion;

    if (exp.mode == "mc") {
        EnsembleSpec spec;
        spec.replicas = exp.replicas;
        spec.seed = exp.seed;
        spec.beta = exp.beta;
        spec.dt = exp.dt;
        // Chain long enough that no peak wraps around within the sampled times.
        const double v0 = airy_constants(exp.model.couplings).v0;
        double tmax = 0.0;
        for (double t : exp.t_list) tmax = std::max(tmax, t);
        long long span = 2 * std::max(std::llabs(exp.j_min), std::llabs(exp.j_max)) + 1;
        long long need = static_cast<long long>(std::ceil(2.6 * v0 * tmax)) + 1;
        int n = static_cast<int>(std::max({span, need, 257LL}));
        if (n % 2 == 0) ++n;
        spec.n = n;
        ds.meta["finite_n"] = n;
        for (const auto& [a, b] : exp.observables)
            for (double t : exp.t_list)
                for (long long j = exp.j_min; j <= exp.j_max; ++j)
                    spec.observables.push_back({a, b, j, t});
        NonlinearModel model{exp.model, exp.chi, exp.gamma};
        const CorrelationDataset result = mc_correlations(spec, model, threads);
        ds.rows = result.entries;
        return ds;
    }

    if (exp.mode == "exact" || exp.mode == "finiteN") {
        const auto method = exp.mode == "exact" ? CorrelationMethod::exact
                                                : CorrelationMethod::finiteN;
        for (const auto& [a, b] : exp.observables) {
            const CorrelationDataset part = correlation_field(
                a, b, exp.j_min, exp.j_max, exp.t_list, exp.model, exp.beta, method,
                threads);
            ds.rows.insert(ds.rows.end(), part.entries.begin(), part.entries.end());
        }
        return ds;
    }

    if (exp.mode == "airy") {
        ds.meta["concave"] = concavity_check(exp.model.couplings);
        const AiryConstants ac = airy_constants(exp.model.couplings);
        ds.meta["v0"] = ac.v0;
        ds.meta["lambda0"] = ac.lambda0;
        for (const auto& [a, b] : exp.observables)
            for (double t : exp.t_list)
                for (long long j = exp.j_min; j <= exp.j_max; ++j) {
                    CorrelationEntry entry;
                    entry.idx = {a, b, j, t};
                    entry.value = airy_parametrix(entry.idx, exp.model, exp.beta);
                    entry.method = "airy";
                    ds.rows.push_back(std::move(entry));
                }
        return ds;
    }

    // pearcey: certify the degenerate point, half case first, then the
    // interior Newton search over a seed grid.
    std::optional<DegeneratePoint> point = degenerate_point_half(exp.model.couplings);
    ChainModel model = exp.model;
    if (!point) {
        for (double seed = 0.05; seed < 0.5; seed += 0.05) {
            const auto interior =
                degenerate_family_interior(exp.model.couplings, seed);
            if (interior) {
                point = interior->point;
                model = make_chain_model(interior->couplings);
                break;
            }
        }
    }
    if (!point)
        throw RegimeError("no degenerate stationary point certified for this model");
    ds.meta["kstar"] = point->kstar;
    ds.meta["vstar"] = point->vstar;
    ds.meta["lambdastar"] = point->lambdastar;
    ds.meta["quartic_sign"] = point->sign;
    for (const auto& [a, b] : exp.observables)
        for (double t : exp.t_list)
            for (long long j = exp.j_min; j <= exp.j_max; ++j) {
                CorrelationEntry entry;
                entry.idx = {a, b, j, t};
                try {
                    entry.value = pearcey_parametrix(entry.idx, *point, model, exp.beta);
                } catch (const RegimeError&) {
                    continue;  // outside the parametrix window; row dropped
                }
                entry.method = "pearcey";
                ds.rows.push_back(std::move(entry));
            }
    return ds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"space-time correlation functions of short-range harmonic chains"};
    app.require_subcommand(1);

    std::string config_path, out_path, preset;
    std::uint64_t seed_override = 0;
    bool seed_given = false;

    CLI::App* run = app.add_subcommand("run", "evaluate an experiment config");
    run->add_option("--config", config_path, "JSON experiment configuration");
    run->add_option("--out", out_path, "output dataset path (overrides config)");
    run->add_option("--preset", preset, "model preset: nn|example1|example2");
    run->add_option("--seed", seed_override, "Monte Carlo master seed override")
        ->each([&](const std::string&) { seed_given = true; });

    std::string path_a, path_b;
    CLI::App* compare = app.add_subcommand("compare", "diff two datasets");
    compare->add_option("--a", path_a, "first dataset")->required();
    compare->add_option("--b", path_b, "second dataset")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        json doc;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "config: cannot open " << config_path << "\n";
                return 2;
            }
            try {
                doc = json::parse(in);
            } catch (const json::exception& err) {
                std::cerr << "config: " << err.what() << "\n";
                return 2;
            }
        } else if (!preset.empty()) {
            doc = {{"model", {{"preset", preset}}},
                   {"grid", {{"j_min", -50}, {"j_max", 50}, {"t", {10.0}}}}};
        } else {
            std::cerr << "config: provide --config or --preset\n";
            return 2;
        }
        if (!preset.empty()) doc["model"] = {{"preset", preset}};

        Experiment exp;
        try {
            exp = parse_config(doc);
        } catch (const ConfigError& err) {
            std::cerr << err.what() << "\n";
            return 2;
        }
        if (seed_given) exp.seed = seed_override;
        if (!out_path.empty()) {
            exp.out_path = out_path;
            exp.out_format =
                out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json"
                    ? "json"
                    : "csv";
        }
        try {
            const lattice::Dataset ds = run_experiment(exp);
            if (exp.out_format == "json")
                lattice::write_dataset_json(ds, exp.out_path);
            else
                lattice::write_dataset_csv(ds, exp.out_path);
            std::cout << "wrote " << ds.rows.size() << " rows to " << exp.out_path
                      << "\n";
            return 0;
        } catch (const lattice::LatticeError& err) {
            std::cerr << "numerical failure: " << err.what() << "\n";
            return 3;
        }
    }

    if (compare->parsed()) {
        try {
            const lattice::Dataset a = lattice::read_dataset(path_a);
            const lattice::Dataset b = lattice::read_dataset(path_b);
            const lattice::CompareReport report = lattice::compare_datasets(a, b);
            std::cout << lattice::report_to_json(report).dump(2) << "\n";
            return 0;
        } catch (const lattice::GridMismatch& err) {
            std::cerr << "grid mismatch: " << err.what() << "\n";
            return 2;
        } catch (const lattice::LatticeError& err) {
            std::cerr << err.what() << "\n";
            return 3;
        }
    }
    return 0;
}
