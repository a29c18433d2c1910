// Copyright 2026 The pqt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqt/runner.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "pqt/composite.hpp"
#include "pqt/protocols.hpp"
#include "pqt/stats.hpp"
#include "pqt/tomography.hpp"

namespace pqt::harness {

namespace {

// Shared state for one run: the parsed config, its resolved inputs and the
// report being assembled. Each handler draws from `rng`, which is the root
// stream derived by protocol id.
struct Context {
    const ExperimentConfig &config;
    Report &report;
    Rng rng;

    [[nodiscard]] QuantumState state() const { return initial_state(config); }
    [[nodiscard]] std::vector<Observable> obs() const {
        return observables(config);
    }
    [[nodiscard]] std::size_t shots() const {
        return static_cast<std::size_t>(config.shots);
    }
    [[nodiscard]] std::size_t trials() const {
        return static_cast<std::size_t>(config.trials);
    }
    [[nodiscard]] const Json &param(const char *key) const {
        return config.params.at(key);
    }
    [[nodiscard]] std::string param_or(const char *key,
                                       const std::string &fallback) const {
        return config.params.contains(key)
                   ? config.params.at(key).get<std::string>()
                   : fallback;
    }
    void metric(const std::string &name, double value,
                std::optional<double> uncertainty = std::nullopt) {
        report.metrics[name] = {value, uncertainty};
    }
    void verdict(const std::string &name, const std::string &value) {
        report.verdicts[name] = value;
    }
    void verdict(const std::string &name, bool value) {
        report.verdicts[name] = value ? "true" : "false";
    }
};

void require_dimension(const Observable &obs, const QuantumState &state,
                       const std::string &field) {
    if (obs.dimension() != dimension(state)) {
        throw ValidationError(field, "observable dimension " +
                                         std::to_string(obs.dimension()) +
                                         " does not match state dimension " +
                                         std::to_string(dimension(state)));
    }
}

StateVector pure(const QuantumState &state, const std::string &field) {
    const auto *psi = std::get_if<StateVector>(&state);
    if (psi == nullptr) {
        throw ValidationError(field, "expected a pure state");
    }
    return *psi;
}

Table joint_table(const JointFrequencyTable &sampled,
                  const JointDistribution &exact) {
    Table t{{"a", "b", "count", "frequency", "probability"}, {}};
    const auto freq = sampled.frequencies();
    for (std::size_t i = 0; i < sampled.rows.size(); ++i) {
        const auto &row = sampled.rows[i];
        t.rows.push_back({row.a, row.b, row.count, freq[i],
                          exact.probabilities.at(i)});
    }
    return t;
}

Table distribution_table(const OutcomeDistribution &d) {
    Table t{{"value", "probability"}, {}};
    for (const auto &o : d.outcomes) {
        t.rows.push_back({o.value, o.probability});
    }
    return t;
}

Table matrix_table(const Matrix &m) {
    Table t{{"row", "col", "value"}, {}};
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            t.rows.push_back({r, c, complex_json(m(r, c))});
        }
    }
    return t;
}

double mean_of(const std::vector<double> &xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) /
           static_cast<double>(xs.size());
}

double standard_error(const std::vector<double> &xs) {
    if (xs.size() < 2) {
        return 0.0;
    }
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                     static_cast<double>(xs.size()));
}

void merge_resources(Report &report, const ProtocolReport &p) {
    for (const auto &[k, v] : p.resources) {
        report.resources[k] += v;
    }
}

// ---------------------------------------------------------------------------

void run_born(Context &ctx) {
    const QuantumState state = ctx.state();
    const Observable obs = ctx.obs().front();
    require_dimension(obs, state, "observables[0]");
    const OutcomeDistribution dist = born_distribution(obs, state);
    std::vector<std::size_t> counts(dist.size(), 0);
    if (ctx.config.mode == Mode::passive) {
        PSystem sys(state, Mode::passive, ctx.rng.derive("system"));
        for (std::size_t k : sys.measure_indices(obs, ctx.shots())) {
            ++counts[k];
        }
        ctx.report.resources["copies_consumed"] = 1;
    } else {
        Ensemble copies(state, Mode::quantum, ctx.rng.derive("copies"));
        for (std::size_t s = 0; s < ctx.shots(); ++s) {
            PSystem copy = copies.fresh();
            ++counts[copy.measure_index(obs)];
        }
        ctx.report.resources["copies_consumed"] = copies.copies_consumed();
    }
    ctx.report.resources["shots"] = ctx.shots();

    const auto n = static_cast<double>(ctx.shots());
    std::vector<double> freq;
    Table t{{"value", "count", "frequency", "probability", "wilson_lo",
             "wilson_hi"},
            {}};
    for (std::size_t r = 0; r < dist.size(); ++r) {
        freq.push_back(static_cast<double>(counts[r]) / n);
        const auto ci = stats::wilson_interval(counts[r], ctx.shots());
        t.rows.push_back({dist.outcomes[r].value, counts[r], freq.back(),
                          dist.outcomes[r].probability, ci.lo, ci.hi});
    }
    ctx.report.tables["outcomes"] = std::move(t);
    const auto probs = dist.probabilities();
    ctx.metric("tv_distance", stats::tv_distance(freq, probs));
    const auto chi = stats::chi_square_gof(counts, probs);
    ctx.metric("chi_square", chi.statistic);
    ctx.metric("chi_square_p_value", chi.p_value);
}

void run_repeatability(Context &ctx) {
    const QuantumState state = ctx.state();
    const Observable obs = ctx.obs().front();
    require_dimension(obs, state, "observables[0]");
    const auto r = repeatability_experiment(state, obs, ctx.config.mode,
                                            ctx.trials(), ctx.rng);
    const auto ci = stats::wilson_interval(r.agreements, r.trials);
    ctx.metric("agreement_rate", r.agreement_rate, 0.5 * (ci.hi - ci.lo));
    ctx.metric("expected_rate", r.expected_rate);
    ctx.report.tables["agreements"] = {
        {"agreements", "trials"}, {{r.agreements, r.trials}}};
    merge_resources(ctx.report, r.report);
}

void run_reconstruct(Context &ctx) {
    const QuantumState state = ctx.state();
    const std::vector<Observable> obs = ctx.obs();
    const ICSet ic = obs.empty() ? ICSet::for_shape(shape(state))
                                 : ICSet::from_observables(obs);
    PSystem sys(state, ctx.config.mode, ctx.rng.derive("system"));
    const QuantumState before = sys.state();
    const auto rec = reconstruct_single_copy(sys, ic, ctx.shots());
    ctx.metric("fidelity", fidelity(before, rec.estimate));
    ctx.metric("estimate_purity", rec.estimate.purity());
    ctx.verdict("original_unchanged", bit_identical(before, sys.state()));
    ctx.verdict("ic_family", ic.family());
    Table t{{"observable", "mean", "half_width"}, {}};
    for (const auto &e : rec.diagnostics) {
        t.rows.push_back({e.observable, e.mean, e.half_width});
    }
    ctx.report.tables["expectations"] = std::move(t);
    ctx.report.tables["estimate"] = matrix_table(rec.estimate.matrix());
    ctx.report.resources["copies_consumed"] = 1;
    ctx.report.resources["shots"] = ic.size() * ctx.shots();
}

void run_discriminate(Context &ctx) {
    const QuantumState state = ctx.state();
    std::vector<StateVector> candidates;
    const Json &spec = ctx.param("candidates");
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const std::string field =
            "params.candidates[" + std::to_string(i) + "]";
        candidates.push_back(
            pure(resolve_state(spec[i], ctx.config.shape, field), field));
    }
    PSystem sys(state, ctx.config.mode, ctx.rng.derive("system"));
    const ICSet ic = ICSet::for_shape(shape(state));
    const auto r = discriminate(sys, candidates, ic, ctx.shots());
    ctx.verdict("index", std::to_string(r.index));
    ctx.metric("best_fidelity", r.fidelities.at(r.index));
    Table t{{"candidate", "fidelity"}, {}};
    for (std::size_t i = 0; i < r.fidelities.size(); ++i) {
        t.rows.push_back({i, r.fidelities[i]});
    }
    ctx.report.tables["candidates"] = std::move(t);
    ctx.report.resources["copies_consumed"] = 1;
    ctx.report.resources["shots"] = ic.size() * ctx.shots();
}

void run_spectrum(Context &ctx) {
    const QuantumState state = ctx.state();
    const Observable obs = ctx.obs().front();
    require_dimension(obs, state, "observables[0]");
    PSystem sys(state, ctx.config.mode, ctx.rng.derive("system"));
    const auto estimated = estimate_spectrum(sys, obs, ctx.shots());
    const auto &exact = obs.decomposition().eigenvalues;
    double worst = 0.0;
    Table t{{"estimated", "nearest_exact"}, {}};
    for (double v : estimated) {
        double nearest = exact.front();
        for (double e : exact) {
            if (std::abs(e - v) < std::abs(nearest - v)) {
                nearest = e;
            }
        }
        worst = std::max(worst, std::abs(nearest - v));
        t.rows.push_back({v, nearest});
    }
    ctx.report.tables["spectrum"] = std::move(t);
    ctx.metric("recovered", static_cast<double>(estimated.size()));
    ctx.metric("distinct_eigenvalues", static_cast<double>(exact.size()));
    ctx.metric("max_abs_error", worst);
    ctx.report.resources["copies_consumed"] = 1;
    ctx.report.resources["shots"] = ctx.shots();
}

void run_entanglement(Context &ctx) {
    PSystem sys(ctx.state(), ctx.config.mode, ctx.rng.derive("system"));
    const auto r = detect_entanglement_single_copy(sys, ctx.shots());
    ctx.verdict("verdict", std::string(to_string(r.verdict)));
    ctx.metric("reduced_purity", r.purity);
    ctx.report.tables["reduced_estimate"] =
        matrix_table(r.reduced_estimate.matrix());
    ctx.report.resources["copies_consumed"] = 1;
}

void run_joint(Context &ctx, bool global) {
    const QuantumState state = ctx.state();
    const auto obs = ctx.obs();
    const Observable &a = obs[0];
    const Observable &b = obs[1];
    const JointDistribution exact_global =
        global_joint_distribution(state, a, b);
    const JointDistribution exact_local =
        local_passive_joint_distribution(state, a, b);
    JointFrequencyTable sampled;
    if (global && ctx.config.mode == Mode::quantum) {
        Ensemble copies(state, Mode::quantum, ctx.rng.derive("copies"));
        sampled = global_joint_sample(copies, a, b, ctx.shots());
        ctx.report.resources["copies_consumed"] = copies.copies_consumed();
    } else {
        PSystem sys(state, ctx.config.mode, ctx.rng.derive("system"));
        sampled = global
                      ? global_joint_sample(sys, a, b, ctx.shots())
                      : local_passive_joint_sample(sys, {Side::A, a},
                                                   {Side::B, b}, ctx.shots());
        ctx.report.resources["copies_consumed"] = 1;
    }
    ctx.report.resources["shots"] = ctx.shots();
    const JointDistribution &exact = global ? exact_global : exact_local;
    ctx.report.tables["joint"] = joint_table(sampled, exact);
    ctx.metric("tv_to_exact", tv_distance(sampled, exact));
    ctx.metric("tv_local_vs_global_exact",
               tv_distance(exact_local, exact_global));
    ctx.metric("correlator", correlator(sampled));
    ctx.metric("correlator_exact", correlator(exact));
}

void run_chsh(Context &ctx) {
    const QuantumState state = ctx.state();
    const auto obs = ctx.obs();
    if (!obs.empty() && obs.size() != 4) {
        throw ValidationError("observables",
                              "CHSH takes no observables or exactly four");
    }
    const ChshSettings settings =
        obs.empty() ? ChshSettings::optimal()
                    : ChshSettings{obs[0], obs[1], obs[2], obs[3]};
    const ChshSource source =
        parse_chsh_source(ctx.param_or("source", "global"));
    PSystem sys(state, ctx.config.mode, ctx.rng.derive("system"));
    const auto r = chsh_value(sys, settings, source, ctx.shots());
    const auto exact = chsh_value_exact(state, settings, source);
    ctx.metric("S", r.value, 4.0 / std::sqrt(static_cast<double>(ctx.shots())));
    ctx.metric("S_exact", exact.value);
    ctx.verdict("source", std::string(to_string(source)));
    ctx.verdict("exceeds_classical_bound", std::abs(r.value) > 2.0);
    Table t{{"pair", "correlator", "exact"}, {}};
    const char *names[] = {"A1B1", "A1B2", "A2B1", "A2B2"};
    for (std::size_t i = 0; i < 4; ++i) {
        t.rows.push_back({names[i], r.correlators[i], exact.correlators[i]});
    }
    ctx.report.tables["correlators"] = std::move(t);
    ctx.report.resources["copies_consumed"] = 1;
    ctx.report.resources["shots"] = 4 * ctx.shots();
}

void run_signalling(Context &ctx) {
    const auto obs = ctx.obs();
    const RemoteAction action =
        parse_remote_action(ctx.param("action").get<std::string>());
    const auto r = signalling_check(ctx.state(), action, obs[0], obs[1]);
    ctx.metric("tv", r.tv);
    ctx.verdict("action", std::string(to_string(action)));
    ctx.report.tables["without_action"] = distribution_table(r.without_action);
    ctx.report.tables["with_action"] = distribution_table(r.with_action);
}

OracleSpec oracle_spec(const Context &ctx) {
    OracleSpec spec;
    spec.truth_table = ctx.param("truth_table").get<std::vector<int>>();
    spec.n = static_cast<std::size_t>(
        std::countr_zero(spec.truth_table.size()));
    spec.promise = parse_promise(ctx.param_or("promise", "none"));
    return spec;
}

void run_function_recovery(Context &ctx) {
    const OracleSpec spec = oracle_spec(ctx);
    std::vector<double> calls;
    std::size_t exact = 0;
    Table t{{"trial", "oracle_calls", "truth_table"}, {}};
    for (std::size_t k = 0; k < ctx.trials(); ++k) {
        const auto r = function_recovery(spec, ctx.config.mode, ctx.shots(),
                                         ctx.rng.derive(k));
        calls.push_back(
            static_cast<double>(r.report.resources.at("oracle_calls")));
        exact += r.recovered == spec.truth_table ? 1 : 0;
        t.rows.push_back({k, r.report.resources.at("oracle_calls"),
                          r.report.verdicts.at("truth_table")});
        merge_resources(ctx.report, r.report);
    }
    ctx.report.tables["runs"] = std::move(t);
    ctx.metric("mean_oracle_calls", mean_of(calls), standard_error(calls));
    ctx.metric("coupon_collector_expectation",
               coupon_collector_expectation(spec.truth_table.size()));
    ctx.metric("exact_recovery_rate",
               static_cast<double>(exact) / static_cast<double>(ctx.trials()));
}

void run_deutsch_jozsa(Context &ctx) {
    const OracleSpec spec = oracle_spec(ctx);
    std::size_t correct = 0;
    Table t{{"trial", "verdict", "oracle_calls"}, {}};
    for (std::size_t k = 0; k < ctx.trials(); ++k) {
        const auto r = deutsch_jozsa_verdict(spec, ctx.config.mode,
                                             ctx.shots(), ctx.rng.derive(k));
        correct += r.verdict == spec.promise ? 1 : 0;
        t.rows.push_back({k, std::string(to_string(r.verdict)),
                          r.report.resources.at("oracle_calls")});
        merge_resources(ctx.report, r.report);
    }
    ctx.report.tables["runs"] = std::move(t);
    ctx.metric("correct_rate",
               static_cast<double>(correct) /
                   static_cast<double>(ctx.trials()));
    ctx.verdict("promise", std::string(to_string(spec.promise)));
}

void run_clone(Context &ctx) {
    PSystem sys(ctx.state(), ctx.config.mode, ctx.rng.derive("system"));
    const auto r = clone_via_reconstruction(sys, ctx.shots());
    ctx.metric("fidelity", r.fidelity);
    ctx.verdict("original_unchanged", r.original_unchanged);
    ctx.report.tables["clone"] =
        matrix_table(to_density(r.clone.state()).matrix());
    merge_resources(ctx.report, r.report);
}

void run_no_cloning(Context &ctx) {
    const StateVector psi = pure(
        resolve_state(ctx.param("psi"), std::nullopt, "params.psi"),
        "params.psi");
    const StateVector phi = pure(
        resolve_state(ctx.param("phi"), std::nullopt, "params.phi"),
        "params.phi");
    const std::string name = ctx.param_or("unitary", "cnot");
    const std::size_t d = psi.dimension();
    Matrix u;
    if (name == "cnot" && d == 2) {
        u = gates::cnot();
    } else if (name == "identity") {
        u = gates::identity(d * d);
    } else if (name == "swap") {
        u = Matrix::Zero(static_cast<Eigen::Index>(d * d),
                         static_cast<Eigen::Index>(d * d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                u(static_cast<Eigen::Index>(j * d + i),
                  static_cast<Eigen::Index>(i * d + j)) = 1.0;
            }
        }
    } else {
        throw ValidationError("params.unitary",
                              "expected cnot (qubits), swap or identity");
    }
    const auto r = no_cloning_check(UnitaryOperator(u), psi, phi);
    ctx.metric("fidelity_psi", r.fidelity_psi);
    ctx.metric("fidelity_phi", r.fidelity_phi);
    ctx.metric("overlap", r.overlap);
    ctx.metric("obstruction", r.obstruction);
    ctx.verdict("both_cloned", r.both_cloned);
    ctx.verdict("consistent", r.consistent);
}

void run_proper_vs_improper(Context &ctx) {
    std::vector<MixtureComponent> mixture;
    const Json &spec = ctx.param("mixture");
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const std::string field =
            "params.mixture[" + std::to_string(i) + "].state";
        mixture.push_back(
            {pure(resolve_state(spec[i].at("state"), std::nullopt, field),
                  field),
             spec[i].at("weight").get<double>()});
    }
    const std::string presentation = ctx.param("presentation");
    MixturePresentation p;
    if (presentation == "proper") {
        p = mixture;
    } else if (presentation == "improper") {
        p = purify(average_state(MixturePresentation(mixture)));
    } else {
        throw ValidationError("params.presentation",
                              "expected proper or improper");
    }
    const auto r = proper_vs_improper(p, ctx.trials(), ctx.shots(), ctx.rng);
    ctx.verdict("verdict", std::string(to_string(r.verdict)));
    ctx.verdict("presentation", presentation);
    ctx.metric("mean_purity", r.mean_purity, standard_error(r.purities));
    ctx.metric("threshold", r.threshold);
    ctx.metric("average_state_purity", r.average_state_purity);
    std::size_t correct = 0;
    Table t{{"trial", "purity", "verdict"}, {}};
    for (std::size_t k = 0; k < r.purities.size(); ++k) {
        const std::string v(to_string(r.trial_verdicts[k]));
        correct += v == presentation ? 1 : 0;
        t.rows.push_back({k, r.purities[k], v});
    }
    ctx.report.tables["trials"] = std::move(t);
    ctx.metric("correct_rate", static_cast<double>(correct) /
                                   static_cast<double>(r.purities.size()));
    merge_resources(ctx.report, r.report);
}

void run_simulate_qt(Context &ctx) {
    const QuantumState state = ctx.state();
    const auto obs = ctx.obs();
    require_dimension(obs[1], state, "observables[1]");
    CollapseComparison r = [&] {
        if (ctx.config.params.contains("side")) {
            const std::string side = ctx.param("side");
            if (side != "A" && side != "B") {
                throw ValidationError("params.side", "expected A or B");
            }
            const std::size_t tomo =
                ctx.config.params.contains("tomography_shots")
                    ? ctx.param("tomography_shots").get<std::size_t>()
                    : ctx.shots();
            return compare_collapse_simulation_bipartite(
                state, {side == "A" ? Side::A : Side::B, obs[0]}, obs[1],
                ctx.shots(), tomo, ctx.rng);
        }
        require_dimension(obs[0], state, "observables[0]");
        return compare_collapse_simulation(state, obs[0], obs[1], ctx.shots(),
                                           ctx.rng);
    }();
    ctx.metric("tv", r.tv,
               5.0 / std::sqrt(static_cast<double>(ctx.shots())));
    Table t{{"first", "follow_up", "simulated", "quantum"}, {}};
    for (std::size_t i = 0; i < r.simulated.rows.size(); ++i) {
        t.rows.push_back({r.simulated.rows[i].a, r.simulated.rows[i].b,
                          r.simulated.rows[i].count, r.quantum.rows[i].count});
    }
    ctx.report.tables["follow_up"] = std::move(t);
    for (const auto &[k, v] : r.report.fidelities) {
        ctx.metric(k + "_fidelity", v);
    }
    merge_resources(ctx.report, r.report);
}

void run_teleportation(Context &ctx) {
    const StateVector input =
        pure(ctx.state(), "initial_state");
    std::vector<double> fidelities;
    double analytic = 0.0;
    Table t{{"trial", "m0", "m1", "fidelity"}, {}};
    for (std::size_t k = 0; k < ctx.trials(); ++k) {
        const auto r =
            teleportation_demo(input, ctx.config.mode, ctx.rng.derive(k));
        fidelities.push_back(r.fidelity);
        analytic = r.analytic_fidelity;
        t.rows.push_back({k, r.bell_bits[0], r.bell_bits[1], r.fidelity});
        merge_resources(ctx.report, r.report);
    }
    ctx.report.tables["trials"] = std::move(t);
    ctx.metric("mean_fidelity", mean_of(fidelities),
               standard_error(fidelities));
    ctx.metric("analytic_fidelity", analytic);
}

void run_nonlinearity(Context &ctx) {
    const auto rho = [&](const char *key) {
        return to_density(resolve_state(ctx.param(key), std::nullopt,
                                        std::string("params.") + key));
    };
    const DensityOperator rho1 = rho("rho1");
    const DensityOperator rho2 = rho("rho2");
    const Matrix projector = rho("projector").matrix();
    const double lambda = ctx.param("lambda").get<double>();
    ctx.metric("passive_witness", nonlinearity_witness(rho1, rho2, lambda,
                                                       projector,
                                                       Instrument::passive));
    ctx.metric("luders_witness", nonlinearity_witness(rho1, rho2, lambda,
                                                      projector,
                                                      Instrument::luders));
}

using Handler = std::function<void(Context &)>;

const std::map<std::string, Handler, std::less<>> &handlers() {
    static const std::map<std::string, Handler, std::less<>> table = {
        {"born", run_born},
        {"repeatability", run_repeatability},
        {"reconstruct", run_reconstruct},
        {"discriminate", run_discriminate},
        {"spectrum", run_spectrum},
        {"entanglement", run_entanglement},
        {"joint-global", [](Context &c) { run_joint(c, true); }},
        {"joint-local-passive", [](Context &c) { run_joint(c, false); }},
        {"chsh", run_chsh},
        {"signalling", run_signalling},
        {"function-recovery", run_function_recovery},
        {"deutsch-jozsa", run_deutsch_jozsa},
        {"clone", run_clone},
        {"no-cloning", run_no_cloning},
        {"proper-vs-improper", run_proper_vs_improper},
        {"simulate-qt", run_simulate_qt},
        {"teleportation", run_teleportation},
        {"nonlinearity", run_nonlinearity},
    };
    return table;
}

} // namespace

Report run(const ExperimentConfig &config, const RunOptions &options) {
    validate(config);
    const auto it = handlers().find(config.protocol);
    if (it == handlers().end()) {
        throw ValidationError("protocol",
                              "no runner for '" + config.protocol + "'");
    }
    Report report;
    report.config = config;
    Context ctx{config, report, Rng(config.seed).derive(config.protocol)};
    const auto start = std::chrono::steady_clock::now();
    try {
        it->second(ctx);
    } catch (const ValidationError &) {
        throw;
    } catch (const std::exception &e) {
        throw RunError(config.protocol, e.what());
    }
    if (options.timing) {
        report.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
    }
    return report;
}

} // namespace pqt::harness
