// Copyright 2026 The design-certify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line surface: ensemble construction, behavior simulation, and the
// certification commands, tied together through the documented file formats.
// Exit codes: 0 success, 2 invalid configuration, 3 file format violation,
// 4 infeasible certification input.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dcert/certify.hpp"
#include "dcert/designs.hpp"
#include "dcert/io.hpp"
#include "dcert/projective.hpp"
#include "dcert/usd.hpp"

namespace {

using namespace dcert;

struct Options {
    int dim = 0; // 0 = take the dimension from the input
    int n_states = 0;
    int order = 2;
    double gamma = 0.0;
    double eta = 1.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int restarts = 20;
    double tol = kDefaultTol.saturation;
    std::string in;
    std::string out;
    std::string ensemble_spec;
    std::string sweep_out;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw PreconditionError(message);
}

int spec_parameter(const std::string& spec, const std::string& prefix) {
    const std::string tail = spec.substr(prefix.size());
    try {
        return std::stoi(tail);
    } catch (const std::exception&) {
        throw PreconditionError("--ensemble " + prefix + "<d>: bad dimension '" + tail + "'");
    }
}

StateEnsemble make_ensemble(const Options& opt) {
    const std::string& spec = opt.ensemble_spec;
    require(!spec.empty(), "--ensemble is required for this command");
    if (spec == "tetrahedron") return tetrahedron_sic();
    if (spec.rfind("mub:", 0) == 0) return mub_ensemble(spec_parameter(spec, "mub:"));
    if (spec.rfind("basis:", 0) == 0) {
        const int d = spec_parameter(spec, "basis:");
        require(d >= 2, "--ensemble basis:<d> needs d >= 2");
        std::vector<State> states;
        for (int j = 0; j < d; ++j) {
            CVec e(d);
            e[j] = 1.0;
            states.push_back(State::pure(std::move(e)));
        }
        return StateEnsemble(d, std::move(states));
    }
    if (spec.rfind("file:", 0) == 0) return read_ensemble(spec.substr(5));
    if (spec.rfind("bloch:", 0) == 0) return bloch_ensemble(read_bloch_vertices(spec.substr(6)));
    if (spec == "random") {
        require(opt.n_states >= 2, "--ensemble random needs --n-states");
        require(opt.dim >= 2, "--ensemble random needs --dim");
        require(opt.seed_set, "--seed is required when sampling random ensembles");
        return random_ensemble(opt.n_states, opt.dim, opt.seed);
    }
    throw PreconditionError("unknown --ensemble spec '" + spec +
                            "' (tetrahedron|mub:<d>|basis:<d>|file:<path>|bloch:<path>|random)");
}

BehaviorTable simulate_from(const Options& opt, const StateEnsemble& ens) {
    if (opt.shots > 0) {
        require(opt.seed_set, "--seed is required when --shots > 0");
    }
    return simulate_behavior(ens, usd_measurements_for(ens), NoiseModel(opt.gamma, opt.eta),
                             SampleSpec{opt.shots, opt.seed});
}

/// Behavior input: --in reads a table document, --ensemble simulates inline.
BehaviorTable load_behavior(const Options& opt) {
    if (!opt.in.empty()) return read_behavior(opt.in, opt.dim);
    require(!opt.ensemble_spec.empty(), "either --in or --ensemble must be given");
    return simulate_from(opt, make_ensemble(opt));
}

std::string format_u64(std::uint64_t v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

RunConfig base_config(const Options& opt) {
    RunConfig config;
    if (!opt.in.empty()) config.emplace_back("in", opt.in);
    if (!opt.ensemble_spec.empty()) config.emplace_back("ensemble", opt.ensemble_spec);
    if (opt.dim > 0) config.emplace_back("dim", std::to_string(opt.dim));
    if (opt.n_states > 0) config.emplace_back("n_states", std::to_string(opt.n_states));
    config.emplace_back("order", std::to_string(opt.order));
    config.emplace_back("gamma", format_real(opt.gamma));
    config.emplace_back("eta", format_real(opt.eta));
    config.emplace_back("shots", format_u64(opt.shots));
    config.emplace_back("seed", opt.seed_set ? format_u64(opt.seed) : "unset");
    config.emplace_back("restarts", std::to_string(opt.restarts));
    config.emplace_back("tol", format_real(opt.tol));
    if (!opt.out.empty()) config.emplace_back("out", opt.out);
    if (!opt.sweep_out.empty()) config.emplace_back("sweep_out", opt.sweep_out);
    return config;
}

void emit_report(const Options& opt, const std::string& command,
                 const CertificationReport& report) {
    const std::string json = report_to_json(command, base_config(opt), report);
    if (opt.out.empty()) {
        std::cout << json;
    } else {
        atomic_write(opt.out, json);
        std::cout << "wrote report to " << opt.out << "\n";
    }
}

int run_ensemble(const Options& opt) {
    require(!opt.out.empty(), "--out is required");
    const StateEnsemble ens = make_ensemble(opt);
    write_ensemble(opt.out, ens);
    std::cout << "wrote ensemble (N=" << ens.size() << ", d=" << ens.dim() << ") to " << opt.out
              << "\n";
    return 0;
}

int run_simulate(const Options& opt) {
    require(!opt.out.empty(), "--out is required");
    const StateEnsemble ens = make_ensemble(opt);
    const BehaviorTable behavior = simulate_from(opt, ens);
    write_behavior(opt.out, behavior);
    std::cout << "wrote behavior (N=" << behavior.n_states() << ", d=" << behavior.dim()
              << ", mode=" << (opt.shots > 0 ? "sampled" : "exact") << ") to " << opt.out << "\n";
    return 0;
}

int run_certify_design(const Options& opt) {
    const BehaviorTable behavior = load_behavior(opt);
    const int d = opt.dim > 0 ? opt.dim : behavior.dim();
    CertificationReport report = certify_design(behavior, d, opt.order, opt.tol);
    emit_report(opt, "certify-design", report);

    if (!opt.sweep_out.empty()) {
        require(!opt.ensemble_spec.empty(), "--sweep-out needs an inline --ensemble");
        const StateEnsemble ens = make_ensemble(opt);
        const auto measurements = usd_measurements_for(ens);
        const double gamma_max = std::max(opt.gamma, 0.05);
        std::ostringstream table;
        table << "gamma epsilon score bound gap\n";
        for (int i = 0; i <= 50; ++i) {
            const double gamma = gamma_max * i / 50.0;
            const BehaviorTable swept =
                simulate_behavior(ens, measurements, NoiseModel(gamma, opt.eta));
            const CertificationReport r = certify_design(swept, d, opt.order, opt.tol);
            table << format_real(gamma) << " " << format_real(r.epsilon_used) << " "
                  << format_real(r.score) << " " << format_real(r.bound) << " "
                  << format_real(r.gap) << "\n";
        }
        atomic_write(opt.sweep_out, table.str());
        std::cout << "wrote score-vs-gamma sweep to " << opt.sweep_out << "\n";
    }
    return 0;
}

int run_certify_efficiency(const Options& opt) {
    const BehaviorTable behavior = load_behavior(opt);
    const int d = opt.dim > 0 ? opt.dim : behavior.dim();
    CertificationReport report = certify_design(behavior, d, opt.order, opt.tol);
    report.eta_lower =
        certify_efficiency(report.score, report.epsilon_used, report.n_states, d, opt.order);
    if (report.n_states == d * d && opt.order == 2) {
        std::ostringstream note;
        note.precision(10);
        note << "closed-form bound " << sic_efficiency_bound(report.score, report.epsilon_used, d);
        report.notes.push_back(note.str());
    }
    emit_report(opt, "certify-efficiency", report);

    if (!opt.sweep_out.empty()) {
        const double a2t = ipow(alpha(report.epsilon_used), 2 * opt.order);
        const double lo = a2t * quantum_bound(report.n_states, d, opt.order);
        const double hi =
            a2t * 0.5 * report.n_states * (report.n_states - 1); // all-inconclusive score
        std::ostringstream table;
        table << "score eta_lower\n";
        for (int i = 0; i <= 100; ++i) {
            const double s = lo + (hi - lo) * i / 100.0;
            table << format_real(s) << " "
                  << format_real(certify_efficiency(s, report.epsilon_used, report.n_states, d,
                                                    opt.order))
                  << "\n";
        }
        atomic_write(opt.sweep_out, table.str());
        std::cout << "wrote eta-vs-score sweep to " << opt.sweep_out << "\n";
    }
    return 0;
}

int run_certify_nonprojective(const Options& opt) {
    const BehaviorTable behavior = load_behavior(opt);
    const int d = opt.dim > 0 ? opt.dim : behavior.dim();
    require(behavior.n_states() == 4 && d == 2,
            "certify-nonprojective applies to four preparations in dimension 2");

    CertificationReport report;
    report.n_states = 4;
    report.d_assumed = 2;
    report.order = 2;
    report.epsilon_used = 0.0;
    report.score = score(behavior, 2, 0.0);
    report.bound = 32.0 / 27.0; // projective floor
    report.gap = report.score - report.bound;
    const bool certified = certify_nonprojective(report.score, opt.tol);
    report.notes.push_back(std::string("nonprojective_certified ") +
                           (certified ? "true" : "false"));
    std::ostringstream note;
    note.precision(10);
    note << "critical efficiency " << nonprojective_threshold();
    report.notes.push_back(note.str());
    emit_report(opt, "certify-nonprojective", report);
    return 0;
}

int run_witness_dimension(const Options& opt) {
    const BehaviorTable behavior = load_behavior(opt);
    const int d = opt.dim > 0 ? opt.dim : behavior.dim();
    CertificationReport report;
    report.n_states = behavior.n_states();
    report.d_assumed = d;
    report.order = opt.order;
    report.epsilon_used = choose_epsilon(behavior);
    report.score = score(behavior, opt.order, report.epsilon_used);
    report.min_dimension =
        dimension_witness(report.score, report.epsilon_used, report.n_states, opt.order);
    report.bound = ipow(alpha(report.epsilon_used), 2 * opt.order) *
                   quantum_bound(report.n_states, *report.min_dimension, opt.order);
    report.gap = report.score - report.bound;
    report.frame_potential_upper =
        frame_potential_upper(report.score, report.epsilon_used, opt.order, report.n_states);
    emit_report(opt, "witness-dimension", report);
    return 0;
}

int run_optimize(const Options& opt) {
    require(!opt.out.empty(), "--out is required");
    require(opt.n_states >= 2, "--n-states is required");
    require(opt.dim >= 2, "--dim is required");
    require(opt.seed_set, "--seed is required for optimization");
    const MinimizeResult result =
        minimize_frame_potential(opt.n_states, opt.dim, opt.order, opt.restarts, opt.seed);
    write_ensemble(opt.out, result.ensemble);

    CertificationReport report;
    report.n_states = opt.n_states;
    report.d_assumed = opt.dim;
    report.order = opt.order;
    report.score = result.value;
    report.bound = design_bound(opt.n_states, opt.dim, opt.order).value;
    report.gap = report.score - report.bound;
    report.design_certified = report.gap <= opt.tol;
    report.notes.push_back(std::string("minimizer converged: ") +
                           (result.converged ? "true" : "false"));
    report.notes.push_back("ensemble written to " + opt.out);
    const std::string json = report_to_json("optimize", base_config(opt), report);
    std::cout << json;
    return 0;
}

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--dim", opt.dim, "Hilbert-space dimension (assumed, or for constructors)");
    cmd->add_option("--n-states", opt.n_states, "ensemble size N");
    cmd->add_option("--order", opt.order, "moment order t (default 2)");
    cmd->add_option("--gamma", opt.gamma, "random-guess rate in [0, 1]");
    cmd->add_option("--eta", opt.eta, "detection efficiency in [0, 1]");
    cmd->add_option("--shots", opt.shots, "rounds per cell; 0 = exact analytic mode");
    cmd->add_option("--seed", opt.seed, "PRNG seed (required when sampling or optimizing)")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--restarts", opt.restarts, "optimizer restarts");
    cmd->add_option("--tol", opt.tol, "certification tolerance");
    cmd->add_option("--in", opt.in, "input behavior table");
    cmd->add_option("--out", opt.out, "output document path");
    cmd->add_option("--ensemble", opt.ensemble_spec,
                    "named constructor: tetrahedron|mub:<d>|basis:<d>|file:<path>|bloch:<path>|random");
    cmd->add_option("--sweep-out", opt.sweep_out, "plot-ready sweep table path");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized discrimination experiments: simulation and certification"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* c_ensemble = app.add_subcommand("ensemble", "construct an ensemble document");
    CLI::App* c_simulate = app.add_subcommand("simulate", "simulate a behavior table");
    CLI::App* c_design = app.add_subcommand("certify-design", "certify design structure");
    CLI::App* c_eff = app.add_subcommand("certify-efficiency", "lower-bound detection efficiency");
    CLI::App* c_nonproj =
        app.add_subcommand("certify-nonprojective", "certify a non-projective measurement");
    CLI::App* c_witness = app.add_subcommand("witness-dimension", "minimal consistent dimension");
    CLI::App* c_optimize = app.add_subcommand("optimize", "minimize the frame potential");
    for (CLI::App* cmd :
         {c_ensemble, c_simulate, c_design, c_eff, c_nonproj, c_witness, c_optimize}) {
        add_common_flags(cmd, opt);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_ensemble)) return run_ensemble(opt);
        if (app.got_subcommand(c_simulate)) return run_simulate(opt);
        if (app.got_subcommand(c_design)) return run_certify_design(opt);
        if (app.got_subcommand(c_eff)) return run_certify_efficiency(opt);
        if (app.got_subcommand(c_nonproj)) return run_certify_nonprojective(opt);
        if (app.got_subcommand(c_witness)) return run_witness_dimension(opt);
        if (app.got_subcommand(c_optimize)) return run_optimize(opt);
    } catch (const FormatError& e) {
        std::cerr << "file format error: " << e.what() << "\n";
        return 3;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible input: " << e.what() << "\n";
        return 4;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
