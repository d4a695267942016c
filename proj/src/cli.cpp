#include "squidgate/cli.hpp"

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "squidgate/builders.hpp"
#include "squidgate/device.hpp"
#include "squidgate/errors.hpp"
#include "squidgate/flux_levels.hpp"
#include "squidgate/timing.hpp"
#include "squidgate/verification.hpp"

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFidelityBar = 1.0 - 1e-6;

double parse_strict_double(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse number \"" + s + "\"");
    }
    if (pos != s.size()) throw std::invalid_argument("trailing characters in number \"" + s + "\"");
    return v;
}

std::vector<double> parse_theta_list(const std::string& csv) {
    std::vector<double> thetas;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) thetas.push_back(parse_pi_expression(item));
    if (thetas.empty()) throw std::invalid_argument("empty theta list");
    return thetas;
}

struct CommonOpts {
    std::string config_path;
    std::string mode = "analytic";
    int cavity_dim = 2;
    std::string format = "text";
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
}

void add_device_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "device parameter JSON file");
    cmd->add_option("--mode", o.mode, "analytic or exact-dispersive")
        ->check(CLI::IsMember({"analytic", "exact-dispersive"}));
    cmd->add_option("--cavity-dim", o.cavity_dim, "cavity Fock truncation (photons 0..N-1)")
        ->check(CLI::Range(2, 16));
    add_output_flags(cmd, o);
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("cannot parse \"" + path + "\": " + e.what());
    }
    return j;
}

DeviceParams load_device(const CommonOpts& o, int n_squids) {
    if (o.config_path.empty()) return DeviceParams::defaults(n_squids);
    return device_from_json(load_json_file(o.config_path));
}

SimOptions sim_options(const CommonOpts& o) {
    SimOptions opt;
    opt.mode = o.mode == "exact-dispersive" ? SimMode::ExactDispersive : SimMode::Analytic;
    return opt;
}

// writes either to --out or to the session stream
void emit(const CommonOpts& o, std::ostream& fallback, const std::string& payload) {
    if (o.out_path.empty()) {
        fallback << payload;
        return;
    }
    std::ofstream file(o.out_path);
    if (!file) throw std::invalid_argument("cannot write \"" + o.out_path + "\"");
    file << payload;
}

int finish_gate(const CommonOpts& o, std::ostream& out, const Schedule& schedule,
                const GateReport& report) {
    std::string payload;
    if (o.format == "json") {
        nlohmann::json j = gate_report_json(report);
        j["duration_s"] = schedule.duration();
        j["step_count"] = schedule.step_count();
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream text;
        text << gate_report_text(report);
        text.precision(12);
        text << "steps: " << schedule.step_count() << '\n'
             << "duration: " << schedule.duration() << " s\n";
        payload = text.str();
    }
    emit(o, out, payload);
    if (o.mode == "analytic" && report.fidelity.fidelity < kFidelityBar) return 1;
    return 0;
}

int cmd_gate(const std::string& name, int n, const std::string& theta_csv, bool merged,
             const CommonOpts& o, std::ostream& out) {
    if (name == "three-qubit") n = 3;
    if (name == "two-qubit") n = 2;
    if (n < 2) throw std::invalid_argument("need at least two SQUIDs");

    std::vector<double> thetas;
    if (!theta_csv.empty())
        thetas = parse_theta_list(theta_csv);
    else
        thetas = qft_phase_list(n);
    if (name != "ntcp" && static_cast<int>(thetas.size()) != n - 1)
        throw std::invalid_argument("need one theta per target (" + std::to_string(n - 1) +
                                    " values)");

    const DeviceParams params = load_device(o, n);
    Schedule schedule;
    if (name == "three-qubit")
        schedule = merged ? build_merged_gate(params, thetas)
                          : build_three_qubit_gate(params, thetas[0], thetas[1]);
    else if (name == "two-qubit")
        schedule = build_two_qubit_gate(params, thetas[0]);
    else if (name == "n-qubit")
        schedule = build_merged_gate(params, thetas);
    else if (name == "ntcp")
        schedule = build_ntcp_gate(params, n);
    else if (name == "multiphase")
        schedule = build_multiphase_gate(params, thetas);
    else if (name == "decomposed")
        schedule = build_decomposed_gate(params, thetas);
    else
        throw std::invalid_argument("unknown gate \"" + name + "\"");

    const SpaceDescriptor space = make_space(n, o.cavity_dim);
    const Eigen::MatrixXcd ideal = ideal_phase_gate(n, schedule.thetas);
    const GateReport report = analyze_phase_gate(schedule, space, ideal, sim_options(o));
    return finish_gate(o, out, schedule, report);
}

int cmd_qft(const CommonOpts& o, std::ostream& out) {
    const DeviceParams params = load_device(o, 3);
    const Schedule schedule = build_qft3(params);
    const SpaceDescriptor space = make_space(3, o.cavity_dim);
    const UnitaryResult sim = simulate_unitary(schedule, space, sim_options(o));
    const QftCheck check = qft_check(logical_restriction(sim.unitary));

    std::string payload;
    if (o.format == "json") {
        nlohmann::json j{{"gate", schedule.name},
                         {"fidelity", check.fidelity},
                         {"layout", to_string(check.layout)},
                         {"duration_s", schedule.duration()},
                         {"step_count", schedule.step_count()}};
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream text;
        text.precision(12);
        text << "gate: " << schedule.name << '\n'
             << "fidelity vs Fourier transform: " << check.fidelity << '\n'
             << "qubit-order layout: " << to_string(check.layout) << '\n'
             << "steps: " << schedule.step_count() << '\n'
             << "duration: " << schedule.duration() << " s\n";
        payload = text.str();
    }
    emit(o, out, payload);
    if (o.mode == "analytic" && check.fidelity < kFidelityBar) return 1;
    return 0;
}

int cmd_timing(int n_max, const CommonOpts& o, std::ostream& out) {
    const DeviceParams params = load_device(o, n_max);
    const std::vector<TimingRow> rows = timing_curve(params, 2, n_max);
    std::string payload;
    if (o.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const TimingRow& r : rows)
            arr.push_back({{"n", r.n},
                           {"tau_multi_s", r.tau_multi},
                           {"tau_decomposed_s", r.tau_dec},
                           {"advantage_s", r.advantage}});
        payload = arr.dump(2) + "\n";
    } else if (o.format == "csv") {
        payload = timing_csv(rows);
    } else {
        std::ostringstream text;
        text << "  n     multi (ns)   decomposed (ns)   advantage (ns)\n";
        for (const TimingRow& r : rows) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%3d   %10.4f   %15.4f   %14.4f\n", r.n,
                          r.tau_multi * 1e9, r.tau_dec * 1e9, r.advantage * 1e9);
            text << buf;
        }
        payload = text.str();
    }
    emit(o, out, payload);
    return 0;
}

CircuitParams circuit_from_json(const nlohmann::json& j) {
    CircuitParams c;
    for (const char* field : {"capacitance", "inductance", "critical_current"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("circuit config missing \"") + field + "\"");
    c.capacitance = j["capacitance"].get<double>();
    c.inductance = j["inductance"].get<double>();
    c.critical_current = j["critical_current"].get<double>();
    c.external_flux = j.value("external_flux_over_phi0", 0.0) * kFluxQuantum;
    return c;
}

int cmd_levels(const std::string& circuit_path, int k, int grid_points, double sweep_lo,
               double sweep_hi, int sweep_points, bool sweep, const CommonOpts& o,
               std::ostream& out) {
    const CircuitParams c = circuit_from_json(load_json_file(circuit_path));
    std::string payload;
    if (sweep) {
        const std::vector<SweepRow> rows = sweep_flux(c, sweep_lo, sweep_hi, sweep_points,
                                                      grid_points);
        if (o.format == "json") {
            nlohmann::json arr = nlohmann::json::array();
            for (const SweepRow& r : rows)
                arr.push_back({{"phi_x_over_phi0", r.phi_x_over_phi0},
                               {"omega01", r.omega01},
                               {"omega12", r.omega12},
                               {"omega23", r.omega23}});
            payload = arr.dump(2) + "\n";
        } else {
            payload = sweep_csv(rows);
        }
    } else {
        const RefinementReport report =
            solve_with_refinement(c, auto_grid(c, grid_points), k);
        const LevelStructure& levels = report.fine;
        if (o.format == "json") {
            nlohmann::json j{{"beta", screening_beta(c)},
                             {"energies_J", levels.energies},
                             {"refinement_drift", report.max_relative_drift}};
            if (k >= 2) j["omega01"] = levels.omega01();
            if (k >= 3) j["omega12"] = levels.omega12();
            if (k >= 4) j["omega23"] = levels.omega23();
            payload = j.dump(2) + "\n";
        } else {
            std::ostringstream text;
            text.precision(10);
            text << "screening beta: " << screening_beta(c) << '\n';
            for (int i = 0; i < k; ++i)
                text << "E" << i << ": " << levels.energies[i] << " J\n";
            if (k >= 2) text << "omega01: " << levels.omega01() << " 1/s\n";
            if (k >= 3) text << "omega12: " << levels.omega12() << " 1/s\n";
            if (k >= 4) text << "omega23: " << levels.omega23() << " 1/s\n";
            text << "refinement drift: " << report.max_relative_drift << '\n';
            payload = text.str();
        }
    }
    emit(o, out, payload);
    return 0;
}

int cmd_dispersive_check(double g, double delta, const std::string& theta_expr,
                         const CommonOpts& o, std::ostream& out) {
    const DispersiveValidity v = dispersive_validity(g, delta, parse_pi_expression(theta_expr));
    std::string payload = o.format == "json" ? dispersive_validity_json(v).dump(2) + "\n"
                                             : dispersive_validity_text(v);
    emit(o, out, payload);
    return 0;
}

}  // namespace

double parse_pi_expression(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty angle");

    double sign = 1.0;
    if (s[0] == '+' || s[0] == '-') {
        if (s[0] == '-') sign = -1.0;
        s.erase(0, 1);
    }
    const std::size_t pos = s.find("pi");
    if (pos == std::string::npos) return sign * parse_strict_double(s);

    std::string before = s.substr(0, pos);
    if (!before.empty() && before.back() == '*') before.pop_back();
    const double coefficient = before.empty() ? 1.0 : parse_strict_double(before);

    std::string after = s.substr(pos + 2);
    double denominator = 1.0;
    if (!after.empty()) {
        if (after[0] != '/')
            throw std::invalid_argument("cannot parse angle \"" + text + "\"");
        denominator = parse_strict_double(after.substr(1));
        if (denominator == 0.0) throw std::invalid_argument("division by zero in angle");
    }
    return sign * coefficient * kPi / denominator;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact simulator for SQUID-cavity controlled-phase gate sequences"};
    app.require_subcommand(1);

    CommonOpts gate_opts, qft_opts, timing_opts, levels_opts, disp_opts;

    std::string gate_name;
    int gate_n = 3;
    std::string theta_csv;
    bool merged = false;
    CLI::App* gate = app.add_subcommand("gate", "build, simulate and verify a phase gate");
    gate->add_option("name", gate_name,
                     "three-qubit | two-qubit | n-qubit | ntcp | multiphase | decomposed")
        ->required();
    gate->add_option("--n", gate_n, "number of SQUIDs (n-qubit, ntcp, multiphase, decomposed)");
    gate->add_option("--theta", theta_csv, "comma-separated target phases, e.g. \"pi/2,pi/4\"");
    gate->add_flag("--merged", merged, "use the slot-merged layout for three-qubit");
    add_device_flags(gate, gate_opts);

    CLI::App* qft = app.add_subcommand("qft", "three-qubit Fourier transform circuit");
    add_device_flags(qft, qft_opts);

    int n_max = 10;
    CLI::App* timing = app.add_subcommand("timing", "gate duration vs qubit count");
    timing->add_option("--n-max", n_max, "largest qubit count")->check(CLI::Range(2, 64));
    timing->add_option("--config", timing_opts.config_path, "device parameter JSON file");
    add_output_flags(timing, timing_opts);

    std::string circuit_path;
    int levels_k = 4, grid_points = 8001, sweep_points = 41;
    double sweep_lo = 0.0, sweep_hi = 0.0;
    CLI::App* levels = app.add_subcommand("levels", "SQUID level structure from the circuit");
    levels->add_option("--circuit", circuit_path, "circuit parameter JSON file")->required();
    levels->add_option("--levels", levels_k, "number of levels")->check(CLI::Range(1, 16));
    levels->add_option("--grid-points", grid_points, "flux grid points")
        ->check(CLI::Range(101, 200001));
    CLI::Option* sweep_lo_opt =
        levels->add_option("--sweep-min", sweep_lo, "sweep start, units of phi0");
    CLI::Option* sweep_hi_opt =
        levels->add_option("--sweep-max", sweep_hi, "sweep end, units of phi0");
    levels->add_option("--sweep-points", sweep_points, "bias points")->check(CLI::Range(2, 10001));
    add_output_flags(levels, levels_opts);

    double dc_g = 3e9, dc_delta = 3e10;
    std::string dc_theta = "pi/2";
    CLI::App* disp = app.add_subcommand("dispersive-check",
                                        "accuracy of the dispersive approximation");
    disp->add_option("--g", dc_g, "cavity coupling, 1/s");
    disp->add_option("--delta", dc_delta, "detuning, 1/s");
    disp->add_option("--theta", dc_theta, "target phase");
    add_output_flags(disp, disp_opts);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (gate->parsed()) return cmd_gate(gate_name, gate_n, theta_csv, merged, gate_opts, out);
        if (qft->parsed()) return cmd_qft(qft_opts, out);
        if (timing->parsed()) return cmd_timing(n_max, timing_opts, out);
        if (levels->parsed()) {
            const bool sweep = sweep_lo_opt->count() > 0 || sweep_hi_opt->count() > 0;
            return cmd_levels(circuit_path, levels_k, grid_points, sweep_lo, sweep_hi,
                              sweep_points, sweep, levels_opts, out);
        }
        if (disp->parsed()) return cmd_dispersive_check(dc_g, dc_delta, dc_theta, disp_opts, out);
    } catch (const SimError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace squidgate
