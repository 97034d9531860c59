// SPDX-License-Identifier: Apache-2.0
//
// zzpulse command line: build devices, compile circuits to pulse schedules,
// simulate against the logical reference, sweep the blockade parameter, and
// verify schedules against rotation targets.
//
// Exit codes: 0 ok, 2 bad device arguments, 3 parse/compile error,
// 4 resource cap exceeded, 5 internal invariant breach.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <zzpulse/exact.hpp>
#include <zzpulse/io.hpp>
#include <zzpulse/shift_search.hpp>

namespace {

using namespace zzpulse;

constexpr int kExitOk = 0;
constexpr int kExitDeviceArgs = 2;
constexpr int kExitCompile = 3;
constexpr int kExitResourceCap = 4;
constexpr int kExitInternal = 5;

struct CliFailure : std::runtime_error {
    int code;
    CliFailure(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

std::string read_file(const std::string& path, int fail_code) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw CliFailure(fail_code, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw CliFailure(kExitInternal, "cannot write '" + path + "'");
    out << content;
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int max_qubits_cap() {
    if (const char* env = std::getenv("ZZPULSE_MAX_QUBITS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 20;
}

Device load_device(const std::string& path) {
    Device d;
    try {
        d = device_from_json(ordered_json::parse(read_file(path, kExitDeviceArgs)));
    } catch (const CliFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw CliFailure(kExitDeviceArgs, std::string("bad device file: ") + e.what());
    }
    const auto rep = validate(d);
    if (!rep.ok()) {
        std::string msg = "device fails validation:";
        for (const auto& v : rep.violations) msg += "\n  " + v;
        throw CliFailure(kExitDeviceArgs, msg);
    }
    return d;
}

std::string format_eta(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

// ---------------------------------------------------------------------------

int cmd_build(const std::string& arch, int n, double zeta, const std::string& out_path) {
    Device d;
    try {
        d = arch == "ladder" ? build_ladder(n, zeta) : build_conveyor(n, zeta);
    } catch (const std::invalid_argument& e) {
        throw CliFailure(kExitDeviceArgs, e.what());
    }
    const auto rep = validate(d);
    if (!rep.ok()) throw CliFailure(kExitInternal, "builder produced an invalid device");
    write_file(out_path, device_to_json(d).dump(2) + "\n");
    std::cerr << "wrote " << arch << " n=" << n << " (" << d.site_count() << " sites) to "
              << out_path << "\n";
    return kExitOk;
}

int cmd_compile(const std::string& device_path, const std::string& circuit_path, bool run,
                const std::string& out_path, const std::string& format,
                const std::string& init_bits, const std::string& report_path,
                const std::string& dump_path, double dump_threshold) {
    const Device dev = load_device(device_path);
    const std::string circuit_text = read_file(circuit_path, kExitCompile);

    Circuit circ;
    Schedule sched;
    try {
        circ = parse_circuit(circuit_text);
        sched = compile(circ, dev);
    } catch (const ParseError& e) {
        throw CliFailure(kExitCompile, std::string("circuit parse error: ") + e.what());
    } catch (const CompileError& e) {
        throw CliFailure(kExitCompile, std::string("compile error: ") + e.what());
    }
    sched.device_ref = device_path;

    if (!out_path.empty()) write_file(out_path, schedule_to_json(sched).dump(2) + "\n");

    if (!run) {
        std::cerr << "compiled " << circ.gates.size() << " gates into " << sched.steps.size()
                  << " pulses\n";
        return kExitOk;
    }

    if (dev.site_count() > max_qubits_cap()) {
        throw CliFailure(kExitResourceCap,
                         "device has " + std::to_string(dev.site_count()) +
                             " sites, above the simulation cap (ZZPULSE_MAX_QUBITS)");
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::string bits = init_bits.empty() ? std::string(static_cast<std::size_t>(dev.n), '0')
                                         : init_bits;
    StateVector s = init_state(dev, bits);
    apply_schedule(s, dev, std::span<const ScheduleStep>(sched.steps));

    // reference path: prepare the same basis input, then the circuit
    Circuit prepped = circ;
    prepped.gates.clear();
    int preps = 0;
    for (int k = 0; k < circ.num_qubits; ++k) {
        if (bits[static_cast<std::size_t>(k)] == '1') {
            Gate g;
            g.kind = Gate::Kind::RX;
            g.theta = kPi;
            g.axis = {1, 0, 0};
            g.q = {k + 1, -1, -1};
            prepped.gates.push_back(g);
            ++preps;
        }
    }
    prepped.gates.insert(prepped.gates.end(), circ.gates.begin(), circ.gates.end());
    StateVector ref = reference_simulate(prepped);
    for (auto& a : ref.amp) a *= std::pow(complexd{0.0, 1.0}, preps);
    const StateVector want = embed_logical(dev, sched.tracker, ref);
    const double fid = fidelity(s, want);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!dump_path.empty()) {
        auto dump = ordered_json::array();
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if (std::abs(s.amp[i]) > dump_threshold) {
                dump.push_back(ordered_json{{"index", i},
                                            {"re", s.amp[i].real()},
                                            {"im", s.amp[i].imag()}});
            }
        }
        write_file(dump_path, dump.dump(2) + "\n");
    }

    ordered_json report;
    report["device_digest"] = fnv1a_hex(read_file(device_path, kExitDeviceArgs));
    report["circuit_digest"] = fnv1a_hex(circuit_text);
    report["device"] = ordered_json{
        {"architecture", dev.architecture}, {"n", dev.n}, {"sites", dev.site_count()}};
    report["init"] = bits;
    report["gates"] = circ.gates.size();
    report["schedule_length"] = sched.steps.size();
    report["fidelity"] = fid;
    report["phase_ledger"] =
        ordered_json{{"re", sched.phase_ledger.real()}, {"im", sched.phase_ledger.imag()}};

    std::string rendered;
    if (format == "csv") {
        std::ostringstream ss;
        ss.precision(17);
        ss << "key,value\n";
        ss << "device_digest," << report["device_digest"].get<std::string>() << "\n";
        ss << "circuit_digest," << report["circuit_digest"].get<std::string>() << "\n";
        ss << "schedule_length," << sched.steps.size() << "\n";
        ss << "fidelity," << fid << "\n";
        ss << "phase_ledger_re," << sched.phase_ledger.real() << "\n";
        ss << "phase_ledger_im," << sched.phase_ledger.imag() << "\n";
        rendered = ss.str();
    } else {
        rendered = report.dump(2) + "\n";
    }
    if (report_path.empty()) std::cout << rendered;
    else write_file(report_path, rendered);
    std::cerr << "wall_time_s " << wall << "\n";
    return fid >= 1.0 - 1e-6 ? kExitOk : kExitInternal;
}

int cmd_sweep(const std::string& device_path, const std::string& schedule_path,
              const std::string& etas_csv, double tol, const std::string& out_path,
              const std::string& json_out, const std::string& init_bits) {
    const Device dev = load_device(device_path);
    if (dev.site_count() > 12) {
        throw CliFailure(kExitResourceCap, "device has " + std::to_string(dev.site_count()) +
                                               " sites; the exact integrator is capped at 12");
    }
    Schedule sched;
    try {
        sched = schedule_from_json(ordered_json::parse(read_file(schedule_path, kExitCompile)));
    } catch (const CliFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw CliFailure(kExitCompile, std::string("bad schedule file: ") + e.what());
    }
    std::vector<double> etas;
    std::stringstream ss(etas_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            etas.push_back(v);
        } catch (const std::exception&) {
            throw CliFailure(kExitCompile, "bad eta value '" + tok + "'");
        }
    }
    if (etas.empty()) throw CliFailure(kExitCompile, "no eta values given");

    const std::string bits = init_bits.empty() ? std::string(static_cast<std::size_t>(dev.n), '0')
                                               : init_bits;
    std::vector<std::pair<double, double>> rows;
    try {
        rows = blockade_error_sweep(dev, sched.steps, etas, tol, bits);
    } catch (const std::invalid_argument& e) {
        throw CliFailure(kExitCompile, e.what());
    }

    std::ostringstream csv;
    csv.precision(17);
    csv << "eta,infidelity\n";
    for (const auto& [eta, infid] : rows) csv << format_eta(eta) << "," << infid << "\n";
    if (out_path.empty()) std::cout << csv.str();
    else write_file(out_path, csv.str());
    if (!json_out.empty()) {
        auto rows_json = ordered_json::array();
        for (const auto& [eta, infid] : rows) {
            rows_json.push_back(ordered_json{{"eta", eta}, {"infidelity", infid}});
        }
        write_file(json_out, rows_json.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& schedule_path, const std::string& targets_path, double tol) {
    Schedule sched;
    ordered_json tj;
    try {
        sched = schedule_from_json(ordered_json::parse(read_file(schedule_path, kExitCompile)));
        tj = ordered_json::parse(read_file(targets_path, kExitCompile));
    } catch (const CliFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw CliFailure(kExitCompile, std::string("bad input: ") + e.what());
    }
    if (sched.steps.empty() && !tj.contains("targets")) {
        throw CliFailure(kExitCompile, "targets file must contain a 'targets' array");
    }
    for (std::size_t i = 1; i < sched.steps.size(); ++i) {
        if (sched.steps[i].species != sched.steps[0].species) {
            throw CliFailure(kExitCompile, "verify expects a single-species schedule");
        }
    }
    TargetList targets;
    try {
        for (const auto& t : tj.at("targets")) {
            const auto ax = t.at("axis").get<std::vector<double>>();
            if (ax.size() != 3) throw std::invalid_argument("axis must have 3 components");
            targets.emplace_back(t.at("theta").get<double>(), Vec3{ax[0], ax[1], ax[2]});
        }
    } catch (const std::exception& e) {
        throw CliFailure(kExitCompile, std::string("bad targets file: ") + e.what());
    }
    std::vector<GlobalPulse> pulses;
    pulses.reserve(sched.steps.size());
    for (const auto& st : sched.steps) pulses.push_back(st.pulse);
    const double dist = verify_sequence(pulses, targets);
    std::cout.precision(17);
    std::cout << "max_distance " << dist << "\n";
    return dist < tol ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"globally driven ZZ-coupled processor toolchain"};
    app.require_subcommand(1);
    unsigned seed = 0;
    app.add_option("--seed", seed,
                   "seed for randomized test-input generation (core paths are seed-free)");

    auto* build = app.add_subcommand("build", "construct a device and write its JSON");
    std::string arch, out_path;
    int n = 0;
    double zeta = 1.0;
    build->add_option("--arch", arch, "ladder | conveyor")
        ->required()
        ->check(CLI::IsMember({"ladder", "conveyor"}));
    build->add_option("--n", n, "computational qubits")->required();
    build->add_option("--zeta", zeta, "uniform ZZ strength");
    build->add_option("--out", out_path, "output path")->required();

    auto* comp = app.add_subcommand("compile", "lower a circuit onto a device");
    std::string device_path, circuit_path, sched_out, format = "json", init_bits, report_path,
                               dump_path;
    double dump_threshold = 1e-9;
    bool run = false;
    comp->add_option("--device", device_path, "device JSON")->required();
    comp->add_option("--circuit", circuit_path, "gqc circuit file")->required();
    comp->add_flag("--run", run, "simulate and report fidelity vs the reference");
    comp->add_option("--out", sched_out, "schedule JSON output path");
    comp->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    comp->add_option("--init", init_bits, "initial logical bitstring (default all zeros)");
    comp->add_option("--report", report_path, "write the run report here instead of stdout");
    comp->add_option("--dump-state", dump_path, "dump nonzero final amplitudes as JSON");
    comp->add_option("--dump-threshold", dump_threshold, "amplitude cutoff for --dump-state");

    auto* sweep = app.add_subcommand("sweep", "blockade-error sweep over eta_BR");
    std::string sweep_device, sweep_schedule, etas_csv, sweep_out, sweep_json, sweep_init;
    double tol = 1e-9;
    sweep->add_option("--device", sweep_device, "device JSON")->required();
    sweep->add_option("--schedule", sweep_schedule, "schedule JSON")->required();
    sweep->add_option("--etas", etas_csv, "comma-separated eta values")->required();
    sweep->add_option("--tol", tol, "integrator tolerance");
    sweep->add_option("--out", sweep_out, "CSV output path (stdout if omitted)");
    sweep->add_option("--json-out", sweep_json, "optional JSON mirror");
    sweep->add_option("--init", sweep_init, "initial logical bitstring");

    auto* verify = app.add_subcommand("verify", "verify a schedule against rotation targets");
    std::string verify_schedule, verify_targets;
    double verify_tol = 1e-9;
    verify->add_option("--schedule", verify_schedule, "schedule JSON")->required();
    verify->add_option("--targets", verify_targets, "targets JSON")->required();
    verify->add_option("--tol", verify_tol, "acceptance distance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(arch, n, zeta, out_path);
        if (comp->parsed()) {
            return cmd_compile(device_path, circuit_path, run, sched_out, format, init_bits,
                               report_path, dump_path, dump_threshold);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_device, sweep_schedule, etas_csv, tol, sweep_out, sweep_json,
                             sweep_init);
        }
        if (verify->parsed()) return cmd_verify(verify_schedule, verify_targets, verify_tol);
    } catch (const CliFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
