// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one criterion per function, one pass/fail line each.
// Every tolerance is pinned here, in code. Exit is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <zzpulse/compiler.hpp>
#include <zzpulse/exact.hpp>
#include <zzpulse/io.hpp>
#include <zzpulse/shift_search.hpp>

#include "oracles.hpp"

using namespace zzpulse;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& name, const std::function<std::string()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = fn();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!detail.empty() && detail.rfind("FAIL", 0) == 0) ok = false;
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                dt, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fail(const std::string& msg) { return "FAIL: " + msg; }

oracle::M2 om(const Mat2& m) { return {m.a[0], m.a[1], m.a[2], m.a[3]}; }

Rotation random_rotation(std::mt19937& rng) {
    std::uniform_real_distribution<double> ang(-2.0 * kPi, 2.0 * kPi);
    return Rotation(ang(rng), oracle::random_unit_vec(rng));
}

double state_distance(const StateVector& a, const StateVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a.amp[i] - b.amp[i]);
    return std::sqrt(s);
}

StateVector random_state(int sites, std::mt19937& rng) {
    StateVector s = StateVector::zero(sites);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& a : s.amp) a = complexd{g(rng), g(rng)};
    const double n = s.norm();
    for (auto& a : s.amp) a /= n;
    return s;
}

Device chain3() {
    Device d;
    d.architecture = "custom";
    d.n = 3;
    d.sites.push_back({0, Species::B, Subgroup::regular, 1, "Q-site"});
    d.sites.push_back({1, Species::A, Subgroup::regular, 2, "mediator"});
    d.sites.push_back({2, Species::B, Subgroup::regular, 1, "Q-site"});
    d.edges = {{0, 1}, {1, 2}};
    d.logical_map = {0, 1, 2};
    return d;
}

Device single_site() {
    Device d;
    d.architecture = "custom";
    d.n = 1;
    d.sites.push_back({0, Species::B, Subgroup::regular, 0, "Q-site"});
    d.logical_map = {0};
    return d;
}

int belt_oracle(int p, int T, int n) {
    if (p % 2 == 1) return ((p - 1 + 2 * T) % n) + 1;
    return ((p - 1 - 2 * T) % n + n) % n + 1;
}

/// device result of `circuit` on basis input `bits`, plus expected state
struct EndToEnd {
    double fid;
    complexd overlap_vs_ledger;
    double mediator_leak;
};

EndToEnd end_to_end(const Device& d, const std::string& src, const std::string& bits) {
    const Circuit circ = parse_circuit(src);
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

    const Schedule sched = compile(circ, d);
    StateVector s = init_state(d, bits);
    apply_schedule(s, d, std::span<const ScheduleStep>(sched.steps));
    StateVector ref = reference_simulate(prepped);
    for (auto& a : ref.amp) a *= std::pow(complexd{0.0, 1.0}, preps);
    const StateVector want = embed_logical(d, sched.tracker, ref);

    double leak = 0.0;
    if (d.architecture == "conveyor") {
        const ConveyorLayout lay(d);
        uint64_t mask = 0;
        for (const auto& site : d.sites) {
            if (lay.q_of_site(site.id) < 0) mask |= uint64_t{1} << site.id;
        }
        for (std::size_t idx = 0; idx < s.dim(); ++idx) {
            if ((idx & mask) != mask) leak += std::norm(s.amp[idx]);
        }
    }
    return {fidelity(s, want), overlap(want, s) - sched.phase_ledger, leak};
}

const std::string cli = ZZ_CLI_PATH;
namespace fsys = std::filesystem;

std::string slurp(const fsys::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------

std::string criterion1_su2() {
    std::mt19937 rng(20260808);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Rotation a = random_rotation(rng);
        const Rotation b = random_rotation(rng);
        // compose against the matrix product
        worst = std::max(worst,
                         frobenius_distance(matrix(compose(a, b)), matrix(a) * matrix(b)));
        // inverse law
        worst = std::max(worst,
                         frobenius_distance(matrix(compose(inverse(a), a)), Mat2::identity()));
        // conjugation law
        std::uniform_real_distribution<double> ang(-2.0 * kPi, 2.0 * kPi);
        const double phi = ang(rng);
        const Vec3 n = oracle::random_unit_vec(rng);
        const Mat2 lhs = matrix(Rotation(b.theta, conjugate_axis(phi, n, b.axis)));
        const Mat2 rhs =
            matrix(Rotation(phi, n)) * matrix(b) * matrix(Rotation(-phi, n));
        worst = std::max(worst, frobenius_distance(lhs, rhs));
    }
    if (worst >= 1e-12) return fail("max deviation " + std::to_string(worst));

    double worst2pi = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Mat2 m = matrix(Rotation(2.0 * kPi, oracle::random_unit_vec(rng)));
        worst2pi = std::max(worst2pi,
                            frobenius_distance(m, complexd{-1.0} * Mat2::identity()));
    }
    if (worst2pi > 1e-14) return fail("R(2pi) deviates from -I by " + std::to_string(worst2pi));
    std::ostringstream ss;
    ss << "max deviation " << worst << ", R(2pi,n)=-I to " << worst2pi;
    return ss.str();
}

std::string criterion2_synthesis() {
    std::mt19937 rng(42);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            TargetList targets;
            for (int j = 0; j < n; ++j) targets.push_back(random_rotation(rng));
            const auto pulses = synth_targets(targets);
            const std::size_t bound =
                static_cast<std::size_t>(kSynthLengthConstant) * (1u << (2 * (n - 1)));
            if (pulses.size() > bound) return fail("length bound violated");
            worst = std::max(worst, verify_sequence(pulses, targets));
        }
    }
    if (worst >= 1e-9) return fail("verify_sequence " + std::to_string(worst));
    std::ostringstream ss;
    ss << "300 target lists, worst distance " << worst;
    return ss.str();
}

std::string criterion3_suppress_first() {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> ang(-2.0 * kPi, 2.0 * kPi);
    double worst_id = 0.0, worst_lift = 0.0;
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 50; ++trial) {
            const double theta = ang(rng);
            const TransverseAxis a(ang(rng));
            const auto pulses = suppress_first(theta, a, n);
            for (int j = 1; j <= n; ++j) {
                oracle::M2 acc = oracle::M2::identity();
                const double mult = static_cast<double>(1 << (j - 1));
                for (const auto& p : pulses) {
                    acc = oracle::rot(mult * p.theta, {std::cos(p.phi), std::sin(p.phi), 0.0}) *
                          acc;
                }
                if (j == 1) {
                    worst_id = std::max(worst_id, oracle::dist(acc, oracle::M2::identity()));
                } else {
                    const double lifted = static_cast<double>(1 << (j - 2)) * theta;
                    worst_lift = std::max(
                        worst_lift, oracle::dist(acc, om(matrix(a.rotation(lifted)))));
                }
            }
        }
    }
    if (worst_id >= 1e-12) return fail("subgroup-1 residue " + std::to_string(worst_id));
    if (worst_lift >= 1e-12) return fail("lift residue " + std::to_string(worst_lift));
    std::ostringstream ss;
    ss << "identity residue " << worst_id << ", lift residue " << worst_lift;
    return ss.str();
}

std::string criterion4_hardware_lift() {
    const Device d = build_conveyor(4);
    const auto masks = d.neighbor_masks();
    std::mt19937 rng(44);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        const TargetList targets{random_rotation(rng), random_rotation(rng),
                                 random_rotation(rng)};
        std::vector<ScheduleStep> steps;
        for (const auto& p : synth_targets(targets)) steps.push_back({Species::B, p});

        StateVector s = random_state(d.site_count(), rng);
        std::vector<oracle::cd> ref(s.amp.begin(), s.amp.end());
        apply_schedule(s, d, std::span<const ScheduleStep>(steps));

        // dense W-operator product: every B site applies its subgroup target
        for (const auto& site : d.sites) {
            if (site.species != Species::B) continue;
            const Mat2 r = matrix(targets[static_cast<std::size_t>(subgroup_index(site.subgroup) - 1)]);
            const auto w =
                oracle::w_operator(d.site_count(), site.id, {r.a[0], r.a[1], r.a[2], r.a[3]},
                                   masks[static_cast<std::size_t>(site.id)]);
            ref = w.apply(ref);
        }
        double dist = 0.0;
        for (std::size_t i = 0; i < s.dim(); ++i) dist += std::norm(s.amp[i] - ref[i]);
        worst = std::max(worst, std::sqrt(dist));
    }
    if (worst >= 1e-9) return fail("state distance " + std::to_string(worst));
    std::ostringstream ss;
    ss << "25 random cases, worst state distance " << worst;
    return ss.str();
}

std::string criterion5_native_phase() {
    // (a) B-A-B chain: 2pi on the mediator = diag(-1,1,1,1) on the outer pair
    const Device c3 = chain3();
    const auto masks3 = c3.neighbor_masks();
    double worst = 0.0;
    for (int outer = 0; outer < 4; ++outer) {
        uint64_t idx = 0b111;  // all ground, mediator = site 1
        if (outer & 1) idx &= ~uint64_t{1};       // site 0 excited
        if (outer & 2) idx &= ~(uint64_t{1} << 2);  // site 2 excited
        StateVector s = StateVector::basis(3, idx);
        apply_step(s, c3, {Species::A, {2.0 * kPi, 0.0}});
        // brute-force dense oracle for the same pulse
        const Mat2 r2pi = matrix(Rotation(2.0 * kPi, Vec3{1, 0, 0}));
        const auto w = oracle::w_operator(3, 1, {r2pi.a[0], r2pi.a[1], r2pi.a[2], r2pi.a[3]},
                                          masks3[1]);
        std::vector<oracle::cd> ref(8, oracle::cd{});
        ref[idx] = 1.0;
        ref = w.apply(ref);
        const double want = outer == 0 ? -1.0 : 1.0;  // -1 only when both outers ground
        worst = std::max(worst, std::abs(s.amp[idx] - complexd{want}));
        worst = std::max(worst, std::abs(ref[idx] - oracle::cd{want}));
    }
    if (worst > 1e-12) return fail("chain diag residue " + std::to_string(worst));

    // (b) hub: -1 exactly on the all-ground hub-neighbor component
    const Device d = build_conveyor(4);
    const auto masks = d.neighbor_masks();
    detail::SubgroupTargets hub;
    hub[Subgroup::double_crossed] = Rotation(2.0 * kPi, Vec3{1, 0, 0});
    const TargetList tl(hub.t.begin(), hub.t.end());
    std::vector<ScheduleStep> steps;
    for (const auto& p : synth_targets(tl)) steps.push_back({Species::A, p});
    double worst_hub = 0.0;
    for (int in = 0; in < 8; ++in) {
        std::string bits = "0";
        for (int k = 0; k < 3; ++k) bits.push_back((in >> k) & 1 ? '1' : '0');
        const StateVector before = init_state(d, bits);
        StateVector after = before;
        apply_schedule(after, d, std::span<const ScheduleStep>(steps));
        // brute-force dense product over all A sites
        std::vector<oracle::cd> ref(before.amp.begin(), before.amp.end());
        for (const auto& st : steps) {
            for (const auto& site : d.sites) {
                if (site.species != Species::A) continue;
                const Mat2 r = matrix(Rotation(multiplier(site.subgroup) * st.pulse.theta,
                                               TransverseAxis(st.pulse.phi).axis()));
                const auto w = oracle::w_operator(
                    d.site_count(), site.id, {r.a[0], r.a[1], r.a[2], r.a[3]},
                    masks[static_cast<std::size_t>(site.id)]);
                ref = w.apply(ref);
            }
        }
        const complexd got = overlap(before, after);
        const double want = in == 0 ? -1.0 : 1.0;  // all hub neighbors ground <=> bits 000
        worst_hub = std::max(worst_hub, std::abs(got - complexd{want}));
        double dist = 0.0;
        for (std::size_t i = 0; i < after.dim(); ++i) dist += std::norm(after.amp[i] - ref[i]);
        worst_hub = std::max(worst_hub, std::sqrt(dist));
    }
    if (worst_hub > 1e-9) return fail("hub phase residue " + std::to_string(worst_hub));
    std::ostringstream ss;
    ss << "chain residue " << worst << ", hub residue " << worst_hub;
    return ss.str();
}

std::string criterion6_transport() {
    // tracker arithmetic against the parity-split cyclic oracle, T = 1..n
    for (int n : {4, 6, 8}) {
        const Device d = build_conveyor(n);
        for (int T = 1; T <= n; ++T) {
            PositionTracker t = PositionTracker::conveyor_identity(n);
            rotate_belt(d, t, T);
            for (int q = 1; q <= n; ++q) {
                if (t.pos[static_cast<std::size_t>(q - 1)] != belt_oracle(q, T, n)) {
                    return fail("tracker mismatch at n=" + std::to_string(n));
                }
                if ((t.pos[static_cast<std::size_t>(q - 1)] - q) % 2 != 0) {
                    return fail("parity class crossed");
                }
            }
        }
    }
    // statevector transport on basis states, incremental in T
    for (int n : {4, 6, 8}) {
        const Device d = build_conveyor(n);
        const ConveyorLayout lay(d);
        std::string bits(static_cast<std::size_t>(n), '0');
        bits[0] = '1';
        bits[1] = '1';
        if (n >= 6) bits[4] = '1';
        StateVector s = init_state(d, bits);
        PositionTracker t = PositionTracker::conveyor_identity(n);
        for (int T = 1; T <= n; ++T) {
            const auto block = rotate_belt(d, t, 1);
            apply_schedule(s, d, std::span<const ScheduleStep>(block.steps));
            uint64_t idx = (uint64_t{1} << d.site_count()) - 1;
            for (int q = 1; q <= n; ++q) {
                if (bits[static_cast<std::size_t>(q - 1)] == '1') {
                    idx &= ~(uint64_t{1} << lay.q_site(belt_oracle(q, T, n)));
                }
            }
            if (std::abs(std::abs(s.amp[idx]) - 1.0) > 1e-9) {
                return fail("statevector transport off at n=" + std::to_string(n) +
                            ", T=" + std::to_string(T));
            }
        }
    }
    return "tracker T=1..n and statevector transport verified for n in {4,6,8}";
}

std::string criterion7_end_to_end() {
    const Device d = build_conveyor(4);
    // Bell and GHZ-3
    for (const char* src : {"qubits 4\nH q1\nCNOT q1 q2\n",
                            "qubits 4\nH q1\nCNOT q1 q2\nCNOT q2 q3\n"}) {
        const EndToEnd r = end_to_end(d, src, "0000");
        if (r.fid < 1.0 - 1e-6) return fail("fidelity " + std::to_string(r.fid));
        if (std::abs(r.overlap_vs_ledger) > 1e-3) return fail("phase ledger mismatch");
        if (r.mediator_leak > 1e-9) return fail("mediators not restored");
    }
    // full 8-row Toffoli truth table
    double worst = 1.0;
    for (int in = 0; in < 8; ++in) {
        std::string bits;
        for (int k = 0; k < 3; ++k) bits.push_back((in >> k) & 1 ? '1' : '0');
        bits.push_back('0');
        const EndToEnd r = end_to_end(d, "qubits 4\nCCX q1 q2 q3\n", bits);
        worst = std::min(worst, r.fid);
        if (r.fid < 1.0 - 1e-6) return fail("Toffoli row " + std::to_string(in));
        if (r.mediator_leak > 1e-9) return fail("mediators not restored");
    }
    std::ostringstream ss;
    ss << "Bell, GHZ-3 and 8 Toffoli rows; worst fidelity " << worst;
    return ss.str();
}

std::string criterion8_blockade_regime() {
    const Device d = chain3();
    const std::vector<ScheduleStep> steps{{Species::A, {kPi, 0.0}}};
    const auto rows = blockade_error_sweep(d, steps, {5, 10, 20, 50, 100}, 1e-9, "100");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].second > rows[i - 1].second + 1e-15) return fail("not non-increasing");
    }
    if (rows.back().second >= 1e-2) return fail("infidelity at eta=100 too large");

    const Device iso = single_site();
    const std::vector<ScheduleStep> s2{{Species::B, {kPi, 0.2}}, {Species::B, {0.8, 1.0}}};
    const auto rows2 = blockade_error_sweep(iso, s2, {5, 10, 20, 50, 100}, 1e-9, "0");
    for (const auto& [eta, infid] : rows2) {
        if (infid >= 1e-9) return fail("isolated qubit infidelity " + std::to_string(infid));
    }
    std::ostringstream ss;
    ss << "chain infidelity " << rows.front().second << " -> " << rows.back().second;
    return ss.str();
}

std::string criterion9_counts() {
    for (int n : {2, 3, 4}) {
        const Device d = build_ladder(n);
        if (d.site_count() != 2 * n * n + 4 * n - 1) return fail("ladder count");
        if (!validate(d).ok()) return fail("ladder validate");
    }
    for (int n : {4, 6, 8}) {
        const Device d = build_conveyor(n);
        if (d.site_count() != 2 * n + 1) return fail("conveyor count");
        if (!validate(d).ok()) return fail("conveyor validate");
    }
    return "ladder 2n^2+4n-1 for n in {2,3,4}; conveyor 2n+1 for n in {4,6,8}; all validate";
}

std::string criterion10_ladder_gates() {
    const Device d = build_ladder(2);
    double worst = 1.0;
    for (const char* bits : {"00", "01", "10", "11"}) {
        const EndToEnd r = end_to_end(d, "qubits 2\nCZ q1 q2\n", bits);
        worst = std::min(worst, r.fid);
        if (std::abs(r.overlap_vs_ledger) > 1e-4) return fail("CZ ledger mismatch");
    }
    for (const char* bits : {"00", "01", "10"}) {
        const EndToEnd r = end_to_end(d, "qubits 2\nH q1\n", bits);
        worst = std::min(worst, r.fid);
    }
    const EndToEnd combo = end_to_end(d, "qubits 2\nH q1\nCZ q1 q2\nH q1\n", "01");
    worst = std::min(worst, combo.fid);
    if (worst < 1.0 - 1e-9) return fail("fidelity " + std::to_string(worst));
    std::ostringstream ss;
    ss << "aligned CZ and double-crossed Hadamard on ladder n=2, worst fidelity " << worst;
    return ss.str();
}

std::string criterion11_shift_search() {
    const Device d = build_ladder(2);
    const auto t0 = std::chrono::steady_clock::now();
    const ShiftSearchOutcome a = search_shift_microsequence(d, +1);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt >= 60.0) return fail("search exceeded 60 s");
    const ShiftSearchOutcome b = search_shift_microsequence(d, +1);
    if (a.found != b.found || a.nodes_visited != b.nodes_visited ||
        a.certificate != b.certificate || a.completed_depth != b.completed_depth) {
        return fail("outcome not deterministic");
    }
    if (a.found) {
        if (!check_shift_contract(d, +1, a.sequence, 1e-9)) {
            return fail("found sequence violates the shift contract");
        }
        return "sequence found and contract-checked: " + a.certificate;
    }
    // exhaustion certificate: machine-check its bookkeeping and the
    // resulting unsupported status of shift_interface
    if (!a.budget_exhausted && a.completed_depth < 8) return fail("inconsistent certificate");
    if (a.nodes_visited == 0 || a.completed_depth < 3) return fail("search did too little");
    PositionTracker t = PositionTracker::ladder_initial(2, 3);
    try {
        shift_interface(d, +1, t);
        return fail("shift_interface should report unsupported");
    } catch (const CompileError&) {
    }
    return a.certificate;
}

std::string criterion12_cli_determinism() {
    const fsys::path dir = fsys::temp_directory_path() / "zzpulse_acceptance";
    fsys::remove_all(dir);
    fsys::create_directories(dir);
    auto sh = [](const std::string& cmd) {
        return WEXITSTATUS(std::system((cmd + " >/dev/null 2>/dev/null").c_str()));
    };
    const std::string dev = (dir / "dev4.json").string();
    if (sh(cli + " build --arch conveyor --n 4 --out " + dev) != 0) return fail("build failed");
    {
        std::ofstream out(dir / "bell.gqc");
        out << "qubits 4\nH q1\nCNOT q1 q2\n";
    }
    const std::string base = cli + " compile --device " + dev + " --circuit " +
                             (dir / "bell.gqc").string() + " --run --out ";
    if (sh(base + (dir / "s1.json").string() + " --report " + (dir / "r1.json").string()) != 0) {
        return fail("compile run 1 failed");
    }
    if (sh(base + (dir / "s2.json").string() + " --report " + (dir / "r2.json").string()) != 0) {
        return fail("compile run 2 failed");
    }
    if (slurp(dir / "r1.json") != slurp(dir / "r2.json")) return fail("reports differ");
    if (slurp(dir / "s1.json") != slurp(dir / "s2.json")) return fail("schedules differ");

    // sweep CSV: stable ordering (input order, including duplicates)
    {
        std::ofstream out(dir / "chain3.json");
        out << R"({"architecture":"custom","n":3,"zeta":1.0,
 "sites":[{"id":0,"species":"B","subgroup":"regular","role":"Q-site"},
          {"id":1,"species":"A","subgroup":"regular","role":"mediator"},
          {"id":2,"species":"B","subgroup":"regular","role":"Q-site"}],
 "edges":[[0,1],[1,2]],"logical_map":[0,1,2]})";
        std::ofstream sched(dir / "pi.json");
        sched << R"({"device_ref":"c","steps":[{"species":"A","theta":3.141592653589793,"phi":0.0}],
 "phase_ledger":{"re":1.0,"im":0.0},"tracker_trace":[]})";
    }
    const std::string sweep = cli + " sweep --device " + (dir / "chain3.json").string() +
                              " --schedule " + (dir / "pi.json").string() +
                              " --etas 50,5,50 --tol 1e-9 --init 100 --out ";
    if (sh(sweep + (dir / "w1.csv").string()) != 0) return fail("sweep run 1 failed");
    if (sh(sweep + (dir / "w2.csv").string()) != 0) return fail("sweep run 2 failed");
    const std::string w1 = slurp(dir / "w1.csv");
    if (w1 != slurp(dir / "w2.csv")) return fail("sweep CSVs differ");
    std::istringstream csv(w1);
    std::string header, l1, l2, l3;
    std::getline(csv, header);
    std::getline(csv, l1);
    std::getline(csv, l2);
    std::getline(csv, l3);
    if (l1.substr(0, 3) != "50," || l2.substr(0, 2) != "5," || l3 != l1) {
        return fail("sweep rows not in input order");
    }
    return "byte-identical reports and schedules; sweep rows follow input order";
}

}  // namespace

int main() {
    run_criterion(1, "SU(2) algebra suite", criterion1_su2);
    run_criterion(2, "per-subgroup synthesis soundness and length bound", criterion2_synthesis);
    run_criterion(3, "suppress_first identity and lift", criterion3_suppress_first);
    run_criterion(4, "subgroup-selective control on the conveyor graph", criterion4_hardware_lift);
    run_criterion(5, "native phase gates (mediator and hub 2pi)", criterion5_native_phase);
    run_criterion(6, "conveyor transport vs permutation oracle", criterion6_transport);
    run_criterion(7, "end-to-end compilation (Bell, GHZ-3, Toffoli table)", criterion7_end_to_end);
    run_criterion(8, "blockade-regime validation sweep", criterion8_blockade_regime);
    run_criterion(9, "qubit-count formulas and validation", criterion9_counts);
    run_criterion(10, "ladder gates at aligned positions", criterion10_ladder_gates);
    run_criterion(11, "ladder shift search harness", criterion11_shift_search);
    run_criterion(12, "CLI determinism", criterion12_cli_determinism);

    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
}
