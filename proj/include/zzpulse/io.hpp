// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "compiler.hpp"
#include "device.hpp"

// JSON interchange. ordered_json keeps key order stable so emitted files
// are byte-deterministic for fixed inputs.

namespace zzpulse {

using ordered_json = nlohmann::ordered_json;

inline std::string subgroup_name(Subgroup s) {
    switch (s) {
        case Subgroup::regular: return "regular";
        case Subgroup::crossed: return "crossed";
        default: return "double_crossed";
    }
}

inline Subgroup subgroup_from_name(const std::string& name) {
    if (name == "regular") return Subgroup::regular;
    if (name == "crossed") return Subgroup::crossed;
    if (name == "double_crossed") return Subgroup::double_crossed;
    throw std::invalid_argument("unknown subgroup '" + name + "'");
}

inline ordered_json device_to_json(const Device& d) {
    ordered_json j;
    j["architecture"] = d.architecture;
    j["n"] = d.n;
    j["zeta"] = d.zeta;
    auto sites = ordered_json::array();
    for (const auto& s : d.sites) {
        ordered_json js;
        js["id"] = s.id;
        js["species"] = std::string(1, species_char(s.species));
        js["subgroup"] = subgroup_name(s.subgroup);
        js["role"] = s.role;
        sites.push_back(std::move(js));
    }
    j["sites"] = std::move(sites);
    auto edges = ordered_json::array();
    for (const auto& [a, b] : d.edges) edges.push_back(ordered_json::array({a, b}));
    j["edges"] = std::move(edges);
    j["logical_map"] = d.logical_map;
    return j;
}

inline Device device_from_json(const ordered_json& j) {
    Device d;
    d.architecture = j.at("architecture").get<std::string>();
    d.n = j.at("n").get<int>();
    d.zeta = j.at("zeta").get<double>();
    for (const auto& js : j.at("sites")) {
        QubitSite s;
        s.id = js.at("id").get<int>();
        const auto sp = js.at("species").get<std::string>();
        if (sp != "A" && sp != "B") throw std::invalid_argument("species must be A or B");
        s.species = sp == "A" ? Species::A : Species::B;
        s.subgroup = subgroup_from_name(js.at("subgroup").get<std::string>());
        s.role = js.value("role", std::string{});
        d.sites.push_back(std::move(s));
    }
    for (const auto& je : j.at("edges")) {
        d.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
    }
    d.logical_map = j.at("logical_map").get<std::vector<int>>();
    // coordination is derived, not stored
    for (const auto& [a, b] : d.edges) {
        if (a < 0 || b < 0 || a >= d.site_count() || b >= d.site_count()) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        ++d.sites[static_cast<std::size_t>(a)].coordination;
        ++d.sites[static_cast<std::size_t>(b)].coordination;
    }
    return d;
}

/// Emitter normalization: base angles are made non-negative by the
/// phi -> phi + pi equivalence, and phi is reduced to [0, 2pi).
inline GlobalPulse normalized_pulse(GlobalPulse p) {
    if (p.theta < 0.0) {
        p.theta = -p.theta;
        p.phi += kPi;
    }
    p.phi = std::fmod(p.phi, 2.0 * kPi);
    if (p.phi < 0.0) p.phi += 2.0 * kPi;
    if (p.phi == 2.0 * kPi) p.phi = 0.0;
    return p;
}

inline ordered_json schedule_to_json(const Schedule& s) {
    ordered_json j;
    j["device_ref"] = s.device_ref;
    auto steps = ordered_json::array();
    for (const auto& st : s.steps) {
        const GlobalPulse p = normalized_pulse(st.pulse);
        ordered_json js;
        js["species"] = std::string(1, species_char(st.species));
        js["theta"] = p.theta;
        js["phi"] = p.phi;
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    j["phase_ledger"] = ordered_json{{"re", s.phase_ledger.real()}, {"im", s.phase_ledger.imag()}};
    auto trace = ordered_json::array();
    for (const auto& e : s.tracker_trace) {
        trace.push_back(ordered_json{{"op", e.op}, {"positions", e.positions}});
    }
    j["tracker_trace"] = std::move(trace);
    return j;
}

inline Schedule schedule_from_json(const ordered_json& j) {
    Schedule s;
    s.device_ref = j.value("device_ref", std::string{});
    for (const auto& js : j.at("steps")) {
        ScheduleStep st;
        const auto sp = js.at("species").get<std::string>();
        if (sp != "A" && sp != "B") throw std::invalid_argument("species must be A or B");
        st.species = sp == "A" ? Species::A : Species::B;
        st.pulse.theta = js.at("theta").get<double>();
        st.pulse.phi = js.at("phi").get<double>();
        s.steps.push_back(st);
    }
    if (j.contains("phase_ledger")) {
        s.phase_ledger = complexd{j["phase_ledger"].at("re").get<double>(),
                                  j["phase_ledger"].at("im").get<double>()};
    }
    if (j.contains("tracker_trace")) {
        for (const auto& je : j["tracker_trace"]) {
            TrackerTraceEntry e;
            e.op = je.value("op", std::string{});
            e.positions = je.value("positions", std::vector<int>{});
            s.tracker_trace.push_back(std::move(e));
        }
        if (!s.tracker_trace.empty()) s.tracker.pos = s.tracker_trace.back().positions;
    }
    return s;
}

}  // namespace zzpulse
