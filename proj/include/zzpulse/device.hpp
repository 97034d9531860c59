// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Qubit-graph model: two species A/B on a planar graph with always-on ZZ
// edges of uniform strength zeta. Each species splits into subgroups with
// geometric Rabi multipliers (regular x1, crossed x2, double-crossed x4).
// No edge may join two sites of the same species (P1); per-site detuning
// bookkeeping is carried as the coordination number kappa.

namespace zzpulse {

enum class Species : uint8_t { A, B };
enum class Subgroup : uint8_t { regular, crossed, double_crossed };

inline int multiplier(Subgroup s) { return 1 << static_cast<int>(s); }
/// 1-based subgroup index j with multiplier 2^(j-1).
inline int subgroup_index(Subgroup s) { return static_cast<int>(s) + 1; }

inline char species_char(Species s) { return s == Species::A ? 'A' : 'B'; }

struct QubitSite {
    int id = 0;
    Species species = Species::A;
    Subgroup subgroup = Subgroup::regular;
    int coordination = 0;
    std::string role;
};

struct Device {
    std::string architecture;  // "ladder" | "conveyor" | "custom"
    int n = 0;                 // computational qubits
    double zeta = 1.0;
    std::vector<QubitSite> sites;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> logical_map;  // logical qubit k (0-based) -> site id

    int site_count() const { return static_cast<int>(sites.size()); }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(sites.size());
        for (const auto& [i, j] : edges) {
            adj[static_cast<std::size_t>(i)].push_back(j);
            adj[static_cast<std::size_t>(j)].push_back(i);
        }
        return adj;
    }

    /// Bitmask of neighbors per site (site ids < 64).
    std::vector<uint64_t> neighbor_masks() const {
        std::vector<uint64_t> m(sites.size(), 0);
        for (const auto& [i, j] : edges) {
            m[static_cast<std::size_t>(i)] |= uint64_t{1} << j;
            m[static_cast<std::size_t>(j)] |= uint64_t{1} << i;
        }
        return m;
    }
};

/// kappa_i * zeta: how far site i sits below its species' drive frequency.
inline double detuning_offset(const QubitSite& site, double zeta) {
    return site.coordination * zeta;
}

// ---------------------------------------------------------------------------
// Conveyor belt: ring of 2n sites with block pattern B^r A^x B^x A^r repeated
// n/2 times, plus one interior double-crossed A hub ("one-shot Toffoli")
// attached to Q2, Q3, Q4. Q-sites are the n B sites, Q1..Qn in ring order;
// Q1 is the unique double-crossed B, even Qs are crossed, other odd Qs are
// regular.
// ---------------------------------------------------------------------------

struct ConveyorLayout {
    int n;

    explicit ConveyorLayout(int n_) : n(n_) {}
    explicit ConveyorLayout(const Device& d) : n(d.n) {
        if (d.architecture != "conveyor")
            throw std::invalid_argument("ConveyorLayout: device is not a conveyor");
    }

    int ring_sites() const { return 2 * n; }
    int hub_id() const { return 2 * n; }
    int site_count() const { return 2 * n + 1; }
    /// Q index k in 1..n.
    int q_site(int k) const { return 2 * (k - 1); }
    /// -1 for mediators/hub.
    int q_of_site(int id) const { return (id < 2 * n && id % 2 == 0) ? id / 2 + 1 : -1; }
    /// Mediator inside the m-th T1 triple (Q_{2m+1}, ., Q_{2m+2}), m in 0..n/2-1.
    int t1_mediator(int m) const { return 4 * m + 1; }
    /// Mediator inside the m-th T2 triple (Q_{2m+2}, ., Q_{2m+3 mod n}).
    int t2_mediator(int m) const { return 4 * m + 3; }
    /// Q indices adjacent to the Toffoli hub.
    std::array<int, 3> hub_qs() const { return {2, 3, 4}; }
};

inline Device build_conveyor(int n, double zeta = 1.0) {
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("build_conveyor: n must be even and >= 4");
    }
    Device d;
    d.architecture = "conveyor";
    d.n = n;
    d.zeta = zeta;
    const ConveyorLayout lay(n);
    for (int pos = 0; pos < 2 * n; ++pos) {
        QubitSite s;
        s.id = pos;
        switch (pos % 4) {
            case 0:  // Q_odd
                s.species = Species::B;
                s.subgroup = pos == 0 ? Subgroup::double_crossed : Subgroup::regular;
                s.role = "Q-site";
                break;
            case 1:
                s.species = Species::A;
                s.subgroup = Subgroup::crossed;
                s.role = "mediator";
                break;
            case 2:  // Q_even
                s.species = Species::B;
                s.subgroup = Subgroup::crossed;
                s.role = "Q-site";
                break;
            default:
                s.species = Species::A;
                s.subgroup = Subgroup::regular;
                s.role = "mediator";
                break;
        }
        d.sites.push_back(std::move(s));
    }
    QubitSite hub;
    hub.id = lay.hub_id();
    hub.species = Species::A;
    hub.subgroup = Subgroup::double_crossed;
    hub.role = "toffoli-hub";
    d.sites.push_back(std::move(hub));

    for (int pos = 0; pos < 2 * n; ++pos) d.edges.emplace_back(pos, (pos + 1) % (2 * n));
    for (int k : lay.hub_qs()) d.edges.emplace_back(lay.hub_id(), lay.q_site(k));

    for (auto& s : d.sites) s.coordination = 0;
    for (const auto& [i, j] : d.edges) {
        ++d.sites[static_cast<std::size_t>(i)].coordination;
        ++d.sites[static_cast<std::size_t>(j)].coordination;
    }
    for (int k = 1; k <= n; ++k) d.logical_map.push_back(lay.q_site(k));
    return d;
}

// ---------------------------------------------------------------------------
// Two-species ladder: n rows of 2n+3 alternating sites (even columns A, odd
// columns B), columns vertically disconnected except for the n-1 crossed
// A-type connectors sitting between consecutive rows inside B columns.
// Row r carries one special B element (double-crossed for row 0, crossed
// otherwise) at column 3+2r; connector g lives at column 3+2g. Total sites:
// n(2n+3) + (n-1) = 2n^2 + 4n - 1. The information-carrying column starts
// at column 3; Neel background (A columns |g>, B columns |e>) to its left,
// ferromagnetic all-|g> to its right.
// ---------------------------------------------------------------------------

struct LadderLayout {
    int n;

    explicit LadderLayout(int n_) : n(n_) {}
    explicit LadderLayout(const Device& d) : n(d.n) {
        if (d.architecture != "ladder")
            throw std::invalid_argument("LadderLayout: device is not a ladder");
    }

    int cols() const { return 2 * n + 3; }
    int site(int row, int col) const { return row * cols() + col; }
    int row_of(int id) const { return id / cols(); }
    int col_of(int id) const { return id % cols(); }
    bool is_connector(int id) const { return id >= n * cols(); }
    int connector(int g) const { return n * cols() + g; }
    int connector_col(int g) const { return 3 + 2 * g; }
    int special_col(int row) const { return 3 + 2 * row; }
    int initial_icc_col() const { return 3; }
    int site_count() const { return n * cols() + (n - 1); }
};

inline Device build_ladder(int n, double zeta = 1.0) {
    if (n < 2) throw std::invalid_argument("build_ladder: n must be >= 2");
    Device d;
    d.architecture = "ladder";
    d.n = n;
    d.zeta = zeta;
    const LadderLayout lay(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < lay.cols(); ++c) {
            QubitSite s;
            s.id = lay.site(r, c);
            s.species = (c % 2 == 0) ? Species::A : Species::B;
            s.subgroup = Subgroup::regular;
            s.role = "buffer";
            if (c == lay.special_col(r)) {
                s.subgroup = (r == 0) ? Subgroup::double_crossed : Subgroup::crossed;
                s.role = "gate-site";
            }
            d.sites.push_back(std::move(s));
        }
    }
    for (int g = 0; g < n - 1; ++g) {
        QubitSite s;
        s.id = lay.connector(g);
        s.species = Species::A;
        s.subgroup = Subgroup::crossed;
        s.role = "mediator";
        d.sites.push_back(std::move(s));
    }

    for (int r = 0; r < n; ++r) {
        for (int c = 0; c + 1 < lay.cols(); ++c) {
            d.edges.emplace_back(lay.site(r, c), lay.site(r, c + 1));
        }
    }
    for (int g = 0; g < n - 1; ++g) {
        d.edges.emplace_back(lay.connector(g), lay.site(g, lay.connector_col(g)));
        d.edges.emplace_back(lay.connector(g), lay.site(g + 1, lay.connector_col(g)));
    }

    for (const auto& [i, j] : d.edges) {
        ++d.sites[static_cast<std::size_t>(i)].coordination;
        ++d.sites[static_cast<std::size_t>(j)].coordination;
    }
    for (int r = 0; r < n; ++r) d.logical_map.push_back(lay.site(r, lay.initial_icc_col()));
    return d;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void fail(std::string msg) { violations.push_back(std::move(msg)); }
};

inline ValidationReport validate(const Device& d) {
    ValidationReport rep;
    const int ns = d.site_count();

    if (!(d.zeta > 0.0) || !std::isfinite(d.zeta)) rep.fail("zeta must be a positive scalar");

    for (int i = 0; i < ns; ++i) {
        if (d.sites[static_cast<std::size_t>(i)].id != i) {
            rep.fail("site ids must be dense and ascending");
            break;
        }
    }

    std::set<std::pair<int, int>> seen;
    std::vector<int> degree(static_cast<std::size_t>(ns), 0);
    for (const auto& [i, j] : d.edges) {
        if (i < 0 || j < 0 || i >= ns || j >= ns || i == j) {
            rep.fail("edge endpoints out of range");
            continue;
        }
        if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
            rep.fail("duplicate edge " + std::to_string(i) + "-" + std::to_string(j));
        }
        ++degree[static_cast<std::size_t>(i)];
        ++degree[static_cast<std::size_t>(j)];
        if (d.sites[static_cast<std::size_t>(i)].species ==
            d.sites[static_cast<std::size_t>(j)].species) {
            rep.fail("P1 violation: same-species edge " + std::to_string(i) + "-" +
                     std::to_string(j));
        }
    }
    for (int i = 0; i < ns; ++i) {
        if (d.sites[static_cast<std::size_t>(i)].coordination !=
            degree[static_cast<std::size_t>(i)]) {
            rep.fail("coordination mismatch at site " + std::to_string(i));
        }
    }

    if (d.architecture == "conveyor") {
        if (d.n < 4 || d.n % 2 != 0) rep.fail("conveyor requires even n >= 4");
        if (ns != 2 * d.n + 1) {
            rep.fail("conveyor site count must be 2n+1, got " + std::to_string(ns));
        }
        int hubs = 0;
        for (const auto& s : d.sites) {
            if (s.species == Species::A && s.subgroup == Subgroup::double_crossed) ++hubs;
        }
        if (hubs != 1) rep.fail("conveyor must have exactly one double-crossed A hub");
    } else if (d.architecture == "ladder") {
        if (d.n < 2) rep.fail("ladder requires n >= 2");
        const int expect = 2 * d.n * d.n + 4 * d.n - 1;
        if (ns != expect) {
            rep.fail("ladder site count must be 2n^2+4n-1 = " + std::to_string(expect) +
                     ", got " + std::to_string(ns));
        }
    } else if (d.architecture != "custom") {
        rep.fail("unknown architecture tag '" + d.architecture + "'");
    }

    if (static_cast<int>(d.logical_map.size()) != d.n) {
        rep.fail("logical map must anchor exactly n qubits");
    }
    std::set<int> anchors;
    for (int id : d.logical_map) {
        if (id < 0 || id >= ns) rep.fail("logical anchor out of range");
        else if (!anchors.insert(id).second) rep.fail("duplicate logical anchor");
    }

    // connectivity of the computational region
    if (!d.logical_map.empty() && rep.ok()) {
        const auto adj = d.adjacency();
        std::vector<char> visited(static_cast<std::size_t>(ns), 0);
        std::queue<int> q;
        q.push(d.logical_map.front());
        visited[static_cast<std::size_t>(d.logical_map.front())] = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (!visited[static_cast<std::size_t>(w)]) {
                    visited[static_cast<std::size_t>(w)] = 1;
                    q.push(w);
                }
            }
        }
        for (int id : d.logical_map) {
            if (!visited[static_cast<std::size_t>(id)]) {
                rep.fail("computational region disconnected at site " + std::to_string(id));
            }
        }
    }
    return rep;
}

}  // namespace zzpulse
