#include "csm/calig.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <tuple>

namespace csm {

CaligIndex::CaligIndex(const QueryGraph& q, const LabeledGraph& g, CaligConfig config)
    : q_(&q), g_(&g), config_(config) {
    size_t nq = q.vertex_count();
    size_t ng = g.vertex_count();
    node_of_.assign(nq, std::vector<uint32_t>(ng, kNoNode));
    nodes_of_u_.assign(nq, {});
    for (VertexId u = 0; u < nq; ++u) {
        for (VertexId v = 0; v < ng; ++v) {
            if (q.label(u) != g.label(v)) continue;
            uint32_t id = static_cast<uint32_t>(nodes_.size());
            nodes_.push_back(Node{u, v, true, {}, {}, {}, false});
            node_of_[u][v] = id;
            nodes_of_u_[u].push_back(id);
        }
    }
    // Arc wiring: visiting (u', v') pairs in (ascending u', ascending v')
    // order fixes the in-list order every propagation below iterates in.
    for (uint32_t id = 0; id < nodes_.size(); ++id) {
        VertexId u = nodes_[id].u;
        VertexId v = nodes_[id].v;
        for (VertexId nu : q.neighbors(u)) {
            for (VertexId nv : g.neighbors(v)) {
                uint32_t from = node_of_[nu][nv];
                if (from == kNoNode) continue;
                nodes_[from].out.push_back(id);
                nodes_[id].in.push_back(from);
            }
        }
    }
    if (config_.maintain_states) initialize(init_log_);
}

bool CaligIndex::pair_on(VertexId u, VertexId v) const {
    uint32_t id = node_of_[u][v];
    return id != kNoNode && nodes_[id].on;
}

bool CaligIndex::has_arc(uint32_t from, uint32_t to) const {
    const auto& out = nodes_[from].out;
    return std::find(out.begin(), out.end(), to) != out.end();
}

std::vector<VertexId> CaligIndex::candidates(VertexId u) const {
    std::vector<VertexId> out;
    for (uint32_t id : nodes_of_u_[u]) {
        if (nodes_[id].on) out.push_back(nodes_[id].v);
    }
    return out;
}

void CaligIndex::build_bigraph(uint32_t id, Bigraph& b, std::vector<VertexId>& rights) const {
    const Node& n = nodes_[id];
    const auto& left = q_->neighbors(n.u);
    rights.clear();
    for (uint32_t w : n.in) rights.push_back(nodes_[w].v);
    std::sort(rights.begin(), rights.end());
    rights.erase(std::unique(rights.begin(), rights.end()), rights.end());
    b = Bigraph(static_cast<uint32_t>(left.size()), static_cast<uint32_t>(rights.size()));
    for (uint32_t w : n.in) {
        size_t slot = std::lower_bound(left.begin(), left.end(), nodes_[w].u) - left.begin();
        uint32_t r = static_cast<uint32_t>(
            std::lower_bound(rights.begin(), rights.end(), nodes_[w].v) - rights.begin());
        b.adj[slot].push_back(r);
    }
    for (auto& row : b.adj) std::sort(row.begin(), row.end());
}

Bigraph CaligIndex::bigraph_of(uint32_t id) const {
    Bigraph b;
    std::vector<VertexId> rights;
    build_bigraph(id, b, rights);
    return b;
}

bool CaligIndex::lighting_ok(uint32_t id) {
    Node& n = nodes_[id];
    if (config_.state_check == StateCheck::Full && config_.cache_matchings && n.cache_valid) {
        return true;
    }
    Bigraph b;
    std::vector<VertexId> rights;
    build_bigraph(id, b, rights);
    if (config_.state_check == StateCheck::NeighborhoodOnly) {
        return every_left_slot_covered(b);
    }
    if (!config_.cache_matchings) return has_injective_matching(b);
    auto m = find_injective_matching(b);
    if (!m) return false;
    n.cached_right.resize(b.left_count);
    for (uint32_t slot = 0; slot < b.left_count; ++slot) {
        n.cached_right[slot] = rights[(*m)[slot]];
    }
    n.cache_valid = true;
    return true;
}

// A node that was turned off earlier may be missing in-arcs: the neighbors
// that died before it stripped theirs on the way down. Restoring the in-list
// from current adjacency before a revival check lets mutually supporting
// clusters bootstrap (each member's stale list would otherwise
// under-approximate the from-scratch fixpoint). Only the in-side is rebuilt
// here; out-arcs toward the rest of the index are added by on_propagate once
// the node actually turns on, so a failed check never feeds a dead vertex
// into a live node's bigraph.
void CaligIndex::refresh_in_arcs(uint32_t id) {
    VertexId u = nodes_[id].u;
    VertexId v = nodes_[id].v;
    for (VertexId nu : q_->neighbors(u)) {
        for (VertexId nv : g_->neighbors(v)) {
            uint32_t from = node_of_[nu][nv];
            if (from != kNoNode) add_arc(from, id);
        }
    }
}

void CaligIndex::add_arc(uint32_t from, uint32_t to) {
    auto& in = nodes_[to].in;
    if (std::find(in.begin(), in.end(), from) != in.end()) return;
    in.push_back(from);
    nodes_[from].out.push_back(to);
}

void CaligIndex::remove_arc_if_present(uint32_t from, uint32_t to) {
    auto& out = nodes_[from].out;
    auto it = std::find(out.begin(), out.end(), to);
    if (it == out.end()) return;
    out.erase(it);
    auto& in = nodes_[to].in;
    in.erase(std::find(in.begin(), in.end(), from));
    Node& dst = nodes_[to];
    if (dst.cache_valid) {
        const auto& left = q_->neighbors(dst.u);
        size_t slot =
            std::lower_bound(left.begin(), left.end(), nodes_[from].u) - left.begin();
        if (dst.cached_right[slot] == nodes_[from].v) dst.cache_valid = false;
    }
}

void CaligIndex::set_state(uint32_t id, bool on, ChangeLog& log) {
    log.push_back(StateFlip{id, nodes_[id].on, on});
    nodes_[id].on = on;
}

void CaligIndex::initialize(ChangeLog& log) {
    for (uint32_t id = 0; id < nodes_.size(); ++id) {
        if (nodes_[id].on && !lighting_ok(id)) off_propagate(id, log);
    }
}

void CaligIndex::off_propagate(uint32_t seed, ChangeLog& log) {
    if (nodes_[seed].on) set_state(seed, false, log);
    std::vector<uint32_t> stack{seed};
    while (!stack.empty()) {
        uint32_t s = stack.back();
        stack.pop_back();
        // Snapshot: the list shrinks as arcs toward ON neighbors are removed.
        std::vector<uint32_t> outs = nodes_[s].out;
        for (uint32_t w : outs) {
            if (!nodes_[w].on) continue;  // arcs between dead nodes stay
            remove_arc_if_present(s, w);
            if (!lighting_ok(w)) {
                set_state(w, false, log);
                stack.push_back(w);
            }
        }
    }
}

std::vector<uint32_t> CaligIndex::on_propagate(uint32_t seed, ChangeLog& log) {
    struct Frame {
        uint32_t node;
        std::vector<uint32_t> order;  // in-arcs, newest first
        size_t next = 0;
    };
    auto make_frame = [&](uint32_t id) {
        return Frame{id, {nodes_[id].in.rbegin(), nodes_[id].in.rend()}, 0};
    };
    std::vector<uint32_t> stops;
    std::vector<Frame> stack;
    stack.push_back(make_frame(seed));
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == f.order.size()) {
            stack.pop_back();
            continue;
        }
        uint32_t here = f.node;
        uint32_t w = f.order[f.next++];
        add_arc(here, w);  // reciprocal arc back toward the in-neighbor
        if (nodes_[w].on) continue;
        refresh_in_arcs(w);
        if (lighting_ok(w)) {
            set_state(w, true, log);
            stack.push_back(make_frame(w));  // invalidates f; loop re-reads back()
        } else if (std::find(stops.begin(), stops.end(), w) == stops.end()) {
            stops.push_back(w);
        }
    }
    return stops;
}

ChangeLog CaligIndex::update_for_addition(VertexId v1, VertexId v2) {
    ChangeLog log;
    last_stops_.clear();
    if (!config_.maintain_states) return log;
    for (auto [a, b] : q_->edges()) {
        // Both orientations of the query edge against the new data edge, in
        // stream order: the arc points from (u2, v2) toward the checked node
        // (u1, v1), whose turning on then propagates back through it.
        const VertexId orient[2][2] = {{a, b}, {b, a}};
        for (const auto& qp : orient) {
            uint32_t checked = node_of_[qp[0]][v1];
            uint32_t other = node_of_[qp[1]][v2];
            if (checked == kNoNode || other == kNoNode) continue;
            add_arc(other, checked);
            if (!nodes_[checked].on) {
                refresh_in_arcs(checked);
                if (lighting_ok(checked)) set_state(checked, true, log);
            }
            if (!nodes_[checked].on) continue;
            std::vector<uint32_t> stops = on_propagate(checked, log);
            for (uint32_t s : stops) {
                if (std::find(last_stops_.begin(), last_stops_.end(), s) == last_stops_.end()) {
                    last_stops_.push_back(s);
                }
            }
            // A stop node the propagation itself turned ON later in its
            // sweep needs no arc stripping.
            for (uint32_t s : stops) {
                if (!nodes_[s].on) off_propagate(s, log);
            }
        }
    }
    return log;
}

ChangeLog CaligIndex::update_for_deletion(VertexId v1, VertexId v2) {
    ChangeLog log;
    if (!config_.maintain_states) return log;
    for (auto [a, b] : q_->edges()) {
        const VertexId orient[2][2] = {{a, b}, {b, a}};
        for (const auto& qp : orient) {
            uint32_t na = node_of_[qp[0]][v1];
            uint32_t nb = node_of_[qp[1]][v2];
            if (na == kNoNode || nb == kNoNode) continue;
            remove_arc_if_present(na, nb);
            remove_arc_if_present(nb, na);
            if (nodes_[na].on && !lighting_ok(na)) off_propagate(na, log);
            if (nodes_[nb].on && !lighting_ok(nb)) off_propagate(nb, log);
        }
    }
    return log;
}

std::string CaligIndex::dump() const {
    std::ostringstream out;
    for (const Node& n : nodes_) {
        out << "mp " << n.u << ' ' << n.v << ' ' << (n.on ? "ON" : "OFF") << '\n';
    }
    std::vector<std::tuple<VertexId, VertexId, VertexId, VertexId>> arcs;
    for (const Node& n : nodes_) {
        for (uint32_t w : n.out) {
            arcs.emplace_back(n.u, n.v, nodes_[w].u, nodes_[w].v);
        }
    }
    std::sort(arcs.begin(), arcs.end());
    for (auto [u1, w1, u2, w2] : arcs) {
        out << "arc " << u1 << ' ' << w1 << ' ' << u2 << ' ' << w2 << '\n';
    }
    return out.str();
}

std::vector<std::tuple<VertexId, VertexId, bool>> CaligIndex::state_table() const {
    std::vector<std::tuple<VertexId, VertexId, bool>> t;
    t.reserve(nodes_.size());
    for (const Node& n : nodes_) t.emplace_back(n.u, n.v, n.on);
    return t;
}

}  // namespace csm
