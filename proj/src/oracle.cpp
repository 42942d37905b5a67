#include "csm/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>

namespace csm {

namespace {

uint64_t fnv1a(uint64_t h, uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t fingerprint_of(const QueryGraph& q, const LabeledGraph& g) {
    uint64_t h = 14695981039346656037ull;
    h = fnv1a(h, q.vertex_count());
    for (VertexId u = 0; u < q.vertex_count(); ++u) h = fnv1a(h, q.label(u));
    for (auto [a, b] : q.edges()) h = fnv1a(h, (uint64_t(a) << 32) | b);
    h = fnv1a(h, g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) h = fnv1a(h, g.label(v));
    return h;
}

}  // namespace

Snapshot enumerate_static(const QueryGraph& q, const LabeledGraph& g) {
    if (q.vertex_count() > 8) throw ValidationError("oracle bound exceeded: query > 8 vertices");
    if (g.vertex_count() > 64) throw ValidationError("oracle bound exceeded: data > 64 vertices");
    Snapshot snap;
    snap.fingerprint = fingerprint_of(q, g);
    size_t nq = q.vertex_count();
    std::vector<VertexId> assign(nq, kNoVertex);
    std::vector<char> used(g.vertex_count(), 0);
    // Plain backtracking in query-vertex id order; every constraint is
    // re-checked directly against the data graph.
    auto recurse = [&](auto&& self, VertexId u) -> void {
        if (u == nq) {
            snap.matches.push_back(assign);
            return;
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (used[v] || g.label(v) != q.label(u)) continue;
            bool ok = true;
            for (VertexId nu : q.neighbors(u)) {
                if (nu < u && !g.has_edge(assign[nu], v)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            assign[u] = v;
            used[v] = 1;
            self(self, u + 1);
            used[v] = 0;
            assign[u] = kNoVertex;
        }
    };
    recurse(recurse, 0);
    std::sort(snap.matches.begin(), snap.matches.end());
    return snap;
}

std::pair<std::vector<std::vector<VertexId>>, std::vector<std::vector<VertexId>>>
diff_snapshots(const Snapshot& before, const Snapshot& after) {
    assert(before.fingerprint == after.fingerprint);
    std::vector<std::vector<VertexId>> added;
    std::vector<std::vector<VertexId>> removed;
    std::set_difference(after.matches.begin(), after.matches.end(), before.matches.begin(),
                        before.matches.end(), std::back_inserter(added));
    std::set_difference(before.matches.begin(), before.matches.end(), after.matches.begin(),
                        after.matches.end(), std::back_inserter(removed));
    return {std::move(added), std::move(removed)};
}

bool exhaustive_injective(const Bigraph& b) {
    if (b.left_count > 7) throw ValidationError("oracle bound exceeded: bigraph left side > 7");
    std::vector<char> taken(b.right_count, 0);
    auto recurse = [&](auto&& self, uint32_t l) -> bool {
        if (l == b.left_count) return true;
        for (uint32_t r = 0; r < b.right_count; ++r) {
            if (taken[r]) continue;
            if (std::find(b.adj[l].begin(), b.adj[l].end(), r) == b.adj[l].end()) continue;
            taken[r] = 1;
            if (self(self, l + 1)) return true;
            taken[r] = 0;
        }
        return false;
    };
    return recurse(recurse, 0);
}

}  // namespace csm
