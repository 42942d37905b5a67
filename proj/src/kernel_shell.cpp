#include "csm/kernel_shell.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "csm/bigraph.hpp"

namespace csm {

namespace {

// The working remainder of the query during greedy construction: vertices die
// as they are covered, and only edges between two live non-seed vertices
// remain relevant.
struct Remainder {
    const LabeledGraph* g;
    std::vector<char> alive;

    std::vector<VertexId> live_neighbors(VertexId x) const {
        std::vector<VertexId> out;
        for (VertexId y : g->neighbors(x)) {
            if (alive[y]) out.push_back(y);
        }
        return out;
    }
};

// One depth-first pass with parity labels. If an edge closes an odd cycle,
// writes its vertices (the stack slice from the ancestor down) to `cycle` and
// returns true. Otherwise `parity` holds a 2-coloring of every live vertex.
bool find_odd_cycle(const Remainder& rem, std::vector<VertexId>& cycle,
                    std::vector<char>& parity) {
    size_t n = rem.g->vertex_count();
    std::vector<char> visited(n, 0);
    std::vector<char> on_stack(n, 0);
    parity.assign(n, 0);
    struct Frame {
        VertexId x;
        size_t next = 0;
    };
    for (VertexId start = 0; start < n; ++start) {
        if (!rem.alive[start] || visited[start]) continue;
        std::vector<Frame> stack{{start, 0}};
        std::vector<VertexId> path{start};
        visited[start] = 1;
        on_stack[start] = 1;
        parity[start] = 0;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& nbrs = rem.g->neighbors(f.x);
            if (f.next == nbrs.size()) {
                on_stack[f.x] = 0;
                path.pop_back();
                stack.pop_back();
                continue;
            }
            VertexId y = nbrs[f.next++];
            if (!rem.alive[y]) continue;
            if (stack.size() > 1 && y == stack[stack.size() - 2].x) continue;  // tree edge back
            if (!visited[y]) {
                visited[y] = 1;
                on_stack[y] = 1;
                parity[y] = parity[f.x] ^ 1;
                stack.push_back({y, 0});
                path.push_back(y);
                continue;
            }
            if (on_stack[y] && parity[y] == parity[f.x]) {
                auto it = std::find(path.begin(), path.end(), y);
                cycle.assign(it, path.end());
                return true;
            }
        }
    }
    return false;
}

std::vector<std::vector<VertexId>> components_of(const LabeledGraph& q,
                                                 const std::vector<char>& in_set) {
    size_t n = q.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<VertexId>> comps;
    for (VertexId s = 0; s < n; ++s) {
        if (!in_set[s] || seen[s]) continue;
        std::vector<VertexId> comp;
        std::vector<VertexId> queue{s};
        seen[s] = 1;
        for (size_t h = 0; h < queue.size(); ++h) {
            VertexId x = queue[h];
            comp.push_back(x);
            for (VertexId y : q.neighbors(x)) {
                if (in_set[y] && !seen[y]) {
                    seen[y] = 1;
                    queue.push_back(y);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Adds the interior of a shortest path in q from the component containing
// seed_a to the nearest vertex of any other component. Repeats until the set
// induces a connected subgraph.
void connect_components(const LabeledGraph& q, VertexId seed_a, std::vector<char>& in_set) {
    size_t n = q.vertex_count();
    while (true) {
        auto comps = components_of(q, in_set);
        if (comps.size() <= 1) return;
        std::vector<char> in_seed_comp(n, 0);
        for (const auto& comp : comps) {
            if (std::find(comp.begin(), comp.end(), seed_a) != comp.end()) {
                for (VertexId x : comp) in_seed_comp[x] = 1;
                break;
            }
        }
        std::vector<uint32_t> dist(n, UINT32_MAX);
        std::vector<VertexId> parent(n, kNoVertex);
        std::vector<VertexId> queue;
        for (VertexId x = 0; x < n; ++x) {
            if (in_seed_comp[x]) {
                dist[x] = 0;
                queue.push_back(x);
            }
        }
        VertexId target = kNoVertex;
        for (size_t h = 0; h < queue.size() && target == kNoVertex; ++h) {
            VertexId x = queue[h];
            for (VertexId y : q.neighbors(x)) {
                if (dist[y] != UINT32_MAX) continue;
                dist[y] = dist[x] + 1;
                parent[y] = x;
                if (in_set[y] && !in_seed_comp[y]) {
                    target = y;
                    break;
                }
                queue.push_back(y);
            }
        }
        assert(target != kNoVertex);  // q is connected
        for (VertexId x = parent[target]; !in_seed_comp[x]; x = parent[x]) {
            in_set[x] = 1;
        }
    }
}

// [seed_a, seed_b] then the rest of the set breadth-first from the seed over
// the induced subgraph, ties by smaller query degree then lower id.
std::vector<VertexId> order_kernel(const LabeledGraph& q, VertexId seed_a, VertexId seed_b,
                                   const std::vector<char>& in_set) {
    size_t n = q.vertex_count();
    std::vector<uint32_t> dist(n, UINT32_MAX);
    std::vector<VertexId> queue{seed_a, seed_b};
    dist[seed_a] = dist[seed_b] = 0;
    for (size_t h = 0; h < queue.size(); ++h) {
        VertexId x = queue[h];
        for (VertexId y : q.neighbors(x)) {
            if (in_set[y] && dist[y] == UINT32_MAX) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    std::vector<VertexId> rest;
    for (VertexId x = 0; x < n; ++x) {
        if (in_set[x] && x != seed_a && x != seed_b) rest.push_back(x);
    }
    std::sort(rest.begin(), rest.end(), [&](VertexId a, VertexId b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        if (q.degree(a) != q.degree(b)) return q.degree(a) < q.degree(b);
        return a < b;
    });
    std::vector<VertexId> order{seed_a, seed_b};
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
}

KernelShellPlan plan_from_set(const LabeledGraph& q, VertexId seed_a, VertexId seed_b,
                              const std::vector<char>& in_set) {
    KernelShellPlan p;
    p.seed_a = seed_a;
    p.seed_b = seed_b;
    p.kernel = order_kernel(q, seed_a, seed_b, in_set);
    for (VertexId x = 0; x < q.vertex_count(); ++x) {
        if (!in_set[x]) p.shell.push_back(x);
    }
    return p;
}

void check_seed(const QueryGraph& q, VertexId uk, VertexId ul) {
    if (uk >= q.vertex_count() || ul >= q.vertex_count() || !q.has_edge(uk, ul)) {
        throw ValidationError("seed is not a query edge");
    }
}

bool covers_all_edges(const LabeledGraph& q, const std::vector<char>& in_set) {
    for (auto [a, b] : q.edges()) {
        if (!in_set[a] && !in_set[b]) return false;
    }
    return true;
}

bool induces_connected(const LabeledGraph& q, const std::vector<char>& in_set) {
    return components_of(q, in_set).size() == 1;
}

}  // namespace

KernelShellPlan greedy_cks(const QueryGraph& q, VertexId uk, VertexId ul) {
    check_seed(q, uk, ul);
    VertexId seed_a = std::min(uk, ul);
    VertexId seed_b = std::max(uk, ul);
    size_t n = q.vertex_count();
    std::vector<char> in_set(n, 0);
    in_set[seed_a] = in_set[seed_b] = 1;

    Remainder rem{&q.graph(), std::vector<char>(n, 1)};
    rem.alive[seed_a] = rem.alive[seed_b] = 0;

    std::vector<VertexId> cycle;
    std::vector<char> parity;
    while (find_odd_cycle(rem, cycle, parity)) {
        for (VertexId x : cycle) {
            in_set[x] = 1;
            rem.alive[x] = 0;
        }
        cycle.clear();
    }

    // The live remainder is now bipartite under `parity`; cover its edges
    // optimally.
    std::vector<VertexId> lefts;
    std::vector<VertexId> rights;
    for (VertexId x = 0; x < n; ++x) {
        if (!rem.alive[x]) continue;
        (parity[x] == 0 ? lefts : rights).push_back(x);
    }
    Bigraph b(static_cast<uint32_t>(lefts.size()), static_cast<uint32_t>(rights.size()));
    for (uint32_t l = 0; l < lefts.size(); ++l) {
        for (VertexId y : rem.live_neighbors(lefts[l])) {
            uint32_t r = static_cast<uint32_t>(
                std::lower_bound(rights.begin(), rights.end(), y) - rights.begin());
            b.adj[l].push_back(r);
        }
    }
    auto [cover_l, cover_r] = minimum_vertex_cover(b);
    for (uint32_t l = 0; l < lefts.size(); ++l) {
        if (cover_l[l]) in_set[lefts[l]] = 1;
    }
    for (uint32_t r = 0; r < rights.size(); ++r) {
        if (cover_r[r]) in_set[rights[r]] = 1;
    }

    connect_components(q.graph(), seed_a, in_set);
    return plan_from_set(q.graph(), seed_a, seed_b, in_set);
}

KernelShellPlan exact_mcks(const QueryGraph& q, VertexId uk, VertexId ul) {
    check_seed(q, uk, ul);
    size_t n = q.vertex_count();
    if (n > 16) throw ValidationError("exact kernel search limited to 16 query vertices");
    VertexId seed_a = std::min(uk, ul);
    VertexId seed_b = std::max(uk, ul);
    std::vector<VertexId> rest;
    for (VertexId x = 0; x < n; ++x) {
        if (x != seed_a && x != seed_b) rest.push_back(x);
    }
    std::vector<char> best;
    size_t best_size = SIZE_MAX;
    std::vector<VertexId> best_list;
    for (uint64_t mask = 0; mask < (1ull << rest.size()); ++mask) {
        std::vector<char> in_set(n, 0);
        in_set[seed_a] = in_set[seed_b] = 1;
        size_t size = 2;
        std::vector<VertexId> list{seed_a, seed_b};
        for (size_t i = 0; i < rest.size(); ++i) {
            if (mask >> i & 1) {
                in_set[rest[i]] = 1;
                ++size;
                list.push_back(rest[i]);
            }
        }
        if (size > best_size) continue;
        if (!covers_all_edges(q.graph(), in_set)) continue;
        if (!induces_connected(q.graph(), in_set)) continue;
        std::sort(list.begin(), list.end());
        if (size < best_size || list < best_list) {
            best = in_set;
            best_size = size;
            best_list = list;
        }
    }
    assert(!best.empty());  // the full vertex set is always valid
    return plan_from_set(q.graph(), seed_a, seed_b, best);
}

std::vector<KernelShellPlan> precompute_all_plans(const QueryGraph& q) {
    std::vector<KernelShellPlan> plans;
    for (auto [a, b] : q.edges()) plans.push_back(greedy_cks(q, a, b));
    return plans;
}

const KernelShellPlan& plan_for_edge(const std::vector<KernelShellPlan>& plans, VertexId a,
                                     VertexId b) {
    VertexId lo = std::min(a, b);
    VertexId hi = std::max(a, b);
    for (const auto& p : plans) {
        if (p.seed_a == lo && p.seed_b == hi) return p;
    }
    throw ValidationError("no plan for query edge");
}

bool validate_plan(const QueryGraph& q, const KernelShellPlan& p) {
    size_t n = q.vertex_count();
    if (p.seed_a >= p.seed_b || p.seed_b >= n || !q.has_edge(p.seed_a, p.seed_b)) return false;
    if (p.kernel.size() < 2 || p.kernel[0] != p.seed_a || p.kernel[1] != p.seed_b) return false;
    if (p.kernel.size() + p.shell.size() != n) return false;
    std::vector<char> in_kernel(n, 0);
    std::vector<char> seen(n, 0);
    for (VertexId x : p.kernel) {
        if (x >= n || seen[x]) return false;
        seen[x] = in_kernel[x] = 1;
    }
    for (VertexId x : p.shell) {
        if (x >= n || seen[x]) return false;
        seen[x] = 1;
    }
    for (auto [a, b] : q.edges()) {
        if (!in_kernel[a] && !in_kernel[b]) return false;  // uncovered edge
    }
    if (!induces_connected(q.graph(), in_kernel)) return false;
    for (size_t i = 2; i < p.kernel.size(); ++i) {
        bool attached = false;
        for (size_t j = 0; j < i && !attached; ++j) {
            attached = q.has_edge(p.kernel[i], p.kernel[j]);
        }
        if (!attached) return false;  // not a connected extension order
    }
    return true;
}

KernelShellPlan extend_kernel_with_shell(const KernelShellPlan& p) {
    KernelShellPlan out;
    out.seed_a = p.seed_a;
    out.seed_b = p.seed_b;
    out.kernel = p.kernel;
    out.kernel.insert(out.kernel.end(), p.shell.begin(), p.shell.end());
    return out;
}

std::string serialize_plans(const std::vector<KernelShellPlan>& plans) {
    std::ostringstream out;
    for (const auto& p : plans) {
        out << "plan " << p.seed_a << ' ' << p.seed_b << " kernel=";
        for (size_t i = 0; i < p.kernel.size(); ++i) {
            if (i) out << ',';
            out << p.kernel[i];
        }
        out << " shell=";
        for (size_t i = 0; i < p.shell.size(); ++i) {
            if (i) out << ',';
            out << p.shell[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace csm
