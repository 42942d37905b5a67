#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "csm/bigraph.hpp"
#include "csm/graph.hpp"

namespace csm::test {

// All randomness goes through mt19937 with explicit seeds and modulo draws so
// generated cases are identical across platforms and runs.
inline uint32_t draw(std::mt19937& rng, uint32_t bound) { return rng() % bound; }

inline std::string fixture_path(const std::string& name) {
    return std::string(CSM_FIXTURE_DIR) + "/" + name;
}

inline LabeledGraph random_connected_graph(std::mt19937& rng, uint32_t n, uint32_t extra_edges,
                                           uint32_t label_count) {
    std::vector<Label> labels(n);
    for (auto& l : labels) l = draw(rng, label_count);
    LabeledGraph g(std::move(labels));
    for (uint32_t i = 1; i < n; ++i) g.add_edge(i, draw(rng, i));
    for (uint32_t k = 0; k < extra_edges; ++k) {
        VertexId a = draw(rng, n);
        VertexId b = draw(rng, n);
        if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
    }
    return g;
}

// Sides in [1, max_side] x [0, max_side], per-instance edge density.
inline Bigraph random_bigraph(std::mt19937& rng, uint32_t max_side) {
    uint32_t l = 1 + draw(rng, max_side);
    uint32_t r = draw(rng, max_side + 1);
    Bigraph b(l, r);
    if (r == 0) return b;
    uint32_t density = 15 + draw(rng, 70);
    for (uint32_t i = 0; i < l; ++i)
        for (uint32_t j = 0; j < r; ++j)
            if (draw(rng, 100) < density) b.adj[i].push_back(j);
    return b;
}

// Possibly disconnected; edge_attempts pairs are sampled, duplicates dropped.
inline LabeledGraph random_graph(std::mt19937& rng, uint32_t n, uint32_t edge_attempts,
                                 uint32_t label_count) {
    std::vector<Label> labels(n);
    for (auto& l : labels) l = draw(rng, label_count);
    LabeledGraph g(std::move(labels));
    for (uint32_t k = 0; k < edge_attempts; ++k) {
        VertexId a = draw(rng, n);
        VertexId b = draw(rng, n);
        if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
    }
    return g;
}

// Valid update stream against a scratch copy of g; deletes are drawn twice as
// often as adds.
inline std::vector<UpdateOp> random_ops(std::mt19937& rng, LabeledGraph g, size_t count) {
    std::vector<UpdateOp> ops;
    ops.reserve(count);
    auto delete_random_edge = [&]() {
        auto edges = g.edges();
        if (edges.empty()) return false;
        auto [a, b] = edges[draw(rng, static_cast<uint32_t>(edges.size()))];
        ops.push_back({UpdateKind::Delete, a, b});
        g.remove_edge(a, b);
        return true;
    };
    auto add_random_edge = [&]() {
        uint32_t n = static_cast<uint32_t>(g.vertex_count());
        for (int t = 0; t < 400; ++t) {
            VertexId a = draw(rng, n);
            VertexId b = draw(rng, n);
            if (a == b || g.has_edge(a, b)) continue;
            ops.push_back({UpdateKind::Add, a, b});
            g.add_edge(a, b);
            return true;
        }
        return false;
    };
    while (ops.size() < count) {
        bool want_delete = draw(rng, 3) != 0;
        if (want_delete ? delete_random_edge() || add_random_edge()
                        : add_random_edge() || delete_random_edge())
            continue;
        break;  // both exhausted; unreachable at test scales
    }
    return ops;
}

struct SessionCase {
    QueryGraph query;
    LabeledGraph data;
    std::vector<UpdateOp> ops;
};

// Desk-scale random session: query 3-6 vertices, data 10-40 vertices, at most
// 4 labels, valid updates with a 2:1 delete:add draw ratio.
inline SessionCase random_session(uint64_t seed, size_t op_count = 50) {
    std::mt19937 rng(static_cast<uint32_t>(seed));
    uint32_t label_count = 1 + draw(rng, 4);
    uint32_t nq = 3 + draw(rng, 4);
    LabeledGraph qg = random_connected_graph(rng, nq, draw(rng, nq), label_count);
    uint32_t ng = 10 + draw(rng, 31);
    LabeledGraph g = random_graph(rng, ng, ng + draw(rng, 3 * ng), label_count);
    std::vector<UpdateOp> ops = random_ops(rng, g, op_count);
    return SessionCase{QueryGraph(std::move(qg)), std::move(g), std::move(ops)};
}

// Denser variant biased toward producing matches (few labels, small query).
inline SessionCase dense_session(uint64_t seed, size_t op_count = 50) {
    std::mt19937 rng(static_cast<uint32_t>(seed) * 2654435761u + 1);
    uint32_t label_count = 1 + draw(rng, 2);
    uint32_t nq = 3 + draw(rng, 3);
    LabeledGraph qg = random_connected_graph(rng, nq, draw(rng, 2), label_count);
    uint32_t ng = 10 + draw(rng, 11);
    LabeledGraph g = random_graph(rng, ng, 3 * ng + draw(rng, 2 * ng), label_count);
    std::vector<UpdateOp> ops = random_ops(rng, g, op_count);
    return SessionCase{QueryGraph(std::move(qg)), std::move(g), std::move(ops)};
}

}  // namespace csm::test
