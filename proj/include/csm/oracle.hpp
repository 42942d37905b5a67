#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csm/bigraph.hpp"
#include "csm/graph.hpp"

namespace csm {

// Ground truth for differential testing. Everything here is deliberately
// plain and exponential-within-bounds, and shares no matching logic with the
// index or the search engine.

struct Snapshot {
    // Identifies the (query, data-vertex-labels) pair the matches belong to;
    // diffing snapshots with different fingerprints is a caller bug.
    uint64_t fingerprint = 0;
    // Each match maps query vertex i to matches[k][i]; sorted, duplicate-free.
    std::vector<std::vector<VertexId>> matches;
};

// All injective label- and edge-preserving assignments by plain backtracking
// in query-vertex id order. Throws ValidationError beyond the desk-scale
// bounds |V_Q| <= 8, |V_G| <= 64.
Snapshot enumerate_static(const QueryGraph& q, const LabeledGraph& g);

// (added, removed) = (after minus before, before minus after), sorted.
std::pair<std::vector<std::vector<VertexId>>, std::vector<std::vector<VertexId>>>
diff_snapshots(const Snapshot& before, const Snapshot& after);

// True iff some injection of left slots into right slots uses only bigraph
// edges, checked by enumerating all injections. Throws ValidationError when
// the left side exceeds 7 slots.
bool exhaustive_injective(const Bigraph& b);

}  // namespace csm
