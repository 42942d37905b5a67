#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "csm/calig.hpp"
#include "csm/graph.hpp"
#include "csm/kernel_shell.hpp"

namespace csm {

enum class SearchMode : uint8_t { Count, Enumerate };

struct SearchConfig {
    SearchMode mode = SearchMode::Enumerate;
    // Enumeration cap; when hit, the MatchSet is flagged truncated and the
    // search stops. Counting mode ignores it.
    uint64_t max_matches = UINT64_MAX;
    bool prune_ahead = true;
    // false: the plan's kernel order is extended by the shell and everything
    // is backtracked over (ablation; results identical, more backtracking).
    bool use_kernel_shell = true;
    std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
};

// The incremental matches of one update: every complete injective
// label/edge-preserving assignment that contains the updated edge.
struct MatchSet {
    UpdateKind sign = UpdateKind::Add;  // Add -> '+', Delete -> '-'
    // Canonical assignment vectors (data vertex per query vertex id), sorted,
    // duplicate-free. Empty in counting mode.
    std::vector<std::vector<VertexId>> matches;
    uint64_t total_count = 0;
    bool truncated = false;
    bool timed_out = false;
};

struct SearchCounters {
    // One increment per candidate assignment to a kernel vertex.
    uint64_t backtrackings = 0;
    uint64_t matches_emitted = 0;
    bool timed_out = false;
};

// Partial assignment: data vertex per query vertex (kNoVertex = unassigned)
// plus the used-vertex mask over the data graph.
struct PartialMatch {
    std::vector<VertexId> assign;
    std::vector<char> used;

    explicit PartialMatch(size_t nq, size_t ng) : assign(nq, kNoVertex), used(ng, 0) {}
    void bind(VertexId u, VertexId v) {
        assign[u] = v;
        used[v] = 1;
    }
    void unbind(VertexId u) {
        used[assign[u]] = 0;
        assign[u] = kNoVertex;
    }
};

// Candidates for u given the partial match: intersection over u's assigned
// neighbors u_i of the live data neighborhoods of m[u_i], restricted to
// lighted (u, v') pairs and unused vertices; ascending. At least one neighbor
// of u must be assigned.
std::vector<VertexId> generate_candidates(VertexId u, const PartialMatch& m,
                                          const CaligIndex& idx);

// False (prune) iff some shell vertex whose query neighbors are all assigned
// has an empty candidate set.
bool prune_ahead_ok(const PartialMatch& m, const KernelShellPlan& plan, const CaligIndex& idx);

// Searches from both orientation seedings of every label-compatible query
// edge onto the update edge (v1, v2), with both seed pairs lighted. For an
// addition the index/graph must already reflect the edge; for a deletion they
// must not yet.
MatchSet find_incremental_matches(const CaligIndex& idx, UpdateKind kind, VertexId v1,
                                  VertexId v2, const std::vector<KernelShellPlan>& plans,
                                  const SearchConfig& cfg, SearchCounters& counters);

}  // namespace csm
