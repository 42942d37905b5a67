#pragma once

#include <string>
#include <vector>

#include "csm/graph.hpp"

namespace csm {

// Per-query-edge search plan: the kernel is a connected vertex cover of the
// query containing both seed endpoints, in matching order (seed first, then
// breadth-first); the shell is the complement, an independent set whose
// candidates are joined in without backtracking.
struct KernelShellPlan {
    VertexId seed_a = 0;  // seed_a < seed_b; (seed_a, seed_b) is a query edge
    VertexId seed_b = 0;
    std::vector<VertexId> kernel;  // kernel[0] == seed_a, kernel[1] == seed_b
    std::vector<VertexId> shell;   // ascending
};

// Greedy construction: cover the seed endpoints' edges, extract vertex-disjoint
// odd cycles from the remainder (depth-first parity labeling, lowest-id start,
// restart after each extraction), cover the now-bipartite rest optimally via
// maximum matching + König, connect the pieces with shortest paths over the
// query, and order breadth-first from the seed (ties: smaller degree, then
// lower id). Always returns a valid plan.
KernelShellPlan greedy_cks(const QueryGraph& q, VertexId uk, VertexId ul);

// Exhaustive minimum: smallest connected vertex cover containing the seed
// endpoints, ties broken by lexicographically smallest vertex set. Throws
// ValidationError when the query has more than 16 vertices.
KernelShellPlan exact_mcks(const QueryGraph& q, VertexId uk, VertexId ul);

// One greedy plan per query edge, in edge order.
std::vector<KernelShellPlan> precompute_all_plans(const QueryGraph& q);

const KernelShellPlan& plan_for_edge(const std::vector<KernelShellPlan>& plans, VertexId a,
                                     VertexId b);

// Checks every plan invariant: partition, seed placement, vertex cover, shell
// independence, induced-connected kernel, connected prefix order.
bool validate_plan(const QueryGraph& q, const KernelShellPlan& p);

// The ablation that disables the kernel/shell split: same kernel order,
// shell vertices appended (ascending) and matched with full backtracking.
KernelShellPlan extend_kernel_with_shell(const KernelShellPlan& p);

// "plan <uk> <ul> kernel=<comma ids> shell=<comma ids>" per plan.
std::string serialize_plans(const std::vector<KernelShellPlan>& plans);

}  // namespace csm
