#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace csm {

// Bipartite graph between a fixed left side (query-vertex slots) and a fixed
// right side (data-vertex slots). adj[l] lists right indices, each ascending.
struct Bigraph {
    uint32_t left_count = 0;
    uint32_t right_count = 0;
    std::vector<std::vector<uint32_t>> adj;

    explicit Bigraph(uint32_t left = 0, uint32_t right = 0)
        : left_count(left), right_count(right), adj(left) {}
};

// Why an injective-matching check cheaper than full matching often suffices:
//  case 1: some left vertex has no incident edge -> no saturating matching.
//  case 2: fewer distinct covered right vertices than left vertices -> none.
// Both are one pass over the edges; the full augmenting-path search runs only
// when neither triggers.
bool case1_rejects(const Bigraph& b);
bool case2_rejects(const Bigraph& b);

// True iff a matching saturating the left side exists. Runs case 1, case 2,
// then greedy-seeded Kuhn augmentation.
bool has_injective_matching(const Bigraph& b);

// Same decision, but returns the matching itself: right index per left slot.
std::optional<std::vector<uint32_t>> find_injective_matching(const Bigraph& b);

// The weakened check used by the state-check ablation: case 1 only.
bool every_left_slot_covered(const Bigraph& b);

constexpr uint32_t kUnmatchedSlot = UINT32_MAX;

// Maximum matching, not necessarily left-saturating: right index per left
// slot, kUnmatchedSlot where free.
std::vector<uint32_t> maximum_matching(const Bigraph& b);

// Minimum vertex cover via König's construction on a maximum matching,
// returned as (left-side flags, right-side flags).
std::pair<std::vector<char>, std::vector<char>> minimum_vertex_cover(const Bigraph& b);

}  // namespace csm
