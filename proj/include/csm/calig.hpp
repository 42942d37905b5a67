#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csm/bigraph.hpp"
#include "csm/graph.hpp"

namespace csm {

// Which test decides whether a node's candidate bigraph keeps it lighted.
enum class StateCheck : uint8_t {
    Full,              // case 1, case 2, then augmenting-path matching
    NeighborhoodOnly,  // case 1 only (ablation: weaker check, states stay sound from above)
};

struct CaligConfig {
    StateCheck state_check = StateCheck::Full;
    // false freezes every node at ON after construction and turns the two
    // update entry points into no-ops (ablation; the search layer re-verifies
    // adjacency against the live data graph, so results stay correct).
    bool maintain_states = true;
    // Caches the last successful injective matching per node and skips the
    // recomputation when no removed arc touched a matched pair.
    bool cache_matchings = false;
};

struct StateFlip {
    uint32_t node;
    bool was_on;
    bool now_on;
};

using ChangeLog = std::vector<StateFlip>;

// Candidate-lighting index: one node per label-equal (query vertex, data
// vertex) pair, directed arcs between nodes of adjacent pairs, and a boolean
// lighting state per node. A node stays ON while the bipartite graph between
// the query vertex's neighborhood and the arcs' sources admits a matching
// that saturates the neighborhood; state changes propagate through arcs.
class CaligIndex {
  public:
    static constexpr uint32_t kNoNode = UINT32_MAX;

    // q and g must outlive the index.
    CaligIndex(const QueryGraph& q, const LabeledGraph& g, CaligConfig config = {});

    size_t node_count() const { return nodes_.size(); }
    uint32_t node_id(VertexId u, VertexId v) const { return node_of_[u][v]; }
    VertexId query_vertex(uint32_t id) const { return nodes_[id].u; }
    VertexId data_vertex(uint32_t id) const { return nodes_[id].v; }
    bool is_on(uint32_t id) const { return nodes_[id].on; }
    // False when no (u,v) node exists (label mismatch).
    bool pair_on(VertexId u, VertexId v) const;

    const std::vector<uint32_t>& in_arcs(uint32_t id) const { return nodes_[id].in; }
    const std::vector<uint32_t>& out_arcs(uint32_t id) const { return nodes_[id].out; }
    bool has_arc(uint32_t from, uint32_t to) const;

    // Data vertices v with an ON (u,v) node, ascending.
    std::vector<VertexId> candidates(VertexId u) const;

    // The node's current candidate bigraph: left = sorted query neighborhood
    // of u, right = distinct source data vertices of in-arcs.
    Bigraph bigraph_of(uint32_t id) const;

    // Flips performed by the construction-time initialization sweep.
    const ChangeLog& initialization_log() const { return init_log_; }

    // Call after the edge has been added to / removed from the data graph.
    // Returns the state flips in order.
    ChangeLog update_for_addition(VertexId v1, VertexId v2);
    ChangeLog update_for_deletion(VertexId v1, VertexId v2);

    // Turns the seed OFF if needed and cascades: each popped dead node strips
    // its arcs toward still-ON out-neighbors and re-checks them.
    void off_propagate(uint32_t seed, ChangeLog& log);

    // Depth-first from an ON seed: adds the reciprocal arc toward every
    // in-neighbor, turns satisfiable OFF in-neighbors ON and recurses into
    // them, and collects the ones that stay OFF (the stop nodes).
    std::vector<uint32_t> on_propagate(uint32_t seed, ChangeLog& log);

    // Stop nodes collected by the most recent update_for_addition.
    const std::vector<uint32_t>& last_stop_nodes() const { return last_stops_; }

    // "mp <u> <v> <ON|OFF>" lines then "arc <u1> <v1> <u2> <v2>" lines, both
    // sorted; used for diffing and replay comparison.
    std::string dump() const;

    // (u, v, on) per node in (u, v) order; rebuild-differential tests compare
    // this against a freshly constructed index.
    std::vector<std::tuple<VertexId, VertexId, bool>> state_table() const;

    const QueryGraph& query() const { return *q_; }
    const LabeledGraph& data() const { return *g_; }
    const CaligConfig& config() const { return config_; }

  private:
    struct Node {
        VertexId u;
        VertexId v;
        bool on = true;
        std::vector<uint32_t> in;
        std::vector<uint32_t> out;
        // +cache mode: matched data vertex per left slot of the bigraph.
        std::vector<VertexId> cached_right;
        bool cache_valid = false;
    };

    bool lighting_ok(uint32_t id);
    void build_bigraph(uint32_t id, Bigraph& b, std::vector<VertexId>& rights) const;
    void refresh_in_arcs(uint32_t id);
    void add_arc(uint32_t from, uint32_t to);
    void remove_arc_if_present(uint32_t from, uint32_t to);
    void set_state(uint32_t id, bool on, ChangeLog& log);
    void initialize(ChangeLog& log);

    const QueryGraph* q_;
    const LabeledGraph* g_;
    CaligConfig config_;
    std::vector<Node> nodes_;
    std::vector<std::vector<uint32_t>> node_of_;     // [u][v] -> node id
    std::vector<std::vector<uint32_t>> nodes_of_u_;  // per query vertex, v-ascending
    ChangeLog init_log_;
    std::vector<uint32_t> last_stops_;
};

}  // namespace csm
