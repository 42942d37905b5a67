#include <algorithm>
#include <set>
#include <tuple>

#include "doctest.h"

#include "csm/calig.hpp"
#include "csm/graph.hpp"
#include "csm/oracle.hpp"
#include "test_support.hpp"

using namespace csm;

namespace {

// The running example: triangle-with-pendant query on a 7-vertex data graph.
struct Fixture {
    LabelInterner interner;
    QueryGraph q;
    LabeledGraph g;

    Fixture()
        : q(load_graph_file(csm::test::fixture_path("query.graph"), interner)),
          g(load_graph_file(csm::test::fixture_path("data.graph"), interner)) {}
};

std::vector<std::pair<VertexId, VertexId>> on_pairs(const CaligIndex& idx) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (uint32_t id = 0; id < idx.node_count(); ++id)
        if (idx.is_on(id)) out.emplace_back(idx.query_vertex(id), idx.data_vertex(id));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<VertexId, VertexId>> flip_pairs(const CaligIndex& idx, const ChangeLog& log) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const StateFlip& f : log)
        out.emplace_back(idx.query_vertex(f.node), idx.data_vertex(f.node));
    return out;
}

using Pairs = std::vector<std::pair<VertexId, VertexId>>;

}  // namespace

TEST_CASE("index construction creates one node per label-equal pair") {
    Fixture f;
    CaligIndex idx(f.q, f.g);
    CHECK(idx.node_count() == 10);
    CHECK(idx.node_id(0, 3) != CaligIndex::kNoNode);  // label A on both sides
    CHECK(idx.node_id(0, 0) == CaligIndex::kNoNode);  // A vs B
    CHECK(idx.node_id(1, 3) == CaligIndex::kNoNode);  // C vs A
    CHECK(idx.query_vertex(idx.node_id(2, 1)) == 2);
    CHECK(idx.data_vertex(idx.node_id(2, 1)) == 1);

    // state_table enumerates nodes in (query vertex, data vertex) order
    auto table = idx.state_table();
    REQUIRE(table.size() == 10);
    CHECK(std::is_sorted(table.begin(), table.end(), [](const auto& a, const auto& b) {
        return std::make_pair(std::get<0>(a), std::get<1>(a)) <
               std::make_pair(std::get<0>(b), std::get<1>(b));
    }));
}

TEST_CASE("initialization converges to the expected lighted set, in order") {
    Fixture f;
    CaligIndex idx(f.q, f.g);

    CHECK(on_pairs(idx) == Pairs{{0, 3}, {1, 4}, {2, 1}, {3, 6}});

    // The construction sweep turns exactly these six nodes off, in this order.
    const ChangeLog& log = idx.initialization_log();
    CHECK(flip_pairs(idx, log) == Pairs{{1, 5}, {2, 2}, {1, 6}, {3, 4}, {3, 5}, {2, 0}});
    for (const StateFlip& flip : log) {
        CHECK(flip.was_on);
        CHECK(!flip.now_on);
    }

    CHECK(idx.candidates(0) == std::vector<VertexId>{3});
    CHECK(idx.candidates(1) == std::vector<VertexId>{4});
    CHECK(idx.candidates(2) == std::vector<VertexId>{1});
    CHECK(idx.candidates(3) == std::vector<VertexId>{6});

    CHECK(idx.pair_on(0, 3));
    CHECK(!idx.pair_on(1, 5));
    CHECK(!idx.pair_on(0, 0));  // no such node at all
}

TEST_CASE("node bigraphs pair the query neighborhood with in-arc sources") {
    Fixture f;
    CaligIndex idx(f.q, f.g);

    // u0's neighborhood {u1, u2} against in-arcs of (u0, v3)
    uint32_t id = idx.node_id(0, 3);
    Bigraph b = idx.bigraph_of(id);
    CHECK(b.left_count == 2);
    CHECK(b.right_count == 2);  // arcs arrive from (1,v4) and (2,v1)
    CHECK(has_injective_matching(b));

    // dead nodes keep their in-arcs from dead sources; (1,v5) still sees v6
    uint32_t dead = idx.node_id(1, 5);
    CHECK(!idx.is_on(dead));
    Bigraph bd = idx.bigraph_of(dead);
    CHECK(bd.left_count == 3);  // u1's neighborhood {u0, u2, u3}
    CHECK(!has_injective_matching(bd));
}

TEST_CASE("index dump is the sorted golden text for the running example") {
    Fixture f;
    CaligIndex idx(f.q, f.g);
    CHECK(idx.dump() ==
          "mp 0 3 ON\n"
          "mp 1 4 ON\n"
          "mp 1 5 OFF\n"
          "mp 1 6 OFF\n"
          "mp 2 0 OFF\n"
          "mp 2 1 ON\n"
          "mp 2 2 OFF\n"
          "mp 3 4 OFF\n"
          "mp 3 5 OFF\n"
          "mp 3 6 ON\n"
          "arc 0 3 1 4\n"
          "arc 0 3 1 6\n"
          "arc 0 3 2 0\n"
          "arc 0 3 2 1\n"
          "arc 0 3 2 2\n"
          "arc 1 4 0 3\n"
          "arc 1 4 2 1\n"
          "arc 1 4 3 6\n"
          "arc 2 1 0 3\n"
          "arc 2 1 1 4\n"
          "arc 2 2 1 5\n"
          "arc 3 4 1 6\n"
          "arc 3 5 1 6\n"
          "arc 3 6 1 4\n"
          "arc 3 6 1 5\n");
}

TEST_CASE("deleting the load-bearing edge turns every node off") {
    Fixture f;
    CaligIndex idx(f.q, f.g);

    f.g.remove_edge(4, 6);
    ChangeLog log = idx.update_for_deletion(4, 6);

    for (uint32_t id = 0; id < idx.node_count(); ++id) CHECK(!idx.is_on(id));
    CHECK(log.size() == 4);  // exactly the four lighted nodes went off
    for (const StateFlip& flip : log) CHECK(!flip.now_on);
    CHECK(idx.candidates(0).empty());

    // incremental result equals a fresh build on the updated graph
    CaligIndex rebuilt(f.q, f.g);
    CHECK(idx.state_table() == rebuilt.state_table());
}

TEST_CASE("adding an edge relights through propagation and stops cleanly") {
    Fixture f;
    CaligIndex idx(f.q, f.g);
    f.g.remove_edge(4, 6);
    idx.update_for_deletion(4, 6);

    f.g.add_edge(2, 6);
    ChangeLog log = idx.update_for_addition(2, 6);

    // Relighting cascade, in propagation order. (2, v1) lights optimistically
    // off a dead in-neighbor's vertex and the stop-node correction takes it
    // back down, so the log ends with an on/off round trip for it.
    CHECK(flip_pairs(idx, log) ==
          Pairs{{2, 2}, {1, 6}, {3, 5}, {0, 3}, {2, 1}, {2, 1}});
    REQUIRE(log.size() == 6);
    for (size_t i = 0; i < 5; ++i) CHECK(log[i].now_on);
    CHECK(!log[5].now_on);

    // the nodes the propagation could not revive seed the corrective pass
    Pairs stop_pairs;
    for (uint32_t s : idx.last_stop_nodes()) {
        stop_pairs.emplace_back(idx.query_vertex(s), idx.data_vertex(s));
        CHECK(!idx.is_on(s));
    }
    std::sort(stop_pairs.begin(), stop_pairs.end());
    CHECK(stop_pairs == Pairs{{1, 4}, {1, 5}, {2, 0}});

    CHECK(on_pairs(idx) == Pairs{{0, 3}, {1, 6}, {2, 2}, {3, 5}});

    CaligIndex rebuilt(f.q, f.g);
    CHECK(idx.state_table() == rebuilt.state_table());
}

TEST_CASE("re-adding the deleted edge restores the original lighted set") {
    Fixture f;
    CaligIndex idx(f.q, f.g);
    auto before = idx.state_table();

    f.g.remove_edge(4, 6);
    idx.update_for_deletion(4, 6);
    f.g.add_edge(4, 6);
    idx.update_for_addition(4, 6);

    CHECK(idx.state_table() == before);
}

TEST_CASE("lighting covers every vertex of every true match") {
    for (uint64_t seed = 100; seed < 130; ++seed) {
        auto sc = csm::test::random_session(seed, 0);
        CaligIndex idx(sc.query, sc.data);
        Snapshot snap = enumerate_static(sc.query, sc.data);
        for (const auto& match : snap.matches)
            for (VertexId u = 0; u < match.size(); ++u) {
                CAPTURE(seed);
                CHECK(idx.pair_on(u, match[u]));
            }
    }
}

TEST_CASE("incremental maintenance equals rebuild after every update") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto sc = csm::test::random_session(seed, 25);
        CaligIndex idx(sc.query, sc.data);
        for (size_t i = 0; i < sc.ops.size(); ++i) {
            const UpdateOp& op = sc.ops[i];
            apply_update(sc.data, op);
            if (op.kind == UpdateKind::Add)
                idx.update_for_addition(op.src, op.dst);
            else
                idx.update_for_deletion(op.src, op.dst);
            CaligIndex rebuilt(sc.query, sc.data);
            CAPTURE(seed);
            CAPTURE(i);
            REQUIRE(idx.state_table() == rebuilt.state_table());
        }
    }
}

TEST_CASE("maintenance matches rebuild under the weakened state check too") {
    CaligConfig weak;
    weak.state_check = StateCheck::NeighborhoodOnly;
    for (uint64_t seed = 40; seed < 48; ++seed) {
        auto sc = csm::test::random_session(seed, 20);
        CaligIndex idx(sc.query, sc.data, weak);
        CaligIndex full(sc.query, sc.data);

        // the weaker check keeps a superset lighted
        for (uint32_t id = 0; id < full.node_count(); ++id)
            if (full.is_on(id)) CHECK(idx.is_on(id));

        for (const UpdateOp& op : sc.ops) {
            apply_update(sc.data, op);
            if (op.kind == UpdateKind::Add)
                idx.update_for_addition(op.src, op.dst);
            else
                idx.update_for_deletion(op.src, op.dst);
            CaligIndex rebuilt(sc.query, sc.data, weak);
            CAPTURE(seed);
            REQUIRE(idx.state_table() == rebuilt.state_table());
        }
    }
}

TEST_CASE("matching cache changes no states, only work") {
    CaligConfig cached;
    cached.cache_matchings = true;
    for (uint64_t seed = 60; seed < 70; ++seed) {
        auto sc = csm::test::random_session(seed, 25);
        CaligIndex idx(sc.query, sc.data, cached);
        CaligIndex plain(sc.query, sc.data);
        CHECK(idx.state_table() == plain.state_table());
        for (const UpdateOp& op : sc.ops) {
            apply_update(sc.data, op);
            if (op.kind == UpdateKind::Add) {
                idx.update_for_addition(op.src, op.dst);
                plain.update_for_addition(op.src, op.dst);
            } else {
                idx.update_for_deletion(op.src, op.dst);
                plain.update_for_deletion(op.src, op.dst);
            }
            CAPTURE(seed);
            REQUIRE(idx.state_table() == plain.state_table());
        }
    }
}

TEST_CASE("disabling state maintenance freezes every node lighted") {
    Fixture f;
    CaligConfig frozen;
    frozen.maintain_states = false;
    CaligIndex idx(f.q, f.g, frozen);

    CHECK(idx.initialization_log().empty());
    for (uint32_t id = 0; id < idx.node_count(); ++id) CHECK(idx.is_on(id));

    f.g.remove_edge(4, 6);
    CHECK(idx.update_for_deletion(4, 6).empty());
    f.g.add_edge(2, 6);
    CHECK(idx.update_for_addition(2, 6).empty());
    for (uint32_t id = 0; id < idx.node_count(); ++id) CHECK(idx.is_on(id));
    CHECK(idx.candidates(1) == std::vector<VertexId>{4, 5, 6});
}

TEST_CASE("arc accessors are mutually consistent") {
    Fixture f;
    CaligIndex idx(f.q, f.g);
    uint32_t u03 = idx.node_id(0, 3);
    uint32_t u21 = idx.node_id(2, 1);
    CHECK(idx.has_arc(u21, u03));
    CHECK(idx.has_arc(u03, u21));
    uint32_t u15 = idx.node_id(1, 5);
    CHECK(idx.has_arc(idx.node_id(2, 2), u15));
    CHECK(!idx.has_arc(u15, idx.node_id(2, 2)));  // stripped when (1,v5) died

    for (uint32_t id = 0; id < idx.node_count(); ++id) {
        for (uint32_t w : idx.out_arcs(id)) {
            const auto& in = idx.in_arcs(w);
            CHECK(std::count(in.begin(), in.end(), id) == 1);
        }
    }
}
