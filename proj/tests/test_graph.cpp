#include <algorithm>

#include "doctest.h"

#include "csm/graph.hpp"
#include "test_support.hpp"

using namespace csm;

namespace {

LabeledGraph parse(const std::string& text) {
    LabelInterner interner;
    return load_graph(text, interner);
}

}  // namespace

TEST_CASE("graph text parses and round-trips through serialize") {
    std::string text =
        "# comment\n"
        "t 3 2\n"
        "v 0 10\n"
        "\n"
        "v 1 20\n"
        "v 2 10\n"
        "e 0 1\n"
        "# another comment\n"
        "e 1 2\n";
    LabeledGraph g = parse(text);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.label(0) == g.label(2));
    CHECK(g.label(0) != g.label(1));
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));

    LabelInterner fresh;
    LabeledGraph again = load_graph(serialize_graph(g), fresh);
    CHECK(again.vertex_count() == g.vertex_count());
    CHECK(again.edges() == g.edges());
    for (VertexId v = 0; v < 3; ++v) CHECK(again.label(v) == g.label(v));
}

TEST_CASE("labels intern densely in order of first appearance") {
    LabelInterner interner;
    CHECK(interner.intern(99) == 0);
    CHECK(interner.intern(7) == 1);
    CHECK(interner.intern(99) == 0);
    CHECK(interner.intern(0) == 2);
}

TEST_CASE("graph parser rejects malformed input") {
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("# only comments\n"), ParseError);
    CHECK_THROWS_AS(parse("x 1 0\n"), ParseError);                       // bad header tag
    CHECK_THROWS_AS(parse("t 2\n"), ParseError);                         // missing edge count
    CHECK_THROWS_AS(parse("t 2 0 extra\n"), ParseError);                 // trailing token
    CHECK_THROWS_AS(parse("t 2 0\nv 0 1\n"), ParseError);                // missing vertex line
    CHECK_THROWS_AS(parse("t 2 0\nv 0 1\nv 2 1\n"), ParseError);         // id out of order
    CHECK_THROWS_AS(parse("t 2 0\nv 0 1\ne 0 1\n"), ParseError);         // edge line where vertex expected
    CHECK_THROWS_AS(parse("t 2 1\nv 0 1\nv 1 1\n"), ParseError);         // missing edge line
    CHECK_THROWS_AS(parse("t 2 1\nv 0 1\nv 1 1\ne 0 2\n"), ParseError);  // endpoint range
    CHECK_THROWS_AS(parse("t 2 1\nv 0 1\nv 1 1\ne 0 0\n"), ParseError);  // self-loop
    CHECK_THROWS_AS(parse("t 2 2\nv 0 1\nv 1 1\ne 0 1\ne 1 0\n"), ParseError);  // duplicate
    CHECK_THROWS_AS(parse("t 2 1\nv 0 1\nv 1 1\ne 0 1\ne 1 0\n"), ParseError);  // trailing line
    CHECK_THROWS_AS(parse("t 2 1\nv 0 1\nv 1 1\ne 0 -1\n"), ParseError);        // negative
}

TEST_CASE("edge mutations keep adjacency sorted and counters exact") {
    LabeledGraph g(std::vector<Label>{0, 0, 0, 0});
    g.add_edge(2, 0);
    g.add_edge(2, 3);
    g.add_edge(2, 1);
    CHECK(g.neighbors(2) == std::vector<VertexId>{0, 1, 3});
    CHECK(g.degree(2) == 3);
    CHECK(g.max_degree() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.edges() == std::vector<std::pair<VertexId, VertexId>>{{0, 2}, {1, 2}, {2, 3}});

    g.remove_edge(3, 2);
    CHECK(g.neighbors(2) == std::vector<VertexId>{0, 1});
    CHECK(g.max_degree() == 2);
    CHECK(g.edge_count() == 2);

    CHECK_THROWS_AS(g.add_edge(0, 2), IdempotencyError);
    CHECK_THROWS_AS(g.remove_edge(2, 3), IdempotencyError);
    CHECK_THROWS_AS(g.add_edge(1, 1), ValidationError);
    CHECK_THROWS_AS(g.add_edge(0, 9), ValidationError);
    CHECK(g.edge_count() == 2);  // failed mutations left the graph unchanged
}

TEST_CASE("connectivity") {
    LabeledGraph g(std::vector<Label>{0, 0, 0});
    CHECK(!g.is_connected());
    g.add_edge(0, 1);
    CHECK(!g.is_connected());
    g.add_edge(1, 2);
    CHECK(g.is_connected());
    g.remove_edge(0, 1);
    CHECK(!g.is_connected());
    CHECK(LabeledGraph(std::vector<Label>{}).is_connected());
    CHECK(LabeledGraph(std::vector<Label>{5}).is_connected());
}

TEST_CASE("query graph validation") {
    LabeledGraph ok(std::vector<Label>{0, 1});
    ok.add_edge(0, 1);
    CHECK_NOTHROW(QueryGraph{LabeledGraph(ok)});

    CHECK_THROWS_AS(QueryGraph{LabeledGraph(std::vector<Label>{0})}, ValidationError);

    LabeledGraph disconnected(std::vector<Label>{0, 1, 2});
    disconnected.add_edge(0, 1);
    CHECK_THROWS_AS(QueryGraph{std::move(disconnected)}, ValidationError);
}

TEST_CASE("update stream parses ops and validates endpoints") {
    auto ops = load_update_stream("# ops\n+ 0 1\n- 2 1\n\n+ 3 0\n", 4);
    REQUIRE(ops.size() == 3);
    CHECK(ops[0] == UpdateOp{UpdateKind::Add, 0, 1});
    CHECK(ops[1] == UpdateOp{UpdateKind::Delete, 2, 1});
    CHECK(ops[2] == UpdateOp{UpdateKind::Add, 3, 0});
    CHECK(load_update_stream("", 4).empty());

    CHECK_THROWS_AS(load_update_stream("* 0 1\n", 4), ParseError);
    CHECK_THROWS_AS(load_update_stream("+ 0\n", 4), ParseError);
    CHECK_THROWS_AS(load_update_stream("+ 0 4\n", 4), ParseError);
    CHECK_THROWS_AS(load_update_stream("+ 1 1\n", 4), ParseError);
    CHECK_THROWS_AS(load_update_stream("+ 0 1 9\n", 4), ParseError);
}

TEST_CASE("apply_update mirrors the op kind") {
    LabeledGraph g(std::vector<Label>{0, 0});
    apply_update(g, {UpdateKind::Add, 0, 1});
    CHECK(g.has_edge(0, 1));
    CHECK_THROWS_AS(apply_update(g, {UpdateKind::Add, 0, 1}), IdempotencyError);
    apply_update(g, {UpdateKind::Delete, 1, 0});
    CHECK(!g.has_edge(0, 1));
    CHECK_THROWS_AS(apply_update(g, {UpdateKind::Delete, 0, 1}), IdempotencyError);
}

TEST_CASE("file loaders prefix errors with the path") {
    LabelInterner interner;
    CHECK_THROWS_WITH_AS(load_graph_file("/nonexistent/g.graph", interner),
                         doctest::Contains("/nonexistent/g.graph"), ParseError);
    CHECK_THROWS_WITH_AS(load_update_stream_file("/nonexistent/s.stream", 4),
                         doctest::Contains("/nonexistent/s.stream"), ParseError);
}

TEST_CASE("fixture files load with shared label interning") {
    LabelInterner interner;
    LabeledGraph q = load_graph_file(csm::test::fixture_path("query.graph"), interner);
    LabeledGraph g = load_graph_file(csm::test::fixture_path("data.graph"), interner);
    CHECK(q.vertex_count() == 4);
    CHECK(q.edge_count() == 4);
    CHECK(g.vertex_count() == 7);
    CHECK(g.edge_count() == 9);
    CHECK(q.label(0) == g.label(3));  // same raw label maps to the same id
    CHECK(q.label(1) == g.label(4));
    CHECK(q.label(2) == g.label(0));

    auto ops = load_update_stream_file(csm::test::fixture_path("stream.stream"), g.vertex_count());
    REQUIRE(ops.size() == 2);
    CHECK(ops[0] == UpdateOp{UpdateKind::Delete, 4, 6});
    CHECK(ops[1] == UpdateOp{UpdateKind::Add, 2, 6});
}

TEST_CASE("random graph generators satisfy their contracts") {
    std::mt19937 rng(42);
    for (int i = 0; i < 30; ++i) {
        LabeledGraph g = csm::test::random_connected_graph(rng, 2 + i % 9, i % 7, 1 + i % 4);
        CHECK(g.is_connected());
        for (auto [a, b] : g.edges()) CHECK(a < b);
    }
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto sc = csm::test::random_session(seed, 30);
        LabeledGraph replay = sc.data;
        for (const auto& op : sc.ops) apply_update(replay, op);  // throws if any op is invalid
        CHECK(sc.ops.size() == 30);
    }
}
