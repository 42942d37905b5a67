#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace csm {

using VertexId = uint32_t;
using Label = uint32_t;

constexpr VertexId kNoVertex = UINT32_MAX;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IdempotencyError : std::runtime_error {
    explicit IdempotencyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Maps raw label values from input files to dense ids 0..k-1 in order of first
// appearance. Shared between the data and query loads of one session so label
// equality is preserved across the pair.
class LabelInterner {
  public:
    Label intern(uint64_t raw);
    size_t size() const { return dense_of_.size(); }

  private:
    std::unordered_map<uint64_t, Label> dense_of_;
};

// Undirected vertex-labeled graph. Adjacency lists are kept sorted ascending;
// no self-loops, no parallel edges.
class LabeledGraph {
  public:
    LabeledGraph() = default;
    explicit LabeledGraph(std::vector<Label> labels);

    size_t vertex_count() const { return labels_.size(); }
    size_t edge_count() const { return edge_count_; }
    uint32_t max_degree() const { return max_degree_; }

    Label label(VertexId v) const { return labels_[v]; }
    const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
    size_t degree(VertexId v) const { return adj_[v].size(); }
    bool has_edge(VertexId a, VertexId b) const;

    // Both throw IdempotencyError when the edge is already present / absent.
    void add_edge(VertexId a, VertexId b);
    void remove_edge(VertexId a, VertexId b);

    bool is_connected() const;

    // Sorted (a, b) pairs with a < b.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

  private:
    void check_vertex(VertexId v, const char* what) const;

    std::vector<Label> labels_;
    std::vector<std::vector<VertexId>> adj_;
    size_t edge_count_ = 0;
    uint32_t max_degree_ = 0;
};

// A connected LabeledGraph with at least two vertices; construction validates.
class QueryGraph {
  public:
    explicit QueryGraph(LabeledGraph g);

    const LabeledGraph& graph() const { return g_; }
    size_t vertex_count() const { return g_.vertex_count(); }
    size_t edge_count() const { return g_.edge_count(); }
    Label label(VertexId u) const { return g_.label(u); }
    const std::vector<VertexId>& neighbors(VertexId u) const { return g_.neighbors(u); }
    size_t degree(VertexId u) const { return g_.degree(u); }
    bool has_edge(VertexId a, VertexId b) const { return g_.has_edge(a, b); }
    std::vector<std::pair<VertexId, VertexId>> edges() const { return g_.edges(); }

  private:
    LabeledGraph g_;
};

enum class UpdateKind : uint8_t { Add, Delete };

struct UpdateOp {
    UpdateKind kind;
    VertexId src;
    VertexId dst;

    bool operator==(const UpdateOp& o) const {
        return kind == o.kind && src == o.src && dst == o.dst;
    }
};

// Text format: '#' comment lines, a 't <nv> <ne>' header, 'v <id> <label>'
// lines with ids 0..nv-1 in order, then 'e <src> <dst>' lines.
LabeledGraph load_graph(const std::string& text, LabelInterner& interner);
LabeledGraph load_graph_file(const std::string& path, LabelInterner& interner);

// Text format: '+ <src> <dst>' and '- <src> <dst>' lines, '#' comments.
// Endpoints are validated against vertex_count.
std::vector<UpdateOp> load_update_stream(const std::string& text, size_t vertex_count);
std::vector<UpdateOp> load_update_stream_file(const std::string& path, size_t vertex_count);

// Emits the same format load_graph accepts; load_graph(serialize_graph(g)) == g.
std::string serialize_graph(const LabeledGraph& g);

// Applies one op in place. Throws IdempotencyError on add-existing or
// delete-missing; the graph is unchanged in that case.
void apply_update(LabeledGraph& g, const UpdateOp& op);

}  // namespace csm
