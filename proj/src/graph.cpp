#include "csm/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

namespace csm {

Label LabelInterner::intern(uint64_t raw) {
    auto it = dense_of_.find(raw);
    if (it != dense_of_.end()) return it->second;
    Label id = static_cast<Label>(dense_of_.size());
    dense_of_.emplace(raw, id);
    return id;
}

LabeledGraph::LabeledGraph(std::vector<Label> labels)
    : labels_(std::move(labels)), adj_(labels_.size()) {}

void LabeledGraph::check_vertex(VertexId v, const char* what) const {
    if (v >= labels_.size())
        throw ValidationError(std::string(what) + ": vertex " + std::to_string(v) +
                              " out of range (n=" + std::to_string(labels_.size()) + ")");
}

bool LabeledGraph::has_edge(VertexId a, VertexId b) const {
    check_vertex(a, "has_edge");
    check_vertex(b, "has_edge");
    const auto& na = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    VertexId other = adj_[a].size() <= adj_[b].size() ? b : a;
    return std::binary_search(na.begin(), na.end(), other);
}

void LabeledGraph::add_edge(VertexId a, VertexId b) {
    check_vertex(a, "add_edge");
    check_vertex(b, "add_edge");
    if (a == b) throw ValidationError("add_edge: self-loop at vertex " + std::to_string(a));
    if (has_edge(a, b))
        throw IdempotencyError("add_edge: edge (" + std::to_string(a) + "," +
                               std::to_string(b) + ") already present");
    auto insert_sorted = [](std::vector<VertexId>& vec, VertexId v) {
        vec.insert(std::upper_bound(vec.begin(), vec.end(), v), v);
    };
    insert_sorted(adj_[a], b);
    insert_sorted(adj_[b], a);
    ++edge_count_;
    max_degree_ = std::max({max_degree_, static_cast<uint32_t>(adj_[a].size()),
                            static_cast<uint32_t>(adj_[b].size())});
}

void LabeledGraph::remove_edge(VertexId a, VertexId b) {
    check_vertex(a, "remove_edge");
    check_vertex(b, "remove_edge");
    if (a == b || !has_edge(a, b))
        throw IdempotencyError("remove_edge: edge (" + std::to_string(a) + "," +
                               std::to_string(b) + ") not present");
    auto erase_sorted = [](std::vector<VertexId>& vec, VertexId v) {
        vec.erase(std::lower_bound(vec.begin(), vec.end(), v));
    };
    bool touched_max = adj_[a].size() == max_degree_ || adj_[b].size() == max_degree_;
    erase_sorted(adj_[a], b);
    erase_sorted(adj_[b], a);
    --edge_count_;
    if (touched_max) {
        max_degree_ = 0;
        for (const auto& nbrs : adj_)
            max_degree_ = std::max(max_degree_, static_cast<uint32_t>(nbrs.size()));
    }
}

bool LabeledGraph::is_connected() const {
    if (labels_.empty()) return true;
    std::vector<char> seen(labels_.size(), 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    size_t reached = 1;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (VertexId w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == labels_.size();
}

std::vector<std::pair<VertexId, VertexId>> LabeledGraph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edge_count_);
    for (VertexId a = 0; a < labels_.size(); ++a)
        for (VertexId b : adj_[a])
            if (a < b) out.emplace_back(a, b);
    return out;
}

QueryGraph::QueryGraph(LabeledGraph g) : g_(std::move(g)) {
    if (g_.vertex_count() < 2)
        throw ValidationError("query graph needs at least 2 vertices");
    if (!g_.is_connected()) throw ValidationError("query graph must be connected");
}

namespace {

struct LineReader {
    std::istringstream in;
    size_t line_no = 0;
    std::string line;

    explicit LineReader(const std::string& text) : in(text) {}

    // Returns false at EOF; skips blank and '#' comment lines.
    bool next() {
        while (std::getline(in, line)) {
            ++line_no;
            size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("line " + std::to_string(line_no) + ": " + msg);
    }
};

uint64_t parse_u64(LineReader& r, std::istringstream& fields, const char* what) {
    int64_t v;
    if (!(fields >> v)) r.fail(std::string("expected ") + what);
    if (v < 0) r.fail(std::string(what) + " must be non-negative");
    return static_cast<uint64_t>(v);
}

void expect_end(LineReader& r, std::istringstream& fields) {
    std::string extra;
    if (fields >> extra) r.fail("trailing tokens: '" + extra + "'");
}

}  // namespace

LabeledGraph load_graph(const std::string& text, LabelInterner& interner) {
    LineReader r(text);
    if (!r.next()) throw ParseError("empty graph file");
    std::istringstream header(r.line);
    std::string tag;
    header >> tag;
    if (tag != "t") r.fail("expected 't <num_vertices> <num_edges>' header, got '" + tag + "'");
    uint64_t nv = parse_u64(r, header, "vertex count");
    uint64_t ne = parse_u64(r, header, "edge count");
    expect_end(r, header);

    std::vector<Label> labels;
    labels.reserve(nv);
    for (uint64_t i = 0; i < nv; ++i) {
        if (!r.next()) throw ParseError("unexpected end of file: expected " + std::to_string(nv) +
                                        " vertex lines, got " + std::to_string(i));
        std::istringstream fields(r.line);
        fields >> tag;
        if (tag != "v") r.fail("expected vertex line 'v <id> <label>', got '" + tag + "'");
        uint64_t id = parse_u64(r, fields, "vertex id");
        uint64_t raw_label = parse_u64(r, fields, "vertex label");
        expect_end(r, fields);
        if (id != i) r.fail("vertex ids must be 0..n-1 in order; expected " + std::to_string(i) +
                            ", got " + std::to_string(id));
        labels.push_back(interner.intern(raw_label));
    }

    LabeledGraph g(std::move(labels));
    for (uint64_t i = 0; i < ne; ++i) {
        if (!r.next()) throw ParseError("unexpected end of file: expected " + std::to_string(ne) +
                                        " edge lines, got " + std::to_string(i));
        std::istringstream fields(r.line);
        fields >> tag;
        if (tag != "e") r.fail("expected edge line 'e <src> <dst>', got '" + tag + "'");
        uint64_t src = parse_u64(r, fields, "edge source");
        uint64_t dst = parse_u64(r, fields, "edge target");
        expect_end(r, fields);
        if (src >= nv || dst >= nv)
            r.fail("edge endpoint out of range: (" + std::to_string(src) + "," +
                   std::to_string(dst) + ") with n=" + std::to_string(nv));
        if (src == dst) r.fail("self-loop at vertex " + std::to_string(src));
        try {
            g.add_edge(static_cast<VertexId>(src), static_cast<VertexId>(dst));
        } catch (const IdempotencyError&) {
            r.fail("duplicate edge (" + std::to_string(src) + "," + std::to_string(dst) + ")");
        }
    }
    if (r.next()) r.fail("trailing content after declared " + std::to_string(ne) + " edges");
    return g;
}

std::vector<UpdateOp> load_update_stream(const std::string& text, size_t vertex_count) {
    LineReader r(text);
    std::vector<UpdateOp> ops;
    while (r.next()) {
        std::istringstream fields(r.line);
        std::string tag;
        fields >> tag;
        UpdateKind kind;
        if (tag == "+")
            kind = UpdateKind::Add;
        else if (tag == "-")
            kind = UpdateKind::Delete;
        else
            r.fail("expected '+' or '-' op, got '" + tag + "'");
        uint64_t src = parse_u64(r, fields, "op source");
        uint64_t dst = parse_u64(r, fields, "op target");
        expect_end(r, fields);
        if (src >= vertex_count || dst >= vertex_count)
            r.fail("op endpoint out of range: (" + std::to_string(src) + "," +
                   std::to_string(dst) + ") with n=" + std::to_string(vertex_count));
        if (src == dst) r.fail("self-loop op at vertex " + std::to_string(src));
        ops.push_back({kind, static_cast<VertexId>(src), static_cast<VertexId>(dst)});
    }
    return ops;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

LabeledGraph load_graph_file(const std::string& path, LabelInterner& interner) {
    try {
        return load_graph(read_file(path), interner);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<UpdateOp> load_update_stream_file(const std::string& path, size_t vertex_count) {
    try {
        return load_update_stream(read_file(path), vertex_count);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_graph(const LabeledGraph& g) {
    std::ostringstream out;
    out << "t " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        out << "v " << v << " " << g.label(v) << "\n";
    for (const auto& [a, b] : g.edges()) out << "e " << a << " " << b << "\n";
    return out.str();
}

void apply_update(LabeledGraph& g, const UpdateOp& op) {
    if (op.kind == UpdateKind::Add)
        g.add_edge(op.src, op.dst);
    else
        g.remove_edge(op.src, op.dst);
}

}  // namespace csm
