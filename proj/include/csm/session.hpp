#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "csm/calig.hpp"
#include "csm/graph.hpp"
#include "csm/kss.hpp"

namespace csm {

struct SessionOptions {
    CaligConfig index;
    SearchMode mode = SearchMode::Enumerate;
    uint64_t max_matches = UINT64_MAX;
    bool prune_ahead = true;
    bool use_kernel_shell = true;
    std::chrono::steady_clock::duration timeout = std::chrono::seconds(1200);
};

struct OpRow {
    size_t op_index = 0;
    UpdateKind kind = UpdateKind::Add;
    VertexId src = 0;
    VertexId dst = 0;
    uint64_t maint_us = 0;
    uint64_t search_us = 0;
    uint64_t added = 0;
    uint64_t removed = 0;
    uint64_t backtracks = 0;
    bool skipped = false;    // invalid op (add-existing / delete-missing)
    bool timed_out = false;  // search hit the deadline during this op
};

struct RunMetrics {
    std::vector<OpRow> ops;  // attempted ops only; shorter than ops_total after a timeout
    size_t ops_total = 0;
    size_t ops_applied = 0;
    size_t ops_skipped = 0;
    bool completed = true;  // false once the deadline fires; remaining ops skipped
    uint64_t matches_added = 0;
    uint64_t matches_removed = 0;
    uint64_t backtrackings = 0;
    uint64_t offline_us = 0;  // index construction + plan precomputation
    uint64_t maint_us = 0;
    uint64_t search_us = 0;
    uint64_t elapsed_us = 0;  // whole run wall time (>= offline + maint + search)
    uint64_t peak_memory_bytes = 0;
};

struct SessionResult {
    RunMetrics metrics;
    // "# op <i> <+|-> <src> <dst>" header per op followed by its sorted
    // "m <sign> v(u_0) ... v(u_k)" lines; empty in counting mode.
    std::string match_output;
    // One entry per op row (empty MatchSet for skipped ops).
    std::vector<MatchSet> per_op;
};

// Runs the stream against the engine: Add ops update the graph and index
// first and then search; Delete ops search first and then update. Invalid
// ops are skipped and counted. The data graph is taken by value (mutated).
SessionResult run_session(const QueryGraph& q, LabeledGraph g, const std::vector<UpdateOp>& ops,
                          const SessionOptions& opt);

struct VerifyResult {
    bool pass = true;
    // One line per mismatched op ("op 7 (+ 3 9): engine 2 added, oracle 3
    // added..."), plus context; empty when pass.
    std::vector<std::string> mismatches;
};

// Test-only hook: mutates the engine's MatchSet before comparison.
using TamperHook = std::function<void(size_t op_index, MatchSet&)>;

// Runs the engine and an oracle snapshot-diff side by side and compares every
// applied op's matches. Enforces the oracle's desk-scale bounds (throws
// ValidationError beyond them).
VerifyResult verify_session(const QueryGraph& q, LabeledGraph g,
                            const std::vector<UpdateOp>& ops, const SessionOptions& opt,
                            const TamperHook& tamper = nullptr);

// The oracle's own rendering of the stream's incremental matches, in exactly
// run_session's match_output format (for byte comparison).
std::string oracle_diff_output(const QueryGraph& q, LabeledGraph g,
                               const std::vector<UpdateOp>& ops);

// Report rendering. The JSON form carries "schema": 1, the exact command
// line, and the config echo; match_density is a number, or the string "inf"
// when no backtracking happened.
std::string report_json(const RunMetrics& m, const SessionOptions& opt,
                        const std::string& command_line, std::optional<uint64_t> seed);
std::string report_csv(const RunMetrics& m);

uint64_t peak_memory_bytes();

}  // namespace csm
