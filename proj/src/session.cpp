#include "csm/session.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "csm/kernel_shell.hpp"
#include "csm/oracle.hpp"

namespace csm {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t us_since(Clock::time_point t0) {
    return static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count());
}

char kind_char(UpdateKind k) { return k == UpdateKind::Add ? '+' : '-'; }

void append_header(std::string& out, size_t index, const UpdateOp& op) {
    out += "# op ";
    out += std::to_string(index);
    out += ' ';
    out += kind_char(op.kind);
    out += ' ';
    out += std::to_string(op.src);
    out += ' ';
    out += std::to_string(op.dst);
    out += '\n';
}

void append_match_line(std::string& out, UpdateKind sign, const std::vector<VertexId>& match) {
    out += "m ";
    out += kind_char(sign);
    for (VertexId v : match) {
        out += ' ';
        out += std::to_string(v);
    }
    out += '\n';
}

bool op_is_valid(const LabeledGraph& g, const UpdateOp& op) {
    bool present = g.has_edge(op.src, op.dst);
    return op.kind == UpdateKind::Add ? !present : present;
}

std::string render_match(const std::vector<VertexId>& m) {
    std::string s = "(";
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(m[i]);
    }
    s += ')';
    return s;
}

}  // namespace

SessionResult run_session(const QueryGraph& q, LabeledGraph g, const std::vector<UpdateOp>& ops,
                          const SessionOptions& opt) {
    SessionResult res;
    RunMetrics& met = res.metrics;
    met.ops_total = ops.size();

    Clock::time_point run_start = Clock::now();
    Clock::time_point deadline = opt.timeout.count() > 0 ? run_start + opt.timeout
                                                         : Clock::time_point::max();

    Clock::time_point offline_start = Clock::now();
    CaligIndex idx(q, g, opt.index);
    std::vector<KernelShellPlan> plans = precompute_all_plans(q);
    met.offline_us = us_since(offline_start);

    SearchConfig scfg;
    scfg.mode = opt.mode;
    scfg.max_matches = opt.max_matches;
    scfg.prune_ahead = opt.prune_ahead;
    scfg.use_kernel_shell = opt.use_kernel_shell;
    scfg.deadline = deadline;
    const bool emit = opt.mode == SearchMode::Enumerate;

    for (size_t i = 0; i < ops.size(); ++i) {
        if (Clock::now() >= deadline) {
            met.completed = false;
            break;
        }
        const UpdateOp& op = ops[i];
        OpRow row;
        row.op_index = i;
        row.kind = op.kind;
        row.src = op.src;
        row.dst = op.dst;
        MatchSet ms;
        ms.sign = op.kind;

        if (emit) append_header(res.match_output, i, op);

        if (!op_is_valid(g, op)) {
            row.skipped = true;
            ++met.ops_skipped;
            met.ops.push_back(row);
            res.per_op.push_back(std::move(ms));
            continue;
        }

        SearchCounters counters;
        if (op.kind == UpdateKind::Add) {
            Clock::time_point t0 = Clock::now();
            g.add_edge(op.src, op.dst);
            idx.update_for_addition(op.src, op.dst);
            row.maint_us = us_since(t0);
            Clock::time_point t1 = Clock::now();
            ms = find_incremental_matches(idx, op.kind, op.src, op.dst, plans, scfg, counters);
            row.search_us = us_since(t1);
        } else {
            Clock::time_point t1 = Clock::now();
            ms = find_incremental_matches(idx, op.kind, op.src, op.dst, plans, scfg, counters);
            row.search_us = us_since(t1);
            Clock::time_point t0 = Clock::now();
            g.remove_edge(op.src, op.dst);
            idx.update_for_deletion(op.src, op.dst);
            row.maint_us = us_since(t0);
        }

        row.added = op.kind == UpdateKind::Add ? ms.total_count : 0;
        row.removed = op.kind == UpdateKind::Delete ? ms.total_count : 0;
        row.backtracks = counters.backtrackings;
        row.timed_out = counters.timed_out;

        ++met.ops_applied;
        met.matches_added += row.added;
        met.matches_removed += row.removed;
        met.backtrackings += row.backtracks;
        met.maint_us += row.maint_us;
        met.search_us += row.search_us;

        if (emit) {
            for (const auto& m : ms.matches) append_match_line(res.match_output, ms.sign, m);
        }
        met.ops.push_back(row);
        res.per_op.push_back(std::move(ms));

        if (counters.timed_out) {
            met.completed = false;
            break;
        }
    }

    met.elapsed_us = us_since(run_start);
    met.peak_memory_bytes = peak_memory_bytes();
    return res;
}

VerifyResult verify_session(const QueryGraph& q, LabeledGraph g,
                            const std::vector<UpdateOp>& ops, const SessionOptions& opt,
                            const TamperHook& tamper) {
    LabeledGraph oracle_g = g;

    SessionOptions eopt = opt;
    eopt.mode = SearchMode::Enumerate;  // verification compares actual matches
    eopt.max_matches = UINT64_MAX;
    SessionResult engine = run_session(q, std::move(g), ops, eopt);

    VerifyResult vr;
    Snapshot before = enumerate_static(q, oracle_g);
    for (size_t i = 0; i < ops.size(); ++i) {
        if (i >= engine.metrics.ops.size()) {
            vr.pass = false;
            vr.mismatches.push_back("op " + std::to_string(i) +
                                    ": engine run uncompleted (timed out before this update)");
            break;
        }
        const UpdateOp& op = ops[i];
        const OpRow& row = engine.metrics.ops[i];
        if (row.skipped) {
            if (op_is_valid(oracle_g, op)) {
                vr.pass = false;
                vr.mismatches.push_back("op " + std::to_string(i) +
                                        ": engine skipped a valid update");
            }
            continue;
        }

        apply_update(oracle_g, op);
        Snapshot after = enumerate_static(q, oracle_g);
        auto [added, removed] = diff_snapshots(before, after);
        const auto& expect = op.kind == UpdateKind::Add ? added : removed;
        const auto& opposite = op.kind == UpdateKind::Add ? removed : added;

        MatchSet got = engine.per_op[i];
        if (tamper) tamper(i, got);

        bool ok = opposite.empty() && got.total_count == expect.size() &&
                  got.matches == expect && !got.truncated && !got.timed_out;
        if (!ok) {
            vr.pass = false;
            std::string msg = "op " + std::to_string(i) + " (" +
                              std::string(1, kind_char(op.kind)) + " " + std::to_string(op.src) +
                              " " + std::to_string(op.dst) + "): engine " +
                              std::to_string(got.matches.size()) + " matches, oracle " +
                              std::to_string(expect.size());
            std::vector<std::vector<VertexId>> missing;
            std::set_difference(expect.begin(), expect.end(), got.matches.begin(),
                                got.matches.end(), std::back_inserter(missing));
            std::vector<std::vector<VertexId>> extra;
            std::set_difference(got.matches.begin(), got.matches.end(), expect.begin(),
                                expect.end(), std::back_inserter(extra));
            if (!missing.empty()) msg += "; first missing " + render_match(missing.front());
            if (!extra.empty()) msg += "; first extra " + render_match(extra.front());
            vr.mismatches.push_back(std::move(msg));
        }
        before = std::move(after);
    }
    return vr;
}

std::string oracle_diff_output(const QueryGraph& q, LabeledGraph g,
                               const std::vector<UpdateOp>& ops) {
    std::string out;
    Snapshot before = enumerate_static(q, g);
    for (size_t i = 0; i < ops.size(); ++i) {
        const UpdateOp& op = ops[i];
        append_header(out, i, op);
        if (!op_is_valid(g, op)) continue;
        apply_update(g, op);
        Snapshot after = enumerate_static(q, g);
        auto [added, removed] = diff_snapshots(before, after);
        const auto& rel = op.kind == UpdateKind::Add ? added : removed;
        for (const auto& m : rel) append_match_line(out, op.kind, m);
        before = std::move(after);
    }
    return out;
}

std::string report_json(const RunMetrics& m, const SessionOptions& opt,
                        const std::string& command_line, std::optional<uint64_t> seed) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = command_line;
    j["mode"] = opt.mode == SearchMode::Count ? "count" : "enumerate";
    if (seed)
        j["seed"] = *seed;
    else
        j["seed"] = nullptr;
    j["config"] = {{"injective_matching", opt.index.state_check == StateCheck::Full},
                   {"state_maintenance", opt.index.maintain_states},
                   {"kernel_shell", opt.use_kernel_shell},
                   {"matching_cache", opt.index.cache_matchings},
                   {"prune_ahead", opt.prune_ahead}};
    j["completed"] = m.completed;
    j["ops_total"] = m.ops_total;
    j["ops_applied"] = m.ops_applied;
    j["ops_skipped"] = m.ops_skipped;
    j["matches_added"] = m.matches_added;
    j["matches_removed"] = m.matches_removed;
    j["backtrackings"] = m.backtrackings;
    uint64_t total_matches = m.matches_added + m.matches_removed;
    if (m.backtrackings == 0)
        j["match_density"] = "inf";
    else
        j["match_density"] = static_cast<double>(total_matches) / static_cast<double>(m.backtrackings);
    j["offline_us"] = m.offline_us;
    j["maint_us"] = m.maint_us;
    j["search_us"] = m.search_us;
    j["elapsed_us"] = m.elapsed_us;

    uint64_t incl_sum = 0, incl_n = 0, comp_sum = 0, comp_n = 0;
    for (const OpRow& r : m.ops) {
        if (r.skipped) continue;
        incl_sum += r.maint_us + r.search_us;
        ++incl_n;
        if (!r.timed_out) {
            comp_sum += r.maint_us + r.search_us;
            ++comp_n;
        }
    }
    if (incl_n)
        j["avg_update_us_inclusive"] = static_cast<double>(incl_sum) / static_cast<double>(incl_n);
    else
        j["avg_update_us_inclusive"] = nullptr;
    if (comp_n)
        j["avg_update_us_completed"] = static_cast<double>(comp_sum) / static_cast<double>(comp_n);
    else
        j["avg_update_us_completed"] = nullptr;

    j["peak_memory_bytes"] = m.peak_memory_bytes;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const OpRow& r : m.ops) {
        rows.push_back({{"op_index", r.op_index},
                        {"kind", std::string(1, kind_char(r.kind))},
                        {"src", r.src},
                        {"dst", r.dst},
                        {"maint_us", r.maint_us},
                        {"search_us", r.search_us},
                        {"added", r.added},
                        {"removed", r.removed},
                        {"backtracks", r.backtracks},
                        {"skipped", r.skipped},
                        {"timed_out", r.timed_out}});
    }
    j["per_op"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string report_csv(const RunMetrics& m) {
    std::string out = "op_index,kind,src,dst,maint_us,search_us,added,removed,backtracks\n";
    for (const OpRow& r : m.ops) {
        out += std::to_string(r.op_index);
        out += ',';
        out += kind_char(r.kind);
        out += ',';
        out += std::to_string(r.src);
        out += ',';
        out += std::to_string(r.dst);
        out += ',';
        out += std::to_string(r.maint_us);
        out += ',';
        out += std::to_string(r.search_us);
        out += ',';
        out += std::to_string(r.added);
        out += ',';
        out += std::to_string(r.removed);
        out += ',';
        out += std::to_string(r.backtracks);
        out += '\n';
    }
    return out;
}

uint64_t peak_memory_bytes() {
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<uint64_t>(ru.ru_maxrss) * 1024;  // ru_maxrss is KiB on Linux
}

}  // namespace csm
