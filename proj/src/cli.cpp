#include "csm/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csm/calig.hpp"
#include "csm/graph.hpp"
#include "csm/kernel_shell.hpp"
#include "csm/session.hpp"

namespace csm {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitTimeout = 4;

struct Args {
    std::string query_path;
    std::string data_path;
    std::string stream_path;
    uint64_t timeout_secs = 1200;
    std::string mode = "enumerate";
    uint64_t max_matches = UINT64_MAX;
    std::string report = "json";
    std::string report_out = "-";
    std::string matches_out = "-";
    std::optional<uint64_t> seed;
    bool no_injm = false;
    bool no_nstate = false;
    bool no_kss = false;
    bool cache_im = false;
    std::string dump_index_path;  // run diagnostic: post-stream index dump
    std::string dump_plans_path;  // run diagnostic: plan dump
};

struct Inputs {
    LabelInterner interner;
    std::optional<QueryGraph> query;
    LabeledGraph data{std::vector<Label>{}};
    std::vector<UpdateOp> ops;
};

Inputs load_inputs(const Args& a, bool with_stream) {
    Inputs in;
    in.query.emplace(load_graph_file(a.query_path, in.interner));
    in.data = load_graph_file(a.data_path, in.interner);
    if (with_stream) in.ops = load_update_stream_file(a.stream_path, in.data.vertex_count());
    return in;
}

SessionOptions session_options(const Args& a) {
    SessionOptions opt;
    opt.index.state_check = a.no_injm ? StateCheck::NeighborhoodOnly : StateCheck::Full;
    opt.index.maintain_states = !a.no_nstate;
    opt.index.cache_matchings = a.cache_im;
    opt.mode = a.mode == "count" ? SearchMode::Count : SearchMode::Enumerate;
    opt.max_matches = a.max_matches;
    opt.use_kernel_shell = !a.no_kss;
    opt.timeout = std::chrono::seconds(a.timeout_secs);
    return opt;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << content;
    if (!out) throw ValidationError("write failed: " + path);
}

int do_run(const Args& a, const std::string& command_line) {
    Inputs in = load_inputs(a, true);
    SessionOptions opt = session_options(a);

    SessionResult res = run_session(*in.query, in.data, in.ops, opt);

    if (opt.mode == SearchMode::Enumerate) write_output(a.matches_out, res.match_output);
    std::string report =
        a.report == "csv" ? report_csv(res.metrics)
                          : report_json(res.metrics, opt, command_line, a.seed);
    write_output(a.report_out, report);

    if (!a.dump_index_path.empty() || !a.dump_plans_path.empty()) {
        // Reconstruct the post-stream state for diagnostics: replay the valid
        // ops onto the data graph, then dump the index over the final graph
        // with its maintained states.
        LabeledGraph g = in.data;
        CaligIndex idx(*in.query, g, opt.index);
        for (const UpdateOp& op : in.ops) {
            bool present = g.has_edge(op.src, op.dst);
            if (op.kind == UpdateKind::Add ? present : !present) continue;
            if (op.kind == UpdateKind::Add) {
                g.add_edge(op.src, op.dst);
                idx.update_for_addition(op.src, op.dst);
            } else {
                g.remove_edge(op.src, op.dst);
                idx.update_for_deletion(op.src, op.dst);
            }
        }
        if (!a.dump_index_path.empty()) write_output(a.dump_index_path, idx.dump());
        if (!a.dump_plans_path.empty())
            write_output(a.dump_plans_path, serialize_plans(precompute_all_plans(*in.query)));
    }

    return res.metrics.completed ? kExitOk : kExitTimeout;
}

int do_verify(const Args& a) {
    Inputs in = load_inputs(a, true);
    SessionOptions opt = session_options(a);
    VerifyResult vr = verify_session(*in.query, in.data, in.ops, opt);
    if (vr.pass) {
        std::cout << "PASS " << in.ops.size() << " updates\n";
        return kExitOk;
    }
    std::cout << "FAIL first divergent update: " << vr.mismatches.front() << "\n";
    for (const std::string& m : vr.mismatches) std::cout << "  " << m << "\n";
    return kExitVerifyFail;
}

int do_oracle_diff(const Args& a) {
    Inputs in = load_inputs(a, true);
    std::cout << oracle_diff_output(*in.query, in.data, in.ops);
    return kExitOk;
}

int do_dump_index(const Args& a) {
    Inputs in = load_inputs(a, false);
    CaligConfig cfg;
    cfg.state_check = a.no_injm ? StateCheck::NeighborhoodOnly : StateCheck::Full;
    cfg.maintain_states = !a.no_nstate;
    cfg.cache_matchings = a.cache_im;
    CaligIndex idx(*in.query, in.data, cfg);
    std::cout << idx.dump();
    return kExitOk;
}

int do_dump_plans(const Args& a) {
    LabelInterner interner;
    QueryGraph q(load_graph_file(a.query_path, interner));
    std::cout << serialize_plans(precompute_all_plans(q));
    return kExitOk;
}

void add_query_opt(CLI::App* cmd, Args& a) {
    cmd->add_option("--query", a.query_path, "Query graph file")->required();
}

void add_graph_opts(CLI::App* cmd, Args& a) {
    add_query_opt(cmd, a);
    cmd->add_option("--data", a.data_path, "Initial data graph file")->required();
}

void add_stream_opt(CLI::App* cmd, Args& a) {
    cmd->add_option("--stream", a.stream_path, "Update stream file")->required();
}

void add_ablation_flags(CLI::App* cmd, Args& a) {
    cmd->add_flag("--no-injm", a.no_injm,
                  "Ablation: neighborhood-coverage state check instead of injective matching");
    cmd->add_flag("--no-nstate", a.no_nstate,
                  "Ablation: freeze lighting states after construction");
    cmd->add_flag("--no-kss", a.no_kss,
                  "Ablation: backtrack over shell vertices instead of joining them");
    cmd->add_flag("--cache-im", a.cache_im, "Cache injective matchings between state checks");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    std::string command_line;
    for (int i = 0; i < argc; ++i) {
        if (i) command_line += ' ';
        command_line += argv[i];
    }

    CLI::App app{"Continuous subgraph matching over a streaming vertex-labeled graph"};
    app.require_subcommand(1);
    Args a;

    CLI::App* run = app.add_subcommand("run", "Run an update session and report metrics");
    add_graph_opts(run, a);
    add_stream_opt(run, a);
    run->add_option("--timeout-secs", a.timeout_secs, "Session timeout in seconds (0 = none)")
        ->capture_default_str();
    run->add_option("--mode", a.mode, "Search mode")
        ->check(CLI::IsMember({"count", "enumerate"}))
        ->capture_default_str();
    run->add_option("--max-matches", a.max_matches,
                    "Stop enumerating after this many matches per update");
    run->add_option("--report", a.report, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    run->add_option("--report-out", a.report_out, "Report destination ('-' = stdout)")
        ->capture_default_str();
    run->add_option("--matches-out", a.matches_out,
                    "Match output destination in enumerate mode ('-' = stdout)")
        ->capture_default_str();
    run->add_option("--seed", a.seed, "Echoed into the report for replay bookkeeping");
    add_ablation_flags(run, a);
    run->add_option("--dump-index", a.dump_index_path,
                    "Write the post-stream index dump to this file");
    run->add_option("--dump-plans", a.dump_plans_path, "Write the plan dump to this file");

    CLI::App* verify = app.add_subcommand(
        "verify", "Replay the session against the brute-force oracle and compare every update");
    add_graph_opts(verify, a);
    add_stream_opt(verify, a);
    verify->add_option("--timeout-secs", a.timeout_secs, "Session timeout in seconds (0 = none)")
        ->capture_default_str();
    add_ablation_flags(verify, a);

    CLI::App* odiff = app.add_subcommand(
        "oracle-diff", "Print the oracle's incremental matches in run's match-output format");
    add_graph_opts(odiff, a);
    add_stream_opt(odiff, a);

    CLI::App* dindex =
        app.add_subcommand("dump-index", "Construct and initialize the index, print its dump");
    add_graph_opts(dindex, a);
    add_ablation_flags(dindex, a);

    CLI::App* dplans = app.add_subcommand("dump-plans", "Print one kernel/shell plan per query edge");
    add_query_opt(dplans, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (run->parsed()) return do_run(a, command_line);
        if (verify->parsed()) return do_verify(a);
        if (odiff->parsed()) return do_oracle_diff(a);
        if (dindex->parsed()) return do_dump_index(a);
        if (dplans->parsed()) return do_dump_plans(a);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const IdempotencyError& e) {
        std::cerr << "idempotency error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace csm
