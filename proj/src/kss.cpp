#include "csm/kss.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>
#include <stdexcept>

namespace csm {

std::vector<VertexId> generate_candidates(VertexId u, const PartialMatch& m,
                                          const CaligIndex& idx) {
    const QueryGraph& q = idx.query();
    const LabeledGraph& g = idx.data();
    std::vector<VertexId> cand;
    bool have = false;
    for (VertexId nu : q.neighbors(u)) {
        VertexId v = m.assign[nu];
        if (v == kNoVertex) continue;
        if (!have) {
            // Base set: live neighbors of the first matched neighbor that
            // form a lighted (u, v') pair and are still unused.
            for (VertexId w : g.neighbors(v)) {
                if (!m.used[w] && idx.pair_on(u, w)) cand.push_back(w);
            }
            have = true;
        } else {
            const auto& nb = g.neighbors(v);
            std::vector<VertexId> next;
            std::set_intersection(cand.begin(), cand.end(), nb.begin(), nb.end(),
                                  std::back_inserter(next));
            cand.swap(next);
        }
        if (cand.empty()) break;
    }
    if (!have) throw std::logic_error("candidate generation requires an assigned neighbor");
    return cand;
}

bool prune_ahead_ok(const PartialMatch& m, const KernelShellPlan& plan, const CaligIndex& idx) {
    const QueryGraph& q = idx.query();
    for (VertexId s : plan.shell) {
        bool complete = true;
        for (VertexId nu : q.neighbors(s)) {
            if (m.assign[nu] == kNoVertex) {
                complete = false;
                break;
            }
        }
        if (complete && generate_candidates(s, m, idx).empty()) return false;
    }
    return true;
}

namespace {

struct Searcher {
    const CaligIndex& idx;
    const SearchConfig& cfg;
    SearchCounters& counters;
    MatchSet& out;
    const KernelShellPlan* plan = nullptr;
    PartialMatch m;
    bool stop = false;

    Searcher(const CaligIndex& index, const SearchConfig& config, SearchCounters& c, MatchSet& o)
        : idx(index),
          cfg(config),
          counters(c),
          out(o),
          m(index.query().vertex_count(), index.data().vertex_count()) {}

    bool deadline_passed() const {
        if (cfg.deadline == std::chrono::steady_clock::time_point::max()) return false;
        return std::chrono::steady_clock::now() >= cfg.deadline;
    }

    void emit() {
        ++counters.matches_emitted;
        ++out.total_count;
        if (cfg.mode == SearchMode::Enumerate) {
            out.matches.push_back(m.assign);
            if (out.matches.size() >= cfg.max_matches) {
                out.truncated = true;
                stop = true;
            }
        }
    }

    void shell_dfs(size_t i, const std::vector<std::vector<VertexId>>& cands) {
        if (stop) return;
        if (i == plan->shell.size()) {
            emit();
            return;
        }
        for (VertexId v : cands[i]) {
            if (m.used[v]) continue;  // injectivity across shell picks
            m.bind(plan->shell[i], v);
            shell_dfs(i + 1, cands);
            m.unbind(plan->shell[i]);
            if (stop) return;
        }
    }

    void join_shell() {
        const auto& shell = plan->shell;
        if (shell.empty()) {
            emit();
            return;
        }
        std::vector<std::vector<VertexId>> cands(shell.size());
        for (size_t i = 0; i < shell.size(); ++i) {
            cands[i] = generate_candidates(shell[i], m, idx);
            if (cands[i].empty()) return;
        }
        if (cfg.mode == SearchMode::Count) {
            std::vector<Label> labels;
            for (VertexId s : shell) labels.push_back(idx.query().label(s));
            std::sort(labels.begin(), labels.end());
            if (std::adjacent_find(labels.begin(), labels.end()) == labels.end()) {
                // Pairwise distinct shell labels: the candidate sets cannot
                // collide, so the join is a plain product.
                uint64_t prod = 1;
                for (const auto& c : cands) prod *= c.size();
                counters.matches_emitted += prod;
                out.total_count += prod;
                return;
            }
        }
        shell_dfs(0, cands);
    }

    void recurse(size_t depth) {
        if (stop) return;
        if (deadline_passed()) {
            counters.timed_out = true;
            out.timed_out = true;
            stop = true;
            return;
        }
        if (depth == plan->kernel.size()) {
            join_shell();
            return;
        }
        VertexId u = plan->kernel[depth];
        for (VertexId v : generate_candidates(u, m, idx)) {
            ++counters.backtrackings;
            m.bind(u, v);
            if (!cfg.prune_ahead || prune_ahead_ok(m, *plan, idx)) recurse(depth + 1);
            m.unbind(u);
            if (stop) return;
        }
    }

    void run_seed(const KernelShellPlan& p, VertexId x, VertexId y) {
        plan = &p;
        m.bind(p.seed_a, x);
        m.bind(p.seed_b, y);
        if (!cfg.prune_ahead || prune_ahead_ok(m, p, idx)) recurse(2);
        m.unbind(p.seed_b);
        m.unbind(p.seed_a);
    }
};

}  // namespace

MatchSet find_incremental_matches(const CaligIndex& idx, UpdateKind kind, VertexId v1,
                                  VertexId v2, const std::vector<KernelShellPlan>& plans,
                                  const SearchConfig& cfg, SearchCounters& counters) {
    MatchSet out;
    out.sign = kind;
    assert(idx.data().has_edge(v1, v2));
    Searcher s(idx, cfg, counters, out);
    for (auto [a, b] : idx.query().edges()) {
        const KernelShellPlan* p = &plan_for_edge(plans, a, b);
        KernelShellPlan extended;
        if (!cfg.use_kernel_shell) {
            extended = extend_kernel_with_shell(*p);
            p = &extended;
        }
        const VertexId seeds[2][2] = {{v1, v2}, {v2, v1}};
        for (const auto& xy : seeds) {
            if (!idx.pair_on(a, xy[0]) || !idx.pair_on(b, xy[1])) continue;
            s.run_seed(*p, xy[0], xy[1]);
            if (s.stop) break;
        }
        if (s.stop) break;
    }
    std::sort(out.matches.begin(), out.matches.end());
    out.matches.erase(std::unique(out.matches.begin(), out.matches.end()), out.matches.end());
    return out;
}

}  // namespace csm
