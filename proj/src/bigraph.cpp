#include "csm/bigraph.hpp"

#include <algorithm>

namespace csm {

bool case1_rejects(const Bigraph& b) {
    for (const auto& nbrs : b.adj)
        if (nbrs.empty()) return true;
    return false;
}

bool case2_rejects(const Bigraph& b) {
    std::vector<char> covered(b.right_count, 0);
    uint32_t distinct = 0;
    for (const auto& nbrs : b.adj) {
        for (uint32_t r : nbrs) {
            if (!covered[r]) {
                covered[r] = 1;
                ++distinct;
            }
        }
    }
    return distinct < b.left_count;
}

bool every_left_slot_covered(const Bigraph& b) { return !case1_rejects(b); }

namespace {

struct Matcher {
    const Bigraph& b;
    std::vector<uint32_t> right_of_left;
    std::vector<uint32_t> left_of_right;
    std::vector<char> visited;

    static constexpr uint32_t kFree = UINT32_MAX;

    explicit Matcher(const Bigraph& bg)
        : b(bg),
          right_of_left(bg.left_count, kFree),
          left_of_right(bg.right_count, kFree),
          visited(bg.right_count, 0) {}

    void greedy_seed() {
        for (uint32_t l = 0; l < b.left_count; ++l) {
            for (uint32_t r : b.adj[l]) {
                if (left_of_right[r] == kFree) {
                    left_of_right[r] = l;
                    right_of_left[l] = r;
                    break;
                }
            }
        }
    }

    bool augment(uint32_t l) {
        for (uint32_t r : b.adj[l]) {
            if (visited[r]) continue;
            visited[r] = 1;
            if (left_of_right[r] == kFree || augment(left_of_right[r])) {
                left_of_right[r] = l;
                right_of_left[l] = r;
                return true;
            }
        }
        return false;
    }

    bool saturate() {
        greedy_seed();
        for (uint32_t l = 0; l < b.left_count; ++l) {
            if (right_of_left[l] != kFree) continue;
            std::fill(visited.begin(), visited.end(), 0);
            if (!augment(l)) return false;
        }
        return true;
    }
};

}  // namespace

bool has_injective_matching(const Bigraph& b) {
    if (b.left_count == 0) return true;
    if (case1_rejects(b)) return false;
    if (case2_rejects(b)) return false;
    Matcher m(b);
    return m.saturate();
}

std::optional<std::vector<uint32_t>> find_injective_matching(const Bigraph& b) {
    if (b.left_count == 0) return std::vector<uint32_t>{};
    if (case1_rejects(b) || case2_rejects(b)) return std::nullopt;
    Matcher m(b);
    if (!m.saturate()) return std::nullopt;
    return m.right_of_left;
}

std::vector<uint32_t> maximum_matching(const Bigraph& b) {
    Matcher m(b);
    m.greedy_seed();
    for (uint32_t l = 0; l < b.left_count; ++l) {
        if (m.right_of_left[l] != Matcher::kFree) continue;
        std::fill(m.visited.begin(), m.visited.end(), 0);
        m.augment(l);
    }
    return m.right_of_left;
}

std::pair<std::vector<char>, std::vector<char>> minimum_vertex_cover(const Bigraph& b) {
    Matcher m(b);
    m.greedy_seed();
    for (uint32_t l = 0; l < b.left_count; ++l) {
        if (m.right_of_left[l] != Matcher::kFree) continue;
        std::fill(m.visited.begin(), m.visited.end(), 0);
        m.augment(l);
    }
    // Alternating reachability from unmatched left vertices; the cover is
    // the unreached lefts plus the reached rights.
    std::vector<char> seen_l(b.left_count, 0);
    std::vector<char> seen_r(b.right_count, 0);
    std::vector<uint32_t> queue;
    for (uint32_t l = 0; l < b.left_count; ++l) {
        if (m.right_of_left[l] == Matcher::kFree) {
            seen_l[l] = 1;
            queue.push_back(l);
        }
    }
    while (!queue.empty()) {
        uint32_t l = queue.back();
        queue.pop_back();
        for (uint32_t r : b.adj[l]) {
            if (r == m.right_of_left[l] || seen_r[r]) continue;
            seen_r[r] = 1;
            uint32_t l2 = m.left_of_right[r];
            if (l2 != Matcher::kFree && !seen_l[l2]) {
                seen_l[l2] = 1;
                queue.push_back(l2);
            }
        }
    }
    std::vector<char> cover_l(b.left_count, 0);
    std::vector<char> cover_r(b.right_count, 0);
    for (uint32_t l = 0; l < b.left_count; ++l) cover_l[l] = !seen_l[l];
    for (uint32_t r = 0; r < b.right_count; ++r) cover_r[r] = seen_r[r];
    return {cover_l, cover_r};
}

}  // namespace csm
