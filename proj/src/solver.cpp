#include "vdw/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

namespace vdw {

namespace {

constexpr int kMaxSolverColors = 64;       // forbidden sets are uint64 masks
constexpr Int kMaxSolverN = 10'000'000;    // O(n) state per decide call
constexpr std::uint64_t kPollInterval = 8192;

enum class DfsResult { found, exhausted, budget, aborted };

struct Engine {
    Int a, b, n;
    int r;
    bool sb;

    std::vector<std::int8_t> col;       // 1-indexed; -1 = unassigned
    std::vector<std::uint64_t> forb;    // forbidden color mask per position
    std::vector<std::int8_t> umax;      // max color used in [1,m]; umax[0] = -1
    std::vector<std::vector<Int>> by_color;  // ascending stacks of positions
    std::vector<std::uint32_t> trail_mark;
    std::vector<std::pair<Int, std::uint64_t>> trail;
    std::uint64_t nodes = 0;

    // Deepest-prefix tracking for the single-pass find_n: the first prefix
    // reaching each new depth is the lex-least valid coloring of [1,depth].
    bool track_max = false;
    Int max_depth = 0;
    std::vector<std::int8_t> best_prefix;  // col[0..max_depth], 1-indexed

    std::uint64_t all_colors = 0;

    Engine(const FamilyParams& params, int r_, Int n_, bool sb_)
        : a(params.a), b(params.b), n(n_), r(r_), sb(sb_) {
        col.assign(static_cast<std::size_t>(n) + 2, -1);
        forb.assign(static_cast<std::size_t>(n) + 2, 0);
        umax.assign(static_cast<std::size_t>(n) + 2, -1);
        by_color.resize(static_cast<std::size_t>(r));
        trail_mark.assign(static_cast<std::size_t>(n) + 2, 0);
        trail.reserve(1024);
        all_colors = (r >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << r) - 1);
    }

    // Position m takes color c; forbid c at the third element of every
    // triple (x, m, z) whose x already has color c. Returns false when a
    // mark leaves some future position with no color at all (the current
    // prefix cannot extend past it).
    bool assign(Int m, int c) {
        col[m] = static_cast<std::int8_t>(c);
        umax[m] = std::max(umax[m - 1], static_cast<std::int8_t>(c));
        trail_mark[m] = static_cast<std::uint32_t>(trail.size());
        const std::uint64_t bit = std::uint64_t{1} << c;
        const Int slope = b - 2 * a;
        auto& stack = by_color[static_cast<std::size_t>(c)];
        stack.push_back(m);
        const std::size_t last = stack.size() - 1;  // exclude m itself
        if (slope == 0) {
            // Every partner yields the same z = 2m.
            if (2 * m <= n && last != 0 && stack.front() * a <= m - 1 &&
                !(forb[2 * m] & bit)) {
                forb[2 * m] |= bit;
                trail.emplace_back(2 * m, bit);
                if (forb[2 * m] == all_colors) return false;
            }
        } else {
            const Int xcap = (m - 1) / a;  // d = m - a*x >= 1
            std::size_t i = 0;
            if (slope < 0 && 2 * m > n) {
                // z = 2m + slope*x descends in x; skip x with z > n.
                Int xmin = (2 * m - n - slope - 1) / (-slope);
                i = static_cast<std::size_t>(
                    std::lower_bound(stack.begin(), stack.begin() + last, xmin) -
                    stack.begin());
            }
            for (; i < last; ++i) {
                Int x = stack[i];
                if (x > xcap) break;  // stack is ascending
                Int z = 2 * m + slope * x;
                if (slope > 0 && z > n) break;  // z ascending in x
                if (!(forb[z] & bit)) {
                    forb[z] |= bit;
                    trail.emplace_back(z, bit);
                    if (forb[z] == all_colors) return false;
                }
            }
        }
        return true;
    }

    void unassign(Int m) {
        const std::uint32_t mark = trail_mark[m];
        while (trail.size() > mark) {
            auto [z, bit] = trail.back();
            trail.pop_back();
            forb[z] &= ~bit;
        }
        by_color[static_cast<std::size_t>(col[m])].pop_back();
        col[m] = -1;
    }

    int color_limit(Int m) const {
        int limit = r - 1;
        if (sb) limit = std::min(limit, umax[m - 1] + 1);
        return limit;
    }

    // Depth-first search over positions [start_m, n], leaving col[] as the
    // witness on `found`. `abort_flag` (optional) requests cancellation.
    DfsResult dfs(Int start_m, std::uint64_t node_budget, const std::atomic<bool>* abort_flag) {
        std::vector<std::int8_t> cand(static_cast<std::size_t>(n) + 2, 0);
        Int m = start_m;
        for (;;) {
            if (m > n) return DfsResult::found;
            const int limit = color_limit(m);
            int c = cand[m];
            const std::uint64_t f = forb[m];
            while (c <= limit && ((f >> c) & 1)) ++c;
            if (c > limit) {
                cand[m] = 0;
                --m;
                if (m < start_m) return DfsResult::exhausted;
                int prev = col[m];
                unassign(m);
                cand[m] = static_cast<std::int8_t>(prev + 1);
                continue;
            }
            ++nodes;
            if (nodes > node_budget) return DfsResult::budget;
            if (abort_flag && nodes % kPollInterval == 0 &&
                abort_flag->load(std::memory_order_relaxed))
                return DfsResult::aborted;
            if (!assign(m, c)) {  // some future position just went dead
                unassign(m);
                cand[m] = static_cast<std::int8_t>(c + 1);
                continue;
            }
            if (track_max && m > max_depth) {
                max_depth = m;
                best_prefix.assign(col.begin(), col.begin() + m + 1);
            }
            ++m;
            cand[m] = 0;
        }
    }

    Coloring witness() const {
        std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
        for (Int m = 1; m <= n; ++m) out[static_cast<std::size_t>(m - 1)] = static_cast<std::uint8_t>(col[m]);
        return Coloring(n, r, std::move(out));
    }

    // All consistent prefixes of length `depth`, in lexicographic order.
    void enumerate_prefixes(Int depth, std::vector<std::vector<std::int8_t>>& out) {
        std::vector<std::int8_t> cur;
        cur.reserve(static_cast<std::size_t>(depth));
        enumerate_rec(1, depth, cur, out);
    }

  private:
    void enumerate_rec(Int m, Int depth, std::vector<std::int8_t>& cur,
                       std::vector<std::vector<std::int8_t>>& out) {
        if (m > depth) {
            out.push_back(cur);
            return;
        }
        const int limit = color_limit(m);
        for (int c = 0; c <= limit; ++c) {
            if ((forb[m] >> c) & 1) continue;
            ++nodes;
            if (!assign(m, c)) {
                unassign(m);
                continue;
            }
            if (track_max && m > max_depth) {
                max_depth = m;
                best_prefix.assign(col.begin(), col.begin() + m + 1);
            }
            cur.push_back(static_cast<std::int8_t>(c));
            enumerate_rec(m + 1, depth, cur, out);
            cur.pop_back();
            unassign(m);
        }
    }
};

void validate_decide_args(const FamilyParams& params, int r, Int n) {
    if (r < 1) throw std::invalid_argument("decide: need r >= 1");
    if (r > kMaxSolverColors) throw std::invalid_argument("decide: r > 64 unsupported");
    if (n < 1) throw std::invalid_argument("decide: need n >= 1");
    if (n > kMaxSolverN) throw std::invalid_argument("decide: n too large for search");
    (void)params;
}

SearchOutcome decide_serial(const FamilyParams& params, int r, Int n, const SearchConfig& cfg) {
    Engine eng(params, r, n, cfg.symmetry_breaking);
    const std::uint64_t budget =
        cfg.node_budget.value_or(std::numeric_limits<std::uint64_t>::max());
    DfsResult res = eng.dfs(1, budget, nullptr);
    SearchOutcome out;
    out.nodes = eng.nodes;
    switch (res) {
        case DfsResult::found:
            out.status = SearchStatus::colorable;
            out.witness = eng.witness();
            break;
        case DfsResult::exhausted:
            out.status = SearchStatus::unsatisfiable;
            break;
        default:
            out.status = SearchStatus::cutoff;
            break;
    }
    return out;
}

SearchOutcome decide_parallel(const FamilyParams& params, int r, Int n, const SearchConfig& cfg,
                              int width) {
    // Split the tree at a shallow depth into independent subtrees; the
    // canonical witness is the one from the least colorable subtree, so
    // higher-indexed subtrees may abort once a lower one succeeds.
    Engine root(params, r, n, cfg.symmetry_breaking);
    std::vector<std::vector<std::int8_t>> prefixes;
    const std::size_t target = static_cast<std::size_t>(8) * static_cast<std::size_t>(width);
    Int depth = 0;
    for (Int s = 1; s < n; ++s) {
        std::vector<std::vector<std::int8_t>> next;
        root.enumerate_prefixes(s, next);
        if (next.empty()) {
            SearchOutcome out;
            out.status = SearchStatus::unsatisfiable;
            out.nodes = root.nodes;
            return out;
        }
        prefixes = std::move(next);
        depth = s;
        if (prefixes.size() >= target || s >= 24) break;
    }
    if (prefixes.empty()) return decide_serial(params, r, n, cfg);

    const std::int64_t npref = static_cast<std::int64_t>(prefixes.size());
    std::atomic<std::int64_t> best_idx{npref};
    std::atomic<bool> abort_flag{false};
    std::atomic<std::uint64_t> total_nodes{root.nodes};
    std::vector<std::optional<Coloring>> found(prefixes.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(width)
    for (std::int64_t idx = 0; idx < npref; ++idx) {
        if (best_idx.load(std::memory_order_relaxed) < idx) continue;
        Engine eng(params, r, n, cfg.symmetry_breaking);
        for (Int m = 1; m <= depth; ++m) eng.assign(m, prefixes[static_cast<std::size_t>(idx)][static_cast<std::size_t>(m - 1)]);
        DfsResult res = eng.dfs(depth + 1, std::numeric_limits<std::uint64_t>::max(),
                                &abort_flag);
        total_nodes.fetch_add(eng.nodes, std::memory_order_relaxed);
        if (res == DfsResult::found) {
            found[static_cast<std::size_t>(idx)] = eng.witness();
            std::int64_t cur = best_idx.load();
            while (idx < cur && !best_idx.compare_exchange_weak(cur, idx)) {
            }
            if (best_idx.load(std::memory_order_relaxed) == 0)
                abort_flag.store(true, std::memory_order_relaxed);
        }
    }

    SearchOutcome out;
    out.nodes = total_nodes.load();
    std::int64_t winner = best_idx.load();
    if (winner < npref) {
        out.status = SearchStatus::colorable;
        out.witness = std::move(found[static_cast<std::size_t>(winner)]);
    } else {
        out.status = SearchStatus::unsatisfiable;
    }
    return out;
}

}  // namespace

SearchOutcome decide(const FamilyParams& params, int r, Int n, const SearchConfig& cfg) {
    validate_decide_args(params, r, n);
    const bool want_parallel =
        cfg.parallel_width > 1 && !cfg.node_budget.has_value() && n >= 24;
    if (!want_parallel) return decide_serial(params, r, n, cfg);
    return decide_parallel(params, r, n, cfg, cfg.parallel_width);
}

namespace {

Coloring prefix_witness(const Engine& eng, int r) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(eng.max_depth));
    for (Int m = 1; m <= eng.max_depth; ++m)
        out[static_cast<std::size_t>(m - 1)] =
            static_cast<std::uint8_t>(eng.best_prefix[static_cast<std::size_t>(m)]);
    return Coloring(eng.max_depth, r, std::move(out));
}

void validate_find_args(const FamilyParams& params, int r, const SearchConfig& cfg) {
    if (r < 1) throw std::invalid_argument("find_n: need r >= 1");
    if (r > kMaxSolverColors) throw std::invalid_argument("find_n: r > 64 unsupported");
    if (cfg.max_n < params.b + 2) throw std::invalid_argument("find_n: max_n below b + 2");
    if (cfg.max_n > kMaxSolverN) throw std::invalid_argument("find_n: max_n too large");
}

// The tree of valid prefixes does not depend on the horizon, so the scan
// can start with a small horizon and double it whenever a full coloring is
// found; constraint marking then never pays for positions far beyond the
// depth actually reached.
Int first_horizon(const FamilyParams& params, Int max_n) {
    return std::min(max_n, std::max<Int>(4 * (params.b + 2), 32));
}

FindResult find_n_single(const FamilyParams& params, int r, const SearchConfig& cfg) {
    std::uint64_t budget =
        cfg.node_budget.value_or(std::numeric_limits<std::uint64_t>::max());
    FindResult out;
    for (Int horizon = first_horizon(params, cfg.max_n);; horizon = std::min(2 * horizon, cfg.max_n)) {
        Engine eng(params, r, horizon, cfg.symmetry_breaking);
        eng.track_max = true;
        DfsResult res = eng.dfs(1, budget, nullptr);
        out.nodes += eng.nodes;
        budget -= std::min(budget, eng.nodes);
        switch (res) {
            case DfsResult::found:
                if (horizon == cfg.max_n) {
                    out.colorable_up_to = cfg.max_n;
                    out.last_witness = eng.witness();
                    return out;
                }
                continue;  // colorable through this horizon; widen it
            case DfsResult::exhausted:
                out.value = eng.max_depth + 1;
                out.colorable_up_to = eng.max_depth;
                out.last_witness = prefix_witness(eng, r);
                return out;
            default:
                out.budget_cutoff = true;
                out.colorable_up_to = eng.max_depth;
                if (eng.max_depth >= 1) out.last_witness = prefix_witness(eng, r);
                return out;
        }
    }
}

struct RoundOutcome {
    bool complete = false;  // some coloring of [1,horizon] exists
    Int max_depth = 0;
    std::optional<Coloring> witness;  // complete coloring or deepest prefix
    std::uint64_t nodes = 0;
};

RoundOutcome find_round_parallel(const FamilyParams& params, int r, Int horizon, bool sb,
                                 int width) {
    RoundOutcome round;
    Engine root(params, r, horizon, sb);
    root.track_max = true;
    std::vector<std::vector<std::int8_t>> prefixes;
    const std::size_t target = static_cast<std::size_t>(8) * static_cast<std::size_t>(width);
    Int depth = 0;
    for (Int s = 1; s < horizon; ++s) {
        std::vector<std::vector<std::int8_t>> next;
        root.enumerate_prefixes(s, next);
        if (next.empty()) {
            round.nodes = root.nodes;
            round.max_depth = root.max_depth;
            if (root.max_depth >= 1) round.witness = prefix_witness(root, r);
            return round;
        }
        prefixes = std::move(next);
        depth = s;
        if (prefixes.size() >= target || s >= 24) break;
    }

    struct SubResult {
        Int max_depth = 0;
        std::optional<Coloring> deepest;   // lex-first prefix of max_depth
        std::optional<Coloring> complete;  // full coloring of [1,horizon]
    };
    const std::int64_t npref = static_cast<std::int64_t>(prefixes.size());
    std::vector<SubResult> subs(prefixes.size());
    std::atomic<std::int64_t> complete_idx{npref};
    std::atomic<bool> abort_flag{false};
    std::atomic<std::uint64_t> total_nodes{root.nodes};

#pragma omp parallel for schedule(dynamic, 1) num_threads(width)
    for (std::int64_t idx = 0; idx < npref; ++idx) {
        if (complete_idx.load(std::memory_order_relaxed) < idx) continue;
        Engine eng(params, r, horizon, sb);
        for (Int m = 1; m <= depth; ++m)
            eng.assign(m, prefixes[static_cast<std::size_t>(idx)][static_cast<std::size_t>(m - 1)]);
        eng.track_max = true;
        eng.max_depth = depth;
        eng.best_prefix.assign(eng.col.begin(), eng.col.begin() + depth + 1);
        DfsResult res =
            eng.dfs(depth + 1, std::numeric_limits<std::uint64_t>::max(), &abort_flag);
        total_nodes.fetch_add(eng.nodes, std::memory_order_relaxed);
        SubResult& sub = subs[static_cast<std::size_t>(idx)];
        sub.max_depth = eng.max_depth;
        sub.deepest = prefix_witness(eng, r);
        if (res == DfsResult::found) {
            sub.complete = eng.witness();
            std::int64_t cur = complete_idx.load();
            while (idx < cur && !complete_idx.compare_exchange_weak(cur, idx)) {
            }
            if (complete_idx.load(std::memory_order_relaxed) == 0)
                abort_flag.store(true, std::memory_order_relaxed);
        }
    }

    round.nodes = total_nodes.load();
    const std::int64_t winner = complete_idx.load();
    if (winner < npref) {
        round.complete = true;
        round.max_depth = horizon;
        round.witness = std::move(subs[static_cast<std::size_t>(winner)].complete);
        return round;
    }
    Int best = depth;
    std::int64_t best_idx = 0;
    for (std::int64_t idx = 0; idx < npref; ++idx) {
        if (subs[static_cast<std::size_t>(idx)].max_depth > best) {
            best = subs[static_cast<std::size_t>(idx)].max_depth;
            best_idx = idx;
        }
    }
    round.max_depth = best;
    round.witness = std::move(subs[static_cast<std::size_t>(best_idx)].deepest);
    return round;
}

FindResult find_n_parallel(const FamilyParams& params, int r, const SearchConfig& cfg,
                           int width) {
    FindResult out;
    for (Int horizon = first_horizon(params, cfg.max_n);; horizon = std::min(2 * horizon, cfg.max_n)) {
        RoundOutcome round = find_round_parallel(params, r, horizon, cfg.symmetry_breaking, width);
        out.nodes += round.nodes;
        if (round.complete) {
            if (horizon == cfg.max_n) {
                out.colorable_up_to = cfg.max_n;
                out.last_witness = std::move(round.witness);
                return out;
            }
            continue;
        }
        out.value = round.max_depth + 1;
        out.colorable_up_to = round.max_depth;
        out.last_witness = std::move(round.witness);
        return out;
    }
}

}  // namespace

FindResult find_n(const FamilyParams& params, int r, const SearchConfig& cfg) {
    validate_find_args(params, r, cfg);
    const bool want_parallel =
        cfg.parallel_width > 1 && !cfg.node_budget.has_value() && cfg.max_n >= 24;
    if (!want_parallel) return find_n_single(params, r, cfg);
    return find_n_parallel(params, r, cfg, cfg.parallel_width);
}

FindResult find_n_restart(const FamilyParams& params, int r, const SearchConfig& cfg) {
    validate_find_args(params, r, cfg);
    FindResult result;
    std::uint64_t budget_left =
        cfg.node_budget.value_or(std::numeric_limits<std::uint64_t>::max());
    for (Int n = params.b + 2; n <= cfg.max_n; ++n) {
        SearchConfig step = cfg;
        step.parallel_width = 1;
        step.node_budget = cfg.node_budget ? std::optional<std::uint64_t>(budget_left)
                                           : std::nullopt;
        SearchOutcome out = decide(params, r, n, step);
        result.nodes += out.nodes;
        if (cfg.node_budget) budget_left -= std::min<std::uint64_t>(budget_left, out.nodes);
        if (out.status == SearchStatus::cutoff) {
            result.colorable_up_to = n - 1;
            result.budget_cutoff = true;
            return result;
        }
        if (out.status == SearchStatus::unsatisfiable) {
            result.value = n;
            result.colorable_up_to = n - 1;
            return result;
        }
        result.colorable_up_to = n;
        result.last_witness = std::move(out.witness);
    }
    return result;  // still colorable at max_n
}

bool brute_force_decide(const FamilyParams& params, int r, Int n) {
    if (r < 1 || n < 1) throw std::invalid_argument("brute_force_decide: need r, n >= 1");
    double total = 1.0;
    for (Int i = 0; i < n; ++i) {
        total *= r;
        if (total > double(1 << 24)) throw std::invalid_argument("brute_force_decide: r^n > 2^24");
    }
    const std::vector<Triple> triples = enumerate_triples(params, n);
    std::vector<std::uint8_t> col(static_cast<std::size_t>(n), 0);
    for (;;) {
        bool mono = false;
        for (const Triple& t : triples) {
            std::uint8_t c = col[static_cast<std::size_t>(t.x - 1)];
            if (c == col[static_cast<std::size_t>(t.y - 1)] && c == col[static_cast<std::size_t>(t.z - 1)]) {
                mono = true;
                break;
            }
        }
        if (!mono) return true;
        // next coloring (odometer, base r)
        Int i = 0;
        while (i < n) {
            if (++col[static_cast<std::size_t>(i)] < r) break;
            col[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == n) return false;
    }
}

}  // namespace vdw
