#include "laconic/cover_dag.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <thread>

namespace laconic::cover_dag {

using lattice::kMaxGroundN;

namespace {

void check_level_major(const std::vector<Mask>& masks, int n) {
    const Mask full = (Mask{1} << n) - 1;
    for (size_t i = 0; i < masks.size(); ++i) {
        if ((masks[i] & ~full) != 0) {
            throw std::invalid_argument("node mask uses elements outside the ground set");
        }
        if (i > 0 && set_size(masks[i - 1]) > set_size(masks[i])) {
            throw std::invalid_argument("node masks must be in level-major order");
        }
    }
    std::vector<Mask> sorted = masks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate node mask");
    }
}

}  // namespace

CoverDag CoverDag::boolean_lattice(int n) {
    if (n < 1 || n > 16) {
        throw std::invalid_argument("boolean_lattice requires 1 <= n <= 16");
    }
    const size_t count = size_t{1} << n;
    std::vector<Mask> masks;
    masks.reserve(count);
    for (Mask m = 0; m < (Mask{1} << n); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](Mask a, Mask b) {
        const int sa = set_size(a), sb = set_size(b);
        return sa != sb ? sa < sb : a < b;
    });
    CoverDag dag;
    dag.n = n;
    dag.masks = std::move(masks);
    dag.levels.resize(static_cast<int>(count));
    dag.children.resize(count);
    dag.parents.resize(count);
    std::vector<int> id_of(count);
    for (int v = 0; v < static_cast<int>(count); ++v) {
        dag.levels[v] = set_size(dag.masks[v]);
        id_of[dag.masks[v]] = v;
    }
    for (int v = 0; v < static_cast<int>(count); ++v) {
        const Mask m = dag.masks[v];
        for (int b = 0; b < n; ++b) {
            if (m & (Mask{1} << b)) dag.children[v].push_back(id_of[m ^ (Mask{1} << b)]);
        }
        std::sort(dag.children[v].begin(), dag.children[v].end());
        for (int u : dag.children[v]) dag.parents[u].push_back(v);
    }
    // Nodes are visited in ascending id order above, so parent lists are sorted.
    return dag;
}

CoverDag CoverDag::from_masks(int n, std::vector<Mask> masks) {
    if (n < 1 || n > kMaxGroundN) {
        throw std::invalid_argument("ground-set size out of range");
    }
    check_level_major(masks, n);
    CoverDag dag;
    dag.n = n;
    dag.masks = std::move(masks);
    const int total = dag.node_count();
    dag.levels.resize(total);
    dag.children.resize(total);
    dag.parents.resize(total);
    // Level boundaries: nodes are level-major, so each level is a contiguous range.
    std::vector<int> level_begin(static_cast<size_t>(n) + 2, total);
    for (int v = total - 1; v >= 0; --v) {
        dag.levels[v] = set_size(dag.masks[v]);
        level_begin[dag.levels[v]] = v;
    }
    for (int lev = n; lev >= 0; --lev) {
        if (level_begin[lev] == total && level_begin[lev + 1] != total) {
            level_begin[lev] = level_begin[lev + 1];
        }
    }
    for (int v = 0; v < total; ++v) {
        const int lev = dag.levels[v];
        if (lev == 0) continue;
        for (int u = level_begin[lev - 1]; u < level_begin[lev]; ++u) {
            if ((dag.masks[u] & ~dag.masks[v]) == 0) {
                dag.children[v].push_back(u);
                dag.parents[u].push_back(v);
            }
        }
    }
    return dag;
}

AdmissibleState::AdmissibleState(const CoverDag& dag, int k) : dag_(&dag), k_(k) {
    if (k < 2) throw std::invalid_argument("forbidden-pattern parameter k must be >= 2");
    const size_t total = static_cast<size_t>(dag.node_count());
    present_.assign(total, 0);
    down_.assign(total, 0);
    chain_to_pair_.assign(total, 0);
    parent_count_.assign(total, 0);
    level_counts_.assign(static_cast<size_t>(dag.n) + 1, 0);
}

bool AdmissibleState::try_add(int v) {
    const auto& kids = dag_->children[v];
    int down_v = 1;
    int present_children = 0;
    int ctp_v = 0;
    for (int u : kids) {
        if (!present_[u]) continue;
        ++present_children;
        // Ladder-up completion: u tops a full-length consecutive chain and v
        // would be its second cover-parent in the family.
        if (down_[u] >= k_ - 1 && parent_count_[u] >= 1) return false;
        if (down_[u] + 1 > down_v) down_v = down_[u] + 1;
        if (chain_to_pair_[u] > 0 && chain_to_pair_[u] + 1 > ctp_v) {
            ctp_v = chain_to_pair_[u] + 1;
        }
    }
    if (present_children >= 2 && ctp_v < 1) ctp_v = 1;
    // Ladder-down completion: from v a consecutive member chain of length k-1
    // reaches a member with two member children.
    if (ctp_v >= k_ - 1) return false;
    present_[v] = 1;
    down_[v] = down_v;
    chain_to_pair_[v] = ctp_v;
    for (int u : kids) ++parent_count_[u];
    ++level_counts_[dag_->levels[v]];
    ++member_count_;
    return true;
}

void AdmissibleState::remove(int v) {
    present_[v] = 0;
    for (int u : dag_->children[v]) --parent_count_[u];
    --level_counts_[dag_->levels[v]];
    --member_count_;
}

std::vector<Mask> AdmissibleState::member_masks() const {
    std::vector<Mask> out;
    out.reserve(static_cast<size_t>(member_count_));
    for (int v = 0; v < dag_->node_count(); ++v) {
        if (present_[v]) out.push_back(dag_->masks[v]);
    }
    return out;
}

std::vector<int> AdmissibleState::member_nodes() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(member_count_));
    for (int v = 0; v < dag_->node_count(); ++v) {
        if (present_[v]) out.push_back(v);
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct TaskOutcome {
    std::uint64_t best = 0;
    std::vector<int> witness;  // empty = no strict improvement over the seed
    std::uint64_t nodes = 0;
    bool early_stopped = false;
    bool completed = true;
};

struct BranchSearcher {
    const CoverDag& dag;
    int k;
    const std::vector<std::uint64_t>& values;
    const std::vector<std::uint64_t>& suffix;
    std::uint64_t bound = 0;
    bool has_bound = false;
    bool has_deadline = false;
    Clock::time_point deadline{};

    AdmissibleState state;
    std::uint64_t current = 0;
    TaskOutcome out;

    BranchSearcher(const CoverDag& d, int kk, const std::vector<std::uint64_t>& vals,
                   const std::vector<std::uint64_t>& suf)
        : dag(d), k(kk), values(vals), suffix(suf), state(d, kk) {}

    void run(int idx) {
        ++out.nodes;
        if (has_deadline && (out.nodes & 0xFFF) == 0 && Clock::now() > deadline) {
            out.completed = false;
            return;
        }
        if (has_bound && out.best >= bound) {
            out.early_stopped = true;
            return;
        }
        if (current + suffix[idx] <= out.best) return;  // cannot strictly improve
        if (idx == dag.node_count()) {
            out.best = current;
            out.witness = state.member_nodes();
            return;
        }
        if (state.try_add(idx)) {
            current += values[idx];
            run(idx + 1);
            current -= values[idx];
            state.remove(idx);
            if (!out.completed) return;
            if (has_bound && out.best >= bound) {
                out.early_stopped = true;
                return;
            }
        }
        run(idx + 1);
    }
};

}  // namespace

MaximizeResult maximize_admissible(const CoverDag& dag, int k,
                                   const std::vector<std::uint64_t>& values,
                                   const MaximizeOptions& opts) {
    const int total = dag.node_count();
    if (static_cast<int>(values.size()) != total) {
        throw std::invalid_argument("one value per dag node is required");
    }
    std::uint64_t value_sum = 0;
    for (std::uint64_t w : values) {
        if (w > (std::uint64_t{1} << 62) || value_sum > (std::uint64_t{1} << 62)) {
            throw std::invalid_argument("node values too large for exact 64-bit accumulation");
        }
        value_sum += w;
    }
    const auto started = Clock::now();
    MaximizeResult result;

    // suffix[i] = total value of nodes i..N-1: the capacity bound for pruning.
    std::vector<std::uint64_t> suffix(static_cast<size_t>(total) + 1, 0);
    for (int i = total - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + values[i];

    // Greedy first leaf: include-first in node order; always feasible.
    std::uint64_t seed_best = 0;
    std::vector<int> seed_witness;
    {
        AdmissibleState greedy(dag, k);
        for (int v = 0; v < total; ++v) {
            if (greedy.try_add(v)) {
                seed_best += values[v];
                seed_witness.push_back(v);
            }
        }
    }
    // Caller-provided feasible family (e.g. a known construction) may beat it.
    if (!opts.seed_nodes.empty()) {
        std::vector<int> seed_nodes = opts.seed_nodes;
        std::sort(seed_nodes.begin(), seed_nodes.end());
        seed_nodes.erase(std::unique(seed_nodes.begin(), seed_nodes.end()), seed_nodes.end());
        AdmissibleState replay(dag, k);
        std::uint64_t seed_value = 0;
        for (int v : seed_nodes) {
            if (v < 0 || v >= total) throw std::invalid_argument("seed node id out of range");
            if (!replay.try_add(v)) {
                throw std::invalid_argument("seed family is not admissible");
            }
            seed_value += values[v];
        }
        if (seed_value > seed_best) {
            seed_best = seed_value;
            seed_witness = std::move(seed_nodes);
        }
    }
    result.best = seed_best;
    result.witness_nodes = seed_witness;

    if (opts.prune_bound && seed_best >= *opts.prune_bound) {
        // The seed already meets the claimed upper bound: the sandwich closes
        // with no search at all.
        result.early_stopped = true;
        result.tasks = 0;
        result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
        return result;
    }

    const bool has_deadline = opts.max_seconds.has_value();
    const auto deadline =
        has_deadline ? started + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(*opts.max_seconds))
                     : Clock::time_point{};

    // Deterministic task partition: enumerate admissible include/exclude
    // prefixes of the first `depth` nodes.  depth depends only on the dag and
    // fixed options, never on worker count or timing.
    const int depth = (total > opts.task_depth + 4) ? std::min(opts.task_depth, 62) : 0;
    std::vector<std::uint64_t> task_prefixes;
    std::uint64_t prefix_nodes = 0;
    {
        AdmissibleState state(dag, k);
        std::uint64_t current = 0;
        auto rec = [&](auto&& self, int idx, std::uint64_t chosen) -> void {
            ++prefix_nodes;
            if (current + suffix[idx] <= seed_best) return;  // no leaf here improves
            if (idx == depth) {
                task_prefixes.push_back(chosen);
                return;
            }
            if (state.try_add(idx)) {
                current += values[idx];
                self(self, idx + 1, chosen | (std::uint64_t{1} << idx));
                current -= values[idx];
                state.remove(idx);
            }
            self(self, idx + 1, chosen);
        };
        rec(rec, 0, 0);
    }
    result.tasks = task_prefixes.size();

    std::vector<TaskOutcome> outcomes(task_prefixes.size());
    std::atomic<size_t> next_task{0};
    auto run_tasks = [&]() {
        for (;;) {
            const size_t t = next_task.fetch_add(1);
            if (t >= task_prefixes.size()) break;
            BranchSearcher searcher(dag, k, values, suffix);
            searcher.has_bound = opts.prune_bound.has_value();
            if (searcher.has_bound) searcher.bound = *opts.prune_bound;
            searcher.has_deadline = has_deadline;
            searcher.deadline = deadline;
            searcher.out.best = seed_best;  // task-local incumbent
            const std::uint64_t prefix = task_prefixes[t];
            bool ok = true;
            for (int v = 0; v < depth; ++v) {
                if (prefix & (std::uint64_t{1} << v)) {
                    if (!searcher.state.try_add(v)) {
                        ok = false;
                        break;
                    }
                    searcher.current += values[v];
                }
            }
            if (!ok) throw std::logic_error("task prefix unexpectedly inadmissible");
            searcher.run(depth);
            outcomes[t] = std::move(searcher.out);
        }
    };
    const int workers = std::max(1, opts.workers);
    if (workers == 1 || task_prefixes.size() <= 1) {
        run_tasks();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_tasks);
        for (auto& th : pool) th.join();
    }

    // Merge in task order: byte-identical results for every worker count.
    result.nodes_explored = prefix_nodes;
    for (const TaskOutcome& out : outcomes) {
        result.nodes_explored += out.nodes;
        if (!out.completed) result.completed = false;
        if (out.early_stopped) result.early_stopped = true;
        if (out.best > result.best) {
            result.best = out.best;
            result.witness_nodes = out.witness;
        }
    }
    result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return result;
}

}  // namespace laconic::cover_dag
