#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "laconic/lattice.hpp"

namespace laconic::cover_dag {

using lattice::Mask;
using lattice::set_size;

// A leveled DAG whose edges are the cover relations of a family of subsets of
// [n] ranked by size: u -> v is an edge iff u is contained in v and
// |v| = |u| + 1.  Both the full Boolean lattice and the interval lattice of a
// cyclic permutation have the property that *every* containment between
// members of consecutive sizes is a cover edge, so admissibility of a
// subfamily (absence of the two forbidden configurations) can be decided
// entirely through this adjacency.
struct CoverDag {
    int n = 0;                               // ground-set size
    std::vector<Mask> masks;                 // node -> subset mask, level-major order
    std::vector<int> levels;                 // node -> set size
    std::vector<std::vector<int>> children;  // covers one level below, ascending node id
    std::vector<std::vector<int>> parents;   // covers one level above, ascending node id

    int node_count() const { return static_cast<int>(masks.size()); }

    // All 2^n subsets of [n].  Requires 1 <= n <= 20 (structural cap; search
    // feasibility is governed separately by the caller's element cap).
    static CoverDag boolean_lattice(int n);

    // Generic builder from an explicit node list.  `masks` must be in
    // level-major order (sizes non-decreasing; any order within a level) and
    // free of duplicates; edges are computed by containment tests between
    // adjacent levels.  The given order becomes the node-id order.
    static CoverDag from_masks(int n, std::vector<Mask> masks);
};

// Incrementally maintained admissibility state for DFS over the nodes of a
// CoverDag in level-major node order (node 0, 1, ..., N-1).  Members may only
// be added in strictly increasing node-id order and removed in the reverse
// order (stack discipline), which the two DFS drivers below obey.
//
// Detection invariant: under level-major addition order, every forbidden
// configuration is completed exactly when its last element is added -- for the
// ladder-up pattern that is the later of the two top sets, for the ladder-down
// pattern the top of the chain.  try_add therefore rejects the first element
// whose addition would complete a copy, and a rejected add leaves the state
// untouched.
class AdmissibleState {
  public:
    AdmissibleState(const CoverDag& dag, int k);

    // Attempts to add node v.  Returns false (state unchanged) if the
    // addition would complete a forbidden configuration.
    bool try_add(int v);

    // Removes node v, which must be the most recently added member.
    void remove(int v);

    bool present(int v) const { return present_[v] != 0; }
    int member_count() const { return member_count_; }
    // Number of members at each level, indexed 0..n.
    const std::vector<int>& level_counts() const { return level_counts_; }
    const CoverDag& dag() const { return *dag_; }
    int forbidden_k() const { return k_; }

    // Masks of the current members in node order.
    std::vector<Mask> member_masks() const;
    // Node ids of the current members in ascending order.
    std::vector<int> member_nodes() const;

  private:
    const CoverDag* dag_;
    int k_;
    std::vector<int8_t> present_;
    std::vector<int> down_;           // longest consecutive-level member chain ending here
    std::vector<int> chain_to_pair_;  // longest member chain down to a >=2-member-children node
    std::vector<int> parent_count_;   // number of present cover-parents
    std::vector<int> level_counts_;
    int member_count_ = 0;
};

struct EnumStats {
    std::uint64_t leaves = 0;            // admissible families enumerated
    std::uint64_t pruned_subtrees = 0;   // include-branches cut at a completed copy
    std::uint64_t nodes = 0;             // DFS tree nodes visited
};

// Exhaustive enumeration of every admissible subfamily of `dag` (each family
// visited exactly once, as a leaf of the include/exclude decision tree).
// Observer requirements:
//   void on_add(const AdmissibleState&, int node);
//   void on_remove(const AdmissibleState&, int node);
//   void on_leaf(const AdmissibleState&);
// on_add fires after the node joined, on_remove before it leaves.
template <typename Observer>
void enumerate_admissible(const CoverDag& dag, int k, Observer&& obs, EnumStats& stats) {
    AdmissibleState state(dag, k);
    const int total = dag.node_count();
    auto rec = [&](auto&& self, int idx) -> void {
        ++stats.nodes;
        if (idx == total) {
            ++stats.leaves;
            obs.on_leaf(state);
            return;
        }
        if (state.try_add(idx)) {
            obs.on_add(state, idx);
            self(self, idx + 1);
            obs.on_remove(state, idx);
            state.remove(idx);
        } else {
            ++stats.pruned_subtrees;
        }
        self(self, idx + 1);
    };
    rec(rec, 0);
}

struct MaximizeOptions {
    int workers = 1;
    // Claimed upper bound for confirmation runs: branches stop once the
    // incumbent reaches it, and the result is flagged early_stopped.
    std::optional<std::uint64_t> prune_bound;
    std::optional<double> max_seconds;
    // Optional feasible family (node ids) used to seed the incumbent, e.g. a
    // known construction; must be admissible.
    std::vector<int> seed_nodes;
    // Decision depth at which the DFS is split into tasks.  Fixed per run so
    // that results are byte-identical for every worker count.
    int task_depth = 10;
};

struct MaximizeResult {
    std::uint64_t best = 0;
    std::vector<int> witness_nodes;  // ascending node ids
    std::uint64_t nodes_explored = 0;
    std::uint64_t tasks = 0;
    bool early_stopped = false;
    bool completed = true;  // false iff max_seconds expired before exhaustion
    double elapsed_seconds = 0.0;
};

// Exact maximum of sum(values[v] for v in family) over admissible subfamilies,
// by include-first branch-and-bound with a suffix-capacity bound.  The DFS is
// deterministically partitioned into tasks at a fixed depth; each task runs
// with a task-local incumbent seeded from the global greedy/seed value, and
// results merge in task order, so best, witness and nodes_explored do not
// depend on the worker count.
MaximizeResult maximize_admissible(const CoverDag& dag, int k,
                                   const std::vector<std::uint64_t>& values,
                                   const MaximizeOptions& opts);

}  // namespace laconic::cover_dag
