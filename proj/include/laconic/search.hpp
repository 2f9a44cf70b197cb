#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "laconic/cover_dag.hpp"
#include "laconic/cyclegraph.hpp"
#include "laconic/exact_int.hpp"
#include "laconic/lattice.hpp"

// Exact branch-and-bound optimization over admissible families: the largest
// admissible subfamily of the full subset lattice, and the weighted-profile
// optimum over admissible subfamilies of an interval lattice.  Both searches
// are exhaustive up to provably-safe pruning, never heuristic, and return a
// witness family attaining the optimum.

namespace laconic::search {

using cyclegraph::CapExceeded;
using lattice::SetFamily;

enum class SearchMode { full_lattice, interval_lattice };

struct SearchConfig {
  int n = 0;
  int k = 0;
  SearchMode mode = SearchMode::full_lattice;

  // Claimed upper bound for confirmation runs.  When supplied, branches stop
  // once the incumbent reaches it and the result is labeled; the reported
  // optimum is unchanged whenever the claim really is an upper bound.  Never
  // consulted by default: the optimum is the quantity under test.
  std::optional<ExactInt> prune_bound;

  int worker_count = 1;

  // Recorded for the run report only.  The branch order (level-major node
  // order, include before exclude) is already total, so there are no ties
  // for a seed to break and results never depend on it.
  std::uint64_t deterministic_seed = 0;

  // Cap on the number of lattice elements the search may enumerate over:
  // 2^n in full mode, n(n-1)+2 in interval mode.  The default admits the
  // full lattice through n = 5 (best effort; n <= 4 is quick) and interval
  // lattices through n = 6.
  int max_elements = 32;

  // Optional wall-clock budget.  An expired budget is reported via
  // SearchResult::completed = false; the optimum is then only a lower bound.
  std::optional<double> max_seconds;

  // Interval mode only: the cyclic ordering whose interval lattice is
  // searched; the identity ordering when absent.  The optimum is invariant
  // under this choice.
  std::optional<std::vector<int>> sigma_order;
};

struct SearchResult {
  ExactInt optimum;
  SetFamily witness;  // admissible; attains the optimum when completed
  std::uint64_t nodes_explored = 0;
  std::uint64_t tasks = 0;
  bool early_stopped = false;  // a supplied bound closed the search early
  bool completed = true;       // false iff the time budget expired first
  double elapsed_seconds = 0.0;
  std::string note;  // labels non-default runs (confirmation bound, budget)

  // Machine-readable record.  Timing lives beside, not inside, the record so
  // that payloads compare byte-for-byte across runs and worker counts.
  std::string to_json() const;
};

// Largest admissible family of subsets of [n]: exhaustive include-first
// branch-and-bound over the full subset lattice in level-major order with a
// suffix-capacity prune.  For k >= 3 the incumbent is seeded with the
// excluded-class construction, so the search only has to certify optimality.
// The result is identical for every worker_count.
// Errors: invalid_argument for k < 2, bad mode, or bad worker count;
// CapExceeded when 2^n exceeds the element cap.
SearchResult exact_lac(const SearchConfig& config);

// Maximum of the weighted profile objective
//   n * (x_0 + x_n) + sum_i C(n, i) * x_i
// over admissible subfamilies of the interval lattice, the quantity whose
// exhaustive bound the window verifiers certify.  Same determinism and
// seeding contract as exact_lac.
// Errors: invalid_argument for k < 2 or bad mode; CapExceeded when
// n(n-1)+2 exceeds the element cap.
SearchResult exact_interval_optimum(const SearchConfig& config);

// Closed-form optimum the searches confirm: 2^n - S(n, k, m) with
// m = (n-k+1)/2 for 3 <= k <= n, and 2^(n-1) for k = 2, n >= 3.  The one
// in-range pair without a closed form of this shape is (n, k) = (2, 2),
// whose true optimum is 3; it throws domain_error so callers present it
// explicitly rather than report a wrong formula value.
ExactInt closed_form_optimum(int n, int k);

}  // namespace laconic::search
