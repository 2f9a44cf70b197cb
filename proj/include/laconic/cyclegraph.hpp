#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laconic/cover_dag.hpp"
#include "laconic/exact_int.hpp"
#include "laconic/lattice.hpp"

namespace laconic::cyclegraph {

using lattice::Mask;
using lattice::SetFamily;

// Thrown when an exhaustive operation would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cyclic ordering a_1, ..., a_n of [n], stored in the canonical rotation
// with a_1 = 1, so that two orderings equal up to rotation normalize to the
// same representative. There are (n-1)! distinct values for each n.
class CyclicPerm {
 public:
  explicit CyclicPerm(std::vector<int> order);

  static CyclicPerm identity(int n);

  // All (n-1)! distinct cyclic permutations, ordered lexicographically in
  // canonical form. cap_n guards the factorial growth.
  static std::vector<CyclicPerm> enumerate_all(int n, int cap_n = 8);

  // Deterministic pseudo-random ordering for isomorphism spot checks.
  static CyclicPerm random_perm(int n, std::uint64_t seed);

  int n() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }

  // a_pos, with the 1-based position taken cyclically (any integer).
  int at(int pos) const;

  friend bool operator==(const CyclicPerm& a, const CyclicPerm& b) = default;

 private:
  std::vector<int> order_;
};

// The lattice of intervals along sigma: the empty set, the full set, and
// the n(n-1) proper intervals I_t^s = {a_{t+1}, ..., a_{t+s}}. Node ids are
// level-major: 0 is the empty set, 1 + (s-1)n + (t-1) is I_t^s for
// 1 <= s <= n-1, 1 <= t <= n, and the last id is the full set. In these
// ids the cover structure is the same for every sigma -- only the masks
// depend on the ordering -- which is what makes single-sigma exhaustion
// sound and lets isomorphism tests compare everything except masks.
struct IntervalLattice {
  CyclicPerm sigma;
  cover_dag::CoverDag dag;

  int n() const { return sigma.n(); }
  int id_empty() const { return 0; }
  int id_full() const { return dag.node_count() - 1; }

  // 1 <= s <= n-1; t may be any integer and is reduced mod n into 1..n.
  int id_of(int s, int t) const;
  // The canonical t in 1..n of a proper-interval node id.
  int t_of(int id) const;

  int level_of(int id) const { return dag.levels[id]; }
  Mask mask_of(int id) const { return dag.masks[id]; }
};

IntervalLattice build_interval_lattice(const CyclicPerm& sigma);

// Weight of one set in the permutation double count: n for the empty and
// full set, C(n, |F|) for everything else.
ExactInt phi_weight(Mask F, int n);

// Sums phi_weight over every (sigma, member interval) incidence and pairs
// it with the closed form |family| * n!. The two are equal because a set of
// size s in neither extreme level is an interval of exactly s!(n-s)!
// orderings. Enumerates all (n-1)! cyclic permutations, so cap_n guards it.
std::pair<ExactInt, ExactInt> double_count(const SetFamily& family,
                                           int cap_n = 8);

// x_i = number of level-i lattice elements belonging to the tested family.
struct LevelProfile {
  std::vector<int> x;  // size n+1

  int n() const { return static_cast<int>(x.size()) - 1; }
  long long total() const;
};

LevelProfile level_profile(const IntervalLattice& lat, const SetFamily& family);

// Membership indicator over lattice node ids, the form the edge-weight and
// structure classifiers consume.
std::vector<char> membership_vector(const IntervalLattice& lat,
                                    const SetFamily& family);

// The seven-case edge weight of the window double count over levels
// i+1..i+k. upper/lower must form a cover edge inside the window; with I
// the larger endpoint: 0 when both or neither endpoint is present; at the
// top bilevel (|I| = i+k) a present lower under an absent upper counts 2
// and the opposite mixed orientation 0; at the bottom bilevel (|I| = i+2)
// a present upper over an absent lower counts 2 and the opposite 0; every
// interior mixed edge counts 1.
int psi_weight(const IntervalLattice& lat, const std::vector<char>& present,
               int upper, int lower, int i, int k);
int psi_weight(const IntervalLattice& lat, const SetFamily& family, int upper,
               int lower, int i, int k);

// The rooted pattern copy anchored at residue j: the chain
// {empty, I_j^1, ..., I_j^{k-2}} plus the two parents of its top,
// I_j^{k-1} and I_{j-1}^{k-1}. The n anchors jointly cover each element of
// levels 1..k-2 exactly once.
struct YkAnchor {
  int j = 0;
  std::vector<int> elements;  // k+1 node ids, level-ascending
};

std::vector<YkAnchor> enumerate_yk_anchors(const IntervalLattice& lat, int k);

// One of the 2n chain-with-ends structures of a window: k+2 elements in
// levels i+1..i+k carrying k+1 cover edges (two fork edges at the bottom,
// a chain, and one extra cherry edge at the top). The cherry is the
// level-(i+k-1) middle with its two level-(i+k) wings; the fork is the
// level-(i+2) middle with its two level-(i+1) wings.
struct XkStructure {
  bool left = true;  // which of the two displayed variants
  int i = 0;         // window base: elements live in levels i+1..i+k
  int t = 0;         // rotation base, 1..n
  std::vector<int> elements;               // k+2 node ids, level-ascending
  std::vector<std::pair<int, int>> edges;  // (upper, lower), k+1 edges
  std::array<int, 3> cherry{};             // {middle, wing, wing}
  std::array<int, 3> fork{};               // {middle, wing, wing}
};

// All 2n structures of window i (n per variant). Requires k >= 3 and
// 0 <= i <= n-k-1. For k >= 4 their edge multisets cover each boundary
// bilevel edge twice and each interior edge once; for k = 3 both bilevels
// are boundary and are covered twice.
std::vector<XkStructure> enumerate_xk(const IntervalLattice& lat, int i,
                                      int k);

// Cherry types 1-4: 1 when the middle element and both wings are present,
// 2 exactly one wing, 3 no wing, 4 middle absent (wings not
// distinguished). Fork types 5-8 classify the same way one zone down.
int classify_cherry(const XkStructure& x, const std::vector<char>& present);
int classify_fork(const XkStructure& x, const std::vector<char>& present);
int classify_cherry(const IntervalLattice& lat, const XkStructure& x,
                    const SetFamily& family);
int classify_fork(const IntervalLattice& lat, const XkStructure& x,
                  const SetFamily& family);

// One window's double-count audit: T as the direct edge sum of psi, the
// same total reassembled from changed weights (2 -> 1) over the 2n
// structures, and the two counting bounds. The identity and the upper
// bound hold for every membership vector; the per-structure claim (changed
// edge sum >= present mid-level elements) and the resulting lower bound
// are guarantees for admissible families only.
struct WindowAudit {
  int i = 0;
  long long t_psi = 0;
  long long t_changed_xk = 0;
  long long upper_bound = 0;
  long long lower_bound = 0;  // 2(x_{i+2} + x_{i+k-1})
  bool identity_ok = false;
  bool upper_ok = false;
  bool per_xk_claim_ok = false;
  bool lower_ok = false;
};

WindowAudit audit_psi_window(const IntervalLattice& lat,
                             const std::vector<char>& present, int i, int k);

// Runs audit_psi_window on every admissible subfamily and every middle
// window 0 <= i <= n-k-1, folding the per-window flags.
struct PsiAuditSummary {
  std::uint64_t families = 0;
  std::uint64_t windows = 0;
  bool all_identity_ok = true;
  bool all_upper_ok = true;
  bool all_claim_ok = true;
  bool all_lower_ok = true;
};

PsiAuditSummary audit_psi_exhaustive(const IntervalLattice& lat, int k,
                                     int max_elements = 24);

// Exhaustive verification drivers. Each enumerates every admissible
// subfamily of the interval lattice for one sigma (identity by default;
// all sigmas give isomorphic lattices) and checks the stated inequality,
// reporting the maximum attained and the first family attaining it.
struct VerifyOptions {
  std::optional<CyclicPerm> sigma;  // defaults to the identity ordering
  int max_elements = 24;            // lattice node-count cap for exhaustion
};

struct VerifyReport {
  std::string lemma;  // "lemma1" | "lemma2" | "theorem9"
  int n = 0;
  int k = 0;
  std::vector<int> sigma_order;
  ExactInt bound;
  std::optional<ExactInt> max_attained;  // empty iff no family qualified
  bool premise_satisfied = true;         // lemma2 only; true elsewhere
  std::uint64_t premise_count_bottom = 0;
  std::uint64_t premise_count_top = 0;
  bool violated = false;
  std::optional<SetFamily> witness_family;  // first attaining the maximum
  std::uint64_t families_enumerated = 0;
  std::uint64_t pruned = 0;
  std::string status;  // "ok" | "violated" | "premise never satisfied"

  bool passed() const { return !violated; }
  std::string to_json() const;  // single-line machine-readable record
};

// Window sums: every x_i + ... + x_{i+k-1} <= (k-1)n, i = 0..n-k+1.
VerifyReport verify_lemma1(int n, int k, const VerifyOptions& opts = {});

// Conditional boundary strengthening: when x_0 = 1 and x_1+...+x_k =
// (k-1)n, then x_0+...+x_{k-1} <= (k-1)n - floor(n/2); dually at the top.
VerifyReport verify_lemma2(int n, int k, const VerifyOptions& opts = {});

// Weighted objective: |{empty, full} ∩ G|*n + sum C(n,i) x_i over
// 1 <= i <= n-1 stays <= n(2^n - S(n,k,m)) + n - 1.
VerifyReport verify_theorem9(int n, int k, const VerifyOptions& opts = {});

// All distinct level profiles of admissible subfamilies, sorted
// lexicographically. Feeds profile-level certification downstream.
std::vector<LevelProfile> enumerate_admissible_profiles(
    const IntervalLattice& lat, int k, int max_elements = 24);

}  // namespace laconic::cyclegraph
