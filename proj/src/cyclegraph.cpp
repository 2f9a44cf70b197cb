#include "laconic/cyclegraph.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "laconic/ramus.hpp"

namespace laconic::cyclegraph {

namespace {

// Reduce any integer position to its representative in 1..n.
int mod1(int t, int n) {
  int r = t % n;
  if (r <= 0) r += n;
  return r;
}

// The seven-case table with I the larger endpoint: zero when the endpoints
// agree; at the top bilevel only the absent-over-present orientation
// counts (2), at the bottom bilevel only present-over-absent (2); interior
// mixed edges count 1.
inline int psi_core(bool upper_in, bool lower_in, int upper_level, int i,
                    int k) {
  if (upper_in == lower_in) return 0;
  if (upper_level == i + k) return upper_in ? 0 : 2;
  if (upper_level == i + 2) return upper_in ? 2 : 0;
  return 1;
}

int classify3(bool mid_in, int wings_in, int base) {
  if (!mid_in) return base + 4;
  if (wings_in == 2) return base + 1;
  if (wings_in == 1) return base + 2;
  return base + 3;
}

}  // namespace

CyclicPerm::CyclicPerm(std::vector<int> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  if (n < 1) throw std::invalid_argument("CyclicPerm: empty ordering");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  int pos_of_1 = -1;
  for (int idx = 0; idx < n; ++idx) {
    const int v = order_[idx];
    if (v < 1 || v > n || seen[v])
      throw std::invalid_argument("CyclicPerm: not a permutation of 1..n");
    seen[v] = 1;
    if (v == 1) pos_of_1 = idx;
  }
  std::rotate(order_.begin(), order_.begin() + pos_of_1, order_.end());
}

CyclicPerm CyclicPerm::identity(int n) {
  if (n < 1) throw std::invalid_argument("CyclicPerm: n must be positive");
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) order[v - 1] = v;
  return CyclicPerm(std::move(order));
}

std::vector<CyclicPerm> CyclicPerm::enumerate_all(int n, int cap_n) {
  if (n < 1) throw std::invalid_argument("CyclicPerm: n must be positive");
  if (n > cap_n)
    throw CapExceeded("CyclicPerm::enumerate_all: n = " + std::to_string(n) +
                      " exceeds the cap " + std::to_string(cap_n));
  std::vector<int> rest;
  for (int v = 2; v <= n; ++v) rest.push_back(v);
  std::vector<CyclicPerm> out;
  do {
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    order.push_back(1);
    order.insert(order.end(), rest.begin(), rest.end());
    out.push_back(CyclicPerm(std::move(order)));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

CyclicPerm CyclicPerm::random_perm(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("CyclicPerm: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<int> rest;
  for (int v = 2; v <= n; ++v) rest.push_back(v);
  for (int idx = static_cast<int>(rest.size()) - 1; idx > 0; --idx) {
    const int jdx = static_cast<int>(rng() % static_cast<std::uint64_t>(idx + 1));
    std::swap(rest[idx], rest[jdx]);
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  order.push_back(1);
  order.insert(order.end(), rest.begin(), rest.end());
  return CyclicPerm(std::move(order));
}

int CyclicPerm::at(int pos) const { return order_[mod1(pos, n()) - 1]; }

int IntervalLattice::id_of(int s, int t) const {
  const int nn = n();
  if (s < 1 || s > nn - 1)
    throw std::out_of_range("IntervalLattice: level outside 1..n-1");
  return 1 + (s - 1) * nn + (mod1(t, nn) - 1);
}

int IntervalLattice::t_of(int id) const {
  const int nn = n();
  if (id < 1 || id > nn * (nn - 1))
    throw std::out_of_range("IntervalLattice: not a proper-interval id");
  return (id - 1) % nn + 1;
}

IntervalLattice build_interval_lattice(const CyclicPerm& sigma) {
  const int n = sigma.n();
  if (n > lattice::kMaxGroundN)
    throw std::invalid_argument("build_interval_lattice: ground set too large");
  std::vector<Mask> masks;
  masks.reserve(static_cast<std::size_t>(n) * (n - 1) + 2);
  masks.push_back(0);
  for (int s = 1; s <= n - 1; ++s) {
    for (int t = 1; t <= n; ++t) {
      Mask m = 0;
      for (int j = 1; j <= s; ++j) m |= Mask{1} << (sigma.at(t + j) - 1);
      masks.push_back(m);
    }
  }
  masks.push_back((Mask{1} << n) - 1);
  return IntervalLattice{sigma,
                         cover_dag::CoverDag::from_masks(n, std::move(masks))};
}

ExactInt phi_weight(Mask F, int n) {
  if (n < 1 || n > lattice::kMaxGroundN)
    throw std::invalid_argument("phi_weight: bad ground-set size");
  const Mask full = (Mask{1} << n) - 1;
  if (F & ~full)
    throw std::invalid_argument("phi_weight: set outside the ground set");
  if (F == 0 || F == full) return ExactInt(n);
  return ramus::binomial(n, lattice::set_size(F));
}

std::pair<ExactInt, ExactInt> double_count(const SetFamily& family,
                                           int cap_n) {
  const int n = family.ground_n();
  if (n > cap_n)
    throw CapExceeded("double_count: n = " + std::to_string(n) +
                      " exceeds the enumeration cap " + std::to_string(cap_n));
  ExactInt lhs(0u);
  for (const CyclicPerm& sigma : CyclicPerm::enumerate_all(n, cap_n)) {
    const IntervalLattice lat = build_interval_lattice(sigma);
    for (int id = 0; id < lat.dag.node_count(); ++id) {
      const Mask m = lat.mask_of(id);
      if (family.contains(m)) lhs += phi_weight(m, n);
    }
  }
  ExactInt fact(1u);
  for (int j = 2; j <= n; ++j) fact *= ExactInt(j);
  const ExactInt rhs =
      ExactInt(static_cast<unsigned long long>(family.size())) * fact;
  return {lhs, rhs};
}

long long LevelProfile::total() const {
  long long sum = 0;
  for (int v : x) sum += v;
  return sum;
}

LevelProfile level_profile(const IntervalLattice& lat,
                           const SetFamily& family) {
  if (family.ground_n() != lat.n())
    throw std::invalid_argument("level_profile: ground-set size mismatch");
  LevelProfile p;
  p.x.assign(static_cast<std::size_t>(lat.n()) + 1, 0);
  for (int id = 0; id < lat.dag.node_count(); ++id)
    if (family.contains(lat.mask_of(id))) ++p.x[lat.level_of(id)];
  return p;
}

std::vector<char> membership_vector(const IntervalLattice& lat,
                                    const SetFamily& family) {
  if (family.ground_n() != lat.n())
    throw std::invalid_argument("membership_vector: ground-set size mismatch");
  std::vector<char> present(static_cast<std::size_t>(lat.dag.node_count()), 0);
  for (int id = 0; id < lat.dag.node_count(); ++id)
    present[id] = family.contains(lat.mask_of(id)) ? 1 : 0;
  return present;
}

int psi_weight(const IntervalLattice& lat, const std::vector<char>& present,
               int upper, int lower, int i, int k) {
  if (k < 3) throw std::invalid_argument("psi_weight: k must be at least 3");
  if (i < 0 || i + k > lat.n())
    throw std::domain_error("psi_weight: window outside the lattice levels");
  if (present.size() != static_cast<std::size_t>(lat.dag.node_count()))
    throw std::invalid_argument("psi_weight: membership vector size mismatch");
  if (upper < 0 || upper >= lat.dag.node_count() || lower < 0 ||
      lower >= lat.dag.node_count())
    throw std::out_of_range("psi_weight: node id out of range");
  const auto& kids = lat.dag.children[upper];
  if (std::find(kids.begin(), kids.end(), lower) == kids.end())
    throw std::domain_error("psi_weight: not a cover edge");
  const int lev = lat.level_of(upper);
  if (lev < i + 2 || lev > i + k)
    throw std::domain_error("psi_weight: edge outside the level window");
  return psi_core(present[upper] != 0, present[lower] != 0, lev, i, k);
}

int psi_weight(const IntervalLattice& lat, const SetFamily& family, int upper,
               int lower, int i, int k) {
  return psi_weight(lat, membership_vector(lat, family), upper, lower, i, k);
}

std::vector<YkAnchor> enumerate_yk_anchors(const IntervalLattice& lat, int k) {
  const int n = lat.n();
  if (k < 3 || k > n)
    throw std::invalid_argument("enumerate_yk_anchors: need 3 <= k <= n");
  std::vector<YkAnchor> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    YkAnchor a;
    a.j = j;
    a.elements.push_back(lat.id_empty());
    for (int s = 1; s <= k - 2; ++s) a.elements.push_back(lat.id_of(s, j));
    const int p = lat.id_of(k - 1, j);
    const int q = lat.id_of(k - 1, j - 1);
    a.elements.push_back(std::min(p, q));
    a.elements.push_back(std::max(p, q));
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<XkStructure> enumerate_xk(const IntervalLattice& lat, int i,
                                      int k) {
  const int n = lat.n();
  if (k < 3) throw std::invalid_argument("enumerate_xk: k must be at least 3");
  if (i < 0 || i > n - k - 1)
    throw std::invalid_argument(
        "enumerate_xk: window base outside 0..n-k-1");
  std::vector<XkStructure> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int variant = 0; variant < 2; ++variant) {
    const bool left = variant == 0;
    for (int t = 1; t <= n; ++t) {
      XkStructure x;
      x.left = left;
      x.i = i;
      x.t = t;
      std::vector<int> els;
      els.reserve(static_cast<std::size_t>(k) + 2);
      if (left) {
        els.push_back(lat.id_of(i + 1, t + 1));
        els.push_back(lat.id_of(i + 1, t));
        for (int j = 2; j <= k; ++j) els.push_back(lat.id_of(i + j, t));
        els.push_back(lat.id_of(i + k, t - 1));
      } else {
        els.push_back(lat.id_of(i + 1, t - 1));
        els.push_back(lat.id_of(i + 1, t));
        for (int j = 2; j <= k; ++j) els.push_back(lat.id_of(i + j, t - j + 1));
        els.push_back(lat.id_of(i + k, t - k + 2));
      }
      std::sort(els.begin(), els.end());
      if (std::adjacent_find(els.begin(), els.end()) != els.end())
        throw std::logic_error("enumerate_xk: repeated element");
      x.elements = els;
      for (int u : els) {
        for (int v : lat.dag.children[u])
          if (std::binary_search(els.begin(), els.end(), v))
            x.edges.emplace_back(u, v);
      }
      if (static_cast<int>(x.edges.size()) != k + 1)
        throw std::logic_error("enumerate_xk: unexpected edge count");
      std::vector<int> bottom, fork_mid, cherry_mid, top;
      for (int id : els) {
        const int lev = lat.level_of(id);
        if (lev == i + 1) bottom.push_back(id);
        if (lev == i + 2) fork_mid.push_back(id);
        if (lev == i + k - 1) cherry_mid.push_back(id);
        if (lev == i + k) top.push_back(id);
      }
      if (bottom.size() != 2 || top.size() != 2 || fork_mid.size() != 1 ||
          cherry_mid.size() != 1)
        throw std::logic_error("enumerate_xk: malformed structure");
      x.fork = {fork_mid[0], bottom[0], bottom[1]};
      x.cherry = {cherry_mid[0], top[0], top[1]};
      out.push_back(std::move(x));
    }
  }
  return out;
}

int classify_cherry(const XkStructure& x, const std::vector<char>& present) {
  const int wings = (present.at(x.cherry[1]) ? 1 : 0) +
                    (present.at(x.cherry[2]) ? 1 : 0);
  return classify3(present.at(x.cherry[0]) != 0, wings, 0);
}

int classify_fork(const XkStructure& x, const std::vector<char>& present) {
  const int wings =
      (present.at(x.fork[1]) ? 1 : 0) + (present.at(x.fork[2]) ? 1 : 0);
  return classify3(present.at(x.fork[0]) != 0, wings, 4);
}

int classify_cherry(const IntervalLattice& lat, const XkStructure& x,
                    const SetFamily& family) {
  return classify_cherry(x, membership_vector(lat, family));
}

int classify_fork(const IntervalLattice& lat, const XkStructure& x,
                  const SetFamily& family) {
  return classify_fork(x, membership_vector(lat, family));
}

namespace {

WindowAudit audit_window_impl(const IntervalLattice& lat,
                              const std::vector<char>& present,
                              const std::vector<int>& x, int i, int k,
                              const std::vector<XkStructure>& structures) {
  const int n = lat.n();
  WindowAudit a;
  a.i = i;
  for (int lev = i + 2; lev <= i + k; ++lev) {
    const int base = 1 + (lev - 1) * n;  // id of the first level-lev interval
    for (int off = 0; off < n; ++off) {
      const int u = base + off;
      for (int v : lat.dag.children[u])
        a.t_psi += psi_core(present[u] != 0, present[v] != 0, lev, i, k);
    }
  }
  a.per_xk_claim_ok = true;
  for (const XkStructure& xk : structures) {
    long long changed = 0;
    for (const auto& [u, v] : xk.edges) {
      const int w =
          psi_core(present[u] != 0, present[v] != 0, lat.level_of(u), i, k);
      changed += w == 2 ? 1 : w;
    }
    a.t_changed_xk += changed;
    long long mid = 0;
    for (int id : xk.elements) {
      const int lev = lat.level_of(id);
      if ((lev == i + 2 || lev == i + k - 1) && present[id]) ++mid;
    }
    if (changed < mid) a.per_xk_claim_ok = false;
  }
  long long deficit = 0;
  for (int h = i + 1; h <= i + k; ++h) deficit += n - x[h];
  a.upper_bound = 4 * deficit - 2 * (n - x[i + 2]) - 2 * (n - x[i + k - 1]);
  a.lower_bound = 2LL * (x[i + 2] + x[i + k - 1]);
  a.identity_ok = a.t_psi == a.t_changed_xk;
  a.upper_ok = a.t_psi <= a.upper_bound;
  a.lower_ok = a.t_psi >= a.lower_bound;
  return a;
}

}  // namespace

WindowAudit audit_psi_window(const IntervalLattice& lat,
                             const std::vector<char>& present, int i, int k) {
  const int n = lat.n();
  if (k < 3)
    throw std::invalid_argument("audit_psi_window: k must be at least 3");
  if (i < 0 || i > n - k - 1)
    throw std::invalid_argument(
        "audit_psi_window: window base outside 0..n-k-1");
  if (present.size() != static_cast<std::size_t>(lat.dag.node_count()))
    throw std::invalid_argument(
        "audit_psi_window: membership vector size mismatch");
  std::vector<int> x(static_cast<std::size_t>(n) + 1, 0);
  for (int id = 0; id < lat.dag.node_count(); ++id)
    if (present[id]) ++x[lat.level_of(id)];
  return audit_window_impl(lat, present, x, i, k, enumerate_xk(lat, i, k));
}

PsiAuditSummary audit_psi_exhaustive(const IntervalLattice& lat, int k,
                                     int max_elements) {
  const int n = lat.n();
  if (k < 3 || k > n)
    throw std::invalid_argument("audit_psi_exhaustive: need 3 <= k <= n");
  if (lat.dag.node_count() > max_elements)
    throw CapExceeded("audit_psi_exhaustive: lattice has " +
                      std::to_string(lat.dag.node_count()) +
                      " elements, cap is " + std::to_string(max_elements));
  std::vector<std::vector<XkStructure>> structures;
  for (int i = 0; i + k + 1 <= n; ++i)
    structures.push_back(enumerate_xk(lat, i, k));
  PsiAuditSummary sum;
  struct Obs {
    const IntervalLattice& lat;
    const std::vector<std::vector<XkStructure>>& structures;
    int k;
    PsiAuditSummary& sum;
    std::vector<char> present;
    void on_add(const cover_dag::AdmissibleState&, int v) { present[v] = 1; }
    void on_remove(const cover_dag::AdmissibleState&, int v) {
      present[v] = 0;
    }
    void on_leaf(const cover_dag::AdmissibleState& st) {
      ++sum.families;
      for (std::size_t i = 0; i < structures.size(); ++i) {
        const WindowAudit a =
            audit_window_impl(lat, present, st.level_counts(),
                              static_cast<int>(i), k, structures[i]);
        ++sum.windows;
        sum.all_identity_ok = sum.all_identity_ok && a.identity_ok;
        sum.all_upper_ok = sum.all_upper_ok && a.upper_ok;
        sum.all_claim_ok = sum.all_claim_ok && a.per_xk_claim_ok;
        sum.all_lower_ok = sum.all_lower_ok && a.lower_ok;
      }
    }
  } obs{lat, structures, k, sum,
        std::vector<char>(static_cast<std::size_t>(lat.dag.node_count()), 0)};
  cover_dag::EnumStats stats;
  cover_dag::enumerate_admissible(lat.dag, k, obs, stats);
  return sum;
}

namespace {

IntervalLattice lattice_for(int n, const VerifyOptions& opts) {
  if (opts.sigma && opts.sigma->n() != n)
    throw std::invalid_argument("verify: sigma length differs from n");
  IntervalLattice lat = build_interval_lattice(
      opts.sigma ? *opts.sigma : CyclicPerm::identity(n));
  if (lat.dag.node_count() > opts.max_elements)
    throw CapExceeded("verify: lattice has " +
                      std::to_string(lat.dag.node_count()) +
                      " elements, cap is " + std::to_string(opts.max_elements));
  return lat;
}

template <typename LeafFn>
cover_dag::EnumStats for_each_admissible(const cover_dag::CoverDag& dag, int k,
                                         LeafFn&& fn) {
  struct Obs {
    LeafFn& fn;
    void on_add(const cover_dag::AdmissibleState&, int) {}
    void on_remove(const cover_dag::AdmissibleState&, int) {}
    void on_leaf(const cover_dag::AdmissibleState& st) { fn(st); }
  } obs{fn};
  cover_dag::EnumStats stats;
  cover_dag::enumerate_admissible(dag, k, obs, stats);
  return stats;
}

void require_params(const char* who, int n, int k) {
  if (k < 3 || k > n)
    throw std::invalid_argument(std::string(who) + ": need 3 <= k <= n");
}

}  // namespace

VerifyReport verify_lemma1(int n, int k, const VerifyOptions& opts) {
  require_params("verify_lemma1", n, k);
  const IntervalLattice lat = lattice_for(n, opts);
  VerifyReport r;
  r.lemma = "lemma1";
  r.n = n;
  r.k = k;
  r.sigma_order = lat.sigma.order();
  const long long bound = static_cast<long long>(k - 1) * n;
  r.bound = ExactInt(static_cast<unsigned long long>(bound));
  long long best = -1;
  const auto stats = for_each_admissible(
      lat.dag, k, [&](const cover_dag::AdmissibleState& st) {
        const std::vector<int>& x = st.level_counts();
        long long window = 0;
        for (int j = 0; j < k; ++j) window += x[j];
        long long fam_max = window;
        for (int i = 1; i + k - 1 <= n; ++i) {
          window += x[i + k - 1] - x[i - 1];
          if (window > fam_max) fam_max = window;
        }
        if (fam_max > best) {
          best = fam_max;
          r.witness_family.emplace(n, st.member_masks());
        }
      });
  r.max_attained = ExactInt(static_cast<unsigned long long>(best));
  r.violated = best > bound;
  r.families_enumerated = stats.leaves;
  r.pruned = stats.pruned_subtrees;
  r.status = r.violated ? "violated" : "ok";
  return r;
}

VerifyReport verify_lemma2(int n, int k, const VerifyOptions& opts) {
  require_params("verify_lemma2", n, k);
  const IntervalLattice lat = lattice_for(n, opts);
  VerifyReport r;
  r.lemma = "lemma2";
  r.n = n;
  r.k = k;
  r.sigma_order = lat.sigma.order();
  const long long target = static_cast<long long>(k - 1) * n;
  const long long bound = target - n / 2;
  r.bound = ExactInt(static_cast<unsigned long long>(bound));
  long long best = -1;
  const auto stats = for_each_admissible(
      lat.dag, k, [&](const cover_dag::AdmissibleState& st) {
        const std::vector<int>& x = st.level_counts();
        long long window = 0;
        for (int j = 1; j <= k; ++j) window += x[j];
        if (x[0] == 1 && window == target) {
          ++r.premise_count_bottom;
          long long conclusion = 0;
          for (int j = 0; j <= k - 1; ++j) conclusion += x[j];
          if (conclusion > best) {
            best = conclusion;
            r.witness_family.emplace(n, st.member_masks());
          }
        }
        window = 0;
        for (int j = n - k; j <= n - 1; ++j) window += x[j];
        if (x[n] == 1 && window == target) {
          ++r.premise_count_top;
          long long conclusion = 0;
          for (int j = n - k + 1; j <= n; ++j) conclusion += x[j];
          if (conclusion > best) {
            best = conclusion;
            r.witness_family.emplace(n, st.member_masks());
          }
        }
      });
  r.premise_satisfied = r.premise_count_bottom + r.premise_count_top > 0;
  if (r.premise_satisfied) {
    r.max_attained = ExactInt(static_cast<unsigned long long>(best));
    r.violated = best > bound;
  }
  r.families_enumerated = stats.leaves;
  r.pruned = stats.pruned_subtrees;
  r.status = r.violated
                 ? "violated"
                 : (r.premise_satisfied ? "ok" : "premise never satisfied");
  return r;
}

VerifyReport verify_theorem9(int n, int k, const VerifyOptions& opts) {
  require_params("verify_theorem9", n, k);
  const IntervalLattice lat = lattice_for(n, opts);
  VerifyReport r;
  r.lemma = "theorem9";
  r.n = n;
  r.k = k;
  r.sigma_order = lat.sigma.order();
  const ramus::RamusParams params(n, k);
  r.bound = ExactInt(n) * (ExactInt::pow2(static_cast<unsigned int>(n)) -
                           ramus::lacunary_sum(n, k, params.m())) +
            ExactInt(n - 1);
  std::vector<long long> bin(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j)
    bin[j] = static_cast<long long>(ramus::binomial(n, j).to_u64());
  long long best = -1;
  const auto stats = for_each_admissible(
      lat.dag, k, [&](const cover_dag::AdmissibleState& st) {
        const std::vector<int>& x = st.level_counts();
        long long value = static_cast<long long>(n) * (x[0] + x[n]);
        for (int j = 1; j <= n - 1; ++j) value += bin[j] * x[j];
        if (value > best) {
          best = value;
          r.witness_family.emplace(n, st.member_masks());
        }
      });
  r.max_attained = ExactInt(static_cast<unsigned long long>(best));
  r.violated = *r.max_attained > r.bound;
  r.families_enumerated = stats.leaves;
  r.pruned = stats.pruned_subtrees;
  r.status = r.violated ? "violated" : "ok";
  return r;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["lemma"] = lemma;
  j["n"] = n;
  j["k"] = k;
  j["sigma"] = sigma_order;
  j["bound"] = bound.str();
  if (max_attained)
    j["max_attained"] = max_attained->str();
  else
    j["max_attained"] = nullptr;
  j["premise_satisfied"] = premise_satisfied;
  j["premise_count_bottom"] = premise_count_bottom;
  j["premise_count_top"] = premise_count_top;
  j["violated"] = violated;
  j["status"] = status;
  j["families_enumerated"] = families_enumerated;
  j["pruned"] = pruned;
  if (witness_family) {
    nlohmann::json members = nlohmann::json::array();
    for (const Mask m : witness_family->members())
      members.push_back(lattice::render_set(m));
    j["witness_family"] = std::move(members);
  } else {
    j["witness_family"] = nullptr;
  }
  return j.dump();
}

std::vector<LevelProfile> enumerate_admissible_profiles(
    const IntervalLattice& lat, int k, int max_elements) {
  require_params("enumerate_admissible_profiles", lat.n(), k);
  if (lat.dag.node_count() > max_elements)
    throw CapExceeded("enumerate_admissible_profiles: lattice has " +
                      std::to_string(lat.dag.node_count()) +
                      " elements, cap is " + std::to_string(max_elements));
  std::set<std::vector<int>> seen;
  for_each_admissible(lat.dag, k,
                      [&](const cover_dag::AdmissibleState& st) {
                        seen.insert(st.level_counts());
                      });
  std::vector<LevelProfile> out;
  out.reserve(seen.size());
  for (const std::vector<int>& x : seen) out.push_back(LevelProfile{x});
  return out;
}

}  // namespace laconic::cyclegraph
