#include "laconic/ramus.hpp"

#include <memory>
#include <stdexcept>

namespace laconic::ramus {

namespace {

const ExactInt kZero{};

int floor_mod(int a, int k) {
  int r = a % k;
  return r < 0 ? r + k : r;
}

// Per-thread cache, grown monotonically. Thread-local keeps the public
// functions free of shared mutable state.
const PascalTable& cached_table(int need_n) {
  thread_local std::unique_ptr<PascalTable> table;
  if (!table || table->max_n() < need_n) {
    int grow = table ? table->max_n() * 2 : 64;
    table = std::make_unique<PascalTable>(std::max(need_n, grow));
  }
  return *table;
}

void check_nk(int n, int k) {
  if (k < 2 || n < k)
    throw std::invalid_argument("require 2 <= k <= n, got n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
}

}  // namespace

PascalTable::PascalTable(int max_n) {
  if (max_n < 0) throw std::invalid_argument("PascalTable: max_n < 0");
  rows_.resize(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    rows_[n].resize(n + 1);
    rows_[n][0] = 1;
    rows_[n][n] = 1;
    for (int i = 1; i < n; ++i)
      rows_[n][i] = rows_[n - 1][i - 1] + rows_[n - 1][i];
  }
}

const ExactInt& PascalTable::choose(int n, int i) const {
  if (n < 0 || n > max_n())
    throw std::out_of_range("PascalTable: n out of range");
  if (i < 0 || i > n) return kZero;
  return rows_[n][i];
}

RamusParams::RamusParams(int n_, int k_) : n(n_), k(k_) { check_nk(n, k); }

ExactInt binomial(int n, int i) {
  if (n < 0) throw std::invalid_argument("binomial: n < 0");
  return cached_table(n).choose(n, i);
}

ExactInt lacunary_sum(const PascalTable& t, int n, int k, int r) {
  check_nk(n, k);
  ExactInt s;
  for (int i = floor_mod(r, k); i <= n; i += k) s += t.choose(n, i);
  return s;
}

ExactInt truncated_lacunary_sum(const PascalTable& t, int n, int k, int z) {
  check_nk(n, k);
  if (z < 0) return ExactInt{};
  ExactInt s;
  int top = std::min(z, n);
  // Terms share z's residue class; walk down from the largest admissible i.
  int start = top - (top - floor_mod(z, k)) % k;
  for (int i = start; i >= 0; i -= k) s += t.choose(n, i);
  return s;
}

ExactInt weight(const PascalTable& t, const RamusParams& p, int i) {
  if (i < 0 || i > p.n - p.k + 1) return ExactInt{};
  if (i <= p.m())
    return truncated_lacunary_sum(t, p.n, p.k, i) -
           truncated_lacunary_sum(t, p.n, p.k, i - 1);
  int z = p.n - i - p.k + 1;
  return truncated_lacunary_sum(t, p.n, p.k, z) -
         truncated_lacunary_sum(t, p.n, p.k, z - 1);
}

ExactInt lacunary_sum(int n, int k, int r) {
  check_nk(n, k);
  return lacunary_sum(cached_table(n), n, k, r);
}

ExactInt truncated_lacunary_sum(int n, int k, int z) {
  check_nk(n, k);
  return truncated_lacunary_sum(cached_table(n), n, k, z);
}

ExactInt weight(const RamusParams& p, int i) {
  return weight(cached_table(p.n), p, i);
}

IdentityReport verify_sum_identities(int n, int k) {
  check_nk(n, k);
  PascalTable t(n);
  RamusParams p(n, k);
  const int m = p.m();
  IdentityReport rep{n, k, {}};
  auto fail = [&rep](const char* clause, int index) {
    rep.violations.push_back({clause, index});
  };

  auto trunc = [&](int z) { return truncated_lacunary_sum(t, n, k, z); };
  auto full = [&](int r) { return lacunary_sum(t, n, k, r); };
  auto w = [&](int s) { return weight(t, p, s); };

  // Truncated-sum identities, including the out-of-range sentinel zone.
  for (int z = -2 * k; z < 0; ++z)
    if (!trunc(z).is_zero()) fail("truncated-negative", z);
  for (int z = 0; z <= std::min(k - 1, n); ++z)
    if (trunc(z) != t.choose(n, z)) fail("truncated-base", z);
  for (int z = 0; z <= n; ++z) {
    if (trunc(z) != trunc(z - k) + t.choose(n, z)) fail("truncated-shift", z);
    if (trunc(z) + trunc(n - k - z) != full(z)) fail("truncated-split", z);
    if (trunc(z - k) + trunc(n - k - z) + t.choose(n, z) != full(z))
      fail("truncated-complement", z);
  }

  // Weight identities.
  for (int s = -k; s < 0; ++s)
    if (!w(s).is_zero()) fail("weight-support", s);
  for (int s = n - k + 2; s <= n + k; ++s)
    if (!w(s).is_zero()) fail("weight-support", s);
  for (int s = 0; s <= n - k + 1; ++s)
    if (w(s).is_zero()) fail("weight-positive", s);

  const ExactInt sm = full(m);
  for (int s = 0; s <= n; ++s) {
    ExactInt window;
    for (int i = s - k + 1; i <= s; ++i) window += w(i);
    if (s <= m || s >= m + k) {
      if (window != t.choose(n, s)) fail("window-sum", s);
    } else {
      // Both sides stay nonnegative: move S(n,k,s) across.
      if (window + full(s) != sm + t.choose(n, s)) fail("window-sum-mid", s);
    }
  }

  ExactInt total;
  for (int i = 0; i <= n - k + 1; ++i) total += w(i);
  if (total != sm) fail("weight-total", 0);

  return rep;
}

MinResidueReport verify_min_residue(int n, int k) {
  check_nk(n, k);
  PascalTable t(n);
  RamusParams p(n, k);
  MinResidueReport rep;
  rep.n = n;
  rep.k = k;
  rep.m = p.m();
  rep.residue_sums.reserve(k);
  for (int r = 0; r < k; ++r)
    rep.residue_sums.push_back(lacunary_sum(t, n, k, r));
  rep.min_value = rep.residue_sums[0];
  for (int r = 1; r < k; ++r)
    if (rep.residue_sums[r] < rep.min_value) rep.min_value = rep.residue_sums[r];
  for (int r = 0; r < k; ++r)
    if (rep.residue_sums[r] == rep.min_value) rep.argmin.push_back(r);
  for (int r : rep.argmin)
    if (r == rep.m % k) rep.m_in_argmin = true;
  return rep;
}

}  // namespace laconic::ramus
