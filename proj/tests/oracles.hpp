#pragma once

// Independent reference implementations used only by tests. Deliberately
// naive: the point is a second route to every answer, sharing as little
// machinery with the library as possible.

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "laconic/exact_int.hpp"

namespace oracle {

using laconic::ExactInt;

inline ExactInt binomial(int n, int i) {
  if (i < 0 || i > n) return ExactInt{};
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, i);
  return ExactInt::from_decimal(b.get_str());
}

inline ExactInt lacunary(int n, int k, int r) {
  ExactInt s;
  int rr = ((r % k) + k) % k;
  for (int i = rr; i <= n; i += k) s += binomial(n, i);
  return s;
}

inline ExactInt truncated(int n, int k, int z) {
  ExactInt s;
  if (z < 0) return s;
  for (int i = ((z % k) + k) % k; i <= std::min(z, n); i += k)
    s += binomial(n, i);
  return s;
}

// Pattern check by direct enumeration of (k+1)-subsets of the family.
// A "ladder up" is a chain of k-1 members with consecutive sizes plus two
// distinct members one size above its top; "ladder down" is the mirror.
inline bool subset_is_chain(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    if (std::popcount(v[i]) + 1 != std::popcount(v[i + 1])) return false;
    if ((v[i] & ~v[i + 1]) != 0) return false;  // not a subset
  }
  return true;
}

inline bool has_ladder_up(const std::vector<std::uint64_t>& fam, int k) {
  const int c = k + 1;
  const int nmem = static_cast<int>(fam.size());
  if (nmem < c) return false;
  std::vector<int> idx(c);
  for (int i = 0; i < c; ++i) idx[i] = i;
  while (true) {
    // Examine fam[idx[0..c-1]], sorted by (size, mask): the candidate chain
    // is pick[0..k-2], the candidate pair pick[k-1], pick[k].
    std::vector<std::uint64_t> pick;
    for (int i : idx) pick.push_back(fam[i]);
    std::sort(pick.begin(), pick.end(), [](std::uint64_t a, std::uint64_t b) {
      if (std::popcount(a) != std::popcount(b))
        return std::popcount(a) < std::popcount(b);
      return a < b;
    });
    bool ok = true;
    int s0 = std::popcount(pick[0]);
    for (int i = 0; i < k - 1; ++i)
      if (std::popcount(pick[i]) != s0 + i) ok = false;
    if (std::popcount(pick[k - 1]) != s0 + k - 1 ||
        std::popcount(pick[k]) != s0 + k - 1)
      ok = false;
    for (int i = 0; ok && i + 2 < k; ++i)
      if ((pick[i] & ~pick[i + 1]) != 0) ok = false;  // chain containment
    std::uint64_t top = pick[k - 2];
    if (ok && (top & ~pick[k - 1]) == 0 && (top & ~pick[k]) == 0 &&
        pick[k - 1] != pick[k])
      return true;
    // next combination
    int j = c - 1;
    while (j >= 0 && idx[j] == nmem - c + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int l = j + 1; l < c; ++l) idx[l] = idx[l - 1] + 1;
  }
  return false;
}

inline bool has_ladder_down(const std::vector<std::uint64_t>& fam, int n,
                            int k) {
  std::vector<std::uint64_t> comp;
  comp.reserve(fam.size());
  const std::uint64_t all = (n == 64) ? ~0ull : ((1ull << n) - 1);
  for (auto m : fam) comp.push_back(all & ~m);
  return has_ladder_up(comp, k);
}

inline bool admissible(const std::vector<std::uint64_t>& fam, int n, int k) {
  return !has_ladder_up(fam, k) && !has_ladder_down(fam, n, k);
}

// Exhaustive optimum over all subfamilies of the given ground list.
// Only usable when ground.size() <= ~20.
struct BruteBest {
  std::size_t best_count = 0;
  std::vector<std::uint64_t> witness;
};

inline BruteBest brute_largest_admissible(
    const std::vector<std::uint64_t>& ground, int n, int k) {
  BruteBest out;
  const int g = static_cast<int>(ground.size());
  for (std::uint64_t fm = 0; fm < (1ull << g); ++fm) {
    auto cnt = static_cast<std::size_t>(std::popcount(fm));
    if (cnt <= out.best_count) continue;
    std::vector<std::uint64_t> mem;
    for (int i = 0; i < g; ++i)
      if (fm >> i & 1) mem.push_back(ground[i]);
    if (admissible(mem, n, k)) {
      out.best_count = cnt;
      out.witness = mem;
    }
  }
  return out;
}

inline std::vector<std::uint64_t> all_subsets(int n) {
  std::vector<std::uint64_t> v(std::size_t{1} << n);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  std::sort(v.begin(), v.end(), [](std::uint64_t a, std::uint64_t b) {
    if (std::popcount(a) != std::popcount(b))
      return std::popcount(a) < std::popcount(b);
    return a < b;
  });
  return v;
}

// Random family over [n]: each subset kept with probability num/den.
inline std::vector<std::uint64_t> random_family(int n, std::mt19937_64& rng,
                                                int num = 1, int den = 2,
                                                std::size_t max_members = ~0ull) {
  std::vector<std::uint64_t> fam;
  for (std::uint64_t m = 0; m < (1ull << n); ++m)
    if (rng() % den < static_cast<std::uint64_t>(num)) fam.push_back(m);
  if (fam.size() > max_members) {
    std::shuffle(fam.begin(), fam.end(), rng);
    fam.resize(max_members);
    std::sort(fam.begin(), fam.end());
  }
  return fam;
}

}  // namespace oracle
