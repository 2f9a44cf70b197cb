#pragma once

#include <string>
#include <vector>

#include "laconic/exact_int.hpp"

namespace laconic::ramus {

// Rows 0..max_n of Pascal's triangle, built once and immutable afterwards.
// choose(n, i) is 0 outside 0 <= i <= n. Exact arithmetic makes repeated
// direct evaluation of C(n, i) too expensive for the identity verifiers,
// which touch every entry of a row many times.
class PascalTable {
 public:
  explicit PascalTable(int max_n);

  int max_n() const { return static_cast<int>(rows_.size()) - 1; }
  const ExactInt& choose(int n, int i) const;

 private:
  std::vector<std::vector<ExactInt>> rows_;
};

// Parameter pair for one instance of the problem. m is the distinguished
// residue: the excluded size class of the extremal construction.
struct RamusParams {
  int n;
  int k;

  RamusParams(int n_, int k_);
  int m() const { return (n - k + 1) / 2; }  // = ceil((n-k)/2), n >= k
};

// C(n, i); 0 outside the triangle. Cached per thread.
ExactInt binomial(int n, int i);

// S(n,k,r) = sum of C(n,i) over 0 <= i <= n with i = r (mod k).
// r may be any integer; it is reduced mod k.
ExactInt lacunary_sum(int n, int k, int r);

// Truncated sum S(n,k,z|z): terms i = z (mod k), 0 <= i <= min(z, n).
// Zero when z < 0. The residue is determined by z itself.
ExactInt truncated_lacunary_sum(int n, int k, int z);

// Constraint weight w_i. Zero outside 0 <= i <= n-k+1.
ExactInt weight(const RamusParams& p, int i);

// Table-backed overloads for verifier-scale workloads.
ExactInt lacunary_sum(const PascalTable& t, int n, int k, int r);
ExactInt truncated_lacunary_sum(const PascalTable& t, int n, int k, int z);
ExactInt weight(const PascalTable& t, const RamusParams& p, int i);

struct IdentityViolation {
  std::string clause;  // e.g. "truncated-shift", "window-sum"
  int index;           // the t or s at which the clause failed
};

struct IdentityReport {
  int n = 0;
  int k = 0;
  std::vector<IdentityViolation> violations;

  bool passed() const { return violations.empty(); }
};

// Checks every clause of the truncated-sum identities and the weight window
// identities over the full index ranges (including out-of-range sentinels),
// by independent exact evaluation of both sides. Empty violation list on
// success.
IdentityReport verify_sum_identities(int n, int k);

struct MinResidueReport {
  int n = 0;
  int k = 0;
  int m = 0;
  std::vector<ExactInt> residue_sums;  // indexed by r = 0..k-1
  std::vector<int> argmin;             // all minimizing residues, ascending
  ExactInt min_value;
  bool m_in_argmin = false;
};

// Evaluates S(n,k,r) for every residue and reports the full argmin set.
// The minimizer need not be unique; the report never asserts uniqueness.
MinResidueReport verify_min_residue(int n, int k);

}  // namespace laconic::ramus
