#pragma once

#include <string>
#include <vector>

#include "laconic/cyclegraph.hpp"
#include "laconic/exact_int.hpp"
#include "laconic/ramus.hpp"

// The hand-built weight certificate behind the global profile bound: one
// positive weight per length-k level window whose window-coefficient sums
// collapse to closed forms, certifying
//   sum_i C(n,i) x_i <= n (2^n - S(n,k,m))
// for every profile obeying the window caps -- an exact algebraic dual
// check, not an LP solve.  All arithmetic is integer-exact.

namespace laconic::certificate {

using cyclegraph::LevelProfile;

struct WeightCertificate {
  ramus::RamusParams params;
  std::vector<ExactInt> w;      // window weights w_0 .. w_{n-k+1}, all > 0
  std::vector<ExactInt> coeff;  // c_0 .. c_n with c_i = sum of w_{i-k+1..i}

  std::string to_json() const;  // {n, k, m, w, coeff, bound}
};

// Builds the certificate from the truncated-sum definition of the weights
// and checks every structural invariant at build time: positivity of each
// w_i, the two closed forms for the window coefficients
// (c_i = C(n,i) outside m < i < m+k, c_i = C(n,i) + S(n,k,m) - S(n,k,i)
// inside), and the total weight sum S(n,k,m).  A failure throws
// logic_error: the invariants are identities, so a violation can only mean
// an arithmetic bug.  Requires 3 <= k <= n.
WeightCertificate build_certificate(int n, int k);

// Reproduces the summation chain that turns the weighted window bound into
// the global bound: (k-1) n S(n,k,m) from the windows plus the correction
// n * sum_{j=m+1}^{m+k-1} (S(n,k,j) - S(n,k,m)) must equal
// n (2^n - S(n,k,m)) exactly.  Returns that bound; throws logic_error on
// any mismatch in the chain.
ExactInt certify_bound(const WeightCertificate& cert);

struct CheckLine {
  std::string name;
  std::string detail;  // the exact quantities compared, as decimal strings
  bool passed = false;
  // Advisory lines are reported but excluded from passed(): they record
  // facts that hold for profiles of admissible families yet do not follow
  // from this module's arithmetic preconditions alone.
  bool advisory = false;
};

struct CertifyReport {
  std::string subject;  // "boundary_cases" or "profile"
  int n = 0;
  int k = 0;
  bool rejected = false;  // profile failed the preconditions; not certified
  std::vector<CheckLine> checks;

  bool passed() const;  // not rejected and every non-advisory line holds
  std::string to_json() const;
};

// Verifies the boundary bookkeeping of the global bound: w_0 and the last
// weight are exactly 1; for n >= k+1 the second weight is n-1, so a single
// missing member in a saturated boundary window lowers the weighted sum by
// n-1; and the two floor(n/2) deficits of a fully saturated boundary
// recover 2 floor(n/2) >= n-1 through the unit end weights.  The w_1
// clauses are emitted only when n >= k+1 (at n = k that weight is 1).
CertifyReport certify_boundary_cases(const WeightCertificate& cert);

// Weak-duality check of a concrete profile against the certificate.
// Preconditions (box: x_0, x_n <= 1, 0 <= x_i <= n; every length-k window
// sum <= (k-1) n) are checked first; a violating profile is rejected, not
// certified.  For an accepted profile the two derivable inequalities are
// asserted -- the weighted chain  sum_i c_i x_i <= (k-1) n S(n,k,m)  and
// the plain chain  sum_i C(n,i) x_i <= n (2^n - S(n,k,m)) -- and the
// level-count pair  n(x_0 + x_n) + sum C(n,i) x_i  vs the bound plus n-1
// is reported as an advisory line (it needs admissibility, not just the
// preconditions).
CertifyReport certify_profile(const WeightCertificate& cert,
                              const LevelProfile& profile);

}  // namespace laconic::certificate
