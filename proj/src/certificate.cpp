#include "laconic/certificate.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace laconic::certificate {

namespace {

std::string eq_detail(const ExactInt& lhs, const char* rel,
                      const ExactInt& rhs) {
  return lhs.str() + " " + rel + " " + rhs.str();
}

CheckLine line(std::string name, const ExactInt& lhs, const ExactInt& rhs,
               bool holds, bool advisory = false) {
  return CheckLine{std::move(name), eq_detail(lhs, holds ? "vs" : "VS", rhs),
                   holds, advisory};
}

}  // namespace

WeightCertificate build_certificate(int n, int k) {
  if (k < 3 || k > n)
    throw std::invalid_argument("build_certificate: need 3 <= k <= n");
  const ramus::PascalTable table(n);
  const ramus::RamusParams params(n, k);
  const int m = params.m();
  const int last = n - k + 1;

  WeightCertificate cert{params, {}, {}};
  cert.w.reserve(static_cast<std::size_t>(last) + 1);
  for (int i = 0; i <= last; ++i)
    cert.w.push_back(ramus::weight(table, params, i));

  cert.coeff.reserve(static_cast<std::size_t>(n) + 1);
  for (int s = 0; s <= n; ++s) {
    ExactInt c;
    for (int j = s - k + 1; j <= s; ++j)
      if (j >= 0 && j <= last) c += cert.w[static_cast<std::size_t>(j)];
    cert.coeff.push_back(std::move(c));
  }

  // Structural invariants: identities of the weight construction, so any
  // failure is an arithmetic bug, not a data condition.
  const ExactInt total_weight = ramus::lacunary_sum(table, n, k, m);
  ExactInt w_sum;
  for (int i = 0; i <= last; ++i) {
    const ExactInt& wi = cert.w[static_cast<std::size_t>(i)];
    if (wi.is_zero())
      throw std::logic_error("build_certificate: weight w_" +
                             std::to_string(i) + " is not positive at n = " +
                             std::to_string(n) + ", k = " + std::to_string(k));
    w_sum += wi;
  }
  if (w_sum != total_weight)
    throw std::logic_error("build_certificate: weight total " + w_sum.str() +
                           " differs from the excluded-class sum " +
                           total_weight.str());
  for (int s = 0; s <= n; ++s) {
    const ExactInt& cs = cert.coeff[static_cast<std::size_t>(s)];
    // Closed form: C(n,s) outside the interior window, C(n,s) + S - S_s
    // inside it.  The correction is applied additively before subtracting
    // because S_s frequently exceeds S and the intermediate difference
    // would leave the non-negative domain.
    ExactInt expect = table.choose(n, s);
    if (s > m && s < m + k) {
      expect += total_weight;
      expect -= ramus::lacunary_sum(table, n, k, s);
    }
    if (cs != expect)
      throw std::logic_error("build_certificate: coefficient c_" +
                             std::to_string(s) + " = " + cs.str() +
                             " differs from its closed form " + expect.str());
  }
  return cert;
}

ExactInt certify_bound(const WeightCertificate& cert) {
  const int n = cert.params.n;
  const int k = cert.params.k;
  const int m = cert.params.m();
  const ramus::PascalTable table(n);
  const ExactInt s_m = ramus::lacunary_sum(table, n, k, m);

  // Window side: every window capped at (k-1) n, total weight S(n,k,m).
  const ExactInt window_side =
      ExactInt(static_cast<unsigned long long>(k - 1)) * ExactInt(n) * s_m;
  // Correction: lifting the k-1 interior coefficients back to C(n, i)
  // costs n per unit of S(n,k,j) - S(n,k,m).  The chain
  //     window_side + n * sum_j (S_j - S) == n (2^n - S)
  // is checked with (k-1) n S added to both sides so that every
  // intermediate value stays in the non-negative domain even when an
  // individual S_j dips below S.
  ExactInt class_total;
  for (int j = m + 1; j <= m + k - 1; ++j)
    class_total += ramus::lacunary_sum(table, n, k, j);

  const ExactInt chained = window_side + ExactInt(n) * class_total;
  const ExactInt bound =
      ExactInt(n) * (ExactInt::pow2(static_cast<unsigned>(n)) - s_m);
  const ExactInt shifted_bound = bound + window_side;
  if (chained != shifted_bound)
    throw std::logic_error("certify_bound: summation chain gives " +
                           chained.str() + " but the closed form side is " +
                           shifted_bound.str());
  return bound;
}

bool CertifyReport::passed() const {
  if (rejected) return false;
  for (const CheckLine& c : checks)
    if (!c.advisory && !c.passed) return false;
  return true;
}

CertifyReport certify_boundary_cases(const WeightCertificate& cert) {
  const int n = cert.params.n;
  const int k = cert.params.k;
  CertifyReport rep{"boundary_cases", n, k, false, {}};
  const ExactInt one(1);
  const ExactInt& w0 = cert.w.front();
  const ExactInt& w_last = cert.w.back();
  rep.checks.push_back(line("w_0 = 1", w0, one, w0 == one));
  rep.checks.push_back(
      line("w_last = 1", w_last, one, w_last == one));
  if (n >= k + 1) {
    const ExactInt& w1 = cert.w[1];
    const ExactInt nm1(static_cast<unsigned long long>(n - 1));
    rep.checks.push_back(line("w_1 = n-1", w1, nm1, w1 == nm1));
    // Subcase: one member short of a saturated boundary window, weighted by
    // w_1, recovers exactly the n-1 slack of the global bound.
    rep.checks.push_back(
        line("single-deficit recovery = n-1", w1 * one, nm1, w1 == nm1));
  }
  // Subcase: a fully saturated boundary forces two floor(n/2) deficits,
  // weighted by the unit end weights; together they beat the n-1 slack.
  const ExactInt half(static_cast<unsigned long long>(n / 2));
  const ExactInt recovered = (w0 + w_last) * half;
  const ExactInt nm1(static_cast<unsigned long long>(n - 1));
  rep.checks.push_back(line("double-deficit recovery >= n-1", recovered, nm1,
                            recovered >= nm1));
  return rep;
}

CertifyReport certify_profile(const WeightCertificate& cert,
                              const LevelProfile& profile) {
  const int n = cert.params.n;
  const int k = cert.params.k;
  CertifyReport rep{"profile", n, k, false, {}};

  if (profile.n() != n) {
    rep.rejected = true;
    rep.checks.push_back(CheckLine{
        "precondition: profile length",
        "profile has " + std::to_string(profile.n() + 1) + " levels, need " +
            std::to_string(n + 1),
        false, false});
    return rep;
  }
  const std::vector<int>& x = profile.x;
  for (int s = 0; s <= n; ++s) {
    const int cap = (s == 0 || s == n) ? 1 : n;
    if (x[s] < 0 || x[s] > cap) {
      rep.rejected = true;
      rep.checks.push_back(CheckLine{
          "precondition: box",
          "x_" + std::to_string(s) + " = " + std::to_string(x[s]) +
              " outside 0.." + std::to_string(cap),
          false, false});
      return rep;
    }
  }
  const long long window_cap = static_cast<long long>(k - 1) * n;
  for (int i = 0; i + k - 1 <= n; ++i) {
    long long window = 0;
    for (int j = i; j <= i + k - 1; ++j) window += x[j];
    if (window > window_cap) {
      rep.rejected = true;
      rep.checks.push_back(CheckLine{
          "precondition: window cap",
          "window at " + std::to_string(i) + " sums to " +
              std::to_string(window) + " > " + std::to_string(window_cap),
          false, false});
      return rep;
    }
  }

  const ramus::PascalTable table(n);
  const ExactInt s_m = ramus::lacunary_sum(table, n, k, cert.params.m());
  ExactInt weighted, plain, level_count;
  for (int s = 0; s <= n; ++s) {
    const ExactInt xs(static_cast<unsigned long long>(x[s]));
    weighted += cert.coeff[static_cast<std::size_t>(s)] * xs;
    plain += table.choose(n, s) * xs;
    level_count += ((s == 0 || s == n) ? ExactInt(n) : table.choose(n, s)) * xs;
  }
  const ExactInt window_bound =
      ExactInt(static_cast<unsigned long long>(k - 1)) * ExactInt(n) * s_m;
  const ExactInt final_bound =
      ExactInt(n) * (ExactInt::pow2(static_cast<unsigned>(n)) - s_m);
  const ExactInt stated_bound = final_bound + ExactInt(n - 1);

  rep.checks.push_back(line("weighted chain", weighted, window_bound,
                            weighted <= window_bound));
  rep.checks.push_back(
      line("final chain", plain, final_bound, plain <= final_bound));
  rep.checks.push_back(line("level-count pair", level_count, stated_bound,
                            level_count <= stated_bound, true));
  return rep;
}

std::string WeightCertificate::to_json() const {
  nlohmann::json j;
  j["n"] = params.n;
  j["k"] = params.k;
  j["m"] = params.m();
  nlohmann::json w_arr = nlohmann::json::array();
  for (const ExactInt& v : w) w_arr.push_back(v.str());
  j["w"] = std::move(w_arr);
  nlohmann::json c_arr = nlohmann::json::array();
  for (const ExactInt& v : coeff) c_arr.push_back(v.str());
  j["coeff"] = std::move(c_arr);
  j["bound"] = certify_bound(*this).str();
  return j.dump();
}

std::string CertifyReport::to_json() const {
  nlohmann::json j;
  j["subject"] = subject;
  j["n"] = n;
  j["k"] = k;
  j["rejected"] = rejected;
  j["passed"] = passed();
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckLine& c : checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["detail"] = c.detail;
    cj["passed"] = c.passed;
    cj["advisory"] = c.advisory;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  return j.dump();
}

}  // namespace laconic::certificate
