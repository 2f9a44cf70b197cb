#include "laconic/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "laconic/certificate.hpp"
#include "laconic/cyclegraph.hpp"
#include "laconic/exact_int.hpp"
#include "laconic/lattice.hpp"
#include "laconic/ramus.hpp"
#include "laconic/search.hpp"

namespace laconic::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Record rendering

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string scalar_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();  // numbers, booleans, null
}

void flatten(const json& v, const std::string& path, std::string& out) {
  if (v.is_object()) {
    for (const auto& [key, val] : v.items())
      flatten(val, path.empty() ? key : path + "." + key, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      flatten(v[i], path + "." + std::to_string(i), out);
    if (v.empty()) out += path + ",\n";
  } else {
    out += path + "," + csv_escape(scalar_to_string(v)) + "\n";
  }
}

json record_json(const RunRecord& rec) {
  json j;
  j["command"] = rec.command;
  j["parameters"] = json::parse(rec.parameters_json);
  j["payload"] = json::parse(rec.payload_json);
  j["timing_seconds"] = rec.timing_seconds;
  j["version"] = rec.version;
  j["worker_count"] = rec.worker_count;
  return j;
}

// ---------------------------------------------------------------------------
// Common option bundle

struct CommonFlags {
  int n = 0;
  int k = 0;
  std::string format = "json";
};

void add_format_flag(CLI::App* sub, std::string& format) {
  sub->add_option("--format", format, "output representation")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

// ---------------------------------------------------------------------------
// formula

json cmd_formula(int n, int k) {
  if (k < 2 || k > n || n > 256)
    throw std::invalid_argument("formula: need 2 <= k <= n <= 256");
  const auto rep = ramus::verify_min_residue(n, k);
  const ExactInt s_m = rep.residue_sums[static_cast<std::size_t>(rep.m)];
  const ExactInt optimum =
      ExactInt::pow2(static_cast<unsigned>(n)) - s_m;

  json payload;
  payload["n"] = n;
  payload["k"] = k;
  payload["m"] = rep.m;
  json sums = json::array();
  for (const ExactInt& s : rep.residue_sums) sums.push_back(s.str());
  payload["residue_sums"] = std::move(sums);
  payload["argmin"] = rep.argmin;
  payload["min_value"] = rep.min_value.str();
  payload["m_in_argmin"] = rep.m_in_argmin;
  payload["optimum"] = optimum.str();
  if (k == 2)
    payload["note"] =
        "the closed-form guarantee is stated for k >= 3; for k = 2 the "
        "exact optimum is 2^(n-1), valid for n >= 3";
  return payload;
}

// ---------------------------------------------------------------------------
// construct

json cmd_construct(int n, int k) {
  if (k < 3 || k > n)
    throw std::invalid_argument("construct: need 3 <= k <= n");
  if (n > 20)
    throw cyclegraph::CapExceeded(
        "construct: family emission is capped at n = 20");
  const auto fam = lattice::extremal_construction(n, k);
  const int m = ramus::RamusParams(n, k).m();
  const ExactInt formula_value = ExactInt::pow2(static_cast<unsigned>(n)) -
                                 ramus::lacunary_sum(n, k, m);
  const bool admissible = lattice::is_admissible(fam, k);

  json payload;
  payload["n"] = n;
  payload["k"] = k;
  payload["size"] = fam.size();
  payload["formula_value"] = formula_value.str();
  payload["size_matches_formula"] =
      ExactInt(static_cast<unsigned long long>(fam.size())) == formula_value;
  payload["admissible"] = admissible;
  json members = json::array();
  for (const lattice::Mask mask : fam.members())
    members.push_back(lattice::render_set(mask));
  payload["family"] = std::move(members);
  return payload;
}

// The csv rendering of construct is the family file itself plus a
// key,value trailer, so the primary artifact can be piped onward.
std::string construct_csv(const json& payload) {
  std::string out;
  for (const auto& line : payload.at("family"))
    out += line.get<std::string>() + "\n";
  out += "size," + payload.at("size").dump() + "\n";
  out += "formula_value," +
         payload.at("formula_value").get<std::string>() + "\n";
  out += std::string("admissible,") +
         (payload.at("admissible").get<bool>() ? "true" : "false") + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// verify-family

json witness_json(const lattice::ForbiddenCopy& copy) {
  json w;
  w["kind"] = copy.kind == lattice::PatternKind::yk ? "yk" : "yk_prime";
  json chain = json::array();
  for (const lattice::Mask m : copy.chain)
    chain.push_back(lattice::render_set(m));
  w["chain"] = std::move(chain);
  w["pair"] = json::array(
      {lattice::render_set(copy.pair[0]), lattice::render_set(copy.pair[1])});
  w["description"] = lattice::describe(copy);
  return w;
}

json cmd_verify_family(const std::string& path, int k, std::optional<int> n,
                       bool& admissible_out) {
  if (k < 2) throw std::invalid_argument("verify-family: need k >= 2");
  lattice::SetFamily fam = [&] {
    if (path == "-") return lattice::family_from_lines(std::cin, n);
    std::ifstream in(path);
    if (!in)
      throw lattice::ParseError(0, "cannot open family file: " + path);
    return lattice::family_from_lines(in, n);
  }();

  json payload;
  payload["path"] = path;
  payload["n"] = fam.ground_n();
  payload["k"] = k;
  payload["size"] = fam.size();
  auto copy = lattice::find_yk_copy(fam, k);
  if (!copy) copy = lattice::find_yk_prime_copy(fam, k);
  admissible_out = !copy.has_value();
  payload["admissible"] = admissible_out;
  payload["witness"] = copy ? witness_json(*copy) : json(nullptr);
  return payload;
}

// ---------------------------------------------------------------------------
// search

struct SearchFlags {
  int n = 0;
  int k = 0;
  std::string mode = "full";
  int workers = 1;
  std::uint64_t seed = 0;
  int max_elements = 0;  // 0: keep the mode's default cap
  double max_seconds = 0.0;
  std::string prune_bound;
};

json cmd_search(const SearchFlags& f, bool& completed_out) {
  search::SearchConfig cfg;
  cfg.n = f.n;
  cfg.k = f.k;
  cfg.mode = f.mode == "interval" ? search::SearchMode::interval_lattice
                                  : search::SearchMode::full_lattice;
  cfg.worker_count = f.workers;
  cfg.deterministic_seed = f.seed;
  if (f.max_elements > 0) cfg.max_elements = f.max_elements;
  if (f.max_seconds > 0) cfg.max_seconds = f.max_seconds;
  if (!f.prune_bound.empty())
    cfg.prune_bound = ExactInt::from_decimal(f.prune_bound);

  const search::SearchResult result =
      cfg.mode == search::SearchMode::full_lattice
          ? search::exact_lac(cfg)
          : search::exact_interval_optimum(cfg);
  completed_out = result.completed;
  return json::parse(result.to_json());
}

// ---------------------------------------------------------------------------
// verify

json verify_report_payload(const cyclegraph::VerifyReport& rep) {
  return json::parse(rep.to_json());
}

json cmd_verify_identities(int n, int k, bool& ok_out) {
  const auto id_rep = ramus::verify_sum_identities(n, k);
  const auto min_rep = ramus::verify_min_residue(n, k);

  json id_j;
  id_j["n"] = id_rep.n;
  id_j["k"] = id_rep.k;
  id_j["passed"] = id_rep.passed();
  json violations = json::array();
  for (const auto& v : id_rep.violations)
    violations.push_back({{"clause", v.clause}, {"index", v.index}});
  id_j["violations"] = std::move(violations);

  json min_j;
  min_j["m"] = min_rep.m;
  json sums = json::array();
  for (const ExactInt& s : min_rep.residue_sums) sums.push_back(s.str());
  min_j["residue_sums"] = std::move(sums);
  min_j["argmin"] = min_rep.argmin;
  min_j["min_value"] = min_rep.min_value.str();
  min_j["m_in_argmin"] = min_rep.m_in_argmin;

  ok_out = id_rep.passed() && min_rep.m_in_argmin;
  json payload;
  payload["identities"] = std::move(id_j);
  payload["min_residue"] = std::move(min_j);
  payload["passed"] = ok_out;
  return payload;
}

json cmd_verify_certificate(int n, int k, bool& ok_out) {
  const auto cert = certificate::build_certificate(n, k);
  const ExactInt bound = certificate::certify_bound(cert);
  const auto boundary = certificate::certify_boundary_cases(cert);
  ok_out = boundary.passed();

  json payload;
  payload["certificate"] = json::parse(cert.to_json());
  payload["bound"] = bound.str();
  payload["boundary"] = json::parse(boundary.to_json());
  payload["passed"] = ok_out;
  return payload;
}

json cmd_verify_doublecount(int n, std::uint64_t seed, bool& ok_out) {
  if (n < 1) throw std::invalid_argument("doublecount: need n >= 1");
  constexpr int kTrials = 50;
  std::mt19937_64 rng(seed);
  ok_out = true;
  json first_mismatch = nullptr;
  std::uint64_t checked = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    std::vector<lattice::Mask> members;
    const lattice::Mask limit = lattice::Mask{1} << n;
    for (lattice::Mask m = 0; m < limit; ++m)
      if (rng() & 1) members.push_back(m);
    const lattice::SetFamily fam(n, std::move(members));
    const auto [lhs, rhs] = cyclegraph::double_count(fam);
    ++checked;
    if (lhs != rhs && ok_out) {
      ok_out = false;
      first_mismatch = json{{"trial", trial},
                            {"lhs", lhs.str()},
                            {"rhs", rhs.str()},
                            {"family_size", fam.size()}};
    }
  }
  json payload;
  payload["n"] = n;
  payload["seed"] = seed;
  payload["trials"] = kTrials;
  payload["families_checked"] = checked;
  payload["all_balanced"] = ok_out;
  payload["first_mismatch"] = std::move(first_mismatch);
  return payload;
}

// ---------------------------------------------------------------------------
// Driver

struct Outcome {
  RunRecord record;
  int exit_code = kExitOk;
};

int emit(const Outcome& outcome, const std::string& format,
         std::ostream& out) {
  if (format == "csv")
    out << outcome.record.to_csv();
  else
    out << outcome.record.to_json_line() << "\n";
  return outcome.exit_code;
}

}  // namespace

std::string RunRecord::to_json_line() const {
  return record_json(*this).dump();
}

std::string RunRecord::to_csv() const {
  std::string out;
  flatten(record_json(*this), "", out);
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "exact optima, constructions, searches, and certificates for set "
      "families on consecutive levels avoiding fork and dual-fork patterns"};
  app.require_subcommand(1);

  // formula ---------------------------------------------------------------
  CommonFlags formula_f;
  auto* formula_cmd = app.add_subcommand(
      "formula", "closed-form optimum and the residue-class table");
  formula_cmd->add_option("--n", formula_f.n, "ground-set size")->required();
  formula_cmd->add_option("--k", formula_f.k, "pattern height")->required();
  add_format_flag(formula_cmd, formula_f.format);

  // construct -------------------------------------------------------------
  CommonFlags construct_f;
  auto* construct_cmd = app.add_subcommand(
      "construct", "emit the extremal family with a self-check trailer");
  construct_cmd->add_option("--n", construct_f.n, "ground-set size")
      ->required();
  construct_cmd->add_option("--k", construct_f.k, "pattern height")
      ->required();
  add_format_flag(construct_cmd, construct_f.format);

  // verify-family ---------------------------------------------------------
  std::string family_path;
  int family_k = 0;
  int family_n = 0;
  std::string family_format = "json";
  auto* family_cmd = app.add_subcommand(
      "verify-family", "admissibility verdict for a family file");
  family_cmd
      ->add_option("--path", family_path,
                   "family file, one set per line (\"-\" reads stdin)")
      ->required();
  family_cmd->add_option("--k", family_k, "pattern height")->required();
  family_cmd->add_option("--n", family_n,
                         "ground-set size (default: inferred)");
  add_format_flag(family_cmd, family_format);

  // search ----------------------------------------------------------------
  SearchFlags search_f;
  std::string search_format = "json";
  auto* search_cmd = app.add_subcommand(
      "search", "exhaustive optimum over the chosen ground structure");
  search_cmd->add_option("--n", search_f.n, "ground-set size")->required();
  search_cmd->add_option("--k", search_f.k, "pattern height")->required();
  search_cmd->add_option("--mode", search_f.mode, "ground structure")
      ->check(CLI::IsMember({"full", "interval"}))
      ->capture_default_str();
  search_cmd->add_option("--workers", search_f.workers, "worker threads")
      ->capture_default_str();
  search_cmd->add_option("--seed", search_f.seed,
                         "recorded scheduling seed (results are seed-"
                         "independent)");
  search_cmd->add_option("--max-elements", search_f.max_elements,
                         "ground structure size cap");
  search_cmd->add_option("--max-seconds", search_f.max_seconds,
                         "wall-clock budget");
  search_cmd->add_option("--prune-bound", search_f.prune_bound,
                         "confirmation bound (decimal); echoed in payload");
  add_format_flag(search_cmd, search_format);

  // verify ----------------------------------------------------------------
  std::string verify_which;
  int verify_n = 0;
  int verify_k = 0;
  int verify_max_elements = 0;
  std::uint64_t verify_seed = 0;
  std::string verify_format = "json";
  auto* verify_cmd = app.add_subcommand(
      "verify", "run one of the property verifiers and report");
  verify_cmd
      ->add_option("--which", verify_which, "property to verify")
      ->check(CLI::IsMember({"lemma1", "lemma2", "theorem9", "identities",
                             "certificate", "doublecount"}))
      ->required();
  verify_cmd->add_option("--n", verify_n, "ground-set size")->required();
  verify_cmd->add_option("--k", verify_k, "pattern height");
  verify_cmd->add_option("--max-elements", verify_max_elements,
                         "lattice size cap for the exhaustive drivers");
  verify_cmd->add_option("--seed", verify_seed,
                         "random-family seed (doublecount)");
  add_format_flag(verify_cmd, verify_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  std::string format = "json";
  try {
    Outcome outcome;
    if (formula_cmd->parsed()) {
      format = formula_f.format;
      outcome.record.command = "formula";
      outcome.record.parameters_json =
          json{{"n", formula_f.n}, {"k", formula_f.k}}.dump();
      outcome.record.payload_json =
          cmd_formula(formula_f.n, formula_f.k).dump();
    } else if (construct_cmd->parsed()) {
      format = construct_f.format;
      outcome.record.command = "construct";
      outcome.record.parameters_json =
          json{{"n", construct_f.n}, {"k", construct_f.k}}.dump();
      const json payload = cmd_construct(construct_f.n, construct_f.k);
      outcome.record.payload_json = payload.dump();
      if (format == "csv") {
        // The family itself is the artifact here; bypass the flattener.
        const auto elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          started)
                .count();
        outcome.record.timing_seconds = elapsed;
        out << construct_csv(payload);
        return kExitOk;
      }
    } else if (family_cmd->parsed()) {
      format = family_format;
      outcome.record.command = "verify-family";
      json params{{"path", family_path}, {"k", family_k}};
      params["n"] = family_n > 0 ? json(family_n) : json(nullptr);
      outcome.record.parameters_json = params.dump();
      bool admissible = false;
      outcome.record.payload_json =
          cmd_verify_family(family_path, family_k,
                            family_n > 0 ? std::optional<int>(family_n)
                                         : std::nullopt,
                            admissible)
              .dump();
      outcome.exit_code = admissible ? kExitOk : kExitVerifyFailed;
    } else if (search_cmd->parsed()) {
      format = search_format;
      outcome.record.command = "search";
      outcome.record.worker_count = search_f.workers;
      json params{{"n", search_f.n},
                  {"k", search_f.k},
                  {"mode", search_f.mode},
                  {"workers", search_f.workers},
                  {"seed", search_f.seed}};
      params["max_elements"] =
          search_f.max_elements > 0 ? json(search_f.max_elements)
                                    : json(nullptr);
      params["max_seconds"] =
          search_f.max_seconds > 0 ? json(search_f.max_seconds)
                                   : json(nullptr);
      params["prune_bound"] = search_f.prune_bound.empty()
                                  ? json(nullptr)
                                  : json(search_f.prune_bound);
      outcome.record.parameters_json = params.dump();
      bool completed = true;
      outcome.record.payload_json = cmd_search(search_f, completed).dump();
      outcome.exit_code = completed ? kExitOk : kExitResourceCap;
    } else if (verify_cmd->parsed()) {
      format = verify_format;
      outcome.record.command = "verify";
      json params{{"which", verify_which}, {"n", verify_n}};
      bool ok = true;
      if (verify_which == "lemma1" || verify_which == "lemma2" ||
          verify_which == "theorem9") {
        if (verify_k < 2)
          throw std::invalid_argument("verify: --k is required for " +
                                      verify_which);
        params["k"] = verify_k;
        cyclegraph::VerifyOptions opts;
        if (verify_max_elements > 0) opts.max_elements = verify_max_elements;
        params["max_elements"] = opts.max_elements;
        const auto rep = verify_which == "lemma1"
                             ? cyclegraph::verify_lemma1(verify_n, verify_k,
                                                         opts)
                             : verify_which == "lemma2"
                                   ? cyclegraph::verify_lemma2(
                                         verify_n, verify_k, opts)
                                   : cyclegraph::verify_theorem9(
                                         verify_n, verify_k, opts);
        ok = rep.passed();
        outcome.record.payload_json = verify_report_payload(rep).dump();
      } else if (verify_which == "identities") {
        if (verify_k < 2)
          throw std::invalid_argument(
              "verify: --k is required for identities");
        params["k"] = verify_k;
        outcome.record.payload_json =
            cmd_verify_identities(verify_n, verify_k, ok).dump();
      } else if (verify_which == "certificate") {
        if (verify_k < 2)
          throw std::invalid_argument(
              "verify: --k is required for certificate");
        params["k"] = verify_k;
        outcome.record.payload_json =
            cmd_verify_certificate(verify_n, verify_k, ok).dump();
      } else {  // doublecount
        params["k"] = nullptr;
        params["seed"] = verify_seed;
        outcome.record.payload_json =
            cmd_verify_doublecount(verify_n, verify_seed, ok).dump();
      }
      outcome.record.parameters_json = params.dump();
      outcome.exit_code = ok ? kExitOk : kExitVerifyFailed;
    }

    outcome.record.timing_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    return emit(outcome, format, out);
  } catch (const lattice::ParseError& e) {
    if (e.line_no() > 0)
      err << "parse error at line " << e.line_no() << ": " << e.what()
          << "\n";
    else
      err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cyclegraph::CapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // An internal identity failed to verify: report as verification failure.
    err << "verification error: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace laconic::cli
