#include "laconic/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "laconic/ramus.hpp"

namespace laconic::search {

namespace {

void validate_common(const char* who, const SearchConfig& cfg) {
  if (cfg.k < 2)
    throw std::invalid_argument(std::string(who) +
                                ": forbidden-pattern parameter k must be >= 2");
  if (cfg.n < 1)
    throw std::invalid_argument(std::string(who) + ": n must be positive");
  if (cfg.worker_count < 1)
    throw std::invalid_argument(std::string(who) +
                                ": worker_count must be >= 1");
  if (cfg.max_elements < 1)
    throw std::invalid_argument(std::string(who) +
                                ": max_elements must be >= 1");
  if (cfg.max_seconds && *cfg.max_seconds <= 0.0)
    throw std::invalid_argument(std::string(who) +
                                ": max_seconds must be positive");
}

cover_dag::MaximizeOptions engine_options(const char* who,
                                          const SearchConfig& cfg) {
  cover_dag::MaximizeOptions opts;
  opts.workers = cfg.worker_count;
  opts.max_seconds = cfg.max_seconds;
  if (cfg.prune_bound) {
    try {
      opts.prune_bound = cfg.prune_bound->to_u64();
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(who) +
                                  ": prune_bound outside the representable "
                                  "range of the objective");
    }
  }
  return opts;
}

// Node ids of the given family members inside the dag; every member must be
// a dag node.
std::vector<int> nodes_of_family(const cover_dag::CoverDag& dag,
                                 const SetFamily& family, bool allow_missing) {
  std::unordered_map<lattice::Mask, int> index;
  index.reserve(static_cast<std::size_t>(dag.node_count()));
  for (int id = 0; id < dag.node_count(); ++id) index.emplace(dag.masks[id], id);
  std::vector<int> nodes;
  nodes.reserve(family.size());
  for (const lattice::Mask m : family.members()) {
    const auto it = index.find(m);
    if (it == index.end()) {
      if (allow_missing) continue;
      throw std::logic_error("seed family member is not a lattice node");
    }
    nodes.push_back(it->second);
  }
  return nodes;
}

SearchResult finish(const SearchConfig& cfg, const cover_dag::CoverDag& dag,
                    cover_dag::MaximizeResult&& mr) {
  std::vector<lattice::Mask> members;
  members.reserve(mr.witness_nodes.size());
  for (const int id : mr.witness_nodes) members.push_back(dag.masks[id]);
  SearchResult r{.optimum = ExactInt(mr.best),
                 .witness = SetFamily(cfg.n, std::move(members)),
                 .nodes_explored = mr.nodes_explored,
                 .tasks = mr.tasks,
                 .early_stopped = mr.early_stopped,
                 .completed = mr.completed,
                 .elapsed_seconds = mr.elapsed_seconds,
                 .note = {}};
  if (cfg.prune_bound) {
    r.note = "confirmation run against supplied bound " +
             cfg.prune_bound->str();
    if (r.early_stopped) r.note += "; search closed at the bound";
  }
  if (!r.completed) {
    if (!r.note.empty()) r.note += "; ";
    r.note += "time budget expired: the optimum is a lower bound only";
  }
  return r;
}

}  // namespace

SearchResult exact_lac(const SearchConfig& cfg) {
  validate_common("exact_lac", cfg);
  if (cfg.mode != SearchMode::full_lattice)
    throw std::invalid_argument("exact_lac: full-lattice mode required");
  if (cfg.n > 20)
    throw CapExceeded("exact_lac: n = " + std::to_string(cfg.n) +
                      " exceeds the structural lattice cap of 20");
  const long long elements = 1LL << cfg.n;
  if (elements > cfg.max_elements)
    throw CapExceeded("exact_lac: 2^" + std::to_string(cfg.n) + " = " +
                      std::to_string(elements) + " elements exceed the cap " +
                      std::to_string(cfg.max_elements));

  const cover_dag::CoverDag dag = cover_dag::CoverDag::boolean_lattice(cfg.n);
  const std::vector<std::uint64_t> ones(
      static_cast<std::size_t>(dag.node_count()), 1);
  cover_dag::MaximizeOptions opts = engine_options("exact_lac", cfg);
  if (cfg.k >= 3 && cfg.k <= cfg.n)
    opts.seed_nodes = nodes_of_family(
        dag, lattice::extremal_construction(cfg.n, cfg.k), false);
  auto mr = cover_dag::maximize_admissible(dag, cfg.k, ones, opts);
  return finish(cfg, dag, std::move(mr));
}

SearchResult exact_interval_optimum(const SearchConfig& cfg) {
  validate_common("exact_interval_optimum", cfg);
  if (cfg.mode != SearchMode::interval_lattice)
    throw std::invalid_argument(
        "exact_interval_optimum: interval-lattice mode required");
  const long long elements = static_cast<long long>(cfg.n) * (cfg.n - 1) + 2;
  if (elements > cfg.max_elements)
    throw CapExceeded("exact_interval_optimum: the interval lattice has " +
                      std::to_string(elements) + " elements, cap is " +
                      std::to_string(cfg.max_elements));
  if (cfg.sigma_order &&
      static_cast<int>(cfg.sigma_order->size()) != cfg.n)
    throw std::invalid_argument(
        "exact_interval_optimum: sigma length differs from n");

  const cyclegraph::CyclicPerm sigma =
      cfg.sigma_order ? cyclegraph::CyclicPerm(*cfg.sigma_order)
                      : cyclegraph::CyclicPerm::identity(cfg.n);
  const cyclegraph::IntervalLattice lat =
      cyclegraph::build_interval_lattice(sigma);

  std::vector<std::uint64_t> values(
      static_cast<std::size_t>(lat.dag.node_count()), 0);
  for (int id = 0; id < lat.dag.node_count(); ++id) {
    const int level = lat.dag.levels[id];
    values[static_cast<std::size_t>(id)] =
        (level == 0 || level == cfg.n)
            ? static_cast<std::uint64_t>(cfg.n)
            : ramus::binomial(cfg.n, level).to_u64();
  }
  cover_dag::MaximizeOptions opts =
      engine_options("exact_interval_optimum", cfg);
  if (cfg.k >= 3 && cfg.k <= cfg.n)
    // The excluded-class construction restricted to the interval lattice is
    // admissible and gives the incumbent a strong start.
    opts.seed_nodes = nodes_of_family(
        lat.dag, lattice::extremal_construction(cfg.n, cfg.k), true);
  auto mr = cover_dag::maximize_admissible(lat.dag, cfg.k, values, opts);
  return finish(cfg, lat.dag, std::move(mr));
}

std::string SearchResult::to_json() const {
  nlohmann::json j;
  j["optimum"] = optimum.str();
  nlohmann::json members = nlohmann::json::array();
  for (const lattice::Mask m : witness.members())
    members.push_back(lattice::render_set(m));
  j["witness"] = std::move(members);
  j["witness_size"] = witness.size();
  j["nodes_explored"] = nodes_explored;
  j["tasks"] = tasks;
  j["early_stopped"] = early_stopped;
  j["completed"] = completed;
  j["note"] = note;
  return j.dump();
}

ExactInt closed_form_optimum(int n, int k) {
  if (k < 2 || k > n)
    throw std::invalid_argument("closed_form_optimum: need 2 <= k <= n");
  if (k == 2) {
    if (n == 2)
      throw std::domain_error(
          "closed_form_optimum: no closed form at n = 2, k = 2 (the exact "
          "optimum there is 3)");
    return ExactInt::pow2(static_cast<unsigned>(n - 1));
  }
  const ramus::RamusParams params(n, k);
  return ExactInt::pow2(static_cast<unsigned>(n)) -
         ramus::lacunary_sum(n, k, params.m());
}

}  // namespace laconic::search
