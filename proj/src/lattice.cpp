#include "laconic/lattice.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <sstream>

#include "laconic/ramus.hpp"

namespace laconic::lattice {

int set_size(Mask m) { return std::popcount(m); }

Mask complement_mask(Mask m, int n) { return ~m & ((Mask{1} << n) - 1); }

std::string render_set(Mask m) {
  if (m == 0) return "-";
  std::string out;
  for (int a = 1; m; ++a, m >>= 1)
    if (m & 1) {
      if (!out.empty()) out += ',';
      out += std::to_string(a);
    }
  return out;
}

Mask parse_set(const std::string& text, int n, int line_no) {
  if (text == "-") return 0;
  Mask m = 0;
  std::size_t pos = 0;
  int prev = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string tok = text.substr(pos, next - pos);
    std::size_t used = 0;
    int a = 0;
    try {
      a = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad element '" + tok + "'");
    }
    if (used != tok.size() || a < 1)
      throw ParseError(line_no, "bad element '" + tok + "'");
    if (a > n)
      throw ParseError(line_no, "element " + std::to_string(a) +
                                    " exceeds ground set size " +
                                    std::to_string(n));
    if (a <= prev)
      throw ParseError(line_no, "elements must be strictly ascending");
    prev = a;
    m |= Mask{1} << (a - 1);
    pos = next + 1;
    if (next == text.size()) break;
    if (pos == text.size()) throw ParseError(line_no, "trailing comma");
  }
  if (m == 0) throw ParseError(line_no, "empty line; use '-' for the empty set");
  return m;
}

SetFamily::SetFamily(int n, std::vector<Mask> members) : n_(n) {
  if (n < 0 || n > kMaxGroundN)
    throw std::invalid_argument("SetFamily: need 0 <= n <= " +
                                std::to_string(kMaxGroundN));
  const Mask limit = Mask{1} << n;
  for (Mask m : members)
    if (m >= limit)
      throw std::invalid_argument("SetFamily: member outside ground set");
  std::sort(members.begin(), members.end(), [](Mask a, Mask b) {
    int sa = set_size(a), sb = set_size(b);
    return sa != sb ? sa < sb : a < b;
  });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members_ = std::move(members);
  levels_.resize(n + 1);
  for (Mask m : members_) levels_[set_size(m)].push_back(m);
  presence_.assign((limit + 63) >> 6, 0);
  for (Mask m : members_) presence_[m >> 6] |= std::uint64_t{1} << (m & 63);
}

SetFamily SetFamily::complemented() const {
  std::vector<Mask> comp;
  comp.reserve(members_.size());
  for (Mask m : members_) comp.push_back(complement_mask(m, n_));
  return SetFamily(n_, std::move(comp));
}

namespace {

int level_index(const std::vector<Mask>& level, Mask m) {
  auto it = std::lower_bound(level.begin(), level.end(), m);
  return static_cast<int>(it - level.begin());  // caller guarantees presence
}

// Longest run of members with consecutive sizes descending from each member
// by single-element deletion; len[s][i] belongs to fam.level(s)[i]. Levels
// are processed bottom-up, so each one-smaller subset is already scored.
// Runs in O(|fam| * n * log).
std::vector<std::vector<int>> chain_lengths(const SetFamily& fam) {
  std::vector<std::vector<int>> len(fam.level_count());
  for (int s = 0; s < fam.level_count(); ++s) {
    len[s].assign(fam.level(s).size(), 1);
    if (s == 0) continue;
    const auto& below = fam.level(s - 1);
    for (std::size_t i = 0; i < fam.level(s).size(); ++i) {
      Mask m = fam.level(s)[i];
      int best = 0;
      for (Mask bits = m; bits;) {
        Mask low = bits & (~bits + 1);
        bits ^= low;
        Mask sub = m ^ low;
        if (fam.contains(sub))
          best = std::max(best, len[s - 1][level_index(below, sub)]);
      }
      len[s][i] = best + 1;
    }
  }
  return len;
}

}  // namespace

std::optional<ForbiddenCopy> find_yk_copy(const SetFamily& fam, int k) {
  if (k < 2) throw std::invalid_argument("find_yk_copy: k >= 2 required");
  const int n = fam.ground_n();
  if (fam.members().empty()) return std::nullopt;
  std::vector<std::vector<int>> len = chain_lengths(fam);

  auto supersets_of = [&](Mask g) {
    std::vector<Mask> out;  // ascending: adding a higher bit gives a bigger mask
    for (int e = 0; e < n; ++e) {
      Mask up = g | (Mask{1} << e);
      if (up != g && fam.contains(up)) out.push_back(up);
    }
    return out;
  };

  // Smallest top level that completes a copy.
  int top_level = -1;
  for (int s = 0; s < n && top_level < 0; ++s) {
    for (std::size_t i = 0; i < fam.level(s).size(); ++i) {
      if (len[s][i] < k - 1) continue;
      if (supersets_of(fam.level(s)[i]).size() >= 2) {
        top_level = s + 1;
        break;
      }
    }
  }
  if (top_level < 0) return std::nullopt;

  // Witness: minimize (chain bottom, pair) at the fixed top level. The pair
  // determines the chain top uniquely (their intersection), so no further
  // tie-breaking is needed.
  const int bottom_level = top_level - k + 1;
  for (Mask g1 : fam.level(bottom_level)) {
    std::vector<std::vector<Mask>> reach(k - 1);
    reach[0] = {g1};
    for (int step = 1; step < k - 1; ++step) {
      for (Mask cand : fam.level(bottom_level + step)) {
        for (Mask below : reach[step - 1]) {
          if ((below & ~cand) == 0) {
            reach[step].push_back(cand);
            break;
          }
        }
      }
    }
    Mask best_top = 0, best_f1 = 0, best_f2 = 0;
    bool found = false;
    for (Mask t : reach[k - 2]) {
      auto sup = supersets_of(t);
      if (sup.size() < 2) continue;
      if (!found || sup[0] < best_f1 ||
          (sup[0] == best_f1 && sup[1] < best_f2)) {
        found = true;
        best_top = t;
        best_f1 = sup[0];
        best_f2 = sup[1];
      }
    }
    if (!found) continue;
    ForbiddenCopy copy;
    copy.kind = PatternKind::yk;
    copy.pair = {best_f1, best_f2};
    copy.chain.assign(k - 1, 0);
    copy.chain[k - 2] = best_top;
    Mask cur = best_top;
    for (int step = k - 3; step >= 0; --step) {
      for (Mask below : reach[step]) {
        if ((below & ~cur) == 0) {
          copy.chain[step] = below;
          cur = below;
          break;
        }
      }
    }
    return copy;
  }
  return std::nullopt;  // unreachable: top_level implies some bottom works
}

std::optional<ForbiddenCopy> find_yk_prime_copy(const SetFamily& fam, int k) {
  auto up = find_yk_copy(fam.complemented(), k);
  if (!up) return std::nullopt;
  const int n = fam.ground_n();
  ForbiddenCopy copy;
  copy.kind = PatternKind::yk_prime;
  copy.chain.reserve(up->chain.size());
  for (Mask m : up->chain) copy.chain.push_back(complement_mask(m, n));
  copy.pair = {complement_mask(up->pair[0], n),
               complement_mask(up->pair[1], n)};
  if (copy.pair[1] < copy.pair[0]) std::swap(copy.pair[0], copy.pair[1]);
  return copy;
}

bool is_admissible(const SetFamily& fam, int k) {
  return !find_yk_copy(fam, k) && !find_yk_prime_copy(fam, k);
}

SetFamily extremal_construction(int n, int k) {
  if (k < 3)
    throw std::invalid_argument(
        "extremal_construction: k >= 3 required (no single excluded size "
        "class is optimal for k = 2)");
  ramus::RamusParams p(n, k);  // validates k <= n
  if (n > 22)
    throw std::invalid_argument(
        "extremal_construction: n > 22 would materialize too many subsets");
  const int m_res = p.m() % k;
  std::vector<Mask> keep;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (set_size(m) % k != m_res) keep.push_back(m);
  return SetFamily(n, std::move(keep));
}

std::string to_lines(const SetFamily& fam) {
  std::string out;
  for (Mask m : fam.members()) {
    out += render_set(m);
    out += '\n';
  }
  return out;
}

SetFamily family_from_lines(std::istream& in, std::optional<int> n) {
  std::vector<std::pair<int, std::string>> rows;
  std::string line;
  int line_no = 0;
  int max_elem = 1;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    std::size_t first = line.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    line = line.substr(first);
    rows.emplace_back(line_no, line);
    // Pre-scan for the largest element so n can be inferred.
    std::size_t pos = 0;
    while (pos < line.size()) {
      if (std::isdigit(static_cast<unsigned char>(line[pos]))) {
        int v = 0;
        while (pos < line.size() &&
               std::isdigit(static_cast<unsigned char>(line[pos]))) {
          v = v * 10 + (line[pos] - '0');
          if (v > 1000000) throw ParseError(line_no, "element out of range");
          ++pos;
        }
        max_elem = std::max(max_elem, v);
      } else {
        ++pos;
      }
    }
  }
  const int ground = n.value_or(max_elem);
  if (ground < 0 || ground > kMaxGroundN)
    throw ParseError(0, "ground set size " + std::to_string(ground) +
                            " outside supported range");
  std::vector<Mask> members;
  members.reserve(rows.size());
  for (const auto& [ln, text] : rows)
    members.push_back(parse_set(text, ground, ln));
  return SetFamily(ground, std::move(members));
}

std::string describe(const ForbiddenCopy& copy) {
  std::ostringstream os;
  os << (copy.kind == PatternKind::yk ? "ladder-up" : "ladder-down")
     << " chain:";
  for (Mask m : copy.chain) os << ' ' << render_set(m);
  os << " pair: " << render_set(copy.pair[0]) << ' '
     << render_set(copy.pair[1]);
  return os.str();
}

}  // namespace laconic::lattice
