#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace laconic::lattice {

// A subset of the ground set [n] as a bitmask; element a (1-based) is bit
// a-1. Families stay well below n = 26, so a flat presence table over 2^n
// is always affordable.
using Mask = std::uint64_t;

inline constexpr int kMaxGroundN = 26;

int set_size(Mask m);
Mask complement_mask(Mask m, int n);

// "1,3,4" with elements ascending; the empty set renders as "-".
std::string render_set(Mask m);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line_no, const std::string& what)
      : std::runtime_error(what), line_no_(line_no) {}
  int line_no() const { return line_no_; }  // 0 when not tied to a line

 private:
  int line_no_;
};

// Accepts the render_set format; n bounds the allowed elements.
Mask parse_set(const std::string& text, int n, int line_no = 0);

// Immutable set family over [n], members sorted by (size, mask) and
// deduplicated, with a per-level index and O(1) membership.
class SetFamily {
 public:
  SetFamily(int n, std::vector<Mask> members);

  int ground_n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Mask>& members() const { return members_; }
  const std::vector<Mask>& level(int s) const { return levels_[s]; }
  int level_count() const { return n_ + 1; }
  bool contains(Mask m) const {
    return (presence_[m >> 6] >> (m & 63)) & 1;
  }
  SetFamily complemented() const;

 private:
  int n_;
  std::vector<Mask> members_;
  std::vector<std::vector<Mask>> levels_;
  std::vector<std::uint64_t> presence_;
};

enum class PatternKind { yk, yk_prime };

// A witness occurrence of the forbidden pattern. For yk the chain lists
// the k-1 members with ascending consecutive sizes and pair holds the two
// distinct members one size above the chain top. For yk_prime sizes descend
// and pair holds the two members one size below the chain bottom.
struct ForbiddenCopy {
  PatternKind kind;
  std::vector<Mask> chain;
  std::array<Mask, 2> pair;
};

// Least witness under (top level, chain bottom mask, pair masks); the
// intermediate chain is then reconstructed smallest-mask-first. Returns
// nullopt when the family contains no occurrence. k >= 2.
std::optional<ForbiddenCopy> find_yk_copy(const SetFamily& fam, int k);

// Dual detector, implemented on the complemented family; the witness maps
// back through complementation, so it is equally deterministic.
std::optional<ForbiddenCopy> find_yk_prime_copy(const SetFamily& fam, int k);

bool is_admissible(const SetFamily& fam, int k);

// All subsets whose size avoids the excluded residue class m mod k.
// Requires 3 <= k <= n: for k = 2 no single excluded class is optimal.
SetFamily extremal_construction(int n, int k);

// One member per line in render_set format, sorted by (size, mask).
std::string to_lines(const SetFamily& fam);

// Parses a family from a stream of lines (blank lines skipped). When n is
// not given it is inferred as the largest element mentioned (minimum 1).
SetFamily family_from_lines(std::istream& in, std::optional<int> n = {});

std::string describe(const ForbiddenCopy& copy);

}  // namespace laconic::lattice
