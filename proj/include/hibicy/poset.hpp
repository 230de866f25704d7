#pragma once

// Finite posets, their bounded extensions, and the distributive lattice of
// order ideals. Posets are immutable after construction; elements are indexed
// 0..n-1 and carry display names. Order ideals are represented as bitmasks
// over the element indices, which caps the ideal-lattice machinery at 20
// elements (a deliberate guard, not a soft limit).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hibicy/exact.hpp"

namespace hibicy {

constexpr int kMaxIdealPosetSize = 20;
constexpr std::size_t kDefaultIdealCap = 5'000'000;
constexpr std::size_t kDefaultCycleCap = 100'000;

class Poset {
public:
  Poset() = default;  // the empty poset

  // Builds a poset from strict relations (a, b) meaning a < b. Relations may
  // be any generating set; they are closed transitively. Throws ParseError on
  // duplicate names or on a relation cycle.
  static Poset from_relations(std::vector<std::string> names,
                              const std::vector<std::pair<int, int>>& less);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }

  bool less(int a, int b) const { return (up_[a] >> b) & 1u; }
  bool leq(int a, int b) const { return a == b || less(a, b); }
  bool comparable(int a, int b) const { return less(a, b) || less(b, a); }

  // Strict up-set of v as a bitmask (v itself excluded).
  std::uint32_t up_mask(int v) const { return up_[v]; }
  std::uint32_t down_mask(int v) const { return down_[v]; }

  // Covering pairs (a, b) with a covered by b, sorted lexicographically.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& upper_covers(int v) const { return upper_[v]; }
  const std::vector<int>& lower_covers(int v) const { return lower_[v]; }

  bool is_connected() const;   // Hasse diagram connected (true when empty)
  bool is_ideal(std::uint32_t s) const;  // downward closed subset
  bool is_antichain(std::uint32_t s) const;
  bool is_chain_subset(std::uint32_t s) const;  // totally ordered subset

  // Whether the subset is convex (a, b in s and a < c < b imply c in s).
  bool is_convex(std::uint32_t s) const;

  // Induced subposet on the subset; element order follows ascending index.
  Poset induced(std::uint32_t s) const;

private:
  std::vector<std::string> names_;
  std::vector<std::uint32_t> up_, down_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> upper_, lower_;
};

// Disjoint union: elements of `b` keep their names unless they clash with a
// name from `a`, in which case primes are appended.
Poset disjoint_union(const Poset& a, const Poset& b);

// Ordinal sum a then b: every element of a lies below every element of b.
Poset ordinal_sum(const Poset& a, const Poset& b);

struct StructureSummary {
  bool connected = false;
  bool pure = false;       // every maximal chain of the bounded poset has
                           // the same length
  int height = 0;          // h_P: edge length of the longest chain in P-hat
  std::vector<int> heights;  // height of each element inside P-hat
  bool has_singleton_summand = false;  // some element comparable to all others
};

StructureSummary structure(const Poset& p);

// Hasse edge of the bounded poset, oriented from the upper endpoint down to
// the lower endpoint (the direction of the associated ray generator).
struct Edge {
  int upper = -1;
  int lower = -1;
  bool operator==(const Edge&) const = default;
};

// P-hat = P with a new bottom and top adjoined. Element indices of P are
// preserved; bottom is n, top is n+1. Edges are sorted by (lower, upper).
class BoundedPoset {
public:
  explicit BoundedPoset(Poset p);

  const Poset& middle() const { return p_; }
  int n() const { return p_.size(); }
  int bottom() const { return p_.size(); }
  int top() const { return p_.size() + 1; }
  int vertex_count() const { return p_.size() + 2; }
  std::string vertex_name(int v) const;

  bool leq(int a, int b) const;
  bool less(int a, int b) const;

  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& edges_up_from(int v) const { return up_edges_[v]; }
  const std::vector<int>& edges_down_from(int v) const { return down_edges_[v]; }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }

  int height(int v) const { return height_[v]; }     // longest 0-hat chain up to v
  int coheight(int v) const { return coheight_[v]; } // longest chain from v to 1-hat
  int height_top() const { return height_[top()]; }
  bool pure() const { return pure_; }

  // Rows are the ray generators delta(e) = e_t - e_s projected to Z^P (the
  // bottom/top coordinates are dropped).
  IntMatrix delta_matrix() const;

private:
  Poset p_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> up_edges_, down_edges_, neighbors_;
  std::vector<int> height_, coheight_;
  bool pure_ = false;
};

// The lattice J(P) of order ideals, with ideals stored as bitmasks sorted by
// (cardinality, mask value). `chain_count` is the number of maximal chains of
// J(P), i.e. the number of linear extensions of P, computed by dynamic
// programming over the lattice.
struct IdealLattice {
  std::vector<std::uint32_t> ideals;
  std::vector<std::vector<int>> upper;  // covering ideals (one element added)
  Int chain_count;

  int size() const { return static_cast<int>(ideals.size()); }
  int index_of(std::uint32_t mask) const;  // -1 when absent
};

// Enumerates J(P). Throws SizeGuardError if |P| > 20 or more than `cap`
// ideals would be produced.
IdealLattice ideal_lattice(const Poset& p, std::size_t cap = kDefaultIdealCap);

// Independent count of linear extensions by depth-first enumeration, used to
// validate `chain_count`. Guarded to |P| <= 12.
Int linear_extension_count(const Poset& p);

// Incomparable ideal pair together with its join (union) and meet
// (intersection); one generator of the Hibi toric ideal per pair.
struct HibiQuadric {
  int a = -1, b = -1, join = -1, meet = -1;
};

std::vector<HibiQuadric> hibi_quadrics(const IdealLattice& lat);

// ---- Parsing and named examples -----------------------------------------

// Text format: optional comments (# to end of line); a whitespace-separated
// list of element names terminated by ';'; then relation tokens "a<b".
// Throws ParseError with line/column positions on malformed input.
Poset parse_poset(const std::string& text, const std::string& origin = "");

// Named example posets: P1..P6, N, V, UNSM, chain:<n>, antichain:<n>
// (letter names are case-insensitive). Throws ParseError for unknown names.
Poset builtin_poset(const std::string& name);

bool is_builtin_poset_name(const std::string& name);
std::vector<std::string> builtin_poset_names();  // the nine fixed examples

// Resolves a CLI poset argument: "@path" loads and parses a file, anything
// else must be a builtin name.
Poset resolve_poset(const std::string& arg);

}  // namespace hibicy
