#pragma once

// Singular loci of the CICY inside the Hibi toric variety: minimal convex
// cycles of P-hat index the singular strata, 4-cycles give nodes, their
// relation vectors span the exceptional curve classes, and the proposition
// on smoothings turns into an exact rank computation.

#include <optional>

#include "hibicy/lattice_geometry.hpp"

namespace hibicy {

// Both enumeration guards in one bundle, threaded down from the CLI flags.
struct EnumerationCaps {
  std::size_t ideals = kDefaultIdealCap;
  std::size_t cycles = kDefaultCycleCap;
};

// An induced cycle of the Hasse diagram of P-hat that is convex as a
// subposet and avoids at least one of the two bounds. The traversal starts
// at the smallest vertex index and prefers the ascending neighbor, which
// fixes the sign of the relation vector deterministically.
struct ConvexCycle {
  std::vector<int> vertices;      // traversal order, closed implicitly
  std::vector<int> edge_indices;  // edge_indices[i] joins vertices[i], [i+1]
  std::vector<int> directions;    // +1 when the step ascends, -1 otherwise

  int size() const { return static_cast<int>(vertices.size()); }
};

// All minimal convex cycles, optionally filtered to a fixed size, sorted by
// their vertex lists. Throws SizeGuardError beyond `cap` cycles.
std::vector<ConvexCycle> minimal_convex_cycles(const BoundedPoset& ph,
                                               int size_filter = 0,
                                               std::size_t cap = kDefaultCycleCap);

// The 4-cycles Lambda_4(P-hat): the node loci.
std::vector<ConvexCycle> lambda4(const BoundedPoset& ph,
                                 std::size_t cap = kDefaultCycleCap);

// The locus poset P_C: the cycle is contracted to a point in P-hat and the
// bounds are stripped. For 4-cycles |P_C| = |P| - 3.
Poset contract_cycle(const BoundedPoset& ph, const ConvexCycle& c);

// Signed incidence vector of the cycle in Z^E; always in ker(delta).
std::vector<Int> relation_vector(const BoundedPoset& ph, const ConvexCycle& c);

// One relation vector per 4-cycle, in the order of lambda4().
std::vector<std::vector<Int>> relation_vectors(const BoundedPoset& ph,
                                               std::size_t cap = kDefaultCycleCap);

// rk: the rank over Q of the 4-cycle relation vectors.
long exceptional_rank(const BoundedPoset& ph, std::size_t cap = kDefaultCycleCap);

// Rejects degree tuples violating the Calabi-Yau conditions: P pure and
// connected, degrees positive with sum h_P and count |P| - 3.
void validate_cicy_degrees(const Poset& p, const std::vector<long>& degrees);

// dp: number of nodes of the complete intersection, (prod d_j) * sum over
// 4-cycles of the chain count of J(P_C).
Int node_count(const Poset& p, const std::vector<long>& degrees,
               const EnumerationCaps& caps = {});

struct SmoothabilityVerdict {
  bool smoothable = false;
  std::string reason;
  std::optional<ConvexCycle> witness;  // a failing cycle when not smoothable
};

// Smoothing criterion: with prod d_j > 1 the CICY always smooths; with all
// degrees one it smooths iff every 4-cycle whose locus poset is a chain has
// a relation vector dependent on the remaining ones.
SmoothabilityVerdict is_smoothable(const Poset& p,
                                   const std::vector<long>& degrees,
                                   const EnumerationCaps& caps = {});

}  // namespace hibicy
