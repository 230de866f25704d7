#pragma once

// Geometry of the order polytope Delta(P) and the toric variety it defines:
// Ehrhart-style lattice point counts of dilations, facet contractions, the
// ray map delta on Hasse edges, edge cuts of divisor classes, and the
// certificates (Gorenstein height, terminality, forest bases) used to verify
// that a crepant small resolution exists locally.

#include "hibicy/poset.hpp"

namespace hibicy {

// Number of lattice points of m*Delta(P): monotone labelings P -> {0..m}.
// By convention, 0 for m < 0 and 1 for m = 0.
Int count_points(const Poset& p, long m);

// Number of interior lattice points of m*Delta(P): labelings x of P-hat with
// x(bottom) = 0, x(top) = m and x strictly increasing along every Hasse edge.
// 0 for m <= 0.
Int count_interior(const BoundedPoset& ph, long m);

// Contraction of P-hat by a vertex partition. Unlisted vertices remain
// singletons; each block must induce a connected subgraph of the Hasse
// diagram and the quotient relation must stay antisymmetric.
struct Contraction {
  static constexpr int kBottomClass = -1;
  static constexpr int kTopClass = -2;
  Poset quotient;             // the classes away from the two bounds
  std::vector<int> class_of;  // per P-hat vertex: quotient index or a bound tag
};

// Throws std::invalid_argument when a block is disconnected, when the
// quotient order acquires a cycle, or when bottom and top end up identified.
Contraction contract(const BoundedPoset& ph,
                     const std::vector<std::vector<int>>& blocks);

// Poset of the facet of Delta(P) attached to a Hasse edge: the edge is
// contracted in P-hat and the bounds are stripped; always |P| - 1 elements.
Poset facet_poset(const BoundedPoset& ph, int edge_index);

// Edge cut E(tau): indices of edges whose lower endpoint lies in the ideal
// tau extended by the bottom and whose upper endpoint does not. tau is a
// bitmask over P and must be an order ideal.
std::vector<int> edge_cut(const BoundedPoset& ph, std::uint32_t tau);

// The level cuts tau_k = {u : height(u) < k} for k = 1..h_P, whose divisors
// sum to the anticanonical class. For pure P the cuts partition the edges.
struct AnticanonicalCheck {
  int height = 0;
  std::vector<std::uint32_t> level_ideals;
  std::vector<std::vector<int>> level_cuts;
  bool partition_ok = false;
};
AnticanonicalCheck anticanonical_check(const BoundedPoset& ph);

// Certificate that the maximal cone attached to tau is Gorenstein canonical
// and terminal: the rays away from the cut lie on a height-one hyperplane
// (exact functional solved over Q) and the convex hull of those rays
// contains no other lattice points.
struct GorensteinTerminalCertificate {
  bool height_one = false;
  bool no_extra_points = false;
};
GorensteinTerminalCertificate gorenstein_terminal_certificate(
    const BoundedPoset& ph, std::uint32_t tau);

// Whether the edge subset b (indices into edges(), |b| = |P|, disjoint from
// E(tau)) spans the ray lattice unimodularly. Graph characterization: the
// subgraph (P-hat, b) is a forest of exactly two trees separating bottom
// from top. Algebraic characterization: |det delta(b)| = 1. Both are
// computed and must agree; the common verdict is returned.
bool forest_basis_check(const BoundedPoset& ph, std::uint32_t tau,
                        const std::vector<int>& b);

}  // namespace hibicy
