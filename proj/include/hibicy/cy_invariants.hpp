#pragma once

// Invariants of the complete-intersection Calabi-Yau threefolds attached to
// a poset and a degree tuple: Hodge numbers of the crepant small resolution
// Y and of the smoothing X, node count, degree, c2 . H, and the Euler
// characteristic, assembled into one report.

#include "hibicy/singular_loci.hpp"

namespace hibicy {

// A validated (poset, degrees) pair: P pure and connected, degrees positive
// with sum h_P and exactly |P| - 3 entries. Degrees are stored sorted in
// descending order (the intersection is a general member, so the tuple is a
// multiset).
struct CicySpec {
  Poset poset;
  std::vector<long> degrees;

  CicySpec(Poset p, std::vector<long> d);
  long r() const { return static_cast<long>(degrees.size()); }
  long r1() const;  // number of degree-one entries
  long height() const;
  Int degree_product() const;
};

// All admissible degree tuples for the poset: multisets of positive integers
// with |P| - 3 entries summing to h_P, each sorted descending, listed in
// descending lexicographic order. Empty when |P| - 3 <= 0.
std::vector<std::vector<long>> ci_degree_tuples(const Poset& p);

struct HodgePair {
  long h11 = 0;
  Int h12;
};

// Hodge numbers of the small resolution Y: h11 = |E| - |P|; h12 by the
// inclusion-exclusion count of polynomial deformations minus automorphisms.
// For all-ones degrees on a poset without a singleton ordinal summand the
// closed form h_P (|J| - h_P) - sum_e lstar(h_P theta_e) - |P| must agree
// and is recomputed as a cross-check (GateError on mismatch).
HodgePair hodge_small_resolution(const CicySpec& spec,
                                 const EnumerationCaps& caps = {});

// Hodge numbers of the smoothing X: h11(X) = h11(Y) - rk and
// h12(X) = h12(Y) + dp - rk. Throws std::invalid_argument when the
// smoothing does not exist.
HodgePair smoothed_hodge(const CicySpec& spec, const EnumerationCaps& caps = {});

struct InvariantReport {
  std::vector<long> degrees;
  Int ideal_count;   // |J(P)|
  Int chain_count;   // c_J(P), the degree of the Hibi variety
  long edge_count = 0;

  long h11_Y = 0;
  Int h12_Y;
  Int dp;            // node count
  long rk = 0;       // exceptional rank
  bool smoothable = false;
  std::string smooth_reason;
  std::string witness;  // description of the failing cycle when present

  std::optional<long> h11_X;  // present when smoothable
  std::optional<Int> h12_X;
  std::optional<Int> chi_X;

  std::optional<Int> deg_X;   // present only when h11_X == 1
  std::optional<Int> c2H;
  std::string partial_reason;  // why deg/c2H are absent, when they are

  std::string caveat;  // torsion disclaimer, always set
};

// Full report. Degree and c2 . H require Picard rank one of the smoothing
// (h11_X = 1); otherwise those fields stay empty and partial_reason says
// why. Non-smoothable inputs get a report without any X fields.
InvariantReport invariant_report(const CicySpec& spec,
                                 const EnumerationCaps& caps = {});

// One-line description of a cycle ("(a < x > b < y)" style vertex list).
std::string describe_cycle(const BoundedPoset& ph, const ConvexCycle& c);

}  // namespace hibicy
