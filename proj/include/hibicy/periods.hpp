#pragma once

// Fundamental periods of the conjectural mirror family: exact coefficients
// A_m from a lattice-point sum over curve classes, recovery of the
// annihilating theta-operator by exact nullspace search, and the genus-0
// BPS extraction through the mirror map. The general A_m formula is never
// trusted blindly: every process first reproduces two independent oracles
// (a quintuple binomial sum and the classical quintic series) or refuses to
// emit numbers.

#include "hibicy/cy_invariants.hpp"

namespace hibicy {

// Integer curve-class lattice L = ker(delta) in Z^E, with a basis of
// fundamental cycles of the Hasse diagram after gluing bottom to top, and
// the degree functional (sum over the cut below the empty ideal).
struct CurveClassLattice {
  std::vector<std::vector<Int>> basis;  // rank = |E| - |P| rows
  std::vector<int> degree_cut;          // E(empty ideal) edge indices

  Int degree(const std::vector<Int>& lambda) const;
};

CurveClassLattice curve_class_lattice(const BoundedPoset& ph);

enum class PeriodProvenance { kLatticeSum, kBinomialOracle };

struct PeriodSeries {
  std::vector<long> degrees;
  std::vector<Int> coeffs;  // A_0 .. A_M
  PeriodProvenance provenance = PeriodProvenance::kLatticeSum;
  std::string note;  // set when the input lies outside the gated envelope
};

// A_m = sum over nonnegative lambda in L of degree m of
// prod_j (d_j m)! / prod_e lambda_e!. Computed by flow enumeration on the
// Hasse diagram. Before the first series is returned, the implementation
// must reproduce p1_period_oracle for m <= 8 and the quintic factorials for
// m <= 10; a mismatch raises GateError and poisons further calls.
// Parallelizes over m; HIBI_CY_THREADS caps the workers.
PeriodSeries period_coefficients(const CicySpec& spec, int M);

// Independent quintuple-sum formula for the hexagonal crown periods.
// Cost grows like (m+1)^5; meant for small m.
Int p1_period_oracle(long m);

// Series A_0..A_M built from the oracle above.
PeriodSeries p1_period_series(int M);

// Operator sum_{k=0}^{zdegree} z^k P_k(theta) with
// P_k(theta) = sum_i coeffs[k][i] theta^i. Normalized to integer entries of
// content one with coeffs[0][order] > 0.
struct ThetaOperator {
  int order = 0;
  int zdegree = 0;
  std::vector<std::vector<Int>> coeffs;  // [k][i] for z^k theta^i
};

// Finds the lexicographically minimal (order, zdegree) operator, both at
// least 1, annihilating the series: exact rational nullspace of the
// recurrence system on coefficients 0..M-10, verified on the 10 held-out
// coefficients. Throws std::invalid_argument when the series is shorter
// than (max_order+1)(max_zdegree+1)+10, SearchError when no operator exists
// within the bounds or when a candidate nullspace is ambiguous.
ThetaOperator fit_theta_operator(const PeriodSeries& series, int max_order,
                                 int max_zdegree);

// Coefficient list of (operator applied to the series), truncated at M;
// all zero iff the operator annihilates every available coefficient.
std::vector<Int> apply_operator(const ThetaOperator& op,
                                const PeriodSeries& series);

// Genus-0 BPS numbers n_1..n_D from an order-4 operator with a maximal
// unipotent point at z = 0 (leading column theta^4): Frobenius solutions,
// mirror map, Yukawa coupling normalized to deg_X, Lambert inversion.
// Exact rational arithmetic; integrality of the result is a theorem to be
// tested, not an assumption, so rationals are returned.
std::vector<Rat> genus0_bps(const ThetaOperator& op, const Int& deg_X, int D);

// Renders the operator in the theta-polynomial layout, one factored
// z-power per summand, descending theta powers inside parentheses.
std::string format_theta_operator(const ThetaOperator& op);

}  // namespace hibicy
