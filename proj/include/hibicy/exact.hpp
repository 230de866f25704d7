#pragma once

// Exact arithmetic utilities shared by every module: GMP typedefs, the error
// taxonomy used for CLI exit codes, and small dense linear algebra over Z and
// Q (fraction-free Bareiss elimination for ranks/determinants, rational
// Gauss-Jordan for kernels and solves, and a phase-1 simplex for membership
// tests in polyhedral cones). Everything here is deterministic and exact; no
// floating point is used anywhere in the library.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hibicy {

using Int = mpz_class;
using Rat = mpq_class;

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;
using RatVector = std::vector<Rat>;

// Input that could not be parsed (poset files, degree lists, CLI values).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation refused to start or continue because an enumeration guard
// (ideal cap, cycle cap, element-count limit) was exceeded.
class SizeGuardError : public std::runtime_error {
public:
  explicit SizeGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical cross-check that must hold failed, e.g. a self-test of the
// period coefficients against an independent formula.
class GateError : public std::runtime_error {
public:
  explicit GateError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive search finished without an acceptable result (no operator
// within the requested bounds, or an ambiguous candidate space).
class SearchError : public std::runtime_error {
public:
  explicit SearchError(const std::string& msg) : std::runtime_error(msg) {}
};

Int factorial(long n);

// Binomial coefficient with the usual vanishing convention: zero whenever
// k < 0 or k > n (callers rely on this when summing over free indices).
Int binomial(long n, long k);

// Rank of an integer matrix, computed by fraction-free Bareiss elimination.
long rank(IntMatrix a);

// Determinant of a square integer matrix (Bareiss; exact).
Int determinant(IntMatrix a);

// Reduced row echelon form in place; returns the pivot column indices.
std::vector<int> rref(RatMatrix& a);

long rank(const RatMatrix& a);

// Basis of the right kernel {x : a x = 0}. Basis vectors are scaled to have
// integral entries with content one; the first nonzero entry is positive.
std::vector<RatVector> nullspace(const RatMatrix& a);

// Exact solution of a x = b (any shape); empty optional if inconsistent.
// When the system is underdetermined an arbitrary solution is returned.
std::optional<RatVector> solve(RatMatrix a, RatVector b);

// Whether v lies in the row span of `rows` (all over Q).
bool in_span(const RatVector& v, const std::vector<RatVector>& rows);

// Lagrange evaluation of the degree-(values.size()-1) polynomial interpolating
// f(0), f(1), ..., f(n) at an arbitrary rational point.
Rat lagrange_eval(const std::vector<Int>& values, const Rat& x);

// Whether a x = b admits a solution with x >= 0 (phase-1 simplex, Bland's
// rule, exact rational pivots). Used for lattice-point membership in cones.
bool nonnegative_solution_exists(RatMatrix a, RatVector b);

// Scale a rational vector to integer entries with content one and positive
// leading nonzero entry. Zero vectors are returned unchanged.
RatVector normalize_primitive(RatVector v);

}  // namespace hibicy
