#include "hibicy/exact.hpp"

#include <algorithm>
#include <cassert>

namespace hibicy {

Int factorial(long n) {
  assert(n >= 0);
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Int binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// Fraction-free elimination after Bareiss: every intermediate entry is the
// determinant of a minor of the input, and the division by the previous
// pivot is exact. Returns the number of pivots found; `det_sign` (if given)
// accumulates the sign of the row permutation.
static long bareiss(IntMatrix& a, int* det_sign) {
  const long rows = static_cast<long>(a.size());
  const long cols = rows ? static_cast<long>(a[0].size()) : 0;
  Int prev = 1;
  long r = 0;
  if (det_sign) *det_sign = 1;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      if (det_sign) *det_sign = -*det_sign;
    }
    for (long i = r + 1; i < rows; ++i) {
      for (long j = c + 1; j < cols; ++j) {
        Int num = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

long rank(IntMatrix a) { return bareiss(a, nullptr); }

Int determinant(IntMatrix a) {
  const long n = static_cast<long>(a.size());
  for (auto& row : a)
    if (static_cast<long>(row.size()) != n)
      throw std::invalid_argument("determinant needs a square matrix");
  if (n == 0) return 1;
  int sign = 1;
  long r = bareiss(a, &sign);
  if (r < n) return 0;
  return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

std::vector<int> rref(RatMatrix& a) {
  const long rows = static_cast<long>(a.size());
  const long cols = rows ? static_cast<long>(a[0].size()) : 0;
  std::vector<int> pivots;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    Rat inv = 1 / a[r][c];
    for (long j = c; j < cols; ++j) a[r][j] *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (long j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

long rank(const RatMatrix& a) {
  RatMatrix b = a;
  return static_cast<long>(rref(b).size());
}

RatVector normalize_primitive(RatVector v) {
  Int den = 1;
  for (const Rat& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  Int g = 0;
  for (Rat& x : v) {
    x *= den;
    x.canonicalize();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
  }
  if (g == 0) return v;
  int sign = 0;
  for (const Rat& x : v)
    if (x != 0) { sign = sgn(x) < 0 ? -1 : 1; break; }
  if (sign < 0) g = -g;
  for (Rat& x : v) { x /= g; x.canonicalize(); }
  return v;
}

std::vector<RatVector> nullspace(const RatMatrix& a) {
  const long cols = a.empty() ? 0 : static_cast<long>(a[0].size());
  RatMatrix b = a;
  std::vector<int> pivots = rref(b);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (long free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v(cols, 0);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -b[r][free];
    basis.push_back(normalize_primitive(std::move(v)));
  }
  return basis;
}

std::optional<RatVector> solve(RatMatrix a, RatVector b) {
  const long rows = static_cast<long>(a.size());
  const long cols = rows ? static_cast<long>(a[0].size()) : 0;
  assert(static_cast<long>(b.size()) == rows);
  for (long i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = rref(a);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == cols) return std::nullopt;  // row (0 ... 0 | 1)
  RatVector x(cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

bool in_span(const RatVector& v, const std::vector<RatVector>& rows) {
  RatMatrix m = rows;
  long base = rank(m);
  m.push_back(v);
  return rank(m) == base;
}

Rat lagrange_eval(const std::vector<Int>& values, const Rat& x) {
  const long n = static_cast<long>(values.size());
  assert(n > 0);
  Rat total = 0;
  for (long i = 0; i < n; ++i) {
    Rat term(values[i]);
    for (long j = 0; j < n; ++j) {
      if (j == i) continue;
      term *= (x - j) / Rat(i - j);
    }
    total += term;
  }
  return total;
}

// Phase-1 simplex: minimize the sum of artificial variables for a x = b,
// x >= 0. Bland's rule on both the entering and leaving choice guarantees
// termination; all pivots are exact rational operations. Feasibility holds
// iff the optimal artificial mass is zero.
bool nonnegative_solution_exists(RatMatrix a, RatVector b) {
  const long m = static_cast<long>(a.size());
  const long n = m ? static_cast<long>(a[0].size()) : 0;
  assert(static_cast<long>(b.size()) == m);
  for (long i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (long j = 0; j < n; ++j) a[i][j] = -a[i][j];
    }
  }
  // Tableau rows 0..m-1: constraints with artificial identity block appended
  // and the right-hand side in the last column. Row m: reduced costs.
  const long width = n + m + 1;
  RatMatrix t(m + 1, RatVector(width, 0));
  std::vector<long> basis(m);
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][width - 1] = b[i];
    basis[i] = n + i;
  }
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < m; ++i) t[m][j] -= t[i][j];
  for (long i = 0; i < m; ++i) t[m][width - 1] -= t[i][width - 1];

  while (true) {
    long enter = -1;
    for (long j = 0; j < n + m; ++j)
      if (t[m][j] < 0) { enter = j; break; }
    if (enter < 0) break;
    long leave = -1;
    Rat best;
    for (long i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][width - 1] / t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded: cannot happen for phase 1
    Rat inv = 1 / t[leave][enter];
    for (long j = 0; j < width; ++j) t[leave][j] *= inv;
    for (long i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (long j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return t[m][width - 1] == 0;
}

}  // namespace hibicy
