#include "hibicy/lattice_geometry.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace hibicy {

Int count_points(const Poset& p, long m) {
  if (m < 0) return 0;
  if (m == 0) return 1;
  // A monotone labeling x: P -> {0..m} is the same as the weakly increasing
  // chain of ideals D_k = {x < k}, k = 1..m. Count chains by m-1 rounds of
  // "sum over sub-ideals".
  IdealLattice lat = ideal_lattice(p);
  std::vector<Int> f(lat.size(), 1);
  for (long step = 1; step < m; ++step) {
    std::vector<Int> g(lat.size(), 0);
    for (int i = 0; i < lat.size(); ++i)
      for (int j = 0; j < lat.size(); ++j)
        if ((lat.ideals[j] & ~lat.ideals[i]) == 0) g[i] += f[j];
    f = std::move(g);
  }
  Int total = 0;
  for (const Int& x : f) total += x;
  return total;
}

Int count_interior(const BoundedPoset& ph, long m) {
  if (m <= 0) return 0;
  // A labeling of P-hat that is strict on every Hasse edge restricts to a
  // strict order-preserving x: P -> {1..m-1}; its level sets are antichains.
  // Equivalently: a chain empty = D_1 <= D_2 <= ... <= D_m = P of ideals
  // whose successive differences are antichains.
  const Poset& p = ph.middle();
  IdealLattice lat = ideal_lattice(p);
  const int full = lat.size() - 1;
  std::vector<Int> f(lat.size(), 0);
  f[0] = 1;
  for (long step = 1; step < m; ++step) {
    std::vector<Int> g(lat.size(), 0);
    for (int i = 0; i < lat.size(); ++i) {
      if (f[i] == 0) continue;
      for (int j = 0; j < lat.size(); ++j) {
        std::uint32_t diff = lat.ideals[j] & ~lat.ideals[i];
        if ((lat.ideals[i] & ~lat.ideals[j]) != 0) continue;  // not a superset
        if (!p.is_antichain(diff)) continue;
        g[j] += f[i];
      }
    }
    f = std::move(g);
  }
  return f[full];
}

Contraction contract(const BoundedPoset& ph,
                     const std::vector<std::vector<int>>& blocks) {
  const int nv = ph.vertex_count();
  std::vector<int> rep(nv);
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](int v) {
    while (rep[v] != v) v = rep[v] = rep[rep[v]];
    return v;
  };
  for (const auto& block : blocks) {
    for (int v : block) {
      if (v < 0 || v >= nv) throw std::invalid_argument("block vertex out of range");
      rep[find(v)] = find(block[0]);
    }
    // The fiber must be connected in the Hasse diagram.
    if (block.empty()) continue;
    std::vector<int> seen, stack = {block[0]};
    seen.push_back(block[0]);
    auto in_block = [&](int v) {
      return std::find(block.begin(), block.end(), v) != block.end();
    };
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : ph.neighbors(v)) {
        if (!in_block(w)) continue;
        if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
          seen.push_back(w);
          stack.push_back(w);
        }
      }
    }
    for (int v : block)
      if (std::find(seen.begin(), seen.end(), v) == seen.end())
        throw std::invalid_argument("contraction fiber is disconnected");
  }
  if (find(ph.bottom()) == find(ph.top()))
    throw std::invalid_argument("contraction identifies bottom with top");

  // Number the classes, middles first in order of their smallest vertex.
  std::vector<int> class_id(nv, -9);
  std::vector<std::vector<int>> members;
  const int bottom_rep = find(ph.bottom());
  const int top_rep = find(ph.top());
  for (int v = 0; v < nv; ++v) {
    int r = find(v);
    if (r == bottom_rep || r == top_rep) continue;
    if (class_id[r] == -9) {
      class_id[r] = static_cast<int>(members.size());
      members.push_back({});
    }
    members[class_id[r]].push_back(v);
  }
  const int k = static_cast<int>(members.size());

  // Quotient relation on classes (bounds tracked as two extra slots) is
  // generated by the images of the Hasse edges; close and reject cycles.
  auto slot = [&](int v) {
    int r = find(v);
    if (r == bottom_rep) return k;      // bottom slot
    if (r == top_rep) return k + 1;     // top slot
    return class_id[r];
  };
  std::vector<std::vector<bool>> lt(k + 2, std::vector<bool>(k + 2, false));
  for (const Edge& e : ph.edges()) {
    int a = slot(e.lower), b = slot(e.upper);
    if (a != b) lt[a][b] = true;
  }
  for (int mid = 0; mid < k + 2; ++mid)
    for (int a = 0; a < k + 2; ++a)
      if (lt[a][mid])
        for (int b = 0; b < k + 2; ++b)
          if (lt[mid][b]) lt[a][b] = true;
  for (int a = 0; a < k + 2; ++a)
    if (lt[a][a])
      throw std::invalid_argument("contraction does not preserve the order");

  std::vector<std::string> names;
  for (const auto& block : members) {
    std::string nm;
    for (int v : block) {
      if (!nm.empty()) nm += "+";
      nm += ph.vertex_name(v);
    }
    names.push_back(nm);
  }
  std::vector<std::pair<int, int>> rel;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (lt[a][b]) rel.emplace_back(a, b);

  Contraction out;
  out.quotient = Poset::from_relations(std::move(names), rel);
  out.class_of.resize(nv);
  for (int v = 0; v < nv; ++v) {
    int s = slot(v);
    out.class_of[v] = s == k ? Contraction::kBottomClass
                     : s == k + 1 ? Contraction::kTopClass
                                  : s;
  }
  return out;
}

Poset facet_poset(const BoundedPoset& ph, int edge_index) {
  if (edge_index < 0 || edge_index >= ph.edge_count())
    throw std::invalid_argument("edge index out of range");
  const Edge& e = ph.edges()[edge_index];
  return contract(ph, {{e.lower, e.upper}}).quotient;
}

std::vector<int> edge_cut(const BoundedPoset& ph, std::uint32_t tau) {
  const int n = ph.n();
  if (n < 32 && (tau >> n) != 0)
    throw std::invalid_argument("ideal mask has bits outside the poset");
  if (!ph.middle().is_ideal(tau))
    throw std::invalid_argument("subset is not an order ideal");
  auto inside = [&](int v) {
    return v == ph.bottom() || (v < n && ((tau >> v) & 1u));
  };
  std::vector<int> cut;
  for (int i = 0; i < ph.edge_count(); ++i)
    if (inside(ph.edges()[i].lower) && !inside(ph.edges()[i].upper))
      cut.push_back(i);
  return cut;
}

AnticanonicalCheck anticanonical_check(const BoundedPoset& ph) {
  if (!ph.pure())
    throw std::invalid_argument("anticanonical level cuts need a pure poset");
  AnticanonicalCheck out;
  out.height = ph.height_top();
  std::vector<int> hits(ph.edge_count(), 0);
  for (int k = 1; k <= out.height; ++k) {
    std::uint32_t tau = 0;
    for (int v = 0; v < ph.n(); ++v)
      if (ph.height(v) < k) tau |= 1u << v;
    out.level_ideals.push_back(tau);
    out.level_cuts.push_back(edge_cut(ph, tau));
    for (int e : out.level_cuts.back()) ++hits[e];
  }
  out.partition_ok =
      std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  return out;
}

GorensteinTerminalCertificate gorenstein_terminal_certificate(
    const BoundedPoset& ph, std::uint32_t tau) {
  const int n = ph.n();
  if (n > 8)
    throw SizeGuardError("hull point enumeration limited to 8 elements; "
                         "poset has " + std::to_string(n));
  std::vector<int> cut = edge_cut(ph, tau);
  std::vector<bool> in_cut(ph.edge_count(), false);
  for (int e : cut) in_cut[e] = true;
  IntMatrix delta = ph.delta_matrix();
  IntMatrix rays;
  for (int e = 0; e < ph.edge_count(); ++e)
    if (!in_cut[e]) rays.push_back(delta[e]);

  GorensteinTerminalCertificate cert;
  {
    RatMatrix a;
    RatVector b;
    for (const auto& ray : rays) {
      a.push_back(RatVector(ray.begin(), ray.end()));
      b.push_back(1);
    }
    cert.height_one = solve(std::move(a), std::move(b)).has_value();
  }

  // Candidate lattice points: ray coordinates are in {-1,0,1}, so the hull's
  // bounding box lies inside that grid. A candidate belongs to the hull iff
  // it is a convex combination of the rays (phase-1 simplex feasibility).
  auto is_ray = [&](const std::vector<Int>& x) {
    return std::find(rays.begin(), rays.end(), x) != rays.end();
  };
  auto in_hull = [&](const std::vector<Int>& x) {
    RatMatrix a(n + 1, RatVector(rays.size()));
    RatVector b;
    for (size_t j = 0; j < rays.size(); ++j) {
      for (int i = 0; i < n; ++i) a[i][j] = rays[j][i];
      a[n][j] = 1;
    }
    for (int i = 0; i < n; ++i) b.push_back(Rat(x[i]));
    b.push_back(1);
    return nonnegative_solution_exists(std::move(a), std::move(b));
  };
  cert.no_extra_points = true;
  std::vector<Int> x(n, -1);
  while (true) {
    if (!is_ray(x) && in_hull(x)) {
      cert.no_extra_points = false;
      break;
    }
    int i = 0;
    for (; i < n; ++i) {
      if (x[i] < 1) { x[i] += 1; break; }
      x[i] = -1;
    }
    if (i == n) break;
  }
  return cert;
}

bool forest_basis_check(const BoundedPoset& ph, std::uint32_t tau,
                        const std::vector<int>& b) {
  const int n = ph.n();
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("basis candidate must have exactly |P| = " +
                                std::to_string(n) + " edges");
  std::vector<bool> used(ph.edge_count(), false);
  for (int e : b) {
    if (e < 0 || e >= ph.edge_count())
      throw std::invalid_argument("edge index out of range");
    if (used[e]) throw std::invalid_argument("repeated edge in basis candidate");
    used[e] = true;
  }
  for (int e : edge_cut(ph, tau))
    if (used[e])
      throw std::invalid_argument("basis candidate meets the cut E(tau)");

  // Graph side: b must be a spanning forest of exactly two trees, one
  // holding the bottom and one holding the top. With |b| = |P| and |P|+2
  // vertices this is equivalent to: acyclic, bottom and top not joined.
  std::vector<int> rep(ph.vertex_count());
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](int v) {
    while (rep[v] != v) v = rep[v] = rep[rep[v]];
    return v;
  };
  bool acyclic = true;
  for (int e : b) {
    int a = find(ph.edges()[e].lower), c = find(ph.edges()[e].upper);
    if (a == c) { acyclic = false; break; }
    rep[a] = c;
  }
  bool graph_ok = acyclic && find(ph.bottom()) != find(ph.top());

  IntMatrix delta = ph.delta_matrix();
  IntMatrix sq;
  for (int e : b) sq.push_back(delta[e]);
  Int det = determinant(std::move(sq));
  bool det_ok = det == 1 || det == -1;

  if (graph_ok != det_ok)
    throw GateError("forest certificate and determinant certificate disagree");
  return det_ok;
}

}  // namespace hibicy
