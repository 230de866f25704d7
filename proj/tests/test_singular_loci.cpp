#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "hibicy/singular_loci.hpp"

using namespace hibicy;

namespace {

// Independent oracle: scan all vertex subsets of P-hat and keep those whose
// induced Hasse subgraph is a single (hence chordless) cycle, that are convex
// in P-hat, avoid at least one bound, and have at least four vertices.
// Returns sorted vertex sets.
std::vector<std::vector<int>> cycle_sets_direct(const BoundedPoset& ph) {
  const int nv = ph.vertex_count();
  REQUIRE(nv <= 12);
  std::vector<std::vector<int>> out;
  for (std::uint32_t s = 0; s < (1u << nv); ++s) {
    if (std::popcount(s) < 4) continue;
    if (((s >> ph.bottom()) & 1u) && ((s >> ph.top()) & 1u)) continue;
    std::vector<int> vs;
    for (int v = 0; v < nv; ++v)
      if ((s >> v) & 1u) vs.push_back(v);

    bool degrees_ok = true;
    for (int v : vs) {
      int d = 0;
      for (int w : ph.neighbors(v))
        if ((s >> w) & 1u) ++d;
      if (d != 2) {
        degrees_ok = false;
        break;
      }
    }
    if (!degrees_ok) continue;

    // All degrees equal to two gives a disjoint union of cycles; require
    // connectivity so the subset is a single cycle.
    std::vector<int> stack = {vs[0]};
    std::uint32_t seen = 1u << vs[0];
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : ph.neighbors(v))
        if (((s >> w) & 1u) && !((seen >> w) & 1u)) {
          seen |= 1u << w;
          stack.push_back(w);
        }
    }
    if (seen != s) continue;

    bool convex = true;
    for (int a : vs) {
      for (int b : vs) {
        if (!ph.less(a, b)) continue;
        for (int w = 0; w < nv && convex; ++w)
          if (!((s >> w) & 1u) && ph.less(a, w) && ph.less(w, b)) convex = false;
      }
      if (!convex) break;
    }
    if (!convex) continue;
    out.push_back(vs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> sorted_vertex_sets(const std::vector<ConvexCycle>& cs) {
  std::vector<std::vector<int>> out;
  for (const auto& c : cs) {
    std::vector<int> vs = c.vertices;
    std::sort(vs.begin(), vs.end());
    out.push_back(std::move(vs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_cycle_structure(const BoundedPoset& ph, const ConvexCycle& c) {
  const int k = c.size();
  REQUIRE(k >= 4);
  REQUIRE(static_cast<int>(c.edge_indices.size()) == k);
  REQUIRE(static_cast<int>(c.directions.size()) == k);
  CHECK(*std::min_element(c.vertices.begin(), c.vertices.end()) == c.vertices[0]);
  for (int i = 0; i < k; ++i) {
    const int a = c.vertices[i], b = c.vertices[(i + 1) % k];
    const Edge& e = ph.edges()[c.edge_indices[i]];
    if (c.directions[i] == 1) {
      CHECK(e.lower == a);
      CHECK(e.upper == b);
    } else {
      REQUIRE(c.directions[i] == -1);
      CHECK(e.lower == b);
      CHECK(e.upper == a);
    }
  }
}

bool is_chain(const Poset& p) {
  for (int a = 0; a < p.size(); ++a)
    for (int b = a + 1; b < p.size(); ++b)
      if (!p.comparable(a, b)) return false;
  return true;
}

}  // namespace

TEST_SUITE("singular-loci") {

TEST_CASE("cycle enumeration matches the subset-scan oracle") {
  for (const auto& name : builtin_poset_names()) {
    const Poset p = builtin_poset(name);
    const BoundedPoset ph(p);
    const auto cycles = minimal_convex_cycles(ph);
    CAPTURE(name);
    CHECK(sorted_vertex_sets(cycles) == cycle_sets_direct(ph));
    for (const auto& c : cycles) check_cycle_structure(ph, c);

    // The 4-cycle list is exactly the size filter applied to the full list.
    const auto fours = lambda4(ph);
    std::vector<std::vector<int>> expect;
    for (const auto& c : cycles)
      if (c.size() == 4) expect.push_back(c.vertices);
    std::vector<std::vector<int>> got;
    for (const auto& c : fours) got.push_back(c.vertices);
    CHECK(got == expect);
  }
}

TEST_CASE("frozen cycle counts for the named posets") {
  auto count = [](const std::string& name, int filter) {
    return minimal_convex_cycles(BoundedPoset(builtin_poset(name)), filter).size();
  };
  // Crown: six 4-cycles plus the middle 6-cycle itself.
  CHECK(count("P1", 0) == 7);
  CHECK(count("P1", 4) == 6);
  CHECK(count("P1", 6) == 1);
  CHECK(count("N", 4) == 2);
  CHECK(count("N", 0) == 2);
  CHECK(count("P5", 4) == 3);
  CHECK(count("V", 0) == 1);
  CHECK(count("UNSM", 4) == 7);
  CHECK(count("chain:4", 0) == 0);
  CHECK(lambda4(BoundedPoset(builtin_poset("chain:6"))).empty());
}

TEST_CASE("relation vectors lie in the kernel of the ray map") {
  for (const auto& name : builtin_poset_names()) {
    const Poset p = builtin_poset(name);
    const BoundedPoset ph(p);
    const IntMatrix delta = ph.delta_matrix();
    for (const auto& c : minimal_convex_cycles(ph)) {
      const std::vector<Int> rho = relation_vector(ph, c);
      REQUIRE(static_cast<int>(rho.size()) == ph.edge_count());

      // Support is exactly the cycle's edges, with the traversal signs.
      int nonzero = 0;
      for (const Int& v : rho)
        if (v != 0) ++nonzero;
      CHECK(nonzero == c.size());
      for (int i = 0; i < c.size(); ++i)
        CHECK(rho[c.edge_indices[i]] == c.directions[i]);

      std::vector<Int> combo(p.size(), 0);
      for (int e = 0; e < ph.edge_count(); ++e)
        for (int col = 0; col < p.size(); ++col)
          combo[col] += rho[e] * delta[e][col];
      CHECK(combo == std::vector<Int>(p.size(), 0));
    }
  }
}

TEST_CASE("relation_vectors follows the lambda4 order") {
  const BoundedPoset ph(builtin_poset("UNSM"));
  const auto fours = lambda4(ph);
  const auto rhos = relation_vectors(ph);
  REQUIRE(rhos.size() == fours.size());
  for (std::size_t i = 0; i < fours.size(); ++i)
    CHECK(rhos[i] == relation_vector(ph, fours[i]));
}

TEST_CASE("crown node loci contract to three-element vee posets") {
  const Poset p = builtin_poset("P1");
  const BoundedPoset ph(p);
  const auto fours = lambda4(ph);
  REQUIRE(fours.size() == 6);
  int through_bottom = 0, through_top = 0;
  Int chain_total = 0;
  for (const auto& c : fours) {
    const bool hasb = std::find(c.vertices.begin(), c.vertices.end(),
                                ph.bottom()) != c.vertices.end();
    const bool hast = std::find(c.vertices.begin(), c.vertices.end(),
                                ph.top()) != c.vertices.end();
    CHECK(hasb != hast);
    hasb ? ++through_bottom : ++through_top;

    const Poset locus = contract_cycle(ph, c);
    REQUIRE(locus.size() == p.size() - 3);
    CHECK_FALSE(is_chain(locus));
    const IdealLattice lat = ideal_lattice(locus);
    CHECK(lat.size() == 5);
    CHECK(lat.chain_count == 2);
    chain_total += lat.chain_count;

    // One bound of the cycle collapses into a stripped class, leaving one
    // comparable pair direction: a single minimum under two maxima, or the
    // reverse.
    int minimals = 0;
    for (int v = 0; v < locus.size(); ++v)
      if (locus.lower_covers(v).empty()) ++minimals;
    CHECK(minimals == (hasb ? 1 : 2));
    CHECK(locus.covers().size() == 2);
  }
  CHECK(through_bottom == 3);
  CHECK(through_top == 3);
  CHECK(chain_total == 12);
}

TEST_CASE("node counts multiply locus chain counts by the degree product") {
  CHECK(node_count(builtin_poset("P1"), {1, 1, 1}) == 12);
  CHECK(node_count(builtin_poset("P5"), {2, 1}) == 8);
  CHECK(node_count(builtin_poset("UNSM"), {1, 1, 1, 1}) == 23);
  CHECK(node_count(builtin_poset("chain:4"), {5}) == 0);
}

TEST_CASE("exceptional ranks of the four-cycle relation lattice") {
  auto rk = [](const std::string& name) {
    return exceptional_rank(BoundedPoset(builtin_poset(name)));
  };
  CHECK(rk("P1") == 5);
  CHECK(rk("P5") == 3);
  CHECK(rk("UNSM") == 5);
  CHECK(rk("N") == 2);
  CHECK(rk("V") == 1);
  CHECK(rk("chain:4") == 0);
}

TEST_CASE("smoothability: crown and fence smooth, staircase does not") {
  const auto crown = is_smoothable(builtin_poset("P1"), {1, 1, 1});
  CHECK(crown.smoothable);
  CHECK(crown.reason == "no cycle contracts to a chain");
  CHECK_FALSE(crown.witness.has_value());

  const auto fence = is_smoothable(builtin_poset("P5"), {2, 1});
  CHECK(fence.smoothable);
  CHECK(fence.reason.find("product of degrees") != std::string::npos);

  const Poset p = builtin_poset("UNSM");
  const BoundedPoset ph(p);
  const auto verdict = is_smoothable(p, {1, 1, 1, 1});
  CHECK_FALSE(verdict.smoothable);
  CHECK(verdict.reason.find("independent") != std::string::npos);
  REQUIRE(verdict.witness.has_value());

  // The witness collapses to a chain and its relation vector is independent
  // of the other six.
  const Poset locus = contract_cycle(ph, *verdict.witness);
  CHECK(is_chain(locus));
  const auto fours = lambda4(ph);
  const auto rhos = relation_vectors(ph);
  std::vector<RatVector> others;
  RatVector mine;
  for (std::size_t i = 0; i < fours.size(); ++i) {
    RatVector r(rhos[i].begin(), rhos[i].end());
    if (fours[i].vertices == verdict.witness->vertices)
      mine = std::move(r);
    else
      others.push_back(std::move(r));
  }
  REQUIRE(mine.size() == rhos[0].size());
  CHECK_FALSE(in_span(mine, others));
}

TEST_CASE("degree validation rejects ill-formed tuples") {
  const Poset p1 = builtin_poset("P1");
  CHECK_NOTHROW(validate_cicy_degrees(p1, {1, 1, 1}));
  CHECK_THROWS_AS(validate_cicy_degrees(p1, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate_cicy_degrees(p1, {1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_cicy_degrees(p1, {1, 3, -1}), std::invalid_argument);

  const Poset split = disjoint_union(builtin_poset("chain:2"),
                                     builtin_poset("chain:2"));
  CHECK_THROWS_AS(validate_cicy_degrees(split, {3}), std::invalid_argument);

  const Poset bent = Poset::from_relations({"x", "y", "w", "z"},
                                           {{0, 1}, {1, 2}, {0, 3}});
  CHECK_THROWS_AS(validate_cicy_degrees(bent, {4}), std::invalid_argument);

  std::string msg;
  try {
    validate_cicy_degrees(p1, {1, 1, 2});
  } catch (const std::invalid_argument& e) {
    msg = e.what();
  }
  CHECK(msg.find("sum to h_P = 3") != std::string::npos);
}

TEST_CASE("cycle cap guards the enumeration") {
  const BoundedPoset ph(builtin_poset("P1"));
  CHECK_THROWS_AS(minimal_convex_cycles(ph, 0, 1), SizeGuardError);
  CHECK_THROWS_AS(node_count(builtin_poset("P1"), {1, 1, 1},
                             EnumerationCaps{.cycles = 1}),
                  SizeGuardError);
  // Degree products above one short-circuit before any enumeration runs.
  CHECK_NOTHROW(is_smoothable(builtin_poset("P5"), {2, 1},
                              EnumerationCaps{.cycles = 1}));
}

}  // TEST_SUITE
