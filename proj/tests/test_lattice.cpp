#include <algorithm>

#include "doctest.h"
#include "rqft/lattice.hpp"

using namespace rqft;

namespace {
Model model5() { return Model({5, 2, CausalMode::modular, {}}); }
Model lifted(int N, int W) { return Model({N, 2, CausalMode::lifted, W}); }

// permutation of frame indices induced by g
std::vector<std::size_t> perm_of(const Model& m, const GroupElement& g) {
  std::vector<std::size_t> p(m.num_frames());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = m.frame_index(m.act(g, m.frame_at(i)));
  return p;
}
}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("parameters are validated") {
    CHECK_THROWS_AS(Model({4, 1, CausalMode::modular, {}}), ModelError);
    CHECK_THROWS_AS(Model({9, 3, CausalMode::modular, {}}), ModelError);
    Model m = model5();
    CHECK(m.order() == 4);
    CHECK(m.num_frames() == 100);
    CHECK(centered_lift(4, 5) == -1);
    CHECK(centered_lift(2, 5) == 2);
  }

  TEST_CASE("composition examples") {
    Model m = model5();
    CHECK(m.compose({{1, 2}, 1}, {{3, 4}, 1}) == GroupElement{{4, 1}, 1});
    CHECK(m.compose({{0, 0}, 2}, {{1, 1}, 1}) == GroupElement{{2, 3}, 2});
    for (const auto& g : m.elements()) CHECK(m.compose(g, m.inverse(g)) == m.identity());
  }

  TEST_CASE("composition matches permutation composition on F") {
    Model m = model5();
    GroupElement g1{{0, 0}, 2}, g2{{1, 1}, 1};
    auto p1 = perm_of(m, g1), p2 = perm_of(m, g2), p12 = perm_of(m, m.compose(g1, g2));
    for (std::size_t i = 0; i < p12.size(); ++i) CHECK(p12[i] == p1[p2[i]]);
  }

  TEST_CASE("group axioms are exhaustive at N=5") {
    Model m = model5();
    auto els = m.elements();
    for (const auto& a : els)
      for (const auto& b : els) {
        auto ab = m.compose(a, b);
        for (const auto& f : {m.base_frame(), FramePoint{{2, 3}, 4}})
          REQUIRE(m.act(ab, f) == m.act(a, m.act(b, f)));
      }
    // associativity on all triples
    bool assoc = true;
    for (const auto& a : els)
      for (const auto& b : els)
        for (const auto& c : els)
          assoc = assoc && m.compose(m.compose(a, b), c) == m.compose(a, m.compose(b, c));
    CHECK(assoc);
  }

  TEST_CASE("action examples and transitivity") {
    Model m = model5();
    CHECK(m.act(GroupElement{{0, 0}, 2}, LatticePoint{1, 1}) == LatticePoint{2, 3});
    for (const auto& f : m.frames()) CHECK(m.act(m.identity(), f) == f);
    FramePoint f1{{1, 4}, 3}, f2{{3, 0}, 2};
    int count = 0;
    for (const auto& g : m.elements()) count += m.act(g, f1) == f2;
    CHECK(count == 1);
    CHECK(m.act(m.element_to(f2, f1), f1) == f2);
  }

  TEST_CASE("spacelike relation") {
    Model m = model5();
    CHECK_FALSE(m.spacelike({2, 2}, {2, 2}));
    CHECK(m.spacelike({1, 4}, {0, 0}));
    CHECK_FALSE(m.spacelike({1, 1}, {0, 0}));
    for (const auto& x : m.points())
      for (const auto& y : m.points()) {
        REQUIRE(m.spacelike(x, y) == m.spacelike(y, x));
        for (const auto& g : m.generators()) REQUIRE(m.spacelike(x, y) == m.spacelike(m.act(g, x), m.act(g, y)));
      }
  }

  TEST_CASE("lifted spacelike relation is translation invariant inside the window") {
    Model m = lifted(9, 2);
    Region w = m.window_region();
    for (const auto& x : w)
      for (const auto& y : w) {
        REQUIRE(m.spacelike(x, y) == m.spacelike(y, x));
        LatticePoint a{1, 0};
        REQUIRE(m.spacelike(x, y) == m.spacelike(m.add(x, a), m.add(y, a)));
      }
  }

  TEST_CASE("region spacelike matches brute force") {
    Model m = model5();
    CHECK(m.region_spacelike({}, {{1, 1}}));
    CHECK(m.region_spacelike({{0, 0}}, {{1, 4}}) == m.spacelike({0, 0}, {1, 4}));
    Region U{{0, 0}, {1, 0}}, V{{2, 4}, {3, 3}};
    bool brute = true;
    for (const auto& x : U)
      for (const auto& y : V) brute = brute && m.spacelike(x, y);
    CHECK(m.region_spacelike(U, V) == brute);
  }

  TEST_CASE("causal hull") {
    Model m = lifted(5, 2);
    CHECK(m.causal_hull({{0, 0}}) == Region{{0, 0}});
    Region diamond;
    for (int u = 0; u <= 2; ++u)
      for (int v = 0; v <= 2; ++v) diamond.insert({u, v});
    Region h = m.causal_hull({{0, 0}, {2, 2}});
    CHECK(h == diamond);
    CHECK(m.causal_hull(h) == h);
    Region U{{0, 1}, {4, 0}};
    Region hu = m.causal_hull(U);
    CHECK(std::includes(hu.begin(), hu.end(), U.begin(), U.end()));
    CHECK(m.causal_hull(hu) == hu);
    // a slice of the unit diamond determines the whole diamond
    Model w1 = lifted(5, 1);
    Region slice{{1, 4}, {0, 0}, {4, 1}};
    CHECK(w1.causal_hull(slice) == w1.window_region());
    CHECK_THROWS_AS(w1.causal_hull({{2, 2}}), WindowViolation);
    CHECK_THROWS_AS(model5().causal_hull({{0, 0}}), ModelError);
  }
}
