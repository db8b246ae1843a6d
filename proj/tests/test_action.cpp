#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "kclosure/action.hpp"

namespace kclosure {
namespace {

struct Fixture {
  CurveParams c;
  FieldSpec amb;
  std::vector<Place> places;
  explicit Fixture(std::int64_t p, int k, std::int64_t m)
      : c(curve_params(p, k, m)), amb(ambient_field(c)), places(enumerate_places(c, amb)) {}
  Group named(SubgroupName n) const { return named_subgroup(n, c, amb); }
};

bool on_model(const Place& P, const CurveParams& c) {
  if (auto a = std::get_if<AffinePlace>(&P)) return satisfies_model(*a, c);
  return std::get<InfinitePlace>(P).label.q_trace(static_cast<unsigned>(c.k)).is_zero();
}

TEST(ApplyTest, XiSwapsCoordinates) {
  const Fixture f(3, 1, 1);
  const auto xi = xi_auto(f.amb, f.c);
  for (const auto& P : f.places) {
    const auto Q = kclosure::apply(xi, P);
    if (auto a = std::get_if<AffinePlace>(&P)) {
      const auto& b = std::get<AffinePlace>(Q);
      EXPECT_EQ(b.x, a->x.inverse());
      EXPECT_EQ(b.s, a->z);
      EXPECT_EQ(b.z, a->s);
    } else {
      const auto& i = std::get<InfinitePlace>(P);
      const auto& j = std::get<InfinitePlace>(Q);
      EXPECT_EQ(j.side, other(i.side));
      EXPECT_EQ(j.label, i.label);
    }
  }
}

TEST(ApplyTest, ImagesStayOnModelAndComposeAsAction) {
  for (auto [p, k, m] : {std::tuple{3, 1, 1}, {3, 1, 2}, {5, 1, 1}}) {
    const Fixture f(p, k, m);
    const auto g = f.named(SubgroupName::G);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (const auto& P : f.places) {
      for (int t = 0; t < 8; ++t) {
        const auto& a = g.elements()[pick(rng)];
        const auto& b = g.elements()[pick(rng)];
        const auto Q = kclosure::apply(a, P);
        EXPECT_TRUE(on_model(Q, f.c)) << to_string(Q);
        EXPECT_EQ(place_key(kclosure::apply(compose(a, b), P)), place_key(kclosure::apply(a, kclosure::apply(b, P))));
      }
    }
  }
}

TEST(ApplyTest, FieldMismatch) {
  const Fixture f(3, 1, 1);
  const auto other_amb = make_field(3, 4);
  EXPECT_THROW(kclosure::apply(xi_auto(other_amb, f.c), f.places.front()), ParameterError);
}

TEST(ApplyTest, OmegaTwoFixedByBetaTranslations) {
  const Fixture f(3, 1, 2);
  for (const auto& b : trace_kernel(f.c.q, f.amb)) {
    const auto g = make_auto(f.amb.zero(), b, f.amb.one(), false, f.c);
    for (const auto& l : trace_kernel(f.c.q, f.amb)) {
      const Place P = InfinitePlace{Side::omega2, l};
      EXPECT_EQ(kclosure::apply(g, P), P);
    }
  }
}

TEST(OrbitTest, Examples) {
  const Fixture f(3, 1, 1);
  const auto delta = f.named(SubgroupName::Delta);
  const Place inf2 = InfinitePlace{Side::omega2, f.amb.zero()};
  const auto o = orbit(delta, inf2);
  ASSERT_EQ(o.size(), 3u);
  for (const auto& P : o) EXPECT_EQ(std::get<InfinitePlace>(P).side, Side::omega2);
  for (const auto& P : f.places) {
    if (is_affine(P)) {
      EXPECT_EQ(orbit(delta, P).size(), 9u);
    }
  }
  const Group trivial(f.c, f.amb, {identity_auto(f.amb, f.c)});
  EXPECT_EQ(orbit(trivial, f.places[5]), std::vector<Place>{f.places[5]});
}

TEST(StabilizerTest, Examples) {
  const Fixture f(3, 1, 2);
  const auto delta = f.named(SubgroupName::Delta);
  const auto w = f.named(SubgroupName::W);
  for (const auto& l : trace_kernel(f.c.q, f.amb)) {
    const Place p1 = InfinitePlace{Side::omega1, l};
    const Place p2 = InfinitePlace{Side::omega2, l};
    const auto s1 = stabilizer(delta, p1);
    ASSERT_EQ(s1.order(), 3u);
    for (const auto& g : s1) EXPECT_TRUE(g.beta.is_zero() && g.v.is_one() && !g.xi);
    for (const auto& l2 : trace_kernel(f.c.q, f.amb)) {
      const Place q2 = InfinitePlace{Side::omega2, l2};
      EXPECT_EQ(intersection(s1, stabilizer(delta, q2)).order(), 1u);
    }
    EXPECT_EQ(stabilizer(w, p1).order(), w.order());
    EXPECT_EQ(stabilizer(w, p2).order(), w.order());
  }
  for (const auto& P : f.places) {
    const auto g = f.named(SubgroupName::G);
    EXPECT_EQ(orbit(g, P).size() * stabilizer(g, P).order(), g.order());
  }
}

TEST(OrbitDecompositionTest, DeltaHasTwoShortOrbits) {
  for (auto [p, k, m] : {std::tuple{3, 1, 1}, {3, 1, 2}, {5, 1, 1}, {3, 2, 1}}) {
    const Fixture f(p, k, m);
    const auto s = orbit_decomposition(f.named(SubgroupName::Delta), f.places);
    const auto q = static_cast<std::size_t>(f.c.q);
    EXPECT_EQ(s.short_orbit_sizes(), (std::vector<std::size_t>{q, q}));
    std::size_t covered = 0;
    for (const auto& [size, mult] : s.size_census) covered += size * mult;
    EXPECT_EQ(covered, f.places.size());
    for (const auto& [size, mult] : s.size_census) EXPECT_TRUE(size == q || size == q * q);
  }
}

TEST(OrbitDecompositionTest, GMergesInfinitePlaces) {
  const Fixture f(3, 1, 1);
  std::vector<Place> inf;
  for (const auto& P : f.places) {
    if (!is_affine(P)) inf.push_back(P);
  }
  const auto s = orbit_decomposition(f.named(SubgroupName::G), inf);
  ASSERT_EQ(s.orbits.size(), 1u);
  EXPECT_EQ(s.orbits[0].size(), 6u);
  const Group trivial(f.c, f.amb, {identity_auto(f.amb, f.c)});
  const auto t = orbit_decomposition(trivial, f.places);
  EXPECT_EQ(t.size_census.size(), 1u);
  EXPECT_EQ(t.size_census.at(1), f.places.size());
  EXPECT_TRUE(t.short_orbits.empty());
}

TEST(OrbitDecompositionTest, NotClosed) {
  const Fixture f(3, 1, 1);
  const std::vector<Place> one{InfinitePlace{Side::omega1, f.amb.zero()}};
  EXPECT_THROW(orbit_decomposition(f.named(SubgroupName::G), one), ConsistencyError);
}

TEST(FiltrationTest, DifferentExponent) {
  const auto a = delta_filtration(curve_params(3, 1, 1));
  EXPECT_EQ(a.orders, (std::vector<std::int64_t>{3, 3}));
  EXPECT_EQ(a.order_at(2), 1);
  EXPECT_EQ(different_exponent(a), 4);
  const auto b = delta_filtration(curve_params(3, 1, 2), Side::omega2);
  EXPECT_EQ(b.orders, (std::vector<std::int64_t>{3, 3, 3}));
  EXPECT_EQ(different_exponent(b), 6);
  EXPECT_EQ(different_exponent(filtration(1, 4)), 0);
  RamificationData bad;
  bad.orders = {3, 9};
  EXPECT_THROW(different_exponent(bad), ParameterError);
  bad.orders = {0};
  EXPECT_THROW(different_exponent(bad), ParameterError);
}

}  // namespace
}  // namespace kclosure
