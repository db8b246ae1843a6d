#include <gtest/gtest.h>

#include <cstdint>
#include <tuple>
#include <vector>

#include "kclosure/invariants.hpp"

namespace kclosure {
namespace {

const std::vector<std::tuple<std::int64_t, int, std::int64_t>> kGrid{
    {3, 1, 1}, {3, 1, 2}, {3, 1, 4}, {3, 1, 5}, {5, 1, 1}, {5, 1, 2}, {7, 1, 1}, {3, 2, 1}};

// Rational places over F_{q^r} by scanning every z and s for each x.
std::int64_t brute_count(const CurveParams& c, int r) {
  const auto f = make_field(c.p, c.k * r);
  const auto el = f.elements();
  std::int64_t n = 0;
  for (const auto& x : el) {
    if (x.is_zero()) continue;
    std::int64_t zs = 0, ss = 0;
    const auto xm = x.pow(c.m), xmi = x.pow(-c.m);
    for (const auto& t : el) {
      const auto tq = t.pow(c.q) + t;
      zs += tq == xm;
      ss += tq == xmi;
    }
    n += zs * ss;
  }
  for (const auto& l : el) n += 2 * (l.pow(c.q) + l).is_zero();
  return n;
}

std::vector<std::int64_t> counts(const CurveParams& c, int upto, std::uint32_t budget = kDefaultZetaFieldBudget) {
  std::vector<std::int64_t> out;
  for (int r = 1; r <= upto; ++r) out.push_back(point_count(c, r, budget));
  return out;
}

TEST(ClosedFormsTest, Examples) {
  EXPECT_EQ(closed_forms(curve_params(3, 1, 1)), (ClosedForms{4, 4, 36}));
  EXPECT_EQ(closed_forms(curve_params(3, 1, 2)), (ClosedForms{10, 4, 72}));
  EXPECT_EQ(closed_forms(curve_params(3, 2, 1)), (ClosedForms{64, 64, 1296}));
}

TEST(HurwitzTest, Examples) {
  EXPECT_TRUE(hurwitz_genus_check(4, 9, 0, 24));
  EXPECT_TRUE(hurwitz_genus_check(0, 1, 0, 0));
  EXPECT_FALSE(hurwitz_genus_check(5, 9, 0, 24));
  EXPECT_EQ(genus_from_hurwitz(9, 0, 24), 4);
  EXPECT_EQ(quotient_genus_from_hurwitz(4, 9, 24), 0);
  EXPECT_THROW(genus_from_hurwitz(9, 0, 23), ConsistencyError);
  EXPECT_THROW(quotient_genus_from_hurwitz(4, 9, 22), ConsistencyError);
}

TEST(HurwitzTest, DeltaQuotientAcrossGrid) {
  for (auto [p, k, m] : kGrid) {
    const auto c = curve_params(p, k, m);
    const auto diff = 2 * c.q * (m + 1) * (c.q - 1);
    EXPECT_EQ(genus_from_hurwitz(c.q * c.q, 0, diff), c.genus);
    const std::vector<std::int64_t> sizes{c.q, c.q};
    EXPECT_EQ(deuring_shafarevich(c.p_rank, c.q * c.q, sizes), 0);
    EXPECT_EQ(p_rank_from_deuring_shafarevich(c.q * c.q, 0, sizes), c.p_rank);
  }
}

// K over F = K^Psi: unramified of degree q with g(F) = (q-1)m and p-rank q-1.
TEST(HurwitzTest, UnramifiedPsiQuotient) {
  for (auto [p, k, m] : kGrid) {
    const auto c = curve_params(p, k, m);
    EXPECT_EQ(quotient_genus_from_hurwitz(c.genus, c.q, 0), (c.q - 1) * m);
    EXPECT_EQ(deuring_shafarevich(c.p_rank, c.q, {}), c.q - 1);
  }
}

TEST(DeuringShafarevichTest, Examples) {
  const std::vector<std::int64_t> two{3, 3};
  EXPECT_EQ(deuring_shafarevich(4, 9, two), 0);
  EXPECT_EQ(deuring_shafarevich(4, 3, {}), 2);
  EXPECT_EQ(deuring_shafarevich(7, 1, {}), 7);
  EXPECT_THROW(deuring_shafarevich(4, 6, {}), ParameterError);
  const std::vector<std::int64_t> bad{2};
  EXPECT_THROW(deuring_shafarevich(4, 9, bad), ParameterError);
  EXPECT_THROW(deuring_shafarevich(5, 9, two), ConsistencyError);
}

TEST(PointCountTest, MatchesBruteForce) {
  for (auto [p, k, m, rmax] : {std::tuple{3, 1, 1, 5}, {3, 1, 2, 5}, {5, 1, 1, 3}, {5, 1, 2, 3}, {3, 2, 1, 2}}) {
    const auto c = curve_params(p, k, m);
    for (int r = 1; r <= rmax; ++r) EXPECT_EQ(point_count(c, r), brute_count(c, r)) << p << k << m << " r=" << r;
  }
  EXPECT_EQ(point_count(curve_params(3, 1, 1), 1), 4);
}

TEST(PointCountTest, Budget) {
  const auto c = curve_params(3, 1, 1);
  EXPECT_THROW(point_count(c, 11), ResourceError);
  EXPECT_THROW(point_count(c, 0), ParameterError);
  EXPECT_THROW(point_count(c, 3, 26), ResourceError);
}

TEST(PointCountTest, HasseWeil) {
  for (auto [p, k, m] : {std::tuple{3, 1, 1}, {3, 1, 2}, {5, 1, 1}}) {
    const auto c = curve_params(p, k, m);
    BigInt qr = 1;
    for (int r = 1; r <= 8; ++r) {
      qr *= c.q;
      if (qr > BigInt(kDefaultZetaFieldBudget)) break;
      const BigInt dev = BigInt(point_count(c, r)) - qr - 1;
      EXPECT_LE(dev * dev, 4 * BigInt(c.genus) * c.genus * qr) << "r = " << r;
    }
  }
}

// exp(sum N_r T^r / r) == L(T) / ((1 - T)(1 - qT)) as power series through T^n.
void expect_zeta_series(const ZetaData& z, std::span<const std::int64_t> n) {
  const std::size_t d = n.size();
  std::vector<BigRational> logz(d + 1, 0), e(d + 1, 0);
  for (std::size_t r = 1; r <= d; ++r) logz[r] = BigRational(n[r - 1], static_cast<std::int64_t>(r));
  e[0] = 1;
  for (std::size_t i = 1; i <= d; ++i) {
    BigRational acc = 0;
    for (std::size_t j = 1; j <= i; ++j) acc += BigRational(static_cast<std::int64_t>(j)) * logz[j] * e[i - j];
    e[i] = acc / static_cast<std::int64_t>(i);
  }
  // multiply by (1 - T)(1 - qT)
  std::vector<BigRational> l(d + 1, 0);
  for (std::size_t i = 0; i <= d; ++i) {
    l[i] = e[i];
    if (i >= 1) l[i] -= (z.q + 1) * e[i - 1];
    if (i >= 2) l[i] += z.q * e[i - 2];
  }
  for (std::size_t i = 0; i <= d; ++i) {
    const std::int64_t want = i < z.coefficients.size() ? z.coefficients[i] : 0;
    EXPECT_EQ(l[i], BigRational(want)) << "T^" << i;
  }
}

TEST(LPolynomialTest, GenusFour) {
  const auto c = curve_params(3, 1, 1);
  const auto n = counts(c, 10);
  EXPECT_EQ(n, (std::vector<std::int64_t>{4, 24, 28, 96, 244, 618, 2188, 6720, 19684, 59064}));
  const auto z = l_polynomial(c.q, std::span(n).first(4), std::span(n).subspan(4));
  EXPECT_EQ(z.coefficients, (std::vector<std::int64_t>{1, 0, 7, 0, 28, 0, 63, 0, 81}));
  EXPECT_EQ(z.coefficients.size(), 9u);
  expect_zeta_series(z, n);
  EXPECT_EQ(genus_from_zeta(c.q, n), 4);
  EXPECT_EQ(prank_from_zeta(z, 3), 4);
  for (int r = 1; r <= 10; ++r) EXPECT_EQ(z.predicted_count(r), n[static_cast<std::size_t>(r) - 1]);
}

TEST(LPolynomialTest, GenusTenContainsGenusFour) {
  const auto c = curve_params(3, 1, 2);
  const auto n = counts(c, 10);
  EXPECT_EQ(genus_from_zeta(c.q, n), 10);
  const auto z = l_polynomial(c.q, n);
  ASSERT_EQ(z.coefficients.size(), 21u);
  expect_zeta_series(z, n);
  EXPECT_EQ(prank_from_zeta(z, 3), 4);
  // the quotient by W has parameters (3, 1), so its L-polynomial divides this one
  const std::vector<std::int64_t> l4{1, 0, 7, 0, 28, 0, 63, 0, 81};
  std::vector<std::int64_t> rem = z.coefficients;
  std::vector<std::int64_t> quot(rem.size() - l4.size() + 1, 0);
  for (std::size_t i = 0; i < quot.size(); ++i) {
    quot[i] = rem[i];
    for (std::size_t j = 0; j < l4.size(); ++j) rem[i + j] -= quot[i] * l4[j];
  }
  for (auto v : rem) EXPECT_EQ(v, 0);
  EXPECT_TRUE(satisfies_riemann_hypothesis(quot, 3));
  EXPECT_EQ(quot.size(), 13u);
}

TEST(LPolynomialTest, PredictsElevenGenusTen) {
  const auto c = curve_params(3, 1, 2);
  const auto z = l_polynomial(c.q, counts(c, 10));
  EXPECT_EQ(z.predicted_count(11), point_count(c, 11, 177147));
}

TEST(LPolynomialTest, RejectsBadCounts) {
  const std::vector<std::int64_t> zeros(4, 0);
  EXPECT_THROW(l_polynomial(3, zeros), ConsistencyError);
  EXPECT_THROW(genus_from_zeta(3, zeros), ConsistencyError);
  const std::vector<std::int64_t> good{4, 24, 28, 96};
  const std::vector<std::int64_t> wrong{245};
  EXPECT_THROW(l_polynomial(3, good, wrong), ConsistencyError);
  const std::vector<std::int64_t> frac{5, 10};
  EXPECT_THROW(l_polynomial(3, frac), ConsistencyError);
}

TEST(RiemannHypothesisTest, EllipticCases) {
  for (std::int64_t a = -6; a <= 6; ++a) {
    const std::vector<std::int64_t> l{1, a, 3};
    EXPECT_EQ(satisfies_riemann_hypothesis(l, 3), a * a <= 12) << a;
  }
  const std::vector<std::int64_t> square{1, 6, 9};
  EXPECT_TRUE(satisfies_riemann_hypothesis(square, 9));
  const std::vector<std::int64_t> one{1};
  EXPECT_TRUE(satisfies_riemann_hypothesis(one, 5));
}

TEST(RiemannHypothesisTest, ProductsOfFactors) {
  auto mul = [](std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
    std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  };
  EXPECT_TRUE(satisfies_riemann_hypothesis(mul({1, 3, 5}, {1, -2, 5}), 5));
  EXPECT_TRUE(satisfies_riemann_hypothesis(mul({1, 3, 5}, {1, 3, 5}), 5));
  EXPECT_FALSE(satisfies_riemann_hypothesis(mul({1, 3, 5}, {1, 6, 5}), 5));
  EXPECT_FALSE(satisfies_riemann_hypothesis(mul({1, 4, 3}, {1, 0, 3}), 3));
}

TEST(PRankTest, DegreeModP) {
  ZetaData z;
  z.q = 3;
  z.genus = 1;
  z.coefficients = {1, 3, 3};
  EXPECT_EQ(prank_from_zeta(z, 3), 0);
  z.coefficients = {1, 1, 3};
  EXPECT_EQ(prank_from_zeta(z, 3), 1);
}

TEST(BoundReportTest, SmallestCase) {
  const auto b = bound_report(curve_params(3, 1, 1));
  EXPECT_TRUE(b.ordinary);
  EXPECT_EQ(b.get("nakajima").lhs, "9");
  EXPECT_EQ(b.get("nakajima").rhs, "9");
  EXPECT_TRUE(b.get("nakajima_equality").holds);
  EXPECT_TRUE(b.get("nakajima_equality").asserted);
  EXPECT_EQ(b.get("sqrt_m_order_exceeds_g32").lhs, "1296");
  EXPECT_EQ(b.get("sqrt_m_order_exceeds_g32").rhs, "64");
  EXPECT_EQ(b.get("solvable_ordinary_34").rhs, "144500");
  EXPECT_TRUE(b.get("solvable_ordinary_34").holds);
  EXPECT_FALSE(b.get("hurwitz_84").asserted);
  EXPECT_THROW(b.get("nope"), ParameterError);
}

TEST(BoundReportTest, Grid) {
  for (auto [p, k, m] : kGrid) {
    const auto b = bound_report(curve_params(p, k, m));
    EXPECT_EQ(b.ordinary, m == 1);
    EXPECT_EQ(b.get("nakajima_equality").holds, k == 1);
    for (const auto& cmp : b.comparisons) {
      if (cmp.asserted) {
        EXPECT_TRUE(cmp.holds) << cmp.name << " at " << p << "," << k << "," << m;
      }
    }
  }
}

}  // namespace
}  // namespace kclosure
