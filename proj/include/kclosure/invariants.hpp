#pragma once

// Genus and p-rank three ways: closed forms, the Hurwitz / Deuring-Shafarevich
// formulas fed with orbit data, and the zeta function built from point counts.
// Plus the numeric automorphism-group bounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kclosure/curve.hpp"
#include "kclosure/errors.hpp"
#include "kclosure/gfarith.hpp"
#include "kclosure/intmath.hpp"

namespace kclosure {

// expression templates off: `auto x = a * b` must not dangle
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

struct ClosedForms {
  std::int64_t genus = 0;
  std::int64_t p_rank = 0;
  std::int64_t group_order = 0;
  friend bool operator==(const ClosedForms&, const ClosedForms&) = default;
};

inline ClosedForms closed_forms(const CurveParams& c) { return {c.genus, c.p_rank, c.group_order}; }

/// 2 g_top - 2 == order (2 g_quot - 2) + different
inline bool hurwitz_genus_check(std::int64_t g_top, std::int64_t order, std::int64_t g_quot,
                                std::int64_t total_different) {
  return 2 * g_top - 2 == order * (2 * g_quot - 2) + total_different;
}

/// Genus upstairs from the Hurwitz formula.
inline std::int64_t genus_from_hurwitz(std::int64_t order, std::int64_t g_quot,
                                       std::int64_t total_different) {
  const std::int64_t rhs = order * (2 * g_quot - 2) + total_different;
  if (rhs % 2 != 0 || rhs < -2) throw ConsistencyError("Hurwitz right side is not 2g - 2");
  return rhs / 2 + 1;
}

/// Genus of the quotient from the Hurwitz formula.
inline std::int64_t quotient_genus_from_hurwitz(std::int64_t g_top, std::int64_t order,
                                                std::int64_t total_different) {
  const std::int64_t lhs = 2 * g_top - 2 - total_different;
  if (order <= 0 || lhs % (2 * order) != 0) {
    throw ConsistencyError("Hurwitz formula has no integral quotient genus");
  }
  return lhs / (2 * order) + 1;
}

namespace detail {
inline std::int64_t ds_defect(std::int64_t order, std::span<const std::int64_t> short_orbits) {
  if (order < 1 || prime_factors(static_cast<std::uint64_t>(order)).size() > 1) {
    throw ParameterError("Deuring-Shafarevich needs a p-group");
  }
  std::int64_t d = 0;
  for (auto l : short_orbits) {
    if (l < 1 || order % l != 0) throw ParameterError("short orbit size must divide group order");
    d += order - l;
  }
  return d;
}
}  // namespace detail

/// Solves gamma_top - 1 = |S|(gamma_quot - 1) + sum(|S| - l_i) for gamma_quot.
inline std::int64_t deuring_shafarevich(std::int64_t gamma_top, std::int64_t order,
                                        std::span<const std::int64_t> short_orbits) {
  const std::int64_t rest = gamma_top - 1 - detail::ds_defect(order, short_orbits);
  if (rest % order != 0) throw ConsistencyError("Deuring-Shafarevich has no integral p-rank");
  const std::int64_t g = rest / order + 1;
  if (g < 0) throw ConsistencyError("Deuring-Shafarevich gives a negative p-rank");
  return g;
}

/// p-rank upstairs from the quotient p-rank and the short orbits.
inline std::int64_t p_rank_from_deuring_shafarevich(std::int64_t order, std::int64_t gamma_quot,
                                                    std::span<const std::int64_t> short_orbits) {
  return 1 + order * (gamma_quot - 1) + detail::ds_defect(order, short_orbits);
}

/// Default size budget for zeta counting fields.
inline constexpr std::uint32_t kDefaultZetaFieldBudget = 59049;  // 3^10

/// Number of places of K rational over F_{q^r}.
inline std::int64_t point_count(const CurveParams& c, int r,
                                std::uint32_t max_field = kDefaultZetaFieldBudget) {
  if (r < 1) throw ParameterError("r must be >= 1");
  const auto size = checked_pow(c.q, static_cast<unsigned>(r));
  if (size > static_cast<std::int64_t>(max_field)) {
    throw ResourceError("F_{q^" + std::to_string(r) + "} has " + std::to_string(size) +
                        " elements, budget " + std::to_string(max_field));
  }
  const auto field = make_field(c.p, c.k * r);
  const ArtinSchreierMap as(field, c.q);
  const auto ker = static_cast<std::int64_t>(as.kernel().size());
  std::int64_t fibers = 0;
  for (std::uint32_t v = 1; v < field.size(); ++v) {
    const auto xm = field.from_packed(v).pow(c.m);
    if (as.solvable(xm) && as.solvable(xm.inverse())) ++fibers;
  }
  return fibers * ker * ker + 2 * ker;
}

/// Zeta data L(T) = sum a_i T^i of a genus-g curve over F_q.
struct ZetaData {
  std::int64_t q = 0;
  int genus = 0;
  std::vector<std::int64_t> counts;               // N_1..N_g
  std::vector<std::int64_t> verification_counts;  // N_{g+1}, ...
  std::vector<std::int64_t> coefficients;         // a_0..a_{2g}

  /// N_r predicted from the L-polynomial.
  std::int64_t predicted_count(int r) const;
};

namespace detail {

using RatPoly = std::vector<BigRational>;  // low to high

inline void trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RatPoly rp_mod(RatPoly a, const RatPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const BigRational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline RatPoly rp_div(RatPoly a, const RatPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  RatPoly q(a.size() - b.size() + 1, BigRational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const BigRational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

inline RatPoly rp_derivative(const RatPoly& a) {
  RatPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<int>(i));
  trim(d);
  return d;
}

inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = rp_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline BigRational rp_eval(const RatPoly& a, const BigRational& x) {
  BigRational acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

inline int sign(const BigRational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline int sign_variations(const std::vector<RatPoly>& seq, const BigRational& x) {
  int v = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sign(rp_eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Distinct real roots of a squarefree polynomial in the open interval (a, b),
/// neither endpoint being a root.
inline int sturm_count_open(const RatPoly& p, const BigRational& a, const BigRational& b) {
  std::vector<RatPoly> seq{p, rp_derivative(p)};
  while (!seq.back().empty()) {
    RatPoly r = rp_mod(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  return sign_variations(seq, a) - sign_variations(seq, b);
}

}  // namespace detail

/// All inverse roots of L have absolute value sqrt(q). Exact: the real Weil
/// polynomial h(y), X^{2g} L(1/X) = X^g h(X + q/X), must have every root real
/// in [-2 sqrt q, 2 sqrt q]; equivalently H(u), H(y^2) = h(y) h(-y), must have
/// every root real in [0, 4q].
inline bool satisfies_riemann_hypothesis(std::span<const std::int64_t> a, std::int64_t q) {
  using detail::RatPoly;
  if (a.empty() || a.size() % 2 == 0) return false;
  const std::size_t g = (a.size() - 1) / 2;
  if (g == 0) return a[0] == 1;
  // D_0 = 2, D_1 = y, D_{j+1} = y D_j - q D_{j-1}
  std::vector<RatPoly> D(g + 1);
  D[0] = {BigRational(2)};
  D[1] = {BigRational(0), BigRational(1)};
  for (std::size_t j = 1; j < g; ++j) {
    RatPoly next(j + 2, BigRational(0));
    for (std::size_t i = 0; i < D[j].size(); ++i) next[i + 1] += D[j][i];
    for (std::size_t i = 0; i < D[j - 1].size(); ++i) next[i] -= D[j - 1][i] * q;
    D[j + 1] = std::move(next);
  }
  RatPoly h(g + 1, BigRational(0));
  h[0] = a[g];
  for (std::size_t j = 1; j <= g; ++j) {
    for (std::size_t i = 0; i < D[j].size(); ++i) h[i] += D[j][i] * a[g - j];
  }
  RatPoly hneg = h;
  for (std::size_t i = 1; i < hneg.size(); i += 2) hneg[i] = -hneg[i];
  RatPoly prod(2 * g + 1, BigRational(0));
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < hneg.size(); ++j) prod[i + j] += h[i] * hneg[j];
  }
  RatPoly H;
  for (std::size_t i = 0; i < prod.size(); i += 2) H.push_back(prod[i]);
  detail::trim(H);
  RatPoly sf = detail::rp_div(H, detail::rp_gcd(H, detail::rp_derivative(H)));
  const std::size_t distinct = sf.size() - 1;
  std::size_t in_range = 0;
  const BigRational lo(0), hi(4 * q);
  if (detail::rp_eval(sf, lo) == 0) {
    sf = detail::rp_div(sf, RatPoly{BigRational(0), BigRational(1)});
    ++in_range;
  }
  if (detail::rp_eval(sf, hi) == 0) {
    sf = detail::rp_div(sf, RatPoly{-hi, BigRational(1)});
    ++in_range;
  }
  if (sf.size() > 1) in_range += static_cast<std::size_t>(detail::sturm_count_open(sf, lo, hi));
  return in_range == distinct;
}

namespace detail {

inline std::int64_t to_i64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw ResourceError("zeta coefficient overflow");
  return static_cast<std::int64_t>(v);
}

// Newton: s_r = r a_r - sum_{j<r} s_j a_{r-j}, with s_r = N_r - 1 - q^r.
inline std::vector<BigInt> newton_sums(std::span<const std::int64_t> a, int upto) {
  std::vector<BigInt> s(static_cast<std::size_t>(upto) + 1, 0);
  for (int r = 1; r <= upto; ++r) {
    BigInt acc = r < static_cast<int>(a.size()) ? BigInt(a[static_cast<std::size_t>(r)]) * r : BigInt(0);
    for (int j = 1; j < r; ++j) {
      const int idx = r - j;
      if (idx < static_cast<int>(a.size())) acc -= s[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(idx)];
    }
    s[static_cast<std::size_t>(r)] = acc;
  }
  return s;
}

}  // namespace detail

inline std::int64_t ZetaData::predicted_count(int r) const {
  const auto s = detail::newton_sums(coefficients, r);
  return detail::to_i64(s[static_cast<std::size_t>(r)] + 1 + boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(r)));
}

/// L-polynomial of a genus-g curve (g = counts.size()) from N_1..N_g and the
/// functional equation. Throws ConsistencyError if the data is not the zeta
/// function of a curve: non-integral coefficients, an inverse root off the
/// circle |a| = sqrt q, or a mismatch with the verification counts.
inline ZetaData l_polynomial(std::int64_t q, std::span<const std::int64_t> counts,
                             std::span<const std::int64_t> verification = {}) {
  const int g = static_cast<int>(counts.size());
  ZetaData z;
  z.q = q;
  z.genus = g;
  z.counts.assign(counts.begin(), counts.end());
  z.verification_counts.assign(verification.begin(), verification.end());
  std::vector<BigInt> s(static_cast<std::size_t>(g) + 1, 0);
  for (int j = 1; j <= g; ++j) {
    s[static_cast<std::size_t>(j)] =
        BigInt(counts[static_cast<std::size_t>(j) - 1]) - 1 - boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(j));
  }
  std::vector<BigInt> a(2 * static_cast<std::size_t>(g) + 1, 0);
  a[0] = 1;
  for (int i = 1; i <= g; ++i) {
    BigInt acc = 0;
    for (int j = 1; j <= i; ++j) acc += s[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(i - j)];
    if (acc % i != 0) throw ConsistencyError("counts give a non-integral L-coefficient");
    a[static_cast<std::size_t>(i)] = acc / i;
  }
  for (int i = 0; i < g; ++i) {
    a[static_cast<std::size_t>(2 * g - i)] = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(g - i)) * a[static_cast<std::size_t>(i)];
  }
  for (const auto& c : a) z.coefficients.push_back(detail::to_i64(c));
  if (!satisfies_riemann_hypothesis(z.coefficients, q)) {
    throw ConsistencyError("L-polynomial has an inverse root off |a| = sqrt(q)");
  }
  for (std::size_t i = 0; i < verification.size(); ++i) {
    const int r = g + 1 + static_cast<int>(i);
    if (z.predicted_count(r) != verification[i]) {
      throw ConsistencyError("predicted N_" + std::to_string(r) + " = " +
                             std::to_string(z.predicted_count(r)) + " but counted " +
                             std::to_string(verification[i]));
    }
  }
  return z;
}

/// Smallest g for which N_1..N_g determine a valid L-polynomial that also
/// reproduces every remaining count.
inline int genus_from_zeta(std::int64_t q, std::span<const std::int64_t> counts) {
  for (std::size_t g = 0; g <= counts.size(); ++g) {
    try {
      (void)l_polynomial(q, counts.first(g), counts.subspan(g));
      return static_cast<int>(g);
    } catch (const ConsistencyError&) {
    }
  }
  throw ConsistencyError("no genus up to " + std::to_string(counts.size()) + " fits the counts");
}

/// Degree of L(T) mod p: the number of unit-root eigenvalues of Frobenius.
inline int prank_from_zeta(const ZetaData& z, std::int64_t p) {
  for (std::size_t i = z.coefficients.size(); i-- > 0;) {
    if (z.coefficients[i] % p != 0) return static_cast<int>(i);
  }
  return 0;
}

struct BoundComparison {
  std::string name;
  std::string lhs;
  std::string relation;  // "<=", "<", "==", ">"
  std::string rhs;
  bool holds = false;
  bool asserted = true;  // false: evaluated for information only
};

struct BoundReport {
  std::int64_t genus = 0;
  std::int64_t p_rank = 0;
  std::int64_t group_order = 0;
  std::int64_t delta_order = 0;
  bool ordinary = false;
  std::vector<BoundComparison> comparisons;

  const BoundComparison& get(const std::string& name) const {
    for (const auto& c : comparisons) {
      if (c.name == name) return c;
    }
    throw ParameterError("no bound named " + name);
  }
};

/// All bound evaluations; irrational powers are compared through squares.
inline BoundReport bound_report(const CurveParams& c) {
  BoundReport b;
  b.genus = c.genus;
  b.p_rank = c.p_rank;
  b.group_order = c.group_order;
  b.delta_order = c.q * c.q;
  b.ordinary = c.genus == c.p_rank;
  const BigInt g(c.genus), G(c.group_order), m(c.m), p(c.p), gam(c.p_rank), D(b.delta_order);
  auto s = [](const BigInt& v) { return v.str(); };

  // tame-only bound; G is wild here, so it is informational
  b.comparisons.push_back({"hurwitz_84", s(G), "<=", s(84 * (g - 1)), G <= 84 * (g - 1), false});
  b.comparisons.push_back({"stichtenoth_16g4", s(G), "<=", s(16 * g * g * g * g), G <= 16 * g * g * g * g, true});
  // |Delta| <= p/(p-2) (gamma - 1), cleared of denominators
  const BigInt nl = D * (p - 2), nr = p * (gam - 1);
  b.comparisons.push_back({"nakajima", s(nl), "<=", s(nr), nl <= nr, true});
  b.comparisons.push_back({"nakajima_equality", s(nl), "==", s(nr), nl == nr, c.k == 1});
  // sqrt(m) |G| > g^{3/2}  <=>  m |G|^2 > g^3
  b.comparisons.push_back({"sqrt_m_order_exceeds_g32", s(m * G * G), ">", s(g * g * g), m * G * G > g * g * g, true});
  // |G| <= 34 (g+1)^{3/2}  <=>  |G|^2 <= 34^2 (g+1)^3; proven for ordinary curves
  const BigInt l34 = G * G, r34 = 34 * 34 * (g + 1) * (g + 1) * (g + 1);
  b.comparisons.push_back({"solvable_ordinary_34", s(l34), "<=", s(r34), l34 <= r34, b.ordinary});
  // |G| > g^{3/2} for ordinary K
  b.comparisons.push_back({"ordinary_order_exceeds_g32", s(G * G), ">", s(g * g * g), G * G > g * g * g, b.ordinary});
  return b;
}

}  // namespace kclosure
