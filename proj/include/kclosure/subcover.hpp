#pragma once

// Quotients K^C for C <= W and K^{Delta~}, Delta~ the translations of the
// primed model
//
//   z'^q - z' = x'^m,   s'^q - s' = 1/(z'^q - z'),
//
// with parameters in a subfield F_qbar. In unprimed coordinates
// phi'_{a',b',1} = phi_{mu a', b'/mu, 1}.

#include <cstdint>
#include <string>
#include <vector>

#include "kclosure/action.hpp"
#include "kclosure/autgroup.hpp"
#include "kclosure/curve.hpp"
#include "kclosure/errors.hpp"
#include "kclosure/gfarith.hpp"
#include "kclosure/intmath.hpp"
#include "kclosure/invariants.hpp"

namespace kclosure {

enum class SubcoverKind { w_quotient, delta_tilde_quotient };

inline std::string to_string(SubcoverKind k) {
  return k == SubcoverKind::w_quotient ? "W-quotient" : "Delta-tilde-quotient";
}

struct SubcoverInvariants {
  std::int64_t genus = 0;
  std::int64_t p_rank = 0;
  std::int64_t group_order = 0;
  friend bool operator==(const SubcoverInvariants&, const SubcoverInvariants&) = default;
};

struct SubcoverSpec {
  SubcoverKind kind = SubcoverKind::w_quotient;
  std::int64_t p = 0;
  int k = 0;
  std::int64_t m = 0;
  std::int64_t d = 1;        // w_quotient
  std::int64_t qbar = 0;     // delta_tilde_quotient
  int kbar = 0;
  std::int64_t quotient_q = 0;
  std::int64_t quotient_m = 0;
  SubcoverInvariants invariants;
};

/// K^C with C the order-d subgroup of W: the curve with parameters (q, m/d).
inline SubcoverSpec w_subcover(const CurveParams& c, std::int64_t d) {
  if (d < 1 || c.m % d != 0) {
    throw ParameterError("d = " + std::to_string(d) + " does not divide m = " + std::to_string(c.m));
  }
  const auto base = curve_params(c.p, c.k, c.m / d);
  SubcoverSpec s;
  s.kind = SubcoverKind::w_quotient;
  s.p = c.p;
  s.k = c.k;
  s.m = c.m;
  s.d = d;
  s.quotient_q = c.q;
  s.quotient_m = base.m;
  s.invariants = {base.genus, base.p_rank, base.group_order};
  return s;
}

/// k-bar with qbar = p^{kbar} and kbar | k; parameter error otherwise.
inline int subfield_degree(std::int64_t q, std::int64_t qbar) {
  if (q < 3 || qbar < 3) throw ParameterError("field sizes must be odd prime powers");
  const auto pf = prime_factors(static_cast<std::uint64_t>(q));
  if (pf.size() != 1) throw ParameterError("q is not a prime power");
  const auto p = static_cast<std::int64_t>(pf[0]);
  const auto k = log_exact(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(p));
  const auto kb = log_exact(static_cast<std::uint64_t>(qbar), static_cast<std::uint64_t>(p));
  if (!k || !kb || *k % *kb != 0) {
    throw ParameterError("F_" + std::to_string(qbar) + " is not a subfield of F_" + std::to_string(q));
  }
  return static_cast<int>(*kb);
}

/// Genus, p-rank of K^{Delta~} and the order of the induced group G-bar.
inline SubcoverInvariants subcover_invariants(std::int64_t q, std::int64_t qbar, std::int64_t m) {
  const int kbar = subfield_degree(q, qbar);
  const auto p = static_cast<std::int64_t>(prime_factors(static_cast<std::uint64_t>(q))[0]);
  if (m < 1 || m % p == 0) throw ParameterError("m must be positive and prime to p");
  const std::int64_t e = q / qbar;
  SubcoverInvariants out{checked_mul(e * m - 1, e - 1), (e - 1) * (e - 1),
                         checked_mul(checked_mul(2 * e * e, m), qbar - 1)};
  if (q == qbar * qbar) {
    const auto base = curve_params(p, kbar, m);
    if (!(out == SubcoverInvariants{base.genus, base.p_rank, base.group_order})) {
      throw ConsistencyError("q = qbar^2 quotient differs from the base curve");
    }
  }
  return out;
}

inline SubcoverSpec delta_tilde_subcover(const CurveParams& c, std::int64_t qbar) {
  SubcoverSpec s;
  s.kind = SubcoverKind::delta_tilde_quotient;
  s.p = c.p;
  s.k = c.k;
  s.m = c.m;
  s.qbar = qbar;
  s.kbar = subfield_degree(c.q, qbar);
  s.quotient_q = c.q / qbar;
  s.quotient_m = c.m;
  s.invariants = subcover_invariants(c.q, qbar, c.m);
  return s;
}

/// Genus and p-rank of K^{Delta~} solved from the Hurwitz and
/// Deuring-Shafarevich formulas with the orbit data of Delta~: 2q places with
/// stabilizer of order qbar and jumps through index m.
inline SubcoverInvariants subcover_from_formulas(const CurveParams& c, std::int64_t qbar) {
  (void)subfield_degree(c.q, qbar);
  const std::int64_t order = qbar * qbar;
  const std::int64_t diff = 2 * c.q * different_exponent(filtration(qbar, c.m));
  const std::vector<std::int64_t> sizes(static_cast<std::size_t>(2 * (c.q / qbar)), qbar);
  return {quotient_genus_from_hurwitz(c.genus, order, diff), deuring_shafarevich(c.p_rank, order, sizes),
          checked_mul(checked_mul(2 * (c.q / qbar) * (c.q / qbar), c.m), qbar - 1)};
}

/// First nonzero element of {mu : mu^q + mu = 0} in packed order.
inline FieldElement canonical_mu(const CurveParams& c, FieldSpec ambient) {
  for (const auto& e : trace_kernel(c.q, ambient)) {
    if (!e.is_zero()) return e;
  }
  throw ConsistencyError("trace kernel is trivial");
}

/// Delta~ = {phi_{mu a, b/mu, 1} : a, b in F_qbar}, a subgroup of Delta of order qbar^2.
inline Group tilde_delta(const CurveParams& c, std::int64_t qbar, FieldSpec ambient) {
  const int kbar = subfield_degree(c.q, qbar);
  if (!ambient.contains_degree(2 * c.k)) throw ParameterError("ambient must contain F_{q^2}");
  const auto mu = canonical_mu(c, ambient);
  const auto mui = mu.inverse();
  std::vector<FieldElement> sub;
  for (const auto& e : ambient.elements()) {
    if (e.in_subfield(kbar)) sub.push_back(e);
  }
  std::vector<Automorphism> el;
  el.reserve(sub.size() * sub.size());
  for (const auto& a : sub) {
    for (const auto& b : sub) el.push_back(make_auto(mu * a, mui * b, ambient.one(), false, c));
  }
  return Group(c, ambient, std::move(el), "Delta~" + std::to_string(qbar));
}

struct NormalizerCheck {
  std::int64_t normalizer_order = 0;
  std::int64_t expected = 0;  // 2 q^2 m (qbar - 1)
  std::int64_t group_order = 0;
  bool ok = false;
};

/// Default ceiling on |G| for brute-force subgroup scans.
inline constexpr std::int64_t kDefaultGroupBudget = 10000;

/// |N_G(Delta~)| = |Delta~| |G-bar| = 2 q^2 m (qbar - 1), by brute force.
inline NormalizerCheck normalizer_order_check(const CurveParams& c, std::int64_t qbar, FieldSpec ambient,
                                              std::int64_t budget = kDefaultGroupBudget) {
  if (c.group_order > budget) throw ResourceError("|G| exceeds the exhaustive budget");
  const auto g = named_subgroup(SubgroupName::G, c, ambient);
  const auto td = tilde_delta(c, qbar, ambient);
  NormalizerCheck out;
  out.normalizer_order = static_cast<std::int64_t>(normalizer(g, td).order());
  out.expected = 2 * c.q * c.q * c.m * (qbar - 1);
  out.group_order = static_cast<std::int64_t>(g.order());
  out.ok = out.normalizer_order == out.expected;
  return out;
}

struct GenAMShadow {
  std::int64_t max_cyclic_order = 0;  // largest p'-order among side-preserving normalizers
  std::int64_t bound = 0;             // m (qbar - 1)
  bool ok = false;                    // max == bound
};

/// Elements of N_G(Delta~) that keep Omega1 and Omega2 in place and have
/// order prime to p: the largest order is m (qbar - 1).
inline GenAMShadow genam_shadow(const CurveParams& c, std::int64_t qbar, FieldSpec ambient,
                                std::int64_t budget = kDefaultGroupBudget) {
  if (c.group_order > budget) throw ResourceError("|G| exceeds the exhaustive budget");
  const auto g = named_subgroup(SubgroupName::G, c, ambient);
  const auto n = normalizer(g, tilde_delta(c, qbar, ambient));
  GenAMShadow out;
  out.bound = c.m * (qbar - 1);
  for (const auto& h : n) {
    if (h.xi) continue;
    const auto o = element_order(h);
    if (o % c.p != 0) out.max_cyclic_order = std::max(out.max_cyclic_order, o);
  }
  out.ok = out.max_cyclic_order == out.bound;
  return out;
}

/// q = qbar^e; the quotient is again a member of the family iff e <= 2.
inline bool isomorphic_to_base(std::int64_t q, std::int64_t qbar) {
  if (qbar < 2) throw ParameterError("qbar must be >= 2");
  const auto e = log_exact(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(qbar));
  if (!e || *e < 1) throw ParameterError(std::to_string(q) + " is not a power of " + std::to_string(qbar));
  return *e <= 2;
}

struct TowerStep {
  int i = 0;
  BigInt q;
  BigInt group_order;
  BigInt genus;
  BigRational ratio_sq;  // m |G|^2 / (4 g^3)
  bool closer = true;    // strictly nearer 1 than the previous step
};

struct TowerReport {
  std::int64_t p = 0;
  std::int64_t m = 0;
  std::vector<TowerStep> steps;
  // |G| / g^{3/2} -> 2 / sqrt(m), recorded as the pair (4, m) for the square
  std::int64_t limit_num = 4;
  std::int64_t limit_den_m = 0;
  bool monotone = true;
};

/// q_i = p^{2^i}, i = 1..i_max.
inline TowerReport tower_ratios(std::int64_t p, std::int64_t m, int i_max) {
  if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p))) throw ParameterError("p must be an odd prime");
  if (m < 1 || m % p == 0) throw ParameterError("m must be positive and prime to p");
  if (i_max < 1 || i_max > 8) throw ParameterError("i_max must be in 1..8");
  TowerReport rep;
  rep.p = p;
  rep.m = m;
  rep.limit_den_m = m;
  BigRational prev_dist = -1;
  for (int i = 1; i <= i_max; ++i) {
    TowerStep s;
    s.i = i;
    s.q = boost::multiprecision::pow(BigInt(p), 1u << i);
    s.group_order = 2 * s.q * s.q * m * (s.q - 1);
    s.genus = (s.q - 1) * (s.q * m - 1);
    s.ratio_sq = BigRational(m * s.group_order * s.group_order, 4 * s.genus * s.genus * s.genus);
    const BigRational dist = boost::multiprecision::abs(s.ratio_sq - 1);
    s.closer = prev_dist < 0 || dist < prev_dist;
    rep.monotone = rep.monotone && s.closer;
    prev_dist = dist;
    rep.steps.push_back(std::move(s));
  }
  return rep;
}

/// Orbit census of Delta~ over an ambient field and the quotient invariants
/// it yields through the two genus formulas.
struct DeltaTildeOrbitCheck {
  std::vector<std::size_t> short_orbit_sizes;
  std::vector<std::size_t> short_stabilizers;
  bool affine_free = true;
  bool fixes_sides = true;  // {phi'_{a,0,1}} fixes Omega1 and {phi'_{0,b,1}} fixes Omega2 pointwise
  SubcoverInvariants from_orbits;
};

inline DeltaTildeOrbitCheck delta_tilde_orbit_check(const CurveParams& c, std::int64_t qbar, FieldSpec ambient) {
  const auto td = tilde_delta(c, qbar, ambient);
  const auto places = enumerate_places(c, ambient);
  const auto sum = orbit_decomposition(td, places);
  DeltaTildeOrbitCheck out;
  std::int64_t diff = 0;
  std::vector<std::int64_t> sizes;
  for (const auto& so : sum.short_orbits) {
    out.short_orbit_sizes.push_back(so.size);
    out.short_stabilizers.push_back(so.stabilizer_order);
    if (is_affine(so.representative)) out.affine_free = false;
    sizes.push_back(static_cast<std::int64_t>(so.size));
    diff += static_cast<std::int64_t>(so.size) *
            different_exponent(filtration(static_cast<std::int64_t>(so.stabilizer_order), c.m));
  }
  for (const auto& h : td) {
    for (const auto& P : places) {
      const auto* ip = std::get_if<InfinitePlace>(&P);
      if (!ip) continue;
      const bool fixes = place_key(kclosure::apply(h, P)) == place_key(P);
      if (h.beta.is_zero() && ip->side == Side::omega1 && !fixes) out.fixes_sides = false;
      if (h.alpha.is_zero() && ip->side == Side::omega2 && !fixes) out.fixes_sides = false;
    }
  }
  const auto order = static_cast<std::int64_t>(td.order());
  out.from_orbits = {quotient_genus_from_hurwitz(c.genus, order, diff), deuring_shafarevich(c.p_rank, order, sizes),
                     checked_mul(checked_mul(2 * (c.q / qbar) * (c.q / qbar), c.m), qbar - 1)};
  return out;
}

}  // namespace kclosure
