#pragma once

// Models of the Galois closure K = K(x, s, z):
//
//   z^q + z = x^m,      s^q + s = x^{-m}   (so (s^q+s)(z^q+z) = 1)
//
// and its place atlas over a finite ambient field. Affine places are the
// triples (x, s, z) with x != 0. The 2q remaining places sit over x = 0 and
// x = infinity and are recorded by a side and a label:
//
//   Omega1: zeroes of x (poles of s); label = limiting value of z.
//   Omega2: poles of x (poles of z);  label = limiting value of s.
//
// Labels satisfy l^q + l = 0. An infinite place is rational over a field iff
// its label lies in that field.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "kclosure/errors.hpp"
#include "kclosure/gfarith.hpp"
#include "kclosure/intmath.hpp"

namespace kclosure {

struct CurveParams {
  std::int64_t p = 0;
  int k = 0;
  std::int64_t m = 0;
  std::int64_t q = 0;
  int r = 0;
  std::int64_t genus = 0;        // (q-1)(qm-1)
  std::int64_t p_rank = 0;       // (q-1)^2
  std::int64_t group_order = 0;  // 2 q^2 m (q-1)

  friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

inline CurveParams curve_params(std::int64_t p, int k, std::int64_t m) {
  if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw ParameterError("p must be an odd prime, got " + std::to_string(p));
  }
  if (k < 1) throw ParameterError("k must be >= 1");
  if (m < 1) throw ParameterError("m must be >= 1");
  if (m % p == 0) throw ParameterError("m must be prime to p (p | m)");
  CurveParams c;
  c.p = p;
  c.k = k;
  c.m = m;
  c.q = checked_pow(p, static_cast<unsigned>(k));
  if (c.q > (1 << 20)) throw ResourceError("q too large");
  c.r = smallest_r(c.q, m, p);
  c.genus = checked_mul(c.q - 1, checked_mul(c.q, m) - 1);
  c.p_rank = (c.q - 1) * (c.q - 1);
  c.group_order = checked_mul(checked_mul(2 * c.q * c.q, m), c.q - 1);
  return c;
}

/// Degree over F_p of the ambient F_{q^{lcm(2, r, d)}}.
inline int ambient_degree(const CurveParams& c, int d = 1) {
  const int l = std::lcm(std::lcm(2, c.r), d);
  return c.k * l;
}

inline FieldSpec ambient_field(const CurveParams& c, int d = 1) {
  return make_field(c.p, ambient_degree(c, d));
}

struct AffinePlace {
  FieldElement x;
  FieldElement s;
  FieldElement z;
  friend bool operator==(const AffinePlace&, const AffinePlace&) = default;
};

enum class Side : std::uint8_t { omega1 = 1, omega2 = 2 };

inline Side other(Side s) { return s == Side::omega1 ? Side::omega2 : Side::omega1; }

struct InfinitePlace {
  Side side = Side::omega1;
  FieldElement label;
  friend bool operator==(const InfinitePlace&, const InfinitePlace&) = default;
};

using Place = std::variant<AffinePlace, InfinitePlace>;

inline bool is_affine(const Place& P) { return std::holds_alternative<AffinePlace>(P); }

inline FieldSpec place_field(const Place& P) {
  if (auto a = std::get_if<AffinePlace>(&P)) return a->x.spec();
  return std::get<InfinitePlace>(P).label.spec();
}

/// Packs a place into 64 bits; coordinates need at most 21 bits each.
inline std::uint64_t place_key(const Place& P) {
  if (auto a = std::get_if<AffinePlace>(&P)) {
    return (std::uint64_t{a->x.packed()} << 42) | (std::uint64_t{a->s.packed()} << 21) |
           std::uint64_t{a->z.packed()};
  }
  const auto& i = std::get<InfinitePlace>(P);
  return (std::uint64_t{1} << 63) | (std::uint64_t(i.side) << 21) | i.label.packed();
}

/// "A:x,s,z" or "I:1,l" / "I:2,l", elements as coefficient tuples.
inline std::string to_string(const Place& P) {
  if (auto a = std::get_if<AffinePlace>(&P)) {
    return "A:" + a->x.to_string() + "," + a->s.to_string() + "," + a->z.to_string();
  }
  const auto& i = std::get<InfinitePlace>(P);
  return "I:" + std::to_string(int(i.side)) + "," + i.label.to_string();
}

inline bool satisfies_model(const AffinePlace& a, const CurveParams& c) {
  if (a.x.is_zero()) return false;
  const auto xm = a.x.pow(c.m);
  const auto k = static_cast<unsigned>(c.k);
  return a.z.q_trace(k) == xm && a.s.q_trace(k) == xm.inverse();
}

inline Place make_affine_place(const FieldElement& x, const FieldElement& s, const FieldElement& z,
                               const CurveParams& c) {
  if (!(x.spec() == s.spec()) || !(x.spec() == z.spec())) {
    throw ParameterError("coordinates from different fields");
  }
  if (x.spec().p() != static_cast<std::uint32_t>(c.p)) throw ParameterError("wrong characteristic");
  if (x.is_zero()) throw DomainError("x = 0 lies under the infinite places");
  AffinePlace a{x, s, z};
  if (!satisfies_model(a, c)) {
    throw ValidationError("triple " + to_string(Place{a}) + " violates z^q+z=x^m, s^q+s=x^-m");
  }
  return a;
}

inline Place make_infinite_place(Side side, const FieldElement& label, const CurveParams& c) {
  if (!label.q_trace(static_cast<unsigned>(c.k)).is_zero()) {
    throw ValidationError("infinite-place label must satisfy l^q + l = 0");
  }
  return InfinitePlace{side, label};
}

/// Every place whose coordinates (affine) or label (infinite) lie in the
/// ambient field, sorted by place_key.
inline std::vector<Place> enumerate_places(const CurveParams& c, FieldSpec ambient) {
  if (ambient.p() != static_cast<std::uint32_t>(c.p)) throw ParameterError("wrong characteristic");
  const ArtinSchreierMap as(ambient, c.q);
  std::vector<Place> out;
  for (std::uint32_t v = 1; v < ambient.size(); ++v) {
    const auto x = ambient.from_packed(v);
    const auto xm = x.pow(c.m);
    const auto xmi = xm.inverse();
    if (!as.solvable(xm) || !as.solvable(xmi)) continue;
    const auto zs = as.solutions(xm);
    const auto ss = as.solutions(xmi);
    for (const auto& s : ss) {
      for (const auto& z : zs) out.push_back(AffinePlace{x, s, z});
    }
  }
  for (Side side : {Side::omega1, Side::omega2}) {
    for (const auto& l : as.kernel()) out.push_back(InfinitePlace{side, l});
  }
  std::sort(out.begin(), out.end(),
            [](const Place& a, const Place& b) { return place_key(a) < place_key(b); });
  return out;
}

/// y = s + z, which satisfies y^q + y = x^m + x^{-m}.
inline FieldElement recover_y(const Place& P) {
  auto a = std::get_if<AffinePlace>(&P);
  if (!a) throw DomainError("y is not finite at an infinite place");
  return a->s + a->z;
}

/// u = z - s, the invariant of the translations (s, z) -> (s + a, z + a);
/// it satisfies u^q + u = x^m - x^{-m}.
inline FieldElement psi_invariant(const Place& P) {
  auto a = std::get_if<AffinePlace>(&P);
  if (!a) throw DomainError("z - s is not finite at an infinite place");
  return a->z - a->s;
}

/// t = x^{m(q-1)}
inline FieldElement t_value(const Place& P, const CurveParams& c) {
  auto a = std::get_if<AffinePlace>(&P);
  if (!a) throw DomainError("t is 0 or infinite at an infinite place");
  return a->x.pow(c.m * (c.q - 1));
}

/// Coordinates of the model s'^q - s' = 1/(z'^q - z'), z'^q - z' = x'^m.
struct PrimedTriple {
  FieldElement x;
  FieldElement s;
  FieldElement z;
  friend bool operator==(const PrimedTriple&, const PrimedTriple&) = default;
};

inline void check_primed_constants(const FieldElement& mu, const FieldElement& theta,
                                   const CurveParams& c) {
  if (mu.is_zero() || !mu.q_trace(static_cast<unsigned>(c.k)).is_zero()) {
    throw ParameterError("mu must be nonzero with mu^q + mu = 0");
  }
  if (theta.is_zero() || !(theta.pow(c.m) == -mu.inverse())) {
    throw ParameterError("theta must satisfy theta^m = -1/mu");
  }
}

/// (x, s, z) -> (x/theta, s/mu, mu z).
inline PrimedTriple primed_transform(const Place& P, const FieldElement& mu,
                                     const FieldElement& theta, const CurveParams& c) {
  check_primed_constants(mu, theta, c);
  auto a = std::get_if<AffinePlace>(&P);
  if (!a) throw DomainError("primed coordinates are defined for affine places");
  return {a->x / theta, a->s / mu, mu * a->z};
}

inline Place primed_inverse(const PrimedTriple& t, const FieldElement& mu,
                            const FieldElement& theta, const CurveParams& c) {
  check_primed_constants(mu, theta, c);
  return make_affine_place(theta * t.x, mu * t.s, t.z / mu, c);
}

inline bool satisfies_primed_model(const PrimedTriple& t, const CurveParams& c) {
  const auto k = static_cast<unsigned>(c.k);
  const auto zz = t.z.frobenius(k) - t.z;
  const auto ss = t.s.frobenius(k) - t.s;
  return zz == t.x.pow(c.m) && !zz.is_zero() && ss == zz.inverse();
}

}  // namespace kclosure
