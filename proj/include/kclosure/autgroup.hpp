#pragma once

// The group G = Phi x| <xi> acting on K = K(x, s, z).
//
//   phi_{a,b,v}(x, s, z) = (v x, v^{-m} s + a, v^m z + b),  a^q+a = b^q+b = 0, v^{m(q-1)} = 1
//   xi(x, s, z)          = (1/x, z, s)
//
// Every element is stored as phi_{a,b,v} o xi^e. Products are normalised with
//
//   phi_{a,b,v} o phi_{a',b',v'} = phi_{v^{-m}a' + a, v^m b' + b, v v'}
//   xi o phi_{a,b,v} o xi        = phi_{b,a,v^{-1}},     xi^2 = 1.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "kclosure/curve.hpp"
#include "kclosure/errors.hpp"
#include "kclosure/gfarith.hpp"

namespace kclosure {

struct Automorphism {
  FieldElement alpha;
  FieldElement beta;
  FieldElement v;
  bool xi = false;
  std::int64_t m = 0;

  std::uint64_t key() const {
    return (std::uint64_t{alpha.packed()} << 43) | (std::uint64_t{beta.packed()} << 22) |
           (std::uint64_t{v.packed()} << 1) | std::uint64_t{xi};
  }

  bool is_identity() const { return alpha.is_zero() && beta.is_zero() && v.is_one() && !xi; }

  /// "phi:a|b|v|e"
  std::string to_string() const {
    return "phi:" + alpha.to_string() + "|" + beta.to_string() + "|" + v.to_string() + "|" +
           (xi ? "1" : "0");
  }

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.alpha == b.alpha && a.beta == b.beta && a.v == b.v && a.xi == b.xi && a.m == b.m;
  }
};

inline Automorphism make_auto(const FieldElement& alpha, const FieldElement& beta,
                              const FieldElement& v, bool xi, const CurveParams& c) {
  if (!(alpha.spec() == beta.spec()) || !(alpha.spec() == v.spec())) {
    throw ParameterError("automorphism constants from different fields");
  }
  const auto k = static_cast<unsigned>(c.k);
  if (!alpha.q_trace(k).is_zero()) throw ValidationError("alpha^q + alpha != 0");
  if (!beta.q_trace(k).is_zero()) throw ValidationError("beta^q + beta != 0");
  if (v.is_zero() || !v.pow(c.m * (c.q - 1)).is_one()) {
    throw ValidationError("v^{m(q-1)} != 1");
  }
  return {alpha, beta, v, xi, c.m};
}

inline Automorphism identity_auto(FieldSpec ambient, const CurveParams& c) {
  return {ambient.zero(), ambient.zero(), ambient.one(), false, c.m};
}

inline Automorphism xi_auto(FieldSpec ambient, const CurveParams& c) {
  return {ambient.zero(), ambient.zero(), ambient.one(), true, c.m};
}

namespace detail {

inline void check_compatible(const Automorphism& g, const Automorphism& h) {
  if (g.m != h.m || !(g.v.spec() == h.v.spec())) {
    throw ParameterError("automorphisms with different parameters");
  }
}

// xi o phi o xi
inline Automorphism swap_by_xi(const Automorphism& f) {
  return {f.beta, f.alpha, f.v.inverse(), f.xi, f.m};
}

}  // namespace detail

/// g o h (apply h first).
inline Automorphism compose(const Automorphism& g, const Automorphism& h) {
  detail::check_compatible(g, h);
  const Automorphism h2 = g.xi ? detail::swap_by_xi(h) : h;
  const auto vm = g.v.pow(g.m);
  const auto vmi = vm.inverse();
  return {vmi * h2.alpha + g.alpha, vm * h2.beta + g.beta, g.v * h2.v, g.xi != h.xi, g.m};
}

inline Automorphism inverse(const Automorphism& g) {
  const auto vm = g.v.pow(g.m);
  Automorphism phi_inv{-(vm * g.alpha), -(vm.inverse() * g.beta), g.v.inverse(), false, g.m};
  if (!g.xi) return phi_inv;
  // (phi xi)^{-1} = xi phi^{-1} = (xi phi^{-1} xi) xi
  auto r = detail::swap_by_xi(phi_inv);
  r.xi = true;
  return r;
}

inline std::int64_t element_order(const Automorphism& g) {
  Automorphism cur = g;
  for (std::int64_t n = 1;; ++n) {
    if (cur.is_identity()) return n;
    cur = compose(cur, g);
    if (n > (1 << 24)) throw ConsistencyError("element order runaway");
  }
}

inline Automorphism conjugate(const Automorphism& g, const Automorphism& h) {
  return compose(compose(g, h), inverse(g));
}

/// Explicit finite subgroup, elements sorted by key.
class Group {
 public:
  Group() = default;
  Group(const CurveParams& params, FieldSpec ambient, std::vector<Automorphism> elements,
        std::string name = "")
      : params_(params), ambient_(ambient), elements_(std::move(elements)), name_(std::move(name)) {
    std::sort(elements_.begin(), elements_.end(),
              [](const Automorphism& a, const Automorphism& b) { return a.key() < b.key(); });
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    keys_.reserve(elements_.size() * 2);
    for (const auto& e : elements_) keys_.insert(e.key());
  }

  const CurveParams& params() const { return params_; }
  FieldSpec ambient() const { return ambient_; }
  const std::vector<Automorphism>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  bool contains(const Automorphism& g) const { return keys_.count(g.key()) != 0; }
  Automorphism identity() const { return identity_auto(ambient_, params_); }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const Group& a, const Group& b) {
    return a.ambient_ == b.ambient_ && a.elements_ == b.elements_;
  }

 private:
  CurveParams params_;
  FieldSpec ambient_;
  std::vector<Automorphism> elements_;
  std::string name_;
  std::unordered_set<std::uint64_t> keys_;
};

enum class SubgroupName { Psi, Delta, W, V, M, Phi, G };

inline std::string to_string(SubgroupName n) {
  switch (n) {
    case SubgroupName::Psi: return "Psi";
    case SubgroupName::Delta: return "Delta";
    case SubgroupName::W: return "W";
    case SubgroupName::V: return "V";
    case SubgroupName::M: return "M";
    case SubgroupName::Phi: return "Phi";
    case SubgroupName::G: return "G";
  }
  return "?";
}

inline SubgroupName parse_subgroup_name(const std::string& s) {
  for (auto n : {SubgroupName::Psi, SubgroupName::Delta, SubgroupName::W, SubgroupName::V,
                 SubgroupName::M, SubgroupName::Phi, SubgroupName::G}) {
    if (to_string(n) == s) return n;
  }
  throw ParameterError("unknown subgroup name '" + s + "'");
}

inline Group named_subgroup(SubgroupName name, const CurveParams& c, FieldSpec ambient) {
  const auto ker = trace_kernel(c.q, ambient);
  const auto vg = v_group(c.q, c.m, ambient);
  const auto zero = ambient.zero();
  const auto one = ambient.one();
  std::vector<FieldElement> w;
  for (const auto& v : vg.elements) {
    if (v.pow(c.m).is_one()) w.push_back(v);
  }
  std::vector<Automorphism> el;
  auto add_phi = [&](std::span<const FieldElement> vs, bool with_xi) {
    for (const auto& a : ker) {
      for (const auto& b : ker) {
        for (const auto& v : vs) {
          el.push_back({a, b, v, false, c.m});
          if (with_xi) el.push_back({a, b, v, true, c.m});
        }
      }
    }
  };
  switch (name) {
    case SubgroupName::Psi:
      for (const auto& a : ker) el.push_back({a, a, one, false, c.m});
      break;
    case SubgroupName::Delta: {
      const FieldElement ones[] = {one};
      add_phi(ones, false);
      break;
    }
    case SubgroupName::W:
      for (const auto& v : w) el.push_back({zero, zero, v, false, c.m});
      break;
    case SubgroupName::V:
      for (const auto& v : vg.elements) el.push_back({zero, zero, v, false, c.m});
      break;
    case SubgroupName::M:
      add_phi(w, false);
      break;
    case SubgroupName::Phi:
      add_phi(vg.elements, false);
      break;
    case SubgroupName::G:
      add_phi(vg.elements, true);
      break;
  }
  return Group(c, ambient, std::move(el), to_string(name));
}

/// Closure of the generators under composition (breadth-first).
inline Group generate(const CurveParams& c, FieldSpec ambient, std::span<const Automorphism> gens,
                      std::string name = "", std::size_t limit = 1u << 22) {
  const auto id = identity_auto(ambient, c);
  std::vector<Automorphism> el{id};
  std::unordered_set<std::uint64_t> seen{id.key()};
  std::deque<Automorphism> frontier{id};
  while (!frontier.empty()) {
    const auto g = frontier.front();
    frontier.pop_front();
    for (const auto& h : gens) {
      auto gh = compose(g, h);
      if (seen.insert(gh.key()).second) {
        el.push_back(gh);
        frontier.push_back(gh);
        if (el.size() > limit) throw ResourceError("group closure exceeds limit");
      }
    }
  }
  return Group(c, ambient, std::move(el), std::move(name));
}

inline bool is_subset(const Group& g, std::span<const Automorphism> h) {
  return std::all_of(h.begin(), h.end(), [&](const auto& x) { return g.contains(x); });
}

inline bool is_subset(const Group& g, const Group& h) { return is_subset(g, h.elements()); }

inline bool is_closed(const Group& h) {
  for (const auto& a : h) {
    if (!h.contains(inverse(a))) return false;
    for (const auto& b : h) {
      if (!h.contains(compose(a, b))) return false;
    }
  }
  return h.contains(h.identity());
}

namespace detail {
inline void require_subset(const Group& g, const Group& h) {
  if (!is_subset(g, h)) throw ParameterError("subgroup is not contained in the group");
}
}  // namespace detail

inline bool is_normal(const Group& g, const Group& h) {
  detail::require_subset(g, h);
  for (const auto& x : g) {
    const auto xi = inverse(x);
    for (const auto& y : h) {
      if (!h.contains(compose(compose(x, y), xi))) return false;
    }
  }
  return true;
}

inline Group centralizer(const Group& g, const Group& h) {
  detail::require_subset(g, h);
  std::vector<Automorphism> out;
  for (const auto& x : g) {
    bool ok = true;
    for (const auto& y : h) {
      if (!(compose(x, y) == compose(y, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Group(g.params(), g.ambient(), std::move(out), "C(" + h.name() + ")");
}

inline Group center(const Group& g) {
  auto z = centralizer(g, g);
  z.set_name("Z(" + g.name() + ")");
  return z;
}

inline Group normalizer(const Group& g, const Group& h) {
  detail::require_subset(g, h);
  std::vector<Automorphism> out;
  for (const auto& x : g) {
    const auto xi = inverse(x);
    bool ok = true;
    for (const auto& y : h) {
      if (!h.contains(compose(compose(x, y), xi))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Group(g.params(), g.ambient(), std::move(out), "N(" + h.name() + ")");
}

inline Group intersection(const Group& a, const Group& b) {
  std::vector<Automorphism> out;
  for (const auto& x : a) {
    if (b.contains(x)) out.push_back(x);
  }
  return Group(a.params(), a.ambient(), std::move(out));
}

/// {a b : a in A, b in B}
inline Group product_set(const Group& a, const Group& b) {
  std::vector<Automorphism> out;
  out.reserve(a.order() * b.order());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(compose(x, y));
  }
  return Group(a.params(), a.ambient(), std::move(out));
}

/// N normal in G, N and C meet trivially, and N C = G.
inline bool verify_semidirect(const Group& g, const Group& n, const Group& c) {
  if (!is_subset(g, n) || !is_subset(g, c)) return false;
  if (n.order() * c.order() != g.order()) return false;
  if (intersection(n, c).order() != 1) return false;
  if (!is_normal(g, n)) return false;
  return product_set(n, c) == g;
}

inline bool is_abelian(const Group& g) {
  for (const auto& a : g) {
    for (const auto& b : g) {
      if (!(compose(a, b) == compose(b, a))) return false;
    }
  }
  return true;
}

inline std::int64_t exponent(const Group& g) {
  std::int64_t e = 1;
  for (const auto& a : g) e = std::lcm(e, element_order(a));
  return e;
}

inline bool is_cyclic(const Group& g) {
  for (const auto& a : g) {
    if (element_order(a) == static_cast<std::int64_t>(g.order())) return true;
  }
  return false;
}

inline bool is_elementary_abelian(const Group& g, std::int64_t prime) {
  if (!is_abelian(g)) return false;
  for (const auto& a : g) {
    const auto o = element_order(a);
    if (o != 1 && o != prime) return false;
  }
  return true;
}

/// Searches for three pairwise-commuting involutions a, b, c with c outside <a, b>.
inline std::optional<std::vector<Automorphism>> find_elementary_abelian_8(const Group& g) {
  std::vector<Automorphism> inv;
  for (const auto& a : g) {
    if (!a.is_identity() && compose(a, a).is_identity()) inv.push_back(a);
  }
  for (std::size_t i = 0; i < inv.size(); ++i) {
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      const auto& a = inv[i];
      const auto& b = inv[j];
      const auto ab = compose(a, b);
      if (!(ab == compose(b, a))) continue;
      for (std::size_t l = j + 1; l < inv.size(); ++l) {
        const auto& c = inv[l];
        if (c == ab) continue;
        if (compose(a, c) == compose(c, a) && compose(b, c) == compose(c, b)) {
          return std::vector<Automorphism>{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace kclosure
