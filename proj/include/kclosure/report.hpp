#pragma once

// Check registry, verification driver and certificate output.

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kclosure/action.hpp"
#include "kclosure/autgroup.hpp"
#include "kclosure/curve.hpp"
#include "kclosure/errors.hpp"
#include "kclosure/gfarith.hpp"
#include "kclosure/invariants.hpp"
#include "kclosure/subcover.hpp"

namespace kclosure {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Status { pass, fail, skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"group", "orbits", "genus", "zeta", "bounds", "subcovers"};
  return s;
}

struct CheckInfo {
  std::string id;
  std::string suite;
  std::string claim;
};

struct CheckResult {
  std::string id;
  Status status = Status::pass;
  std::string details;
  double elapsed_ms = 0;
};

struct VerifyOptions {
  std::vector<std::string> suites = all_suites();
  int ambient_degree = 1;
  std::uint32_t max_zeta_field = kDefaultZetaFieldBudget;
  std::int64_t max_group = kDefaultGroupBudget;  // exhaustive scans and sampled associativity
};

struct Certificate {
  std::string version = kToolVersion;
  CurveParams params;
  std::string ambient;
  int ambient_degree = 1;
  std::vector<std::string> suites;
  std::vector<CheckResult> checks;  // sorted by id
  std::optional<ZetaData> zeta;
  std::optional<BoundReport> bounds;
  std::vector<SubcoverSpec> subcovers;
  std::optional<TowerReport> tower;

  Status aggregate() const {
    for (const auto& c : checks) {
      if (c.status == Status::fail) return Status::fail;
    }
    return Status::pass;
  }

  const CheckResult& get(const std::string& id) const {
    for (const auto& c : checks) {
      if (c.id == id) return c;
    }
    throw ParameterError("no check " + id + " in certificate");
  }
};

namespace detail {

struct Outcome {
  Status status = Status::pass;
  std::string details;
};

inline Outcome verdict(bool ok, std::string details) {
  return {ok ? Status::pass : Status::fail, std::move(details)};
}

inline Outcome skip(std::string reason) { return {Status::skipped, std::move(reason)}; }

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

/// Lazily built shared data for one verification run.
class VerifyContext {
 public:
  VerifyContext(const CurveParams& c, const VerifyOptions& opt, Certificate& cert)
      : c_(c), opt_(opt), cert_(cert), ambient_(ambient_field(c, opt.ambient_degree)) {}

  const CurveParams& params() const { return c_; }
  const VerifyOptions& options() const { return opt_; }
  Certificate& cert() { return cert_; }
  FieldSpec ambient() const { return ambient_; }

  const Group& group(SubgroupName n) {
    auto it = groups_.find(n);
    if (it == groups_.end()) it = groups_.emplace(n, named_subgroup(n, c_, ambient_)).first;
    return it->second;
  }

  const std::vector<Place>& places() {
    if (!places_) places_ = enumerate_places(c_, ambient_);
    return *places_;
  }

  const OrbitSummary& delta_orbits() {
    if (!delta_orbits_) delta_orbits_ = orbit_decomposition(group(SubgroupName::Delta), places());
    return *delta_orbits_;
  }

  Automorphism phi(const FieldElement& a, const FieldElement& b, const FieldElement& v) const {
    return make_auto(a, b, v, false, c_);
  }

  /// Counts N_1..N_R for the largest R allowed by the budget.
  const std::vector<std::int64_t>& counts() {
    if (!counts_) {
      counts_.emplace();
      std::int64_t size = c_.q;
      for (int r = 1; size <= static_cast<std::int64_t>(opt_.max_zeta_field); ++r) {
        counts_->push_back(point_count(c_, r, opt_.max_zeta_field));
        if (size > static_cast<std::int64_t>(opt_.max_zeta_field) / c_.q) break;
        size *= c_.q;
      }
    }
    return *counts_;
  }

  bool zeta_in_budget() { return static_cast<std::int64_t>(counts().size()) >= c_.genus; }

  const ZetaData& zeta() {
    if (!zeta_) {
      const auto& n = counts();
      const auto g = static_cast<std::size_t>(c_.genus);
      zeta_ = l_polynomial(c_.q, std::span(n).first(g), std::span(n).subspan(g));
      cert_.zeta = zeta_;
    }
    return *zeta_;
  }

  const BoundReport& bounds() {
    if (!cert_.bounds) cert_.bounds = bound_report(c_);
    return *cert_.bounds;
  }

  std::vector<std::int64_t> subfield_sizes() const {
    std::vector<std::int64_t> out;
    for (int kb = 1; kb <= c_.k; ++kb) {
      if (c_.k % kb == 0) out.push_back(checked_pow(c_.p, static_cast<unsigned>(kb)));
    }
    return out;
  }

  bool group_in_budget() const { return c_.group_order <= opt_.max_group; }

 private:
  CurveParams c_;
  VerifyOptions opt_;
  Certificate& cert_;
  FieldSpec ambient_;
  std::map<SubgroupName, Group> groups_;
  std::optional<std::vector<Place>> places_;
  std::optional<OrbitSummary> delta_orbits_;
  std::optional<std::vector<std::int64_t>> counts_;
  std::optional<ZetaData> zeta_;
};

using CheckFn = std::function<Outcome(VerifyContext&)>;

struct CheckDef {
  CheckInfo info;
  CheckFn run;
};

inline std::uint64_t assoc_seed() { return 0x6b636c6f73757265ULL; }

// ---- group suite ----

inline Outcome check_group_order(VerifyContext& x) {
  const auto& c = x.params();
  const auto& delta = x.group(SubgroupName::Delta);
  std::vector<Automorphism> gens(delta.begin(), delta.end());
  const auto vg = v_group(c.q, c.m, x.ambient());
  gens.push_back(x.phi(x.ambient().zero(), x.ambient().zero(), vg.generator));
  gens.push_back(xi_auto(x.ambient(), c));
  const auto g = generate(c, x.ambient(), gens, "G");
  const bool ok = static_cast<std::int64_t>(g.order()) == c.group_order && g == x.group(SubgroupName::G);
  return verdict(ok, cat("|<Delta, V, xi>| = ", g.order(), ", 2q^2m(q-1) = ", c.group_order));
}

inline Outcome check_phi_order(VerifyContext& x) {
  const auto& c = x.params();
  const auto& delta = x.group(SubgroupName::Delta);
  std::vector<Automorphism> gens(delta.begin(), delta.end());
  gens.push_back(x.phi(x.ambient().zero(), x.ambient().zero(), v_group(c.q, c.m, x.ambient()).generator));
  const auto phi = generate(c, x.ambient(), gens, "Phi");
  const auto expect = c.q * c.q * c.m * (c.q - 1);
  const bool ok = static_cast<std::int64_t>(phi.order()) == expect && phi == x.group(SubgroupName::Phi);
  return verdict(ok, cat("|<Delta, V>| = ", phi.order(), ", q^2m(q-1) = ", expect));
}

inline Outcome check_subgroup_orders(VerifyContext& x) {
  const auto& c = x.params();
  const std::pair<SubgroupName, std::int64_t> want[] = {
      {SubgroupName::Psi, c.q},
      {SubgroupName::Delta, c.q * c.q},
      {SubgroupName::W, c.m},
      {SubgroupName::V, c.m * (c.q - 1)},
      {SubgroupName::M, c.q * c.q * c.m},
      {SubgroupName::Phi, c.q * c.q * c.m * (c.q - 1)},
      {SubgroupName::G, c.group_order}};
  bool ok = true;
  std::string d;
  for (const auto& [n, o] : want) {
    const auto got = static_cast<std::int64_t>(x.group(n).order());
    ok = ok && got == o;
    d += cat(d.empty() ? "" : " ", to_string(n), "=", got);
  }
  return verdict(ok, d);
}

inline Outcome check_axioms(VerifyContext& x) {
  std::string bad;
  for (auto n : {SubgroupName::Psi, SubgroupName::Delta, SubgroupName::W, SubgroupName::V, SubgroupName::M,
                 SubgroupName::Phi, SubgroupName::G}) {
    if (!is_closed(x.group(n))) bad += " " + to_string(n);
  }
  for (const auto& g : x.group(SubgroupName::G)) {
    if (!compose(g, inverse(g)).is_identity() || !compose(inverse(g), g).is_identity()) {
      bad += " inverse(" + g.to_string() + ")";
      break;
    }
  }
  return verdict(bad.empty(), bad.empty() ? "Psi, Delta, W, V, M, Phi, G closed with identity and inverses"
                                          : "not closed:" + bad);
}

inline Outcome check_associativity(VerifyContext& x) {
  const auto& g = x.group(SubgroupName::G);
  const auto& el = g.elements();
  constexpr std::size_t kExhaustive = 200;
  constexpr std::size_t kSamples = 100000;
  auto assoc = [](const Automorphism& a, const Automorphism& b, const Automorphism& c) {
    return compose(compose(a, b), c) == compose(a, compose(b, c));
  };
  if (el.size() <= kExhaustive) {
    for (const auto& a : el) {
      for (const auto& b : el) {
        for (const auto& c : el) {
          if (!assoc(a, b, c)) return verdict(false, "fails at " + a.to_string());
        }
      }
    }
    return verdict(true, cat("all ", el.size() * el.size() * el.size(), " triples"));
  }
  if (static_cast<std::int64_t>(el.size()) > x.options().max_group) {
    return skip(cat("|G| = ", el.size(), " exceeds budget ", x.options().max_group));
  }
  std::mt19937_64 rng(assoc_seed());
  std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
  for (std::size_t i = 0; i < kSamples; ++i) {
    const auto& a = el[pick(rng)];
    const auto& b = el[pick(rng)];
    const auto& c = el[pick(rng)];
    if (!assoc(a, b, c)) return verdict(false, "fails at " + a.to_string());
  }
  return verdict(true, cat(kSamples, " sampled triples"));
}

inline Outcome check_elementary_abelian(VerifyContext& x) {
  const auto p = x.params().p;
  const bool psi = is_elementary_abelian(x.group(SubgroupName::Psi), p);
  const bool delta = is_elementary_abelian(x.group(SubgroupName::Delta), p);
  return verdict(psi && delta, cat("Psi ", psi ? "yes" : "no", ", Delta ", delta ? "yes" : "no", ", exponent ", p));
}

inline Outcome check_cyclic(VerifyContext& x) {
  const auto& w = x.group(SubgroupName::W);
  const auto& v = x.group(SubgroupName::V);
  const bool ok = is_cyclic(w) && is_cyclic(v);
  return verdict(ok, cat("W cyclic of order ", w.order(), ", V cyclic of order ", v.order()));
}

inline Outcome check_xi(VerifyContext& x) {
  const auto& c = x.params();
  const auto xi = xi_auto(x.ambient(), c);
  if (element_order(xi) != 2) return verdict(false, "xi is not an involution");
  if (x.group(SubgroupName::Phi).contains(xi)) return verdict(false, "xi lies in Phi");
  // conjugation rule checked on the action, independently of compose()
  const auto& places = x.places();
  for (const auto& f : x.group(SubgroupName::Phi)) {
    const auto expect = x.phi(f.beta, f.alpha, f.v.inverse());
    if (!x.group(SubgroupName::Phi).contains(expect)) return verdict(false, "xi Phi xi not in Phi");
    for (const auto& P : places) {
      if (place_key(kclosure::apply(xi, kclosure::apply(f, kclosure::apply(xi, P)))) != place_key(kclosure::apply(expect, P))) {
        return verdict(false, "xi " + f.to_string() + " xi differs from " + expect.to_string() + " at " +
                                  to_string(P));
      }
    }
  }
  return verdict(true, cat("xi^2 = 1, xi not in Phi, xi phi_{a,b,v} xi = phi_{b,a,1/v} on ", places.size(),
                           " places"));
}

inline Outcome check_delta_normal(VerifyContext& x) {
  return verdict(is_normal(x.group(SubgroupName::G), x.group(SubgroupName::Delta)), "Delta normal in G");
}

inline Outcome check_w_central(VerifyContext& x) {
  const auto z = center(x.group(SubgroupName::Phi));
  return verdict(is_subset(z, x.group(SubgroupName::W)), cat("W <= Z(Phi), |Z(Phi)| = ", z.order()));
}

inline Outcome check_phi_semidirect(VerifyContext& x) {
  return verdict(verify_semidirect(x.group(SubgroupName::Phi), x.group(SubgroupName::Delta), x.group(SubgroupName::V)),
                 "Phi = Delta x| V");
}

inline Outcome check_g_semidirect(VerifyContext& x) {
  const auto& c = x.params();
  const auto& V = x.group(SubgroupName::V);
  std::vector<Automorphism> gens(V.begin(), V.end());
  const auto xi = xi_auto(x.ambient(), c);
  gens.push_back(xi);
  const auto vx = generate(c, x.ambient(), gens, "V.xi");
  const std::vector<Automorphism> xs{x.group(SubgroupName::G).identity(), xi};
  const Group xg(c, x.ambient(), xs, "<xi>");
  const bool inner = verify_semidirect(vx, V, xg);
  const bool outer = verify_semidirect(x.group(SubgroupName::G), x.group(SubgroupName::Delta), vx);
  return verdict(inner && outer, cat("V.<xi> = V x| <xi> (order ", vx.order(), "): ", inner ? "yes" : "no",
                                     "; G = Delta x| (V x| <xi>): ", outer ? "yes" : "no"));
}

inline Outcome check_centralizer_delta(VerifyContext& x) {
  const auto cz = centralizer(x.group(SubgroupName::G), x.group(SubgroupName::Delta));
  const auto& M = x.group(SubgroupName::M);
  return verdict(cz == M, cat("|C_G(Delta)| = ", cz.order(), ", |Delta x W| = ", M.order()));
}

inline Outcome check_m_product(VerifyContext& x) {
  const auto& M = x.group(SubgroupName::M);
  const auto& D = x.group(SubgroupName::Delta);
  const auto& W = x.group(SubgroupName::W);
  const bool prod = product_set(D, W) == M && intersection(D, W).order() == 1;
  const bool ab = is_abelian(M);
  return verdict(prod && ab, cat("M = Delta W with trivial intersection: ", prod ? "yes" : "no",
                                 "; M abelian: ", ab ? "yes" : "no"));
}

inline Outcome check_no_ea8(VerifyContext& x) {
  const auto found = find_elementary_abelian_8(x.group(SubgroupName::G));
  if (!found) return verdict(true, "no three commuting independent involutions");
  return verdict(false, "found " + (*found)[0].to_string() + ", " + (*found)[1].to_string() + ", " +
                            (*found)[2].to_string());
}

inline Outcome check_central_involution(VerifyContext& x) {
  const auto a = x.ambient();
  const auto u = x.phi(a.zero(), a.zero(), -a.one());
  for (const auto& g : x.group(SubgroupName::G)) {
    if (!(compose(u, g) == compose(g, u))) {
      return verdict(false, cat("phi_{0,0,-1} does not commute with ", g.to_string(), " (m = ", x.params().m,
                                ")"));
    }
  }
  return verdict(true, "phi_{0,0,-1} commutes with every element of G");
}

// ---- orbit suite ----

inline bool valid_place(const Place& P, const CurveParams& c) {
  if (auto a = std::get_if<AffinePlace>(&P)) return satisfies_model(*a, c);
  return std::get<InfinitePlace>(P).label.q_trace(static_cast<unsigned>(c.k)).is_zero();
}

inline Outcome check_valid_images(VerifyContext& x) {
  const auto& places = x.places();
  std::set<std::uint64_t> keys;
  for (const auto& P : places) keys.insert(place_key(P));
  std::size_t n = 0;
  for (const auto& g : x.group(SubgroupName::G)) {
    for (const auto& P : places) {
      const auto Q = kclosure::apply(g, P);
      if (!valid_place(Q, x.params()) || !keys.count(place_key(Q))) {
        return verdict(false, g.to_string() + " sends " + to_string(P) + " to invalid " + to_string(Q));
      }
      ++n;
    }
  }
  return verdict(true, cat(n, " images valid over ", x.ambient().to_string()));
}

inline Outcome check_homomorphism(VerifyContext& x) {
  const auto& el = x.group(SubgroupName::G).elements();
  const auto& places = x.places();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (el.size() <= 200) {
    for (std::size_t i = 0; i < el.size(); ++i) {
      for (std::size_t j = 0; j < el.size(); ++j) pairs.emplace_back(i, j);
    }
  } else {
    std::mt19937_64 rng(assoc_seed() + 1);
    std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
    for (int i = 0; i < 2000; ++i) pairs.emplace_back(pick(rng), pick(rng));
  }
  for (const auto& [i, j] : pairs) {
    const auto gh = compose(el[i], el[j]);
    for (const auto& P : places) {
      if (place_key(kclosure::apply(gh, P)) != place_key(kclosure::apply(el[i], kclosure::apply(el[j], P)))) {
        return verdict(false, el[i].to_string() + " o " + el[j].to_string() + " at " + to_string(P));
      }
    }
  }
  return verdict(true, cat(pairs.size(), " pairs on ", places.size(), " places"));
}

inline Outcome check_faithful(VerifyContext& x) {
  const auto& places = x.places();
  for (const auto& g : x.group(SubgroupName::G)) {
    if (g.is_identity()) continue;
    const bool moves = std::any_of(places.begin(), places.end(),
                                   [&](const Place& P) { return place_key(kclosure::apply(g, P)) != place_key(P); });
    if (!moves) return verdict(false, g.to_string() + " fixes every place");
  }
  return verdict(true, cat("only the identity fixes all ", places.size(), " places"));
}

inline Outcome check_short_orbits(VerifyContext& x) {
  const auto& c = x.params();
  const auto& s = x.delta_orbits();
  bool ok = s.short_orbits.size() == 2;
  std::set<int> sides;
  for (const auto& o : s.short_orbits) {
    ok = ok && static_cast<std::int64_t>(o.size) == c.q && !is_affine(o.representative);
    if (auto i = std::get_if<InfinitePlace>(&o.representative)) sides.insert(int(i->side));
  }
  ok = ok && sides.size() == 2;
  std::string sizes;
  for (auto z : s.short_orbit_sizes()) sizes += cat(sizes.empty() ? "" : ",", z);
  return verdict(ok, cat(s.short_orbits.size(), " short orbits of Delta, sizes [", sizes, "], q = ", c.q));
}

inline Outcome check_stabilizers(VerifyContext& x) {
  const auto& c = x.params();
  const auto& delta = x.group(SubgroupName::Delta);
  const auto ker = trace_kernel(c.q, x.ambient());
  for (const auto& l : ker) {
    for (Side side : {Side::omega1, Side::omega2}) {
      const auto st = stabilizer(delta, InfinitePlace{side, l});
      for (const auto& g : st) {
        const bool shape = side == Side::omega1 ? g.beta.is_zero() : g.alpha.is_zero();
        if (!shape) return verdict(false, "unexpected stabilizer element " + g.to_string());
      }
      if (static_cast<std::int64_t>(st.order()) != c.q) return verdict(false, cat("stabilizer order ", st.order()));
    }
  }
  return verdict(true, "Delta_P = {phi_{a,0,1}} on Omega1 and {phi_{0,b,1}} on Omega2, order q");
}

inline Outcome check_trivial_intersection(VerifyContext& x) {
  const auto& delta = x.group(SubgroupName::Delta);
  const auto ker = trace_kernel(x.params().q, x.ambient());
  for (const auto& l1 : ker) {
    const auto s1 = stabilizer(delta, InfinitePlace{Side::omega1, l1});
    for (const auto& l2 : ker) {
      const auto s2 = stabilizer(delta, InfinitePlace{Side::omega2, l2});
      if (intersection(s1, s2).order() != 1) return verdict(false, "nontrivial intersection");
    }
  }
  return verdict(true, cat(ker.size() * ker.size(), " pairs (P1 in Omega1, P2 in Omega2) meet trivially"));
}

inline Outcome check_w_fixes_infinite(VerifyContext& x) {
  std::size_t n = 0;
  for (const auto& P : x.places()) {
    if (is_affine(P)) continue;
    ++n;
    if (stabilizer(x.group(SubgroupName::W), P).order() != x.group(SubgroupName::W).order()) {
      return verdict(false, "W moves " + to_string(P));
    }
  }
  return verdict(n == static_cast<std::size_t>(2 * x.params().q), cat("W fixes all ", n, " infinite places"));
}

inline Outcome check_delta_free_affine(VerifyContext& x) {
  const auto& s = x.delta_orbits();
  std::size_t affine = 0;
  for (std::size_t i = 0; i < s.orbits.size(); ++i) {
    if (!is_affine(s.orbits[i].front())) continue;
    affine += s.orbits[i].size();
    if (s.stabilizer_orders[i] != 1) return verdict(false, "affine place with nontrivial stabilizer");
  }
  return verdict(true, cat("Delta free on ", affine, " affine places over ", x.ambient().to_string()));
}

inline Outcome check_psi_free(VerifyContext& x) {
  const auto& places = x.places();
  for (const auto& g : x.group(SubgroupName::Psi)) {
    if (g.is_identity()) continue;
    for (const auto& P : places) {
      if (place_key(kclosure::apply(g, P)) == place_key(P)) return verdict(false, g.to_string() + " fixes " + to_string(P));
    }
  }
  return verdict(true, cat("no nontrivial element of Psi fixes any of ", places.size(), " places"));
}

inline Outcome check_galois_fixes_t(VerifyContext& x) {
  const auto& c = x.params();
  const auto xi = xi_auto(x.ambient(), c);
  std::size_t n = 0;
  for (const auto& P : x.places()) {
    if (!is_affine(P)) continue;
    const auto t = t_value(P, c);
    for (const auto& f : x.group(SubgroupName::Phi)) {
      if (!(t_value(kclosure::apply(f, P), c) == t)) return verdict(false, f.to_string() + " moves t at " + to_string(P));
    }
    if (!(t_value(kclosure::apply(xi, P), c) == t.inverse())) return verdict(false, "xi does not invert t at " + to_string(P));
    ++n;
  }
  return verdict(true, cat("Phi fixes t and xi sends t to 1/t on ", n, " affine places"));
}

inline Outcome check_non_tame(VerifyContext& x) {
  const auto s = orbit_decomposition(x.group(SubgroupName::G), x.places());
  for (std::size_t i = 0; i < s.orbits.size(); ++i) {
    if (is_affine(s.orbits[i].front()) && s.stabilizer_orders[i] % static_cast<std::size_t>(x.params().p) == 0) {
      return verdict(false, cat("affine place with stabilizer of order ", s.stabilizer_orders[i]));
    }
  }
  return verdict(true, "every place with p | |G_P| lies in Omega1 or Omega2");
}

inline Outcome check_g_infinite_orbit(VerifyContext& x) {
  const auto& c = x.params();
  const auto o = orbit(x.group(SubgroupName::G), InfinitePlace{Side::omega1, x.ambient().zero()});
  return verdict(static_cast<std::int64_t>(o.size()) == 2 * c.q, cat("G-orbit of the infinite places has size ",
                                                                    o.size(), ", 2q = ", 2 * c.q));
}

inline Outcome check_orbit_stabilizer(VerifyContext& x) {
  std::size_t n = 0;
  for (auto name : {SubgroupName::Delta, SubgroupName::G}) {
    const auto s = name == SubgroupName::Delta ? x.delta_orbits() : orbit_decomposition(x.group(name), x.places());
    std::size_t total = 0;
    for (std::size_t i = 0; i < s.orbits.size(); ++i) {
      total += s.orbits[i].size();
      if (s.orbits[i].size() * s.stabilizer_orders[i] != s.group_order) {
        return verdict(false, "orbit-stabilizer fails for " + s.group_name);
      }
    }
    if (total != s.place_count) return verdict(false, "orbits do not partition the places");
    n += s.orbits.size();
  }
  return verdict(true, cat(n, " orbits of Delta and G satisfy |orbit| |stabilizer| = |H|"));
}

// ---- genus suite ----

inline std::int64_t delta_total_different(VerifyContext& x) {
  std::int64_t d = 0;
  for (const auto& o : x.delta_orbits().short_orbits) {
    d += static_cast<std::int64_t>(o.size) *
         different_exponent(filtration(static_cast<std::int64_t>(o.stabilizer_order), x.params().m));
  }
  return d;
}

inline Outcome check_hurwitz(VerifyContext& x) {
  const auto& c = x.params();
  const auto diff = delta_total_different(x);
  const auto g = genus_from_hurwitz(c.q * c.q, 0, diff);
  return verdict(g == c.genus && diff == 2 * c.q * (c.m + 1) * (c.q - 1),
                 cat("different ", diff, " from Delta orbits gives g = ", g, ", (q-1)(qm-1) = ", c.genus));
}

inline Outcome check_deuring_shafarevich(VerifyContext& x) {
  const auto& c = x.params();
  std::vector<std::int64_t> sizes;
  for (auto z : x.delta_orbits().short_orbit_sizes()) sizes.push_back(static_cast<std::int64_t>(z));
  const auto gam = p_rank_from_deuring_shafarevich(c.q * c.q, 0, sizes);
  const auto back = deuring_shafarevich(c.p_rank, c.q * c.q, sizes);
  return verdict(gam == c.p_rank && back == 0,
                 cat("p-rank ", gam, " from Delta short orbits, (q-1)^2 = ", c.p_rank, ", p-rank of K^Delta = ", back));
}

inline Outcome check_different(VerifyContext& x) {
  const auto& c = x.params();
  const auto d1 = different_exponent(delta_filtration(c, Side::omega1));
  const auto d2 = different_exponent(delta_filtration(c, Side::omega2));
  const auto want = (c.m + 1) * (c.q - 1);
  return verdict(d1 == want && d2 == want, cat("d_P = ", d1, " on Omega1, ", d2, " on Omega2, (m+1)(q-1) = ", want));
}

inline Outcome check_rational_quotient(VerifyContext& x) {
  const auto& c = x.params();
  const auto g = quotient_genus_from_hurwitz(c.genus, c.q * c.q, delta_total_different(x));
  return verdict(g == 0, cat("genus of K^Delta = ", g));
}

inline Outcome check_unramified_subcover(VerifyContext& x) {
  const auto& c = x.params();
  const auto s = orbit_decomposition(x.group(SubgroupName::Psi), x.places());
  if (!s.short_orbits.empty()) return verdict(false, "Psi has short orbits");
  const auto gF = quotient_genus_from_hurwitz(c.genus, c.q, 0);
  const auto yF = deuring_shafarevich(c.p_rank, c.q, {});
  // F: y^q + y = x^m + x^{-m} has two poles of order m
  return verdict(gF == (c.q - 1) * c.m && yF == c.q - 1,
                 cat("K|F unramified: g(F) = ", gF, ", p-rank(F) = ", yF, "; Artin-Schreier values ", (c.q - 1) * c.m,
                     ", ", c.q - 1));
}

inline Outcome check_ordinary(VerifyContext& x) {
  const auto& c = x.params();
  return verdict((c.genus == c.p_rank) == (c.m == 1), cat("g = ", c.genus, ", p-rank = ", c.p_rank, ", m = ", c.m));
}

// ---- zeta suite ----

inline Outcome zeta_guard(VerifyContext& x) {
  if (!x.zeta_in_budget()) {
    return skip(cat("needs F_{q^", x.params().genus, "}; budget ", x.options().max_zeta_field, " elements"));
  }
  return {};
}

inline Outcome check_zeta_genus(VerifyContext& x) {
  if (auto s = zeta_guard(x); s.status == Status::skipped) return s;
  const auto& n = x.counts();
  const auto g = genus_from_zeta(x.params().q, n);
  (void)x.zeta();
  return verdict(g == x.params().genus, cat("genus from ", n.size(), " counts: ", g, ", deg L = ", 2 * g));
}

inline Outcome check_functional_equation(VerifyContext& x) {
  if (auto s = zeta_guard(x); s.status == Status::skipped) return s;
  const auto& z = x.zeta();
  const auto g = static_cast<std::size_t>(z.genus);
  bool ok = z.coefficients.size() == 2 * g + 1 && z.coefficients[0] == 1 && z.coefficients.back() != 0;
  for (std::size_t i = 0; ok && i <= g; ++i) {
    ok = BigInt(z.coefficients[2 * g - i]) ==
         boost::multiprecision::pow(BigInt(z.q), static_cast<unsigned>(g - i)) * z.coefficients[i];
  }
  ok = ok && satisfies_riemann_hypothesis(z.coefficients, z.q);
  return verdict(ok, cat("a_0 = 1, a_{2g-i} = q^{g-i} a_i, |roots| = sqrt(q), degree ", z.coefficients.size() - 1));
}

inline Outcome check_zeta_prank(VerifyContext& x) {
  if (auto s = zeta_guard(x); s.status == Status::skipped) return s;
  const auto r = prank_from_zeta(x.zeta(), x.params().p);
  return verdict(r == x.params().p_rank, cat("deg(L mod p) = ", r, ", (q-1)^2 = ", x.params().p_rank));
}

inline Outcome check_hasse_weil(VerifyContext& x) {
  if (auto s = zeta_guard(x); s.status == Status::skipped) return s;
  const auto& n = x.counts();
  const BigInt g(x.params().genus);
  for (std::size_t i = 0; i < n.size(); ++i) {
    const BigInt qr = boost::multiprecision::pow(BigInt(x.params().q), static_cast<unsigned>(i + 1));
    const BigInt e = BigInt(n[i]) - qr - 1;
    if (e * e > 4 * g * g * qr) return verdict(false, cat("N_", i + 1, " = ", n[i], " violates Hasse-Weil"));
  }
  return verdict(true, cat("|N_r - q^r - 1| <= 2g q^{r/2} for r = 1..", n.size()));
}

inline Outcome check_counts_match(VerifyContext& x) {
  if (auto s = zeta_guard(x); s.status == Status::skipped) return s;
  const auto& n = x.counts();
  const auto& z = x.zeta();
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (z.predicted_count(static_cast<int>(i) + 1) != n[i]) return verdict(false, cat("N_", i + 1, " differs"));
  }
  std::string d;
  for (auto v : n) d += cat(d.empty() ? "" : ",", v);
  return verdict(true, cat("L reproduces N_1..N_", n.size(), " = [", d, "]"));
}

// ---- bounds suite ----

inline Outcome bound_outcome(const BoundComparison& b) {
  return verdict(b.holds, cat(b.lhs, " ", b.relation, " ", b.rhs));
}

inline Outcome check_nakajima(VerifyContext& x) {
  const auto& b = x.bounds();
  const auto& le = b.get("nakajima");
  const auto& eq = b.get("nakajima_equality");
  const bool ok = le.holds && (x.params().k != 1 || eq.holds);
  return verdict(ok, cat("|Delta|(p-2) = ", le.lhs, " vs p(gamma-1) = ", le.rhs, eq.holds ? " (equality)" : ""));
}

inline Outcome check_sqrt_m(VerifyContext& x) { return bound_outcome(x.bounds().get("sqrt_m_order_exceeds_g32")); }

inline Outcome check_stichtenoth(VerifyContext& x) { return bound_outcome(x.bounds().get("stichtenoth_16g4")); }

inline Outcome check_solvable_ordinary(VerifyContext& x) {
  const auto& b = x.bounds();
  if (!b.ordinary) return skip("K is not ordinary (m > 1)");
  return bound_outcome(b.get("solvable_ordinary_34"));
}

// ---- subcover suite ----

inline Outcome check_w_quotients(VerifyContext& x) {
  const auto& c = x.params();
  const auto& W = x.group(SubgroupName::W);
  std::string d;
  for (const auto& div : divisors(static_cast<std::uint64_t>(c.m))) {
    const auto dd = static_cast<std::int64_t>(div);
    const auto spec = w_subcover(c, dd);
    x.cert().subcovers.push_back(spec);
    // C = unique subgroup of W of order d
    std::vector<Automorphism> el;
    for (const auto& g : W) {
      if (g.v.pow(dd).is_one()) el.push_back(g);
    }
    const Group C(c, x.ambient(), el, "C");
    std::int64_t diff = 0;
    for (const auto& o : orbit_decomposition(C, x.places()).short_orbits) {
      diff += static_cast<std::int64_t>(o.size) * (static_cast<std::int64_t>(o.stabilizer_order) - 1);  // tame
    }
    const auto g = quotient_genus_from_hurwitz(c.genus, dd, diff);
    if (g != spec.invariants.genus || static_cast<std::int64_t>(C.order()) != dd) {
      return verdict(false, cat("d = ", dd, ": Hurwitz gives ", g, ", closed form ", spec.invariants.genus));
    }
    if (dd == c.m && spec.invariants.genus != spec.invariants.p_rank) return verdict(false, "K^W not ordinary");
    d += cat(d.empty() ? "" : "; ", "d=", dd, " -> (q, m/d) = (", spec.quotient_q, ", ", spec.quotient_m, "), g = ", g);
  }
  return verdict(true, d);
}

inline Outcome check_subcover_genus(VerifyContext& x) {
  const auto& c = x.params();
  std::string d;
  for (auto qb : x.subfield_sizes()) {
    const auto spec = delta_tilde_subcover(c, qb);
    x.cert().subcovers.push_back(spec);
    const auto f = subcover_from_formulas(c, qb);
    if (!(f == spec.invariants)) return verdict(false, cat("qbar = ", qb, ": formulas disagree"));
    d += cat(d.empty() ? "" : "; ", "qbar=", qb, " -> (g, gamma, |Gbar|) = (", f.genus, ", ", f.p_rank, ", ",
             f.group_order, ")");
  }
  return verdict(true, d);
}

inline Outcome check_tilde_delta(VerifyContext& x) {
  const auto& c = x.params();
  const auto& D = x.group(SubgroupName::Delta);
  std::string d;
  for (auto qb : x.subfield_sizes()) {
    const auto td = tilde_delta(c, qb, x.ambient());
    const bool shape = static_cast<std::int64_t>(td.order()) == qb * qb && is_subset(D, td) &&
                       is_elementary_abelian(td, c.p);
    const auto oc = delta_tilde_orbit_check(c, qb, x.ambient());
    const auto want = subcover_invariants(c.q, qb, c.m);
    if (!shape || !oc.affine_free || !oc.fixes_sides || !(oc.from_orbits == want)) {
      return verdict(false, cat("qbar = ", qb, ": order ", td.order(), ", orbit genus ", oc.from_orbits.genus,
                                " vs ", want.genus));
    }
    d += cat(d.empty() ? "" : "; ", "qbar=", qb, ": |Delta~| = ", td.order(), ", ", oc.short_orbit_sizes.size(),
             " short orbits");
  }
  return verdict(true, d);
}

inline Outcome check_normalizer(VerifyContext& x) {
  if (!x.group_in_budget()) return skip(cat("|G| exceeds budget ", x.options().max_group));
  std::string d;
  for (auto qb : x.subfield_sizes()) {
    const auto n = normalizer_order_check(x.params(), qb, x.ambient(), x.options().max_group);
    if (!n.ok) return verdict(false, cat("qbar = ", qb, ": |N| = ", n.normalizer_order, ", expected ", n.expected));
    d += cat(d.empty() ? "" : "; ", "qbar=", qb, ": |N_G(Delta~)| = ", n.normalizer_order);
  }
  return verdict(true, d);
}

inline Outcome check_isomorphism(VerifyContext& x) {
  const auto& c = x.params();
  std::string d;
  for (auto qb : x.subfield_sizes()) {
    const auto e = c.k / subfield_degree(c.q, qb);
    const bool iso = isomorphic_to_base(c.q, qb);
    if (iso != (e <= 2)) return verdict(false, cat("qbar = ", qb));
    d += cat(d.empty() ? "" : "; ", "q = qbar^", e, ": ", iso ? "family member" : "not a family member");
  }
  return verdict(true, d);
}

inline Outcome check_genam_shadow(VerifyContext& x) {
  if (!x.group_in_budget()) return skip(cat("|G| exceeds budget ", x.options().max_group));
  std::string d;
  for (auto qb : x.subfield_sizes()) {
    const auto s = genam_shadow(x.params(), qb, x.ambient(), x.options().max_group);
    if (!s.ok) return verdict(false, cat("qbar = ", qb, ": max order ", s.max_cyclic_order, ", bound ", s.bound));
    d += cat(d.empty() ? "" : "; ", "qbar=", qb, ": max p'-order ", s.max_cyclic_order);
  }
  return verdict(true, d);
}

inline Outcome check_tower(VerifyContext& x) {
  const auto t = tower_ratios(x.params().p, x.params().m, 4);
  x.cert().tower = t;
  return verdict(t.monotone, cat("m|G|^2/(4g^3) strictly approaches 1 for i = 1..4, last ",
                                 static_cast<double>(t.steps.back().ratio_sq)));
}

inline const std::vector<CheckDef>& registry_defs() {
  static const std::vector<CheckDef> defs{
      {{"group.order", "group", "<Delta, V, xi> has order 2q^2m(q-1) and equals G"}, check_group_order},
      {{"group.phi_order", "group", "<Delta, V> = Phi has order q^2m(q-1)"}, check_phi_order},
      {{"group.subgroup_orders", "group", "|Psi|=q, |Delta|=q^2, |W|=m, |V|=m(q-1), |M|=q^2m"}, check_subgroup_orders},
      {{"group.axioms", "group", "named subgroups are closed, contain 1 and inverses"}, check_axioms},
      {{"group.associativity", "group", "composition is associative on G"}, check_associativity},
      {{"group.elementary_abelian", "group", "Psi and Delta are elementary abelian p-groups"}, check_elementary_abelian},
      {{"group.cyclic", "group", "W and V are cyclic"}, check_cyclic},
      {{"group.xi_conjugation", "group", "xi is an involution outside Phi with xi phi_{a,b,v} xi = phi_{b,a,1/v}"},
       check_xi},
      {{"group.delta_normal", "group", "Delta is normal in G"}, check_delta_normal},
      {{"group.w_central", "group", "W lies in the center of Phi"}, check_w_central},
      {{"group.phi_semidirect", "group", "Phi = Delta x| V"}, check_phi_semidirect},
      {{"group.g_semidirect", "group", "G = Delta x| (V x| <xi>)"}, check_g_semidirect},
      {{"group.centralizer_delta", "group", "C_G(Delta) = Delta x W"}, check_centralizer_delta},
      {{"group.m_product", "group", "M = Delta x W and M is abelian"}, check_m_product},
      {{"group.no_elementary_abelian_8", "group", "G has no elementary abelian subgroup of order 8"}, check_no_ea8},
      {{"group.central_involution", "group", "phi_{0,0,-1} lies in the center of G"}, check_central_involution},
      {{"orbits.valid_images", "orbits", "every g in G maps places to places"}, check_valid_images},
      {{"orbits.homomorphism", "orbits", "(gh)(P) = g(h(P))"}, check_homomorphism},
      {{"orbits.faithful", "orbits", "only the identity fixes every place"}, check_faithful},
      {{"orbits.short_orbits", "orbits", "Delta has exactly two short orbits, Omega1 and Omega2, of size q"},
       check_short_orbits},
      {{"orbits.stabilizers", "orbits", "Delta_P = {phi_{a,0,1}} on Omega1 and {phi_{0,b,1}} on Omega2"},
       check_stabilizers},
      {{"orbits.trivial_intersection", "orbits", "Delta_P1 and Delta_P2 meet trivially for P1 in Omega1, P2 in Omega2"},
       check_trivial_intersection},
      {{"orbits.w_fixes_infinite", "orbits", "W fixes every place of Omega1 and Omega2"}, check_w_fixes_infinite},
      {{"orbits.delta_free_affine", "orbits", "Delta acts freely on the affine places"}, check_delta_free_affine},
      {{"orbits.psi_free", "orbits", "no nontrivial element of Psi fixes a place"}, check_psi_free},
      {{"orbits.galois_fixes_t", "orbits", "Phi fixes t = x^{m(q-1)} and xi maps t to 1/t"}, check_galois_fixes_t},
      {{"orbits.non_tame", "orbits", "Omega1 and Omega2 carry all stabilizers of order divisible by p"},
       check_non_tame},
      {{"orbits.g_infinite_orbit", "orbits", "G permutes the 2q infinite places transitively"},
       check_g_infinite_orbit},
      {{"orbits.orbit_stabilizer", "orbits", "orbits partition the places and |orbit||stabilizer| = |H|"},
       check_orbit_stabilizer},
      {{"genus.hurwitz", "genus", "Hurwitz with the Delta orbit data gives g = (q-1)(qm-1)"}, check_hurwitz},
      {{"genus.deuring_shafarevich", "genus", "Deuring-Shafarevich with the Delta short orbits gives (q-1)^2"},
       check_deuring_shafarevich},
      {{"genus.different", "genus", "d_P = (m+1)(q-1) at every place of Omega1 and Omega2"}, check_different},
      {{"genus.rational_quotient", "genus", "K^Delta has genus 0"}, check_rational_quotient},
      {{"genus.unramified_subcover", "genus", "K|F is unramified of degree q"}, check_unramified_subcover},
      {{"genus.ordinary", "genus", "K is ordinary iff m = 1"}, check_ordinary},
      {{"zeta.genus", "zeta", "the point counts determine an L-polynomial of degree 2(q-1)(qm-1)"}, check_zeta_genus},
      {{"zeta.functional_equation", "zeta", "L satisfies the functional equation and the Riemann hypothesis"},
       check_functional_equation},
      {{"zeta.p_rank", "zeta", "deg(L mod p) = (q-1)^2"}, check_zeta_prank},
      {{"zeta.hasse_weil", "zeta", "every counted N_r satisfies the Hasse-Weil bound"}, check_hasse_weil},
      {{"zeta.counts_match", "zeta", "L reproduces every counted N_r"}, check_counts_match},
      {{"bounds.nakajima", "bounds", "|Delta| <= p/(p-2) (gamma-1), with equality for k = 1"}, check_nakajima},
      {{"bounds.sqrt_m_order", "bounds", "sqrt(m) |G| > g^{3/2}"}, check_sqrt_m},
      {{"bounds.stichtenoth", "bounds", "|G| <= 16 g^4"}, check_stichtenoth},
      {{"bounds.solvable_ordinary", "bounds", "|G| <= 34 (g+1)^{3/2} for ordinary K"}, check_solvable_ordinary},
      {{"subcover.w_quotients", "subcovers", "K^C for C <= W of order d is the curve with parameters (q, m/d)"},
       check_w_quotients},
      {{"subcover.genus_p_rank", "subcovers",
        "K^{Delta~} has genus (qm/qbar-1)(q/qbar-1) and p-rank (q/qbar-1)^2"},
       check_subcover_genus},
      {{"subcover.tilde_delta", "subcovers", "Delta~ is elementary abelian of order qbar^2 and its orbits match"},
       check_tilde_delta},
      {{"subcover.normalizer", "subcovers", "|N_G(Delta~)| = 2q^2m(qbar-1)"}, check_normalizer},
      {{"subcover.isomorphism", "subcovers", "K^{Delta~} is again in the family iff q <= qbar^2"}, check_isomorphism},
      {{"subcover.genam_shadow", "subcovers", "side-preserving p'-elements normalizing Delta~ have order <= m(qbar-1)"},
       check_genam_shadow},
      {{"subcover.tower", "subcovers", "|G|/g^{3/2} tends to 2/sqrt(m) along q = p^{2^i}"}, check_tower},
  };
  return defs;
}

inline nlohmann::json big_json(const BigInt& v) { return v.str(); }

inline std::string rational_str(const BigRational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace detail

inline std::vector<CheckInfo> check_registry() {
  std::vector<CheckInfo> out;
  for (const auto& d : detail::registry_defs()) out.push_back(d.info);
  std::sort(out.begin(), out.end(), [](const CheckInfo& a, const CheckInfo& b) { return a.id < b.id; });
  return out;
}

inline Certificate run_verify(std::int64_t p, int k, std::int64_t m, const VerifyOptions& opt = {}) {
  for (const auto& s : opt.suites) {
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
      throw ParameterError("unknown suite '" + s + "'");
    }
  }
  if (opt.ambient_degree < 1) throw ParameterError("ambient degree must be >= 1");
  Certificate cert;
  cert.params = curve_params(p, k, m);
  detail::VerifyContext ctx(cert.params, opt, cert);
  cert.ambient = ctx.ambient().to_string();
  cert.ambient_degree = opt.ambient_degree;
  cert.suites = opt.suites;
  std::sort(cert.suites.begin(), cert.suites.end());
  cert.suites.erase(std::unique(cert.suites.begin(), cert.suites.end()), cert.suites.end());
  for (const auto& def : detail::registry_defs()) {
    if (!std::binary_search(cert.suites.begin(), cert.suites.end(), def.info.suite)) continue;
    CheckResult r;
    r.id = def.info.id;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto o = def.run(ctx);
      r.status = o.status;
      r.details = std::move(o.details);
    } catch (const ResourceError& e) {
      r.status = Status::skipped;
      r.details = std::string("budget: ") + e.what();
    } catch (const Error& e) {
      r.status = Status::fail;
      r.details = std::string("error: ") + e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    cert.checks.push_back(std::move(r));
  }
  std::sort(cert.checks.begin(), cert.checks.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  if (std::binary_search(cert.suites.begin(), cert.suites.end(), std::string("bounds")) && !cert.bounds) {
    cert.bounds = bound_report(cert.params);
  }
  return cert;
}

// ---- serialization ----

inline nlohmann::json to_json(const ZetaData& z) {
  return {{"q", z.q},
          {"genus", z.genus},
          {"counts", z.counts},
          {"verification_counts", z.verification_counts},
          {"coefficients", z.coefficients}};
}

inline nlohmann::json to_json(const BoundReport& b) {
  nlohmann::json cmp = nlohmann::json::object();
  for (const auto& c : b.comparisons) {
    cmp[c.name] = {{"lhs", c.lhs}, {"relation", c.relation}, {"rhs", c.rhs}, {"holds", c.holds},
                   {"asserted", c.asserted}};
  }
  return {{"genus", b.genus}, {"p_rank", b.p_rank}, {"group_order", b.group_order},
          {"delta_order", b.delta_order}, {"ordinary", b.ordinary}, {"comparisons", cmp}};
}

inline nlohmann::json to_json(const SubcoverSpec& s) {
  nlohmann::json j{{"kind", to_string(s.kind)},
                   {"base", {{"p", s.p}, {"k", s.k}, {"m", s.m}}},
                   {"quotient_q", s.quotient_q},
                   {"quotient_m", s.quotient_m},
                   {"genus", s.invariants.genus},
                   {"p_rank", s.invariants.p_rank},
                   {"group_order", s.invariants.group_order}};
  if (s.kind == SubcoverKind::w_quotient) {
    j["d"] = s.d;
  } else {
    j["qbar"] = s.qbar;
    j["kbar"] = s.kbar;
  }
  return j;
}

inline nlohmann::json to_json(const TowerReport& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"i", s.i},
                     {"q", detail::big_json(s.q)},
                     {"group_order", detail::big_json(s.group_order)},
                     {"genus", detail::big_json(s.genus)},
                     {"ratio_sq", detail::rational_str(s.ratio_sq)},
                     {"closer", s.closer}});
  }
  return {{"p", t.p}, {"m", t.m}, {"steps", steps}, {"monotone", t.monotone},
          {"limit_sq", {{"numerator", t.limit_num}, {"m", t.limit_den_m}}}};
}

inline nlohmann::json place_json(const Place& P) { return to_string(P); }

inline nlohmann::json to_json(const OrbitSummary& s, bool dump) {
  nlohmann::json census = nlohmann::json::array();
  for (const auto& [size, mult] : s.size_census) census.push_back({{"size", size}, {"count", mult}});
  nlohmann::json shorts = nlohmann::json::array();
  for (const auto& o : s.short_orbits) {
    shorts.push_back({{"size", o.size}, {"stabilizer_order", o.stabilizer_order},
                      {"representative", place_json(o.representative)}});
  }
  nlohmann::json j{{"group", s.group_name}, {"group_order", s.group_order}, {"place_count", s.place_count},
                   {"census", census}, {"short_orbits", shorts}};
  if (dump) {
    nlohmann::json orbits = nlohmann::json::array();
    for (std::size_t i = 0; i < s.orbits.size(); ++i) {
      nlohmann::json pl = nlohmann::json::array();
      for (const auto& P : s.orbits[i]) pl.push_back(place_json(P));
      orbits.push_back({{"stabilizer_order", s.stabilizer_orders[i]}, {"places", pl}});
    }
    j["orbits"] = orbits;
  }
  return j;
}

/// {"body": deterministic content, "timing": elapsed milliseconds}.
inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json checks = nlohmann::json::array();
  nlohmann::json timing = nlohmann::json::object();
  double total = 0;
  for (const auto& r : c.checks) {
    checks.push_back({{"id", r.id}, {"status", to_string(r.status)}, {"details", r.details}});
    timing[r.id] = r.elapsed_ms;
    total += r.elapsed_ms;
  }
  timing["total"] = total;
  nlohmann::json body{
      {"tool_version", c.version},
      {"params", {{"p", c.params.p}, {"k", c.params.k}, {"m", c.params.m}, {"q", c.params.q}, {"r", c.params.r}}},
      {"closed_forms",
       {{"genus", c.params.genus}, {"p_rank", c.params.p_rank}, {"group_order", c.params.group_order}}},
      {"ambient", {{"field", c.ambient}, {"degree", c.ambient_degree}}},
      {"suites", c.suites},
      {"checks", checks},
      {"aggregate", to_string(c.aggregate())}};
  if (c.zeta) body["zeta"] = to_json(*c.zeta);
  if (c.bounds) body["bounds"] = to_json(*c.bounds);
  if (!c.subcovers.empty() || c.tower) {
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& s : c.subcovers) subs.push_back(to_json(s));
    body["subcovers"] = {{"quotients", subs}};
    if (c.tower) body["subcovers"]["tower"] = to_json(*c.tower);
  }
  return {{"body", body}, {"timing", timing}};
}

inline std::string emit_text(const Certificate& c) {
  std::ostringstream os;
  os << "kclosure " << c.version << "  p=" << c.params.p << " k=" << c.params.k << " m=" << c.params.m
     << "  q=" << c.params.q << " r=" << c.params.r << "  ambient " << c.ambient << "\n";
  std::size_t n[3] = {0, 0, 0};
  for (const auto& r : c.checks) {
    std::string tag = to_string(r.status);
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    tag.resize(8, ' ');
    os << tag << r.id << "  " << r.details << "\n";
    ++n[static_cast<int>(r.status)];
  }
  os << "aggregate: " << to_string(c.aggregate()) << " (" << n[0] << " pass, " << n[1] << " fail, " << n[2]
     << " skipped)\n";
  return os.str();
}

/// Writes text or json to `path`, or to stdout when path is empty or "-".
inline void emit(const Certificate& c, const std::string& format, const std::string& path = "") {
  std::string out;
  if (format == "text") {
    out = emit_text(c);
  } else if (format == "json") {
    out = to_json(c).dump(2) + "\n";
  } else {
    throw ParameterError("unknown format '" + format + "'");
  }
  if (path.empty() || path == "-") {
    std::cout << out;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << out;
  if (!f) throw IoError("write to " + path + " failed");
}

}  // namespace kclosure
