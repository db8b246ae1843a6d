// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "kclosure/kclosure.hpp"

using namespace kclosure;

namespace {

const std::vector<std::tuple<std::int64_t, int, std::int64_t>> kGrid{
    {3, 1, 1}, {3, 1, 2}, {3, 1, 4}, {3, 1, 5}, {5, 1, 1}, {5, 1, 2}, {7, 1, 1}, {3, 2, 1}};

std::string label(const CurveParams& c) {
  return "(" + std::to_string(c.p) + "," + std::to_string(c.k) + "," + std::to_string(c.m) + ")";
}

// Collects failed sub-claims of one criterion.
struct Ledger {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Delta built from the trace kernel alone, so it lives over F_{q^2} even when V does not.
Group delta_over(const CurveParams& c, FieldSpec f) {
  std::vector<Automorphism> el;
  const auto ker = trace_kernel(c.q, f);
  for (const auto& a : ker) {
    for (const auto& b : ker) el.push_back(make_auto(a, b, f.one(), false, c));
  }
  return Group(c, f, std::move(el), "Delta");
}

void criterion1(Ledger& L) {
  for (auto [p, k, m] : kGrid) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = curve_params(p, k, m);
    const auto amb = ambient_field(c);
    std::vector<Automorphism> gens(named_subgroup(SubgroupName::Delta, c, amb).elements());
    gens.push_back(make_auto(amb.zero(), amb.zero(), v_group(c.q, m, amb).generator, false, c));
    gens.push_back(xi_auto(amb, c));
    const auto g = generate(c, amb, gens);
    L.expect(static_cast<std::int64_t>(g.order()) == 2 * c.q * c.q * m * (c.q - 1), label(c) + " |G|");
    L.expect(g == named_subgroup(SubgroupName::G, c, amb), label(c) + " closure equals canonical G");

    const auto places = enumerate_places(c, amb);
    const auto s = orbit_decomposition(named_subgroup(SubgroupName::Delta, c, amb), places);
    std::int64_t diff = 0;
    std::vector<std::int64_t> sizes;
    for (const auto& so : s.short_orbits) {
      sizes.push_back(static_cast<std::int64_t>(so.size));
      diff += static_cast<std::int64_t>(so.size) *
              different_exponent(filtration(static_cast<std::int64_t>(so.stabilizer_order), m));
    }
    L.expect(genus_from_hurwitz(c.q * c.q, 0, diff) == (c.q - 1) * (c.q * m - 1), label(c) + " Hurwitz genus");
    L.expect(p_rank_from_deuring_shafarevich(c.q * c.q, 0, sizes) == (c.q - 1) * (c.q - 1),
             label(c) + " Deuring-Shafarevich p-rank");
    const double dt = seconds_since(t0);
    L.expect(dt < 60, label(c) + " runtime " + std::to_string(dt) + " s");
  }
}

void criterion2(Ledger& L) {
  for (auto [p, k, m] : kGrid) {
    const auto c = curve_params(p, k, m);
    const auto amb = ambient_field(c);
    const auto G = named_subgroup(SubgroupName::G, c, amb);
    const auto delta = named_subgroup(SubgroupName::Delta, c, amb);
    const auto V = named_subgroup(SubgroupName::V, c, amb);
    const auto W = named_subgroup(SubgroupName::W, c, amb);
    const auto phi = named_subgroup(SubgroupName::Phi, c, amb);
    const auto M = named_subgroup(SubgroupName::M, c, amb);
    std::vector<Automorphism> vx(V.elements());
    vx.push_back(xi_auto(amb, c));
    const auto vxi = generate(c, amb, vx);
    const auto id = label(c);
    L.expect(is_normal(G, delta), id + " Delta normal in G");
    L.expect(verify_semidirect(phi, delta, V), id + " Phi = Delta x| V");
    L.expect(verify_semidirect(G, delta, vxi), id + " G = Delta x| (V x| <xi>)");
    L.expect(is_subset(center(phi), W), id + " W <= Z(Phi)");
    L.expect(centralizer(G, delta) == M && product_set(delta, W) == M, id + " C_G(Delta) = Delta x W = M");
    L.expect(intersection(delta, W).order() == 1 && is_abelian(M), id + " M = Delta x W");
    L.expect(!find_elementary_abelian_8(G).has_value(), id + " no elementary abelian 8");
    const auto u = make_auto(amb.zero(), amb.zero(), -amb.one(), false, c);
    L.expect(center(G).contains(u), id + " phi_{0,0,-1} central");
  }
}

void criterion3(Ledger& L) {
  for (auto [p, k, m] : kGrid) {
    const auto c = curve_params(p, k, m);
    const auto id = label(c);
    const auto f2 = make_field(p, 2 * k);
    const auto delta = delta_over(c, f2);
    const auto s = orbit_decomposition(delta, enumerate_places(c, f2));
    L.expect(s.short_orbit_sizes() == std::vector<std::size_t>{static_cast<std::size_t>(c.q), static_cast<std::size_t>(c.q)},
             id + " two short orbits of size q");
    const auto ker = trace_kernel(c.q, f2);
    for (const auto& l : ker) {
      const Place p1 = InfinitePlace{Side::omega1, l};
      const Place p2 = InfinitePlace{Side::omega2, l};
      const auto s1 = stabilizer(delta, p1);
      const auto s2 = stabilizer(delta, p2);
      bool shape = s1.order() == ker.size() && s2.order() == ker.size();
      for (const auto& g : s1) shape = shape && g.beta.is_zero();
      for (const auto& g : s2) shape = shape && g.alpha.is_zero();
      L.expect(shape, id + " stabilizer shape at label " + l.to_string());
      for (const auto& l2 : ker) {
        const Place q2 = InfinitePlace{Side::omega2, l2};
        L.expect(intersection(s1, stabilizer(delta, q2)).order() == 1, id + " trivial stabilizer intersection");
      }
    }
    for (int n = 2 * k; checked_pow(p, static_cast<unsigned>(n)) <= 10000; n += 2 * k) {
      const auto f = make_field(p, n);
      const auto d = delta_over(c, f);
      std::size_t bad = 0;
      for (const auto& P : enumerate_places(c, f)) {
        if (!is_affine(P)) continue;
        const auto key = place_key(P);
        for (const auto& g : d) {
          if (!g.is_identity() && place_key(kclosure::apply(g, P)) == key) ++bad;
        }
      }
      L.expect(bad == 0, id + " Delta free on affine places over " + f.to_string());
    }
    const auto amb = ambient_field(c);
    const auto W = named_subgroup(SubgroupName::W, c, amb);
    std::size_t infinite = 0;
    for (const auto& P : enumerate_places(c, amb)) {
      if (is_affine(P)) continue;
      ++infinite;
      for (const auto& w : W) L.expect(kclosure::apply(w, P) == P, id + " W fixes " + to_string(P));
    }
    L.expect(infinite == static_cast<std::size_t>(2 * c.q), id + " 2q infinite places");
  }
}

void criterion4(Ledger& L) {
  for (auto [p, k, m] : kGrid) {
    const auto c = curve_params(p, k, m);
    const auto amb = ambient_field(c);
    const auto phi = named_subgroup(SubgroupName::Phi, c, amb);
    const auto xi = xi_auto(amb, c);
    std::size_t moved = 0, xi_bad = 0;
    for (const auto& P : enumerate_places(c, amb)) {
      if (!is_affine(P)) continue;
      const auto t = t_value(P, c);
      for (const auto& g : phi) moved += !(t_value(kclosure::apply(g, P), c) == t);
      xi_bad += !(t_value(kclosure::apply(xi, P), c) == t.inverse());
    }
    L.expect(moved == 0, label(c) + " Phi fixes t");
    L.expect(xi_bad == 0, label(c) + " xi maps t to 1/t");
  }
}

void criterion5(Ledger& L) {
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [m, genus] : {std::pair<std::int64_t, int>{1, 4}, {2, 10}}) {
    const auto c = curve_params(3, 1, m);
    std::vector<std::int64_t> n;
    for (int r = 1; r <= 10; ++r) n.push_back(point_count(c, r, 59049));
    const int g = genus_from_zeta(c.q, n);
    L.expect(g == genus, label(c) + " genus from zeta " + std::to_string(g));
    const auto z = l_polynomial(c.q, std::span(n).first(static_cast<std::size_t>(g)),
                                std::span(n).subspan(static_cast<std::size_t>(g)));
    L.expect(z.coefficients.size() == static_cast<std::size_t>(2 * genus + 1), label(c) + " deg L = 2g");
    const int pr = prank_from_zeta(z, 3);
    L.expect(pr == 4, label(c) + " p-rank " + std::to_string(pr));
    L.expect((pr == g) == (m == 1), label(c) + " ordinary iff m = 1");
  }
  L.expect(seconds_since(t0) < 300, "zeta runtime");
}

void criterion6(Ledger& L) {
  for (auto [p, k, m] : kGrid) {
    const auto c = curve_params(p, k, m);
    const auto b = bound_report(c);
    if (k == 1) L.expect(b.get("nakajima_equality").holds, label(c) + " Nakajima equality");
    L.expect(b.get("sqrt_m_order_exceeds_g32").holds, label(c) + " sqrt(m)|G| > g^{3/2}");
    if (m == 1) L.expect(b.get("solvable_ordinary_34").holds, label(c) + " |G| <= 34(g+1)^{3/2}");
  }
}

void criterion7(Ledger& L) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto base = curve_params(3, 1, 1);
  L.expect(subcover_invariants(9, 3, 1) == SubcoverInvariants{base.genus, base.p_rank, base.group_order},
           "subcover_invariants(9,3,1)");
  for (std::int64_t qb = 3; qb <= 729; qb *= 3) {
    for (std::int64_t q = qb, e = 1; q <= 729; q *= qb, ++e) {
      L.expect(isomorphic_to_base(q, qb) == (e <= 2), "isomorphic_to_base(" + std::to_string(q) + "," +
                                                         std::to_string(qb) + ")");
    }
  }
  const auto c = curve_params(3, 2, 1);
  const auto n = normalizer_order_check(c, 3, ambient_field(c));
  L.expect(n.ok && n.normalizer_order == 324 && n.group_order == 1296, "|N_G(Delta~)| = 324 in |G| = 1296");
  const auto t = tower_ratios(3, 1, 4);
  bool strictly = t.steps.size() == 4;
  for (std::size_t i = 1; i < t.steps.size(); ++i) {
    strictly = strictly && boost::multiprecision::abs(t.steps[i].ratio_sq - 1) <
                               boost::multiprecision::abs(t.steps[i - 1].ratio_sq - 1);
  }
  L.expect(strictly && t.monotone, "tower ratio approaches 1");
  L.expect(seconds_since(t0) < 120, "subcover runtime");
}

std::string read_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  pclose(pipe);
  return out;
}

void criterion8(Ledger& L) {
  const std::string cmd = std::string(KCLOSURE_CLI) + " verify --p 3 --k 1 --m 2 --format json";
  const auto a = nlohmann::json::parse(read_command(cmd)).at("body").dump();
  const auto b = nlohmann::json::parse(read_command(cmd)).at("body").dump();
  L.expect(!a.empty() && a == b, "JSON bodies differ between runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Ledger&)>>> criteria{
      {"closed forms and exhaustive |G|", criterion1},
      {"group structure", criterion2},
      {"orbit structure", criterion3},
      {"Galois group fixes t", criterion4},
      {"zeta oracle", criterion5},
      {"bounds", criterion6},
      {"subcovers and tower", criterion7},
      {"determinism", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Ledger L;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(L);
    } catch (const std::exception& e) {
      L.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = L.failures.empty();
    failed += !ok;
    std::printf("criterion %zu: %s  %s (%.2f s)\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].first.c_str(),
                seconds_since(t0));
    for (const auto& f : L.failures) std::printf("    failed: %s\n", f.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
