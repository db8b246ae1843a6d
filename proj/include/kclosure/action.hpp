#pragma once

// Left action of G on the place atlas, orbit/stabilizer census and the
// ramification filtration data entering the different.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kclosure/autgroup.hpp"
#include "kclosure/curve.hpp"
#include "kclosure/errors.hpp"

namespace kclosure {

/// g(P) for g = phi o xi^e: xi^e first, then phi.
inline Place apply(const Automorphism& g, const Place& P) {
  if (!(place_field(P) == g.v.spec())) throw ParameterError("place and automorphism fields differ");
  const auto vm = g.v.pow(g.m);
  if (auto a = std::get_if<AffinePlace>(&P)) {
    FieldElement x = a->x, s = a->s, z = a->z;
    if (g.xi) {
      x = x.inverse();
      std::swap(s, z);
    }
    return AffinePlace{g.v * x, vm.inverse() * s + g.alpha, vm * z + g.beta};
  }
  auto i = std::get<InfinitePlace>(P);
  if (g.xi) i.side = other(i.side);
  if (i.side == Side::omega2) {
    i.label = vm.inverse() * i.label + g.alpha;  // label tracks s
  } else {
    i.label = vm * i.label + g.beta;  // label tracks z
  }
  return i;
}

inline std::vector<Place> orbit(const Group& h, const Place& P) {
  std::vector<Place> out;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& g : h) {
    auto Q = kclosure::apply(g, P);
    if (seen.insert(place_key(Q)).second) out.push_back(std::move(Q));
  }
  std::sort(out.begin(), out.end(),
            [](const Place& a, const Place& b) { return place_key(a) < place_key(b); });
  return out;
}

inline Group stabilizer(const Group& h, const Place& P) {
  std::vector<Automorphism> out;
  const auto key = place_key(P);
  for (const auto& g : h) {
    if (place_key(kclosure::apply(g, P)) == key) out.push_back(g);
  }
  return Group(h.params(), h.ambient(), std::move(out), h.name() + "_P");
}

struct ShortOrbit {
  std::size_t size = 0;
  std::size_t stabilizer_order = 0;
  Place representative;
};

struct OrbitSummary {
  std::string group_name;
  std::size_t group_order = 0;
  std::size_t place_count = 0;
  std::map<std::size_t, std::size_t> size_census;  // orbit size -> multiplicity
  std::vector<ShortOrbit> short_orbits;
  std::vector<std::vector<Place>> orbits;  // canonical order
  std::vector<std::size_t> stabilizer_orders;

  std::vector<std::size_t> short_orbit_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& s : short_orbits) out.push_back(s.size);
    return out;
  }
};

/// Orbit census of h on a place set closed under h.
inline OrbitSummary orbit_decomposition(const Group& h, const std::vector<Place>& places) {
  OrbitSummary out;
  out.group_name = h.name();
  out.group_order = h.order();
  out.place_count = places.size();
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(places.size() * 2);
  for (std::size_t i = 0; i < places.size(); ++i) index.emplace(place_key(places[i]), i);
  std::vector<bool> done(places.size(), false);
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (done[i]) continue;
    std::vector<Place> orb;
    std::unordered_set<std::uint64_t> seen;
    std::size_t stab = 0;
    const auto key = place_key(places[i]);
    for (const auto& g : h) {
      auto Q = kclosure::apply(g, places[i]);
      const auto qk = place_key(Q);
      if (qk == key) ++stab;
      auto it = index.find(qk);
      if (it == index.end()) {
        throw ConsistencyError("place set is not closed under " + h.name() + ": " + to_string(Q));
      }
      done[it->second] = true;
      if (seen.insert(qk).second) orb.push_back(std::move(Q));
    }
    std::sort(orb.begin(), orb.end(),
              [](const Place& a, const Place& b) { return place_key(a) < place_key(b); });
    out.size_census[orb.size()]++;
    if (stab > 1) out.short_orbits.push_back({orb.size(), stab, places[i]});
    out.stabilizer_orders.push_back(stab);
    out.orbits.push_back(std::move(orb));
  }
  return out;
}

/// Orders |G_P^{(i)}| for i = 0, 1, ...; every later group is trivial.
struct RamificationData {
  Side side = Side::omega1;
  std::vector<std::int64_t> orders;

  std::int64_t order_at(std::size_t i) const { return i < orders.size() ? orders[i] : 1; }
};

/// Stabilizer of order `stabilizer_order` with lower ramification groups all
/// equal to it through index m, trivial afterwards.
inline RamificationData filtration(std::int64_t stabilizer_order, std::int64_t m,
                                   Side side = Side::omega1) {
  RamificationData rd;
  rd.side = side;
  rd.orders.assign(static_cast<std::size_t>(m + 1), stabilizer_order);
  return rd;
}

/// Filtration of Delta at a place of Omega1 or Omega2: order q for i <= m.
inline RamificationData delta_filtration(const CurveParams& c, Side side = Side::omega1) {
  return filtration(c.q, c.m, side);
}

/// d_P = sum_i (|G_P^{(i)}| - 1)
inline std::int64_t different_exponent(const RamificationData& rd) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < rd.orders.size(); ++i) {
    if (rd.orders[i] < 1) throw ParameterError("filtration orders must be positive");
    if (i > 0 && rd.orders[i] > rd.orders[i - 1]) {
      throw ParameterError("filtration must be non-increasing");
    }
    d += rd.orders[i] - 1;
  }
  return d;
}

}  // namespace kclosure
