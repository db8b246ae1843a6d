// Small walk through the library at (p, k, m) = (3, 1, 1).

#include <iostream>

#include "kclosure/kclosure.hpp"

int main() {
  using namespace kclosure;
  const auto c = curve_params(3, 1, 1);
  const auto amb = ambient_field(c);
  std::cout << "q = " << c.q << ", g = " << c.genus << ", p-rank = " << c.p_rank << ", |G| = " << c.group_order
            << "\n";

  const auto places = enumerate_places(c, amb);
  const auto delta = named_subgroup(SubgroupName::Delta, c, amb);
  const auto s = orbit_decomposition(delta, places);
  std::cout << places.size() << " places over " << amb.to_string() << ", Delta short orbits:";
  for (auto z : s.short_orbit_sizes()) std::cout << " " << z;
  std::cout << "\n";

  std::vector<std::int64_t> counts;
  for (int r = 1; r <= 6; ++r) counts.push_back(point_count(c, r));
  const auto z = l_polynomial(c.q, std::span(counts).first(4), std::span(counts).subspan(4));
  std::cout << "L(T) coefficients:";
  for (auto a : z.coefficients) std::cout << " " << a;
  std::cout << "\np-rank from L mod 3: " << prank_from_zeta(z, 3) << "\n";
}
