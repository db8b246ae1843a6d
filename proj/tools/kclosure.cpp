// kclosure: verify, list-checks, orbits.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or parameter error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kclosure/kclosure.hpp"

namespace {

template <class T>
T env_or(const char* name, T fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  std::istringstream is(v);
  T out{};
  if (!(is >> out)) {
    std::cerr << "ignoring malformed " << name << "=" << v << "\n";
    return fallback;
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois closure K of y^q+y = x^m+x^-m: group, orbit, genus and zeta verification"};
  app.require_subcommand(1);

  std::int64_t p = 0, m = 0;
  int k = 0;
  int ambient_degree = 1;
  std::string suites, format = "text", out;
  std::uint32_t max_zeta = env_or<std::uint32_t>("KCLOSURE_MAX_ZETA_FIELD", kclosure::kDefaultZetaFieldBudget);
  std::int64_t max_group = env_or<std::int64_t>("KCLOSURE_MAX_GROUP", kclosure::kDefaultGroupBudget);

  auto* verify = app.add_subcommand("verify", "run verification suites and emit a certificate");
  verify->add_option("--p", p, "odd prime")->required();
  verify->add_option("--k", k, "q = p^k")->required();
  verify->add_option("--m", m, "exponent prime to p")->required();
  verify->add_option("--suites", suites, "comma list of group,orbits,genus,zeta,bounds,subcovers");
  verify->add_option("--ambient-degree", ambient_degree, "d in F_{q^lcm(2,r,d)}");
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", out, "output path (default stdout)");
  verify->add_option("--max-zeta-field", max_zeta, "largest field for point counting");
  verify->add_option("--max-group", max_group, "largest |G| for exhaustive scans");

  auto* list = app.add_subcommand("list-checks", "print the check registry");

  std::string group_name = "Delta";
  bool dump = false;
  auto* orbits = app.add_subcommand("orbits", "orbit census of a named subgroup");
  orbits->add_option("--p", p, "odd prime")->required();
  orbits->add_option("--k", k, "q = p^k")->required();
  orbits->add_option("--m", m, "exponent prime to p")->required();
  orbits->add_option("--group", group_name, "Psi, Delta, W, V, M, Phi or G");
  orbits->add_option("--ambient-degree", ambient_degree, "d in F_{q^lcm(2,r,d)}");
  orbits->add_flag("--dump", dump, "list every orbit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& c : kclosure::check_registry()) {
        std::cout << c.id << "\t" << c.suite << "\t" << c.claim << "\n";
      }
      return 0;
    }
    if (*orbits) {
      const auto c = kclosure::curve_params(p, k, m);
      const auto amb = kclosure::ambient_field(c, ambient_degree);
      const auto g = kclosure::named_subgroup(kclosure::parse_subgroup_name(group_name), c, amb);
      const auto s = kclosure::orbit_decomposition(g, kclosure::enumerate_places(c, amb));
      auto j = kclosure::to_json(s, dump);
      j["ambient"] = amb.to_string();
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    kclosure::VerifyOptions opt;
    if (!suites.empty()) opt.suites = split_csv(suites);
    opt.ambient_degree = ambient_degree;
    opt.max_zeta_field = max_zeta;
    opt.max_group = max_group;
    const auto cert = kclosure::run_verify(p, k, m, opt);
    kclosure::emit(cert, format, out);
    return cert.aggregate() == kclosure::Status::pass ? 0 : 1;
  } catch (const kclosure::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const kclosure::ResourceError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const kclosure::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  }
}
