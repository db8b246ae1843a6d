#pragma once

// Finite fields F_{p^n}, odd p, in a fixed polynomial basis.
//
// Elements are stored packed: coefficient c_i of X^i is the i-th base-p digit
// of the packed integer. Multiplication goes through log/antilog tables built
// from a primitive element; addition works on blocks of digits through small
// lookup tables. Fields are interned: make_field(p, n) always returns a handle
// to the same immutable table set, so handles compare by identity.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kclosure/errors.hpp"
#include "kclosure/intmath.hpp"

namespace kclosure {

/// Largest field for which tables are built.
inline constexpr std::uint32_t kMaxFieldSize = 1u << 21;

namespace detail {

// Polynomials over F_p, low-to-high coefficients, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
  }
  Poly r(prod.begin(), prod.end());
  return poly_mod(std::move(r), m, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test for a monic polynomial of degree n >= 1.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  // frob[i] = X^{p^i} mod f
  std::vector<Poly> frob(n + 1);
  frob[0] = poly_mod(Poly{0, 1}, f, p);
  for (std::size_t i = 1; i <= n; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  if (poly_sub(frob[n], frob[0], p) != Poly{}) return false;
  for (auto l : prime_factors(n)) {
    Poly diff = poly_sub(frob[n / l], Poly{0, 1}, p);
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

struct FieldTables {
  std::uint32_t p = 0;
  int n = 0;
  std::uint32_t size = 0;
  Poly modulus;  // monic, degree n
  std::vector<std::uint32_t> pow_p;
  std::uint32_t primitive = 0;
  std::vector<std::uint32_t> log;  // log[0] unused
  std::vector<std::uint32_t> exp;  // doubled length 2(size-1)
  std::uint32_t block = 1;         // base^digits_per_block
  int digits_per_block = 1;
  int blocks = 1;
  std::vector<std::uint16_t> add_tab;
  std::vector<std::uint16_t> neg_tab;

  Poly unpack(std::uint32_t v) const {
    Poly c(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] = v % p;
      v /= p;
    }
    return c;
  }

  std::uint32_t pack(const Poly& c) const {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    Poly r = poly_mulmod(unpack(a), unpack(b), modulus, p);
    r.resize(static_cast<std::size_t>(n), 0);
    return pack(r);
  }

  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (blocks == 1) return add_tab[a * block + b];
    std::uint32_t r = 0;
    std::uint32_t scale = 1;
    for (int i = 0; i < blocks; ++i) {
      const std::uint32_t da = a % block;
      const std::uint32_t db = b % block;
      a /= block;
      b /= block;
      r += add_tab[da * block + db] * scale;
      scale *= block;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (blocks == 1) return neg_tab[a];
    std::uint32_t r = 0;
    std::uint32_t scale = 1;
    for (int i = 0; i < blocks; ++i) {
      r += neg_tab[a % block] * scale;
      a /= block;
      scale *= block;
    }
    return r;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[log[a] + log[b]];
  }

  std::uint32_t pow(std::uint32_t a, std::int64_t e) const {
    const std::int64_t order = size - 1;
    if (a == 0) {
      if (e > 0) return 0;
      if (e == 0) return 1;
      throw ArithmeticError("negative power of zero");
    }
    std::int64_t k = static_cast<std::int64_t>(
        (static_cast<__int128>(log[a]) * (e % order)) % order);
    if (k < 0) k += order;
    return exp[static_cast<std::size_t>(k)];
  }

  void build_add_tables() {
    // largest block of digits whose base-p span stays <= 256
    digits_per_block = 1;
    block = p;
    while (digits_per_block < n && block * p <= 256) {
      block *= p;
      ++digits_per_block;
    }
    if (block > 4096) {
      // huge p: a single digit per block, table p*p may still be fine up to 4096^2
      throw ResourceError("characteristic too large for addition tables");
    }
    blocks = (n + digits_per_block - 1) / digits_per_block;
    add_tab.assign(static_cast<std::size_t>(block) * block, 0);
    neg_tab.assign(block, 0);
    for (std::uint32_t a = 0; a < block; ++a) {
      std::uint32_t na = 0;
      std::uint32_t scale = 1;
      for (std::uint32_t t = a; scale < block; t /= p, scale *= p) {
        na += ((p - t % p) % p) * scale;
      }
      neg_tab[a] = static_cast<std::uint16_t>(na);
      for (std::uint32_t b = 0; b < block; ++b) {
        std::uint32_t s = 0;
        std::uint32_t sc = 1;
        for (std::uint32_t ta = a, tb = b; sc < block; ta /= p, tb /= p, sc *= p) {
          s += ((ta % p + tb % p) % p) * sc;
        }
        add_tab[a * block + b] = static_cast<std::uint16_t>(s);
      }
    }
  }

  void build(std::uint32_t p_, int n_) {
    p = p_;
    n = n_;
    pow_p.assign(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) pow_p[static_cast<std::size_t>(i)] = pow_p[static_cast<std::size_t>(i) - 1] * p;
    size = pow_p[static_cast<std::size_t>(n)];

    // canonical modulus: smallest packed lower part giving an irreducible
    for (std::uint32_t c = 0; c < size; ++c) {
      Poly f = unpack(c);
      f.push_back(1);
      if (is_irreducible(f, p)) {
        modulus = std::move(f);
        break;
      }
    }

    const std::uint64_t order = size - 1;
    const auto factors = prime_factors(order);
    for (std::uint32_t g = 1; g < size; ++g) {
      bool ok = true;
      for (auto l : factors) {
        if (slow_pow(g, order / l) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        primitive = g;
        break;
      }
    }

    log.assign(size, 0);
    exp.assign(2 * static_cast<std::size_t>(order), 0);
    std::uint32_t cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      exp[i] = cur;
      exp[i + order] = cur;
      log[cur] = static_cast<std::uint32_t>(i);
      cur = slow_mul(cur, primitive);
    }
    build_add_tables();
  }
};

inline const FieldTables* intern_field(std::uint32_t p, int n) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<FieldTables>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, n}];
  if (!slot) {
    auto t = std::make_unique<FieldTables>();
    t->build(p, n);
    slot = std::move(t);
  }
  return slot.get();
}

}  // namespace detail

class FieldElement;

/// Handle to an interned finite field F_{p^n}.
class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(const detail::FieldTables* t) : t_(t) {}

  std::uint32_t p() const { return t_->p; }
  int degree() const { return t_->n; }
  std::uint32_t size() const { return t_->size; }
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }
  bool valid() const { return t_ != nullptr; }

  /// True when F_{p^d} is a subfield.
  bool contains_degree(int d) const { return d >= 1 && t_->n % d == 0; }

  inline FieldElement zero() const;
  inline FieldElement one() const;
  inline FieldElement from_packed(std::uint32_t v) const;
  inline FieldElement from_coeffs(std::span<const std::int64_t> c) const;
  inline FieldElement from_int(std::int64_t c) const;
  inline FieldElement primitive() const;
  /// Image of X in F_p[X]/(modulus).
  inline FieldElement generator() const;
  inline std::vector<FieldElement> elements() const;

  /// "p^n:c0,c1,...,cn" with modulus coefficients low to high.
  std::string to_string() const {
    std::ostringstream os;
    os << t_->p << '^' << t_->n << ':';
    for (std::size_t i = 0; i < t_->modulus.size(); ++i) {
      if (i) os << ',';
      os << t_->modulus[i];
    }
    return os.str();
  }

  const detail::FieldTables* tables() const { return t_; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.t_ == b.t_; }

 private:
  const detail::FieldTables* t_ = nullptr;
};

/// Canonical field F_{p^n}; idempotent.
inline FieldSpec make_field(std::int64_t p, int n) {
  if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw ParameterError("characteristic must be an odd prime, got " + std::to_string(p));
  }
  if (n < 1) throw ParameterError("extension degree must be >= 1");
  std::int64_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= p;
    if (size > static_cast<std::int64_t>(kMaxFieldSize)) {
      throw ResourceError("field " + std::to_string(p) + "^" + std::to_string(n) +
                          " exceeds the table size limit");
    }
  }
  return FieldSpec(detail::intern_field(static_cast<std::uint32_t>(p), n));
}

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const detail::FieldTables* t, std::uint32_t v) : t_(t), v_(v) {}

  FieldSpec spec() const { return FieldSpec(t_); }
  std::uint32_t packed() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  std::vector<std::uint32_t> coeffs() const { return t_->unpack(v_); }

  FieldElement operator+(const FieldElement& o) const {
    same(o);
    return {t_, t_->add(v_, o.v_)};
  }
  FieldElement operator-(const FieldElement& o) const {
    same(o);
    return {t_, t_->add(v_, t_->neg(o.v_))};
  }
  FieldElement operator-() const { return {t_, t_->neg(v_)}; }
  FieldElement operator*(const FieldElement& o) const {
    same(o);
    return {t_, t_->mul(v_, o.v_)};
  }
  FieldElement operator/(const FieldElement& o) const {
    same(o);
    if (o.v_ == 0) throw ArithmeticError("division by zero");
    return {t_, t_->mul(v_, t_->pow(o.v_, -1))};
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inverse() const {
    if (v_ == 0) throw ArithmeticError("inverse of zero");
    return {t_, t_->pow(v_, -1)};
  }

  /// Square-and-multiply semantics; exponent reduced mod p^n - 1 for nonzero base.
  FieldElement pow(std::int64_t e) const { return {t_, t_->pow(v_, e)}; }

  /// e^{p^j}
  FieldElement frobenius(unsigned j) const {
    if (v_ == 0) return *this;
    const std::uint64_t order = t_->size - 1;
    const std::uint64_t e = powmod(t_->p, j, order);
    return {t_, t_->pow(v_, static_cast<std::int64_t>(e))};
  }

  /// e^q + e for q = p^k, the map whose kernel is the trace-zero set.
  FieldElement q_trace(unsigned k) const { return frobenius(k) + *this; }

  /// Multiplicative order; 0 for the zero element.
  std::uint64_t order() const {
    if (v_ == 0) return 0;
    const std::uint64_t group = t_->size - 1;
    return group / std::gcd<std::uint64_t, std::uint64_t>(t_->log[v_], group);
  }

  /// Member of F_{p^d}.
  bool in_subfield(int d) const { return frobenius(static_cast<unsigned>(d)) == *this; }

  /// "(c0,c1,...)" low to high.
  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    auto c = coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ',';
      os << c[i];
    }
    os << ')';
    return os.str();
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.t_ == b.t_ && a.v_ == b.v_;
  }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.v_ < b.v_; }

 private:
  void same(const FieldElement& o) const {
    if (t_ != o.t_) throw ParameterError("field elements from different fields");
  }

  const detail::FieldTables* t_ = nullptr;
  std::uint32_t v_ = 0;
};

inline FieldElement FieldSpec::zero() const { return {t_, 0}; }
inline FieldElement FieldSpec::one() const { return {t_, 1}; }
inline FieldElement FieldSpec::from_packed(std::uint32_t v) const {
  if (v >= t_->size) throw ParameterError("packed value out of range");
  return {t_, v};
}
inline FieldElement FieldSpec::from_coeffs(std::span<const std::int64_t> c) const {
  if (c.size() > static_cast<std::size_t>(t_->n)) throw ParameterError("too many coefficients");
  detail::Poly r(static_cast<std::size_t>(t_->n), 0);
  const auto p = static_cast<std::int64_t>(t_->p);
  for (std::size_t i = 0; i < c.size(); ++i) r[i] = static_cast<std::uint32_t>(((c[i] % p) + p) % p);
  return {t_, t_->pack(r)};
}
inline FieldElement FieldSpec::from_int(std::int64_t c) const {
  const auto p = static_cast<std::int64_t>(t_->p);
  return {t_, static_cast<std::uint32_t>(((c % p) + p) % p)};
}
inline FieldElement FieldSpec::primitive() const { return {t_, t_->primitive}; }
inline FieldElement FieldSpec::generator() const {
  if (t_->n == 1) {
    // X reduces to the root of the degree-one modulus X + c0, i.e. -c0
    return from_int(-static_cast<std::int64_t>(t_->modulus[0]));
  }
  return {t_, t_->p};
}
inline std::vector<FieldElement> FieldSpec::elements() const {
  std::vector<FieldElement> out;
  out.reserve(t_->size);
  for (std::uint32_t v = 0; v < t_->size; ++v) out.emplace_back(t_, v);
  return out;
}

/// Ring embedding F_{p^a} -> F_{p^b} for a | b.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldSpec small, FieldSpec big) : small_(small), big_(big) {
    if (small.p() != big.p() || big.degree() % small.degree() != 0) {
      throw ParameterError("no embedding " + small.to_string() + " -> " + big.to_string());
    }
    const auto& mod = small.modulus();
    for (const auto& y : big.elements()) {
      FieldElement acc = big.zero();
      for (std::size_t i = mod.size(); i-- > 0;) acc = acc * y + big.from_int(mod[i]);
      if (acc.is_zero()) {
        image_ = y;
        return;
      }
    }
    throw ConsistencyError("small modulus has no root in big field");
  }

  FieldSpec small() const { return small_; }
  FieldSpec big() const { return big_; }
  FieldElement generator_image() const { return image_; }

  FieldElement map(const FieldElement& e) const {
    if (!(e.spec() == small_)) throw ParameterError("element not in embedding domain");
    auto c = e.coeffs();
    FieldElement acc = big_.zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * image_ + big_.from_int(c[i]);
    return acc;
  }

 private:
  FieldSpec small_;
  FieldSpec big_;
  FieldElement image_;
};

inline FieldElement frobenius(const FieldElement& e, unsigned j) { return e.frobenius(j); }

/// Exponent k with q = p^k, or ParameterError.
inline unsigned q_exponent(std::int64_t q, std::uint32_t p) {
  auto k = log_exact(q, p);
  if (!k || *k == 0) {
    throw ParameterError(std::to_string(q) + " is not a positive power of " + std::to_string(p));
  }
  return *k;
}

/// Solution structure of z^q + z = c over a field: kernel plus one preimage per
/// value in the image. Built by one pass over the field.
class ArtinSchreierMap {
 public:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  ArtinSchreierMap(FieldSpec field, std::int64_t q)
      : field_(field), k_(q_exponent(q, field.p())), preimage_(field.size(), kNone) {
    for (const auto& z : field.elements()) {
      const auto c = z.q_trace(k_);
      if (preimage_[c.packed()] == kNone) preimage_[c.packed()] = z.packed();
      if (c.is_zero()) kernel_.push_back(z);
    }
  }

  FieldSpec field() const { return field_; }
  const std::vector<FieldElement>& kernel() const { return kernel_; }
  bool solvable(const FieldElement& c) const { return preimage_[c.packed()] != kNone; }

  /// All z with z^q + z = c, ascending packed order.
  std::vector<FieldElement> solutions(const FieldElement& c) const {
    std::vector<FieldElement> out;
    if (!solvable(c)) return out;
    const auto base = field_.from_packed(preimage_[c.packed()]);
    out.reserve(kernel_.size());
    for (const auto& w : kernel_) out.push_back(base + w);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  FieldSpec field_;
  unsigned k_;
  std::vector<std::uint32_t> preimage_;
  std::vector<FieldElement> kernel_;
};

/// All z in c's field with z^q + z = c. The field must contain F_q.
inline std::vector<FieldElement> artin_schreier_solutions(const FieldElement& c, std::int64_t q) {
  const auto field = c.spec();
  const auto k = q_exponent(q, field.p());
  if (!field.contains_degree(static_cast<int>(k))) {
    throw ParameterError("field " + field.to_string() + " does not contain F_" + std::to_string(q));
  }
  return ArtinSchreierMap(field, q).solutions(c);
}

/// {l : l^q + l = 0}; requires F_{q^2} inside the ambient field.
inline std::vector<FieldElement> trace_kernel(std::int64_t q, FieldSpec ambient) {
  const auto k = q_exponent(q, ambient.p());
  if (!ambient.contains_degree(2 * static_cast<int>(k))) {
    throw ParameterError("ambient " + ambient.to_string() + " does not contain F_{q^2}");
  }
  std::vector<FieldElement> out;
  for (const auto& z : ambient.elements()) {
    if (z.q_trace(k).is_zero()) out.push_back(z);
  }
  return out;
}

/// Minimal r >= 1 with m(q-1) | q^r - 1.
inline int smallest_r(std::int64_t q, std::int64_t m, std::int64_t p) {
  if (m < 1) throw ParameterError("m must be positive");
  if (m % p == 0) throw ParameterError("m must be prime to p");
  const auto mod = static_cast<std::uint64_t>(checked_mul(m, q - 1));
  std::uint64_t acc = static_cast<std::uint64_t>(q) % mod;
  for (int r = 1;; ++r) {
    if ((acc + mod - 1) % mod == 0) return r;
    acc = static_cast<std::uint64_t>(static_cast<unsigned __int128>(acc) * static_cast<std::uint64_t>(q) % mod);
    if (r > 1000000) throw ConsistencyError("no r found; is m prime to p?");
  }
}

inline int smallest_r(std::int64_t q, std::int64_t m) {
  const auto f = prime_factors(static_cast<std::uint64_t>(q));
  if (f.size() != 1) throw ParameterError("q must be a prime power");
  return smallest_r(q, m, static_cast<std::int64_t>(f.front()));
}

/// The cyclic group {v : v^{m(q-1)} = 1} inside the ambient field.
struct VGroup {
  FieldElement generator;
  std::vector<FieldElement> elements;  // generator^0, generator^1, ...
};

inline VGroup v_group(std::int64_t q, std::int64_t m, FieldSpec ambient) {
  const auto k = q_exponent(q, ambient.p());
  const int r = smallest_r(q, m, ambient.p());
  if (!ambient.contains_degree(static_cast<int>(k) * r)) {
    throw ParameterError("ambient " + ambient.to_string() + " does not contain F_{q^" +
                         std::to_string(r) + "}");
  }
  const std::int64_t order = m * (q - 1);
  VGroup out;
  out.generator = ambient.primitive().pow((static_cast<std::int64_t>(ambient.size()) - 1) / order);
  auto cur = ambient.one();
  for (std::int64_t i = 0; i < order; ++i) {
    out.elements.push_back(cur);
    cur *= out.generator;
  }
  return out;
}

}  // namespace kclosure
