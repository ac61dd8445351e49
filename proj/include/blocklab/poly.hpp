#ifndef BLOCKLAB_POLY_HPP
#define BLOCKLAB_POLY_HPP

#include <algorithm>
#include <random>
#include <tuple>
#include <utility>

#include "blocklab/field.hpp"

namespace blocklab {

// Seed for the randomized split in equal-degree factorization.  Fixed so that
// factorizations (and everything downstream of them) are reproducible.
inline constexpr std::uint64_t factor_seed = 0xb10c1ab5eed0001ull;

// Dense univariate polynomial over F_q, little-endian coefficients with no
// trailing zeros; the zero polynomial has an empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Field f) : F_(std::move(f)) {}
  Poly(Field f, std::vector<fq> coeffs) : F_(std::move(f)), c_(std::move(coeffs)) {
    for (fq x : c_)
      if (x >= F_->q()) throw std::invalid_argument("Poly: coefficient code out of range");
    trim();
  }

  static Poly zero(Field f) { return Poly(std::move(f)); }
  static Poly constant(Field f, fq a) {
    Poly r(std::move(f));
    if (a != 0) r.c_ = {a};
    return r;
  }
  static Poly x(Field f) { return Poly(std::move(f), {0, 1}); }
  static Poly monomial(Field f, std::size_t n, fq a = 1) {
    Poly r(std::move(f));
    if (a != 0) {
      r.c_.assign(n + 1, 0);
      r.c_[n] = a;
    }
    return r;
  }

  const Field& field() const { return F_; }
  const std::vector<fq>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  fq lead() const { return c_.empty() ? 0 : c_.back(); }
  fq coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator+(const Poly& o) const {
    Poly r(F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = F_->add(coeff(i), o.coeff(i));
    r.trim();
    return r;
  }

  Poly operator-(const Poly& o) const {
    Poly r(F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = F_->sub(coeff(i), o.coeff(i));
    r.trim();
    return r;
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(F_);
    Poly r(F_);
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r.c_[i + j] = F_->add(r.c_[i + j], F_->mul(c_[i], o.c_[j]));
    }
    r.trim();
    return r;
  }

  Poly scale(fq a) const {
    Poly r(F_);
    if (a == 0) return r;
    r.c_ = c_;
    for (auto& x : r.c_) x = F_->mul(x, a);
    return r;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scale(F_->inv(lead()));
  }

  std::pair<Poly, Poly> divmod(const Poly& den) const {
    if (den.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
    Poly q(F_), r = *this;
    if (r.deg() < den.deg()) return {q, r};
    int dd = den.deg();
    q.c_.assign(static_cast<std::size_t>(r.deg() - dd + 1), 0);
    fq li = F_->inv(den.lead());
    for (int k = r.deg(); k >= dd; --k) {
      fq c = F_->mul(r.c_[static_cast<std::size_t>(k)], li);
      if (c == 0) continue;
      int shift = k - dd;
      q.c_[static_cast<std::size_t>(shift)] = c;
      for (int i = 0; i <= dd; ++i)
        r.c_[static_cast<std::size_t>(shift + i)] =
            F_->sub(r.c_[static_cast<std::size_t>(shift + i)], F_->mul(c, den.c_[static_cast<std::size_t>(i)]));
    }
    q.trim();
    r.trim();
    return {q, r};
  }

  Poly operator/(const Poly& o) const { return divmod(o).first; }
  Poly operator%(const Poly& o) const { return divmod(o).second; }

  Poly derivative() const {
    Poly r(F_);
    if (c_.size() < 2) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_[i - 1] = F_->mul(c_[i], F_->from_int(static_cast<std::int64_t>(i)));
    r.trim();
    return r;
  }

  fq eval(fq x) const {
    fq acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = F_->add(F_->mul(acc, x), c_[i]);
    return acc;
  }

  // Canonical comparison: by degree, then coefficients from the top down.
  bool operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;)
      if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || c_[i] != 1) s += F_->str(c_[i]);
      if (i > 0) {
        if (c_[i] != 1) s += "*";
        s += "x";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Field F_;
  std::vector<fq> c_;
};

inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

// g = gcd(a, b) monic, with u*a + v*b = g.
inline std::tuple<Poly, Poly, Poly> extended_gcd(const Poly& a, const Poly& b) {
  Field F = a.field();
  Poly r0 = a, r1 = b;
  Poly u0 = Poly::constant(F, 1), u1 = Poly::zero(F);
  Poly v0 = Poly::zero(F), v1 = Poly::constant(F, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
    Poly v2 = v0 - q * v1;
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (r0.is_zero()) return {r0, u0, v0};
  fq li = F->inv(r0.lead());
  return {r0.scale(li), u0.scale(li), v0.scale(li)};
}

inline Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return ((a * b) / gcd(a, b)).monic();
}

namespace detail {

// Minimal unsigned bignum: just enough to form the exponents (q^d - 1) / 2 and
// q^d - 1 used by equal-degree splitting, as bit vectors.
struct BigBits {
  std::vector<std::uint32_t> limbs;  // base 2^32, little-endian

  static BigBits from_u64(std::uint64_t v) {
    BigBits b;
    b.limbs = {static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v >> 32)};
    b.trim();
    return b;
  }
  void trim() {
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
  }
  void mul_small(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (auto& l : limbs) {
      std::uint64_t v = static_cast<std::uint64_t>(l) * m + carry;
      l = static_cast<std::uint32_t>(v);
      carry = v >> 32;
    }
    if (carry) limbs.push_back(static_cast<std::uint32_t>(carry));
  }
  void sub_one() {
    for (auto& l : limbs) {
      if (l != 0) {
        --l;
        break;
      }
      l = 0xffffffffu;
    }
    trim();
  }
  void div2() {
    std::uint32_t carry = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
      std::uint32_t next = limbs[i] & 1;
      limbs[i] = (limbs[i] >> 1) | (carry << 31);
      carry = next;
    }
    trim();
  }
  bool is_zero() const { return limbs.empty(); }
  // Bits from most significant down.
  std::vector<bool> bits_msb_first() const {
    std::vector<bool> out;
    for (std::size_t i = limbs.size(); i-- > 0;)
      for (int b = 31; b >= 0; --b) {
        bool bit = (limbs[i] >> b) & 1;
        if (!out.empty() || bit) out.push_back(bit);
      }
    return out;
  }
  // q^e
  static BigBits pow_u32(std::uint32_t q, std::uint32_t e) {
    BigBits b = from_u64(1);
    for (std::uint32_t i = 0; i < e; ++i) b.mul_small(q);
    return b;
  }
};

}  // namespace detail

inline Poly powmod(const Poly& base, const std::vector<bool>& ebits_msb, const Poly& mod) {
  Field F = base.field();
  Poly r = Poly::constant(F, 1) % mod;
  Poly b = base % mod;
  if (ebits_msb.empty()) return r;
  for (bool bit : ebits_msb) {
    r = (r * r) % mod;
    if (bit) r = (r * b) % mod;
  }
  return r;
}

inline Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
  return powmod(base, detail::BigBits::from_u64(e).bits_msb_first(), mod);
}

// Squarefree decomposition of a monic polynomial in characteristic p; returns
// pairs (g_i, m_i) with f = prod g_i^{m_i}, the g_i squarefree and coprime.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  Field F = f.field();
  std::vector<std::pair<Poly, int>> out;
  if (f.deg() <= 0) return out;
  Poly fp = f.derivative();
  if (fp.is_zero()) {
    // f = h(x^p); take p-th roots of the coefficients and recurse.
    std::uint32_t p = F->p();
    std::vector<fq> hc(f.deg() / p + 1, 0);
    for (int i = 0; i <= f.deg(); i += p)
      hc[i / p] = F->frobenius(f.coeff(i), F->d() == 1 ? 0 : F->d() - 1);
    // In F_q the p-th root is Frobenius^{d-1}; over F_p it is the identity.
    Poly h(F, hc);
    for (auto& [g, m] : squarefree_decomposition(h)) out.emplace_back(g, m * p);
    return out;
  }
  Poly a = gcd(f, fp);
  Poly w = f / a;  // product of the squarefree parts at multiplicities not divisible by p
  int mult = 1;
  while (w.deg() > 0) {
    Poly y = gcd(w, a);
    Poly z = w / y;
    if (z.deg() > 0) out.emplace_back(z.monic(), mult);
    ++mult;
    w = y;
    a = a / y;
  }
  if (a.deg() > 0) {
    // Remaining factor is a p-th power; its derivative vanishes, so the
    // recursion takes the p-th root and scales multiplicities itself.
    for (auto& [g, m] : squarefree_decomposition(a.monic())) out.emplace_back(g, m);
  }
  return out;
}

// Distinct-degree decomposition of a monic squarefree polynomial: returns
// pairs (product of irreducible factors of degree d, d).
inline std::vector<std::pair<Poly, int>> distinct_degree_decomposition(const Poly& f) {
  Field F = f.field();
  std::vector<std::pair<Poly, int>> out;
  Poly rem = f.monic();
  Poly h = Poly::x(F) % rem;  // x^(q^i) mod rem, advanced once per round
  int d = 0;
  while (rem.deg() > 0 && 2 * (d + 1) <= rem.deg()) {
    ++d;
    h = powmod(h, static_cast<std::uint64_t>(F->q()), rem);
    Poly g = gcd(rem, h - Poly::x(F));
    if (g.deg() > 0) {
      out.emplace_back(g, d);
      rem = rem / g;
      h = h % rem;
    }
  }
  if (rem.deg() > 0) out.emplace_back(rem, rem.deg());
  return out;
}

namespace detail {

// Cantor-Zassenhaus equal-degree splitting: f monic squarefree, all
// irreducible factors of degree d.  Appends the factors to out.
inline void equal_degree_factor(const Poly& f, int d, std::mt19937_64& rng,
                                std::vector<Poly>& out) {
  Field F = f.field();
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  Poly split(F);
  while (true) {
    // Random polynomial of degree < deg f, nonconstant preferred.
    std::vector<fq> c(static_cast<std::size_t>(f.deg()), 0);
    for (auto& x : c) x = static_cast<fq>(rng() % F->q());
    Poly r(F, c);
    if (r.deg() < 1) continue;
    Poly g = gcd(f, r);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      split = g;
      break;
    }
    if (F->p() == 2) {
      // Trace map over F_2: T = r + r^2 + r^4 + ... (e*d terms for q = 2^e).
      Poly t = Poly::zero(F);
      Poly cur = r % f;
      std::uint32_t steps = F->d() * static_cast<std::uint32_t>(d);
      for (std::uint32_t i = 0; i < steps; ++i) {
        t = t + cur;
        cur = (cur * cur) % f;
      }
      Poly g2 = gcd(f, t);
      if (g2.deg() > 0 && g2.deg() < f.deg()) {
        split = g2;
        break;
      }
    } else {
      // g = gcd(r^((q^d - 1)/2) - 1, f).
      BigBits e = BigBits::pow_u32(F->q(), static_cast<std::uint32_t>(d));
      e.sub_one();
      e.div2();
      Poly s = powmod(r, e.bits_msb_first(), f);
      Poly g2 = gcd(f, s - Poly::constant(F, 1));
      if (g2.deg() > 0 && g2.deg() < f.deg()) {
        split = g2;
        break;
      }
    }
  }
  equal_degree_factor(split, d, rng, out);
  equal_degree_factor((f / split).monic(), d, rng, out);
}

}  // namespace detail

// Full factorization of a nonzero polynomial into monic irreducibles with
// multiplicities, sorted canonically (degree, then top-down coefficients).
// Randomized splits draw from a fixed-seed generator, so output is stable.
inline std::vector<std::pair<Poly, int>> factor(const Poly& f0) {
  if (f0.is_zero()) throw std::domain_error("factor: zero polynomial");
  Field F = f0.field();
  std::vector<std::pair<Poly, int>> out;
  if (f0.deg() == 0) return out;
  Poly f = f0.monic();
  std::mt19937_64 rng(factor_seed);
  for (auto& [sf, mult] : squarefree_decomposition(f)) {
    for (auto& [prod, d] : distinct_degree_decomposition(sf)) {
      std::vector<Poly> irr;
      detail::equal_degree_factor(prod, d, rng, irr);
      for (auto& g : irr) out.emplace_back(g, mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first < b.first) return true;
    if (b.first < a.first) return false;
    return a.second < b.second;
  });
  return out;
}

inline bool is_irreducible(const Poly& f) {
  if (f.deg() < 1) return false;
  if (f.deg() == 1) return true;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].second == 1 && fs[0].first.deg() == f.deg();
}

// Orthogonal idempotent data from a factored minimal polynomial: for
// m = prod f_i^{e_i} with at least two distinct factors, returns polynomials
// pi_i with pi_i = 1 mod f_i^{e_i} and 0 mod the rest; evaluating pi_i at the
// original element yields orthogonal idempotents summing to 1.
inline std::vector<Poly> crt_idempotent_polys(const std::vector<std::pair<Poly, int>>& factors) {
  if (factors.empty()) throw std::invalid_argument("crt_idempotent_polys: empty factorization");
  Field F = factors[0].first.field();
  Poly m = Poly::constant(F, 1);
  std::vector<Poly> powers;
  for (auto& [f, e] : factors) {
    Poly fe = Poly::constant(F, 1);
    for (int i = 0; i < e; ++i) fe = fe * f;
    powers.push_back(fe);
    m = m * fe;
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Poly rest = m / powers[i];
    auto [g, u, v] = extended_gcd(powers[i], rest);
    if (g.deg() != 0) throw std::logic_error("crt_idempotent_polys: factors not coprime");
    // u*powers[i] + v*rest = 1; v*rest is 1 mod powers[i], 0 mod rest.
    out.push_back((v * rest) % m);
  }
  return out;
}

}  // namespace blocklab

#endif
