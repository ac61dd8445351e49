#ifndef BLOCKLAB_FIELD_HPP
#define BLOCKLAB_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace blocklab {

// Element of F_q, encoded as c0 + c1*p + ... + c_{d-1}*p^{d-1} with ci the
// coordinates in the power basis of the chosen modulus.
using fq = std::uint32_t;

class FieldQ;
using Field = std::shared_ptr<const FieldQ>;

namespace detail {

inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

// Dense polynomial over F_p (little-endian coefficients), only what the field
// constructor needs: product, remainder, powmod and an irreducibility test.
using fp_poly = std::vector<std::uint32_t>;

inline void fp_trim(fp_poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline fp_poly fp_mul(const fp_poly& a, const fp_poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  fp_poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>(
          (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  fp_trim(c);
  return c;
}

inline fp_poly fp_rem(fp_poly a, const fp_poly& m, std::uint32_t p) {
  fp_trim(a);
  std::uint32_t lead = m.back();
  std::uint32_t lead_inv = 1;
  for (std::uint32_t e = p - 2, b = lead; e; e >>= 1, b = static_cast<std::uint32_t>(static_cast<std::uint64_t>(b) * b % p))
    if (e & 1) lead_inv = static_cast<std::uint32_t>(static_cast<std::uint64_t>(lead_inv) * b % p);
  while (a.size() >= m.size()) {
    std::uint32_t c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.back()) * lead_inv % p);
    std::size_t shift = a.size() - m.size();
    if (c != 0)
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::uint64_t v = a[shift + i] + static_cast<std::uint64_t>(p - 1) * 0;  // keep in u64
        v = (a[shift + i] + static_cast<std::uint64_t>(c) * (p - m[i] % p)) % p;
        a[shift + i] = static_cast<std::uint32_t>(v);
      }
    a.pop_back();
    fp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

inline fp_poly fp_powmod_x(std::uint64_t e, const fp_poly& m, std::uint32_t p) {
  // x^e mod m
  fp_poly result{1};
  fp_poly base{0, 1};
  base = fp_rem(base, m, p);
  while (e) {
    if (e & 1) result = fp_rem(fp_mul(result, base, p), m, p);
    base = fp_rem(fp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

inline fp_poly fp_gcd(fp_poly a, fp_poly b, std::uint32_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    fp_poly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^e) mod m computed by e successive p-th powers.
inline fp_poly fp_frob_x(std::uint32_t e, const fp_poly& m, std::uint32_t p) {
  fp_poly t{0, 1};
  t = fp_rem(t, m, p);
  for (std::uint32_t i = 0; i < e; ++i) {
    fp_poly s{1};
    fp_poly base = t;
    std::uint32_t ee = p;
    while (ee) {
      if (ee & 1) s = fp_rem(fp_mul(s, base, p), m, p);
      base = fp_rem(fp_mul(base, base, p), m, p);
      ee >>= 1;
    }
    t = s;
  }
  return t;
}

inline bool fp_irreducible(const fp_poly& f, std::uint32_t p) {
  // Rabin test: x^(p^d) == x mod f and gcd(x^(p^(d/r)) - x, f) = 1 for prime r | d.
  std::size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  fp_poly xp = fp_frob_x(static_cast<std::uint32_t>(d), f, p);
  fp_poly x{0, 1};
  x = fp_rem(x, f, p);
  fp_poly diff(std::max(xp.size(), x.size()), 0);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    std::uint32_t a = i < xp.size() ? xp[i] : 0;
    std::uint32_t b = i < x.size() ? x[i] : 0;
    diff[i] = (a + p - b) % p;
  }
  fp_trim(diff);
  if (!diff.empty()) return false;
  std::size_t n = d;
  for (std::size_t r = 2; r * r <= n; ++r) {
    if (n % r) continue;
    while (n % r == 0) n /= r;
    fp_poly g = fp_frob_x(static_cast<std::uint32_t>(d / r), f, p);
    fp_poly diff2(std::max(g.size(), x.size()), 0);
    for (std::size_t i = 0; i < diff2.size(); ++i) {
      std::uint32_t a = i < g.size() ? g[i] : 0;
      std::uint32_t b = i < x.size() ? x[i] : 0;
      diff2[i] = (a + p - b) % p;
    }
    fp_trim(diff2);
    if (fp_gcd(f, diff2, p).size() != 1) return false;
  }
  if (n > 1) {
    fp_poly g = fp_frob_x(static_cast<std::uint32_t>(d / n), f, p);
    fp_poly diff2(std::max(g.size(), x.size()), 0);
    for (std::size_t i = 0; i < diff2.size(); ++i) {
      std::uint32_t a = i < g.size() ? g[i] : 0;
      std::uint32_t b = i < x.size() ? x[i] : 0;
      diff2[i] = (a + p - b) % p;
    }
    fp_trim(diff2);
    if (fp_gcd(f, diff2, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

// Exact arithmetic in F_q = F_p[x]/(modulus), q = p^d.  Construction builds
// discrete log tables, so every field operation afterwards is O(d) or O(1).
// Instances are immutable; share them through the Field alias.
class FieldQ : public std::enable_shared_from_this<FieldQ> {
 public:
  static constexpr std::uint32_t max_q = 1u << 20;

  static Field make(std::uint32_t p, std::uint32_t d) {
    return Field(new FieldQ(p, canonical_modulus(p, d)));
  }

  static Field make_with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
    return Field(new FieldQ(p, modulus));
  }

  // Smallest F_{p^d} containing the m'-th roots of unity, where m' is the
  // p'-part of group_exponent; d can be forced upward with min_degree.
  static Field splitting_field(std::uint32_t p, std::uint64_t group_exponent,
                               std::uint32_t min_degree = 1) {
    std::uint64_t m = group_exponent;
    while (m % p == 0) m /= p;
    std::uint32_t d = 1;
    if (m > 1) {
      std::uint64_t t = p % m;
      d = 1;
      while (t != 1) {
        t = (t * p) % m;
        ++d;
      }
    }
    if (d < min_degree) d = min_degree;
    return make(p, d);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  fq zero() const { return 0; }
  fq one() const { return 1; }

  fq add(fq a, fq b) const {
    if (d_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    fq r = 0, m = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
      std::uint32_t s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      r += s * m;
      a /= p_;
      b /= p_;
      m *= p_;
    }
    return r;
  }

  fq neg(fq a) const {
    if (d_ == 1) return a == 0 ? 0 : p_ - a;
    fq r = 0, m = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
      std::uint32_t c = a % p_;
      r += (c == 0 ? 0 : p_ - c) * m;
      a /= p_;
      m *= p_;
    }
    return r;
  }

  fq sub(fq a, fq b) const { return add(a, neg(b)); }

  fq mul(fq a, fq b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  fq inv(fq a) const {
    if (a == 0) throw std::domain_error("FieldQ::inv: zero");
    return exp_[(q_ - 1) - log_[a]];
  }

  fq div(fq a, fq b) const { return mul(a, inv(b)); }

  fq pow(fq a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::uint64_t ord = q_ - 1;
    return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % ord)) % ord)];
  }

  // a^(p^i); the i-fold Frobenius. Inverse Frobenius is frobenius(a, d - i % d).
  fq frobenius(fq a, std::uint32_t i) const {
    if (a == 0) return 0;
    std::uint64_t e = 1;
    std::uint64_t ord = q_ - 1;
    for (std::uint32_t t = 0; t < i % d_; ++t) e = (e * p_) % ord;
    return pow(a, e);
  }

  fq from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<fq>(r);
  }

  fq from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() > d_) throw std::invalid_argument("FieldQ::from_coeffs: too many coefficients");
    fq r = 0, m = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
      std::uint32_t ci = i < c.size() ? c[i] % p_ : 0;
      r += ci * m;
      m *= p_;
    }
    return r;
  }

  std::vector<std::uint32_t> coeffs(fq a) const {
    std::vector<std::uint32_t> c(d_);
    for (std::uint32_t i = 0; i < d_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }

  fq generator() const { return gen_; }

  std::uint32_t log(fq a) const {
    if (a == 0) throw std::domain_error("FieldQ::log: zero");
    return log_[a];
  }

  // Multiplicative order of a nonzero element.
  std::uint32_t mult_order(fq a) const {
    if (a == 0) throw std::domain_error("FieldQ::mult_order: zero");
    std::uint32_t n = q_ - 1;
    std::uint32_t l = log_[a];
    std::uint32_t g = gcd_u32(l == 0 ? n : l, n);
    return n / g;
  }

  bool same_field(const FieldQ& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

  std::string str(fq a) const {
    if (d_ == 1) return std::to_string(a);
    std::string s = "[";
    auto c = coeffs(a);
    for (std::uint32_t i = 0; i < d_; ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + "]";
  }

  static std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t d) {
    if (!detail::is_prime_u32(p)) throw std::invalid_argument("FieldQ: p must be prime");
    if (d == 0) throw std::invalid_argument("FieldQ: d must be positive");
    if (d == 1) return {0, 1};
    // First monic irreducible of degree d in lexicographic order of
    // (c_{d-1}, ..., c_1, c_0); deterministic across runs.
    std::vector<std::uint32_t> c(d + 1, 0);
    c[d] = 1;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
      total *= p;
      if (total > (1ull << 40)) throw std::invalid_argument("FieldQ: modulus search too large");
    }
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t t = code;
      for (std::uint32_t i = 0; i < d; ++i) {
        c[d - 1 - i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (detail::fp_irreducible(c, p)) return c;
    }
    throw std::logic_error("FieldQ: no irreducible polynomial found");
  }

 private:
  FieldQ(std::uint32_t p, std::vector<std::uint32_t> modulus)
      : p_(p), modulus_(std::move(modulus)) {
    if (!detail::is_prime_u32(p_)) throw std::invalid_argument("FieldQ: p must be prime");
    if (modulus_.size() < 2) throw std::invalid_argument("FieldQ: modulus must have degree >= 1");
    if (modulus_.back() != 1) throw std::invalid_argument("FieldQ: modulus must be monic");
    for (auto& c : modulus_) c %= p_;
    modulus_.back() = 1;
    d_ = static_cast<std::uint32_t>(modulus_.size() - 1);
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
      q *= p_;
      if (q > max_q) throw std::invalid_argument("FieldQ: q exceeds supported bound");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (d_ > 1 && !detail::fp_irreducible(modulus_, p_))
      throw std::invalid_argument("FieldQ: modulus is not irreducible");
    build_tables();
  }

  static std::uint32_t gcd_u32(std::uint32_t a, std::uint32_t b) {
    while (b) {
      std::uint32_t t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  // Product in the polynomial basis, reducing modulo the modulus; used only
  // while building the log/exp tables.
  fq mul_slow(fq a, fq b) const {
    std::vector<std::uint32_t> ca(d_), cb(d_);
    for (std::uint32_t i = 0; i < d_; ++i) {
      ca[i] = a % p_;
      a /= p_;
      cb[i] = b % p_;
      b /= p_;
    }
    std::vector<std::uint32_t> prod(2 * d_ - 1, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
      if (ca[i] == 0) continue;
      for (std::uint32_t j = 0; j < d_; ++j)
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    }
    for (std::size_t k = prod.size(); k-- > d_;) {
      std::uint32_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < d_; ++i)
        prod[k - d_ + i] = static_cast<std::uint32_t>(
            (prod[k - d_ + i] + static_cast<std::uint64_t>(c) * (p_ - modulus_[i])) % p_);
    }
    fq r = 0, m = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
      r += prod[i] * m;
      m *= p_;
    }
    return r;
  }

  void build_tables() {
    std::vector<std::uint32_t> prime_factors;
    {
      std::uint32_t n = q_ - 1;
      for (std::uint32_t f = 2; static_cast<std::uint64_t>(f) * f <= n; ++f)
        if (n % f == 0) {
          prime_factors.push_back(f);
          while (n % f == 0) n /= f;
        }
      if (n > 1) prime_factors.push_back(n);
    }
    auto pow_slow = [&](fq a, std::uint32_t e) {
      fq r = 1;
      while (e) {
        if (e & 1) r = mul_slow(r, a);
        a = mul_slow(a, a);
        e >>= 1;
      }
      return r;
    };
    gen_ = 0;
    for (fq g = 1; g < q_; ++g) {
      if (q_ == 2) { gen_ = 1; break; }
      bool primitive = true;
      for (auto f : prime_factors)
        if (pow_slow(g, (q_ - 1) / f) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        gen_ = g;
        break;
      }
    }
    if (gen_ == 0) throw std::logic_error("FieldQ: no primitive element");
    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1), 0);
    fq cur = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      exp_[i + (q_ - 1)] = cur;
      log_[cur] = i;
      cur = mul_slow(cur, gen_);
    }
    if (cur != 1) throw std::logic_error("FieldQ: generator order mismatch");
  }

  std::uint32_t p_, d_, q_;
  std::vector<std::uint32_t> modulus_;
  fq gen_;
  std::vector<std::uint32_t> log_;
  std::vector<fq> exp_;
};

// Embedding F_q -> F_{q^m} sending the modulus root to its first root (by
// element code) in the big field.  Returns the full value table, indexed by
// the small field's element codes.
inline std::vector<fq> field_embedding(const Field& small, const Field& big) {
  if (small->p() != big->p())
    throw std::invalid_argument("field_embedding: different characteristic");
  if (big->d() % small->d() != 0)
    throw std::invalid_argument("field_embedding: degree does not divide");
  const auto& m = small->modulus();
  fq root = 0;
  bool found = false;
  for (fq x = 0; x < big->q(); ++x) {
    fq acc = 0, xp = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      acc = big->add(acc, big->mul(big->from_int(m[i]), xp));
      xp = big->mul(xp, x);
    }
    if (acc == 0) {
      root = x;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("field_embedding: modulus has no root in big field");
  std::vector<fq> table(small->q());
  for (fq a = 0; a < small->q(); ++a) {
    auto c = small->coeffs(a);
    fq acc = 0, rp = 1;
    for (std::uint32_t i = 0; i < small->d(); ++i) {
      acc = big->add(acc, big->mul(big->from_int(c[i]), rp));
      rp = big->mul(rp, root);
    }
    table[a] = acc;
  }
  return table;
}

}  // namespace blocklab

#endif
