#ifndef BLOCKLAB_GROUP_HPP
#define BLOCKLAB_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace blocklab {

namespace detail {
inline bool is_prime_u32_group(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t i = 2; static_cast<std::uint64_t>(i) * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}
}  // namespace detail

// Permutation on {0, ..., degree-1}, stored as the image vector.
using Perm = std::vector<std::uint16_t>;
using gid = std::uint16_t;  // index into a group's sorted element list

inline Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint16_t>(i);
  return p;
}

// (a*b)(x) = a(b(x)): left action composition.
inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint16_t>(i);
  return r;
}

inline bool is_permutation(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  for (auto x : a) {
    if (x >= a.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

class Group;
using GroupRef = std::shared_ptr<const Group>;

// Finite permutation group with the full element list cached and sorted
// lexicographically; all algorithms downstream are exhaustive scans over this
// list.  Immutable after construction.
class Group {
 public:
  static constexpr std::size_t order_cap = 2000;

  static GroupRef from_generators(std::size_t degree, std::vector<Perm> gens,
                                  std::string name = "") {
    for (auto& g : gens) {
      if (g.size() != degree || !is_permutation(g))
        throw std::invalid_argument("Group: generator is not a permutation of stated degree");
    }
    std::set<Perm> elems;
    elems.insert(perm_identity(degree));
    std::vector<Perm> frontier{perm_identity(degree)};
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const auto& h : frontier)
        for (const auto& g : gens) {
          Perm prod = perm_mul(g, h);
          if (elems.insert(prod).second) {
            if (elems.size() > order_cap) throw std::invalid_argument("Group: order cap exceeded");
            next.push_back(std::move(prod));
          }
        }
      frontier = std::move(next);
    }
    return GroupRef(new Group(degree, std::vector<Perm>(elems.begin(), elems.end()),
                              std::move(gens), std::move(name)));
  }

  // Fast path for an already-closed element set (e.g. promoting a subgroup).
  static GroupRef from_closed_elements(std::size_t degree, std::vector<Perm> sorted_elems,
                                       std::vector<Perm> gens, std::string name = "") {
    return GroupRef(new Group(degree, std::move(sorted_elems), std::move(gens), std::move(name)));
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<Perm>& elements() const { return elems_; }
  const Perm& perm(gid i) const { return elems_[i]; }
  const std::vector<gid>& generator_ids() const { return gen_ids_; }
  gid identity() const { return id_; }
  const std::string& name() const { return name_; }

  gid mul(gid a, gid b) const { return mult_[a * order() + b]; }
  gid inv(gid a) const { return inv_[a]; }
  gid conj(gid g, gid x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1

  gid index_of(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    if (it == elems_.end() || *it != p) throw std::invalid_argument("Group: element not in group");
    return static_cast<gid>(it - elems_.begin());
  }

  bool contains(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    return it != elems_.end() && *it == p;
  }

  std::uint32_t element_order(gid a) const {
    std::uint32_t n = 1;
    gid x = a;
    while (x != id_) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (gid i = 0; i < order(); ++i) e = std::lcm(e, static_cast<std::uint64_t>(element_order(i)));
    return e;
  }

  // Conjugacy classes of elements; each class sorted, classes ordered by
  // minimal member.
  std::vector<std::vector<gid>> conjugacy_classes() const {
    std::vector<bool> seen(order(), false);
    std::vector<std::vector<gid>> classes;
    for (gid x = 0; x < order(); ++x) {
      if (seen[x]) continue;
      std::set<gid> cl;
      for (gid g = 0; g < order(); ++g) cl.insert(conj(g, x));
      std::vector<gid> v(cl.begin(), cl.end());
      for (auto y : v) seen[y] = true;
      classes.push_back(std::move(v));
    }
    return classes;
  }

 private:
  Group(std::size_t degree, std::vector<Perm> elems, std::vector<Perm> gens, std::string name)
      : degree_(degree), elems_(std::move(elems)), name_(std::move(name)) {
    if (elems_.empty() || elems_.size() > order_cap)
      throw std::invalid_argument("Group: bad element list");
    if (!std::is_sorted(elems_.begin(), elems_.end()))
      std::sort(elems_.begin(), elems_.end());
    std::size_t n = elems_.size();
    mult_.assign(n * n, 0);
    inv_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Perm p = perm_mul(elems_[i], elems_[j]);
        auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
        if (it == elems_.end() || *it != p)
          throw std::invalid_argument("Group: element set not closed under product");
        mult_[i * n + j] = static_cast<gid>(it - elems_.begin());
      }
    id_ = index_of(perm_identity(degree_));
    for (gid i = 0; i < n; ++i) {
      Perm p = perm_inverse(elems_[i]);
      inv_[i] = index_of(p);
    }
    if (gens.empty()) {
      for (gid i = 0; i < n; ++i) gen_ids_.push_back(i);
    } else {
      for (auto& g : gens) gen_ids_.push_back(index_of(g));
    }
  }

  std::size_t degree_;
  std::vector<Perm> elems_;
  std::string name_;
  std::vector<gid> mult_, inv_;
  std::vector<gid> gen_ids_;
  gid id_ = 0;
};

// Subgroup as a sorted list of parent element indices.  Promotion to a
// standalone Group preserves the element ordering (subset of a sorted list),
// so promoted index i corresponds to parent index elem_ids()[i].
class Subgroup {
 public:
  Subgroup(GroupRef parent, std::vector<gid> elem_ids)
      : parent_(std::move(parent)), ids_(std::move(elem_ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    if (ids_.empty()) throw std::invalid_argument("Subgroup: empty");
    for (auto a : ids_)
      if (a >= parent_->order()) throw std::invalid_argument("Subgroup: bad element id");
    for (auto a : ids_)
      for (auto b : ids_)
        if (!contains(parent_->mul(a, b)))
          throw std::invalid_argument("Subgroup: not closed under product");
    if (!contains(parent_->identity())) throw std::invalid_argument("Subgroup: missing identity");
  }

  static Subgroup generated(const GroupRef& parent, const std::vector<gid>& gens) {
    std::set<gid> elems{parent->identity()};
    std::vector<gid> frontier{parent->identity()};
    while (!frontier.empty()) {
      std::vector<gid> next;
      for (auto h : frontier)
        for (auto g : gens) {
          gid prod = parent->mul(g, h);
          if (elems.insert(prod).second) next.push_back(prod);
        }
      frontier = std::move(next);
    }
    return Subgroup(parent, std::vector<gid>(elems.begin(), elems.end()));
  }

  static Subgroup trivial(const GroupRef& parent) {
    return Subgroup(parent, {parent->identity()});
  }

  static Subgroup full(const GroupRef& parent) {
    std::vector<gid> ids(parent->order());
    for (gid i = 0; i < parent->order(); ++i) ids[i] = i;
    return Subgroup(parent, std::move(ids));
  }

  const GroupRef& parent() const { return parent_; }
  const std::vector<gid>& elem_ids() const { return ids_; }
  std::size_t order() const { return ids_.size(); }

  bool contains(gid a) const {
    return std::binary_search(ids_.begin(), ids_.end(), a);
  }

  bool contains_subgroup(const Subgroup& other) const {
    for (auto a : other.ids_)
      if (!contains(a)) return false;
    return true;
  }

  bool operator==(const Subgroup& o) const {
    return parent_ == o.parent_ && ids_ == o.ids_;
  }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

  bool is_normal_in(const Subgroup& bigger) const {
    for (auto g : bigger.ids_)
      for (auto s : ids_)
        if (!contains(parent_->conj(g, s))) return false;
    return true;
  }

  bool is_normal_in_parent() const {
    for (gid g = 0; g < parent_->order(); ++g)
      for (auto s : ids_)
        if (!contains(parent_->conj(g, s))) return false;
    return true;
  }

 private:
  GroupRef parent_;
  std::vector<gid> ids_;
};

// Promoted standalone group for a subgroup, with index translation.
struct PromotedSubgroup {
  GroupRef group;                // standalone group on the parent's points
  std::vector<gid> to_parent;    // promoted index -> parent index

  gid to_sub(const GroupRef& parent, gid parent_id) const {
    (void)parent;
    auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent_id);
    if (it == to_parent.end() || *it != parent_id)
      throw std::invalid_argument("PromotedSubgroup: element not in subgroup");
    return static_cast<gid>(it - to_parent.begin());
  }
};

inline PromotedSubgroup promote(const Subgroup& S, std::string name = "") {
  const auto& P = S.parent();
  std::vector<Perm> elems;
  elems.reserve(S.order());
  for (auto a : S.elem_ids()) elems.push_back(P->perm(a));
  std::vector<Perm> gens;  // the full element list generates; keep it simple
  auto G = Group::from_closed_elements(P->degree(), std::move(elems), std::move(gens),
                                       std::move(name));
  return PromotedSubgroup{G, S.elem_ids()};
}

// -------- library groups --------

namespace detail {

inline GroupRef cyclic_group(std::size_t n, const std::string& name) {
  if (n == 0) throw std::invalid_argument("cyclic: order 0");
  if (n == 1)
    return Group::from_generators(1, {}, name);
  Perm r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint16_t>((i + 1) % n);
  return Group::from_generators(n, {r}, name);
}

inline GroupRef dihedral_group(std::size_t order, const std::string& name) {
  if (order < 4 || order % 2) throw std::invalid_argument("dihedral: order must be even >= 4");
  std::size_t n = order / 2;
  Perm r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<std::uint16_t>((i + 1) % n);
    s[i] = static_cast<std::uint16_t>((n - i) % n);
  }
  return Group::from_generators(n, {r, s}, name);
}

inline GroupRef quaternion_group(const std::string& name) {
  // Left regular action on {1, -1, i, -i, j, -j, k, -k} = indices 0..7.
  // Multiplication table of the quaternion units.
  auto unit_mul = [](int a, int b) {
    // encode: (sign, axis) with axis 0 = scalar, 1 = i, 2 = j, 3 = k
    int sa = a % 2 ? -1 : 1, xa = a / 2;
    int sb = b % 2 ? -1 : 1, xb = b / 2;
    int sign = sa * sb, axis;
    if (xa == 0) axis = xb;
    else if (xb == 0) axis = xa;
    else if (xa == xb) { axis = 0; sign = -sign; }
    else {
      // i*j=k, j*k=i, k*i=j; reversed order flips the sign
      static const int tbl[4][4] = {{0,0,0,0},{0,0,3,2},{0,3,0,1},{0,2,1,0}};
      axis = tbl[xa][xb];
      bool forward = (xa == 1 && xb == 2) || (xa == 2 && xb == 3) || (xa == 3 && xb == 1);
      if (!forward) sign = -sign;
    }
    return 2 * axis + (sign < 0 ? 1 : 0);
  };
  Perm gi(8), gj(8);
  for (int x = 0; x < 8; ++x) {
    gi[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(unit_mul(2, x));
    gj[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(unit_mul(4, x));
  }
  return Group::from_generators(8, {gi, gj}, name);
}

inline GroupRef symmetric_group(std::size_t n, const std::string& name) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric: n must be 1..5");
  if (n == 1) return Group::from_generators(1, {}, name);
  Perm t = perm_identity(n), c(n);
  std::swap(t[0], t[1]);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % n);
  return Group::from_generators(n, {t, c}, name);
}

inline GroupRef alternating_group(std::size_t n, const std::string& name) {
  if (n < 3 || n > 5) throw std::invalid_argument("alternating: n must be 3..5");
  Perm c3 = perm_identity(n);
  c3[0] = 1; c3[1] = 2; c3[2] = 0;
  if (n == 3) return Group::from_generators(n, {c3}, name);
  Perm big = perm_identity(n);
  if (n % 2 == 1) {
    for (std::size_t i = 0; i < n; ++i) big[i] = static_cast<std::uint16_t>((i + 1) % n);
  } else {
    // (1 2 ... n-1) fixing point 0
    for (std::size_t i = 1; i < n; ++i) big[i] = static_cast<std::uint16_t>(i % (n - 1) + 1);
  }
  return Group::from_generators(n, {c3, big}, name);
}

inline GroupRef sl23_group(const std::string& name) {
  // Action on the 8 nonzero vectors of F_3^2, vector (a,b) -> index 3a+b-1.
  auto idx = [](int a, int b) { return a * 3 + b - 1; };
  auto apply = [&](int m00, int m01, int m10, int m11) {
    Perm p(8);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == 0 && b == 0) continue;
        int na = (m00 * a + m01 * b) % 3, nb = (m10 * a + m11 * b) % 3;
        p[static_cast<std::size_t>(idx(a, b))] = static_cast<std::uint16_t>(idx(na, nb));
      }
    return p;
  };
  Perm g1 = apply(1, 1, 0, 1);   // [[1,1],[0,1]]
  Perm g2 = apply(0, 2, 1, 0);   // [[0,-1],[1,0]]
  return Group::from_generators(8, {g1, g2}, name);
}

inline GroupRef frobenius21_group(const std::string& name) {
  // C_7 x| C_3 as affine maps of F_7: a: x -> x+1, b: x -> 2x+1.
  Perm a(7), b(7);
  for (std::size_t i = 0; i < 7; ++i) {
    a[i] = static_cast<std::uint16_t>((i + 1) % 7);
    b[i] = static_cast<std::uint16_t>((2 * i + 1) % 7);
  }
  return Group::from_generators(7, {a, b}, name);
}

inline GroupRef c3c4_group(const std::string& name) {
  // C_3 x| C_4 with the C_4 inverting C_3; faithful on 3 + 4 points.
  Perm a = perm_identity(7), b = perm_identity(7);
  a[0] = 1; a[1] = 2; a[2] = 0;
  b[1] = 2; b[2] = 1;            // inverts the 3-cycle
  b[3] = 4; b[4] = 5; b[5] = 6; b[6] = 3;
  return Group::from_generators(7, {a, b}, name);
}

inline GroupRef direct_product(const GroupRef& A, const GroupRef& B, const std::string& name) {
  std::size_t dA = A->degree(), dB = B->degree();
  std::vector<Perm> gens;
  for (auto g : A->generator_ids()) {
    Perm p = perm_identity(dA + dB);
    for (std::size_t i = 0; i < dA; ++i) p[i] = A->perm(g)[i];
    gens.push_back(p);
  }
  for (auto g : B->generator_ids()) {
    Perm p = perm_identity(dA + dB);
    for (std::size_t i = 0; i < dB; ++i) p[dA + i] = static_cast<std::uint16_t>(B->perm(g)[i] + dA);
    gens.push_back(p);
  }
  return Group::from_generators(dA + dB, gens, name);
}

}  // namespace detail

// The product group H x H together with the diagonal subgroup.
struct DiagonalData {
  GroupRef product;
  Subgroup delta;
};

inline DiagonalData diagonal_subgroup(const GroupRef& H) {
  auto HH = detail::direct_product(H, H, H->name().empty() ? "" : H->name() + "x" + H->name());
  std::size_t d = H->degree();
  std::vector<gid> ids;
  for (gid h = 0; h < H->order(); ++h) {
    Perm p = perm_identity(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = H->perm(h)[i];
      p[d + i] = static_cast<std::uint16_t>(H->perm(h)[i] + d);
    }
    ids.push_back(HH->index_of(p));
  }
  return DiagonalData{HH, Subgroup(HH, std::move(ids))};
}

// Build a group from a library name: Cn, D2n (by order), Q8, Sn, An (n <= 5),
// SL(2,3), C7:C3, C3:C4, products like "C2xS3", and Delta(<name>).
inline GroupRef build_group(const std::string& spec);

namespace detail {

inline GroupRef build_group_atom(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("build_group: empty name");
  if (s == "Q8") return quaternion_group(s);
  if (s == "SL(2,3)" || s == "SL23") return sl23_group("SL(2,3)");
  if (s == "C7:C3" || s == "F21") return frobenius21_group("C7:C3");
  if (s == "C3:C4") return c3c4_group(s);
  if (s.rfind("Delta(", 0) == 0 && s.back() == ')') {
    auto inner = build_group(s.substr(6, s.size() - 7));
    auto d = diagonal_subgroup(inner);
    return promote(d.delta, s).group;
  }
  char kind = s[0];
  std::size_t n = 0;
  try {
    n = static_cast<std::size_t>(std::stoul(s.substr(1)));
  } catch (...) {
    throw std::invalid_argument("build_group: unknown spec '" + s + "'");
  }
  switch (kind) {
    case 'C': return cyclic_group(n, s);
    case 'D': return dihedral_group(n, s);
    case 'S': return symmetric_group(n, s);
    case 'A': return alternating_group(n, s);
    default: throw std::invalid_argument("build_group: unknown spec '" + s + "'");
  }
}

}  // namespace detail

inline GroupRef build_group(const std::string& spec) {
  // split on 'x' at top level (no parentheses nesting except Delta(...))
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == 'x' && depth == 0 && !cur.empty() && (cur != "Delta" && cur.back() != '(')) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  GroupRef g = detail::build_group_atom(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i)
    g = detail::direct_product(g, detail::build_group_atom(parts[i]), spec);
  return g;
}

// -------- subgroup machinery --------

inline Subgroup centralizer(const GroupRef& G, const Subgroup& S) {
  std::vector<gid> ids;
  for (gid g = 0; g < G->order(); ++g) {
    bool ok = true;
    for (auto s : S.elem_ids())
      if (G->mul(g, s) != G->mul(s, g)) {
        ok = false;
        break;
      }
    if (ok) ids.push_back(g);
  }
  return Subgroup(G, std::move(ids));
}

inline Subgroup normalizer(const GroupRef& G, const Subgroup& S) {
  std::vector<gid> ids;
  for (gid g = 0; g < G->order(); ++g) {
    bool ok = true;
    for (auto s : S.elem_ids())
      if (!S.contains(G->conj(g, s))) {
        ok = false;
        break;
      }
    if (ok) ids.push_back(g);
  }
  return Subgroup(G, std::move(ids));
}

struct CentralizerNormalizer {
  Subgroup centralizer;
  Subgroup normalizer;
};

inline CentralizerNormalizer centralizer_normalizer(const GroupRef& G, const Subgroup& S) {
  return {centralizer(G, S), normalizer(G, S)};
}

inline std::vector<gid> conjugate_ids(const GroupRef& G, const std::vector<gid>& ids, gid g) {
  std::vector<gid> out;
  out.reserve(ids.size());
  for (auto s : ids) out.push_back(G->conj(g, s));
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup conjugate_subgroup(const GroupRef& G, const Subgroup& S, gid g) {
  return Subgroup(G, conjugate_ids(G, S.elem_ids(), g));
}

// Lexicographically minimal sorted element tuple among all conjugates: the
// canonical representative of the conjugacy class.
inline std::vector<gid> canonical_conjugate_ids(const GroupRef& G, const std::vector<gid>& ids) {
  std::vector<gid> best = ids;
  for (gid g = 0; g < G->order(); ++g) {
    auto c = conjugate_ids(G, ids, g);
    if (c < best) best = c;
  }
  return best;
}

// First g with gAg^-1 = B, if any.
inline std::optional<gid> conjugating_element(const GroupRef& G, const std::vector<gid>& A,
                                              const std::vector<gid>& B) {
  if (A.size() != B.size()) return std::nullopt;
  for (gid g = 0; g < G->order(); ++g)
    if (conjugate_ids(G, A, g) == B) return g;
  return std::nullopt;
}

struct PSubgroupData {
  std::vector<Subgroup> reps;                        // canonical, ordered by (order, ids)
  std::vector<std::vector<std::vector<gid>>> classes;  // all members per class
  Subgroup sylow;                                    // one maximal-order rep
};

// Every p-subgroup of G, grouped into conjugacy classes.  Layered search:
// each p-subgroup of order p^(k+1) sits above a normal subgroup of order p^k,
// generated by one extra normalizing element with p-th power inside.
inline PSubgroupData sylow_and_p_subgroups(const GroupRef& G, std::uint32_t p) {
  if (!detail::is_prime_u32_group(p)) throw std::invalid_argument("sylow: p not prime");
  std::set<std::vector<gid>> all;
  std::vector<gid> triv{G->identity()};
  all.insert(triv);
  std::vector<std::vector<gid>> layer{triv};
  auto is_p_power_order = [&](gid x) {
    std::uint32_t n = G->element_order(x);
    while (n % p == 0) n /= p;
    return n == 1;
  };
  std::vector<gid> p_elements;
  for (gid x = 0; x < G->order(); ++x)
    if (x != G->identity() && is_p_power_order(x)) p_elements.push_back(x);
  while (!layer.empty()) {
    std::vector<std::vector<gid>> next;
    for (const auto& S : layer) {
      Subgroup sub(G, S);
      Subgroup N = normalizer(G, sub);
      for (auto x : N.elem_ids()) {
        if (sub.contains(x)) continue;
        if (!std::binary_search(p_elements.begin(), p_elements.end(), x)) continue;
        gid xp = x;
        for (std::uint32_t i = 1; i < p; ++i) xp = G->mul(xp, x);
        if (!sub.contains(xp)) continue;
        std::vector<gid> gens = S;
        gens.push_back(x);
        Subgroup T = Subgroup::generated(G, gens);
        if (T.order() != S.size() * p) continue;
        if (all.insert(T.elem_ids()).second) next.push_back(T.elem_ids());
      }
    }
    layer = std::move(next);
  }
  // group into conjugacy classes
  PSubgroupData out{{}, {}, Subgroup::trivial(G)};
  std::set<std::vector<gid>> unseen = all;
  std::vector<std::pair<std::vector<gid>, std::vector<std::vector<gid>>>> classes;
  while (!unseen.empty()) {
    auto S = *unseen.begin();
    std::set<std::vector<gid>> orbit;
    for (gid g = 0; g < G->order(); ++g) orbit.insert(conjugate_ids(G, S, g));
    std::vector<std::vector<gid>> members(orbit.begin(), orbit.end());
    for (auto& m : members) unseen.erase(m);
    classes.emplace_back(*orbit.begin(), std::move(members));
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  for (auto& [rep, members] : classes) {
    out.reps.emplace_back(G, rep);
    out.classes.push_back(members);
  }
  out.sylow = out.reps.back();
  return out;
}

// Group homomorphism with the full element map cached; multiplicativity is
// verified exhaustively at construction.
class GroupHom {
 public:
  GroupHom(GroupRef src, GroupRef dst, std::vector<gid> map)
      : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
    if (map_.size() != src_->order()) throw std::invalid_argument("GroupHom: map size mismatch");
    for (auto x : map_)
      if (x >= dst_->order()) throw std::invalid_argument("GroupHom: image out of range");
    for (gid a = 0; a < src_->order(); ++a)
      for (gid b = 0; b < src_->order(); ++b)
        if (map_[src_->mul(a, b)] != dst_->mul(map_[a], map_[b]))
          throw std::invalid_argument("GroupHom: not multiplicative");
  }

  const GroupRef& source() const { return src_; }
  const GroupRef& target() const { return dst_; }
  gid apply(gid a) const { return map_[a]; }
  const std::vector<gid>& map() const { return map_; }

  std::vector<gid> kernel_ids() const {
    std::vector<gid> k;
    for (gid a = 0; a < src_->order(); ++a)
      if (map_[a] == dst_->identity()) k.push_back(a);
    return k;
  }

  std::vector<gid> image_ids() const {
    std::set<gid> img(map_.begin(), map_.end());
    return std::vector<gid>(img.begin(), img.end());
  }

 private:
  GroupRef src_, dst_;
  std::vector<gid> map_;
};

// Left cosets gS listed by increasing minimal element; each coset sorted.
inline std::vector<std::vector<gid>> left_cosets(const GroupRef& G, const Subgroup& S) {
  std::vector<bool> seen(G->order(), false);
  std::vector<std::vector<gid>> cosets;
  for (gid g = 0; g < G->order(); ++g) {
    if (seen[g]) continue;
    std::vector<gid> coset;
    for (auto s : S.elem_ids()) coset.push_back(G->mul(g, s));
    std::sort(coset.begin(), coset.end());
    for (auto x : coset) seen[x] = true;
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

inline std::vector<gid> left_coset_reps(const GroupRef& G, const Subgroup& S) {
  std::vector<gid> reps;
  for (auto& c : left_cosets(G, S)) reps.push_back(c[0]);
  return reps;
}

struct QuotientGroup {
  GroupRef group;          // permutation action of H on the cosets of P
  GroupHom projection;     // promoted H -> quotient
  PromotedSubgroup source; // promoted H with parent translation
};

// H/P via the coset action; requires P normal in H.
inline QuotientGroup quotient_group(const Subgroup& H, const Subgroup& P) {
  if (!H.contains_subgroup(P)) throw std::invalid_argument("quotient_group: P not inside H");
  if (!P.is_normal_in(H)) throw std::invalid_argument("quotient_group: P not normal in H");
  const auto& G = H.parent();
  auto ph = promote(H);
  // cosets of P inside H
  std::vector<std::vector<gid>> cosets;  // parent ids
  std::vector<int> coset_of(G->order(), -1);
  for (auto h : H.elem_ids()) {
    if (coset_of[h] >= 0) continue;
    std::vector<gid> coset;
    for (auto s : P.elem_ids()) coset.push_back(G->mul(h, s));
    std::sort(coset.begin(), coset.end());
    for (auto x : coset) coset_of[x] = static_cast<int>(cosets.size());
    cosets.push_back(std::move(coset));
  }
  std::size_t q = cosets.size();
  auto act = [&](gid h) {
    Perm pm(q);
    for (std::size_t c = 0; c < q; ++c)
      pm[c] = static_cast<std::uint16_t>(coset_of[G->mul(h, cosets[c][0])]);
    return pm;
  };
  std::vector<Perm> gens;
  for (auto h : H.elem_ids()) gens.push_back(act(h));
  std::vector<Perm> uniq = gens;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  auto Q = Group::from_closed_elements(q, std::move(uniq), {});
  std::vector<gid> map(ph.group->order());
  for (gid i = 0; i < ph.group->order(); ++i) map[i] = Q->index_of(act(ph.to_parent[i]));
  return QuotientGroup{Q, GroupHom(ph.group, Q, std::move(map)), ph};
}

// Representatives of the double cosets H\G/K, canonical (minimal element of
// each double coset), with the full double cosets alongside.
struct DoubleCosets {
  std::vector<gid> reps;
  std::vector<std::vector<gid>> cosets;
};

inline DoubleCosets double_cosets(const GroupRef& G, const Subgroup& H, const Subgroup& K) {
  std::vector<bool> seen(G->order(), false);
  DoubleCosets out;
  for (gid g = 0; g < G->order(); ++g) {
    if (seen[g]) continue;
    std::set<gid> dc;
    for (auto h : H.elem_ids())
      for (auto k : K.elem_ids()) dc.insert(G->mul(G->mul(h, g), k));
    std::vector<gid> v(dc.begin(), dc.end());
    for (auto x : v) seen[x] = true;
    out.reps.push_back(v[0]);
    out.cosets.push_back(std::move(v));
  }
  return out;
}

// Structure name for small subgroups (used for triple specs and reports):
// cyclic Cn, V4, elementary E_{p^k}, D8/Q8, otherwise abelian invariants or a
// generic order tag.
inline std::string subgroup_structure_name(const GroupRef& G, const Subgroup& S) {
  std::size_t n = S.order();
  if (n == 1) return "1";
  // cyclic?
  for (auto a : S.elem_ids())
    if (G->element_order(a) == n) return "C" + std::to_string(n);
  bool abelian = true;
  for (auto a : S.elem_ids()) {
    for (auto b : S.elem_ids())
      if (G->mul(a, b) != G->mul(b, a)) {
        abelian = false;
        break;
      }
    if (!abelian) break;
  }
  if (n == 4) return "V4";
  if (abelian) {
    // abelian invariants by order statistics: good enough at desk scale
    std::map<std::uint32_t, int> ords;
    for (auto a : S.elem_ids()) ords[G->element_order(a)]++;
    bool elementary = true;
    std::uint32_t pmin = 0;
    for (auto& [o, c] : ords)
      if (o > 1) {
        if (pmin == 0) pmin = o;
        if (o != pmin) elementary = false;
      }
    if (elementary && pmin > 0) return "E" + std::to_string(n);
    return "Ab" + std::to_string(n);
  }
  if (n == 8) {
    int order4 = 0;
    for (auto a : S.elem_ids())
      if (G->element_order(a) == 4) ++order4;
    if (order4 == 2) return "D8";
    if (order4 == 6) return "Q8";
  }
  return "G" + std::to_string(n);
}

}  // namespace blocklab

#endif
