#ifndef BLOCKLAB_ALGEBRA_HPP
#define BLOCKLAB_ALGEBRA_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "blocklab/field.hpp"
#include "blocklab/group.hpp"
#include "blocklab/matrix.hpp"
#include "blocklab/poly.hpp"

namespace blocklab {

// Deterministic seed for the one place randomness is needed (finding an
// idempotent inside a simple non-commutative algebra).
inline constexpr std::uint64_t idempotent_seed = 0xb10c1de30000001ull;

// -------- group algebra elements --------

// Element of the group algebra kG: one coefficient per group element.
class AlgElem {
 public:
  AlgElem(GroupRef group, Field field)
      : group_(std::move(group)), field_(std::move(field)), coeff_(group_->order(), 0) {}

  AlgElem(GroupRef group, Field field, std::vector<fq> coeff)
      : group_(std::move(group)), field_(std::move(field)), coeff_(std::move(coeff)) {
    if (coeff_.size() != group_->order())
      throw std::invalid_argument("AlgElem: coefficient count != group order");
    for (auto c : coeff_)
      if (c >= field_->q()) throw std::invalid_argument("AlgElem: bad coefficient code");
  }

  static AlgElem zero(const GroupRef& g, const Field& k) { return AlgElem(g, k); }

  static AlgElem one(const GroupRef& g, const Field& k) {
    AlgElem a(g, k);
    a.coeff_[g->identity()] = 1;
    return a;
  }

  static AlgElem delta(const GroupRef& g, const Field& k, gid x) {
    AlgElem a(g, k);
    a.coeff_.at(x) = 1;
    return a;
  }

  const GroupRef& group() const { return group_; }
  const Field& field() const { return field_; }
  const std::vector<fq>& coeff() const { return coeff_; }
  fq operator[](gid g) const { return coeff_[g]; }
  void set(gid g, fq c) { coeff_.at(g) = c; }

  bool is_zero() const {
    for (auto c : coeff_)
      if (c) return false;
    return true;
  }

  bool operator==(const AlgElem& o) const { return group_ == o.group_ && coeff_ == o.coeff_; }
  bool operator!=(const AlgElem& o) const { return !(*this == o); }

  AlgElem operator+(const AlgElem& o) const {
    check_compat(o);
    AlgElem r(group_, field_);
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      r.coeff_[i] = field_->add(coeff_[i], o.coeff_[i]);
    return r;
  }

  AlgElem operator-(const AlgElem& o) const {
    check_compat(o);
    AlgElem r(group_, field_);
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      r.coeff_[i] = field_->sub(coeff_[i], o.coeff_[i]);
    return r;
  }

  AlgElem scale(fq c) const {
    AlgElem r(group_, field_);
    for (std::size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] = field_->mul(coeff_[i], c);
    return r;
  }

  // Convolution product of the group algebra.
  AlgElem operator*(const AlgElem& o) const {
    check_compat(o);
    AlgElem r(group_, field_);
    for (gid h = 0; h < group_->order(); ++h) {
      if (!coeff_[h]) continue;
      for (gid k = 0; k < group_->order(); ++k) {
        if (!o.coeff_[k]) continue;
        gid g = group_->mul(h, k);
        r.coeff_[g] = field_->add(r.coeff_[g], field_->mul(coeff_[h], o.coeff_[k]));
      }
    }
    return r;
  }

  // Conjugation action: x . a = x a x^-1.
  AlgElem conj_by(gid x) const {
    AlgElem r(group_, field_);
    for (gid h = 0; h < group_->order(); ++h)
      if (coeff_[h]) r.coeff_[group_->conj(x, h)] = coeff_[h];
    return r;
  }

  bool is_fixed_by(const Subgroup& P) const {
    for (auto x : P.elem_ids())
      if (conj_by(x) != *this) return false;
    return true;
  }

  bool is_central() const {
    for (gid x = 0; x < group_->order(); ++x)
      if (conj_by(x) != *this) return false;
    return true;
  }

  bool is_idempotent() const { return *this * *this == *this; }

  // Sum of coefficients: the algebra map kG -> k induced by the trivial module.
  fq augmentation() const {
    fq s = 0;
    for (auto c : coeff_) s = field_->add(s, c);
    return s;
  }

  std::vector<gid> support() const {
    std::vector<gid> s;
    for (gid g = 0; g < group_->order(); ++g)
      if (coeff_[g]) s.push_back(g);
    return s;
  }

  // Restriction of support to a set of element ids (coefficients elsewhere
  // dropped).
  AlgElem truncate_to(const std::vector<gid>& ids) const {
    AlgElem r(group_, field_);
    for (auto g : ids) r.coeff_[g] = coeff_[g];
    return r;
  }

 private:
  void check_compat(const AlgElem& o) const {
    if (group_ != o.group_ || field_->q() != o.field_->q())
      throw std::invalid_argument("AlgElem: mixed group algebras");
  }

  GroupRef group_;
  Field field_;
  std::vector<fq> coeff_;
};

// Transport an element of k[S] (S promoted subgroup of G) into kG along the
// inclusion, and back by support restriction.
inline AlgElem inject_to_parent(const AlgElem& a, const PromotedSubgroup& ps,
                                const GroupRef& parent) {
  AlgElem r(parent, a.field());
  for (gid s = 0; s < ps.group->order(); ++s)
    if (a[s]) r.set(ps.to_parent[s], a[s]);
  return r;
}

inline AlgElem restrict_to_subgroup(const AlgElem& a, const PromotedSubgroup& ps) {
  AlgElem r(ps.group, a.field());
  for (gid s = 0; s < ps.group->order(); ++s) r.set(s, a[ps.to_parent[s]]);
  return r;
}

// Relative trace in the group algebra: Tr_Q^P(a) = sum over coset reps x of
// P/Q of x a x^-1, for a fixed by Q.
inline AlgElem relative_trace(const GroupRef& G, const Subgroup& P, const Subgroup& Q,
                              const AlgElem& a) {
  if (!P.contains_subgroup(Q)) throw std::invalid_argument("relative_trace: Q not inside P");
  if (!a.is_fixed_by(Q)) throw std::invalid_argument("relative_trace: element not Q-fixed");
  AlgElem r = AlgElem::zero(G, a.field());
  std::vector<bool> seen(G->order(), false);
  for (auto x : P.elem_ids()) {
    if (seen[x]) continue;
    for (auto q : Q.elem_ids()) seen[G->mul(x, q)] = true;
    r = r + a.conj_by(x);
  }
  return r;
}

// -------- abstract finite-dimensional algebras --------

// Associative unital algebra over F_q given by left-multiplication matrices of
// a distinguished basis.  Elements are coordinate vectors in that basis.
class FDAlgebra {
 public:
  static constexpr std::size_t dim_cap = 512;

  static FDAlgebra from_left_matrices(Field k, std::vector<Mat> left, std::vector<fq> unit) {
    return FDAlgebra(std::move(k), std::move(left), std::move(unit));
  }

  // Build from an abstract multiplication function on basis indices.
  static FDAlgebra from_multiplication(
      const Field& k, std::size_t n,
      const std::function<std::vector<fq>(std::size_t, std::size_t)>& basis_mul,
      std::vector<fq> unit) {
    std::vector<Mat> left;
    left.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Mat L(k, n, n);
      for (std::size_t j = 0; j < n; ++j) {
        auto prod = basis_mul(i, j);
        if (prod.size() != n) throw std::invalid_argument("FDAlgebra: bad product length");
        for (std::size_t r = 0; r < n; ++r) L.at(r, j) = prod[r];
      }
      left.push_back(std::move(L));
    }
    return FDAlgebra(k, std::move(left), std::move(unit));
  }

  const Field& field() const { return k_; }
  std::size_t dim() const { return n_; }
  const std::vector<fq>& unit() const { return unit_; }
  const Mat& basis_left_matrix(std::size_t i) const { return left_[i]; }

  std::vector<fq> basis_vec(std::size_t i) const {
    std::vector<fq> v(n_, 0);
    v.at(i) = 1;
    return v;
  }

  Mat left_matrix(const std::vector<fq>& x) const {
    Mat L(k_, n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (x[i]) L = L + left_[i].scale(x[i]);
    return L;
  }

  Mat right_matrix(const std::vector<fq>& y) const {
    Mat R(k_, n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      auto col = mul(basis_vec(j), y);
      for (std::size_t r = 0; r < n_; ++r) R.at(r, j) = col[r];
    }
    return R;
  }

  std::vector<fq> mul(const std::vector<fq>& x, const std::vector<fq>& y) const {
    std::vector<fq> r(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!x[i]) continue;
      const Mat& L = left_[i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (!y[j]) continue;
        fq c = k_->mul(x[i], y[j]);
        for (std::size_t rr = 0; rr < n_; ++rr)
          r[rr] = k_->add(r[rr], k_->mul(L.at(rr, j), c));
      }
    }
    return r;
  }

  std::vector<fq> add(const std::vector<fq>& x, const std::vector<fq>& y) const {
    std::vector<fq> r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = k_->add(x[i], y[i]);
    return r;
  }

  std::vector<fq> sub(const std::vector<fq>& x, const std::vector<fq>& y) const {
    std::vector<fq> r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = k_->sub(x[i], y[i]);
    return r;
  }

  std::vector<fq> scale(const std::vector<fq>& x, fq c) const {
    std::vector<fq> r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = k_->mul(x[i], c);
    return r;
  }

  bool is_zero(const std::vector<fq>& x) const {
    for (auto c : x)
      if (c) return false;
    return true;
  }

  std::vector<fq> power(std::vector<fq> x, std::uint64_t e) const {
    std::vector<fq> acc = unit_;
    while (e) {
      if (e & 1) acc = mul(acc, x);
      x = mul(x, x);
      e >>= 1;
    }
    return acc;
  }

  std::vector<fq> eval_poly(const Poly& f, const std::vector<fq>& x) const {
    std::vector<fq> acc(n_, 0);
    for (int i = f.deg(); i >= 0; --i) {
      acc = mul(acc, x);
      acc = add(acc, scale(unit_, f.coeff(static_cast<std::size_t>(i))));
    }
    return acc;
  }

  bool is_idempotent(const std::vector<fq>& x) const { return mul(x, x) == x; }

  // Minimal polynomial of an element: annihilator of the unit vector under
  // left multiplication (faithful since the algebra is unital).
  Poly element_minpoly(const std::vector<fq>& x) const {
    return minpoly_of_vector(left_matrix(x), unit_);
  }

  // Center as a canonical column basis: solutions of [z, b_i] = 0 for all i.
  Mat center_basis() const {
    Mat stacked(k_, 0, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Mat R(k_, n_, n_);
      auto bi = basis_vec(i);
      for (std::size_t j = 0; j < n_; ++j) {
        auto col = sub(mul(basis_vec(j), bi), mul(bi, basis_vec(j)));
        for (std::size_t r = 0; r < n_; ++r) R.at(r, j) = col[r];
      }
      stacked = stacked.rows() == 0 ? R : stacked.vstack(R);
    }
    return stacked.kernel();
  }

  // Verifies the axioms; exhaustive on basis triples in small dimension, a
  // deterministic strided sample beyond that.
  void verify(bool exhaustive_override = false) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (mul(unit_, basis_vec(i)) != basis_vec(i) || mul(basis_vec(i), unit_) != basis_vec(i))
        throw std::invalid_argument("FDAlgebra: unit axiom fails");
    }
    std::size_t stride =
        (n_ <= 20 || exhaustive_override) ? 1 : std::max<std::size_t>(2, n_ / 16);
    for (std::size_t i = 0; i < n_; i += stride)
      for (std::size_t j = 0; j < n_; j += stride)
        for (std::size_t k = 0; k < n_; k += stride) {
          auto lhs = mul(mul(basis_vec(i), basis_vec(j)), basis_vec(k));
          auto rhs = mul(basis_vec(i), mul(basis_vec(j), basis_vec(k)));
          if (lhs != rhs) throw std::invalid_argument("FDAlgebra: associativity fails");
        }
  }

 private:
  FDAlgebra(Field k, std::vector<Mat> left, std::vector<fq> unit)
      : k_(std::move(k)), n_(left.size()), left_(std::move(left)), unit_(std::move(unit)) {
    if (n_ == 0 || n_ > dim_cap) throw std::invalid_argument("FDAlgebra: dimension out of range");
    for (const auto& L : left_)
      if (L.rows() != n_ || L.cols() != n_)
        throw std::invalid_argument("FDAlgebra: left matrix shape");
    if (unit_.size() != n_) throw std::invalid_argument("FDAlgebra: unit length");
    verify();
  }

  Field k_;
  std::size_t n_;
  std::vector<Mat> left_;
  std::vector<fq> unit_;
};

// A subalgebra of an ambient space presented by a column basis, together with
// the abstract algebra on that basis.  `basis` maps abstract coordinates to
// ambient coordinates.
struct SpanAlgebra {
  FDAlgebra alg;
  Mat basis;

  std::vector<fq> to_ambient(const std::vector<fq>& x) const {
    Mat amb = basis * Mat::column(basis.field(), x);
    std::vector<fq> v(amb.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = amb.at(i, 0);
    return v;
  }

  std::vector<fq> to_coords(const std::vector<fq>& ambient) const {
    auto sol = basis.solve(Mat::column(basis.field(), ambient));
    if (!sol) throw std::invalid_argument("SpanAlgebra: vector outside subalgebra");
    std::vector<fq> v(basis.cols());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = sol->particular.at(i, 0);
    return v;
  }
};

// Closes a spanning set under the ambient multiplication and produces the
// abstract algebra on a canonical basis.  `amb_mul` multiplies ambient
// coordinate vectors; `amb_unit` is the unit of the subalgebra (adjoined to
// the span).
inline SpanAlgebra build_span_algebra(
    const Field& k, const std::vector<std::vector<fq>>& spanning,
    const std::function<std::vector<fq>(const std::vector<fq>&, const std::vector<fq>&)>& amb_mul,
    const std::vector<fq>& amb_unit) {
  std::size_t ambient = amb_unit.size();
  auto pack = [&](const std::vector<std::vector<fq>>& vs) {
    Mat M(k, ambient, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t i = 0; i < ambient; ++i) M.at(i, j) = vs[j][i];
    return M;
  };
  std::vector<std::vector<fq>> vecs = spanning;
  vecs.push_back(amb_unit);
  Mat W = pack(vecs).column_space();
  auto col = [&](const Mat& M, std::size_t j) {
    std::vector<fq> v(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i) v[i] = M.at(i, j);
    return v;
  };
  // Pairwise products are processed in bounded batches, with one elimination
  // per batch (a rank check during closure, a multi-column solve for the
  // coordinates) rather than one per product.  The batch width is limited so
  // that a batch hstacked onto a basis stays within the matrix column cap.
  const std::size_t batch = std::clamp<std::size_t>(
      2'000'000 / std::max<std::size_t>(1, ambient), 64, Mat::max_columns / 2);
  auto product_batch = [&](const std::vector<std::vector<fq>>& cols, std::size_t start,
                           std::size_t count) {
    std::size_t n0 = cols.size();
    Mat P(k, ambient, count);
    for (std::size_t t = 0; t < count; ++t) {
      auto prod = amb_mul(cols[(start + t) / n0], cols[(start + t) % n0]);
      for (std::size_t i = 0; i < ambient; ++i) P.at(i, t) = prod[i];
    }
    return P;
  };
  for (;;) {
    std::size_t n0 = W.cols();
    std::vector<std::vector<fq>> cols;
    cols.reserve(n0);
    for (std::size_t j = 0; j < n0; ++j) cols.push_back(col(W, j));
    Mat closed = W;
    for (std::size_t start = 0; start < n0 * n0; start += batch) {
      std::size_t c = std::min(batch, n0 * n0 - start);
      closed = closed.hstack(product_batch(cols, start, c)).column_space();
    }
    if (closed.cols() == n0) break;
    W = std::move(closed);
  }
  std::size_t n = W.cols();
  std::vector<std::vector<fq>> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cols.push_back(col(W, j));
  std::vector<std::vector<fq>> prod_coords(n * n);
  for (std::size_t start = 0; start < n * n; start += batch) {
    std::size_t c = std::min(batch, n * n - start);
    auto sol = W.solve(product_batch(cols, start, c));
    if (!sol) throw std::logic_error("build_span_algebra: closure failed");
    for (std::size_t t = 0; t < c; ++t) prod_coords[start + t] = col(sol->particular, t);
  }
  auto to_coords = [&](const std::vector<fq>& v) {
    auto sol = W.solve(Mat::column(k, v));
    if (!sol) throw std::logic_error("build_span_algebra: closure failed");
    std::vector<fq> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = sol->particular.at(i, 0);
    return c;
  };
  auto basis_mul = [&](std::size_t i, std::size_t j) { return prod_coords[i * n + j]; };
  auto alg = FDAlgebra::from_multiplication(k, n, basis_mul, to_coords(amb_unit));
  return SpanAlgebra{std::move(alg), std::move(W)};
}

// Matrix subalgebra of End(k^d) spanned by the given matrices (unit I
// adjoined), elements flattened row-major.
struct MatrixAlgebra {
  SpanAlgebra span;
  std::size_t d;

  Mat to_matrix(const std::vector<fq>& coords) const {
    auto amb = span.to_ambient(coords);
    Mat M(span.basis.field(), d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) M.at(i, j) = amb[i * d + j];
    return M;
  }

  std::vector<fq> from_matrix(const Mat& M) const {
    std::vector<fq> amb(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) amb[i * d + j] = M.at(i, j);
    return span.to_coords(amb);
  }
};

inline std::vector<fq> flatten_matrix(const Mat& M) {
  std::vector<fq> v(M.rows() * M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) v[i * M.cols() + j] = M.at(i, j);
  return v;
}

inline MatrixAlgebra build_matrix_algebra(const Field& k, std::size_t d,
                                          const std::vector<Mat>& spanning) {
  std::vector<std::vector<fq>> vecs;
  for (const auto& M : spanning) {
    if (M.rows() != d || M.cols() != d)
      throw std::invalid_argument("build_matrix_algebra: shape mismatch");
    vecs.push_back(flatten_matrix(M));
  }
  auto mul = [k, d](const std::vector<fq>& a, const std::vector<fq>& b) {
    std::vector<fq> r(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l) {
        fq ail = a[i * d + l];
        if (!ail) continue;
        for (std::size_t j = 0; j < d; ++j)
          r[i * d + j] = k->add(r[i * d + j], k->mul(ail, b[l * d + j]));
      }
    return r;
  };
  auto unit = flatten_matrix(Mat::identity(k, d));
  return MatrixAlgebra{build_span_algebra(k, vecs, mul, unit), d};
}

// -------- radical (characteristic p) --------

// Radical of a finite-dimensional algebra over F_q in characteristic p, via
// the chain of Frobenius-twisted characteristic-polynomial coefficient
// conditions on the regular representation.  Step k cuts the previous space
// by the vanishing of the coefficient c_{p^k} of char polys of products; the
// resulting semilinear system is solved by substituting the p^k-th Frobenius
// of the unknowns.  Returns a canonical column basis of the radical, verified
// to be a nilpotent two-sided ideal.
inline Mat radical_basis(const FDAlgebra& A) {
  const Field& k = A.field();
  std::uint32_t p = k->p();
  std::size_t n = A.dim();
  Mat R = Mat::identity(k, n);
  auto col = [&](const Mat& M, std::size_t j) {
    std::vector<fq> v(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i) v[i] = M.at(i, j);
    return v;
  };
  // c_{n-1} of the regular matrix of v is -trace, linear in v; precomputing
  // the basis traces makes the first (and usually decisive) step cheap.
  std::vector<fq> btr(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat& L = A.basis_left_matrix(i);
    for (std::size_t r = 0; r < n; ++r) btr[i] = k->add(btr[i], L.at(r, r));
  }
  std::uint64_t pk = 1;
  for (std::uint32_t step = 0; pk <= n; ++step, pk *= p) {
    std::size_t m = R.cols();
    if (m == 0) break;
    // Gamma[y][j] = c_{p^step} of the regular matrix of (b_j * b_y)
    Mat Gamma(k, m, m);
    for (std::size_t j = 0; j < m; ++j) {
      auto vj = col(R, j);
      for (std::size_t y = 0; y < m; ++y) {
        auto prod = A.mul(vj, col(R, y));
        if (pk == 1) {
          fq tr = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (prod[i]) tr = k->add(tr, k->mul(prod[i], btr[i]));
          Gamma.at(y, j) = k->neg(tr);
        } else {
          Poly cp = charpoly(A.left_matrix(prod));
          Gamma.at(y, j) = cp.coeff(n - static_cast<std::size_t>(pk));
        }
      }
    }
    Mat eta = Gamma.kernel();
    // invert the Frobenius twist entrywise: xi = eta^(p^(-step))
    std::uint32_t d = k->d();
    std::uint32_t back = (d - (step % d)) % d;
    Mat xi = eta;
    for (std::size_t i = 0; i < xi.rows(); ++i)
      for (std::size_t j = 0; j < xi.cols(); ++j) xi.at(i, j) = k->frobenius(xi.at(i, j), back);
    R = (R * xi).column_space();
  }
  // verification, batched within the matrix column cap: the span of R and a
  // slice of products stays R-sized exactly when the slice lies inside R
  const std::size_t slab = std::max<std::size_t>(
      1, std::min<std::size_t>(Mat::max_columns / 2, 2'000'000 / std::max<std::size_t>(1, n)));
  auto spans_within = [&](const std::vector<std::vector<fq>>& prods, const Mat& base) {
    Mat ext = base;
    for (std::size_t start = 0; start < prods.size(); start += slab) {
      std::size_t c = std::min(slab, prods.size() - start);
      Mat S(k, n, c);
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t i = 0; i < n; ++i) S.at(i, j) = prods[start + j][i];
      ext = ext.hstack(S).column_space();
    }
    return ext;
  };
  {
    // two-sided ideal: basis times radical stays in the radical
    std::vector<std::vector<fq>> prods;
    prods.reserve(2 * R.cols() * n);
    for (std::size_t j = 0; j < R.cols(); ++j) {
      auto vj = col(R, j);
      for (std::size_t i = 0; i < n; ++i) {
        auto bi = A.basis_vec(i);
        prods.push_back(A.mul(bi, vj));
        prods.push_back(A.mul(vj, bi));
      }
    }
    if (spans_within(prods, R).cols() != R.cols())
      throw std::logic_error("radical_basis: not an ideal");
  }
  Mat Pw = R;
  for (std::size_t iter = 0; Pw.cols() > 0; ++iter) {
    if (iter > n) throw std::logic_error("radical_basis: not nilpotent");
    std::vector<std::vector<fq>> prods;
    prods.reserve(Pw.cols() * R.cols());
    for (std::size_t a = 0; a < Pw.cols(); ++a)
      for (std::size_t b = 0; b < R.cols(); ++b) prods.push_back(A.mul(col(Pw, a), col(R, b)));
    Pw = spans_within(prods, Mat(k, n, 0));
  }
  return R;
}

// Quotient algebra A / J for a two-sided ideal J (column basis).
struct QuotientAlgebra {
  FDAlgebra alg;
  QuotientMap map;  // proj: A -> A/J, section: A/J -> A
};

inline QuotientAlgebra quotient_algebra(const FDAlgebra& A, const Mat& J) {
  const Field& k = A.field();
  auto qm = quotient_map(J, A.dim());
  std::size_t m = qm.proj.rows();
  auto apply = [&](const Mat& M, const std::vector<fq>& v) {
    Mat y = M * Mat::column(k, v);
    std::vector<fq> r(y.rows());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = y.at(i, 0);
    return r;
  };
  auto basis_mul = [&](std::size_t i, std::size_t j) {
    std::vector<fq> ei(m, 0), ej(m, 0);
    ei[i] = 1;
    ej[j] = 1;
    return apply(qm.proj, A.mul(apply(qm.section, ei), apply(qm.section, ej)));
  };
  auto alg = FDAlgebra::from_multiplication(k, m, basis_mul, apply(qm.proj, A.unit()));
  return QuotientAlgebra{std::move(alg), std::move(qm)};
}

// -------- idempotent machinery --------

namespace detail {

// Fixed space of the q-power map on a commutative algebra: exactly the span
// of its lifted primitive idempotents (the q-power map kills nilpotents and
// fixes idempotents; it is F_q-linear in characteristic p).
inline Mat frobenius_fixed_space(const FDAlgebra& A) {
  const Field& k = A.field();
  std::size_t n = A.dim();
  Mat F(k, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto bq = A.power(A.basis_vec(j), k->q());
    for (std::size_t i = 0; i < n; ++i) F.at(i, j) = bq[i];
  }
  return (F - Mat::identity(k, n)).kernel();
}

inline bool is_commutative(const FDAlgebra& A) {
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = i + 1; j < A.dim(); ++j)
      if (A.mul(A.basis_vec(i), A.basis_vec(j)) != A.mul(A.basis_vec(j), A.basis_vec(i)))
        return false;
  return true;
}

// Splits a commutative element via the CRT idempotents of its minimal
// polynomial's factorization.
inline std::vector<std::vector<fq>> spectral_idempotents(const FDAlgebra& A,
                                                         const std::vector<fq>& z) {
  Poly mu = A.element_minpoly(z);
  auto factors = factor(mu);
  auto pis = crt_idempotent_polys(factors);
  std::vector<std::vector<fq>> out;
  for (const auto& pi : pis) out.push_back(A.eval_poly(pi, z));
  return out;
}

// A fixed-space basis vector independent of the unit, if the fixed space has
// dimension >= 2.
inline std::optional<std::vector<fq>> nonscalar_fixed(const FDAlgebra& A, const Mat& fix) {
  if (fix.cols() < 2) return std::nullopt;
  Mat u = Mat::column(A.field(), A.unit());
  for (std::size_t j = 0; j < fix.cols(); ++j) {
    std::vector<fq> v(A.dim());
    for (std::size_t i = 0; i < A.dim(); ++i) v[i] = fix.at(i, j);
    if (!in_column_span(u, v)) return v;
  }
  throw std::logic_error("nonscalar_fixed: fixed space of dim >= 2 spanned by unit");
}

// Lift an idempotent along the radical: a = any preimage of an idempotent of
// A/J.  Its minimal polynomial divides x^s (x-1)^t; the Bezout identity
// u x^s + v (x-1)^t = 1 makes (u x^s)(a) the idempotent congruent to the
// input mod J (the unit of the eigenvalue-1 component of k[a]).
inline std::vector<fq> lift_idempotent(const FDAlgebra& A, const std::vector<fq>& a) {
  const Field& k = A.field();
  Poly mu = A.element_minpoly(a);
  Poly x = Poly::x(k);
  Poly xm1 = x - Poly::constant(k, 1);
  int s = 0, t = 0;
  Poly rest = mu;
  for (;;) {
    auto [qx, rx] = rest.divmod(x);
    if (!rx.is_zero() || rest.deg() < 1) break;
    rest = qx;
    ++s;
  }
  for (;;) {
    auto [qx, rx] = rest.divmod(xm1);
    if (!rx.is_zero() || rest.deg() < 1) break;
    rest = qx;
    ++t;
  }
  if (rest.deg() != 0)
    throw std::invalid_argument("lift_idempotent: element is not idempotent mod radical");
  if (s == 0) return A.unit();                     // a invertible: image was 1
  if (t == 0) return std::vector<fq>(A.dim(), 0);  // a nilpotent: image was 0
  Poly xs = Poly::monomial(k, static_cast<std::size_t>(s));
  Poly x1t = Poly::constant(k, 1);
  for (int i = 0; i < t; ++i) x1t = x1t * xm1;
  auto [g, u, v] = extended_gcd(xs, x1t);
  (void)v;
  if (g.deg() != 0) throw std::logic_error("lift_idempotent: Bezout failed");
  Poly eps = (u * xs).scale(k->inv(g.coeff(0)));
  auto e = A.eval_poly(eps.divmod(mu).second, a);
  if (!A.is_idempotent(e)) throw std::logic_error("lift_idempotent: lift not idempotent");
  return e;
}

struct CornerData {
  FDAlgebra alg;
  Mat basis;  // columns: corner coordinates -> parent coordinates
};

// The corner algebra e A e with unit e, presented on a canonical basis.
inline CornerData corner_algebra(const FDAlgebra& A, const std::vector<fq>& e) {
  const Field& k = A.field();
  std::size_t n = A.dim();
  Mat M(k, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto v = A.mul(A.mul(e, A.basis_vec(j)), e);
    for (std::size_t i = 0; i < n; ++i) M.at(i, j) = v[i];
  }
  Mat C = M.column_space();
  std::size_t m = C.cols();
  auto col = [&](std::size_t j) {
    std::vector<fq> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = C.at(i, j);
    return v;
  };
  auto coords = [&](const std::vector<fq>& v) {
    auto sol = C.solve(Mat::column(k, v));
    if (!sol) throw std::logic_error("corner_algebra: product escapes corner");
    std::vector<fq> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = sol->particular.at(i, 0);
    return c;
  };
  auto basis_mul = [&](std::size_t i, std::size_t j) { return coords(A.mul(col(i), col(j))); };
  auto alg = FDAlgebra::from_multiplication(k, m, basis_mul, coords(e));
  return CornerData{std::move(alg), std::move(C)};
}

}  // namespace detail

// Complete list of pairwise orthogonal primitive idempotents summing to 1,
// as coordinate vectors.  Deterministic: commutative splitting uses the
// fixed space of the q-power map; only the simple-matrix-algebra case draws
// elements, from a fixed-seed generator.
inline std::vector<std::vector<fq>> primitive_idempotents(const FDAlgebra& A) {
  const Field& k = A.field();
  std::mt19937_64 rng(idempotent_seed);
  std::vector<std::vector<fq>> out;

  std::function<void(const FDAlgebra&, const Mat&, const std::vector<fq>&)> work =
      [&](const FDAlgebra& B, const Mat& embed, const std::vector<fq>& unit_root) {
        std::size_t m = B.dim();
        auto to_root = [&](const std::vector<fq>& x) {
          Mat r = embed * Mat::column(k, x);
          std::vector<fq> v(r.rows());
          for (std::size_t i = 0; i < v.size(); ++i) v[i] = r.at(i, 0);
          return v;
        };
        if (m == 1) {
          out.push_back(unit_root);
          return;
        }
        auto split_by = [&](const std::vector<fq>& e) {
          auto f = B.sub(B.unit(), e);
          for (const auto& idem : {e, f}) {
            auto c = detail::corner_algebra(B, idem);
            work(c.alg, embed * c.basis, to_root(idem));
          }
        };
        auto center_fixed_split = [&](const FDAlgebra& c_of) -> std::optional<std::vector<fq>> {
          // first nontrivial idempotent from the fixed space of the center,
          // in c_of coordinates
          Mat Z = c_of.center_basis();
          std::vector<std::vector<fq>> zb;
          for (std::size_t j = 0; j < Z.cols(); ++j) {
            std::vector<fq> v(c_of.dim());
            for (std::size_t i = 0; i < c_of.dim(); ++i) v[i] = Z.at(i, j);
            zb.push_back(std::move(v));
          }
          auto zspan = build_span_algebra(
              k, zb,
              [&](const std::vector<fq>& a, const std::vector<fq>& b) { return c_of.mul(a, b); },
              c_of.unit());
          Mat fix = detail::frobenius_fixed_space(zspan.alg);
          if (fix.cols() < 2) return std::nullopt;
          auto znz = detail::nonscalar_fixed(zspan.alg, fix);
          auto parts = detail::spectral_idempotents(zspan.alg, *znz);
          if (parts.size() < 2) throw std::logic_error("central split: expected >= 2 parts");
          return zspan.to_ambient(parts[0]);
        };
        // 1) central splitting
        if (auto e = center_fixed_split(B)) {
          split_by(*e);
          return;
        }
        // 2) connected algebra: reduce mod radical
        Mat J = radical_basis(B);
        if (J.cols() + 1 == m) {  // local over a splitting field
          out.push_back(unit_root);
          return;
        }
        auto Q = quotient_algebra(B, J);
        const FDAlgebra& S = Q.alg;
        auto lift_and_split = [&](const std::vector<fq>& ebar) {
          Mat a = Q.map.section * Mat::column(k, ebar);
          std::vector<fq> av(m);
          for (std::size_t i = 0; i < m; ++i) av[i] = a.at(i, 0);
          auto e = detail::lift_idempotent(B, av);
          if (B.is_zero(e) || e == B.unit())
            throw std::logic_error("primitive_idempotents: degenerate lift");
          split_by(e);
        };
        // 2a) semisimple quotient may still split centrally
        if (auto ebar = center_fixed_split(S)) {
          lift_and_split(*ebar);
          return;
        }
        // 2b) simple quotient: a field means B is local
        if (detail::is_commutative(S)) {
          out.push_back(unit_root);
          return;
        }
        // 2c) simple matrix algebra: draw elements until one has a minimal
        // polynomial with at least two coprime factors
        for (int tries = 0; tries < 256; ++tries) {
          std::vector<fq> z(S.dim());
          for (auto& c : z) c = static_cast<fq>(rng() % k->q());
          Poly mu = S.element_minpoly(z);
          auto factors = factor(mu);
          if (factors.size() < 2) continue;
          auto pis = crt_idempotent_polys(factors);
          auto ebar = S.eval_poly(pis[0], z);
          if (S.is_zero(ebar) || ebar == S.unit()) continue;
          lift_and_split(ebar);
          return;
        }
        throw std::logic_error("primitive_idempotents: random search exhausted");
      };

  work(A, Mat::identity(k, A.dim()), A.unit());

  // verification: orthogonal idempotents summing to 1
  std::vector<fq> sum(A.dim(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!A.is_idempotent(out[i])) throw std::logic_error("primitive_idempotents: not idempotent");
    sum = A.add(sum, out[i]);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (i != j && !A.is_zero(A.mul(out[i], out[j])))
        throw std::logic_error("primitive_idempotents: not orthogonal");
  }
  if (sum != A.unit()) throw std::logic_error("primitive_idempotents: sum is not 1");
  return out;
}

// Local = quotient by the radical is a division algebra; over a finite field
// that means a commutative field: one-dimensional fixed space of the q-power
// map.
inline bool is_local_algebra(const FDAlgebra& A) {
  Mat J = radical_basis(A);
  auto Q = quotient_algebra(A, J);
  if (!detail::is_commutative(Q.alg)) return false;
  return detail::frobenius_fixed_space(Q.alg).cols() == 1;
}

}  // namespace blocklab

#endif
