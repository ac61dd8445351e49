#pragma once
// Modules over group algebras as exact matrix representations: constructors
// (trivial, regular, permutation, coset, Jordan block), change-of-group
// functors (restriction, induction, conjugation twist, inflation), Hom /
// tensor / dual with the conjugation action, fixed points, relative traces,
// Brauer quotients of modules, and tensor induction along an idempotent-cut
// bimodule.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocklab/algebra.hpp"
#include "blocklab/blocks.hpp"
#include "blocklab/group.hpp"
#include "blocklab/matrix.hpp"

namespace blocklab {

// A small generating set for a group: the declared generators if the group
// has them, otherwise a greedy pass over the sorted element list.
inline std::vector<gid> generating_ids(const GroupRef& G) {
  std::vector<gid> gens;
  auto S = Subgroup::trivial(G);
  for (gid g = 0; g < G->order(); ++g) {
    if (std::binary_search(S.elem_ids().begin(), S.elem_ids().end(), g)) continue;
    gens.push_back(g);
    S = Subgroup::generated(G, gens);
    if (S.order() == G->order()) break;
  }
  return gens;
}

// Generating set of a subgroup, as parent ids.
inline std::vector<gid> generating_ids(const GroupRef& G, const Subgroup& S) {
  std::vector<gid> gens;
  auto T = Subgroup::trivial(G);
  for (auto g : S.elem_ids()) {
    if (std::binary_search(T.elem_ids().begin(), T.elem_ids().end(), g)) continue;
    gens.push_back(g);
    T = Subgroup::generated(G, gens);
    if (T.order() == S.order()) break;
  }
  return gens;
}

// A finite-dimensional representation, stored as one invertible matrix per
// group element and verified multiplicative on the whole multiplication
// table.
class Rep {
 public:
  Rep(GroupRef group, Field field, std::vector<Mat> mats, std::string name = "")
      : G_(std::move(group)), k_(std::move(field)), mats_(std::move(mats)), name_(std::move(name)) {
    if (mats_.size() != G_->order()) throw std::invalid_argument("Rep: one matrix per element");
    dim_ = mats_.empty() ? 0 : mats_[0].rows();
    for (const auto& m : mats_)
      if (m.rows() != dim_ || m.cols() != dim_ || m.field() != k_)
        throw std::invalid_argument("Rep: matrices must be square of equal size over the field");
    if (mats_[G_->identity()] != Mat::identity(k_, dim_))
      throw std::invalid_argument("Rep: identity must act as the identity matrix");
    // Full-table multiplicativity when affordable; otherwise check s.x for a
    // generating set s against every element x, which forces multiplicativity
    // for the whole table by induction on word length.
    std::size_t n = G_->order();
    double cost = static_cast<double>(n) * n * dim_ * dim_ * dim_;
    if (cost <= 1e8) {
      for (gid a = 0; a < n; ++a)
        for (gid b = 0; b < n; ++b)
          if (mats_[G_->mul(a, b)] != mats_[a] * mats_[b])
            throw std::invalid_argument("Rep: matrices are not multiplicative");
    } else {
      for (auto s : generating_ids(G_))
        for (gid b = 0; b < n; ++b)
          if (mats_[G_->mul(s, b)] != mats_[s] * mats_[b])
            throw std::invalid_argument("Rep: matrices are not multiplicative");
    }
  }

  const GroupRef& group() const { return G_; }
  const Field& field() const { return k_; }
  std::size_t dim() const { return dim_; }
  const Mat& mat(gid g) const { return mats_[g]; }
  const std::string& name() const { return name_; }

  std::vector<fq> apply(gid g, const std::vector<fq>& v) const {
    Mat r = mats_[g] * Mat::column(k_, v);
    std::vector<fq> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = r.at(i, 0);
    return out;
  }

  bool same_matrices(const Rep& o) const {
    return G_->elements() == o.G_->elements() && dim_ == o.dim_ && mats_ == o.mats_;
  }

  static Rep from_function(const GroupRef& G, const Field& k,
                           const std::function<Mat(gid)>& f, std::string name = "") {
    std::vector<Mat> mats;
    mats.reserve(G->order());
    for (gid g = 0; g < G->order(); ++g) mats.push_back(f(g));
    return Rep(G, k, std::move(mats), std::move(name));
  }

  static Rep trivial(const GroupRef& G, const Field& k) {
    return from_function(G, k, [&](gid) { return Mat::identity(k, 1); }, "trivial");
  }

  // Left regular representation on the delta basis: g . e_h = e_{gh}.
  static Rep regular(const GroupRef& G, const Field& k) {
    return from_function(G, k, [&](gid g) {
      Mat m(k, G->order(), G->order());
      for (gid h = 0; h < G->order(); ++h) m.at(G->mul(g, h), h) = 1;
      return m;
    }, "regular");
  }

  // Permutation module on the natural point set of the permutation group.
  static Rep natural_permutation(const GroupRef& G, const Field& k) {
    std::size_t n = G->degree();
    return from_function(G, k, [&](gid g) {
      Mat m(k, n, n);
      const Perm& pm = G->perm(g);
      for (std::size_t x = 0; x < n; ++x) m.at(pm[x], x) = 1;
      return m;
    }, "natural");
  }

  // Permutation module k[G/H] on the left cosets of H.
  static Rep permutation_on_cosets(const GroupRef& G, const Field& k, const Subgroup& H) {
    auto cosets = left_cosets(G, H);
    std::size_t n = cosets.size();
    std::vector<int> coset_of(G->order(), -1);
    for (std::size_t c = 0; c < n; ++c)
      for (auto x : cosets[c]) coset_of[x] = static_cast<int>(c);
    return from_function(G, k, [&](gid g) {
      Mat m(k, n, n);
      for (std::size_t c = 0; c < n; ++c)
        m.at(static_cast<std::size_t>(coset_of[G->mul(g, cosets[c][0])]), c) = 1;
      return m;
    }, "k[G/" + subgroup_structure_name(G, H) + "]");
  }

  // The unipotent Jordan module J_n of a cyclic p-group: the generator acts
  // by a single Jordan block with eigenvalue 1.
  static Rep jordan_block(const GroupRef& G, const Field& k, std::size_t n) {
    std::uint32_t p = k->p();
    std::size_t m = G->order();
    std::size_t pw = 1;
    while (pw < m) pw *= p;
    if (pw != m) throw std::invalid_argument("jordan_block: group order not a power of p");
    if (n == 0 || n > m) throw std::invalid_argument("jordan_block: need 1 <= n <= |G|");
    gid gen = G->order();
    for (gid g = 0; g < G->order(); ++g)
      if (G->element_order(g) == m) {
        gen = g;
        break;
      }
    if (gen == G->order()) throw std::invalid_argument("jordan_block: group not cyclic");
    Mat J = Mat::identity(k, n);
    for (std::size_t i = 0; i + 1 < n; ++i) J.at(i, i + 1) = 1;
    // dlog of every element with respect to the generator
    std::vector<Mat> mats(G->order(), Mat::identity(k, n));
    gid cur = G->identity();
    Mat Jp = Mat::identity(k, n);
    for (std::size_t e = 0; e < m; ++e) {
      mats[cur] = Jp;
      cur = G->mul(cur, gen);
      Jp = Jp * J;
    }
    return Rep(G, k, std::move(mats), "J" + std::to_string(n));
  }

 private:
  GroupRef G_;
  Field k_;
  std::vector<Mat> mats_;
  std::size_t dim_ = 0;
  std::string name_;
};

// -------- linear-algebra helpers on representations --------

// Matrix of the action of a group-algebra element.
inline Mat action_matrix(const Rep& M, const AlgElem& a) {
  if (a.group()->elements() != M.group()->elements())
    throw std::invalid_argument("action_matrix: group mismatch");
  Mat r(M.field(), M.dim(), M.dim());
  for (gid g = 0; g < M.group()->order(); ++g)
    if (a[g]) r = r + M.mat(g).scale(a[g]);
  return r;
}

inline Mat flatten_row_major(const Mat& X) {
  Mat v(X.field(), X.rows() * X.cols(), 1);
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j) v.at(i * X.cols() + j, 0) = X.at(i, j);
  return v;
}

inline Mat unflatten_row_major(const Field& k, const Mat& v, std::size_t rows, std::size_t cols) {
  Mat X(k, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) X.at(i, j) = v.at(i * cols + j, 0);
  return X;
}

// -------- functors --------

inline Rep direct_sum(const Rep& A, const Rep& B) {
  if (A.group()->elements() != B.group()->elements() || A.field() != B.field())
    throw std::invalid_argument("direct_sum: mismatched reps");
  const auto& k = A.field();
  std::size_t da = A.dim(), db = B.dim();
  return Rep::from_function(A.group(), k, [&](gid g) {
    Mat m(k, da + db, da + db);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) m.at(i, j) = A.mat(g).at(i, j);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < db; ++j) m.at(da + i, da + j) = B.mat(g).at(i, j);
    return m;
  }, A.name() + "+" + B.name());
}

inline Rep tensor(const Rep& A, const Rep& B) {
  if (A.group()->elements() != B.group()->elements() || A.field() != B.field())
    throw std::invalid_argument("tensor: mismatched reps");
  return Rep::from_function(A.group(), A.field(),
                            [&](gid g) { return A.mat(g).kron(B.mat(g)); },
                            A.name() + "*" + B.name());
}

inline Rep dual(const Rep& A) {
  const auto& G = A.group();
  return Rep::from_function(G, A.field(),
                            [&](gid g) { return A.mat(G->inv(g)).transpose(); },
                            A.name() + "^");
}

// Hom_k(M, N) with the conjugation action g . f = N(g) f M(g)^{-1}; elements
// are n_N x n_M matrices flattened row-major, so the action matrix is
// N(g) kron dual(M)(g).
inline Rep hom_rep(const Rep& M, const Rep& N) {
  if (M.group()->elements() != N.group()->elements() || M.field() != N.field())
    throw std::invalid_argument("hom_rep: mismatched reps");
  const auto& G = M.group();
  return Rep::from_function(G, M.field(), [&](gid g) {
    return N.mat(g).kron(M.mat(G->inv(g)).transpose());
  }, "Hom(" + M.name() + "," + N.name() + ")");
}

inline Rep end_rep(const Rep& M) { return hom_rep(M, M); }

inline Rep restrict_rep(const Rep& M, const PromotedSubgroup& S, std::string name = "") {
  std::vector<Mat> mats;
  mats.reserve(S.group->order());
  for (gid i = 0; i < S.group->order(); ++i) mats.push_back(M.mat(S.to_parent[i]));
  return Rep(S.group, M.field(), std::move(mats),
             name.empty() ? "Res(" + M.name() + ")" : std::move(name));
}

// Conjugation twist of a full-group representation: (^g M)(x) = M(g^{-1} x g).
inline Rep conjugate_twist(const Rep& M, gid g) {
  const auto& G = M.group();
  return Rep::from_function(G, M.field(), [&](gid x) {
    return M.mat(G->mul(G->mul(G->inv(g), x), g));
  }, "^g" + M.name());
}

// Conjugation for a promoted-subgroup module: M over S becomes ^gM over S^g
// with (^g M)(y) = M(g^{-1} y g).
struct ConjugatedRep {
  PromotedSubgroup sub;
  Rep rep;
};

inline ConjugatedRep conjugate_sub_rep(const GroupRef& parent, const PromotedSubgroup& S,
                                       const Rep& M, gid g) {
  if (M.group()->elements() != S.group->elements())
    throw std::invalid_argument("conjugate_sub_rep: module not over the promoted subgroup");
  Subgroup Sg(parent, conjugate_ids(parent, S.to_parent, g));
  auto pg = promote(Sg);
  std::vector<Mat> mats;
  mats.reserve(pg.group->order());
  for (gid y = 0; y < pg.group->order(); ++y) {
    gid t = pg.to_parent[y];
    gid x = parent->mul(parent->mul(parent->inv(g), t), g);
    mats.push_back(M.mat(S.to_sub(parent, x)));
  }
  return ConjugatedRep{pg, Rep(pg.group, M.field(), std::move(mats), "^g" + M.name())};
}

// Induction from a subgroup: dim = |G : H| * dim M with the block-matrix
// action over the left coset representatives.
inline Rep induce(const GroupRef& G, const PromotedSubgroup& H, const Rep& M) {
  if (M.group()->elements() != H.group->elements())
    throw std::invalid_argument("induce: module not over the promoted subgroup");
  const auto& k = M.field();
  Subgroup HS(G, H.to_parent);
  auto cosets = left_cosets(G, HS);
  std::size_t t = cosets.size(), m = M.dim();
  std::vector<gid> reps(t);
  std::vector<int> coset_of(G->order(), -1);
  for (std::size_t c = 0; c < t; ++c) {
    reps[c] = cosets[c][0];
    for (auto x : cosets[c]) coset_of[x] = static_cast<int>(c);
  }
  return Rep::from_function(G, k, [&](gid g) {
    Mat big(k, t * m, t * m);
    for (std::size_t c = 0; c < t; ++c) {
      gid moved = G->mul(g, reps[c]);
      auto c2 = static_cast<std::size_t>(coset_of[moved]);
      gid h = G->mul(G->inv(reps[c2]), moved);
      const Mat& blk = M.mat(H.to_sub(G, h));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) big.at(c2 * m + i, c * m + j) = blk.at(i, j);
    }
    return big;
  }, "Ind(" + M.name() + ")");
}

// Inflation along a quotient projection: a module of H/P viewed over H.
inline Rep inflate(const QuotientGroup& Q, const Rep& M) {
  if (M.group()->elements() != Q.group->elements())
    throw std::invalid_argument("inflate: module not over the quotient group");
  std::vector<Mat> mats;
  mats.reserve(Q.source.group->order());
  for (gid i = 0; i < Q.source.group->order(); ++i) mats.push_back(M.mat(Q.projection.apply(i)));
  return Rep(Q.source.group, M.field(), std::move(mats), "Infl(" + M.name() + ")");
}

// -------- fixed points, traces, Brauer quotients --------

// Basis of the fixed space of a set of elements (typically a subgroup).
inline Mat fixed_point_basis(const Rep& M, const std::vector<gid>& ids) {
  const auto& k = M.field();
  Mat stacked(k, 0, M.dim());
  bool any = false;
  for (auto u : ids) {
    if (u == M.group()->identity()) continue;
    Mat d = M.mat(u) - Mat::identity(k, M.dim());
    stacked = any ? stacked.vstack(d) : d;
    any = true;
  }
  if (!any) return Mat::identity(k, M.dim());
  return stacked.kernel();
}

inline Mat fixed_point_basis(const Rep& M, const Subgroup& P) {
  return fixed_point_basis(M, P.elem_ids());
}

// Coset representatives of Q inside P (both subgroups of the same group).
inline std::vector<gid> coset_reps_within(const GroupRef& G, const Subgroup& P,
                                          const Subgroup& Q) {
  if (!P.contains_subgroup(Q))
    throw std::invalid_argument("coset_reps_within: Q not inside P");
  std::vector<gid> reps;
  std::vector<bool> seen(G->order(), false);
  for (auto u : P.elem_ids()) {
    if (seen[u]) continue;
    std::vector<gid> coset;
    for (auto s : Q.elem_ids()) coset.push_back(G->mul(u, s));
    std::sort(coset.begin(), coset.end());
    for (auto x : coset) seen[x] = true;
    reps.push_back(coset[0]);
  }
  return reps;
}

struct TraceData {
  Mat fixed_p;      // basis of M^P
  Mat fixed_q;      // basis of M^Q
  Mat trace;       // the matrix of Tr_Q^P on ambient coordinates
  Mat trace_image;  // basis of Tr_Q^P(M^Q), a subspace of M^P
};

// Fixed points and the relative trace Tr_Q^P(m) = sum over coset reps of r.m.
inline TraceData fixed_points_and_trace(const Rep& M, const Subgroup& P, const Subgroup& Q) {
  const auto& k = M.field();
  Mat FP = fixed_point_basis(M, P);
  Mat FQ = fixed_point_basis(M, Q);
  Mat T(k, M.dim(), M.dim());
  for (auto r : coset_reps_within(M.group(), P, Q)) T = T + M.mat(r);
  Mat img = (T * FQ).column_space();
  if (!subspace_contains(FP, img))
    throw std::logic_error("fixed_points_and_trace: trace image escapes the fixed space");
  return TraceData{std::move(FP), std::move(FQ), std::move(T), std::move(img)};
}

// All maximal subgroups of a p-group P (as parent-level id lists).  Maximal
// subgroups of p-groups are normal, so class representatives inside P cover
// all of them one each.
inline std::vector<std::vector<gid>> maximal_subgroups_of_p_group(const GroupRef& G,
                                                                  const Subgroup& P) {
  if (P.parent() != G)
    throw std::invalid_argument("maximal_subgroups_of_p_group: subgroup of a different group");
  std::size_t n = P.order();
  if (n == 1) return {};
  std::uint32_t p = 0;
  for (std::uint32_t c = 2; c <= n; ++c)
    if (n % c == 0) {
      p = c;
      break;
    }
  std::size_t pw = 1;
  while (pw < n) pw *= p;
  if (pw != n) throw std::invalid_argument("maximal_subgroups_of_p_group: not a p-group");
  auto pp = promote(P);
  auto psd = sylow_and_p_subgroups(pp.group, p);
  std::vector<std::vector<gid>> out;
  for (std::size_t i = 0; i < psd.reps.size(); ++i) {
    if (psd.reps[i].order() != n / p) continue;
    for (const auto& member : psd.classes[i]) {
      std::vector<gid> parent_ids;
      parent_ids.reserve(member.size());
      for (auto x : member) parent_ids.push_back(pp.to_parent[x]);
      std::sort(parent_ids.begin(), parent_ids.end());
      out.push_back(std::move(parent_ids));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct BrauerQuotientModule {
  Mat fixed;           // basis of M^P in ambient coordinates
  Mat traced;          // basis of the summed proper trace images
  std::size_t dim = 0;  // dim M^P - dim traced
  QuotientGroup weyl;  // N/P for the chosen normalizer subgroup N
  Rep action;          // representation of weyl.group on the quotient
  Mat proj;            // fixed-coordinates -> quotient coordinates
  Mat section;         // quotient coordinates -> fixed-coordinates
};

// Brauer quotient Br_P(M) = M^P / sum of Tr_Q^P(M^Q) over maximal Q < P,
// with the induced action of N/P.  N defaults to the full normalizer of P;
// passing a smaller N (normalizing P) yields the action over N/P instead.
inline BrauerQuotientModule brauer_quotient_module(const Rep& M, const Subgroup& P,
                                                   std::optional<Subgroup> normalizer_part = {}) {
  const auto& G = M.group();
  const auto& k = M.field();
  Mat FP = fixed_point_basis(M, P);
  Mat traced(k, M.dim(), 0);
  for (const auto& ids : maximal_subgroups_of_p_group(G, P)) {
    Subgroup Q(G, ids);
    auto td = fixed_points_and_trace(M, P, Q);
    traced = traced.hstack(td.trace_image);
  }
  traced = traced.column_space();
  // traced subspace in M^P coordinates
  auto sol = FP.solve(traced);
  if (!sol) throw std::logic_error("brauer_quotient_module: traces escape the fixed space");
  auto qm = quotient_map(sol->particular.column_space(), FP.cols());
  Subgroup N = normalizer_part ? *normalizer_part : blocklab::normalizer(G, P);
  if (!P.is_normal_in(N))
    throw std::invalid_argument("brauer_quotient_module: P not normal in the given N");
  auto qg = quotient_group(N, P);
  std::size_t d = FP.cols() - sol->particular.column_space().cols();
  // one representative n per quotient element, acting on fixed coordinates
  std::vector<Mat> mats;
  mats.reserve(qg.group->order());
  for (gid w = 0; w < qg.group->order(); ++w) {
    gid n = G->order();
    for (gid i = 0; i < qg.source.group->order(); ++i)
      if (qg.projection.apply(i) == w) {
        n = std::min(n, qg.source.to_parent[i]);
      }
    auto act = FP.solve(M.mat(n) * FP);
    if (!act) throw std::logic_error("brauer_quotient_module: normalizer does not fix M^P");
    mats.push_back(qm.proj * act->particular * qm.section);
  }
  Rep action(qg.group, k, std::move(mats), "Br(" + M.name() + ")");
  return BrauerQuotientModule{std::move(FP), std::move(traced), d,
                              std::move(qg), std::move(action),
                              qm.proj, qm.section};
}

// -------- module maps --------

struct ModMap {
  Rep src;
  Rep dst;
  Mat T;  // dst.dim x src.dim, with T src(g) = dst(g) T for all listed g

  ModMap(Rep source, Rep target, Mat matrix)
      : src(std::move(source)), dst(std::move(target)), T(std::move(matrix)) {
    if (src.group()->elements() != dst.group()->elements())
      throw std::invalid_argument("ModMap: different acting groups");
    if (T.rows() != dst.dim() || T.cols() != src.dim())
      throw std::invalid_argument("ModMap: shape mismatch");
    for (gid g = 0; g < src.group()->order(); ++g)
      if (T * src.mat(g) != dst.mat(g) * T)
        throw std::invalid_argument("ModMap: does not intertwine the actions");
  }
};

// The map induced on Brauer quotients by a module map u: fixed points land in
// fixed points and trace images in trace images, so u descends to a map from
// the quotient of u.src (built as bm) to the quotient of u.dst (built as bn).
// Both descent conditions are verified; the result is written from quotient
// coordinates of bm to quotient coordinates of bn.
inline Mat brauer_quotient_map(const BrauerQuotientModule& bm, const BrauerQuotientModule& bn,
                               const ModMap& u) {
  if (bm.fixed.rows() != u.src.dim() || bn.fixed.rows() != u.dst.dim())
    throw std::invalid_argument("brauer_quotient_map: quotients do not match the map's modules");
  auto on_fixed = bn.fixed.solve(u.T * bm.fixed);
  if (!on_fixed)
    throw std::invalid_argument("brauer_quotient_map: map does not preserve fixed points");
  if (bm.traced.cols() > 0) {
    auto on_traced = bn.traced.solve(u.T * bm.traced);
    if (!on_traced)
      throw std::invalid_argument("brauer_quotient_map: map does not preserve trace images");
  }
  return bn.proj * on_fixed->particular * bm.section;
}

// Basis of Hom_{kG}(M, N) as flattened row-major columns; constraints are
// imposed for a generating set only, which suffices for the full group.
inline Mat hom_space(const Rep& M, const Rep& N) {
  if (M.group()->elements() != N.group()->elements() || M.field() != N.field())
    throw std::invalid_argument("hom_space: mismatched reps");
  const auto& k = M.field();
  const auto& G = M.group();
  std::size_t hd = M.dim() * N.dim();
  if (hd == 0) return Mat(k, 0, 0);
  Mat stacked(k, 0, hd);
  bool any = false;
  for (auto s : generating_ids(G)) {
    // N(s) X = X M(s)  <=>  (N(s) kron I - I kron M(s)^T) vec(X) = 0
    Mat c = N.mat(s).kron(Mat::identity(k, M.dim())) -
            Mat::identity(k, N.dim()).kron(M.mat(s).transpose());
    stacked = any ? stacked.vstack(c) : c;
    any = true;
  }
  if (!any) return Mat::identity(k, hd);
  return stacked.kernel();
}

// Hom over a subgroup of the acting group.
inline Mat hom_space_over(const Rep& M, const Rep& N, const Subgroup& S) {
  const auto& k = M.field();
  std::size_t hd = M.dim() * N.dim();
  Mat stacked(k, 0, hd);
  bool any = false;
  for (auto s : generating_ids(M.group(), S)) {
    Mat c = N.mat(s).kron(Mat::identity(k, M.dim())) -
            Mat::identity(k, N.dim()).kron(M.mat(s).transpose());
    stacked = any ? stacked.vstack(c) : c;
    any = true;
  }
  if (!any) return Mat::identity(k, hd);
  return stacked.kernel();
}

// -------- subspaces as modules --------

// The action of the group on an invariant column space, in basis coordinates.
inline Rep subrep(const Rep& M, const Mat& basis, std::string name = "") {
  const auto& k = M.field();
  std::vector<Mat> mats;
  mats.reserve(M.group()->order());
  for (gid g = 0; g < M.group()->order(); ++g) {
    auto sol = basis.solve(M.mat(g) * basis);
    if (!sol) throw std::invalid_argument("subrep: subspace not invariant");
    mats.push_back(sol->particular);
  }
  return Rep(M.group(), k, std::move(mats),
             name.empty() ? M.name() + "|sub" : std::move(name));
}

// Truncation by an idempotent of the group algebra: the module a.M with the
// action of a subgroup that fixes a under conjugation.
inline Rep idempotent_truncation(const Rep& M, const AlgElem& a, const PromotedSubgroup& H,
                                 Mat* basis_out = nullptr) {
  for (auto h : H.to_parent)
    if (!(a.conj_by(h) == a))
      throw std::invalid_argument("idempotent_truncation: idempotent not fixed by the subgroup");
  Mat act = action_matrix(M, a);
  if (act * act != act) throw std::invalid_argument("idempotent_truncation: not an idempotent action");
  Mat W = act.column_space();
  if (basis_out) *basis_out = W;
  const auto& k = M.field();
  std::vector<Mat> mats;
  mats.reserve(H.group->order());
  for (gid i = 0; i < H.group->order(); ++i) {
    auto sol = W.solve(M.mat(H.to_parent[i]) * W);
    if (!sol) throw std::logic_error("idempotent_truncation: image not invariant");
    mats.push_back(sol->particular);
  }
  return Rep(H.group, k, std::move(mats), "e." + M.name());
}

// -------- tensor induction along a bimodule cut from the group algebra --------

// Given a subspace W of kG that is stable under left multiplication by G and
// right multiplication by a p-subgroup P, and a module V over (promoted) P,
// build the kG-module W tensor_{kP} V.  With W = kG.i for an idempotent i
// fixed by P this realizes kGi tensor_{kP} V.
inline Rep bimodule_tensor(const GroupRef& G, const Field& k, const Mat& W, const Subgroup& P,
                           const PromotedSubgroup& PP, const Rep& V) {
  if (V.group()->elements() != PP.group->elements())
    throw std::invalid_argument("bimodule_tensor: V not over the promoted subgroup");
  std::size_t w = W.cols(), v = V.dim();
  // right P-action of W in basis coordinates
  auto right_mat = [&](gid u) {
    Mat ru(k, G->order(), G->order());
    for (gid x = 0; x < G->order(); ++x) ru.at(G->mul(x, u), x) = 1;
    auto sol = W.solve(ru * W);
    if (!sol) throw std::invalid_argument("bimodule_tensor: W not right P-stable");
    return sol->particular;
  };
  // left G-action in basis coordinates
  auto left_mat = [&](gid g) {
    Mat lg(k, G->order(), G->order());
    for (gid x = 0; x < G->order(); ++x) lg.at(G->mul(g, x), x) = 1;
    auto sol = W.solve(lg * W);
    if (!sol) throw std::invalid_argument("bimodule_tensor: W not left G-stable");
    return sol->particular;
  };
  // relation subspace: images of rho_R(u) kron I - I kron V(u) for generators
  Mat rel(k, w * v, 0);
  for (auto u : generating_ids(G, P)) {
    Mat span = right_mat(u).kron(Mat::identity(k, v)) -
               Mat::identity(k, w).kron(V.mat(PP.to_sub(G, u)));
    rel = rel.hstack(span);
  }
  auto qm = quotient_map(rel.column_space(), w * v);
  std::vector<Mat> mats;
  mats.reserve(G->order());
  for (gid g = 0; g < G->order(); ++g)
    mats.push_back(qm.proj * left_mat(g).kron(Mat::identity(k, v)) * qm.section);
  return Rep(G, k, std::move(mats), "W@V");
}

// The subspace a.kG.b of the group algebra, as columns over the delta basis.
inline Mat algebra_cut(const GroupRef& G, const Field& k, const AlgElem& left,
                       const AlgElem& right) {
  Mat L = left_convolution_matrix(G, k, left);
  Mat R(k, G->order(), G->order());
  // right convolution by `right`: x -> x * right
  for (gid h = 0; h < G->order(); ++h) {
    if (!right[h]) continue;
    for (gid x = 0; x < G->order(); ++x)
      R.at(G->mul(x, h), x) = k->add(R.at(G->mul(x, h), x), right[h]);
  }
  return (L * R).column_space();
}

}  // namespace blocklab
