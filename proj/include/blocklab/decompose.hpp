#pragma once
// Krull-Schmidt machinery for modules: endomorphism algebras, decomposition
// into indecomposable summands with certified embedding/projection pairs,
// isomorphism testing by summand matching, Higman relative projectivity with
// explicit trace witnesses, vertices, sources, Green correspondents, and the
// combined vertex-subpair report tying a module to a block of the centralizer
// of its vertex.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocklab/algebra.hpp"
#include "blocklab/blocks.hpp"
#include "blocklab/group.hpp"
#include "blocklab/matrix.hpp"
#include "blocklab/module.hpp"

namespace blocklab {

inline constexpr std::uint64_t iso_witness_seed = 0x15011235ULL;
inline constexpr std::size_t default_dim_cap = 256;

// Endomorphism algebra of a module as a concrete matrix algebra.
inline MatrixAlgebra end_algebra(const Rep& M) {
  const Field& k = M.field();
  Mat H = hom_space(M, M);
  std::vector<Mat> mats;
  mats.reserve(H.cols());
  for (std::size_t j = 0; j < H.cols(); ++j)
    mats.push_back(unflatten_row_major(k, Mat::column(k, H.col(j)), M.dim(), M.dim()));
  return build_matrix_algebra(k, M.dim(), mats);
}

// Invertible equivariant map between two modules that are expected to be
// indecomposable.  Positive answers are always certified (the matrix is
// invertible and intertwines); a miss after the deterministic seeded search
// is conclusive only under the indecomposability assumption, where a uniform
// random element of a nonzero Hom between isomorphic modules is invertible
// with probability at least 1 - 1/q.
inline std::optional<Mat> indecomposable_isomorphism(const Rep& A, const Rep& B) {
  if (A.group()->elements() != B.group()->elements() || A.field() != B.field())
    throw std::invalid_argument("indecomposable_isomorphism: mismatched reps");
  if (A.dim() != B.dim()) return std::nullopt;
  const Field& k = A.field();
  if (A.dim() == 0) return Mat(k, 0, 0);
  Mat H = hom_space(A, B);
  if (H.cols() == 0) return std::nullopt;
  auto candidate = [&](const Mat& coeffs) -> std::optional<Mat> {
    Mat X = unflatten_row_major(k, H * coeffs, B.dim(), A.dim());
    if (X.invertible()) return X;
    return std::nullopt;
  };
  for (std::size_t j = 0; j < H.cols(); ++j) {
    Mat c(k, H.cols(), 1);
    c.at(j, 0) = 1;
    if (auto X = candidate(c)) return X;
  }
  std::mt19937_64 rng(iso_witness_seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, k->q() - 1);
  for (int round = 0; round < 128; ++round) {
    Mat c(k, H.cols(), 1);
    for (std::size_t j = 0; j < H.cols(); ++j) c.at(j, 0) = static_cast<fq>(dist(rng));
    if (auto X = candidate(c)) return X;
  }
  return std::nullopt;
}

// One direct summand: an embedding of the summand into the ambient module and
// a projection splitting it, both verified intertwiners.
struct Summand {
  ModMap embed;    // summand -> ambient module
  ModMap project;  // ambient module -> summand; project.T * embed.T = identity
  std::size_t iso_class = 0;

  const Rep& rep() const { return embed.src; }
};

struct Decomposition {
  std::vector<Summand> summands;            // sorted by dimension, then discovery order
  std::vector<Rep> types;                   // one representative per isomorphism class
  std::vector<std::size_t> multiplicities;  // parallel to types

  std::vector<std::size_t> type_dims() const {
    std::vector<std::size_t> d;
    d.reserve(types.size());
    for (const auto& t : types) d.push_back(t.dim());
    return d;
  }
};

namespace detail {

// Ambient idempotent matrices cutting M into its indecomposable summands.
// Over a p-group in characteristic p the free summands are split off first:
// the norm element (sum of all group elements) acts nonzero exactly on them,
// any vector it does not kill generates a free rank-one summand, and the
// self-injectivity of the group algebra provides a retraction.  This keeps
// the abstract endomorphism algebra, whose construction grows steeply with
// the number of free summands, to the non-free remainder.
inline std::vector<Mat> summand_idempotent_matrices(const Rep& M) {
  const Field& k = M.field();
  const auto& G = M.group();
  std::vector<Mat> out;
  Rep cur = M;
  Mat emb_acc = Mat::identity(k, M.dim());
  Mat proj_acc = Mat::identity(k, M.dim());
  std::uint32_t p = k->p();
  std::uint64_t pw = 1;
  while (pw < G->order()) pw *= p;
  if (pw == G->order()) {
    while (cur.dim() > 0) {
      Mat nu(k, cur.dim(), cur.dim());
      for (gid g = 0; g < G->order(); ++g) nu = nu + cur.mat(g);
      std::size_t pick = cur.dim();
      for (std::size_t j = 0; j < cur.dim() && pick == cur.dim(); ++j)
        for (std::size_t i = 0; i < cur.dim(); ++i)
          if (nu.at(i, j) != 0) {
            pick = j;
            break;
          }
      if (pick == cur.dim()) break;  // the norm kills everything: no free part left
      Mat B(k, cur.dim(), G->order());  // orbit of the picked vector, a free basis
      for (gid g = 0; g < G->order(); ++g)
        for (std::size_t i = 0; i < cur.dim(); ++i) B.at(i, g) = cur.mat(g).at(i, pick);
      Rep reg = Rep::regular(G, k);
      Mat H = hom_space(cur, reg);
      std::size_t ord = G->order();
      Mat sys(k, ord * ord, H.cols());
      for (std::size_t c = 0; c < H.cols(); ++c) {
        Mat pb = unflatten_row_major(k, Mat::column(k, H.col(c)), ord, cur.dim()) * B;
        for (std::size_t i = 0; i < ord; ++i)
          for (std::size_t j = 0; j < ord; ++j) sys.at(i * ord + j, c) = pb.at(i, j);
      }
      Mat rhs(k, ord * ord, 1);
      for (std::size_t i = 0; i < ord; ++i) rhs.at(i * ord + i, 0) = 1;
      auto sol = sys.solve(rhs);
      if (!sol) throw std::logic_error("decompose_module: free summand retraction failed");
      Mat psi(k, ord, cur.dim());
      for (std::size_t c = 0; c < H.cols(); ++c) {
        fq w = sol->particular.at(c, 0);
        if (!w) continue;
        psi = psi + unflatten_row_major(k, Mat::column(k, H.col(c)), ord, cur.dim()).scale(w);
      }
      Mat phi = B * psi;  // equivariant idempotent onto the free summand
      out.push_back(emb_acc * phi * proj_acc);
      Mat comp = (Mat::identity(k, cur.dim()) - phi).column_space();
      auto ps = comp.solve(Mat::identity(k, cur.dim()) - phi);
      if (!ps) throw std::logic_error("decompose_module: complement projection failed");
      emb_acc = emb_acc * comp;
      proj_acc = ps->particular * proj_acc;
      cur = subrep(cur, comp, cur.name() + "'");
    }
  }
  if (cur.dim() > 0) {
    MatrixAlgebra E = end_algebra(cur);
    for (const auto& coords : primitive_idempotents(E.span.alg))
      out.push_back(emb_acc * E.to_matrix(coords) * proj_acc);
  }
  return out;
}

}  // namespace detail

// Full direct-sum decomposition into indecomposables, from orthogonal
// idempotents of the endomorphism algebra.  Deterministic: the idempotent
// search is seeded and the summands are ordered by dimension.
inline Decomposition decompose_module(const Rep& M, std::size_t dim_cap = default_dim_cap) {
  if (M.dim() > dim_cap) throw std::invalid_argument("decompose_module: dimension cap exceeded");
  Decomposition out;
  if (M.dim() == 0) return out;
  const Field& k = M.field();
  auto idems = detail::summand_idempotent_matrices(M);
  struct Piece {
    Mat emb, proj;
    Rep rep;
  };
  std::vector<Piece> pieces;
  Mat total(k, M.dim(), M.dim());
  for (const Mat& e : idems) {
    total = total + e;
    Mat emb = e.column_space();
    auto sol = emb.solve(e);  // e = emb * proj with proj * emb = identity
    if (!sol) throw std::logic_error("decompose_module: idempotent image mismatch");
    Mat proj = sol->particular;
    Rep sub = subrep(M, emb, M.name() + "#" + std::to_string(pieces.size()));
    pieces.push_back(Piece{std::move(emb), std::move(proj), std::move(sub)});
  }
  if (total != Mat::identity(k, M.dim()))
    throw std::logic_error("decompose_module: idempotents do not sum to the identity");
  std::size_t dim_sum = 0;
  for (const auto& p : pieces) dim_sum += p.rep.dim();
  if (dim_sum != M.dim())
    throw std::logic_error("decompose_module: summand dimensions do not add up");
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) { return a.rep.dim() < b.rep.dim(); });
  for (auto& p : pieces) {
    if (!is_local_algebra(end_algebra(p.rep).span.alg))
      throw std::logic_error("decompose_module: summand endomorphism algebra is not local");
    std::size_t cls = out.types.size();
    for (std::size_t t = 0; t < out.types.size(); ++t)
      if (indecomposable_isomorphism(out.types[t], p.rep)) {
        cls = t;
        break;
      }
    if (cls == out.types.size()) {
      out.types.push_back(p.rep);
      out.multiplicities.push_back(0);
    }
    ++out.multiplicities[cls];
    if (p.proj * p.emb != Mat::identity(k, p.rep.dim()))
      throw std::logic_error("decompose_module: projection does not split the embedding");
    Summand s{ModMap(p.rep, M, p.emb), ModMap(M, p.rep, p.proj), cls};
    out.summands.push_back(std::move(s));
  }
  return out;
}

// Decomposition over a subgroup of the acting group (the module is restricted
// first; summands are modules of the promoted subgroup).
inline Decomposition decompose_module(const Rep& M, const Subgroup& acting,
                                      std::size_t dim_cap = default_dim_cap) {
  return decompose_module(restrict_rep(M, promote(acting)), dim_cap);
}

// Isomorphism test with a certified witness.  A positive answer carries an
// invertible intertwiner; a negative answer is certified by decomposing both
// sides and failing to match the indecomposable summands pairwise.
inline std::optional<ModMap> isomorphism_test(const Rep& A, const Rep& B,
                                              std::size_t dim_cap = default_dim_cap) {
  if (A.group()->elements() != B.group()->elements() || A.field() != B.field())
    throw std::invalid_argument("isomorphism_test: mismatched reps");
  if (A.dim() != B.dim()) return std::nullopt;
  const Field& k = A.field();
  if (A.dim() == 0) return ModMap(A, B, Mat(k, 0, 0));
  auto da = decompose_module(A, dim_cap);
  auto db = decompose_module(B, dim_cap);
  if (da.summands.size() != db.summands.size()) return std::nullopt;
  std::vector<bool> used(db.summands.size(), false);
  Mat T(k, B.dim(), A.dim());
  for (const auto& sa : da.summands) {
    bool matched = false;
    for (std::size_t j = 0; j < db.summands.size(); ++j) {
      if (used[j]) continue;
      if (auto W = indecomposable_isomorphism(sa.rep(), db.summands[j].rep())) {
        T = T + db.summands[j].embed.T * *W * sa.project.T;
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (!T.invertible())
    throw std::logic_error("isomorphism_test: matched summands but the assembled map is singular");
  return ModMap(A, B, T);
}

inline std::optional<ModMap> isomorphism_test(const Rep& A, const Rep& B, const Subgroup& acting,
                                              std::size_t dim_cap = default_dim_cap) {
  auto pa = promote(acting);
  return isomorphism_test(restrict_rep(A, pa), restrict_rep(B, pa), dim_cap);
}

// -------- relative projectivity --------

struct HigmanCertificate {
  bool projective = false;
  Mat witness;  // an endomorphism over the subgroup whose relative trace is the identity
};

// Higman's criterion: M is relatively Q-projective iff some u commuting with
// the Q-action has Tr_Q^G(u) = sum over coset representatives r of
// M(r) u M(r)^{-1} equal to the identity.  Solved as a linear system over a
// basis of the Q-endomorphisms; the witness is re-verified.
inline HigmanCertificate relative_projectivity(const Rep& M, const Subgroup& Q) {
  const auto& G = M.group();
  const Field& k = M.field();
  if (Q.parent() != G) throw std::invalid_argument("relative_projectivity: subgroup of a different group");
  std::size_t d = M.dim();
  if (d == 0) return {true, Mat(k, 0, 0)};
  Mat EQ = hom_space_over(M, M, Q);
  auto reps = left_coset_reps(G, Q);
  auto rel_trace = [&](const Mat& phi) {
    Mat tr(k, d, d);
    for (auto r : reps) tr = tr + M.mat(r) * phi * M.mat(G->inv(r));
    return tr;
  };
  Mat sys(k, d * d, EQ.cols());
  for (std::size_t j = 0; j < EQ.cols(); ++j) {
    Mat phi = unflatten_row_major(k, Mat::column(k, EQ.col(j)), d, d);
    Mat f = flatten_row_major(rel_trace(phi));
    for (std::size_t i = 0; i < d * d; ++i) sys.at(i, j) = f.at(i, 0);
  }
  auto sol = sys.solve(flatten_row_major(Mat::identity(k, d)));
  if (!sol) return {false, Mat(k, 0, 0)};
  Mat u = unflatten_row_major(k, EQ * sol->particular, d, d);
  if (rel_trace(u) != Mat::identity(k, d))
    throw std::logic_error("relative_projectivity: witness fails the trace identity");
  for (auto s : generating_ids(G, Q))
    if (M.mat(s) * u != u * M.mat(s))
      throw std::logic_error("relative_projectivity: witness does not commute with the subgroup");
  return {true, std::move(u)};
}

// -------- vertices --------

struct VertexData {
  Subgroup vertex;           // canonical class representative of the vertex
  HigmanCertificate witness;  // Higman witness at the vertex
};

namespace detail {

// Whether some conjugate of the class of `inner` (given by its member list)
// lies inside `outer`.
inline bool class_member_inside(const GroupRef& G, const std::vector<std::vector<gid>>& members,
                                const Subgroup& outer) {
  for (const auto& m : members)
    if (outer.contains_subgroup(Subgroup(G, m))) return true;
  return false;
}

}  // namespace detail

// Vertex of an indecomposable module: the minimal subgroups (up to conjugacy)
// at which the module is relatively projective.  Scans class representatives
// by decreasing order, pruning subgroups of known failures; verifies that the
// minimum is attained by a single class and that every success contains a
// conjugate of it.
inline VertexData vertex_of(const Rep& M, const PSubgroupData& psubs,
                            bool verify_indecomposable = true) {
  const auto& G = M.group();
  if (M.dim() == 0) throw std::invalid_argument("vertex_of: zero module");
  if (verify_indecomposable && !is_local_algebra(end_algebra(M).span.alg))
    throw std::invalid_argument("vertex_of: module is decomposable");
  std::vector<std::size_t> order(psubs.reps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return psubs.reps[a].order() > psubs.reps[b].order();
  });
  std::vector<std::size_t> successes;
  std::vector<std::size_t> failures;
  std::vector<std::optional<HigmanCertificate>> certs(psubs.reps.size());
  for (auto i : order) {
    bool pruned = false;
    for (auto f : failures)
      if (detail::class_member_inside(G, psubs.classes[i], psubs.reps[f])) {
        pruned = true;  // projectivity is monotone: contained in a failure
        break;
      }
    if (pruned) {
      failures.push_back(i);
      continue;
    }
    auto cert = relative_projectivity(M, psubs.reps[i]);
    if (cert.projective) {
      certs[i] = std::move(cert);
      successes.push_back(i);
    } else {
      failures.push_back(i);
    }
  }
  if (successes.empty()) throw std::logic_error("vertex_of: not even the Sylow subgroup works");
  std::size_t min_order = G->order() + 1;
  for (auto i : successes) min_order = std::min(min_order, psubs.reps[i].order());
  std::vector<std::size_t> minimal;
  for (auto i : successes)
    if (psubs.reps[i].order() == min_order) minimal.push_back(i);
  if (minimal.size() != 1)
    throw std::logic_error("vertex_of: minimal relatively projective class is not unique");
  std::size_t v = minimal[0];
  for (auto i : successes)
    if (!detail::class_member_inside(G, psubs.classes[v], psubs.reps[i]))
      throw std::logic_error("vertex_of: a success does not contain a conjugate of the vertex");
  return VertexData{psubs.reps[v], std::move(*certs[v])};
}

inline VertexData vertex_of(const Rep& M, std::uint32_t p, bool verify_indecomposable = true) {
  return vertex_of(M, sylow_and_p_subgroups(M.group(), p), verify_indecomposable);
}

// -------- sources --------

struct ModuleSource {
  PromotedSubgroup vertex;  // the promoted vertex the source lives over
  Rep source;               // indecomposable summand S of the restriction
  ModMap embed;             // ambient module -> Ind(S)
  ModMap project;           // Ind(S) -> ambient module, project.T * embed.T = identity
};

// A source of an indecomposable module at its vertex: an indecomposable
// summand S of the restriction to the vertex with M a summand of Ind S,
// certified by a split embedding.
inline ModuleSource source_module(const Rep& M, const Subgroup& V,
                                std::size_t dim_cap = default_dim_cap) {
  auto pv = promote(V);
  auto resd = decompose_module(restrict_rep(M, pv), dim_cap);
  for (const auto& type : resd.types) {
    auto ind = induce(M.group(), pv, type);
    auto dd = decompose_module(ind, dim_cap);
    for (const auto& s : dd.summands) {
      if (auto W = indecomposable_isomorphism(M, s.rep())) {
        Mat E = s.embed.T * *W;
        Mat P = *W->inverse() * s.project.T;
        return ModuleSource{pv, type, ModMap(M, ind, std::move(E)), ModMap(ind, M, std::move(P))};
      }
    }
  }
  throw std::logic_error("source_module: no summand of the restriction induces the module back");
}

// -------- Green correspondence --------

struct GreenData {
  PromotedSubgroup local;  // the promoted subgroup containing the vertex normalizer
  Rep correspondent;       // unique summand of the restriction with the given vertex
  ModMap res_embed;        // correspondent -> restriction of the ambient module
  ModMap res_project;      // restriction -> correspondent
  ModMap ind_embed;        // ambient module -> Ind(correspondent)
  ModMap ind_project;      // Ind(correspondent) -> ambient module
};

// Green correspondent of an indecomposable module with vertex V over a
// subgroup L containing the normalizer of V: the unique indecomposable
// summand of the restriction to L whose vertex is (conjugate in L to) V,
// certified together with the back direction M | Ind_L(correspondent).
inline GreenData green_correspondent(const Rep& M, const Subgroup& V, const Subgroup& L,
                                     std::uint32_t p, std::size_t dim_cap = default_dim_cap) {
  const auto& G = M.group();
  if (!L.contains_subgroup(normalizer(G, V)))
    throw std::invalid_argument("green_correspondent: subgroup misses the vertex normalizer");
  auto pl = promote(L);
  std::vector<gid> v_in_l;
  v_in_l.reserve(V.order());
  for (auto x : V.elem_ids()) v_in_l.push_back(pl.to_sub(G, x));
  std::sort(v_in_l.begin(), v_in_l.end());
  auto target = canonical_conjugate_ids(pl.group, v_in_l);
  auto psubs = sylow_and_p_subgroups(pl.group, p);
  auto dec = decompose_module(restrict_rep(M, pl), dim_cap);
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < dec.summands.size(); ++i) {
    auto vd = vertex_of(dec.summands[i].rep(), psubs, false);
    if (canonical_conjugate_ids(pl.group, vd.vertex.elem_ids()) == target) {
      if (hit) throw std::logic_error("green_correspondent: vertex summand is not unique");
      hit = i;
    }
  }
  if (!hit) throw std::logic_error("green_correspondent: no summand with the given vertex");
  const auto& f = dec.summands[*hit];
  auto ind = induce(G, pl, f.rep());
  auto dd = decompose_module(ind, dim_cap);
  for (const auto& s : dd.summands) {
    if (auto W = indecomposable_isomorphism(M, s.rep())) {
      Mat E = s.embed.T * *W;
      Mat P = *W->inverse() * s.project.T;
      return GreenData{pl,
                       f.rep(),
                       f.embed,
                       f.project,
                       ModMap(M, ind, std::move(E)),
                       ModMap(ind, M, std::move(P))};
    }
  }
  throw std::logic_error("green_correspondent: module does not divide the induction back");
}

// -------- vertex subpairs --------

// The combined report for an indecomposable module M in a block e: vertex P,
// the block e_P of the centralizer of P certified by a vertex-P summand of
// e_P.M over P (the source V), the correspondent L over the stabilizer
// N_G(P, e_P), the correspondent M' over the full normalizer N_G(P), and the
// four dividing/matching conditions tying them together.
struct VertexSubpairData {
  Subgroup vertex;               // P
  PromotedSubgroup centralizer;  // C_G(P), promoted
  AlgElem local_block;           // e_P as an element of the ambient group algebra
  Rep source;                    // V: vertex-P summand of e_P.M over P
  Subgroup stabilizer;           // N_G(P, e_P)
  Rep correspondent;             // L over promoted N_G(P, e_P)
  Rep normalizer_module;         // M' over promoted N_G(P)
  AlgElem traced_block;          // e'_P = trace of e_P from the stabilizer to N_G(P)

  bool cut_tensor_divides = false;       // M divides e.kG.e_P tensored over kP with V
  bool local_summand_has_vertex = false;  // e_P.M over P has a summand with vertex P
  bool correspondent_divides = false;     // L | e_P.M over the stabilizer and M | Ind L
  bool traced_block_acts_as_identity = false;  // e'_P fixes M' pointwise
  bool induced_relation = false;          // M' isomorphic to Ind L
  bool truncated_relation = false;        // L isomorphic to e_P.M'

  bool all_conditions() const {
    return cut_tensor_divides && local_summand_has_vertex && correspondent_divides &&
           traced_block_acts_as_identity && induced_relation && truncated_relation;
  }
};

inline VertexSubpairData vertex_source_green(const Rep& M, const BlockIdem& e,
                                             std::size_t dim_cap = default_dim_cap) {
  const auto& G = M.group();
  const Field& k = M.field();
  std::uint32_t p = k->p();
  if (M.dim() == 0) throw std::invalid_argument("vertex_source_green: zero module");
  if (action_matrix(M, e.elem) != Mat::identity(k, M.dim()))
    throw std::invalid_argument("vertex_source_green: block does not act as the identity");
  if (!is_local_algebra(end_algebra(M).span.alg))
    throw std::invalid_argument("vertex_source_green: module is decomposable");

  auto psubs = sylow_and_p_subgroups(G, p);
  auto vd = vertex_of(M, psubs, false);
  Subgroup P = vd.vertex;
  auto pp = promote(P);
  auto pc = promote(centralizer(G, P));
  auto cblocks = compute_blocks(pc.group, k);
  auto p_psubs = sylow_and_p_subgroups(pp.group, p);

  // the block of the centralizer certified by a vertex-P summand of its cut
  std::optional<AlgElem> chosen;
  std::optional<Rep> source;
  for (const auto& b : cblocks) {
    AlgElem f = inject_to_parent(b.elem, pc, G);
    if (action_matrix(M, f) == Mat(k, M.dim(), M.dim())) continue;
    auto cut = idempotent_truncation(M, f, pp);
    if (cut.dim() == 0) continue;
    auto dc = decompose_module(cut, dim_cap);
    for (const auto& s : dc.summands) {
      auto vv = vertex_of(s.rep(), p_psubs, false);
      if (vv.vertex.order() == P.order()) {  // full order inside P means the vertex is P itself
        chosen = f;
        source = s.rep();
        break;
      }
    }
    if (chosen) break;
  }
  if (!chosen)
    throw std::logic_error("vertex_source_green: no centralizer block certifies the vertex");
  const AlgElem& f = *chosen;

  // stabilizer of the local block inside the vertex normalizer
  auto NP = normalizer(G, P);
  std::vector<gid> stab_ids;
  for (auto n : NP.elem_ids())
    if (f.conj_by(n) == f) stab_ids.push_back(n);
  Subgroup NS(G, stab_ids);
  auto pns = promote(NS);

  // correspondent: the unique vertex-P summand of e_P.M over the stabilizer
  // that induces the module back
  auto cut_ns = idempotent_truncation(M, f, pns);
  auto d_ns = decompose_module(cut_ns, dim_cap);
  auto ns_psubs = sylow_and_p_subgroups(pns.group, p);
  std::vector<gid> p_in_ns;
  p_in_ns.reserve(P.order());
  for (auto x : P.elem_ids()) p_in_ns.push_back(pns.to_sub(G, x));
  std::sort(p_in_ns.begin(), p_in_ns.end());
  auto ns_target = canonical_conjugate_ids(pns.group, p_in_ns);
  std::optional<Rep> correspondent;
  bool back_divides = false;
  for (const auto& s : d_ns.summands) {
    auto vv = vertex_of(s.rep(), ns_psubs, false);
    if (canonical_conjugate_ids(pns.group, vv.vertex.elem_ids()) != ns_target) continue;
    auto ind = induce(G, pns, s.rep());
    auto dd = decompose_module(ind, dim_cap);
    bool divides = false;
    for (const auto& t : dd.summands)
      if (indecomposable_isomorphism(M, t.rep())) {
        divides = true;
        break;
      }
    if (!divides) continue;
    if (correspondent)
      throw std::logic_error("vertex_source_green: correspondent over the stabilizer not unique");
    correspondent = s.rep();
    back_divides = true;
  }
  if (!correspondent)
    throw std::logic_error("vertex_source_green: no correspondent over the stabilizer");
  const Rep& L = *correspondent;

  // correspondent over the full normalizer, with the certified back direction
  auto gd = green_correspondent(M, P, NP, p, dim_cap);
  const Rep& Mp = gd.correspondent;
  AlgElem ep = relative_trace(G, NP, NS, f);
  AlgElem epN = restrict_to_subgroup(ep, gd.local);
  if (!(inject_to_parent(epN, gd.local, G) == ep))
    throw std::logic_error("vertex_source_green: traced block escapes the normalizer");
  bool traced_identity = action_matrix(Mp, epN) == Mat::identity(k, Mp.dim());

  // relations: M' matches Ind L and L matches e_P.M', both inside the normalizer
  std::vector<gid> ns_in_np;
  ns_in_np.reserve(NS.order());
  for (auto x : NS.elem_ids()) ns_in_np.push_back(gd.local.to_sub(G, x));
  std::sort(ns_in_np.begin(), ns_in_np.end());
  auto pns_in_np = promote(Subgroup(gd.local.group, ns_in_np));
  Rep L_in_np = Rep::from_function(pns_in_np.group, k, [&](gid i) { return L.mat(i); }, L.name());
  auto indL = induce(gd.local.group, pns_in_np, L_in_np);
  bool ind_rel = isomorphism_test(Mp, indL, dim_cap).has_value();
  AlgElem fN = restrict_to_subgroup(f, gd.local);
  auto cutMp = idempotent_truncation(Mp, fN, pns_in_np);
  bool trunc_rel = isomorphism_test(cutMp, L_in_np, dim_cap).has_value();

  // dividing condition: M | e.kG.e_P tensored over kP with the source
  Mat W = algebra_cut(G, k, e.elem, f);
  auto tensor_mod = bimodule_tensor(G, k, W, P, pp, *source);
  bool tensor_divides = false;
  auto dt = decompose_module(tensor_mod, dim_cap);
  for (const auto& t : dt.summands)
    if (indecomposable_isomorphism(M, t.rep())) {
      tensor_divides = true;
      break;
    }

  VertexSubpairData out{std::move(P),
                        std::move(pc),
                        f,
                        std::move(*source),
                        std::move(NS),
                        L,
                        Mp,
                        std::move(ep)};
  out.cut_tensor_divides = tensor_divides;
  out.local_summand_has_vertex = true;  // this is how the block was chosen
  out.correspondent_divides = back_divides;
  out.traced_block_acts_as_identity = traced_identity;
  out.induced_relation = ind_rel;
  out.truncated_relation = trunc_rel;
  return out;
}

}  // namespace blocklab
