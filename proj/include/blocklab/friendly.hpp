#pragma once

// Recognition of permutation and endopermutation modules over p-groups,
// compatibility of such modules, fusion stability of sources against a block's
// subpair category, and certification of modules whose indecomposable summands
// carry compatible fusion-stable endopermutation sources.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocklab/algebra.hpp"
#include "blocklab/blocks.hpp"
#include "blocklab/decompose.hpp"
#include "blocklab/field.hpp"
#include "blocklab/group.hpp"
#include "blocklab/matrix.hpp"
#include "blocklab/module.hpp"
#include "blocklab/subpair.hpp"

namespace blocklab {

namespace detail {

// All subgroups of a subgroup P of G, as sorted ambient id lists, ordered by
// (size, lexicographic ids).
inline std::vector<std::vector<gid>> subgroup_ids_of(const GroupRef& G, const Subgroup& P) {
  std::vector<std::vector<gid>> out;
  if (P.order() == 1) {
    out.push_back(P.elem_ids());
    return out;
  }
  std::uint32_t p = 2;
  while (P.order() % p != 0) ++p;
  auto pd = promote(P);
  auto ps = sylow_and_p_subgroups(pd.group, p);
  for (const auto& cls : ps.classes)
    for (const auto& member : cls) {
      std::vector<gid> ids;
      ids.reserve(member.size());
      for (auto s : member) ids.push_back(pd.to_parent[s]);
      std::sort(ids.begin(), ids.end());
      out.push_back(std::move(ids));
    }
  std::sort(out.begin(), out.end(), [](const std::vector<gid>& a, const std::vector<gid>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  (void)G;
  return out;
}

}  // namespace detail

// -------- permutation-module recognition over a p-group --------

// Verdict of the transitive-decomposition scan.  When the module is a
// permutation module, each indecomposable summand is identified with a coset
// module k[P/Q]; the matched point stabilizer Q and the intertwiner onto the
// coset module are returned parallel to parts.summands (an empty stabilizer
// and a 0x0 matrix mark an unmatched summand).
struct PermutationVerdict {
  bool is_permutation = false;
  Decomposition parts;
  std::vector<std::vector<gid>> point_stabilizers;
  std::vector<Mat> isomorphisms;
};

// True iff every indecomposable summand of N is isomorphic to a coset module
// k[P/Q] for some subgroup Q; scans subgroup class representatives of the
// p-group P (over which the coset modules are indecomposable and exhaust the
// modules with stable bases).
inline PermutationVerdict permutation_module_test(const Rep& N) {
  const auto& P = N.group();
  const auto& k = N.field();
  PermutationVerdict out;
  out.parts = N.dim() == 0 ? Decomposition{} : decompose_module(N);
  out.is_permutation = true;
  std::vector<Subgroup> reps;
  if (P->order() == 1) {
    reps.push_back(Subgroup::full(P));
  } else {
    std::uint32_t p = 2;
    while (P->order() % p != 0) ++p;
    auto ps = sylow_and_p_subgroups(P, p);
    reps.assign(ps.reps.begin(), ps.reps.end());
  }
  for (const auto& s : out.parts.summands) {
    bool matched = false;
    for (const auto& Q : reps) {
      if (P->order() / Q.order() != s.rep().dim()) continue;
      Rep cand = Rep::permutation_on_cosets(P, k, Q);
      if (auto W = indecomposable_isomorphism(s.rep(), cand)) {
        out.point_stabilizers.push_back(Q.elem_ids());
        out.isomorphisms.push_back(*W);
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.point_stabilizers.emplace_back();
      out.isomorphisms.emplace_back(k, 0, 0);
      out.is_permutation = false;
    }
  }
  return out;
}

// -------- endopermutation recognition --------

// A module V over a p-group P is endopermutation when End_k(V), carrying the
// conjugation action, is a permutation module; it is capped here when V is
// indecomposable with vertex the whole of P.
struct EndopermVerdict {
  bool is_endopermutation = false;
  bool is_capped = false;
  PermutationVerdict end_test;
};

inline EndopermVerdict endopermutation_test(const Rep& V) {
  EndopermVerdict out;
  out.end_test = permutation_module_test(hom_rep(V, V));
  out.is_endopermutation = out.end_test.is_permutation;
  const auto& P = V.group();
  if (V.dim() > 0) {
    auto dec = decompose_module(V);
    if (dec.summands.size() == 1) {
      if (P->order() == 1) {
        out.is_capped = true;
      } else {
        std::uint32_t p = 2;
        while (P->order() % p != 0) ++p;
        out.is_capped = vertex_of(V, p, false).vertex == Subgroup::full(P);
      }
    }
  }
  return out;
}

// -------- compatibility --------

// V and W over the same p-group (same element list) are compatible when the
// direct sum V + W is an endopermutation module.  End(V + W) splits into
// End(V), End(W) and the two Hom spaces, and a direct sum is a permutation
// module exactly when all its summands are, so the four pieces are tested
// separately; this avoids decomposing a module whose endomorphism algebra
// grows with the fourth power of the combined dimension.
inline bool compatibility_test(const Rep& V, const Rep& W) {
  Rep W2 = V.group() == W.group() ? W : detail::rep_on_group(V.group(), W);
  return permutation_module_test(hom_rep(V, V)).is_permutation &&
         permutation_module_test(hom_rep(W2, W2)).is_permutation &&
         permutation_module_test(hom_rep(V, W2)).is_permutation &&
         permutation_module_test(hom_rep(W2, V)).is_permutation;
}

// -------- fusion stability --------

// Verdict of the stability scan; when it fails, the subgroup (ambient ids)
// and the conjugating element of the first failing check are reported.
struct FusionStability {
  bool stable = true;
  std::vector<gid> failing_subgroup;
  gid failing_witness = 0;
};

// V over the subpair's subgroup P is fusion-stable when, for every subpair
// (Q, e_Q) below (P, e_P) and every g with (Q, e_Q) below the g-conjugate of
// (P, e_P), the restriction of V to Q is compatible with the restriction of
// the g-conjugate of V to Q.  The scan runs over subgroup class
// representatives under the subpair stabilizer (a failure at a conjugate
// subgroup transports to the representative) and, within each Q, over coset
// representatives of Q C_G(Q) (left translation by that subgroup fixes both
// the filter and the check).
inline FusionStability fusion_stability_test(const GroupRef& G, const Field& k, const Rep& V,
                                             const Subpair& sp, const BlockIdem& e) {
  if (!is_e_subpair(G, e, sp))
    throw std::invalid_argument("fusion_stability_test: not an e-subpair");
  auto pp = promote(sp.sub);
  Rep Vp = V.group() == pp.group ? V : detail::rep_on_group(pp.group, V);
  auto all = detail::subgroup_ids_of(G, sp.sub);
  auto stab = subpair_stabilizer(G, sp);
  std::vector<std::vector<gid>> subs;
  std::set<std::vector<gid>> seen;
  for (const auto& ids : all) {
    if (seen.count(ids)) continue;
    subs.push_back(ids);
    for (auto n : stab.elem_ids()) seen.insert(conjugate_ids(G, ids, n));
  }
  const auto& pids = sp.sub.elem_ids();
  for (const auto& qids : subs) {
    Subgroup Q(G, qids);
    AlgElem eQ = resolve_chain_below(G, k, Q, sp).front().block_elem;
    Subpair qp{Q, eQ};
    std::vector<gid> gen = qids;
    Subgroup cq = centralizer(G, Q);
    for (auto c : cq.elem_ids()) gen.push_back(c);
    Subgroup qc = Subgroup::generated(G, gen);
    std::vector<gid> qin;
    for (auto x : qids) qin.push_back(pp.to_sub(G, x));
    Rep VQ = restrict_rep(Vp, promote(Subgroup(pp.group, qin)));
    std::vector<char> visited(G->order(), 0);
    for (gid g = 0; g < G->order(); ++g) {
      if (visited[g]) continue;
      for (auto c : qc.elem_ids()) visited[G->mul(c, g)] = 1;
      auto rids = conjugate_ids(G, pids, g);
      if (!std::includes(rids.begin(), rids.end(), qids.begin(), qids.end())) continue;
      Subpair rp{Subgroup(G, rids), sp.block_elem.conj_by(g)};
      if (!subpair_containment(G, k, qp, rp).contained) continue;
      auto cr = conjugate_sub_rep(G, pp, Vp, g);
      std::vector<gid> qcr;
      for (auto x : qids) qcr.push_back(cr.sub.to_sub(G, x));
      Rep VQg = restrict_rep(cr.rep, promote(Subgroup(cr.sub.group, qcr)));
      if (!compatibility_test(VQ, VQg)) return FusionStability{false, qids, g};
    }
  }
  return FusionStability{true, {}, 0};
}

// -------- compatibility of source triples --------

// Verdict of the pairwise scan over shared subpairs and arrow pairs; on
// failure the shared subgroup and the two arrow witnesses are reported.
struct TripleCompat {
  bool compatible = true;
  std::vector<gid> failing_subgroup;
  gid witness_first = 0;
  gid witness_second = 0;
};

namespace detail {

// The block of the ambient group algebra a subpair belongs to: the block
// entry of its containment chain at the trivial subgroup.
inline AlgElem ambient_block_of(const GroupRef& G, const Field& k, const Subpair& sp) {
  return resolve_chain_below(G, k, Subgroup::trivial(G), sp).front().block_elem;
}

// Restriction of a triple's source along an arrow into its subpair: the
// arrow sends x to w x w^{-1}, so x acts on the restriction through the
// source's matrix at w x w^{-1}.
inline Rep restrict_along_arrow(const GroupRef& G, const SourceTriple& T, const Subpair& q,
                                gid witness) {
  auto cr = conjugate_sub_rep(G, T.vertex, T.source, G->inv(witness));
  std::vector<gid> qids;
  for (auto x : q.sub.elem_ids()) qids.push_back(cr.sub.to_sub(G, x));
  return restrict_rep(cr.rep, promote(Subgroup(cr.sub.group, qids)));
}

}  // namespace detail

// Two source triples are compatible when, for every subpair (Q, e_Q) of the
// common block and every pair of arrows from it into the two triples'
// subpairs, the restrictions of the two sources along the arrows are
// compatible.  Triples over different blocks of the ambient algebra share no
// subpairs, so they are vacuously compatible.
inline TripleCompat triple_compatibility_test(const GroupRef& G, const Field& k,
                                              const SourceTriple& T1, const SourceTriple& T2) {
  AlgElem b1 = detail::ambient_block_of(G, k, T1.pair);
  AlgElem b2 = detail::ambient_block_of(G, k, T2.pair);
  if (!(b1 == b2)) return TripleCompat{};
  std::optional<BlockIdem> e;
  for (auto& bl : compute_blocks(G, k))
    if (bl.elem == b1) {
      e = std::move(bl);
      break;
    }
  if (!e) throw std::logic_error("triple_compatibility_test: chain block is not a block");
  auto psubs = sylow_and_p_subgroups(G, k->p());
  for (const auto& entry : enumerate_subpairs(G, k, *e, psubs)) {
    auto a1 = category_arrows(G, k, e->elem, entry.rep, T1.pair);
    if (a1.empty()) continue;
    auto a2 = category_arrows(G, k, e->elem, entry.rep, T2.pair);
    for (const auto& f1 : a1) {
      Rep r1 = detail::restrict_along_arrow(G, T1, entry.rep, f1.witness);
      for (const auto& f2 : a2) {
        Rep r2 = detail::restrict_along_arrow(G, T2, entry.rep, f2.witness);
        if (!compatibility_test(r1, r2))
          return TripleCompat{false, entry.rep.sub.elem_ids(), f1.witness, f2.witness};
      }
    }
  }
  return TripleCompat{};
}

// -------- compatibility against induction --------

// Carry a triple's source along an arrow into a larger subpair and induce up
// to the target subgroup.
inline Rep induce_along_arrow(const GroupRef& G, const SourceTriple& T,
                              const PromotedSubgroup& target, const BrauerArrow& psi) {
  auto cr = conjugate_sub_rep(G, T.vertex, T.source, psi.witness);
  std::vector<gid> inside;
  for (auto x : cr.sub.to_parent) inside.push_back(target.to_sub(G, x));
  auto sit = promote(Subgroup(target.group, inside));
  return induce(target.group, sit, detail::rep_on_group(sit.group, cr.rep));
}

// Two triples are compatible exactly when the direct sum of their inductions
// along arrows into a common subpair is a fusion-stable endopermutation
// module there.  Both sides of the equivalence are computed independently.
struct InductionAgreement {
  bool triples_compatible = false;
  bool induced_endopermutation = false;
  bool induced_stable = false;
  bool agree = false;
};

inline InductionAgreement compatibility_induction_agreement(
    const GroupRef& G, const Field& k, const BlockIdem& e, const SourceTriple& T1,
    const SourceTriple& T2, const Subpair& target, const BrauerArrow& psi1,
    const BrauerArrow& psi2) {
  if (!(psi1.target == target) || !(psi2.target == target))
    throw std::invalid_argument(
        "compatibility_induction_agreement: arrow does not land in the target subpair");
  if (!(psi1.source == T1.pair) || !(psi2.source == T2.pair))
    throw std::invalid_argument(
        "compatibility_induction_agreement: arrow does not start at the triple's subpair");
  InductionAgreement out;
  out.triples_compatible = triple_compatibility_test(G, k, T1, T2).compatible;
  auto pr = promote(target.sub);
  Rep U = direct_sum(induce_along_arrow(G, T1, pr, psi1), induce_along_arrow(G, T2, pr, psi2));
  out.induced_endopermutation = permutation_module_test(hom_rep(U, U)).is_permutation;
  out.induced_stable = fusion_stability_test(G, k, U, target, e).stable;
  out.agree = out.triples_compatible == (out.induced_endopermutation && out.induced_stable);
  return out;
}

// -------- certification --------

// Per-summand record: the source triple, the block the summand lives in, and
// the endopermutation / capped / stability verdicts of the source.
struct TripleReport {
  SourceTriple triple;
  BlockIdem block;
  bool endopermutation = false;
  bool capped = false;
  FusionStability stability;
};

enum class FriendlyMode { direct, source_algebra, both };

// Certificate that a module is a direct sum of indecomposables with
// compatible fusion-stable endopermutation sources.  The direct route fills
// triples and the pairwise matrix; friendly is true iff every summand's
// source is a capped endopermutation module, every stability scan passes and
// every pair is compatible.  The source-algebra route cuts the module by a
// source idempotent over a defect group and tests the cut for being an
// endopermutation module; when both routes run their verdicts must agree.
struct FriendlyCertificate {
  Rep module;
  Decomposition parts;
  std::vector<TripleReport> triples;
  std::vector<std::vector<TripleCompat>> pairs;
  bool friendly = false;
  std::optional<bool> source_algebra_friendly;
};

inline FriendlyCertificate certify_brauer_friendly(const Rep& M,
                                                   FriendlyMode mode = FriendlyMode::direct,
                                                   std::size_t dim_cap = default_dim_cap) {
  const auto& G = M.group();
  const auto& k = M.field();
  Decomposition parts = M.dim() == 0 ? Decomposition{} : decompose_module(M, dim_cap);
  auto blocks = compute_blocks(G, k);
  std::vector<TripleReport> triples;
  std::vector<std::vector<TripleCompat>> pairs;
  bool direct_ok = true;
  std::optional<bool> source_ok;
  AlgElem zero = AlgElem::zero(G, k);
  if (mode == FriendlyMode::direct || mode == FriendlyMode::both) {
    for (const auto& s : parts.summands) {
      std::optional<BlockIdem> bl;
      for (const auto& b : blocks)
        if (action_matrix(s.rep(), b.elem) == Mat::identity(k, s.rep().dim())) {
          bl = b;
          break;
        }
      if (!bl) throw std::logic_error("certify_brauer_friendly: summand lies in no single block");
      SourceTriple st = source_triple_of(s.rep(), *bl, dim_cap);
      EndopermVerdict ev = endopermutation_test(st.source);
      FusionStability fs = fusion_stability_test(G, k, st.source, st.pair, *bl);
      direct_ok = direct_ok && ev.is_endopermutation && ev.is_capped && fs.stable;
      triples.push_back(TripleReport{std::move(st), *bl, ev.is_endopermutation, ev.is_capped,
                                     std::move(fs)});
    }
    pairs.assign(triples.size(), std::vector<TripleCompat>(triples.size()));
    for (std::size_t i = 0; i < triples.size(); ++i)
      for (std::size_t j = i; j < triples.size(); ++j) {
        TripleCompat tc = triple_compatibility_test(G, k, triples[i].triple, triples[j].triple);
        direct_ok = direct_ok && tc.compatible;
        pairs[i][j] = tc;
        pairs[j][i] = std::move(tc);
      }
  }
  if (mode == FriendlyMode::source_algebra || mode == FriendlyMode::both) {
    std::optional<BlockIdem> bl;
    for (const auto& b : blocks)
      if (action_matrix(M, b.elem) == Mat::identity(k, M.dim())) {
        bl = b;
        break;
      }
    if (!bl)
      throw std::invalid_argument(
          "certify_brauer_friendly: the source-algebra route needs a module in a single block");
    auto psubs = sylow_and_p_subgroups(G, k->p());
    auto dd = defect_groups(G, *bl, psubs);
    auto cb = centralizer_blocks(G, k, dd.rep);
    std::vector<gid> cids;
    for (auto x : cb.centralizer.to_parent) cids.push_back(x);
    AlgElem tr = bl->elem.truncate_to(cids);
    std::optional<AlgElem> max_block;
    for (const auto& fD : cb.in_parent)
      if (!(fD * tr == zero)) {
        max_block = fD;
        break;
      }
    if (!max_block)
      throw std::logic_error("certify_brauer_friendly: no centralizer block over the defect group");
    SpanAlgebra AD = fixed_point_algebra(G, k, bl->elem, dd.rep);
    std::vector<AlgElem> prims;
    for (const auto& c : primitive_idempotents(AD.alg))
      prims.push_back(detail::elem_from_coeffs(G, k, AD.to_ambient(c)));
    std::sort(prims.begin(), prims.end(),
              [&](const AlgElem& a, const AlgElem& b) { return detail::coeffs_less(a, b, G); });
    std::optional<AlgElem> src;
    for (const auto& i : prims)
      if (!(*max_block * i.truncate_to(cids) == zero)) {
        src = i;
        break;
      }
    if (!src)
      throw std::logic_error(
          "certify_brauer_friendly: no source idempotent meets the maximal subpair");
    auto pd = promote(dd.rep);
    Rep iM = idempotent_truncation(M, *src, pd);
    source_ok = permutation_module_test(hom_rep(iM, iM)).is_permutation;
  }
  if (mode == FriendlyMode::both && source_ok && *source_ok != direct_ok)
    throw std::logic_error("certify_brauer_friendly: direct and source-algebra verdicts disagree");
  bool verdict = mode == FriendlyMode::source_algebra ? *source_ok : direct_ok;
  return FriendlyCertificate{M,       std::move(parts), std::move(triples),
                             std::move(pairs), verdict, source_ok};
}

// -------- friendly modules from block idempotents --------

struct ConstructedFriendly {
  Rep module;
  FriendlyCertificate certificate;
};

// Build the module kGi tensored over kP with V and certify it.  The
// idempotent must be P-fixed, lie in the block, meet the subpair's block
// under truncation to the centralizer, and its truncation to every
// sub-centralizer must sit inside a single centralizer block.
inline ConstructedFriendly friendly_from_idempotent(const GroupRef& G, const Field& k,
                                                    const BlockIdem& e, const Subpair& sp,
                                                    const Rep& V, const AlgElem& i,
                                                    std::size_t dim_cap = default_dim_cap) {
  if (!is_e_subpair(G, e, sp))
    throw std::invalid_argument("friendly_from_idempotent: not an e-subpair");
  AlgElem zero = AlgElem::zero(G, k);
  if (!(i * i == i) || i == zero)
    throw std::invalid_argument("friendly_from_idempotent: not a nonzero idempotent");
  if (!(e.elem * i == i))
    throw std::invalid_argument("friendly_from_idempotent: idempotent not in the block algebra");
  if (!i.is_fixed_by(sp.sub))
    throw std::invalid_argument("friendly_from_idempotent: idempotent not fixed by the subgroup");
  if (sp.block_elem * i.truncate_to(centralizer(G, sp.sub).elem_ids()) == zero)
    throw std::invalid_argument("friendly_from_idempotent: truncation misses the subpair block");
  for (const auto& qids : detail::subgroup_ids_of(G, sp.sub)) {
    Subgroup Q(G, qids);
    AlgElem bq = i.truncate_to(centralizer(G, Q).elem_ids());
    auto cb = centralizer_blocks(G, k, Q);
    std::size_t hits = 0;
    for (const auto& f : cb.in_parent)
      if (!(f * bq == zero)) ++hits;
    if (hits != 1)
      throw std::invalid_argument(
          "friendly_from_idempotent: truncation spreads over several centralizer blocks");
  }
  auto pp = promote(sp.sub);
  Rep Vp = V.group() == pp.group ? V : detail::rep_on_group(pp.group, V);
  Rep L = bimodule_tensor(G, k, algebra_cut(G, k, AlgElem::one(G, k), i), sp.sub, pp, Vp);
  FriendlyCertificate cert = certify_brauer_friendly(L, FriendlyMode::direct, dim_cap);
  return ConstructedFriendly{std::move(L), std::move(cert)};
}

// -------- restriction to a local subgroup --------

// The subpair-block truncation of the restriction of a certified module to a
// subgroup H between P C_G(P) and the subpair stabilizer, split into the
// summands whose vertex contains the subpair's subgroup (certified again over
// kH, and checked to restrict to an endopermutation module on the subgroup)
// and the rest.
struct LocalSplit {
  PromotedSubgroup local;
  Rep truncated;
  Mat truncated_basis;
  Rep kept;
  Rep dropped;
  std::vector<std::size_t> kept_indices;
  std::vector<std::size_t> dropped_indices;
  Decomposition parts;
  FriendlyCertificate kept_certificate;
  bool restriction_endopermutation = false;
};

inline LocalSplit restrict_to_local(const Rep& M, const FriendlyCertificate& cert,
                                    const Subpair& sp, const Subgroup& H,
                                    std::size_t dim_cap = default_dim_cap) {
  const auto& G = M.group();
  const auto& k = M.field();
  if (cert.module.group() != G || cert.module.dim() != M.dim() || !cert.friendly)
    throw std::invalid_argument(
        "restrict_to_local: certificate missing or not a friendly verdict for this module");
  if (cert.triples.empty() && M.dim() > 0)
    throw std::invalid_argument("restrict_to_local: certificate carries no triples");
  for (const auto& t : cert.triples)
    if (!(t.block.elem == cert.triples.front().block.elem))
      throw std::invalid_argument("restrict_to_local: module spreads over several blocks");
  if (!cert.triples.empty() && !is_e_subpair(G, cert.triples.front().block, sp))
    throw std::invalid_argument("restrict_to_local: not a subpair of the module's block");
  std::vector<gid> gen = sp.sub.elem_ids();
  Subgroup cp = centralizer(G, sp.sub);
  for (auto c : cp.elem_ids()) gen.push_back(c);
  if (!H.contains_subgroup(Subgroup::generated(G, gen)))
    throw std::invalid_argument("restrict_to_local: subgroup does not contain the centralizer part");
  if (!subpair_stabilizer(G, sp).contains_subgroup(H))
    throw std::invalid_argument("restrict_to_local: subgroup does not stabilize the subpair");
  auto ph = promote(H);
  Mat basis(k, 0, 0);
  Rep cut = idempotent_truncation(M, sp.block_elem, ph, &basis);
  Decomposition parts = cut.dim() == 0 ? Decomposition{} : decompose_module(cut, dim_cap);
  std::vector<std::size_t> kept_idx, dropped_idx;
  auto psubs = sylow_and_p_subgroups(ph.group, k->p());
  const auto& pids = sp.sub.elem_ids();
  for (std::size_t idx = 0; idx < parts.summands.size(); ++idx) {
    auto v = vertex_of(parts.summands[idx].rep(), psubs, false);
    std::vector<gid> amb;
    for (auto x : v.vertex.elem_ids()) amb.push_back(ph.to_parent[x]);
    std::sort(amb.begin(), amb.end());
    bool contains = std::includes(amb.begin(), amb.end(), pids.begin(), pids.end());
    (contains ? kept_idx : dropped_idx).push_back(idx);
  }
  auto fold = [&](const std::vector<std::size_t>& which) {
    Rep acc = Rep::from_function(ph.group, k, [&](gid) { return Mat(k, 0, 0); }, "0");
    for (auto idx : which) acc = direct_sum(acc, parts.summands[idx].rep());
    return acc;
  };
  Rep kept = fold(kept_idx);
  Rep dropped = fold(dropped_idx);
  FriendlyCertificate kc = certify_brauer_friendly(kept, FriendlyMode::direct, dim_cap);
  std::vector<gid> pin;
  for (auto x : pids) pin.push_back(ph.to_sub(G, x));
  Rep resL = restrict_rep(kept, promote(Subgroup(ph.group, pin)));
  bool endo = permutation_module_test(hom_rep(resL, resL)).is_permutation;
  return LocalSplit{std::move(ph),      std::move(cut),         std::move(basis),
                    std::move(kept),    std::move(dropped),     std::move(kept_idx),
                    std::move(dropped_idx), std::move(parts),   std::move(kc),
                    endo};
}

}  // namespace blocklab
