#pragma once

// Subpairs of a block: pairs (P, e_P) with P a p-subgroup and e_P a block of
// the centralizer algebra k C_G(P).  This layer provides the containment
// relation with normal-chain certificates, enumeration of e-subpairs up to
// conjugacy with maximality flags, the conjugation arrows between subpairs
// (the local category attached to a block, including full fusion-system
// tables), idempotent witnesses tying a module's source triple to primitive
// idempotents of fixed-point algebras, restriction of source triples along
// subgroups containing the relevant centralizer, and the subpair-refined
// Brauer quotient.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
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

namespace blocklab {

// -------- subpairs --------

// A subpair (P, e_P): a p-subgroup together with a block of k C_G(P), stored
// as an element of the ambient group algebra with support inside C_G(P).
struct Subpair {
  Subgroup sub;
  AlgElem block_elem;

  bool operator==(const Subpair& o) const {
    return sub == o.sub && block_elem == o.block_elem;
  }
};

// Blocks of the centralizer algebra k C_G(P), both on the promoted copy of
// the centralizer and injected back into the ambient group algebra.
struct CentralizerBlocks {
  PromotedSubgroup centralizer;
  std::vector<BlockIdem> blocks;
  std::vector<AlgElem> in_parent;
};

inline CentralizerBlocks centralizer_blocks(const GroupRef& G, const Field& k,
                                            const Subgroup& P) {
  auto pc = promote(centralizer(G, P));
  auto bls = compute_blocks(pc.group, k);
  std::vector<AlgElem> inj;
  inj.reserve(bls.size());
  for (const auto& b : bls) inj.push_back(inject_to_parent(b.elem, pc, G));
  return CentralizerBlocks{std::move(pc), std::move(bls), std::move(inj)};
}

// Validated constructor: f must be one of the blocks of k C_G(P).
inline Subpair make_subpair(const GroupRef& G, const Field& k, const Subgroup& P,
                            const AlgElem& f) {
  auto cb = centralizer_blocks(G, k, P);
  for (const auto& g : cb.in_parent)
    if (g == f) return Subpair{P, f};
  throw std::invalid_argument("make_subpair: element is not a block of the centralizer algebra");
}

// (P, e_P) is an e-subpair when the truncation of e to C_G(P) (the image of e
// under the Brauer morphism at P) is not killed by the block: e_P br_P(e) != 0.
inline bool is_e_subpair(const GroupRef& G, const AlgElem& e, const Subpair& sp) {
  if (!e.is_fixed_by(sp.sub))
    throw std::invalid_argument("is_e_subpair: e is not fixed by the subgroup");
  AlgElem tr = e.truncate_to(centralizer(G, sp.sub).elem_ids());
  return !(sp.block_elem * tr == AlgElem::zero(G, tr.field()));
}

inline bool is_e_subpair(const GroupRef& G, const BlockIdem& e, const Subpair& sp) {
  return is_e_subpair(G, e.elem, sp);
}

// -------- containment --------

// Normal containment (Q, f) normal-in (P, e): Q is normal in P, f is stable
// under conjugation by P, and e br_P(f) = e, i.e. the truncation of f to
// C_G(P) acts as the identity on the block e.  (Since Q <= P forces
// C_G(P) <= C_G(Q), the truncation of f to C_G(P) is its image under the
// Brauer morphism at P.)
inline bool normal_subpair_containment(const GroupRef& G, const Subpair& lo,
                                       const Subpair& hi) {
  if (!hi.sub.contains_subgroup(lo.sub)) return false;
  if (!lo.sub.is_normal_in(hi.sub)) return false;
  for (auto x : hi.sub.elem_ids())
    if (!(lo.block_elem.conj_by(x) == lo.block_elem)) return false;
  AlgElem brf = lo.block_elem.truncate_to(centralizer(G, hi.sub).elem_ids());
  return hi.block_elem * brf == hi.block_elem;
}

// The unique block f of k C_G(Q) with (Q, f) normal in `upper`, found by
// exhaustion.  Zero or several candidates signal a bug, since uniqueness is a
// theorem; both cases throw.
inline Subpair unique_block_below(const GroupRef& G, const Field& k, const Subgroup& Q,
                                  const Subpair& upper) {
  auto cb = centralizer_blocks(G, k, Q);
  std::optional<Subpair> found;
  for (const auto& f : cb.in_parent) {
    Subpair cand{Q, f};
    if (normal_subpair_containment(G, cand, upper)) {
      if (found)
        throw std::logic_error("unique_block_below: block below a subpair is not unique");
      found = std::move(cand);
    }
  }
  if (!found) throw std::logic_error("unique_block_below: no block below the subpair");
  return *found;
}

// The chain of subpairs under `top` with bottom subgroup Q, along the
// normalizer tower Q normal-in N_P(Q) normal-in ... up to P = top.sub, each
// block resolved by unique_block_below from the top downward.  Entry 0 has
// subgroup Q; consecutive entries are normal containments.
inline std::vector<Subpair> resolve_chain_below(const GroupRef& G, const Field& k,
                                                const Subgroup& Q, const Subpair& top) {
  if (!top.sub.contains_subgroup(Q))
    throw std::invalid_argument("resolve_chain_below: subgroup not inside the top subpair");
  std::vector<Subgroup> tower{Q};
  while (tower.back().order() != top.sub.order()) {
    const Subgroup& cur = tower.back();
    auto N = normalizer(G, cur);
    std::vector<gid> inter;
    std::set_intersection(N.elem_ids().begin(), N.elem_ids().end(),
                          top.sub.elem_ids().begin(), top.sub.elem_ids().end(),
                          std::back_inserter(inter));
    Subgroup nxt(G, inter);
    if (nxt.order() == cur.order())
      throw std::logic_error("resolve_chain_below: normalizer tower stalled");
    tower.push_back(std::move(nxt));
  }
  std::vector<Subpair> chain{top};
  for (std::size_t i = tower.size() - 1; i-- > 0;)
    chain.push_back(unique_block_below(G, k, tower[i], chain.back()));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Containment of subpairs: the transitive closure of normal containment along
// the normalizer tower.  The certificate lists every subpair of the resolved
// chain; (Q, f) <= (P, e) holds exactly when the chain's bottom block is f.
struct SubpairChain {
  bool contained = false;
  std::vector<Subpair> chain;
};

inline SubpairChain subpair_containment(const GroupRef& G, const Field& k,
                                        const Subpair& lo, const Subpair& hi) {
  SubpairChain out;
  out.chain = resolve_chain_below(G, k, lo.sub, hi);
  out.contained = out.chain.front().block_elem == lo.block_elem;
  return out;
}

// -------- enumeration --------

namespace detail {

inline std::vector<fq> elem_coeffs(const AlgElem& a, const GroupRef& G) {
  std::vector<fq> v(G->order());
  for (gid h = 0; h < G->order(); ++h) v[h] = a[h];
  return v;
}

inline AlgElem elem_from_coeffs(const GroupRef& G, const Field& k,
                                const std::vector<fq>& v) {
  AlgElem a = AlgElem::zero(G, k);
  for (gid h = 0; h < G->order(); ++h)
    if (v[h]) a.set(h, v[h]);
  return a;
}

inline bool coeffs_less(const AlgElem& a, const AlgElem& b, const GroupRef& G) {
  for (gid h = 0; h < G->order(); ++h)
    if (a[h] != b[h]) return a[h] < b[h];
  return false;
}

}  // namespace detail

struct SubpairListEntry {
  Subpair rep;
  bool maximal = false;
};

// All e-subpairs up to conjugacy: for each p-subgroup class representative P,
// the blocks of k C_G(P) meeting the truncation of e, one representative per
// orbit of N_G(P) (the orbit member with the least coefficient vector).  An
// entry is maximal when it admits no strictly larger e-subpair above it.
// Sanity checks, both theorems: the maximal entries form a single class, and
// their subgroup is the canonical defect-group representative of e.
inline std::vector<SubpairListEntry> enumerate_subpairs(const GroupRef& G, const Field& k,
                                                        const BlockIdem& e,
                                                        const PSubgroupData& psubs) {
  std::vector<SubpairListEntry> out;
  for (const auto& P : psubs.reps) {
    auto cb = centralizer_blocks(G, k, P);
    std::vector<gid> cids;
    for (auto c : cb.centralizer.to_parent) cids.push_back(c);
    AlgElem tr = e.elem.truncate_to(cids);
    std::vector<AlgElem> eligible;
    for (const auto& f : cb.in_parent)
      if (!(f * tr == AlgElem::zero(G, k))) eligible.push_back(f);
    // one representative per orbit of the normalizer of P
    auto N = normalizer(G, P);
    std::vector<bool> used(eligible.size(), false);
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (used[i]) continue;
      AlgElem best = eligible[i];
      for (auto n : N.elem_ids()) {
        AlgElem img = eligible[i].conj_by(n);
        for (std::size_t j = i; j < eligible.size(); ++j)
          if (eligible[j] == img) used[j] = true;
        if (detail::coeffs_less(img, best, G)) best = img;
      }
      out.push_back(SubpairListEntry{Subpair{P, best}, false});
    }
  }
  // maximal iff no normal one-step extension to a strictly larger e-subpair;
  // larger containments always begin with such a step along the normalizer
  auto has_bigger = [&](const Subpair& sp) -> bool {
    for (std::size_t c = 0; c < psubs.reps.size(); ++c) {
      if (psubs.reps[c].order() <= sp.sub.order()) continue;
      for (const auto& ids : psubs.classes[c]) {
        Subgroup R(G, ids);
        if (!R.contains_subgroup(sp.sub)) continue;
        if (!sp.sub.is_normal_in(R)) continue;
        auto cbR = centralizer_blocks(G, k, R);
        std::vector<gid> rcids;
        for (auto x : cbR.centralizer.to_parent) rcids.push_back(x);
        AlgElem trR = e.elem.truncate_to(rcids);
        for (const auto& fR : cbR.in_parent) {
          if (fR * trR == AlgElem::zero(G, k)) continue;
          if (normal_subpair_containment(G, sp, Subpair{R, fR})) return true;
        }
      }
    }
    return false;
  };
  std::size_t n_maximal = 0;
  const Subgroup* max_sub = nullptr;
  for (auto& entry : out) {
    entry.maximal = !has_bigger(entry.rep);
    if (entry.maximal) {
      ++n_maximal;
      max_sub = &entry.rep.sub;
    }
  }
  auto dd = defect_groups(G, e, psubs);
  if (n_maximal != 1 || !(*max_sub == dd.rep))
    throw std::logic_error(
        "enumerate_subpairs: maximal subpairs are not a single class at the defect group");
  return out;
}

// -------- arrows of the local category --------

// A conjugation arrow between subpairs: an element g with ^g(source) <= target,
// recorded as the group morphism x -> g x g^-1 it induces on the source
// subgroup (images listed against source.sub.elem_ids() in order).
struct BrauerArrow {
  Subpair source;
  Subpair target;
  gid witness = 0;
  std::vector<gid> images;
};

// All arrows from src to tgt: conjugations g with ^g(src) <= tgt, one arrow
// per induced morphism (different witnesses with the same images collapse;
// the least witness is kept).
inline std::vector<BrauerArrow> category_arrows(const GroupRef& G, const Field& k,
                                                const AlgElem& e, const Subpair& src,
                                                const Subpair& tgt) {
  if (!is_e_subpair(G, e, src) || !is_e_subpair(G, e, tgt))
    throw std::invalid_argument("category_arrows: inputs are not e-subpairs");
  std::vector<BrauerArrow> out;
  std::set<std::vector<gid>> seen;
  for (gid g = 0; g < G->order(); ++g) {
    auto qids = conjugate_ids(G, src.sub.elem_ids(), g);
    if (!std::includes(tgt.sub.elem_ids().begin(), tgt.sub.elem_ids().end(),
                       qids.begin(), qids.end()))
      continue;
    Subpair image{Subgroup(G, qids), src.block_elem.conj_by(g)};
    if (!subpair_containment(G, k, image, tgt).contained) continue;
    std::vector<gid> images;
    images.reserve(src.sub.order());
    for (auto x : src.sub.elem_ids()) images.push_back(G->conj(g, x));
    if (!seen.insert(images).second) continue;
    out.push_back(BrauerArrow{src, tgt, g, std::move(images)});
  }
  return out;
}

// The full arrow table on the subpairs below a chosen top subpair: one object
// per subgroup of top.sub (the block below the top is unique), and for every
// ordered pair of objects the complete deduplicated arrow list.
struct FusionSystem {
  Subpair top;
  std::vector<Subpair> objects;
  std::vector<std::vector<std::vector<BrauerArrow>>> arrows;  // arrows[i][j]: i -> j
};

inline FusionSystem fusion_system(const GroupRef& G, const Field& k, const BlockIdem& e,
                                  const Subpair& top) {
  if (!is_e_subpair(G, e.elem, top))
    throw std::invalid_argument("fusion_system: top is not an e-subpair");
  std::vector<std::vector<gid>> subgroup_ids;
  if (top.sub.order() == 1) {
    subgroup_ids.push_back(top.sub.elem_ids());
  } else {
    std::uint32_t p = 2;
    while (top.sub.order() % p != 0) ++p;
    auto pd = promote(top.sub);
    auto ps = sylow_and_p_subgroups(pd.group, p);
    for (const auto& cls : ps.classes)
      for (const auto& member : cls) {
        std::vector<gid> ids;
        ids.reserve(member.size());
        for (auto s : member) ids.push_back(pd.to_parent[s]);
        std::sort(ids.begin(), ids.end());
        subgroup_ids.push_back(std::move(ids));
      }
    std::sort(subgroup_ids.begin(), subgroup_ids.end(),
              [](const std::vector<gid>& a, const std::vector<gid>& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
              });
  }
  FusionSystem fs{top, {}, {}};
  for (const auto& ids : subgroup_ids)
    fs.objects.push_back(resolve_chain_below(G, k, Subgroup(G, ids), top).front());
  fs.arrows.resize(fs.objects.size());
  for (std::size_t i = 0; i < fs.objects.size(); ++i) {
    fs.arrows[i].reserve(fs.objects.size());
    for (std::size_t j = 0; j < fs.objects.size(); ++j)
      fs.arrows[i].push_back(category_arrows(G, k, e.elem, fs.objects[i], fs.objects[j]));
  }
  return fs;
}

// -------- source triples --------

// A source triple of an indecomposable module: its vertex subpair together
// with a source module over the (promoted) vertex.
struct SourceTriple {
  Subpair pair;
  PromotedSubgroup vertex;
  Rep source;
};

// The source triple of an indecomposable module lying in the block e, from
// the vertex-subpair machinery.
inline SourceTriple source_triple_of(const Rep& M, const BlockIdem& e,
                                     std::size_t dim_cap = default_dim_cap) {
  auto v = vertex_source_green(M, e, dim_cap);
  auto pv = promote(v.vertex);
  return SourceTriple{Subpair{std::move(v.vertex), std::move(v.local_block)},
                      std::move(pv), std::move(v.source)};
}

namespace detail {

// Copy a representation onto another group object with the same element list.
inline Rep rep_on_group(const GroupRef& H, const Rep& R) {
  if (H->elements() != R.group()->elements())
    throw std::invalid_argument("rep_on_group: element lists differ");
  return Rep::from_function(H, R.field(), [&](gid g) { return R.mat(g); }, R.name());
}

}  // namespace detail

// -------- idempotent witnesses for a source triple --------

// For an indecomposable M with source triple (P, e_P, V) in the block e: a
// primitive idempotent i of the P-fixed points of kGe whose truncation to
// C_G(P) meets the block e_P and with M a summand of kGi (x)_{kP} V; and a
// primitive idempotent j of the D-fixed points, for a maximal subpair (D, e_D)
// above (P, e_P), with ij = ji = i, nonzero truncation to C_G(D), truncation
// to C_G(P) meeting e_P, and M a summand of kGj (x)_{kD} Ind_P^D V.
struct IdempotentWitnesses {
  AlgElem i;
  Subpair max_pair;
  AlgElem j;
  ModMap embed_i;    // M -> kGi (x)_{kP} V
  ModMap project_i;  // kGi (x)_{kP} V -> M, project_i.T * embed_i.T = identity
  ModMap embed_j;    // M -> kGj (x)_{kD} Ind_P^D V
  ModMap project_j;
};

inline IdempotentWitnesses witness_idempotents(const Rep& M, const BlockIdem& e,
                                               const SourceTriple& st,
                                               std::size_t dim_cap = default_dim_cap) {
  const auto& G = M.group();
  const auto& k = M.field();
  // the triple must be the source triple of M: recompute and compare
  {
    auto ref = vertex_source_green(M, e, dim_cap);
    if (!(ref.vertex == st.pair.sub))
      throw std::invalid_argument("witness_idempotents: triple subgroup is not the vertex of M");
    if (!(ref.local_block == st.pair.block_elem))
      throw std::invalid_argument("witness_idempotents: triple block does not match the vertex subpair");
    Rep cmp = detail::rep_on_group(ref.source.group(), st.source);
    if (!indecomposable_isomorphism(cmp, ref.source))
      throw std::invalid_argument("witness_idempotents: triple source does not match the module's source");
  }
  const Subgroup& P = st.pair.sub;
  auto cpids = centralizer(G, P).elem_ids();
  AlgElem zero = AlgElem::zero(G, k);
  // a maximal subpair above the triple
  auto psubs = sylow_and_p_subgroups(G, k->p());
  auto dd = defect_groups(G, e, psubs);
  std::optional<Subpair> mp;
  for (const auto& ids : dd.members) {
    Subgroup D(G, ids);
    if (!D.contains_subgroup(P)) continue;
    auto cb = centralizer_blocks(G, k, D);
    std::vector<gid> dcids;
    for (auto x : cb.centralizer.to_parent) dcids.push_back(x);
    AlgElem trD = e.elem.truncate_to(dcids);
    for (const auto& fD : cb.in_parent) {
      if (fD * trD == zero) continue;
      if (subpair_containment(G, k, st.pair, Subpair{D, fD}).contained) {
        mp = Subpair{D, fD};
        break;
      }
    }
    if (mp) break;
  }
  if (!mp) throw std::logic_error("witness_idempotents: no maximal subpair above the triple");
  const Subgroup& D = mp->sub;
  auto cdids = centralizer(G, D).elem_ids();
  // primitive decompositions: of e over the D-fixed points, then of each
  // candidate j over the P-fixed points (so that i <= j automatically)
  SpanAlgebra AP = fixed_point_algebra(G, k, e.elem, P);
  SpanAlgebra AD = fixed_point_algebra(G, k, e.elem, D);
  auto sorted_elems = [&](const std::vector<std::vector<fq>>& coords,
                          const SpanAlgebra& A) {
    std::vector<AlgElem> es;
    es.reserve(coords.size());
    for (const auto& c : coords) es.push_back(detail::elem_from_coeffs(G, k, A.to_ambient(c)));
    std::sort(es.begin(), es.end(), [&](const AlgElem& a, const AlgElem& b) {
      return detail::coeffs_less(a, b, G);
    });
    return es;
  };
  std::vector<AlgElem> js = sorted_elems(primitive_idempotents(AD.alg), AD);
  // split-off helper: M as a summand of T, or nothing
  auto divides = [&](const Rep& T) -> std::optional<std::pair<ModMap, ModMap>> {
    auto d = decompose_module(T, dim_cap);
    for (const auto& s : d.summands) {
      auto W = indecomposable_isomorphism(M, s.rep());
      if (!W) continue;
      Mat emb = s.embed.T * (*W);
      Mat prj = (*W->inverse()) * s.project.T;
      return std::make_pair(ModMap(M, T, std::move(emb)), ModMap(T, M, std::move(prj)));
    }
    return std::nullopt;
  };
  AlgElem one = AlgElem::one(G, k);
  for (const AlgElem& j : js) {
    if (j.truncate_to(cdids) == zero) continue;
    if (st.pair.block_elem * j.truncate_to(cpids) == zero) continue;
    // decompose j over the P-fixed points via the corner algebra at j
    auto jc = AP.to_coords(detail::elem_coeffs(j, G));
    auto corner = detail::corner_algebra(AP.alg, jc);
    std::vector<std::vector<fq>> icoords;
    for (const auto& c : primitive_idempotents(corner.alg)) {
      std::vector<fq> ap(AP.alg.dim(), 0);
      for (std::size_t r = 0; r < corner.basis.rows(); ++r) {
        fq acc = 0;
        for (std::size_t s = 0; s < corner.basis.cols(); ++s)
          acc = k->add(acc, k->mul(corner.basis.at(r, s), c[s]));
        ap[r] = acc;
      }
      icoords.push_back(std::move(ap));
    }
    std::vector<AlgElem> is = sorted_elems(icoords, AP);
    for (const AlgElem& i : is) {
      if (st.pair.block_elem * i.truncate_to(cpids) == zero) continue;
      Rep Ti = bimodule_tensor(G, k, algebra_cut(G, k, one, i), P, st.vertex, st.source);
      auto split_i = divides(Ti);
      if (!split_i) continue;
      if (!(i * j == i && j * i == i))
        throw std::logic_error("witness_idempotents: corner term not below its idempotent");
      // companion condition at the maximal subpair level
      auto pd = promote(D);
      std::vector<gid> pids;
      for (auto x : P.elem_ids()) pids.push_back(pd.to_sub(G, x));
      std::sort(pids.begin(), pids.end());
      auto ppd = promote(Subgroup(pd.group, pids));
      Rep IndV = induce(pd.group, ppd, detail::rep_on_group(ppd.group, st.source));
      Rep Tj = bimodule_tensor(G, k, algebra_cut(G, k, one, j), D, pd, IndV);
      auto split_j = divides(Tj);
      if (!split_j)
        throw std::logic_error("witness_idempotents: companion condition fails for a passing term");
      return IdempotentWitnesses{i,
                                 *mp,
                                 j,
                                 std::move(split_i->first),
                                 std::move(split_i->second),
                                 std::move(split_j->first),
                                 std::move(split_j->second)};
    }
  }
  throw std::logic_error("witness_idempotents: no decomposition term satisfies the conditions");
}

// -------- restriction of source triples --------

// Restriction data: given X a summand of the restriction of M to H with
// source triple (Q, e_Q, V) over H, a source triple (R, e_R, W) of an
// indecomposable summand of M with (Q, e_Q) <= (R, e_R) and V a summand of
// the restriction of W to Q, both certified.
struct RestrictedTriple {
  SourceTriple triple;
  std::size_t summand = 0;     // index of the summand of M the triple belongs to
  gid conjugator = 0;          // carries that summand's stored triple onto (R, e_R, W)
  SubpairChain containment;    // certificate for (Q, e_Q) <= (R, e_R)
  ModMap source_embed;         // V -> Res_Q W
  ModMap source_project;       // Res_Q W -> V, split pair
};

inline RestrictedTriple restrict_source_triple(const Rep& M, const BlockIdem& e,
                                               const PromotedSubgroup& H, const Rep& X,
                                               const SourceTriple& lower,
                                               std::size_t dim_cap = default_dim_cap) {
  const auto& G = M.group();
  const auto& k = M.field();
  const Subgroup& Q = lower.pair.sub;
  Subgroup Hsub(G, H.to_parent);
  if (!Hsub.contains_subgroup(centralizer(G, Q)))
    throw std::invalid_argument("restrict_source_triple: centralizer of the subgroup is not inside H");
  if (!is_e_subpair(G, e.elem, lower.pair))
    throw std::invalid_argument("restrict_source_triple: lower pair is not an e-subpair");
  // X must be a summand of the restriction of M to H
  {
    Rep resM = restrict_rep(M, H);
    auto d = decompose_module(resM, dim_cap);
    bool found = false;
    for (const auto& s : d.summands)
      if (indecomposable_isomorphism(X, s.rep())) {
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument("restrict_source_triple: X is not a summand of the restriction");
  }
  // (Q, e_Q, V) must be the source triple of X over H
  {
    auto hbls = compute_blocks(H.group, k);
    const BlockIdem* bx = nullptr;
    for (const auto& b : hbls) {
      Mat act = action_matrix(X, b.elem);
      if (act == Mat::identity(k, X.dim())) bx = &b;
    }
    if (!bx)
      throw std::invalid_argument("restrict_source_triple: no block of H acts as identity on X");
    auto vx = vertex_source_green(X, *bx, dim_cap);
    std::vector<gid> vparent;
    for (auto s : vx.vertex.elem_ids()) vparent.push_back(H.to_parent[s]);
    std::sort(vparent.begin(), vparent.end());
    if (vparent != Q.elem_ids())
      throw std::invalid_argument("restrict_source_triple: triple subgroup is not the vertex of X");
    if (!(inject_to_parent(vx.local_block, H, G) == lower.pair.block_elem))
      throw std::invalid_argument("restrict_source_triple: triple block does not match X's vertex subpair");
    Rep cmp = detail::rep_on_group(vx.source.group(), lower.source);
    if (!indecomposable_isomorphism(cmp, vx.source))
      throw std::invalid_argument("restrict_source_triple: triple source does not match X's source");
  }
  // scan conjugates of the source triples of M's summands
  auto dM = decompose_module(M, dim_cap);
  std::vector<std::optional<SourceTriple>> triples(dM.summands.size());
  for (gid g = 0; g < G->order(); ++g) {
    for (std::size_t si = 0; si < dM.summands.size(); ++si) {
      if (!triples[si]) triples[si] = source_triple_of(dM.summands[si].rep(), e, dim_cap);
      const SourceTriple& ti = *triples[si];
      auto rids = conjugate_ids(G, ti.pair.sub.elem_ids(), g);
      if (!std::includes(rids.begin(), rids.end(), Q.elem_ids().begin(), Q.elem_ids().end()))
        continue;
      Subpair rp{Subgroup(G, rids), ti.pair.block_elem.conj_by(g)};
      auto chain = subpair_containment(G, k, lower.pair, rp);
      if (!chain.contained) continue;
      auto cr = conjugate_sub_rep(G, ti.vertex, ti.source, g);
      std::vector<gid> qids;
      for (auto x : Q.elem_ids()) qids.push_back(cr.sub.to_sub(G, x));
      std::sort(qids.begin(), qids.end());
      auto pq = promote(Subgroup(cr.sub.group, qids));
      Rep resW = restrict_rep(cr.rep, pq);
      auto d = decompose_module(resW, dim_cap);
      Rep V = detail::rep_on_group(pq.group, lower.source);
      for (const auto& s : d.summands) {
        auto W = indecomposable_isomorphism(V, s.rep());
        if (!W) continue;
        ModMap emb(V, resW, s.embed.T * (*W));
        ModMap prj(resW, V, (*W->inverse()) * s.project.T);
        return RestrictedTriple{SourceTriple{std::move(rp), std::move(cr.sub), std::move(cr.rep)},
                                si,
                                g,
                                std::move(chain),
                                std::move(emb),
                                std::move(prj)};
      }
    }
  }
  throw std::logic_error("restrict_source_triple: no conjugate source triple matches");
}

// -------- subpair-refined Brauer quotient --------

// The stabilizer N_G(P, e_P): normalizer elements of P fixing the block under
// conjugation.  It contains C_G(P), since blocks are central in k C_G(P).
inline Subgroup subpair_stabilizer(const GroupRef& G, const Subpair& sp) {
  auto N = normalizer(G, sp.sub);
  std::vector<gid> ids;
  for (auto n : N.elem_ids())
    if (sp.block_elem.conj_by(n) == sp.block_elem) ids.push_back(n);
  return Subgroup(G, ids);
}

// Brauer quotient refined by a subpair: the plain Brauer quotient at P of the
// cut e_P.M, carried over the stabilizer N_G(P, e_P), so the result is a
// module over N_G(P, e_P)/P on which the block acts as the identity
// (verified on the cut).
struct SubpairBrauerQuotient {
  Subgroup stabilizer;
  PromotedSubgroup stab_promoted;
  Rep truncated;                  // e_P.M over the stabilizer
  Mat cut_basis;                  // basis of e_P.M inside M, ambient coordinates
  BrauerQuotientModule quotient;  // Brauer quotient of the cut, over stabilizer/P
};

inline SubpairBrauerQuotient subpair_brauer_quotient(const Rep& M, const Subpair& sp) {
  const auto& G = M.group();
  const auto& k = M.field();
  Subgroup ns = subpair_stabilizer(G, sp);
  auto pns = promote(ns);
  Mat basis(k, 0, 0);
  Rep cut = idempotent_truncation(M, sp.block_elem, pns, &basis);
  AlgElem block_local = restrict_to_subgroup(sp.block_elem, pns);
  if (action_matrix(cut, block_local) != Mat::identity(k, cut.dim()))
    throw std::logic_error("subpair_brauer_quotient: block does not act as identity on the cut");
  std::vector<gid> pids;
  for (auto x : sp.sub.elem_ids()) pids.push_back(pns.to_sub(G, x));
  std::sort(pids.begin(), pids.end());
  Subgroup pin(pns.group, pids);
  auto bq = brauer_quotient_module(cut, pin);
  return SubpairBrauerQuotient{std::move(ns), std::move(pns), std::move(cut),
                               std::move(basis), std::move(bq)};
}

}  // namespace blocklab
