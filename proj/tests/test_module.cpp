// Tests for modules over group algebras: constructors, functors (restriction,
// induction, conjugation, inflation, duals, Hom and tensor), fixed points,
// relative traces, Brauer quotients of modules, homomorphism spaces, and
// bimodule tensor products.  Expected values come from independent counting
// oracles (coset fixed points, double cosets, free-orbit arguments) computed
// in the test itself, not from the code under test.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "blocklab/group.hpp"
#include "blocklab/module.hpp"

using namespace blocklab;

namespace {

// Number of left cosets of H fixed by g under left translation, counted
// directly from the coset partition.
std::size_t fixed_cosets(const GroupRef& G, const Subgroup& H, gid g) {
  auto cosets = left_cosets(G, H);
  std::size_t n = 0;
  for (const auto& c : cosets) {
    gid moved = G->mul(g, c[0]);
    if (std::binary_search(c.begin(), c.end(), moved)) ++n;
  }
  return n;
}

// Number of left cosets of H fixed by every element of P.
std::size_t cosets_fixed_by_subgroup(const GroupRef& G, const Subgroup& H, const Subgroup& P) {
  auto cosets = left_cosets(G, H);
  std::size_t n = 0;
  for (const auto& c : cosets) {
    bool ok = true;
    for (auto u : P.elem_ids())
      if (!std::binary_search(c.begin(), c.end(), G->mul(u, c[0]))) {
        ok = false;
        break;
      }
    if (ok) ++n;
  }
  return n;
}

fq trace_of(const Mat& m) {
  fq t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t = m.field()->add(t, m.at(i, i));
  return t;
}

// The subgroup generated by one element.
Subgroup cyclic_sub(const GroupRef& G, gid g) { return Subgroup::generated(G, {g}); }

// Smallest-id element of the given order.
gid element_of_order(const GroupRef& G, std::uint32_t n) {
  for (gid g = 0; g < G->order(); ++g)
    if (G->element_order(g) == n) return g;
  throw std::runtime_error("no element of that order");
}

}  // namespace

TEST_CASE("generating sets are small and generate") {
  auto G = build_group("S4");
  auto gens = generating_ids(G);
  CHECK(Subgroup::generated(G, gens).order() == G->order());
  CHECK(gens.size() <= 4);

  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  auto sub_gens = generating_ids(G, C3);
  CHECK(sub_gens.size() == 1);
  CHECK(Subgroup::generated(G, sub_gens).elem_ids() == C3.elem_ids());
}

TEST_CASE("representation constructors satisfy their defining formulas") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);

  SECTION("trivial") {
    auto T = Rep::trivial(G, k);
    CHECK(T.dim() == 1);
    for (gid g = 0; g < G->order(); ++g) CHECK(T.mat(g).at(0, 0) == 1);
  }

  SECTION("regular: g sends the basis vector at h to the one at gh") {
    auto R = Rep::regular(G, k);
    CHECK(R.dim() == G->order());
    for (gid g = 0; g < G->order(); ++g)
      for (gid h = 0; h < G->order(); ++h)
        for (gid i = 0; i < G->order(); ++i)
          CHECK(R.mat(g).at(i, h) == (i == G->mul(g, h) ? 1 : 0));
  }

  SECTION("natural permutation matches the point action") {
    auto N = Rep::natural_permutation(G, k);
    CHECK(N.dim() == G->degree());
    for (gid g = 0; g < G->order(); ++g) {
      const Perm& pm = G->perm(g);
      for (std::size_t x = 0; x < G->degree(); ++x)
        for (std::size_t y = 0; y < G->degree(); ++y)
          CHECK(N.mat(g).at(y, x) == (y == pm[x] ? 1 : 0));
    }
  }

  SECTION("coset permutation module has one coset-indicator column per coset") {
    auto C2 = cyclic_sub(G, element_of_order(G, 2));
    auto M = Rep::permutation_on_cosets(G, k, C2);
    CHECK(M.dim() == 3);
    // every matrix is a permutation matrix with trace = number of fixed cosets
    for (gid g = 0; g < G->order(); ++g) {
      for (std::size_t c = 0; c < 3; ++c) {
        std::size_t ones = 0;
        for (std::size_t r = 0; r < 3; ++r)
          if (M.mat(g).at(r, c) != 0) {
            CHECK(M.mat(g).at(r, c) == 1);
            ++ones;
          }
        CHECK(ones == 1);
      }
      CHECK(trace_of(M.mat(g)) == k->from_int(static_cast<std::int64_t>(fixed_cosets(G, C2, g))));
    }
  }
}

TEST_CASE("Jordan modules of a cyclic group of order three") {
  auto C3 = build_group("C3");
  auto k = FieldQ::make(3, 1);
  gid gen = element_of_order(C3, 3);

  SECTION("the two-dimensional module sends the generator to a unitriangular block") {
    auto J2 = Rep::jordan_block(C3, k, 2);
    Mat expect = Mat::from_rows(k, {{1, 1}, {0, 1}});
    CHECK(J2.mat(gen) == expect);
    CHECK(J2.mat(C3->identity()) == Mat::identity(k, 2));
  }

  SECTION("dimension one is the trivial module") {
    auto J1 = Rep::jordan_block(C3, k, 1);
    CHECK(J1.same_matrices(Rep::trivial(C3, k)));
    for (gid g = 0; g < 3; ++g) CHECK(J1.mat(g) == Mat::identity(k, 1));
  }

  SECTION("dimension three is free: the generator has one Jordan block of full size") {
    auto J3 = Rep::jordan_block(C3, k, 3);
    Mat N = J3.mat(gen) - Mat::identity(k, 3);
    CHECK(N * N != Mat(k, 3, 3));
    CHECK(N * N * N == Mat(k, 3, 3));
  }

  SECTION("invalid sizes and non-cyclic groups are rejected") {
    CHECK_THROWS(Rep::jordan_block(C3, k, 0));
    CHECK_THROWS(Rep::jordan_block(C3, k, 4));
    auto V4 = build_group("C2xC2");
    auto f2 = FieldQ::make(2, 1);
    CHECK_THROWS(Rep::jordan_block(V4, f2, 2));
    CHECK_THROWS(Rep::jordan_block(build_group("C6"), k, 2));
  }
}

TEST_CASE("non-multiplicative matrix families are rejected") {
  auto G = build_group("C2");
  auto k = FieldQ::make(3, 1);
  std::vector<Mat> bad{Mat::identity(k, 1), Mat::from_rows(k, {{2}})};
  CHECK_NOTHROW(Rep(G, k, bad));  // the sign module is fine
  std::vector<Mat> worse{Mat::identity(k, 2), Mat::from_rows(k, {{1, 1}, {0, 1}})};
  CHECK_THROWS(Rep(G, k, worse));  // that matrix has order three, not two
  std::vector<Mat> no_id{Mat::from_rows(k, {{2}}), Mat::identity(k, 1)};
  CHECK_THROWS(Rep(G, k, no_id));
}

TEST_CASE("group algebra elements act by the matching matrix sums") {
  auto G = build_group("S3");
  auto k = FieldQ::make(2, 1);
  auto N = Rep::natural_permutation(G, k);
  gid a = 1, b = 4;
  auto e = AlgElem::delta(G, k, a) + AlgElem::delta(G, k, b);
  CHECK(action_matrix(N, e) == N.mat(a) + N.mat(b));

  // the all-group sum acts on the trivial module by |G| mod p
  auto T = Rep::trivial(G, k);
  AlgElem all = AlgElem::zero(G, k);
  for (gid g = 0; g < G->order(); ++g) all = all + AlgElem::delta(G, k, g);
  CHECK(action_matrix(T, all).at(0, 0) == k->from_int(static_cast<std::int64_t>(G->order())));
}

TEST_CASE("sums, tensors, duals, and Hom modules have the expected shapes") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto N = Rep::natural_permutation(G, k);
  auto T = Rep::trivial(G, k);

  CHECK(direct_sum(N, T).dim() == 4);
  CHECK(tensor(N, N).dim() == 9);
  CHECK(dual(N).dim() == 3);
  CHECK(hom_rep(N, T).dim() == 3);
  CHECK(end_rep(N).dim() == 9);

  SECTION("permutation modules are self-dual on the nose") {
    // permutation matrices are orthogonal, so g -> transpose of inverse fixes them
    CHECK(dual(N).same_matrices(N));
  }

  SECTION("tensoring with the trivial module changes nothing") {
    CHECK(tensor(T, N).same_matrices(N));
  }

  SECTION("Hom from the trivial module is the target itself") {
    CHECK(hom_rep(T, N).same_matrices(N));
  }

  SECTION("direct sum traces add and tensor traces multiply") {
    for (gid g = 0; g < G->order(); ++g) {
      CHECK(trace_of(direct_sum(N, T).mat(g)) ==
            k->add(trace_of(N.mat(g)), trace_of(T.mat(g))));
      CHECK(trace_of(tensor(N, N).mat(g)) ==
            k->mul(trace_of(N.mat(g)), trace_of(N.mat(g))));
    }
  }
}

TEST_CASE("restriction keeps matrices and conjugation twists relabel them") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto N = Rep::natural_permutation(G, k);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  auto pc = promote(C3);

  auto R = restrict_rep(N, pc);
  CHECK(R.dim() == 3);
  for (gid i = 0; i < pc.group->order(); ++i) CHECK(R.mat(i) == N.mat(pc.to_parent[i]));

  SECTION("cosets of a normal subgroup are fixed by it after restriction") {
    auto M = Rep::permutation_on_cosets(G, k, C3);
    auto RM = restrict_rep(M, pc);
    for (gid i = 0; i < pc.group->order(); ++i) CHECK(RM.mat(i) == Mat::identity(k, 2));
  }

  SECTION("the defining formula of the twist and its canonical isomorphism") {
    gid g = element_of_order(G, 2);
    auto Tw = conjugate_twist(N, g);
    for (gid x = 0; x < G->order(); ++x)
      CHECK(Tw.mat(x) == N.mat(G->mul(G->mul(G->inv(g), x), g)));
    // left multiplication by N(g) intertwines the twist with the original
    CHECK_NOTHROW(ModMap(Tw, N, N.mat(g)));
  }

  SECTION("twisting a subgroup module lands on the conjugate subgroup") {
    auto J = restrict_rep(N, pc, "nat|C3");
    gid g = element_of_order(G, 2);
    auto cj = conjugate_sub_rep(G, pc, J, g);
    // C3 is normal, so the carrier subgroup is unchanged
    CHECK(Subgroup(G, cj.sub.to_parent).elem_ids() == C3.elem_ids());
    for (gid y = 0; y < cj.sub.group->order(); ++y) {
      gid t = cj.sub.to_parent[y];
      gid x = G->mul(G->mul(G->inv(g), t), g);
      CHECK(cj.rep.mat(y) == J.mat(pc.to_sub(G, x)));
    }
  }
}

TEST_CASE("induction matches coset-counting oracles") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto C2 = cyclic_sub(G, element_of_order(G, 2));
  auto pc = promote(C2);

  SECTION("inducing the trivial module gives the coset permutation module") {
    auto ind = induce(G, pc, Rep::trivial(pc.group, k));
    CHECK(ind.dim() == 3);
    for (gid g = 0; g < G->order(); ++g)
      CHECK(trace_of(ind.mat(g)) == k->from_int(static_cast<std::int64_t>(fixed_cosets(G, C2, g))));
  }

  SECTION("inducing from the trivial subgroup gives a free module") {
    auto one = promote(Subgroup::trivial(G));
    auto ind = induce(G, one, Rep::trivial(one.group, k));
    CHECK(ind.dim() == G->order());
    for (gid g = 0; g < G->order(); ++g) {
      fq expect = (g == G->identity()) ? k->from_int(6) : 0;
      CHECK(trace_of(ind.mat(g)) == expect);
    }
  }

  SECTION("adjunction: maps out of an induced module match fixed vectors") {
    auto N = Rep::natural_permutation(G, k);
    auto ind = induce(G, pc, Rep::trivial(pc.group, k));
    std::size_t lhs = hom_space(ind, N).cols();
    std::size_t rhs = fixed_point_basis(N, C2).cols();
    CHECK(lhs == rhs);
    CHECK(lhs == 2);  // the two-point stabilizer fixes a 2-dimensional subspace
  }
}

TEST_CASE("inflation pulls back along the quotient projection") {
  auto G = build_group("S3");
  auto k = FieldQ::make(5, 1);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  auto full = Subgroup::full(G);
  auto qg = quotient_group(full, C3);
  REQUIRE(qg.group->order() == 2);

  // the one-dimensional module of the order-two quotient sending the
  // nontrivial class to -1
  gid nt = 1 - qg.group->identity();
  std::vector<Mat> sgn_mats(2, Mat::identity(k, 1));
  sgn_mats[nt] = Mat::from_rows(k, {{k->neg(1)}});
  Rep sgn(qg.group, k, std::move(sgn_mats), "sign");

  auto infl = inflate(qg, sgn);
  CHECK(infl.dim() == 1);
  for (gid i = 0; i < qg.source.group->order(); ++i) {
    gid parent = qg.source.to_parent[i];
    bool in_C3 = std::binary_search(C3.elem_ids().begin(), C3.elem_ids().end(), parent);
    CHECK(infl.mat(i).at(0, 0) == (in_C3 ? fq{1} : k->neg(1)));
  }
}

TEST_CASE("fixed points and relative traces obey the counting laws") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  auto one = Subgroup::trivial(G);

  SECTION("trace from the trivial subgroup on the trivial module is the index") {
    auto T = Rep::trivial(G, k);
    auto td = fixed_points_and_trace(T, C3, one);
    CHECK(td.fixed_p.cols() == 1);
    CHECK(td.trace.at(0, 0) == k->from_int(3));  // = 0 mod 3
    CHECK(td.trace_image.cols() == 0);
  }

  SECTION("free orbits: fixed points of the regular module are exactly traces") {
    auto R = Rep::regular(G, k);
    auto td = fixed_points_and_trace(R, C3, one);
    CHECK(td.fixed_p.cols() == 2);  // one fixed line per C3-orbit on G
    CHECK(same_subspace(td.fixed_p, td.trace_image));
  }

  SECTION("fixed space of the natural module is the diagonal line") {
    auto N = Rep::natural_permutation(G, k);
    Mat F = fixed_point_basis(N, C3);
    REQUIRE(F.cols() == 1);
    CHECK(F.at(0, 0) == F.at(1, 0));
    CHECK(F.at(1, 0) == F.at(2, 0));
  }

  SECTION("trace image is inside the bigger fixed space by construction") {
    auto N = Rep::natural_permutation(G, k);
    auto C2 = cyclic_sub(G, element_of_order(G, 2));
    auto td = fixed_points_and_trace(N, C2, one);
    CHECK(subspace_contains(td.fixed_p, td.trace_image));
  }
}

TEST_CASE("maximal subgroups of small p-groups are enumerated completely") {
  SECTION("D8 has three maximal subgroups, all of order four") {
    auto G = build_group("D8");
    auto ms = maximal_subgroups_of_p_group(G, Subgroup::full(G));
    REQUIRE(ms.size() == 3);
    for (const auto& ids : ms) CHECK(ids.size() == 4);
    // they are distinct and each contains the centre
    CHECK(ms[0] != ms[1]);
    CHECK(ms[1] != ms[2]);
  }

  SECTION("a cyclic group has a unique maximal subgroup") {
    auto G = build_group("C9");
    auto ms = maximal_subgroups_of_p_group(G, Subgroup::full(G));
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].size() == 3);
  }

  SECTION("the trivial group has none") {
    auto G = build_group("C3");
    CHECK(maximal_subgroups_of_p_group(G, Subgroup::trivial(G)).empty());
  }
}

TEST_CASE("Brauer quotients of permutation modules count fixed cosets") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));

  SECTION("three points permuted transitively leave nothing") {
    auto N = Rep::natural_permutation(G, k);
    auto bq = brauer_quotient_module(N, C3);
    CHECK(bq.dim == 0);
  }

  SECTION("two fixed cosets survive, with the flip action of the quotient") {
    auto M = Rep::permutation_on_cosets(G, k, C3);
    auto bq = brauer_quotient_module(M, C3);
    CHECK(bq.dim == cosets_fixed_by_subgroup(G, C3, C3));
    CHECK(bq.dim == 2);
    REQUIRE(bq.weyl.group->order() == 2);  // normalizer is all of the group
    gid nt = 1 - bq.weyl.group->identity();
    // the flip swaps the two cosets: trace zero, squares to the identity
    CHECK(trace_of(bq.action.mat(nt)) == 0);
    CHECK(bq.action.mat(nt) * bq.action.mat(nt) == Mat::identity(k, 2));
  }

  SECTION("free modules vanish for every nontrivial p-subgroup") {
    auto R = Rep::regular(G, k);
    CHECK(brauer_quotient_module(R, C3).dim == 0);
    auto D = build_group("D8");
    auto f2 = FieldQ::make(2, 1);
    auto Z = cyclic_sub(D, element_of_order(D, 2));  // may or may not be central
    CHECK(brauer_quotient_module(Rep::regular(D, f2), Subgroup::full(D)).dim == 0);
    CHECK(brauer_quotient_module(Rep::regular(D, f2), Z).dim == 0);
  }

  SECTION("the trivial module always survives with dimension one") {
    auto T = Rep::trivial(G, k);
    auto bq = brauer_quotient_module(T, C3);
    CHECK(bq.dim == 1);
    for (gid w = 0; w < bq.weyl.group->order(); ++w)
      CHECK(bq.action.mat(w) == Mat::identity(k, 1));
  }

  SECTION("passing the subgroup itself as normalizer gives a trivial quotient group") {
    auto M = Rep::permutation_on_cosets(G, k, C3);
    auto bq = brauer_quotient_module(M, C3, C3);
    CHECK(bq.dim == 2);
    CHECK(bq.weyl.group->order() == 1);
  }

  SECTION("projection and section compose to the identity on the quotient") {
    auto M = Rep::permutation_on_cosets(G, k, C3);
    auto bq = brauer_quotient_module(M, C3);
    CHECK(bq.proj * bq.section == Mat::identity(k, bq.dim));
  }
}

TEST_CASE("homomorphism spaces have double-coset dimensions") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto T = Rep::trivial(G, k);
  auto N = Rep::natural_permutation(G, k);
  auto R = Rep::regular(G, k);
  auto C2 = cyclic_sub(G, element_of_order(G, 2));

  CHECK(hom_space(T, T).cols() == 1);
  CHECK(hom_space(N, T).cols() == 1);  // only the coordinate-sum functional
  CHECK(hom_space(T, N).cols() == 1);  // only the diagonal line
  CHECK(hom_space(R, R).cols() == G->order());  // the opposite algebra

  SECTION("endomorphisms of a coset module are counted by double cosets") {
    std::size_t dc = double_cosets(G, C2, C2).reps.size();
    CHECK(hom_space(N, N).cols() == dc);
    CHECK(dc == 2);
  }

  SECTION("restricting the equivariance subgroup can only grow the space") {
    std::size_t over_G = hom_space(N, N).cols();
    std::size_t over_C2 = hom_space_over(N, N, C2).cols();
    std::size_t over_all = hom_space_over(N, N, Subgroup::full(G)).cols();
    CHECK(over_C2 >= over_G);
    CHECK(over_all == over_G);
    CHECK(hom_space_over(N, N, Subgroup::trivial(G)).cols() == 9);
  }

  SECTION("every column is an actual equivariant map") {
    Mat H = hom_space(N, N);
    for (std::size_t j = 0; j < H.cols(); ++j) {
      Mat X = unflatten_row_major(k, Mat::column(k, H.col(j)), 3, 3);
      CHECK_NOTHROW(ModMap(N, N, X));
    }
  }

  SECTION("maps that do not intertwine are rejected") {
    Mat X(k, 3, 3);
    X.at(0, 0) = 1;  // a rank-one projector onto a non-invariant line
    CHECK_THROWS(ModMap(N, N, X));
  }
}

TEST_CASE("invariant subspaces become modules in their own coordinates") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto N = Rep::natural_permutation(G, k);

  Mat diag(k, 3, 1);
  diag.at(0, 0) = diag.at(1, 0) = diag.at(2, 0) = 1;
  auto S = subrep(N, diag, "diag");
  CHECK(S.dim() == 1);
  for (gid g = 0; g < G->order(); ++g) CHECK(S.mat(g) == Mat::identity(k, 1));

  Mat axis(k, 3, 1);
  axis.at(0, 0) = 1;
  CHECK_THROWS(subrep(N, axis));
}

TEST_CASE("idempotent truncation cuts out the coset-sum module") {
  auto G = build_group("S3");
  auto k = FieldQ::make(2, 1);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  auto C2 = cyclic_sub(G, element_of_order(G, 2));

  // over characteristic two the full sum over a normal order-three subgroup
  // is idempotent and central
  AlgElem e = AlgElem::zero(G, k);
  for (auto c : C3.elem_ids()) e = e + AlgElem::delta(G, k, c);
  REQUIRE(e.is_idempotent());
  REQUIRE(e.is_central());

  auto R = Rep::regular(G, k);
  Mat basis(k, 0, 0);
  auto cut = idempotent_truncation(R, e, promote(C2), &basis);
  CHECK(cut.dim() == 2);  // one coset sum per coset of the order-three subgroup
  CHECK(basis.cols() == 2);
  // the reflection swaps the two coset sums
  gid t = element_of_order(G, 2);
  gid t_sub = promote(C2).to_sub(G, t);
  CHECK(trace_of(cut.mat(t_sub)) == 0);
  CHECK(cut.mat(t_sub) * cut.mat(t_sub) == Mat::identity(k, 2));

  SECTION("elements moved by conjugation or with non-idempotent action are rejected") {
    // a reflection inverts the rotation, so a single rotation delta is moved
    AlgElem moved = AlgElem::delta(G, k, element_of_order(G, 3));
    CHECK_THROWS(idempotent_truncation(R, moved, promote(C2)));
    // the all-group sum is central but squares to zero, not to itself
    AlgElem all = AlgElem::zero(G, k);
    for (gid g = 0; g < G->order(); ++g) all = all + AlgElem::delta(G, k, g);
    REQUIRE(all.is_central());
    CHECK_THROWS(idempotent_truncation(R, all, promote(C2)));
    // the identity delta passes trivially
    CHECK_NOTHROW(idempotent_truncation(R, AlgElem::delta(G, k, G->identity()), promote(C2)));
  }
}

TEST_CASE("tensoring the whole group algebra over a subgroup is induction") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  auto pc = promote(C3);
  auto V = Rep::jordan_block(pc.group, k, 2);

  Mat W = Mat::identity(k, G->order());  // all of the group algebra
  auto T = bimodule_tensor(G, k, W, C3, pc, V);
  auto I = induce(G, pc, V);
  REQUIRE(T.dim() == I.dim());
  CHECK(T.dim() == 4);
  // isomorphic modules have equal traces everywhere
  for (gid g = 0; g < G->order(); ++g) CHECK(trace_of(T.mat(g)) == trace_of(I.mat(g)));
}

TEST_CASE("algebra cuts produce left-stable subspaces of the right size") {
  auto G = build_group("S3");
  auto k = FieldQ::make(2, 1);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  AlgElem e = AlgElem::zero(G, k);
  for (auto c : C3.elem_ids()) e = e + AlgElem::delta(G, k, c);
  AlgElem one = AlgElem::one(G, k);

  Mat full = algebra_cut(G, k, one, one);
  CHECK(full.cols() == G->order());

  Mat cut = algebra_cut(G, k, one, e);
  CHECK(cut.cols() == 2);  // spanned by the two coset sums

  Mat both = algebra_cut(G, k, e, e);
  CHECK(both.cols() == 2);  // e is central so the two cuts agree
}

TEST_CASE("maps between modules descend to their Brauer quotients") {
  auto G = build_group("S3");
  auto k = FieldQ::make(3, 1);
  auto C3 = cyclic_sub(G, element_of_order(G, 3));
  Rep M = Rep::permutation_on_cosets(G, k, C3);  // Brauer quotient of dim 2
  Rep N = Rep::trivial(G, k);                    // Brauer quotient of dim 1
  auto bm = brauer_quotient_module(M, C3);
  auto bn = brauer_quotient_module(N, C3);
  REQUIRE(bm.dim == 2);
  REQUIRE(bn.dim == 1);

  // the augmentation M -> k and the diagonal k -> M
  Mat aug(k, 1, 2);
  aug.at(0, 0) = 1;
  aug.at(0, 1) = 1;
  Mat diag(k, 2, 1);
  diag.at(0, 0) = 1;
  diag.at(1, 0) = 1;
  ModMap u(M, N, aug);
  ModMap v(N, M, diag);

  Mat bu = brauer_quotient_map(bm, bn, u);
  Mat bv = brauer_quotient_map(bn, bm, v);
  CHECK(bu.rows() == 1);
  CHECK(bu.cols() == 2);
  CHECK_FALSE(bu == Mat(k, 1, 2));

  SECTION("identity and composition laws") {
    ModMap idm(M, M, Mat::identity(k, 2));
    CHECK(brauer_quotient_map(bm, bm, idm) == Mat::identity(k, 2));
    ModMap vu(M, M, v.T * u.T);
    CHECK(brauer_quotient_map(bm, bm, vu) == bv * bu);
  }

  SECTION("the descended map intertwines the quotient group actions") {
    CHECK_NOTHROW(ModMap(bm.action, bn.action, bu));
    CHECK_NOTHROW(ModMap(bn.action, bm.action, bv));
  }

  SECTION("maps from a free module descend through a zero quotient") {
    Rep R = Rep::regular(G, k);
    auto br = brauer_quotient_module(R, C3);
    REQUIRE(br.dim == 0);
    // the orbit-sum trace image is nonzero, so descent is genuinely checked
    REQUIRE(br.traced.cols() == 2);
    Mat ones(k, 1, G->order());
    for (gid g = 0; g < G->order(); ++g) ones.at(0, g) = 1;
    ModMap w(R, N, ones);
    Mat bw = brauer_quotient_map(br, bn, w);
    CHECK(bw.rows() == 1);
    CHECK(bw.cols() == 0);
  }
}
