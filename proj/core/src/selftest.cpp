#include "selftest.hpp"

#include <functional>
#include <random>

#include "fonctex/error.hpp"
#include "fonctex/hochschild.hpp"
#include "fonctex/homalg.hpp"
#include "fonctex/polyfun.hpp"
#include "fonctex/support.hpp"

namespace fonctex {

namespace {

struct Runner {
  std::vector<SelftestResult> out;
  std::string module;

  void check(const std::string& name, const std::function<bool()>& fn) {
    SelftestResult r{module, name, false, ""};
    try {
      r.pass = fn();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
};

// Same objects, hom sizes and composition on every composable pair.
bool same_tables(const FinCat& a, const FinCat& b) {
  if (a.num_objects() != b.num_objects()) return false;
  const size_t n = a.num_objects();
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      if (a.hom_size(x, y) != b.hom_size(x, y)) return false;
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z)
        for (HomIdx f = 0; f < a.hom_size(x, y); ++f)
          for (HomIdx g = 0; g < a.hom_size(y, z); ++g)
            if (a.compose(Mor{y, z, g}, Mor{x, y, f}) != b.compose(Mor{y, z, g}, Mor{x, y, f})) return false;
  return true;
}

FMat random_mat(std::mt19937_64& rng, uint32_t p, size_t r, size_t c) {
  FMat m(p, r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.set(i, j, static_cast<uint32_t>(rng() % p));
  return m;
}

void exactalg(Runner& t) {
  t.module = "exactalg";
  const FinRing z4(4), f2(2);
  t.check("identity times X is X over Z/4", [&] {
    const RMat x(z4, 2, 2, {1, 2, 3, 0});
    return mat_mul(RMat::identity(z4, 2), x) == x;
  });
  t.check("[2][2] = 0 over Z/4", [&] { return mat_mul(RMat(z4, 1, 1, {2}), RMat(z4, 1, 1, {2})) == RMat(z4, 1, 1, {0}); });
  t.check("[1 1][1;1] = 0 over F_2", [&] { return mat_mul(RMat(f2, 1, 2, {1, 1}), RMat(f2, 2, 1, {1, 1})) == RMat(f2, 1, 1, {0}); });
  t.check("rank of the 3x3 identity is 3", [] { return rank(FMat::identity(2, 3)) == 3; });
  t.check("rank of the all-ones 2x2 is 1", [] { return rank(FMat::from_rows(2, {{1, 1}, {1, 1}})) == 1; });
  t.check("zero 4x7 has rank 0 and no pivots", [] {
    const RrefResult r = rref(FMat(2, 4, 7));
    return r.rank == 0 && r.pivots.empty();
  });
  t.check("kernel of [1 1] is spanned by (1,1)", [] {
    const FMat k = kernel_basis(FMat::from_rows(2, {{1, 1}}));
    return k.cols() == 1 && k.get(0, 0) == 1 && k.get(1, 0) == 1;
  });
  t.check("kernel of the identity is zero", [] { return kernel_basis(FMat::identity(3, 4)).cols() == 0; });
  t.check("kernel of zero 2x3 has dimension 3", [] { return kernel_basis(FMat(2, 2, 3)).cols() == 3; });
  t.check("solve with A = I returns b", [] {
    const std::vector<uint32_t> b{2, 0, 1};
    return solve(FMat::identity(3, 3), b) == std::optional<std::vector<uint32_t>>(b);
  });
  t.check("solve with A = 0 and b != 0 has no solution", [] {
    const std::vector<uint32_t> b{1, 0};
    return !solve(FMat(2, 2, 2), b).has_value();
  });
  t.check("solve [1 1] x = 1 returns the least solution (0,1)", [] {
    const std::vector<uint32_t> b{1};
    return solve(FMat::from_rows(2, {{1, 1}}), b) == std::optional<std::vector<uint32_t>>({0, 1});
  });
  t.check("F_2 has 4 matrices of shape 2x1", [&] { return enumerate_hom(f2, 2, 1).size() == 4; });
  t.check("Z/4 has 4 matrices of shape 1x1 with units 1 and 3", [&] {
    size_t units = 0;
    for (const RMat& m : enumerate_hom(z4, 1, 1)) units += z4.is_unit(m.at(0, 0));
    return enumerate_hom(z4, 1, 1).size() == 4 && units == 2 && z4.is_unit(1) && z4.is_unit(3);
  });
  t.check("exactly one 0 x m matrix", [&] { return enumerate_hom(z4, 0, 3).size() == 1 && enumerate_hom(f2, 3, 0).size() == 1; });
}

void fincat(Runner& t) {
  t.module = "fincat";
  const FinRing f2(2), z4(4);
  t.check("P_2(F_2) has 3 objects and |Hom(A1,A2)| = 4", [&] {
    const FinCat c = truncated_additive(f2, 2);
    return c.num_objects() == 3 && c.hom_size(1, 2) == 4;
  });
  t.check("P_1(Z/4) has |End(A1)| = 4", [&] { return truncated_additive(z4, 1).hom_size(1, 1) == 4; });
  t.check("P_0 has one object and one morphism", [&] {
    const FinCat c = truncated_additive(z4, 0);
    return c.num_objects() == 1 && c.total_morphisms() == 1;
  });
  t.check("M_2(F_2) has 16 elements", [&] { return monoid_category(f2, 2).hom_size(0, 0) == 16; });
  t.check("M_1(F_2) is the multiplicative monoid {0,1}", [&] {
    const FinCat m = monoid_category(f2, 1);
    for (HomIdx a = 0; a < 2; ++a)
      for (HomIdx b = 0; b < 2; ++b)
        if (m.compose(Mor{0, 0, a}, Mor{0, 0, b}).idx != a * b) return false;
    return m.hom_size(0, 0) == 2;
  });
  t.check("M_1(Z/4) has 4 elements", [&] { return monoid_category(z4, 1).hom_size(0, 0) == 4; });
  const FinCat p2 = truncated_additive(f2, 2);
  t.check("full subcategory on A2 has the tables of M_2(F_2)", [&] {
    return same_tables(full_subcategory(p2, {2}).cat, monoid_category(f2, 2));
  });
  t.check("full subcategory on all objects is the identity", [&] {
    const SubcategoryData s = full_subcategory(p2, {0, 1, 2});
    for (ObjId x = 0; x < 3; ++x)
      if (s.inclusion.on_object(x) != x) return false;
    return same_tables(s.cat, p2);
  });
  t.check("full subcategory on A0 is terminal", [&] {
    return same_tables(full_subcategory(p2, {0}).cat, terminal_category());
  });
  t.check("opposite of opposite has the same tables", [&] { return same_tables(opposite(opposite(p2)), p2); });
  t.check("product hom-sets multiply", [&] {
    const FinCat p1 = truncated_additive(f2, 1);
    const ProductData pd = product(p2, p1);
    for (ObjId a = 0; a < 3; ++a)
      for (ObjId b = 0; b < 2; ++b)
        for (ObjId a2 = 0; a2 < 3; ++a2)
          for (ObjId b2 = 0; b2 < 2; ++b2)
            if (pd.cat.hom_size(pd.object(a, b), pd.object(a2, b2)) != p2.hom_size(a, a2) * p1.hom_size(b, b2))
              return false;
    return true;
  });
  t.check("product with the terminal category has the same tables", [&] {
    const FinCat p1 = truncated_additive(f2, 1);
    return same_tables(product(p1, terminal_category()).cat, p1);
  });
  t.check("reduction Z/4 -> F_2 maps End(A1) onto {0,1}", [&] {
    const CatFunctor r = reduction_functor(z4, 2, 1);
    std::vector<HomIdx> img;
    for (HomIdx a = 0; a < 4; ++a) img.push_back(r.on_morphism(Mor{1, 1, a}).idx);
    return img == std::vector<HomIdx>{0, 1, 0, 1};
  });
  t.check("reduction with x = 0 is bijective on morphisms", [&] {
    const CatFunctor r = reduction_functor(z4, 0, 1);
    for (HomIdx a = 0; a < 4; ++a)
      if (r.on_morphism(Mor{1, 1, a}).idx != a) return false;
    return r.target().hom_size(1, 1) == 4;
  });
  t.check("reduction commutes with composition", [&] {
    return validate_functor(reduction_functor(z4, 2, 2)).ok;
  });
}

void funrep(Runner& t) {
  t.module = "funrep";
  const FinCat p2 = truncated_additive(FinRing(2), 2);
  const FunRep proj1 = standard_projective(p2, 1, 2);
  const FunRep id = identity_functor_rep(p2, 2);
  t.check("P(A1) on P_2(F_2) has dims (1,2,4)", [&] { return proj1.dims() == std::vector<size_t>{1, 2, 4}; });
  t.check("P(A0) is the constant functor", [&] { return same_data(standard_projective(p2, 0, 2), constant_functor(p2, 2)); });
  t.check("projective actions are maps of basis sets", [&] {
    for (const auto& [m, a] : tabulate(proj1))
      for (size_t c = 0; c < a.cols(); ++c) {
        const FVec col = a.column(c);
        if (col.nnz() != 1 || col.get(col.first_nonzero()) != 1) return false;
      }
    return true;
  });
  t.check("dim Hom(k, k) = 1", [&] { return hom_space(constant_functor(p2, 2), constant_functor(p2, 2)).size() == 1; });
  t.check("dim Hom(P(A1), P(A1)) = 2", [&] { return hom_space(proj1, proj1).size() == 2; });
  t.check("Yoneda sends 0 to the zero transformation", [&] {
    const NatTrans z = yoneda_from_vector(proj1, 1, id, FVec(2, 1));
    for (ObjId x = 0; x < 3; ++x)
      if (!z.at(x).is_zero()) return false;
    return true;
  });
  t.check("Yoneda round trip on P(A1)(A1)", [&] {
    for (uint32_t a = 0; a < 2; ++a)
      for (uint32_t b = 0; b < 2; ++b) {
        FVec v(2, 2);
        v.set(0, a);
        v.set(1, b);
        if (!(yoneda_to_vector(yoneda_from_vector(proj1, 1, proj1, v), 1) == v)) return false;
      }
    return true;
  });
  t.check("kernel of the identity is zero", [&] { return kernel(identity_nat(id)).rep.is_zero(); });
  t.check("cokernel of 0 -> F is F", [&] {
    return cokernel(zero_nat(zero_functor(p2, 2), id)).rep.dims() == id.dims();
  });
  t.check("rank-nullity for transformations", [&] {
    const FunRep t2 = schur_construction(id, SchurKind::Tensor, 2);
    for (const FunRep& src : {proj1, id, t2})
      for (const NatTrans& eta : hom_space(src, t2)) {
        const FunRep k = kernel(eta).rep, i = image(eta).rep;
        for (ObjId x = 0; x < 3; ++x)
          if (k.dim(x) + i.dim(x) != src.dim(x)) return false;
      }
    return true;
  });
  t.check("F (x) k = F", [&] { return same_data(tensor_pointwise(id, constant_functor(p2, 2)), id); });
  t.check("precomposition with the identity", [&] { return same_data(precompose(id, identity_functor(p2)), id); });
  t.check("restriction of P(A2) to {A1, A2}", [&] {
    const SubcategoryData s = full_subcategory(p2, {1, 2});
    return precompose(standard_projective(p2, 2, 2), s.inclusion).dims() == std::vector<size_t>{4, 16};
  });
  t.check("constant functor pulled back along reduction", [&] {
    const CatFunctor r = reduction_functor(FinRing(4), 2, 1);
    return same_data(precompose(constant_functor(r.target(), 2), r), constant_functor(r.source(), 2));
  });
  t.check("linearized representable is the standard projective", [&] {
    return same_data(linearize(hom_set_functor(p2, 1), 2), proj1);
  });
  t.check("linearized point is the constant functor", [&] {
    return same_data(linearize(singleton_set_functor(p2), 2), constant_functor(p2, 2));
  });
  t.check("k[X x Y] = k[X] (x) k[Y]", [&] {
    const SetFunRep a = hom_set_functor(p2, 1), b = hom_set_functor(p2, 0);
    return same_data(linearize(set_product(a, b), 2), tensor_pointwise(linearize(a, 2), linearize(b, 2)));
  });
  t.check("seeds spanning every value generate F", [&] {
    std::vector<std::pair<ObjId, FVec>> seeds;
    for (ObjId x = 0; x < 3; ++x)
      for (size_t i = 0; i < id.dim(x); ++i) seeds.emplace_back(x, FVec::unit(2, id.dim(x), i));
    return subfunctor_generated(id, seeds).rep.dims() == id.dims();
  });
  t.check("no seeds generate 0", [&] { return subfunctor_generated(id, {}).rep.is_zero(); });
  t.check("id_t generates P(t)", [&] {
    const FVec e = FVec::unit(2, 2, proj1.cat().id(1).idx);
    return subfunctor_generated(proj1, {{ObjId{1}, e}}).rep.dims() == proj1.dims();
  });
  const FinCat p3 = truncated_additive(FinRing(2), 3);
  const FunRep id3 = identity_functor_rep(p3, 2);
  t.check("Lambda^2 on P_3(F_2) has dims (0,0,1,3)", [&] {
    return schur_construction(id3, SchurKind::Exterior, 2).dims() == std::vector<size_t>{0, 0, 1, 3};
  });
  t.check("T^2 has dims n^2", [&] {
    return schur_construction(id3, SchurKind::Tensor, 2).dims() == std::vector<size_t>{0, 1, 4, 9};
  });
  t.check("S^2 has dims n(n+1)/2 over F_2 and F_3", [&] {
    const FinCat q3 = truncated_additive(FinRing(3), 3);
    const std::vector<size_t> want{0, 1, 3, 6};
    return schur_construction(id3, SchurKind::Symmetric, 2).dims() == want &&
           schur_construction(identity_functor_rep(q3, 3), SchurKind::Symmetric, 2).dims() == want;
  });
}

void homalg(Runner& t) {
  t.module = "homalg";
  const FinCat p2 = truncated_additive(FinRing(2), 2);
  const FunRep id = identity_functor_rep(p2, 2);
  t.check("0 -> F -> F -> 0 by the identity is exact", [&] {
    FunChainCx cx;
    cx.lo = 0;
    cx.terms = {id, id};
    cx.diffs = {NatTrans(), identity_nat(id)};
    for (ObjId x = 0; x < 3; ++x)
      for (int n = 0; n <= 1; ++n)
        if (homology(cx.at(x), n).dim != 0) return false;
    return true;
  });
  t.check("zero differentials leave the terms", [&] {
    const auto cx = dense_complex(3, 0, {FMat(3, 0, 2), FMat(3, 2, 4), FMat(3, 4, 1)});
    return homology(cx, 0).dim == 2 && homology(cx, 1).dim == 4 && homology(cx, 2).dim == 1;
  });
  t.check("dim H_n = dim ker d_n - rank d_{n+1}", [&] {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const uint32_t p = trial % 2 ? 3 : 2;
      const size_t a = rng() % 5, b = rng() % 6, c = rng() % 5;
      const FMat d1 = random_mat(rng, p, a, b);
      const FMat k = kernel_basis(d1);
      const FMat d2 = k * random_mat(rng, p, k.cols(), c);
      const auto cx = dense_complex(p, 0, {FMat(p, 0, a), d1, d2});
      if (homology(cx, 1).dim != (b - rank(d1)) - rank(d2)) return false;
    }
    return true;
  });
  t.check("a standard projective is its own cover", [&] {
    for (ObjId s = 0; s < 3; ++s) {
      const PresentationCert cert = present(standard_projective(p2, s, 2), 1);
      if (cert.stages[0].gen_objects != std::vector<ObjId>{s}) return false;
      for (const CoverStage& st : cert.stages)
        if (st.kernel.rep && !st.kernel.rep.is_zero()) return false;
      if (cert.stages[1].num_generators() != 0) return false;
    }
    return true;
  });
  t.check("the constant functor is covered by P(A0)", [&] {
    const PresentationCert cert = present(constant_functor(p2, 2), 1);
    return cert.stages[0].gen_objects == std::vector<ObjId>{0} && is_iso(cert.stages[0].to_ambient);
  });
  const std::vector<FunRep> fs{constant_functor(p2, 2), id, standard_projective(p2, 1, 2),
                               schur_construction(id, SchurKind::Exterior, 2), schur_construction(id, SchurKind::Tensor, 2)};
  t.check("Ext^0 is the dimension of Hom", [&] {
    for (const FunRep& f : fs)
      for (const FunRep& g : fs)
        if (ext_functorcat(f, g, 0).dims[0] != hom_space(f, g).size()) return false;
    return true;
  });
  t.check("Ext^i(P(t), G) = 0 for i > 0", [&] {
    for (ObjId s = 0; s < 3; ++s)
      for (const FunRep& g : fs) {
        const auto d = ext_functorcat(standard_projective(p2, s, 2), g, 2).dims;
        if (d[1] != 0 || d[2] != 0) return false;
      }
    return true;
  });
  const FinCat m2 = monoid_category(FinRing(2), 2);
  const FunRep nat = identity_functor_rep(m2, 2);
  t.check("Ext^0 over a monoid is the space of equivariant maps", [&] {
    return ext_monoid(nat, nat, 0).dims[0] == hom_space(nat, nat).size();
  });
  t.check("Ext^i(k[M], W) = 0 for i > 0", [&] {
    const auto d = ext_monoid(standard_projective(m2, 0, 2), nat, 1).dims;
    return d[1] == 0;
  });
  t.check("Tor_0(H, P(t)) = H(t)", [&] {
    const FunRep h = dual(id);
    for (ObjId s = 0; s < 3; ++s)
      if (tor_category(h, standard_projective(p2, s, 2), 0)[0] != h.dim(s)) return false;
    return true;
  });
  t.check("Tor(k[C(-,t)], F) is F(t) in degree 0", [&] {
    const FinCat op = opposite(p2);
    for (ObjId s = 0; s < 3; ++s) {
      const auto d = tor_category(standard_projective(op, s, 2), id, 1);
      if (d[0] != id.dim(s) || d[1] != 0) return false;
    }
    return true;
  });
  t.check("Kunneth for standard projectives", [&] {
    const FinCat p1 = truncated_additive(FinRing(2), 1);
    const FunRep g = identity_functor_rep(p1, 2), v = constant_functor(p1, 2);
    const auto rows = kunneth_check(standard_projective(p1, 1, 2), g, standard_projective(p1, 0, 2), v, 1);
    return rows[0].lhs == g.dim(1) * v.dim(0) && rows[0].equal && rows[1].lhs == 0 && rows[1].rhs == 0;
  });
}

void polyfun(Runner& t) {
  t.module = "polyfun";
  const FinCat p3 = truncated_additive(FinRing(2), 3);
  const FinCat p2 = truncated_additive(FinRing(2), 2);
  const FunRep id = identity_functor_rep(p3, 2);
  t.check("shift of the constant functor", [&] { return same_data(shift(constant_functor(p3, 2)), constant_functor(p2, 2)); });
  t.check("shift of P(A0)", [&] { return same_data(shift(standard_projective(p3, 0, 2)), standard_projective(p2, 0, 2)); });
  t.check("shifted identity has dims n + 1", [&] { return shift(id).dims() == std::vector<size_t>{1, 2, 3}; });
  t.check("difference of the identity is constant of dimension 1", [&] {
    const FunRep d = difference(id);
    return d.dims() == std::vector<size_t>{1, 1, 1} && hom_space(constant_functor(p2, 2), d).size() == 1 &&
           is_iso(hom_space(constant_functor(p2, 2), d)[0]);
  });
  t.check("degree of the constant functor is 0", [&] { return degree(constant_functor(p3, 2), 2).degree == 0; });
  t.check("degree of the identity is 1", [&] { return degree(id, 2).degree == 1; });
  t.check("first cross effect plus F(0) is F", [&] {
    const FunRep s2 = schur_construction(id, SchurKind::Symmetric, 2);
    for (size_t r = 1; r <= 3; ++r)
      if (cross_effect(s2, {r}).dim() + s2.dim(0) != s2.dim(static_cast<ObjId>(r))) return false;
    return true;
  });
  t.check("second cross effect of an additive functor vanishes", [&] {
    return cross_effect(id, {1, 1}).dim() == 0 && cross_effect(id, {1, 2}).dim() == 0;
  });
}

void support(Runner& t) {
  t.module = "support";
  const FinCat p2 = truncated_additive(FinRing(2), 2);
  t.check("counit for P(s) over {s} is onto", [&] {
    for (ObjId s = 0; s < 3; ++s)
      if (!counit_cover(standard_projective(p2, s, 2), SupportSpec(p2, {s})).is_epi) return false;
    return true;
  });
  t.check("counit for k over {A0} is an isomorphism", [&] {
    return is_iso(counit_cover(constant_functor(p2, 2), SupportSpec(p2, {0})).counit);
  });
  t.check("P(s) has presentations induced from {s}", [&] {
    for (ObjId s = 0; s < 3; ++s)
      for (size_t n = 0; n <= 2; ++n)
        if (!check_psf(standard_projective(p2, s, 2), SupportSpec(p2, {s}), n).holds) return false;
    return true;
  });
  t.check("a nonzero functor vanishing on D has no 0-presentation from D", [&] {
    const FunRep l2 = schur_construction(identity_functor_rep(p2, 2), SchurKind::Exterior, 2);
    return !check_psf(l2, SupportSpec(p2, {1}), 0).holds;
  });
}

void hochschild(Runner& t) {
  t.module = "hochschild";
  const FinCat p2 = truncated_additive(FinRing(2), 2);
  t.check("HH_0 of a monoid with the trivial bimodule is k", [&] {
    return hh_monoid(monoid_bimodule(constant_bifunctor(p2, 2), 2), 1).dims[0] == 1;
  });
  t.check("pushforward along the whole category is the identity", [&] {
    for (const HomologyMap& m : hh_pushforward(dual_tensor_bifunctor(p2, 2), {0, 1, 2}, 1))
      if (!m.bijective()) return false;
    return true;
  });
  t.check("an empty stability table has insufficient data", [&] {
    const StabilityTable s = verify_stability_range(constant_bifunctor(p2, 2), 0, 1, 0);
    return s.rows.empty() && s.verdict == "insufficient data";
  });
}

}  // namespace

std::vector<SelftestResult> run_selftest(const Caps&) {
  Runner t;
  exactalg(t);
  fincat(t);
  funrep(t);
  homalg(t);
  polyfun(t);
  support(t);
  hochschild(t);
  selftest_cli(t.out);
  return t.out;
}

}  // namespace fonctex
