#include <random>

#include "doctest.h"
#include "fonctex/error.hpp"
#include "fonctex/funrep.hpp"
#include "oracle.hpp"

using namespace fonctex;

namespace {
size_t binom(size_t n, size_t k) {
  if (k > n) return 0;
  size_t r = 1;
  for (size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}
}  // namespace

TEST_CASE("standard projectives and the identity functor are functors") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  for (ObjId t = 0; t < 4; ++t) {
    const FunRep p = standard_projective(c, t, 2);
    CHECK(p.is_set_like());
    for (ObjId u = 0; u < 4; ++u) CHECK(p.dim(u) == c.hom_size(t, u));
    CHECK(validate_funrep(p).ok);
  }
  const FunRep id = identity_functor_rep(c, 2);
  CHECK(id.dims() == std::vector<size_t>{0, 1, 2, 3});
  CHECK(validate_funrep(id).ok);
  CHECK_THROWS_AS(identity_functor_rep(truncated_additive(FinRing(3), 1), 2), ArgumentError);
}

TEST_CASE("identity functor over Z/4 reduces mod 2") {
  const FinCat c = truncated_additive(FinRing(4), 2);
  const FunRep id = identity_functor_rep(c, 2);
  CHECK(validate_funrep(id).ok);
  const Mor two = c.morphism(1, 1, RMat(FinRing(4), 1, 1, {2}));
  CHECK(id.act(two).is_zero());
}

TEST_CASE("broken actions are caught") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const FunRep id = identity_functor_rep(c, 2);
  // Send every non-identity endomorphism of A1 to zero: not multiplicative on A2 -> A1 -> A2.
  const FunRep bad(c, 2, id.dims(), [id, c](const Mor& f) {
    if (f.src == 1 && f.dst == 1) return FMat::identity(2, 1);
    if (f.src == 2 && f.dst == 2 && !(f == c.id(2))) return FMat(2, 2, 2);
    return id.act(f);
  }, "bad");
  CHECK_FALSE(validate_funrep(bad).ok);
}

TEST_CASE("Yoneda: Nat(P^t, F) has dimension dim F(t)") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const FunRep id = identity_functor_rep(c, 2);
  const FunRep t2 = tensor_pointwise(id, id);
  for (ObjId t = 0; t < 3; ++t) {
    const FunRep p = standard_projective(c, t, 2);
    for (const FunRep& f : {id, t2}) {
      const auto basis = hom_space(p, f);
      CHECK(basis.size() == f.dim(t));
      for (const auto& eta : basis) {
        CHECK(validate_nat(eta).ok);
        const FVec v = yoneda_to_vector(eta, t);
        const NatTrans back = yoneda_from_vector(p, t, f, v);
        for (ObjId u = 0; u < 3; ++u) CHECK(back.at(u) == eta.at(u));
      }
    }
  }
}

TEST_CASE("kernel, image and cokernel have complementary dimensions") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  const FunRep id = identity_functor_rep(c, 2);
  const FunRep p1 = standard_projective(c, 1, 2);
  const NatTrans eval = yoneda_from_vector(p1, 1, id, FVec::unit(2, 1, 0));
  CHECK(validate_nat(eval).ok);
  const SubResult k = kernel(eval), im = image(eval), ck = cokernel(eval);
  for (ObjId u = 0; u < 4; ++u) {
    CHECK(k.rep.dim(u) + im.rep.dim(u) == p1.dim(u));
    CHECK(im.rep.dim(u) == id.dim(u));
    CHECK(ck.rep.dim(u) == 0);
  }
  CHECK(k.rep.dims() == std::vector<size_t>{1, 1, 2, 5});
  CHECK(validate_funrep(k.rep).ok);
  CHECK(validate_nat(k.map).ok);
  CHECK(validate_funrep(im.rep).ok);
}

TEST_CASE("Schur functors of the identity have the classical dimensions") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  const FunRep id = identity_functor_rep(c, 2);
  const FunRep t2 = schur_construction(id, SchurKind::Tensor, 2);
  const FunRep l2 = schur_construction(id, SchurKind::Exterior, 2);
  const FunRep s2 = schur_construction(id, SchurKind::Symmetric, 2);
  const FunRep g2 = schur_construction(id, SchurKind::Divided, 2);
  const FunRep l3 = schur_construction(id, SchurKind::Exterior, 3);
  for (size_t n = 0; n <= 3; ++n) {
    CHECK(t2.dim(n) == n * n);
    CHECK(l2.dim(n) == binom(n, 2));
    CHECK(s2.dim(n) == binom(n + 1, 2));
    CHECK(g2.dim(n) == binom(n + 1, 2));
    CHECK(l3.dim(n) == binom(n, 3));
  }
  for (const FunRep& f : {t2, l2, s2, g2, l3}) CHECK(validate_funrep(f).ok);
  CHECK(l2.label() == "Lambda2(Id)");
  CHECK(schur_construction(id, SchurKind::Symmetric, 0).dims() == std::vector<size_t>{1, 1, 1, 1});
}

TEST_CASE("Schur functors in odd characteristic") {
  const FinCat c = truncated_additive(FinRing(3), 2);
  const FunRep id = identity_functor_rep(c, 3);
  for (auto k : {SchurKind::Exterior, SchurKind::Symmetric, SchurKind::Divided}) {
    const FunRep f = schur_construction(id, k, 2);
    CHECK(validate_funrep(f).ok);
  }
  CHECK(schur_construction(id, SchurKind::Exterior, 2).dim(2) == 1);
}

TEST_CASE("duals, external tensors and conjugation") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const FunRep id = identity_functor_rep(c, 2);
  const FunRep d = dual(id);
  CHECK(d.cat().spec() == opposite(c).spec());
  CHECK(validate_funrep(d).ok);
  const ProductData pd = product(opposite(c), c);
  const FunRep dt = external_tensor(d, id, pd);
  CHECK(validate_funrep(dt).ok);
  CHECK(dt.dim(pd.object(2, 1)) == 2);

  std::vector<FMat> q;
  for (ObjId x = 0; x < 3; ++x) {
    FMat m = FMat::identity(2, id.dim(x));
    if (id.dim(x) == 2) m.set(0, 1, 1);
    q.push_back(m);
  }
  auto [f2, iso] = conjugate(id, q);
  CHECK(validate_funrep(f2).ok);
  CHECK(validate_nat(iso).ok);
  CHECK(is_iso(iso));
  CHECK(same_data(id, id));
  CHECK_FALSE(same_data(id, f2));
}

TEST_CASE("linearized set functors") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const SetFunRep h = hom_set_functor(c, 1);
  CHECK(validate_set_functor(h).ok);
  const SetFunRep hh = set_product(h, h);
  CHECK(validate_set_functor(hh).ok);
  const FunRep lin = linearize(hh, 2);
  CHECK(lin.dim(2) == 16);
  CHECK(validate_funrep(lin).ok);
  CHECK(same_data(linearize(h, 2), standard_projective(c, 1, 2)));
}

TEST_CASE("random subfunctors generated by vectors") {
  std::mt19937_64 rng(21);
  const FinCat c = truncated_additive(FinRing(2), 2);
  const FunRep id = identity_functor_rep(c, 2);
  const FunRep f = direct_sum(tensor_pointwise(id, id), id);
  for (int trial = 0; trial < 10; ++trial) {
    const ObjId x = 1 + rng() % 2;
    FVec v(2, f.dim(x));
    for (size_t i = 0; i < v.size(); ++i) v.set(i, rng() & 1);
    const SubResult s = subfunctor_generated(f, {{x, v}});
    CHECK(validate_funrep(s.rep).ok);
    CHECK(validate_nat(s.map).ok);
    // Closure: images of v under all morphisms lie in the subfunctor.
    for (ObjId y = 0; y < 3; ++y) {
      EchelonBasis e = EchelonBasis::column_span(s.map.at(y));
      for (const Mor& g : c.homs(x, y)) CHECK(e.contains(f.apply(g, v)));
    }
  }
}

TEST_CASE("tensor products of standard projectives are standard projectives") {
  const FinCat p3 = truncated_additive(FinRing(2), 3);
  for (ObjId a = 0; a <= 3; ++a)
    for (ObjId b = 0; a + b <= 3; ++b) {
      const NatTrans iso = projective_tensor_iso(p3, a, b, 2);
      CHECK(validate_nat(iso).ok);
      CHECK(is_iso(iso));
    }
  CHECK_THROWS_AS(projective_tensor_iso(p3, 2, 2, 2), ArgumentError);

  const FinCat p1 = truncated_additive(FinRing(2), 1);
  const ProductData pp = product(p1, p1);
  for (ObjId c = 0; c < 2; ++c)
    for (ObjId d = 0; d < 2; ++d) {
      const NatTrans iso = projective_external_iso(pp, c, d, 2);
      CHECK(validate_nat(iso).ok);
      CHECK(is_iso(iso));
    }
}
