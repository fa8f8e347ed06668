#include <random>

#include "doctest.h"
#include "fonctex/error.hpp"
#include "fonctex/hochschild.hpp"
#include "frozen.hpp"
#include "random_functor.hpp"

using namespace fonctex;

namespace {

template <size_t K>
std::vector<size_t> vec(const std::array<size_t, K>& a) {
  return {a.begin(), a.end()};
}

// Random bifunctor on op(C) x C: sums of external products, optionally cut
// down to a generated sub-bifunctor.
BiFunRep random_bifunctor(std::mt19937_64& rng, const FinCat& c) {
  const ProductData pd = product(opposite(c), c);
  FunRep acc;
  const int pieces = 1 + static_cast<int>(rng() % 2);
  for (int k = 0; k < pieces; ++k) {
    const FunRep h = dual(testkit::random_functor(rng, c, 2));
    const FunRep f = testkit::random_functor(rng, c, 2);
    const FunRep e = external_tensor(h, f, pd);
    acc = acc ? direct_sum(acc, e) : e;
  }
  if (rng() % 2 && acc.total_dim() > 0) {
    std::vector<std::pair<ObjId, FVec>> seeds;
    for (ObjId x = 0; x < pd.cat.num_objects(); ++x)
      if (acc.dim(x) && rng() % 3 == 0) {
        FVec v(2, acc.dim(x));
        for (size_t i = 0; i < v.size(); ++i) v.set(i, static_cast<uint32_t>(rng() % 2));
        seeds.emplace_back(x, v);
      }
    acc = subfunctor_generated(acc, seeds).rep;
  }
  return make_bifunctor(c, acc);
}

}  // namespace

TEST_CASE("bifunctor builtins") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const BiFunRep dt = dual_tensor_bifunctor(c, 2);
  CHECK(dt.dim(1, 2) == 2);
  CHECK(dt.dim(2, 2) == 4);
  CHECK(validate_funrep(dt.rep).ok);
  const BifunctorDegree d = bifunctor_degree(dt, 1);
  CHECK(d.first == 1);
  CHECK(d.second == 1);
  CHECK(bifunctor_degree(constant_bifunctor(c, 2), 1).first == 0);
  CHECK(validate_funrep(first_variable(dt, 2)).ok);
  CHECK(first_variable(dt, 2).dims() == std::vector<size_t>{0, 2, 4});
  CHECK(second_variable(dt, 1).dims() == std::vector<size_t>{0, 1, 2});
}

TEST_CASE("HH of a representable bifunctor is F(t) in degree 0") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const FunRep id = identity_functor_rep(c, 2);
  for (ObjId t = 0; t <= 2; ++t) {
    const HHResult r = hh(representable_bifunctor(id, t), 2);
    CHECK(r.dims == std::vector<size_t>{id.dim(t), 0, 0});
  }
  const FunRep l2 = schur_construction(id, SchurKind::Exterior, 2);
  CHECK(hh(representable_bifunctor(l2, 2), 1).dims == std::vector<size_t>{1, 0});
}

TEST_CASE("HH of small monoids") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  // Trivial bimodule over the one-element monoid and over M_1(F_2).
  CHECK(hh_monoid(monoid_bimodule(constant_bifunctor(c, 2), 0), 3).dims == std::vector<size_t>{1, 0, 0, 0});
  CHECK(hh_monoid(monoid_bimodule(constant_bifunctor(c, 2), 1), 3).dims == std::vector<size_t>{1, 0, 0, 0});

  const BiFunRep dt = dual_tensor_bifunctor(c, 2);
  const BiFunRep k = constant_bifunctor(c, 2);
  CHECK(hh_monoid(monoid_bimodule(dt, 0), 2).dims == vec(frozen::kHHDualTensorM0));
  CHECK(hh_monoid(monoid_bimodule(dt, 1), 2).dims == vec(frozen::kHHDualTensorM1));
  CHECK(hh_monoid(monoid_bimodule(dt, 2), 2).dims == vec(frozen::kHHDualTensorM2));
  CHECK(hh_monoid(monoid_bimodule(k, 0), 2).dims == vec(frozen::kHHConstM0));
  CHECK(hh_monoid(monoid_bimodule(k, 1), 2).dims == vec(frozen::kHHConstM1));
  CHECK(hh_monoid(monoid_bimodule(k, 2), 2).dims == vec(frozen::kHHConstM2));
  CHECK(hh_monoid(monoid_bimodule(k, 3), 1).dims == vec(frozen::kHHConstM3));
}

TEST_CASE("HH by the category route matches the monoid route") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (const BiFunRep& b : {dual_tensor_bifunctor(c, 2), constant_bifunctor(c, 2)})
    for (ObjId n = 0; n <= 2; ++n) {
      const SubcategoryData sub = full_subcategory(c, {n});
      const HHResult generic = hh(restrict_bifunctor(b, sub), 2);
      const HHResult monoid = hh_monoid(monoid_bimodule(b, n), 2);
      CHECK(generic.dims == monoid.dims);
      CHECK(generic.chain_dims == monoid.chain_dims);
    }

  std::mt19937_64 rng(23);
  const FinCat p2 = truncated_additive(FinRing(2), 2);
  for (int trial = 0; trial < 10; ++trial) {
    const BiFunRep b = random_bifunctor(rng, p2);
    const ObjId x = static_cast<ObjId>(1 + rng() % 2);
    const SubcategoryData sub = full_subcategory(p2, {x});
    CAPTURE(b.label());
    CHECK(hh(restrict_bifunctor(b, sub), 2).dims == hh_monoid(monoid_bimodule(b, x), 2).dims);
  }
}

TEST_CASE("Tor agrees with HH of the external bifunctor") {
  std::mt19937_64 rng(8);
  const FinCat c = truncated_additive(FinRing(2), 1);
  for (int trial = 0; trial < 6; ++trial) {
    const FunRep h = dual(testkit::random_functor(rng, c, 2));
    const FunRep f = testkit::random_functor(rng, c, 2);
    CHECK(tor_category(h, f, 2) == hh(external_bifunctor(h, f), 2).dims);
  }
}

TEST_CASE("pushforward along full subcategories") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const BiFunRep dt = dual_tensor_bifunctor(c, 2);
  for (const HomologyMap& m : hh_pushforward(dt, {0, 1, 2}, 2)) CHECK(m.bijective());

  const BiFunRep b = representable_bifunctor(identity_functor_rep(c, 2), 1);
  const auto maps = hh_pushforward(b, {1}, 1);
  CHECK(maps[0].bijective());
  CHECK(maps[0].dim_src == 1);

  const auto top = hh_pushforward(dt, {2}, 1);
  REQUIRE(top.size() == 2);
  CHECK(top[0].dim_src == 1);
  CHECK(top[0].dim_dst == 1);
  CHECK(top[0].bijective());
}

TEST_CASE("stabilization maps") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  const BiFunRep dt = dual_tensor_bifunctor(c, 2);
  for (size_t n = 0; n < 3; ++n) CHECK_NOTHROW(check_stabilization_equivariance(dt, n));
  const StabRow r = stabilization_map(dt, 1, 0);
  CHECK(r.map.dim_src == 1);
  CHECK(r.map.dim_dst == 1);
  CHECK(r.map.bijective());

  CHECK(required_flag(1, 2, 0) == "bijective");
  CHECK(required_flag(1, 2, 1) == "surjective");
  CHECK(required_flag(1, 1, 1) == "none");
  CHECK(required_flag(0, 0, 5) == "bijective");

  // A family whose left action at A^3 is wrong is not equivariant.
  const FunRep bad(dt.rep.cat(), 2, dt.rep.dims(),
                   [dt](const Mor& h) {
                     FMat m = dt.rep.act(h);
                     const auto [f, g] = split_product_morphism(dt.prod, h);
                     if (g.src == 3 && g.dst == 3 && !(g == dt.cat.id(3))) return FMat(2, m.rows(), m.cols());
                     return m;
                   },
                   "broken");
  CHECK_THROWS_AS(check_stabilization_equivariance(make_bifunctor(c, bad), 2), InvariantViolation);
}

TEST_CASE("stability tables") {
  const FinCat c2 = truncated_additive(FinRing(2), 2);
  const StabilityTable k = verify_stability_range(constant_bifunctor(c2, 2), 0, 2, 2);
  CHECK(k.verdict == "PASS");
  CHECK(k.degree_ok);
  CHECK(k.rows.size() == 6);
  for (const StabRow& r : k.rows) CHECK(r.map.bijective());
  CHECK(k.csv().rfind("i,n,dim_src,dim_dst,injective,surjective,in_paper_range,required_flag,pass\n", 0) == 0);

  const StabilityTable dt = verify_stability_range(dual_tensor_bifunctor(c2, 2), 1, 1, 2);
  CHECK(dt.verdict == "PASS");
  CHECK(dt.functoriality_ok);
  CHECK(dt.hh_dims[2] == std::vector<size_t>{1, 0});

  CHECK(verify_stability_range(constant_bifunctor(c2, 2), 0, 1, 0).verdict == "insufficient data");
  CHECK_THROWS_AS(verify_stability_range(constant_bifunctor(c2, 2), 0, 1, 3), ArgumentError);

  // Claiming degree 0 for the dual-tensor family fails the hypothesis check.
  CHECK(verify_stability_range(dual_tensor_bifunctor(c2, 2), 0, 0, 1).verdict == "hypothesis not verified");
}
