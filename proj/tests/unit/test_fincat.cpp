#include "doctest.h"
#include "fonctex/error.hpp"
#include "fonctex/fincat.hpp"

using namespace fonctex;

TEST_CASE("truncated additive category over F_2") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  CHECK(c.num_objects() == 4);
  CHECK(c.object_name(2) == "A2");
  CHECK(c.hom_size(2, 3) == 64);
  CHECK(c.hom_size(0, 3) == 1);
  CHECK(c.total_morphisms() == 1 + 1 + 1 + 1 + 1 + 2 + 4 + 8 + 1 + 4 + 16 + 64 + 1 + 8 + 64 + 512);
  const ValidationReport r = validate_category(c);
  CHECK(r.ok);
  CHECK(r.exhaustive);
}

TEST_CASE("composition is matrix multiplication") {
  const FinRing z3(3);
  const FinCat c = truncated_additive(z3, 3);
  const RMat f = RMat(z3, 2, 1, {1, 2});
  const RMat g = RMat(z3, 3, 2, {1, 0, 2, 1, 0, 1});
  const Mor mf = c.morphism(1, 2, f), mg = c.morphism(2, 3, g);
  CHECK(c.payload(c.compose(mg, mf)) == mat_mul(g, f));
  CHECK_THROWS_AS(c.compose(mf, mg), ArgumentError);
}

TEST_CASE("large categories validate by sampling") {
  const FinCat c = truncated_additive(FinRing(2), 5);
  CHECK(c.hom_size(5, 5) == (uint64_t{1} << 25));
  const ValidationReport r = validate_category(c, 3);
  CHECK(r.ok);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.checks > 0);
}

TEST_CASE("monoid, opposite, product") {
  const FinCat m = monoid_category(FinRing(2), 2);
  CHECK(m.num_objects() == 1);
  CHECK(m.hom_size(0, 0) == 16);
  CHECK(validate_category(m).ok);
  const FinCat op = opposite(m);
  const Mor a{0, 0, 5}, b{0, 0, 9};
  CHECK(op.compose(a, b).idx == m.compose(b, a).idx);
  CHECK(opposite(op).spec() == m.spec());
  const ProductData pd = product(truncated_additive(FinRing(2), 1), m);
  CHECK(pd.cat.num_objects() == 2);
  CHECK(validate_category(pd.cat).ok);
  CHECK(validate_functor(pd.pr1).ok);
  CHECK(validate_functor(pd.pr2).ok);
  const Mor h = product_morphism(pd, Mor{0, 1, 0}, Mor{0, 0, 7});
  auto [f, g] = split_product_morphism(pd, h);
  CHECK(f == Mor{0, 1, 0});
  CHECK(g == Mor{0, 0, 7});
}

TEST_CASE("full subcategories and biproducts") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  const SubcategoryData s = full_subcategory(c, {1, 3});
  CHECK(s.cat.num_objects() == 2);
  CHECK(s.cat.hom_size(0, 1) == 8);
  CHECK(validate_category(s.cat).ok);
  CHECK(validate_functor(s.inclusion).ok);
  auto bp = biproduct(c, 1, 2);
  REQUIRE(bp);
  CHECK(bp->sum == 3);
  CHECK(c.compose(bp->pr1, bp->inc1) == c.id(1));
  CHECK(c.compose(bp->pr2, bp->inc1).idx == 0);
  CHECK_FALSE(biproduct(c, 2, 2));
}

TEST_CASE("reduction functor") {
  const FinRing z4(4);
  const CatFunctor r = reduction_functor(z4, 2, 2);
  CHECK(r.target().matrix().ring.modulus() == 2);
  CHECK(validate_functor(r).ok);
  CHECK_THROWS_AS(reduction_functor(z4, 1, 2), ArgumentError);
  const CatFunctor iso = reduction_functor(z4, 0, 2);
  CHECK(iso.target().matrix().ring.modulus() == 4);
}

TEST_CASE("parsing") {
  CHECK(parse_category("PN(Z/2,3)").num_objects() == 4);
  CHECK(parse_category("M(Z/3,2)").hom_size(0, 0) == 81);
  CHECK_THROWS_AS(parse_category("Q(7)"), UsageError);
  CHECK_THROWS_AS(parse_category("PN(Z/2,9)"), CapExceeded);
}
