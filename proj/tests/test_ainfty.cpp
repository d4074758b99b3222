#include "floerloops/floerloops.hpp"
#include "support/synthetic.hpp"

#include <gtest/gtest.h>

using namespace floerloops;

namespace {

// Z[t]/t^3 with |t| = 0, one object.
TableCategory truncated_polynomials() {
  TableCategory c;
  c.add_object("o");
  for (int i = 0; i < 3; ++i) c.add_generator("t^" + std::to_string(i), 0, 0, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; i + j < 3; ++j) c.set_mu({i, j}, Chain<int>::basis(i + j));
  return c;
}

}  // namespace

TEST(AInfty, ExteriorAlgebraSatisfiesRelations) {
  auto ext = synthetic::exterior_algebra();
  auto r = check_ainfty(ext, 4);
  EXPECT_TRUE(r.passed) << (r.witness ? r.witness->problem : "");
  EXPECT_EQ(r.tuples_checked, 4u + 16u + 64u + 256u);
}

TEST(AInfty, SignFlipIsDetected) {
  auto ext = synthetic::exterior_algebra();
  const int e = ext.find("e"), one = ext.find("1");
  SignFlippedCategory<TableCategory> bad(ext, {one, e});
  auto r = check_ainfty(bad, 3);
  ASSERT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->tuple.size(), 3u);
}

TEST(AInfty, WrongOutputDegreeIsReported) {
  TableCategory c;
  c.add_object("o");
  const int a = c.add_generator("a", 0, 0, 0);
  const int b = c.add_generator("b", 0, 0, 1);
  c.set_mu({a, a}, Chain<int>::basis(b));
  auto r = check_ainfty(c, 2);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness->problem, "mu_2 output has wrong degree");
}

TEST(AInfty, NonComposableTupleRejected) {
  TableCategory c;
  c.add_object("a");
  c.add_object("b");
  const int x = c.add_generator("x", 0, 1, 0);
  EXPECT_THROW(c.set_mu({x, x}, {}), Error);
}

TEST(AInfty, TruncatedPolynomialsAssociative) {
  auto c = truncated_polynomials();
  EXPECT_TRUE(check_ainfty(c, 4).passed);
}

TEST(AInfty, DifferentialMustSquareToZero) {
  TableCategory c;
  c.add_object("o");
  const int a = c.add_generator("a", 0, 0, 0);
  const int b = c.add_generator("b", 0, 0, 1);
  const int d = c.add_generator("d", 0, 0, 2);
  c.set_mu({a}, Chain<int>::basis(b));
  c.set_mu({b}, Chain<int>::basis(d));
  auto r = check_ainfty(c, 1);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness->tuple, std::vector<int>{a});
  EXPECT_EQ(r.witness->residual, Chain<int>::basis(d));
}

TEST(AInfty, ShiftedProductSign) {
  auto ext = synthetic::exterior_algebra();
  const int e = ext.find("e"), one = ext.find("1");
  // s1 = 1 : q[0] -> q[1], s2 = e : q[1] -> q[1]; sign (-1)^((1+1)*1) = +1.
  auto p = mu2_shifted(ext, Chain<int>::basis(e), Chain<int>::basis(one), 0, 1);
  EXPECT_EQ(p, Chain<int>::basis(e));
  // s2 = 1 of degree 0 across a shift of 1: shift sign -1 times mu_2(1, e) = -e.
  auto q = mu2_shifted(ext, Chain<int>::basis(one), Chain<int>::basis(e), 0, 1);
  EXPECT_EQ(q, Chain<int>::basis(e));
  EXPECT_EQ(mu2_shifted(ext, Chain<int>::basis(one), Chain<int>::basis(e), 0, 0), Chain<int>::basis(e, -1));
  ShiftedChain<int> a{Chain<int>::basis(one), 0, 1}, b{Chain<int>::basis(one), 2, 2};
  EXPECT_THROW(mu2_shifted(ext, b, a), Error);
}

TEST(AInfty, IdentityFunctorPasses) {
  auto ext = synthetic::exterior_algebra();
  DgaTarget<TableCategory> tgt(ext);
  IdentityFunctor<TableCategory> f(ext);
  auto r = check_functor(ext, tgt, f, 3);
  EXPECT_TRUE(r.passed);
}

TEST(AInfty, FunctorOnSignFlippedTargetFails) {
  auto ext = synthetic::exterior_algebra();
  const int e = ext.find("e"), f = ext.find("f");
  SignFlippedCategory<TableCategory> bad(ext, {e, f});
  DgaTarget<SignFlippedCategory<TableCategory>> tgt(bad);
  FunctionFunctor<int, DgaTarget<SignFlippedCategory<TableCategory>>::element_type> id(
      [&](std::span<const int> xs) -> DgaTarget<SignFlippedCategory<TableCategory>>::element_type {
        if (xs.size() == 1) return {0, 0, Chain<int>::basis(xs[0])};
        return {0, 0, {}};
      });
  auto r = check_functor(ext, tgt, id, 2);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness->tuple, (std::vector<int>{e, f}));
}
