#include "floerloops/floerloops.hpp"
#include "support/synthetic.hpp"

#include <gtest/gtest.h>

using namespace floerloops;

TEST(Json, Integers) {
  EXPECT_EQ(integer_to_json(Integer(-5)), Json(-5));
  Integer big = Integer(1) << 80;
  Json j = integer_to_json(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(integer_from_json(j), big);
  EXPECT_EQ(integer_from_json(Json(7)), 7);
}

TEST(Json, Rationals) {
  EXPECT_EQ(rational_from_json(Json("1/3")), Rational(1, 3));
  EXPECT_EQ(rational_from_json(Json(2)), Rational(2));
  EXPECT_THROW(rational_from_json(Json(0.25)), Error);
  EXPECT_EQ(rational_from_json(Json("0.5")), Rational(1, 2));
  EXPECT_EQ(rational_from_json(rational_to_json(Rational(-7, 9))), Rational(-7, 9));
  EXPECT_THROW(rational_from_json(Json("x")), Error);
}

TEST(Json, GeometryConfigDefaultsAndRoundTrip) {
  auto cfg = geometry_config_from_json(Json::object());
  EXPECT_EQ(cfg.winding_bound, 3);
  EXPECT_EQ(cfg.max_d, 4);
  EXPECT_EQ(cfg.geometry.fibers.size(), 1u);
  Json j = Json::parse(R"({"c": "1/2", "fibers": ["0", "1/3"], "winding_bound": 2, "max_d": 3})");
  auto back = geometry_config_from_json(geometry_config_to_json(geometry_config_from_json(j)));
  EXPECT_EQ(back.geometry.c, Rational(1, 2));
  EXPECT_EQ(back.geometry.fibers, (std::vector<Rational>{0, Rational(1, 3)}));
  EXPECT_EQ(back.winding_bound, 2);
  EXPECT_EQ(back.max_d, 3);
}

TEST(Json, CategoryRoundTrip) {
  auto ext = synthetic::exterior_algebra();
  auto back = category_from_json(category_to_json(ext));
  EXPECT_EQ(category_to_json(back), category_to_json(ext));
  EXPECT_TRUE(check_ainfty(back, 3).passed);
}

TEST(Json, TabulatedCylinderAgreesWithGeometry) {
  CylinderGeometry g{Rational(1), {Rational(0), Rational(1, 2)}};
  CylinderCategory cat(g, {2, Twist::none, Tokens::positive});
  auto table = tabulate(cat, 6, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (const auto& x1 : cat.basis(a, b))
        for (const auto& x2 : cat.basis(b, a)) {
          ChordKey pair[2] = {x1, x2};
          int keys[2] = {table.find(chord_name(x1)), table.find(chord_name(x2))};
          auto got = table.mu(keys);
          Chain<ChordKey> expected = cat.mu(pair);
          ASSERT_EQ(got.size(), expected.size());
          for (const auto& [y, c] : expected) EXPECT_EQ(got.coefficient(table.find(chord_name(y))), c);
        }
  EXPECT_EQ(table.basis(0, 1).size(), 5u);
  EXPECT_TRUE(check_ainfty(table, 3).passed);
}

TEST(Json, PathModelRoundTrip) {
  auto m = tabulate(circle_model(2, 1), 3);
  auto j = path_model_to_json(m);
  auto back = path_model_from_json(j);
  EXPECT_EQ(path_model_to_json(back), j);
  EXPECT_TRUE(validate_path_model(back).passed);
}

TEST(Json, PathModelNeedsUnits) {
  auto j = path_model_to_json(tabulate(circle_model(1, 1), 2));
  j["units"] = Json::object();
  EXPECT_THROW(path_model_from_json(j), Error);
}

TEST(Json, TwistedRoundTrip) {
  auto m = circle_model(2, 1);
  auto samples = synthetic::random_complexes(m, 10, 3);
  auto name = [&](const PathClass& k) { return m.name(k); };
  auto obj = [](int a) { return "q" + std::to_string(a); };
  auto find = [&](const std::string& n) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (const auto& k : m.basis(a, b))
          if (m.name(k) == n) return k;
    throw Error("unknown " + n);
  };
  auto find_obj = [](const std::string& n) { return std::stoi(n.substr(1)); };
  for (const auto& t : samples) {
    auto back = twisted_from_json<PathClass>(twisted_to_json(t, obj, name), find_obj, find);
    EXPECT_EQ(back.summands, t.summands);
    EXPECT_EQ(back.differential, t.differential);
  }
}

TEST(Json, ModuliRoundTrip) {
  for (const auto& [n, m] : synthetic::moduli_datasets()) {
    auto j = moduli_to_json(m);
    auto back = moduli_from_json(j);
    EXPECT_EQ(moduli_to_json(back), j) << n;
    EXPECT_NO_THROW(choose_fundamental_chains(back)) << n;
  }
}

TEST(Json, ChainsRejectBadShapes) {
  auto find = [](const std::string&) { return 0; };
  EXPECT_THROW(chain_from_json<int>(Json::object(), find), Error);
  EXPECT_THROW(chain_from_json<int>(Json::parse("[[\"a\"]]"), find), Error);
  EXPECT_EQ(chain_from_json<int>(Json::parse("[[\"a\", 2], [\"a\", -2]]"), find), Chain<int>{});
}
