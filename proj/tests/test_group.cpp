#include "tflab/group.hpp"
#include "tflab/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace tflab;

namespace {

// Independent pairing straight from the definition, no phase tables.
cplx pairing(const std::vector<std::int64_t>& orders, const std::vector<std::int64_t>& x,
             const std::vector<std::int64_t>& xi) {
  double angle = 0.0;
  for (std::size_t j = 0; j < orders.size(); ++j)
    angle += 2.0 * std::numbers::pi * static_cast<double>(x[j] * xi[j]) / static_cast<double>(orders[j]);
  return std::polar(1.0, angle);
}

std::vector<std::int64_t> matvec(const GroupEndomorphism::Matrix& m, const std::vector<std::int64_t>& x,
                                 const std::vector<std::int64_t>& orders) {
  std::vector<std::int64_t> y(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += m[i][j] * x[j];
    y[i] = ((s % orders[i]) + orders[i]) % orders[i];
  }
  return y;
}

}  // namespace

TEST_CASE("group spec parsing and indexing") {
  const auto g = FiniteAbelianGroup::parse("12x5");
  CHECK(g.order() == 60);
  CHECK(g.rank() == 2);
  CHECK(g.spec() == "12x5");
  CHECK(g.coords_of(g.index_of(std::vector<std::int64_t>{7, 3})) == std::vector<std::int64_t>{7, 3});
  CHECK(g.index_of(std::vector<std::int64_t>{1, 0}) == 5);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("12x"), GroupError);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("0"), GroupError);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("ab"), GroupError);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("4", 0.0), GroupError);
}

TEST_CASE("dual Haar weight makes the product weight 1/|G|") {
  const auto g = FiniteAbelianGroup::parse("4x6", 0.5);
  CHECK(g.dual_haar_weight() == doctest::Approx(1.0 / 12.0));
  CHECK(g.dual().haar_weight() == doctest::Approx(g.dual_haar_weight()));
}

TEST_CASE("character values") {
  const auto z4 = FiniteAbelianGroup::parse("4");
  const cplx i = character(z4, GroupElement{{1}}, DualElement{{1}});
  CHECK(std::abs(i - cplx(0.0, 1.0)) < 1e-15);
  const auto g = FiniteAbelianGroup::parse("3x2");
  for (Index xi = 0; xi < g.order(); ++xi) CHECK(g.character(0, xi) == cplx(1.0, 0.0));
  CHECK_THROWS_AS(character(g, GroupElement{{1}}, DualElement{{1, 1}}), GroupError);
}

TEST_CASE("characters agree with the defining formula and are bicharacters") {
  for (const char* spec : {"3x2", "8", "4x4x2", "6x5"}) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const std::size_t n = g.order();
    for (Index x = 0; x < n; ++x)
      for (Index xi = 0; xi < n; ++xi) {
        CHECK(std::abs(g.character(x, xi) - pairing(g.orders(), g.coords_of(x), g.coords_of(xi))) < 1e-12);
        for (Index y = 0; y < n; ++y) {
          CHECK(std::abs(g.character(g.add(x, y), xi) - g.character(x, xi) * g.character(y, xi)) < 1e-12);
          CHECK(std::abs(g.character(xi, g.add(x, y)) - g.character(xi, x) * g.character(xi, y)) < 1e-12);
        }
      }
  }
}

TEST_CASE("endomorphism application") {
  const auto z5 = FiniteAbelianGroup::parse("5");
  CHECK(GroupEndomorphism(z5, {{2}}).apply(3) == 1);
  const auto g = FiniteAbelianGroup::parse("4x2");
  const GroupEndomorphism m(g, {{1, 0}, {2, 1}});
  CHECK(m.apply(GroupElement{{1, 1}}) == GroupElement{{1, 1}});
  const auto id = GroupEndomorphism::identity(g);
  for (Index x = 0; x < g.order(); ++x) CHECK(id.apply(x) == x);
  CHECK_THROWS_AS(GroupEndomorphism(g, {{1, 1}, {0, 1}}), GroupError);
  CHECK_THROWS_AS(GroupEndomorphism(g, {{1}}), GroupError);
}

TEST_CASE("endomorphism table matches direct modular arithmetic") {
  const auto g = FiniteAbelianGroup::parse("6x4");
  const GroupEndomorphism::Matrix m{{5, 3}, {2, 3}};
  const GroupEndomorphism tau(g, m);
  for (Index x = 0; x < g.order(); ++x) CHECK(g.coords_of(tau.apply(x)) == matvec(m, g.coords_of(x), g.orders()));
}

TEST_CASE("automorphism certification") {
  const auto z5 = FiniteAbelianGroup::parse("5");
  const auto c5 = certify_automorphism(GroupEndomorphism(z5, {{2}}));
  REQUIRE(c5.automorphism);
  CHECK(c5.inverse->matrix() == GroupEndomorphism::Matrix{{3}});

  const auto z4 = FiniteAbelianGroup::parse("4");
  const auto c4 = certify_automorphism(GroupEndomorphism(z4, {{2}}));
  CHECK_FALSE(c4.automorphism);
  CHECK_FALSE(c4.inverse);

  const auto z9 = FiniteAbelianGroup::parse("9");
  const GroupEndomorphism tau(z9, {{2}});
  const auto inv = tau.inverse();
  REQUIRE(inv);
  CHECK(inv->matrix() == GroupEndomorphism::Matrix{{5}});
  CHECK(tau.identity_minus().matrix() == GroupEndomorphism::Matrix{{8}});
  CHECK(inv->identity_minus().matrix() == GroupEndomorphism::Matrix{{5}});
  for (const auto& m : {tau, *inv, tau.identity_minus(), inv->identity_minus()}) {
    std::set<Index> image(m.table().begin(), m.table().end());
    CHECK(image.size() == z9.order());
    CHECK(m.is_automorphism());
  }
}

TEST_CASE("inverse composes to the identity") {
  const auto g = FiniteAbelianGroup::parse("5x5");
  const GroupEndomorphism tau(g, {{2, 1}, {0, 2}});
  const auto inv = tau.inverse();
  REQUIRE(inv);
  for (Index x = 0; x < g.order(); ++x) {
    CHECK(inv->apply(tau.apply(x)) == x);
    CHECK(tau.apply(inv->apply(x)) == x);
  }
}

TEST_CASE("dual automorphism pairing identity") {
  for (auto [spec, m] : {std::pair<const char*, GroupEndomorphism::Matrix>{"4x2", {{1, 0}, {2, 1}}},
                         {"4x2", {{1, 2}, {0, 1}}},
                         {"5", {{2}}},
                         {"6x3", {{1, 2}, {1, 1}}},
                         {"5x5", {{2, 1}, {0, 2}}}}) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const GroupEndomorphism tau(g, m);
    const auto dual = dual_automorphism(tau);
    for (Index x = 0; x < g.order(); ++x)
      for (Index xi = 0; xi < g.order(); ++xi)
        CHECK(std::abs(g.character(tau.apply(x), xi) - g.character(x, dual.apply(xi))) < 1e-12);
  }
  const auto z5 = FiniteAbelianGroup::parse("5");
  CHECK(dual_automorphism(GroupEndomorphism(z5, {{2}})).matrix() == GroupEndomorphism::Matrix{{2}});
  const auto g = FiniteAbelianGroup::parse("4x6");
  CHECK(dual_automorphism(GroupEndomorphism::identity(g)).matrix() == GroupEndomorphism::identity(g).matrix());
}

TEST_CASE("dual reverses composition") {
  const auto g = FiniteAbelianGroup::parse("5x5");
  const GroupEndomorphism a(g, {{2, 1}, {0, 2}});
  const GroupEndomorphism b(g, {{1, 3}, {1, 4}});
  REQUIRE(b.is_automorphism());
  const auto lhs = dual_automorphism(a.compose(b));
  const auto rhs = dual_automorphism(b).compose(dual_automorphism(a));
  CHECK(lhs.table() == rhs.table());
}

TEST_CASE("modulus is one and matches change of variables") {
  const auto z7 = FiniteAbelianGroup::parse("7");
  CHECK(modulus(GroupEndomorphism(z7, {{3}})) == 1.0);
  CHECK(modulus(GroupEndomorphism::identity(z7)) == 1.0);
  CHECK_THROWS(modulus(GroupEndomorphism(FiniteAbelianGroup::parse("4"), {{2}})));

  const auto g = FiniteAbelianGroup::parse("5x5");
  const GroupEndomorphism tau(g, {{2, 1}, {0, 2}});
  Sampler rng(7);
  std::vector<cplx> f(g.order());
  for (auto& v : f) v = rng.complex_normal();
  cplx lhs = 0.0, rhs = 0.0;
  for (Index x = 0; x < g.order(); ++x) {
    lhs += f[tau.apply(x)];
    rhs += f[x];
  }
  CHECK(std::abs(lhs - rhs / modulus(tau)) < 1e-12);
}
