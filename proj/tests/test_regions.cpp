#include <doctest.h>

#include <stdexcept>

#include "iccr/regions.hpp"

using namespace iccr;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(n, d); }

bool same_vertices(const Polytope2D& poly, const std::vector<RatPoint>& expected) {
  return poly.vertices() == expected;
}

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(rat(4, 3)) == "4/3");
  CHECK(to_string(rat(8, 6)) == "4/3");
  CHECK(to_string(rat(3)) == "3");
  CHECK(to_string(rat(0)) == "0");
  CHECK(to_string(rat(-1, 2)) == "-1/2");

  CHECK(parse_rational("4/3") == rat(4, 3));
  CHECK(parse_rational("12/5") == rat(12, 5));
  CHECK(parse_rational("7") == rat(7));
  CHECK(parse_rational("-1/2") == rat(-1, 2));
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("abc").has_value());
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("1/2/3").has_value());
  CHECK_FALSE(parse_rational("2x").has_value());

  // round trip across a spread of values
  for (long long n = 0; n <= 20; ++n)
    for (long long d = 1; d <= 9; ++d) {
      const Rational r(n, d);
      CHECK(parse_rational(to_string(r)) == r);
    }
}

TEST_CASE("polytope from halfspaces: unit square") {
  const auto square = Polytope2D::from_halfspaces(
      {{rat(1), rat(0), rat(1)}, {rat(0), rat(1), rat(1)}});
  CHECK(same_vertices(square, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(1), rat(1)}, {rat(0), rat(1)}}));
  CHECK(square.contains({rat(1, 2), rat(1, 2)}));
  CHECK(square.contains({rat(1), rat(1)}));          // corner
  CHECK(square.contains({rat(1), rat(1, 3)}));       // edge
  CHECK_FALSE(square.contains({rat(1), rat(7, 6)}));
  CHECK_FALSE(square.contains({rat(-1, 10), rat(0)}));
  CHECK(square.max_weighted(rat(1), rat(1)) == rat(2));
  CHECK(square.max_weighted(rat(1), rat(0)) == rat(1));
  CHECK(square.max_weighted(rat(2), rat(3)) == rat(5));
  CHECK(square.diagonal_max() == rat(1));
}

TEST_CASE("polytope from points matches the halfspace construction") {
  const auto a = Polytope2D::from_halfspaces(
      {{rat(1), rat(0), rat(1)}, {rat(0), rat(1), rat(1)}});
  const auto b = Polytope2D::from_points({{rat(1), rat(0)}, {rat(1), rat(1)}, {rat(0), rat(1)}});
  CHECK(polytope_equal(a, b));
  CHECK(same_vertices(b, a.vertices()));

  // interior and collinear points do not change the hull
  const auto c = Polytope2D::from_points({{rat(1), rat(0)},
                                          {rat(1), rat(1)},
                                          {rat(0), rat(1)},
                                          {rat(1, 2), rat(1, 2)},
                                          {rat(1), rat(1, 2)}});
  CHECK(polytope_equal(a, c));
  CHECK(same_vertices(c, a.vertices()));
}

TEST_CASE("polytope rejects bad inputs") {
  CHECK_THROWS_AS(Polytope2D::from_halfspaces({{rat(1), rat(0), rat(1)}}),
                  std::invalid_argument);  // unbounded in d_b
  CHECK_THROWS_AS(Polytope2D::from_halfspaces({{rat(1), rat(1), rat(-1)}}),
                  std::invalid_argument);  // excludes the origin
  CHECK_THROWS_AS(Polytope2D::from_points({{rat(1), rat(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(Polytope2D::from_points({{rat(-1), rat(1)}}), std::invalid_argument);
  const auto square = Polytope2D::from_halfspaces(
      {{rat(1), rat(0), rat(1)}, {rat(0), rat(1), rat(1)}});
  CHECK_THROWS_AS(square.max_weighted(rat(-1), rat(0)), std::invalid_argument);
}

TEST_CASE("redundant and duplicate halfspaces are harmless") {
  const auto square = Polytope2D::from_halfspaces(
      {{rat(1), rat(0), rat(1)}, {rat(0), rat(1), rat(1)}});
  const auto noisy = Polytope2D::from_halfspaces({{rat(1), rat(0), rat(1)},
                                                  {rat(2), rat(0), rat(2)},
                                                  {rat(0), rat(1), rat(1)},
                                                  {rat(1), rat(1), rat(5)}});
  CHECK(polytope_equal(square, noisy));
}

TEST_CASE("single antenna everywhere: delayed feedback region") {
  const auto region = region_csi({1, 1, 1});
  CHECK(same_vertices(region, {{rat(0), rat(0)},
                               {rat(1), rat(0)},
                               {rat(2, 3), rat(2, 3)},
                               {rat(0), rat(1)}}));
  CHECK(region.max_weighted(rat(1), rat(1)) == rat(4, 3));
  CHECK(region.max_weighted(rat(1), rat(0)) == rat(1));
  CHECK(region.diagonal_max() == rat(2, 3));
  CHECK(region.contains({rat(2, 3), rat(2, 3)}));
  CHECK_FALSE(region.contains({rat(7, 10), rat(7, 10)}));

  // strictly between the no-feedback region and the perfect-CSI square
  CHECK(polytope_contains(region, region_no({1, 1, 1})));
  CHECK(polytope_contains(region_perfect_siso(), region));
  CHECK_FALSE(polytope_equal(region, region_no({1, 1, 1})));
  CHECK_FALSE(polytope_equal(region, region_perfect_siso()));
}

TEST_CASE("delayed feedback region: frozen sum values") {
  CHECK(region_csi({1, 2, 2}).max_weighted(rat(1), rat(1)) == rat(12, 5));
  CHECK(region_csi({1, 2, 2}).diagonal_max() == rat(6, 5));
  CHECK(region_csi({2, 1, 2}).max_weighted(rat(1), rat(1)) == rat(12, 5));
  CHECK(region_csi({2, 3, 2}).max_weighted(rat(1), rat(1)) == rat(8, 3));
  CHECK(region_csi({2, 3, 2}).diagonal_max() == rat(4, 3));
  CHECK(region_csi({1, 4, 2}).max_weighted(rat(1), rat(1)) == rat(8, 3));
  CHECK(region_csi({2, 5, 3}).max_weighted(rat(1), rat(1)) == rat(4));

  CHECK(same_vertices(region_csi({1, 2, 2}), {{rat(0), rat(0)},
                                              {rat(2), rat(0)},
                                              {rat(6, 5), rat(6, 5)},
                                              {rat(0), rat(2)}}));
}

TEST_CASE("the three delayed flavors and the converse coincide") {
  for (int mt = 1; mt <= 4; ++mt)
    for (int mc = 1; mc <= 4; ++mc)
      for (int mr = 1; mr <= 4; ++mr) {
        const AntennaConfig c{mt, mc, mr};
        const auto base = region_csi(c);
        CHECK(polytope_equal(base, region_output(c)));
        CHECK(polytope_equal(base, region_shannon(c)));
        CHECK(polytope_equal(base, region_outer_delayed(c)));
        CHECK(polytope_contains(base, region_no(c)));
      }
}

TEST_CASE("no-feedback region") {
  const auto r111 = region_no({1, 1, 1});
  CHECK(same_vertices(r111, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}}));
  CHECK(r111.max_weighted(rat(1), rat(1)) == rat(1));

  const auto r126 = region_no({1, 2, 6});
  CHECK(r126.max_weighted(rat(1), rat(0)) == rat(3));
  CHECK(r126.max_weighted(rat(1), rat(1)) == rat(4));
  CHECK(r126.diagonal_max() == rat(2));

  // enough receive antennas: feedback stops helping
  CHECK(polytope_equal(region_no({1, 2, 6}), region_csi({1, 2, 6})));
  CHECK(polytope_equal(region_no({1, 1, 3}), region_csi({1, 1, 3})));
}

TEST_CASE("perfect-CSI single-antenna square") {
  const auto square = region_perfect_siso();
  CHECK(same_vertices(square, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(1), rat(1)}, {rat(0), rat(1)}}));
  CHECK(square.max_weighted(rat(1), rat(1)) == rat(2));
}

TEST_CASE("feedback to transmitters only: unchanged when the scheme ignores relay feedback") {
  // conditions I, III, V
  for (const AntennaConfig c : {AntennaConfig{1, 2, 3}, AntennaConfig{1, 1, 1},
                                AntennaConfig{2, 1, 2}, AntennaConfig{2, 3, 1},
                                AntennaConfig{2, 3, 2}}) {
    CHECK(polytope_equal(region_no_cr_feedback(c), region_csi(c)));
  }
}

TEST_CASE("feedback to transmitters only: strictly smaller inside the middle band") {
  // condition II, 2*mt >= mr: symmetric corner (mt+mc)*mt / (3*mt+mc-mr)
  const auto r122 = region_no_cr_feedback({1, 2, 2});
  CHECK(r122.max_weighted(rat(1), rat(0)) == rat(2));
  CHECK(r122.diagonal_max() == rat(1));  // corner (1,1) sits on the sum edge
  CHECK(r122.max_weighted(rat(1), rat(1)) == rat(2));
  CHECK(polytope_equal(r122, Polytope2D::from_points({{rat(2), rat(0)}, {rat(0), rat(2)}})));
  CHECK(polytope_contains(region_csi({1, 2, 2}), r122));
  CHECK_FALSE(polytope_equal(region_csi({1, 2, 2}), r122));

  // condition IV, 2*mt >= mr: symmetric corner (mt+mr)/3
  const auto r142 = region_no_cr_feedback({1, 4, 2});
  CHECK(r142.diagonal_max() == rat(1));
  CHECK(polytope_equal(r142, Polytope2D::from_points({{rat(2), rat(0)}, {rat(0), rat(2)}})));
  CHECK_FALSE(polytope_equal(region_csi({1, 4, 2}), r142));

  const auto r253 = region_no_cr_feedback({2, 5, 3});
  CHECK(r253.diagonal_max() == rat(5, 3));
  CHECK(r253.max_weighted(rat(1), rat(1)) == rat(10, 3));
  CHECK(same_vertices(r253, {{rat(0), rat(0)},
                             {rat(3), rat(0)},
                             {rat(5, 3), rat(5, 3)},
                             {rat(0), rat(3)}}));
  CHECK(polytope_contains(region_csi({2, 5, 3}), r253));
  CHECK_FALSE(polytope_equal(region_csi({2, 5, 3}), r253));

  // 2*mt < mr: time division beats the retransmission corner
  const auto r143 = region_no_cr_feedback({1, 4, 3});
  CHECK(r143.max_weighted(rat(1), rat(0)) == rat(3));
  CHECK(r143.max_weighted(rat(1), rat(1)) == rat(3));
  CHECK(r143.diagonal_max() == rat(3, 2));
}

TEST_CASE("losing relay feedback hurts exactly when mt < mr < mt+mc") {
  for (int mt = 1; mt <= 5; ++mt)
    for (int mc = 1; mc <= 5; ++mc)
      for (int mr = 1; mr <= 5; ++mr) {
        const AntennaConfig c{mt, mc, mr};
        const auto full = region_csi(c);
        const auto reduced = region_no_cr_feedback(c);
        CHECK(polytope_contains(full, reduced));
        const bool strict = mt < mr && mr < mt + mc;
        CHECK(polytope_equal(full, reduced) == !strict);
      }
}

TEST_CASE("sum-DoF comparison: frozen rows") {
  // plenty of receive antennas: every network saturates at the transmit total
  const auto r228 = sum_dof_comparison({2, 2, 8});
  CHECK(r228.regime == 1);
  CHECK(r228.broadcast == rat(6));
  CHECK(r228.with_relay == rat(6));
  CHECK(r228.without_relay == rat(6));

  const auto r123 = sum_dof_comparison({1, 2, 3});
  CHECK(r123.regime == 2);
  CHECK(r123.broadcast == rat(24, 7));
  CHECK(r123.with_relay == rat(3));
  CHECK(r123.without_relay == rat(3));

  const auto r143 = sum_dof_comparison({1, 4, 3});
  CHECK(r143.regime == 3);
  CHECK(r143.broadcast == rat(4));
  CHECK(r143.with_relay == rat(15, 4));
  CHECK(r143.without_relay == rat(3));

  const auto r323 = sum_dof_comparison({3, 2, 3});
  CHECK(r323.regime == 4);
  CHECK(r323.broadcast == rat(4));
  CHECK(r323.with_relay == rat(15, 4));
  CHECK(r323.without_relay == rat(24, 7));

  const auto r142 = sum_dof_comparison({1, 4, 2});
  CHECK(r142.regime == 5);
  CHECK(r142.broadcast == rat(8, 3));
  CHECK(r142.with_relay == rat(8, 3));
  CHECK(r142.without_relay == rat(8, 3));

  // odd relay counts have no relayless counterpart with integer antennas
  CHECK_FALSE(sum_dof_comparison({1, 1, 4}).without_relay.has_value());
  CHECK(sum_dof_comparison({1, 1, 4}).regime == 1);
  CHECK(sum_dof_comparison({1, 1, 4}).with_relay == rat(3));
}

TEST_CASE("sum-DoF comparison: consistency over a grid") {
  for (int mt = 1; mt <= 5; ++mt)
    for (int mc = 1; mc <= 5; ++mc)
      for (int mr = 1; mr <= 5; ++mr) {
        const AntennaConfig c{mt, mc, mr};
        const auto row = sum_dof_comparison(c);
        // the middle column is the sum DoF of the region with relay feedback
        CHECK(row.with_relay == region_csi(c).max_weighted(rat(1), rat(1)));
        // more cooperation never hurts
        CHECK(row.broadcast >= row.with_relay);
        if (row.without_relay) CHECK(row.with_relay >= *row.without_relay);
        CHECK(row.regime >= 1);
        CHECK(row.regime <= 5);
      }
}

TEST_CASE("cognitive interference channel bounds") {
  const auto b232 = cognitive_ic_bounds(2, 3, 2);
  CHECK(b232.lower.max_weighted(rat(1), rat(1)) == rat(12, 5));
  CHECK(b232.upper.max_weighted(rat(1), rat(1)) == rat(8, 3));
  CHECK(polytope_contains(b232.upper, b232.lower));
  CHECK_FALSE(polytope_equal(b232.upper, b232.lower));

  // single extra antenna at one receive antenna: the bounds close
  const auto b121 = cognitive_ic_bounds(1, 2, 1);
  CHECK(polytope_equal(b121.lower, b121.upper));
  CHECK(b121.lower.max_weighted(rat(1), rat(1)) == rat(4, 3));
  CHECK(polytope_equal(b121.lower, region_csi({1, 1, 1})));

  CHECK_THROWS_AS(cognitive_ic_bounds(2, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(cognitive_ic_bounds(3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(cognitive_ic_bounds(0, 1, 2), std::invalid_argument);

  for (int tx = 1; tx <= 3; ++tx)
    for (int cog = tx + 1; cog <= 5; ++cog)
      for (int rx = 1; rx <= 4; ++rx) {
        const auto b = cognitive_ic_bounds(tx, cog, rx);
        CHECK(polytope_contains(b.upper, b.lower));
      }
}
