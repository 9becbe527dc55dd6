#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "iccr/channel.hpp"

namespace iccr {

using Rational = boost::rational<long long>;

// "p/q" in lowest terms, plain "p" when the denominator is 1
std::string to_string(const Rational&);
std::optional<Rational> parse_rational(const std::string&);

// a*da + b*db <= c
struct Halfspace {
  Rational a, b, c;
};

struct RatPoint {
  Rational x, y;
};

bool operator==(const RatPoint&, const RatPoint&);

// Convex region of nonnegative DoF pairs (da, db). The nonnegativity
// constraints are implicit and not listed in halfspaces(). Regions are
// bounded and contain the origin by construction; both are checked.
class Polytope2D {
 public:
  static Polytope2D from_halfspaces(std::vector<Halfspace> hs);
  // convex hull of the given points (plus the origin)
  static Polytope2D from_points(std::vector<RatPoint> points);

  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  // counterclockwise, starting at the lexicographically smallest vertex
  const std::vector<RatPoint>& vertices() const { return vertices_; }

  bool contains(const RatPoint& p) const;
  // max wa*da + wb*db over the region (weights must be nonnegative)
  Rational max_weighted(const Rational& wa, const Rational& wb) const;
  // largest t with (t, t) in the region
  Rational diagonal_max() const;

 private:
  std::vector<Halfspace> halfspaces_;
  std::vector<RatPoint> vertices_;
};

bool polytope_contains(const Polytope2D& outer, const Polytope2D& inner);
bool polytope_equal(const Polytope2D&, const Polytope2D&);

// Achievable DoF region under delayed feedback with a relay that also gets
// the feedback. The three delayed flavors (CSI, output, Shannon) give the
// same region; the named accessors all evaluate the same formula.
Polytope2D region_csi(const AntennaConfig&);
Polytope2D region_output(const AntennaConfig&);
Polytope2D region_shannon(const AntennaConfig&);

// Converse bound for all delayed-feedback flavors; coincides with region_csi.
Polytope2D region_outer_delayed(const AntennaConfig&);

// No feedback anywhere.
Polytope2D region_no(const AntennaConfig&);

// Single-antenna reference under perfect instantaneous CSI: the unit square.
Polytope2D region_perfect_siso();

// Achievable region when delayed feedback reaches the transmitters only.
Polytope2D region_no_cr_feedback(const AntennaConfig&);

// Sum-DoF closed forms for three networks with the same total antennas:
// broadcast (one transmitter with 2*tx+relay antennas), this channel, and a
// relayless interference channel with tx+relay/2 antennas per transmitter.
// The last column requires an even relay count and is absent otherwise.
struct SumDofRow {
  int regime = 0;  // 1..5, the antenna-ratio case that selected the formulas
  Rational broadcast;
  Rational with_relay;
  std::optional<Rational> without_relay;
};

SumDofRow sum_dof_comparison(const AntennaConfig&);

// DoF bounds for a 2-user cognitive interference channel where one
// transmitter (cognitive_tx antennas) knows both messages. Requires
// cognitive_tx > tx. Both bounds are regions of this channel's family:
// lower splits the cognitive transmitter as tx + (cognitive_tx - tx),
// upper grants it an extra colocated relay with all cognitive_tx antennas.
struct CognitiveIcBounds {
  Polytope2D lower;
  Polytope2D upper;
};

CognitiveIcBounds cognitive_ic_bounds(int tx, int cognitive_tx, int rx);

}  // namespace iccr
