#include "iccr/regions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace iccr {

namespace {

using Int = long long;

Rational rat(Int n, Int d = 1) { return Rational(n, d); }

Int gcd3(Int a, Int b, Int c) {
  return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

// scale to coprime integer coefficients
Halfspace normalize(const Halfspace& h) {
  Int l = std::lcm(h.a.denominator(), std::lcm(h.b.denominator(), h.c.denominator()));
  Int a = boost::rational_cast<Int>(h.a * l);
  Int b = boost::rational_cast<Int>(h.b * l);
  Int c = boost::rational_cast<Int>(h.c * l);
  Int g = gcd3(a, b, c);
  if (g > 1) { a /= g; b /= g; c /= g; }
  return {rat(a), rat(b), rat(c)};
}

bool same(const Halfspace& x, const Halfspace& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c;
}

Rational cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool lex_less(const RatPoint& p, const RatPoint& q) {
  return p.x < q.x || (p.x == q.x && p.y < q.y);
}

// Andrew's monotone chain, counterclockwise, collinear points dropped
std::vector<RatPoint> hull_ccw(std::vector<RatPoint> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RatPoint& p, const RatPoint& q) { return p == q; }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;
  std::vector<RatPoint> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= rat(0)) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, lo = k + 1; i >= 0; --i) {
    while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= rat(0)) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

void rotate_to_lex_smallest(std::vector<RatPoint>& v) {
  auto it = std::min_element(v.begin(), v.end(), lex_less);
  std::rotate(v.begin(), it, v.end());
}

bool satisfies(const std::vector<Halfspace>& hs, const RatPoint& p) {
  if (p.x < rat(0) || p.y < rat(0)) return false;
  for (const auto& h : hs)
    if (h.a * p.x + h.b * p.y > h.c) return false;
  return true;
}

// throws if some nonnegative direction can escape every halfspace
void check_bounded(const std::vector<Halfspace>& hs) {
  std::vector<RatPoint> dirs = {{rat(1), rat(0)}, {rat(0), rat(1)}};
  for (const auto& h : hs) {
    // boundary directions of the cone {d >= 0 : a*dx + b*dy <= 0}
    dirs.push_back({-h.b, h.a});
    dirs.push_back({h.b, -h.a});
  }
  for (const auto& d : dirs) {
    if (d.x < rat(0) || d.y < rat(0) || (d.x == rat(0) && d.y == rat(0))) continue;
    bool escapes = true;
    for (const auto& h : hs) {
      if (h.a * d.x + h.b * d.y > rat(0)) {
        escapes = false;
        break;
      }
    }
    if (escapes) throw std::invalid_argument("region is unbounded");
  }
}

}  // namespace

std::string to_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

std::optional<Rational> parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    size_t used = 0;
    const Int num = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) return std::nullopt;
    if (slash == std::string::npos) return rat(num);
    const std::string den_str = s.substr(slash + 1);
    const Int den = std::stoll(den_str, &used);
    if (used != den_str.size() || den == 0) return std::nullopt;
    return Rational(num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool operator==(const RatPoint& p, const RatPoint& q) { return p.x == q.x && p.y == q.y; }

Polytope2D Polytope2D::from_halfspaces(std::vector<Halfspace> hs) {
  Polytope2D poly;
  for (auto& h : hs) {
    h = normalize(h);
    if (h.c < rat(0)) throw std::invalid_argument("region must contain the origin");
    if (h.a <= rat(0) && h.b <= rat(0)) continue;  // never binding on the quadrant
    bool dup = false;
    for (const auto& kept : poly.halfspaces_)
      if (same(kept, h)) { dup = true; break; }
    if (!dup) poly.halfspaces_.push_back(h);
  }
  check_bounded(poly.halfspaces_);

  // candidate vertices: pairwise boundary-line intersections, axes included
  struct Line { Rational a, b, c; };  // a*x + b*y = c
  std::vector<Line> lines = {{rat(1), rat(0), rat(0)}, {rat(0), rat(1), rat(0)}};
  for (const auto& h : poly.halfspaces_) lines.push_back({h.a, h.b, h.c});
  std::vector<RatPoint> feasible;
  for (size_t i = 0; i < lines.size(); ++i) {
    for (size_t j = i + 1; j < lines.size(); ++j) {
      const Rational det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (det == rat(0)) continue;
      RatPoint p{(lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det,
                 (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det};
      if (satisfies(poly.halfspaces_, p)) feasible.push_back(p);
    }
  }
  poly.vertices_ = hull_ccw(std::move(feasible));
  if (poly.vertices_.size() < 3) throw std::invalid_argument("region is degenerate");
  rotate_to_lex_smallest(poly.vertices_);
  return poly;
}

Polytope2D Polytope2D::from_points(std::vector<RatPoint> points) {
  points.push_back({rat(0), rat(0)});
  for (const auto& p : points)
    if (p.x < rat(0) || p.y < rat(0))
      throw std::invalid_argument("region points must be nonnegative");
  std::vector<RatPoint> hull = hull_ccw(std::move(points));
  if (hull.size() < 3) throw std::invalid_argument("region is degenerate");
  Polytope2D poly;
  const size_t n = hull.size();
  for (size_t i = 0; i < n; ++i) {
    const RatPoint& u = hull[i];
    const RatPoint& v = hull[(i + 1) % n];
    // outward normal of a counterclockwise edge
    Halfspace h{v.y - u.y, u.x - v.x, (v.y - u.y) * u.x + (u.x - v.x) * u.y};
    if (h.a <= rat(0) && h.b <= rat(0)) continue;  // axis edge, implicit
    poly.halfspaces_.push_back(normalize(h));
  }
  poly.vertices_ = std::move(hull);
  rotate_to_lex_smallest(poly.vertices_);
  return poly;
}

bool Polytope2D::contains(const RatPoint& p) const { return satisfies(halfspaces_, p); }

Rational Polytope2D::max_weighted(const Rational& wa, const Rational& wb) const {
  if (wa < rat(0) || wb < rat(0)) throw std::invalid_argument("weights must be nonnegative");
  Rational best(0);
  for (const auto& v : vertices_) best = std::max(best, wa * v.x + wb * v.y);
  return best;
}

Rational Polytope2D::diagonal_max() const {
  bool found = false;
  Rational best(0);
  for (const auto& h : halfspaces_) {
    const Rational d = h.a + h.b;
    if (d <= rat(0)) continue;
    const Rational t = h.c / d;
    if (!found || t < best) best = t;
    found = true;
  }
  if (!found) throw std::logic_error("diagonal unbounded");
  return best;
}

bool polytope_contains(const Polytope2D& outer, const Polytope2D& inner) {
  for (const auto& v : inner.vertices())
    if (!outer.contains(v)) return false;
  return true;
}

bool polytope_equal(const Polytope2D& p, const Polytope2D& q) {
  return polytope_contains(p, q) && polytope_contains(q, p);
}

Polytope2D region_csi(const AntennaConfig& config) {
  validate(config);
  const Int mt = config.tx, mc = config.relay, mr = config.rx;
  const Int c1 = std::min<Int>(mr, mt + mc);
  const Int c2 = std::min<Int>(2 * mr, mt + mc);
  const Int c3 = std::min<Int>(mr, 2 * mt + mc);
  // per-user caps plus the two crossed weighted-sum bounds, integer cleared
  return Polytope2D::from_halfspaces({{rat(1), rat(0), rat(c1)},
                                      {rat(0), rat(1), rat(c1)},
                                      {rat(c2), rat(c1), rat(c2 * c3)},
                                      {rat(c1), rat(c2), rat(c2 * c3)}});
}

Polytope2D region_output(const AntennaConfig& config) { return region_csi(config); }
Polytope2D region_shannon(const AntennaConfig& config) { return region_csi(config); }
Polytope2D region_outer_delayed(const AntennaConfig& config) { return region_csi(config); }

Polytope2D region_no(const AntennaConfig& config) {
  validate(config);
  const Int mt = config.tx, mc = config.relay, mr = config.rx;
  const Int single = std::min<Int>(mt + mc, mr);
  const Int sum = std::min<Int>(2 * mt + mc, mr);
  return Polytope2D::from_halfspaces({{rat(1), rat(0), rat(single)},
                                      {rat(0), rat(1), rat(single)},
                                      {rat(1), rat(1), rat(sum)}});
}

Polytope2D region_perfect_siso() {
  return Polytope2D::from_halfspaces({{rat(1), rat(0), rat(1)}, {rat(0), rat(1), rat(1)}});
}

Polytope2D region_no_cr_feedback(const AntennaConfig& config) {
  validate(config);
  const Int mt = config.tx, mc = config.relay, mr = config.rx;
  const ConditionLabel label = classify_condition(config);
  if (label == ConditionLabel::I || label == ConditionLabel::III || label == ConditionLabel::V)
    return region_csi(config);  // those schemes never use the relay's feedback

  const Int single = std::min<Int>(mt + mc, mr);
  if (2 * mt < mr) {
    // the symmetric corner falls under the time-sharing line, so plain
    // time division is the better achievable region
    return Polytope2D::from_halfspaces({{rat(1), rat(0), rat(single)},
                                        {rat(0), rat(1), rat(single)},
                                        {rat(1), rat(1), rat(mr)}});
  }
  const Rational corner = (label == ConditionLabel::II)
                              ? Rational((mt + mc) * mt, 3 * mt + mc - mr)
                              : Rational(mt + mr, 3);
  return Polytope2D::from_points(
      {{rat(single), rat(0)}, {rat(0), rat(single)}, {corner, corner}});
}

SumDofRow sum_dof_comparison(const AntennaConfig& config) {
  validate(config);
  const Int mt = config.tx, mc = config.relay, mr = config.rx;
  SumDofRow row;
  // boundaries are left closed, right open
  if (2 * mt + mc <= mr)
    row.regime = 1;
  else if (mt + mc <= mr)
    row.regime = 2;
  else if (2 * mt + mc <= 2 * mr)  // tx + relay/2 <= rx
    row.regime = 3;
  else if (mt + mc <= 2 * mr)
    row.regime = 4;
  else
    row.regime = 5;

  const Rational bc_mid(2 * (2 * mt + mc) * mr, 2 * mt + mc + mr);
  const Rational relay_mid(2 * (mt + mc) * mr, mt + mc + mr);
  const Rational tdm_like(4 * mr, 3);
  switch (row.regime) {
    case 1:
      row.broadcast = rat(2 * mt + mc);
      row.with_relay = rat(2 * mt + mc);
      break;
    case 2:
      row.broadcast = bc_mid;
      row.with_relay = rat(mr);
      break;
    case 3:
      row.broadcast = bc_mid;
      row.with_relay = relay_mid;
      break;
    case 4:
      row.broadcast = tdm_like;
      row.with_relay = relay_mid;
      break;
    default:
      row.broadcast = tdm_like;
      row.with_relay = tdm_like;
      break;
  }
  if (mc % 2 == 0) {
    const Int m = mt + mc / 2;  // per-transmitter antennas in the relayless network
    switch (row.regime) {
      case 1: row.without_relay = rat(2 * mt + mc); break;
      case 2:
      case 3: row.without_relay = rat(mr); break;
      case 4: row.without_relay = Rational(2 * m * mr, m + mr); break;
      default: row.without_relay = tdm_like; break;
    }
  }
  return row;
}

CognitiveIcBounds cognitive_ic_bounds(int tx, int cognitive_tx, int rx) {
  if (tx < 1 || rx < 1) throw std::invalid_argument("antenna counts must be positive");
  if (cognitive_tx <= tx)
    throw std::invalid_argument("cognitive transmitter needs more antennas than the other");
  CognitiveIcBounds bounds;
  bounds.lower = region_csi({tx, cognitive_tx - tx, rx});
  bounds.upper = region_csi({tx, cognitive_tx, rx});
  return bounds;
}

}  // namespace iccr
