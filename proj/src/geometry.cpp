#include "monodraw/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace monodraw {

Vec2 Vec2::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
  return {x / n, y / n};
}

double normalizeAngle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

double ccwSweep(Vec2 from, Vec2 to) {
  return normalizeAngle(to.angle() - from.angle());
}

double angleBetween(Vec2 x, Vec2 y) {
  if (x.isZero() || y.isZero()) throw std::domain_error("angleBetween: zero vector");
  const double c = x.dot(y) / (x.norm() * y.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

bool isMonotoneWrt(Vec2 x, Vec2 d) {
  if (x.isZero() || d.isZero()) throw std::domain_error("isMonotoneWrt: zero vector");
  return x.dot(d) > 0.0;
}

bool Cone::contains(Point2 p) const {
  const Vec2 v = p - apex;
  if (v.isZero()) return false;
  const double s = sweep();
  const double a = ccwSweep(dirLo, v);
  return a > 0.0 && a < s;
}

PizzaSlice coneIntersectDisk(const Cone& c, const Circle& d) {
  if (c.apex != d.center) throw std::invalid_argument("coneIntersectDisk: apex must equal disk center");
  PizzaSlice s;
  s.apex = c.apex;
  s.dirLo = c.dirLo;
  s.sweep = c.sweep();
  s.radius = d.radius;
  return s;
}

double maxDiskRadiusInCone(Point2 p, const Cone& c) {
  if (!c.contains(p)) return 0.0;
  const Vec2 v = p - c.apex;
  auto rayDist = [&](Vec2 dir) {
    const Vec2 u = dir.normalized();
    const double t = v.dot(u);
    if (t <= 0.0) return v.norm();
    return std::abs(u.cross(v));
  };
  return std::min(rayDist(c.dirLo), rayDist(c.dirHi));
}

double orientationDet(Point2 a, Point2 b, Point2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int orientation(Point2 a, Point2 b, Point2 c) {
  const double l = (b.x - a.x) * (c.y - a.y);
  const double r = (b.y - a.y) * (c.x - a.x);
  const double det = l - r;
  // Relative error bound for a 2x2 difference of products, see Shewchuk's
  // analysis of orient2d; values inside the bound are reported degenerate.
  const double errBound = 3.3306690738754716e-16 * (std::abs(l) + std::abs(r));
  if (det > errBound) return 1;
  if (det < -errBound) return -1;
  return 0;
}

namespace {

bool onSegment(Point2 a, Point2 b, Point2 p) {
  // Assumes p collinear with ab.
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Collinear segments sharing endpoint s; true iff they overlap beyond s.
bool collinearOverlapBeyondPoint(Point2 s, Point2 aOther, Point2 bOther) {
  return (aOther - s).dot(bOther - s) > 0.0;
}

}  // namespace

bool segmentsIntersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (a == b || c == d) throw std::invalid_argument("segmentsIntersect: zero-length segment");

  // Shared endpoints: only a crossing beyond the shared point counts.
  const bool shareAC = a == c, shareAD = a == d, shareBC = b == c, shareBD = b == d;
  if (shareAC || shareAD || shareBC || shareBD) {
    const Point2 s = shareAC || shareAD ? a : b;
    const Point2 p = shareAC || shareAD ? b : a;
    const Point2 q = shareAC || shareBC ? d : c;
    if (orientation(s, p, q) != 0) return false;
    return collinearOverlapBeyondPoint(s, p, q);
  }

  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);

  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;

  if (o1 == 0 && onSegment(a, b, c)) return true;
  if (o2 == 0 && onSegment(a, b, d)) return true;
  if (o3 == 0 && onSegment(c, d, a)) return true;
  if (o4 == 0 && onSegment(c, d, b)) return true;
  return false;
}

double pointSegmentDistance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.norm2();
  if (len2 == 0.0) return dist(p, a);
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return dist(p, a + t * ab);
}

double pointRayDistance(Point2 p, Point2 origin, Vec2 dir) {
  const Vec2 u = dir.normalized();
  const double t = (p - origin).dot(u);
  if (t <= 0.0) return dist(p, origin);
  return std::abs(u.cross(p - origin));
}

bool segmentIntersectsRay(Point2 a, Point2 b, Point2 origin, Vec2 dir, double raySkip) {
  // Solve origin + t*dir = a + s*(b-a).
  const Vec2 ab = b - a;
  const double denom = dir.cross(ab);
  const Vec2 oa = a - origin;
  if (denom == 0.0) {
    // Parallel; overlap only when collinear.
    if (dir.cross(oa) != 0.0) return false;
    const Vec2 u = dir.normalized();
    const double ta = oa.dot(u);
    const double tb = (b - origin).dot(u);
    return std::max(ta, tb) > raySkip;
  }
  const double t = oa.cross(ab) / denom;
  const double s = oa.cross(dir) / denom;
  return t > raySkip && s >= 0.0 && s <= 1.0;
}

bool raysIntersect(Point2 o1, Vec2 d1, Point2 o2, Vec2 d2, double skip) {
  const double denom = d1.cross(d2);
  const Vec2 v = o2 - o1;
  if (denom == 0.0) {
    if (d1.cross(v) != 0.0) return false;
    // Collinear rays: they overlap unless pointing strictly apart.
    if (d1.dot(d2) > 0.0) return true;
    return v.dot(d1) > 2.0 * skip;
  }
  const double t1 = v.cross(d2) / denom;
  const double t2 = v.cross(d1) / denom;
  return t1 > skip && t2 > skip;
}

}  // namespace monodraw
