#pragma once

#include <cmath>
#include <optional>

namespace monodraw {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default angular margin for strictness decisions (radians).
inline constexpr double kDefaultAngleEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  bool isZero() const { return x == 0.0 && y == 0.0; }

  Vec2 normalized() const;
  /// Counterclockwise rotation by pi/2.
  Vec2 perp() const { return {-y, x}; }
  /// Angle of the vector in (-pi, pi].
  double angle() const { return std::atan2(y, x); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2() = default;
  Point2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator+(Vec2 v) const { return {x + v.x, y + v.y}; }
  Point2 operator-(Vec2 v) const { return {x - v.x, y - v.y}; }
  bool operator==(Point2 o) const { return x == o.x && y == o.y; }
  bool operator!=(Point2 o) const { return !(*this == o); }
};

inline double dist(Point2 a, Point2 b) { return (b - a).norm(); }

inline Vec2 dirFromAngle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Normalizes an angle to [0, 2*pi).
double normalizeAngle(double theta);

/// Counterclockwise sweep from direction `from` to direction `to`, in [0, 2*pi).
double ccwSweep(Vec2 from, Vec2 to);

/// Smallest angle between two nonzero vectors, in [0, pi].
/// Throws std::domain_error on a zero vector.
double angleBetween(Vec2 x, Vec2 y);

/// True iff the angle between x and d is strictly below pi/2 (dot product
/// strictly positive); orthogonal vectors do not count.
bool isMonotoneWrt(Vec2 x, Vec2 d);

/// Open wedge at `apex` swept counterclockwise from dirLo to dirHi.
/// Sweep must be strictly between 0 and 2*pi; membership is strict.
struct Cone {
  Point2 apex;
  Vec2 dirLo;
  Vec2 dirHi;

  double sweep() const { return ccwSweep(dirLo, dirHi); }
  bool contains(Point2 p) const;
};

struct Circle {
  Point2 center;
  double radius = 0.0;

  bool containsStrict(Point2 p) const { return dist(center, p) < radius; }
};

/// Counterclockwise arc from angleStart to angleEnd on a circle.
struct CircleArc {
  Point2 center;
  double radius = 0.0;
  double angleStart = 0.0;
  double angleEnd = 0.0;

  double sweep() const { return normalizeAngle(angleEnd - angleStart); }
  Point2 pointAt(double theta) const { return center + radius * dirFromAngle(theta); }
};

/// Open cone-disk intersection at a shared apex/center.
struct PizzaSlice {
  Point2 apex;
  Vec2 dirLo;
  double sweep = 0.0;
  double radius = 0.0;

  bool empty() const { return sweep <= 0.0 || radius <= 0.0; }
};

/// Intersects a cone with a disk centered at its apex.
/// Throws std::invalid_argument if apex and center differ.
PizzaSlice coneIntersectDisk(const Cone& c, const Circle& d);

/// Supremum radius of an open disk centered at p that fits inside the cone.
/// Returns 0 when p lies outside the cone or on its boundary.
double maxDiskRadiusInCone(Point2 p, const Cone& c);

/// Sign of the orientation of (a, b, c) with an error-bound filter:
/// +1 counterclockwise, -1 clockwise, 0 when the determinant is within the
/// floating-point error bound (reported as degenerate, never rounded).
int orientation(Point2 a, Point2 b, Point2 c);

/// Unfiltered orientation determinant.
double orientationDet(Point2 a, Point2 b, Point2 c);

/// True iff the closed segments ab and cd intersect, excluding an
/// intersection that consists only of a shared endpoint.
/// Throws std::invalid_argument on a zero-length segment.
bool segmentsIntersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// Distance from point p to the segment ab.
double pointSegmentDistance(Point2 p, Point2 a, Point2 b);

/// Distance from point p to the ray origin + t*dir, t >= 0.
double pointRayDistance(Point2 p, Point2 origin, Vec2 dir);

/// True iff segment ab intersects the ray origin + t*dir (t >= 0), excluding
/// the case where they only share the ray origin.
bool segmentIntersectsRay(Point2 a, Point2 b, Point2 origin, Vec2 dir, double raySkip = 0.0);

/// True iff the two rays intersect at parameters t1, t2 > skip.
bool raysIntersect(Point2 o1, Vec2 d1, Point2 o2, Vec2 d2, double skip = 0.0);

}  // namespace monodraw
