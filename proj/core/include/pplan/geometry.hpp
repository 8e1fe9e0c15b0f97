#pragma once

// Axis-aligned rectangle arithmetic for tabletop footprints.
//
// All lengths are double-precision meters in the table frame. Footprints are
// closed rectangles, but collisions use open-interior semantics: two rects
// that only share an edge or a corner do not overlap.

#include <array>
#include <cmath>
#include <string_view>
#include <utility>

namespace pplan {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
  constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct HalfDims {
  double a{0.0};  // half-extent along x
  double b{0.0};  // half-extent along y

  bool valid() const { return a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b); }
  constexpr bool operator==(const HalfDims&) const = default;
};

struct Rect {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {(lo.x + hi.x) * 0.5, (lo.y + hi.y) * 0.5}; }
  bool valid() const { return lo.finite() && hi.finite() && lo.x <= hi.x && lo.y <= hi.y; }
  constexpr bool operator==(const Rect&) const = default;
};

/// Push directions. Each side names the direction the pusher travels in.
enum class Side { Left, Right, Up, Down };

inline constexpr std::array<Side, 4> kAllSides{Side::Left, Side::Right, Side::Up, Side::Down};

constexpr Vec2 direction(Side s) {
  switch (s) {
    case Side::Left: return {-1.0, 0.0};
    case Side::Right: return {1.0, 0.0};
    case Side::Up: return {0.0, 1.0};
    case Side::Down: return {0.0, -1.0};
  }
  return {};
}

constexpr Side opposite(Side s) {
  switch (s) {
    case Side::Left: return Side::Right;
    case Side::Right: return Side::Left;
    case Side::Up: return Side::Down;
    case Side::Down: return Side::Up;
  }
  return s;
}

constexpr bool is_horizontal(Side s) { return s == Side::Left || s == Side::Right; }

std::string_view to_string(Side s);
/// Throws std::invalid_argument on an unknown name.
Side side_from_string(std::string_view name);

Rect rect_from_center(Vec2 center, HalfDims half);

/// True iff the interiors intersect (shared area > 0).
bool overlaps(const Rect& r1, const Rect& r2);

/// True iff inner lies inside outer; boundary contact is allowed.
bool contains(const Rect& outer, const Rect& inner);

Rect translate(const Rect& r, Vec2 offset);

/// Bounding rect of r and r moved `distance` along `side`. For axis-aligned
/// motion this is exactly the swept region.
Rect sweep(const Rect& r, Side side, double distance);

/// Rect shrunk by `margin` on every side (may become inverted when the margin
/// exceeds half the extent; contains() then rejects everything).
Rect shrink(const Rect& r, double margin);

struct Extent {
  double near;
  double far;
};

/// Projection of r on the travel axis of `side`, signed so that larger values
/// are further along the travel direction. far(r, s) == -near(r, opposite(s)).
Extent axis_extent(const Rect& r, Side side);

/// Perpendicular interval of r relative to the travel axis of `side`.
std::pair<double, double> cross_extent(const Rect& r, Side side);

}  // namespace pplan
