#include "pplan/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pplan {

std::string_view to_string(Side s) {
  switch (s) {
    case Side::Left: return "Left";
    case Side::Right: return "Right";
    case Side::Up: return "Up";
    case Side::Down: return "Down";
  }
  return "?";
}

Side side_from_string(std::string_view name) {
  for (Side s : kAllSides) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown side '" + std::string(name) + "'");
}

Rect rect_from_center(Vec2 center, HalfDims half) {
  return {{center.x - half.a, center.y - half.b}, {center.x + half.a, center.y + half.b}};
}

bool overlaps(const Rect& r1, const Rect& r2) {
  return r1.lo.x < r2.hi.x && r2.lo.x < r1.hi.x && r1.lo.y < r2.hi.y && r2.lo.y < r1.hi.y;
}

bool contains(const Rect& outer, const Rect& inner) {
  return outer.lo.x <= inner.lo.x && inner.hi.x <= outer.hi.x && outer.lo.y <= inner.lo.y &&
         inner.hi.y <= outer.hi.y;
}

Rect translate(const Rect& r, Vec2 offset) { return {r.lo + offset, r.hi + offset}; }

Rect sweep(const Rect& r, Side side, double distance) {
  const Rect moved = translate(r, direction(side) * distance);
  return {{std::min(r.lo.x, moved.lo.x), std::min(r.lo.y, moved.lo.y)},
          {std::max(r.hi.x, moved.hi.x), std::max(r.hi.y, moved.hi.y)}};
}

Rect shrink(const Rect& r, double margin) {
  return {{r.lo.x + margin, r.lo.y + margin}, {r.hi.x - margin, r.hi.y - margin}};
}

Extent axis_extent(const Rect& r, Side side) {
  switch (side) {
    case Side::Right: return {r.lo.x, r.hi.x};
    case Side::Left: return {-r.hi.x, -r.lo.x};
    case Side::Up: return {r.lo.y, r.hi.y};
    case Side::Down: return {-r.hi.y, -r.lo.y};
  }
  return {0.0, 0.0};
}

std::pair<double, double> cross_extent(const Rect& r, Side side) {
  if (is_horizontal(side)) return {r.lo.y, r.hi.y};
  return {r.lo.x, r.hi.x};
}

}  // namespace pplan
