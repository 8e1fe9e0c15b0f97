#include "render.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "pplan/io.hpp"
#include "pplan/primitives.hpp"

namespace pplan::cli {

namespace {

constexpr double kMargin = 10.0;
constexpr std::array<const char*, 10> kPalette{"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                               "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

struct Frame {
  Rect ws;
  double scale;
  double px(double x) const { return kMargin + (x - ws.lo.x) * scale; }
  double py(double y) const { return kMargin + (ws.hi.y - y) * scale; }
};

void rect_elem(std::ostringstream& os, const Frame& f, const Rect& r, const std::string& cls,
               const std::string& attrs) {
  os << "<rect class=\"" << cls << "\" x=\"" << fixed6(f.px(r.lo.x)) << "\" y=\"" << fixed6(f.py(r.hi.y))
     << "\" width=\"" << fixed6(r.width() * f.scale) << "\" height=\"" << fixed6(r.height() * f.scale)
     << "\" " << attrs << "/>\n";
}

}  // namespace

std::string color_for(const ObjectSpec& object) {
  if (object.color) return *object.color;
  return kPalette[object.id % kPalette.size()];
}

std::string render_scene(const Scene& scene, const RenderStyle& style, std::optional<ObjectId> grasped,
                         const std::vector<Action>& arrows) {
  const Frame f{scene.workspace(), style.scale};
  const double w = scene.workspace().width() * style.scale + 2 * kMargin;
  const double h = scene.workspace().height() * style.scale + 2 * kMargin;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed6(w) << "\" height=\"" << fixed6(h)
     << "\" viewBox=\"0 0 " << fixed6(w) << " " << fixed6(h) << "\">\n";
  rect_elem(os, f, scene.workspace(), "workspace", "fill=\"#fafaf7\" stroke=\"#333333\" stroke-width=\"2\"");
  if (style.show_goals) {
    for (const auto& o : scene.objects()) {
      rect_elem(os, f, scene.goal_footprint(o.id), "goal",
                "fill=\"none\" stroke=\"" + color_for(o) + "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
    }
  }
  for (const auto& o : scene.objects()) {
    rect_elem(os, f, scene.footprint(o.id), "object",
              "fill=\"" + color_for(o) + "\" fill-opacity=\"0.85\" stroke=\"#222222\" stroke-width=\"1\"");
    const Vec2 c = scene.pose(o.id);
    os << "<text class=\"label\" x=\"" << fixed6(f.px(c.x)) << "\" y=\"" << fixed6(f.py(c.y))
       << "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << o.id << "</text>\n";
  }
  for (const Action& a : arrows) {
    const ObjectId id = action_object(a);
    const Vec2 from = scene.pose(id);
    std::vector<Vec2> pts{from};
    if (const auto* pp = std::get_if<PickPlace>(&a)) {
      pts.push_back(pp->destination);
    } else {
      const auto& ps = std::get<PushPlace>(a);
      pts.push_back(ps.pre_push);
      pts.push_back(scene.goal_pose(id));
    }
    os << "<polyline class=\"action\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << fixed6(f.px(pts[i].x)) << "," << fixed6(f.py(pts[i].y));
    }
    os << "\" fill=\"none\" stroke=\"" << color_for(scene.object(id)) << "\" stroke-width=\"1.5\"/>\n";
  }
  if (style.show_gripper && grasped) {
    const Vec2 c = scene.pose(*grasped);
    os << "<circle class=\"gripper\" cx=\"" << fixed6(f.px(c.x)) << "\" cy=\"" << fixed6(f.py(c.y))
       << "\" r=\"5.000000\" fill=\"#111111\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> render_frames(const Scene& start, const Plan& plan, const RenderStyle& style,
                                       const PushConfig& push) {
  std::vector<std::string> frames;
  Scene state = start;
  frames.push_back(render_scene(state, style));
  for (const Action& a : plan.actions) {
    state = apply_action(state, a, push);
    frames.push_back(render_scene(state, style, action_object(a)));
  }
  return frames;
}

std::string render_summary(const Summary& summary) {
  std::vector<std::string> variants;
  std::set<std::size_t> ns;
  for (const auto& c : summary.cells) {
    if (std::find(variants.begin(), variants.end(), c.variant) == variants.end()) variants.push_back(c.variant);
    ns.insert(c.n);
  }
  constexpr double panel_w = 420, panel_h = 260, left = 50, top = 30, gap = 40;
  const double width = 2 * panel_w + gap + 2 * left;
  const double height = panel_h + top + 70;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed6(width) << "\" height=\""
     << fixed6(height) << "\" viewBox=\"0 0 " << fixed6(width) << " " << fixed6(height) << "\">\n";

  auto panel = [&](double x0, const char* title, auto metric) {
    double ymax = 0.0;
    for (const auto& c : summary.cells) ymax = std::max(ymax, metric(c).mean + metric(c).stddev);
    if (ymax <= 0.0) ymax = 1.0;
    os << "<text x=\"" << fixed6(x0 + panel_w / 2) << "\" y=\"18.000000\" font-size=\"14\" "
       << "text-anchor=\"middle\">" << title << "</text>\n";
    os << "<line x1=\"" << fixed6(x0) << "\" y1=\"" << fixed6(top + panel_h) << "\" x2=\""
       << fixed6(x0 + panel_w) << "\" y2=\"" << fixed6(top + panel_h) << "\" stroke=\"#333333\"/>\n";
    const double group_w = panel_w / static_cast<double>(std::max<std::size_t>(1, ns.size()));
    const double bar_w = group_w * 0.8 / static_cast<double>(std::max<std::size_t>(1, variants.size()));
    std::size_t gi = 0;
    for (std::size_t n : ns) {
      const double gx = x0 + gi * group_w + group_w * 0.1;
      for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        const CellSummary* cell = nullptr;
        for (const auto& c : summary.cells) {
          if (c.variant == variants[vi] && c.n == n) cell = &c;
        }
        if (!cell) continue;
        const Stat s = metric(*cell);
        const double bh = s.mean / ymax * panel_h;
        const double bx = gx + vi * bar_w;
        os << "<rect class=\"bar\" x=\"" << fixed6(bx) << "\" y=\"" << fixed6(top + panel_h - bh)
           << "\" width=\"" << fixed6(bar_w) << "\" height=\"" << fixed6(bh) << "\" fill=\""
           << kPalette[vi % kPalette.size()] << "\"/>\n";
        const double cx = bx + bar_w / 2;
        const double y_hi = top + panel_h - (s.mean + s.stddev) / ymax * panel_h;
        const double y_lo = top + panel_h - std::max(0.0, s.mean - s.stddev) / ymax * panel_h;
        os << "<line class=\"errorbar\" x1=\"" << fixed6(cx) << "\" y1=\"" << fixed6(y_hi) << "\" x2=\""
           << fixed6(cx) << "\" y2=\"" << fixed6(y_lo) << "\" stroke=\"#111111\"/>\n";
      }
      os << "<text x=\"" << fixed6(gx + group_w * 0.4) << "\" y=\"" << fixed6(top + panel_h + 16)
         << "\" font-size=\"12\" text-anchor=\"middle\">N=" << n << "</text>\n";
      ++gi;
    }
  };
  panel(left, "Mean cost", [](const CellSummary& c) { return c.cost; });
  panel(left + panel_w + gap, "Mean actions", [](const CellSummary& c) { return c.actions; });

  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    const double lx = left + vi * 140.0;
    const double ly = top + panel_h + 36;
    os << "<rect x=\"" << fixed6(lx) << "\" y=\"" << fixed6(ly) << "\" width=\"12.000000\" height=\"12.000000\" "
       << "fill=\"" << kPalette[vi % kPalette.size()] << "\"/>\n";
    os << "<text x=\"" << fixed6(lx + 18) << "\" y=\"" << fixed6(ly + 10) << "\" font-size=\"12\">"
       << variants[vi] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace pplan::cli
