#include "mazu/render.hpp"

#include <cstdio>
#include <sstream>

#include "mazu/error.hpp"

namespace mazu {

namespace {

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                          "#b07aa1", "#ff9da7", "#9c755f", "#86bcb6", "#8cd17d", "#d4a6c8"};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(const Raster& raster, const SvgStyle& style) : raster_(raster), style_(style) {
    if (static_cast<std::size_t>(raster.cellCount()) > kSvgCellLimit)
      throw Error(ErrorCode::kPayloadTooLarge, "raster exceeds the SVG cell limit; render a smaller window or coarser h");
    const auto& n = raster.size();
    layer_ = raster.dim() == 3 ? style.slice.value_or(n[2] / 2) : 0;
    if (layer_ < 0 || layer_ >= n[2]) throw Error(ErrorCode::kInvalidArgument, "slice outside the raster");
    width_ = n[0] * style.cellPx;
    height_ = n[1] * style.cellPx;
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_) << "\" height=\"" << fmt(height_)
         << "\" viewBox=\"0 0 " << fmt(width_) << ' ' << fmt(height_) << "\">\n";
    out_ << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width_) << "\" height=\"" << fmt(height_)
         << "\" fill=\"#ffffff\"/>\n";
  }

  int layer() const { return layer_; }

  double px(double x) const { return (x - raster_.origin().x) / raster_.h() * style_.cellPx; }
  double py(double y) const { return height_ - (y - raster_.origin().y) / raster_.h() * style_.cellPx; }

  // Fills runs of consecutive cells in each row with the color from `color`
  // (nullptr skips the cell).
  template <class ColorFn>
  void cells(ColorFn&& color) {
    const auto& n = raster_.size();
    for (int j = 0; j < n[1]; ++j) {
      int i = 0;
      while (i < n[0]) {
        const char* c = color(raster_.index(i, j, layer_));
        if (!c) {
          ++i;
          continue;
        }
        int start = i;
        while (i < n[0] && color(raster_.index(i, j, layer_)) == c) ++i;
        out_ << "<rect x=\"" << fmt(start * style_.cellPx) << "\" y=\"" << fmt(height_ - (j + 1) * style_.cellPx)
             << "\" width=\"" << fmt((i - start) * style_.cellPx) << "\" height=\"" << fmt(style_.cellPx)
             << "\" fill=\"" << c << "\"/>\n";
      }
    }
  }

  void blocked() {
    if (!style_.blockedEdges) return;
    const auto& n = raster_.size();
    const double s = style_.cellPx;
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        CellId c = raster_.index(i, j, layer_);
        if (raster_.blocked(c, 0)) line((i + 1) * s, height_ - j * s, (i + 1) * s, height_ - (j + 1) * s);
        if (raster_.blocked(c, 1)) line(i * s, height_ - (j + 1) * s, (i + 1) * s, height_ - (j + 1) * s);
      }
  }

  void line(double x0, double y0, double x1, double y1, const char* stroke = "#000000") {
    out_ << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\"" << fmt(y1)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }

  void annotations() {
    const double s = style_.cellPx;
    for (Point p : style_.probes) {
      double x = px(p.x), y = py(p.y);
      line(x - 2 * s, y - 2 * s, x + 2 * s, y + 2 * s, "#d62728");
      line(x - 2 * s, y + 2 * s, x + 2 * s, y - 2 * s, "#d62728");
    }
    if (!style_.probes.empty())
      for (double r : style_.circles)
        out_ << "<circle cx=\"" << fmt(px(style_.probes[0].x)) << "\" cy=\"" << fmt(py(style_.probes[0].y))
             << "\" r=\"" << fmt(r / raster_.h() * s) << "\" fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"4 2\"/>\n";
  }

  void polyline(const std::vector<CellId>& path) {
    if (path.empty()) return;
    out_ << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) {
      Point p = raster_.center(path[i]);
      out_ << (i ? " " : "") << fmt(px(p.x)) << ',' << fmt(py(p.y));
    }
    out_ << "\"/>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  const Raster& raster_;
  const SvgStyle& style_;
  int layer_ = 0;
  double width_ = 0, height_ = 0;
  std::ostringstream out_;
};

}  // namespace

std::string renderRasterSvg(const Raster& raster, const SvgStyle& style) {
  Canvas cv(raster, style);
  cv.cells([&](CellId c) -> const char* { return raster.inside(c) ? "#c6dbef" : nullptr; });
  cv.blocked();
  cv.annotations();
  return cv.finish();
}

std::string renderLabelingSvg(const Raster& raster, const ComponentLabeling& labeling, const SvgStyle& style) {
  Canvas cv(raster, style);
  cv.cells([&](CellId c) -> const char* {
    if (!raster.inside(c)) return nullptr;
    int l = labeling.labels[c];
    return l < 0 ? "#e0e0e0" : kPalette[l % kPaletteSize];
  });
  cv.blocked();
  cv.annotations();
  return cv.finish();
}

std::string renderPathSvg(const Raster& raster, const std::vector<CellId>& path, const SvgStyle& style) {
  Canvas cv(raster, style);
  cv.cells([&](CellId c) -> const char* { return raster.inside(c) ? "#c6dbef" : nullptr; });
  cv.blocked();
  cv.polyline(path);
  cv.annotations();
  return cv.finish();
}

std::string renderVerdictSvg(const BoundaryVerdict& verdict, SvgStyle style) {
  if (verdict.ladder.scales.empty()) throw Error(ErrorCode::kInvalidArgument, "verdict has no ladder scales");
  const BallAnalysis& top = verdict.ladder.scales.front();
  style.probes.insert(style.probes.begin(), verdict.x0);
  if (style.circles.empty())
    for (const auto& b : verdict.ladder.scales) style.circles.push_back(b.r);
  if (top.dim == 3 && !style.slice) {
    CellId c = top.raster->locate(verdict.x0);
    if (c != kNoCell) style.slice = top.raster->coords(c)[2];
  }
  return renderLabelingSvg(*top.raster, *top.labeling, style);
}

}  // namespace mazu
