#include "augmatch/svg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace augmatch {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

double to_px(const Rat& units, const Rat& scale) { return Rat(units / scale).convert_to<double>(); }

}  // namespace

std::string render_svg(const MatchingInstance& inst,
                       const std::optional<std::string>& provenance_json,
                       const RenderOptions& opts) {
  if (opts.scale <= 0) throw std::invalid_argument("render_svg: scale must be positive");

  Rat min_x(0), max_x(0), min_y(0), max_y(0);
  for (std::size_t i = 0; i < inst.vertices.size(); ++i) {
    const Pt& p = inst.vertices[i].pos;
    if (i == 0) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
    } else {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double pad = 20.0;
  auto X = [&](const Rat& x) { return pad + to_px(x - min_x, opts.scale); };
  auto Y = [&](const Rat& y) { return pad + to_px(max_y - y, opts.scale); };
  const double width = 2 * pad + to_px(max_x - min_x, opts.scale);
  const double height = 2 * pad + to_px(max_y - min_y, opts.scale);

  std::map<int, const Pt*> pos;
  for (const Vertex& v : inst.vertices) pos.emplace(v.id, &v.pos);
  auto lookup = [&pos](int id) -> const Pt& {
    auto it = pos.find(id);
    if (it == pos.end()) throw std::invalid_argument("render_svg: edge names a missing vertex id");
    return *it->second;
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" fill=\"white\"/>\n";

  if (opts.show_provenance && provenance_json) {
    nlohmann::json prov;
    try {
      prov = nlohmann::json::parse(*provenance_json);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("render_svg: bad provenance document: ") + e.what());
    }
    if (!prov.contains("gadgets") || !prov.contains("vertex_gadget"))
      throw std::invalid_argument("render_svg: provenance lacks gadget tables");
    const auto& gadgets = prov["gadgets"];
    const auto& vg = prov["vertex_gadget"];
    if (vg.size() != inst.vertices.size())
      throw std::invalid_argument("render_svg: provenance does not match the instance");
    struct Box {
      bool seen = false;
      Rat lo_x, hi_x, lo_y, hi_y;
    };
    std::vector<Box> boxes(gadgets.size());
    for (std::size_t i = 0; i < inst.vertices.size(); ++i) {
      std::size_t gi = vg[i].get<std::size_t>();
      if (gi >= boxes.size())
        throw std::invalid_argument("render_svg: provenance names a missing gadget");
      Box& b = boxes[gi];
      const Pt& p = inst.vertices[i].pos;
      if (!b.seen) {
        b.seen = true;
        b.lo_x = b.hi_x = p.x;
        b.lo_y = b.hi_y = p.y;
      } else {
        b.lo_x = std::min(b.lo_x, p.x);
        b.hi_x = std::max(b.hi_x, p.x);
        b.lo_y = std::min(b.lo_y, p.y);
        b.hi_y = std::max(b.hi_y, p.y);
      }
    }
    const Rat margin(2);
    for (std::size_t gi = 0; gi < boxes.size(); ++gi) {
      const Box& b = boxes[gi];
      if (!b.seen) continue;
      double x0 = X(b.lo_x - margin), x1 = X(b.hi_x + margin);
      double y0 = Y(b.hi_y + margin), y1 = Y(b.lo_y - margin);
      out << "<rect class=\"gadget-box\" x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\""
          << fmt(x1 - x0) << "\" height=\"" << fmt(y1 - y0)
          << "\" fill=\"none\" stroke=\"#8888cc\" stroke-width=\"0.5\"/>\n";
      std::string label = gadgets[gi].contains("label")
                              ? gadgets[gi]["label"].get<std::string>()
                              : std::to_string(gi);
      out << "<text class=\"gadget-label\" x=\"" << fmt(x0 + 1.0) << "\" y=\"" << fmt(y0 - 1.0)
          << "\" font-size=\"6\" fill=\"#8888cc\">" << label << "</text>\n";
    }
  }

  for (const auto& [a, b] : inst.mandatory_edges) {
    const Pt& pa = lookup(a);
    const Pt& pb = lookup(b);
    out << "<line class=\"edge\" x1=\"" << fmt(X(pa.x)) << "\" y1=\"" << fmt(Y(pa.y))
        << "\" x2=\"" << fmt(X(pb.x)) << "\" y2=\"" << fmt(Y(pb.y))
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  if (opts.highlight) {
    for (const auto& [a, b] : *opts.highlight) {
      const Pt& pa = lookup(a);
      const Pt& pb = lookup(b);
      out << "<line class=\"highlight\" x1=\"" << fmt(X(pa.x)) << "\" y1=\"" << fmt(Y(pa.y))
          << "\" x2=\"" << fmt(X(pb.x)) << "\" y2=\"" << fmt(Y(pb.y))
          << "\" stroke=\"#cc2222\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    }
  }

  for (const Vertex& v : inst.vertices) {
    double cx = X(v.pos.x), cy = Y(v.pos.y);
    if (opts.show_colors && v.color) {
      if (*v.color == Color::Cross) {
        out << "<path class=\"vertex\" d=\"M " << fmt(cx - 3) << " " << fmt(cy - 3) << " L "
            << fmt(cx + 3) << " " << fmt(cy + 3) << " M " << fmt(cx - 3) << " " << fmt(cy + 3)
            << " L " << fmt(cx + 3) << " " << fmt(cy - 3)
            << "\" stroke=\"black\" stroke-width=\"1\" fill=\"none\"/>\n";
      } else {
        out << "<circle class=\"vertex\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
            << "\" r=\"3\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
      }
    } else {
      out << "<circle class=\"vertex\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
          << "\" r=\"2\" fill=\"black\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace augmatch
