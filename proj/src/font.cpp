#include "scriptorium/font.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace scriptorium::font {

namespace {

struct Edge {
    double x0, y0, x1, y1;  // y0 < y1 always; dir carries the original orientation
    int dir;
};

void add_edge(std::vector<Edge>& edges, double x0, double y0, double x1, double y1) {
    if (y0 == y1) return;
    if (y0 < y1) {
        edges.push_back({x0, y0, x1, y1, +1});
    } else {
        edges.push_back({x1, y1, x0, y0, -1});
    }
}

// Flatten a quadratic segment into edges; subdivision count is driven by the
// maximum deviation of the curve from its chord.
void flatten_quad(std::vector<Edge>& edges, double x0, double y0, double cx, double cy,
                  double x1, double y1) {
    double devx = x0 - 2 * cx + x1;
    double devy = y0 - 2 * cy + y1;
    double dev = std::sqrt(devx * devx + devy * devy) / 4.0;
    int n = std::max(1, std::min(32, static_cast<int>(std::ceil(std::sqrt(dev / 0.1)))));
    double px = x0, py = y0;
    for (int i = 1; i <= n; ++i) {
        double t = static_cast<double>(i) / n;
        double mt = 1.0 - t;
        double qx = mt * mt * x0 + 2 * mt * t * cx + t * t * x1;
        double qy = mt * mt * y0 + 2 * mt * t * cy + t * t * y1;
        add_edge(edges, px, py, qx, qy);
        px = qx;
        py = qy;
    }
}

}  // namespace

uint8_t TrueTypeFont::u8(size_t off) const {
    if (off >= data_.size()) throw std::runtime_error("font: read past end of file");
    return data_[off];
}
uint16_t TrueTypeFont::u16(size_t off) const {
    return static_cast<uint16_t>((u8(off) << 8) | u8(off + 1));
}
uint32_t TrueTypeFont::u32(size_t off) const {
    return (static_cast<uint32_t>(u16(off)) << 16) | u16(off + 2);
}
int16_t TrueTypeFont::i16(size_t off) const { return static_cast<int16_t>(u16(off)); }

TrueTypeFont TrueTypeFont::load(const std::string& path) {
    TrueTypeFont f;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("font: cannot open " + path);
    f.data_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    if (f.data_.size() < 12) throw std::runtime_error("font: file too small: " + path);

    uint32_t version = f.u32(0);
    if (version != 0x00010000 && version != 0x74727565)
        throw std::runtime_error("font: not a TrueType outline font: " + path);
    uint16_t num_tables = f.u16(4);
    for (uint16_t i = 0; i < num_tables; ++i) {
        size_t rec = 12 + static_cast<size_t>(i) * 16;
        std::string tag(reinterpret_cast<const char*>(&f.data_[rec]), 4);
        f.tables_[tag] = {f.u32(rec + 8), f.u32(rec + 12)};
    }
    for (const char* required : {"head", "maxp", "cmap", "loca", "glyf", "hhea", "hmtx"}) {
        if (!f.tables_.count(required))
            throw std::runtime_error(std::string("font: missing table ") + required + ": " + path);
    }

    size_t head = f.tables_["head"].offset;
    f.units_per_em_ = f.u16(head + 18);
    size_t hhea = f.tables_["hhea"].offset;
    f.ascender_ = f.i16(hhea + 4);
    f.descender_ = f.i16(hhea + 6);
    f.num_hmetrics_ = f.u16(hhea + 34);
    f.num_glyphs_ = f.u16(f.tables_["maxp"].offset + 4);

    f.parse_cmap();
    f.parse_loca();
    return f;
}

void TrueTypeFont::parse_cmap() {
    size_t cmap = tables_["cmap"].offset;
    uint16_t n = u16(cmap + 2);
    size_t best = 0;
    int best_score = -1;
    for (uint16_t i = 0; i < n; ++i) {
        size_t rec = cmap + 4 + static_cast<size_t>(i) * 8;
        uint16_t platform = u16(rec);
        uint16_t encoding = u16(rec + 2);
        size_t sub = cmap + u32(rec + 4);
        uint16_t format = u16(sub);
        int score = -1;
        if (platform == 3 && encoding == 10 && format == 12) score = 4;
        else if (platform == 3 && encoding == 1 && format == 4) score = 3;
        else if (platform == 0 && format == 12) score = 2;
        else if (platform == 0 && format == 4) score = 1;
        if (score > best_score) {
            best_score = score;
            best = sub;
        }
    }
    if (best_score < 0) throw std::runtime_error("font: no usable cmap subtable");

    uint16_t format = u16(best);
    if (format == 4) {
        uint16_t segcount = u16(best + 6) / 2;
        size_t ends = best + 14;
        size_t starts = ends + 2 * segcount + 2;
        size_t deltas = starts + 2 * segcount;
        size_t range_offsets = deltas + 2 * segcount;
        for (uint16_t s = 0; s < segcount; ++s) {
            uint16_t end = u16(ends + 2 * s);
            uint16_t start = u16(starts + 2 * s);
            int16_t delta = i16(deltas + 2 * s);
            uint16_t ro = u16(range_offsets + 2 * s);
            if (start == 0xffff) continue;
            for (uint32_t c = start; c <= end; ++c) {
                uint16_t g;
                if (ro == 0) {
                    g = static_cast<uint16_t>(c + delta);
                } else {
                    size_t addr = range_offsets + 2 * s + ro + 2 * (c - start);
                    g = u16(addr);
                    if (g != 0) g = static_cast<uint16_t>(g + delta);
                }
                if (g != 0) cmap_[c] = g;
                if (c == 0xffff) break;
            }
        }
    } else if (format == 12) {
        uint32_t ngroups = u32(best + 12);
        for (uint32_t i = 0; i < ngroups; ++i) {
            size_t g = best + 16 + static_cast<size_t>(i) * 12;
            uint32_t start = u32(g), end = u32(g + 4), gid = u32(g + 8);
            for (uint32_t c = start; c <= end && c - start < 0x20000; ++c)
                cmap_[c] = static_cast<uint16_t>(gid + (c - start));
        }
    } else {
        throw std::runtime_error("font: unsupported cmap format " + std::to_string(format));
    }
}

void TrueTypeFont::parse_loca() {
    size_t head = tables_["head"].offset;
    bool long_format = i16(head + 50) != 0;
    size_t loca = tables_["loca"].offset;
    loca_.resize(static_cast<size_t>(num_glyphs_) + 1);
    for (size_t i = 0; i <= num_glyphs_; ++i)
        loca_[i] = long_format ? u32(loca + 4 * i) : 2u * u16(loca + 2 * i);
}

bool TrueTypeFont::has_glyph(uint32_t codepoint) const { return cmap_.count(codepoint) > 0; }

uint16_t TrueTypeFont::glyph_index(uint32_t codepoint) const {
    auto it = cmap_.find(codepoint);
    if (it == cmap_.end())
        throw std::runtime_error("font: missing glyph for code point U+" +
                                 std::to_string(codepoint));
    return it->second;
}

double TrueTypeFont::advance_units(uint16_t glyph) const {
    size_t hmtx = tables_.at("hmtx").offset;
    uint16_t idx = std::min<uint16_t>(glyph, static_cast<uint16_t>(num_hmetrics_ - 1));
    return u16(hmtx + 4 * static_cast<size_t>(idx));
}

double TrueTypeFont::advance(uint32_t codepoint, double pixel_size) const {
    return advance_units(glyph_index(codepoint)) * pixel_size / units_per_em_;
}

double TrueTypeFont::ascent(double pixel_size) const {
    return ascender_ * pixel_size / units_per_em_;
}

double TrueTypeFont::descent(double pixel_size) const {
    return -descender_ * pixel_size / units_per_em_;
}

// Appends the outline of `glyph` transformed by the 2x2 matrix plus offset,
// in font units with y up.
void TrueTypeFont::glyph_outline(uint16_t glyph, std::vector<Contour>& out, double dx, double dy,
                                 double xx, double xy, double yx, double yy, int depth) const {
    if (depth > 5) throw std::runtime_error("font: composite glyph nesting too deep");
    if (glyph >= num_glyphs_) throw std::runtime_error("font: glyph index out of range");
    uint32_t off = loca_[glyph], end = loca_[glyph + 1];
    if (off == end) return;  // empty glyph (e.g. space)
    size_t g = tables_.at("glyf").offset + off;
    int16_t ncont = i16(g);

    if (ncont >= 0) {
        std::vector<uint16_t> end_pts(ncont);
        for (int i = 0; i < ncont; ++i) end_pts[i] = u16(g + 10 + 2 * static_cast<size_t>(i));
        int npts = ncont > 0 ? end_pts[ncont - 1] + 1 : 0;
        size_t p = g + 10 + 2 * static_cast<size_t>(ncont);
        uint16_t ninstr = u16(p);
        p += 2 + ninstr;

        std::vector<uint8_t> flags;
        flags.reserve(npts);
        while (static_cast<int>(flags.size()) < npts) {
            uint8_t fl = u8(p++);
            flags.push_back(fl);
            if (fl & 0x08) {
                uint8_t rep = u8(p++);
                for (int r = 0; r < rep; ++r) flags.push_back(fl);
            }
        }
        std::vector<int> xs(npts), ys(npts);
        int v = 0;
        for (int i = 0; i < npts; ++i) {
            uint8_t fl = flags[i];
            if (fl & 0x02) {
                uint8_t d = u8(p++);
                v += (fl & 0x10) ? d : -d;
            } else if (!(fl & 0x10)) {
                v += i16(p);
                p += 2;
            }
            xs[i] = v;
        }
        v = 0;
        for (int i = 0; i < npts; ++i) {
            uint8_t fl = flags[i];
            if (fl & 0x04) {
                uint8_t d = u8(p++);
                v += (fl & 0x20) ? d : -d;
            } else if (!(fl & 0x20)) {
                v += i16(p);
                p += 2;
            }
            ys[i] = v;
        }
        int start = 0;
        for (int c = 0; c < ncont; ++c) {
            Contour contour;
            for (int i = start; i <= end_pts[c]; ++i) {
                double px = xs[i] * xx + ys[i] * yx + dx;
                double py = xs[i] * xy + ys[i] * yy + dy;
                contour.push_back({px, py, (flags[i] & 0x01) != 0});
            }
            if (contour.size() >= 2) out.push_back(std::move(contour));
            start = end_pts[c] + 1;
        }
    } else {
        // composite
        size_t p = g + 10;
        bool more = true;
        while (more) {
            uint16_t flags = u16(p);
            uint16_t comp = u16(p + 2);
            p += 4;
            double cdx, cdy;
            if (flags & 0x0001) {  // args are words
                cdx = i16(p);
                cdy = i16(p + 2);
                p += 4;
            } else {
                cdx = static_cast<int8_t>(u8(p));
                cdy = static_cast<int8_t>(u8(p + 1));
                p += 2;
            }
            double a = 1, b = 0, c = 0, d = 1;
            if (flags & 0x0008) {  // single scale
                a = d = i16(p) / 16384.0;
                p += 2;
            } else if (flags & 0x0040) {  // x and y scale
                a = i16(p) / 16384.0;
                d = i16(p + 2) / 16384.0;
                p += 4;
            } else if (flags & 0x0080) {  // 2x2
                a = i16(p) / 16384.0;
                b = i16(p + 2) / 16384.0;
                c = i16(p + 4) / 16384.0;
                d = i16(p + 6) / 16384.0;
                p += 8;
            }
            // compose with the caller's transform
            double ndx = cdx * xx + cdy * yx + dx;
            double ndy = cdx * xy + cdy * yy + dy;
            glyph_outline(comp, out, ndx, ndy, a * xx + b * yx, a * xy + b * yy,
                          c * xx + d * yx, c * xy + d * yy, depth + 1);
            more = (flags & 0x0020) != 0;
        }
    }
}

GlyphBitmap TrueTypeFont::rasterize(uint32_t codepoint, double pixel_size) const {
    uint16_t glyph = glyph_index(codepoint);
    double scale = pixel_size / units_per_em_;

    GlyphBitmap bm;
    bm.advance = advance_units(glyph) * scale;

    std::vector<Contour> contours;
    glyph_outline(glyph, contours, 0, 0, scale, 0, 0, scale, 0);
    if (contours.empty()) return bm;

    double minx = 1e30, miny = 1e30, maxx = -1e30, maxy = -1e30;
    for (const auto& c : contours) {
        for (const auto& pt : c) {
            minx = std::min(minx, pt.x);
            maxx = std::max(maxx, pt.x);
            miny = std::min(miny, pt.y);
            maxy = std::max(maxy, pt.y);
        }
    }
    int x0 = static_cast<int>(std::floor(minx)) - 1;
    int y_top = static_cast<int>(std::ceil(maxy)) + 1;
    bm.width = static_cast<int>(std::ceil(maxx)) + 1 - x0 + 1;
    bm.height = y_top - (static_cast<int>(std::floor(miny)) - 1) + 1;
    bm.bearing_x = x0;
    bm.bearing_y = y_top;
    bm.coverage.assign(static_cast<size_t>(bm.width) * bm.height, 0.0f);

    // Edges in bitmap space (y down).
    std::vector<Edge> edges;
    for (const auto& contour : contours) {
        // expand implied on-curve midpoints, build closed segment list
        std::vector<Point> pts;
        size_t n = contour.size();
        for (size_t i = 0; i < n; ++i) {
            const Point& cur = contour[i];
            const Point& nxt = contour[(i + 1) % n];
            pts.push_back(cur);
            if (!cur.on_curve && !nxt.on_curve)
                pts.push_back({(cur.x + nxt.x) / 2, (cur.y + nxt.y) / 2, true});
        }
        // rotate so pts[0] is on-curve
        size_t first_on = 0;
        while (first_on < pts.size() && !pts[first_on].on_curve) ++first_on;
        if (first_on == pts.size()) {
            // fully off-curve contour: synthesize a start point
            Point mid{(pts[0].x + pts[1].x) / 2, (pts[0].y + pts[1].y) / 2, true};
            pts.insert(pts.begin(), mid);
            first_on = 0;
        }
        std::rotate(pts.begin(), pts.begin() + static_cast<long>(first_on), pts.end());
        pts.push_back(pts[0]);

        auto tx = [&](double x) { return x - x0; };
        auto ty = [&](double y) { return y_top - y; };
        size_t i = 0;
        while (i + 1 < pts.size()) {
            if (pts[i + 1].on_curve) {
                add_edge(edges, tx(pts[i].x), ty(pts[i].y), tx(pts[i + 1].x), ty(pts[i + 1].y));
                i += 1;
            } else {
                // on, off, on
                const Point& c = pts[i + 1];
                const Point& e = pts[i + 2];
                flatten_quad(edges, tx(pts[i].x), ty(pts[i].y), tx(c.x), ty(c.y), tx(e.x),
                             ty(e.y));
                i += 2;
            }
        }
    }

    // Non-zero winding scanline fill, 4 sub-rows per pixel row, exact
    // horizontal span coverage.
    struct Crossing {
        double x;
        int dir;
    };
    std::vector<Crossing> crossings;
    for (int row = 0; row < bm.height; ++row) {
        float* out_row = &bm.coverage[static_cast<size_t>(row) * bm.width];
        for (int sub = 0; sub < 4; ++sub) {
            double ys = row + (sub + 0.5) / 4.0;
            crossings.clear();
            for (const Edge& e : edges) {
                if (ys >= e.y0 && ys < e.y1) {
                    double t = (ys - e.y0) / (e.y1 - e.y0);
                    crossings.push_back({e.x0 + t * (e.x1 - e.x0), e.dir});
                }
            }
            if (crossings.empty()) continue;
            std::sort(crossings.begin(), crossings.end(),
                      [](const Crossing& a, const Crossing& b) { return a.x < b.x; });
            // Between consecutive crossings the winding number is constant;
            // paint the intervals where it is non-zero.
            int winding = 0;
            for (size_t ci = 0; ci + 1 < crossings.size(); ++ci) {
                winding += crossings[ci].dir;
                if (winding == 0) continue;
                double xa = std::max(0.0, crossings[ci].x);
                double xb = std::min(static_cast<double>(bm.width), crossings[ci + 1].x);
                if (xb <= xa) continue;
                int pa = static_cast<int>(std::floor(xa));
                int pb = static_cast<int>(std::ceil(xb));
                for (int px = std::max(0, pa); px < std::min(bm.width, pb); ++px) {
                    double ov = std::min<double>(px + 1, xb) - std::max<double>(px, xa);
                    if (ov > 0) out_row[px] += static_cast<float>(ov * 0.25);
                }
            }
        }
        for (int px = 0; px < bm.width; ++px) out_row[px] = std::min(1.0f, out_row[px]);
    }
    return bm;
}

}  // namespace scriptorium::font
