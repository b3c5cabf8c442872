#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace scriptorium::font {

// Anti-aliased glyph raster. Origin is the pen position on the baseline:
// blit at (pen_x + bearing_x, baseline_y - bearing_y).
struct GlyphBitmap {
    int width = 0;
    int height = 0;
    int bearing_x = 0;
    int bearing_y = 0;
    std::vector<float> coverage;  // height*width, [0,1]
    double advance = 0.0;         // pen advance in pixels

    float at(int y, int x) const { return coverage[static_cast<size_t>(y) * width + x]; }
};

// Minimal TrueType (glyf outline) reader and scanline rasterizer.
// Supports cmap formats 4 and 12, simple and composite glyphs.
class TrueTypeFont {
public:
    static TrueTypeFont load(const std::string& path);

    bool has_glyph(uint32_t codepoint) const;
    GlyphBitmap rasterize(uint32_t codepoint, double pixel_size) const;
    double advance(uint32_t codepoint, double pixel_size) const;
    double ascent(double pixel_size) const;
    double descent(double pixel_size) const;  // positive magnitude

private:
    struct Table {
        uint32_t offset = 0;
        uint32_t length = 0;
    };
    struct Point {
        double x = 0, y = 0;
        bool on_curve = true;
    };
    using Contour = std::vector<Point>;

    std::vector<uint8_t> data_;
    std::unordered_map<std::string, Table> tables_;
    std::unordered_map<uint32_t, uint16_t> cmap_;
    std::vector<uint32_t> loca_;
    uint16_t units_per_em_ = 1000;
    int16_t ascender_ = 0;
    int16_t descender_ = 0;
    uint16_t num_hmetrics_ = 0;
    uint16_t num_glyphs_ = 0;

    uint16_t glyph_index(uint32_t codepoint) const;
    double advance_units(uint16_t glyph) const;
    void glyph_outline(uint16_t glyph, std::vector<Contour>& out, double dx, double dy,
                       double xx, double xy, double yx, double yy, int depth) const;

    void parse_cmap();
    void parse_loca();

    uint8_t u8(size_t off) const;
    uint16_t u16(size_t off) const;
    uint32_t u32(size_t off) const;
    int16_t i16(size_t off) const;
};

}  // namespace scriptorium::font
