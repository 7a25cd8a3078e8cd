#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "carpet/rational.hpp"
#include "carpet/sphere.hpp"

namespace carpet::render {

// Axis-aligned window of the plane (or of the 1/z chart), mapped affinely
// onto a px_w x px_h grid; row 0 is the top of the window.
struct Viewport {
    Complex center;
    double width = 0.0;
    double height = 0.0;
    int px_w = 0;
    int px_h = 0;
    bool inverted = false; // interpret coordinates in the 1/z chart

    SpherePoint pixel_center(int ix, int iy) const;
};

// -1 in `basin`/`time` marks an undecided pixel.
struct BasinGrid {
    int px_w = 0;
    int px_h = 0;
    std::vector<int16_t> basin;
    std::vector<int32_t> time;
    bool degenerate_seen = false;

    int16_t basin_at(int ix, int iy) const { return basin[std::size_t(iy) * px_w + ix]; }
    int32_t time_at(int ix, int iy) const { return time[std::size_t(iy) * px_w + ix]; }
};

struct Classification {
    int16_t basin = -1;
    int32_t time = -1;
    bool degenerate = false;
};

// First entry of the orbit of z into the chordal trap ball of a cycle
// point; membership is tested before each iterate (so time 0 is possible)
// and the lowest index wins on ties.
Classification classify_point(const RationalMap& f, const SpherePoint& z,
                              const std::vector<SpherePoint>& cycle, int max_iter,
                              double trap_radius);

BasinGrid render_dynamical(const RationalMap& f, const std::vector<SpherePoint>& cycle,
                           const Viewport& vp, int max_iter, double trap_radius);

// Per-pixel lambda: build the cubic, run the free critical orbit against
// that pixel's own cycle. Degenerate parameters stay undecided.
BasinGrid render_parameter(const Viewport& vp, int max_iter, double trap_radius);

struct ComponentMap {
    int px_w = 0;
    int px_h = 0;
    std::vector<int32_t> label; // -1 where the predicate is false
    int count = 0;
    std::vector<std::int64_t> sizes;
};

// 4-connected components of the pixels matching `pred`, labeled in
// row-major first-seen order.
ComponentMap connected_components(const BasinGrid& grid,
                                  const std::function<bool(int16_t)>& pred);

// Basin index -> hue, trap-entry time -> brightness; undecided -> black.
struct Palette {
    std::array<std::array<std::uint8_t, 3>, 4> base = {{
        {230, 60, 60},
        {60, 200, 60},
        {70, 90, 235},
        {235, 200, 60},
    }};
    double floor = 0.3;
    double decay = 0.985;

    std::array<std::uint8_t, 3> color(int16_t basin, int32_t time) const;
};

struct ImageBuffer {
    int px_w = 0;
    int px_h = 0;
    std::vector<std::uint8_t> rgb; // row-major, 3 bytes per pixel
};

ImageBuffer colorize(const BasinGrid& grid, const Palette& palette);

// Binary PPM: "P6\n<w> <h>\n255\n" then the raw triples.
void write_image(const ImageBuffer& img, const std::string& path);
void write_image(const BasinGrid& grid, const Palette& palette, const std::string& path);

} // namespace carpet::render
