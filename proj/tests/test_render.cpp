#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "carpet/errors.hpp"
#include "carpet/family.hpp"
#include "carpet/render.hpp"

using namespace carpet;
using namespace carpet::render;

namespace {

std::vector<SpherePoint> marked_cycle(const family::PersianCarpetMap& pc) {
    return {pc.cycle.begin(), pc.cycle.end()};
}

Viewport figure_window(int w, int h) {
    Viewport vp;
    vp.center = Complex(0.5, 0.0);
    vp.width = 5.0;
    vp.height = 5.0;
    vp.px_w = w;
    vp.px_h = h;
    return vp;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("viewport pixel centers tile the window symmetrically") {
    Viewport vp;
    vp.center = Complex(0.0, 0.0);
    vp.width = 2.0;
    vp.height = 2.0;
    vp.px_w = 2;
    vp.px_h = 2;

    const auto tl = vp.pixel_center(0, 0).to_complex();
    const auto br = vp.pixel_center(1, 1).to_complex();
    CHECK(tl.real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(tl.imag() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(br.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(br.imag() == doctest::Approx(-0.5).epsilon(1e-15));

    // Odd pixel counts put the middle sample exactly on the center.
    vp.px_w = 3;
    vp.px_h = 3;
    vp.center = Complex(0.25, -1.5);
    const auto mid = vp.pixel_center(1, 1).to_complex();
    CHECK(mid == vp.center);

    // Row 0 is the top of the window, increasing iy moves down.
    CHECK(vp.pixel_center(1, 0).to_complex().imag() >
          vp.pixel_center(1, 2).to_complex().imag());

    // Inverted viewports sample the 1/z chart directly.
    Viewport iv;
    iv.center = Complex(0.0, 0.0);
    iv.width = 0.02;
    iv.height = 0.02;
    iv.px_w = 2;
    iv.px_h = 2;
    iv.inverted = true;
    const auto p = iv.pixel_center(0, 0);
    CHECK(p.inverted());
    CHECK(std::abs(p.chart_value() - Complex(-0.005, 0.005)) <= 1e-17);
}

TEST_CASE("classification traps cycle points immediately") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    const auto cycle = marked_cycle(pc);

    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const auto c = classify_point(pc.map, cycle[k], cycle, 0, 2e-10);
        CHECK(c.basin == int16_t(k));
        CHECK(c.time == 0);
        CHECK_FALSE(c.degenerate);
    }

    // Membership is tested before the first iterate even with max_iter 0;
    // a point outside every trap stays undecided at that budget.
    const auto far = classify_point(pc.map, SpherePoint::from_complex(0.5), cycle, 0, 2e-10);
    CHECK(far.basin == -1);
    CHECK(far.time == -1);
    CHECK_FALSE(far.degenerate);
}

TEST_CASE("a point near the superattracting cycle funnels through infinity") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    const auto cycle = marked_cycle(pc);

    // One step lands ~delta^2 from 1, the next is deep in the infinity trap.
    const SpherePoint z0 = SpherePoint::from_complex(pc.lambda + Complex(1e-6));
    const auto c = classify_point(pc.map, z0, cycle, 100, 2e-10);
    CHECK(c.basin == 2);
    CHECK(c.time == 2);

    // Decided classifications are consistent under one iterate.
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> dx(-2.0, 3.0), dy(-2.5, 2.5);
    int decided = 0;
    for (int i = 0; i < 20; ++i) {
        const SpherePoint z = SpherePoint::from_complex({dx(rng), dy(rng)});
        const auto a = classify_point(pc.map, z, cycle, 600, 2e-10);
        if (a.basin < 0 || a.time < 1) continue;
        ++decided;
        const auto b = classify_point(pc.map, eval(pc.map, z), cycle, 600, 2e-10);
        CHECK(b.basin == a.basin);
        CHECK(b.time == a.time - 1);
    }
    CHECK(decided >= 1);
}

TEST_CASE("the repelling fixed point of the quadratic limit stays undecided") {
    const auto f0 = family::build_f_lambda(Complex(0.0)).map;
    const std::vector<SpherePoint> cycle = {SpherePoint::from_complex(0.0),
                                            SpherePoint::from_complex(1.0),
                                            SpherePoint::infinity()};
    const SpherePoint fix = SpherePoint::from_complex(1.7548776662466943);
    CHECK(chordal(eval(f0, fix), fix) <= 1e-13);

    const auto c = classify_point(f0, fix, cycle, 15, 2e-10);
    CHECK(c.basin == -1);
    CHECK(c.time == -1);
    CHECK_FALSE(c.degenerate);
}

TEST_CASE("classification preconditions and degenerate evaluation") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    const auto cycle = marked_cycle(pc);
    const SpherePoint z = SpherePoint::from_complex(0.5);

    CHECK_THROWS_AS(classify_point(pc.map, z, {cycle[0]}, 10, 1e-10), argument_error);
    CHECK_THROWS_AS(classify_point(pc.map, z, cycle, 10, 0.0), argument_error);
    CHECK_THROWS_AS(classify_point(pc.map, z, cycle, 10, -1e-3), argument_error);
    CHECK_THROWS_AS(classify_point(pc.map, z, cycle, -1, 1e-10), argument_error);

    // Trap balls may not overlap: radius is capped by the cycle geometry,
    // and a repeated cycle point collapses that cap to zero.
    const double minpair = chordal(SpherePoint::from_complex(pc.lambda),
                                   SpherePoint::from_complex(0.0));
    CHECK_THROWS_AS(classify_point(pc.map, z, cycle, 10, 0.6 * minpair), argument_error);
    CHECK_NOTHROW(classify_point(pc.map, z, cycle, 10, 0.4 * minpair));
    const std::vector<SpherePoint> repeated = {cycle[0], cycle[1], cycle[0]};
    CHECK_THROWS_AS(classify_point(pc.map, z, repeated, 10, 1e-12), argument_error);

    // An uncancelled shared root makes the evaluation indeterminate.
    const RationalMap shared{Polynomial::from_roots({Complex(1.0)}),
                             Polynomial::from_roots({Complex(1.0), Complex(2.0)})};
    const std::vector<SpherePoint> traps = {SpherePoint::from_complex(0.0),
                                            SpherePoint::infinity()};
    const auto c = classify_point(shared, SpherePoint::from_complex(1.0), traps, 10, 1e-3);
    CHECK(c.basin == -1);
    CHECK(c.time == -1);
    CHECK(c.degenerate);
}

TEST_CASE("dynamical grid agrees pixel for pixel with direct classification") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    const auto cycle = marked_cycle(pc);
    const Viewport vp = figure_window(16, 12);

    const BasinGrid g = render_dynamical(pc.map, cycle, vp, 150, 2e-10);
    REQUIRE(g.px_w == 16);
    REQUIRE(g.px_h == 12);
    REQUIRE(g.basin.size() == 192);
    REQUIRE(g.time.size() == 192);
    CHECK_FALSE(g.degenerate_seen);

    int decided = 0;
    for (int iy = 0; iy < vp.px_h; ++iy)
        for (int ix = 0; ix < vp.px_w; ++ix) {
            const auto c = classify_point(pc.map, vp.pixel_center(ix, iy), cycle, 150, 2e-10);
            CHECK(g.basin_at(ix, iy) == c.basin);
            CHECK(g.time_at(ix, iy) == c.time);
            if (c.basin >= 0) ++decided;
        }
    CHECK(decided >= 1);
}

TEST_CASE("tiny viewport inside a trap ball decides everywhere at time zero") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    Viewport vp;
    vp.center = pc.lambda;
    vp.width = 1e-12;
    vp.height = 1e-12;
    vp.px_w = 3;
    vp.px_h = 2;
    const BasinGrid g = render_dynamical(pc.map, marked_cycle(pc), vp, 10, 2e-10);
    for (int iy = 0; iy < 2; ++iy)
        for (int ix = 0; ix < 3; ++ix) {
            CHECK(g.basin_at(ix, iy) == 0);
            CHECK(g.time_at(ix, iy) == 0);
        }
}

TEST_CASE("worker count does not change the rendered grid") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    const auto cycle = marked_cycle(pc);
    const Viewport vp = figure_window(80, 70); // four ragged tiles

    REQUIRE(setenv("CARPET_WORKERS", "1", 1) == 0);
    const BasinGrid serial = render_dynamical(pc.map, cycle, vp, 100, 2e-10);
    REQUIRE(setenv("CARPET_WORKERS", "3", 1) == 0);
    const BasinGrid threaded = render_dynamical(pc.map, cycle, vp, 100, 2e-10);
    REQUIRE(unsetenv("CARPET_WORKERS") == 0);

    CHECK(serial.basin == threaded.basin);
    CHECK(serial.time == threaded.time);
}

TEST_CASE("degenerate pixels are recorded and left undecided") {
    const RationalMap shared{Polynomial::from_roots({Complex(1.0)}),
                             Polynomial::from_roots({Complex(1.0), Complex(2.0)})};
    const std::vector<SpherePoint> traps = {SpherePoint::from_complex(0.0),
                                            SpherePoint::infinity()};
    Viewport vp;
    vp.center = Complex(1.0, 0.0); // the 1x1 pixel center lands exactly on z = 1
    vp.width = 2e-3;
    vp.height = 2e-3;
    vp.px_w = 1;
    vp.px_h = 1;
    const BasinGrid g = render_dynamical(shared, traps, vp, 10, 1e-3);
    CHECK(g.basin_at(0, 0) == -1);
    CHECK(g.time_at(0, 0) == -1);
    CHECK(g.degenerate_seen);
}

TEST_CASE("viewport validation") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    const auto cycle = marked_cycle(pc);
    Viewport vp = figure_window(4, 4);
    vp.px_w = 0;
    CHECK_THROWS_AS(render_dynamical(pc.map, cycle, vp, 10, 2e-10), argument_error);
    vp.px_w = 4;
    vp.width = 0.0;
    CHECK_THROWS_AS(render_dynamical(pc.map, cycle, vp, 10, 2e-10), argument_error);
    vp.width = 5.0;
    vp.px_h = -2;
    CHECK_THROWS_AS(render_dynamical(pc.map, cycle, vp, 10, 2e-10), argument_error);
}

TEST_CASE("parameter grid classifies each pixel's own free critical orbit") {
    Viewport vp;
    vp.center = Complex(1e-3, 0.0);
    vp.width = 1e-9;
    vp.height = 1e-9;
    vp.px_w = 1;
    vp.px_h = 1;

    // With a generous trap the orbit reaches the infinity leg at step 2.
    const BasinGrid wide = render_parameter(vp, 100, 5e-4);
    CHECK(wide.basin_at(0, 0) == 2);
    CHECK(wide.time_at(0, 0) == 2);
    CHECK_FALSE(wide.degenerate_seen);

    // With the tight trap the free critical orbit settles on its own nearby
    // cycle and never meets the marked one.
    const BasinGrid tight = render_parameter(vp, 300, 2e-10);
    CHECK(tight.basin_at(0, 0) == -1);
    CHECK(tight.time_at(0, 0) == -1);
    CHECK_FALSE(tight.degenerate_seen);
}

TEST_CASE("parameter grid marks degenerate parameters without failing") {
    Viewport vp;
    vp.center = Complex(0.0, 0.0);
    vp.width = 1e-6;
    vp.height = 1e-6;
    vp.px_w = 1;
    vp.px_h = 1;
    const BasinGrid at0 = render_parameter(vp, 10, 1e-6);
    CHECK(at0.basin_at(0, 0) == -1);
    CHECK(at0.degenerate_seen);

    vp.center = Complex(1.0, 0.0);
    const BasinGrid at1 = render_parameter(vp, 10, 1e-6);
    CHECK(at1.basin_at(0, 0) == -1);
    CHECK(at1.degenerate_seen);

    CHECK_THROWS_AS(render_parameter(vp, -1, 1e-6), argument_error);
    CHECK_THROWS_AS(render_parameter(vp, 10, 0.0), argument_error);
}

TEST_CASE("connected components split on 4-adjacency in first-seen order") {
    BasinGrid g;
    g.px_w = 5;
    g.px_h = 3;
    g.basin = {0, 0, 1, 0, 0,
               1, 0, 1, 0, 1,
               0, 0, 1, 1, 0};
    g.time.assign(15, 0);

    const ComponentMap cm = connected_components(g, [](int16_t b) { return b == 0; });
    REQUIRE(cm.count == 3);
    REQUIRE(cm.sizes.size() == 3);
    CHECK(cm.sizes[0] == 5);
    CHECK(cm.sizes[1] == 3);
    CHECK(cm.sizes[2] == 1);

    CHECK(cm.label[0] == 0);
    CHECK(cm.label[1] == 0);
    CHECK(cm.label[6] == 0);
    CHECK(cm.label[10] == 0);
    CHECK(cm.label[11] == 0);
    CHECK(cm.label[3] == 1);
    CHECK(cm.label[4] == 1);
    CHECK(cm.label[8] == 1);
    CHECK(cm.label[14] == 2);
    CHECK(cm.label[2] == -1);
    CHECK(cm.label[5] == -1);

    // Diagonal contact alone does not join components.
    BasinGrid diag;
    diag.px_w = 2;
    diag.px_h = 2;
    diag.basin = {0, 1, 1, 0};
    diag.time.assign(4, 0);
    CHECK(connected_components(diag, [](int16_t b) { return b == 0; }).count == 2);

    // Undecided pixels can be selected too.
    BasinGrid und;
    und.px_w = 3;
    und.px_h = 1;
    und.basin = {-1, 2, -1};
    und.time.assign(3, 0);
    const auto um = connected_components(und, [](int16_t b) { return b < 0; });
    CHECK(um.count == 2);
    CHECK(um.label[1] == -1);
}

TEST_CASE("palette maps basin to hue and trap time to brightness") {
    const Palette p;
    CHECK(p.color(0, 0) == std::array<std::uint8_t, 3>{230, 60, 60});
    CHECK(p.color(1, 0) == std::array<std::uint8_t, 3>{60, 200, 60});
    CHECK(p.color(2, 0) == std::array<std::uint8_t, 3>{70, 90, 235});
    CHECK(p.color(3, 0) == std::array<std::uint8_t, 3>{235, 200, 60});

    // One step of decay: 0.3 + 0.7 * 0.985.
    CHECK(p.color(1, 1) == std::array<std::uint8_t, 3>{59, 198, 59});

    // Deep times bottom out at the brightness floor.
    CHECK(p.color(2, 10000) == std::array<std::uint8_t, 3>{21, 27, 71});

    // Undecided stays black; basin indices wrap around the base table.
    CHECK(p.color(-1, 3) == std::array<std::uint8_t, 3>{0, 0, 0});
    CHECK(p.color(0, -1) == std::array<std::uint8_t, 3>{0, 0, 0});
    CHECK(p.color(4, 0) == p.color(0, 0));
    CHECK(p.color(7, 0) == p.color(3, 0));

    // Brightness decreases monotonically with time.
    for (int t = 0; t < 50; ++t)
        CHECK(p.color(0, t)[0] >= p.color(0, t + 1)[0]);
}

TEST_CASE("images serialize as binary PPM with exact bytes") {
    BasinGrid g;
    g.px_w = 2;
    g.px_h = 1;
    g.basin = {0, -1};
    g.time = {0, -1};

    const ImageBuffer img = colorize(g, Palette{});
    REQUIRE(img.rgb.size() == 6);
    CHECK(img.rgb[0] == 230);
    CHECK(img.rgb[1] == 60);
    CHECK(img.rgb[2] == 60);
    CHECK(img.rgb[3] == 0);

    const std::string path = "/tmp/carpet_render_test.ppm";
    write_image(img, path);
    const std::string bytes = slurp(path);
    const std::string expect = std::string("P6\n2 1\n255\n") +
                               std::string("\xE6\x3C\x3C", 3) + std::string("\0\0\0", 3);
    CHECK(bytes.size() == 17);
    CHECK(bytes == expect);
    std::remove(path.c_str());

    CHECK_THROWS_AS(write_image(img, "/nonexistent_dir_xyz/out.ppm"), io_error);

    // Rendering twice produces byte-identical files.
    const auto pc = family::build_f_lambda(Complex(1e-3));
    const Viewport vp = figure_window(24, 16);
    const BasinGrid a = render_dynamical(pc.map, marked_cycle(pc), vp, 80, 2e-10);
    const BasinGrid b = render_dynamical(pc.map, marked_cycle(pc), vp, 80, 2e-10);
    write_image(a, Palette{}, "/tmp/carpet_render_a.ppm");
    write_image(b, Palette{}, "/tmp/carpet_render_b.ppm");
    CHECK(slurp("/tmp/carpet_render_a.ppm") == slurp("/tmp/carpet_render_b.ppm"));
    std::remove("/tmp/carpet_render_a.ppm");
    std::remove("/tmp/carpet_render_b.ppm");
}

// Openness surrogate, dynamical plane: inside a window at the scale of one
// Fatou component the classification is stable under quarter-pixel offsets.
// The stable quantity is the phase class (basin - time) mod 4: the raw
// first-entry labels shift by one cyclic step across equi-time band edges,
// and in the Cantor-of-circles ring the components themselves are thinner
// than a pixel, so the raw labels are only stable at component scale.
TEST_CASE("decided pixels keep their phase class at quarter-pixel offsets") {
    const auto pc = family::build_f_lambda(Complex(1e-3));
    Viewport vp;
    vp.center = Complex(1.0, 0.0);
    vp.width = vp.height = 0.008;
    vp.px_w = vp.px_h = 64;
    const BasinGrid grid = render_dynamical(pc.map, marked_cycle(pc), vp, 600, 2e-10);

    std::vector<std::pair<int, int>> decided;
    for (int iy = 0; iy < vp.px_h; ++iy)
        for (int ix = 0; ix < vp.px_w; ++ix)
            if (grid.basin_at(ix, iy) >= 0) decided.emplace_back(ix, iy);
    REQUIRE(decided.size() >= 100);
    std::shuffle(decided.begin(), decided.end(), std::mt19937(424242));

    const double q = 0.25 * vp.width / vp.px_w;
    int exceptions = 0;
    for (int k = 0; k < 100; ++k) {
        const auto [ix, iy] = decided[k];
        const Complex c = vp.pixel_center(ix, iy).to_complex();
        const int want = ((grid.basin_at(ix, iy) - grid.time_at(ix, iy)) % 4 + 4) % 4;
        for (const Complex off : {Complex(q, 0.0), Complex(-q, 0.0),
                                  Complex(0.0, q), Complex(0.0, -q)}) {
            const auto r = classify_point(pc.map, SpherePoint::from_complex(c + off),
                                          marked_cycle(pc), 600, 2e-10);
            if (r.basin < 0 || ((r.basin - r.time) % 4 + 4) % 4 != want) {
                ++exceptions;
                break;
            }
        }
    }
    CHECK(exceptions <= 2);
}

// Openness surrogate, parameter plane: the |lambda| <= 0.01 window is one
// hyperbolic component, so the raw labels themselves are quarter-pixel
// stable there.
TEST_CASE("decided parameter pixels classify identically at quarter-pixel offsets") {
    Viewport vp;
    vp.center = Complex(0.0, 0.0);
    vp.width = vp.height = 0.02;
    vp.px_w = vp.px_h = 64;
    const BasinGrid grid = render_parameter(vp, 1500, 1e-3);

    std::vector<std::pair<int, int>> decided;
    for (int iy = 0; iy < vp.px_h; ++iy)
        for (int ix = 0; ix < vp.px_w; ++ix)
            if (grid.basin_at(ix, iy) >= 0) decided.emplace_back(ix, iy);
    REQUIRE(decided.size() >= 100);
    std::shuffle(decided.begin(), decided.end(), std::mt19937(171717));

    const double q = 0.25 * vp.width / vp.px_w;
    int exceptions = 0;
    for (int k = 0; k < 100; ++k) {
        const auto [ix, iy] = decided[k];
        const Complex c = vp.pixel_center(ix, iy).to_complex();
        const int16_t want = grid.basin_at(ix, iy);
        for (const Complex off : {Complex(q, 0.0), Complex(-q, 0.0),
                                  Complex(0.0, q), Complex(0.0, -q)}) {
            Classification r;
            try {
                const auto ppc = family::build_f_lambda(c + off);
                r = classify_point(ppc.map, SpherePoint::from_complex(ppc.free_critical),
                                   marked_cycle(ppc), 1500, 1e-3);
            } catch (const error&) {
                r.basin = -1;
            }
            if (r.basin != want) {
                ++exceptions;
                break;
            }
        }
    }
    CHECK(exceptions <= 2);
}
