#include "carpet/render.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "carpet/errors.hpp"
#include "carpet/family.hpp"

namespace carpet::render {
namespace {

constexpr int kTile = 64;

double min_pairwise_chordal(const std::vector<SpherePoint>& pts) {
    double lo = 4.0; // chordal diameter is 2
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            lo = std::min(lo, chordal(pts[i], pts[j]));
    return lo;
}

void require_trap(const std::vector<SpherePoint>& cycle, double trap_radius) {
    if (cycle.size() < 2) throw argument_error("trap needs at least two cycle points");
    if (trap_radius <= 0.0) throw argument_error("trap radius must be positive");
    if (trap_radius >= 0.5 * min_pairwise_chordal(cycle))
        throw argument_error("trap radius must be under half the minimal "
                             "pairwise chordal cycle distance");
}

Classification classify_unchecked(const RationalMap& f, SpherePoint z,
                                  const std::vector<SpherePoint>& cycle,
                                  int max_iter, double trap_radius) {
    for (int step = 0;; ++step) {
        for (std::size_t k = 0; k < cycle.size(); ++k)
            if (chordal(z, cycle[k]) <= trap_radius)
                return {static_cast<int16_t>(k), step, false};
        if (step == max_iter) return {};
        try {
            z = eval(f, z);
        } catch (const degenerate_error&) {
            return {-1, -1, true};
        }
    }
}

int worker_count() {
    if (const char* env = std::getenv("CARPET_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(ix, iy) over every pixel, tile-parallel; fn must be pure per pixel.
void for_each_pixel(int px_w, int px_h, const std::function<void(int, int)>& fn) {
    const int tx = (px_w + kTile - 1) / kTile;
    const int ty = (px_h + kTile - 1) / kTile;
    std::atomic<int> next{0};
    auto drain = [&] {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= tx * ty) return;
            const int x0 = (t % tx) * kTile, y0 = (t / tx) * kTile;
            const int x1 = std::min(x0 + kTile, px_w), y1 = std::min(y0 + kTile, px_h);
            for (int iy = y0; iy < y1; ++iy)
                for (int ix = x0; ix < x1; ++ix) fn(ix, iy);
        }
    };
    const int n = std::min(worker_count(), tx * ty);
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
}

BasinGrid empty_grid(const Viewport& vp) {
    if (vp.px_w < 1 || vp.px_h < 1 || vp.width <= 0.0 || vp.height <= 0.0)
        throw argument_error("viewport needs positive size and pixel counts");
    BasinGrid g;
    g.px_w = vp.px_w;
    g.px_h = vp.px_h;
    g.basin.assign(std::size_t(vp.px_w) * vp.px_h, -1);
    g.time.assign(std::size_t(vp.px_w) * vp.px_h, -1);
    return g;
}

} // namespace

SpherePoint Viewport::pixel_center(int ix, int iy) const {
    const double x = center.real() + (ix + 0.5 - 0.5 * px_w) * (width / px_w);
    const double y = center.imag() + (0.5 * px_h - iy - 0.5) * (height / px_h);
    const Complex c{x, y};
    return inverted ? SpherePoint::from_inverted(c) : SpherePoint::from_complex(c);
}

Classification classify_point(const RationalMap& f, const SpherePoint& z,
                              const std::vector<SpherePoint>& cycle, int max_iter,
                              double trap_radius) {
    require_trap(cycle, trap_radius);
    if (max_iter < 0) throw argument_error("max_iter must be >= 0");
    return classify_unchecked(f, z, cycle, max_iter, trap_radius);
}

BasinGrid render_dynamical(const RationalMap& f, const std::vector<SpherePoint>& cycle,
                           const Viewport& vp, int max_iter, double trap_radius) {
    require_trap(cycle, trap_radius);
    if (max_iter < 0) throw argument_error("max_iter must be >= 0");
    BasinGrid g = empty_grid(vp);
    std::atomic<bool> degenerate{false};
    for_each_pixel(vp.px_w, vp.px_h, [&](int ix, int iy) {
        const Classification c =
            classify_unchecked(f, vp.pixel_center(ix, iy), cycle, max_iter, trap_radius);
        const std::size_t i = std::size_t(iy) * vp.px_w + ix;
        g.basin[i] = c.basin;
        g.time[i] = c.time;
        if (c.degenerate) degenerate.store(true, std::memory_order_relaxed);
    });
    g.degenerate_seen = degenerate.load();
    return g;
}

BasinGrid render_parameter(const Viewport& vp, int max_iter, double trap_radius) {
    if (max_iter < 0) throw argument_error("max_iter must be >= 0");
    if (trap_radius <= 0.0) throw argument_error("trap radius must be positive");
    BasinGrid g = empty_grid(vp);
    std::atomic<bool> degenerate{false};
    for_each_pixel(vp.px_w, vp.px_h, [&](int ix, int iy) {
        const SpherePoint lp = vp.pixel_center(ix, iy);
        const std::size_t i = std::size_t(iy) * vp.px_w + ix;
        Classification c;
        try {
            const family::PersianCarpetMap pc =
                family::build_f_lambda(lp.to_complex());
            if (pc.lambda == Complex(0.0)) throw argument_error("degenerate pixel");
            const std::vector<SpherePoint> cycle(pc.cycle.begin(), pc.cycle.end());
            const double trap =
                std::min(trap_radius, 0.4 * min_pairwise_chordal(cycle));
            if (trap <= 0.0) throw argument_error("collapsed cycle");
            c = classify_unchecked(pc.map, SpherePoint::from_complex(pc.free_critical),
                                   cycle, max_iter, trap);
        } catch (const argument_error&) {
            c = {-1, -1, true};
        }
        g.basin[i] = c.basin;
        g.time[i] = c.time;
        if (c.degenerate) degenerate.store(true, std::memory_order_relaxed);
    });
    g.degenerate_seen = degenerate.load();
    return g;
}

ComponentMap connected_components(const BasinGrid& grid,
                                  const std::function<bool(int16_t)>& pred) {
    ComponentMap cm;
    cm.px_w = grid.px_w;
    cm.px_h = grid.px_h;
    const std::size_t n = std::size_t(grid.px_w) * grid.px_h;
    cm.label.assign(n, -1);

    std::vector<std::size_t> stack;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (cm.label[seed] != -1 || !pred(grid.basin[seed])) continue;
        const int32_t id = cm.count++;
        std::int64_t size = 0;
        stack.push_back(seed);
        cm.label[seed] = id;
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            ++size;
            const int ix = int(p % grid.px_w), iy = int(p / grid.px_w);
            const std::array<std::pair<int, int>, 4> nb = {
                {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}}};
            for (auto [nx, ny] : nb) {
                if (nx < 0 || nx >= grid.px_w || ny < 0 || ny >= grid.px_h) continue;
                const std::size_t q = std::size_t(ny) * grid.px_w + nx;
                if (cm.label[q] == -1 && pred(grid.basin[q])) {
                    cm.label[q] = id;
                    stack.push_back(q);
                }
            }
        }
        cm.sizes.push_back(size);
    }
    return cm;
}

std::array<std::uint8_t, 3> Palette::color(int16_t basin, int32_t time) const {
    if (basin < 0 || time < 0) return {0, 0, 0};
    const auto& b = base[std::size_t(basin) % base.size()];
    const double bright = floor + (1.0 - floor) * std::pow(decay, time);
    std::array<std::uint8_t, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = static_cast<std::uint8_t>(std::lround(b[i] * bright));
    return out;
}

ImageBuffer colorize(const BasinGrid& grid, const Palette& palette) {
    ImageBuffer img;
    img.px_w = grid.px_w;
    img.px_h = grid.px_h;
    img.rgb.resize(std::size_t(grid.px_w) * grid.px_h * 3);
    for (std::size_t i = 0; i < grid.basin.size(); ++i) {
        const auto c = palette.color(grid.basin[i], grid.time[i]);
        img.rgb[3 * i] = c[0];
        img.rgb[3 * i + 1] = c[1];
        img.rgb[3 * i + 2] = c[2];
    }
    return img;
}

void write_image(const ImageBuffer& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << "P6\n" << img.px_w << ' ' << img.px_h << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()),
              static_cast<std::streamsize>(img.rgb.size()));
    if (!out) throw io_error("short write to " + path);
}

void write_image(const BasinGrid& grid, const Palette& palette, const std::string& path) {
    write_image(colorize(grid, palette), path);
}

} // namespace carpet::render
