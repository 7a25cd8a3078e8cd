// carpet: command-line front end exposing every library module as a
// subcommand with reproducible config files and machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "carpet/errors.hpp"
#include "carpet/family.hpp"
#include "carpet/hurwitz.hpp"
#include "carpet/moduli.hpp"
#include "carpet/rational.hpp"
#include "carpet/render.hpp"
#include "carpet/sphere.hpp"
#include "carpet/symbolic.hpp"
#include "carpet/trees.hpp"

namespace {

using carpet::Complex;
using carpet::SpherePoint;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Flag parsing helpers

double parse_double(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size())
        throw carpet::argument_error(std::string("invalid ") + what + " '" + s + "'");
    return v;
}

// "re" or "re,im".
Complex parse_complex(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return {parse_double(s, what), 0.0};
    return {parse_double(s.substr(0, comma), what),
            parse_double(s.substr(comma + 1), what)};
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string part =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(part, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (part.empty() || pos != part.size())
            throw carpet::argument_error(std::string("invalid ") + what + " entry '" + part + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// "3;2,1;2,1" -> rows of local degrees.
std::vector<std::vector<int>> parse_rows(const std::string& s) {
    std::vector<std::vector<int>> rows;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto semi = s.find(';', start);
        rows.push_back(parse_int_list(
            s.substr(start, semi == std::string::npos ? std::string::npos : semi - start),
            "row"));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return rows;
}

// Eventually periodic words as "<preperiod>:<period>"; no colon means a
// finite word, a leading colon a purely periodic one.
carpet::symbolic::Word parse_word(const std::string& s) {
    carpet::symbolic::Word w;
    const auto colon = s.find(':');
    const std::string pre = colon == std::string::npos ? s : s.substr(0, colon);
    const std::string per = colon == std::string::npos ? "" : s.substr(colon + 1);
    for (std::string_view part : {std::string_view(pre), std::string_view(per)})
        for (char c : part)
            if (c < '0' || c > '9')
                throw carpet::argument_error("word '" + s + "' must be digits with an "
                                             "optional ':' before the period");
    for (char c : pre) w.preperiod.push_back(c - '0');
    for (char c : per) w.period.push_back(c - '0');
    return w;
}

// ---------------------------------------------------------------------------
// JSON emission

json cx(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json ladder_json(const carpet::family::LadderReport& rep) {
    json rungs = json::array();
    for (const auto& r : rep.rungs)
        rungs.push_back(json{{"pass", r.pass},
                             {"measured", r.measured},
                             {"threshold", r.threshold},
                             {"margin", r.margin},
                             {"description", r.description}});
    return json{{"lambda", cx(rep.lambda)}, {"K", rep.K}, {"all", rep.all()},
                {"rungs", std::move(rungs)}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw carpet::io_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw carpet::io_error("short write to " + path);
}

// Every subcommand prints its one-line summary to stdout; --out mirrors the
// same document (pretty-printed) into a declared file.
void emit_summary(const json& summary, const std::string& out_path) {
    if (!out_path.empty()) write_text(out_path, summary.dump(2) + "\n");
    std::cout << summary.dump() << "\n";
}

// ---------------------------------------------------------------------------
// Render plumbing shared by `render ...` and `reproduce`

struct RenderJob {
    bool parameter_plane = false;
    Complex lambda;
    Complex center;
    double width = 0.0;
    double height = 0.0; // 0 = square
    int px = 0;
    int px_h = 0; // 0 = square
    int max_iter = 0;
    double trap = 0.0;
    std::string image_path;
    std::string sidecar_path;
    std::string label;  // subcommand name in the summary
    std::string figure; // set by reproduce
    std::uint64_t seed = 0;
};

carpet::render::Viewport job_viewport(const RenderJob& job) {
    carpet::render::Viewport vp;
    vp.center = job.center;
    vp.width = job.width;
    vp.height = job.height > 0.0 ? job.height : job.width;
    vp.px_w = job.px;
    vp.px_h = job.px_h > 0 ? job.px_h : job.px;
    return vp;
}

// The marked cycle used for trapping: the full 4-cycle, except at lambda=0
// where the map degenerates to the quadratic with the 3-cycle 0 -> 1 -> inf.
std::vector<SpherePoint> trap_cycle(const carpet::family::PersianCarpetMap& pc) {
    if (pc.lambda == Complex(0.0))
        return {SpherePoint::from_complex(0.0), SpherePoint::from_complex(1.0),
                SpherePoint::infinity()};
    return {pc.cycle.begin(), pc.cycle.end()};
}

json run_render(const RenderJob& job) {
    const carpet::render::Viewport vp = job_viewport(job);
    carpet::render::BasinGrid grid;
    if (job.parameter_plane) {
        grid = carpet::render::render_parameter(vp, job.max_iter, job.trap);
    } else {
        const auto pc = carpet::family::build_f_lambda(job.lambda);
        grid = carpet::render::render_dynamical(pc.map, trap_cycle(pc), vp, job.max_iter,
                                                job.trap);
    }

    json counts;
    long undecided_px = 0;
    for (int16_t b : grid.basin)
        if (b < 0) ++undecided_px;
    for (int16_t k = 0; k < 4; ++k)
        counts["basin" + std::to_string(k)] =
            carpet::render::connected_components(grid, [k](int16_t b) { return b == k; }).count;
    counts["undecided"] =
        carpet::render::connected_components(grid, [](int16_t b) { return b < 0; }).count;

    json summary;
    summary["subcommand"] = job.label;
    summary["seed"] = job.seed;
    if (!job.figure.empty()) summary["figure"] = job.figure;
    if (!job.parameter_plane) summary["lambda"] = cx(job.lambda);
    summary["center"] = cx(job.center);
    summary["width"] = vp.width;
    summary["height"] = vp.height;
    summary["px_w"] = vp.px_w;
    summary["px_h"] = vp.px_h;
    summary["max_iter"] = job.max_iter;
    summary["trap_radius"] = job.trap;
    summary["decided_fraction"] =
        1.0 - double(undecided_px) / (double(vp.px_w) * vp.px_h);
    summary["degenerate_seen"] = grid.degenerate_seen;
    summary["component_counts"] = std::move(counts);
    summary["image"] = job.image_path.empty() ? json(nullptr) : json(job.image_path);
    summary["sidecar"] = job.sidecar_path.empty() ? json(nullptr) : json(job.sidecar_path);

    if (!job.image_path.empty())
        carpet::render::write_image(grid, carpet::render::Palette{}, job.image_path);
    if (!job.sidecar_path.empty()) write_text(job.sidecar_path, summary.dump(2) + "\n");
    return summary;
}

RenderJob canned_figure(const std::string& figure, const std::string& outdir) {
    RenderJob job;
    job.px = 1024;
    if (figure == "fig2a" || figure == "fig2b") {
        job.lambda = figure == "fig2a" ? Complex(1e-3) : Complex(0.0);
        job.center = Complex(0.5, 0.0);
        job.width = 5.0;
        job.max_iter = 600;
        job.trap = 2e-10;
    } else if (figure == "fig8a") {
        job.parameter_plane = true;
        job.center = Complex(0.0, 0.0);
        job.width = 0.02;
        job.max_iter = 1500;
        job.trap = 1e-3;
    } else {
        throw carpet::argument_error("unknown figure '" + figure + "'");
    }
    job.image_path = outdir + "/" + figure + ".ppm";
    job.sidecar_path = outdir + "/" + figure + ".json";
    return job;
}

// ---------------------------------------------------------------------------
// Subcommand wiring

struct Options {
    std::uint64_t seed = 0;
    std::string out;
    std::string config_path;

    std::string kind;
    std::string weights;
    std::string tree_file;

    int degree = 0;
    std::string rows;

    std::string lambda;
    std::string orbit_csv;
    std::string orbit_start;
    int orbit_steps = 100;
    int period = 0;
    double K = 20.0;

    int depth = 0;
    bool plain = false;
    std::string list_path;
    std::string s, sp;

    double C = 1.0;
    double extra_margin = 1.1;

    std::string center = "0,0";
    double width = 0.0;
    double height = 0.0;
    int px = 0;
    int px_h = 0;
    int max_iter_dyn = 600;
    int max_iter_par = 1500;
    double trap_dyn = 2e-10;
    double trap_par = 1e-3;
    std::string image;
    std::string sidecar;

    std::string figure;
    std::string outdir = ".";
};

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& desc,
               Options& opt) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->add_option("--config", opt.config_path,
                    "flat key=value file mirroring the flags below; "
                    "explicit flags override file values");
    sub->add_option("--seed", opt.seed, "seed echoed into the summary (reserved for "
                                        "randomized sampling)");
    sub->add_option("--out", opt.out, "also write the JSON summary to this file");
    return sub;
}

// Splices config-file values into the raw argument list before CLI11 sees it:
// keys become --key=value tokens right after the subcommand path, so explicit
// flags (parsed later, or detected below) always win.
void expand_config(std::vector<std::string>& args, const CLI::App& app) {
    for (const std::string& a : args)
        if (a == "--help" || a == "-h") return;

    std::string path;
    bool found = false;
    for (std::size_t i = 0; i < args.size();) {
        std::string take;
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw carpet::argument_error("--config needs a file path");
            take = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            take = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            ++i;
            continue;
        }
        if (found) throw carpet::argument_error("--config given more than once");
        found = true;
        path = take;
    }
    if (!found) return;

    std::size_t at = 0;
    const CLI::App* scope = &app;
    while (at < args.size() && !args[at].empty() && args[at][0] != '-') {
        const CLI::App* next = scope->get_subcommand_no_throw(args[at]);
        if (next == nullptr) break;
        scope = next;
        ++at;
    }
    if (scope == &app || !scope->get_subcommands({}).empty())
        throw carpet::argument_error("--config applies to a leaf subcommand");

    std::ifstream in(path);
    if (!in) throw carpet::io_error("cannot read config file " + path);
    const auto trim = [](std::string s) {
        const char* ws = " \t\r";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    std::vector<std::string> spliced;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw carpet::argument_error("config line " + std::to_string(lineno) +
                                         ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw carpet::argument_error("config line " + std::to_string(lineno) +
                                         ": empty key");
        if (key == "config")
            throw carpet::argument_error("config files cannot nest config files");
        if (!seen.insert(key).second)
            throw carpet::argument_error("duplicate config key: " + key);
        if (scope->get_option_no_throw("--" + key) == nullptr)
            throw carpet::argument_error("unknown config key: " + key);
        const std::string flag = "--" + key;
        bool overridden = false;
        for (std::size_t i = at; i < args.size() && !overridden; ++i)
            overridden = args[i] == flag || args[i].rfind(flag + "=", 0) == 0;
        if (!overridden) spliced.push_back(flag + "=" + value);
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), spliced.begin(),
                spliced.end());
}

void cmd_tree_check(const Options& opt) {
    using namespace carpet::trees;
    WeightedDynamicalTree tree;
    std::string kind = opt.kind;
    if (!opt.tree_file.empty()) {
        std::ifstream in(opt.tree_file);
        if (!in) throw carpet::io_error("cannot read " + opt.tree_file);
        json j;
        try {
            j = json::parse(in);
        } catch (const std::exception& e) {
            throw carpet::argument_error(std::string("invalid tree JSON: ") + e.what());
        }
        if (!j.contains("edges") || !j.contains("images") || !j.contains("weights"))
            throw carpet::argument_error("tree JSON needs keys edges, images, weights");
        tree.edge_count = j["edges"].get<int>();
        tree.edge_images = j["images"].get<std::vector<std::vector<int>>>();
        tree.weights = j["weights"].get<std::vector<int>>();
        if (int(tree.edge_images.size()) != tree.edge_count ||
            int(tree.weights.size()) != tree.edge_count)
            throw carpet::argument_error("tree JSON sizes disagree with edge count");
        for (const auto& img : tree.edge_images)
            for (int e : img)
                if (e < 0 || e >= tree.edge_count)
                    throw carpet::argument_error("tree JSON image index out of range");
        kind = "file";
    } else {
        const auto w = parse_int_list(opt.weights, "weight");
        const TreeKind k = opt.kind == "HP"   ? TreeKind::HP
                           : opt.kind == "HQ" ? TreeKind::HQ
                                              : TreeKind::HR;
        tree = builtin_tree(k, w);
    }

    const SpectralReport rep = is_unobstructed(tree);
    json summary;
    summary["subcommand"] = "tree check";
    summary["seed"] = opt.seed;
    summary["kind"] = kind;
    summary["edges"] = tree.edge_count;
    summary["images"] = tree.edge_images;
    summary["weights"] = tree.weights;
    summary["leading_eigenvalue"] = rep.leading_eigenvalue;
    summary["unobstructed"] = rep.unobstructed;
    summary["perron_vector"] = rep.perron_vector;
    if (kind == "HP") {
        const auto [ok, dhat] = check_h1(tree.weights[0], tree.weights[1], tree.weights[2]);
        summary["h1"] = ok;
        summary["dhat"] = dhat ? json(*dhat) : json(nullptr);
    } else {
        summary["h1"] = nullptr;
        summary["dhat"] = nullptr;
    }
    emit_summary(summary, opt.out);
}

void cmd_hurwitz_check(const Options& opt) {
    using namespace carpet::hurwitz;
    BranchData data{opt.degree, parse_rows(opt.rows)};
    validate(data);

    // (H1') applies to branch data with three rows of one marked entry each.
    json h1prime = nullptr;
    if (data.rows.size() == 3) {
        std::vector<int> marked;
        bool shaped = true;
        for (const auto& row : data.rows) {
            int big = 0;
            for (int v : row) {
                if (v >= 2) {
                    if (big) shaped = false;
                    big = v;
                }
            }
            marked.push_back(big);
        }
        if (shaped)
            h1prime = check_h1prime(data.degree, marked[0], marked[1], marked[2]);
    }

    const bool realizable = brute_force_realizable(data);
    json witness = nullptr;
    if (realizable) {
        witness = json::array();
        for (const auto& p : find_witness(data)) witness.push_back(p.cycle_notation());
    }

    json summary;
    summary["subcommand"] = "hurwitz check";
    summary["seed"] = opt.seed;
    summary["degree"] = data.degree;
    summary["rows"] = data.rows;
    summary["realizable"] = realizable;
    summary["h1prime"] = h1prime;
    summary["witness"] = witness;
    emit_summary(summary, opt.out);
}

void cmd_family_derive(const Options& opt) {
    using namespace carpet::family;
    const Complex l = parse_complex(opt.lambda, "lambda");
    const DerivedCoefficients d = derive_coefficients(l);
    const PersianCarpetMap pc = build_f_lambda(l);

    json residuals = json::array();
    for (int k = 0; k < 4; ++k)
        residuals.push_back(
            chordal(eval(pc.map, pc.cycle[k]), pc.cycle[(k + 1) % 4]));

    json summary;
    summary["subcommand"] = "family derive";
    summary["seed"] = opt.seed;
    summary["lambda"] = cx(l);
    summary["a1"] = cx(d.a1);
    summary["b1p"] = cx(d.b1p);
    summary["lambda_prime"] = cx(pc.free_critical);
    summary["verified"] = pc.verified;
    summary["cycle_residuals"] = std::move(residuals);
    summary["ladder_report"] = ladder_json(magnitude_ladder_check(l));

    if (!opt.orbit_csv.empty()) {
        SpherePoint start = SpherePoint::from_complex(pc.free_critical);
        if (!opt.orbit_start.empty())
            start = opt.orbit_start == "inf"
                        ? SpherePoint::infinity()
                        : SpherePoint::from_complex(
                              parse_complex(opt.orbit_start, "orbit start"));
        const OrbitResult orb = orbit(pc.map, start, opt.orbit_steps);
        std::string csv = "step,re,im,chart\n";
        char line[96];
        for (std::size_t k = 0; k < orb.points.size(); ++k) {
            const Complex v = orb.points[k].chart_value();
            std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%c\n", k,
                          v.real() + 0.0, v.imag() + 0.0,
                          orb.points[k].inverted() ? 'w' : 'z');
            csv += line;
        }
        write_text(opt.orbit_csv, csv);
        summary["orbit"] = json{{"path", opt.orbit_csv},
                                {"steps", orb.points.size() - 1},
                                {"degenerate", orb.degenerate}};
    } else {
        summary["orbit"] = nullptr;
    }
    emit_summary(summary, opt.out);
}

void cmd_family_pcf(const Options& opt) {
    const auto p = carpet::family::solve_pcf_parameter(opt.period);
    json roots = json::array();
    for (Complex r : p.all_roots) roots.push_back(cx(r));
    json summary;
    summary["subcommand"] = "family pcf";
    summary["seed"] = opt.seed;
    summary["period"] = p.period;
    summary["c"] = cx(p.c);
    summary["count"] = p.all_roots.size();
    summary["all_roots"] = std::move(roots);
    emit_summary(summary, opt.out);
}

void cmd_family_ladder(const Options& opt) {
    const Complex l = parse_complex(opt.lambda, "lambda");
    json summary;
    summary["subcommand"] = "family ladder";
    summary["seed"] = opt.seed;
    summary["report"] = ladder_json(carpet::family::magnitude_ladder_check(l, opt.K));
    emit_summary(summary, opt.out);
}

void cmd_symbolic_words(const Options& opt) {
    const auto words = carpet::symbolic::admissible_words(opt.depth);
    std::string lines;
    for (const auto& w : words) {
        for (int d : w) lines += char('0' + d);
        lines += '\n';
    }
    if (!opt.list_path.empty()) write_text(opt.list_path, lines);
    std::cout << lines;
    if (opt.plain) return;
    json summary;
    summary["subcommand"] = "symbolic words";
    summary["seed"] = opt.seed;
    summary["depth"] = opt.depth;
    summary["count"] = words.size();
    summary["list"] = opt.list_path.empty() ? json(nullptr) : json(opt.list_path);
    emit_summary(summary, opt.out);
}

void cmd_symbolic_quotient(const Options& opt) {
    const auto res =
        carpet::symbolic::equivalent(parse_word(opt.s), parse_word(opt.sp));
    json summary;
    summary["subcommand"] = "symbolic quotient";
    summary["seed"] = opt.seed;
    summary["s"] = opt.s;
    summary["sp"] = opt.sp;
    summary["equivalent"] = res.equivalent;
    summary["witness"] = res.witness ? json(*res.witness) : json(nullptr);
    emit_summary(summary, opt.out);
}

void cmd_moduli_solve(const Options& opt) {
    using namespace carpet::moduli;
    const auto w = parse_int_list(opt.weights, "weight");
    if (w.size() != 4)
        throw carpet::argument_error("moduli solve takes exactly 4 weights");
    const ModuliSolution sol = solve_moduli(w[0], w[1], w[2], w[3], opt.C);
    const EquipotentialLevels lv = levels_from_moduli(sol, opt.extra_margin);

    json summary;
    summary["subcommand"] = "moduli solve";
    summary["seed"] = opt.seed;
    summary["weights"] = w;
    summary["C"] = sol.C;
    summary["x"] = sol.x;
    summary["mu"] = sol.mu;
    summary["margins"] = sol.margins;
    summary["extra_margin"] = opt.extra_margin;
    summary["levels"] = lv.levels;
    summary["gap_modulus"] = lv.gap_modulus;
    emit_summary(summary, opt.out);
}

void cmd_render(const Options& opt, bool parameter_plane) {
    RenderJob job;
    job.parameter_plane = parameter_plane;
    if (!parameter_plane) job.lambda = parse_complex(opt.lambda, "lambda");
    job.center = parse_complex(opt.center, "center");
    job.width = opt.width;
    job.height = opt.height;
    job.px = opt.px;
    job.px_h = opt.px_h;
    job.max_iter = parameter_plane ? opt.max_iter_par : opt.max_iter_dyn;
    job.trap = parameter_plane ? opt.trap_par : opt.trap_dyn;
    job.image_path = opt.image;
    job.sidecar_path = opt.sidecar;
    job.label = parameter_plane ? "render parameter" : "render dynamical";
    job.seed = opt.seed;
    emit_summary(run_render(job), opt.out);
}

void cmd_reproduce(const Options& opt) {
    std::filesystem::create_directories(opt.outdir);
    RenderJob job = canned_figure(opt.figure, opt.outdir);
    job.label = "reproduce";
    job.figure = opt.figure;
    job.seed = opt.seed;
    emit_summary(run_render(job), opt.out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persian-carpet rational maps: trees, Hurwitz data, the cubic "
                 "family, symbolic dynamics, moduli, and renderers"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* tree = app.add_subcommand("tree", "weighted dynamical trees");
    tree->require_subcommand(1);
    CLI::App* tree_check = leaf(tree, "check", "spectral obstruction report", opt);
    tree_check->add_option("--kind", opt.kind, "built-in shape")
        ->check(CLI::IsMember({"HP", "HQ", "HR"}));
    tree_check->add_option("--weights", opt.weights, "comma-separated edge weights");
    tree_check->add_option("--tree", opt.tree_file,
                           "JSON file {\"edges\":N,\"images\":[[..]],\"weights\":[..]}")
        ->excludes("--kind")
        ->excludes("--weights");
    tree_check->callback([&] {
        if (opt.tree_file.empty() && (opt.kind.empty() || opt.weights.empty()))
            throw carpet::argument_error("tree check needs --kind and --weights, "
                                         "or --tree");
        cmd_tree_check(opt);
    });

    CLI::App* hurwitz = app.add_subcommand("hurwitz", "branched-covering branch data");
    hurwitz->require_subcommand(1);
    CLI::App* hz_check = leaf(hurwitz, "check", "realizability verdict with witnesses", opt);
    hz_check->add_option("--degree", opt.degree, "covering degree")->required();
    hz_check->add_option("--rows", opt.rows, "local degrees, rows ';'-separated, "
                                             "entries ','-separated")
        ->required();
    hz_check->callback([&] { cmd_hurwitz_check(opt); });

    CLI::App* family = app.add_subcommand("family", "the cubic family f_lambda");
    family->require_subcommand(1);
    CLI::App* derive = leaf(family, "derive", "coefficients, cycle residuals, ladder", opt);
    derive->add_option("--lambda", opt.lambda, "parameter, 're' or 're,im'")->required();
    derive->add_option("--orbit-csv", opt.orbit_csv, "write an orbit dump (step,re,im,chart)");
    derive->add_option("--orbit-start", opt.orbit_start,
                       "orbit start: 're[,im]' or 'inf' (default lambda')");
    derive->add_option("--orbit-steps", opt.orbit_steps, "orbit length")
        ->capture_default_str();
    derive->callback([&] { cmd_family_derive(opt); });

    CLI::App* pcf = leaf(family, "pcf", "postcritically finite quadratic parameters", opt);
    pcf->add_option("--period", opt.period, "exact period, 1..8")->required();
    pcf->callback([&] { cmd_family_pcf(opt); });

    CLI::App* ladder = leaf(family, "ladder", "order-of-magnitude containment checks", opt);
    ladder->add_option("--lambda", opt.lambda, "parameter, 're' or 're,im'")->required();
    ladder->add_option("--K", opt.K, "uniform ladder constant")->capture_default_str();
    ladder->callback([&] { cmd_family_ladder(opt); });

    CLI::App* symbolic = app.add_subcommand("symbolic", "the exchange subshift");
    symbolic->require_subcommand(1);
    CLI::App* words = leaf(symbolic, "words", "admissible words, one per line", opt);
    words->add_option("--depth", opt.depth, "word length")->required();
    words->add_flag("--plain", opt.plain, "suppress the trailing JSON summary");
    words->add_option("--list", opt.list_path, "also write the word list to this file");
    words->callback([&] { cmd_symbolic_words(opt); });

    CLI::App* quotient = leaf(symbolic, "quotient", "carpet-quotient equivalence", opt);
    quotient->add_option("--s", opt.s, "word as '<pre>:<period>' or finite digits")
        ->required();
    quotient->add_option("--sp", opt.sp, "second word, same syntax")->required();
    quotient->callback([&] { cmd_symbolic_quotient(opt); });

    CLI::App* moduli = app.add_subcommand("moduli", "annulus-modulus systems");
    moduli->require_subcommand(1);
    CLI::App* solve = leaf(moduli, "solve", "positive solution and equipotential levels", opt);
    solve->add_option("--weights", opt.weights, "d0,d1,d2,d3")->required();
    solve->add_option("--c", opt.C, "constant C in the fourth inequality")
        ->capture_default_str();
    solve->add_option("--extra-margin", opt.extra_margin,
                      "safety factor on the level gap (> 1)")
        ->capture_default_str();
    solve->callback([&] { cmd_moduli_solve(opt); });

    CLI::App* render = app.add_subcommand("render", "basin/Julia images");
    render->require_subcommand(1);
    const auto add_viewport = [&](CLI::App* r) {
        r->add_option("--center", opt.center, "viewport center 're,im'")
            ->capture_default_str();
        r->add_option("--width", opt.width, "viewport width")->required();
        r->add_option("--height", opt.height, "viewport height (default: width)");
        r->add_option("--px", opt.px, "pixel width")->required();
        r->add_option("--px-h", opt.px_h, "pixel height (default: --px)");
        r->add_option("--image", opt.image, "write a binary PPM here");
        r->add_option("--sidecar", opt.sidecar, "write the metadata JSON here");
    };
    CLI::App* dynamical = leaf(render, "dynamical", "basins of the marked cycle", opt);
    dynamical->add_option("--lambda", opt.lambda, "parameter, 're' or 're,im'")->required();
    add_viewport(dynamical);
    dynamical->add_option("--max-iter", opt.max_iter_dyn, "iteration budget")
        ->capture_default_str();
    dynamical->add_option("--trap", opt.trap_dyn, "chordal trap radius")
        ->capture_default_str();
    dynamical->callback([&] { cmd_render(opt, false); });

    CLI::App* parameter = leaf(render, "parameter", "free-critical behavior over lambda", opt);
    add_viewport(parameter);
    parameter->add_option("--max-iter", opt.max_iter_par, "iteration budget")
        ->capture_default_str();
    parameter->add_option("--trap", opt.trap_par, "chordal trap radius")
        ->capture_default_str();
    parameter->callback([&] { cmd_render(opt, true); });

    CLI::App* reproduce = leaf(&app, "reproduce", "canned 1024x1024 figure renders", opt);
    reproduce->add_option("--figure", opt.figure, "which figure")
        ->required()
        ->check(CLI::IsMember({"fig2a", "fig2b", "fig8a"}));
    reproduce->add_option("--outdir", opt.outdir, "output directory")->capture_default_str();
    reproduce->callback([&] { cmd_reproduce(opt); });

    try {
        app.name("carpet");
        std::vector<std::string> args(argv + 1, argv + argc);
        expand_config(args, app);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const carpet::error& e) {
        std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", {{"kind", "error"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 1;
    }
    return 0;
}
