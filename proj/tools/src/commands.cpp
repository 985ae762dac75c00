#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "output.hpp"
#include "shiftlab/dynamics.hpp"
#include "shiftlab/filtration.hpp"
#include "shiftlab/hyperbolic1d.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/parallel.hpp"
#include "shiftlab/partition.hpp"
#include "shiftlab/plane_cover.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/splitting.hpp"

namespace shiftlab::cli {

namespace {

using json = nlohmann::ordered_json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json point_json(const Point& z) {
    json out = json::array();
    for (const Complex c : z) out.push_back(complex_json(c));
    return out;
}

int positive_int(const RunConfig& cfg, const std::string& key, long fallback) {
    const long v = cfg.get_int(key, fallback);
    if (v < 1 || v > 1'000'000'000) throw ValidationError("config key '" + key + "' must be a positive integer");
    return static_cast<int>(v);
}

double positive_double(const RunConfig& cfg, const std::string& key, double fallback) {
    const double v = cfg.get_double(key, fallback);
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("config key '" + key + "' must be positive");
    return v;
}

std::string region_string(const RegionLabel& r) {
    if (r.kind == RegionLabel::Kind::Inner) return "Inner";
    return std::string(to_string(r.kind)) + "(" + std::to_string(r.index) + ")";
}

double filtration_radius(const RunConfig& cfg, const ShiftSpec& s) {
    if (cfg.has("R")) return positive_double(cfg, "R", 1.0);
    // any |a| bound works at a = 0
    const double amax = std::abs(s.a) > 0.0 ? std::abs(s.a) : 0.5;
    return find_filtration_radius(s, amax);
}

std::vector<std::string> coordinate_header(int k) {
    std::vector<std::string> h;
    for (int i = 1; i <= k; ++i) {
        h.push_back("z" + std::to_string(i) + "_re");
        h.push_back("z" + std::to_string(i) + "_im");
    }
    return h;
}

void append_coordinates(std::vector<std::string>& row, const Point& z) {
    for (const Complex c : z) {
        row.push_back(fmt(c.real()));
        row.push_back(fmt(c.imag()));
    }
}

Box read_box(const RunConfig& cfg) {
    if (!cfg.has("box")) return Box{};
    const auto v = cfg.get_doubles("box");
    if (v.size() != 4) throw ValidationError("config key 'box' needs xmin,xmax,ymin,ymax");
    if (!(v[1] > v[0] && v[3] > v[2])) throw ValidationError("degenerate box");
    return Box{v[0], v[1], v[2], v[3]};
}

PlaneCover make_cover(const RunConfig& cfg, const Polynomial& p) {
    const double eps = positive_double(cfg, "eps", 0.1);
    const double cell = positive_double(cfg, "cell", eps / 4.0);
    const int resolution = positive_int(cfg, "resolution", 400);
    const auto cloud = inverse_tree_cloud(p, cell, 2, 400000, cfg.seed());
    return build_plane_cover(p, cloud, eps, read_box(cfg), resolution);
}

json cover_json(const PlaneCover& c) {
    json j;
    j["eps"] = c.eps();
    j["cell"] = c.cell();
    j["nx"] = c.nx();
    j["ny"] = c.ny();
    j["uc_components"] = c.uc_components();
    j["uinf_components"] = c.uinf_components();
    j["collar_cells"] = c.count(Symbol::Zero);
    j["uc_invariance_raw"] = c.uc_invariance_raw();
    j["closure_cells"] = c.closure_cells();
    j["uc_invariance"] = c.uc_invariance();
    return j;
}

std::vector<JuliaCandidate> make_candidates(const RunConfig& cfg, const ShiftSpec& s,
                                            const HyperbolicityVerdict1D& hv) {
    CandidateConfig cc;
    cc.per_label = static_cast<std::size_t>(positive_int(cfg, "per_label", 200));
    cc.burn_in = positive_int(cfg, "burn_in", cc.burn_in);
    cc.eps = positive_double(cfg, "candidate_eps", cc.eps);
    cc.level = positive_int(cfg, "level", cc.level);
    cc.seed = cfg.seed();
    return julia_candidates(s, hv, cc);
}

}  // namespace

Outputs cmd_iterate(const RunConfig& cfg) {
    const ShiftSpec s = cfg.shift();
    const Point z0 = cfg.point("z0", s.k);
    const int horizon = positive_int(cfg, "horizon", 20);
    const double R = filtration_radius(cfg, s);
    const Orbit orbit = iterate_orbit(s, z0, horizon);

    auto header = coordinate_header(s.k);
    header.insert(header.begin(), "step");
    header.push_back("label");
    std::string csv = csv_row(header);
    for (std::size_t n = 0; n < orbit.points.size(); ++n) {
        std::vector<std::string> row{std::to_string(n)};
        append_coordinates(row, orbit.points[n]);
        row.push_back(region_string(classify_point(s, R, orbit.points[n])));
        csv += csv_row(row);
    }
    return {{"orbit.csv", csv}};
}

Outputs cmd_slice(const RunConfig& cfg) {
    const ShiftSpec s = cfg.shift();
    const Point base = cfg.point("z0", s.k);
    const int sx = static_cast<int>(cfg.get_int("slice_x", 1));
    const int sy = static_cast<int>(cfg.get_int("slice_y", 2));
    if (sx < 1 || sy < 1 || sx > s.k || sy > s.k) throw ValidationError("slice_x and slice_y must lie in 1..k");
    const Box box = read_box(cfg);
    const int width = positive_int(cfg, "width", 64);
    const int height = positive_int(cfg, "height", 64);
    const int level = positive_int(cfg, "level", 20);
    const int horizon = positive_int(cfg, "horizon", 60);
    const double R = filtration_radius(cfg, s);
    const bool has_minus = std::abs(s.a) > 0.0;

    struct Cell {
        double gp = 0.0, gm = 0.0;
        OrbitVerdict::Kind verdict = OrbitVerdict::Kind::Undetermined;
    };
    const std::size_t cells = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<Cell> grid(cells);
    const double dx = (box.xmax - box.xmin) / width, dy = (box.ymax - box.ymin) / height;
    parallel_for(cells, [&](std::size_t i) {
        const int x = static_cast<int>(i % static_cast<std::size_t>(width));
        const int y = static_cast<int>(i / static_cast<std::size_t>(width));
        const double X = box.xmin + (x + 0.5) * dx;
        const double Y = box.ymax - (y + 0.5) * dy;
        Point z = base;
        const auto ix = static_cast<std::size_t>(sx - 1), iy = static_cast<std::size_t>(sy - 1);
        if (sx == sy) {
            z[ix] = Complex{X, Y};
        } else {
            // real slice: the imaginary parts come from z0
            z[ix] = Complex{X, base[ix].imag()};
            z[iy] = Complex{Y, base[iy].imag()};
        }
        Cell& c = grid[i];
        c.gp = green_plus(s, z, level).value;
        if (has_minus) c.gm = green_minus(s, z, level).value;
        c.verdict = orbit_verdict(s, R, z, horizon).kind;
    });

    std::string csv = csv_row({"x_index", "y_index", "g_plus", "g_minus", "verdict"});
    std::vector<Rgb> pixels(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const Cell& c = grid[i];
        const std::string x = std::to_string(i % static_cast<std::size_t>(width));
        const std::string y = std::to_string(i / static_cast<std::size_t>(width));
        csv += csv_row({x, y, fmt(c.gp), has_minus ? fmt(c.gm) : "", to_string(c.verdict)});
        const double g = has_minus ? std::min(c.gp, c.gm) : c.gp;
        Rgb px = colormap(g / (1.0 + g));
        if (c.verdict == OrbitVerdict::Kind::Bounded) {
            px = Rgb{};
        } else if (c.verdict == OrbitVerdict::Kind::Undetermined) {
            px = Rgb{static_cast<std::uint8_t>(px.r / 2), static_cast<std::uint8_t>(px.g / 2),
                     static_cast<std::uint8_t>(px.b / 2)};
        }
        pixels[i] = px;
    }
    return {{"slice.csv", csv}, {"slice.png", encode_png(pixels, width, height)}};
}

Outputs cmd_degenerate(const RunConfig& cfg) {
    const Polynomial p = cfg.polynomial();
    const int k = static_cast<int>(cfg.get_int("k", 3));
    const int nu = static_cast<int>(cfg.get_int("nu", 2));
    validate_shift(ShiftSpec{k, nu, Complex{0.1, 0.0}, p});
    auto a_list = cfg.get_doubles("a_list");
    if (a_list.empty()) a_list = {0.1, 0.05, 0.01};
    for (double a : a_list)
        if (!(a > 0.0)) throw ValidationError("a_list entries must be positive");

    SweepConfig sc;
    sc.supp.count = static_cast<std::size_t>(positive_int(cfg, "count", 2000));
    sc.supp.burn_in = positive_int(cfg, "burn_in", sc.supp.burn_in);
    sc.supp.eps = positive_double(cfg, "supp_eps", sc.supp.eps);
    sc.supp.seed = cfg.seed();
    sc.green_level = positive_int(cfg, "green_level", sc.green_level);
    sc.lyapunov_n = positive_int(cfg, "lyapunov_n", sc.lyapunov_n);
    sc.test_points = static_cast<std::size_t>(positive_int(cfg, "test_points", 64));

    std::string csv = sweep_csv_header() + "\r\n";
    for (const auto& row : degeneration_sweep(p, k, nu, a_list, sc)) csv += sweep_csv_row(row) + "\r\n";
    return {{"sweep.csv", csv}};
}

Outputs cmd_certify(const RunConfig& cfg) {
    const ShiftSpec s = cfg.shift();
    const auto hv = classify_hyperbolic(s.p);
    const PlaneCover cover = make_cover(cfg, s.p);
    const auto candidates = make_candidates(cfg, s, hv);
    std::vector<ShadowResult> orbits;
    orbits.reserve(candidates.size());
    for (const auto& c : candidates) orbits.push_back(c.orbit);

    ConeConfig cc;
    cc.rho1 = positive_double(cfg, "rho1", cc.rho1);
    cc.N = positive_int(cfg, "N", cc.N);
    cc.lambda_target = positive_double(cfg, "lambda", cc.lambda_target);
    cc.head_weight = positive_double(cfg, "head_weight", cc.head_weight);
    cc.phases = positive_int(cfg, "phases", cc.phases);
    cc.search = cfg.get_bool("search", cc.search);
    cc.max_N = positive_int(cfg, "max_N", cc.max_N);
    cc.required_pass = positive_double(cfg, "required_pass", cc.required_pass);
    const ConeCheckReport r = certify_cones(s, cover, orbits, cc);

    json j;
    j["samples"] = r.samples;
    j["pass_u"] = r.pass_u;
    j["pass_s"] = r.pass_s;
    j["pass_both"] = r.pass_both;
    j["min_expansion"] = r.min_expansion;
    j["max_contraction"] = r.max_contraction;
    j["rho1"] = r.rho1;
    j["N"] = r.N;
    j["a"] = complex_json(s.a);
    j["lambda_target"] = r.lambda_target;
    j["boundary_failures"] = r.boundary_failures;
    j["cone_failures"] = r.cone_failures;
    j["cone_failures_at_collar_boundary"] = r.cone_failures_at_collar_boundary;
    json ex = json::array();
    for (const auto& f : r.failure_examples) {
        json e;
        e["z"] = point_json(f.z);
        e["label"] = f.label;
        e["kind"] = f.kind;
        e["at_collar_boundary"] = f.at_collar_boundary;
        ex.push_back(e);
    }
    j["failure_examples"] = ex;
    j["search_log"] = r.search_log;
    j["cover"] = cover_json(cover);
    return {{"certify.json", dump(j)}};
}

Outputs cmd_partition(const RunConfig& cfg) {
    const ShiftSpec s = cfg.shift();
    const auto hv = classify_hyperbolic(s.p);
    const PlaneCover cover = make_cover(cfg, s.p);
    const auto candidates = make_candidates(cfg, s, hv);
    const int blocks = positive_int(cfg, "blocks", 8);
    const PartitionReport r = partition_julia(s, cover, candidates, blocks);

    auto header = coordinate_header(s.k);
    header.insert(header.begin(), "index");
    for (const char* h : {"label", "set", "group", "home", "invariant", "violation", "limit"}) header.emplace_back(h);
    std::string csv = csv_row(header);
    std::map<std::string, std::size_t> sets;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const auto& lp = r.points[i];
        std::vector<std::string> row{std::to_string(i)};
        append_coordinates(row, lp.z);
        const std::string set = lp.violation ? "" : set_name(s.k, lp.label);
        if (!set.empty()) ++sets[set];
        row.push_back(label_string(lp.label));
        row.push_back(set);
        row.push_back(std::to_string(lp.group));
        row.push_back(lp.home.empty() ? "" : label_string(lp.home));
        row.push_back(lp.invariant ? "true" : "false");
        row.push_back(lp.violation ? "true" : "false");
        row.push_back(lp.limit);
        csv += csv_row(row);
    }

    json j;
    j["samples"] = r.samples;
    j["violations"] = r.violations;
    j["violation_fraction"] = r.violation_fraction;
    j["violations_ok"] = r.violations_ok;
    j["a"] = complex_json(s.a);
    j["blocks"] = r.blocks;
    j["invariance"] = r.invariance;
    json groups = json::object();
    for (const auto& [m, n] : r.group_sizes) groups[std::to_string(m)] = n;
    j["group_sizes"] = groups;
    j["label_counts"] = r.label_counts;
    j["limit_counts"] = r.limit_counts;
    j["sets"] = sets;
    j["cover"] = cover_json(cover);
    return {{"partition.csv", csv}, {"partition.json", dump(j)}};
}

Outputs cmd_hyperbolic1d(const RunConfig& cfg) {
    const Polynomial p = cfg.polynomial();
    const int horizon = positive_int(cfg, "horizon", 2000);
    const double tol = positive_double(cfg, "tol", 1e-10);
    const auto v = classify_hyperbolic(p, horizon, tol);

    json j;
    j["is_hyperbolic"] = v.is_hyperbolic;
    j["connected_julia"] = v.connected_julia;
    json cycles = json::array();
    for (const auto& c : v.attracting_cycles) {
        json e;
        e["period"] = c.period;
        e["representative"] = complex_json(c.representative);
        e["multiplier"] = complex_json(c.multiplier);
        json orbit = json::array();
        for (const Complex w : c.orbit) orbit.push_back(complex_json(w));
        e["orbit"] = orbit;
        cycles.push_back(e);
    }
    j["attracting_cycles"] = cycles;
    json fates = json::array();
    for (const auto& f : v.critical_orbit_fates) {
        json e;
        e["critical_point"] = complex_json(f.critical_point);
        e["fate"] = to_string(f.kind);
        e["cycle"] = f.cycle;
        e["steps"] = f.steps;
        fates.push_back(e);
    }
    j["critical_orbit_fates"] = fates;

    if (cfg.has("eta")) {
        const double eta = positive_double(cfg, "eta", 0.05);
        const auto starts = static_cast<std::size_t>(positive_int(cfg, "eta_starts", 100));
        const auto draws = static_cast<std::size_t>(positive_int(cfg, "eta_draws", 1000));
        const int eh = positive_int(cfg, "eta_horizon", 200);
        const PlaneCover cover = make_cover(cfg, p);
        const auto z0s = sample_cells(cover, Symbol::Inf, starts, cfg.seed());
        if (z0s.empty()) throw NumericalError("the cover has no U_inf cells to start from");
        const auto r = eta_divergence_test(p, eta, z0s, draws, eh, cfg.seed());
        json d;
        d["eta"] = eta;
        d["starts"] = z0s.size();
        d["draws"] = draws;
        d["horizon"] = eh;
        d["target"] = r.target;
        d["passed"] = r.passed;
        d["worst_steps"] = r.worst_steps;
        if (r.witness) {
            json w;
            w["z0"] = complex_json(r.witness->z0);
            w["sequence"] = r.witness->sequence;
            w["max_modulus"] = r.witness->max_modulus;
            d["witness"] = w;
        } else {
            d["witness"] = nullptr;
        }
        d["threshold"] = eta_threshold(p, z0s, std::min<std::size_t>(draws, 100), eh, 1.0, 20, cfg.seed());
        j["eta_divergence"] = d;
    }
    return {{"hyperbolic1d.json", dump(j)}};
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"iterate", "slice", "degenerate", "certify", "partition",
                                                "hyperbolic1d"};
    return names;
}

Outputs run_command(const std::string& name, const RunConfig& cfg) {
    if (name == "iterate") return cmd_iterate(cfg);
    if (name == "slice") return cmd_slice(cfg);
    if (name == "degenerate") return cmd_degenerate(cfg);
    if (name == "certify") return cmd_certify(cfg);
    if (name == "partition") return cmd_partition(cfg);
    if (name == "hyperbolic1d") return cmd_hyperbolic1d(cfg);
    throw ValidationError("unknown command '" + name + "'");
}

}  // namespace shiftlab::cli
