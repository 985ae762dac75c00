#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "main_entry.hpp"
#include "output.hpp"
#include "shiftlab/parallel.hpp"
#include "test_support.hpp"

using namespace shiftlab;
using namespace shiftlab::cli;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find("\r\n", pos);
        REQUIRE(end != std::string::npos);
        std::vector<std::string> row;
        std::istringstream in(text.substr(pos, end - pos));
        std::string f;
        while (std::getline(in, f, ',')) row.push_back(f);
        if (!text.empty() && text[end - 1] == ',') row.emplace_back();
        rows.push_back(row);
        pos = end + 2;
    }
    return rows;
}

const std::string& file(const Outputs& out, const std::string& name) {
    for (const auto& [n, bytes] : out)
        if (n == name) return bytes;
    FAIL("missing output " << name);
    static const std::string none;
    return none;
}

nlohmann::ordered_json parse_json(const std::string& s) { return nlohmann::ordered_json::parse(s); }

const char* kZ2 = "k = 3\nnu = 2\ncoeffs_re = 0,0,1\n";

RunConfig z2_config(const std::string& extra) { return RunConfig::parse(std::string(kZ2) + extra); }

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("shiftlab_cli_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = (path / name).string();
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }
};

int run(std::vector<std::string> args, std::string* err_out = nullptr) {
    args.insert(args.begin(), "shiftlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_out) *err_out = err.str();
    return code;
}

}  // namespace

TEST_CASE("config: parse, comments, lists, errors") {
    const auto c = RunConfig::parse("# comment\n k = 4 \nnu=2\r\ncoeffs_re = 0, 0 ,1\n\na_re = -1e-3\n");
    CHECK(c.get_int("k", 0) == 4);
    CHECK(c.get_doubles("coeffs_re") == std::vector<double>{0.0, 0.0, 1.0});
    CHECK(c.get_double("a_re", 0.0) == -1e-3);
    CHECK(c.get_double("a_im", 7.0) == 7.0);
    const ShiftSpec s = c.shift();
    CHECK(s.k == 4);
    CHECK(s.nu == 2);
    CHECK(s.d() == 2);

    CHECK_THROWS_AS(RunConfig::parse("bogus = 1\n"), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("k = 3\nk = 4\n"), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("k 3\n"), ValidationError);
    CHECK_THROWS_AS((void)RunConfig::parse("k = 3x\n").get_int("k", 0), ValidationError);
    CHECK_THROWS_AS((void)RunConfig::parse("a_re = .\n").get_double("a_re", 0), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("k = 3\nnu = 3\ncoeffs_re = 0,0,1\n").shift(), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("k = 3\nnu = 1\n").shift(), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("coeffs_re = 0,1\ncoeffs_im = 0\n").polynomial(), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("z0_re = 1,2\n").point("z0", 3), ValidationError);
    CHECK_THROWS_AS((void)RunConfig::parse("seed = -1\n").seed(), ValidationError);
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/shiftlab.cfg"), ValidationError);
}

TEST_CASE("output: number format, csv quoting, colormap stops, png") {
    CHECK(fmt(0.1) == "0.1");
    CHECK(fmt(-2.5e-300) == "-2.5e-300");
    CHECK(fmt(3.0) == "3");
    CHECK(fmt(std::nan("")) == "nan");
    CHECK(fmt(-HUGE_VAL) == "-inf");
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_row({"a", "", "b\nc"}) == "a,,\"b\nc\"\r\n");

    const auto eq = [](Rgb c, int r, int g, int b) { return c.r == r && c.g == g && c.b == b; };
    CHECK(eq(colormap(0.0), 12, 10, 40));
    CHECK(eq(colormap(0.25), 40, 88, 168));
    CHECK(eq(colormap(0.5), 86, 178, 196));
    CHECK(eq(colormap(0.75), 238, 214, 118));
    CHECK(eq(colormap(1.0), 252, 250, 244));
    CHECK(eq(colormap(-3.0), 12, 10, 40));
    CHECK(eq(colormap(9.0), 252, 250, 244));

    std::vector<Rgb> px(6, Rgb{1, 2, 3});
    const std::string png = encode_png(px, 3, 2);
    REQUIRE(png.size() > 8);
    CHECK(png.substr(0, 8) == std::string("\x89PNG\r\n\x1a\n", 8));
    CHECK(png.find("tEXt") == std::string::npos);
    CHECK(png.find("tIME") == std::string::npos);
    CHECK(encode_png(px, 3, 2) == png);
    CHECK_THROWS(encode_png(px, 4, 2));
}

TEST_CASE("iterate: constant zero orbit, escaping labels, row count") {
    SUBCASE("zero point") {
        const auto rows = parse_csv(file(cmd_iterate(z2_config("a_re = 0.3\nhorizon = 12\n")), "orbit.csv"));
        REQUIRE(rows.size() == 14);
        CHECK(rows[0] == std::vector<std::string>{"step", "z1_re", "z1_im", "z2_re", "z2_im", "z3_re", "z3_im",
                                                  "label"});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i][0] == std::to_string(i - 1));
            CHECK(std::vector<std::string>(rows[i].begin() + 1, rows[i].end()) ==
                  std::vector<std::string>{"0", "0", "0", "0", "0", "0", "Inner"});
        }
    }
    SUBCASE("escaping orbit matches an independent iteration") {
        const auto cfg = z2_config("a_re = 0.01\nz0_re = 0.5,0.3,1.9\nhorizon = 8\nR = 2\n");
        const auto rows = parse_csv(file(cmd_iterate(cfg), "orbit.csv"));
        REQUIRE(rows.size() == 10);
        std::vector<Complex> z{0.5, 0.3, 1.9};
        for (std::size_t n = 0; n <= 8; ++n) {
            const auto& r = rows[n + 1];
            for (std::size_t i = 0; i < 3; ++i) CHECK(std::stod(r[1 + 2 * i]) == doctest::Approx(z[i].real()).epsilon(1e-12));
            // next state: (z2, z3, z2^2 + a z1) for nu = 2
            z = {z[1], z[2], z[1] * z[1] + 0.01 * z[0]};
        }
        CHECK(rows.back().back().rfind("PlusCone", 0) == 0);
    }
    SUBCASE("bounded orbit has horizon + 1 rows") {
        const auto rows = parse_csv(file(cmd_iterate(z2_config("a_re = 0.01\nz0_re = 0.5,0.3,0.9\nhorizon = 40\n")),
                                         "orbit.csv"));
        CHECK(rows.size() == 42);
    }
}

TEST_CASE("slice: zero Green near the origin, header, row count") {
    SUBCASE("(.,.,0) at a = 0 near the origin") {
        const auto cfg = z2_config("slice_x = 1\nslice_y = 2\nbox = -0.4,0.4,-0.4,0.4\nwidth = 9\nheight = 7\nR = 2\n");
        const auto out = cmd_slice(cfg);
        const auto rows = parse_csv(file(out, "slice.csv"));
        REQUIRE(rows.size() == 1 + 9 * 7);
        CHECK(rows[0] == std::vector<std::string>{"x_index", "y_index", "g_plus", "g_minus", "verdict"});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i][2] == "0");
            CHECK(rows[i][3].empty());
            CHECK(rows[i][4] == "Bounded");
        }
        // uniform black image: every pixel is bounded
        const auto& png = file(out, "slice.png");
        CHECK(png == encode_png(std::vector<Rgb>(63), 9, 7));
    }
    SUBCASE("g_plus agrees with the product Green function away from the origin") {
        const auto cfg = z2_config("slice_x = 1\nslice_y = 2\nbox = -3,3,-2,2\nwidth = 6\nheight = 4\nz0_re = 0,0,1.5\n");
        const auto rows = parse_csv(file(cmd_slice(cfg), "slice.csv"));
        REQUIRE(rows.size() == 25);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const int x = std::stoi(rows[i][0]), y = std::stoi(rows[i][1]);
            const double X = -3.0 + (x + 0.5), Y = 2.0 - (y + 0.5);
            // at a = 0, G+ is the max of log+|.| over the tail (z2, z3) for p = z^2
            const double expect = std::max({0.0, std::log(std::abs(Y)), std::log(1.5)});
            (void)X;
            CHECK(std::stod(rows[i][2]) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
    SUBCASE("g_minus filled when a != 0; single-coordinate complex plane") {
        const auto cfg = z2_config("a_re = 0.5\nslice_x = 3\nslice_y = 3\nwidth = 5\nheight = 5\n");
        const auto rows = parse_csv(file(cmd_slice(cfg), "slice.csv"));
        REQUIRE(rows.size() == 26);
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(!rows[i][3].empty());
    }
    CHECK_THROWS_AS(cmd_slice(z2_config("box = 1,1,0,1\n")), ValidationError);
    CHECK_THROWS_AS(cmd_slice(z2_config("slice_x = 4\n")), ValidationError);
}

TEST_CASE("degenerate: header and one row per a") {
    const auto cfg = z2_config("a_list = 0.1,0.05\ncount = 200\ntest_points = 8\nlyapunov_n = 8\n");
    const auto rows = parse_csv(file(cmd_degenerate(cfg), "sweep.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"a", "hausdorff", "sup_Ha_minus_F", "lyapunov", "lyapunov_stderr",
                                              "samples", "n"});
    CHECK(rows[1][0] == "0.1");
    CHECK(rows[2][0] == "0.05");
    CHECK_THROWS_AS(cmd_degenerate(z2_config("a_list = 0.1,-0.05\n")), ValidationError);
}

TEST_CASE("certify and partition: schema") {
    const auto cfg = z2_config("a_re = 0.001\nresolution = 160\nper_label = 20\n");
    const auto cj = parse_json(file(cmd_certify(cfg), "certify.json"));
    for (const char* key : {"samples", "pass_u", "pass_s", "pass_both", "min_expansion", "max_contraction", "rho1", "N",
                            "a", "lambda_target", "boundary_failures", "cone_failures",
                            "cone_failures_at_collar_boundary", "failure_examples", "search_log", "cover"})
        CHECK_MESSAGE(cj.contains(key), key);
    CHECK(cj["samples"].get<int>() == 60);
    CHECK(cj.begin().key() == "samples");

    const auto out = cmd_partition(cfg);
    const auto rows = parse_csv(file(out, "partition.csv"));
    REQUIRE(rows.size() == 61);
    CHECK(rows[0] == std::vector<std::string>{"index", "z1_re", "z1_im", "z2_re", "z2_im", "z3_re", "z3_im", "label",
                                              "set", "group", "home", "invariant", "violation", "limit"});
    const auto pj = parse_json(file(out, "partition.json"));
    for (const char* key : {"samples", "violations", "violation_fraction", "violations_ok", "a", "blocks", "invariance",
                            "group_sizes", "label_counts", "limit_counts", "sets", "cover"})
        CHECK_MESSAGE(pj.contains(key), key);
    CHECK(pj["samples"].get<int>() == 60);
}

TEST_CASE("hyperbolic1d: verdict and divergence block") {
    const auto j = parse_json(file(cmd_hyperbolic1d(RunConfig::parse("coeffs_re = -1,0,1\n")), "hyperbolic1d.json"));
    CHECK(j["is_hyperbolic"] == true);
    CHECK(j["connected_julia"] == true);
    REQUIRE(j["attracting_cycles"].size() == 1);
    CHECK(j["attracting_cycles"][0]["period"] == 2);
    CHECK(!j.contains("eta_divergence"));

    const auto e = parse_json(file(
        cmd_hyperbolic1d(RunConfig::parse("coeffs_re = 0,0,1\neta = 0.05\neta_starts = 10\neta_draws = 20\nresolution = 100\n")),
        "hyperbolic1d.json"));
    REQUIRE(e.contains("eta_divergence"));
    CHECK(e["eta_divergence"]["passed"] == true);
    CHECK(e["eta_divergence"]["threshold"].get<double>() > 0.0);
}

TEST_CASE("determinism: same seed, any thread count") {
    const std::vector<std::pair<std::string, RunConfig>> cases{
        {"iterate", z2_config("a_re = 0.01\nz0_re = 0.5,0.3,0.9\n")},
        {"slice", z2_config("a_re = 0.01\nwidth = 12\nheight = 10\n")},
        {"degenerate", z2_config("a_list = 0.1\ncount = 100\ntest_points = 4\nlyapunov_n = 6\n")},
        {"certify", z2_config("a_re = 0.001\nresolution = 120\nper_label = 10\n")},
        {"partition", z2_config("a_re = 0.001\nresolution = 120\nper_label = 10\n")},
        {"hyperbolic1d", RunConfig::parse("coeffs_re = 0,0,1\neta = 0.05\neta_starts = 6\neta_draws = 10\nresolution = 100\n")},
    };
    for (const auto& [name, cfg] : cases) {
        CAPTURE(name);
        set_thread_count(1);
        const auto a = run_command(name, cfg);
        set_thread_count(4);
        const auto b = run_command(name, cfg);
        set_thread_count(0);
        const auto c = run_command(name, cfg);
        CHECK(a == b);
        CHECK(a == c);
    }
    auto other = z2_config("a_re = 0.001\nresolution = 120\nper_label = 10\nseed = 2\n");
    CHECK(run_command("partition", other) != run_command("partition", cases[4].second));
}

TEST_CASE("run_cli: files, exit codes, error body") {
    TempDir dir;
    const auto good = dir.write("good.cfg", std::string(kZ2) + "a_re = 0.2\nhorizon = 5\n");
    const auto out = (dir.path / "out").string();
    CHECK(run({"iterate", "--config", good, "--out", out, "--seed", "3", "--threads", "2"}) == 0);
    CHECK(std::filesystem::exists(dir.path / "out" / "orbit.csv"));
    CHECK(!std::filesystem::exists(dir.path / "out" / "orbit.csv.tmp"));

    std::string err;
    CHECK(run({"iterate", "--config", dir.write("bad.cfg", "k = 3\nwhat = 1\n")}, &err) == 2);
    const auto body = nlohmann::json::parse(err);
    CHECK(body["error"] == "validation");
    CHECK(body["message"].get<std::string>().find("what") != std::string::npos);

    CHECK(run({"iterate", "--config", (dir.path / "missing.cfg").string()}, &err) == 2);
    CHECK(run({"fly", "--config", good}, &err) == 2);
    CHECK(run({"iterate"}, &err) == 2);

    // a Green threshold nothing can meet leaves the support sample empty
    const auto empty = dir.write("empty.cfg", std::string(kZ2) + "a_list = 0.1\ncount = 20\nsupp_eps = 1e-300\n");
    CHECK(run({"degenerate", "--config", empty, "--out", out}, &err) == 3);
    CHECK(nlohmann::json::parse(err)["error"] == "numerical");
}
