#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "sfd/config.hpp"
#include "sfd/errors.hpp"
#include "sfd/flow.hpp"
#include "sfd/report.hpp"

using namespace sfd;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
    for (const auto& v : violations) {
        if (v.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("configurations survive a render/parse round trip") {
    RunConfig c;
    c.alpha = -1.5;
    c.n_cells = 48;
    c.tau = 2.5e-6;
    c.t_end = 1e-3;
    c.scheme = TimeScheme::euler;
    c.newton_tol = 1e-9;
    c.newton_max_iter = 25;
    c.initial = "root5";
    c.snapshot_every = 7;
    c.particles = 5;
    c.assembler = AssemblerKind::closed_form;
    c.fit_window_start = 1e-4;
    c.fit_window_end = 9e-4;

    const RunConfig back = parse_config_text(render_config(c));
    CHECK(back.alpha == c.alpha);
    CHECK(back.n_cells == c.n_cells);
    CHECK(back.tau == c.tau);
    CHECK(back.t_end == c.t_end);
    CHECK(back.scheme == c.scheme);
    CHECK(back.newton_tol == c.newton_tol);
    CHECK(back.newton_max_iter == c.newton_max_iter);
    CHECK(back.initial == c.initial);
    CHECK(back.snapshot_every == c.snapshot_every);
    CHECK(back.particles == c.particles);
    CHECK(back.assembler == c.assembler);
    REQUIRE(back.fit_window_start.has_value());
    CHECK(*back.fit_window_start == *c.fit_window_start);
    REQUIRE(back.fit_window_end.has_value());
    CHECK(*back.fit_window_end == *c.fit_window_end);
}

TEST_CASE("comments, blanks, and defaults parse; junk does not") {
    const RunConfig c = parse_config_text("# run setup\n\nalpha = -2\n n_cells = 36 \n");
    CHECK(c.alpha == -2.0);
    CHECK(c.n_cells == 36);
    CHECK(c.scheme == TimeScheme::bdf2);  // untouched default

    CHECK_THROWS_AS(parse_config_text("volume = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_cells = 12.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("scheme = bdf7\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_file("/no/such/config.txt"), ConfigError);
}

TEST_CASE("series files survive a write/read round trip") {
    std::vector<DiagnosticsRecord> series;
    for (int i = 0; i < 4; ++i) {
        DiagnosticsRecord r;
        r.step = i;
        r.time = i * 1e-5;
        r.entropy_rel = 1e-3 / (i + 1);
        r.gnorm_sq_rel = 2e-3 / (i + 1);
        r.var_u = 0.1 * (i + 1);
        r.var_g = 0.2;
        r.mass_error = 1e-15 * i;
        r.newton_iterations = i > 0 ? 2 : 0;
        r.min_g = 0.5 + i;
        series.push_back(r);
    }

    const auto path = temp_file("sfd_series_roundtrip.csv");
    write_series_csv(path.string(), series);
    const auto back = read_series_csv(path.string());
    std::filesystem::remove(path);

    REQUIRE(back.size() == series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        CHECK(back[i].step == series[i].step);
        CHECK(back[i].time == series[i].time);
        CHECK(back[i].entropy_rel == series[i].entropy_rel);
        CHECK(back[i].gnorm_sq_rel == series[i].gnorm_sq_rel);
        CHECK(back[i].var_u == series[i].var_u);
        CHECK(back[i].var_g == series[i].var_g);
        CHECK(back[i].mass_error == series[i].mass_error);
        CHECK(back[i].newton_iterations == series[i].newton_iterations);
        CHECK(back[i].min_g == series[i].min_g);
    }
}

TEST_CASE("malformed series files are rejected with line context") {
    const auto path = temp_file("sfd_series_bad.csv");

    {
        std::FILE* f = std::fopen(path.string().c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("step,wrong,header\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(read_series_csv(path.string()), ConfigError);

    {
        std::FILE* f = std::fopen(path.string().c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs(
            "step,time,entropy_rel,gnorm_sq_rel,var_u,var_g,mass_error,"
            "newton_iterations,min_g\n0,0,1,1,1\n",
            f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(read_series_csv(path.string()), ConfigError);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(read_series_csv("/no/such/series.csv"), ConfigError);
}

TEST_CASE("snapshot files carry the padded periodic row") {
    const auto [grid, g] = build_initial(preset_datum("cos2", 8));
    const auto path = temp_file("sfd_snapshot.csv");
    write_snapshot_csv(path.string(), grid, g);

    std::FILE* f = std::fopen(path.string().c_str(), "r");
    REQUIRE(f != nullptr);
    char line[256];
    REQUIRE(std::fgets(line, sizeof line, f) != nullptr);
    CHECK(std::string(line) == "j,omega_j,g_lin_j,g_quad_j,x_j,u_j\n");
    REQUIRE(std::fgets(line, sizeof line, f) != nullptr);

    int j = -1;
    double omega, lin, quad, x, u;
    REQUIRE(std::sscanf(line, "%d,%lg,%lg,%lg,%lg,%lg", &j, &omega, &lin, &quad, &x, &u) == 6);
    CHECK(j == 0);
    CHECK(omega == 0.0);
    CHECK(lin == g.left_value(1));  // periodic nodal value
    CHECK(quad == 0.0);             // bumps start with cell 1
    CHECK(x == 0.0);

    int rows = 1;
    while (std::fgets(line, sizeof line, f) != nullptr) ++rows;
    std::fclose(f);
    std::filesystem::remove(path);
    CHECK(rows == 9);  // j = 0..N
}

TEST_CASE("recorded runs pass the series checker") {
    RunConfig c;
    c.alpha = -1.0;
    c.n_cells = 24;
    c.tau = 1e-5;
    c.t_end = 20e-5;
    c.scheme = TimeScheme::euler;
    c.initial = "cos2";
    const auto res = run_flow(c);
    CHECK(check_series(c, res.series).empty());
}

TEST_CASE("doctored series rows are called out individually") {
    RunConfig c;
    c.alpha = -1.0;
    c.n_cells = 24;
    c.tau = 1e-5;
    c.t_end = 10e-5;
    c.scheme = TimeScheme::euler;
    c.initial = "cos2";
    const auto res = run_flow(c);

    auto tampered = res.series;
    tampered[3].step = 7;
    CHECK(mentions(check_series(c, tampered), "row 3"));

    tampered = res.series;
    tampered[4].mass_error = 1.0;
    CHECK(mentions(check_series(c, tampered), "mass"));

    tampered = res.series;
    tampered[5].min_g = -0.25;
    CHECK(mentions(check_series(c, tampered), "positiv"));

    tampered = res.series;
    tampered[2].entropy_rel = 10.0 * tampered[1].entropy_rel;
    CHECK(!check_series(c, tampered).empty());

    tampered = res.series;
    tampered[6].newton_iterations = 0;
    CHECK(!check_series(c, tampered).empty());
}

TEST_CASE("run summaries mention fits and extrema") {
    RunConfig c;
    c.alpha = -1.0;
    c.n_cells = 32;
    c.tau = 1e-5;
    c.t_end = 100e-5;
    c.scheme = TimeScheme::bdf2;
    c.initial = "cos2";
    const auto res = run_flow(c);
    const std::string summary = render_run_summary(c, res);
    CHECK(summary.find("steps") != std::string::npos);
    CHECK(summary.find("entropy_rel") != std::string::npos);
    CHECK(summary.find("rate") != std::string::npos);
    CHECK(summary.find("mass error") != std::string::npos);
}
