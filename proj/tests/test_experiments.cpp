#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "vplap/experiments.hpp"

using namespace vplap;
using Catch::Approx;

TEST_CASE("error_norms ignores additive constants and the solid region") {
    Grid1D g(8);
    MaskField mask = build_mask_1d(g);
    RhsVector exact(8, 0.0), u(8, 0.0);
    for (int i = 0; i < 8; ++i) {
        exact[static_cast<size_t>(i)] = std::cos(g.x(i));
        u[static_cast<size_t>(i)] = std::cos(g.x(i)) + 7.5; // shifted copy
    }
    // garbage in the solid must not matter
    u[6] = 1e9;
    ErrorPair e = error_norms(u, exact, mask, g.h);
    CHECK(e.linf < 1e-12);
    CHECK(e.l2 < 1e-12);
    CHECK_THROWS_AS(error_norms(RhsVector(7, 0.0), exact, mask, g.h), std::invalid_argument);
}

TEST_CASE("error_norms scales like a discrete L2 norm") {
    Grid1D g(16);
    MaskField mask;
    mask.values.assign(16, 0.0); // all fluid
    RhsVector exact(16, 0.0), u(16, 0.0);
    // zero-mean perturbation of size +-1
    for (int i = 0; i < 16; ++i) u[static_cast<size_t>(i)] = (i % 2 == 0) ? 1.0 : -1.0;
    ErrorPair e = error_norms(u, exact, mask, g.h);
    CHECK(e.linf == Approx(1.0));
    CHECK(e.l2 == Approx(std::sqrt(16.0 * g.h)));
}

TEST_CASE("fit_slope recovers exact and noisy power laws") {
    std::vector<double> xs, ys, noisy;
    for (int k = 1; k <= 8; ++k) {
        const double x = std::pow(2.0, k);
        xs.push_back(x);
        ys.push_back(3.0 * std::pow(x, -2.0));
        noisy.push_back(3.0 * std::pow(x, 1.5) * (1.0 + 0.01 * std::sin(7.0 * k)));
    }
    auto [s1, b1] = fit_slope(xs, ys);
    CHECK(s1 == Approx(-2.0).margin(1e-12));
    CHECK(std::exp(b1) == Approx(3.0).margin(1e-10));
    auto [s2, b2] = fit_slope(xs, noisy);
    CHECK(s2 == Approx(1.5).margin(0.02));
    CHECK_THROWS_AS(fit_slope({1.0, 2.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_slope({1.0, 2.0, -3.0}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("penalized 1D right-hand side vanishes in the solid") {
    Grid1D g(32);
    MaskField mask = build_mask_1d(g);
    RhsVector f = penalized_rhs_1d(1, g, mask);
    for (int i = 0; i < 32; ++i) {
        if (mask[i] >= 1.0)
            CHECK(f[static_cast<size_t>(i)] == 0.0);
        else if (mask[i] == 0.0)
            CHECK(f[static_cast<size_t>(i)] == Approx(std::cos(g.x(i))).margin(1e-14));
    }
}

TEST_CASE("1D convergence study is second order") {
    auto rows = convergence_study_1d(1, 1e-8, {32, 64, 128, 256});
    REQUIRE(rows.size() == 4);
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i].error_linf > rows[i + 1].error_linf);
        const double rate = std::log2(rows[i].error_linf / rows[i + 1].error_linf);
        CHECK(rate == Approx(2.0).margin(0.25));
    }
    CHECK(rows[0].case_tag == "1d");
    CHECK(rows[0].h == Approx(two_pi / 32));
}

TEST_CASE("1D error saturates at the penalization level") {
    // eta = 1e-2: refining cannot push the fluid error below ~eta/(1+eta)
    auto rows = convergence_study_1d(1, 1e-2, {64, 128, 256});
    const double floor_level = 1e-2 / 1.01;
    CHECK(rows.back().error_linf > 0.3 * floor_level);
    CHECK(rows.back().error_linf < 3.0 * floor_level);
}

TEST_CASE("spectrum study finds both branches") {
    SpectrumReport rep = spectrum_study(512, 1e-8);
    CHECK(rep.zero_mode_magnitude < 1e-10);
    CHECK(rep.lower.slope == Approx(2.0).margin(0.15));
    CHECK(rep.lower.prefactor == Approx(1e-8).epsilon(0.5));
    CHECK(rep.upper_shifted.slope == Approx(2.0).margin(0.15));
    REQUIRE(rep.distances.size() == 3);
    CHECK(rep.distances[0].mode == 2);
    CHECK(rep.distances[2].mode == 4);
    for (const auto& d : rep.distances) CHECK(d.l2 < 0.2);
}

TEST_CASE("eigenfunction distances shrink under refinement") {
    SpectrumReport coarse = spectrum_study(64, 1e-6);
    SpectrumReport fine = spectrum_study(256, 1e-6);
    for (int k = 0; k < 3; ++k)
        CHECK(fine.distances[static_cast<size_t>(k)].l2 <
              coarse.distances[static_cast<size_t>(k)].l2);
}

TEST_CASE("2D square convergence approaches second order") {
    auto rows = convergence_study_2d(Case2D::Square, 1e-6, {16, 32, 64, 128}, "replace-first");
    const double slope = linf_slope(rows);
    CHECK(slope == Approx(-2.0).margin(0.35));
    CHECK(rows[0].case_tag == "square");
    CHECK(rows[0].strategy_tag == "replace-first");
}

TEST_CASE("2D disc with replace-first converges") {
    auto rows = convergence_study_2d(Case2D::Disc, 1e-6, {17, 33, 65}, "replace-first");
    for (size_t i = 0; i + 1 < rows.size(); ++i)
        CHECK(rows[i + 1].error_linf < rows[i].error_linf);
    CHECK(rows[0].case_tag == "disc");
    CHECK_THROWS_AS(run_2d(Case2D::Disc, 16, 1e-6, "bogus"), std::invalid_argument);
}

TEST_CASE("solve_2d returns the mask on request") {
    MaskField mask;
    RhsVector u = solve_2d(Case2D::Square, 16,
                           1e-4, ConstraintStrategy::replace_row(0, std::vector<double>(256, 1.0)),
                           &mask);
    CHECK(u.size() == 256);
    CHECK(mask.values.size() == 256);
}

TEST_CASE("deterministic output: identical runs agree bitwise") {
    ConvergenceRow a = run_1d(1, 1e-6, 64);
    ConvergenceRow b = run_1d(1, 1e-6, 64);
    CHECK(a.error_l2 == b.error_l2);
    CHECK(a.error_linf == b.error_linf);
}

TEST_CASE("convergence CSV round trip") {
    std::vector<ConvergenceRow> rows{{32, 0.196349540849362, 1e-6, 0.001234567890123456,
                                      0.0034567890123456789, "square", "least-squares"},
                                     {64, 0.098174770424681, 1e-6, 3.0e-4, 9.0e-4, "disc",
                                      "replace-half"}};
    std::stringstream ss;
    write_convergence_csv(ss, rows);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "n,h,eta,l2,linf,case,strategy");
    ss.seekg(0);
    auto back = read_convergence_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].n == 32);
    CHECK(back[0].error_l2 == rows[0].error_l2);   // 17 digits: exact round trip
    CHECK(back[0].error_linf == rows[0].error_linf);
    CHECK(back[1].case_tag == "disc");
    CHECK(back[1].strategy_tag == "replace-half");
}

TEST_CASE("spectrum and eigen-distance CSV formats") {
    SpectrumReport rep = spectrum_study(32, 1e-3);
    std::stringstream ss;
    write_spectrum_csv(ss, rep);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "index,lambda,branch");
    std::string first;
    std::getline(ss, first);
    CHECK(first.rfind("0,", 0) == 0);
    CHECK(first.find("zero") != std::string::npos);

    std::stringstream ss2;
    write_eigdist_csv(ss2, {rep});
    std::getline(ss2, header);
    CHECK(header == "n,h,mode,l2,linf");
    int lines = 0;
    std::string line;
    while (std::getline(ss2, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 3);
}
