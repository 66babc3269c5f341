// Command-line front end: single solves, convergence studies, spectrum and
// eigenfunction studies, and evaluation of the analytic objects. All output
// is CSV.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vplap/experiments.hpp"

namespace {

std::vector<int> parse_n_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw CLI::ValidationError("--n", "empty n list");
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

vplap::ConstraintStrategy make_strategy(const std::string& name, std::vector<double> weights) {
    if (name == "replace-first") return vplap::ConstraintStrategy::replace_row(0, std::move(weights));
    if (name == "least-squares") return vplap::ConstraintStrategy::least_squares(std::move(weights));
    if (name.rfind("replace-index=", 0) == 0)
        return vplap::ConstraintStrategy::replace_row(std::stoi(name.substr(14)), std::move(weights));
    throw std::runtime_error("unknown strategy: " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume-penalized Neumann Laplace solver"};
    app.require_subcommand(1);

    int m = 1, n = 64;
    double eta = 1e-8, lambda_max = 5.0, tol = 1e-10;
    std::string n_list_str = "16,32,64,128,256,512";
    std::string case_name = "square";
    std::string strategy = "replace-first";
    std::string out_path = "out.csv";
    bool g_roots = false, v_coeffs = false;
    int fourier_kmax = 0;

    auto* solve1d = app.add_subcommand("solve1d", "single 1D solve, dumps u with exact v and w");
    solve1d->add_option("--m", m);
    solve1d->add_option("--eta", eta);
    solve1d->add_option("--n", n);
    solve1d->add_option("--out", out_path);

    auto* converge1d = app.add_subcommand("converge1d", "1D grid refinement study");
    converge1d->add_option("--m", m);
    converge1d->add_option("--eta", eta);
    converge1d->add_option("--n", n_list_str);
    converge1d->add_option("--out", out_path);

    auto* spectrum = app.add_subcommand("spectrum", "discrete spectrum of the penalized operator");
    spectrum->add_option("--eta", eta);
    spectrum->add_option("--n", n);
    spectrum->add_option("--out", out_path);

    auto* eigdist = app.add_subcommand("eigdist", "eigenfunction distances across resolutions");
    eigdist->add_option("--eta", eta);
    eigdist->add_option("--n", n_list_str);
    eigdist->add_option("--out", out_path);

    auto* solve2d = app.add_subcommand("solve2d", "single 2D solve");
    solve2d->add_option("--case", case_name)->check(CLI::IsMember({"square", "disc"}));
    solve2d->add_option("--eta", eta);
    solve2d->add_option("--n", n);
    solve2d->add_option("--strategy", strategy);
    solve2d->add_option("--out", out_path);

    auto* converge2d = app.add_subcommand("converge2d", "2D grid refinement study");
    converge2d->add_option("--case", case_name)->check(CLI::IsMember({"square", "disc"}));
    converge2d->add_option("--eta", eta);
    converge2d->add_option("--n", n_list_str);
    converge2d->add_option("--strategy", strategy);
    converge2d->add_option("--out", out_path);

    auto* exact = app.add_subcommand("exact", "evaluate analytic objects");
    exact->add_flag("--g-roots", g_roots, "roots of the characteristic function");
    exact->add_flag("--v-coeffs", v_coeffs, "coefficients of the exact penalized solution");
    exact->add_option("--fourier-kmax", fourier_kmax, "print vhat(k) for |k| <= kmax");
    exact->add_option("--m", m);
    exact->add_option("--eta", eta);
    exact->add_option("--lambda-max", lambda_max);
    exact->add_option("--tol", tol);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve1d) {
            const auto row = vplap::run_1d(m, eta, n);
            vplap::Grid1D grid(n);
            const auto mask = vplap::build_mask_1d(grid);
            const auto theta = vplap::diffusivity(mask, eta);
            const auto a = vplap::assemble_1d(theta, grid);
            const auto f = vplap::penalized_rhs_1d(m, grid, mask);
            const auto u = vplap::solve_constrained(
                a, f, vplap::ConstraintStrategy::replace_row(0, std::vector<double>(n, 1.0)));
            const auto v = vplap::penalized_coefficients(m, eta);
            auto os = open_out(out_path);
            os << "index,x,u,v,w\n";
            for (int i = 0; i < n; ++i)
                os << i << ',' << vplap::fmt17(grid.x(i)) << ',' << vplap::fmt17(u[i]) << ','
                   << vplap::fmt17(v(grid.x(i))) << ','
                   << vplap::fmt17(vplap::exact_solution_1d(m, grid.x(i))) << '\n';
            std::cout << "n=" << n << " fluid Linf error vs w: " << vplap::fmt17(row.error_linf)
                      << "\n";
        } else if (*converge1d) {
            const auto rows = vplap::convergence_study_1d(m, eta, parse_n_list(n_list_str));
            auto os = open_out(out_path);
            vplap::write_convergence_csv(os, rows);
            if (rows.size() >= 3)
                std::cout << "Linf slope: " << vplap::linf_slope(rows) << "\n";
        } else if (*spectrum) {
            const auto rep = vplap::spectrum_study(n, eta);
            auto os = open_out(out_path);
            vplap::write_spectrum_csv(os, rep);
            std::cout << "zero mode magnitude: " << vplap::fmt17(rep.zero_mode_magnitude)
                      << "\nlower branch: slope " << rep.lower.slope << " prefactor "
                      << vplap::fmt17(rep.lower.prefactor) << "\nupper branch (shifted): slope "
                      << rep.upper_shifted.slope << "\n";
        } else if (*eigdist) {
            std::vector<vplap::SpectrumReport> reps;
            for (int nn : parse_n_list(n_list_str)) reps.push_back(vplap::spectrum_study(nn, eta));
            auto os = open_out(out_path);
            vplap::write_eigdist_csv(os, reps);
        } else if (*solve2d) {
            const auto c = case_name == "square" ? vplap::Case2D::Square : vplap::Case2D::Disc;
            vplap::Grid2D grid(n, n);
            const auto mask =
                c == vplap::Case2D::Square ? vplap::build_mask_square(grid) : vplap::build_mask_disc(grid);
            const auto strat = make_strategy(strategy, vplap::fluid_mean_weights(mask));
            const auto u = vplap::solve_2d(c, n, eta, strat);
            auto os = open_out(out_path);
            os << "index,x,y,chi,u\n";
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const int k = grid.index(i, j);
                    os << k << ',' << vplap::fmt17(grid.x(i)) << ',' << vplap::fmt17(grid.y(j))
                       << ',' << mask[k] << ',' << vplap::fmt17(u[k]) << '\n';
                }
        } else if (*converge2d) {
            const auto c = case_name == "square" ? vplap::Case2D::Square : vplap::Case2D::Disc;
            std::string strat = strategy;
            if (strat.rfind("replace-index=", 0) == 0)
                throw std::runtime_error("converge2d needs a named strategy: replace-first, "
                                         "replace-half, replace-half-mid or least-squares");
            const auto rows = vplap::convergence_study_2d(c, eta, parse_n_list(n_list_str), strat);
            auto os = open_out(out_path);
            vplap::write_convergence_csv(os, rows);
            if (rows.size() >= 3)
                std::cout << "Linf slope: " << vplap::linf_slope(rows) << "\n";
        } else if (*exact) {
            if (v_coeffs) {
                const auto v = vplap::penalized_coefficients(m, eta);
                std::cout << "A1=" << vplap::fmt17(v.a1) << " A2=" << vplap::fmt17(v.a2)
                          << " B1=" << vplap::fmt17(v.b1) << " B2=" << vplap::fmt17(v.b2) << "\n";
            }
            if (fourier_kmax > 0) {
                for (int k = -fourier_kmax; k <= fourier_kmax; ++k) {
                    const auto c = vplap::fourier_coefficient(k, m, eta);
                    std::cout << k << ',' << vplap::fmt17(c.real()) << ',' << vplap::fmt17(c.imag())
                              << "\n";
                }
            }
            if (g_roots) {
                const auto roots = vplap::exact_eigenvalues(eta, lambda_max, tol);
                for (double r : roots) std::cout << vplap::fmt17(r) << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
