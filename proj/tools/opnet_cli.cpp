// Command-line driver: problem runners, parameter sweeps, slope fitting,
// CSV emission, and the acceptance suite.
//
// Exit codes: 0 success, 2 usage error, 3 validation error, 4 numerical
// failure.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "opnet/acceptance.hpp"
#include "opnet/advdiff.hpp"
#include "opnet/blessed.hpp"
#include "opnet/burgers1d.hpp"
#include "opnet/burgers2d.hpp"
#include "opnet/burgers_forced.hpp"
#include "opnet/deeponet.hpp"
#include "opnet/fd2d.hpp"
#include "opnet/fixtures.hpp"
#include "opnet/fourier.hpp"
#include "opnet/gadgets.hpp"
#include "opnet/quadrature.hpp"
#include "opnet/sweep.hpp"

namespace {

using namespace opnet;

struct GlobalOpts {
    std::uint64_t seed = 742025;
    std::string out;
    int threads = 1;
};

void emit_report(const harness::ConvergenceReport& report, const GlobalOpts& g, bool gnuplot) {
    if (report.fit) {
        std::cout << "fitted slope " << harness::format_double(report.fit->slope) << " (R2 "
                  << harness::format_double(report.fit->r_squared) << ")\n";
    }
    for (const auto& row : report.rows) {
        std::cout << "  " << report.axis_name << "=" << harness::format_double(row.axis_value)
                  << " error_linf=" << harness::format_double(row.error_linf)
                  << " error_l2=" << harness::format_double(row.error_l2) << " ("
                  << harness::format_double(row.runtime_ms) << " ms)\n";
    }
    if (!g.out.empty()) {
        harness::write_atomic(g.out, harness::report_to_csv(report));
        std::cout << "wrote " << g.out << "\n";
        if (gnuplot) {
            harness::write_atomic(g.out + ".gp", harness::gnuplot_script(g.out, report.axis_name));
            std::cout << "wrote " << g.out << ".gp\n";
        }
    }
}

harness::SweepRow burgers1d_cell(double kappa, std::size_t m, double x, double t) {
    Grid1D grid = Grid1D::uniform(-kPi, kPi, m, true);
    PiecewiseFunction u0 =
        sample_input([](double s) { return std::sin(s); }, grid, InterpOrder::Linear);
    auto problem = burgers1d::Problem::create(kappa, std::move(u0), 1.0, 1.0);
    burgers1d::SpectralColeHopf oracle(problem, 512);
    harness::SweepRow row;
    row.error_linf = std::abs(oracle(x, t) - burgers1d::rational_value(problem, x, t));
    row.error_l2 = row.error_linf;
    row.aux1 = oracle(x, t);
    return row;
}

harness::SweepRow advdiff_cell(std::size_t m, std::size_t family) {
    auto problem = fixtures::advdiff_problem(family, m);
    const auto lattice = linf_lattice(problem.grid(), 10);
    double worst = 0.0;
    for (double x : lattice) {
        worst = std::max(worst, std::abs(advdiff::exact_solution(problem, x) -
                                         advdiff::discrete_operator(problem, x)));
    }
    harness::SweepRow row;
    row.error_linf = worst;
    row.error_l2 = worst;
    return row;
}

harness::SweepRow fd_cell(double h) {
    const auto n = static_cast<std::size_t>(std::llround(1.0 / h)) - 1;
    auto zero = [](double, double) { return 0.0; };
    auto exact = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    auto f = [&](double x, double y) { return 2.0 * kPi * kPi * exact(x, y); };
    auto sys = fd2d::assemble(n, zero, zero, zero, f);
    auto u = fd2d::dense_solve(sys);
    double worst = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) {
        const auto [x, y] = fd2d::node_coords(sys, p);
        worst = std::max(worst, std::abs(u[p] - exact(x, y)));
    }
    harness::SweepRow row;
    row.error_linf = worst;
    row.error_l2 = worst;
    return row;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"constructive PDE solution operators, ReLU assemblies, and rate harness"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags (--seed, --out, ...) after the subcommand
    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--out", g.out, "output path (CSV or directory)");
    app.add_option("--threads", g.threads, "worker threads");
    app.set_config("--config")->description("flat key = value config file, # comments");

    // ---- burgers1d ----
    auto* b1 = app.add_subcommand("burgers1d", "periodic Burgers: rational vs exact operators");
    double b1_kappa = 0.5, b1_t = 0.25, b1_x = 0.5;
    std::size_t b1_m = 64;
    b1->add_option("--kappa", b1_kappa);
    b1->add_option("--m", b1_m);
    b1->add_option("--t", b1_t);
    b1->add_option("--x", b1_x);
    b1->callback([&] {
        Grid1D grid = Grid1D::uniform(-kPi, kPi, b1_m, true);
        PiecewiseFunction u0 =
            sample_input([](double s) { return std::sin(s); }, grid, InterpOrder::Linear);
        auto problem = burgers1d::Problem::create(b1_kappa, std::move(u0), 1.0, 1.0);
        const double rational = burgers1d::rational_value(problem, b1_x, b1_t);
        const double exact = burgers1d::cole_hopf_exact(problem, b1_x, b1_t, 2);
        burgers1d::SpectralColeHopf oracle(problem, 512);
        const double spectral = oracle(b1_x, b1_t);
        std::cout << "u_rational(" << b1_x << ", " << b1_t << ") = "
                  << harness::format_double(rational) << "\n";
        std::cout << "u_exact            = " << harness::format_double(exact) << "\n";
        std::cout << "u_spectral_oracle  = " << harness::format_double(spectral) << "\n";
        std::cout << "|rational - spectral| = " << harness::format_double(std::abs(rational - spectral))
                  << "\n";
    });

    // ---- burgers2d ----
    auto* b2 = app.add_subcommand("burgers2d", "2D periodic Burgers operators");
    double b2_kappa = 0.5, b2_t = 0.1, b2_x = 0.4, b2_y = -0.3;
    std::size_t b2_side = 16;
    b2->add_option("--kappa", b2_kappa);
    b2->add_option("--m", b2_side)->description("operator lattice side (m = side^2)");
    b2->add_option("--t", b2_t);
    b2->add_option("--x", b2_x);
    b2->add_option("--y", b2_y);
    b2->callback([&] {
        auto problem = fixtures::burgers2d_fixture(b2_kappa);
        auto exact = burgers2d::exact_uv(problem, b2_x, b2_y, b2_t, 2);
        auto rational = burgers2d::rational_uv(problem, b2_side, b2_x, b2_y, b2_t);
        std::cout << "exact    u=" << harness::format_double(exact.u)
                  << " v=" << harness::format_double(exact.v) << "\n";
        std::cout << "rational u=" << harness::format_double(rational.u)
                  << " v=" << harness::format_double(rational.v) << "\n";
        std::cout << "combined gap = "
                  << harness::format_double(std::abs(exact.u - rational.u) +
                                            std::abs(exact.v - rational.v))
                  << "\n";
    });

    // ---- burgers-forced ----
    auto* bf = app.add_subcommand("burgers-forced", "forced Burgers via Feynman-Kac Monte Carlo");
    double bf_kappa = 0.5, bf_t = 0.25, bf_x = 0.3, bf_step = 0.0125, bf_famp = 0.0;
    std::size_t bf_m = 512, bf_paths = 10000;
    bf->add_option("--kappa", bf_kappa);
    bf->add_option("--m", bf_m);
    bf->add_option("--paths", bf_paths);
    bf->add_option("--step", bf_step);
    bf->add_option("--x", bf_x);
    bf->add_option("--t", bf_t);
    bf->add_option("--f-amplitude", bf_famp)->description("forcing 0.5*a*sin(x) per slab");
    bf->callback([&] {
        auto problem = fixtures::burgers_problem(0, bf_kappa, bf_m);
        burgers_forced::Config config = [&] {
            if (bf_famp == 0.0) {
                return burgers_forced::Config::unforced(problem, bf_paths, bf_step, g.seed);
            }
            Grid1D fx = Grid1D::uniform(-kPi, kPi, 64, true);
            std::vector<double> slab(fx.node_count());
            for (std::size_t i = 0; i < slab.size(); ++i) {
                slab[i] = 0.5 * bf_famp * std::sin(fx.node(i));
            }
            slab.back() = slab.front();
            // remove the sampling-roundoff mean so large amplitudes stay valid
            double mean = 0.0;
            for (std::size_t c = 0; c < fx.cell_count(); ++c) {
                mean += 0.5 * (slab[c] + slab[c + 1]) * fx.cell_width(c);
            }
            mean /= fx.period();
            for (double& v : slab) v -= mean;
            return burgers_forced::Config::forced(problem, fx, {0.0, bf_t}, {slab}, bf_paths,
                                                  bf_step, g.seed);
        }();
        auto mc = burgers_forced::forced_burgers_mc(config, bf_x, bf_t, g.threads);
        std::cout << "estimate " << harness::format_double(mc.value) << " +- "
                  << harness::format_double(mc.std_error) << " (" << mc.paths << " paths, h_t "
                  << harness::format_double(mc.step_used) << ")\n";
        if (bf_famp == 0.0) {
            const double exact = burgers1d::cole_hopf_exact(problem, bf_x, bf_t, 2);
            std::cout << "cole-hopf exact " << harness::format_double(exact) << " (|diff| "
                      << harness::format_double(std::abs(exact - mc.value)) << ")\n";
        }
    });

    // ---- advdiff1d ----
    auto* ad = app.add_subcommand("advdiff1d", "1D steady advection-diffusion operators");
    double ad_a = 0.0, ad_f = 1.0, ad_len = 1.0, ad_x = 0.5;
    std::size_t ad_m = 64;
    int ad_family = -1;
    ad->add_option("--a-const", ad_a);
    ad->add_option("--f-const", ad_f);
    ad->add_option("--L", ad_len);
    ad->add_option("--m", ad_m);
    ad->add_option("--x", ad_x);
    ad->add_option("--family", ad_family)->description("use fixture family member instead");
    ad->callback([&] {
        advdiff::Problem problem = [&] {
            if (ad_family >= 0) {
                return fixtures::advdiff_problem(static_cast<std::size_t>(ad_family), ad_m);
            }
            Grid1D grid = Grid1D::uniform(0.0, ad_len, ad_m);
            const double fc = ad_f;
            return advdiff::Problem::create(grid, std::vector<double>(ad_m, ad_a),
                                            [fc](double) { return fc; },
                                            std::max(1.0, std::abs(ad_a)));
        }();
        const double exact = advdiff::exact_solution(problem, ad_x);
        const double discrete = advdiff::discrete_operator(problem, ad_x);
        std::cout << "u_exact(" << ad_x << ") = " << harness::format_double(exact) << "\n";
        std::cout << "u_discrete       = " << harness::format_double(discrete) << "\n";
        std::cout << "|gap| = " << harness::format_double(std::abs(exact - discrete)) << "\n";
        const auto stats = advdiff::rational_form_stats(problem, problem.grid().cell_count() / 2);
        std::cout << "rational form: degree " << stats.numerator_degree << ", variables "
                  << stats.variable_count << ", numerator terms " << stats.numerator_terms
                  << ", denominator terms " << stats.denominator_terms << "\n";
    });

    // ---- reacdiff2d ----
    auto* rd = app.add_subcommand("reacdiff2d", "2D reaction-diffusion cascade vs dense solve");
    std::size_t rd_n = 10;
    double rd_a3 = 1.0;
    std::string rd_oracle = "dense";
    std::string rd_dump;
    rd->add_option("--grid", rd_n);
    rd->add_option("--a3-const", rd_a3);
    rd->add_option("--oracle", rd_oracle)->check(CLI::IsMember({"dense"}));
    rd->add_option("--dump-matrix", rd_dump)->description("write S and T_m triplets to <path>.{s,t}");
    rd->callback([&] {
        auto zero = [](double, double) { return 0.0; };
        auto sys = fd2d::assemble(
            rd_n, zero, zero, [&](double, double) { return rd_a3; },
            [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); });
        auto cascade = fd2d::cascade_solve(sys);
        auto direct = fd2d::dense_solve(sys);
        double gap = 0.0;
        for (std::size_t i = 0; i < direct.size(); ++i) {
            gap = std::max(gap, std::abs(direct[i] - cascade.solution[i]));
        }
        double worst_den = 0.0;
        for (double d : cascade.condition_log) worst_den = std::max(worst_den, std::abs(d - 1.0));
        std::cout << "cascade-vs-dense gap = " << harness::format_double(gap) << "\n";
        std::cout << "max |denominator - 1| = " << harness::format_double(worst_den) << "\n";
        if (!rd_dump.empty()) {
            std::ostringstream s_out, t_out;
            fd2d::dump_matrix_triplets(sys.S, sys.unknowns(), s_out);
            fd2d::dump_matrix_triplets(cascade.t_final, sys.unknowns(), t_out);
            harness::write_atomic(rd_dump + ".s", s_out.str());
            harness::write_atomic(rd_dump + ".t", t_out.str());
            std::cout << "wrote " << rd_dump << ".s and " << rd_dump << ".t\n";
        }
    });

    // ---- advdiff2d ----
    auto* a2d = app.add_subcommand("advdiff2d", "2D advection-diffusion cascade vs dense solve");
    std::size_t a2d_n = 10;
    double a2d_a1 = 1.0, a2d_a2 = 0.0;
    a2d->add_option("--grid", a2d_n);
    a2d->add_option("--a1-const", a2d_a1);
    a2d->add_option("--a2-const", a2d_a2);
    a2d->callback([&] {
        auto zero = [](double, double) { return 0.0; };
        auto sys = fd2d::assemble(
            a2d_n, [&](double, double) { return a2d_a1; }, [&](double, double) { return a2d_a2; },
            zero, [](double x, double y) { return x + y; });
        auto cascade = fd2d::cascade_solve(sys);
        auto direct = fd2d::dense_solve(sys);
        double gap = 0.0;
        for (std::size_t i = 0; i < direct.size(); ++i) {
            gap = std::max(gap, std::abs(direct[i] - cascade.solution[i]));
        }
        std::cout << "cascade-vs-dense gap = " << harness::format_double(gap) << "\n";
    });

    // ---- bochner-riesz ----
    auto* br = app.add_subcommand("bochner-riesz", "Bochner-Riesz means of |sin x|");
    double br_r = 16.0, br_gamma = 1.0;
    br->add_option("--R", br_r);
    br->add_option("--gamma", br_gamma);
    br->callback([&] {
        auto f = [](double x) { return std::abs(std::sin(x)); };
        auto mean = bochner_riesz(f, br_r, br_gamma);
        const double err =
            l2_error(f, [&](double x) { return mean.evaluate(x); }, -kPi, kPi, 512, 8);
        const double omega = modulus_omega2(f, 1.0 / br_r, LqNorm::L2, 4096);
        std::cout << "L2 error = " << harness::format_double(err) << "\n";
        std::cout << "omega2(f, 1/R)_2 estimate = " << harness::format_double(omega) << "\n";
    });

    // ---- relu-audit ----
    auto* ra = app.add_subcommand("relu-audit", "gadget error and capacity audit");
    ra->callback([&] {
        std::cout << "square gadget (bound 2^-2k-2):\n";
        for (int k : {2, 4, 6, 8}) {
            auto net = relu::square_gadget(k);
            double worst = 0.0;
            for (int i = 0; i <= (1 << 14); ++i) {
                const double x = static_cast<double>(i) / (1 << 14);
                worst = std::max(worst, std::abs(x * x - net.evaluate_scalar(x)));
            }
            std::cout << "  k=" << k << " err=" << harness::format_double(worst)
                      << " bound=" << harness::format_double(relu::square_gadget_error_bound(k))
                      << " size=" << net.size() << " depth=" << net.depth() << "\n";
        }
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            auto compiled = relu::compile_rational_R(eps, 0.05, 1.0);
            std::cout << "rational net eps=" << harness::format_double(eps)
                      << ": size=" << compiled.net.size() << " width=" << compiled.net.width()
                      << " depth=" << compiled.net.depth() << " k=" << compiled.product_k << "\n";
        }
    });

    // ---- sweep ----
    auto* sw = app.add_subcommand("sweep", "run a parameter sweep and fit the log-log slope");
    std::string sw_problem = "burgers1d";
    std::string sw_axis;
    std::vector<double> sw_values;
    double sw_kappa = 0.5, sw_t = 0.25, sw_x = 0.5, sw_step = 0.0125;
    std::size_t sw_family = 0;
    bool sw_gnuplot = false;
    sw->add_option("--problem", sw_problem)
        ->check(CLI::IsMember({"burgers1d", "advdiff1d", "reacdiff2d", "burgers-forced", "synthetic"}));
    sw->add_option("--axis", sw_axis)->description("axis name for the CSV (defaults per problem)");
    sw->add_option("--values", sw_values)->required()->expected(-1);
    sw->add_option("--kappa", sw_kappa);
    sw->add_option("--t", sw_t);
    sw->add_option("--x", sw_x);
    sw->add_option("--step", sw_step);
    sw->add_option("--family", sw_family);
    sw->add_flag("--gnuplot", sw_gnuplot);
    sw->callback([&] {
        harness::ConvergenceReport report;
        if (sw_problem == "burgers1d") {
            report = harness::run_sweep(sw_axis.empty() ? "m" : sw_axis, sw_values, [&](double m) {
                return burgers1d_cell(sw_kappa, static_cast<std::size_t>(m), sw_x, sw_t);
            });
        } else if (sw_problem == "advdiff1d") {
            report = harness::run_sweep(sw_axis.empty() ? "m" : sw_axis, sw_values, [&](double m) {
                return advdiff_cell(static_cast<std::size_t>(m), sw_family);
            });
        } else if (sw_problem == "reacdiff2d") {
            report = harness::run_sweep(sw_axis.empty() ? "h" : sw_axis, sw_values, fd_cell);
        } else if (sw_problem == "burgers-forced") {
            auto problem = fixtures::burgers_problem(0, sw_kappa, 512);
            const double reference = burgers1d::cole_hopf_exact(problem, sw_x, sw_t, 2);
            report = harness::run_sweep(sw_axis.empty() ? "N_paths" : sw_axis, sw_values,
                                        [&](double n) {
                                            auto config = burgers_forced::Config::unforced(
                                                problem, static_cast<std::size_t>(n), sw_step,
                                                g.seed);
                                            auto mc = burgers_forced::forced_burgers_mc(
                                                config, sw_x, sw_t, g.threads);
                                            harness::SweepRow row;
                                            row.error_linf = mc.std_error;
                                            row.error_l2 = std::abs(mc.value - reference);
                                            row.aux1 = mc.value;
                                            return row;
                                        });
        } else {  // synthetic: exact powers for harness self-checks
            report = harness::run_sweep(sw_axis.empty() ? "x" : sw_axis, sw_values, [&](double v) {
                harness::SweepRow row;
                row.error_linf = v;
                row.error_l2 = v;
                return row;
            });
        }
        emit_report(report, g, sw_gnuplot);
    });

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "least-squares slope of (ln x, ln y) pairs");
    std::vector<double> fit_pairs;
    fit->add_option("--pairs", fit_pairs)->required()->expected(-1)
        ->description("x1 y1 x2 y2 ...");
    fit->callback([&] {
        if (fit_pairs.size() % 2 != 0) throw InputError("fit: need an even number of values");
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < fit_pairs.size(); i += 2) {
            pairs.emplace_back(fit_pairs[i], fit_pairs[i + 1]);
        }
        auto res = harness::fit_slope(pairs);
        std::cout << "slope " << harness::format_double(res.slope) << " R2 "
                  << harness::format_double(res.r_squared) << "\n";
    });

    // ---- acceptance ----
    auto* acc = app.add_subcommand("acceptance", "run every acceptance criterion");
    acc->callback([&] {
        acceptance::Options options;
        options.seed = g.seed;
        options.threads = g.threads;
        options.out_dir = g.out;
        const int failures = acceptance::run_and_report(options, std::cout);
        if (failures > 0) throw NumericalError(std::to_string(failures) + " criteria failed");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // 2 = usage error; 0 covers --help
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const opnet::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const opnet::InputError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const opnet::ParameterError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const opnet::DomainError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error&) {
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
