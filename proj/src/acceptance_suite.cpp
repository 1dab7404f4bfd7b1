#include "gbc/acceptance.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "gbc/clifford.hpp"
#include "gbc/curvature.hpp"
#include "gbc/geometry.hpp"
#include "gbc/heat.hpp"
#include "gbc/mc.hpp"
#include "gbc/pfaffian.hpp"
#include "gbc/weitzenbock.hpp"

namespace gbc {

namespace {

using geom::Vec;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

cliff::CliffordElement random_element(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    cliff::CliffordElement a(d);
    for (std::uint32_t m = 0; m < (1u << d); ++m) a[m] = {u(rng), u(rng)};
    return a;
}

cliff::CurvatureArray random_curvature(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    cliff::CurvatureArray r(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int n = 0; n < d; ++n)
                for (int m = n + 1; m < d; ++m) {
                    const double v = u(rng);
                    r.at(i, j, n, m) = v;
                    r.at(j, i, n, m) = -v;
                    r.at(i, j, m, n) = -v;
                    r.at(j, i, m, n) = v;
                }
    return r;
}

// 16 sample nodes spread over a d=2 grid: the 4 x 4 lattice {5,21,37,53}^2
// scaled to the grid size.
std::vector<long> sample_lattice(const hodge::Grid& grid) {
    std::vector<long> nodes;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            nodes.push_back(grid.index({(5 + 16 * a) * grid.n / 64, (5 + 16 * b) * grid.n / 64}));
    return nodes;
}

bool a1_algebra(std::string& detail) {
    double worst = 0.0;
    for (int d : {2, 4, 6}) {
        auto gamma = cliff::chirality(d);
        worst = std::max(worst, (cliff::clifford_mul(gamma, gamma) -
                                 cliff::CliffordElement::scalar(d, 1.0))
                                    .norm());
        std::mt19937_64 rng(100 + d);
        for (int k = 0; k < 1000; ++k) {
            auto a = random_element(d, rng);
            worst = std::max(worst, std::abs(cliff::supertrace_gamma(a) -
                                             cliff::supertrace_berezin(a)));
        }
    }
    detail = "chirality square and supertrace routes, max error " + fmt(worst);
    return worst < 1e-10;
}

bool a2_pfaffian(std::string& detail) {
    double worst_sq = 0.0, worst_route = 0.0;
    for (int d : {2, 4, 6}) {
        std::mt19937_64 rng(200 + d);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int k = 0; k < 200; ++k) {
            cliff::SkewMatrix s(d);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) s.set(i, j, u(rng));
            const double pf = cliff::pfaffian(s);
            const double det = s.dense().determinant();
            worst_sq = std::max(worst_sq,
                                std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
            worst_route = std::max(worst_route, std::abs(pf - cliff::pfaffian_berezin(s)) /
                                                    std::max(1.0, std::abs(pf)));
        }
    }
    detail = "Pf^2 = det rel " + fmt(worst_sq) + ", route gap " + fmt(worst_route);
    return worst_sq < 1e-8 && worst_route < 1e-10;
}

bool a3_ladder(std::string& detail) {
    double worst_low = 0.0, worst_top = 0.0;
    for (int d : {2, 4}) {
        std::mt19937_64 rng(300 + d);
        for (int k = 0; k < 100; ++k) {
            auto rep = cliff::ladder_supertrace(random_curvature(d, rng));
            worst_low = std::max(worst_low, rep.max_lower_power_abs);
            worst_top = std::max(worst_top, rep.top_rel_error);
        }
    }
    detail = "lower powers " + fmt(worst_low) + ", top closure rel " + fmt(worst_top);
    return worst_low < 1e-10 && worst_top < 1e-8;
}

bool a4_weitzenbock(std::string& detail) {
    const auto rep2 = hodge::weitzenbock_check(geom::preset("conformal-torus"), {16, 32, 64});
    const auto rep4 = hodge::weitzenbock_check(geom::preset("torsion-4torus"), {8, 12, 16});
    detail = "residual orders d=2 " + fmt(rep2.slope) + ", d=4 " + fmt(rep4.slope);
    return rep2.slope >= 2.0 && rep4.slope >= 2.0;
}

bool a5_local_limit_lc(std::string& detail) {
    auto g = geom::preset("conformal-torus", 0.3);
    auto grid = hodge::Grid::make(g.chart, 64);
    auto op = hodge::assemble_dirac(g, grid, geom::ConnectionKind::Full, 1 << 20);
    const auto nodes = sample_lattice(grid);
    auto prof = hodge::supertrace_profile(op, g, {0.4, 0.2, 0.1, 0.05}, nodes);
    double worst_ratio = 0.0;
    bool ok = prof.max_imag < 1e-8;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double kg = g.analytic_gauss_curvature(grid.point(nodes[i]));
        const double ref = prof.reference[i];
        const double tol = std::abs(kg) > 0.05 ? 0.05 * std::abs(ref) : 0.01;
        const double err = std::abs(prof.extrapolated[i] - ref);
        worst_ratio = std::max(worst_ratio, err / tol);
        ok = ok && err < tol;
    }
    detail = "16 points, worst error / tolerance " + fmt(worst_ratio);
    return ok;
}

bool a6_local_limit_general(std::string& detail) {
    auto g = geom::preset("torsion-torus");
    auto grid = hodge::Grid::make(g.chart, 64);
    auto op = hodge::assemble_dirac(g, grid, geom::ConnectionKind::Full, 1 << 20);
    const auto nodes = sample_lattice(grid);
    auto prof = hodge::supertrace_profile(op, g, {0.2, 0.1, 0.05}, nodes);
    double worst_ratio = 0.0, min_contrast = 1e30;
    bool ok = prof.max_imag < 1e-8;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double ref = prof.reference[i];
        const double lc =
            geom::euler_form(g, grid.point(nodes[i]), geom::ConnectionKind::LeviCivita);
        const double tol = std::abs(ref) > 0.05 ? 0.05 * std::abs(ref) : 0.01;
        const double err = std::abs(prof.extrapolated[i] - ref);
        worst_ratio = std::max(worst_ratio, err / tol);
        ok = ok && err < tol;
        // where the contorsion moves the Euler form by at least 0.1 the
        // measured limit must sit far from the Levi-Civita value
        if (std::abs(ref - lc) >= 0.1) {
            const double contrast = std::abs(prof.extrapolated[i] - lc) / (10.0 * tol);
            min_contrast = std::min(min_contrast, contrast);
            ok = ok && contrast >= 1.0;
        }
    }
    detail = "worst error / tolerance " + fmt(worst_ratio) + ", min contrast margin " +
             fmt(min_contrast);
    return ok;
}

bool a7_mckean_singer(std::string& detail) {
    double worst = 0.0;
    const std::vector<double> ts = {0.05, 0.2, 1.0};  // spans a factor 20
    struct Case { const char* name; int n; };
    for (const auto& c : {Case{"flat-torus", 16}, Case{"conformal-torus", 16},
                          Case{"torsion-torus", 16}, Case{"conformal-4torus", 3},
                          Case{"torsion-4torus", 3}}) {
        auto g = geom::preset(c.name);
        auto grid = hodge::Grid::make(g.chart, c.n);
        auto op = hodge::assemble_dirac(g, grid);
        const auto vals = hodge::mckean_singer(op, ts);
        double lo = vals[0], hi = vals[0];
        for (double v : vals) {
            worst = std::max(worst, std::abs(v));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        worst = std::max(worst, hi - lo);
    }
    detail = "five torus presets, worst |Str| and variation " + fmt(worst);
    return worst < 1e-5;
}

bool a8_normal_coordinates(std::string& detail) {
    const auto sphere = geom::normal_coordinate_check(
        geom::preset("stereographic-sphere"), 0.2, 4, 8, geom::ConnectionKind::Full);
    const auto torsion = geom::normal_coordinate_check(
        geom::preset("torsion-torus"), 0.2, 4, 8, geom::ConnectionKind::Full);
    // in d=2 the contorsion has no 3-form part, so the 3B connection of the
    // torsion torus coincides with Levi-Civita and its residual vanishes
    // identically; the nontrivial 3B variant lives on the 4-torus preset
    const auto degen = geom::normal_coordinate_check(
        geom::preset("torsion-torus"), 0.2, 4, 8, geom::ConnectionKind::ThreeB);
    double degen_max = 0.0;
    for (double r : degen.residuals) degen_max = std::max(degen_max, r);
    const auto three_b = geom::normal_coordinate_check(
        geom::preset("torsion-4torus"), 0.2, 4, 8, geom::ConnectionKind::ThreeB);
    detail = "slopes sphere " + fmt(sphere.slope) + ", torsion full " +
             fmt(torsion.slope) + ", 3B d=4 " + fmt(three_b.slope) +
             ", degenerate d=2 3B residual " + fmt(degen_max);
    return sphere.slope >= 1.9 && torsion.slope >= 1.9 && three_b.slope >= 1.9 &&
           degen_max < 1e-12;
}

bool a9_flat_monte_carlo(std::string& detail) {
    sde::SdeSpec spec;
    spec.geometry = geom::preset("flat-torus");
    Vec x(2);
    x << 3.0, 3.0;
    bool ok = true;
    double worst_sig = 0.0;
    struct Pair { double t, bw; };
    for (const auto& p : {Pair{0.25, 0.05}, Pair{0.1, 0.03}}) {
        const auto est = sde::heat_diag_mc(spec, p.t, x, p.bw, 100000, 2);
        const double target = 1.0 / (2.0 * M_PI * p.t);
        const double sig = std::abs(est.value(0, 0).real() - target) / est.stderr_re(0, 0);
        worst_sig = std::max(worst_sig, sig);
        ok = ok && sig < 3.0 && est.excluded == 0;
    }

    // Levy area statistics at t = 1
    const auto ens = sde::simulate(spec, x, 1.0, 20000, 7);
    const auto areas = sde::levy_areas(ens);
    const double n = double(areas.size());
    double m_off = 0.0, m_diag = 0.0;
    for (const auto& l : areas) {
        m_off += l(0, 1);
        m_diag += l(0, 0);
    }
    m_off /= n;
    m_diag /= n;
    double v_off = 0.0, v_diag = 0.0, m4 = 0.0;
    for (const auto& l : areas) {
        v_off += std::pow(l(0, 1) - m_off, 2);
        v_diag += std::pow(l(0, 0) - m_diag, 2);
        m4 += std::pow(std::pow(l(0, 1) - m_off, 2), 2);
    }
    v_off /= n;
    v_diag /= n;
    m4 /= n;
    const double sig_mean = std::abs(m_off) / std::sqrt(v_off / n);
    const double sig_var = std::abs(v_off - 0.5) / std::sqrt((m4 - v_off * v_off) / n);
    const double sig_diag = std::abs(m_diag - 0.5) / std::sqrt(v_diag / n);
    worst_sig = std::max({worst_sig, sig_mean, sig_var, sig_diag});
    ok = ok && sig_mean < 3.0 && sig_var < 3.0 && sig_diag < 3.0;

    detail = "kernel diagonal and Levy statistics, worst deviation " + fmt(worst_sig) +
             " stderr";
    return ok;
}

bool a10_epsilon_orders(std::string& detail) {
    Vec x(2);
    x << 2.0, 1.0;
    const std::vector<double> eps = {0.4, 0.2, 0.1, 0.05};
    sde::SdeSpec spec;
    spec.geometry = geom::preset("conformal-torus");
    const auto conf = sde::epsilon_order_study(spec, x, eps, 10000, 9);
    spec.geometry = geom::preset("torsion-torus");
    const auto tor = sde::epsilon_order_study(spec, x, eps, 10000, 9);
    detail = "X residual slopes conformal " + fmt(conf.x_slope) + ", torsion " +
             fmt(tor.x_slope);
    return conf.x_slope >= 1.9 && tor.x_slope >= 1.9;
}

bool a11_mc_ladder(std::string& detail) {
    sde::SdeSpec spec;
    spec.geometry = geom::preset("conformal-torus");
    Vec x(2);
    x << 2.0, 1.0;
    const auto rep = sde::ladder_check_mc(spec, x, 0.1, 100000, 4);
    const double err = std::abs(rep.mean - rep.reference);
    detail = "Str(A_1)/eps^2 error " + fmt(err) + " vs stderr " + fmt(rep.stderr_);
    return err <= 3.0 * rep.stderr_ + 1e-10 && rep.max_imag < 1e-10;
}

bool a12_reproducibility(std::string& detail) {
    Vec x(2);
    x << 2.0, 1.0;
    sde::SdeSpec tor;
    tor.geometry = geom::preset("torsion-torus");
    sde::SdeSpec conf;
    conf.geometry = geom::preset("conformal-torus");
    bool ok = true;

    // simulation ensemble
    const auto e1 = sde::simulate(tor, x, 0.25, 200, 11);
    const auto e2 = sde::simulate(tor, x, 0.25, 200, 11);
    for (std::size_t i = 0; i < e1.paths.size(); ++i) {
        ok = ok && (e1.paths[i].x.array() == e2.paths[i].x.array()).all();
        ok = ok && (e1.paths[i].me.array() == e2.paths[i].me.array()).all();
    }

    // kernel estimator
    const auto k1 = sde::heat_diag_mc(conf, 0.25, x, 0.1, 2000, 3);
    const auto k2 = sde::heat_diag_mc(conf, 0.25, x, 0.1, 2000, 3);
    ok = ok && (k1.value.array() == k2.value.array()).all() &&
         k1.supertrace == k2.supertrace && k1.supertrace_stderr == k2.supertrace_stderr;

    // order study
    const auto s1 = sde::epsilon_order_study(conf, x, {0.2, 0.1}, 100, 9);
    const auto s2 = sde::epsilon_order_study(conf, x, {0.2, 0.1}, 100, 9);
    ok = ok && s1.x_residuals == s2.x_residuals && s1.e_residuals == s2.e_residuals;

    // MC ladder
    const auto l1 = sde::ladder_check_mc(conf, x, 0.1, 500, 4);
    const auto l2 = sde::ladder_check_mc(conf, x, 0.1, 500, 4);
    ok = ok && l1.mean == l2.mean && l1.stderr_ == l2.stderr_;

    // deterministic grid routes
    auto g = geom::preset("conformal-torus");
    auto grid = hodge::Grid::make(g.chart, 16);
    auto op = hodge::assemble_dirac(g, grid);
    const auto p1 = hodge::supertrace_profile(op, g, {0.4, 0.2}, {grid.index({5, 9})});
    const auto p2 = hodge::supertrace_profile(op, g, {0.4, 0.2}, {grid.index({5, 9})});
    ok = ok && p1.density == p2.density && p1.extrapolated == p2.extrapolated;
    ok = ok && geom::euler_characteristic(g) == geom::euler_characteristic(g);

    detail = "paired runs of every stochastic and grid route are bit-identical";
    return ok;
}

}  // namespace

int run_acceptance(std::ostream& out) {
    struct Criterion {
        const char* id;
        bool (*run)(std::string&);
    };
    const Criterion table[] = {
        {"A1", a1_algebra},        {"A2", a2_pfaffian},
        {"A3", a3_ladder},         {"A4", a4_weitzenbock},
        {"A5", a5_local_limit_lc}, {"A6", a6_local_limit_general},
        {"A7", a7_mckean_singer},  {"A8", a8_normal_coordinates},
        {"A9", a9_flat_monte_carlo}, {"A10", a10_epsilon_orders},
        {"A11", a11_mc_ladder},    {"A12", a12_reproducibility},
    };
    int failures = 0;
    for (const auto& c : table) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& err) {
            detail = std::string("exception: ") + err.what();
        }
        if (!ok) ++failures;
        out << c.id << ' ' << (ok ? "pass" : "FAIL") << "  " << detail << std::endl;
    }
    return failures;
}

}  // namespace gbc
