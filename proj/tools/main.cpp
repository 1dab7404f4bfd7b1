// Command line front end: geometry loading, verification suites and CSV
// reports over the library routes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gbc/acceptance.hpp"
#include "gbc/clifford.hpp"
#include "gbc/curvature.hpp"
#include "gbc/expression.hpp"
#include "gbc/geometry.hpp"
#include "gbc/geometry_file.hpp"
#include "gbc/heat.hpp"
#include "gbc/mc.hpp"
#include "gbc/pfaffian.hpp"
#include "gbc/reports.hpp"
#include "gbc/weitzenbock.hpp"

namespace {

using gbc::geom::Vec;
using gbc::report::KeyValues;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitTolerance = 4;

long max_unknowns() {
    if (const char* s = std::getenv("GBC_MAX_UNKNOWNS")) {
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (!end || *end != '\0' || v <= 0)
            throw std::runtime_error("GBC_MAX_UNKNOWNS must be a positive integer");
        return v;
    }
    return 32768;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::runtime_error(what + ": '" + tok + "' is not a number");
        }
    }
    if (out.empty()) throw std::runtime_error(what + ": empty list");
    return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
    std::vector<int> out;
    for (double v : parse_doubles(text, what)) out.push_back(int(v));
    return out;
}

// Options shared by the geometry-driven subcommands.
struct GeometryOpt {
    std::string preset, spec_file;
    double amplitude = 0.3;

    void attach(CLI::App* cmd) {
        auto* p = cmd->add_option("--preset", preset, "preset geometry name");
        auto* s = cmd->add_option("--spec", spec_file, "geometry spec file");
        cmd->add_option("--amplitude", amplitude, "preset conformal amplitude")
            ->capture_default_str();
        p->excludes(s);
    }

    gbc::geom::GeometrySpec load(const std::string& fallback = "conformal-torus") const {
        const std::string source =
            !spec_file.empty() ? spec_file : (!preset.empty() ? preset : fallback);
        return gbc::cli::load_geometry(source, amplitude);
    }

    std::string source_label() const {
        return !spec_file.empty() ? spec_file : (!preset.empty() ? preset : "conformal-torus");
    }
};

struct OutputOpt {
    std::string path;
    std::ofstream file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--output,-o", path, "write the report to a file instead of stdout");
    }

    std::ostream& stream() {
        if (path.empty()) return std::cout;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        return file;
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

Vec box_center(const gbc::geom::GeometrySpec& g) {
    Vec x = Vec::Zero(g.dim());
    if (g.chart.kind == gbc::geom::ChartDomain::Kind::PeriodicBox)
        for (int i = 0; i < g.dim(); ++i) x[i] = 0.5 * g.chart.lengths[i];
    return x;
}

Vec parse_point(const std::string& text, int d) {
    const auto v = parse_doubles(text, "--x");
    if (int(v.size()) != d)
        throw std::runtime_error("--x: expected " + std::to_string(d) + " coordinates");
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = v[i];
    return x;
}

// default d=2 sample lattice: 4 x 4 nodes spread over the grid
std::vector<long> default_nodes(const gbc::hodge::Grid& grid) {
    std::vector<long> nodes;
    if (grid.dim() == 2) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                nodes.push_back(
                    grid.index({(5 + 16 * a) * grid.n / 64, (5 + 16 * b) * grid.n / 64}));
    } else {
        nodes.push_back(0);
        nodes.push_back(grid.nodes() / 2);
    }
    return nodes;
}

std::vector<long> parse_nodes(const std::string& text, const gbc::hodge::Grid& grid) {
    if (text.empty()) return default_nodes(grid);
    std::vector<long> nodes;
    std::stringstream ss(text);
    std::string group;
    while (std::getline(ss, group, ';')) {
        const auto iv = parse_ints(group, "--nodes");
        if (int(iv.size()) != grid.dim())
            throw std::runtime_error("--nodes: each entry needs " +
                                     std::to_string(grid.dim()) + " indices");
        nodes.push_back(grid.index(iv));
    }
    return nodes;
}

gbc::geom::ConnectionKind parse_kind(const std::string& kind) {
    if (kind == "full") return gbc::geom::ConnectionKind::Full;
    if (kind == "lc") return gbc::geom::ConnectionKind::LeviCivita;
    if (kind == "3b") return gbc::geom::ConnectionKind::ThreeB;
    throw std::runtime_error("--kind: expected full, lc or 3b");
}

// ---------------------------------------------------------------- suites

int cmd_verify_algebra(std::ostream& out, const std::vector<int>& dims,
                       unsigned long long seed) {
    using namespace gbc::cliff;
    gbc::report::config_header(out, {{"command", "verify-algebra"}, {"seed", std::to_string(seed)}});
    out << "invariant,dim,residual,threshold,status\n";
    int failures = 0;
    auto row = [&](const std::string& name, int d, double res, double thr) {
        const bool ok = res < thr;
        if (!ok) ++failures;
        out << name << ',' << d << ',' << num(res) << ',' << num(thr) << ','
            << (ok ? "pass" : "fail") << '\n';
    };
    for (int d : dims) {
        if (d != 2 && d != 4 && d != 6) throw std::runtime_error("--d: expected 2, 4 or 6");
        std::mt19937_64 rng(seed + d);
        std::uniform_real_distribution<double> u(-1.0, 1.0);

        auto gamma = chirality(d);
        row("chirality_square", d,
            (clifford_mul(gamma, gamma) - CliffordElement::scalar(d, 1.0)).norm(), 1e-10);

        double str_gap = 0.0, pf_sq = 0.0, pf_route = 0.0;
        for (int k = 0; k < 1000; ++k) {
            CliffordElement a(d);
            for (std::uint32_t m = 0; m < (1u << d); ++m) a[m] = {u(rng), u(rng)};
            str_gap = std::max(str_gap, std::abs(supertrace_gamma(a) - supertrace_berezin(a)));
        }
        row("supertrace_routes", d, str_gap, 1e-10);

        for (int k = 0; k < 200; ++k) {
            SkewMatrix s(d);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) s.set(i, j, u(rng));
            const double pf = pfaffian(s);
            const double det = s.dense().determinant();
            pf_sq = std::max(pf_sq, std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
            pf_route = std::max(pf_route,
                                std::abs(pf - pfaffian_berezin(s)) / std::max(1.0, std::abs(pf)));
        }
        row("pfaffian_square", d, pf_sq, 1e-8);
        row("pfaffian_routes", d, pf_route, 1e-10);

        if (d <= 4) {
            double low = 0.0, top = 0.0;
            for (int k = 0; k < 100; ++k) {
                CurvatureArray r(d);
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
                auto rep = ladder_supertrace(r);
                low = std::max(low, rep.max_lower_power_abs);
                top = std::max(top, rep.top_rel_error);
            }
            row("ladder_lower_powers", d, low, 1e-10);
            row("ladder_top_closure", d, top, 1e-8);
        }
    }
    return failures ? kExitTolerance : 0;
}

int cmd_curvature(std::ostream& out, const GeometryOpt& geo, int points) {
    auto g = geo.load();
    if (g.chart.kind != gbc::geom::ChartDomain::Kind::PeriodicBox)
        throw std::runtime_error("curvature tables need a periodic-box chart");
    gbc::report::config_header(out, {{"command", "curvature"},
                                     {"geometry", geo.source_label()},
                                     {"points", std::to_string(points)}});
    const int d = g.dim();
    for (int i = 0; i < d; ++i) out << 'x' << i + 1 << ',';
    out << "scalar_lc,euler_density_full,euler_density_lc,torsion_norm,compat_residual\n";
    out.precision(12);
    std::vector<int> iv(d, 0);
    const long total = std::lround(std::pow(points, d));
    for (long k = 0; k < total; ++k) {
        Vec x(d);
        long rem = k;
        for (int i = 0; i < d; ++i) {
            iv[i] = int(rem % points);
            rem /= points;
            x[i] = g.chart.lengths[i] * iv[i] / points;
        }
        const auto full = gbc::geom::curvature(g, x, gbc::geom::ConnectionKind::Full);
        double tnorm = 0.0;
        for (const auto& t : full.torsion) tnorm = std::max(tnorm, t.cwiseAbs().maxCoeff());
        for (int i = 0; i < d; ++i) out << x[i] << ',';
        out << full.scalar << ','
            << gbc::geom::euler_form(g, x, gbc::geom::ConnectionKind::Full) << ','
            << gbc::geom::euler_form(g, x, gbc::geom::ConnectionKind::LeviCivita) << ','
            << tnorm << ',' << gbc::geom::metric_compatibility_residual(g, x) << '\n';
    }
    return 0;
}

int cmd_euler(std::ostream& out, const GeometryOpt& geo, int points,
              const std::string& kind_text) {
    auto g = geo.load();
    const auto kind = parse_kind(kind_text);
    if (g.chart.kind != gbc::geom::ChartDomain::Kind::PeriodicBox)
        throw std::runtime_error("the Euler characteristic quadrature needs a periodic-box chart");
    const double chi = gbc::geom::euler_characteristic(g, points, kind);
    gbc::report::config_header(out, {{"command", "euler"},
                                     {"geometry", geo.source_label()},
                                     {"kind", kind_text},
                                     {"points", std::to_string(points)},
                                     {"euler_characteristic", num(chi)}});
    const int d = g.dim();
    for (int i = 0; i < d; ++i) out << 'x' << i + 1 << ',';
    out << "euler_density\n";
    out.precision(12);
    std::vector<int> iv(d, 0);
    const long total = std::lround(std::pow(points, d));
    for (long k = 0; k < total; ++k) {
        Vec x(d);
        long rem = k;
        for (int i = 0; i < d; ++i) {
            iv[i] = int(rem % points);
            rem /= points;
            x[i] = g.chart.lengths[i] * iv[i] / points;
        }
        for (int i = 0; i < d; ++i) out << x[i] << ',';
        out << gbc::geom::euler_form(g, x, kind) << '\n';
    }
    return 0;
}

int cmd_heat(std::ostream& out, const GeometryOpt& geo, int n_grid,
             const std::string& t_text, const std::string& node_text,
             const std::string& kind_text, bool with_ms, bool check) {
    auto g = geo.load();
    auto ts = parse_doubles(t_text, "--t");
    const auto kind = parse_kind(kind_text);
    auto grid = gbc::hodge::Grid::make(g.chart, n_grid);
    auto op = gbc::hodge::assemble_dirac(g, grid, kind, max_unknowns());
    const auto nodes = parse_nodes(node_text, grid);
    auto prof = gbc::hodge::supertrace_profile(op, g, ts, nodes, kind);

    KeyValues cfg = {{"command", "heat"},
                     {"geometry", geo.source_label()},
                     {"kind", kind_text},
                     {"N", std::to_string(n_grid)},
                     {"t", t_text},
                     {"nodes", std::to_string(nodes.size())},
                     {"max_imag", num(prof.max_imag)}};
    if (with_ms) {
        const auto ms = gbc::hodge::mckean_singer(op, ts);
        for (std::size_t i = 0; i < ts.size(); ++i)
            cfg.push_back({"mckean_singer_t_" + num(ts[i]), num(ms[i])});
    }
    gbc::report::config_header(out, cfg);
    gbc::report::heat_profile_csv(out, prof, grid);

    if (check) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double ref = prof.reference[i];
            const double tol = std::abs(ref) > 0.05 ? 0.05 * std::abs(ref) : 0.01;
            if (std::abs(prof.extrapolated[i] - ref) >= tol) return kExitTolerance;
        }
    }
    return 0;
}

int cmd_weitzenbock(std::ostream& out, const GeometryOpt& geo,
                    const std::string& n_text, double min_order) {
    auto g = geo.load();
    const auto sizes = parse_ints(n_text, "--N");
    const auto rep = gbc::hodge::weitzenbock_check(g, sizes);
    gbc::report::config_header(out, {{"command", "weitzenbock"},
                                     {"geometry", geo.source_label()},
                                     {"N", n_text},
                                     {"slope", num(rep.slope)},
                                     {"min_order", num(min_order)}});
    out << "N,residual\n";
    out.precision(12);
    for (std::size_t i = 0; i < rep.grid_sizes.size(); ++i)
        out << rep.grid_sizes[i] << ',' << rep.residuals[i] << '\n';
    return rep.slope >= min_order ? 0 : kExitTolerance;
}

int cmd_mc(std::ostream& out, const GeometryOpt& geo, const std::string& t_text,
           const std::string& x_text, double bandwidth, long n,
           unsigned long long seed) {
    gbc::sde::SdeSpec spec;
    spec.geometry = geo.load();
    const auto ts = parse_doubles(t_text, "--t");
    const Vec x = x_text.empty() ? box_center(spec.geometry)
                                 : parse_point(x_text, spec.dim());
    gbc::report::config_header(out, {{"command", "mc"},
                                     {"geometry", geo.source_label()},
                                     {"t", t_text},
                                     {"bandwidth", num(bandwidth)},
                                     {"n", std::to_string(n)},
                                     {"seed", std::to_string(seed)}});
    gbc::report::estimator_csv_head(out, spec.dim());
    for (double t : ts) {
        const auto est = gbc::sde::heat_diag_mc(spec, t, x, bandwidth, n, seed);
        gbc::report::estimator_row(out, "str_density", t, x, est.supertrace, 0.0,
                                   est.supertrace_stderr, est.n, bandwidth, seed);
        for (int j = 0; j < est.value.rows(); ++j)
            gbc::report::estimator_row(out, "diag_" + std::to_string(j), t, x,
                                       est.value(j, j).real(), est.value(j, j).imag(),
                                       est.stderr_re(j, j), est.n, bandwidth, seed);
        if (est.excluded) out << "# excluded = " << est.excluded << '\n';
    }
    return 0;
}

int cmd_orders(std::ostream& out, const GeometryOpt& geo, const std::string& eps_text,
               const std::string& x_text, long n, unsigned long long seed,
               double min_slope) {
    gbc::sde::SdeSpec spec;
    spec.geometry = geo.load();
    const auto eps = parse_doubles(eps_text, "--eps");
    const Vec x = x_text.empty() ? box_center(spec.geometry)
                                 : parse_point(x_text, spec.dim());
    const auto study = gbc::sde::epsilon_order_study(spec, x, eps, n, seed);
    gbc::report::config_header(out, {{"command", "orders"},
                                     {"geometry", geo.source_label()},
                                     {"eps", eps_text},
                                     {"n", std::to_string(n)},
                                     {"seed", std::to_string(seed)},
                                     {"min_slope", num(min_slope)}});
    gbc::report::order_study_csv(out, study);
    return study.x_slope >= min_slope && study.e_slope >= min_slope ? 0 : kExitTolerance;
}

int cmd_ladder(std::ostream& out, const GeometryOpt& geo, const std::string& x_text,
               long n, unsigned long long seed) {
    gbc::report::config_header(out, {{"command", "ladder"},
                                     {"geometry", geo.source_label()},
                                     {"n", std::to_string(n)},
                                     {"seed", std::to_string(seed)}});
    out << "check,value,reference,tolerance,status\n";
    out.precision(12);
    int failures = 0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int d : {2, 4}) {
        double low = 0.0, top = 0.0;
        for (int k = 0; k < 50; ++k) {
            gbc::cliff::CurvatureArray r(d);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j)
                    for (int nn = 0; nn < d; ++nn)
                        for (int m = nn + 1; m < d; ++m) {
                            const double v = u(rng);
                            r.at(i, j, nn, m) = v;
                            r.at(j, i, nn, m) = -v;
                            r.at(i, j, m, nn) = -v;
                            r.at(j, i, m, nn) = v;
                        }
            auto rep = gbc::cliff::ladder_supertrace(r);
            low = std::max(low, rep.max_lower_power_abs);
            top = std::max(top, rep.top_rel_error);
        }
        const bool ok = low < 1e-10 && top < 1e-8;
        if (!ok) ++failures;
        out << "algebraic_d" << d << ',' << num(std::max(low, top)) << ",0,1e-08,"
            << (ok ? "pass" : "fail") << '\n';
    }

    gbc::sde::SdeSpec spec;
    spec.geometry = geo.load();
    if (spec.dim() == 2) {
        const Vec x = x_text.empty() ? box_center(spec.geometry)
                                     : parse_point(x_text, spec.dim());
        const auto rep = gbc::sde::ladder_check_mc(spec, x, 0.1, n, seed);
        const double tol = 3.0 * rep.stderr_ + 1e-10;
        const bool ok = std::abs(rep.mean - rep.reference) <= tol;
        if (!ok) ++failures;
        out << "mc_first_term," << num(rep.mean) << ',' << num(rep.reference) << ','
            << num(tol) << ',' << (ok ? "pass" : "fail") << '\n';
    }
    return failures ? kExitTolerance : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Numerical verification of the local Gauss-Bonnet-Chern limit for "
        "metric-compatible connections: algebra suites, curvature tables, heat "
        "kernel supertrace profiles and Monte Carlo estimators."};
    app.require_subcommand(1);

    // verify-algebra
    auto* verify = app.add_subcommand("verify-algebra", "Clifford/Pfaffian/ladder invariants");
    std::string verify_d = "2,4,6";
    unsigned long long verify_seed = 1;
    verify->add_option("--d", verify_d, "dimension list")->capture_default_str();
    verify->add_option("--seed", verify_seed, "random seed")->capture_default_str();
    OutputOpt verify_out;
    verify_out.attach(verify);

    // curvature
    auto* curv = app.add_subcommand("curvature", "curvature and torsion tables on a lattice");
    GeometryOpt curv_geo;
    curv_geo.attach(curv);
    int curv_points = 8;
    curv->add_option("--points", curv_points, "lattice points per axis")->capture_default_str();
    OutputOpt curv_out;
    curv_out.attach(curv);

    // euler
    auto* euler = app.add_subcommand("euler", "Euler form density map and characteristic");
    GeometryOpt euler_geo;
    euler_geo.attach(euler);
    int euler_points = 24;
    std::string euler_kind = "full";
    euler->add_option("--points", euler_points, "quadrature points per axis")->capture_default_str();
    euler->add_option("--kind", euler_kind, "connection: full, lc or 3b")->capture_default_str();
    OutputOpt euler_out;
    euler_out.attach(euler);

    // heat
    auto* heat = app.add_subcommand("heat", "heat kernel supertrace profile on a grid");
    GeometryOpt heat_geo;
    heat_geo.attach(heat);
    int heat_n = 64;
    std::string heat_t = "0.4,0.2,0.1,0.05";
    std::string heat_nodes, heat_kind = "full";
    bool heat_ms = false, heat_check = false;
    heat->add_option("--N", heat_n, "grid points per axis")->capture_default_str();
    heat->add_option("--t", heat_t, "heat time list")->capture_default_str();
    heat->add_option("--nodes", heat_nodes, "sample nodes i,j[,k,l];... (default lattice)");
    heat->add_option("--kind", heat_kind, "connection: full, lc or 3b")->capture_default_str();
    heat->add_flag("--mckean-singer", heat_ms, "also report the global discrete supertrace");
    heat->add_flag("--check", heat_check,
                   "fail (exit 4) when the extrapolation misses the Euler form");
    OutputOpt heat_out;
    heat_out.attach(heat);

    // weitzenbock
    auto* weitz = app.add_subcommand("weitzenbock", "operator identity residual refinement");
    GeometryOpt weitz_geo;
    weitz_geo.attach(weitz);
    std::string weitz_n = "16,32,64";
    double weitz_min = 2.0;
    weitz->add_option("--N", weitz_n, "grid size list")->capture_default_str();
    weitz->add_option("--min-order", weitz_min, "required convergence order")->capture_default_str();
    OutputOpt weitz_out;
    weitz_out.attach(weitz);

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo heat kernel diagonal estimator");
    GeometryOpt mc_geo;
    mc_geo.attach(mc);
    std::string mc_t = "0.25", mc_x;
    double mc_bw = 0.05;
    long mc_n = 20000;
    unsigned long long mc_seed = 1;
    mc->add_option("--t", mc_t, "heat time list")->capture_default_str();
    mc->add_option("--x", mc_x, "evaluation point (default box center)");
    mc->add_option("--bandwidth", mc_bw, "mollifier bandwidth")->capture_default_str();
    mc->add_option("--n", mc_n, "number of paths")->capture_default_str();
    mc->add_option("--seed", mc_seed, "random seed")->capture_default_str();
    OutputOpt mc_out;
    mc_out.attach(mc);

    // orders
    auto* orders = app.add_subcommand("orders", "epsilon scaling study of the rescaled system");
    GeometryOpt orders_geo;
    orders_geo.attach(orders);
    std::string orders_eps = "0.4,0.2,0.1,0.05", orders_x;
    long orders_n = 2000;
    unsigned long long orders_seed = 9;
    double orders_min = 1.9;
    orders->add_option("--eps", orders_eps, "epsilon list")->capture_default_str();
    orders->add_option("--x", orders_x, "base point (default box center)");
    orders->add_option("--n", orders_n, "number of paths")->capture_default_str();
    orders->add_option("--seed", orders_seed, "random seed")->capture_default_str();
    orders->add_option("--min-slope", orders_min, "required residual order")->capture_default_str();
    OutputOpt orders_out;
    orders_out.attach(orders);

    // ladder
    auto* ladder = app.add_subcommand("ladder", "algebraic and Monte Carlo ladder checks");
    GeometryOpt ladder_geo;
    ladder_geo.attach(ladder);
    std::string ladder_x;
    long ladder_n = 20000;
    unsigned long long ladder_seed = 4;
    ladder->add_option("--x", ladder_x, "evaluation point (default box center)");
    ladder->add_option("--n", ladder_n, "number of paths")->capture_default_str();
    ladder->add_option("--seed", ladder_seed, "random seed")->capture_default_str();
    OutputOpt ladder_out;
    ladder_out.attach(ladder);

    // all
    auto* all = app.add_subcommand("all", "full acceptance battery (long)");
    OutputOpt all_out;
    all_out.attach(all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*verify)
            return cmd_verify_algebra(verify_out.stream(),
                                      parse_ints(verify_d, "--d"), verify_seed);
        if (*curv) return cmd_curvature(curv_out.stream(), curv_geo, curv_points);
        if (*euler) return cmd_euler(euler_out.stream(), euler_geo, euler_points, euler_kind);
        if (*heat)
            return cmd_heat(heat_out.stream(), heat_geo, heat_n, heat_t, heat_nodes,
                            heat_kind, heat_ms, heat_check);
        if (*weitz) return cmd_weitzenbock(weitz_out.stream(), weitz_geo, weitz_n, weitz_min);
        if (*mc) return cmd_mc(mc_out.stream(), mc_geo, mc_t, mc_x, mc_bw, mc_n, mc_seed);
        if (*orders)
            return cmd_orders(orders_out.stream(), orders_geo, orders_eps, orders_x,
                              orders_n, orders_seed, orders_min);
        if (*ladder)
            return cmd_ladder(ladder_out.stream(), ladder_geo, ladder_x, ladder_n, ladder_seed);
        if (*all) return gbc::run_acceptance(all_out.stream()) == 0 ? 0 : kExitTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
