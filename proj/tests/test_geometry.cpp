#include "doctest.h"

#include <random>

#include "gbc/curvature.hpp"

using namespace gbc::geom;

namespace {

Vec point2(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}

Vec random_point(const GeometrySpec& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec x(g.dim());
    for (int i = 0; i < g.dim(); ++i) {
        const double span = (g.chart.kind == ChartDomain::Kind::PeriodicBox)
                                ? g.chart.lengths[i]
                                : 2.0;
        x[i] = span * (u(rng) - 0.5) + (g.chart.kind == ChartDomain::Kind::PeriodicBox
                                            ? g.chart.lengths[i] * 0.5
                                            : 0.0);
    }
    return x;
}

}  // namespace

TEST_CASE("orthonormal frame") {
    std::mt19937_64 rng(1);
    for (const auto& name : {"conformal-torus", "stereographic-sphere", "torsion-torus"}) {
        auto g = preset(name);
        for (int t = 0; t < 20; ++t) {
            Vec x = random_point(g, rng);
            auto fr = orthonormal_frame(g.metric, x);
            Mat gx = g.metric.value(x);
            // f g^{-1} f^T = I
            CHECK(((fr.coframe * gx.inverse() * fr.coframe.transpose()) -
                   Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
            // frame columns orthonormal under g
            CHECK(((fr.frame.transpose() * gx * fr.frame) - Mat::Identity(2, 2))
                      .cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("frame derivative matches finite differences") {
    auto g = preset("conformal-torus");
    Vec x = point2(1.0, 0.7);
    auto dfr = frame_derivative(g.metric, x);
    const double h = 1e-5;
    for (int i = 0; i < 2; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h; xm[i] -= h;
        Mat fd = (orthonormal_frame(g.metric, xp).coframe -
                  orthonormal_frame(g.metric, xm).coframe) / (2 * h);
        CHECK((fd - dfr[i].coframe).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("christoffel symbols") {
    auto flat = preset("flat-torus");
    auto gamma = christoffel(flat.metric, point2(1.0, 2.0));
    for (const auto& m : gamma) CHECK(m.cwiseAbs().maxCoeff() == 0.0);

    // conformal metric: hand-computed pattern from phi
    auto conf = preset("conformal-torus");
    const double a = 0.3;
    Vec x = point2(0.9, 1.4);
    const double p1 = a * std::cos(x[0]) * std::cos(x[1]);
    const double p2 = -a * std::sin(x[0]) * std::sin(x[1]);
    auto gc = christoffel(conf.metric, x);
    CHECK(gc[0](0, 0) == doctest::Approx(p1).epsilon(1e-10));
    CHECK(gc[0](0, 1) == doctest::Approx(p2).epsilon(1e-10));
    CHECK(gc[0](1, 1) == doctest::Approx(-p1).epsilon(1e-10));
    CHECK(gc[1](0, 0) == doctest::Approx(-p2).epsilon(1e-10));
    CHECK(gc[1](0, 1) == doctest::Approx(p1).epsilon(1e-10));
    CHECK(gc[1](1, 1) == doctest::Approx(p2).epsilon(1e-10));

    // analytic-derivative closure vs pure finite differences of g
    auto sphere = preset("stereographic-sphere");
    MetricField fd_metric([m = sphere.metric](const Vec& y) { return m.value(y); });
    Vec y = point2(0.4, -0.2);
    auto ga = christoffel(sphere.metric, y);
    auto gf = christoffel(fd_metric, y);
    for (int s = 0; s < 2; ++s)
        CHECK((ga[s] - gf[s]).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("connection and metric compatibility") {
    std::mt19937_64 rng(2);
    for (const auto& name : {"flat-torus", "conformal-torus", "torsion-torus",
                             "stereographic-sphere", "torsion-4torus"}) {
        auto g = preset(name);
        for (int t = 0; t < 10; ++t) {
            Vec x = random_point(g, rng);
            CHECK(metric_compatibility_residual(g, x) < 1e-8);
            // spin connection skew in the frame pair
            auto omega = spin_connection(g, x);
            for (const auto& w : omega)
                CHECK((w + w.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }

    // K = 0 reduces to the Levi-Civita spin coefficients
    auto conf = preset("conformal-torus");
    Vec x = point2(0.3, 0.8);
    auto full = spin_connection(conf, x);
    auto lc = levi_civita_spin_connection(conf.metric, x);
    for (int i = 0; i < 2; ++i) CHECK((full[i] - lc[i]).cwiseAbs().maxCoeff() == 0.0);

    // constant K on a flat metric: connection form equals K
    auto tor = preset("torsion-torus");
    Vec y = point2(1.1, 0.2);
    auto omega = spin_connection(tor, y);
    auto k = tor.contorsion.value(y, 2);
    for (int i = 0; i < 2; ++i) CHECK((omega[i] - k[i]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("curvature of presets") {
    auto flat = preset("flat-torus");
    auto cflat = curvature(flat, point2(0.5, 0.5));
    for (int m = 0; m < 2; ++m)
        for (int k = 0; k < 2; ++k) CHECK(cflat.coord[m][k].cwiseAbs().maxCoeff() < 1e-10);
    for (const auto& t : cflat.torsion) CHECK(t.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(cflat.scalar) < 1e-10);

    // round sphere: Gauss curvature 1, scalar curvature 2
    auto sphere = preset("stereographic-sphere");
    for (auto& xv : {point2(0.0, 0.0), point2(0.5, -0.3), point2(1.2, 0.8)}) {
        auto c = curvature(sphere, xv);
        CHECK(c.frame.at(0, 1, 0, 1) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(c.scalar == doctest::Approx(2.0).epsilon(1e-6));
        for (const auto& t : c.torsion) CHECK(t.cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("torsion equals antisymmetrized contorsion") {
    auto tor = preset("torsion-torus");
    Vec x = point2(0.7, 1.9);
    auto c = curvature(tor, x);
    auto k = tor.contorsion.value(x, 2);
    auto fr = orthonormal_frame(tor.metric, x);
    for (int a = 0; a < 2; ++a)
        for (int m = 0; m < 2; ++m)
            for (int kk = 0; kk < 2; ++kk) {
                double expect = 0.0;
                for (int b = 0; b < 2; ++b)
                    expect += k[m](a, b) * fr.coframe(b, kk) - k[kk](a, b) * fr.coframe(b, m);
                CHECK(c.torsion[a](m, kk) == doctest::Approx(expect).epsilon(1e-8));
            }

    // torsion-free for the Levi-Civita connection of every preset
    for (const auto& name : {"conformal-torus", "stereographic-sphere"}) {
        auto g = preset(name);
        auto clc = curvature(g, point2(0.4, 0.9), ConnectionKind::LeviCivita);
        for (const auto& t : clc.torsion) CHECK(t.cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("curvature of constant contorsion on flat metric (hand oracle)") {
    // d=4 flat with constant totally antisymmetric K: omega = K constant, so
    // Omega_mk = [K_m, K_k].
    GeometrySpec g;
    g.name = "flat4-constK";
    g.chart = ChartDomain::periodic_box(4, 6.283185307179586);
    g.metric = MetricField([](const Vec& x) { return Mat::Identity(x.size(), x.size()); });
    const double lam = 0.7;
    auto kfun = [lam](const Vec&) {
        std::vector<Mat> k(4, Mat::Zero(4, 4));
        k[0](1, 2) = lam; k[0](2, 1) = -lam;
        k[1](2, 0) = lam; k[1](0, 2) = -lam;
        k[2](0, 1) = lam; k[2](1, 0) = -lam;
        return k;
    };
    g.contorsion = ContorsionField(kfun);
    Vec x = Vec::Zero(4);
    auto c = curvature(g, x);
    auto k = kfun(x);
    for (int m = 0; m < 4; ++m)
        for (int kk = 0; kk < 4; ++kk) {
            Mat expect = k[m] * k[kk] - k[kk] * k[m];
            CHECK((c.coord[m][kk] - expect).cwiseAbs().maxCoeff() < 1e-8);
        }
}

TEST_CASE("dirac decomposition") {
    auto conf = preset("conformal-torus");
    auto td0 = dirac_decompose(conf, point2(0.1, 0.1));
    CHECK(td0.a.norm() == 0.0);
    CHECK(td0.b.norm() == 0.0);

    // d=2: no 3-forms
    auto tor = preset("torsion-torus");
    auto td2 = dirac_decompose(tor, point2(0.8, 0.3));
    CHECK(td2.b.norm() == 0.0);
    CHECK(td2.a.norm() > 0.1);

    // d=4 totally antisymmetric contorsion: pure 3-form
    auto tor4 = preset("torsion-4torus");
    Vec x4(4);
    x4 << 0.2, 1.0, 0.5, 2.0;
    auto td4 = dirac_decompose(tor4, x4);
    CHECK(td4.a.norm() < 1e-12);
    CHECK(td4.b.norm() > 0.05);

    // reconstruction: sum_i c_i beta_{ijs} c_j c_s == c(B)
    using namespace gbc::cliff;
    auto beta = three_form_tensor(td4.b);
    CliffordElement rebuilt(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int s = 0; s < 4; ++s) {
                if (beta[i](j, s) == 0.0) continue;
                rebuilt += beta[i](j, s) *
                           clifford_mul(CliffordElement::generator(4, i + 1),
                                        clifford_mul(CliffordElement::generator(4, j + 1),
                                                     CliffordElement::generator(4, s + 1)));
            }
    CHECK((symbol(rebuilt) - td4.b).norm() < 1e-12);
}

TEST_CASE("euler form") {
    auto flat = preset("flat-torus");
    CHECK(std::abs(euler_form(flat, point2(1.0, 1.0))) < 1e-10);

    auto sphere = preset("stereographic-sphere");
    const double at_origin = euler_form(sphere, point2(0.0, 0.0));
    CHECK(at_origin == doctest::Approx(4.0 / 6.283185307179586).epsilon(1e-6));
    CHECK(at_origin == doctest::Approx(sphere.analytic_euler_density(point2(0, 0))).epsilon(1e-6));

    auto tor = preset("torsion-torus");
    std::mt19937_64 rng(9);
    for (int t = 0; t < 8; ++t) {
        Vec x = random_point(tor, rng);
        CHECK(euler_form(tor, x) ==
              doctest::Approx(tor.analytic_euler_density(x)).epsilon(1e-6));
        // Levi-Civita Euler form of the flat metric vanishes
        CHECK(std::abs(euler_form(tor, x, ConnectionKind::LeviCivita)) < 1e-8);
    }

    auto conf = preset("conformal-torus");
    for (int t = 0; t < 8; ++t) {
        Vec x = random_point(conf, rng);
        CHECK(euler_form(conf, x) ==
              doctest::Approx(conf.analytic_euler_density(x)).epsilon(2e-6));
    }
}

TEST_CASE("euler characteristic of torus presets") {
    CHECK(std::abs(euler_characteristic(preset("flat-torus"), 8)) < 1e-10);
    CHECK(std::abs(euler_characteristic(preset("conformal-torus"), 24)) < 1e-6);
    CHECK(std::abs(euler_characteristic(preset("torsion-torus"), 24)) < 1e-6);
    // switching the contorsion off leaves the integral unchanged
    const double with_k = euler_characteristic(preset("torsion-torus"), 24);
    const double without_k =
        euler_characteristic(preset("torsion-torus"), 24, ConnectionKind::LeviCivita);
    CHECK(std::abs(with_k - without_k) < 1e-5);
    CHECK_THROWS(euler_characteristic(preset("stereographic-sphere"), 8));
}

TEST_CASE("normal coordinate expansion") {
    auto flat = preset("flat-torus");
    auto rep_flat = normal_coordinate_check(flat, 0.2, 2, 4);
    for (double r : rep_flat.residuals) CHECK(r < 1e-10);

    auto sphere = preset("stereographic-sphere");
    auto rep = normal_coordinate_check(sphere, 0.2, 4, 8);
    CHECK(rep.slope >= 1.9);

    // general connection on the torsion torus
    auto tor = preset("torsion-torus");
    auto rep_t = normal_coordinate_check(tor, 0.2, 4, 8, ConnectionKind::Full);
    CHECK(rep_t.slope >= 1.9);
}

TEST_CASE("preset validation") {
    CHECK_THROWS(preset("no-such-geometry"));
    std::mt19937_64 rng(4);
    for (const auto& name : preset_names()) {
        auto g = preset(name);
        for (int t = 0; t < 5; ++t) g.metric.validate_at(random_point(g, rng));
    }
}
