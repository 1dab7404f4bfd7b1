#include "gbc/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace gbc::geom {

ChartDomain ChartDomain::periodic_box(int dim, double side) {
    if (side <= 0.0) throw std::invalid_argument("side length must be positive");
    ChartDomain c;
    c.kind = Kind::PeriodicBox;
    c.dim = dim;
    c.lengths.assign(dim, side);
    return c;
}

ChartDomain ChartDomain::full_space(int dim, double radius) {
    ChartDomain c;
    c.kind = Kind::FullSpace;
    c.dim = dim;
    c.perturbation_radius = radius;
    return c;
}

Vec ChartDomain::wrap(Vec x) const {
    if (kind != Kind::PeriodicBox) return x;
    for (int i = 0; i < dim; ++i) {
        const double L = lengths[i];
        x[i] -= L * std::floor(x[i] / L);
    }
    return x;
}

MetricField::MetricField(ValueFn g, DerivFn dg, double fd_step)
    : g_(std::move(g)), dg_(std::move(dg)), fd_step_(fd_step) {}

Mat MetricField::value(const Vec& x) const {
    if (!g_) throw std::logic_error("MetricField: empty");
    return g_(x);
}

std::vector<Mat> MetricField::derivative(const Vec& x) const {
    if (dg_) return dg_(x);
    const int d = static_cast<int>(x.size());
    std::vector<Mat> out(d);
    const double h = fd_step_;
    for (int i = 0; i < d; ++i) {
        Vec xp = x, xpp = x, xm = x, xmm = x;
        xp[i] += h; xpp[i] += 2 * h; xm[i] -= h; xmm[i] -= 2 * h;
        out[i] = (8.0 * (g_(xp) - g_(xm)) - (g_(xpp) - g_(xmm))) / (12.0 * h);
    }
    return out;
}

void MetricField::validate_at(const Vec& x) const {
    const Mat g = value(x);
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("metric not symmetric at sample point");
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric not positive definite at sample point");
}

ContorsionField::ContorsionField(ValueFn k) : k_(std::move(k)) {}

std::vector<Mat> ContorsionField::value(const Vec& x, int dim) const {
    if (!k_) return std::vector<Mat>(dim, Mat::Zero(dim, dim));
    std::vector<Mat> k = k_(x);
    if (static_cast<int>(k.size()) != dim)
        throw std::invalid_argument("contorsion: wrong number of components");
    for (const Mat& m : k)
        if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("contorsion: frame-index skewness violated");
    return k;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

GeometrySpec flat_torus() {
    GeometrySpec s;
    s.name = "flat-torus";
    s.chart = ChartDomain::periodic_box(2, kTwoPi);
    s.metric = MetricField(
        [](const Vec& x) { return Mat::Identity(x.size(), x.size()); },
        [](const Vec& x) { return std::vector<Mat>(x.size(), Mat::Zero(x.size(), x.size())); });
    s.analytic_euler_density = [](const Vec&) { return 0.0; };
    s.analytic_gauss_curvature = [](const Vec&) { return 0.0; };
    return s;
}

// g = e^{2 phi} delta with phi = A sin x1 cos x2. Gauss curvature
// K = -e^{-2 phi} (Laplacian phi) = 2 phi e^{-2 phi}.
GeometrySpec conformal_torus(double a) {
    GeometrySpec s;
    s.name = "conformal-torus";
    s.chart = ChartDomain::periodic_box(2, kTwoPi);
    auto phi = [a](const Vec& x) { return a * std::sin(x[0]) * std::cos(x[1]); };
    auto dphi = [a](const Vec& x) {
        Vec g(2);
        g[0] = a * std::cos(x[0]) * std::cos(x[1]);
        g[1] = -a * std::sin(x[0]) * std::sin(x[1]);
        return g;
    };
    s.metric = MetricField(
        [phi](const Vec& x) {
            return (std::exp(2.0 * phi(x)) * Mat::Identity(2, 2)).eval();
        },
        [phi, dphi](const Vec& x) {
            const double f = std::exp(2.0 * phi(x));
            const Vec dp = dphi(x);
            std::vector<Mat> out(2);
            for (int i = 0; i < 2; ++i) out[i] = 2.0 * dp[i] * f * Mat::Identity(2, 2);
            return out;
        });
    s.analytic_gauss_curvature = [phi](const Vec& x) {
        return 2.0 * phi(x) * std::exp(-2.0 * phi(x));
    };
    s.analytic_euler_density = [phi](const Vec& x) {
        // K sqrt(g) / (2 pi) = 2 phi / (2 pi)
        return 2.0 * phi(x) / kTwoPi;
    };
    return s;
}

// Round sphere through stereographic projection: g = 4/(1+|x|^2)^2 delta,
// Gauss curvature 1 everywhere.
GeometrySpec stereographic_sphere() {
    GeometrySpec s;
    s.name = "stereographic-sphere";
    s.chart = ChartDomain::full_space(2, std::numeric_limits<double>::infinity());
    auto factor = [](const Vec& x) {
        const double r2 = x.squaredNorm();
        return 4.0 / ((1.0 + r2) * (1.0 + r2));
    };
    s.metric = MetricField(
        [factor](const Vec& x) { return (factor(x) * Mat::Identity(2, 2)).eval(); },
        [factor](const Vec& x) {
            const double r2 = x.squaredNorm();
            const double df = -16.0 / std::pow(1.0 + r2, 3);
            std::vector<Mat> out(2);
            for (int i = 0; i < 2; ++i) out[i] = df * x[i] * Mat::Identity(2, 2);
            return out;
        });
    s.analytic_gauss_curvature = [](const Vec&) { return 1.0; };
    s.analytic_euler_density = [factor](const Vec& x) {
        return factor(x) / kTwoPi;  // K sqrt(g) / (2 pi), sqrt(g) = factor
    };
    return s;
}

// Flat metric with contorsion K_{iab} = alpha_i(x) eps_{ab}; the general
// connection has curvature d(alpha) in its so(2) part while the Levi-Civita
// Euler form vanishes.
GeometrySpec torsion_torus() {
    GeometrySpec s;
    s.name = "torsion-torus";
    s.chart = ChartDomain::periodic_box(2, kTwoPi);
    s.metric = MetricField(
        [](const Vec& x) { return Mat::Identity(x.size(), x.size()); },
        [](const Vec& x) { return std::vector<Mat>(x.size(), Mat::Zero(x.size(), x.size())); });
    auto alpha = [](const Vec& x) {
        Vec a(2);
        a[0] = 0.5 * std::cos(x[1]);
        a[1] = 0.5 * std::sin(x[0]);
        return a;
    };
    s.contorsion = ContorsionField([alpha](const Vec& x) {
        const Vec a = alpha(x);
        Mat eps(2, 2);
        eps << 0, 1, -1, 0;
        return std::vector<Mat>{a[0] * eps, a[1] * eps};
    });
    s.analytic_gauss_curvature = [](const Vec&) { return 0.0; };
    s.analytic_euler_density = [](const Vec& x) {
        // (d alpha)_{12} / (2 pi)
        return (0.5 * std::cos(x[0]) + 0.5 * std::sin(x[1])) / kTwoPi;
    };
    return s;
}

std::function<double(const Vec&)> phi4(double a) {
    return [a](const Vec& x) {
        return a * (std::sin(x[0]) * std::cos(x[1]) + std::sin(x[2]) * std::cos(x[3]));
    };
}

GeometrySpec conformal_4torus(double a) {
    GeometrySpec s;
    s.name = "conformal-4torus";
    s.chart = ChartDomain::periodic_box(4, kTwoPi);
    auto phi = phi4(a);
    auto dphi = [a](const Vec& x) {
        Vec g(4);
        g[0] = a * std::cos(x[0]) * std::cos(x[1]);
        g[1] = -a * std::sin(x[0]) * std::sin(x[1]);
        g[2] = a * std::cos(x[2]) * std::cos(x[3]);
        g[3] = -a * std::sin(x[2]) * std::sin(x[3]);
        return g;
    };
    s.metric = MetricField(
        [phi](const Vec& x) {
            return (std::exp(2.0 * phi(x)) * Mat::Identity(4, 4)).eval();
        },
        [phi, dphi](const Vec& x) {
            const double f = std::exp(2.0 * phi(x));
            const Vec dp = dphi(x);
            std::vector<Mat> out(4);
            for (int i = 0; i < 4; ++i) out[i] = 2.0 * dp[i] * f * Mat::Identity(4, 4);
            return out;
        });
    return s;
}

// Conformal 4-torus with a totally antisymmetric contorsion supported on
// frame indices {1,2,3}; produces a pure 3-form in the Dirac decomposition.
GeometrySpec torsion_4torus(double a) {
    GeometrySpec s = conformal_4torus(a);
    s.name = "torsion-4torus";
    auto phi = phi4(a);
    s.contorsion = ContorsionField([phi](const Vec& x) {
        const double lam = 0.4 * (1.0 + 0.5 * std::sin(x[0]));
        // frame-index 1-form components K_{c a b} = lam * eps_{cab} on {0,1,2};
        // coordinate 1-form index via f^c_i = e^{phi} delta^c_i.
        const double scale = lam * std::exp(phi(x));
        std::vector<Mat> k(4, Mat::Zero(4, 4));
        const int eps[6][4] = {{0, 1, 2, 1},  {0, 2, 1, -1}, {1, 2, 0, 1},
                               {1, 0, 2, -1}, {2, 0, 1, 1},  {2, 1, 0, -1}};
        for (const auto& e : eps) {
            k[e[0]](e[1], e[2]) = scale * e[3];
            k[e[0]](e[2], e[1]) = -scale * e[3];
        }
        return k;
    });
    return s;
}

}  // namespace

GeometrySpec preset(const std::string& name, double amplitude) {
    if (name == "flat-torus") return flat_torus();
    if (name == "conformal-torus") return conformal_torus(amplitude);
    if (name == "stereographic-sphere") return stereographic_sphere();
    if (name == "torsion-torus") return torsion_torus();
    if (name == "conformal-4torus") return conformal_4torus(amplitude);
    if (name == "torsion-4torus") return torsion_4torus(amplitude);
    throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"flat-torus",    "conformal-torus",  "stereographic-sphere",
            "torsion-torus", "conformal-4torus", "torsion-4torus"};
}

}  // namespace gbc::geom
