#include "gbc/curvature.hpp"

#include <cmath>
#include <random>

#include "gbc/clifford.hpp"

namespace gbc::geom {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Frame orthonormal_frame(const MetricField& metric, const Vec& x) {
    const Mat g = metric.value(x);
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric not positive definite at evaluation point");
    const Mat l = llt.matrixL();
    Frame f;
    f.coframe = l.transpose();
    f.frame = f.coframe.inverse();
    return f;
}

std::vector<Frame> frame_derivative(const MetricField& metric, const Vec& x) {
    const int d = static_cast<int>(x.size());
    const Mat g = metric.value(x);
    Eigen::LLT<Mat> llt(g);
    const Mat l = llt.matrixL();
    const Mat linv = Mat(l).inverse();
    const std::vector<Mat> dg = metric.derivative(x);
    const Frame base = orthonormal_frame(metric, x);

    std::vector<Frame> out(d);
    for (int i = 0; i < d; ++i) {
        // dL = L Phi(L^-1 dg L^-T), Phi = strict lower + half diagonal.
        Mat s = linv * dg[i] * linv.transpose();
        Mat phi = s.triangularView<Eigen::StrictlyLower>();
        phi += 0.5 * s.diagonal().asDiagonal();
        const Mat dl = l * phi;
        out[i].coframe = dl.transpose();
        out[i].frame = -base.frame * out[i].coframe * base.frame;
    }
    return out;
}

Tensor3 christoffel(const MetricField& metric, const Vec& x) {
    const int d = static_cast<int>(x.size());
    const Mat g = metric.value(x);
    const Mat ginv = g.inverse();
    const std::vector<Mat> dg = metric.derivative(x);

    Tensor3 gamma(d, Mat::Zero(d, d));
    for (int s = 0; s < d; ++s)
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l) {
                double sum = 0.0;
                for (int m = 0; m < d; ++m)
                    sum += ginv(s, m) * (dg[i](m, l) + dg[l](m, i) - dg[m](i, l));
                gamma[s](i, l) = 0.5 * sum;
            }
    return gamma;
}

Tensor3 levi_civita_spin_connection(const MetricField& metric, const Vec& x) {
    const int d = static_cast<int>(x.size());
    const Frame fr = orthonormal_frame(metric, x);
    const std::vector<Frame> dfr = frame_derivative(metric, x);
    const Tensor3 gamma = christoffel(metric, x);

    Tensor3 omega(d, Mat::Zero(d, d));
    for (int i = 0; i < d; ++i) {
        // omega_i(a,b) = f^a_k (d_i e_b^k + Gamma^k_{il} e_b^l)
        Mat cov = dfr[i].frame;  // columns d_i e_b
        for (int k = 0; k < d; ++k)
            for (int b = 0; b < d; ++b)
                for (int l = 0; l < d; ++l) cov(k, b) += gamma[k](i, l) * fr.frame(l, b);
        Mat w = fr.coframe * cov;
        omega[i] = 0.5 * (w - w.transpose());  // skew up to FD noise
    }
    return omega;
}

Tensor3 spin_connection(const GeometrySpec& geometry, const Vec& x) {
    Tensor3 omega = levi_civita_spin_connection(geometry.metric, x);
    if (!geometry.contorsion.is_zero()) {
        const std::vector<Mat> k = geometry.contorsion.value(x, geometry.dim());
        for (int i = 0; i < geometry.dim(); ++i) omega[i] += k[i];
    }
    return omega;
}

Tensor3 connection_form(const GeometrySpec& geometry, const Vec& x, ConnectionKind kind) {
    switch (kind) {
        case ConnectionKind::LeviCivita:
            return levi_civita_spin_connection(geometry.metric, x);
        case ConnectionKind::Full:
            return spin_connection(geometry, x);
        case ConnectionKind::ThreeB: {
            const int d = geometry.dim();
            Tensor3 omega = levi_civita_spin_connection(geometry.metric, x);
            if (geometry.contorsion.is_zero()) return omega;
            const TorsionDecomposition td = dirac_decompose(geometry, x);
            const Tensor3 beta = three_form_tensor(td.b);
            const Frame fr = orthonormal_frame(geometry.metric, x);
            // Spin lift convention is A -> -1/4 A_{ab} c(e^a) c(e^b), so the
            // 3B lift D-hat + 3 beta_{iab} c^a c^b means
            // omega^{3B}_m = omega-hat_m - 12 sum_c f^c_m beta_c.
            for (int m = 0; m < d; ++m)
                for (int c = 0; c < d; ++c)
                    omega[m] -= 12.0 * fr.coframe(c, m) * beta[c];
            return omega;
        }
    }
    throw std::logic_error("unreachable");
}

CurvatureData curvature(const GeometrySpec& geometry, const Vec& x, ConnectionKind kind) {
    const int d = geometry.dim();
    const double h = geometry.metric.fd_step();

    auto omega_at = [&](const Vec& p, ConnectionKind k) { return connection_form(geometry, p, k); };

    auto curvature_form = [&](ConnectionKind k) {
        // d omega via 4th-order central differences in each coordinate.
        std::vector<Tensor3> domega(d);  // domega[m][k_index] = d_m omega_k
        for (int m = 0; m < d; ++m) {
            Vec xp = x, xpp = x, xm = x, xmm = x;
            xp[m] += h; xpp[m] += 2 * h; xm[m] -= h; xmm[m] -= 2 * h;
            const Tensor3 wp = omega_at(xp, k), wpp = omega_at(xpp, k);
            const Tensor3 wm = omega_at(xm, k), wmm = omega_at(xmm, k);
            domega[m].resize(d);
            for (int kk = 0; kk < d; ++kk)
                domega[m][kk] = (8.0 * (wp[kk] - wm[kk]) - (wpp[kk] - wmm[kk])) / (12.0 * h);
        }
        const Tensor3 w0 = omega_at(x, k);
        std::vector<std::vector<Mat>> omega2(d, std::vector<Mat>(d));
        for (int m = 0; m < d; ++m)
            for (int kk = 0; kk < d; ++kk)
                omega2[m][kk] = domega[m][kk] - domega[kk][m] + w0[m] * w0[kk] - w0[kk] * w0[m];
        return omega2;
    };

    CurvatureData data;
    data.dim = d;
    data.coord = curvature_form(kind);

    const Frame fr = orthonormal_frame(geometry.metric, x);
    data.frame = cliff::CurvatureArray(d);
    for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    double sum = 0.0;
                    for (int m = 0; m < d; ++m)
                        for (int k = 0; k < d; ++k)
                            sum += fr.frame(m, c) * fr.frame(k, e) * data.coord[m][k](a, b);
                    data.frame.at(c, e, a, b) = sum;
                }

    // Torsion from the first structure equation T^a = d f^a + omega^a_b ^ f^b.
    {
        const Tensor3 w0 = omega_at(x, kind);
        std::vector<Mat> dcoframe(d);  // d_m coframe
        for (int m = 0; m < d; ++m) {
            Vec xp = x, xpp = x, xm = x, xmm = x;
            xp[m] += h; xpp[m] += 2 * h; xm[m] -= h; xmm[m] -= 2 * h;
            dcoframe[m] = (8.0 * (orthonormal_frame(geometry.metric, xp).coframe -
                                  orthonormal_frame(geometry.metric, xm).coframe) -
                           (orthonormal_frame(geometry.metric, xpp).coframe -
                            orthonormal_frame(geometry.metric, xmm).coframe)) /
                          (12.0 * h);
        }
        data.torsion.assign(d, Mat::Zero(d, d));
        for (int a = 0; a < d; ++a)
            for (int m = 0; m < d; ++m)
                for (int k = 0; k < d; ++k) {
                    double t = dcoframe[m](a, k) - dcoframe[k](a, m);
                    for (int b = 0; b < d; ++b)
                        t += w0[m](a, b) * fr.coframe(b, k) - w0[k](a, b) * fr.coframe(b, m);
                    data.torsion[a](m, k) = t;
                }
    }

    // Levi-Civita scalar curvature.
    {
        auto lc = (kind == ConnectionKind::LeviCivita && geometry.contorsion.is_zero())
                      ? data.coord
                      : curvature_form(ConnectionKind::LeviCivita);
        double s = 0.0;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                double r_abab = 0.0;
                for (int m = 0; m < d; ++m)
                    for (int k = 0; k < d; ++k)
                        r_abab += fr.frame(m, a) * fr.frame(k, b) * lc[m][k](a, b);
                s += r_abab;
            }
        data.scalar = s;
    }
    return data;
}

TorsionDecomposition dirac_decompose(const GeometrySpec& geometry, const Vec& x) {
    using namespace gbc::cliff;
    const int d = geometry.dim();
    const Frame fr = orthonormal_frame(geometry.metric, x);
    const std::vector<Mat> k = geometry.contorsion.value(x, d);

    // Frame-index 1-form components K_c = sum_i e_c^i K_i. The spin lift of a
    // frame form is -1/4 A_{ab} c^a c^b, so the lifted difference D^S - D-hat^S
    // contracts to c(e^c) (-1/4 K_{cab}) c^a c^b.
    CliffordElement q(d);
    for (int c = 0; c < d; ++c) {
        Mat kc = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i) kc += fr.frame(i, c) * k[i];
        CliffordElement inner(d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                if (kc(a, b) == 0.0) continue;
                inner += (-0.25 * kc(a, b)) *
                         clifford_mul(CliffordElement::generator(d, a + 1),
                                      CliffordElement::generator(d, b + 1));
            }
        q += clifford_mul(CliffordElement::generator(d, c + 1), inner);
    }

    const Multivector sym = symbol(q);
    TorsionDecomposition td{sym.grade_part(1), sym.grade_part(3), 0.0};
    Multivector rest = sym - td.a - td.b;
    td.off_grade_residual = rest.norm();
    if (td.off_grade_residual > 1e-12)
        throw std::runtime_error("dirac_decompose: residual outside grades {1,3}");
    return td;
}

Tensor3 three_form_tensor(const cliff::Multivector& b) {
    const int d = b.dim();
    Tensor3 beta(d, Mat::Zero(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int s = j + 1; s < d; ++s) {
                const double v =
                    b[(1u << i) | (1u << j) | (1u << s)].real() / 6.0;
                if (v == 0.0) continue;
                beta[i](j, s) += v;  beta[i](s, j) -= v;
                beta[j](s, i) += v;  beta[j](i, s) -= v;
                beta[s](i, j) += v;  beta[s](j, i) -= v;
            }
    return beta;
}

double euler_form(const GeometrySpec& geometry, const Vec& x, ConnectionKind kind) {
    const int d = geometry.dim();
    const int l = d / 2;
    const CurvatureData data = curvature(geometry, x, kind);
    const double pf = data.frame.pfaffian_form();
    const double sqrtg = std::sqrt(geometry.metric.value(x).determinant());
    return pf / std::pow(kTwoPi, l) * sqrtg;
}

double euler_characteristic(const GeometrySpec& geometry, int points_per_axis,
                            ConnectionKind kind) {
    if (geometry.chart.kind != ChartDomain::Kind::PeriodicBox)
        throw std::invalid_argument("euler_characteristic needs a periodic-box chart");
    const int d = geometry.dim();
    const int n = points_per_axis;
    double cell = 1.0;
    for (int i = 0; i < d; ++i) cell *= geometry.chart.lengths[i] / n;

    long total = 1;
    for (int i = 0; i < d; ++i) total *= n;
    double sum = 0.0;
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        Vec x(d);
        for (int i = 0; i < d; ++i) {
            x[i] = (rem % n) * geometry.chart.lengths[i] / n;
            rem /= n;
        }
        sum += euler_form(geometry, x, kind);
    }
    return sum * cell;
}

namespace {

// Coordinate-index connection matrices A_m of the requested kind:
// (A_m)^k_s = LC Christoffel + frame-converted contorsion part.
Tensor3 coordinate_connection(const GeometrySpec& geometry, const Vec& x,
                              ConnectionKind kind) {
    const int d = geometry.dim();
    const Tensor3 gamma = christoffel(geometry.metric, x);
    Tensor3 a(d, Mat::Zero(d, d));
    for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k)
            for (int s = 0; s < d; ++s) a[m](k, s) = gamma[k](m, s);
    if (kind == ConnectionKind::LeviCivita || geometry.contorsion.is_zero()) return a;

    const Frame fr = orthonormal_frame(geometry.metric, x);
    const Tensor3 omega_full = connection_form(geometry, x, kind);
    const Tensor3 omega_lc = levi_civita_spin_connection(geometry.metric, x);
    for (int m = 0; m < d; ++m)
        a[m] += fr.frame * (omega_full[m] - omega_lc[m]) * fr.coframe;
    return a;
}

}  // namespace

NormalCoordReport normal_coordinate_check(const GeometrySpec& geometry, double radius,
                                          int levels, int directions,
                                          ConnectionKind kind, const Vec* base) {
    const int d = geometry.dim();
    const Vec x0 = base ? *base : Vec::Zero(d);
    const Frame f0 = orthonormal_frame(geometry.metric, x0);

    // Reference curvature at the base point in frame indices.
    const CurvatureData r0 = curvature(geometry, x0, kind);

    // Jointly integrate the Levi-Civita geodesic and D-parallel frame along it.
    auto shoot = [&](const Vec& u) {
        const int steps = 80;
        const double dt = 1.0 / steps;
        Vec x = x0;
        Vec v = f0.frame * u;  // initial velocity from the base orthonormal frame
        Mat f = f0.frame;      // transported frame, columns f_b

        auto rhs = [&](const Vec& xs, const Vec& vs, const Mat& fs) {
            const Tensor3 gamma = christoffel(geometry.metric, xs);
            Vec dv = Vec::Zero(d);
            for (int k = 0; k < d; ++k) dv[k] = -vs.dot(gamma[k] * vs);
            const Tensor3 a = coordinate_connection(geometry, xs, kind);
            Mat df = Mat::Zero(d, d);
            for (int m = 0; m < d; ++m) df -= vs[m] * (a[m] * fs);
            return std::make_tuple(vs, dv, df);
        };

        for (int s = 0; s < steps; ++s) {
            auto [k1x, k1v, k1f] = rhs(x, v, f);
            auto [k2x, k2v, k2f] = rhs(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, f + 0.5 * dt * k1f);
            auto [k3x, k3v, k3f] = rhs(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, f + 0.5 * dt * k2f);
            auto [k4x, k4v, k4f] = rhs(x + dt * k3x, v + dt * k3v, f + dt * k3f);
            x += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
            v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
            f += dt / 6.0 * (k1f + 2 * k2f + 2 * k3f + k4f);
        }
        return std::make_pair(x, f);
    };

    // Pulled-back connection coefficients at normal coordinate u by central
    // differences of position and transported frame over u.
    auto pulled_back_gamma = [&](const Vec& u) {
        const double delta = 1e-4 * std::max(1.0, u.norm());
        const auto center = shoot(u);
        const Tensor3 a = coordinate_connection(geometry, center.first, kind);
        std::vector<Mat> gam(d);
        for (int i = 0; i < d; ++i) {
            Vec up = u, um = u;
            up[i] += delta; um[i] -= delta;
            const auto p = shoot(up);
            const auto m = shoot(um);
            const Vec vi = (p.first - m.first) / (2.0 * delta);     // dx/du^i
            const Mat dfi = (p.second - m.second) / (2.0 * delta);  // df/du^i
            Mat cov = dfi;
            for (int mm = 0; mm < d; ++mm) cov += vi[mm] * (a[mm] * center.second);
            gam[i] = center.second.inverse() * cov;
        }
        return gam;
    };

    std::mt19937_64 rng(12345);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<Vec> dirs;
    for (int t = 0; t < directions; ++t) {
        if (d == 2) {
            const double th = kTwoPi * t / directions;
            Vec u(2);
            u << std::cos(th), std::sin(th);
            dirs.push_back(u);
        } else {
            Vec u(d);
            for (int i = 0; i < d; ++i) u[i] = nd(rng);
            dirs.push_back(u.normalized());
        }
    }

    NormalCoordReport report;
    for (int lev = 0; lev < levels; ++lev) {
        const double r = radius / std::pow(2.0, lev);
        double worst = 0.0;
        for (const Vec& dir : dirs) {
            const Vec u = r * dir;
            const auto gam = pulled_back_gamma(u);
            for (int i = 0; i < d; ++i) {
                Mat expect = Mat::Zero(d, d);
                for (int j = 0; j < d; ++j)
                    for (int a = 0; a < d; ++a)
                        for (int b = 0; b < d; ++b)
                            expect(a, b) += 0.5 * r0.frame.at(i, j, a, b) * u[j];
                worst = std::max(worst, (gam[i] + expect).cwiseAbs().maxCoeff());
            }
        }
        report.radii.push_back(r);
        report.residuals.push_back(worst);
    }

    // Least-squares slope of log(residual) vs log(radius).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(report.radii.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(report.radii[i]);
        const double ly = std::log(std::max(report.residuals[i], 1e-300));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return report;
}

double metric_compatibility_residual(const GeometrySpec& geometry, const Vec& x) {
    const int d = geometry.dim();
    const Tensor3 a = coordinate_connection(geometry, x, ConnectionKind::Full);
    const double h = 1e-3;
    double worst = 0.0;
    for (int m = 0; m < d; ++m) {
        Vec xp = x, xpp = x, xm = x, xmm = x;
        xp[m] += h; xpp[m] += 2 * h; xm[m] -= h; xmm[m] -= 2 * h;
        const Mat dg = (8.0 * (geometry.metric.value(xp) - geometry.metric.value(xm)) -
                        (geometry.metric.value(xpp) - geometry.metric.value(xmm))) /
                       (12.0 * h);
        const Mat resid = dg - a[m].transpose() * geometry.metric.value(x) -
                          geometry.metric.value(x) * a[m];
        worst = std::max(worst, resid.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace gbc::geom
