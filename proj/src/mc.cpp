#include "gbc/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace gbc::sde {

namespace {

using cliff::Matrix;
using cplx = std::complex<double>;

// SplitMix64 counter generator; the stream for a path is a pure function of
// (seed, path), so ensembles are reproducible regardless of scheduling.
struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return ((next() >> 11) + 0.5) * 0x1.0p-53; }
};

SplitMix path_stream(std::uint64_t seed, long path) {
    SplitMix mix{seed};
    mix.s ^= mix.next() + 0x632be59bd9b4e019ull * (static_cast<std::uint64_t>(path) + 1);
    return mix;
}

struct PointCoeffs {
    Mat sigma;
    Vec half_b;      // 1/2 b^i
    Vec strat_corr;  // 1/2 sigma^j_k d_j sigma^i_k (Ito-Stratonovich shift)
    Vec a_vec;       // torsion vector part as a coordinate vector field
    std::vector<Matrix> conn;
    Matrix pot;
    bool trivial = false;  // exactly zero connection and potential (flat case)
};

Vec torsion_vector(const geom::GeometrySpec& geometry, const Vec& x) {
    const int d = geometry.dim();
    Vec a = Vec::Zero(d);
    if (geometry.contorsion.is_zero()) return a;
    const geom::TorsionDecomposition td = geom::dirac_decompose(geometry, x);
    const geom::Frame fr = geom::orthonormal_frame(geometry.metric, x);
    for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c) a[i] += td.a[1u << c].real() * fr.frame(i, c);
    return a;
}

PointCoeffs eval_point(const SdeSpec& spec, const Vec& x) {
    const int d = spec.dim();
    PointCoeffs pc;
    pc.sigma = spec.sigma(x);
    pc.half_b = 0.5 * spec.drift_b(x);
    pc.a_vec = torsion_vector(spec.geometry, x);
    pc.strat_corr = Vec::Zero(d);
    const double h = spec.geometry.metric.fd_step();
    for (int j = 0; j < d; ++j) {
        Vec xp = x, xpp = x, xm = x, xmm = x;
        xp[j] += h; xpp[j] += 2 * h; xm[j] -= h; xmm[j] -= 2 * h;
        const Mat ds = (8.0 * (spec.sigma(xp) - spec.sigma(xm)) -
                        (spec.sigma(xpp) - spec.sigma(xmm))) / (12.0 * h);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                pc.strat_corr[i] += 0.5 * pc.sigma(j, k) * ds(i, k);
    }
    const hodge::LemmaCoefficients lc = hodge::lemma_coefficients(spec.geometry, x);
    pc.conn = lc.connection;
    pc.pot = lc.potential;
    pc.trivial = pc.pot.norm() == 0.0;
    for (const Matrix& c : pc.conn) pc.trivial = pc.trivial && c.norm() == 0.0;
    return pc;
}

// Coefficients sampled on a periodic grid with multilinear interpolation;
// exact pointwise evaluation is far too slow inside the path loop. Falls back
// to direct evaluation off periodic charts or in higher dimension.
class CoefficientField {
public:
    CoefficientField(const SdeSpec& spec) : spec_(spec) {
        const auto& chart = spec.geometry.chart;
        tabulated_ = chart.kind == geom::ChartDomain::Kind::PeriodicBox && spec.dim() == 2;
        if (!tabulated_) return;
        n_ = 48;
        h_.resize(2);
        for (int i = 0; i < 2; ++i) h_[i] = chart.lengths[i] / n_;
        table_.reserve(static_cast<std::size_t>(n_) * n_);
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < n_; ++i) {
                Vec x(2);
                x[0] = i * h_[0];
                x[1] = j * h_[1];
                table_.push_back(eval_point(spec_, x));
            }
    }

    PointCoeffs operator()(const Vec& x) const {
        if (!tabulated_) return eval_point(spec_, x);
        double u = x[0] / h_[0], v = x[1] / h_[1];
        const double fu = std::floor(u), fv = std::floor(v);
        const double au = u - fu, av = v - fv;
        const int i0 = wrap(static_cast<long>(fu)), i1 = wrap(static_cast<long>(fu) + 1);
        const int j0 = wrap(static_cast<long>(fv)), j1 = wrap(static_cast<long>(fv) + 1);
        const double w00 = (1 - au) * (1 - av), w10 = au * (1 - av);
        const double w01 = (1 - au) * av, w11 = au * av;
        const PointCoeffs& a = table_[j0 * n_ + i0];
        const PointCoeffs& b = table_[j0 * n_ + i1];
        const PointCoeffs& c = table_[j1 * n_ + i0];
        const PointCoeffs& e = table_[j1 * n_ + i1];
        PointCoeffs out;
        out.sigma = w00 * a.sigma + w10 * b.sigma + w01 * c.sigma + w11 * e.sigma;
        out.half_b = w00 * a.half_b + w10 * b.half_b + w01 * c.half_b + w11 * e.half_b;
        out.strat_corr = w00 * a.strat_corr + w10 * b.strat_corr + w01 * c.strat_corr +
                         w11 * e.strat_corr;
        out.a_vec = w00 * a.a_vec + w10 * b.a_vec + w01 * c.a_vec + w11 * e.a_vec;
        out.trivial = a.trivial && b.trivial && c.trivial && e.trivial;
        out.conn.resize(2);
        for (int i = 0; i < 2; ++i)
            out.conn[i] = w00 * a.conn[i] + w10 * b.conn[i] + w01 * c.conn[i] + w11 * e.conn[i];
        out.pot = w00 * a.pot + w10 * b.pot + w01 * c.pot + w11 * e.pot;
        return out;
    }

private:
    int wrap(long i) const {
        long m = i % n_;
        if (m < 0) m += n_;
        return static_cast<int>(m);
    }
    const SdeSpec& spec_;
    bool tabulated_ = false;
    int n_ = 0;
    std::vector<double> h_;
    std::vector<PointCoeffs> table_;
};

using CoeffFn = std::function<PointCoeffs(const Vec&)>;

// The small-parameter system of the asymptotic expansion lives in normal
// coordinates around the base point, with both frames radially parallel; only
// there do sigma(0) = 1 and C_i(0) = 0 hold, which is what makes
// X = eps w + O(eps^2) and e = 1 + O(eps^2). This field tabulates the
// pulled-back coefficients on a u-grid: one geodesic shot per node carrying
// the endomorphism transport, then grid differences for the Jacobian, the
// pulled-back metric and Christoffels, and the residual connection.
class NormalCoordField {
public:
    NormalCoordField(const SdeSpec& spec, const Vec& x0, const CoeffFn& ambient)
        : d_(spec.dim()) {
        if (d_ != 2) throw std::invalid_argument("normal-coordinate field: d == 2 only");
        const geom::Frame f0 = geom::orthonormal_frame(spec.geometry.metric, x0);
        const long nn = static_cast<long>(n_) * n_;
        std::vector<Vec> xs(nn);
        std::vector<Matrix> us(nn);
        std::vector<Mat> gs(nn);
        std::vector<Vec> as(nn);
        std::vector<Matrix> pots(nn);
        std::vector<std::vector<Matrix>> thetas(nn);

        // radial geodesic with the endomorphism connection transported along
        auto shoot = [&](const Vec& u) {
            const int steps = 24;
            const double ds = 1.0 / steps;
            Vec x = x0;
            Vec v = f0.frame * u;
            Matrix tr = Matrix::Identity(4, 4);
            auto rhs = [&](const Vec& xs_, const Vec& vs_, const Matrix& ts_) {
                const geom::Tensor3 gamma = geom::christoffel(spec.geometry.metric, xs_);
                Vec dv(d_);
                for (int k = 0; k < d_; ++k) dv[k] = -vs_.dot(gamma[k] * vs_);
                const PointCoeffs pc = ambient(xs_);
                Matrix dtr = Matrix::Zero(4, 4);
                for (int m = 0; m < d_; ++m) dtr -= vs_[m] * (pc.conn[m] * ts_);
                return std::make_tuple(vs_, dv, dtr);
            };
            for (int s = 0; s < steps; ++s) {
                auto [k1x, k1v, k1t] = rhs(x, v, tr);
                auto [k2x, k2v, k2t] =
                    rhs(x + 0.5 * ds * k1x, v + 0.5 * ds * k1v, tr + 0.5 * ds * k1t);
                auto [k3x, k3v, k3t] =
                    rhs(x + 0.5 * ds * k2x, v + 0.5 * ds * k2v, tr + 0.5 * ds * k2t);
                auto [k4x, k4v, k4t] = rhs(x + ds * k3x, v + ds * k3v, tr + ds * k3t);
                x += ds / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
                v += ds / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
                tr += ds / 6.0 * (k1t + 2 * k2t + 2 * k3t + k4t);
            }
            return std::make_pair(x, tr);
        };

        for (long q = 0; q < nn; ++q) {
            Vec u(2);
            u << coord(q % n_), coord(q / n_);
            auto [x, tr] = shoot(u);
            const PointCoeffs pc = ambient(x);
            xs[q] = x;
            us[q] = tr;
            gs[q] = spec.geometry.metric.value(x);
            as[q] = pc.a_vec;
            pots[q] = pc.pot;
            thetas[q] = pc.conn;
        }

        // first derivative pass over the u-grid: Jacobian dx/du, transport
        // derivative, pulled-back metric and sigma
        table_.resize(nn);
        std::vector<Mat> gtilde(nn, Mat::Zero(2, 2));
        auto fd_vec = [&](const std::vector<Vec>& t, long q, int dir) {
            const long s = dir == 0 ? 1 : n_;
            return (8.0 * (t[q + s] - t[q - s]) - (t[q + 2 * s] - t[q - 2 * s])) / (12.0 * h_);
        };
        auto fd_matc = [&](const std::vector<Matrix>& t, long q, int dir) {
            const long s = dir == 0 ? 1 : n_;
            return Matrix((8.0 * (t[q + s] - t[q - s]) - (t[q + 2 * s] - t[q - 2 * s])) /
                          (12.0 * h_));
        };
        for (int j = 2; j < n_ - 2; ++j)
            for (int i = 2; i < n_ - 2; ++i) {
                const long q = static_cast<long>(j) * n_ + i;
                Mat jac(2, 2);
                jac.col(0) = fd_vec(xs, q, 0);
                jac.col(1) = fd_vec(xs, q, 1);
                gtilde[q] = jac.transpose() * gs[q] * jac;
                PointCoeffs& pc = table_[q];
                Eigen::SelfAdjointEigenSolver<Mat> es(Mat(gtilde[q].inverse()));
                pc.sigma = es.operatorSqrt();
                pc.a_vec = jac.inverse() * as[q];
                const Matrix uinv = us[q].inverse();
                pc.pot = uinv * pots[q] * us[q];
                pc.conn.resize(2);
                for (int dir = 0; dir < 2; ++dir) {
                    Matrix c = fd_matc(us, q, dir);
                    for (int m = 0; m < 2; ++m) c += jac(m, dir) * (thetas[q][m] * us[q]);
                    pc.conn[dir] = uinv * c;
                }
            }

        // second pass: Christoffels of the pulled-back metric and the
        // Ito-Stratonovich shift from grid differences of sigma
        auto fd_mat = [&](auto&& get, long q, int dir) {
            const long s = dir == 0 ? 1 : n_;
            return Mat((8.0 * (get(q + s) - get(q - s)) - (get(q + 2 * s) - get(q - 2 * s))) /
                       (12.0 * h_));
        };
        margin_ = 4;
        for (int j = margin_; j < n_ - margin_; ++j)
            for (int i = margin_; i < n_ - margin_; ++i) {
                const long q = static_cast<long>(j) * n_ + i;
                PointCoeffs& pc = table_[q];
                std::vector<Mat> dg(2), dsig(2);
                for (int dir = 0; dir < 2; ++dir) {
                    dg[dir] = fd_mat([&](long r) { return gtilde[r]; }, q, dir);
                    dsig[dir] = fd_mat([&](long r) { return table_[r].sigma; }, q, dir);
                }
                const Mat ginv = gtilde[q].inverse();
                pc.half_b = pc.a_vec;
                for (int i2 = 0; i2 < 2; ++i2)
                    for (int l = 0; l < 2; ++l)
                        for (int s = 0; s < 2; ++s) {
                            double gam = 0.0;
                            for (int m = 0; m < 2; ++m)
                                gam += 0.5 * ginv(i2, m) *
                                       (dg[l](m, s) + dg[s](m, l) - dg[m](l, s));
                            pc.half_b[i2] -= 0.5 * ginv(l, s) * gam;
                        }
                pc.strat_corr = Vec::Zero(2);
                for (int jdir = 0; jdir < 2; ++jdir)
                    for (int i2 = 0; i2 < 2; ++i2)
                        for (int k = 0; k < 2; ++k)
                            pc.strat_corr[i2] += 0.5 * pc.sigma(jdir, k) * dsig[jdir](i2, k);
            }
    }

    PointCoeffs operator()(const Vec& u) const {
        const double lim = radius_ - margin_ * h_ - 1e-9;
        double a = std::clamp(u[0], -lim, lim) / h_ + (n_ - 1) / 2.0;
        double b = std::clamp(u[1], -lim, lim) / h_ + (n_ - 1) / 2.0;
        const int i0 = static_cast<int>(std::floor(a)), j0 = static_cast<int>(std::floor(b));
        const double au = a - i0, av = b - j0;
        auto mix = [&](auto&& proj) {
            return ((1 - au) * (1 - av) * proj(cell(i0, j0)) +
                    au * (1 - av) * proj(cell(i0 + 1, j0)) +
                    (1 - au) * av * proj(cell(i0, j0 + 1)) +
                    au * av * proj(cell(i0 + 1, j0 + 1)))
                .eval();  // evaluate before the operand temporaries go away
        };
        PointCoeffs out;
        out.sigma = mix([&](const PointCoeffs& p) { return p.sigma; });
        out.half_b = mix([&](const PointCoeffs& p) { return p.half_b; });
        out.strat_corr = mix([&](const PointCoeffs& p) { return p.strat_corr; });
        out.a_vec = mix([&](const PointCoeffs& p) { return p.a_vec; });
        out.pot = mix([&](const PointCoeffs& p) { return Matrix(p.pot); });
        out.conn.resize(2);
        for (int dir = 0; dir < 2; ++dir)
            out.conn[dir] = mix([&](const PointCoeffs& p) { return Matrix(p.conn[dir]); });
        return out;
    }

private:
    double coord(long idx) const { return -radius_ + idx * h_; }
    const PointCoeffs& cell(int i, int j) const {
        return table_[static_cast<long>(std::clamp(j, margin_, n_ - 1 - margin_)) * n_ +
                      std::clamp(i, margin_, n_ - 1 - margin_)];
    }
    int d_;
    int n_ = 51;
    double radius_ = 2.5;
    double h_ = 0.1;
    int margin_ = 4;
    std::vector<PointCoeffs> table_;
};

PathResult integrate_path(const SdeSpec& spec, const CoeffFn& field, const Vec& x0,
                          const std::vector<Vec>& dw, double dt, double eps) {
    const int d = spec.dim();
    const int fiber = 1 << d;
    const double eps2 = eps * eps;

    PathResult pr;
    pr.x = x0;
    pr.w = Vec::Zero(d);
    pr.levy = Mat::Zero(d, d);
    pr.e = Matrix::Identity(fiber, fiber);
    Matrix m = Matrix::Identity(fiber, fiber);

    auto xdot = [&](const PointCoeffs& pc, const Vec& inc) {
        return Vec(eps * (pc.sigma * inc) +
                   eps2 * dt * (spec.drift_sign * pc.half_b - pc.strat_corr));
    };

    for (const Vec& inc : dw) {
        const PointCoeffs p0 = field(pr.x);
        const Vec k1x = xdot(p0, inc);
        const Vec xp = pr.x + k1x;
        const PointCoeffs p1 = field(xp);
        const Vec k2x = xdot(p1, inc);
        const Vec xnew = pr.x + 0.5 * (k1x + k2x);

        if (p0.trivial && p1.trivial) {
            // flat fast path: e and M stay exactly at the identity
        } else {
            Matrix k1e = Matrix::Zero(fiber, fiber);
            for (int i = 0; i < d; ++i) k1e += k1x[i] * (pr.e * p0.conn[i]);
            const Matrix ep = pr.e + k1e;
            Matrix k2e = Matrix::Zero(fiber, fiber);
            for (int i = 0; i < d; ++i) k2e += k2x[i] * (ep * p1.conn[i]);
            const Matrix enew = pr.e + 0.5 * (k1e + k2e);

            // M by the exponential midpoint rule on the frozen coefficient
            const Matrix emid = 0.5 * (pr.e + enew);
            const Matrix emid_inv = emid.inverse();
            const double cond = emid.norm() * emid_inv.norm();
            pr.cond = std::max(pr.cond, cond);
            const PointCoeffs pmid = field(0.5 * (pr.x + xnew));
            m = m * ((-0.5 * eps2 * dt) * (emid * pmid.pot * emid_inv)).exp();
            pr.e = enew;
            if (cond > spec.cond_cap) pr.ok = false;
        }

        for (int k = 0; k < d; ++k)
            for (int mm = 0; mm < d; ++mm)
                pr.levy(k, mm) += (pr.w[k] + 0.5 * inc[k]) * inc[mm];
        pr.w += inc;
        pr.x = xnew;
    }
    pr.me = m * pr.e;
    return pr;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(xs.size());
    for (int i = 0; i < n; ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Mat SdeSpec::sigma(const Vec& x) const {
    const Mat ginv = geometry.metric.value(x).inverse();
    Eigen::SelfAdjointEigenSolver<Mat> es(ginv);
    if (es.info() != Eigen::Success) throw std::runtime_error("sigma: eigensolver failed");
    return es.operatorSqrt();
}

Vec SdeSpec::drift_b(const Vec& x) const {
    const int d = dim();
    const Mat ginv = geometry.metric.value(x).inverse();
    const geom::Tensor3 gamma = geom::christoffel(geometry.metric, x);
    Vec b = Vec::Zero(d);
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l)
            for (int s = 0; s < d; ++s) b[i] -= ginv(l, s) * gamma[i](l, s);
    b += 2.0 * torsion_vector(geometry, x);
    return b;
}

std::vector<cliff::Matrix> SdeSpec::connection(const Vec& x) const {
    return hodge::lemma_coefficients(geometry, x).connection;
}

cliff::Matrix SdeSpec::potential(const Vec& x) const {
    return hodge::lemma_coefficients(geometry, x).potential;
}

std::vector<Vec> driving_increments(unsigned long long seed, long path, int steps,
                                    int d, double dt) {
    SplitMix mix = path_stream(seed, path);
    const double scale = std::sqrt(dt);
    std::vector<Vec> out(steps, Vec::Zero(d));
    double spare = 0.0;
    bool have_spare = false;
    auto normal = [&]() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u = mix.uniform(), v = mix.uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        spare = r * std::sin(2.0 * M_PI * v);
        have_spare = true;
        return r * std::cos(2.0 * M_PI * v);
    };
    for (int s = 0; s < steps; ++s)
        for (int i = 0; i < d; ++i) out[s][i] = scale * normal();
    return out;
}

PathEnsemble simulate(const SdeSpec& spec, const Vec& x0, double t, long n,
                      unsigned long long seed, double epsilon) {
    if (t <= 0.0 || n < 1) throw std::invalid_argument("simulate: t > 0 and n >= 1");
    const CoefficientField field(spec);
    const CoeffFn fn = [&field](const Vec& x) { return field(x); };
    const double dt = t / spec.steps;

    PathEnsemble ens;
    ens.t = t;
    ens.epsilon = epsilon;
    ens.steps = spec.steps;
    ens.seed = seed;
    ens.paths.reserve(n);
    for (long p = 0; p < n; ++p) {
        const auto dw = driving_increments(seed, p, spec.steps, spec.dim(), dt);
        ens.paths.push_back(integrate_path(spec, fn, x0, dw, dt, epsilon));
        if (!ens.paths.back().ok) ++ens.excluded;
    }
    return ens;
}

struct PathIntegrator::Impl {
    SdeSpec spec;
    CoefficientField field;
    Impl(const SdeSpec& s) : spec(s), field(spec) {}
};

PathIntegrator::PathIntegrator(const SdeSpec& spec)
    : impl_(std::make_shared<Impl>(spec)) {}
PathIntegrator::~PathIntegrator() = default;

PathResult PathIntegrator::run(const Vec& x0, const std::vector<Vec>& dw, double dt,
                               double epsilon) const {
    const CoeffFn fn = [this](const Vec& x) { return impl_->field(x); };
    return integrate_path(impl_->spec, fn, x0, dw, dt, epsilon);
}

PathResult simulate_path(const SdeSpec& spec, const Vec& x0,
                         const std::vector<Vec>& dw, double dt, double epsilon) {
    return PathIntegrator(spec).run(x0, dw, dt, epsilon);
}

std::vector<Mat> levy_areas(const PathEnsemble& ensemble) {
    std::vector<Mat> out;
    out.reserve(ensemble.paths.size());
    for (const PathResult& p : ensemble.paths) out.push_back(p.levy);
    return out;
}

KernelEstimate heat_diag_mc(const SdeSpec& spec, double t, const Vec& x,
                            double bandwidth, long n, unsigned long long seed) {
    if (bandwidth <= 0.0) throw std::invalid_argument("heat_diag_mc: bandwidth > 0");
    const int d = spec.dim();
    const int fiber = 1 << d;
    const auto& chart = spec.geometry.chart;

    const PathEnsemble ens = simulate(spec, x, t, n, seed);

    auto mollifier = [&](const Vec& y) {
        double arg = 0.0;
        for (int i = 0; i < d; ++i) {
            double delta = y[i] - x[i];
            if (chart.kind == geom::ChartDomain::Kind::PeriodicBox) {
                const double L = chart.lengths[i];
                delta = std::remainder(delta, L);
            }
            arg += delta * delta;
        }
        const double norm = std::pow(2.0 * M_PI * bandwidth * bandwidth, -0.5 * d);
        return norm * std::exp(-arg / (2.0 * bandwidth * bandwidth));
    };

    constexpr int kBatches = 16;
    std::vector<Matrix> batch_mean(kBatches, Matrix::Zero(fiber, fiber));
    std::vector<long> batch_count(kBatches, 0);
    for (long p = 0; p < static_cast<long>(ens.paths.size()); ++p) {
        const PathResult& pr = ens.paths[p];
        if (!pr.ok) continue;
        const int b = static_cast<int>(p % kBatches);
        batch_mean[b] += mollifier(pr.x) * pr.me;
        ++batch_count[b];
    }
    int live = 0;
    for (int b = 0; b < kBatches; ++b)
        if (batch_count[b] > 0) {
            batch_mean[b] /= static_cast<double>(batch_count[b]);
            ++live;
        }
    if (live < kBatches) throw std::runtime_error("heat_diag_mc: empty batch");

    KernelEstimate est;
    est.bandwidth = bandwidth;
    est.n = n;
    est.batches = kBatches;
    est.excluded = ens.excluded;
    est.value = Matrix::Zero(fiber, fiber);
    for (const Matrix& bm : batch_mean) est.value += bm / kBatches;

    est.stderr_re = Eigen::MatrixXd::Zero(fiber, fiber);
    for (const Matrix& bm : batch_mean)
        est.stderr_re += (bm - est.value).real().cwiseAbs2();
    est.stderr_re = (est.stderr_re / (kBatches * (kBatches - 1.0))).cwiseSqrt();

    const auto& rep = cliff::DoubleCliffordRep::get(d);
    std::vector<double> strs(kBatches);
    for (int b = 0; b < kBatches; ++b) {
        const cplx s = rep.supertrace(batch_mean[b]);
        strs[b] = s.real();
        est.max_imag = std::max(est.max_imag, std::abs(s.imag()));
    }
    for (double s : strs) est.supertrace += s / kBatches;
    double var = 0.0;
    for (double s : strs) var += (s - est.supertrace) * (s - est.supertrace);
    est.supertrace_stderr = std::sqrt(var / (kBatches * (kBatches - 1.0)));
    est.max_imag = std::max(est.max_imag, est.value.imag().cwiseAbs().maxCoeff());
    return est;
}

OrderStudy epsilon_order_study(const SdeSpec& spec, const Vec& x0,
                               std::vector<double> epsilons, long n,
                               unsigned long long seed) {
    if (epsilons.size() < 2) throw std::invalid_argument("need at least two epsilons");
    const int d = spec.dim();
    const int fiber = 1 << d;
    const CoefficientField ambient(spec);
    const NormalCoordField field(spec, x0, [&ambient](const Vec& x) { return ambient(x); });
    const CoeffFn fn = [&field](const Vec& u) { return field(u); };
    const Vec origin = Vec::Zero(d);
    const double dt = 1.0 / spec.steps;

    OrderStudy study;
    study.epsilons = epsilons;
    study.x_residuals.assign(epsilons.size(), 0.0);
    study.e_residuals.assign(epsilons.size(), 0.0);
    const Matrix id = Matrix::Identity(fiber, fiber);
    for (long p = 0; p < n; ++p) {
        // coupled noise: one increment set shared by every epsilon
        const auto dw = driving_increments(seed, p, spec.steps, d, dt);
        Vec w1 = Vec::Zero(d);
        for (const Vec& inc : dw) w1 += inc;
        for (std::size_t i = 0; i < epsilons.size(); ++i) {
            const PathResult pr = integrate_path(spec, fn, origin, dw, dt, epsilons[i]);
            study.x_residuals[i] += (pr.x - epsilons[i] * w1).norm() / n;
            study.e_residuals[i] += (pr.e - id).norm() / n;
        }
    }

    std::vector<double> lx, ly, le;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        lx.push_back(std::log(epsilons[i]));
        ly.push_back(std::log(std::max(study.x_residuals[i], 1e-300)));
        le.push_back(std::log(std::max(study.e_residuals[i], 1e-300)));
    }
    study.x_slope = fit_slope(lx, ly);
    study.e_slope = fit_slope(lx, le);
    return study;
}

cliff::Matrix ladder_increment(const cliff::CurvatureArray& r_3b,
                               const cliff::CurvatureArray& r_full,
                               const cliff::Matrix& c0, const Mat& levy) {
    const int d = r_3b.dim();
    const auto& rep = cliff::DoubleCliffordRep::get(d);
    Matrix out = -0.5 * c0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double c1 = 0.0, c2 = 0.0;
            for (int m = 0; m < d; ++m)
                for (int k = 0; k < d; ++k) {
                    c1 += 0.125 * r_3b.at(m, k, i, j) * levy(k, m);
                    c2 += 0.125 * r_full.at(m, k, i, j) * levy(k, m);
                }
            if (c1 != 0.0) out += c1 * (rep.left[i] * rep.left[j]);
            // right multiplication reverses order: c*(g^i)c*(g^j) acts as R_j R_i
            if (c2 != 0.0) out += c2 * (rep.right[j] * rep.right[i]);
        }
    return out;
}

McLadderReport ladder_check_mc(const SdeSpec& spec, const Vec& x, double eps,
                               long n, unsigned long long seed) {
    const int d = spec.dim();
    const auto& rep = cliff::DoubleCliffordRep::get(d);
    const cliff::CurvatureArray r_3b =
        geom::curvature(spec.geometry, x, geom::ConnectionKind::ThreeB).frame;
    const geom::CurvatureData full = geom::curvature(spec.geometry, x);
    const Matrix c0 = spec.potential(x);
    const double dt = 1.0 / spec.steps;

    constexpr int kBatches = 16;
    std::vector<double> batch(kBatches, 0.0);
    std::vector<long> count(kBatches, 0);
    McLadderReport rep_out;
    for (long p = 0; p < n; ++p) {
        const auto dw = driving_increments(seed, p, spec.steps, d, dt);
        Vec w = Vec::Zero(d);
        Mat levy = Mat::Zero(d, d);
        for (const Vec& inc : dw) {
            for (int k = 0; k < d; ++k)
                for (int m = 0; m < d; ++m) levy(k, m) += (w[k] + 0.5 * inc[k]) * inc[m];
            w += inc;
        }
        const Matrix a1 = (eps * eps) * ladder_increment(r_3b, full.frame, c0, levy);
        const cplx str = rep.supertrace(a1) / (eps * eps);
        rep_out.max_imag = std::max(rep_out.max_imag, std::abs(str.imag()));
        batch[p % kBatches] += str.real();
        ++count[p % kBatches];
    }
    for (int b = 0; b < kBatches; ++b) {
        if (count[b] == 0) throw std::runtime_error("ladder_check_mc: empty batch");
        batch[b] /= count[b];
        rep_out.mean += batch[b] / kBatches;
    }
    double var = 0.0;
    for (double s : batch) var += (s - rep_out.mean) * (s - rep_out.mean);
    rep_out.stderr_ = std::sqrt(var / (kBatches * (kBatches - 1.0)));
    rep_out.reference = full.frame.pfaffian_form();
    rep_out.n = n;
    return rep_out;
}

}  // namespace gbc::sde
