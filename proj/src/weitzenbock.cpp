#include "gbc/weitzenbock.hpp"

#include <cmath>
#include <random>

namespace gbc::hodge {

namespace {

using Eigen::VectorXcd;
using cliff::Matrix;
using cplx = std::complex<double>;

// Coefficient conventions of the potential C; the finite-difference identity
// check below is the arbiter for these.
constexpr double kCF = 1.0;   // sign of c(F)
constexpr double kCdB = 1.0;  // sign of c(dB)
constexpr double kCDa = 1.0;  // sign of c(D-hat a)
constexpr double kB2 = 2.0;   // coefficient of -|B|^2
constexpr double kA2 = 1.0;   // coefficient of -|a|^2

struct NodeData {
    Mat frame, coframe, ginv;
    geom::Tensor3 omega_full, omega_3b;
    cliff::CurvatureArray r_full{2};
    double scalar = 0.0;
    double a2 = 0.0, b2 = 0.0;
    Vec a_frame, drift;     // drift^m = 2 sum_c a_c e_c^m
    Mat da_frame;           // (D-hat a)_{cd}
    std::vector<std::pair<std::uint32_t, double>> db;  // grade-4 coefficients
    Vec gamma_contract;     // g^{mn} Gamma-hat^k_{mn}
};

// Fully antisymmetric coordinate components of the frame 3-form b, flattened
// d^3 row-major.
std::vector<double> three_form_coord(const cliff::Multivector& b, const Mat& coframe) {
    const int d = b.dim();
    std::vector<double> full(d * d * d, 0.0);
    auto set_perms = [&](int a, int bb, int c, double v) {
        const int p[6][3] = {{a, bb, c}, {bb, c, a}, {c, a, bb},
                             {bb, a, c}, {a, c, bb}, {c, bb, a}};
        const double s[6] = {1, 1, 1, -1, -1, -1};
        for (int q = 0; q < 6; ++q)
            full[(p[q][0] * d + p[q][1]) * d + p[q][2]] += s[q] * v;
    };
    for (int a = 0; a < d; ++a)
        for (int bb = a + 1; bb < d; ++bb)
            for (int c = bb + 1; c < d; ++c) {
                const double v = b[(1u << a) | (1u << bb) | (1u << c)].real();
                if (v != 0.0) set_perms(a, bb, c, v);
            }
    std::vector<double> coord(d * d * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double sum = 0.0;
                for (int a = 0; a < d; ++a)
                    for (int bb = 0; bb < d; ++bb)
                        for (int c = 0; c < d; ++c) {
                            const double v = full[(a * d + bb) * d + c];
                            if (v != 0.0)
                                sum += v * coframe(a, i) * coframe(bb, j) * coframe(c, k);
                        }
                coord[(i * d + j) * d + k] = sum;
            }
    return coord;
}

// (a_k, B_ijk) in coordinate components at x; zero when the contorsion is.
void ab_coord(const geom::GeometrySpec& g, const Vec& x, Vec& a_out,
              std::vector<double>& b_out) {
    const int d = g.dim();
    a_out = Vec::Zero(d);
    b_out.assign(d * d * d, 0.0);
    if (g.contorsion.is_zero()) return;
    const geom::TorsionDecomposition td = geom::dirac_decompose(g, x);
    const geom::Frame fr = geom::orthonormal_frame(g.metric, x);
    for (int k = 0; k < d; ++k)
        for (int c = 0; c < d; ++c)
            a_out[k] += td.a[1u << c].real() * fr.coframe(c, k);
    b_out = three_form_coord(td.b, fr.coframe);
}

NodeData make_node_data(const geom::GeometrySpec& g, const Vec& x) {
    const int d = g.dim();
    NodeData nd;
    const geom::Frame fr = geom::orthonormal_frame(g.metric, x);
    nd.frame = fr.frame;
    nd.coframe = fr.coframe;
    nd.ginv = g.metric.value(x).inverse();

    const geom::Tensor3 gamma = geom::christoffel(g.metric, x);
    nd.gamma_contract = Vec::Zero(d);
    for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) nd.gamma_contract[k] += nd.ginv(m, n) * gamma[k](m, n);

    nd.omega_full = geom::connection_form(g, x, geom::ConnectionKind::Full);
    nd.omega_3b = geom::connection_form(g, x, geom::ConnectionKind::ThreeB);

    const geom::CurvatureData cd = geom::curvature(g, x, geom::ConnectionKind::Full);
    nd.r_full = cd.frame;
    nd.scalar = cd.scalar;

    nd.a_frame = Vec::Zero(d);
    nd.drift = Vec::Zero(d);
    nd.da_frame = Mat::Zero(d, d);
    if (!g.contorsion.is_zero()) {
        const geom::TorsionDecomposition td = geom::dirac_decompose(g, x);
        for (int c = 0; c < d; ++c) nd.a_frame[c] = td.a[1u << c].real();
        nd.a2 = nd.a_frame.squaredNorm();
        for (int a = 0; a < d; ++a)
            for (int bb = a + 1; bb < d; ++bb)
                for (int c = bb + 1; c < d; ++c) {
                    const double v = td.b[(1u << a) | (1u << bb) | (1u << c)].real();
                    nd.b2 += v * v;
                }
        for (int m = 0; m < d; ++m)
            for (int c = 0; c < d; ++c) nd.drift[m] += 2.0 * nd.a_frame[c] * nd.frame(m, c);

        // 4th-order differences of the coordinate a and B fields
        const double h = g.metric.fd_step();
        const int dd = d * d * d;
        std::vector<Vec> da_coord(d);
        std::vector<std::vector<double>> db_coord(d);
        for (int m = 0; m < d; ++m) {
            Vec xp = x, xpp = x, xm = x, xmm = x;
            xp[m] += h; xpp[m] += 2 * h; xm[m] -= h; xmm[m] -= 2 * h;
            Vec ap, app, am, amm;
            std::vector<double> bp, bpp, bm, bmm;
            ab_coord(g, xp, ap, bp);
            ab_coord(g, xpp, app, bpp);
            ab_coord(g, xm, am, bm);
            ab_coord(g, xmm, amm, bmm);
            da_coord[m] = (8.0 * (ap - am) - (app - amm)) / (12.0 * h);
            db_coord[m].resize(dd);
            for (int q = 0; q < dd; ++q)
                db_coord[m][q] = (8.0 * (bp[q] - bm[q]) - (bpp[q] - bmm[q])) / (12.0 * h);
        }

        // (D-hat a)_{cd} = e_c^m e_d^k (d_m a_k - Gamma^s_{mk} a_s)
        Vec a_coord0;
        std::vector<double> b_coord0;
        ab_coord(g, x, a_coord0, b_coord0);
        Mat cov = Mat::Zero(d, d);
        for (int m = 0; m < d; ++m)
            for (int k = 0; k < d; ++k) {
                cov(m, k) = da_coord[m][k];
                for (int s = 0; s < d; ++s) cov(m, k) -= gamma[s](m, k) * a_coord0[s];
            }
        for (int c = 0; c < d; ++c)
            for (int e = 0; e < d; ++e)
                for (int m = 0; m < d; ++m)
                    for (int k = 0; k < d; ++k)
                        nd.da_frame(c, e) += nd.frame(m, c) * nd.frame(k, e) * cov(m, k);

        // exterior derivative (dB)_{mijk}, then frame components
        auto bc = [&](int i, int j, int k) { return (i * d + j) * d + k; };
        for (int a = 0; a < d; ++a)
            for (int bb = a + 1; bb < d; ++bb)
                for (int c = bb + 1; c < d; ++c)
                    for (int e = c + 1; e < d; ++e) {
                        double sum = 0.0;
                        for (int m = 0; m < d; ++m)
                            for (int i = 0; i < d; ++i)
                                for (int j = 0; j < d; ++j)
                                    for (int k = 0; k < d; ++k) {
                                        const double v = db_coord[m][bc(i, j, k)] -
                                                         db_coord[i][bc(m, j, k)] +
                                                         db_coord[j][bc(m, i, k)] -
                                                         db_coord[k][bc(m, i, j)];
                                        if (v != 0.0)
                                            sum += v * nd.frame(m, a) * nd.frame(i, bb) *
                                                   nd.frame(j, c) * nd.frame(k, e);
                                    }
                        if (sum != 0.0)
                            nd.db.emplace_back(
                                (1u << a) | (1u << bb) | (1u << c) | (1u << e), sum);
                    }
    }
    return nd;
}

struct Tables {
    std::vector<Matrix> ll, rr;  // d*d products L_a L_b, R_a R_b
    int d = 0;
    explicit Tables(int dim) : d(dim) {
        const auto& rep = cliff::DoubleCliffordRep::get(dim);
        ll.resize(dim * dim);
        rr.resize(dim * dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                ll[a * dim + b] = rep.left[a] * rep.left[b];
                rr[a * dim + b] = rep.right[a] * rep.right[b];
            }
    }
};

Matrix lift_left(const Tables& tb, const Mat& w) {
    const int f = 1 << tb.d;
    Matrix out = Matrix::Zero(f, f);
    for (int a = 0; a < tb.d; ++a)
        for (int b = 0; b < tb.d; ++b)
            if (w(a, b) != 0.0) out -= 0.25 * w(a, b) * tb.ll[a * tb.d + b];
    return out;
}

Matrix lift_right(const Tables& tb, const Mat& w) {
    const int f = 1 << tb.d;
    Matrix out = Matrix::Zero(f, f);
    for (int a = 0; a < tb.d; ++a)
        for (int b = 0; b < tb.d; ++b)
            if (w(a, b) != 0.0) out += 0.25 * w(a, b) * tb.rr[a * tb.d + b];
    return out;
}

Matrix potential_endo(const Tables& tb, const NodeData& nd) {
    const int d = tb.d;
    const int f = 1 << d;
    Matrix c = (nd.scalar / 4.0 - kB2 * nd.b2 - kA2 * nd.a2) * Matrix::Identity(f, f);
    // c(F) = 1/8 R_{ijnm} L_i L_j R_n R_m, F the dual-factor twist curvature
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int n = 0; n < d; ++n)
                for (int m = n + 1; m < d; ++m) {
                    const double r = nd.r_full.at(i, j, n, m);
                    if (r != 0.0)
                        c += (kCF * 0.5 * r) * (tb.ll[i * d + j] * tb.rr[n * d + m]);
                }
    for (int cc = 0; cc < d; ++cc)
        for (int e = 0; e < d; ++e)
            if (nd.da_frame(cc, e) != 0.0)
                c += (kCDa * nd.da_frame(cc, e)) * tb.ll[cc * d + e];
    if (!nd.db.empty()) {
        cliff::Multivector mv(d);
        for (const auto& [mask, v] : nd.db) mv[mask] = v;
        c += kCdB * cliff::DoubleCliffordRep::get(d).rep_left(cliff::quantize(mv));
    }
    return c;
}

class FieldOps {
public:
    FieldOps(const geom::GeometrySpec& g, const Grid& grid)
        : grid_(grid), tables_(grid.dim()), fiber_(1 << grid.dim()) {
        const long nodes = grid.nodes();
        data_.reserve(nodes);
        for (long node = 0; node < nodes; ++node)
            data_.push_back(make_node_data(g, grid.point(node)));
    }

    int fiber() const { return fiber_; }
    long size() const { return grid_.nodes() * fiber_; }
    const Grid& grid() const { return grid_; }

    VectorXcd deriv(const VectorXcd& u, int axis) const {
        const long nodes = grid_.nodes();
        const double c1 = 8.0 / (12.0 * grid_.h[axis]);
        const double c2 = 1.0 / (12.0 * grid_.h[axis]);
        VectorXcd out(u.size());
        for (long node = 0; node < nodes; ++node) {
            const long p1 = grid_.shift(node, axis, +1), m1 = grid_.shift(node, axis, -1);
            const long p2 = grid_.shift(node, axis, +2), m2 = grid_.shift(node, axis, -2);
            out.segment(node * fiber_, fiber_) =
                c1 * (u.segment(p1 * fiber_, fiber_) - u.segment(m1 * fiber_, fiber_)) -
                c2 * (u.segment(p2 * fiber_, fiber_) - u.segment(m2 * fiber_, fiber_));
        }
        return out;
    }

    VectorXcd apply_dirac(const VectorXcd& u) const {
        const int d = grid_.dim();
        const auto& rep = cliff::DoubleCliffordRep::get(d);
        std::vector<VectorXcd> w(d);
        for (int k = 0; k < d; ++k) w[k] = deriv(u, k);
        VectorXcd out = VectorXcd::Zero(u.size());
        for (long node = 0; node < grid_.nodes(); ++node) {
            const NodeData& nd = data_[node];
            Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(fiber_);
            const auto uloc = u.segment(node * fiber_, fiber_);
            for (int k = 0; k < d; ++k) {
                const Matrix theta = lift_left(tables_, nd.omega_full[k]) +
                                     lift_right(tables_, nd.omega_full[k]);
                Eigen::VectorXcd v = w[k].segment(node * fiber_, fiber_) + theta * uloc;
                for (int a = 0; a < d; ++a)
                    if (nd.frame(k, a) != 0.0) acc += nd.frame(k, a) * (rep.left[a] * v);
            }
            out.segment(node * fiber_, fiber_) = acc;
        }
        return out;
    }

    // D^{3B}_m u for every coordinate direction m
    std::vector<VectorXcd> apply_3b(const VectorXcd& u) const {
        const int d = grid_.dim();
        std::vector<VectorXcd> v(d);
        for (int m = 0; m < d; ++m) v[m] = deriv(u, m);
        for (long node = 0; node < grid_.nodes(); ++node) {
            const NodeData& nd = data_[node];
            const auto uloc = u.segment(node * fiber_, fiber_);
            for (int m = 0; m < d; ++m) {
                const Matrix theta = lift_left(tables_, nd.omega_3b[m]) +
                                     lift_right(tables_, nd.omega_full[m]);
                v[m].segment(node * fiber_, fiber_) += theta * uloc;
            }
        }
        return v;
    }

    VectorXcd rhs(const VectorXcd& u) const {
        const int d = grid_.dim();
        const std::vector<VectorXcd> v = apply_3b(u);
        std::vector<std::vector<VectorXcd>> dv(d);
        for (int m = 0; m < d; ++m) {
            dv[m].resize(d);
            for (int n = 0; n < d; ++n) dv[m][n] = deriv(v[n], m);
        }
        VectorXcd out(u.size());
        for (long node = 0; node < grid_.nodes(); ++node) {
            const NodeData& nd = data_[node];
            const auto uloc = u.segment(node * fiber_, fiber_);
            Eigen::VectorXcd lap = Eigen::VectorXcd::Zero(fiber_);
            for (int m = 0; m < d; ++m) {
                const Matrix theta = lift_left(tables_, nd.omega_3b[m]) +
                                     lift_right(tables_, nd.omega_full[m]);
                for (int n = 0; n < d; ++n)
                    if (nd.ginv(m, n) != 0.0)
                        lap += nd.ginv(m, n) * (dv[m][n].segment(node * fiber_, fiber_) +
                                                theta * v[n].segment(node * fiber_, fiber_));
            }
            for (int k = 0; k < d; ++k)
                lap -= nd.gamma_contract[k] * v[k].segment(node * fiber_, fiber_);
            Eigen::VectorXcd acc = -lap + potential_endo(tables_, nd) * uloc;
            for (int m = 0; m < d; ++m)
                if (nd.drift[m] != 0.0) acc -= nd.drift[m] * v[m].segment(node * fiber_, fiber_);
            out.segment(node * fiber_, fiber_) = acc;
        }
        return out;
    }

private:
    Grid grid_;
    Tables tables_;
    int fiber_;
    std::vector<NodeData> data_;
};

}  // namespace

LemmaCoefficients lemma_coefficients(const geom::GeometrySpec& geometry, const Vec& x) {
    const int d = geometry.dim();
    const Tables tb(d);
    const NodeData nd = make_node_data(geometry, x);
    LemmaCoefficients out;
    out.connection.reserve(d);
    for (int i = 0; i < d; ++i)
        out.connection.push_back(lift_left(tb, nd.omega_3b[i]) +
                                 lift_right(tb, nd.omega_full[i]));
    out.potential = potential_endo(tb, nd);
    return out;
}

WeitzenbockReport weitzenbock_check(const geom::GeometrySpec& geometry,
                                    const std::vector<int>& grid_sizes, int trials,
                                    unsigned seed) {
    const int d = geometry.dim();
    const int fiber = 1 << d;

    // band-limited test sections, fixed across grid sizes
    struct Mode {
        int comp;
        Vec k;
        cplx amp;
    };
    std::vector<std::vector<Mode>> sections(trials);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ki(-2, 2);
    std::uniform_int_distribution<int> ci(0, fiber - 1);
    std::uniform_real_distribution<double> ar(-1.0, 1.0);
    for (int t = 0; t < trials; ++t)
        for (int m = 0; m < 6; ++m) {
            Mode mode;
            mode.comp = ci(rng);
            mode.k = Vec(d);
            for (int i = 0; i < d; ++i) mode.k[i] = ki(rng);
            mode.amp = cplx(ar(rng), ar(rng));
            sections[t].push_back(mode);
        }

    WeitzenbockReport report;
    for (int n : grid_sizes) {
        const Grid grid = Grid::make(geometry.chart, n);
        const FieldOps ops(geometry, grid);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            VectorXcd u = VectorXcd::Zero(ops.size());
            for (long node = 0; node < grid.nodes(); ++node) {
                const Vec x = grid.point(node);
                for (const Mode& mode : sections[t])
                    u[node * fiber + mode.comp] +=
                        mode.amp * std::exp(cplx(0.0, mode.k.dot(x)));
            }
            const VectorXcd lhs = ops.apply_dirac(ops.apply_dirac(u));
            const VectorXcd rhs = ops.rhs(u);
            const double scale = lhs.cwiseAbs().maxCoeff();
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, scale));
        }
        report.grid_sizes.push_back(n);
        report.residuals.push_back(worst);
    }

    // log-log slope of residual vs spacing
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int cnt = static_cast<int>(grid_sizes.size());
    for (int i = 0; i < cnt; ++i) {
        const double lx = std::log(geometry.chart.lengths[0] / grid_sizes[i]);
        const double ly = std::log(std::max(report.residuals[i], 1e-300));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    if (cnt >= 2) report.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return report;
}

}  // namespace gbc::hodge
