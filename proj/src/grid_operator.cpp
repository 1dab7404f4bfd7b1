#include "gbc/grid_operator.hpp"

#include <stdexcept>

namespace gbc::hodge {

Grid Grid::make(const geom::ChartDomain& chart, int n) {
    if (chart.kind != geom::ChartDomain::Kind::PeriodicBox)
        throw std::invalid_argument("grid requires a periodic-box chart");
    // below 8 points the wide stencil wraps onto itself; the folded operator
    // is still an antisymmetric circulant derivative, which is all the
    // structural identities (McKean-Singer) need, but accuracy-sensitive
    // routes should stay at n >= 8
    if (n < 3) throw std::invalid_argument("grid needs at least 3 points per axis");
    Grid g;
    g.chart = chart;
    g.n = n;
    g.h.resize(chart.dim);
    for (int i = 0; i < chart.dim; ++i) g.h[i] = chart.lengths[i] / n;
    return g;
}

long Grid::nodes() const {
    long total = 1;
    for (int i = 0; i < dim(); ++i) total *= n;
    return total;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (double hi : h) v *= hi;
    return v;
}

long Grid::index(const std::vector<int>& iv) const {
    long idx = 0;
    for (int i = dim() - 1; i >= 0; --i) {
        int c = iv[i] % n;
        if (c < 0) c += n;
        idx = idx * n + c;
    }
    return idx;
}

std::vector<int> Grid::multi_index(long node) const {
    std::vector<int> iv(dim());
    for (int i = 0; i < dim(); ++i) {
        iv[i] = static_cast<int>(node % n);
        node /= n;
    }
    return iv;
}

Vec Grid::point(long node) const {
    const std::vector<int> iv = multi_index(node);
    Vec x(dim());
    for (int i = 0; i < dim(); ++i) x[i] = iv[i] * h[i];
    return x;
}

long Grid::shift(long node, int axis, int offset) const {
    long stride = 1;
    for (int i = 0; i < axis; ++i) stride *= n;
    const long along = (node / stride) % n;
    long moved = (along + offset) % n;
    if (moved < 0) moved += n;
    return node + (moved - along) * stride;
}

double stencil_coefficient(int m) {
    // central antisymmetric stencil of order 2M, M = kStencilHalfWidth:
    // c_m = (-1)^{m+1} (M!)^2 / (m (M-m)! (M+m)!)
    constexpr int M = kStencilHalfWidth;
    if (m < 1 || m > M) throw std::invalid_argument("stencil offset out of range");
    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    const double mag = fact(M) * fact(M) / (m * fact(M - m) * fact(M + m));
    return (m % 2 == 1) ? mag : -mag;
}

cliff::Matrix spin_lift_left(const Mat& w) {
    const int d = static_cast<int>(w.rows());
    const auto& rep = cliff::DoubleCliffordRep::get(d);
    cliff::Matrix out = cliff::Matrix::Zero(1 << d, 1 << d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (w(a, b) != 0.0) out -= 0.25 * w(a, b) * (rep.left[a] * rep.left[b]);
    return out;
}

cliff::Matrix spin_lift_right(const Mat& w) {
    const int d = static_cast<int>(w.rows());
    const auto& rep = cliff::DoubleCliffordRep::get(d);
    cliff::Matrix out = cliff::Matrix::Zero(1 << d, 1 << d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (w(a, b) != 0.0) out += 0.25 * w(a, b) * (rep.right[a] * rep.right[b]);
    return out;
}

cliff::Matrix form_connection_endo(const Mat& w) {
    const int d = static_cast<int>(w.rows());
    const auto& rep = cliff::DoubleCliffordRep::get(d);
    cliff::Matrix out = cliff::Matrix::Zero(1 << d, 1 << d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (w(a, b) != 0.0) out += w(a, b) * (rep.eps[a] * rep.iota[b]);
    return out;
}

HeatOperator assemble_dirac(const geom::GeometrySpec& geometry, const Grid& grid,
                            geom::ConnectionKind kind, long max_unknowns) {
    const int d = grid.dim();
    if (d % 2 != 0) throw std::invalid_argument("even dimension required");
    const int fiber = 1 << d;
    const long nodes = grid.nodes();
    if (fiber * nodes > max_unknowns)
        throw std::invalid_argument("grid exceeds the fiber*nodes memory cap");

    const auto& rep = cliff::DoubleCliffordRep::get(d);

    HeatOperator op;
    op.grid = grid;
    op.fiber = fiber;
    op.weights.resize(nodes);
    op.grading.resize(fiber);
    for (int j = 0; j < fiber; ++j) op.grading[j] = rep.grading(j, j).real();

    std::vector<Eigen::Triplet<std::complex<double>>> trips;
    trips.reserve(static_cast<std::size_t>(nodes) * fiber *
                  (fiber + 2 * kStencilHalfWidth * d * d));

    auto add_block = [&](long row_node, long col_node, const cliff::Matrix& blk) {
        for (int r = 0; r < fiber; ++r)
            for (int c = 0; c < fiber; ++c)
                if (blk(r, c) != std::complex<double>(0.0))
                    trips.emplace_back(row_node * fiber + r, col_node * fiber + c, blk(r, c));
    };

    for (long node = 0; node < nodes; ++node) {
        const Vec x = grid.point(node);
        const geom::Frame fr = geom::orthonormal_frame(geometry.metric, x);
        const geom::Tensor3 omega = geom::connection_form(geometry, x, kind);
        op.weights[node] = std::sqrt(geometry.metric.value(x).determinant());

        cliff::Matrix zero_order = cliff::Matrix::Zero(fiber, fiber);
        for (int k = 0; k < d; ++k) {
            cliff::Matrix pk = cliff::Matrix::Zero(fiber, fiber);
            for (int a = 0; a < d; ++a)
                if (fr.frame(k, a) != 0.0) pk += fr.frame(k, a) * rep.left[a];
            zero_order += pk * form_connection_endo(omega[k]);

            // high-order central difference along axis k; a low-order symbol
            // distorts the heat kernel at the smallest resolvable times
            for (int m = 1; m <= kStencilHalfWidth; ++m) {
                const double c = stencil_coefficient(m) / grid.h[k];
                add_block(node, grid.shift(node, k, +m), c * pk);
                add_block(node, grid.shift(node, k, -m), -c * pk);
            }
        }
        add_block(node, node, zero_order);
    }

    op.dirac.resize(nodes * fiber, nodes * fiber);
    op.dirac.setFromTriplets(trips.begin(), trips.end());
    op.dirac.makeCompressed();
    return op;
}

}  // namespace gbc::hodge
