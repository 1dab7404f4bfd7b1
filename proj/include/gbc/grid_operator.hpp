#pragma once

#include <Eigen/Sparse>

#include "gbc/clifford.hpp"
#include "gbc/curvature.hpp"

namespace gbc::hodge {

using geom::Mat;
using geom::Vec;
using SpMat = Eigen::SparseMatrix<std::complex<double>>;

// Uniform periodic grid over a periodic-box chart, n points per axis,
// lexicographic node enumeration (axis 0 fastest).
struct Grid {
    geom::ChartDomain chart;
    int n = 0;
    std::vector<double> h;

    static Grid make(const geom::ChartDomain& chart, int n);

    int dim() const { return chart.dim; }
    long nodes() const;
    double cell_volume() const;
    long index(const std::vector<int>& iv) const;  // wraps periodically
    std::vector<int> multi_index(long node) const;
    Vec point(long node) const;
    long shift(long node, int axis, int offset) const;
};

// Connection endomorphism on Lambda* fiber coefficients for a skew frame
// 1-form component w(a,b): the S-factor lift, the dual S*-factor lift, and
// their sum (the induced form-bundle connection sum_ab w_ab eps_a iota_b).
cliff::Matrix spin_lift_left(const Mat& w);    // -1/4 sum w_ab L_a L_b
cliff::Matrix spin_lift_right(const Mat& w);   // +1/4 sum w_ab R_a R_b
cliff::Matrix form_connection_endo(const Mat& w);

// Central first-derivative stencil used by the assembled operator. Order 16:
// anything coarser leaves a visible symbol error at the smallest heat times
// the default grids can resolve.
constexpr int kStencilHalfWidth = 8;
double stencil_coefficient(int m);  // coefficient of (f(x+mh) - f(x-mh)) / h

// Discrete Hodge-Dirac operator sum_a c(f^a) (e_a^k (d_k + Theta_k)) with
// high-order periodic central differences; fiber = Lambda*(R^d).
struct HeatOperator {
    Grid grid;
    int fiber = 0;
    SpMat dirac;
    Eigen::VectorXd weights;  // sqrt(det g) per node
    Eigen::VectorXd grading;  // (-1)^degree per fiber component
};

HeatOperator assemble_dirac(const geom::GeometrySpec& geometry, const Grid& grid,
                            geom::ConnectionKind kind = geom::ConnectionKind::Full,
                            long max_unknowns = 32768);

}  // namespace gbc::hodge
