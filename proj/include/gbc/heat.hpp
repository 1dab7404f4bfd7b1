#pragma once

#include "gbc/grid_operator.hpp"

namespace gbc::hodge {

// Applies e^{-t D^2 / 2} to a grid section by restarted Arnoldi
// exponential-times-vector with adaptive substeps.
Eigen::VectorXcd heat_apply(const HeatOperator& op, double t,
                            const Eigen::VectorXcd& v, double tol = 1e-9);

// Heat kernel diagonal fiber block h(t,x,x) at a grid node, as a density
// against the Riemannian volume (node volume weight divided out). The point
// source is projected onto the resolved Fourier band of the stencil, which
// keeps the unphysical high-frequency branch of the discrete symbol out of
// the diagonal.
Eigen::MatrixXcd heat_diag(const HeatOperator& op, double t, long node,
                           double tol = 1e-9);

struct SupertraceProfile {
    std::vector<double> ts;     // sorted decreasing
    std::vector<long> nodes;
    std::vector<std::vector<double>> density;  // [node][t], vs coordinate volume
    std::vector<double> extrapolated;          // linear-in-t model, two smallest t
    std::vector<double> reference;             // euler_form of the reference kind
    double max_imag = 0.0;
};

SupertraceProfile supertrace_profile(
    const HeatOperator& op, const geom::GeometrySpec& geometry,
    std::vector<double> ts, const std::vector<long>& sample_nodes,
    geom::ConnectionKind reference_kind = geom::ConnectionKind::Full,
    double tol = 1e-9);

// Global discrete supertrace tr(G e^{-t D^2 / 2}) per t value, via a dense
// eigendecomposition (small grids only).
std::vector<double> mckean_singer(const HeatOperator& op, const std::vector<double>& ts);

}  // namespace gbc::hodge
