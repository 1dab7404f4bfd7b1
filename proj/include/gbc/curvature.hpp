#pragma once

#include "gbc/geometry.hpp"
#include "gbc/multivector.hpp"
#include "gbc/pfaffian.hpp"

namespace gbc::geom {

using Tensor3 = std::vector<Mat>;  // one matrix per leading index

// Orthonormal frame at a point from the Cholesky factorization g = L L^T:
// coframe rows f^a_i = (L^T)_{a i}, frame columns e_a = coframe^{-1}.
struct Frame {
    Mat coframe;  // rows are the coframe covectors f^a
    Mat frame;    // columns are the frame vectors e_a
};
Frame orthonormal_frame(const MetricField& metric, const Vec& x);
// d(frame)/dx^i in closed form from dg via the Cholesky differential.
std::vector<Frame> frame_derivative(const MetricField& metric, const Vec& x);

// Levi-Civita Christoffel symbols Gamma^s_{il}; out[s](i,l).
Tensor3 christoffel(const MetricField& metric, const Vec& x);

// Spin connection 1-form in the orthonormal frame: omega[i](a,b) with
// D_{d_i} e_b = omega[i](a,b) e_a; skew in (a,b). `contorsion` may be empty.
Tensor3 spin_connection(const GeometrySpec& geometry, const Vec& x);
Tensor3 levi_civita_spin_connection(const MetricField& metric, const Vec& x);

enum class ConnectionKind { LeviCivita, Full, ThreeB };
// Connection 1-form of the requested kind (ThreeB keeps only the 3-form part
// of the contorsion, entering through the Dirac decomposition).
Tensor3 connection_form(const GeometrySpec& geometry, const Vec& x, ConnectionKind kind);

struct CurvatureData {
    int dim = 0;
    // Curvature with coordinate 2-form indices: coord[m][k](a,b).
    std::vector<std::vector<Mat>> coord;
    // All-frame-index components R_{cd a b} (2-form indices converted).
    cliff::CurvatureArray frame{2};
    // Torsion T^a_{mk}: torsion[a](m,k), coordinate 2-form indices.
    Tensor3 torsion;
    double scalar = 0.0;  // Levi-Civita scalar curvature

    CurvatureData() = default;
};

// Curvature (d omega + omega ^ omega), torsion (first structure equation) and
// the Levi-Civita scalar curvature at x. Derivatives of the connection form
// use 4th-order central differences with the metric's step.
CurvatureData curvature(const GeometrySpec& geometry, const Vec& x,
                        ConnectionKind kind = ConnectionKind::Full);

struct TorsionDecomposition {
    cliff::Multivector a;  // grade 1
    cliff::Multivector b;  // grade 3
    double off_grade_residual = 0.0;
};

// Unique (a, B) with c(e^i) 1/4 K_{iab} c(e^a) c(e^b) = c(a) + c(B); frame
// components. Throws if residual outside grades {1,3} exceeds 1e-12.
TorsionDecomposition dirac_decompose(const GeometrySpec& geometry, const Vec& x);

// Fully antisymmetric tensor beta_{ijs} with sum_i c_i beta_{ijs} c_j c_s = c(B).
Tensor3 three_form_tensor(const cliff::Multivector& b);

// Euler form density against the coordinate volume:
// Pf(Omega)/(2 pi)^l * sqrt(det g), Omega the frame curvature 2-form of the
// chosen connection. For d=2, K=0 this is K_gauss sqrt(g) / (2 pi).
double euler_form(const GeometrySpec& geometry, const Vec& x,
                  ConnectionKind kind = ConnectionKind::Full);

// Quadrature of euler_form over a periodic box chart.
double euler_characteristic(const GeometrySpec& geometry, int points_per_axis = 24,
                            ConnectionKind kind = ConnectionKind::Full);

struct NormalCoordReport {
    std::vector<double> radii;
    std::vector<double> residuals;  // max over sampled directions
    double slope = 0.0;             // log-log fit of residual vs radius
};

// Residual of the radial-gauge expansion of the pulled-back connection in
// normal coordinates: max |Gamma_i(u) + 1/2 R(d_i, d_j)(0) u^j| over spheres
// of shrinking radius. `kind` selects the transported connection.
NormalCoordReport normal_coordinate_check(const GeometrySpec& geometry,
                                          double radius, int levels = 4,
                                          int directions = 8,
                                          ConnectionKind kind = ConnectionKind::Full,
                                          const Vec* base = nullptr);

// Residual of metric compatibility D g = 0 via finite differences of g.
double metric_compatibility_residual(const GeometrySpec& geometry, const Vec& x);

}  // namespace gbc::geom
