#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace gbc::geom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct ChartDomain {
    enum class Kind { PeriodicBox, FullSpace };
    Kind kind = Kind::PeriodicBox;
    int dim = 2;
    std::vector<double> lengths;       // per-axis side lengths (periodic box)
    double perturbation_radius = std::numeric_limits<double>::infinity();

    static ChartDomain periodic_box(int dim, double side);
    static ChartDomain full_space(int dim, double radius);
    // Wrap a point into the fundamental box (periodic kind only).
    Vec wrap(Vec x) const;
};

// Metric field g(x) with first-derivative access. Presets carry analytic
// derivative closures; otherwise 4th-order central differences with step h.
class MetricField {
public:
    using ValueFn = std::function<Mat(const Vec&)>;
    using DerivFn = std::function<std::vector<Mat>(const Vec&)>;  // d_i g

    MetricField() = default;
    MetricField(ValueFn g, DerivFn dg = nullptr, double fd_step = 1e-3);

    Mat value(const Vec& x) const;
    std::vector<Mat> derivative(const Vec& x) const;
    double fd_step() const { return fd_step_; }

    // Symmetry and positive-definiteness check at a sample point.
    void validate_at(const Vec& x) const;

private:
    ValueFn g_;
    DerivFn dg_;
    double fd_step_ = 1e-3;
};

// Contorsion K_i(x): per coordinate 1-form index i, a skew matrix in the
// orthonormal frame indices (a,b). D = LeviCivita + K is then metric
// compatible by construction.
class ContorsionField {
public:
    using ValueFn = std::function<std::vector<Mat>(const Vec&)>;

    ContorsionField() = default;  // zero contorsion
    explicit ContorsionField(ValueFn k);

    bool is_zero() const { return !k_; }
    std::vector<Mat> value(const Vec& x, int dim) const;  // validates skewness

private:
    ValueFn k_;
};

struct GeometrySpec {
    std::string name;
    ChartDomain chart;
    MetricField metric;
    ContorsionField contorsion;

    // Optional analytic closure for the Euler form density against the
    // coordinate volume (reference for tests); null when unavailable.
    std::function<double(const Vec&)> analytic_euler_density;
    // d=2, zero-contorsion presets: analytic Gauss curvature.
    std::function<double(const Vec&)> analytic_gauss_curvature;

    int dim() const { return chart.dim; }
};

// Built-in geometries: "flat-torus", "conformal-torus", "stereographic-sphere",
// "torsion-torus", "conformal-4torus", "torsion-4torus".
GeometrySpec preset(const std::string& name, double amplitude = 0.3);
std::vector<std::string> preset_names();

}  // namespace gbc::geom
