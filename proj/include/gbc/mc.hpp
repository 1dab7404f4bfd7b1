#pragma once

#include <memory>

#include "gbc/pfaffian.hpp"
#include "gbc/weitzenbock.hpp"

namespace gbc::sde {

using geom::Mat;
using geom::Vec;

// Coefficients of the stochastic system (X, e, M): diffusion sigma (symmetric
// square root of g^{-1}), drift b^i = -g^{ls} Gamma-hat^i_{ls} + 2(a, e^i),
// connection endomorphisms C_i, and the potential C.
struct SdeSpec {
    geom::GeometrySpec geometry;
    int steps = 200;
    double drift_sign = 1.0;  // switch for the drift contrast experiment
    double cond_cap = 1e8;    // e(t) conditioning beyond this excludes the path

    int dim() const { return geometry.dim(); }
    Mat sigma(const Vec& x) const;
    Vec drift_b(const Vec& x) const;
    std::vector<cliff::Matrix> connection(const Vec& x) const;
    cliff::Matrix potential(const Vec& x) const;
};

struct PathResult {
    Vec x, w;              // X(t) and the driving Brownian value w(t)
    Mat levy;              // levy(k,m) = int_0^t w^k o dw^m (midpoint rule)
    cliff::Matrix e, me;   // transport e(t) and the product M(t) e(t)
    double cond = 1.0;     // worst observed conditioning of e
    bool ok = true;
};

struct PathEnsemble {
    double t = 0.0;
    double epsilon = 1.0;
    int steps = 0;
    unsigned long long seed = 0;
    std::vector<PathResult> paths;  // excluded paths retained with ok = false
    long excluded = 0;
};

// Gaussian increments driving one path; counter-based, so path streams are
// independent of simulation order and worker count.
std::vector<Vec> driving_increments(unsigned long long seed, long path, int steps,
                                    int d, double dt);

// Stratonovich Heun integration of the coupled system from x0. epsilon = 1 is
// the plain system run to time t; epsilon < 1 runs the rescaled system
// (noise scaled by epsilon, drift and potential by epsilon^2).
PathEnsemble simulate(const SdeSpec& spec, const Vec& x0, double t, long n,
                      unsigned long long seed, double epsilon = 1.0);

// One path from explicit driving increments; building block for refinement
// and concatenation checks on frozen noise.
PathResult simulate_path(const SdeSpec& spec, const Vec& x0,
                         const std::vector<Vec>& dw, double dt, double epsilon = 1.0);

// Holds the tabulated coefficient field so repeated frozen-noise runs do not
// rebuild it.
class PathIntegrator {
public:
    explicit PathIntegrator(const SdeSpec& spec);
    ~PathIntegrator();
    PathResult run(const Vec& x0, const std::vector<Vec>& dw, double dt,
                   double epsilon = 1.0) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Per-path iterated integrals L_{km} collected from an ensemble.
std::vector<Mat> levy_areas(const PathEnsemble& ensemble);

struct KernelEstimate {
    cliff::Matrix value;        // mollified fiber endomorphism estimate
    Eigen::MatrixXd stderr_re;  // entrywise batch standard error (real part)
    double supertrace = 0.0;
    double supertrace_stderr = 0.0;
    double max_imag = 0.0;
    double bandwidth = 0.0;
    long n = 0;
    int batches = 0;
    long excluded = 0;
};

// Monte Carlo heat kernel diagonal E[M(t) e(t) delta_x(X(t))] with the delta
// replaced by a periodic Gaussian mollifier of the given bandwidth.
KernelEstimate heat_diag_mc(const SdeSpec& spec, double t, const Vec& x,
                            double bandwidth, long n, unsigned long long seed);

struct OrderStudy {
    std::vector<double> epsilons;
    std::vector<double> x_residuals;  // E |X^eps(1) - eps w(1)|
    std::vector<double> e_residuals;  // E |e^eps(1) - 1|
    double x_slope = 0.0;
    double e_slope = 0.0;
};

// Coupled-noise scaling study: the same driving increments are reused for
// every epsilon, and the residual orders are fitted log-log. The rescaled
// system is integrated in normal coordinates around x0 with radially parallel
// frames, where the expansion X = eps w + O(eps^2), e = 1 + O(eps^2) holds.
// Two-dimensional geometries only.
OrderStudy epsilon_order_study(const SdeSpec& spec, const Vec& x0,
                               std::vector<double> epsilons, long n,
                               unsigned long long seed);

// Leading-order ladder increment built from frozen curvature data and one
// path's Levy areas:
//   C~ = C^1_ij c(f^i)c(f^j) (x) 1 + 1 (x) C^2_ij c*(g^i)c*(g^j) - C(0)/2,
//   C^1_ij = 1/8 R^{3B}_{mkij} L_{km},  C^2_ij = 1/8 R_{mkij} L_{km}.
cliff::Matrix ladder_increment(const cliff::CurvatureArray& r_3b,
                               const cliff::CurvatureArray& r_full,
                               const cliff::Matrix& c0, const Mat& levy);

struct McLadderReport {
    double mean = 0.0;       // E[Str(A_1)] / eps^2
    double stderr_ = 0.0;
    double reference = 0.0;  // Pfaffian route at the same point
    double max_imag = 0.0;
    long n = 0;
};

// Supertrace of the first ladder term over sampled Brownian paths, against
// the Pfaffian of the curvature at x.
McLadderReport ladder_check_mc(const SdeSpec& spec, const Vec& x, double eps,
                               long n, unsigned long long seed);

}  // namespace gbc::sde
