#pragma once

#include <Eigen/Dense>

#include "gbc/clifford.hpp"

namespace gbc::cliff {

// Real antisymmetric d x d matrix; storage keeps the strict upper triangle so
// antisymmetry is exact by construction.
class SkewMatrix {
public:
    explicit SkewMatrix(int dim);
    static SkewMatrix from_dense(const Eigen::MatrixXd& a, double tol = 1e-12);

    int dim() const { return dim_; }
    double operator()(int i, int j) const;  // 0-based
    void set(int i, int j, double v);       // sets (i,j) and -(j,i)
    Eigen::MatrixXd dense() const;

private:
    int dim_;
    std::vector<double> upper_;  // row-major strict upper triangle
};

// Pfaffian by the signed perfect-matching recursion (expansion along the
// first remaining row). Exact combinatorics, O(d!!) terms; fine for d <= 8.
double pfaffian(const SkewMatrix& a);

// Independent route: T(exp_wedge(omega_A)) with omega_A = 1/2 sum A_ij e^i^e^j.
double pfaffian_berezin(const SkewMatrix& a);

// Curvature component array R_{i j n m}, antisymmetric in (i,j) and (n,m);
// all indices 0-based frame indices in {0..d-1}.
class CurvatureArray {
public:
    explicit CurvatureArray(int dim);
    int dim() const { return dim_; }
    double& at(int i, int j, int n, int m);
    double at(int i, int j, int n, int m) const;
    // Throws if the (i,j) or (n,m) antisymmetry is violated beyond tol.
    void check_symmetries(double tol = 1e-12) const;

    // Pfaffian of the 2-form-valued skew matrix Omega_{ab} = 1/2 R_{ij a b} e^i^e^j,
    // evaluated through the Berezin integral (top-form coefficient).
    double pfaffian_form() const;

private:
    int dim_;
    std::vector<double> data_;
};

struct LadderReport {
    std::vector<cplx> power_supertrace;  // Str(M^m / m!) for m = 1..l
    double pf_value = 0.0;               // Pfaffian route on the same array
    double max_lower_power_abs = 0.0;    // max |Str(M^m/m!)|, m < l
    double top_rel_error = 0.0;          // |Str(M^l/l!) - pf| / max(1,|pf|)
};

// Supertrace ladder: M = -1/16 sum R_{ijnm} c(e^i)c(e^j)c*(e^m)c*(e^n) acting
// on Lambda*(R^d) through DoubleCliffordRep. Powers m < l have vanishing
// supertrace and the l-th power closes to the Pfaffian route.
LadderReport ladder_supertrace(const CurvatureArray& r);

}  // namespace gbc::cliff
