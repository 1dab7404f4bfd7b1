#include "gbc/pfaffian.hpp"

#include <cmath>
#include <numeric>

namespace gbc::cliff {

SkewMatrix::SkewMatrix(int dim) : dim_(dim) {
    if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("SkewMatrix: dim must be even >= 2");
    upper_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

SkewMatrix SkewMatrix::from_dense(const Eigen::MatrixXd& a, double tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("SkewMatrix: not square");
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("SkewMatrix: antisymmetry violated");
    SkewMatrix s(static_cast<int>(a.rows()));
    for (int i = 0; i < s.dim_; ++i)
        for (int j = i + 1; j < s.dim_; ++j) s.set(i, j, a(i, j));
    return s;
}

double SkewMatrix::operator()(int i, int j) const {
    if (i == j) return 0.0;
    if (i < j) return upper_[static_cast<std::size_t>(i) * dim_ + j];
    return -upper_[static_cast<std::size_t>(j) * dim_ + i];
}

void SkewMatrix::set(int i, int j, double v) {
    if (i == j) {
        if (v != 0.0) throw std::invalid_argument("SkewMatrix: nonzero diagonal");
        return;
    }
    if (i > j) { std::swap(i, j); v = -v; }
    upper_[static_cast<std::size_t>(i) * dim_ + j] = v;
}

Eigen::MatrixXd SkewMatrix::dense() const {
    Eigen::MatrixXd m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

namespace {
double pf_recurse(const SkewMatrix& a, std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int i0 = idx[0];
    double sum = 0.0;
    double sign = 1.0;
    for (std::size_t t = 1; t < idx.size(); ++t) {
        const double aij = a(i0, idx[t]);
        if (aij != 0.0) {
            std::vector<int> rest;
            rest.reserve(idx.size() - 2);
            for (std::size_t s = 1; s < idx.size(); ++s)
                if (s != t) rest.push_back(idx[s]);
            sum += sign * aij * pf_recurse(a, rest);
        }
        sign = -sign;
    }
    return sum;
}
}  // namespace

double pfaffian(const SkewMatrix& a) {
    std::vector<int> idx(a.dim());
    std::iota(idx.begin(), idx.end(), 0);
    return pf_recurse(a, idx);
}

double pfaffian_berezin(const SkewMatrix& a) {
    const int d = a.dim();
    const int l = d / 2;
    Multivector omega(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            omega[(1u << i) | (1u << j)] = a(i, j);
    // exp_wedge(omega): only the l-th power reaches the top form.
    Multivector power = Multivector::scalar(d, 1.0);
    double fact = 1.0;
    for (int k = 1; k <= l; ++k) {
        power = wedge(power, omega);
        fact *= k;
    }
    return (berezin(power) / fact).real();
}

CurvatureArray::CurvatureArray(int dim) : dim_(dim) {
    if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("CurvatureArray: dim must be even");
    data_.assign(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0);
}

double& CurvatureArray::at(int i, int j, int n, int m) {
    return data_[((static_cast<std::size_t>(i) * dim_ + j) * dim_ + n) * dim_ + m];
}

double CurvatureArray::at(int i, int j, int n, int m) const {
    return data_[((static_cast<std::size_t>(i) * dim_ + j) * dim_ + n) * dim_ + m];
}

void CurvatureArray::check_symmetries(double tol) const {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int n = 0; n < dim_; ++n)
                for (int m = 0; m < dim_; ++m) {
                    if (std::abs(at(i, j, n, m) + at(j, i, n, m)) > tol)
                        throw std::invalid_argument("CurvatureArray: (i,j) antisymmetry violated");
                    if (std::abs(at(i, j, n, m) + at(i, j, m, n)) > tol)
                        throw std::invalid_argument("CurvatureArray: (n,m) antisymmetry violated");
                }
}

namespace {
Multivector pf_form_recurse(const CurvatureArray& r,
                            const std::vector<Multivector>& omega_rows,
                            std::vector<int>& idx) {
    const int d = r.dim();
    if (idx.empty()) return Multivector::scalar(d, 1.0);
    const int a0 = idx[0];
    Multivector sum(d);
    double sign = 1.0;
    for (std::size_t t = 1; t < idx.size(); ++t) {
        std::vector<int> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t s = 1; s < idx.size(); ++s)
            if (s != t) rest.push_back(idx[s]);
        const Multivector& entry = omega_rows[static_cast<std::size_t>(a0) * d + idx[t]];
        sum += sign * wedge(entry, pf_form_recurse(r, omega_rows, rest));
        sign = -sign;
    }
    return sum;
}
}  // namespace

double CurvatureArray::pfaffian_form() const {
    const int d = dim_;
    // Omega_{ab} = sum_{i<j} R_{ijab} e^i ^ e^j
    std::vector<Multivector> omega(static_cast<std::size_t>(d) * d, Multivector(d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Multivector& w = omega[static_cast<std::size_t>(a) * d + b];
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j)
                    w[(1u << i) | (1u << j)] = at(i, j, a, b);
        }
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    return berezin(pf_form_recurse(*this, omega, idx)).real();
}

LadderReport ladder_supertrace(const CurvatureArray& r) {
    r.check_symmetries(1e-10);
    const int d = r.dim();
    const int l = d / 2;
    const DoubleCliffordRep& rep = DoubleCliffordRep::get(d);
    const int n = 1 << d;

    // M = -1/16 sum R_{ijnm} c(e^i)c(e^j) c*(e^m)c*(e^n); the right-action
    // monomial c*(e^m)c*(e^n) maps to right[n]*right[m].
    Matrix m_op = Matrix::Zero(n, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            const Matrix lij = rep.left[i] * rep.left[j];
            for (int nn = 0; nn < d; ++nn)
                for (int mm = 0; mm < d; ++mm) {
                    if (nn == mm) continue;
                    const double c = r.at(i, j, nn, mm);
                    if (c == 0.0) continue;
                    m_op += (-c / 16.0) * lij * rep.right[nn] * rep.right[mm];
                }
        }

    LadderReport report;
    Matrix power = Matrix::Identity(n, n);
    double fact = 1.0;
    for (int m = 1; m <= l; ++m) {
        power = power * m_op;
        fact *= m;
        report.power_supertrace.push_back(rep.supertrace(power) / fact);
    }
    for (int m = 0; m + 1 < l; ++m)
        report.max_lower_power_abs =
            std::max(report.max_lower_power_abs, std::abs(report.power_supertrace[m]));
    report.pf_value = r.pfaffian_form();
    const cplx top = report.power_supertrace.back();
    report.top_rel_error =
        std::abs(top - report.pf_value) / std::max(1.0, std::abs(report.pf_value));
    return report;
}

}  // namespace gbc::cliff
