#pragma once

#include <Eigen/Dense>

#include "gbc/multivector.hpp"

namespace gbc::cliff {

using Matrix = Eigen::MatrixXcd;

// Element of the complexified Clifford algebra Cl(R^d) with the convention
// c(e^i)c(e^j) + c(e^j)c(e^i) = -2 delta^{ij}, i.e. c(e^i)^2 = -1.
// Storage mirrors Multivector: coefficient per increasing monomial
// c(e^{i1})...c(e^{ik}).
class CliffordElement {
public:
    explicit CliffordElement(int dim);

    static CliffordElement scalar(int dim, cplx value);
    static CliffordElement generator(int dim, int i);  // c(e^i)
    static CliffordElement basis_mask(int dim, std::uint32_t mask, cplx coeff = 1.0);

    int dim() const { return dim_; }
    std::size_t size() const { return coeffs_.size(); }
    cplx& operator[](std::uint32_t mask) { return coeffs_[mask]; }
    const cplx& operator[](std::uint32_t mask) const { return coeffs_[mask]; }
    double norm() const;

    CliffordElement& operator+=(const CliffordElement& o);
    CliffordElement& operator-=(const CliffordElement& o);
    CliffordElement& operator*=(cplx s);
    friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
    friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
    friend CliffordElement operator*(cplx s, CliffordElement a) { return a *= s; }

    std::string dump() const;

private:
    int dim_;
    std::vector<cplx> coeffs_;
};

CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b);

// Coefficientwise identifications between increasing monomials of the two
// algebras; mutually inverse linear bijections (the symbol map and its
// quantization inverse).
CliffordElement quantize(const Multivector& v);
Multivector symbol(const CliffordElement& a);

// Gamma = i^l c(e^1)...c(e^d), squares to 1.
CliffordElement chirality(int dim);

// Concrete 2^l-dimensional representation of Cl(R^d) (tensor-product
// recursion from the d=2 base case), with the chirality matrix.
struct SpinorRep {
    int dim = 0;
    int l = 0;
    std::vector<Matrix> gamma;  // gamma_i gamma_j + gamma_j gamma_i = -2 delta I
    Matrix chirality_matrix;

    static const SpinorRep& get(int dim);  // cached per dim
    Matrix represent(const CliffordElement& a) const;
};

// Left/right Clifford actions on the 2^d coefficient space of Lambda*(R^d):
// left(i) = eps(e^i) - iota(e^i), right(i) = eps(e^i) + iota(e^i).
// Right multiplication is order-reversing, so rep_right maps the monomial
// c*(e^{i1})...c*(e^{ik}) to right(ik)...right(i1).
struct DoubleCliffordRep {
    int dim = 0;
    std::vector<Matrix> eps, iota, left, right;
    Matrix grading;  // (-1)^{degree}

    static const DoubleCliffordRep& get(int dim);
    Matrix rep_left(const CliffordElement& a) const;
    Matrix rep_right(const CliffordElement& b) const;
    cplx supertrace(const Matrix& m) const;  // tr(grading * m)
};

// Str(a) = tr(Gamma rho(a)) in the spinor representation.
cplx supertrace_gamma(const CliffordElement& a);
// Str(a) = (-2i)^l T(sigma(a)); agrees with supertrace_gamma.
cplx supertrace_berezin(const CliffordElement& a);
// Dual-factor supertrace Str(b) = (2i)^l T(sigma(b)) for c* elements.
cplx supertrace_berezin_dual(const CliffordElement& b);
// Str(a (x) b) = Str(a) * Str_dual(b); equals the grading-weighted trace of
// rep_left(a) rep_right(b).
cplx supertrace_product(const CliffordElement& a, const CliffordElement& b);

}  // namespace gbc::cliff
