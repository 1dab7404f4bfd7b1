#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbc::cliff {

using cplx = std::complex<double>;

// Element of the exterior algebra Lambda*(R^d), d even, d <= 8.
// Coefficients are stored per subset of {1..d}; bit (i-1) of the index mask
// set means e^i is present. Basis monomials are read with increasing indices.
class Multivector {
public:
    explicit Multivector(int dim);

    static Multivector scalar(int dim, cplx value);
    // e^{i1} ^ e^{i2} ^ ... with strictly increasing 1-based indices.
    static Multivector basis(int dim, std::initializer_list<int> indices);
    static Multivector basis_mask(int dim, std::uint32_t mask, cplx coeff = 1.0);
    // e^i as a grade-1 element.
    static Multivector covector(int dim, int i);

    int dim() const { return dim_; }
    std::size_t size() const { return coeffs_.size(); }

    cplx& operator[](std::uint32_t mask) { return coeffs_[mask]; }
    const cplx& operator[](std::uint32_t mask) const { return coeffs_[mask]; }

    Multivector grade_part(int k) const;
    bool is_grade(int k, double tol = 0.0) const;
    double norm() const;

    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    Multivector& operator*=(cplx s);

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(cplx s, Multivector a) { return a *= s; }

    // One term per line, "(<re>,<im>)*e^{i1}^e^{i2}..." for golden-file tests.
    std::string dump() const;

private:
    int dim_;
    std::vector<cplx> coeffs_;
};

int popcount(std::uint32_t m);

// Sign of moving every generator of `b` past the generators of `a` that
// exceed it (the merge sign of the concatenated monomial e_A e_B).
int merge_sign(std::uint32_t a, std::uint32_t b);

Multivector wedge(const Multivector& u, const Multivector& v);

// Interior product by a grade-1 covector; grade-lowering antiderivation with
// iota(e^i) e^j = delta^{ij}. Throws if `covector` is not pure grade 1.
Multivector interior(const Multivector& covector, const Multivector& v);

// Coefficient of the top monomial e^1 ^ ... ^ e^d.
cplx berezin(const Multivector& v);

}  // namespace gbc::cliff
