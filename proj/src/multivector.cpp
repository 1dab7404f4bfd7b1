#include "gbc/multivector.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace gbc::cliff {

namespace {
void check_dim(int dim) {
    if (dim < 2 || dim > 8 || dim % 2 != 0)
        throw std::invalid_argument("dim must be even, 2 <= dim <= 8, got " +
                                    std::to_string(dim));
}
}  // namespace

Multivector::Multivector(int dim) : dim_(dim) {
    check_dim(dim);
    coeffs_.assign(std::size_t{1} << dim, cplx{0.0, 0.0});
}

Multivector Multivector::scalar(int dim, cplx value) {
    Multivector m(dim);
    m.coeffs_[0] = value;
    return m;
}

Multivector Multivector::basis(int dim, std::initializer_list<int> indices) {
    std::uint32_t mask = 0;
    int prev = 0;
    for (int i : indices) {
        if (i < 1 || i > dim) throw std::invalid_argument("basis index out of range");
        if (i <= prev) throw std::invalid_argument("basis indices must increase");
        mask |= 1u << (i - 1);
        prev = i;
    }
    return basis_mask(dim, mask);
}

Multivector Multivector::basis_mask(int dim, std::uint32_t mask, cplx coeff) {
    Multivector m(dim);
    if (mask >= m.coeffs_.size()) throw std::invalid_argument("mask out of range");
    m.coeffs_[mask] = coeff;
    return m;
}

Multivector Multivector::covector(int dim, int i) { return basis(dim, {i}); }

Multivector Multivector::grade_part(int k) const {
    Multivector out(dim_);
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m)
        if (popcount(m) == k) out.coeffs_[m] = coeffs_[m];
    return out;
}

bool Multivector::is_grade(int k, double tol) const {
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m)
        if (popcount(m) != k && std::abs(coeffs_[m]) > tol) return false;
    return true;
}

double Multivector::norm() const {
    double s = 0.0;
    for (const cplx& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

Multivector& Multivector::operator+=(const Multivector& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dim mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dim mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Multivector& Multivector::operator*=(cplx s) {
    for (cplx& c : coeffs_) c *= s;
    return *this;
}

std::string Multivector::dump() const {
    std::ostringstream os;
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m) {
        if (coeffs_[m] == cplx{0.0, 0.0}) continue;
        os << "(" << coeffs_[m].real() << "," << coeffs_[m].imag() << ")";
        if (m != 0) {
            os << "*";
            bool first = true;
            for (int i = 0; i < dim_; ++i)
                if (m & (1u << i)) {
                    if (!first) os << "^";
                    os << "e" << (i + 1);
                    first = false;
                }
        }
        os << "\n";
    }
    return os.str();
}

int popcount(std::uint32_t m) { return std::popcount(m); }

int merge_sign(std::uint32_t a, std::uint32_t b) {
    // Count pairs (i in a, j in b) with i > j.
    int swaps = 0;
    for (int j = 0; j < 32; ++j)
        if (b & (1u << j)) swaps += popcount(a >> (j + 1));
    return (swaps % 2 == 0) ? 1 : -1;
}

Multivector wedge(const Multivector& u, const Multivector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("dim mismatch");
    Multivector out(u.dim());
    const std::uint32_t n = static_cast<std::uint32_t>(u.size());
    for (std::uint32_t a = 0; a < n; ++a) {
        if (u[a] == cplx{0.0, 0.0}) continue;
        for (std::uint32_t b = 0; b < n; ++b) {
            if (a & b) continue;  // repeated generator
            if (v[b] == cplx{0.0, 0.0}) continue;
            out[a | b] += static_cast<double>(merge_sign(a, b)) * u[a] * v[b];
        }
    }
    return out;
}

Multivector interior(const Multivector& covector, const Multivector& v) {
    if (covector.dim() != v.dim()) throw std::invalid_argument("dim mismatch");
    if (!covector.is_grade(1))
        throw std::invalid_argument("interior: first argument must be pure grade 1");
    Multivector out(v.dim());
    for (int i = 0; i < v.dim(); ++i) {
        const std::uint32_t bit = 1u << i;
        const cplx w = covector[bit];
        if (w == cplx{0.0, 0.0}) continue;
        for (std::uint32_t m = 0; m < v.size(); ++m) {
            if (!(m & bit)) continue;
            if (v[m] == cplx{0.0, 0.0}) continue;
            // Sign: (-1)^{#indices below i present in m}.
            const int below = popcount(m & (bit - 1));
            const double s = (below % 2 == 0) ? 1.0 : -1.0;
            out[m & ~bit] += s * w * v[m];
        }
    }
    return out;
}

cplx berezin(const Multivector& v) {
    return v[static_cast<std::uint32_t>(v.size()) - 1];
}

}  // namespace gbc::cliff
