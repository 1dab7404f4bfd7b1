#include "gbc/clifford.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace gbc::cliff {

namespace {
const cplx I{0.0, 1.0};

cplx ipow(int k) {  // i^k
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}
}  // namespace

CliffordElement::CliffordElement(int dim) : dim_(dim) {
    if (dim < 2 || dim > 8 || dim % 2 != 0)
        throw std::invalid_argument("dim must be even, 2 <= dim <= 8");
    coeffs_.assign(std::size_t{1} << dim, cplx{0.0, 0.0});
}

CliffordElement CliffordElement::scalar(int dim, cplx value) {
    CliffordElement a(dim);
    a.coeffs_[0] = value;
    return a;
}

CliffordElement CliffordElement::generator(int dim, int i) {
    if (i < 1 || i > dim) throw std::invalid_argument("generator index out of range");
    return basis_mask(dim, 1u << (i - 1));
}

CliffordElement CliffordElement::basis_mask(int dim, std::uint32_t mask, cplx coeff) {
    CliffordElement a(dim);
    if (mask >= a.coeffs_.size()) throw std::invalid_argument("mask out of range");
    a.coeffs_[mask] = coeff;
    return a;
}

double CliffordElement::norm() const {
    double s = 0.0;
    for (const cplx& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dim mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dim mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CliffordElement& CliffordElement::operator*=(cplx s) {
    for (cplx& c : coeffs_) c *= s;
    return *this;
}

std::string CliffordElement::dump() const {
    std::ostringstream os;
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m) {
        if (coeffs_[m] == cplx{0.0, 0.0}) continue;
        os << "(" << coeffs_[m].real() << "," << coeffs_[m].imag() << ")";
        for (int i = 0; i < dim_; ++i)
            if (m & (1u << i)) os << "*c" << (i + 1);
        os << "\n";
    }
    return os.str();
}

CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dim mismatch");
    CliffordElement out(a.dim());
    const std::uint32_t n = static_cast<std::uint32_t>(a.size());
    for (std::uint32_t ma = 0; ma < n; ++ma) {
        if (a[ma] == cplx{0.0, 0.0}) continue;
        for (std::uint32_t mb = 0; mb < n; ++mb) {
            if (b[mb] == cplx{0.0, 0.0}) continue;
            // e_A e_B = merge_sign * (-1)^{|A ∩ B|} e_{A xor B}
            // (each repeated generator contributes c(e^i)^2 = -1).
            double s = static_cast<double>(merge_sign(ma, mb));
            if (popcount(ma & mb) % 2 != 0) s = -s;
            out[ma ^ mb] += s * a[ma] * b[mb];
        }
    }
    return out;
}

CliffordElement quantize(const Multivector& v) {
    CliffordElement a(v.dim());
    for (std::uint32_t m = 0; m < v.size(); ++m) a[m] = v[m];
    return a;
}

Multivector symbol(const CliffordElement& a) {
    Multivector v(a.dim());
    for (std::uint32_t m = 0; m < a.size(); ++m) v[m] = a[m];
    return v;
}

CliffordElement chirality(int dim) {
    const int l = dim / 2;
    return CliffordElement::basis_mask(dim, (1u << dim) - 1, ipow(l));
}

const SpinorRep& SpinorRep::get(int dim) {
    static std::map<int, SpinorRep> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(dim);
    if (it != cache.end()) return it->second;

    SpinorRep rep;
    rep.dim = dim;
    rep.l = dim / 2;

    Matrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;

    // d = 2 base case: gamma_1 = i s3, gamma_2 = i s2.
    rep.gamma = {I * s3, I * s2};
    // Recursion d -> d+2: gamma_i <- gamma_i (x) s1, then append
    // I (x) i s3 and I (x) i s2.
    for (int d = 2; d < dim; d += 2) {
        std::vector<Matrix> next;
        next.reserve(d + 2);
        for (const Matrix& g : rep.gamma) next.push_back(Eigen::kroneckerProduct(g, s1).eval());
        const Matrix id = Matrix::Identity(1 << (d / 2), 1 << (d / 2));
        next.push_back(Eigen::kroneckerProduct(id, (I * s3).eval()).eval());
        next.push_back(Eigen::kroneckerProduct(id, (I * s2).eval()).eval());
        rep.gamma = std::move(next);
    }

    Matrix prod = Matrix::Identity(1 << rep.l, 1 << rep.l);
    for (const Matrix& g : rep.gamma) prod = prod * g;
    rep.chirality_matrix = ipow(rep.l) * prod;

    return cache.emplace(dim, std::move(rep)).first->second;
}

Matrix SpinorRep::represent(const CliffordElement& a) const {
    const int n = 1 << l;
    Matrix out = Matrix::Zero(n, n);
    for (std::uint32_t m = 0; m < a.size(); ++m) {
        if (a[m] == cplx{0.0, 0.0}) continue;
        Matrix term = Matrix::Identity(n, n);
        for (int i = 0; i < dim; ++i)
            if (m & (1u << i)) term = term * gamma[i];
        out += a[m] * term;
    }
    return out;
}

const DoubleCliffordRep& DoubleCliffordRep::get(int dim) {
    static std::map<int, DoubleCliffordRep> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(dim);
    if (it != cache.end()) return it->second;

    DoubleCliffordRep rep;
    rep.dim = dim;
    const int n = 1 << dim;
    rep.eps.assign(dim, Matrix::Zero(n, n));
    rep.iota.assign(dim, Matrix::Zero(n, n));
    for (int i = 0; i < dim; ++i) {
        const std::uint32_t bit = 1u << i;
        for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(n); ++m) {
            const int below = popcount(m & (bit - 1));
            const double s = (below % 2 == 0) ? 1.0 : -1.0;
            if (!(m & bit)) rep.eps[i](m | bit, m) = s;   // e^i ^ e_M
            else rep.iota[i](m & ~bit, m) = s;            // contraction
        }
    }
    rep.left.resize(dim);
    rep.right.resize(dim);
    for (int i = 0; i < dim; ++i) {
        rep.left[i] = rep.eps[i] - rep.iota[i];
        rep.right[i] = rep.eps[i] + rep.iota[i];
    }
    rep.grading = Matrix::Zero(n, n);
    for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(n); ++m)
        rep.grading(m, m) = (popcount(m) % 2 == 0) ? 1.0 : -1.0;

    return cache.emplace(dim, std::move(rep)).first->second;
}

Matrix DoubleCliffordRep::rep_left(const CliffordElement& a) const {
    const int n = 1 << dim;
    Matrix out = Matrix::Zero(n, n);
    for (std::uint32_t m = 0; m < a.size(); ++m) {
        if (a[m] == cplx{0.0, 0.0}) continue;
        Matrix term = Matrix::Identity(n, n);
        for (int i = 0; i < dim; ++i)
            if (m & (1u << i)) term = term * left[i];
        out += a[m] * term;
    }
    return out;
}

Matrix DoubleCliffordRep::rep_right(const CliffordElement& b) const {
    const int n = 1 << dim;
    Matrix out = Matrix::Zero(n, n);
    for (std::uint32_t m = 0; m < b.size(); ++m) {
        if (b[m] == cplx{0.0, 0.0}) continue;
        Matrix term = Matrix::Identity(n, n);
        for (int i = dim - 1; i >= 0; --i)  // order-reversing
            if (m & (1u << i)) term = term * right[i];
        out += b[m] * term;
    }
    return out;
}

cplx DoubleCliffordRep::supertrace(const Matrix& m) const {
    return (grading * m).trace();
}

cplx supertrace_gamma(const CliffordElement& a) {
    const SpinorRep& rep = SpinorRep::get(a.dim());
    return (rep.chirality_matrix * rep.represent(a)).trace();
}

cplx supertrace_berezin(const CliffordElement& a) {
    const int l = a.dim() / 2;
    return std::pow(cplx{0.0, -2.0}, l) * berezin(symbol(a));
}

cplx supertrace_berezin_dual(const CliffordElement& b) {
    const int l = b.dim() / 2;
    return std::pow(cplx{0.0, 2.0}, l) * berezin(symbol(b));
}

cplx supertrace_product(const CliffordElement& a, const CliffordElement& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dim mismatch");
    return supertrace_berezin(a) * supertrace_berezin_dual(b);
}

}  // namespace gbc::cliff
