#include "doctest.h"

#include <random>

#include "gbc/clifford.hpp"

using namespace gbc::cliff;

namespace {

CliffordElement random_element(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CliffordElement a(d);
    for (std::uint32_t m = 0; m < a.size(); ++m) a[m] = cplx{u(rng), u(rng)};
    return a;
}

Multivector random_multivector(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Multivector v(d);
    for (std::uint32_t m = 0; m < v.size(); ++m) v[m] = cplx{u(rng), u(rng)};
    return v;
}

}  // namespace

TEST_CASE("wedge basics") {
    const int d = 4;
    auto e1 = Multivector::covector(d, 1);
    auto e2 = Multivector::covector(d, 2);

    auto w = wedge(e1, e2);
    CHECK(w[0b0011] == cplx{1.0, 0.0});

    CHECK(wedge(e1, e1).norm() == 0.0);

    // (e1 + e2) ^ e2 = e1 ^ e2  (hand expansion)
    auto s = wedge(e1 + e2, e2);
    CHECK(s[0b0011] == cplx{1.0, 0.0});
    CHECK((s - w).norm() == 0.0);

    // graded commutativity on random homogeneous pieces
    std::mt19937_64 rng(7);
    auto u = random_multivector(d, rng).grade_part(1);
    auto v = random_multivector(d, rng).grade_part(2);
    CHECK((wedge(u, v) - wedge(v, u)).norm() < 1e-14);  // (-1)^{1*2} = +1
}

TEST_CASE("wedge associativity (random)") {
    std::mt19937_64 rng(11);
    for (int d : {2, 4}) {
        auto a = random_multivector(d, rng);
        auto b = random_multivector(d, rng);
        auto c = random_multivector(d, rng);
        CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).norm() < 1e-12);
    }
}

TEST_CASE("interior product") {
    const int d = 4;
    auto e1 = Multivector::covector(d, 1);
    auto e2 = Multivector::covector(d, 2);
    auto e12 = Multivector::basis(d, {1, 2});

    CHECK((interior(e1, e12) - e2).norm() == 0.0);
    CHECK((interior(e2, e12) + e1).norm() == 0.0);  // antiderivation sign
    CHECK(interior(e1, Multivector::scalar(d, 1.0)).norm() == 0.0);
    CHECK_THROWS(interior(e12, e1));

    // antiderivation property on random inputs
    std::mt19937_64 rng(3);
    for (int k = 0; k <= d; ++k) {
        auto u = random_multivector(d, rng).grade_part(k);
        auto v = random_multivector(d, rng);
        auto lhs = interior(e1, wedge(u, v));
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        auto rhs = wedge(interior(e1, u), v) + sgn * wedge(u, interior(e1, v));
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("clifford product relations") {
    const int d = 4;
    auto c1 = CliffordElement::generator(d, 1);
    auto c2 = CliffordElement::generator(d, 2);

    auto sq = clifford_mul(c1, c1);
    CHECK(sq[0] == cplx{-1.0, 0.0});
    CHECK(sq.norm() == doctest::Approx(1.0));

    auto c12 = clifford_mul(c1, c2);
    CHECK(c12[0b0011] == cplx{1.0, 0.0});

    // c2 * (c1 c2) = c1  (apply the relations)
    auto red = clifford_mul(c2, c12);
    CHECK((red - c1).norm() == 0.0);

    // anticommutation
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            auto ci = CliffordElement::generator(d, i);
            auto cj = CliffordElement::generator(d, j);
            auto anti = clifford_mul(ci, cj) + clifford_mul(cj, ci);
            double expect = (i == j) ? -2.0 : 0.0;
            CHECK((anti - CliffordElement::scalar(d, expect)).norm() < 1e-15);
        }
}

TEST_CASE("clifford associativity (random)") {
    std::mt19937_64 rng(19);
    for (int d : {2, 4, 6}) {
        auto a = random_element(d, rng);
        auto b = random_element(d, rng);
        auto c = random_element(d, rng);
        auto lhs = clifford_mul(clifford_mul(a, b), c);
        auto rhs = clifford_mul(a, clifford_mul(b, c));
        CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }
}

TEST_CASE("quantize/symbol are mutually inverse") {
    auto v = Multivector::basis(4, {1, 2, 3});
    auto q = quantize(v);
    CHECK(q[0b0111] == cplx{1.0, 0.0});
    CHECK((symbol(q) - v).norm() == 0.0);

    auto c1 = CliffordElement::generator(2, 1);
    auto c12 = clifford_mul(c1, CliffordElement::generator(2, 2));
    CHECK((symbol(c12) - Multivector::basis(2, {1, 2})).norm() == 0.0);
    // symbol(c1 * c1) reduces through the Clifford relation to -1
    CHECK((symbol(clifford_mul(c1, c1)) - Multivector::scalar(2, -1.0)).norm() == 0.0);

    std::mt19937_64 rng(23);
    for (int d : {2, 4, 6})
        for (int t = 0; t < 50; ++t) {
            auto m = random_multivector(d, rng);
            CHECK((symbol(quantize(m)) - m).norm() < 1e-12);
            auto a = random_element(d, rng);
            CHECK((quantize(symbol(a)) - a).norm() < 1e-12);
        }
}

TEST_CASE("chirality") {
    auto g2 = chirality(2);
    CHECK(g2[0b11] == cplx{0.0, 1.0});  // i * c1 c2

    for (int d : {2, 4, 6}) {
        auto g = chirality(d);
        auto sq = clifford_mul(g, g);
        CHECK((sq - CliffordElement::scalar(d, 1.0)).norm() < 1e-14);
        for (int i = 1; i <= d; ++i) {
            auto ci = CliffordElement::generator(d, i);
            CHECK((clifford_mul(g, ci) + clifford_mul(ci, g)).norm() < 1e-14);
        }
    }
}

TEST_CASE("berezin integral") {
    CHECK(berezin(Multivector::basis(2, {1, 2})) == cplx{1.0, 0.0});
    CHECK(berezin(Multivector::scalar(2, 1.0)) == cplx{0.0, 0.0});
    auto v = 3.0 * Multivector::basis(4, {1, 2, 3, 4}) + Multivector::basis(4, {1, 2});
    CHECK(berezin(v) == cplx{3.0, 0.0});
}

TEST_CASE("spinor representation structure") {
    for (int d : {2, 4, 6}) {
        const auto& rep = SpinorRep::get(d);
        const int n = 1 << rep.l;
        const Matrix id = Matrix::Identity(n, n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Matrix anti = rep.gamma[i] * rep.gamma[j] + rep.gamma[j] * rep.gamma[i];
                double expect = (i == j) ? -2.0 : 0.0;
                CHECK((anti - expect * id).cwiseAbs().maxCoeff() < 1e-14);
            }
        CHECK((rep.chirality_matrix * rep.chirality_matrix - id).cwiseAbs().maxCoeff() < 1e-14);
        for (int i = 0; i < d; ++i) {
            Matrix a = rep.chirality_matrix * rep.gamma[i] + rep.gamma[i] * rep.chirality_matrix;
            CHECK(a.cwiseAbs().maxCoeff() < 1e-14);
        }
        // matrix chirality is the representation of the algebraic chirality
        CHECK((rep.represent(chirality(d)) - rep.chirality_matrix).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("supertrace values") {
    CHECK(std::abs(supertrace_gamma(CliffordElement::scalar(2, 1.0))) < 1e-15);

    auto c12 = clifford_mul(CliffordElement::generator(2, 1), CliffordElement::generator(2, 2));
    CHECK(std::abs(supertrace_gamma(c12) - cplx{0.0, -2.0}) < 1e-14);
    CHECK(std::abs(supertrace_berezin(c12) - cplx{0.0, -2.0}) < 1e-14);

    for (int d : {2, 4, 6}) {
        auto g = chirality(d);
        CHECK(std::abs(supertrace_gamma(g) - cplx{double(1 << (d / 2)), 0.0}) < 1e-12);
    }

    // dual variant: b = c*(e1)c*(e2), d=2 -> (2i) * 1
    auto b = CliffordElement::basis_mask(2, 0b11);
    CHECK(std::abs(supertrace_berezin_dual(b) - cplx{0.0, 2.0}) < 1e-14);
}

TEST_CASE("supertrace_gamma == supertrace_berezin (random)") {
    std::mt19937_64 rng(31);
    for (int d : {2, 4, 6})
        for (int t = 0; t < 200; ++t) {
            auto a = random_element(d, rng);
            auto sg = supertrace_gamma(a);
            auto sb = supertrace_berezin(a);
            CHECK(std::abs(sg - sb) < 1e-10 * (1.0 + a.norm()));
        }
}

TEST_CASE("double Clifford action structure") {
    for (int d : {2, 4}) {
        const auto& rep = DoubleCliffordRep::get(d);
        const int n = 1 << d;
        const Matrix id = Matrix::Identity(n, n);
        for (int i = 0; i < d; ++i) {
            CHECK((rep.left[i] - (rep.eps[i] - rep.iota[i])).cwiseAbs().maxCoeff() == 0.0);
            CHECK((rep.right[i] - (rep.eps[i] + rep.iota[i])).cwiseAbs().maxCoeff() == 0.0);
            CHECK((rep.left[i] * rep.left[i] + id).cwiseAbs().maxCoeff() < 1e-15);
            CHECK((rep.right[i] * rep.right[i] - id).cwiseAbs().maxCoeff() < 1e-15);
            for (int j = 0; j < d; ++j) {
                Matrix s = rep.left[i] * rep.right[j] + rep.right[j] * rep.left[i];
                CHECK(s.cwiseAbs().maxCoeff() < 1e-15);  // supercommute
            }
            // both actions are odd against the grading
            CHECK((rep.grading * rep.left[i] + rep.left[i] * rep.grading).cwiseAbs().maxCoeff() < 1e-15);
        }
        // left action represents the Clifford algebra faithfully
        std::mt19937_64 rng(5);
        auto a = random_element(d, rng);
        auto bb = random_element(d, rng);
        Matrix prod = rep.rep_left(a) * rep.rep_left(bb);
        CHECK((prod - rep.rep_left(clifford_mul(a, bb))).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("supertrace_product and grading trace agree") {
    auto one2 = CliffordElement::scalar(2, 1.0);
    CHECK(std::abs(supertrace_product(one2, one2)) < 1e-15);

    auto a = CliffordElement::basis_mask(2, 0b11);  // c1 c2
    auto b = CliffordElement::basis_mask(2, 0b11);  // c*1 c*2
    CHECK(std::abs(supertrace_product(a, b) - cplx{4.0, 0.0}) < 1e-13);

    CHECK(std::abs(supertrace_product(chirality(2), one2)) < 1e-13);

    std::mt19937_64 rng(41);
    for (int d : {2, 4})
        for (int t = 0; t < 25; ++t) {
            const auto& rep = DoubleCliffordRep::get(d);
            auto x = random_element(d, rng);
            auto y = random_element(d, rng);
            cplx via_rep = rep.supertrace(rep.rep_left(x) * rep.rep_right(y));
            cplx via_product = supertrace_product(x, y);
            CHECK(std::abs(via_rep - via_product) < 1e-10 * (1.0 + x.norm() * y.norm()));
        }
}

TEST_CASE("error paths") {
    CHECK_THROWS(CliffordElement(3));
    CHECK_THROWS(Multivector(5));
    CHECK_THROWS(chirality(3));
    auto a2 = CliffordElement::scalar(2, 1.0);
    auto a4 = CliffordElement::scalar(4, 1.0);
    CHECK_THROWS(clifford_mul(a2, a4));
    CHECK_THROWS(wedge(Multivector(2), Multivector(4)));
}
