#include "doctest.h"

#include <random>

#include "gbc/pfaffian.hpp"

using namespace gbc::cliff;

namespace {

SkewMatrix random_skew(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    SkewMatrix a(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) a.set(i, j, u(rng));
    return a;
}

// Random array antisymmetric in (i,j) and (n,m).
CurvatureArray random_curvature(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CurvatureArray r(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int n = 0; n < d; ++n)
                for (int m = n + 1; m < d; ++m) {
                    const double v = u(rng);
                    r.at(i, j, n, m) = v;
                    r.at(j, i, n, m) = -v;
                    r.at(i, j, m, n) = -v;
                    r.at(j, i, m, n) = v;
                }
    return r;
}

}  // namespace

TEST_CASE("pfaffian small cases") {
    SkewMatrix a2(2);
    a2.set(0, 1, 1.75);
    CHECK(pfaffian(a2) == doctest::Approx(1.75));

    // 4x4: pf = a12 a34 - a13 a24 + a14 a23 (signed matching sum)
    SkewMatrix a4(4);
    double a12 = 0.3, a13 = -1.1, a14 = 0.7, a23 = 2.0, a24 = 0.5, a34 = -0.9;
    a4.set(0, 1, a12); a4.set(0, 2, a13); a4.set(0, 3, a14);
    a4.set(1, 2, a23); a4.set(1, 3, a24); a4.set(2, 3, a34);
    CHECK(pfaffian(a4) == doctest::Approx(a12 * a34 - a13 * a24 + a14 * a23));

    CHECK(pfaffian(SkewMatrix(4)) == 0.0);
}

TEST_CASE("pfaffian properties (random)") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int d : {2, 4, 6})
        for (int t = 0; t < 40; ++t) {
            auto a = random_skew(d, rng);
            const double pf = pfaffian(a);
            const double det = a.dense().determinant();
            CHECK(pf * pf == doctest::Approx(det).epsilon(1e-8));

            // Berezin-exponential route
            CHECK(pfaffian_berezin(a) == doctest::Approx(pf).epsilon(1e-10));

            // Pf(M^T A M) = det(M) Pf(A)
            Eigen::MatrixXd m(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) m(i, j) = u(rng);
            auto congr = SkewMatrix::from_dense((m.transpose() * a.dense() * m).eval(), 1e-9);
            CHECK(pfaffian(congr) == doctest::Approx(m.determinant() * pf).epsilon(1e-7));
        }
}

TEST_CASE("skew matrix validation") {
    Eigen::MatrixXd bad(2, 2);
    bad << 0, 1, 1, 0;
    CHECK_THROWS(SkewMatrix::from_dense(bad));
    CHECK_THROWS(SkewMatrix(3));
    CHECK_THROWS(pfaffian(SkewMatrix(3)));
}

TEST_CASE("ladder supertrace d=2 constant curvature") {
    const double kappa = 0.8;
    CurvatureArray r(2);
    r.at(0, 1, 0, 1) = kappa;
    r.at(1, 0, 0, 1) = -kappa;
    r.at(0, 1, 1, 0) = -kappa;
    r.at(1, 0, 1, 0) = kappa;

    auto rep = ladder_supertrace(r);
    // both routes close on the same value (sign relative to the convention
    // ledger: the top supertrace equals +kappa here)
    CHECK(rep.pf_value == doctest::Approx(kappa));
    CHECK(std::abs(rep.power_supertrace.back() - cplx{rep.pf_value, 0.0}) < 1e-10);
    CHECK(rep.top_rel_error < 1e-10);
}

TEST_CASE("ladder supertrace zero curvature") {
    auto rep = ladder_supertrace(CurvatureArray(4));
    CHECK(rep.pf_value == 0.0);
    for (auto s : rep.power_supertrace) CHECK(std::abs(s) < 1e-14);
}

TEST_CASE("ladder supertrace random admissible arrays") {
    std::mt19937_64 rng(7);
    for (int d : {2, 4})
        for (int t = 0; t < 20; ++t) {
            auto r = random_curvature(d, rng);
            auto rep = ladder_supertrace(r);
            CHECK(rep.max_lower_power_abs < 1e-10);
            CHECK(rep.top_rel_error < 1e-8);
        }
}

TEST_CASE("ladder rejects symmetry violations") {
    CurvatureArray r(2);
    r.at(0, 1, 0, 1) = 1.0;  // missing antisymmetric partners
    CHECK_THROWS(ladder_supertrace(r));
}
