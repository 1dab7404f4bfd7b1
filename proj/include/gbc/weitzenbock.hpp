#pragma once

#include "gbc/grid_operator.hpp"

namespace gbc::hodge {

struct WeitzenbockReport {
    std::vector<int> grid_sizes;
    std::vector<double> residuals;  // max over trials of the relative residual
    double slope = 0.0;             // log residual vs log h
};

// Pointwise coefficients of the identity, shared with the stochastic route:
// the connection endomorphisms Theta_i of the 3B-twisted form connection in
// coordinate directions, and the potential C.
struct LemmaCoefficients {
    std::vector<cliff::Matrix> connection;
    cliff::Matrix potential;
};
LemmaCoefficients lemma_coefficients(const geom::GeometrySpec& geometry, const Vec& x);

// Finite-difference check of the Lichnerowicz-type identity
// D^2 = -Laplacian^{3B} - 2(a, e^i) D^{3B}_{e_i} + C on random band-limited
// test sections; the residual must vanish with grid refinement.
WeitzenbockReport weitzenbock_check(const geom::GeometrySpec& geometry,
                                    const std::vector<int>& grid_sizes,
                                    int trials = 2, unsigned seed = 7);

}  // namespace gbc::hodge
