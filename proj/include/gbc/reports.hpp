#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gbc/heat.hpp"
#include "gbc/mc.hpp"

namespace gbc::report {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// "# key = value" comment block echoing the run configuration.
void config_header(std::ostream& out, const KeyValues& config);

// Rows t, x-coordinates, str_density, extrapolated, reference_euler_form,
// abs_err; one row per (t, node) and a closing t = 0 extrapolation row per
// node.
void heat_profile_csv(std::ostream& out, const hodge::SupertraceProfile& profile,
                      const hodge::Grid& grid);

// Estimator rows name, t, x, value_re, value_im, stderr, n, bandwidth, seed.
void estimator_csv_head(std::ostream& out, int dim);
void estimator_row(std::ostream& out, const std::string& name, double t,
                   const geom::Vec& x, double value_re, double value_im,
                   double stderr_, long n, double bandwidth,
                   unsigned long long seed);

// Study rows eps, x_residual, e_residual plus the fitted slopes on each row.
void order_study_csv(std::ostream& out, const sde::OrderStudy& study);

}  // namespace gbc::report
