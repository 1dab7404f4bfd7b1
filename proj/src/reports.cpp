#include "gbc/reports.hpp"

#include <cmath>
#include <ostream>

namespace gbc::report {

namespace {

void put(std::ostream& out, double v) { out << v; }

void put_point(std::ostream& out, const geom::Vec& x) {
    for (long i = 0; i < x.size(); ++i) out << x[i] << ',';
}

}  // namespace

void config_header(std::ostream& out, const KeyValues& config) {
    for (const auto& [k, v] : config) out << "# " << k << " = " << v << '\n';
}

void heat_profile_csv(std::ostream& out, const hodge::SupertraceProfile& profile,
                      const hodge::Grid& grid) {
    const int d = grid.dim();
    out << "t,";
    for (int i = 0; i < d; ++i) out << 'x' << i + 1 << ',';
    out << "str_density,extrapolated,reference_euler_form,abs_err\n";
    out.precision(12);
    for (std::size_t k = 0; k < profile.nodes.size(); ++k) {
        const geom::Vec x = grid.point(profile.nodes[k]);
        for (std::size_t j = 0; j < profile.ts.size(); ++j) {
            put(out, profile.ts[j]);
            out << ',';
            put_point(out, x);
            put(out, profile.density[k][j]);
            out << ",,";
            put(out, profile.reference[k]);
            out << ',';
            put(out, std::abs(profile.density[k][j] - profile.reference[k]));
            out << '\n';
        }
        out << "0,";
        put_point(out, x);
        out << ',';
        put(out, profile.extrapolated[k]);
        out << ',';
        put(out, profile.reference[k]);
        out << ',';
        put(out, std::abs(profile.extrapolated[k] - profile.reference[k]));
        out << '\n';
    }
}

void estimator_csv_head(std::ostream& out, int dim) {
    out << "name,t,";
    for (int i = 0; i < dim; ++i) out << 'x' << i + 1 << ',';
    out << "value_re,value_im,stderr,n,bandwidth,seed\n";
    out.precision(12);
}

void estimator_row(std::ostream& out, const std::string& name, double t,
                   const geom::Vec& x, double value_re, double value_im,
                   double stderr_, long n, double bandwidth,
                   unsigned long long seed) {
    out << name << ',' << t << ',';
    put_point(out, x);
    out << value_re << ',' << value_im << ',' << stderr_ << ',' << n << ','
        << bandwidth << ',' << seed << '\n';
}

void order_study_csv(std::ostream& out, const sde::OrderStudy& study) {
    out << "eps,x_residual,e_residual,x_slope,e_slope\n";
    out.precision(12);
    for (std::size_t i = 0; i < study.epsilons.size(); ++i)
        out << study.epsilons[i] << ',' << study.x_residuals[i] << ','
            << study.e_residuals[i] << ',' << study.x_slope << ',' << study.e_slope
            << '\n';
}

}  // namespace gbc::report
