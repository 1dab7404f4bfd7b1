#include "gbc/geometry_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "gbc/expression.hpp"

namespace gbc::cli {

namespace {

using geom::Mat;
using geom::Vec;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw std::runtime_error("geometry spec: " + field + ": " + message);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

// d x d grid of expressions: rows separated by ';', entries by ','
std::vector<std::vector<expr::Expression>> parse_matrix(const std::string& field,
                                                        const std::string& text, int d) {
    const auto rows = split(text, ';');
    if (static_cast<int>(rows.size()) != d)
        fail(field, "expected " + std::to_string(d) + " rows, got " +
                        std::to_string(rows.size()));
    std::vector<std::vector<expr::Expression>> out(d);
    for (int r = 0; r < d; ++r) {
        const auto entries = split(rows[r], ',');
        if (static_cast<int>(entries.size()) != d)
            fail(field, "row " + std::to_string(r + 1) + ": expected " +
                            std::to_string(d) + " entries");
        for (const auto& e : entries) {
            try {
                out[r].push_back(expr::parse_expression(e, d));
            } catch (const expr::ExpressionError& err) {
                fail(field, "'" + e + "': " + err.what());
            }
        }
    }
    return out;
}

std::vector<Vec> sample_points(const geom::ChartDomain& chart) {
    std::vector<Vec> pts;
    const int d = chart.dim;
    for (int k = 0; k < 7; ++k) {
        Vec x(d);
        for (int i = 0; i < d; ++i) {
            const double frac = 0.137 + 0.211 * k + 0.173 * i;
            const double span = chart.kind == geom::ChartDomain::Kind::PeriodicBox
                                    ? chart.lengths[i]
                                    : 2.0;
            x[i] = span * (frac - std::floor(frac)) -
                   (chart.kind == geom::ChartDomain::Kind::PeriodicBox ? 0.0 : 1.0);
        }
        pts.push_back(x);
    }
    return pts;
}

bool is_preset_name(const std::string& s) {
    const auto names = geom::preset_names();
    return std::find(names.begin(), names.end(), s) != names.end();
}

}  // namespace

geom::GeometrySpec parse_geometry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read geometry spec '" + path + "'");

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (kv.count(key)) fail(key, "duplicate entry");
        kv[key] = trim(line.substr(eq + 1));
    }

    auto take = [&](const std::string& key) -> std::string {
        const auto it = kv.find(key);
        if (it == kv.end()) fail(key, "missing");
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };

    geom::GeometrySpec spec;
    spec.name = kv.count("name") ? take("name") : path;

    int d = 0;
    try {
        d = std::stoi(take("dim"));
    } catch (const std::exception&) {
        fail("dim", "not an integer");
    }
    if (d != 2 && d != 4) fail("dim", "must be 2 or 4");

    const std::string chart = take("chart");
    if (chart == "periodic") {
        const auto lens = split(take("lengths"), ',');
        if (lens.size() != 1 && static_cast<int>(lens.size()) != d)
            fail("lengths", "expected 1 or dim values");
        spec.chart = geom::ChartDomain::periodic_box(d, 1.0);
        for (int i = 0; i < d; ++i) {
            const std::string& tok = lens[lens.size() == 1 ? 0 : i];
            try {
                spec.chart.lengths[i] = std::stod(tok);
            } catch (const std::exception&) {
                fail("lengths", "'" + tok + "' is not a number");
            }
            if (spec.chart.lengths[i] <= 0.0) fail("lengths", "must be positive");
        }
    } else if (chart == "plane") {
        double radius = std::numeric_limits<double>::infinity();
        if (kv.count("radius")) {
            const std::string tok = take("radius");
            if (tok != "inf") {
                try {
                    radius = std::stod(tok);
                } catch (const std::exception&) {
                    fail("radius", "'" + tok + "' is not a number");
                }
            }
        }
        spec.chart = geom::ChartDomain::full_space(d, radius);
    } else {
        fail("chart", "expected 'periodic' or 'plane'");
    }

    const std::string metric_text = take("metric");
    if (is_preset_name(metric_text)) {
        const geom::GeometrySpec base = geom::preset(metric_text);
        if (base.dim() != d) fail("metric", "preset dimension mismatch");
        spec.metric = base.metric;
    } else {
        auto g = std::make_shared<std::vector<std::vector<expr::Expression>>>(
            parse_matrix("metric", metric_text, d));
        spec.metric = geom::MetricField([g, d](const Vec& x) {
            Mat m(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) m(r, c) = (*g)[r][c].evaluate(x);
            return m;
        });
    }

    std::string contorsion_source;
    std::vector<std::shared_ptr<std::vector<std::vector<expr::Expression>>>> kexprs;
    for (int i = 1; i <= d; ++i) {
        const std::string key = "contorsion" + std::to_string(i);
        if (i == 1 && kv.count("contorsion")) {
            contorsion_source = take("contorsion");
            break;
        }
        if (!kv.count(key)) {
            if (!kexprs.empty()) fail(key, "missing (all coordinate slots required)");
            break;
        }
        kexprs.push_back(std::make_shared<std::vector<std::vector<expr::Expression>>>(
            parse_matrix(key, take(key), d)));
    }
    if (!contorsion_source.empty()) {
        if (!is_preset_name(contorsion_source)) fail("contorsion", "unknown preset");
        const geom::GeometrySpec base = geom::preset(contorsion_source);
        if (base.dim() != d) fail("contorsion", "preset dimension mismatch");
        spec.contorsion = base.contorsion;
    } else if (!kexprs.empty()) {
        spec.contorsion = geom::ContorsionField([kexprs, d](const Vec& x) {
            std::vector<Mat> out;
            for (const auto& km : kexprs) {
                Mat m(d, d);
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) m(r, c) = (*km)[r][c].evaluate(x);
                out.push_back(m);
            }
            return out;
        });
    }

    if (!kv.empty()) fail(kv.begin()->first, "unknown key");

    // field-level validation at fixed sample points
    for (const Vec& x : sample_points(spec.chart)) {
        Mat g;
        try {
            g = spec.metric.value(x);
        } catch (const expr::ExpressionError& err) {
            fail("metric", err.what());
        }
        if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12) fail("metric", "not symmetric");
        try {
            spec.metric.validate_at(x);
        } catch (const std::exception& err) {
            fail("metric", err.what());
        }
        try {
            spec.contorsion.value(x, d);
        } catch (const std::exception& err) {
            fail("contorsion", err.what());
        }
    }
    return spec;
}

geom::GeometrySpec load_geometry(const std::string& source, double amplitude) {
    const auto names = geom::preset_names();
    if (std::find(names.begin(), names.end(), source) != names.end())
        return geom::preset(source, amplitude);
    return parse_geometry_file(source);
}

}  // namespace gbc::cli
