#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gbc/geometry_file.hpp"
#include "gbc/heat.hpp"
#include "gbc/reports.hpp"

using namespace gbc;
using geom::Mat;
using geom::Vec;

namespace {

std::string preset_dir() { return GBC_PRESET_DIR; }

Vec random_point(const geom::GeometrySpec& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec x(g.dim());
    for (int i = 0; i < g.dim(); ++i) {
        if (g.chart.kind == geom::ChartDomain::Kind::PeriodicBox)
            x[i] = g.chart.lengths[i] * u(rng);
        else
            x[i] = 2.0 * u(rng) - 1.0;
    }
    return x;
}

// writes text to a scratch spec file, returns its path
class TempSpec {
public:
    explicit TempSpec(const std::string& text) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("gbc_spec_" + std::to_string(counter++) + ".spec"))
                    .string();
        std::ofstream(path_) << text;
    }
    ~TempSpec() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

void check_matches_preset(const std::string& file, const std::string& preset_name,
                          int points = 100) {
    auto from_file = cli::parse_geometry_file(preset_dir() + "/" + file);
    auto ref = geom::preset(preset_name);
    REQUIRE(from_file.dim() == ref.dim());
    std::mt19937_64 rng(42);
    for (int k = 0; k < points; ++k) {
        const Vec x = random_point(ref, rng);
        CHECK((from_file.metric.value(x) - ref.metric.value(x)).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK(from_file.contorsion.is_zero() == ref.contorsion.is_zero());
        if (!ref.contorsion.is_zero()) {
            const auto ka = from_file.contorsion.value(x, ref.dim());
            const auto kb = ref.contorsion.value(x, ref.dim());
            for (std::size_t i = 0; i < ka.size(); ++i)
                CHECK((ka[i] - kb[i]).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

}  // namespace

TEST_CASE("load_geometry resolves preset names") {
    auto g = cli::load_geometry("flat-torus");
    CHECK(g.name == "flat-torus");
    CHECK(g.dim() == 2);
    CHECK_THROWS(cli::load_geometry("no-such-geometry"));
}

TEST_CASE("shipped spec files agree with their presets at random points") {
    check_matches_preset("flat-torus.spec", "flat-torus");
    check_matches_preset("conformal-torus.spec", "conformal-torus");
    check_matches_preset("stereographic-sphere.spec", "stereographic-sphere");
    check_matches_preset("torsion-torus.spec", "torsion-torus");
    check_matches_preset("conformal-4torus.spec", "conformal-4torus", 25);
    check_matches_preset("torsion-4torus.spec", "torsion-4torus", 25);
}

TEST_CASE("spec validation failures carry field-level messages") {
    auto message_of = [](const std::string& body) {
        TempSpec f(body);
        try {
            cli::parse_geometry_file(f.path());
        } catch (const std::exception& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    const std::string head = "dim = 2\nchart = periodic\nlengths = 6.28\n";

    CHECK(message_of(head + "metric = 1, 0.5; 0.2, 1").find("not symmetric") !=
          std::string::npos);
    CHECK(message_of(head + "metric = -1, 0; 0, 1").find("metric") != std::string::npos);
    CHECK(message_of(head + "metric = 1, 0; 0, 1\nbogus = 1").find("unknown key") !=
          std::string::npos);
    CHECK(message_of("chart = periodic\nlengths = 6.28\nmetric = 1, 0; 0, 1")
              .find("dim") != std::string::npos);
    CHECK(message_of(head + "metric = 1, 0; 0, sin(x3)").find("unknown identifier") !=
          std::string::npos);
    CHECK(message_of(head + "metric = 1, 0; 0, 1; 0, 0").find("rows") !=
          std::string::npos);
    CHECK(message_of(head + "metric = 1, 0; 0, 1\ncontorsion1 = 0, 1; 1, 0\n"
                            "contorsion2 = 0, 0; 0, 0")
              .find("skew") != std::string::npos);
    // one contorsion slot given, the other missing
    CHECK(message_of(head + "metric = 1, 0; 0, 1\ncontorsion1 = 0, 1; -1, 0")
              .find("contorsion2") != std::string::npos);
    CHECK(message_of(head + "metric = 1, 0; 0, 1\nmetric = 1, 0; 0, 1")
              .find("duplicate") != std::string::npos);
}

TEST_CASE("config header and estimator csv shapes") {
    std::ostringstream os;
    report::config_header(os, {{"command", "mc"}, {"seed", "7"}});
    report::estimator_csv_head(os, 2);
    Vec x(2);
    x << 1.0, 2.0;
    report::estimator_row(os, "str_density", 0.25, x, 0.5, 0.0, 0.01, 100, 0.05, 7);
    const std::string text = os.str();
    CHECK(text.find("# command = mc\n# seed = 7\n") == 0);
    CHECK(text.find("name,t,x1,x2,value_re,value_im,stderr,n,bandwidth,seed\n") !=
          std::string::npos);
    CHECK(text.find("str_density,0.25,1,2,0.5,0,0.01,100,0.05,7\n") != std::string::npos);
}

TEST_CASE("heat profile csv has per-t rows and a closing extrapolation row") {
    auto g = geom::preset("flat-torus");
    auto grid = hodge::Grid::make(g.chart, 8);
    hodge::SupertraceProfile prof;
    prof.ts = {0.4, 0.2};
    prof.nodes = {0, grid.index({3, 5})};
    prof.density = {{0.1, 0.2}, {0.3, 0.4}};
    prof.extrapolated = {0.25, 0.45};
    prof.reference = {0.26, 0.44};
    std::ostringstream os;
    report::heat_profile_csv(os, prof, grid);
    std::istringstream in(os.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 7);  // header + (2 ts + 1 extrapolation) per node
    CHECK(lines[0] == "t,x1,x2,str_density,extrapolated,reference_euler_form,abs_err");
    CHECK(lines[1].substr(0, 4) == "0.4,");
    CHECK(lines[3].substr(0, 2) == "0,");   // extrapolation row for node 0
    CHECK(lines[3].find(",0.25,") != std::string::npos);
}
