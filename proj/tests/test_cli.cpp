#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "kepfam_cli/cli.hpp"
#include "kepfam_cli/datasets.hpp"
#include "test_support.hpp"

using namespace kepfam;
using namespace kepfam::cli;
using Json = nlohmann::json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = run_cli(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CsvRow {
    std::string set;
    std::string psi;
    std::string t;
    Vec3 point;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "set,psi,t,x,y,z");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            f.push_back(cell);
        }
        EXPECT_EQ(f.size(), 6u) << line;
        rows.push_back({f[0], f[1], f[2], {std::stod(f[3]), std::stod(f[4]), std::stod(f[5])}});
    }
    return rows;
}

std::filesystem::path scratch(const std::string& name) {
    const std::filesystem::path dir =
        std::filesystem::path(::testing::TempDir()) / ("kepfam_cli_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST(Verify, DefaultsPassWithSchema) {
    const Outcome o = run({"verify"});
    ASSERT_EQ(o.code, kExitPass) << o.out << o.err;
    const Json doc = Json::parse(o.out);
    ASSERT_TRUE(doc.at("checks").is_array());
    EXPECT_TRUE(doc.at("overall").get<bool>());
    std::map<std::string, int> names;
    for (const Json& c : doc.at("checks")) {
        EXPECT_EQ(c.size(), 4u);
        EXPECT_TRUE(c.at("residual").is_number());
        EXPECT_TRUE(c.at("pass").get<bool>()) << c.dump();
        EXPECT_LE(c.at("residual").get<double>(), c.at("tolerance").get<double>());
        ++names[c.at("name").get<std::string>()];
    }
    for (const char* expected :
         {"second_focus_equivalence", "drift_lenz", "focal_sum_numeric", "period_detect",
          "harmonic_law", "area_full_period", "focus_locus_radius", "bounding_attained",
          "envelope_tangency", "reflected_focus_v", "simultaneous_return",
          "eccentricity_minimum", "oracle_equivalence"}) {
        EXPECT_EQ(names[expected], 1) << expected;
    }
}

TEST(Verify, ByteIdenticalAcrossRuns) {
    const Outcome first = run({"verify", "--seed", "7"});
    const Outcome second = run({"verify", "--seed", "7"});
    EXPECT_EQ(first.code, kExitPass);
    EXPECT_EQ(first.out, second.out);
    const Outcome other = run({"verify", "--seed", "8"});
    EXPECT_EQ(other.code, kExitPass);
    EXPECT_NE(first.out, other.out);
}

TEST(Verify, ExplicitScenarioF1MatchesDefaults) {
    EXPECT_EQ(run({"verify", "--mu", "1", "--k", "1", "--H", "-0.28", "--r", "1,0,0"}).out,
              run({"verify"}).out);
    EXPECT_EQ(run({"verify", "--r", "1"}).out, run({"verify"}).out);
}

TEST(Verify, UnmeetableToleranceFails) {
    const Outcome o = run({"verify", "--tol-override", "1e-30"});
    EXPECT_EQ(o.code, kExitVerificationFailure);
    const Json doc = Json::parse(o.out);
    EXPECT_FALSE(doc.at("overall").get<bool>());
    for (const Json& c : doc.at("checks")) {
        EXPECT_LE(c.at("tolerance").get<double>(), 1e-35);
    }
}

TEST(Verify, ToleranceOverrideScales) {
    const Outcome o = run({"verify", "--tol-override", "10", "--format", "csv"});
    EXPECT_EQ(o.code, kExitPass);
    EXPECT_NE(o.out.find("harmonic_law,"), std::string::npos);
    EXPECT_NE(o.out.find(",1e-11,true"), std::string::npos);
    EXPECT_NE(o.out.find("overall,,,true"), std::string::npos);
}

TEST(Verify, ParabolaHyperbolaAndTiltedPlane) {
    for (const std::string r : {"1.7857142857142858", "2.6785714285714284", "0.6,0.8,0.5"}) {
        const Outcome o = run({"verify", "--r", r});
        EXPECT_EQ(o.code, kExitPass) << r << "\n" << o.out;
    }
}

TEST(Verify, CoarseStepFailsNotCrashes) {
    const Outcome o = run({"verify", "--dt-fraction", "1e-2"});
    EXPECT_EQ(o.code, kExitVerificationFailure);
}

TEST(Cli, UsageErrors) {
    const std::vector<std::vector<std::string>> cases{
        {},
        {"bogus"},
        {"verify", "--H", "0.1"},
        {"verify", "--H", "0"},
        {"verify", "--samples", "0"},
        {"verify", "--samples", "2"},
        {"verify", "--dt-fraction", "0.1"},
        {"verify", "--dt-fraction", "0"},
        {"verify", "--format", "xml"},
        {"verify", "--r", "1,2"},
        {"verify", "--r", "abc"},
        {"verify", "--r", "5"},
        {"verify", "--r", "0,0,0"},
        {"verify", "--psi", "0"},
        {"verify", "--mu", "-1"},
        {"verify", "--tol-override", "0"},
        {"verify", "--unknown"},
        {"figures", "--samples", "0"},
    };
    for (const auto& args : cases) {
        const Outcome o = run(args);
        std::string joined;
        for (const auto& a : args) {
            joined += a + " ";
        }
        EXPECT_EQ(o.code, kExitUsage) << joined << o.err;
        EXPECT_FALSE(o.err.empty()) << joined;
    }
}

TEST(Cli, HelpExitsZero) {
    const Outcome o = run({"--help"});
    EXPECT_EQ(o.code, kExitPass);
    EXPECT_NE(o.out.find("--tol-override"), std::string::npos);
}

TEST(Cli, NearlyRadialMemberIsNumericError) {
    const Outcome o = run({"orbit", "--psi", "1e-8"});
    EXPECT_EQ(o.code, kExitNumeric) << o.err;
}

TEST(Cli, UnwritableOutputIsUsageError) {
    const std::filesystem::path dir = scratch("blocked");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    EXPECT_EQ(run({"orbit", "--out", (dir / "file" / "sub.json").string()}).code, kExitUsage);
    EXPECT_EQ(run({"figures", "--out", (dir / "file").string()}).code, kExitUsage);
}

TEST(Cli, DefaultPlaneNormal) {
    EXPECT_EQ(default_plane_normal({1, 0, 0}), (Vec3{0, 0, 1}));
    EXPECT_EQ(default_plane_normal({3, -4, 0}), (Vec3{0, 0, 1}));
    for (const Vec3 r : {Vec3{0.6, 0.8, 0.5}, Vec3{0, 0, 2}, Vec3{1, 1, 1}}) {
        const Vec3 n = default_plane_normal(r);
        EXPECT_NEAR(norm(n), 1.0, 1e-15);
        EXPECT_NEAR(dot(n, r), 0.0, 1e-15);
    }
}

TEST(Cli, FormatNumberRoundTrips) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1e-30), "1e-30");
    for (double x : {test::s1::T, test::s1::b, -1.0 / 3.0}) {
        EXPECT_EQ(std::stod(format_number(x)), x);
    }
}

TEST(Orbit, CsvOnStdoutMatchesScenarioS1) {
    const Outcome o = run({"orbit", "--format", "csv", "--samples", "64"});
    ASSERT_EQ(o.code, kExitPass) << o.err;
    int orbit_rows = 0;
    for (const CsvRow& row : parse_csv(o.out)) {
        if (row.set == "orbit") {
            ++orbit_rows;
            const double sum = norm(row.point) + distance(row.point, {test::s1::t, 0, 0});
            EXPECT_NEAR(sum, 2 * test::s1::a, 1e-12);
        }
        if (row.set == "fall_point") {
            EXPECT_NEAR(norm(row.point), test::s1::s, 1e-12);
        }
        if (row.set == "second_focus") {
            EXPECT_NEAR(row.point.x, test::s1::t, 1e-14);
        }
    }
    EXPECT_EQ(orbit_rows, 64);
}

TEST(Orbit, JsonDocumentHasSetsAndConics) {
    const Outcome o = run({"orbit", "--samples", "16"});
    ASSERT_EQ(o.code, kExitPass);
    const Json doc = Json::parse(o.out);
    EXPECT_EQ(doc.at("name"), "orbit");
    std::map<std::string, std::size_t> sizes;
    for (const Json& s : doc.at("point_sets")) {
        sizes[s.at("set").get<std::string>()] = s.at("points").size();
    }
    EXPECT_EQ(sizes["orbit"], 16u);
    EXPECT_EQ(sizes["fall_circle"], 16u);
    EXPECT_EQ(sizes["tangent"], 2u);
    EXPECT_EQ(sizes["directrix"], 2u);
    EXPECT_EQ(doc.at("conics").at(0).at("kind"), "ellipse");
    EXPECT_NEAR(doc.at("conics").at(0).at("eccentricity").get<double>(), test::s1::e, 1e-14);
    EXPECT_EQ(doc.at("conics").at(1).at("kind"), "circle");
}

TEST(Figures, ScenarioF1DatasetsAndSidecars) {
    const std::filesystem::path dir = scratch("figures");
    const Outcome o = run({"figures", "--format", "csv", "--out", dir.string()});
    ASSERT_EQ(o.code, kExitPass) << o.err;

    // fig1: s on the fall circle.
    bool saw_s = false;
    for (const CsvRow& row : parse_csv(slurp(dir / "fig1.csv"))) {
        if (row.set == "fall_point") {
            saw_s = true;
            EXPECT_NEAR(norm(row.point), test::s1::s, 1e-12);
        }
    }
    EXPECT_TRUE(saw_s);

    // fig2: the focus-locus radius statistic.
    double radius_sum = 0.0;
    int foci = 0;
    int orbits = 0;
    for (const CsvRow& row : parse_csv(slurp(dir / "fig2.csv"))) {
        if (row.set == "focus_locus") {
            radius_sum += distance(row.point, {1, 0, 0});
            ++foci;
        }
        orbits += row.set == "orbit";
    }
    ASSERT_EQ(foci, kFigureMembers);
    EXPECT_NEAR(radius_sum / foci, test::f1::focus_radius, 1e-10);
    EXPECT_EQ(orbits, kFigureMembers * kCurvePoints);

    // fig3: envelope sidecar carries the closed-form ellipse.
    const Json conics = Json::parse(slurp(dir / "fig3.conics.json"));
    const Json& env = conics.at("conics").at(0);
    EXPECT_EQ(env.at("kind"), "ellipse");
    EXPECT_NEAR(env.at("major_axis").get<double>(), test::f1::env_axis, 1e-14);
    EXPECT_NEAR(env.at("eccentricity").get<double>(), test::f1::env_ecc, 1e-14);
    EXPECT_NEAR(env.at("focus2").at(0).get<double>(), test::f1::u, 1e-14);

    const Json bounding = Json::parse(slurp(dir / "fig2.conics.json")).at("conics").at(1);
    EXPECT_EQ(bounding.at("name"), "bounding");
    EXPECT_NEAR(bounding.at("major_axis").get<double>(), test::f1::bound_axis, 1e-14);
}

TEST(Figures, DeterministicJson) {
    const std::filesystem::path a = scratch("det_a");
    const std::filesystem::path b = scratch("det_b");
    ASSERT_EQ(run({"figures", "--out", a.string()}).code, kExitPass);
    ASSERT_EQ(run({"figures", "--out", b.string()}).code, kExitPass);
    for (const char* name : {"fig1.json", "fig2.json", "fig3.json"}) {
        const std::string text = slurp(a / name);
        EXPECT_FALSE(text.empty());
        EXPECT_EQ(text, slurp(b / name)) << name;
        EXPECT_TRUE(Json::accept(text));
    }
}

TEST(Envelope, ParabolicCaseWritesFittedParabola) {
    const std::filesystem::path dir = scratch("parabola");
    std::filesystem::create_directories(dir);
    const std::filesystem::path csv = dir / "env.csv";
    const Outcome o = run({"envelope", "--r", "1.7857142857142858", "--samples", "32", "--format",
                           "csv", "--out", csv.string()});
    ASSERT_EQ(o.code, kExitPass) << o.err;
    EXPECT_TRUE(o.out.empty());
    const Json conics = Json::parse(slurp(dir / "env.conics.json"));
    const Json& env = conics.at("conics").at(0);
    EXPECT_EQ(env.at("kind"), "parabola");
    EXPECT_FALSE(env.at("directrix").is_null());
    int touches = 0;
    int v_points = 0;
    for (const CsvRow& row : parse_csv(slurp(csv))) {
        touches += row.set == "touch";
        v_points += row.set == "v_focus";
    }
    EXPECT_EQ(touches, 32);
    EXPECT_EQ(v_points, 0);
}

TEST(Envelope, HyperbolaCaseHasVFoci) {
    const Outcome o = run({"envelope", "--r", "2.6785714285714284", "--samples", "8", "--format", "csv"});
    ASSERT_EQ(o.code, kExitPass) << o.err;
    int v_points = 0;
    for (const CsvRow& row : parse_csv(o.out)) {
        if (row.set == "u_focus") {
            EXPECT_NEAR(row.point.x, test::r15::u, 1e-12);
        }
        v_points += row.set == "v_focus";
    }
    EXPECT_EQ(v_points, 8);
}

TEST(Family, MembersFollowSamples) {
    const Outcome o = run({"family", "--samples", "5", "--format", "csv"});
    ASSERT_EQ(o.code, kExitPass);
    int foci = 0;
    for (const CsvRow& row : parse_csv(o.out)) {
        if (row.set == "focus_locus") {
            ++foci;
            EXPECT_NEAR(distance(row.point, {1, 0, 0}), test::f1::focus_radius, 1e-12);
        }
    }
    EXPECT_EQ(foci, 5);
}
