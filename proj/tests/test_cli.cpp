#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = HORO_TEST_TMP;

fs::path tmp(const std::string& name)
{
    fs::create_directories(kTmp);
    return kTmp / name;
}

// Runs the CLI; stdout goes to out (or /dev/null), stderr is discarded.
int run(const std::string& args, const fs::path& out = "/dev/null")
{
    const std::string cmd = std::string("\"") + HORO_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

// Data rows of an orbit CSV as numbers.
std::vector<std::vector<double>> rows(const std::string& csv)
{
    std::vector<std::vector<double>> out;
    std::istringstream in(csv);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            header = true;
            continue;
        }
        std::vector<double> r;
        std::istringstream cells(line);
        std::string c;
        while (std::getline(cells, c, ','))
            r.push_back(std::stod(c));
        out.push_back(r);
    }
    return out;
}

double json_number(const std::string& json, const std::string& key)
{
    const auto p = json.find("\"" + key + "\":");
    return p == std::string::npos ? -1.0 : std::stod(json.substr(p + key.size() + 3));
}

}  // namespace

TEST(Cli, HelpAndUsage)
{
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run("flow --help"), 0);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("launch"), 2);
    EXPECT_EQ(run("flow --no-such-flag 1 --steps 1"), 2);
}

TEST(Cli, FlowSol3HasConstantHeight)
{
    const fs::path out = tmp("sol3.csv");
    ASSERT_EQ(run("flow --model t3a --A \"2 1 1 1\" --flow sol3u --steps 100000 --seed 7", out), 0);
    const auto r = rows(slurp(out));
    ASSERT_EQ(r.size(), 100001u);
    for (const auto& row : r)
        ASSERT_EQ(row[3], r[0][3]);
}

TEST(Cli, FlowModularHorocyclePeriod)
{
    const fs::path out = tmp("modu.csv");
    ASSERT_EQ(run("flow --model modular --flow u --steps 100", out), 0);
    const auto r = rows(slurp(out));
    ASSERT_EQ(r.size(), 101u);
    EXPECT_NEAR(r[100][0], 1.0, 1e-12);
    for (std::size_t i = 1; i < r[0].size(); ++i)
        EXPECT_NEAR(r[100][i], r[0][i], 1e-9);
}

TEST(Cli, FlowZeroStepsIsHeaderOnly)
{
    const fs::path out = tmp("zero.csv");
    ASSERT_EQ(run("flow --model octagon --steps 0", out), 0);
    const std::string text = slurp(out);
    EXPECT_TRUE(rows(text).empty());
    EXPECT_NE(text.find("time,c1"), std::string::npos);
}

TEST(Cli, OutputsAreByteIdentical)
{
    const fs::path a = tmp("a.csv"), b = tmp("b.csv");
    ASSERT_EQ(run("flow --model octagon_so3 --seed 3 --flow d --start random --steps 500 --out " + a.string()), 0);
    ASSERT_EQ(run("flow --model octagon_so3 --seed 3 --flow d --start random --steps 500 --out " + b.string()), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_FALSE(fs::exists(a.string() + ".tmp"));

    const fs::path ja = tmp("a.json"), jb = tmp("b.json");
    ASSERT_EQ(run("density --model modular --flow b --dalpha 0.001 --dbeta 0.02 --steps 2000 --out " + ja.string()), 0);
    ASSERT_EQ(run("density --model modular --flow b --dalpha 0.001 --dbeta 0.02 --steps 2000 --out " + jb.string()), 0);
    EXPECT_EQ(slurp(ja), slurp(jb));

    const fs::path sa = tmp("a.svg"), sb = tmp("b.svg");
    ASSERT_EQ(run("plot --csv " + a.string() + " --x c1 --y c2 --out " + sa.string()), 0);
    ASSERT_EQ(run("plot --csv " + a.string() + " --x c1 --y c2 --out " + sb.string()), 0);
    EXPECT_EQ(slurp(sa), slurp(sb));
}

TEST(Cli, ConfigFile)
{
    const fs::path cfg = tmp("run.cfg");
    write(cfg, "# reproducible run\nmodel = t3a\nA = 2 1 1 1\nflow = sol3u\nsteps = 10\nseed = 7\n");
    const fs::path a = tmp("cfg.csv");
    ASSERT_EQ(run("flow --config " + cfg.string(), a), 0);
    EXPECT_EQ(rows(slurp(a)).size(), 11u);
    // Flags win over the file.
    ASSERT_EQ(run("flow --config " + cfg.string() + " --steps 3", a), 0);
    EXPECT_EQ(rows(slurp(a)).size(), 4u);

    write(cfg, "model = t3a\ncolour = blue\n");
    EXPECT_EQ(run("flow --config " + cfg.string() + " --steps 1"), 2);
    write(cfg, "model t3a\n");
    EXPECT_EQ(run("flow --config " + cfg.string() + " --steps 1"), 2);
    EXPECT_EQ(run("flow --config " + tmp("missing.cfg").string() + " --steps 1"), 2);
}

TEST(Cli, FlowUsageErrors)
{
    EXPECT_EQ(run("flow --model octagon"), 2);                         // no steps
    EXPECT_EQ(run("flow --model octagon --steps -5"), 2);
    EXPECT_EQ(run("flow --model octagon --steps 1e3"), 2);
    EXPECT_EQ(run("flow --model octagon --steps 1000000000"), 2);
    EXPECT_EQ(run("flow --model torus --steps 1"), 2);
    EXPECT_EQ(run("flow --model octagon --flow x --steps 1"), 2);
    EXPECT_EQ(run("flow --model octagon --flow sol3u --steps 1"), 2);
    EXPECT_EQ(run("flow --model octagon --dt 0 --steps 1"), 2);
    EXPECT_EQ(run("flow --model octagon --dt nan --steps 1"), 2);
    EXPECT_EQ(run("flow --model octagon --flow b --steps 1"), 2);     // zero Borel step
    EXPECT_EQ(run("flow --model octagon --A \"2 1 1 1\" --steps 1"), 2);
    EXPECT_EQ(run("flow --model t3a --A \"2 1 1\" --steps 1"), 2);
    EXPECT_EQ(run("flow --model octagon --seed -1 --steps 1"), 2);
    EXPECT_EQ(run("flow --model octagon --start middle --steps 1"), 2);
}

TEST(Cli, ModelAndDynamicsFailuresExitOne)
{
    EXPECT_EQ(run("flow --model t3a --A \"1 1 0 1\" --steps 1"), 1);  // not hyperbolic
    EXPECT_EQ(run("flow --model t3a --A \"2 1 1 2\" --steps 1"), 1);  // det 3
    // A geodesic step of 200 moves the fibre height by ~200 periods: reduction gives up.
    EXPECT_EQ(run("flow --model t3a --flow d --dt 200 --steps 2"), 1);
    EXPECT_EQ(run("flow --model octagon --steps 1 --out /nonexistent-dir/x.csv"), 1);
}

TEST(Cli, Density)
{
    const fs::path out = tmp("density.json");
    ASSERT_EQ(run("density --model t3a --flow sol3u --steps 100000", out), 0);
    EXPECT_GE(json_number(slurp(out), "fraction"), 0.99);
    EXPECT_EQ(json_number(slurp(out), "total"), 2500.0);

    ASSERT_EQ(run("density --model octagon --flow u --dt 0.05 --steps 199999", out), 0);
    EXPECT_GE(json_number(slurp(out), "fraction"), 0.9);

    ASSERT_EQ(run("density --model octagon --steps 0", out), 0);
    EXPECT_EQ(json_number(slurp(out), "fraction"), 0.0);

    EXPECT_EQ(run("density --model t3a --flow sol3u --steps 10 --bins \"5\""), 2);
    EXPECT_EQ(run("density --model octagon --steps 10 --bins \"5 x 5\""), 2);
    EXPECT_EQ(run("density --model octagon --steps 10 --bins \"5 0 5\""), 2);
}

TEST(Cli, Classify)
{
    const fs::path mod = tmp("modular.gens"), t3a = tmp("t3a.gens"), rot = tmp("rot.gens"), out = tmp("classify.txt");
    write(mod, "T psl 1 1 0 1\nS psl 0 -1 1 0\n");
    write(t3a, "T1 affine 1 0.7236067977499789 0 1  1 -0.6180339887498949\n"
               "T2 affine 1 0.4472135954999579 0 1  1 1\n");
    write(rot, "R psl 0.54030230586813977 0.8414709848078965 -0.8414709848078965 0.54030230586813977\n");

    ASSERT_EQ(run("classify --generators " + mod.string() + " --radius 6", out), 0);
    std::string text = slurp(out);
    EXPECT_NE(text.find("label: DiscreteCandidate"), std::string::npos);
    EXPECT_EQ(text.find("semi-parabolic: 0\n"), std::string::npos);
    EXPECT_NE(text.find("  T  trace"), std::string::npos);

    ASSERT_EQ(run("classify --generators " + t3a.string(), out), 0);
    text = slurp(out);
    EXPECT_NE(text.find("label: FixesBoundaryPoint"), std::string::npos);
    EXPECT_NE(text.find("fixed boundary point: inf"), std::string::npos);

    ASSERT_EQ(run("classify --generators " + rot.string(), out), 0);
    text = slurp(out);
    EXPECT_NE(text.find("label: RotationLike"), std::string::npos);
    EXPECT_NE(text.find("semi-parabolic: 0\n"), std::string::npos);

    const fs::path bad = tmp("bad.gens");
    write(bad, "X psl 1 2\n");
    EXPECT_EQ(run("classify --generators " + bad.string()), 2);
    EXPECT_EQ(run("classify --generators " + tmp("none.gens").string()), 2);
    EXPECT_EQ(run("classify"), 2);
    EXPECT_EQ(run("classify --generators " + mod.string() + " --radius 9"), 2);
    EXPECT_EQ(run("classify --generators " + mod.string() + " --tol -1"), 2);
}

TEST(Cli, Check)
{
    const fs::path out = tmp("check.txt");
    ASSERT_EQ(run("check keylemma", out), 0);
    EXPECT_EQ(slurp(out).rfind("PASS 1 ", 0), 0u);
    ASSERT_EQ(run("check t3a", out), 0);
    const std::string text = slurp(out);
    EXPECT_NE(text.find("PASS 3 "), std::string::npos);
    EXPECT_NE(text.find("PASS 4 "), std::string::npos);
    EXPECT_NE(text.find("2 of 2 criteria passed"), std::string::npos);
    EXPECT_EQ(run("check unknown"), 2);
}

TEST(Cli, Plot)
{
    const fs::path one = tmp("one.csv"), svg = tmp("one.svg");
    ASSERT_EQ(run("flow --model modular --steps 0", one), 0);
    write(one, slurp(one) + "0,0.25,1.5,1.5707963267948966\n");
    ASSERT_EQ(run("plot --csv " + one.string() + " --out " + svg.string()), 0);
    const std::string s = slurp(svg);
    std::size_t markers = 0;
    for (auto p = s.find("<circle"); p != std::string::npos; p = s.find("<circle", p + 1))
        ++markers;
    EXPECT_EQ(markers, 1u);

    // Modular geodesic from Id: Im climbs the cusp.
    const fs::path geo = tmp("geo.csv");
    ASSERT_EQ(run("flow --model modular --flow d --steps 600", geo), 0);
    const auto r = rows(slurp(geo));
    for (std::size_t k = 1; k < r.size(); ++k)
        EXPECT_GT(r[k][2], r[k - 1][2]);
    EXPECT_GT(r.back()[2], 100.0);
    ASSERT_EQ(run("plot --csv " + geo.string() + " --x c1 --y c2", svg), 0);
    EXPECT_NE(slurp(svg).find("c2 (Im z)"), std::string::npos);

    const fs::path bad = tmp("bad.csv");
    write(bad, "time,c1\n1,2,3\n");
    EXPECT_EQ(run("plot --csv " + bad.string()), 2);
    write(bad, "time,c1\n1,zz\n");
    EXPECT_EQ(run("plot --csv " + bad.string()), 2);
    EXPECT_EQ(run("plot --csv " + geo.string() + " --y c9"), 2);
    EXPECT_EQ(run("plot --csv " + tmp("missing.csv").string()), 2);
    EXPECT_EQ(run("plot"), 2);
}
