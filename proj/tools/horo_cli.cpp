// horo: flows, coverage, classification, acceptance checks and plots.
//
// Exit codes: 0 success, 1 dynamics / model / criterion failure,
// 2 usage or parse error.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <type_traits>
#include <variant>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horo/acceptance.hpp"
#include "horo/diagnostics.hpp"
#include "horo/errors.hpp"
#include "horo/flows.hpp"
#include "horo/generator_file.hpp"
#include "horo/groups.hpp"
#include "horo/io.hpp"
#include "horo/models.hpp"
#include "horo/random.hpp"

namespace {

using namespace horo;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every option lands in a string first so flags and config values go
// through the same conversion and validation.
struct Command {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config;

    void add(const std::string& key, const std::string& help)
    {
        options[key] = app->add_option("--" + key, values[key], help);
    }

    // Config values fill in whatever was not given on the command line.
    void merge_config()
    {
        if (config.empty())
            return;
        std::ifstream in(config);
        if (!in)
            throw UsageError("cannot read config file '" + config + "'");
        for (const auto& [k, v] : parse_key_values(in)) {
            const auto it = options.find(k);
            if (it == options.end())
                throw UsageError("unknown config key '" + k + "'");
            if (it->second->count() == 0)
                values[k] = v;
        }
    }

    bool has(const std::string& key) const
    {
        const auto it = values.find(key);
        return it != values.end() && !it->second.empty();
    }

    std::string str(const std::string& key, const std::string& fallback) const
    {
        return has(key) ? values.at(key) : fallback;
    }

    double real(const std::string& key, double fallback) const
    {
        if (!has(key))
            return fallback;
        const std::string& s = values.at(key);
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(x))
            throw UsageError(key + ": not a finite number: '" + s + "'");
        return x;
    }

    long long integer(const std::string& key, long long fallback, long long lo, long long hi) const
    {
        if (!has(key))
            return fallback;
        const std::string& s = values.at(key);
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw UsageError(key + ": not an integer: '" + s + "'");
        if (x < lo || x > hi)
            throw UsageError(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return x;
    }

    std::uint64_t seed() const
    {
        if (!has("seed"))
            return 0;
        const std::string& s = values.at("seed");
        std::size_t used = 0;
        unsigned long long x = 0;
        try {
            if (s[0] != '-')
                x = std::stoull(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw UsageError("seed: not a non-negative integer: '" + s + "'");
        return x;
    }
};

// ---- shared pieces -----------------------------------------------------------

const std::vector<std::string> kModelNames = {"t3a",     "octagon", "octagon_so3", "octagon_boundary",
                                              "modular", "modular_boundary"};

void add_model_options(Command& c)
{
    c.add("model", "t3a | octagon | octagon_so3 | octagon_boundary | modular | modular_boundary");
    c.add("A", "SL(2,Z) matrix for t3a, \"a b c d\" (default \"2 1 1 1\")");
    c.add("seed", "seed for holonomy and random starts (default 0)");
}

void add_flow_options(Command& c)
{
    add_model_options(c);
    c.add("flow", "u | d | b | sol3u (default u)");
    c.add("dt", "step of the u and d flows (default 0.01)");
    c.add("dalpha", "b flow: log of the diagonal part per step (default 0)");
    c.add("dbeta", "b flow: unipotent part per step (default 0); sol3u step (default 0.037)");
    c.add("steps", "number of steps");
    c.add("start", "base | random (default base)");
    c.add("out", "output file (default stdout)");
}

ModelDescriptor model_descriptor(const Command& c)
{
    ModelDescriptor d;
    d.model = c.str("model", d.model);
    if (std::find(kModelNames.begin(), kModelNames.end(), d.model) == kModelNames.end())
        throw UsageError("unknown model '" + d.model + "'");
    if (c.has("A")) {
        if (d.model != "t3a")
            throw UsageError("--A only applies to the t3a model");
        d.A = parse_int_matrix(c.str("A", ""));
    }
    d.seed = c.seed();
    return d;
}

FlowKind flow_kind(const Command& c, const std::string& model)
{
    const std::string name = c.str("flow", "u");
    FlowKind f;
    if (name == "u")
        f = FlowKind::horocycle(c.real("dt", 0.01));
    else if (name == "d")
        f = FlowKind::geodesic(c.real("dt", 0.01));
    else if (name == "b")
        f = FlowKind::borel(c.real("dalpha", 0.0), c.real("dbeta", 0.0));
    else if (name == "sol3u")
        f = FlowKind::sol3u(c.real("dbeta", 0.037));
    else
        throw UsageError("unknown flow '" + name + "'");
    if (f.type == FlowType::Sol3U && model != "t3a")
        throw UsageError("the sol3u flow needs the t3a model");
    try {
        f.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return f;
}

long long step_count(const Command& c)
{
    if (!c.has("steps"))
        throw UsageError("--steps is required");
    return c.integer("steps", 0, 0, kMaxSteps);
}

std::string start_mode(const Command& c)
{
    const std::string s = c.str("start", "base");
    if (s != "base" && s != "random")
        throw UsageError("--start must be base or random");
    return s;
}

QuotientPoint start_point(const Model& m, const std::string& mode, std::uint64_t seed)
{
    if (mode == "base")
        return m.base_point();
    Rng rng(derive_seed(seed, 1));
    return m.random_point(rng);
}

std::vector<int> parse_bins(const std::string& s)
{
    std::istringstream ss(s);
    std::vector<int> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size() || v <= 0)
            throw UsageError("bins: expected positive integers, got '" + s + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("bins: expected positive integers, got '" + s + "'");
    return out;
}

// Writes atomically to path, or to stdout when path is empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& fill)
{
    if (path.empty()) {
        fill(std::cout);
        std::cout.flush();
    } else {
        write_stream_atomic(path, fill);
    }
}

// ---- subcommands -------------------------------------------------------------

int run_flow(const Command& c)
{
    const ModelDescriptor d = model_descriptor(c);
    const FlowKind flow = flow_kind(c, d.model);
    const long long steps = step_count(c);
    const std::string mode = start_mode(c);

    const Model model = build_model(d);
    const QuotientPoint start = start_point(model, mode, d.seed);
    emit(c.str("out", ""), [&](std::ostream& os) {
        write_orbit_header(os, model, flow, steps, d.seed);
        for_each_orbit_sample(model, start, flow, steps,
                              [&](long long, const OrbitSample& s) { write_orbit_row(os, model, s); });
    });
    return 0;
}

int run_density(const Command& c)
{
    const ModelDescriptor d = model_descriptor(c);
    const FlowKind flow = flow_kind(c, d.model);
    const long long steps = step_count(c);
    const std::string mode = start_mode(c);
    const std::vector<int> bins = c.has("bins") ? parse_bins(c.str("bins", "")) : std::vector<int>{};

    const Model model = build_model(d);
    Binning binning;
    try {
        binning = default_binning(model, bins);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    CoverageCounter counter(model, binning);
    for_each_orbit_sample(model, start_point(model, mode, d.seed), flow, steps,
                          [&](long long, const OrbitSample& s) { counter.add(s.point); });
    DensityReport r = counter.report();
    r.flow = flow.name();
    r.steps = steps;
    r.seed = d.seed;
    const std::string json = density_json(r);
    emit(c.str("out", ""), [&](std::ostream& os) { os << json; });
    return 0;
}

std::string describe(const PslClassification& cl)
{
    std::ostringstream os;
    os << "label: " << classification_name(cl) << '\n';
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DiscreteCandidate> || std::is_same_v<T, DenseCandidate>)
                os << "gap: " << format_double(v.gap) << '\n';
            else if constexpr (std::is_same_v<T, FixesBoundaryPoint>)
                os << "fixed boundary point: "
                   << (v.xi.is_infinity() ? std::string("inf") : format_double(v.xi.to_real())) << '\n';
            else
                os << "fixed point: " << format_double(v.z0.re) << " + " << format_double(v.z0.im) << "i\n";
        },
        cl);
    return os.str();
}

int run_classify(const Command& c)
{
    if (!c.has("generators"))
        throw UsageError("--generators is required");
    const int radius = static_cast<int>(c.integer("radius", 4, 0, 6));
    const double tol = c.real("tol", 0.05);
    if (!(tol > 0.0))
        throw UsageError("--tol must be positive");

    const GeneratedGroup group = parse_generators_file(c.str("generators", ""));
    const PslClassification cl = classify_psl_projection(group, radius, tol);
    const WordBall ball = word_ball(group, radius);
    const auto semi = detect_semi_parabolic(group, radius);

    std::ostringstream os;
    os << describe(cl);
    os << "ball: radius " << radius << ", " << ball.size() << " elements\n";
    os << "semi-parabolic: " << semi.size() << '\n';
    for (const auto& e : semi)
        os << "  " << format_word(group, e.word) << "  trace " << format_double(e.element.m.trace()) << '\n';
    const std::string text = os.str();
    emit(c.str("out", ""), [&](std::ostream& o) { o << text; });
    return 0;
}

int run_check(const Command& c)
{
    std::vector<int> ids;
    try {
        ids = suite_criteria(c.str("suite", "all"));
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    int passed = 0;
    for (int id : ids) {
        const CriterionResult r = run_criterion(id);
        std::cout << format_result(r) << std::endl;
        passed += r.passed ? 1 : 0;
    }
    std::cout << passed << " of " << ids.size() << " criteria passed" << std::endl;
    return passed == static_cast<int>(ids.size()) ? 0 : 1;
}

int run_plot(const Command& c)
{
    if (!c.has("csv"))
        throw UsageError("--csv is required");
    std::ifstream in(c.str("csv", ""));
    if (!in)
        throw UsageError("cannot read '" + c.str("csv", "") + "'");
    const CsvTable table = parse_csv(in);
    std::string svg;
    try {
        svg = svg_plot(table, c.str("x", "c1"), c.str("y", "c2"));
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    emit(c.str("out", ""), [&](std::ostream& os) { os << svg; });
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Horocycle, geodesic and Borel flows on hyperbolic quotients and T^3_A"};
    app.require_subcommand(1);

    std::map<std::string, Command> commands;
    auto make = [&](const std::string& name, const std::string& help) -> Command& {
        Command& c = commands[name];
        c.app = app.add_subcommand(name, help);
        c.app->add_option("--config", c.config, "key = value file; flags take precedence");
        return c;
    };

    Command& flow = make("flow", "integrate an orbit and write it as CSV");
    add_flow_options(flow);

    Command& density = make("density", "coverage of an orbit over a grid, as JSON");
    add_flow_options(density);
    density.add("bins", "grid counts: \"nx ny\" or \"nx ny nt\" for t3a, \"nre nim nangle\" for surfaces");

    Command& classify = make("classify", "classify the PSL(2,R) projection of a generator file");
    classify.add("generators", "generator file");
    classify.add("radius", "word-ball radius (default 4)");
    classify.add("tol", "discreteness gap threshold (default 0.05)");
    classify.add("out", "output file (default stdout)");

    Command& check = make("check", "run an acceptance suite");
    check.options["suite"] =
        check.app->add_option("suite", check.values["suite"], "keylemma | steering | t3a | graph | octagon | "
                                                              "contrast | hedlund | reduction | structure | all");

    Command& plot = make("plot", "scatter two columns of an orbit CSV as SVG");
    plot.add("csv", "orbit CSV");
    plot.add("x", "x column (default c1)");
    plot.add("y", "y column (default c2)");
    plot.add("out", "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const std::map<std::string, int (*)(const Command&)> runners = {
        {"flow", run_flow}, {"density", run_density}, {"classify", run_classify},
        {"check", run_check}, {"plot", run_plot}};

    for (auto& [name, cmd] : commands) {
        if (!cmd.app->parsed())
            continue;
        try {
            cmd.merge_config();
            return runners.at(name)(cmd);
        } catch (const UsageError& e) {
            std::cerr << "horo " << name << ": " << e.what() << '\n';
            return 2;
        } catch (const ParseError& e) {
            std::cerr << "horo " << name << ": " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "horo " << name << ": " << e.what() << '\n';
            return 1;
        }
    }
    return 2;
}
