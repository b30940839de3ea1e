#include "horo/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "horo/diagnostics.hpp"
#include "horo/errors.hpp"
#include "horo/flows.hpp"
#include "horo/groups.hpp"
#include "horo/models.hpp"
#include "horo/random.hpp"

namespace horo {

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string num(double x)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Random element of PSL(2,R) from entries in [-r, r] (a bounded away from 0).
Moebius random_moebius(Rng& rng, double r)
{
    for (;;) {
        const double a = rng.uniform(-r, r), b = rng.uniform(-r, r), c = rng.uniform(-r, r);
        if (std::abs(a) < 0.1)
            continue;
        return Moebius(a, b, c, (1.0 + b * c) / a);
    }
}

Outcome keylemma()
{
    Rng rng(101);
    KeyLemmaOptions opts;  // n_max 200, tol 1e-4, exclusion 0.01, 64-point grid
    int worst_n = 0;
    double worst_fix = 0.0;
    for (int k = 0; k < 20;) {
        const Moebius g = random_moebius(rng, 2.0);
        if (std::abs(g.trace()) <= 2.1)
            continue;
        ++k;
        const KeyLemmaReport r = keylemma_converge(g, opts);
        if (r.max_first_hit < 0)
            return {false, "grid point of g#" + std::to_string(k) + " never within 1e-4 of xi+ (residual " +
                               num(r.max_residual) + ")"};
        const auto fp = std::get<HyperbolicFixed>(fixed_points(g));
        worst_fix = std::max({worst_fix, chordal(r.xi_plus, fp.attracting), chordal(r.xi_minus, fp.repelling)});
        worst_n = std::max(worst_n, r.max_first_hit);
    }
    const bool ok = worst_n <= 200 && worst_fix < 1e-8;
    return {ok, "20 elements, worst first n = " + std::to_string(worst_n) +
                    ", xi+- vs fixed points " + num(worst_fix)};
}

Outcome steering()
{
    Rng rng(202);
    double worst = 0.0;
    for (int k = 0; k < 1000;) {
        const Moebius f = random_moebius(rng, 3.0);
        if (std::abs(f.c()) <= 1e-3)
            continue;
        ++k;
        const double alpha = rng.uniform(0.1, 10.0);
        const Steering s = steer_to_diagonal(f, alpha);
        worst = std::max(worst, (s.left * f * s.right).max_entry_diff(Moebius(alpha, 0.0, f.c(), 1.0 / alpha)));
    }
    return {worst < 1e-9, "1000 elements, max entry error " + num(worst)};
}

Outcome t3a_fibre()
{
    const Model model = Model::t3a({2, 1, 1, 1});
    const OrbitSegment orbit = integrate_orbit(model, model.base_point(), FlowKind::sol3u(0.037), 100000, 0);
    const double var = fiber_variation(model, orbit, 2);
    Binning b;
    b.axes = {{0, 0.0, 1.0, 50}, {1, 0.0, 1.0, 50}};
    const DensityReport d = coverage(model, orbit, b);
    return {var == 0.0 && d.fraction >= 0.99,
            "t variation " + num(var) + ", (x,y) 50x50 coverage " + num(d.fraction)};
}

Outcome t3a_funnel()
{
    const T3AModel m = build_t3a({2, 1, 1, 1});
    Rng rng(404);
    int worst = 0;
    for (int k = 0; k < 100;) {
        const BoundaryPoint xi = BoundaryPoint::from_angle(rng.uniform(-kPi, kPi));
        const double yp = rng.uniform(-10.0, 10.0);
        if (chordal(xi, BoundaryPoint::from_real(0.0)) <= 0.01)
            continue;
        ++k;
        const FunnelReport r = t3a_boundary_funnel(m, xi, yp, 60, 1e-3);
        if (!r.reached)
            return {false, "xi = " + num(xi.to_real()) + ", y' = " + num(yp) + " still at " + num(r.distance) +
                               " after 60 steps"};
        worst = std::max(worst, r.n);
    }
    return {true, "100 pairs, worst n = " + std::to_string(worst)};
}

Outcome graph_set()
{
    const Model model = Model::octagon_boundary();
    MinimalSetOptions o;
    o.samples = 200;
    o.radius = 3;
    o.group_samples = 50;
    o.b_grid = 50;
    o.seed = 505;
    const double r = minimal_set_residual(model, o);
    return {r <= 1e-8, "200 x 50 x 50 residual " + num(r)};
}

Outcome octagon_semi_parabolic()
{
    const Model model = Model::octagon();
    const WordBall ball = word_ball(model.group(), 4);
    double gap = INFINITY;
    for (const auto& e : ball.entries)
        if (!e.word.empty())
            gap = std::min(gap, std::abs(std::abs(e.element.m.trace()) - 2.0));
    const double rel = model.octagon_data()->relator().distance_to_identity();
    return {gap > 0.1 && rel <= 1e-6, std::to_string(ball.size()) + " elements, min ||tr|-2| = " + num(gap) +
                                          ", relator error " + num(rel)};
}

Outcome contrast()
{
    const Model model = Model::modular();
    const OrbitSegment u = integrate_orbit(model, model.base_point(), FlowKind::horocycle(0.01), 100, 0);
    const auto& f0 = std::get<SurfacePoint>(u.samples.front().point).frame;
    const auto& f1 = std::get<SurfacePoint>(u.samples.back().point).frame;
    const double period_err = f0.max_entry_diff(f1);
    const DivergenceReport d = detect_divergence(model, model.base_point(), FlowKind::geodesic(0.01), 6.0, 100.0);
    return {period_err <= 1e-9 && d.diverged && d.first_passage_time <= 6.0,
            "U period error " + num(period_err) + " at t = " + num(u.samples.back().time) +
                "; geodesic Im > 100 at t = " + num(d.first_passage_time)};
}

Outcome hedlund()
{
    const Model model = Model::octagon();
    const OctagonModel& oct = *model.octagon_data();
    const Binning masked = octagon_binning(oct, 10, 10, 8);
    Binning box = masked;
    box.mask.clear();
    CoverageCounter in_domain(model, masked), in_box(model, box);
    for_each_orbit_sample(model, model.base_point(), FlowKind::horocycle(0.05), 199999,
                          [&](long long, const OrbitSample& s) {
                              in_domain.add(s.point);
                              in_box.add(s.point);
                          });
    const DensityReport r = in_domain.report();
    const DensityReport raw = in_box.report();
    return {r.fraction >= 0.9, std::to_string(r.samples) + " samples, coverage " + num(r.fraction) + " of " +
                                   std::to_string(r.total) + " domain cells (" + num(raw.fraction) +
                                   " of all 800 box cells)"};
}

Outcome reduction()
{
    const std::vector<Model> models = {Model::t3a({2, 1, 1, 1}), Model::octagon(), Model::octagon_so3(7),
                                       Model::octagon_boundary(), Model::modular()};
    std::string detail;
    bool ok = true;
    for (const auto& model : models) {
        Rng rng(derive_seed(909, static_cast<std::uint64_t>(model.kind())));
        const WordBall ball = word_ball(model.group(), 2);
        int bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const QuotientPoint p = model.random_point(rng);
            const ProductElement& g = ball.entries[rng.index(ball.size())].element;
            const QuotientPoint again = model.reduce(p);
            const QuotientPoint moved = model.reduce(model.left_act(g, model.lift(p)));
            if (!model.in_domain(p) || !model.same_point(again, p, 1e-9) || !model.same_point(moved, p, 1e-9))
                ++bad;
        }
        ok = ok && bad == 0;
        detail += (detail.empty() ? "" : ", ") + model.name() + " " + std::to_string(bad) + "/1000 bad";
    }
    return {ok, detail};
}

std::vector<IntMatrix2> hyperbolic_sl2z(int max_trace)
{
    std::vector<IntMatrix2> out;
    for (long long tr = 3; tr <= max_trace; ++tr)
        for (long long a = -10; a <= tr + 10; ++a) {
            const long long d = tr - a;
            const long long bc = a * d - 1;
            if (bc == 0)
                continue;
            for (long long b = 1; b <= std::llabs(bc); ++b)
                if (bc % b == 0) {
                    out.push_back({a, b, bc / b, d});
                    out.push_back({a, -b, -bc / b, d});
                }
        }
    return out;
}

Outcome structure()
{
    Rng rng(1010);
    const auto pool = hyperbolic_sl2z(50);
    double det_err = 0.0;
    for (int k = 0; k < 50; ++k) {
        const T3AModel m = build_t3a(pool[rng.index(pool.size())]);
        det_err = std::max(det_err, std::abs(m.bp * m.cp - m.ap * m.dp - 1.0));
    }

    // Generators in the standard frame versus their primed forms.
    const T3AModel m = build_t3a({2, 1, 1, 1});
    const auto [a, b, c, d] = m.A;
    double frame_err = 0.0, literal_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double x = rng.uniform(-2.0, 2.0), y = rng.uniform(-2.0, 2.0);
        const auto p = m.to_primed(x, y);
        const auto t1 = m.to_primed(x + 1.0, y);
        const auto t2 = m.to_primed(x, y + 1.0);
        const auto h = m.to_primed(a * x + b * y, c * x + d * y);
        frame_err = std::max({frame_err, std::abs(t1[0] - (p[0] - m.ap)), std::abs(t1[1] - (p[1] + m.bp)),
                              std::abs(t2[0] - (p[0] - m.cp)), std::abs(t2[1] - (p[1] + m.dp)),
                              std::abs(h[0] - m.lambda * p[0]), std::abs(h[1] - p[1] / m.lambda)});
        literal_err = std::max({literal_err, std::abs(t1[0] - (p[0] + m.ap)), std::abs(t2[0] - (p[0] + m.cp))});
    }

    double hom_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double a1 = rng.uniform(0.2, 5.0), b1 = rng.uniform(-3.0, 3.0);
        const double a2 = rng.uniform(0.2, 5.0), b2 = rng.uniform(-3.0, 3.0);
        const auto lhs = sol3_mul(sol3_b_embed(a1, b1, m.lambda), sol3_b_embed(a2, b2, m.lambda), m.lambda);
        const auto rhs = sol3_b_embed(a1 * a2, a1 * b2 + b1, m.lambda);
        for (int i = 0; i < 3; ++i)
            hom_err = std::max(hom_err, std::abs(lhs[i] - rhs[i]));
    }
    return {det_err <= 1e-12 && frame_err <= 1e-9 && hom_err <= 1e-9,
            "b'c'-a'd' error " + num(det_err) + " over 50 of " + std::to_string(pool.size()) +
                " matrices; frame change " + num(frame_err) + " (with +a', +c' shifts: " + num(literal_err) +
                "); Sol3 embedding " + num(hom_err)};
}

struct Criterion {
    const char* name;
    double limit;
    Outcome (*run)();
};

const std::map<int, Criterion>& criteria()
{
    static const std::map<int, Criterion> table = {
        {1, {"keylemma-limits", 1.0, keylemma}},
        {2, {"steering-identity", 1.0, steering}},
        {3, {"t3a-fibre-density", 10.0, t3a_fibre}},
        {4, {"t3a-boundary-funnel", 1.0, t3a_funnel}},
        {5, {"graph-minimal-set", 5.0, graph_set}},
        {6, {"octagon-no-semi-parabolics", 30.0, octagon_semi_parabolic}},
        {7, {"modular-contrast", 1.0, contrast}},
        {8, {"hedlund-coverage", 60.0, hedlund}},
        {9, {"reduction-correctness", 5.0, reduction}},
        {10, {"t3a-structure", 5.0, structure}},
    };
    return table;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite)
{
    static const std::map<std::string, std::vector<int>> suites = {
        {"keylemma", {1}}, {"steering", {2}}, {"t3a", {3, 4}},       {"graph", {5}},
        {"octagon", {6}},  {"contrast", {7}}, {"hedlund", {8}},      {"reduction", {9}},
        {"structure", {10}}, {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
    };
    const auto it = suites.find(suite);
    if (it == suites.end())
        throw InvalidArgument("unknown suite '" + suite + "'");
    return it->second;
}

std::vector<std::string> suite_names()
{
    return {"keylemma", "steering", "t3a", "graph", "octagon", "contrast", "hedlund", "reduction", "structure", "all"};
}

CriterionResult run_criterion(int id)
{
    const auto it = criteria().find(id);
    if (it == criteria().end())
        throw InvalidArgument("no criterion " + std::to_string(id));
    const Criterion& c = it->second;
    CriterionResult r;
    r.id = id;
    r.name = c.name;
    r.limit_seconds = c.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = c.run();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds >= r.limit_seconds) {
        r.passed = false;
        r.detail += "; runtime over the " + num(r.limit_seconds) + " s budget";
    }
    return r;
}

std::string format_result(const CriterionResult& r)
{
    char head[160];
    std::snprintf(head, sizeof head, "%s %d %s %.2fs/%.0fs | ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds, r.limit_seconds);
    return head + r.detail;
}

}  // namespace horo
