#include "horo/flows.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "horo/errors.hpp"

namespace horo {

FlowKind FlowKind::horocycle(double dt) { return {FlowType::HorocycleU, dt, 0.0, 0.0}; }
FlowKind FlowKind::geodesic(double dt) { return {FlowType::GeodesicD, dt, 0.0, 0.0}; }
FlowKind FlowKind::borel(double dalpha, double dbeta) { return {FlowType::BorelB, 0.0, dalpha, dbeta}; }
FlowKind FlowKind::sol3u(double dbeta) { return {FlowType::Sol3U, 0.0, 0.0, dbeta}; }

void FlowKind::validate() const
{
    auto ok = [](double x) { return std::isfinite(x) && x != 0.0; };
    switch (type) {
    case FlowType::HorocycleU:
    case FlowType::GeodesicD:
        if (!ok(dt))
            throw InvalidArgument("flow step dt must be finite and nonzero");
        break;
    case FlowType::BorelB:
        if (!std::isfinite(dalpha) || !std::isfinite(dbeta) || (dalpha == 0.0 && dbeta == 0.0))
            throw InvalidArgument("Borel step (dalpha, dbeta) must be finite and not both zero");
        break;
    case FlowType::Sol3U:
        if (!ok(dbeta))
            throw InvalidArgument("Sol3 step dbeta must be finite and nonzero");
        break;
    }
}

Moebius FlowKind::step() const
{
    switch (type) {
    case FlowType::HorocycleU: return unipotent(dt);
    case FlowType::GeodesicD: return geodesic_step(dt);
    case FlowType::BorelB: return horo::borel(std::exp(dalpha), dbeta);
    case FlowType::Sol3U: break;
    }
    throw InvalidArgument("the Sol3 flow acts on T3A coordinates, not by a frame multiplier");
}

double FlowKind::time_at(long long k) const
{
    const double kk = static_cast<double>(k);
    switch (type) {
    case FlowType::HorocycleU:
    case FlowType::GeodesicD: return kk * std::abs(dt);
    case FlowType::Sol3U: return kk * std::abs(dbeta);
    case FlowType::BorelB: break;
    }
    return kk;
}

std::string FlowKind::name() const
{
    switch (type) {
    case FlowType::HorocycleU: return "u";
    case FlowType::GeodesicD: return "d";
    case FlowType::BorelB: return "b";
    case FlowType::Sol3U: return "sol3u";
    }
    return "?";
}

QuotientPoint flow_step(const Model& model, const QuotientPoint& p, const FlowKind& flow)
{
    if (flow.type != FlowType::Sol3U)
        return model.right_act(p, flow.step());
    const T3AModel* m = model.t3a_data();
    if (!m)
        throw InvalidArgument("the Sol3 flow is defined on t3a only");
    // Right Sol3 multiplication by (dbeta, 0, 0): x' += lambda^t dbeta, y', t fixed.
    const auto& q = std::get<T3APoint>(p);
    const double s = std::pow(m->lambda, q.t) * flow.dbeta;
    const auto r = t3a_reduce(*m, {q.x + s * m->u[0], q.y + s * m->u[1], q.t});
    return T3APoint{r[0], r[1], r[2], q.direction};
}

void for_each_orbit_sample(const Model& model, const QuotientPoint& start, const FlowKind& flow,
                           long long steps, const std::function<void(long long, const OrbitSample&)>& visit)
{
    flow.validate();
    if (steps < 0 || steps > kMaxSteps)
        throw InvalidArgument("steps must lie in [0, " + std::to_string(kMaxSteps) + "]");
    if (steps == 0)
        return;
    QuotientPoint p = model.reduce(start);
    visit(0, {0.0, p});
    for (long long k = 1; k <= steps; ++k) {
        try {
            p = flow_step(model, p, flow);
        } catch (const ReductionFailure& e) {
            throw ReductionFailure("step " + std::to_string(k) + ": " + e.what());
        }
        visit(k, {flow.time_at(k), p});
    }
}

OrbitSegment integrate_orbit(const Model& model, const QuotientPoint& start, const FlowKind& flow,
                             long long steps, std::uint64_t seed)
{
    OrbitSegment seg{model.name(), flow, seed, steps, {}};
    if (steps > 0)
        seg.samples.reserve(static_cast<std::size_t>(steps) + 1);
    for_each_orbit_sample(model, start, flow, steps,
                          [&](long long, const OrbitSample& s) { seg.samples.push_back(s); });
    return seg;
}

DivergenceReport detect_divergence(const Model& model, const QuotientPoint& start, const FlowKind& flow,
                                   double horizon, double threshold)
{
    flow.validate();
    const double unit = flow.time_at(1);
    const auto steps = static_cast<long long>(std::ceil(horizon / unit - 1e-9));
    DivergenceReport rep;
    QuotientPoint p = model.reduce(start);
    for (long long k = 0;; ++k) {
        const double e = model.escape(p);
        rep.max_escape = std::max(rep.max_escape, e);
        if (e > threshold) {
            rep.diverged = true;
            rep.first_passage_time = flow.time_at(k);
            return rep;
        }
        if (k >= steps)
            return rep;
        p = flow_step(model, p, flow);
    }
}

double t3a_funnel_distance(const BoundaryPoint& xi, double yp)
{
    return std::max(chordal(xi, BoundaryPoint::infinity()), std::abs(yp));
}

FunnelReport t3a_boundary_funnel(const T3AModel& m, BoundaryPoint xi, double yp, int n_max, double tol)
{
    const Moebius h = diagonal(std::sqrt(m.lambda));
    FunnelReport rep;
    for (int n = 0; n <= n_max; ++n) {
        rep.n = n;
        rep.distance = t3a_funnel_distance(xi, yp);
        if (rep.distance < tol) {
            rep.reached = true;
            return rep;
        }
        xi = boundary_apply(h, xi);
        yp /= m.lambda;
    }
    return rep;
}

DivergenceReport detect_boundary_divergence(const T3AModel& m, BoundaryPoint xi, double yp, int n_max,
                                            double threshold)
{
    const Moebius h = diagonal(std::sqrt(m.lambda));
    DivergenceReport rep;
    for (int n = 0; n <= n_max; ++n) {
        const double d = t3a_funnel_distance(xi, yp);
        const double e = d > 0.0 ? 1.0 / d : INFINITY;
        rep.max_escape = std::max(rep.max_escape, e);
        if (e > threshold) {
            rep.diverged = true;
            rep.first_passage_time = n;
            return rep;
        }
        xi = boundary_apply(h, xi);
        yp /= m.lambda;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Key Lemma

namespace {

// Limit of disk iterates w_1..w_N on the boundary circle, or ConvergenceFailure.
BoundaryPoint boundary_limit(const std::vector<std::complex<double>>& w, const KeyLemmaOptions& o,
                             const char* which)
{
    const auto& last = w.back();
    const auto& mid = w[w.size() / 2];
    const double r = std::abs(last);
    if (!(1.0 - r < o.near_boundary) || std::abs(mid) == 0.0)
        throw ConvergenceFailure(std::string(which) + " not found: iterates stay at disk radius " +
                                 std::to_string(r));
    if (std::abs(last / r - mid / std::abs(mid)) >= o.cauchy)
        throw ConvergenceFailure(std::string(which) + " not found: iterates still move along the boundary");
    return detail::disk_boundary_point(last);
}

// image(n, xi0, prev) returns f_n(xi0) given prev = f_{n-1}(xi0) (n >= 1).
template <class Image>
KeyLemmaReport residuals(const std::vector<std::complex<double>>& fwd,
                         const std::vector<std::complex<double>>& bwd, const KeyLemmaOptions& o,
                         Image&& image)
{
    if (o.grid <= 0 || !(o.tol > 0.0))
        throw InvalidArgument("Key Lemma grid and tolerance must be positive");
    KeyLemmaReport rep;
    rep.xi_plus = boundary_limit(fwd, o, "xi+");
    rep.xi_minus = boundary_limit(bwd, o, "xi-");
    const std::size_t N = fwd.size();
    rep.residual_by_n.assign(N, 0.0);
    rep.max_first_hit = 0;
    for (int j = 0; j < o.grid; ++j) {
        const BoundaryPoint xi = BoundaryPoint::from_angle(-kPi + kTwoPi * j / o.grid);
        if (chordal(xi, rep.xi_minus) < o.exclusion)
            continue;
        ++rep.grid_used;
        int hit = -1;
        double res = 0.0;
        BoundaryPoint cur = xi;
        for (std::size_t n = 1; n <= N; ++n) {
            cur = image(n, xi, cur);
            res = chordal(cur, rep.xi_plus);
            rep.residual_by_n[n - 1] = std::max(rep.residual_by_n[n - 1], res);
            if (hit < 0 && res < o.tol)
                hit = static_cast<int>(n);
        }
        if (res >= rep.max_residual) {
            rep.max_residual = res;
            rep.worst_xi = xi;
        }
        if (hit < 0 || rep.max_first_hit < 0)
            rep.max_first_hit = -1;
        else
            rep.max_first_hit = std::max(rep.max_first_hit, hit);
    }
    return rep;
}

}  // namespace

KeyLemmaReport keylemma_converge(const Moebius& g, const KeyLemmaOptions& opts)
{
    if (opts.n_max <= 0)
        throw InvalidArgument("n_max must be positive");
    // Powers of g overflow as matrices; iterate the actions instead.
    const auto D = detail::to_disk(g);
    const auto Dinv = detail::to_disk(g.inverse());
    const std::complex<double> z0 = detail::to_disk(opts.z0);
    std::vector<std::complex<double>> fwd, bwd;
    std::complex<double> wf = z0, wb = z0;
    for (int n = 1; n <= opts.n_max; ++n) {
        wf = D.apply(wf);
        wb = Dinv.apply(wb);
        fwd.push_back(wf);
        bwd.push_back(wb);
    }
    return residuals(fwd, bwd, opts,
                     [&](std::size_t, const BoundaryPoint&, const BoundaryPoint& prev) { return boundary_apply(g, prev); });
}

KeyLemmaReport keylemma_converge(const std::vector<Moebius>& sequence, const KeyLemmaOptions& opts)
{
    if (sequence.empty())
        throw InvalidArgument("Key Lemma needs at least one element");
    const std::complex<double> z0 = detail::to_disk(opts.z0);
    std::vector<std::complex<double>> fwd, bwd;
    for (const auto& f : sequence) {
        fwd.push_back(detail::to_disk(f).apply(z0));
        bwd.push_back(detail::to_disk(f.inverse()).apply(z0));
    }
    return residuals(fwd, bwd, opts, [&](std::size_t n, const BoundaryPoint& xi0, const BoundaryPoint&) {
        return boundary_apply(sequence[n - 1], xi0);
    });
}

}  // namespace horo
