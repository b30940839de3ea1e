#include "horo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "horo/errors.hpp"

namespace horo {

std::size_t Binning::total_cells() const
{
    std::size_t n = 1;
    for (const auto& a : axes)
        n *= static_cast<std::size_t>(a.bins);
    return n;
}

std::size_t Binning::admissible_cells() const
{
    if (mask.empty())
        return total_cells();
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

long long Binning::cell_of(const std::vector<double>& coords) const
{
    long long idx = 0;
    for (const auto& a : axes) {
        if (a.coordinate < 0 || static_cast<std::size_t>(a.coordinate) >= coords.size())
            throw InvalidArgument("binning axis refers to a missing coordinate");
        const double c = coords[static_cast<std::size_t>(a.coordinate)];
        if (!(c >= a.lo && c <= a.hi))
            return -1;
        auto i = static_cast<long long>(std::floor((c - a.lo) / (a.hi - a.lo) * a.bins));
        i = std::clamp<long long>(i, 0, a.bins - 1);  // c == hi lands in the last cell
        idx = idx * a.bins + i;
    }
    return idx;
}

namespace {

void validate(const Binning& b)
{
    if (b.axes.empty())
        throw InvalidArgument("binning has no axes");
    for (const auto& a : b.axes)
        if (a.bins <= 0 || !(a.hi > a.lo))
            throw InvalidArgument("binning axis needs bins > 0 and hi > lo");
    if (!b.mask.empty() && b.mask.size() != b.total_cells())
        throw InvalidArgument("binning mask size does not match the grid");
}

}  // namespace

CoverageCounter::CoverageCounter(const Model& model, Binning binning)
    : model_(&model), binning_(std::move(binning))
{
    validate(binning_);
    hit_.assign(binning_.total_cells(), 0);
}

void CoverageCounter::add(const QuotientPoint& p)
{
    ++samples_;
    const long long c = binning_.cell_of(model_->coordinates(p));
    if (c < 0)
        return;
    const auto i = static_cast<std::size_t>(c);
    if (!binning_.mask.empty() && !binning_.mask[i])
        return;
    if (!hit_[i]) {
        hit_[i] = 1;
        ++visited_;
    }
}

DensityReport CoverageCounter::report() const
{
    DensityReport r;
    r.model = model_->name();
    for (const auto& a : binning_.axes)
        r.bins.push_back(a.bins);
    r.visited = visited_;
    r.total = static_cast<long long>(binning_.admissible_cells());
    r.fraction = r.total > 0 ? static_cast<double>(r.visited) / static_cast<double>(r.total) : 0.0;
    r.samples = samples_;
    return r;
}

DensityReport coverage(const Model& model, const OrbitSegment& orbit, const Binning& binning)
{
    CoverageCounter counter(model, binning);
    for (const auto& s : orbit.samples)
        counter.add(s.point);
    DensityReport r = counter.report();
    r.flow = orbit.flow.name();
    r.steps = orbit.steps;
    r.seed = orbit.seed;
    return r;
}

std::array<double, 4> octagon_bounding_box(const OctagonModel& m)
{
    // Sides are geodesic arcs between consecutive vertices; in the disk,
    // move v1 to 0, where the arc becomes a radius, sample, move back.
    const auto verts = m.vertices();
    std::array<double, 4> box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    const std::complex<double> i(0.0, 1.0);
    constexpr int kSamples = 4096;
    for (int k = 0; k < 8; ++k) {
        const auto v1 = detail::to_disk(verts[k]);
        const auto v2 = detail::to_disk(verts[(k + 1) % 8]);
        const auto end = (v2 - v1) / (1.0 - std::conj(v1) * v2);
        for (int s = 0; s <= kSamples; ++s) {
            const auto w0 = end * (static_cast<double>(s) / kSamples);
            const auto w = (w0 + v1) / (1.0 + std::conj(v1) * w0);
            const auto z = i * (1.0 + w) / (1.0 - w);
            box[0] = std::min(box[0], z.real());
            box[1] = std::max(box[1], z.real());
            box[2] = std::min(box[2], z.imag());
            box[3] = std::max(box[3], z.imag());
        }
    }
    return box;
}

namespace {

// Cells of the first two axes whose square meets the domain, sampled on a
// 16x16 sub-grid; the remaining axes are unrestricted.
template <class Inside>
std::vector<char> domain_mask(const Binning& b, Inside&& inside)
{
    constexpr int kSub = 16;
    const Axis& ax = b.axes[0];
    const Axis& ay = b.axes[1];
    const std::size_t rest = b.total_cells() / static_cast<std::size_t>(ax.bins * ay.bins);
    std::vector<char> mask(b.total_cells(), 0);
    const double wx = (ax.hi - ax.lo) / ax.bins, wy = (ay.hi - ay.lo) / ay.bins;
    for (int ix = 0; ix < ax.bins; ++ix)
        for (int iy = 0; iy < ay.bins; ++iy) {
            bool meets = false;
            for (int sx = 0; sx <= kSub && !meets; ++sx)
                for (int sy = 0; sy <= kSub && !meets; ++sy)
                    meets = inside(HalfPlanePoint(ax.lo + wx * (ix + static_cast<double>(sx) / kSub),
                                                  ay.lo + wy * (iy + static_cast<double>(sy) / kSub)));
            const std::size_t base = static_cast<std::size_t>(ix * ay.bins + iy) * rest;
            std::fill(mask.begin() + static_cast<long>(base), mask.begin() + static_cast<long>(base + rest),
                      meets ? 1 : 0);
        }
    return mask;
}

}  // namespace

Binning octagon_binning(const OctagonModel& m, int nx, int ny, int nangle)
{
    if (nx <= 0 || ny <= 0 || nangle <= 0)
        throw InvalidArgument("bin counts must be positive");
    const auto box = octagon_bounding_box(m);
    Binning b;
    b.axes = {{0, box[0], box[1], nx}, {1, box[2], box[3], ny}, {2, 0.0, kTwoPi, nangle}};
    b.mask = domain_mask(b, [&](const HalfPlanePoint& z) { return in_octagon_domain(m, z, 0.0); });
    return b;
}

Binning default_binning(const Model& model, const std::vector<int>& counts)
{
    for (int c : counts)
        if (c <= 0)
            throw InvalidArgument("bin counts must be positive");
    if (model.kind() == ModelKind::T3A) {
        if (!counts.empty() && counts.size() != 2 && counts.size() != 3)
            throw InvalidArgument("t3a binning takes 2 or 3 counts (x y [t])");
        Binning b;
        const int nx = counts.empty() ? 50 : counts[0];
        const int ny = counts.empty() ? 50 : counts[1];
        b.axes = {{0, 0.0, 1.0, nx}, {1, 0.0, 1.0, ny}};
        if (counts.size() == 3)
            b.axes.push_back({2, 0.0, 1.0, counts[2]});
        return b;
    }
    if (!counts.empty() && counts.size() != 3)
        throw InvalidArgument("surface binning takes 3 counts (Re Im angle)");
    const int nx = counts.empty() ? 10 : counts[0];
    const int ny = counts.empty() ? 10 : counts[1];
    const int na = counts.empty() ? 8 : counts[2];
    if (const auto* o = model.octagon_data())
        return octagon_binning(*o, nx, ny, na);
    // Modular: the cusp is cut off at Im = 4.
    Binning b;
    b.axes = {{0, -0.5, 0.5, nx}, {1, std::sqrt(3.0) / 2.0, 4.0, ny}, {2, 0.0, kTwoPi, na}};
    b.mask = domain_mask(b, [](const HalfPlanePoint& z) { return std::abs(z.as_complex()) >= 1.0; });
    return b;
}

double fiber_variation(const Model& model, const OrbitSegment& orbit, int coordinate)
{
    const auto periods = model.coordinate_periods();
    if (coordinate < 0 || static_cast<std::size_t>(coordinate) >= periods.size())
        throw InvalidArgument("coordinate index out of range");
    if (orbit.samples.empty())
        return 0.0;
    const auto k = static_cast<std::size_t>(coordinate);
    const double period = periods[k];
    const double c0 = model.coordinates(orbit.samples.front().point)[k];
    double worst = 0.0;
    for (const auto& s : orbit.samples) {
        const double c = model.coordinates(s.point)[k];
        worst = std::max(worst, period > 0.0 ? circular_distance(c, c0, period) : std::abs(c - c0));
    }
    return worst;
}

double minimal_set_residual(const Model& model, const MinimalSetOptions& opts)
{
    const bool t3a = model.kind() == ModelKind::T3A;
    if (!t3a && model.kind() != ModelKind::OctagonBoundary && model.kind() != ModelKind::ModularBoundary)
        throw InvalidArgument("model " + model.name() + " has no distinguished minimal set");
    if (opts.samples <= 0 || opts.group_samples <= 0 || opts.b_grid <= 0)
        throw InvalidArgument("minimal-set residual needs positive sample counts");

    Rng rng(opts.seed);
    const WordBall ball = word_ball(model.group(), opts.radius);
    std::vector<const ProductElement*> gammas;
    for (int k = 0; k < opts.group_samples; ++k)
        gammas.push_back(&ball.entries[rng.index(ball.size())].element);

    const int na = std::min(opts.b_grid, 5);
    const int nb = std::max(1, opts.b_grid / na);
    std::vector<Moebius> bs;
    for (int ia = 0; ia < na; ++ia)
        for (int ib = 0; ib < nb; ++ib) {
            const double s = na > 1 ? -1.0 + 2.0 * ia / (na - 1) : 0.0;
            const double beta = nb > 1 ? -2.0 + 4.0 * ib / (nb - 1) : 0.0;
            bs.push_back(borel(std::exp(s), beta));
        }

    double worst = 0.0;
    for (int k = 0; k < opts.samples; ++k) {
        LiftedPoint x;
        if (t3a) {
            T3APoint q{rng.uniform(), rng.uniform(), rng.uniform(), kPi / 2.0};
            x = model.lift(q);
        } else {
            x = model.lift(model.random_point(rng));
            x.y = boundary_apply(x.frame, BoundaryPoint::infinity());
        }
        for (const auto* g : gammas) {
            const LiftedPoint gx = model.left_act(*g, x);
            for (const auto& b : bs) {
                LiftedPoint p{gx.frame * b, gx.y};
                const double d = opts.reduce ? minimal_set_distance(model, model.reduce(p))
                                             : minimal_set_distance(model, p);
                worst = std::max(worst, d);
            }
        }
    }
    return worst;
}

DualPoint duality_project(const Moebius& f, const TransversePoint& y, DualSubgroup F)
{
    if (F == DualSubgroup::B)
        return {boundary_apply(f, BoundaryPoint::infinity()), y};
    return {e_apply(f, EPoint::e1()), y};
}

double kset_distance(const Moebius& f, const BoundaryPoint& xi)
{
    const EPoint v = e_apply(f, EPoint::e1());
    const auto [wp, wq] = xi.homogeneous();
    return std::abs(v.p() * wq - v.q() * wp) / v.norm();
}

}  // namespace horo
