#include <gtest/gtest.h>

#include <cmath>

#include "horo/diagnostics.hpp"
#include "horo/errors.hpp"
#include "horo/flows.hpp"
#include "horo/random.hpp"

using namespace horo;

TEST(Binning, CellIndexing)
{
    Binning b;
    b.axes = {{0, 0.0, 1.0, 4}, {1, -1.0, 1.0, 2}};
    EXPECT_EQ(b.total_cells(), 8u);
    EXPECT_EQ(b.admissible_cells(), 8u);
    EXPECT_EQ(b.cell_of({0.1, -0.5}), 0);
    EXPECT_EQ(b.cell_of({0.1, 0.5}), 1);
    EXPECT_EQ(b.cell_of({0.9, 0.5}), 7);
    EXPECT_EQ(b.cell_of({1.0, 1.0}), 7);  // upper edge belongs to the last cell
    EXPECT_EQ(b.cell_of({1.2, 0.0}), -1);
    EXPECT_THROW(b.cell_of({0.5}), InvalidArgument);
}

TEST(Coverage, EmptyAndFull)
{
    const Model m = Model::t3a({2, 1, 1, 1});
    const Binning b = default_binning(m, {});
    OrbitSegment empty;
    EXPECT_EQ(coverage(m, empty, b).fraction, 0.0);

    OrbitSegment centers;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j)
            centers.samples.push_back({0.0, T3APoint{(i + 0.5) / 50, (j + 0.5) / 50, 0.25}});
    const DensityReport r = coverage(m, centers, b);
    EXPECT_EQ(r.visited, 2500);
    EXPECT_EQ(r.total, 2500);
    EXPECT_DOUBLE_EQ(r.fraction, 1.0);
    EXPECT_EQ(r.samples, 2500);

    Binning bad;
    EXPECT_THROW(coverage(m, empty, bad), InvalidArgument);
}

TEST(Coverage, Sol3OrbitFillsTheFibre)
{
    const Model m = Model::t3a({2, 1, 1, 1});
    const OrbitSegment orbit = integrate_orbit(m, m.base_point(), FlowKind::sol3u(0.037), 100000, 0);
    EXPECT_EQ(fiber_variation(m, orbit, 2), 0.0);
    EXPECT_GE(coverage(m, orbit, default_binning(m, {50, 50})).fraction, 0.99);
    // Streaming counter agrees with the stored orbit.
    CoverageCounter c(m, default_binning(m, {50, 50}));
    for (const auto& s : orbit.samples)
        c.add(s.point);
    EXPECT_EQ(c.report().visited, coverage(m, orbit, default_binning(m, {50, 50})).visited);
}

TEST(FiberVariation, ConstantAndGeodesic)
{
    const Model m = Model::t3a({2, 1, 1, 1});
    OrbitSegment constant;
    for (int k = 0; k < 10; ++k)
        constant.samples.push_back({k * 1.0, T3APoint{0.3, 0.4, 0.5}});
    for (int c = 0; c < 4; ++c)
        EXPECT_EQ(fiber_variation(m, constant, c), 0.0);

    const OrbitSegment geo = integrate_orbit(m, m.base_point(), FlowKind::geodesic(0.01), 1000, 0);
    EXPECT_GT(fiber_variation(m, geo, 2), 0.1);
    EXPECT_THROW(fiber_variation(m, geo, 9), InvalidArgument);
}

TEST(OctagonBinning, MaskCoversTheDomain)
{
    const OctagonModel oct = build_octagon();
    const Binning b = octagon_binning(oct, 10, 10, 8);
    EXPECT_EQ(b.total_cells(), 800u);
    EXPECT_EQ(b.admissible_cells(), 608u);
    // Any cell with a domain point on a finer sampling grid must be admissible.
    const auto box = octagon_bounding_box(oct);
    for (int i = 0; i <= 256; ++i)
        for (int j = 0; j <= 256; ++j) {
            const double re = box[0] + (box[1] - box[0]) * i / 256.0;
            const double im = box[2] + (box[3] - box[2]) * j / 256.0;
            if (!in_octagon_domain(oct, HalfPlanePoint(re, im), 0.0))
                continue;
            const long long cell = b.cell_of({re, im, 0.1});
            ASSERT_GE(cell, 0);
            EXPECT_TRUE(b.mask[static_cast<std::size_t>(cell)]) << re << ' ' << im;
        }
    // The box is tight around the vertices' hull.
    for (const auto& v : oct.vertices()) {
        EXPECT_GE(v.re, box[0] - 1e-12);
        EXPECT_LE(v.re, box[1] + 1e-12);
        EXPECT_GE(v.im, box[2] - 1e-12);
        EXPECT_LE(v.im, box[3] + 1e-12);
    }
    EXPECT_THROW(octagon_binning(oct, 0, 10, 8), InvalidArgument);
}

TEST(OctagonBinning, HorocycleOrbitCoverage)
{
    const Model m = Model::octagon();
    CoverageCounter c(m, default_binning(m, {}));
    for_each_orbit_sample(m, m.base_point(), FlowKind::horocycle(0.05), 199999,
                          [&](long long, const OrbitSample& s) { c.add(s.point); });
    EXPECT_GE(c.report().fraction, 0.9);
    EXPECT_EQ(c.report().samples, 200000);
}

TEST(DefaultBinning, Shapes)
{
    EXPECT_EQ(default_binning(Model::t3a({2, 1, 1, 1}), {}).total_cells(), 2500u);
    EXPECT_EQ(default_binning(Model::t3a({2, 1, 1, 1}), {5, 5, 5}).total_cells(), 125u);
    EXPECT_THROW(default_binning(Model::t3a({2, 1, 1, 1}), {5}), InvalidArgument);
    EXPECT_THROW(default_binning(Model::octagon(), {5, 5}), InvalidArgument);
    EXPECT_THROW(default_binning(Model::octagon(), {5, 0, 5}), InvalidArgument);
    const Binning mod = default_binning(Model::modular(), {});
    EXPECT_EQ(mod.total_cells(), 800u);
    // Even the lowest row reaches |z| = 1 at the corners Re = +-1/2.
    EXPECT_EQ(mod.admissible_cells(), 800u);
}

TEST(MinimalSet, GraphResidual)
{
    MinimalSetOptions opts;
    opts.samples = 40;
    opts.group_samples = 20;
    opts.b_grid = 20;
    opts.seed = 5;
    EXPECT_LE(minimal_set_residual(Model::octagon_boundary(), opts), 1e-8);
    opts.reduce = false;
    EXPECT_LE(minimal_set_residual(Model::octagon_boundary(), opts), 1e-8);
    EXPECT_LE(minimal_set_residual(Model::t3a({2, 1, 1, 1}), opts), 1e-8);
    EXPECT_THROW(minimal_set_residual(Model::octagon(), opts), InvalidArgument);
}

TEST(Duality, Projections)
{
    const auto b = duality_project(Moebius(), std::monostate{}, DualSubgroup::B);
    EXPECT_TRUE(std::get<BoundaryPoint>(b.dual).is_infinity(1e-15));
    const auto u = duality_project(Moebius(), std::monostate{}, DualSubgroup::U);
    EXPECT_NEAR(std::get<EPoint>(u.dual).p(), 1.0, 1e-15);
    EXPECT_NEAR(std::get<EPoint>(u.dual).q(), 0.0, 1e-15);

    const Moebius f(2.0, 1.0, 1.0, 1.0);
    EXPECT_NEAR(std::get<BoundaryPoint>(duality_project(f, 0.5, DualSubgroup::B).dual).to_real(), 2.0, 1e-14);
    const auto fu = std::get<EPoint>(duality_project(f, 0.5, DualSubgroup::U).dual);
    EXPECT_NEAR(fu.p(), 2.0, 1e-15);
    EXPECT_NEAR(fu.q(), 1.0, 1e-15);
    EXPECT_EQ(std::get<double>(duality_project(f, 0.5, DualSubgroup::U).y), 0.5);

    for (double t : {-3.0, 0.4, 11.0}) {
        const auto g = std::get<EPoint>(duality_project(f * unipotent(t), 0.5, DualSubgroup::U).dual);
        EXPECT_NEAR(g.p(), fu.p(), 1e-12);
        EXPECT_NEAR(g.q(), fu.q(), 1e-12);
        const auto h = std::get<BoundaryPoint>(duality_project(f * borel(2.0, t), 0.5, DualSubgroup::B).dual);
        EXPECT_NEAR(h.to_real(), 2.0, 1e-12);
    }
}

TEST(Duality, KSetDistance)
{
    EXPECT_NEAR(kset_distance(Moebius(2.0, 1.0, 1.0, 1.0), BoundaryPoint::from_real(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(kset_distance(Moebius(), BoundaryPoint::infinity()), 0.0, 1e-15);
    // v = (0, 1) is collinear with (0, 1) for xi = 0 and perpendicular to (1, 0) for xi = inf.
    const Moebius s(0.0, -1.0, 1.0, 0.0);
    EXPECT_NEAR(kset_distance(s, BoundaryPoint::from_real(0.0)), 0.0, 1e-15);
    EXPECT_NEAR(kset_distance(s, BoundaryPoint::infinity()), 1.0, 1e-15);
    EXPECT_NEAR(kset_distance(Moebius(), BoundaryPoint::from_real(0.0)), 1.0, 1e-15);
    // Sine of the angle between (1, 1) and (1, 0).
    EXPECT_NEAR(kset_distance(Moebius(1.0, 0.0, 1.0, 1.0), BoundaryPoint::infinity()), std::sqrt(0.5), 1e-15);
}

TEST(Duality, KSetIsRightUInvariant)
{
    Rng rng(41);
    for (int k = 0; k < 1000; ++k) {
        const Moebius f = rotation(rng.uniform(-kPi, kPi)) * geodesic_step(rng.uniform(-2, 2));
        const BoundaryPoint xi = boundary_apply(f, BoundaryPoint::infinity());
        ASSERT_LT(kset_distance(f, xi), 1e-12);
        EXPECT_LT(kset_distance(f * unipotent(rng.uniform(-50, 50)), xi), 1e-8);
    }
}
