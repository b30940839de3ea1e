#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "horo/flows.hpp"
#include "horo/models.hpp"

namespace horo {

struct Axis {
    int coordinate = 0;  // index into Model::coordinates
    double lo = 0.0, hi = 1.0;
    int bins = 1;
};

/// Regular grid over selected coordinates. The optional mask (row-major over
/// the axes, first axis slowest) marks admissible cells; the coverage
/// denominator counts admissible cells only.
struct Binning {
    std::vector<Axis> axes;
    std::vector<char> mask;

    std::size_t total_cells() const;
    std::size_t admissible_cells() const;
    /// Cell index of a coordinate vector, or -1 when outside the ranges.
    long long cell_of(const std::vector<double>& coords) const;
};

struct DensityReport {
    std::string model;
    std::string flow;
    long long steps = 0;
    std::uint64_t seed = 0;
    std::vector<int> bins;
    long long visited = 0;
    long long total = 0;
    double fraction = 0.0;
    long long samples = 0;
};

/// Streaming coverage so long orbits need not be stored.
class CoverageCounter {
public:
    CoverageCounter(const Model& model, Binning binning);
    void add(const QuotientPoint& p);
    DensityReport report() const;

private:
    const Model* model_;
    Binning binning_;
    std::vector<char> hit_;
    long long visited_ = 0;
    long long samples_ = 0;
};

/// Throws InvalidArgument on an empty binning.
DensityReport coverage(const Model& model, const OrbitSegment& orbit, const Binning& binning);

/// Octagon binning over (Re, Im, frame angle) restricted to the domain
/// bounding box; cells whose (Re, Im) square misses the domain are masked out.
Binning octagon_binning(const OctagonModel& m, int nx, int ny, int nangle);
/// (Re z, Im z) box of the fundamental octagon.
std::array<double, 4> octagon_bounding_box(const OctagonModel& m);

/// Default grid per model: t3a (x, y[, t]) on the unit cube; surfaces
/// (Re, Im, frame angle) over the domain box, with cells missing the domain
/// masked out. counts empty = model default (50x50; 10x10x8).
Binning default_binning(const Model& model, const std::vector<int>& counts);

/// max |c_k - c_k(0)| over the orbit, circular coordinates by circular distance.
double fiber_variation(const Model& model, const OrbitSegment& orbit, int coordinate);

struct MinimalSetOptions {
    int samples = 200;
    int radius = 3;
    int group_samples = 50;
    int b_grid = 50;
    std::uint64_t seed = 0;
    bool reduce = true;  // measure after reducing gamma x b back to the domain
};

/// max of minimal_set_distance(gamma x b) over random x in the set, random
/// gamma from the word ball and a B grid. Throws for unsupported models.
double minimal_set_residual(const Model& model, const MinimalSetOptions& opts);

enum class DualSubgroup { U, B };

struct DualPoint {
    std::variant<EPoint, BoundaryPoint> dual;
    TransversePoint y;
};

/// B: (f(inf), y) on PSL/B = boundary; U: (f e1, y) on PSL/U = E.
DualPoint duality_project(const Moebius& f, const TransversePoint& y, DualSubgroup F);

/// Sine of the angle between f e1 and (xi, 1) (or (1, 0) for xi = inf).
double kset_distance(const Moebius& f, const BoundaryPoint& xi);

}  // namespace horo
