#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horo/models.hpp"

namespace horo {

enum class FlowType { HorocycleU, GeodesicD, BorelB, Sol3U };

struct FlowKind {
    FlowType type = FlowType::HorocycleU;
    double dt = 0.01;      // U and D
    double dalpha = 0.0;   // B: step b_el(e^dalpha, dbeta)
    double dbeta = 0.0;    // B and Sol3U

    static FlowKind horocycle(double dt);
    static FlowKind geodesic(double dt);
    static FlowKind borel(double dalpha, double dbeta);
    static FlowKind sol3u(double dbeta);

    /// Throws InvalidArgument for non-finite or zero steps.
    void validate() const;
    /// Right multiplier of one step (not defined for Sol3U).
    Moebius step() const;
    /// Flow time after k steps: k |dt| for U/D, k |dbeta| for Sol3U, k for B.
    double time_at(long long k) const;
    std::string name() const;
};

struct OrbitSample {
    double time;
    QuotientPoint point;
};

struct OrbitSegment {
    std::string model;
    FlowKind flow;
    std::uint64_t seed = 0;
    long long steps = 0;
    std::vector<OrbitSample> samples;
};

inline constexpr long long kMaxSteps = 100'000'000;

/// One step of the flow followed by reduction.
QuotientPoint flow_step(const Model& model, const QuotientPoint& p, const FlowKind& flow);

/// Visits the start sample (k = 0) and one sample per step; nothing when
/// steps == 0. Reduction failures are rethrown with the step index.
void for_each_orbit_sample(const Model& model, const QuotientPoint& start, const FlowKind& flow,
                           long long steps, const std::function<void(long long, const OrbitSample&)>& visit);

OrbitSegment integrate_orbit(const Model& model, const QuotientPoint& start, const FlowKind& flow,
                             long long steps, std::uint64_t seed);

struct DivergenceReport {
    bool diverged = false;
    double first_passage_time = 0.0;  // meaningful when diverged
    double max_escape = 0.0;
};

/// Runs the flow until time horizon; diverged when the escape functional
/// exceeds threshold.
DivergenceReport detect_divergence(const Model& model, const QuotientPoint& start, const FlowKind& flow,
                                   double horizon, double threshold);

/// max(chordal(xi, inf), |y'|): distance of (xi, y') to (inf, 0) in the
/// boundary x transverse factor of T^3_A.
double t3a_funnel_distance(const BoundaryPoint& xi, double yp);

struct FunnelReport {
    bool reached = false;
    int n = 0;              // first n with distance < tol
    double distance = 0.0;  // at that n, or at n_max
};

/// Iterates h_A*^n (xi, y') = (lambda^n xi, lambda^-n y').
FunnelReport t3a_boundary_funnel(const T3AModel& m, BoundaryPoint xi, double yp, int n_max, double tol);

/// Boundary-iteration divergence: escape = 1 / t3a_funnel_distance.
DivergenceReport detect_boundary_divergence(const T3AModel& m, BoundaryPoint xi, double yp, int n_max,
                                            double threshold);

struct KeyLemmaOptions {
    int n_max = 200;
    double tol = 1e-4;
    double exclusion = 0.01;
    int grid = 64;
    HalfPlanePoint z0{};
    double near_boundary = 1e-3;  // 1 - |w| of the last disk iterate
    double cauchy = 0.05;         // chordal(xi_n, xi_{n/2}) for the limit estimate
};

struct KeyLemmaReport {
    BoundaryPoint xi_plus, xi_minus;
    /// max over admissible grid points of chordal(f_{n_max}(xi), xi_plus).
    double max_residual = 0.0;
    BoundaryPoint worst_xi;
    /// Largest first n with residual < tol; -1 if some grid point never got there.
    int max_first_hit = -1;
    int grid_used = 0;
    /// max over the grid of the residual after n steps, n = 1..n_max.
    std::vector<double> residual_by_n;
};

/// f_n = g^n. Throws ConvergenceFailure when xi+ or xi- is not found.
KeyLemmaReport keylemma_converge(const Moebius& g, const KeyLemmaOptions& opts = {});
/// Caller-supplied f_1..f_N (N becomes n_max).
KeyLemmaReport keylemma_converge(const std::vector<Moebius>& sequence, const KeyLemmaOptions& opts = {});

}  // namespace horo
