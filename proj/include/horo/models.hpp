#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "horo/groups.hpp"
#include "horo/moebius.hpp"
#include "horo/random.hpp"
#include "horo/transverse.hpp"

namespace horo {

// ---------------------------------------------------------------------------
// Solvmanifold T^3_A

using IntMatrix2 = std::array<long long, 4>;  // (a, b; c, d)

/// Hyperbolic A in SL(2,Z) with eigenvectors Au = lambda u, Av = v / lambda,
/// det(u|v) = 1. Primed entries: u = (d', -b'), v = (c', -a').
struct T3AModel {
    IntMatrix2 A{};
    double lambda = 0.0;
    std::array<double, 2> u{}, v{};
    double ap = 0.0, bp = 0.0, cp = 0.0, dp = 0.0;

    /// (x, y) -> (x', y') with (x, y) = x' u + y' v.
    std::array<double, 2> to_primed(double x, double y) const;
    std::array<double, 2> from_primed(double xp, double yp) const;
};

/// u = (1, (lambda - a) / b) (= (1, lambda - 2) for A = (2,1;1,1)); v carries
/// the det(u|v) = 1 scale. Throws InvalidArgument unless det A = 1, trace > 2.
T3AModel build_t3a(const IntMatrix2& A);

/// True iff no integer w != 0 with entries in [-N, N] has Aw = +-w.
bool check_irrational_slope(const IntMatrix2& A, int N);

/// Canonical (x, y, t) in [0,1)^3: undo floor(t) powers of h_A exactly over Z,
/// then reduce mod 1. Throws ReductionFailure when |floor(t)| > 64.
std::array<double, 3> t3a_reduce(const T3AModel& m, std::array<double, 3> p);

/// Sol^3 law (x',y',t')(x'',y'',t'') = (x' + l^t' x'', y' + l^-t' y'', t' + t'').
std::array<double, 3> sol3_mul(const std::array<double, 3>& p, const std::array<double, 3>& q, double lambda);
/// B -> Sol^3: (alpha, beta) -> (beta, 0, log alpha / log lambda).
std::array<double, 3> sol3_b_embed(double alpha, double beta, double lambda);

/// Holonomy group acting on H x R: T1*, T2*, h_A*.
GeneratedGroup t3a_group(const T3AModel& m);

// ---------------------------------------------------------------------------
// Surfaces

/// Regular-octagon genus-2 group. gens[k] pairs the side facing angle k pi/4;
/// gens[k + 4] = gens[k]^-1.
struct OctagonModel {
    std::array<Moebius, 8> gens;
    double translation_length = 0.0;

    /// g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3.
    Moebius relator() const;
    /// Vertices of the domain in the half-plane, counterclockwise in the disk.
    std::array<HalfPlanePoint, 8> vertices() const;
};

OctagonModel build_octagon();

struct ModularModel {
    Moebius T = Moebius(1.0, 1.0, 0.0, 1.0);
    Moebius S = Moebius(0.0, -1.0, 1.0, 0.0);
};

using SurfaceBase = std::variant<OctagonModel, ModularModel>;

/// Surface base with a transverse factor; holonomy is indexed like the base
/// group's generators (octagon g0..g3; modular T, S).
struct ProductModel {
    SurfaceBase base;
    TransverseKind transverse = TransverseKind::Trivial;
    std::vector<TransverseElement> holonomy;
    bool diagonal = false;  // BoundaryCircle with holonomy(gamma) = gamma
};

struct ProductSpec {
    TransverseKind transverse = TransverseKind::Trivial;
    std::vector<TransverseElement> holonomy;  // explicit, or
    std::optional<std::uint64_t> seed;        // seeded Rotations3
    bool diagonal = false;                    // BoundaryCircle diagonal
};

/// Throws InvalidArgument on arity/kind mismatch or a holonomy violating the
/// surface relation.
ProductModel build_product(const SurfaceBase& base, const ProductSpec& spec);

// ---------------------------------------------------------------------------
// Quotient points

/// Frame with optional transverse coordinate, before reduction.
struct LiftedPoint {
    Moebius frame;
    TransversePoint y = std::monostate{};
};

struct SurfacePoint {
    Moebius frame;
    TransversePoint y = std::monostate{};
};

struct T3APoint {
    double x = 0.0, y = 0.0, t = 0.0;
    double direction = kPi / 2.0;
};

using QuotientPoint = std::variant<SurfacePoint, T3APoint>;

enum class ModelKind { T3A, Octagon, OctagonSO3, OctagonBoundary, Modular, ModularBoundary };

/// Immutable quotient model; all reductions are pure.
class Model {
public:
    static Model t3a(const IntMatrix2& A);
    static Model octagon();
    static Model octagon_so3(std::uint64_t seed);
    static Model octagon_boundary();
    static Model modular();
    static Model modular_boundary();

    ModelKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const GeneratedGroup& group() const { return group_; }
    TransverseKind transverse() const { return group_.kind(); }

    const T3AModel* t3a_data() const;
    const OctagonModel* octagon_data() const;
    bool is_compact() const { return kind_ != ModelKind::Modular && kind_ != ModelKind::ModularBoundary; }

    QuotientPoint base_point() const;
    QuotientPoint random_point(Rng& rng) const;

    LiftedPoint lift(const QuotientPoint& p) const;
    /// Throws ReductionFailure when an iteration cap is hit.
    QuotientPoint reduce(const LiftedPoint& p) const;
    QuotientPoint reduce(const QuotientPoint& p) const { return reduce(lift(p)); }

    bool in_domain(const QuotientPoint& p, double slack = 1e-12) const;
    /// Comparison that also tries each generator once, since points on the
    /// domain boundary have several canonical representatives.
    bool same_point(const QuotientPoint& p, const QuotientPoint& q, double tol) const;

    /// Left action of a group element on a lifted point.
    LiftedPoint left_act(const ProductElement& g, const LiftedPoint& p) const;
    /// Right action on the frame, followed by reduction.
    QuotientPoint right_act(const QuotientPoint& p, const Moebius& g) const;

    /// Cusp excursion: Im of the reduced point for the modular surface; 0 otherwise.
    double escape(const QuotientPoint& p) const;

    std::vector<double> coordinates(const QuotientPoint& p) const;
    /// Period of each coordinate for circular comparisons; 0 = linear.
    std::vector<double> coordinate_periods() const;
    std::vector<std::string> legend() const;

private:
    Model(ModelKind kind, std::string name, std::variant<T3AModel, ProductModel> data, GeneratedGroup group);
    static Model surface(ModelKind kind, std::string name, const SurfaceBase& base, const ProductSpec& spec);

    QuotientPoint reduce_octagon(LiftedPoint p) const;
    QuotientPoint reduce_modular(LiftedPoint p) const;

    ModelKind kind_;
    std::string name_;
    std::variant<T3AModel, ProductModel> data_;
    GeneratedGroup group_;
    std::array<ProductElement, 8> letters_{};  // octagon: side pairings with holonomy
};

/// Greedy Dirichlet descent on the frame alone.
Moebius dirichlet_reduce(const OctagonModel& m, const Moebius& f);
bool in_octagon_domain(const OctagonModel& m, const HalfPlanePoint& z, double slack = 1e-12);

/// Standard modular reduction of a point.
HalfPlanePoint modular_reduce(const HalfPlanePoint& z);

/// Distance to the distinguished minimal set: the graph {(f, f(inf))} for
/// diagonal boundary models, the infinity set for T^3_A. Throws
/// InvalidArgument for other models.
double minimal_set_distance(const Model& model, const LiftedPoint& p);
double minimal_set_distance(const Model& model, const QuotientPoint& p);

}  // namespace horo
