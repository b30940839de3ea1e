#pragma once

#include <complex>
#include <variant>

namespace horo {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Drift of ad - bc above which an element is rescaled by 1/sqrt(ad - bc).
inline constexpr double kDeterminantDrift = 1e-12;
/// Tolerance on ||trace| - 2| separating parabolic from elliptic/hyperbolic.
inline constexpr double kTraceTolerance = 1e-9;

/// A point of the upper half-plane, Im > 0.
struct HalfPlanePoint {
    double re = 0.0;
    double im = 1.0;

    HalfPlanePoint() = default;
    HalfPlanePoint(double re_, double im_);

    std::complex<double> as_complex() const { return {re, im}; }
};

/// A point of the boundary circle R u {inf}, stored as an angle theta in
/// (-pi, pi] with x = tan(theta / 2); infinity is theta = pi.
class BoundaryPoint {
public:
    BoundaryPoint() = default;

    static BoundaryPoint from_angle(double theta);
    static BoundaryPoint from_real(double x);
    static BoundaryPoint infinity() { return BoundaryPoint(kPi); }
    /// Projective class of the nonzero vector (p, q), i.e. the point p / q.
    static BoundaryPoint from_homogeneous(double p, double q);

    double angle() const { return theta_; }
    /// tan(theta / 2); +inf for the point at infinity.
    double to_real() const;
    bool is_infinity(double tol = 0.0) const;
    /// Unit representative (sin(theta/2), cos(theta/2)) of the line through (x, 1).
    std::pair<double, double> homogeneous() const;

private:
    explicit BoundaryPoint(double theta) : theta_(theta) {}
    double theta_ = 0.0;
};

/// |2 sin((theta1 - theta2) / 2)|, a metric on the compactified boundary.
double chordal(const BoundaryPoint& x, const BoundaryPoint& y);

/// A vector of E = (R^2 - {0}) / +-1, canonical sign q > 0, or q = 0 and p > 0.
class EPoint {
public:
    EPoint(double p, double q);
    static EPoint e1() { return EPoint(1.0, 0.0); }

    double p() const { return p_; }
    double q() const { return q_; }
    double norm() const;

private:
    double p_;
    double q_;
};

/// Unit tangent vector at a point of the half-plane; direction in [0, 2pi),
/// pi/2 is "straight up".
struct TangentFrame {
    HalfPlanePoint base;
    double direction = kPi / 2.0;
};

double normalize_angle(double theta);        // into [0, 2pi)
double normalize_signed_angle(double theta); // into (-pi, pi]
/// Distance between two angles on a circle of the given period.
double circular_distance(double x, double y, double period);

/// An element of PSL(2,R): unit-determinant real 2x2 matrix, sign fixed so
/// that c > 0, or c = 0 and a > 0.
class Moebius {
public:
    Moebius() = default;
    /// Rescales by 1/sqrt(ad - bc) when the determinant drifts; throws
    /// InvalidArgument when ad - bc <= 0 or an entry is not finite.
    Moebius(double a, double b, double c, double d);

    static Moebius identity() { return {}; }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return a_ * d_ - b_ * c_; }
    double trace() const { return a_ + d_; }

    Moebius inverse() const;
    friend Moebius operator*(const Moebius& f, const Moebius& g);

    /// Largest entrywise difference between canonical representatives.
    double max_entry_diff(const Moebius& other) const;
    /// min(|f - Id|_F, |f + Id|_F), i.e. distance to the identity in PSL.
    double distance_to_identity() const;
    bool approx_equal(const Moebius& other, double tol) const { return max_entry_diff(other) <= tol; }

private:
    double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

Moebius compose(const Moebius& f, const Moebius& g);
Moebius inverse(const Moebius& f);

// Distinguished one-parameter subgroups.
Moebius unipotent(double t);               // u(t) = (1, t; 0, 1)
Moebius diagonal(double lambda);           // geo(lambda) = (lambda, 0; 0, 1/lambda)
Moebius borel(double alpha, double beta);  // z -> alpha z + beta
Moebius rotation(double theta);            // (cos, sin; -sin, cos)
/// Time-t map of the geodesic flow: diagonal(e^{t/2}), unit speed at the base point.
Moebius geodesic_step(double t);

HalfPlanePoint mobius_apply(const Moebius& f, const HalfPlanePoint& z);
BoundaryPoint boundary_apply(const Moebius& f, const BoundaryPoint& xi);
EPoint e_apply(const Moebius& f, const EPoint& v);

double hyp_dist(const HalfPlanePoint& z, const HalfPlanePoint& w);

enum class ElementClass { Identity, Elliptic, Parabolic, Hyperbolic };
const char* to_string(ElementClass c);
ElementClass classify_element(const Moebius& f, double tol = kTraceTolerance);

struct AllFixed {};
struct EllipticFixed {
    HalfPlanePoint point;
};
struct ParabolicFixed {
    BoundaryPoint point;
};
struct HyperbolicFixed {
    BoundaryPoint repelling;
    BoundaryPoint attracting;
};
using FixedPoints = std::variant<AllFixed, EllipticFixed, ParabolicFixed, HyperbolicFixed>;

FixedPoints fixed_points(const Moebius& f, double tol = kTraceTolerance);

/// Unipotent elements (left, right) with left * f * right = (alpha, 0; c, 1/alpha).
struct Steering {
    Moebius left;
    Moebius right;
};
/// Throws InvalidArgument when |c| <= 1e-12 (f lies in B) or alpha <= 0.
Steering steer_to_diagonal(const Moebius& f, double alpha);

TangentFrame frame_to_tangent(const Moebius& f);
Moebius tangent_to_frame(const TangentFrame& frame);

namespace detail {

// Closed-disk coordinates, used for limits that run off to the boundary.
// The boundary angle theta lands on exp(i (theta + pi)); the Euclidean
// distance there equals the chordal metric.
std::complex<double> to_disk(const HalfPlanePoint& z);
std::complex<double> to_disk(const BoundaryPoint& xi);
BoundaryPoint disk_boundary_point(std::complex<double> w);

struct DiskMatrix {
    std::complex<double> alpha, beta;  // w -> (alpha w + beta) / (conj(beta) w + conj(alpha))
    std::complex<double> apply(std::complex<double> w) const;
};
DiskMatrix to_disk(const Moebius& f);

}  // namespace detail

}  // namespace horo
