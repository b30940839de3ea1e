#include "horo/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "horo/errors.hpp"

namespace horo {

HalfPlanePoint::HalfPlanePoint(double re_, double im_) : re(re_), im(im_)
{
    if (!(im_ > 0.0) || !std::isfinite(re_) || !std::isfinite(im_))
        throw InvalidArgument("half-plane point needs finite coordinates and Im > 0");
}

double normalize_angle(double theta)
{
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi)
        r -= kTwoPi;
    return r;
}

double normalize_signed_angle(double theta)
{
    double r = std::remainder(theta, kTwoPi);
    if (r <= -kPi)
        r += kTwoPi;
    return r;
}

double circular_distance(double x, double y, double period)
{
    double r = std::fmod(std::abs(x - y), period);
    return std::min(r, period - r);
}

// ---------------------------------------------------------------------------
// Boundary

BoundaryPoint BoundaryPoint::from_angle(double theta)
{
    if (!std::isfinite(theta))
        throw InvalidArgument("boundary angle must be finite");
    return BoundaryPoint(normalize_signed_angle(theta));
}

BoundaryPoint BoundaryPoint::from_real(double x)
{
    if (std::isinf(x))
        return infinity();
    if (std::isnan(x))
        throw InvalidArgument("boundary coordinate is NaN");
    return BoundaryPoint(2.0 * std::atan(x));
}

BoundaryPoint BoundaryPoint::from_homogeneous(double p, double q)
{
    if (p == 0.0 && q == 0.0)
        throw InvalidArgument("zero vector has no projective class");
    return BoundaryPoint(normalize_signed_angle(2.0 * std::atan2(p, q)));
}

double BoundaryPoint::to_real() const
{
    if (theta_ == kPi)
        return std::numeric_limits<double>::infinity();
    return std::tan(theta_ / 2.0);
}

bool BoundaryPoint::is_infinity(double tol) const
{
    return chordal(*this, infinity()) <= tol;
}

std::pair<double, double> BoundaryPoint::homogeneous() const
{
    return {std::sin(theta_ / 2.0), std::cos(theta_ / 2.0)};
}

double chordal(const BoundaryPoint& x, const BoundaryPoint& y)
{
    return std::abs(2.0 * std::sin((x.angle() - y.angle()) / 2.0));
}

// ---------------------------------------------------------------------------
// E

EPoint::EPoint(double p, double q) : p_(p), q_(q)
{
    if (p == 0.0 && q == 0.0)
        throw InvalidArgument("E excludes the zero vector");
    if (q < 0.0 || (q == 0.0 && p < 0.0)) {
        p_ = -p;
        q_ = -q;
    }
}

double EPoint::norm() const { return std::hypot(p_, q_); }

// ---------------------------------------------------------------------------
// PSL(2,R)

Moebius::Moebius(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw InvalidArgument("Moebius entries must be finite");
    const double det = a * d - b * c;
    if (!(det > 0.0))
        throw InvalidArgument("Moebius element needs ad - bc > 0, got " + std::to_string(det));
    if (std::abs(det - 1.0) > kDeterminantDrift) {
        const double s = std::sqrt(det);
        a_ /= s;
        b_ /= s;
        c_ /= s;
        d_ /= s;
    }
    if (c_ < 0.0 || (c_ == 0.0 && a_ < 0.0)) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

Moebius Moebius::inverse() const { return Moebius(d_, -b_, -c_, a_); }

Moebius operator*(const Moebius& f, const Moebius& g)
{
    return Moebius(f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_,
                   f.c_ * g.a_ + f.d_ * g.c_, f.c_ * g.b_ + f.d_ * g.d_);
}

double Moebius::max_entry_diff(const Moebius& o) const
{
    // Representatives with c ~ 0 may carry opposite signs; compare both.
    const double same = std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_),
                                  std::abs(c_ - o.c_), std::abs(d_ - o.d_)});
    const double flipped = std::max({std::abs(a_ + o.a_), std::abs(b_ + o.b_),
                                     std::abs(c_ + o.c_), std::abs(d_ + o.d_)});
    return std::min(same, flipped);
}

double Moebius::distance_to_identity() const
{
    const double minus = std::sqrt((a_ - 1) * (a_ - 1) + b_ * b_ + c_ * c_ + (d_ - 1) * (d_ - 1));
    const double plus = std::sqrt((a_ + 1) * (a_ + 1) + b_ * b_ + c_ * c_ + (d_ + 1) * (d_ + 1));
    return std::min(minus, plus);
}

Moebius compose(const Moebius& f, const Moebius& g) { return f * g; }
Moebius inverse(const Moebius& f) { return f.inverse(); }

Moebius unipotent(double t) { return Moebius(1.0, t, 0.0, 1.0); }

Moebius diagonal(double lambda)
{
    if (!(lambda > 0.0))
        throw InvalidArgument("diagonal element needs lambda > 0");
    return Moebius(lambda, 0.0, 0.0, 1.0 / lambda);
}

Moebius borel(double alpha, double beta)
{
    if (!(alpha > 0.0))
        throw InvalidArgument("Borel element needs alpha > 0");
    const double s = std::sqrt(alpha);
    return Moebius(s, beta / s, 0.0, 1.0 / s);
}

Moebius rotation(double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return Moebius(c, s, -s, c);
}

Moebius geodesic_step(double t) { return diagonal(std::exp(t / 2.0)); }

HalfPlanePoint mobius_apply(const Moebius& f, const HalfPlanePoint& z)
{
    const std::complex<double> w = z.as_complex();
    const std::complex<double> den = f.c() * w + f.d();
    const std::complex<double> num = f.a() * w + f.b();
    const std::complex<double> r = num / den;
    // Im((az+b)/(cz+d)) = Im z / |cz+d|^2 for unit determinant; stays positive.
    return HalfPlanePoint(r.real(), z.im / std::norm(den));
}

BoundaryPoint boundary_apply(const Moebius& f, const BoundaryPoint& xi)
{
    const auto [s, c] = xi.homogeneous();
    return BoundaryPoint::from_homogeneous(f.a() * s + f.b() * c, f.c() * s + f.d() * c);
}

EPoint e_apply(const Moebius& f, const EPoint& v)
{
    return EPoint(f.a() * v.p() + f.b() * v.q(), f.c() * v.p() + f.d() * v.q());
}

double hyp_dist(const HalfPlanePoint& z, const HalfPlanePoint& w)
{
    const double chord = std::abs(z.as_complex() - w.as_complex());
    return 2.0 * std::asinh(chord / (2.0 * std::sqrt(z.im * w.im)));
}

const char* to_string(ElementClass c)
{
    switch (c) {
    case ElementClass::Identity: return "Identity";
    case ElementClass::Elliptic: return "Elliptic";
    case ElementClass::Parabolic: return "Parabolic";
    case ElementClass::Hyperbolic: return "Hyperbolic";
    }
    return "?";
}

ElementClass classify_element(const Moebius& f, double tol)
{
    if (f.distance_to_identity() <= tol)
        return ElementClass::Identity;
    const double t = std::abs(f.trace());
    if (std::abs(t - 2.0) <= tol)
        return ElementClass::Parabolic;
    return t < 2.0 ? ElementClass::Elliptic : ElementClass::Hyperbolic;
}

namespace {

// Projective fixed point belonging to eigenvalue mu: null vector of f - mu.
BoundaryPoint eigenline(const Moebius& f, double mu)
{
    const double p1 = f.b(), q1 = mu - f.a();
    const double p2 = mu - f.d(), q2 = f.c();
    if (std::hypot(p1, q1) >= std::hypot(p2, q2))
        return BoundaryPoint::from_homogeneous(p1, q1);
    return BoundaryPoint::from_homogeneous(p2, q2);
}

}  // namespace

FixedPoints fixed_points(const Moebius& f, double tol)
{
    switch (classify_element(f, tol)) {
    case ElementClass::Identity:
        return AllFixed{};
    case ElementClass::Elliptic: {
        const double t = f.trace();
        const double root = std::sqrt(std::max(0.0, 4.0 - t * t));
        // c > 0 canonically, so the + root lies in the upper half-plane.
        return EllipticFixed{HalfPlanePoint((f.a() - f.d()) / (2.0 * f.c()), root / (2.0 * f.c()))};
    }
    case ElementClass::Parabolic:
        return ParabolicFixed{eigenline(f, f.trace() >= 0.0 ? 1.0 : -1.0)};
    case ElementClass::Hyperbolic: {
        const double t = f.trace();
        const double big = (t + std::copysign(std::sqrt(t * t - 4.0), t)) / 2.0;
        // |mu| > 1 at the attracting point: derivative there is 1/mu^2.
        return HyperbolicFixed{eigenline(f, 1.0 / big), eigenline(f, big)};
    }
    }
    return AllFixed{};
}

Steering steer_to_diagonal(const Moebius& f, double alpha)
{
    if (!(alpha > 0.0))
        throw InvalidArgument("steering target alpha must be positive");
    if (std::abs(f.c()) <= 1e-12)
        throw InvalidArgument("element in B: steering needs c != 0");
    const double shift = (alpha - f.a()) / f.c();
    return {unipotent(shift), unipotent(-(f.b() + f.d() * shift) / alpha)};
}

TangentFrame frame_to_tangent(const Moebius& f)
{
    // Derivative at i is 1/(ci + d)^2.
    return {mobius_apply(f, HalfPlanePoint()),
            normalize_angle(kPi / 2.0 - 2.0 * std::atan2(f.c(), f.d()))};
}

Moebius tangent_to_frame(const TangentFrame& frame)
{
    return borel(frame.base.im, frame.base.re) * rotation((frame.direction - kPi / 2.0) / 2.0);
}

namespace detail {

std::complex<double> to_disk(const HalfPlanePoint& z)
{
    const std::complex<double> w = z.as_complex();
    const std::complex<double> i(0.0, 1.0);
    return (w - i) / (w + i);
}

std::complex<double> to_disk(const BoundaryPoint& xi)
{
    return std::polar(1.0, xi.angle() + kPi);
}

BoundaryPoint disk_boundary_point(std::complex<double> w)
{
    return BoundaryPoint::from_angle(std::arg(w) - kPi);
}

std::complex<double> DiskMatrix::apply(std::complex<double> w) const
{
    return (alpha * w + beta) / (std::conj(beta) * w + std::conj(alpha));
}

DiskMatrix to_disk(const Moebius& f)
{
    const double a = f.a(), b = f.b(), c = f.c(), d = f.d();
    return {{(a + d) / 2.0, (b - c) / 2.0}, {(a - d) / 2.0, -(b + c) / 2.0}};
}

}  // namespace detail

}  // namespace horo
