#include "horo/transverse.hpp"

#include <algorithm>
#include <cmath>

#include "horo/errors.hpp"

namespace horo {

Quaternion::Quaternion(double w, double x, double y, double z)
{
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n))
        throw InvalidArgument("quaternion must be finite and nonzero");
    w_ = w / n;
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
    const double lead = w_ != 0.0 ? w_ : (x_ != 0.0 ? x_ : (y_ != 0.0 ? y_ : z_));
    if (lead < 0.0) {
        w_ = -w_;
        x_ = -x_;
        y_ = -y_;
        z_ = -z_;
    }
}

Quaternion Quaternion::from_axis_angle(std::array<double, 3> axis, double angle)
{
    const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (!(n > 0.0))
        throw InvalidArgument("rotation axis must be nonzero");
    const double s = std::sin(angle / 2.0) / n;
    return Quaternion(std::cos(angle / 2.0), axis[0] * s, axis[1] * s, axis[2] * s);
}

Quaternion Quaternion::conjugate() const { return Quaternion(w_, -x_, -y_, -z_); }

Quaternion operator*(const Quaternion& p, const Quaternion& q)
{
    return Quaternion(p.w_ * q.w_ - p.x_ * q.x_ - p.y_ * q.y_ - p.z_ * q.z_,
                      p.w_ * q.x_ + p.x_ * q.w_ + p.y_ * q.z_ - p.z_ * q.y_,
                      p.w_ * q.y_ - p.x_ * q.z_ + p.y_ * q.w_ + p.z_ * q.x_,
                      p.w_ * q.z_ + p.x_ * q.y_ - p.y_ * q.x_ + p.z_ * q.w_);
}

std::array<double, 3> Quaternion::rotate(const std::array<double, 3>& v) const
{
    // v' = v + 2 w (u x v) + 2 u x (u x v), u = (x, y, z)
    const double tx = 2.0 * (y_ * v[2] - z_ * v[1]);
    const double ty = 2.0 * (z_ * v[0] - x_ * v[2]);
    const double tz = 2.0 * (x_ * v[1] - y_ * v[0]);
    return {v[0] + w_ * tx + (y_ * tz - z_ * ty),
            v[1] + w_ * ty + (z_ * tx - x_ * tz),
            v[2] + w_ * tz + (x_ * ty - y_ * tx)};
}

double Quaternion::angle() const
{
    return 2.0 * std::acos(std::clamp(std::abs(w_), 0.0, 1.0));
}

double Quaternion::max_component_diff(const Quaternion& o) const
{
    const double same = std::max({std::abs(w_ - o.w_), std::abs(x_ - o.x_),
                                  std::abs(y_ - o.y_), std::abs(z_ - o.z_)});
    const double flipped = std::max({std::abs(w_ + o.w_), std::abs(x_ + o.x_),
                                     std::abs(y_ + o.y_), std::abs(z_ + o.z_)});
    return std::min(same, flipped);
}

AffineMap::AffineMap(double scale_, double shift_) : scale(scale_), shift(shift_)
{
    if (!(scale_ > 0.0) || !std::isfinite(scale_) || !std::isfinite(shift_))
        throw InvalidArgument("affine map needs finite scale > 0");
}

AffineMap AffineMap::inverse() const { return AffineMap(1.0 / scale, -shift / scale); }

AffineMap operator*(const AffineMap& f, const AffineMap& g)
{
    return AffineMap(f.scale * g.scale, f.scale * g.shift + f.shift);
}

const char* to_string(TransverseKind k)
{
    switch (k) {
    case TransverseKind::Trivial: return "trivial";
    case TransverseKind::RealAffine: return "affine";
    case TransverseKind::Rotations3: return "so3";
    case TransverseKind::BoundaryCircle: return "circle";
    }
    return "?";
}

TransverseKind kind_of(const TransverseElement& g)
{
    return static_cast<TransverseKind>(g.index());
}

TransverseKind kind_of(const TransversePoint& y)
{
    return static_cast<TransverseKind>(y.index());
}

TransverseElement transverse_identity(TransverseKind k)
{
    switch (k) {
    case TransverseKind::Trivial: return TrivialElement{};
    case TransverseKind::RealAffine: return AffineMap{};
    case TransverseKind::Rotations3: return Quaternion{};
    case TransverseKind::BoundaryCircle: return Moebius{};
    }
    return TrivialElement{};
}

TransversePoint transverse_base_point(TransverseKind k)
{
    switch (k) {
    case TransverseKind::Trivial: return std::monostate{};
    case TransverseKind::RealAffine: return 0.0;
    case TransverseKind::Rotations3: return Quaternion{};
    case TransverseKind::BoundaryCircle: return BoundaryPoint::infinity();
    }
    return std::monostate{};
}

namespace {

void require_same(TransverseKind a, TransverseKind b)
{
    if (a != b)
        throw InvalidArgument(std::string("transverse kind mismatch: ") + to_string(a) + " vs " + to_string(b));
}

}  // namespace

TransverseElement compose(const TransverseElement& g, const TransverseElement& h)
{
    require_same(kind_of(g), kind_of(h));
    switch (kind_of(g)) {
    case TransverseKind::Trivial: return TrivialElement{};
    case TransverseKind::RealAffine: return std::get<AffineMap>(g) * std::get<AffineMap>(h);
    case TransverseKind::Rotations3: return std::get<Quaternion>(g) * std::get<Quaternion>(h);
    case TransverseKind::BoundaryCircle: return std::get<Moebius>(g) * std::get<Moebius>(h);
    }
    return TrivialElement{};
}

TransverseElement inverse(const TransverseElement& g)
{
    switch (kind_of(g)) {
    case TransverseKind::Trivial: return TrivialElement{};
    case TransverseKind::RealAffine: return std::get<AffineMap>(g).inverse();
    case TransverseKind::Rotations3: return std::get<Quaternion>(g).conjugate();
    case TransverseKind::BoundaryCircle: return std::get<Moebius>(g).inverse();
    }
    return TrivialElement{};
}

TransversePoint act(const TransverseElement& g, const TransversePoint& y)
{
    require_same(kind_of(g), kind_of(y));
    switch (kind_of(g)) {
    case TransverseKind::Trivial: return std::monostate{};
    case TransverseKind::RealAffine: return std::get<AffineMap>(g).apply(std::get<double>(y));
    case TransverseKind::Rotations3: return std::get<Quaternion>(g) * std::get<Quaternion>(y);
    case TransverseKind::BoundaryCircle:
        return boundary_apply(std::get<Moebius>(g), std::get<BoundaryPoint>(y));
    }
    return std::monostate{};
}

double distance_to_identity(const TransverseElement& g)
{
    switch (kind_of(g)) {
    case TransverseKind::Trivial: return 0.0;
    case TransverseKind::RealAffine: {
        const auto& f = std::get<AffineMap>(g);
        return std::abs(std::log(f.scale)) + std::abs(f.shift);
    }
    case TransverseKind::Rotations3: return std::get<Quaternion>(g).angle();
    case TransverseKind::BoundaryCircle: return std::get<Moebius>(g).distance_to_identity();
    }
    return 0.0;
}

double transverse_distance(const TransversePoint& y1, const TransversePoint& y2)
{
    require_same(kind_of(y1), kind_of(y2));
    switch (kind_of(y1)) {
    case TransverseKind::Trivial: return 0.0;
    case TransverseKind::RealAffine: return std::abs(std::get<double>(y1) - std::get<double>(y2));
    case TransverseKind::Rotations3:
        return std::get<Quaternion>(y1).max_component_diff(std::get<Quaternion>(y2));
    case TransverseKind::BoundaryCircle:
        return chordal(std::get<BoundaryPoint>(y1), std::get<BoundaryPoint>(y2));
    }
    return 0.0;
}

namespace {

std::int64_t quantize(double x, double quantum)
{
    return static_cast<std::int64_t>(std::llround(x / quantum));
}

}  // namespace

void append_key(const Moebius& m, double quantum, std::vector<std::int64_t>& key)
{
    // Sign choice must not flip on rounding noise in c.
    double s = 1.0;
    if (std::abs(m.c()) >= quantum / 2.0)
        s = m.c() > 0.0 ? 1.0 : -1.0;
    else if (m.a() < 0.0)
        s = -1.0;
    key.push_back(quantize(s * m.a(), quantum));
    key.push_back(quantize(s * m.b(), quantum));
    key.push_back(quantize(s * m.c(), quantum));
    key.push_back(quantize(s * m.d(), quantum));
}

void append_key(const TransverseElement& g, double quantum, std::vector<std::int64_t>& key)
{
    key.push_back(static_cast<std::int64_t>(g.index()));
    switch (kind_of(g)) {
    case TransverseKind::Trivial: break;
    case TransverseKind::RealAffine: {
        const auto& f = std::get<AffineMap>(g);
        key.push_back(quantize(f.scale, quantum));
        key.push_back(quantize(f.shift, quantum));
        break;
    }
    case TransverseKind::Rotations3: {
        const auto& q = std::get<Quaternion>(g);
        double s = 1.0;
        const double lead = std::abs(q.w()) >= quantum / 2.0 ? q.w()
                          : std::abs(q.x()) >= quantum / 2.0 ? q.x()
                          : std::abs(q.y()) >= quantum / 2.0 ? q.y() : q.z();
        if (lead < 0.0)
            s = -1.0;
        key.push_back(quantize(s * q.w(), quantum));
        key.push_back(quantize(s * q.x(), quantum));
        key.push_back(quantize(s * q.y(), quantum));
        key.push_back(quantize(s * q.z(), quantum));
        break;
    }
    case TransverseKind::BoundaryCircle: append_key(std::get<Moebius>(g), quantum, key); break;
    }
}

}  // namespace horo
