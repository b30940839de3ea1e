#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "horo/moebius.hpp"

namespace horo {

/// Unit quaternion standing for a rotation of SO(3); q and -q are identified
/// and the stored sign makes the first nonzero component positive.
class Quaternion {
public:
    Quaternion() = default;
    /// Normalizes to unit length; throws on the zero quaternion.
    Quaternion(double w, double x, double y, double z);

    static Quaternion identity() { return {}; }
    static Quaternion from_axis_angle(std::array<double, 3> axis, double angle);

    double w() const { return w_; }
    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    Quaternion conjugate() const;
    friend Quaternion operator*(const Quaternion& p, const Quaternion& q);

    std::array<double, 3> rotate(const std::array<double, 3>& v) const;
    /// Rotation angle in [0, pi].
    double angle() const;
    double max_component_diff(const Quaternion& o) const;

private:
    double w_ = 1.0, x_ = 0.0, y_ = 0.0, z_ = 0.0;
};

/// y -> scale * y + shift, scale > 0.
struct AffineMap {
    double scale = 1.0;
    double shift = 0.0;

    AffineMap() = default;
    AffineMap(double scale_, double shift_);

    double apply(double y) const { return scale * y + shift; }
    AffineMap inverse() const;
    /// (m1, k1) o (m2, k2) = (m1 m2, m1 k2 + k1).
    friend AffineMap operator*(const AffineMap& f, const AffineMap& g);
};

struct TrivialElement {};

enum class TransverseKind { Trivial, RealAffine, Rotations3, BoundaryCircle };
const char* to_string(TransverseKind k);

using TransverseElement = std::variant<TrivialElement, AffineMap, Quaternion, Moebius>;
/// Point of the transverse space: nothing, a real, an element of SO(3)
/// (acted on by left multiplication), or a boundary point.
using TransversePoint = std::variant<std::monostate, double, Quaternion, BoundaryPoint>;

TransverseKind kind_of(const TransverseElement& g);
TransverseKind kind_of(const TransversePoint& y);

TransverseElement transverse_identity(TransverseKind k);
TransversePoint transverse_base_point(TransverseKind k);

/// Throws InvalidArgument on kind mismatch.
TransverseElement compose(const TransverseElement& g, const TransverseElement& h);
TransverseElement inverse(const TransverseElement& g);
TransversePoint act(const TransverseElement& g, const TransversePoint& y);

double distance_to_identity(const TransverseElement& g);
double transverse_distance(const TransversePoint& y1, const TransversePoint& y2);

/// Entries quantized to the given grid, for canonical-key deduplication.
void append_key(const TransverseElement& g, double quantum, std::vector<std::int64_t>& key);
void append_key(const Moebius& m, double quantum, std::vector<std::int64_t>& key);

}  // namespace horo
