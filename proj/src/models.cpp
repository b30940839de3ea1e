#include "horo/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "horo/errors.hpp"

namespace horo {

// ---------------------------------------------------------------------------
// T^3_A

std::array<double, 2> T3AModel::to_primed(double x, double y) const
{
    // Inverse of (u|v) = (d', c'; -b', -a'), which has unit determinant.
    return {-ap * x - cp * y, bp * x + dp * y};
}

std::array<double, 2> T3AModel::from_primed(double xp, double yp) const
{
    return {xp * u[0] + yp * v[0], xp * u[1] + yp * v[1]};
}

T3AModel build_t3a(const IntMatrix2& A)
{
    const auto [a, b, c, d] = A;
    if (a * d - b * c != 1)
        throw InvalidArgument("A must have determinant 1");
    const long long tr = a + d;
    if (tr <= 2)
        throw InvalidArgument("A must be hyperbolic with trace > 2, got trace " + std::to_string(tr));
    // tr > 2 and det 1 force b != 0 (else a d = 1, a + d = 2).
    T3AModel m;
    m.A = A;
    const double t = static_cast<double>(tr);
    m.lambda = (t + std::sqrt(t * t - 4.0)) / 2.0;
    const double inv = 1.0 / m.lambda;
    const double bb = static_cast<double>(b);
    m.u = {1.0, (m.lambda - static_cast<double>(a)) / bb};
    const double sv = (inv - static_cast<double>(a)) / bb;
    const double k = 1.0 / (sv - m.u[1]);  // det(u | k (1, sv)) = k (sv - su)
    m.v = {k, k * sv};
    m.dp = m.u[0];
    m.bp = -m.u[1];
    m.cp = m.v[0];
    m.ap = -m.v[1];
    return m;
}

bool check_irrational_slope(const IntMatrix2& A, int N)
{
    const auto [a, b, c, d] = A;
    for (long long p = -N; p <= N; ++p)
        for (long long q = -N; q <= N; ++q) {
            if (p == 0 && q == 0)
                continue;
            const long long x = a * p + b * q, y = c * p + d * q;
            if ((x == p && y == q) || (x == -p && y == -q))
                return false;
        }
    return true;
}

namespace {

double frac(double x)
{
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;  // x slightly below an integer can round up to 1
}

}  // namespace

std::array<double, 3> t3a_reduce(const T3AModel& m, std::array<double, 3> p)
{
    for (double c : p)
        if (!std::isfinite(c))
            throw InvalidArgument("T3A point must be finite");
    const double n = std::floor(p[2]);
    if (std::abs(n) > 64.0)
        throw ReductionFailure("T3A reduction: |floor(t)| = " + std::to_string(std::abs(n)) + " exceeds 64");
    double x = frac(p[0]), y = frac(p[1]);
    const auto [a, b, c, d] = m.A;
    const int steps = static_cast<int>(std::abs(n));
    for (int i = 0; i < steps; ++i) {
        // h_A^-1 for t >= 1 (A^-1 = (d, -b; -c, a)), h_A for t < 0.
        const double nx = n > 0 ? d * x - b * y : a * x + b * y;
        const double ny = n > 0 ? -c * x + a * y : c * x + d * y;
        x = frac(nx);
        y = frac(ny);
    }
    return {x, y, frac(p[2] - n)};
}

std::array<double, 3> sol3_mul(const std::array<double, 3>& p, const std::array<double, 3>& q, double lambda)
{
    const double s = std::pow(lambda, p[2]);
    return {p[0] + s * q[0], p[1] + q[1] / s, p[2] + q[2]};
}

std::array<double, 3> sol3_b_embed(double alpha, double beta, double lambda)
{
    if (!(alpha > 0.0))
        throw InvalidArgument("sol3_b_embed needs alpha > 0");
    return {beta, 0.0, std::log(alpha) / std::log(lambda)};
}

GeneratedGroup t3a_group(const T3AModel& m)
{
    // In primed coordinates e1 = (-a', b') and e2 = (-c', d').
    return GeneratedGroup({
        {"T1", {unipotent(-m.ap), AffineMap(1.0, m.bp)}},
        {"T2", {unipotent(-m.cp), AffineMap(1.0, m.dp)}},
        {"hA", {diagonal(std::sqrt(m.lambda)), AffineMap(1.0 / m.lambda, 0.0)}},
    });
}

// ---------------------------------------------------------------------------
// Octagon

namespace {

Moebius from_disk(std::complex<double> alpha, std::complex<double> beta)
{
    return Moebius(alpha.real() + beta.real(), alpha.imag() - beta.imag(),
                   -alpha.imag() - beta.imag(), alpha.real() - beta.real());
}

HalfPlanePoint disk_to_half_plane(std::complex<double> w)
{
    const std::complex<double> z = std::complex<double>(0.0, 1.0) * (1.0 + w) / (1.0 - w);
    return HalfPlanePoint(z.real(), z.imag());
}

}  // namespace

OctagonModel build_octagon()
{
    OctagonModel m;
    const double ch = 1.0 / std::tan(kPi / 8.0);  // cosh(l/2)
    const double sh = std::sqrt(ch * ch - 1.0);
    m.translation_length = 2.0 * std::acosh(ch);
    for (int k = 0; k < 4; ++k)
        m.gens[k] = from_disk(ch, sh * std::polar(1.0, k * kPi / 4.0));
    for (int k = 0; k < 4; ++k)
        m.gens[k + 4] = m.gens[k].inverse();
    return m;
}

Moebius OctagonModel::relator() const
{
    const auto& g = gens;
    return g[0] * g[5] * g[2] * g[7] * g[4] * g[1] * g[6] * g[3];
}

std::array<HalfPlanePoint, 8> OctagonModel::vertices() const
{
    const double c = 1.0 / std::tan(kPi / 8.0);
    const double r = std::tanh(std::acosh(c * c) / 2.0);
    std::array<HalfPlanePoint, 8> out;
    for (int k = 0; k < 8; ++k)
        out[k] = disk_to_half_plane(std::polar(r, (2 * k + 1) * kPi / 8.0));
    return out;
}

bool in_octagon_domain(const OctagonModel& m, const HalfPlanePoint& z, double slack)
{
    const HalfPlanePoint o;
    const double d = hyp_dist(z, o);
    for (const auto& g : m.gens)
        if (hyp_dist(mobius_apply(g, z), o) < d - slack)
            return false;
    return true;
}

namespace {

constexpr int kReduceCap = 10000;
constexpr double kDescentHysteresis = 1e-12;

// Greedy descent shared by the frame-only and the product reductions.
template <class Step>
Moebius octagon_descent(const std::array<Moebius, 8>& gens, Moebius f, Step&& on_step)
{
    const HalfPlanePoint o;
    for (int it = 0; it < kReduceCap; ++it) {
        const HalfPlanePoint z = mobius_apply(f, o);
        const double d = hyp_dist(z, o);
        int pick = -1;
        for (int k = 0; k < 8; ++k)
            if (hyp_dist(mobius_apply(gens[k], z), o) < d - kDescentHysteresis) {
                pick = k;
                break;
            }
        if (pick < 0)
            return f;
        f = gens[pick] * f;
        on_step(pick);
    }
    throw ReductionFailure("Dirichlet reduction exceeded " + std::to_string(kReduceCap) + " iterations");
}

}  // namespace

Moebius dirichlet_reduce(const OctagonModel& m, const Moebius& f)
{
    return octagon_descent(m.gens, f, [](int) {});
}

// ---------------------------------------------------------------------------
// Modular

HalfPlanePoint modular_reduce(const HalfPlanePoint& z)
{
    double x = z.re, y = z.im;
    for (int it = 0; it < kReduceCap; ++it) {
        x -= std::floor(x + 0.5);
        const double r2 = x * x + y * y;
        if (r2 >= 1.0 - 1e-14)
            return HalfPlanePoint(x, y);
        x = -x / r2;
        y = y / r2;
    }
    throw ReductionFailure("modular reduction exceeded iteration cap");
}

// ---------------------------------------------------------------------------
// Products

namespace {

TransverseElement power(const TransverseElement& g, long long n)
{
    TransverseElement base = n < 0 ? inverse(g) : g;
    TransverseElement out = transverse_identity(kind_of(g));
    for (unsigned long long e = static_cast<unsigned long long>(std::llabs(n)); e; e >>= 1) {
        if (e & 1U)
            out = compose(out, base);
        base = compose(base, base);
    }
    return out;
}

}  // namespace

ProductModel build_product(const SurfaceBase& base, const ProductSpec& spec)
{
    ProductModel pm;
    pm.base = base;
    pm.transverse = spec.transverse;
    pm.diagonal = spec.diagonal;
    const bool octagon = std::holds_alternative<OctagonModel>(base);
    std::vector<Moebius> base_gens;
    if (octagon) {
        const auto& o = std::get<OctagonModel>(base);
        base_gens.assign(o.gens.begin(), o.gens.begin() + 4);
    } else {
        const auto& mm = std::get<ModularModel>(base);
        base_gens = {mm.T, mm.S};
    }

    if (spec.diagonal) {
        if (spec.transverse != TransverseKind::BoundaryCircle)
            throw InvalidArgument("diagonal holonomy needs the boundary-circle transverse factor");
        for (const auto& g : base_gens)
            pm.holonomy.emplace_back(g);
    } else if (spec.seed) {
        if (spec.transverse != TransverseKind::Rotations3 || !octagon)
            throw InvalidArgument("seeded holonomy is defined for octagon x SO(3) only");
        // (X, X, Y, Y) kills the relator identically; X, Y generic rotations
        // generate a dense subgroup.
        Rng rng(*spec.seed);
        const Quaternion X = rng.rotation();
        const Quaternion Y = rng.rotation();
        pm.holonomy = {X, X, Y, Y};
    } else if (spec.transverse == TransverseKind::Trivial && spec.holonomy.empty()) {
        pm.holonomy.assign(base_gens.size(), TrivialElement{});
    } else {
        pm.holonomy = spec.holonomy;
    }

    if (pm.holonomy.size() != base_gens.size())
        throw InvalidArgument("holonomy needs " + std::to_string(base_gens.size()) + " elements, got " +
                              std::to_string(pm.holonomy.size()));
    for (const auto& h : pm.holonomy)
        if (kind_of(h) != spec.transverse)
            throw InvalidArgument("holonomy element of the wrong transverse kind");

    // Holonomy must be a homomorphism: check the defining relations.
    const auto& h = pm.holonomy;
    if (octagon) {
        auto rel = compose(h[0], inverse(h[1]));
        for (const auto& x : {h[2], inverse(h[3]), inverse(h[0]), h[1], inverse(h[2]), h[3]})
            rel = compose(rel, x);
        if (distance_to_identity(rel) > 1e-9)
            throw InvalidArgument("holonomy does not satisfy the surface relation");
    } else {
        const auto s2 = compose(h[1], h[1]);
        const auto st = compose(h[1], h[0]);
        if (distance_to_identity(s2) > 1e-9 || distance_to_identity(compose(st, compose(st, st))) > 1e-9)
            throw InvalidArgument("holonomy does not satisfy S^2 = (ST)^3 = 1");
    }
    return pm;
}

// ---------------------------------------------------------------------------
// Model

namespace {

GeneratedGroup product_group(const ProductModel& pm)
{
    std::vector<GeneratedGroup::Generator> gens;
    if (const auto* o = std::get_if<OctagonModel>(&pm.base)) {
        for (int k = 0; k < 4; ++k)
            gens.push_back({"g" + std::to_string(k), {o->gens[k], pm.holonomy[k]}});
    } else {
        const auto& mm = std::get<ModularModel>(pm.base);
        gens.push_back({"T", {mm.T, pm.holonomy[0]}});
        gens.push_back({"S", {mm.S, pm.holonomy[1]}});
    }
    return GeneratedGroup(std::move(gens));
}

}  // namespace

Model::Model(ModelKind kind, std::string name, std::variant<T3AModel, ProductModel> data, GeneratedGroup group)
    : kind_(kind), name_(std::move(name)), data_(std::move(data)), group_(std::move(group))
{
    if (kind_ == ModelKind::Octagon || kind_ == ModelKind::OctagonSO3 || kind_ == ModelKind::OctagonBoundary) {
        for (int k = 0; k < 4; ++k) {
            letters_[k] = group_.generators()[k].element;
            letters_[k + 4] = letters_[k].inverse();
        }
    }
}


Model Model::surface(ModelKind kind, std::string name, const SurfaceBase& base, const ProductSpec& spec)
{
    ProductModel pm = build_product(base, spec);
    GeneratedGroup g = product_group(pm);
    return Model(kind, std::move(name), std::move(pm), std::move(g));
}

Model Model::t3a(const IntMatrix2& A)
{
    T3AModel m = build_t3a(A);
    GeneratedGroup g = t3a_group(m);
    return Model(ModelKind::T3A, "t3a", std::move(m), std::move(g));
}

Model Model::octagon()
{
    return surface(ModelKind::Octagon, "octagon", build_octagon(), {});
}

Model Model::octagon_so3(std::uint64_t seed)
{
    ProductSpec spec;
    spec.transverse = TransverseKind::Rotations3;
    spec.seed = seed;
    return surface(ModelKind::OctagonSO3, "octagon_so3", build_octagon(), spec);
}

Model Model::octagon_boundary()
{
    ProductSpec spec;
    spec.transverse = TransverseKind::BoundaryCircle;
    spec.diagonal = true;
    return surface(ModelKind::OctagonBoundary, "octagon_boundary", build_octagon(), spec);
}

Model Model::modular()
{
    return surface(ModelKind::Modular, "modular", ModularModel{}, {});
}

Model Model::modular_boundary()
{
    ProductSpec spec;
    spec.transverse = TransverseKind::BoundaryCircle;
    spec.diagonal = true;
    return surface(ModelKind::ModularBoundary, "modular_boundary", ModularModel{}, spec);
}

const T3AModel* Model::t3a_data() const { return std::get_if<T3AModel>(&data_); }

const OctagonModel* Model::octagon_data() const
{
    const auto* pm = std::get_if<ProductModel>(&data_);
    return pm ? std::get_if<OctagonModel>(&pm->base) : nullptr;
}

QuotientPoint Model::base_point() const
{
    if (kind_ == ModelKind::T3A)
        return T3APoint{};
    return SurfacePoint{Moebius{}, transverse_base_point(transverse())};
}

QuotientPoint Model::random_point(Rng& rng) const
{
    const double direction = rng.uniform(0.0, kTwoPi);
    if (kind_ == ModelKind::T3A)
        return T3APoint{rng.uniform(), rng.uniform(), rng.uniform(), direction};
    // Base point within hyperbolic distance 3 of i, then reduced.
    const std::complex<double> w = std::polar(std::tanh(1.5) * rng.uniform(), rng.uniform(0.0, kTwoPi));
    const Moebius f = tangent_to_frame({disk_to_half_plane(w), direction});
    TransversePoint y = std::monostate{};
    switch (transverse()) {
    case TransverseKind::Trivial: break;
    case TransverseKind::RealAffine: y = rng.uniform(-1.0, 1.0); break;
    case TransverseKind::Rotations3: y = rng.rotation(); break;
    case TransverseKind::BoundaryCircle: y = BoundaryPoint::from_angle(rng.uniform(-kPi, kPi)); break;
    }
    return reduce(LiftedPoint{f, y});
}

LiftedPoint Model::lift(const QuotientPoint& p) const
{
    if (const auto* s = std::get_if<SurfacePoint>(&p))
        return {s->frame, s->y};
    const auto& q = std::get<T3APoint>(p);
    const auto& m = std::get<T3AModel>(data_);
    const auto [xp, yp] = m.to_primed(q.x, q.y);
    return {tangent_to_frame({HalfPlanePoint(xp, std::pow(m.lambda, q.t)), q.direction}), yp};
}

QuotientPoint Model::reduce(const LiftedPoint& p) const
{
    if (kind_of(p.y) != transverse())
        throw InvalidArgument("point has the wrong transverse kind for model " + name_);
    if (const auto* m = std::get_if<T3AModel>(&data_)) {
        const TangentFrame tf = frame_to_tangent(p.frame);
        const auto [x, y] = m->from_primed(tf.base.re, std::get<double>(p.y));
        const auto r = t3a_reduce(*m, {x, y, std::log(tf.base.im) / std::log(m->lambda)});
        return T3APoint{r[0], r[1], r[2], tf.direction};
    }
    if (octagon_data())
        return reduce_octagon(p);
    return reduce_modular(p);
}

QuotientPoint Model::reduce_octagon(LiftedPoint p) const
{
    const bool track = transverse() != TransverseKind::Trivial;
    const Moebius f = octagon_descent(octagon_data()->gens, p.frame, [&](int k) {
        if (track)
            p.y = act(letters_[k].g, p.y);
    });
    return SurfacePoint{f, p.y};
}

QuotientPoint Model::reduce_modular(LiftedPoint p) const
{
    const auto& gens = group_.generators();
    const auto& T = gens[0].element;
    const auto& S = gens[1].element;
    const bool track = transverse() != TransverseKind::Trivial;
    const HalfPlanePoint o;
    Moebius f = p.frame;
    for (int it = 0; it < kReduceCap; ++it) {
        const double n = std::floor(mobius_apply(f, o).re + 0.5);
        if (n != 0.0) {
            f = unipotent(-n) * f;
            if (track)
                p.y = act(power(T.g, -static_cast<long long>(n)), p.y);
        }
        const HalfPlanePoint z = mobius_apply(f, o);
        if (z.re * z.re + z.im * z.im >= 1.0 - 1e-14)
            return SurfacePoint{f, p.y};
        f = S.m * f;
        if (track)
            p.y = act(S.g, p.y);
    }
    throw ReductionFailure("modular reduction exceeded " + std::to_string(kReduceCap) + " iterations");
}

bool Model::in_domain(const QuotientPoint& p, double slack) const
{
    if (const auto* q = std::get_if<T3APoint>(&p)) {
        auto unit = [](double c) { return c >= 0.0 && c < 1.0; };
        return unit(q->x) && unit(q->y) && unit(q->t) && q->direction >= 0.0 && q->direction < kTwoPi;
    }
    const HalfPlanePoint z = mobius_apply(std::get<SurfacePoint>(p).frame, HalfPlanePoint());
    if (const auto* o = octagon_data())
        return in_octagon_domain(*o, z, slack);
    return std::abs(z.re) <= 0.5 + slack && std::abs(z.as_complex()) >= 1.0 - slack;
}

namespace {

bool close_surface(const SurfacePoint& a, const SurfacePoint& b, double tol)
{
    return a.frame.max_entry_diff(b.frame) <= tol && transverse_distance(a.y, b.y) <= tol;
}

bool close_t3a(const T3APoint& a, const T3APoint& b, double tol)
{
    return circular_distance(a.x, b.x, 1.0) <= tol && circular_distance(a.y, b.y, 1.0) <= tol &&
           std::abs(a.t - b.t) <= tol && circular_distance(a.direction, b.direction, kTwoPi) <= tol;
}

}  // namespace

bool Model::same_point(const QuotientPoint& p, const QuotientPoint& q, double tol) const
{
    if (const auto* a = std::get_if<T3APoint>(&p)) {
        const auto& b = std::get<T3APoint>(q);
        if (close_t3a(*a, b, tol))
            return true;
        // t just below 1 versus t just above 0: compare across h_A.
        const auto& m = std::get<T3AModel>(data_);
        auto shifted = [&](const T3APoint& s) {
            const auto [a0, a1, a2, a3] = m.A;
            return T3APoint{frac(a0 * s.x + a1 * s.y), frac(a2 * s.x + a3 * s.y), s.t + 1.0, s.direction};
        };
        return close_t3a(shifted(*a), b, tol) || close_t3a(*a, shifted(b), tol);
    }
    const auto& a = std::get<SurfacePoint>(p);
    const auto& b = std::get<SurfacePoint>(q);
    if (close_surface(a, b, tol))
        return true;
    for (const auto& e : group_.generators())
        for (const auto& g : {e.element, e.element.inverse()}) {
            const SurfacePoint ga{g.m * a.frame, act(g.g, a.y)};
            if (close_surface(ga, b, tol))
                return true;
        }
    return false;
}

LiftedPoint Model::left_act(const ProductElement& g, const LiftedPoint& p) const
{
    return {g.m * p.frame, act(g.g, p.y)};
}

QuotientPoint Model::right_act(const QuotientPoint& p, const Moebius& g) const
{
    LiftedPoint l = lift(p);
    l.frame = l.frame * g;
    return reduce(l);
}

double Model::escape(const QuotientPoint& p) const
{
    if (is_compact())
        return 0.0;
    return mobius_apply(std::get<SurfacePoint>(p).frame, HalfPlanePoint()).im;
}

std::vector<double> Model::coordinates(const QuotientPoint& p) const
{
    if (const auto* q = std::get_if<T3APoint>(&p))
        return {q->x, q->y, q->t, q->direction};
    const auto& s = std::get<SurfacePoint>(p);
    const TangentFrame tf = frame_to_tangent(s.frame);
    std::vector<double> out{tf.base.re, tf.base.im, tf.direction};
    if (const auto* xi = std::get_if<BoundaryPoint>(&s.y)) {
        out.push_back(xi->angle());
    } else if (const auto* q = std::get_if<Quaternion>(&s.y)) {
        const auto e = q->rotate({0.0, 0.0, 1.0});
        out.push_back(std::acos(std::clamp(e[2], -1.0, 1.0)));
        out.push_back(normalize_angle(std::atan2(e[1], e[0])));
    }
    return out;
}

std::vector<double> Model::coordinate_periods() const
{
    switch (transverse()) {
    case TransverseKind::RealAffine: return {1.0, 1.0, 1.0, kTwoPi};
    case TransverseKind::BoundaryCircle: return {0.0, 0.0, kTwoPi, kTwoPi};
    case TransverseKind::Rotations3: return {0.0, 0.0, kTwoPi, 0.0, kTwoPi};
    case TransverseKind::Trivial: break;
    }
    return {0.0, 0.0, kTwoPi};
}

std::vector<std::string> Model::legend() const
{
    switch (transverse()) {
    case TransverseKind::RealAffine:
        return {"x (torus, mod 1)", "y (torus, mod 1)", "t (fibre height, mod 1)", "frame direction (rad)"};
    case TransverseKind::BoundaryCircle:
        return {"Re z", "Im z", "frame direction (rad)", "boundary angle theta, xi = tan(theta/2)"};
    case TransverseKind::Rotations3:
        return {"Re z", "Im z", "frame direction (rad)", "polar angle of g e_z", "azimuth of g e_z"};
    case TransverseKind::Trivial: break;
    }
    return {"Re z", "Im z", "frame direction (rad)"};
}

double minimal_set_distance(const Model& model, const LiftedPoint& p)
{
    const BoundaryPoint f_inf = boundary_apply(p.frame, BoundaryPoint::infinity());
    switch (model.kind()) {
    case ModelKind::OctagonBoundary:
    case ModelKind::ModularBoundary:
        return chordal(std::get<BoundaryPoint>(p.y), f_inf);
    case ModelKind::T3A:
        return chordal(f_inf, BoundaryPoint::infinity());
    default:
        throw InvalidArgument("model " + model.name() + " has no distinguished minimal set");
    }
}

double minimal_set_distance(const Model& model, const QuotientPoint& p)
{
    return minimal_set_distance(model, model.lift(p));
}

}  // namespace horo
