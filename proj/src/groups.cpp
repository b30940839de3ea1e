#include "horo/groups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "horo/errors.hpp"

namespace horo {

ProductElement ProductElement::inverse() const { return {m.inverse(), horo::inverse(g)}; }

ProductElement operator*(const ProductElement& x, const ProductElement& y)
{
    return {x.m * y.m, compose(x.g, y.g)};
}

bool ProductElement::approx_equal(const ProductElement& o, double tol) const
{
    if (kind() != o.kind())
        return false;
    if (!m.approx_equal(o.m, tol))
        return false;
    return distance_to_identity(compose(horo::inverse(g), o.g)) <= tol;
}

bool ProductElement::is_identity(double tol) const
{
    return m.distance_to_identity() <= tol && distance_to_identity(g) <= tol;
}

GeneratedGroup::GeneratedGroup(std::vector<Generator> generators) : generators_(std::move(generators))
{
    if (generators_.empty())
        throw InvalidArgument("generated group needs at least one generator");
    const TransverseKind k = generators_.front().element.kind();
    for (const auto& gen : generators_) {
        if (gen.element.kind() != k)
            throw InvalidArgument("generator '" + gen.name + "' has a different transverse kind");
        if (gen.element.is_identity())
            throw InvalidArgument("generator '" + gen.name + "' is the identity");
        inverses_.push_back(gen.element.inverse());
    }
}

const ProductElement& GeneratedGroup::letter(int l) const
{
    const auto i = static_cast<std::size_t>(l / 2);
    if (l < 0 || i >= generators_.size())
        throw InvalidArgument("letter out of range");
    return (l % 2 == 0) ? generators_[i].element : inverses_[i];
}

std::string GeneratedGroup::letter_name(int l) const
{
    const auto i = static_cast<std::size_t>(l / 2);
    if (l < 0 || i >= generators_.size())
        throw InvalidArgument("letter out of range");
    return generators_[i].name + (l % 2 == 0 ? "" : "^-1");
}

std::string format_word(const GeneratedGroup& group, const Word& w)
{
    if (w.empty())
        return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ' ';
        s += group.letter_name(w[i]);
    }
    return s;
}

namespace {

std::vector<std::int64_t> canonical_key(const ProductElement& x, double quantum)
{
    std::vector<std::int64_t> key;
    append_key(x.m, quantum, key);
    append_key(x.g, quantum, key);
    return key;
}

}  // namespace

WordBall word_ball(const GeneratedGroup& group, int r, const WordBallLimits& limits)
{
    if (r < 0)
        throw InvalidArgument("word-ball radius must be nonnegative");
    if (r > limits.max_radius)
        throw LimitExceeded("word-ball radius " + std::to_string(r) + " exceeds cap " +
                            std::to_string(limits.max_radius));

    WordBall ball;
    ball.radius = r;
    std::map<std::vector<std::int64_t>, std::size_t> seen;
    const ProductElement id = ProductElement::identity(group.kind());
    ball.entries.push_back({{}, id});
    seen.emplace(canonical_key(id, limits.key_quantum), 0);

    // Breadth-first: only elements first reached at the previous length are
    // extended, so each canonical element keeps its shortest (lexicographically
    // first) word.
    std::size_t frontier_begin = 0, frontier_end = 1;
    const int letters = static_cast<int>(2 * group.size());
    for (int len = 1; len <= r; ++len) {
        for (std::size_t idx = frontier_begin; idx < frontier_end; ++idx) {
            for (int l = 0; l < letters; ++l) {
                const Word& w = ball.entries[idx].word;
                if (!w.empty() && (w.back() ^ 1) == l)
                    continue;  // not reduced
                ProductElement x = ball.entries[idx].element * group.letter(l);
                auto key = canonical_key(x, limits.key_quantum);
                if (seen.count(key))
                    continue;
                if (ball.entries.size() >= limits.max_entries)
                    throw LimitExceeded("word ball exceeds entry budget of " +
                                        std::to_string(limits.max_entries));
                Word nw = w;
                nw.push_back(l);
                seen.emplace(std::move(key), ball.entries.size());
                ball.entries.push_back({std::move(nw), std::move(x)});
            }
        }
        frontier_begin = frontier_end;
        frontier_end = ball.entries.size();
    }
    return ball;
}

std::vector<WordBall::Entry> detect_semi_parabolic(const GeneratedGroup& group, int r,
                                                   const WordBallLimits& limits)
{
    std::vector<WordBall::Entry> out;
    for (auto& e : word_ball(group, r, limits).entries)
        if (classify_element(e.element.m) == ElementClass::Parabolic)
            out.push_back(std::move(e));
    return out;
}

const char* classification_name(const PslClassification& c)
{
    switch (c.index()) {
    case 0: return "DiscreteCandidate";
    case 1: return "FixesBoundaryPoint";
    case 2: return "RotationLike";
    default: return "DenseCandidate";
    }
}

namespace {

bool fixes(const Moebius& f, const BoundaryPoint& xi, double tol)
{
    return chordal(boundary_apply(f, xi), xi) <= tol;
}

bool fixes(const Moebius& f, const HalfPlanePoint& z, double tol)
{
    return hyp_dist(mobius_apply(f, z), z) <= tol;
}

}  // namespace

PslClassification classify_psl_projection(const GeneratedGroup& group, int r, double tol,
                                          const WordBallLimits& limits)
{
    const double ftol = kCommonFixedPointTolerance;
    std::vector<Moebius> gens;
    for (const auto& g : group.generators())
        if (g.element.m.distance_to_identity() > ftol)
            gens.push_back(g.element.m);

    if (!gens.empty()) {
        // Candidates come from the first generator; the rest must fix one of them.
        std::vector<BoundaryPoint> bnd;
        std::vector<HalfPlanePoint> inner;
        std::visit(
            [&](const auto& fp) {
                using T = std::decay_t<decltype(fp)>;
                if constexpr (std::is_same_v<T, ParabolicFixed>)
                    bnd.push_back(fp.point);
                else if constexpr (std::is_same_v<T, HyperbolicFixed>) {
                    bnd.push_back(fp.repelling);
                    bnd.push_back(fp.attracting);
                } else if constexpr (std::is_same_v<T, EllipticFixed>)
                    inner.push_back(fp.point);
            },
            fixed_points(gens.front()));
        for (const auto& xi : bnd)
            if (std::all_of(gens.begin(), gens.end(), [&](const Moebius& f) { return fixes(f, xi, ftol); }))
                return FixesBoundaryPoint{xi};
        for (const auto& z : inner)
            if (std::all_of(gens.begin(), gens.end(), [&](const Moebius& f) { return fixes(f, z, ftol); }))
                return RotationLike{z};
    }

    // Gap on p1 alone: dedupe on the PSL part so transverse data cannot mask
    // a p1-identity.
    std::vector<GeneratedGroup::Generator> p1_gens;
    for (const auto& g : group.generators())
        if (g.element.m.distance_to_identity() > ftol)
            p1_gens.push_back({g.name, ProductElement(g.element.m, TrivialElement{})});
    double gap = std::numeric_limits<double>::infinity();
    if (!p1_gens.empty()) {
        for (const auto& e : word_ball(GeneratedGroup(std::move(p1_gens)), r, limits).entries) {
            if (e.word.empty())
                continue;
            const double d = e.element.m.distance_to_identity();
            if (d > limits.key_quantum)
                gap = std::min(gap, d);
        }
    }
    if (gap > tol)
        return DiscreteCandidate{gap};
    return DenseCandidate{gap};
}

ProductPoint product_apply(const ProductElement& gamma, const ProductPoint& point)
{
    return {boundary_apply(gamma.m, point.xi), act(gamma.g, point.y)};
}

}  // namespace horo
