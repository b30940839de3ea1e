#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "horo/errors.hpp"
#include "horo/generator_file.hpp"
#include "horo/groups.hpp"
#include "horo/models.hpp"
#include "horo/random.hpp"

using namespace horo;

namespace {

GeneratedGroup psl_group(std::vector<std::pair<std::string, Moebius>> gens)
{
    std::vector<GeneratedGroup::Generator> out;
    for (auto& [n, m] : gens)
        out.push_back({n, ProductElement(m, TrivialElement{})});
    return GeneratedGroup(std::move(out));
}

// Brute-force count of distinct elements among all (not only reduced)
// words of length <= r, compared pairwise up to sign.
std::size_t brute_force_ball(const std::vector<Moebius>& letters, int r)
{
    std::vector<Moebius> distinct{Moebius::identity()};
    std::vector<Moebius> layer{Moebius::identity()};
    for (int len = 1; len <= r; ++len) {
        std::vector<Moebius> next;
        for (const auto& w : layer)
            for (const auto& l : letters)
                next.push_back(w * l);
        for (const auto& m : next) {
            const Moebius mi = m.inverse();
            bool found = false;
            for (const auto& d : distinct)
                if ((mi * d).distance_to_identity() < 1e-7) {
                    found = true;
                    break;
                }
            if (!found)
                distinct.push_back(m);
        }
        layer = std::move(next);
    }
    return distinct.size();
}

std::array<double, 3> rodrigues(std::array<double, 3> axis, double angle, std::array<double, 3> v)
{
    const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    for (auto& a : axis)
        a /= n;
    const double c = std::cos(angle), s = std::sin(angle);
    const double dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
    const std::array<double, 3> cross{axis[1] * v[2] - axis[2] * v[1], axis[2] * v[0] - axis[0] * v[2],
                                      axis[0] * v[1] - axis[1] * v[0]};
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i)
        out[i] = v[i] * c + cross[i] * s + axis[i] * dot * (1.0 - c);
    return out;
}

}  // namespace

TEST(Transverse, QuaternionMatchesRodrigues)
{
    Rng rng(11);
    for (int k = 0; k < 100; ++k) {
        const std::array<double, 3> axis{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double angle = rng.uniform(0.0, kPi);
        const std::array<double, 3> v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto got = Quaternion::from_axis_angle(axis, angle).rotate(v);
        const auto want = rodrigues(axis, angle, v);
        for (int i = 0; i < 3; ++i)
            EXPECT_NEAR(got[i], want[i], 1e-12);
        EXPECT_NEAR(Quaternion::from_axis_angle(axis, angle).angle(), angle, 1e-7);
    }
}

TEST(Transverse, QuaternionGroupLaw)
{
    Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        const Quaternion p = rng.rotation(), q = rng.rotation();
        const std::array<double, 3> v{0.3, -0.2, 0.9};
        const auto lhs = (p * q).rotate(v);
        const auto rhs = p.rotate(q.rotate(v));
        for (int i = 0; i < 3; ++i)
            EXPECT_NEAR(lhs[i], rhs[i], 1e-12);
        EXPECT_LT((p * p.conjugate()).max_component_diff(Quaternion::identity()), 1e-12);
        const double norm = std::sqrt(p.w() * p.w() + p.x() * p.x() + p.y() * p.y() + p.z() * p.z());
        EXPECT_NEAR(norm, 1.0, 1e-12);
    }
    // q and -q are one rotation.
    EXPECT_LT(Quaternion(-0.5, -0.5, -0.5, -0.5).max_component_diff(Quaternion(0.5, 0.5, 0.5, 0.5)), 1e-15);
    EXPECT_THROW(Quaternion(0, 0, 0, 0), InvalidArgument);
}

TEST(Transverse, AffineComposition)
{
    const AffineMap f(2.0, 1.0), g(0.5, -3.0);
    for (double y : {-1.0, 0.0, 2.5})
        EXPECT_NEAR((f * g).apply(y), f.apply(g.apply(y)), 1e-15);
    EXPECT_NEAR((f * f.inverse()).scale, 1.0, 1e-15);
    EXPECT_NEAR((f * f.inverse()).shift, 0.0, 1e-15);
    EXPECT_THROW(AffineMap(0.0, 1.0), InvalidArgument);
}

TEST(Transverse, KindMismatchRejected)
{
    EXPECT_THROW(compose(AffineMap(1.0, 1.0), Quaternion::identity()), InvalidArgument);
    EXPECT_EQ(kind_of(transverse_identity(TransverseKind::BoundaryCircle)), TransverseKind::BoundaryCircle);
}

TEST(ProductElement, GroupLaw)
{
    const ProductElement x(Moebius(2, 1, 1, 1), AffineMap(2.0, 1.0));
    const ProductElement y(unipotent(0.5), AffineMap(1.0, -0.25));
    EXPECT_TRUE((x * x.inverse()).is_identity(1e-12));
    const ProductElement xy = x * y;
    EXPECT_LT(xy.m.max_entry_diff(Moebius(2, 1, 1, 1) * unipotent(0.5)), 1e-15);
    EXPECT_NEAR(std::get<AffineMap>(xy.g).shift, 2.0 * -0.25 + 1.0, 1e-15);
}

TEST(GeneratedGroup, RejectsBadGenerators)
{
    EXPECT_THROW(GeneratedGroup({}), InvalidArgument);
    EXPECT_THROW(psl_group({{"e", Moebius::identity()}}), InvalidArgument);
    std::vector<GeneratedGroup::Generator> mixed{{"a", ProductElement(unipotent(1), TrivialElement{})},
                                                 {"b", ProductElement(unipotent(2), AffineMap(1, 1))}};
    EXPECT_THROW(GeneratedGroup(std::move(mixed)), InvalidArgument);
}

TEST(WordBall, RadiusZeroIsIdentity)
{
    const auto g = psl_group({{"u", unipotent(1.0)}});
    const WordBall b = word_ball(g, 0);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_TRUE(b.entries[0].word.empty());
    EXPECT_TRUE(b.entries[0].element.is_identity());
}

TEST(WordBall, UnipotentDiagonalPair)
{
    const auto g = psl_group({{"u", unipotent(1.0)}, {"d", diagonal(2.0)}});
    EXPECT_EQ(word_ball(g, 2).size(), 17u);
    // d u d^-1 = u^4, so coincidences start at radius 4.
    const std::vector<Moebius> letters{unipotent(1.0), unipotent(-1.0), diagonal(2.0), diagonal(0.5)};
    for (int r = 1; r <= 4; ++r)
        EXPECT_EQ(word_ball(g, r).size(), brute_force_ball(letters, r)) << "radius " << r;
}

TEST(WordBall, ModularCollapse)
{
    const ModularModel mm;
    const auto g = psl_group({{"T", mm.T}, {"S", mm.S}});
    const WordBall b = word_ball(g, 2);
    EXPECT_LT(b.size(), 17u);
    for (int r = 1; r <= 5; ++r)
        EXPECT_EQ(word_ball(g, r).size(), brute_force_ball({mm.T, mm.T.inverse(), mm.S, mm.S.inverse()}, r))
            << "radius " << r;
}

TEST(WordBall, OctagonBallMatchesBruteForce)
{
    const OctagonModel oct = build_octagon();
    std::vector<GeneratedGroup::Generator> gens;
    for (int k = 0; k < 4; ++k)
        gens.push_back({"g" + std::to_string(k), ProductElement(oct.gens[k], TrivialElement{})});
    const GeneratedGroup g(std::move(gens));
    const std::vector<Moebius> letters(oct.gens.begin(), oct.gens.end());
    for (int r = 1; r <= 4; ++r)
        EXPECT_EQ(word_ball(g, r).size(), brute_force_ball(letters, r)) << "radius " << r;
}

TEST(WordBall, OrderedByLength)
{
    const auto g = psl_group({{"u", unipotent(1.0)}, {"d", diagonal(2.0)}});
    const WordBall b = word_ball(g, 3);
    for (std::size_t i = 1; i < b.size(); ++i)
        EXPECT_LE(b.entries[i - 1].word.size(), b.entries[i].word.size());
    // Each entry's element is the product of its letters.
    for (const auto& e : b.entries) {
        ProductElement p = ProductElement::identity(TransverseKind::Trivial);
        for (int l : e.word)
            p = p * g.letter(l);
        EXPECT_TRUE(p.approx_equal(e.element, 1e-12));
    }
}

TEST(WordBall, Limits)
{
    const auto g = psl_group({{"u", unipotent(1.0)}, {"d", diagonal(2.0)}});
    WordBallLimits lim;
    lim.max_entries = 10;
    EXPECT_THROW(word_ball(g, 3, lim), LimitExceeded);
    EXPECT_THROW(word_ball(g, 7), LimitExceeded);
    EXPECT_THROW(word_ball(g, -1), InvalidArgument);
}

TEST(SemiParabolic, ModularContainsT)
{
    const ModularModel mm;
    const auto g = psl_group({{"T", mm.T}, {"S", mm.S}});
    const auto found = detect_semi_parabolic(g, 1);
    bool has_t = false;
    for (const auto& e : found)
        has_t = has_t || format_word(g, e.word) == "T";
    EXPECT_TRUE(has_t);
}

TEST(SemiParabolic, OctagonHasNone)
{
    const OctagonModel oct = build_octagon();
    std::vector<GeneratedGroup::Generator> gens;
    for (int k = 0; k < 4; ++k)
        gens.push_back({"g" + std::to_string(k), ProductElement(oct.gens[k], TrivialElement{})});
    const GeneratedGroup g(std::move(gens));
    EXPECT_TRUE(detect_semi_parabolic(g, 4).empty());
    double worst = 1e300;
    for (const auto& e : word_ball(g, 4).entries)
        if (!e.word.empty())
            worst = std::min(worst, std::abs(std::abs(e.element.m.trace()) - 2.0));
    EXPECT_GT(worst, 0.1);
}

TEST(SemiParabolic, T3AHolonomyContainsT1)
{
    const T3AModel m = build_t3a({2, 1, 1, 1});
    const GeneratedGroup g = t3a_group(m);
    const auto found = detect_semi_parabolic(g, 1);
    bool has_t1 = false;
    for (const auto& e : found)
        if (e.word.size() == 1 && e.word[0] == 0) {
            has_t1 = true;
            EXPECT_EQ(classify_element(e.element.m), ElementClass::Parabolic);
        }
    EXPECT_TRUE(has_t1);
}

TEST(ClassifyProjection, Modular)
{
    const ModularModel mm;
    const auto g = psl_group({{"T", mm.T}, {"S", mm.S}});
    const auto c = classify_psl_projection(g, 6, 0.05);
    ASSERT_TRUE(std::holds_alternative<DiscreteCandidate>(c));
    // Over Z the nearest non-identity elements are at entrywise distance 1.
    EXPECT_NEAR(std::get<DiscreteCandidate>(c).gap, 1.0, 1e-12);
}

TEST(ClassifyProjection, T3AFixesInfinity)
{
    const T3AModel m = build_t3a({2, 1, 1, 1});
    const auto c = classify_psl_projection(t3a_group(m), 4, 0.05);
    ASSERT_TRUE(std::holds_alternative<FixesBoundaryPoint>(c));
    EXPECT_TRUE(std::get<FixesBoundaryPoint>(c).xi.is_infinity(1e-12));
}

TEST(ClassifyProjection, Rotations)
{
    const auto g = psl_group({{"r1", rotation(1.0)}, {"r2", rotation(std::sqrt(2.0))}});
    const auto c = classify_psl_projection(g, 4, 0.05);
    ASSERT_TRUE(std::holds_alternative<RotationLike>(c));
    EXPECT_LT(hyp_dist(std::get<RotationLike>(c).z0, HalfPlanePoint()), 1e-9);
}

TEST(ClassifyProjection, DenseWhenSmallElementsAppear)
{
    const auto g = psl_group({{"r", rotation(0.02)}, {"u", unipotent(1.0)}});
    const auto c = classify_psl_projection(g, 3, 0.05);
    ASSERT_TRUE(std::holds_alternative<DenseCandidate>(c));
    EXPECT_LT(std::get<DenseCandidate>(c).gap, 0.05);
    EXPECT_STREQ(classification_name(c), "DenseCandidate");
}

TEST(ProductApply, T3ATranslationsAndHA)
{
    const T3AModel m = build_t3a({2, 1, 1, 1});
    const GeneratedGroup g = t3a_group(m);
    const ProductPoint p{BoundaryPoint::from_real(0.3), 0.7};
    const ProductPoint q = product_apply(g.generators()[0].element, p);
    EXPECT_NEAR(q.xi.to_real(), 0.3 - m.ap, 1e-12);
    EXPECT_NEAR(std::get<double>(q.y), 0.7 + m.bp, 1e-12);

    const ProductPoint h = product_apply(g.generators()[2].element, {BoundaryPoint::from_real(1.0), 1.0});
    EXPECT_NEAR(h.xi.to_real(), m.lambda, 1e-12);
    EXPECT_NEAR(std::get<double>(h.y), 1.0 / m.lambda, 1e-12);

    const ProductPoint id = product_apply(ProductElement::identity(TransverseKind::RealAffine), p);
    EXPECT_LT(chordal(id.xi, p.xi), 1e-15);
    EXPECT_EQ(std::get<double>(id.y), 0.7);
}

TEST(GeneratorFile, ParsesEveryKind)
{
    std::istringstream in(R"(# comment
T psl 1 1 0 1
S psl 0 -1 1 0   # trailing comment
)");
    const GeneratedGroup g = parse_generators(in);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g.generators()[1].name, "S");
    EXPECT_EQ(g.kind(), TransverseKind::Trivial);

    std::istringstream aff("A affine 1 0.5 0 1  2 -1\n");
    const auto ga = parse_generators(aff);
    EXPECT_NEAR(std::get<AffineMap>(ga.generators()[0].element.g).scale, 2.0, 0.0);

    std::istringstream so3("R so3 1 0 0 1  1 1 0 0\n");
    const auto gq = parse_generators(so3);
    EXPECT_NEAR(std::get<Quaternion>(gq.generators()[0].element.g).w(), std::sqrt(0.5), 1e-15);

    std::istringstream circ("D circle 2 1 1 1\nE circle 1 1 0 1  1 2 0 1\n");
    const auto gc = parse_generators(circ);
    EXPECT_LT(std::get<Moebius>(gc.generators()[0].element.g).max_entry_diff(Moebius(2, 1, 1, 1)), 1e-15);
    EXPECT_LT(std::get<Moebius>(gc.generators()[1].element.g).max_entry_diff(unipotent(2.0)), 1e-15);
}

TEST(GeneratorFile, Errors)
{
    auto fails = [](const std::string& text) {
        std::istringstream in(text);
        EXPECT_THROW(parse_generators(in), ParseError) << text;
    };
    fails("");
    fails("X psl 1 2\n");
    fails("X psl 1 1 0 1 5\n");
    fails("X foo 1 1 0 1\n");
    fails("X psl 1 one 0 1\n");
    fails("X psl 1 1 1 1\n");
    fails("X psl 1 1 0 1\nY affine 1 1 0 1 1 0\n");
    fails("X affine 1 1 0 1 0 1\n");
    fails("X so3 1 1 0 1 0 0 0 0\n");
    EXPECT_THROW(parse_generators_file("/nonexistent/gens.txt"), ParseError);
}
