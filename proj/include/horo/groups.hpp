#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "horo/moebius.hpp"
#include "horo/transverse.hpp"

namespace horo {

/// gamma = (f, g) in PSL(2,R) x G; p1 = m, p2 = g.
struct ProductElement {
    Moebius m;
    TransverseElement g = TrivialElement{};

    ProductElement() = default;
    ProductElement(Moebius m_, TransverseElement g_) : m(m_), g(std::move(g_)) {}

    static ProductElement identity(TransverseKind k) { return {Moebius{}, transverse_identity(k)}; }

    TransverseKind kind() const { return kind_of(g); }
    ProductElement inverse() const;
    friend ProductElement operator*(const ProductElement& x, const ProductElement& y);

    bool approx_equal(const ProductElement& o, double tol) const;
    bool is_identity(double tol = 1e-12) const;
};

/// Ordered, named generators; inverses are implicit.
class GeneratedGroup {
public:
    struct Generator {
        std::string name;
        ProductElement element;
    };

    /// Throws InvalidArgument on an empty list, an identity generator or mixed
    /// transverse kinds.
    explicit GeneratedGroup(std::vector<Generator> generators);

    const std::vector<Generator>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    TransverseKind kind() const { return generators_.front().element.kind(); }

    /// Letter 2i is generator i, letter 2i+1 its inverse.
    const ProductElement& letter(int l) const;
    std::string letter_name(int l) const;

private:
    std::vector<Generator> generators_;
    std::vector<ProductElement> inverses_;
};

/// A reduced word as a list of letters (see GeneratedGroup::letter).
using Word = std::vector<int>;

std::string format_word(const GeneratedGroup& group, const Word& w);

struct WordBall {
    int radius = 0;
    struct Entry {
        Word word;
        ProductElement element;
    };
    /// Ordered by word length, then by letter sequence; identity first.
    std::vector<Entry> entries;

    std::size_t size() const { return entries.size(); }
};

struct WordBallLimits {
    int max_radius = 6;
    std::size_t max_entries = 2'000'000;
    double key_quantum = 1e-9;
};

/// Throws LimitExceeded when r exceeds the radius cap or the ball outgrows
/// the entry budget; InvalidArgument when r < 0.
WordBall word_ball(const GeneratedGroup& group, int r, const WordBallLimits& limits = {});

/// Ball elements whose PSL part is parabolic (and not the identity).
std::vector<WordBall::Entry> detect_semi_parabolic(const GeneratedGroup& group, int r,
                                                   const WordBallLimits& limits = {});

struct DiscreteCandidate {
    double gap;
};
struct FixesBoundaryPoint {
    BoundaryPoint xi;
};
struct RotationLike {
    HalfPlanePoint z0;
};
struct DenseCandidate {
    double gap;
};
using PslClassification = std::variant<DiscreteCandidate, FixesBoundaryPoint, RotationLike, DenseCandidate>;

const char* classification_name(const PslClassification& c);

/// Tolerance used to decide that generators share a fixed point.
inline constexpr double kCommonFixedPointTolerance = 1e-9;

/// Heuristic label for p1(group); see the README for the decision procedure.
PslClassification classify_psl_projection(const GeneratedGroup& group, int r, double tol,
                                          const WordBallLimits& limits = {});

struct ProductPoint {
    BoundaryPoint xi;
    TransversePoint y;
};

ProductPoint product_apply(const ProductElement& gamma, const ProductPoint& point);

}  // namespace horo
