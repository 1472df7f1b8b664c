#include <cha/error.hpp>
#include <cha/polyhedron.hpp>

#include "support/builders.hpp"
#include "support/fm_oracle.hpp"
#include "support/random_systems.hpp"
#include "support/vertices.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cha;
using namespace cha::testing;

namespace {

Polyhedron make(Dim dim, std::vector<Constraint> cs) { return Polyhedron::make(dim, cs); }

}  // namespace

TEST(Make, EmptySystemIsUniverse) {
    Polyhedron p = make(1, {});
    EXPECT_TRUE(p.is_universe());
    EXPECT_FALSE(p.is_empty());
}

TEST(Make, ContradictionIsEmpty) {
    EXPECT_TRUE(make(1, {ge(var(0), num(0)), gt(var(0, -1), num(0))}).is_empty());
}

TEST(Make, DuplicateConstraintsCollapse) {
    Polyhedron p = make(2, {eq(var(0) - var(1), num(0)), ge(var(0), num(0)), ge(var(0), num(0))});
    EXPECT_EQ(p.constraint_count(), 2u);
}

TEST(Make, OutOfRangeDimensionThrows) {
    EXPECT_THROW(make(1, {ge(var(1), num(0))}), DimensionError);
}

TEST(Make, ImplicitEqualityBecomesExplicit) {
    Polyhedron p = make(1, {ge(var(0), num(3)), le(var(0), num(3))});
    ASSERT_EQ(p.constraint_count(), 1u);
    EXPECT_TRUE(p.constraints()[0].is_equality());
}

TEST(IsEmpty, StrictnessMatters) {
    EXPECT_TRUE(make(1, {gt(var(0), num(0)), ge(var(0, -1), num(0))}).is_empty());
    EXPECT_FALSE(make(1, {ge(var(0), num(0)), ge(var(0, -1), num(0))}).is_empty());
}

TEST(IsEmpty, ZeroDimensional) {
    EXPECT_FALSE(make(0, {}).is_empty());
    EXPECT_TRUE(Polyhedron::empty(0).is_empty());
}

TEST(Intersect, Examples) {
    Polyhedron a = make(1, {ge(var(0), num(0))});
    Polyhedron b = make(1, {ge(var(0, -1), num(-5))});
    EXPECT_TRUE(intersect(a, b).equivalent(interval(1, 0, 0, 5)));
    EXPECT_EQ(intersect(a, Polyhedron::universe(1)), a);
    EXPECT_TRUE(intersect(make(1, {gt(var(0), num(1))}), make(1, {ge(var(0, -1), num(-1))})).is_empty());
    EXPECT_THROW(intersect(a, Polyhedron::universe(2)), DimensionError);
}

TEST(ConvexHull, Segment) {
    Polyhedron h = convex_hull(make(1, {eq(var(0), num(0))}), make(1, {eq(var(0), num(1))}));
    EXPECT_TRUE(h.equivalent(interval(1, 0, 0, 1)));
    EXPECT_EQ(h.constraint_count(), 2u);
}

TEST(ConvexHull, EmptyIsIdentity) {
    Polyhedron p = interval(2, 1, -3, 4);
    EXPECT_EQ(convex_hull(p, Polyhedron::empty(2)), p);
    EXPECT_EQ(convex_hull(Polyhedron::empty(2), p), p);
}

TEST(ConvexHull, TwoPointsSpanDiagonal) {
    // Vertex oracle: the hull of (0,0) and (2,2) has exactly those vertices and
    // lies on x0 = x1.
    Polyhedron h = convex_hull(make(2, {eq(var(0), num(0)), eq(var(1), num(0))}),
                               make(2, {eq(var(0), num(2)), eq(var(1), num(2))}));
    Polyhedron expected = make(2, {eq(var(0) - var(1), num(0)), ge(var(0), num(0)), le(var(0), num(2))});
    EXPECT_TRUE(h.equivalent(expected));
    auto vertices = oracle::closure_vertices(2, h.constraints());
    EXPECT_EQ(vertices.size(), 2u);
}

TEST(ConvexHull, HalfOpenSegmentsKeepOriginExcluded) {
    // {0 < x <= 1, y = 0} and {x = 0, 0 < y <= 1}: the least NNC hull is the
    // triangle without the origin.
    Polyhedron a = make(2, {gt(var(0), num(0)), le(var(0), num(1)), eq(var(1), num(0))});
    Polyhedron b = make(2, {eq(var(0), num(0)), gt(var(1), num(0)), le(var(1), num(1))});
    Polyhedron h = convex_hull(a, b);
    Polyhedron expected = make(2, {ge(var(0), num(0)), ge(var(1), num(0)), le(var(0) + var(1), num(1)),
                                   gt(var(0) + var(1), num(0))});
    EXPECT_TRUE(h.equivalent(expected));
    EXPECT_FALSE(h.contains(point({0, 0})));
}

TEST(ConvexHull, StrictFacetsSurviveWhenBothArgumentsAreStrict) {
    Polyhedron a = make(1, {gt(var(0), num(0)), lt(var(0), num(1))});
    Polyhedron b = make(1, {gt(var(0), num(2)), lt(var(0), num(3))});
    Polyhedron expected = make(1, {gt(var(0), num(0)), lt(var(0), num(3))});
    EXPECT_TRUE(convex_hull(a, b).equivalent(expected));
}

TEST(ConvexHull, RayAndPoint) {
    // Point (0,0) and the line y = 1: the least NNC polyhedron is 0 <= y <= 1.
    Polyhedron a = make(2, {eq(var(0), num(0)), eq(var(1), num(0))});
    Polyhedron b = make(2, {eq(var(1), num(1))});
    EXPECT_TRUE(convex_hull(a, b).equivalent(interval(2, 1, 0, 1)));
}

TEST(Entails, Examples) {
    EXPECT_TRUE(make(1, {ge(var(0), num(1))}).entails(gt(var(0), num(0))));
    EXPECT_FALSE(make(1, {ge(var(0), num(0))}).entails(gt(var(0), num(0))));
    EXPECT_TRUE(Polyhedron::empty(1).entails(gt(var(0), num(100))));
    EXPECT_TRUE(make(1, {eq(var(0), num(2))}).entails(eq(var(0, 3), num(6))));
    EXPECT_THROW((void)make(1, {}).entails(gt(var(3), num(0))), DimensionError);
}

TEST(Includes, Examples) {
    Polyhedron box = interval(1, 0, 0, 2);
    EXPECT_TRUE(box.includes(make(1, {eq(var(0), num(1))})));
    EXPECT_TRUE(box.includes(box));
    EXPECT_FALSE(make(1, {gt(var(0), num(0))}).includes(make(1, {ge(var(0), num(0))})));
    EXPECT_THROW((void)box.includes(Polyhedron::universe(2)), DimensionError);
}

TEST(ProjectOut, Examples) {
    Polyhedron p = make(2, {eq(var(0) - var(1), num(0)), ge(var(0), num(0)), le(var(0), num(1))});
    EXPECT_TRUE(project_out(p, {1}).equivalent(interval(1, 0, 0, 1)));

    Polyhedron strict = make(2, {gt(var(0) - var(1), num(0)), ge(var(1), num(2))});
    Polyhedron projected = project_out(strict, {1});
    EXPECT_TRUE(projected.equivalent(make(1, {gt(var(0), num(2))})));

    Polyhedron free = make(2, {ge(var(0), num(4))});
    EXPECT_TRUE(project_out(free, {1}).equivalent(make(1, {ge(var(0), num(4))})));
    EXPECT_THROW(project_out(free, {5}), DimensionError);
}

TEST(ProjectOut, KeepsRelativeOrder) {
    // x0 = 1, x1 = 2, x2 = 3; dropping x1 leaves (1, 3).
    Polyhedron p = make(3, {eq(var(0), num(1)), eq(var(1), num(2)), eq(var(2), num(3))});
    Polyhedron q = project_out(p, {1});
    EXPECT_TRUE(q.equivalent(make(2, {eq(var(0), num(1)), eq(var(1), num(3))})));
}

TEST(Remap, Examples) {
    std::vector<std::optional<Dim>> to_two{2};
    Polyhedron r = remap(make(1, {ge(var(0), num(1))}), to_two, 3);
    EXPECT_TRUE(r.equivalent(make(3, {ge(var(2), num(1))})));

    Polyhedron p = make(2, {ge(var(0) - var(1), num(1))});
    std::vector<std::optional<Dim>> identity{0, 1};
    EXPECT_EQ(remap(p, identity, 2), p);

    std::vector<std::optional<Dim>> partial{std::nullopt, 0};
    EXPECT_TRUE(remap(Polyhedron::universe(2), partial, 4).is_universe());
}

TEST(Remap, ConstrainedUnmappedDimensionIsAContractViolation) {
    std::vector<std::optional<Dim>> drop_first{std::nullopt, 0};
    EXPECT_THROW(remap(make(2, {ge(var(0), num(1))}), drop_first, 1), ContractError);
    std::vector<std::optional<Dim>> collide{0, 0};
    EXPECT_THROW(remap(Polyhedron::universe(2), collide, 1), ContractError);
}

TEST(WidenStandard, DropsUnstableBound) {
    Polyhedron w = widen_standard(interval(1, 0, 0, 1), interval(1, 0, 0, 2));
    EXPECT_TRUE(w.equivalent(make(1, {ge(var(0), num(0))})));
}

TEST(WidenStandard, FixedPoint) {
    Polyhedron p = make(2, {ge(var(0), num(0)), le(var(0) + var(1), num(4)), gt(var(1), num(-1))});
    EXPECT_TRUE(widen_standard(p, p).equivalent(p));
}

TEST(WidenStandard, EqualityWidensToHalfLine) {
    // C1 = {x >= 0, -x >= 0}: x >= 0 is kept; -x + 1 >= 0 from C2 cannot swap
    // with any constraint of C1 without changing it, so S2 contributes nothing.
    Polyhedron w = widen_standard(make(1, {eq(var(0), num(0))}), interval(1, 0, 0, 1));
    EXPECT_TRUE(w.equivalent(make(1, {ge(var(0), num(0))})));
}

TEST(WidenStandard, HalbwachsSwapKeepsRewrittenConstraint) {
    // previous: the point (0,0) described as {x = 0, y = 0}; next: the segment
    // 0 <= x = y <= 1. The constraint x - y = 0 of next can replace y = 0 in
    // previous, so the widening keeps the diagonal direction.
    Polyhedron previous = make(2, {eq(var(0), num(0)), eq(var(1), num(0))});
    Polyhedron next = make(2, {eq(var(0) - var(1), num(0)), ge(var(0), num(0)), le(var(0), num(1))});
    Polyhedron w = widen_standard(previous, next);
    EXPECT_TRUE(w.includes(next));
    EXPECT_TRUE(w.entails(eq(var(0) - var(1), num(0))));
    EXPECT_TRUE(w.entails(ge(var(0), num(0))));
    EXPECT_FALSE(w.entails(le(var(0), num(1))));
}

TEST(WidenStandard, FromBottomReturnsNext) {
    Polyhedron next = interval(1, 0, 0, 1);
    EXPECT_EQ(widen_standard(Polyhedron::empty(1), next), next);
}

TEST(WidenUpTo, RestoresThreshold) {
    Polyhedron bound = make(1, {le(var(0), num(10))});
    Polyhedron w = widen_up_to(interval(1, 0, 0, 1), interval(1, 0, 0, 2), bound);
    EXPECT_TRUE(w.equivalent(interval(1, 0, 0, 10)));
}

TEST(WidenUpTo, UniverseBoundIsStandardWidening) {
    Polyhedron a = interval(1, 0, 0, 1);
    Polyhedron b = interval(1, 0, 0, 2);
    EXPECT_TRUE(widen_up_to(a, b, Polyhedron::universe(1)).equivalent(widen_standard(a, b)));
}

TEST(WidenUpTo, UnentailedThresholdsAreIgnored) {
    Polyhedron a = interval(1, 0, 0, 1);
    Polyhedron b = interval(1, 0, 0, 2);
    Polyhedron bound = make(1, {le(var(0), num(1)), ge(var(0), num(5))});
    EXPECT_TRUE(widen_up_to(a, b, make(1, {ge(var(0), num(5))})).equivalent(widen_standard(a, b)));
    EXPECT_TRUE(widen_up_to(a, b, make(1, {le(var(0), num(1))})).equivalent(widen_standard(a, b)));
    (void)bound;
}

TEST(ConstraintCount, Examples) {
    EXPECT_EQ(Polyhedron::universe(3).constraint_count(), 0u);
    EXPECT_EQ(interval(1, 0, 0, 5).constraint_count(), 2u);
    EXPECT_EQ(make(1, {ge(var(0), num(0)), ge(var(0, 2), num(0))}).constraint_count(), 1u);
}

TEST(Format, PaperStyle) {
    EXPECT_EQ(format_constraint(lt(var(0), num(10))), "-1*A> -10");
    EXPECT_EQ(format_constraint(ge(var(0), num(1))), "1*A>=1");
    EXPECT_EQ(format_constraint(eq(var(0, 2) - var(3, 5), num(-25))), "2*A+ -5*D= -25");
    EXPECT_EQ(format_constraint(ge(var(0, 4), num(8))), "1*A>=2");
}

// ---------------------------------------------------------------------------
// Properties over random small systems.

namespace {

struct RandomPair {
    Dim dim;
    std::vector<Constraint> a;
    std::vector<Constraint> b;
};

RandomPair random_pair(std::mt19937& rng) {
    SystemShape shape;
    Dim dim = random_dimension(rng, shape);
    return {dim, random_system(rng, dim, shape), random_system(rng, dim, shape)};
}

// Candidate points: closure vertices, their midpoints, and grid points.
std::vector<oracle::Point> sample_points(std::mt19937& rng, const Polyhedron& p) {
    std::vector<oracle::Point> pts = oracle::closure_vertices(p.dimension(), p.constraints());
    const std::size_t nv = pts.size();
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t j = i + 1; j < nv; ++j) {
            oracle::Point mid(p.dimension());
            for (Dim d = 0; d < p.dimension(); ++d) {
                mid[d] = (pts[i][d] + pts[j][d]) / 2;
            }
            pts.push_back(mid);
        }
    }
    std::uniform_int_distribution<int> coord(-12, 12);
    for (int k = 0; k < 60; ++k) {
        oracle::Point q(p.dimension());
        for (auto& c : q) {
            c = Rational(coord(rng), 2);
        }
        pts.push_back(q);
    }
    std::erase_if(pts, [&](const oracle::Point& q) { return !p.contains(q); });
    return pts;
}

}  // namespace

TEST(Properties, EmptinessAgreesWithOracle) {
    std::mt19937 rng(7);
    SystemShape shape;
    for (int i = 0; i < 150; ++i) {
        Dim dim = random_dimension(rng, shape);
        auto cs = random_system(rng, dim, shape);
        EXPECT_EQ(Polyhedron::make(dim, cs).is_empty(), oracle::is_empty(dim, cs)) << "case " << i;
    }
}

TEST(Properties, CanonicalFormDenotesTheSameSet) {
    std::mt19937 rng(11);
    SystemShape shape;
    for (int i = 0; i < 120; ++i) {
        Dim dim = random_dimension(rng, shape);
        auto cs = random_system(rng, dim, shape);
        Polyhedron p = Polyhedron::make(dim, cs);
        if (p.is_empty()) {
            continue;
        }
        EXPECT_TRUE(oracle::includes(dim, cs, p.constraints())) << i;
        EXPECT_TRUE(oracle::includes(dim, p.constraints(), cs)) << i;
        // Minimality: no constraint is entailed by the others.
        for (std::size_t k = 0; k < p.constraints().size(); ++k) {
            std::vector<Constraint> rest = p.constraints();
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
            EXPECT_FALSE(oracle::entails(dim, rest, p.constraints()[k])) << i;
        }
    }
}

TEST(Properties, HullIsSoundAndVerticesComeFromArguments) {
    std::mt19937 rng(21);
    for (int i = 0; i < 150; ++i) {
        auto [dim, ca, cb] = random_pair(rng);
        Polyhedron a = Polyhedron::make(dim, ca);
        Polyhedron b = Polyhedron::make(dim, cb);
        Polyhedron h = convex_hull(a, b);
        ASSERT_TRUE(h.includes(a)) << i;
        ASSERT_TRUE(h.includes(b)) << i;
        for (const auto& v : oracle::closure_vertices(dim, h.constraints())) {
            bool from_a = !a.is_empty() && oracle::closure_contains(a.constraints(), v);
            bool from_b = !b.is_empty() && oracle::closure_contains(b.constraints(), v);
            EXPECT_TRUE(from_a || from_b) << i;
        }
    }
}

TEST(Properties, HullIsLeastAmongCandidateBounds) {
    std::mt19937 rng(23);
    SystemShape shape;
    for (int i = 0; i < 100; ++i) {
        auto [dim, ca, cb] = random_pair(rng);
        Polyhedron a = Polyhedron::make(dim, ca);
        Polyhedron b = Polyhedron::make(dim, cb);
        Polyhedron h = convex_hull(a, b);
        std::vector<Constraint> candidates = a.constraints();
        candidates.insert(candidates.end(), b.constraints().begin(), b.constraints().end());
        for (int k = 0; k < 12; ++k) {
            candidates.push_back(random_constraint(rng, dim, shape));
        }
        for (const Constraint& c : candidates) {
            if (oracle::entails(dim, a.constraints(), c) && oracle::entails(dim, b.constraints(), c)) {
                EXPECT_TRUE(h.entails(c)) << i << " " << format_constraint(c);
            }
        }
    }
}

TEST(Properties, IntersectIsGreatestLowerBound) {
    std::mt19937 rng(29);
    SystemShape shape;
    for (int i = 0; i < 100; ++i) {
        auto [dim, ca, cb] = random_pair(rng);
        Polyhedron a = Polyhedron::make(dim, ca);
        Polyhedron b = Polyhedron::make(dim, cb);
        Polyhedron m = intersect(a, b);
        EXPECT_TRUE(a.includes(m));
        EXPECT_TRUE(b.includes(m));
        // Any R below both (R = a ∩ b ∩ extra) is below the meet.
        auto extra = random_system(rng, dim, shape);
        std::vector<Constraint> r = ca;
        r.insert(r.end(), cb.begin(), cb.end());
        r.insert(r.end(), extra.begin(), extra.end());
        EXPECT_TRUE(m.includes(Polyhedron::make(dim, r)));
    }
}

TEST(Properties, ProjectionIsSound) {
    std::mt19937 rng(31);
    SystemShape shape;
    for (int i = 0; i < 80; ++i) {
        Dim dim = random_dimension(rng, shape);
        Polyhedron p = Polyhedron::make(dim, random_system(rng, dim, shape));
        Dim drop = std::uniform_int_distribution<Dim>(0, dim - 1)(rng);
        Polyhedron q = project_out(p, {drop});
        for (auto pt : sample_points(rng, p)) {
            pt.erase(pt.begin() + static_cast<std::ptrdiff_t>(drop));
            EXPECT_TRUE(q.contains(pt)) << i;
        }
    }
}

TEST(Properties, IncludesIsAPartialOrder) {
    std::mt19937 rng(37);
    SystemShape shape;
    shape.max_dimension = 2;
    for (int i = 0; i < 100; ++i) {
        Dim dim = random_dimension(rng, shape);
        Polyhedron a = Polyhedron::make(dim, random_system(rng, dim, shape));
        Polyhedron b = convex_hull(a, Polyhedron::make(dim, random_system(rng, dim, shape)));
        Polyhedron c = convex_hull(b, Polyhedron::make(dim, random_system(rng, dim, shape)));
        EXPECT_TRUE(a.includes(a));
        ASSERT_TRUE(b.includes(a) && c.includes(b));
        EXPECT_TRUE(c.includes(a));
        if (a.includes(b)) {
            EXPECT_TRUE(a.equivalent(b));
        }
    }
}

TEST(Properties, WideningCoversNext) {
    std::mt19937 rng(41);
    SystemShape shape;
    for (int i = 0; i < 100; ++i) {
        auto [dim, ca, cb] = random_pair(rng);
        Polyhedron a = Polyhedron::make(dim, ca);
        Polyhedron b = convex_hull(a, Polyhedron::make(dim, cb));
        Polyhedron bound = Polyhedron::make(dim, random_system(rng, dim, shape));
        EXPECT_TRUE(widen_standard(a, b).includes(b)) << i;
        EXPECT_TRUE(widen_up_to(a, b, bound).includes(b)) << i;
    }
}

TEST(Properties, WideningStabilisesGrowingInterval) {
    Polyhedron current = interval(1, 0, 0, 0);
    int widenings = 0;
    for (long k = 1; k <= 50; ++k) {
        Polyhedron next = convex_hull(current, interval(1, 0, 0, k));
        if (current.includes(next)) {
            break;
        }
        current = widen_standard(current, next);
        ++widenings;
    }
    EXPECT_LE(widenings, 2);
    EXPECT_TRUE(current.equivalent(make(1, {ge(var(0), num(0))})));
}
