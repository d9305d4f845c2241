#include "jhfem/banded.hpp"
#include "jhfem/basis.hpp"
#include "jhfem/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace jhfem;

namespace {

std::vector<ElementFamily> all_families()
{
    std::vector<ElementFamily> out;
    for (int p = 3; p <= 5; ++p) {
        out.push_back(ElementFamily::hermite(p));
    }
    for (int p = 1; p <= 5; ++p) {
        out.push_back(ElementFamily::hierarchic(p));
    }
    return out;
}

std::string label(const ElementFamily& f)
{
    return (f.kind() == ElementKind::HermiteC1 ? "hermite p=" : "hierarchic p=") +
           std::to_string(f.degree());
}

} // namespace

TEST(Basis, CubicHermiteKroneckerAtLeftNode)
{
    const ShapeEval s = eval_hermite(3, 0.0);
    EXPECT_EQ(s.values, (std::vector<double>{1, 0, 0, 0}));
    EXPECT_EQ(s.first_derivs, (std::vector<double>{0, 1, 0, 0}));
}

TEST(Basis, CubicHermiteMidpoint)
{
    const ShapeEval s = eval_hermite(3, 0.5);
    EXPECT_DOUBLE_EQ(s.values[0], 0.5);
    EXPECT_DOUBLE_EQ(s.values[1], 0.125);
    EXPECT_DOUBLE_EQ(s.values[2], 0.5);
    EXPECT_DOUBLE_EQ(s.values[3], -0.125);
}

TEST(Basis, QuarticBubbleMidpoint)
{
    EXPECT_DOUBLE_EQ(eval_hermite(4, 0.5).values[4], 0.0625);
}

TEST(Basis, HermiteNodalAndBubbleConditions)
{
    for (int p = 3; p <= 5; ++p) {
        const ShapeEval a = eval_hermite(p, 0.0);
        const ShapeEval b = eval_hermite(p, 1.0);
        ASSERT_EQ(a.values.size(), static_cast<std::size_t>(p + 1));
        ASSERT_EQ(a.second_derivs.size(), static_cast<std::size_t>(p + 1));
        // value-left, slope-left, value-right, slope-right
        const double va[] = {1, 0, 0, 0};
        const double sa[] = {0, 1, 0, 0};
        const double vb[] = {0, 0, 1, 0};
        const double sb[] = {0, 0, 0, 1};
        for (int i = 0; i < 4; ++i) {
            EXPECT_NEAR(a.values[i], va[i], 1e-15);
            EXPECT_NEAR(a.first_derivs[i], sa[i], 1e-15);
            EXPECT_NEAR(b.values[i], vb[i], 1e-15);
            EXPECT_NEAR(b.first_derivs[i], sb[i], 1e-15);
        }
        for (std::size_t i = 4; i < a.values.size(); ++i) {
            EXPECT_NEAR(a.values[i], 0.0, 1e-15);
            EXPECT_NEAR(a.first_derivs[i], 0.0, 1e-15);
            EXPECT_NEAR(b.values[i], 0.0, 1e-15);
            EXPECT_NEAR(b.first_derivs[i], 0.0, 1e-15);
        }
    }
}

TEST(Basis, LinearHats)
{
    const ShapeEval s = eval_hierarchic(1, 0.3);
    ASSERT_EQ(s.values.size(), 2u);
    EXPECT_DOUBLE_EQ(s.values[0], 0.7);
    EXPECT_DOUBLE_EQ(s.values[1], 0.3);
    EXPECT_TRUE(s.second_derivs.empty());
}

TEST(Basis, QuadraticBubblePeaksAtMidpoint)
{
    const double peak = eval_hierarchic(2, 0.5).values[2];
    EXPECT_GT(peak, 0.0);
    for (int i = 0; i <= 200; ++i) {
        EXPECT_LE(eval_hierarchic(2, i / 200.0).values[2], peak + 1e-15);
    }
}

TEST(Basis, HierarchicBubblesVanishAtEnds)
{
    for (int p = 2; p <= 5; ++p) {
        const ShapeEval a = eval_hierarchic(p, 0.0);
        const ShapeEval b = eval_hierarchic(p, 1.0);
        EXPECT_DOUBLE_EQ(a.values[0], 1.0);
        EXPECT_DOUBLE_EQ(b.values[1], 1.0);
        for (std::size_t i = 2; i < a.values.size(); ++i) {
            EXPECT_NEAR(a.values[i], 0.0, 1e-15);
            EXPECT_NEAR(b.values[i], 0.0, 1e-15);
        }
    }
}

// Interpolate each monomial t^k (k <= p) by collocation at p + 1 points and
// check the reproduction at 50 other points.
TEST(Basis, SpanContainsAllMonomialsUpToDegree)
{
    for (const auto& fam : all_families()) {
        const int n = fam.functions_per_element();
        const auto un = static_cast<std::size_t>(n);
        BandedMatrix v(un, un - 1);
        std::vector<double> nodes(un);
        for (int i = 0; i < n; ++i) {
            nodes[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(std::numbers::pi * (i + 0.5) / n);
            const ShapeEval s = eval_reference(fam, nodes[static_cast<std::size_t>(i)]);
            for (std::size_t j = 0; j < un; ++j) {
                v.at(static_cast<std::size_t>(i), j) = s.values[j];
            }
        }
        const BandedLU lu(v);
        for (int k = 0; k <= fam.degree(); ++k) {
            std::vector<double> rhs(un);
            for (std::size_t i = 0; i < un; ++i) {
                rhs[i] = std::pow(nodes[i], k);
            }
            const std::vector<double> c = lu.solve(rhs);
            double worst = 0.0;
            for (int q = 0; q < 50; ++q) {
                const double t = (q + 0.37) / 50.0;
                const ShapeEval s = eval_reference(fam, t);
                double val = 0.0;
                for (std::size_t j = 0; j < un; ++j) {
                    val += c[j] * s.values[j];
                }
                worst = std::max(worst, std::abs(val - std::pow(t, k)));
            }
            EXPECT_LT(worst, 1e-12) << label(fam) << " k = " << k;
        }
    }
}

TEST(Basis, DerivativesMatchFiniteDifferences)
{
    const double h = 1e-6;
    for (const auto& fam : all_families()) {
        for (double t : {0.1, 0.33, 0.5, 0.77, 0.95}) {
            const ShapeEval s = eval_reference(fam, t);
            const ShapeEval up = eval_reference(fam, t + h);
            const ShapeEval dn = eval_reference(fam, t - h);
            for (std::size_t i = 0; i < s.values.size(); ++i) {
                EXPECT_NEAR(s.first_derivs[i], (up.values[i] - dn.values[i]) / (2 * h), 1e-6)
                    << label(fam) << " i = " << i;
                if (!s.second_derivs.empty()) {
                    EXPECT_NEAR(s.second_derivs[i], (up.first_derivs[i] - dn.first_derivs[i]) / (2 * h),
                                1e-6)
                        << label(fam) << " i = " << i;
                }
            }
        }
    }
}

TEST(Basis, PhysicalScalingMakesSlopeDofsPhysical)
{
    const double h = 0.125;
    for (int p = 3; p <= 5; ++p) {
        const ShapeEval a = eval_physical(ElementFamily::hermite(p), 0.0, h);
        const ShapeEval b = eval_physical(ElementFamily::hermite(p), 1.0, h);
        EXPECT_NEAR(a.first_derivs[1], 1.0, 1e-14);
        EXPECT_NEAR(b.first_derivs[3], 1.0, 1e-14);
        const ShapeEval r = eval_hermite(p, 0.3);
        const ShapeEval x = eval_physical(ElementFamily::hermite(p), 0.3, h);
        EXPECT_NEAR(x.first_derivs[0], r.first_derivs[0] / h, 1e-12);
        EXPECT_NEAR(x.second_derivs[2], r.second_derivs[2] / (h * h), 1e-10);
    }
    const ShapeEval c = eval_physical(ElementFamily::hierarchic(1), 0.4, h);
    EXPECT_NEAR(c.first_derivs[1], 1.0 / h, 1e-12);
}

TEST(Basis, RejectsUnsupportedDegrees)
{
    EXPECT_THROW(ElementFamily::hermite(2), InvalidArgument);
    EXPECT_THROW(ElementFamily::hermite(6), InvalidArgument);
    EXPECT_THROW(ElementFamily::hierarchic(0), InvalidArgument);
    EXPECT_THROW(ElementFamily::hierarchic(6), InvalidArgument);
    EXPECT_THROW(eval_hermite(2, 0.5), InvalidArgument);
    EXPECT_THROW(eval_hierarchic(6, 0.5), InvalidArgument);
}

TEST(Basis, FamilyCounts)
{
    EXPECT_EQ(ElementFamily::hermite(5).bubbles_per_element(), 2);
    EXPECT_EQ(ElementFamily::hermite(3).bubbles_per_element(), 0);
    EXPECT_EQ(ElementFamily::hierarchic(4).bubbles_per_element(), 3);
    EXPECT_EQ(ElementFamily::hierarchic(4).dofs_per_node(), 1);
}
