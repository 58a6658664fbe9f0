#include "funk/geom_core.hpp"
#include "funk/hull.hpp"
#include "funk/random.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace funk;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int n : {1, 3, 8, 16}) {
        const auto nodes = gauss_legendre(n, -0.5, 2.0);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (const auto& q : nodes) s += q.w * std::pow(q.x, k);
            const double exact = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
            EXPECT_NEAR(s, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "n=" << n << " k=" << k;
        }
    }
}

TEST(CompositeGaussLegendre, IntegratesSmoothFunctions) {
    double s = 0.0;
    for (const auto& q : composite_gauss_legendre(0.0, pi, 10)) s += q.w * std::sin(q.x);
    EXPECT_NEAR(s, 2.0, 1e-13);
}

TEST(TriangleRule, WeightsSumToOneAndIntegrateQuartics) {
    const auto& r = triangle_rule();
    double w = 0.0;
    double x2y2 = 0.0;
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
        w += r.weights[i];
        const auto& b = r.barycentric[i];
        x2y2 += r.weights[i] * b[1] * b[1] * b[2] * b[2];
    }
    EXPECT_NEAR(w, 1.0, 1e-12);
    // Over the reference triangle, the mean of x^2 y^2 is 2! 2! 2! / 6! = 1/90.
    EXPECT_NEAR(x2y2, 1.0 / 90.0, 1e-12);
}

TEST(CapArea, MatchesClosedForms) {
    EXPECT_NEAR(cap_area(2, 0.3), 0.6, 1e-15);
    EXPECT_NEAR(cap_area(3, 0.7), 2 * pi * (1 - std::cos(0.7)), 1e-12);
    EXPECT_NEAR(cap_area(4, pi), sphere_area(4), 1e-10);
    EXPECT_NEAR(cap_area(5, pi / 2), 0.5 * sphere_area(5), 1e-10);
}

TEST(UnitBall, Volumes) {
    EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-15);
    EXPECT_NEAR(unit_ball_volume(2), pi, 1e-15);
    EXPECT_NEAR(unit_ball_volume(3), 4 * pi / 3, 1e-14);
    EXPECT_NEAR(sphere_area(3), 4 * pi, 1e-14);
}

TEST(OrthonormalComplement, IsOrthonormalAndOrthogonal) {
    test::Rng rng(1);
    for (int d = 2; d <= 5; ++d) {
        const Vector n = test::unit_vector(rng, d);
        const Matrix b = orthonormal_complement(3.0 * n);
        EXPECT_EQ(b.cols(), d - 1);
        EXPECT_LT((b.transpose() * b - Matrix::Identity(d - 1, d - 1)).norm(), 1e-12);
        EXPECT_LT((b.transpose() * n).norm(), 1e-12);
    }
}

TEST(GnomonicProject, LandsOnTangentPlane) {
    test::Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const Vector u = test::unit_vector(rng, 3);
        Vector x = test::unit_vector(rng, 3);
        if (x.dot(u) < 0.1) continue;
        const Vector g = gnomonic_project(u, x);
        EXPECT_NEAR(g.dot(u), 1.0, 1e-12);
        EXPECT_LT((g.normalized() - x).norm(), 1e-12);
    }
}

TEST(DualHyperplane, Offset) {
    Vector z(2);
    z << 0.0, 2.0;
    const auto h = dual_hyperplane(z);
    EXPECT_NEAR(h.normal.dot(z.normalized()), 1.0, 1e-15);
    EXPECT_NEAR(h.offset, 0.5, 1e-15);
}

TEST(SimplexMeasure, ParallelepipedFraction) {
    std::vector<Vector> pts{Vector::Zero(3), Vector::Unit(3, 0), 2 * Vector::Unit(3, 1), 3 * Vector::Unit(3, 2)};
    EXPECT_NEAR(simplex_measure<double>(pts), 1.0, 1e-15);
}

TEST(SummarizeSamples, MeanAndStandardError) {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const auto r = summarize_samples(x, 7);
    EXPECT_DOUBLE_EQ(r.value, 2.5);
    EXPECT_NEAR(r.std_error, std::sqrt((5.0 / 3.0) / 4.0), 1e-15);
    EXPECT_EQ(r.samples, 4);
    EXPECT_EQ(r.seed, 7u);
}

TEST(RegionMeasure, EllipseAndPolygon) {
    EmbeddedRegion e{{Vector::Unit(3, 2), 0.0}, EllipsoidalRegion{Vector::Zero(3), orthonormal_complement(Vector::Unit(3, 2)), Matrix::Identity(2, 2) * 4.0}};
    EXPECT_NEAR(region_measure(e), pi / 4, 1e-14);
    std::vector<Vector> sq;
    for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}) {
        Vector p(3);
        p << x, y, 5.0;
        sq.push_back(p);
    }
    EmbeddedRegion s{{Vector::Unit(3, 2), 5.0}, PolytopalRegion{sq}};
    EXPECT_NEAR(region_measure(s), 1.0, 1e-13);
}

TEST(GnomonicArea, CapsDeterministic) {
    const Vector u = Vector::Unit(2, 1);
    for (double theta : {0.1, 0.5, 1.2}) {
        const auto r = gnomonic_area(u, [&](const Vector& x) { return x.dot(u) >= std::cos(theta); },
                                     QuadratureSpec::deterministic(4096));
        EXPECT_NEAR(r.value, 2 * std::tan(theta), 1e-6 * 2 * std::tan(theta));
    }
}

TEST(GnomonicArea, CapsMonteCarlo) {
    const Vector u = Vector::Unit(3, 2);
    const double theta = 0.6;
    const auto r = gnomonic_area(u, [&](const Vector& x) { return x.dot(u) >= std::cos(theta); },
                                 QuadratureSpec::monte_carlo(100000, 5), theta + 0.1);
    const double exact = pi * std::tan(theta) * std::tan(theta);
    EXPECT_NEAR(r.value, exact, 4 * r.std_error);
}

TEST(GnomonicArea, EquatorTripsGuard) {
    const Vector u = Vector::Unit(2, 0);
    EXPECT_THROW(gnomonic_area(u, [](const Vector&) { return true; }, QuadratureSpec::deterministic(512)),
                 NumericalGuardError);
    EXPECT_THROW(gnomonic_area(Vector::Unit(3, 0), [](const Vector& x) { return x[0] > -0.5; },
                               QuadratureSpec::monte_carlo(1000)),
                 NumericalGuardError);
}

TEST(QuadratureSpec, RejectsEmptyBudget) {
    EXPECT_THROW(QuadratureSpec::monte_carlo(0).validate(), InvariantError);
    EXPECT_EQ(QuadratureSpec::defaults_for(2).budget, 4096);
    EXPECT_TRUE(QuadratureSpec::defaults_for(3).is_monte_carlo());
}

TEST(RandomStream, CounterBasedAndUniform) {
    RandomStream a(9, 3);
    RandomStream b(9, 3);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
    RandomStream c(9, 4);
    EXPECT_NE(RandomStream(9, 3).next_u64(), c.next_u64());
    double mean = 0.0;
    Vector m = Vector::Zero(3);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        RandomStream r(1, static_cast<std::uint64_t>(i));
        const double x = r.uniform();
        EXPECT_GT(x, 0.0);
        EXPECT_LE(x, 1.0);
        mean += x / n;
        const Vector v = r.unit_vector(3);
        EXPECT_NEAR(v.norm(), 1.0, 1e-12);
        m += v / n;
    }
    EXPECT_NEAR(mean, 0.5, 0.01);
    EXPECT_LT(m.norm(), 0.03);
}

TEST(ParallelFor, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(100, 4, [](std::int64_t i) {
                     if (i == 57) throw InvariantError("boom");
                 }),
                 InvariantError);
}
