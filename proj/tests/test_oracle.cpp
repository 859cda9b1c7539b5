#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <moments/oracle.hpp>

#include <random>

using namespace moments;

namespace {
const ScalarProfile kDefault{ProfileKind::gaussian, 1.0, Eigen::Vector3d::Zero()};
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    auto g = QuadratureGrid::make(1.0, 6);
    double s0 = 0, s2 = 0, s10 = 0;
    for (int i = 0; i < 6; ++i) {
        s0 += g.weights[i];
        s2 += g.weights[i] * g.nodes[i] * g.nodes[i];
        s10 += g.weights[i] * std::pow(g.nodes[i], 10);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));  // degree 10 < 2*6
    CHECK_THROWS_AS(QuadratureGrid::make(1.0, 1), std::invalid_argument);
}

TEST_CASE("field construction validates the profile") {
    CHECK_THROWS_AS(make_field(ScalarProfile{ProfileKind::gaussian, 0.0, {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_field(ScalarProfile{ProfileKind::compact_bump, -1.0, {}}),
                    std::invalid_argument);
}

TEST_CASE("the field is symmetric and conserved at sample points") {
    TensorField2 field(kDefault);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    double max_t = 0, max_div = 0;
    for (int s = 0; s < 100; ++s) {
        Eigen::Vector3d x(d(rng), d(rng), d(rng));
        auto t = field.components(x);
        CHECK(t(0, 1) == t(1, 0));
        CHECK(t(0, 2) == t(2, 0));
        CHECK(t(1, 2) == t(2, 1));
        max_t = std::max(max_t, t.cwiseAbs().maxCoeff());
        for (int j = 0; j < 3; ++j) max_div = std::max(max_div, std::abs(field.divergence(j, x)));
    }
    CHECK(max_div / max_t < 1e-12);
}

TEST_CASE("the compact bump vanishes outside its support") {
    TensorField2 field(ScalarProfile{ProfileKind::compact_bump, 1.0, Eigen::Vector3d::Zero()});
    CHECK(field.components(Eigen::Vector3d(1.01, 0, 0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(field.components(Eigen::Vector3d(0.6, 0.6, 0.6)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(field.components(Eigen::Vector3d(0.5, 0, 0)).cwiseAbs().maxCoeff() > 0.0);
    // still conserved inside
    double max_div = 0, max_t = 0;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    for (int s = 0; s < 50; ++s) {
        Eigen::Vector3d x(d(rng), d(rng), d(rng));
        max_t = std::max(max_t, field.components(x).cwiseAbs().maxCoeff());
        for (int j = 0; j < 3; ++j) max_div = std::max(max_div, std::abs(field.divergence(j, x)));
    }
    CHECK(max_div / max_t < 1e-11);
}

TEST_CASE("predicted moments vanish; the square pair stays related but nonzero") {
    TensorField2 field(kDefault);
    auto grid = QuadratureGrid::default_for(kDefault);

    auto zeroth = numeric_moment_scaled(field, MultisetWord{}, MultisetWord::parse("ab"), grid);
    CHECK(std::abs(zeroth.value) <= 1e-8 * zeroth.scale);

    auto first = numeric_moment_scaled(field, MultisetWord::parse("c"), MultisetWord::parse("ab"), grid);
    CHECK(std::abs(first.value) <= 1e-8 * first.scale);

    auto aabb = numeric_moment_scaled(field, MultisetWord::parse("a2"), MultisetWord::parse("b2"), grid);
    auto abab = numeric_moment_scaled(field, MultisetWord::parse("ab"), MultisetWord::parse("ab"), grid);
    CHECK(std::abs(aabb.value) > 1e-3 * aabb.scale);
    CHECK(std::abs(abab.value) > 1e-3 * abab.scale);
    CHECK(std::abs(aabb.value + 2 * abab.value) <=
          1e-6 * std::max(std::abs(aabb.value), std::abs(abab.value)));

    // closed-form cross-check for the unit Gaussian: (aa;bb) = 2 (2 pi)^{3/2}
    const double z = std::pow(2 * M_PI, 1.5);
    CHECK(aabb.value == doctest::Approx(2 * z).epsilon(1e-9));
    CHECK(abab.value == doctest::Approx(-z).epsilon(1e-9));

    CHECK_THROWS_AS(numeric_moment(field, MultisetWord::parse("d"), MultisetWord::parse("ab"), grid),
                    std::invalid_argument);
    CHECK_THROWS_AS(numeric_moment(field, MultisetWord{}, MultisetWord::parse("abc"), grid),
                    std::invalid_argument);
}

TEST_CASE("full oracle report passes at the default grid") {
    TensorField2 field(kDefault);
    auto rep = oracle_report(field, QuadratureGrid::default_for(kDefault));
    CHECK(rep.calibration_pass);
    CHECK(rep.calibration_rel_error < 1e-10);
    CHECK(rep.divergence_pass);
    CHECK(rep.first_moments.size() == 24);
    for (const auto& e : rep.first_moments) {
        INFO(e.label << " relative " << e.relative);
        CHECK(e.pass);
    }
    CHECK(rep.some_second_moment_nonzero);
    CHECK(rep.relation_pass);
    CHECK(rep.relation_terms_nonzero);
    CHECK(rep.all_pass());
    REQUIRE(rep.convergence_residuals.size() == 3);
    // residuals recorded coarse-to-fine; the fine grid must not be worse
    CHECK(rep.convergence_residuals[2] <= rep.convergence_residuals[0] + 1e-12);
}

TEST_CASE("an off-center profile does not break the vanishing") {
    ScalarProfile off{ProfileKind::gaussian, 1.0, Eigen::Vector3d(0.3, -0.2, 0.1)};
    TensorField2 field(off);
    auto rep = oracle_report(field, QuadratureGrid::default_for(off));
    CHECK(rep.all_pass());
}
