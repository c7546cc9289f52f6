#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fusionkit/fusion_frame.hpp"
#include "test_support.hpp"

using namespace fusionkit;
using namespace fusionkit::testing;

namespace {

FusionSystem c3_pair() { return FusionSystem::uniform({coordinate(3, {0, 1}), coordinate(3, {1, 2})}); }

FusionSystem random_system(Rng& rng, int n)
{
    const int m = rng.integer(1, 5);
    std::vector<Member> members;
    for (int j = 0; j < m; ++j)
        members.push_back({random_subspace(n, rng.integer(1, n), rng), rng.uniform(0.5, 2.0)});
    return FusionSystem(std::move(members));
}

} // namespace

TEST_CASE("construction rejects bad members")
{
    CHECK_THROWS_AS(FusionSystem({}), Error);
    try {
        FusionSystem({{coordinate(2, {0}), 0.0}});
        FAIL("expected NonpositiveWeight");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonpositiveWeight);
    }
    try {
        FusionSystem({{coordinate(2, {0}), 1.0}, {coordinate(3, {0}), 1.0}});
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("frame_bounds examples")
{
    auto b = frame_bounds(coordinate_lines());
    CHECK(b.is_frame);
    CHECK(b.lower == doctest::Approx(1.0));
    CHECK(b.upper == doctest::Approx(1.0));

    b = frame_bounds(c3_pair());
    CHECK(b.lower == doctest::Approx(1.0));
    CHECK(b.upper == doctest::Approx(2.0));

    b = frame_bounds(sys_b());
    CHECK(b.lower == doctest::Approx(1.0 - M_SQRT2 / 2).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(1.0 + M_SQRT2 / 2).epsilon(1e-12));
}

TEST_CASE("non-spanning systems are not frames")
{
    const auto b = frame_bounds(FusionSystem::uniform({coordinate(3, {0})}));
    CHECK_FALSE(b.is_frame);
    CHECK(b.lower == 0.0);
    CHECK(b.upper == doctest::Approx(1.0));
}

TEST_CASE("classify examples")
{
    auto f = classify(example_2_3(2));
    CHECK(f.frame);
    CHECK(f.tight);
    CHECK(f.parseval);
    CHECK(f.uniform_weight);

    f = classify(c3_pair());
    CHECK(f.frame);
    CHECK_FALSE(f.tight);

    f = classify(FusionSystem({{coordinate(2, {0}), 1.0}, {coordinate(2, {1}), 2.0}}));
    CHECK(f.frame);
    CHECK(f.bounds.lower == doctest::Approx(1.0));
    CHECK(f.bounds.upper == doctest::Approx(4.0));
    CHECK_FALSE(f.uniform_weight);
    CHECK_FALSE(f.tight);

    f = classify(FusionSystem::uniform({coordinate(2, {0}), coordinate(2, {1})}, 2.0));
    CHECK(f.tight);
    CHECK_FALSE(f.parseval);
}

TEST_CASE("frame bounds agree with the Monte-Carlo Rayleigh oracle")
{
    Rng rng(31);
    const Tolerances tol;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.integer(1, 8);
        const FusionSystem sys = random_system(rng, n);
        const FrameBounds b = frame_bounds(sys);
        const EnergyRange coarse = sample_frame_energy(sys, 200, 1000 + trial);
        CHECK(coarse.min >= b.lower - tol.eq_tol);
        CHECK(coarse.max <= b.upper + tol.eq_tol);
        if (b.is_frame && n <= 3) {
            // sampling hits the extremes quickly in low dimension
            const EnergyRange fine = sample_frame_energy(sys, 10000, 5000 + trial);
            CHECK(fine.max >= 0.95 * b.upper);
            CHECK(fine.min <= 1.05 * b.lower + 1e-12);
        }
    }
}

TEST_CASE("completeness examples and frame equivalence")
{
    CHECK_FALSE(is_complete(example_3_2i(2)));
    CHECK(is_complete(coordinate_lines()));
    CHECK(is_complete(example_2_2(3)));

    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const FusionSystem sys = random_system(rng, rng.integer(2, 6));
        CHECK(is_complete(sys) == frame_bounds(sys).is_frame);
    }
}

TEST_CASE("removing a member never increases C or D")
{
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const FusionSystem sys = random_system(rng, rng.integer(2, 6));
        if (sys.size() < 2)
            continue;
        const FrameBounds full = frame_bounds(sys);
        for (std::size_t i = 0; i < sys.size(); ++i) {
            std::vector<Member> reduced;
            for (std::size_t j = 0; j < sys.size(); ++j)
                if (j != i)
                    reduced.push_back(sys[j]);
            const FrameBounds b = frame_bounds(FusionSystem(reduced));
            CHECK(b.upper <= full.upper + 1e-12);
            CHECK(b.lower <= full.lower + 1e-12);
        }
    }
}

TEST_CASE("is_minimal examples")
{
    const auto pair = is_minimal(c3_pair());
    CHECK_FALSE(pair.minimal);
    CHECK(pair.violations == std::vector<std::size_t>{0, 1});
    CHECK(is_minimal(coordinate_lines()).minimal);
    CHECK(is_minimal(sys_b()).minimal);
    const auto redundant =
        is_minimal(FusionSystem::uniform({coordinate(2, {0}), coordinate(2, {1}), span_of(2, {{1, 1}})}));
    CHECK_FALSE(redundant.minimal);
    CHECK(redundant.violations.size() == 3);
}

TEST_CASE("is_exact examples")
{
    CHECK(is_exact(c3_pair()));
    CHECK_FALSE(is_exact(FusionSystem::uniform({coordinate(2, {0}), coordinate(2, {1}), span_of(2, {{1, 1}})})));
    CHECK(is_exact(coordinate_lines()));
    try {
        is_exact(example_3_2i(2));
        FAIL("expected NotAFrame");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAFrame);
    }
}

TEST_CASE("dimension_audit examples")
{
    auto a = dimension_audit(example_2_2(3));
    CHECK(a.sum_dims == 3);
    CHECK(a.f_basis_possible);
    a = dimension_audit(c3_pair());
    CHECK(a.sum_dims == 4);
    CHECK_FALSE(a.f_basis_possible);
    a = dimension_audit(FusionSystem::uniform({coordinate(3, {0, 1, 2})}));
    CHECK(a.f_basis_possible);
}

TEST_CASE("predict_transformed_bounds examples")
{
    const FrameBounds unit{1.0, 1.0, true};
    Rng rng(3);
    const auto u = OperatorMatrix::classify(random_unitary(2, rng));
    auto p = predict_transformed_bounds(unit, u);
    CHECK(p.lower == doctest::Approx(1.0));
    CHECK(p.upper == doctest::Approx(1.0));

    const FusionSystem sys = sys_b();
    const auto twice = OperatorMatrix::classify(2.0 * Matrix::Identity(2, 2));
    const auto check2 = check_transformed_bounds(sys, twice);
    CHECK(check2.predicted.lower == doctest::Approx(frame_bounds(sys).lower));
    CHECK(check2.predicted.upper == doctest::Approx(frame_bounds(sys).upper));
    CHECK(check2.actual.lower == doctest::Approx(frame_bounds(sys).lower));
    CHECK(check2.contained);

    const auto diag = OperatorMatrix::classify(real_matrix(2, 2, {2, 0, 0, 1}));
    const auto check3 = check_transformed_bounds(coordinate_lines(), diag);
    CHECK(check3.predicted.lower == doctest::Approx(0.25));
    CHECK(check3.predicted.upper == doctest::Approx(4.0));
    CHECK(check3.actual.lower == doctest::Approx(1.0));
    CHECK(check3.actual.upper == doctest::Approx(1.0));
    CHECK(check3.contained);

    const auto singular = OperatorMatrix::classify(real_matrix(2, 2, {1, 0, 0, 0}));
    CHECK_THROWS_AS(predict_transformed_bounds(unit, singular), Error);
}

TEST_CASE("transformed bounds stay inside the predicted interval")
{
    Rng rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.integer(1, 8);
        const FusionSystem sys = random_system(rng, n);
        const auto t = OperatorMatrix::classify(random_invertible(n, rng.uniform(1.0, 10.0), rng));
        CHECK(check_transformed_bounds(sys, t).contained);
    }
}
