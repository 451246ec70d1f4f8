#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "modtrace/projective.hpp"
#include "builders.hpp"

using namespace modtrace;
using namespace modtrace::testbuild;

TEST_CASE("free rank one projective has unit generator and identity form", "[projective]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr a = truncated_poly(f, 3);
    Projective p = free_projective(a, 1);
    CHECK(p.dim() == 3);
    CHECK(p.free_rank == 1);
    REQUIRE(p.gens.size() == 1);
    CHECK(p.gens[0] == a->unit());
    CHECK(p.forms[0] == Mat::identity(f, 3));
    CHECK(dual_basis_identity_holds(p));
}

TEST_CASE("idempotent image projective over M2 is the column module", "[projective]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr a = matrix_algebra2(f);
    /* right multiplication by E11 is left-linear with image A E11 of dim 2 */
    Mat e = a->right_basis(0);
    Projective p = projective_from_idempotent(a, 1, e);
    CHECK(p.dim() == 2);
    CHECK(p.retract * p.embed == Mat::identity(f, 2));
    CHECK(p.embed * p.retract == e);
    CHECK(dual_basis_identity_holds(p));
    CHECK(hom_space(p.carrier, column_module(a)).dim() == 1);
}

TEST_CASE("idempotent presentations are validated", "[projective]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr a = matrix_algebra2(f);
    Mat not_idem = a->right_basis(1);  /* E12 squares to zero */
    CHECK_THROWS_AS(projective_from_idempotent(a, 1, not_idem), not_idempotent_error);
    Mat not_linear(f, 4, 4);
    not_linear.at(0, 0) = 1;  /* projection onto E11 coordinate is not left-linear */
    CHECK_THROWS_AS(projective_from_idempotent(a, 1, not_linear), axiom_error);
    CHECK_THROWS_AS(projective_from_idempotent(a, 2, Mat::identity(f, 4)), shape_error);
}

TEST_CASE("dual basis identity holds over random algebras and presentations", "[projective]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(411);
    for (int t = 0; t < 25; ++t) {
        AlgebraPtr a = random_algebra(f, rng);
        Projective p1 = free_projective(a, 1 + static_cast<int>(rng() % 2));
        CHECK(dual_basis_identity_holds(p1));
        /* block idempotent on A^2: identity on the first copy */
        Mat e(f, 2 * a->dim(), 2 * a->dim());
        for (int i = 0; i < a->dim(); ++i) e.at(i, i) = 1;
        Projective p2 = projective_from_idempotent(a, 2, e);
        CHECK(p2.dim() == a->dim());
        CHECK(dual_basis_identity_holds(p2));
    }
}

TEST_CASE("tensor against the dual matches the hom space", "[projective]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr a = matrix_algebra2(f);
    Projective p = free_projective(a, 1);
    DualTensorHom th = dual_tensor_hom(p, column_module(a));
    CHECK(th.tensor.dim() == 2);
    CHECK(th.hom.dim() == 2);
    CHECK(th.to_hom * th.to_tensor == Mat::identity(f, th.hom.dim()));
    CHECK(th.to_tensor * th.to_hom == Mat::identity(f, th.tensor.dim()));
}

TEST_CASE("tensor-hom inversion holds across sampled instances", "[projective]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(1213);
    for (int t = 0; t < 25; ++t) {
        AlgebraPtr a = random_algebra(f, rng);
        Projective p = (t % 3 == 0) ? free_projective(a, 2) : free_projective(a, 1);
        if (t % 5 == 0) {
            Mat e(f, 2 * a->dim(), 2 * a->dim());
            for (int i = 0; i < a->dim(); ++i) e.at(i, i) = 1;
            p = projective_from_idempotent(a, 2, e);
        }
        LeftModule m = (t % 2 == 0) ? left_regular_module(a)
                                    : bimodule_tensor_module(dual_bimodule(a),
                                                             left_regular_module(a)).mod;
        DualTensorHom th = dual_tensor_hom(p, m);
        CHECK(th.to_hom * th.to_tensor == Mat::identity(f, th.hom.dim()));
        CHECK(th.to_tensor * th.to_hom == Mat::identity(f, th.tensor.dim()));
    }
}

TEST_CASE("zero-rank projective flows through", "[projective]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr a = truncated_poly(f, 2);
    Projective p = projective_from_idempotent(a, 1, Mat(f, 2, 2));  /* zero idempotent */
    CHECK(p.dim() == 0);
    CHECK(dual_basis_identity_holds(p));
    DualTensorHom th = dual_tensor_hom(p, left_regular_module(a));
    CHECK(th.tensor.dim() == 0);
    CHECK(th.hom.dim() == 0);
}
