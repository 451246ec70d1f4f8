#pragma once

/* Shared constructions for the test suite: small classical algebras and
 * deterministic random samplers. */

#include <cstdint>
#include <random>
#include <vector>

#include "modtrace/algebra.hpp"

namespace modtrace::testbuild {

/* F_p[x]/(x^n), basis 1, x, ..., x^(n-1). */
inline AlgebraPtr truncated_poly(const Fp& f, int n) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) c[(static_cast<std::size_t>(i) * n + j) * n + (i + j)] = 1;
    return Algebra::make(f, n, std::move(c), Mat::unit_vector(f, n, 0));
}

/* Group algebra of Z/n, basis g^0, ..., g^(n-1). */
inline AlgebraPtr cyclic_group_algebra(const Fp& f, int n) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            c[(static_cast<std::size_t>(i) * n + j) * n + ((i + j) % n)] = 1;
    return Algebra::make(f, n, std::move(c), Mat::unit_vector(f, n, 0));
}

/* 2x2 matrix algebra, basis E11, E12, E21, E22 indexed a*2+b. */
inline AlgebraPtr matrix_algebra2(const Fp& f) {
    std::vector<std::uint64_t> c(64, 0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d)
                c[(static_cast<std::size_t>(a * 2 + b) * 4 + (b * 2 + d)) * 4 + (a * 2 + d)] = 1;
    Mat unit(f, 4, 1);
    unit.at(0, 0) = 1;
    unit.at(3, 0) = 1;
    return Algebra::make(f, 4, std::move(c), std::move(unit));
}

/* Column vectors as the simple left M2-module. */
inline LeftModule column_module(const AlgebraPtr& m2) {
    const Fp& f = m2->field();
    std::vector<Mat> act;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Mat m(f, 2, 2);
            m.at(a, b) = 1;
            act.push_back(std::move(m));
        }
    return LeftModule::make(m2, std::move(act));
}

/* Row vectors as the simple right M2-module. */
inline RightModule row_module(const AlgebraPtr& m2) {
    const Fp& f = m2->field();
    std::vector<Mat> act;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Mat m(f, 2, 2);
            m.at(b, a) = 1;
            act.push_back(std::move(m));
        }
    return RightModule::make(m2, std::move(act));
}

/* Upper triangular 2x2 matrices, basis E11, E12, E22. Not self-injective,
 * so it carries no Frobenius form at all. */
inline AlgebraPtr upper_triangular2(const Fp& f) {
    auto idx = [](int i, int j, int k) { return (static_cast<std::size_t>(i) * 3 + j) * 3 + k; };
    std::vector<std::uint64_t> c(27, 0);
    c[idx(0, 0, 0)] = 1;  /* E11 E11 = E11 */
    c[idx(0, 1, 1)] = 1;  /* E11 E12 = E12 */
    c[idx(1, 2, 1)] = 1;  /* E12 E22 = E12 */
    c[idx(2, 2, 2)] = 1;  /* E22 E22 = E22 */
    Mat unit(f, 3, 1);
    unit.at(0, 0) = 1;
    unit.at(2, 0) = 1;
    return Algebra::make(f, 3, std::move(c), std::move(unit));
}

inline Mat random_vector(const Fp& f, int n, std::mt19937_64& rng) {
    Mat v(f, n, 1);
    std::uniform_int_distribution<std::uint64_t> d(0, f.p() - 1);
    for (int i = 0; i < n; ++i) v.at(i, 0) = d(rng);
    return v;
}

inline Mat random_mat(const Fp& f, int rows, int cols, std::mt19937_64& rng) {
    Mat v(f, rows, cols);
    std::uniform_int_distribution<std::uint64_t> d(0, f.p() - 1);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) v.at(i, j) = d(rng);
    return v;
}

inline Mat random_invertible(const Fp& f, int n, std::mt19937_64& rng) {
    for (;;) {
        Mat m = random_mat(f, n, n, rng);
        if (try_inverse(m)) return m;
    }
}

/* Transport an algebra along an invertible change of basis t: the new basis
 * vectors are the columns of t expressed in the old basis. Keeps exact
 * associativity while scrambling all coordinates. */
inline AlgebraPtr change_basis(const AlgebraPtr& a, const Mat& t) {
    const Fp& f = a->field();
    int n = a->dim();
    Mat tinv = inverse(t);
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat prod = tinv * a->mul(t.col(i), t.col(j));
            for (int k = 0; k < n; ++k)
                c[(static_cast<std::size_t>(i) * n + j) * n + k] = prod.at(k, 0);
        }
    return Algebra::make(f, n, std::move(c), tinv * a->unit());
}

/* Direct product of two algebras (componentwise product, unit (1, 1)). */
inline AlgebraPtr direct_product(const AlgebraPtr& a, const AlgebraPtr& b) {
    const Fp& f = a->field();
    int n = a->dim(), m = b->dim(), d = n + m;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(d) * d * d, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                c[(static_cast<std::size_t>(i) * d + j) * d + k] = a->structure_at(i, j, k);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                c[(static_cast<std::size_t>(n + i) * d + (n + j)) * d + (n + k)] =
                    b->structure_at(i, j, k);
    Mat unit(f, d, 1);
    for (int i = 0; i < n; ++i) unit.at(i, 0) = a->unit().at(i, 0);
    for (int i = 0; i < m; ++i) unit.at(n + i, 0) = b->unit().at(i, 0);
    return Algebra::make(f, d, std::move(c), std::move(unit));
}

/* Deterministic sampler over a pool of exactly associative algebras with a
 * random change of basis on top. Dimensions stay at most 8. */
inline AlgebraPtr random_algebra(const Fp& f, std::mt19937_64& rng) {
    AlgebraPtr base;
    switch (rng() % 6) {
        case 0: base = truncated_poly(f, 2 + static_cast<int>(rng() % 3)); break;
        case 1: base = cyclic_group_algebra(f, 2 + static_cast<int>(rng() % 4)); break;
        case 2: base = matrix_algebra2(f); break;
        case 3: base = direct_product(truncated_poly(f, 2), cyclic_group_algebra(f, 2)); break;
        case 4: base = direct_product(matrix_algebra2(f), truncated_poly(f, 2)); break;
        default:
            base = direct_product(cyclic_group_algebra(f, 3),
                                  truncated_poly(f, 2 + static_cast<int>(rng() % 2)));
            break;
    }
    return change_basis(base, random_invertible(f, base->dim(), rng));
}

/* Random algebra automorphism: conjugation by a random unit element. */
inline Mat random_inner_automorphism(const AlgebraPtr& a, std::mt19937_64& rng) {
    const Fp& f = a->field();
    for (;;) {
        Mat u = random_vector(f, a->dim(), rng);
        if (!a->is_unit_element(u)) continue;
        Mat ui = a->element_inverse(u);
        /* nu(x) = u x u^{-1} */
        return a->left_mult(u) * a->right_mult(ui);
    }
}

/* Random A-bimodule: the regular bimodule, its dual, or an inner twist. */
inline Bimodule random_bimodule(const AlgebraPtr& a, std::mt19937_64& rng) {
    switch (rng() % 3) {
        case 0: return regular_bimodule(a);
        case 1: return dual_bimodule(a);
        default: return twisted_regular_bimodule(a, random_inner_automorphism(a, rng));
    }
}

}  // namespace modtrace::testbuild
