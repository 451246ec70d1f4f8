#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modtrace/algebra.hpp"

namespace modtrace {

/* Free left module A^n with copy-major coordinates (i, a) -> i*dim(A)+a. */
inline LeftModule free_module(const AlgebraPtr& alg, int n) {
    const Fp& f = alg->field();
    Mat idn = Mat::identity(f, n);
    std::vector<Mat> act;
    act.reserve(alg->dim());
    for (int i = 0; i < alg->dim(); ++i) act.push_back(kron(idn, alg->left_basis(i)));
    return LeftModule::make(alg, std::move(act));
}

/* Finitely generated projective left module presented as the image of an
 * A-linear idempotent e on A^n. carrier is the image with embed/retract
 * satisfying retract*embed = id and embed*retract = e. The dual bases
 * consist of the generators p_j = retract(1_A in copy j) and the coordinate
 * forms p^j = (copy-j component) restricted along embed; they satisfy
 * sum_j p^j(p) . p_j = p for every p. */
struct Projective {
    AlgebraPtr alg;
    int free_rank = 0;
    Mat idem;
    LeftModule carrier;
    Mat embed;    /* (n*dimA) x dim(carrier) */
    Mat retract;  /* dim(carrier) x (n*dimA) */
    std::vector<Mat> gens;   /* p_j as carrier vectors */
    std::vector<Mat> forms;  /* p^j as dim(A) x dim(carrier) matrices */

    int dim() const { return carrier.dim(); }
};

inline Projective projective_from_idempotent(const AlgebraPtr& alg, int n, const Mat& e) {
    const Fp& f = alg->field();
    int amb = n * alg->dim();
    if (e.rows() != amb || e.cols() != amb)
        throw shape_error("idempotent must act on A^" + std::to_string(n));
    if (e * e != e) throw not_idempotent_error("presentation matrix is not idempotent");
    LeftModule free_mod = free_module(alg, n);
    for (int i = 0; i < alg->dim(); ++i)
        if (e * free_mod.act_basis(i) != free_mod.act_basis(i) * e)
            throw axiom_error("idempotent is not module-linear at basis element " +
                              std::to_string(i));

    Mat embed = rref(e.transpose()).mat.transpose();
    auto coords = solve(embed, e);
    if (!coords) throw axiom_error("image basis extraction failed");
    Mat retract = coords->particular;

    std::vector<Mat> act;
    act.reserve(alg->dim());
    for (int i = 0; i < alg->dim(); ++i)
        act.push_back(retract * free_mod.act_basis(i) * embed);
    LeftModule carrier = LeftModule::make(alg, std::move(act));

    std::vector<Mat> gens, forms;
    for (int j = 0; j < n; ++j) {
        Mat gj(f, amb, 1);
        for (int t = 0; t < alg->dim(); ++t) gj.at(j * alg->dim() + t, 0) = alg->unit().at(t, 0);
        gens.push_back(retract * gj);
        Mat fj(f, alg->dim(), carrier.dim());
        for (int t = 0; t < alg->dim(); ++t)
            for (int c = 0; c < carrier.dim(); ++c)
                fj.at(t, c) = embed.at(j * alg->dim() + t, c);
        forms.push_back(std::move(fj));
    }
    return Projective{alg, n, e, std::move(carrier), std::move(embed), std::move(retract),
                      std::move(gens), std::move(forms)};
}

inline Projective free_projective(const AlgebraPtr& alg, int n) {
    return projective_from_idempotent(alg, n,
                                      Mat::identity(alg->field(), n * alg->dim()));
}

/* Checks sum_j p^j(v) . p_j = v on every carrier basis vector. */
inline bool dual_basis_identity_holds(const Projective& p) {
    const Fp& f = p.alg->field();
    for (int b = 0; b < p.dim(); ++b) {
        Mat acc(f, p.dim(), 1);
        for (int j = 0; j < p.free_rank; ++j)
            acc = acc + p.carrier.act(p.forms[j].col(b)) * p.gens[j];
        if (acc != Mat::unit_vector(f, p.dim(), b)) return false;
    }
    return true;
}

/* The pair of mutually inverse maps between P^dagger tensor_A M and
 * Hom_A(P, M): a pure tensor h x m goes to p -> h(p) . m, and a map xi
 * comes back as sum_j p^j x xi(p_j). */
struct DualTensorHom {
    DualModule dual;        /* P^dagger */
    TensorQuotient tensor;  /* P^dagger tensor_A M */
    HomBasis hom;           /* Hom_A(P, M) */
    Mat to_hom;             /* hom coords <- tensor coords */
    Mat to_tensor;          /* tensor coords <- hom coords */
};

inline DualTensorHom dual_tensor_hom(const Projective& p, const LeftModule& m) {
    require_same_algebra(p.alg, m.algebra(), "dual_tensor_hom");
    const Fp& f = p.alg->field();
    DualModule dual = dual_module(p.carrier);
    TensorQuotient tensor = tensor_over_algebra(dual.mod, m);
    HomBasis hom = hom_space(p.carrier, m);

    Mat to_hom(f, hom.dim(), tensor.dim());
    for (int t = 0; t < tensor.dim(); ++t) {
        Mat amb = tensor.space.section.col(t);
        Mat g(f, m.dim(), p.dim());
        for (int i = 0; i < dual.mod.dim(); ++i) {
            bool touched = false;
            for (int j = 0; j < m.dim(); ++j)
                if (amb.at(i * m.dim() + j, 0) != 0) { touched = true; break; }
            if (!touched) continue;
            for (int b = 0; b < p.dim(); ++b) {
                Mat acted = m.act(dual.maps.basis[i].col(b));
                for (int j = 0; j < m.dim(); ++j) {
                    std::uint64_t c = amb.at(i * m.dim() + j, 0);
                    if (c == 0) continue;
                    for (int r = 0; r < m.dim(); ++r)
                        g.at(r, b) = f.add(g.at(r, b), f.mul(c, acted.at(r, j)));
                }
            }
        }
        Mat x = hom.coords(g);
        for (int r = 0; r < hom.dim(); ++r) to_hom.at(r, t) = x.at(r, 0);
    }

    Mat to_tensor(f, tensor.dim(), hom.dim());
    for (int h = 0; h < hom.dim(); ++h) {
        const Mat& xi = hom.basis[h];
        Mat amb(f, tensor.space.ambient, 1);
        for (int j = 0; j < p.free_rank; ++j) {
            Mat x = dual.maps.coords(p.forms[j]);
            Mat mj = xi * p.gens[j];
            amb = amb + kron(x, mj);
        }
        Mat cls = tensor.space.proj * amb;
        for (int r = 0; r < tensor.dim(); ++r) to_tensor.at(r, h) = cls.at(r, 0);
    }
    return DualTensorHom{std::move(dual), std::move(tensor), std::move(hom),
                         std::move(to_hom), std::move(to_tensor)};
}

}  // namespace modtrace
