#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "modtrace/projective.hpp"

namespace modtrace {

namespace detail {

/* Rows spanning the commutator subspace {a s - s a} of a square bimodule. */
inline EchelonAccumulator commutator_rows(const Bimodule& s) {
    if (!s.square()) throw shape_error("commutators need matching left and right algebras");
    const Fp& f = s.left_algebra()->field();
    EchelonAccumulator acc(f, s.dim());
    std::vector<std::uint64_t> row(s.dim());
    for (int a = 0; a < s.left_algebra()->dim(); ++a) {
        Mat d = s.left_basis_action(a) - s.right_basis_action(a);
        for (int c = 0; c < s.dim(); ++c) {
            for (int r = 0; r < s.dim(); ++r) row[r] = d.at(r, c);
            acc.add_row(row);
        }
    }
    return acc;
}

}  // namespace detail

/* Zeroth Hochschild homology of a square bimodule: Sigma / {a s - s a}. */
struct HH0 {
    QuotientSpace space;
    int dim() const { return space.dim(); }
};

inline HH0 hochschild0(const Bimodule& s) {
    EchelonAccumulator acc = detail::commutator_rows(s);
    return HH0{quotient_of(acc)};
}

/* Forms on Sigma vanishing on all commutators; columns are a basis. */
inline Mat trace_space(const Bimodule& s) {
    return detail::commutator_rows(s).kernel_basis();
}

inline bool is_symmetric_form(const Bimodule& s, const Mat& lam_row) {
    if (lam_row.rows() != 1 || lam_row.cols() != s.dim())
        throw shape_error("form must be a 1 x dim(Sigma) row");
    for (int a = 0; a < s.left_algebra()->dim(); ++a)
        if (!(lam_row * (s.left_basis_action(a) - s.right_basis_action(a))).is_zero())
            return false;
    return true;
}

/* Everything tied to one pair (Sigma, P): the tensor Sigma tensor_A P with
 * its induced module structure and HH0(Sigma). */
struct TraceSetup {
    Bimodule sigma;
    Projective p;
    ModuleTensor tensor;
    HH0 hh0;
};

inline TraceSetup make_trace_setup(Bimodule sigma, Projective p) {
    require_same_algebra(sigma.right_algebra(), p.alg, "make_trace_setup");
    ModuleTensor mt = bimodule_tensor_module(sigma, p.carrier);
    HH0 h = hochschild0(sigma);
    return TraceSetup{std::move(sigma), std::move(p), std::move(mt), std::move(h)};
}

inline void check_module_map(const TraceSetup& ts, const Mat& f) {
    if (f.rows() != ts.tensor.tensor.dim() || f.cols() != ts.p.dim())
        throw shape_error("endomorphism has wrong shape");
    for (int i = 0; i < ts.p.alg->dim(); ++i)
        if (f * ts.p.carrier.act_basis(i) != ts.tensor.mod.act_basis(i) * f)
            throw axiom_error("map P -> Sigma tensor P is not module-linear at basis element " +
                              std::to_string(i));
}

/* Representative in Sigma of the Hattori-Stallings class of f: P -> Sigma x_A P:
 * sum_j (p^j applied to the P-leg of a lift of f(p_j)) acting on the Sigma leg. */
inline Mat hattori_stallings_representative(const TraceSetup& ts, const Mat& f) {
    check_module_map(ts, f);
    const Fp& fld = ts.sigma.left_algebra()->field();
    int sd = ts.sigma.dim(), pd = ts.p.dim();
    Mat rep(fld, sd, 1);
    for (int j = 0; j < ts.p.free_rank; ++j) {
        Mat amb = ts.tensor.tensor.space.section * (f * ts.p.gens[j]);
        for (int q = 0; q < pd; ++q) {
            Mat w(fld, sd, 1);
            bool nz = false;
            for (int si = 0; si < sd; ++si) {
                std::uint64_t c = amb.at(si * pd + q, 0);
                if (c != 0) { w.at(si, 0) = c; nz = true; }
            }
            if (!nz) continue;
            rep = rep + ts.sigma.left_act(ts.p.forms[j].col(q)) * w;
        }
    }
    return rep;
}

/* Class of the representative in HH0(Sigma). */
inline Mat hattori_stallings(const TraceSetup& ts, const Mat& f) {
    return ts.hh0.space.proj * hattori_stallings_representative(ts, f);
}

/* Scalar trace of f against a symmetric form on Sigma. */
inline std::uint64_t twisted_trace(const Mat& lam_row, const TraceSetup& ts, const Mat& f) {
    Mat v = lam_row * hattori_stallings_representative(ts, f);
    return v.at(0, 0);
}

/* phi(s): A -> Sigma tensor_A A, a -> class(a s x 1). */
inline Mat phi_map(const TraceSetup& ts, const Mat& s_vec) {
    const AlgebraPtr& a = ts.p.alg;
    Mat f(a->field(), ts.tensor.tensor.dim(), ts.p.dim());
    if (ts.p.free_rank != 1 || ts.p.dim() != a->dim())
        throw shape_error("phi_map expects the free rank-one setup");
    for (int i = 0; i < a->dim(); ++i) {
        Mat cls = ts.tensor.tensor.class_of(ts.sigma.left_basis_action(i) * s_vec, a->unit());
        for (int r = 0; r < f.rows(); ++r) f.at(r, i) = cls.at(r, 0);
    }
    return f;
}

/* Sigma(g) for g: P -> Q. */
inline Mat induced_tensor_map(const TraceSetup& from, const TraceSetup& to, const Mat& g) {
    const Fp& f = from.sigma.left_algebra()->field();
    Mat ids = Mat::identity(f, from.sigma.dim());
    return to.tensor.tensor.space.proj * kron(ids, g) * from.tensor.tensor.space.section;
}

/* lambda^nat: Sigma -> A^*, <lambda^nat(s), a> = lambda(a s). */
inline Mat induced_dual_map(const Mat& lam_row, const Bimodule& sigma) {
    const AlgebraPtr& a = sigma.left_algebra();
    Mat m(a->field(), a->dim(), sigma.dim());
    for (int i = 0; i < a->dim(); ++i) {
        Mat row = lam_row * sigma.left_basis_action(i);
        for (int s = 0; s < sigma.dim(); ++s) m.at(i, s) = row.at(0, s);
    }
    return m;
}

/* Invertibility certificate for lambda^nat; nullopt when degenerate. */
inline std::optional<Mat> nondegeneracy_certificate(const Mat& lam_row, const Bimodule& sigma) {
    if (sigma.dim() != sigma.left_algebra()->dim()) return std::nullopt;
    return try_inverse(induced_dual_map(lam_row, sigma));
}

/* Gram matrix of the pairing Hom(Q, Sigma x_A P) x Hom(P, Q) -> k given by
 * (f, g) -> t^lambda_P(f g); the pairing is non-degenerate when the matrix
 * is square and invertible. */
inline Mat pairing_gram(const Mat& lam_row, const TraceSetup& ts_p, const Projective& q) {
    HomBasis from_q = hom_space(q.carrier, ts_p.tensor.mod);
    HomBasis to_q = hom_space(ts_p.p.carrier, q.carrier);
    Mat gram(lam_row.field(), from_q.dim(), to_q.dim());
    for (int i = 0; i < from_q.dim(); ++i)
        for (int j = 0; j < to_q.dim(); ++j)
            gram.at(i, j) = twisted_trace(lam_row, ts_p, from_q.basis[i] * to_q.basis[j]);
    return gram;
}

inline bool gram_nondegenerate(const Mat& gram) {
    return gram.rows() == gram.cols() && try_inverse(gram).has_value();
}

/* Trace against the dual regular bimodule evaluated through the coordinate
 * forms: for f: P -> A^* tensor_A P the scalar is
 * sum_j < (a*)-leg of a lift of f(p_j), p^j(P-leg) >. */
inline std::uint64_t canonical_trace(const TraceSetup& dual_ts, const Mat& f) {
    check_module_map(dual_ts, f);
    const Fp& fld = dual_ts.sigma.left_algebra()->field();
    int ad = dual_ts.sigma.dim(), pd = dual_ts.p.dim();
    std::uint64_t t = 0;
    for (int j = 0; j < dual_ts.p.free_rank; ++j) {
        Mat amb = dual_ts.tensor.tensor.space.section * (f * dual_ts.p.gens[j]);
        for (int al = 0; al < ad; ++al)
            for (int b = 0; b < pd; ++b) {
                std::uint64_t c = amb.at(al * pd + b, 0);
                if (c == 0) continue;
                t = fld.add(t, fld.mul(c, dual_ts.p.forms[j].at(al, b)));
            }
    }
    return t;
}

/* (lambda^nat x id_P) as a map between the two tensor quotients. */
inline Mat dual_transport_on_tensor(const Mat& lam_row, const TraceSetup& sigma_ts,
                                    const TraceSetup& dual_ts) {
    const Fp& f = lam_row.field();
    Mat idp = Mat::identity(f, sigma_ts.p.dim());
    return dual_ts.tensor.tensor.space.proj *
           kron(induced_dual_map(lam_row, sigma_ts.sigma), idp) *
           sigma_ts.tensor.tensor.space.section;
}

/* Frobenius data of a form on the algebra itself: Gram G_ij = lambda(e_i e_j),
 * the Nakayama automorphism nu = (G^T)^{-1} G characterized by
 * lambda(b a) = lambda(nu(a) b), and theta = G^T as the bimodule map
 * (nu-twisted A) -> A^*. */
struct FrobeniusData {
    Mat gram;
    Mat gram_inv;
    Mat nakayama;
    Mat theta;
};

inline FrobeniusData frobenius_data(const AlgebraPtr& a, const Mat& lam_row) {
    if (lam_row.rows() != 1 || lam_row.cols() != a->dim())
        throw shape_error("form must be a 1 x dim(A) row");
    const Fp& f = a->field();
    Mat gram(f, a->dim(), a->dim());
    for (int i = 0; i < a->dim(); ++i) {
        Mat row = lam_row * a->left_basis(i);
        for (int j = 0; j < a->dim(); ++j) gram.at(i, j) = row.at(0, j);
    }
    auto gi = try_inverse(gram);
    if (!gi) throw not_frobenius_error("form has singular Gram matrix");
    Mat nak = inverse(gram.transpose()) * gram;
    return FrobeniusData{gram, std::move(*gi), std::move(nak), gram.transpose()};
}

/* Exhaustive / certified search for a symmetric Frobenius form on A.
 * The symmetric form space is solved exactly. A form with invertible Gram is
 * searched deterministically (basis, pairs, then a fixed linear-congruential
 * sweep); when none is found, a nonzero common kernel vector of all basis
 * Grams proves no member of the space is Frobenius, and for small spaces an
 * exhaustive count of invertible Grams is recorded as well. */
struct SymmetricFrobeniusReport {
    Mat sym_forms;   /* dim(A) x k, columns span the symmetric forms */
    bool found = false;
    Mat form;        /* 1 x dim(A) when found */
    std::optional<FrobeniusData> data;
    std::optional<Mat> common_kernel;  /* nonzero columns certify emptiness */
    bool exhaustive = false;
    std::uint64_t invertible_count = 0;
    std::uint64_t tried = 0;
};

inline SymmetricFrobeniusReport symmetric_frobenius_report(const AlgebraPtr& a,
                                                           std::uint64_t sweep_budget = 2000,
                                                           std::uint64_t exhaustive_budget = 400000) {
    const Fp& f = a->field();
    int n = a->dim();
    SymmetricFrobeniusReport rep{trace_space(regular_bimodule(a)), false, Mat(f, 0, 0),
                                 std::nullopt, std::nullopt, false, 0, 0};
    int k = rep.sym_forms.cols();

    std::vector<Mat> grams;
    for (int i = 0; i < k; ++i) {
        Mat lam = rep.sym_forms.col(i).transpose();
        Mat g(f, n, n);
        for (int r = 0; r < n; ++r) {
            Mat row = lam * a->left_basis(r);
            for (int c = 0; c < n; ++c) g.at(r, c) = row.at(0, c);
        }
        grams.push_back(std::move(g));
    }

    auto gram_of = [&](const std::vector<std::uint64_t>& x) {
        Mat g(f, n, n);
        for (int i = 0; i < k; ++i)
            if (x[i] != 0) g = g + grams[i].scaled(x[i]);
        return g;
    };
    auto accept = [&](const std::vector<std::uint64_t>& x) {
        ++rep.tried;
        Mat g = gram_of(x);
        if (!try_inverse(g)) return false;
        Mat lam(f, 1, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j)
                lam.at(0, j) = f.add(lam.at(0, j), f.mul(x[i], rep.sym_forms.at(j, i)));
        rep.found = true;
        rep.form = lam;
        rep.data = frobenius_data(a, lam);
        return true;
    };

    std::vector<std::uint64_t> x(k, 0);
    for (int i = 0; i < k && !rep.found; ++i) {
        std::fill(x.begin(), x.end(), 0);
        x[i] = 1;
        accept(x);
    }
    for (int i = 0; i < k && !rep.found; ++i)
        for (int j = i + 1; j < k && !rep.found; ++j) {
            std::fill(x.begin(), x.end(), 0);
            x[i] = 1;
            x[j] = 1;
            accept(x);
        }
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (std::uint64_t t = 0; t < sweep_budget && !rep.found && k > 0; ++t) {
        for (int i = 0; i < k; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            x[i] = (state >> 33) % f.p();
        }
        accept(x);
    }

    if (!rep.found && k > 0) {
        Mat stacked(f, 0, n);
        for (const Mat& g : grams) stacked = vstack(stacked, g);
        Mat ck = kernel(stacked);
        if (ck.cols() > 0) rep.common_kernel = ck;
    }

    /* exhaustive count when the space is small enough */
    double combos = 1;
    for (int i = 0; i < k; ++i) combos *= static_cast<double>(f.p());
    if (k > 0 && combos <= static_cast<double>(exhaustive_budget)) {
        rep.exhaustive = true;
        std::fill(x.begin(), x.end(), 0);
        std::uint64_t total = 1;
        for (int i = 0; i < k; ++i) total *= f.p();
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t v = idx;
            for (int i = 0; i < k; ++i) {
                x[i] = v % f.p();
                v /= f.p();
            }
            if (try_inverse(gram_of(x))) {
                ++rep.invertible_count;
                if (!rep.found) accept(x);
            }
        }
    } else if (k == 0) {
        rep.exhaustive = true;
        rep.invertible_count = 0;
    }
    return rep;
}

}  // namespace modtrace
