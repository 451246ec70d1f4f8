#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modtrace/matrix.hpp"

namespace modtrace {

/* Finite-dimensional associative unital algebra over F_p, presented by
 * structure constants c[(i*dim+j)*dim+k]: e_i e_j = sum_k c_ijk e_k.
 * Construction validates associativity and the unit laws. */
class Algebra {
public:
    static std::shared_ptr<const Algebra> make(Fp f, int dim,
                                               std::vector<std::uint64_t> c,
                                               Mat unit) {
        if (dim < 0 || (dim > 0 && static_cast<std::size_t>(dim) * dim * dim != c.size()))
            throw shape_error("structure constant count does not match dimension");
        if (unit.rows() != dim || unit.cols() != 1)
            throw shape_error("unit vector has wrong shape");
        auto a = std::shared_ptr<Algebra>(new Algebra(f, dim, std::move(c), std::move(unit)));
        a->validate();
        return a;
    }

    const Fp& field() const { return f_; }
    int dim() const { return dim_; }
    const Mat& unit() const { return unit_; }
    const std::vector<std::uint64_t>& structure() const { return c_; }

    /* Matrix of x -> e_i * x. */
    const Mat& left_basis(int i) const { return left_[i]; }
    /* Matrix of x -> x * e_j. */
    const Mat& right_basis(int j) const { return right_[j]; }

    std::uint64_t structure_at(int i, int j, int k) const {
        return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
    }

    Mat left_mult(const Mat& a) const { return combine(left_, a); }
    Mat right_mult(const Mat& a) const { return combine(right_, a); }

    Mat mul(const Mat& a, const Mat& b) const {
        check_element(a);
        check_element(b);
        return left_mult(a) * b;
    }

    Mat pow(const Mat& a, std::uint64_t e) const {
        Mat r = unit_;
        for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    bool is_unit_element(const Mat& a) const {
        return try_inverse(left_mult(a)).has_value();
    }

    /* Multiplicative inverse of a, when a is invertible in the algebra. */
    Mat element_inverse(const Mat& a) const {
        auto s = solve(left_mult(a), unit_);
        if (!s) throw not_invertible_error("algebra element is not invertible");
        Mat b = s->particular;
        if (mul(b, a) != unit_) throw not_invertible_error("algebra element is not invertible");
        return b;
    }

    bool same_as(const Algebra& o) const {
        return this == &o || (f_ == o.f_ && dim_ == o.dim_ && c_ == o.c_ && unit_ == o.unit_);
    }

private:
    Algebra(Fp f, int dim, std::vector<std::uint64_t> c, Mat unit)
        : f_(f), dim_(dim), c_(std::move(c)), unit_(std::move(unit)) {
        for (auto& x : c_) x = f_.reduce(x);
        left_.reserve(dim_);
        right_.reserve(dim_);
        for (int i = 0; i < dim_; ++i) {
            Mat l(f_, dim_, dim_), r(f_, dim_, dim_);
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k) {
                    l.at(k, j) = structure_at(i, j, k);
                    r.at(k, j) = structure_at(j, i, k);
                }
            left_.push_back(std::move(l));
            right_.push_back(std::move(r));
        }
    }

    void validate() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                Mat lhs = left_[i] * left_[j];
                Mat rhs = left_mult(left_[i].col(j));
                if (lhs != rhs)
                    throw axiom_error("associativity fails at basis pair (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        if (dim_ > 0 && (left_mult(unit_) != Mat::identity(f_, dim_) ||
                         right_mult(unit_) != Mat::identity(f_, dim_)))
            throw axiom_error("unit laws fail for the designated unit element");
    }

    void check_element(const Mat& a) const {
        if (a.rows() != dim_ || a.cols() != 1 || a.field() != f_)
            throw shape_error("element vector has wrong shape");
    }

    Mat combine(const std::vector<Mat>& mats, const Mat& a) const {
        check_element(a);
        Mat r(f_, dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            if (a.at(i, 0) != 0) r = r + mats[i].scaled(a.at(i, 0));
        return r;
    }

    Fp f_;
    int dim_;
    std::vector<std::uint64_t> c_;
    Mat unit_;
    std::vector<Mat> left_, right_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b,
                                 const char* what) {
    if (!a->same_as(*b)) throw shape_error(std::string(what) + ": algebra mismatch");
}

/* Left module: act(e_i)act(e_j) = act(e_i e_j), act(1) = id. */
class LeftModule {
public:
    static LeftModule make(AlgebraPtr alg, std::vector<Mat> act) {
        LeftModule m(std::move(alg), std::move(act));
        m.validate();
        return m;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int dim() const { return dim_; }
    const Mat& act_basis(int i) const { return act_[i]; }

    Mat act(const Mat& a) const {
        Mat r(alg_->field(), dim_, dim_);
        for (int i = 0; i < alg_->dim(); ++i)
            if (a.at(i, 0) != 0) r = r + act_[i].scaled(a.at(i, 0));
        return r;
    }

private:
    LeftModule(AlgebraPtr alg, std::vector<Mat> act)
        : alg_(std::move(alg)), act_(std::move(act)) {
        if (static_cast<int>(act_.size()) != alg_->dim())
            throw shape_error("one action matrix per algebra basis element required");
        dim_ = act_.empty() ? 0 : act_[0].rows();
    }

    void validate() const {
        const Fp& f = alg_->field();
        for (const Mat& m : act_)
            if (m.rows() != dim_ || m.cols() != dim_ || m.field() != f)
                throw shape_error("action matrix has wrong shape");
        if (alg_->dim() == 0) return;
        if (act(alg_->unit()) != Mat::identity(f, dim_))
            throw axiom_error("module unit law fails");
        for (int i = 0; i < alg_->dim(); ++i)
            for (int j = 0; j < alg_->dim(); ++j)
                if (act_[i] * act_[j] != act(alg_->left_basis(i).col(j)))
                    throw axiom_error("left action law fails at basis pair (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
    }

    AlgebraPtr alg_;
    std::vector<Mat> act_;
    int dim_;
};

/* Right module: act(e_i e_j) = act(e_j)act(e_i), act(1) = id. */
class RightModule {
public:
    static RightModule make(AlgebraPtr alg, std::vector<Mat> act) {
        RightModule m(std::move(alg), std::move(act));
        m.validate();
        return m;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int dim() const { return dim_; }
    const Mat& act_basis(int i) const { return act_[i]; }

    Mat act(const Mat& a) const {
        Mat r(alg_->field(), dim_, dim_);
        for (int i = 0; i < alg_->dim(); ++i)
            if (a.at(i, 0) != 0) r = r + act_[i].scaled(a.at(i, 0));
        return r;
    }

private:
    RightModule(AlgebraPtr alg, std::vector<Mat> act)
        : alg_(std::move(alg)), act_(std::move(act)) {
        if (static_cast<int>(act_.size()) != alg_->dim())
            throw shape_error("one action matrix per algebra basis element required");
        dim_ = act_.empty() ? 0 : act_[0].rows();
    }

    void validate() const {
        const Fp& f = alg_->field();
        for (const Mat& m : act_)
            if (m.rows() != dim_ || m.cols() != dim_ || m.field() != f)
                throw shape_error("action matrix has wrong shape");
        if (alg_->dim() == 0) return;
        if (act(alg_->unit()) != Mat::identity(f, dim_))
            throw axiom_error("module unit law fails");
        for (int i = 0; i < alg_->dim(); ++i)
            for (int j = 0; j < alg_->dim(); ++j)
                if (act_[j] * act_[i] != act(alg_->left_basis(i).col(j)))
                    throw axiom_error("right action law fails at basis pair (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
    }

    AlgebraPtr alg_;
    std::vector<Mat> act_;
    int dim_;
};

/* (B, A)-bimodule: left B-action and right A-action commuting. */
class Bimodule {
public:
    static Bimodule make(AlgebraPtr left_alg, AlgebraPtr right_alg,
                         std::vector<Mat> lact, std::vector<Mat> ract) {
        Bimodule b(std::move(left_alg), std::move(right_alg), std::move(lact),
                   std::move(ract));
        b.validate();
        return b;
    }

    const AlgebraPtr& left_algebra() const { return la_; }
    const AlgebraPtr& right_algebra() const { return ra_; }
    int dim() const { return dim_; }
    const Mat& left_basis_action(int i) const { return lact_[i]; }
    const Mat& right_basis_action(int i) const { return ract_[i]; }

    Mat left_act(const Mat& a) const {
        Mat r(la_->field(), dim_, dim_);
        for (int i = 0; i < la_->dim(); ++i)
            if (a.at(i, 0) != 0) r = r + lact_[i].scaled(a.at(i, 0));
        return r;
    }

    Mat right_act(const Mat& a) const {
        Mat r(ra_->field(), dim_, dim_);
        for (int i = 0; i < ra_->dim(); ++i)
            if (a.at(i, 0) != 0) r = r + ract_[i].scaled(a.at(i, 0));
        return r;
    }

    LeftModule left_part() const { return LeftModule::make(la_, lact_); }
    RightModule right_part() const { return RightModule::make(ra_, ract_); }

    bool square() const { return la_->same_as(*ra_); }

private:
    Bimodule(AlgebraPtr la, AlgebraPtr ra, std::vector<Mat> lact, std::vector<Mat> ract)
        : la_(std::move(la)), ra_(std::move(ra)), lact_(std::move(lact)),
          ract_(std::move(ract)) {
        dim_ = lact_.empty() ? (ract_.empty() ? 0 : ract_[0].rows()) : lact_[0].rows();
    }

    void validate() const {
        LeftModule::make(la_, lact_);
        RightModule::make(ra_, ract_);
        for (std::size_t i = 0; i < lact_.size(); ++i)
            for (std::size_t j = 0; j < ract_.size(); ++j)
                if (lact_[i] * ract_[j] != ract_[j] * lact_[i])
                    throw axiom_error("left and right actions fail to commute at (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
    }

    AlgebraPtr la_, ra_;
    std::vector<Mat> lact_, ract_;
    int dim_;
};

inline LeftModule left_regular_module(const AlgebraPtr& a) {
    std::vector<Mat> act;
    for (int i = 0; i < a->dim(); ++i) act.push_back(a->left_basis(i));
    return LeftModule::make(a, std::move(act));
}

inline RightModule right_regular_module(const AlgebraPtr& a) {
    std::vector<Mat> act;
    for (int i = 0; i < a->dim(); ++i) act.push_back(a->right_basis(i));
    return RightModule::make(a, std::move(act));
}

inline Bimodule regular_bimodule(const AlgebraPtr& a) {
    std::vector<Mat> lact, ract;
    for (int i = 0; i < a->dim(); ++i) {
        lact.push_back(a->left_basis(i));
        ract.push_back(a->right_basis(i));
    }
    return Bimodule::make(a, a, std::move(lact), std::move(ract));
}

/* Dual bimodule A^* with (a -> f)(b) = f(b a) and (f <- a)(b) = f(a b):
 * in dual coordinates the left action of e_i is right_basis(i)^T and the
 * right action is left_basis(i)^T. */
inline Bimodule dual_bimodule(const AlgebraPtr& a) {
    std::vector<Mat> lact, ract;
    for (int i = 0; i < a->dim(); ++i) {
        lact.push_back(a->right_basis(i).transpose());
        ract.push_back(a->left_basis(i).transpose());
    }
    return Bimodule::make(a, a, std::move(lact), std::move(ract));
}

/* Regular bimodule with the left action twisted through an algebra
 * automorphism: a . s = nu(a) s. */
inline Bimodule twisted_regular_bimodule(const AlgebraPtr& a, const Mat& nu) {
    std::vector<Mat> lact, ract;
    for (int i = 0; i < a->dim(); ++i) {
        lact.push_back(a->left_mult(nu.col(i)));
        ract.push_back(a->right_basis(i));
    }
    return Bimodule::make(a, a, std::move(lact), std::move(ract));
}

/* Quotient of an ambient coordinate space by the row space of a relation
 * matrix. The quotient basis consists of the non-pivot coordinates of the
 * relations' reduced echelon form; section picks those coordinates as
 * representatives, proj rewrites pivot coordinates along the relations.
 * Invariants: proj * section = id, proj annihilates the relation rows. */
struct QuotientSpace {
    int ambient = 0;
    Mat relations;  /* RREF, rows span the relation subspace */
    Mat proj;       /* dim x ambient */
    Mat section;    /* ambient x dim */

    int dim() const { return proj.rows(); }
};

inline QuotientSpace quotient_of(const EchelonAccumulator& acc) {
    QuotientSpace q{acc.cols(), acc.matrix(), Mat(acc.field(), 0, 0), Mat(acc.field(), 0, 0)};
    const std::vector<int>& piv = acc.pivots();
    std::vector<int> free_cols;
    {
        std::size_t t = 0;
        for (int j = 0; j < acc.cols(); ++j) {
            if (t < piv.size() && piv[t] == j) { ++t; continue; }
            free_cols.push_back(j);
        }
    }
    int d = static_cast<int>(free_cols.size());
    Mat proj(acc.field(), d, acc.cols());
    Mat section(acc.field(), acc.cols(), d);
    for (int t = 0; t < d; ++t) {
        proj.at(t, free_cols[t]) = 1;
        section.at(free_cols[t], t) = 1;
    }
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (int t = 0; t < d; ++t)
            proj.at(t, piv[i]) = acc.field().neg(q.relations.at(static_cast<int>(i), free_cols[t]));
    q.proj = std::move(proj);
    q.section = std::move(section);
    return q;
}

/* M tensor_A N for a right module M and left module N over the same algebra;
 * ambient coordinates are Kronecker pairs (i, j) -> i * dim(N) + j and the
 * relations are (m a) x n - m x (a n) over all basis triples. */
struct TensorQuotient {
    QuotientSpace space;
    int left_dim = 0;
    int right_dim = 0;

    int dim() const { return space.dim(); }

    /* Class of the pure tensor with the given ambient coordinates. */
    Mat class_of(const Mat& left_vec, const Mat& right_vec) const {
        return space.proj * kron(left_vec, right_vec);
    }
};

inline TensorQuotient tensor_over_algebra(const RightModule& m, const LeftModule& n) {
    require_same_algebra(m.algebra(), n.algebra(), "tensor_over_algebra");
    const AlgebraPtr& alg = m.algebra();
    const Fp& f = alg->field();
    long long ambient = 1LL * m.dim() * n.dim();
    if (ambient > k_dim_cap)
        throw size_cap_error("tensor ambient dimension " + std::to_string(ambient) +
                             " exceeds the " + std::to_string(k_dim_cap) + " cap");
    EchelonAccumulator acc(f, static_cast<int>(ambient));
    std::vector<std::uint64_t> row(static_cast<std::size_t>(ambient));
    for (int a = 0; a < alg->dim(); ++a) {
        const Mat& ra = m.act_basis(a);
        const Mat& la = n.act_basis(a);
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < n.dim(); ++j) {
                std::fill(row.begin(), row.end(), 0);
                for (int i2 = 0; i2 < m.dim(); ++i2)
                    row[static_cast<std::size_t>(i2) * n.dim() + j] = ra.at(i2, i);
                for (int j2 = 0; j2 < n.dim(); ++j2) {
                    std::size_t idx = static_cast<std::size_t>(i) * n.dim() + j2;
                    row[idx] = f.sub(row[idx], la.at(j2, j));
                }
                acc.add_row(row);
            }
    }
    return TensorQuotient{quotient_of(acc), m.dim(), n.dim()};
}

/* Sigma tensor_A P for a (B, A)-bimodule Sigma: the tensor quotient together
 * with its left B-module structure b . (s x p) = (b s) x p. */
struct ModuleTensor {
    TensorQuotient tensor;
    LeftModule mod;
};

inline ModuleTensor bimodule_tensor_module(const Bimodule& s, const LeftModule& p) {
    TensorQuotient tq = tensor_over_algebra(s.right_part(), p);
    const AlgebraPtr& b = s.left_algebra();
    Mat idp = Mat::identity(p.algebra()->field(), p.dim());
    std::vector<Mat> act;
    act.reserve(b->dim());
    for (int i = 0; i < b->dim(); ++i)
        act.push_back(tq.space.proj * kron(s.left_basis_action(i), idp) * tq.space.section);
    LeftModule mod = LeftModule::make(b, std::move(act));
    return ModuleTensor{std::move(tq), std::move(mod)};
}

/* Basis of an intertwiner space with a coordinate solver for its members.
 * Basis matrices map the source into the target (target_dim x source_dim). */
struct HomBasis {
    std::vector<Mat> basis;
    Mat stacked;  /* vectorized basis, (target*source) x k */

    int dim() const { return static_cast<int>(basis.size()); }

    Mat coords(const Mat& g) const {
        auto s = solve(stacked, g.flatten());
        if (!s) throw domain_error("map is not in the intertwiner space");
        return s->particular;
    }

    bool contains(const Mat& g) const { return solve(stacked, g.flatten()).has_value(); }

    Mat from_coords(const Mat& x) const {
        if (basis.empty()) throw domain_error("empty basis");
        Mat g(basis[0].field(), basis[0].rows(), basis[0].cols());
        for (int i = 0; i < dim(); ++i) g = g + basis[i].scaled(x.at(i, 0));
        return g;
    }
};

namespace detail {

inline HomBasis hom_from_kernel(const Fp& f, const Mat& k, int rows, int cols) {
    HomBasis h{{}, Mat(f, rows * cols, k.cols())};
    for (int v = 0; v < k.cols(); ++v) {
        h.basis.push_back(Mat::unflatten(k.col(v), rows, cols));
        for (int i = 0; i < rows * cols; ++i) h.stacked.at(i, v) = k.at(i, v);
    }
    return h;
}

}  // namespace detail

/* Hom_A(M, N) for left modules: matrices g with g act_M(a) = act_N(a) g.
 * Row-major vectorization turns each constraint into
 * (I x act_M(e_i)^T - act_N(e_i) x I) vec(g) = 0. */
inline HomBasis hom_space(const LeftModule& m, const LeftModule& n) {
    require_same_algebra(m.algebra(), n.algebra(), "hom_space");
    const Fp& f = m.algebra()->field();
    long long w = 1LL * n.dim() * m.dim();
    if (w > k_dim_cap)
        throw size_cap_error("hom ambient dimension " + std::to_string(w) +
                             " exceeds the " + std::to_string(k_dim_cap) + " cap");
    EchelonAccumulator acc(f, static_cast<int>(w));
    Mat idn = Mat::identity(f, n.dim()), idm = Mat::identity(f, m.dim());
    for (int i = 0; i < m.algebra()->dim(); ++i) {
        Mat c = kron(idn, m.act_basis(i).transpose()) - kron(n.act_basis(i), idm);
        acc.add_rows(c);
    }
    return detail::hom_from_kernel(f, acc.kernel_basis(), n.dim(), m.dim());
}

/* Bimodule maps S -> T: intertwiners for both actions. */
inline HomBasis bimodule_hom_space(const Bimodule& s, const Bimodule& t) {
    require_same_algebra(s.left_algebra(), t.left_algebra(), "bimodule_hom_space");
    require_same_algebra(s.right_algebra(), t.right_algebra(), "bimodule_hom_space");
    const Fp& f = s.left_algebra()->field();
    long long w = 1LL * t.dim() * s.dim();
    if (w > k_dim_cap)
        throw size_cap_error("hom ambient dimension " + std::to_string(w) +
                             " exceeds the " + std::to_string(k_dim_cap) + " cap");
    EchelonAccumulator acc(f, static_cast<int>(w));
    Mat idt = Mat::identity(f, t.dim()), ids = Mat::identity(f, s.dim());
    for (int i = 0; i < s.left_algebra()->dim(); ++i)
        acc.add_rows(kron(idt, s.left_basis_action(i).transpose()) -
                     kron(t.left_basis_action(i), ids));
    for (int i = 0; i < s.right_algebra()->dim(); ++i)
        acc.add_rows(kron(idt, s.right_basis_action(i).transpose()) -
                     kron(t.right_basis_action(i), ids));
    return detail::hom_from_kernel(f, acc.kernel_basis(), t.dim(), s.dim());
}

/* M^dagger = Hom_A(M, A) as a right module via (h . a)(m) = h(m) a. */
struct DualModule {
    RightModule mod;
    HomBasis maps;  /* basis elements are dim(A) x dim(M) matrices */
};

inline DualModule dual_module(const LeftModule& m) {
    const AlgebraPtr& alg = m.algebra();
    HomBasis h = hom_space(m, left_regular_module(alg));
    int k = h.dim();
    std::vector<Mat> act;
    act.reserve(alg->dim());
    for (int i = 0; i < alg->dim(); ++i) {
        Mat a(alg->field(), k, k);
        for (int j = 0; j < k; ++j) {
            Mat img = alg->right_basis(i) * h.basis[j];
            Mat x = h.coords(img);
            for (int r = 0; r < k; ++r) a.at(r, j) = x.at(r, 0);
        }
        act.push_back(std::move(a));
    }
    return DualModule{RightModule::make(alg, std::move(act)), std::move(h)};
}

}  // namespace modtrace
