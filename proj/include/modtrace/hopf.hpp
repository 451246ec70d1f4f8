#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modtrace/traces.hpp"

namespace modtrace {

namespace detail {

using SparseVec = std::vector<std::pair<int, std::uint64_t>>;

inline SparseVec sparse_col(const Mat& m, int j) {
    SparseVec v;
    for (int i = 0; i < m.rows(); ++i)
        if (m.at(i, j) != 0) v.emplace_back(i, m.at(i, j));
    return v;
}

/* All basis products of an algebra as sparse columns, for contraction-heavy
 * checks on monomial-flavored algebras. */
struct ProductTable {
    int dim = 0;
    std::vector<SparseVec> cols;

    static ProductTable build(const Algebra& a) {
        ProductTable p;
        p.dim = a.dim();
        p.cols.resize(static_cast<std::size_t>(p.dim) * p.dim);
        for (int i = 0; i < p.dim; ++i)
            for (int j = 0; j < p.dim; ++j) {
                SparseVec& v = p.cols[static_cast<std::size_t>(i) * p.dim + j];
                for (int k = 0; k < p.dim; ++k)
                    if (a.structure_at(i, j, k) != 0)
                        v.emplace_back(k, a.structure_at(i, j, k));
            }
        return p;
    }

    const SparseVec& at(int i, int j) const {
        return cols[static_cast<std::size_t>(i) * dim + j];
    }
};

/* Dense scratch accumulator with touched-index clearing, sized for tensor
 * cubes that exceed the matrix cap. */
struct Scratch {
    std::vector<std::uint64_t> v;
    std::vector<std::size_t> touched;

    void resize(std::size_t n) { v.assign(n, 0); touched.clear(); }
    void clear() {
        for (std::size_t i : touched) v[i] = 0;
        touched.clear();
    }
    void add(std::size_t i, std::uint64_t c, const Fp& f) {
        if (c == 0) return;
        if (v[i] == 0) touched.push_back(i);
        v[i] = f.add(v[i], c);
    }
    bool equals(const Scratch& o) const {
        for (std::size_t i : touched)
            if (v[i] != (i < o.v.size() ? o.v[i] : 0)) return false;
        for (std::size_t i : o.touched)
            if (o.v[i] != (i < v.size() ? v[i] : 0)) return false;
        return true;
    }
};

}  // namespace detail

struct AxiomCheck {
    std::string axiom;
    bool ok;
    std::string detail;  /* first violation location when not ok */
};

/* Full Hopf-algebra axiom report for (alg, delta, counit, antipode).
 * delta is (dim^2) x dim with Delta(e_j) in Kronecker coordinates
 * (i, k) -> i*dim + k; counit is 1 x dim; antipode is dim x dim. */
inline std::vector<AxiomCheck> check_hopf(const AlgebraPtr& alg, const Mat& delta,
                                          const Mat& counit, const Mat& antipode) {
    const Fp& f = alg->field();
    int d = alg->dim();
    std::vector<AxiomCheck> out;
    if (delta.rows() != d * d || delta.cols() != d || counit.rows() != 1 ||
        counit.cols() != d || antipode.rows() != d || antipode.cols() != d)
        throw shape_error("hopf data has wrong shapes");

    auto record = [&](const std::string& name, bool ok, const std::string& where) {
        out.push_back(AxiomCheck{name, ok, ok ? "" : where});
    };

    detail::ProductTable pt = detail::ProductTable::build(*alg);
    std::vector<detail::SparseVec> dcols, scols;
    for (int j = 0; j < d; ++j) {
        dcols.push_back(detail::sparse_col(delta, j));
        scols.push_back(detail::sparse_col(antipode, j));
    }

    /* coassociativity, checked per basis column in A x A x A coordinates */
    {
        detail::Scratch lhs, rhs;
        lhs.resize(static_cast<std::size_t>(d) * d * d);
        rhs.resize(lhs.v.size());
        bool ok = true;
        std::string where;
        for (int j = 0; j < d && ok; ++j) {
            lhs.clear();
            rhs.clear();
            for (auto [ik, c] : dcols[j]) {
                int i = ik / d, k = ik % d;
                for (auto [ab, c2] : dcols[i])
                    lhs.add(static_cast<std::size_t>(ab) * d + k, f.mul(c, c2), f);
                for (auto [ab, c2] : dcols[k])
                    rhs.add(static_cast<std::size_t>(i) * d * d + ab, f.mul(c, c2), f);
            }
            if (!lhs.equals(rhs)) {
                ok = false;
                where = "basis element " + std::to_string(j);
            }
        }
        record("coassociativity", ok, where);
    }

    /* counit laws */
    {
        bool ok = true;
        std::string where;
        for (int j = 0; j < d && ok; ++j) {
            Mat left(f, d, 1), right(f, d, 1);
            for (auto [ik, c] : dcols[j]) {
                int i = ik / d, k = ik % d;
                left.at(k, 0) = f.add(left.at(k, 0), f.mul(c, counit.at(0, i)));
                right.at(i, 0) = f.add(right.at(i, 0), f.mul(c, counit.at(0, k)));
            }
            Mat ej = Mat::unit_vector(f, d, j);
            if (left != ej || right != ej) {
                ok = false;
                where = "basis element " + std::to_string(j);
            }
        }
        record("counit", ok, where);
    }

    /* Delta and counit are algebra maps; unit is grouplike-ish */
    {
        bool ok = true;
        std::string where;
        detail::Scratch lhs, rhs;
        lhs.resize(static_cast<std::size_t>(d) * d);
        rhs.resize(lhs.v.size());
        for (int i = 0; i < d && ok; ++i) {
            for (int j = 0; j < d && ok; ++j) {
                lhs.clear();
                rhs.clear();
                for (auto [t, cp] : pt.at(i, j))
                    for (auto [ik, c] : dcols[t])
                        lhs.add(static_cast<std::size_t>(ik), f.mul(cp, c), f);
                for (auto [ab, c1] : dcols[i]) {
                    int a1 = ab / d, b1 = ab % d;
                    for (auto [cd, c2] : dcols[j]) {
                        int a2 = cd / d, b2 = cd % d;
                        std::uint64_t cc = f.mul(c1, c2);
                        for (auto [x, cx] : pt.at(a1, a2))
                            for (auto [y, cy] : pt.at(b1, b2))
                                rhs.add(static_cast<std::size_t>(x) * d + y,
                                        f.mul(f.mul(cc, cx), cy), f);
                    }
                }
                if (!lhs.equals(rhs)) {
                    ok = false;
                    where = "basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
                }
            }
        }
        if (ok) {
            Mat du = delta * alg->unit();
            if (du != kron(alg->unit(), alg->unit())) {
                ok = false;
                where = "unit image under Delta";
            }
        }
        record("comultiplication is an algebra map", ok, where);

        ok = true;
        where = "";
        if ((counit * alg->unit()).at(0, 0) != 1) {
            ok = false;
            where = "unit image under counit";
        }
        for (int i = 0; i < d && ok; ++i)
            for (int j = 0; j < d && ok; ++j) {
                std::uint64_t lhs2 = 0;
                for (auto [t, cp] : pt.at(i, j)) lhs2 = f.add(lhs2, f.mul(cp, counit.at(0, t)));
                if (lhs2 != f.mul(counit.at(0, i), counit.at(0, j))) {
                    ok = false;
                    where = "basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
                }
            }
        record("counit is an algebra map", ok, where);
    }

    /* antipode laws */
    {
        bool ok = true;
        std::string where;
        std::vector<std::uint64_t> left(d), right(d);
        for (int j = 0; j < d && ok; ++j) {
            std::fill(left.begin(), left.end(), 0);
            std::fill(right.begin(), right.end(), 0);
            for (auto [ik, c] : dcols[j]) {
                int i = ik / d, k = ik % d;
                for (auto [s, cs] : scols[i])
                    for (auto [t, cp] : pt.at(s, k))
                        left[t] = f.add(left[t], f.mul(f.mul(c, cs), cp));
                for (auto [s, cs] : scols[k])
                    for (auto [t, cp] : pt.at(i, s))
                        right[t] = f.add(right[t], f.mul(f.mul(c, cs), cp));
            }
            for (int t = 0; t < d; ++t) {
                std::uint64_t want = f.mul(counit.at(0, j), alg->unit().at(t, 0));
                if (left[t] != want || right[t] != want) {
                    ok = false;
                    where = "basis element " + std::to_string(j);
                    break;
                }
            }
        }
        record("antipode", ok, where);
    }
    return out;
}

/* Hopf algebra with validated structure maps. */
class HopfAlgebra {
public:
    static std::shared_ptr<const HopfAlgebra> make(AlgebraPtr alg, Mat delta, Mat counit,
                                                   Mat antipode) {
        for (const AxiomCheck& c : check_hopf(alg, delta, counit, antipode))
            if (!c.ok) throw axiom_error("hopf axiom '" + c.axiom + "' fails at " + c.detail);
        return std::shared_ptr<const HopfAlgebra>(
            new HopfAlgebra(std::move(alg), std::move(delta), std::move(counit),
                            std::move(antipode)));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int dim() const { return alg_->dim(); }
    const Fp& field() const { return alg_->field(); }
    const Mat& delta() const { return delta_; }
    const Mat& counit() const { return counit_; }
    const Mat& antipode() const { return antipode_; }

    Mat antipode_squared() const { return antipode_ * antipode_; }

private:
    HopfAlgebra(AlgebraPtr alg, Mat delta, Mat counit, Mat antipode)
        : alg_(std::move(alg)), delta_(std::move(delta)), counit_(std::move(counit)),
          antipode_(std::move(antipode)) {}

    AlgebraPtr alg_;
    Mat delta_, counit_, antipode_;
};

using HopfPtr = std::shared_ptr<const HopfAlgebra>;

inline bool is_grouplike(const HopfAlgebra& h, const Mat& g) {
    if (g.rows() != h.dim() || g.cols() != 1) throw shape_error("element vector expected");
    if (h.delta() * g != kron(g, g)) return false;
    if ((h.counit() * g).at(0, 0) != 1) return false;
    return h.algebra()->is_unit_element(g);
}

/* Pivotal: grouplike g with S^2(x) = g x g^{-1}, i.e. (right mult by g)
 * after S^2 equals left mult by g. */
inline bool is_pivotal(const HopfAlgebra& h, const Mat& g) {
    if (!is_grouplike(h, g)) return false;
    return h.algebra()->right_mult(g) * h.antipode_squared() == h.algebra()->left_mult(g);
}

/* Right H-comodule algebra: coaction (dimA*dimH) x dimA in (a, h) -> a*dimH+h
 * coordinates, validated eagerly. */
class ComoduleAlgebra {
public:
    static std::shared_ptr<const ComoduleAlgebra> make(AlgebraPtr alg, HopfPtr hopf,
                                                       Mat coaction) {
        auto c = std::shared_ptr<ComoduleAlgebra>(
            new ComoduleAlgebra(std::move(alg), std::move(hopf), std::move(coaction)));
        c->validate();
        return c;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const HopfPtr& hopf() const { return hopf_; }
    const Mat& coaction() const { return coaction_; }

private:
    ComoduleAlgebra(AlgebraPtr alg, HopfPtr hopf, Mat coaction)
        : alg_(std::move(alg)), hopf_(std::move(hopf)), coaction_(std::move(coaction)) {}

    void validate() const {
        const Fp& f = alg_->field();
        int da = alg_->dim(), dh = hopf_->dim();
        if (coaction_.rows() != da * dh || coaction_.cols() != da)
            throw shape_error("coaction has wrong shape");

        /* counit law: (id x eps) delta = id */
        for (int j = 0; j < da; ++j) {
            Mat v(f, da, 1);
            for (auto [ah, c] : detail::sparse_col(coaction_, j))
                v.at(ah / dh, 0) =
                    f.add(v.at(ah / dh, 0), f.mul(c, hopf_->counit().at(0, ah % dh)));
            if (v != Mat::unit_vector(f, da, j))
                throw axiom_error("comodule counit law fails at basis element " +
                                  std::to_string(j));
        }

        /* coassociativity: (delta_A x id) delta_A = (id x Delta_H) delta_A */
        detail::Scratch lhs, rhs;
        lhs.resize(static_cast<std::size_t>(da) * dh * dh);
        rhs.resize(lhs.v.size());
        for (int j = 0; j < da; ++j) {
            lhs.clear();
            rhs.clear();
            for (auto [ah, c] : detail::sparse_col(coaction_, j)) {
                int a = ah / dh, h = ah % dh;
                for (auto [a2h2, c2] : detail::sparse_col(coaction_, a))
                    lhs.add(static_cast<std::size_t>(a2h2) * dh + h, f.mul(c, c2), f);
                for (auto [h1h2, c2] : detail::sparse_col(hopf_->delta(), h))
                    rhs.add(static_cast<std::size_t>(a) * dh * dh + h1h2, f.mul(c, c2), f);
            }
            if (!lhs.equals(rhs))
                throw axiom_error("comodule coassociativity fails at basis element " +
                                  std::to_string(j));
        }

        /* delta_A(1) = 1 x 1 */
        if (coaction_ * alg_->unit() != kron(alg_->unit(), hopf_->algebra()->unit()))
            throw axiom_error("coaction does not fix the unit");

        /* multiplicativity: delta_A(a b) = delta_A(a) delta_A(b) in A x H */
        detail::ProductTable pa = detail::ProductTable::build(*alg_);
        detail::ProductTable ph = detail::ProductTable::build(*hopf_->algebra());
        std::vector<detail::SparseVec> ccols;
        for (int j = 0; j < da; ++j) ccols.push_back(detail::sparse_col(coaction_, j));
        detail::Scratch pl, pr;
        pl.resize(static_cast<std::size_t>(da) * dh);
        pr.resize(pl.v.size());
        for (int i = 0; i < da; ++i) {
            for (int j = 0; j < da; ++j) {
                pl.clear();
                pr.clear();
                for (auto [t, cp] : pa.at(i, j))
                    for (auto [ah, c] : ccols[t])
                        pl.add(static_cast<std::size_t>(ah), f.mul(cp, c), f);
                for (auto [ah1, c1] : ccols[i]) {
                    int a1 = ah1 / dh, h1 = ah1 % dh;
                    for (auto [ah2, c2] : ccols[j]) {
                        int a2 = ah2 / dh, h2 = ah2 % dh;
                        std::uint64_t cc = f.mul(c1, c2);
                        for (auto [x, cx] : pa.at(a1, a2))
                            for (auto [y, cy] : ph.at(h1, h2))
                                pr.add(static_cast<std::size_t>(x) * dh + y,
                                       f.mul(f.mul(cc, cx), cy), f);
                    }
                }
                if (!pl.equals(pr))
                    throw axiom_error("coaction is not multiplicative at basis pair (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }

    AlgebraPtr alg_;
    HopfPtr hopf_;
    Mat coaction_;
};

using ComodulePtr = std::shared_ptr<const ComoduleAlgebra>;

/* Same algebra with the coaction post-composed with S^2 on the Hopf leg. */
inline ComodulePtr twist_by_square_antipode(const ComodulePtr& c) {
    Mat twisted = kron(Mat::identity(c->algebra()->field(), c->algebra()->dim()),
                       c->hopf()->antipode_squared()) *
                  c->coaction();
    return ComoduleAlgebra::make(c->algebra(), c->hopf(), std::move(twisted));
}

/* Equivariant A-bimodule over a comodule algebra: delta_Sigma(a s a') =
 * a_(0) s_(0) a'_(0) x S^2(a_(1)) s_(1) a'_(1). Construction checks the
 * comodule laws plus the one-sided compatibilities, which jointly give the
 * full triple law. */
class EquivariantBimodule {
public:
    static EquivariantBimodule make(ComodulePtr base, Bimodule bi, Mat coaction) {
        EquivariantBimodule e(std::move(base), std::move(bi), std::move(coaction));
        e.validate();
        return e;
    }

    const ComodulePtr& base() const { return base_; }
    const Bimodule& bimodule() const { return bi_; }
    const Mat& coaction() const { return coaction_; }

    /* Literal check of the triple law on all basis triples. */
    bool triple_law_holds() const {
        const Fp& f = bi_.left_algebra()->field();
        int da = base_->algebra()->dim(), dh = base_->hopf()->dim(), ds = bi_.dim();
        Mat s2 = base_->hopf()->antipode_squared();
        Mat twisted = kron(Mat::identity(f, da), s2) * base_->coaction();
        detail::ProductTable ph = detail::ProductTable::build(*base_->hopf()->algebra());
        std::vector<detail::SparseVec> lcols(static_cast<std::size_t>(da) * ds),
            rcols(lcols.size()), ccols, acols, tcols;
        for (int a = 0; a < da; ++a)
            for (int s = 0; s < ds; ++s) {
                lcols[static_cast<std::size_t>(a) * ds + s] =
                    detail::sparse_col(bi_.left_basis_action(a), s);
                rcols[static_cast<std::size_t>(a) * ds + s] =
                    detail::sparse_col(bi_.right_basis_action(a), s);
            }
        for (int s = 0; s < ds; ++s) ccols.push_back(detail::sparse_col(coaction_, s));
        for (int a = 0; a < da; ++a) {
            acols.push_back(detail::sparse_col(base_->coaction(), a));
            tcols.push_back(detail::sparse_col(twisted, a));
        }

        detail::Scratch lhs, rhs, mid;
        lhs.resize(static_cast<std::size_t>(ds) * dh);
        rhs.resize(lhs.v.size());
        mid.resize(lhs.v.size());
        std::vector<std::uint64_t> img(ds);
        for (int a = 0; a < da; ++a)
            for (int s = 0; s < ds; ++s) {
                /* mid = delta(a . s) contracted from delta^{S2}(a), delta(s) */
                mid.clear();
                for (auto [ah, c1] : tcols[a]) {
                    int a0 = ah / dh, h1 = ah % dh;
                    for (auto [sh, c2] : ccols[s]) {
                        int s0 = sh / dh, h2 = sh % dh;
                        std::uint64_t cc = f.mul(c1, c2);
                        for (auto [x, cx] : lcols[static_cast<std::size_t>(a0) * ds + s0])
                            for (auto [y, cy] : ph.at(h1, h2))
                                mid.add(static_cast<std::size_t>(x) * dh + y,
                                        f.mul(f.mul(cc, cx), cy), f);
                    }
                }
                for (int a2 = 0; a2 < da; ++a2) {
                    /* lhs = delta(a s a2) */
                    lhs.clear();
                    std::fill(img.begin(), img.end(), 0);
                    for (auto [t, ct] : lcols[static_cast<std::size_t>(a) * ds + s])
                        for (auto [x, cx] : rcols[static_cast<std::size_t>(a2) * ds + t])
                            img[x] = f.add(img[x], f.mul(ct, cx));
                    for (int t = 0; t < ds; ++t)
                        if (img[t] != 0)
                            for (auto [sh, c] : ccols[t])
                                lhs.add(static_cast<std::size_t>(sh), f.mul(img[t], c), f);
                    /* rhs = contraction of mid with delta(a2) */
                    rhs.clear();
                    for (std::size_t idx : mid.touched) {
                        std::uint64_t c1 = mid.v[idx];
                        if (c1 == 0) continue;
                        int s0 = static_cast<int>(idx) / dh, h1 = static_cast<int>(idx) % dh;
                        for (auto [ah, c2] : acols[a2]) {
                            int a0 = ah / dh, h2 = ah % dh;
                            std::uint64_t cc = f.mul(c1, c2);
                            for (auto [x, cx] : rcols[static_cast<std::size_t>(a0) * ds + s0])
                                for (auto [y, cy] : ph.at(h1, h2))
                                    rhs.add(static_cast<std::size_t>(x) * dh + y,
                                            f.mul(f.mul(cc, cx), cy), f);
                        }
                    }
                    if (!lhs.equals(rhs)) return false;
                }
            }
        return true;
    }

private:
    EquivariantBimodule(ComodulePtr base, Bimodule bi, Mat coaction)
        : base_(std::move(base)), bi_(std::move(bi)), coaction_(std::move(coaction)) {}

    void validate() const {
        const Fp& f = bi_.left_algebra()->field();
        if (!bi_.square() || !bi_.left_algebra()->same_as(*base_->algebra()))
            throw shape_error("equivariant bimodule must live over the comodule algebra");
        int da = base_->algebra()->dim(), dh = base_->hopf()->dim(), ds = bi_.dim();
        if (coaction_.rows() != ds * dh || coaction_.cols() != ds)
            throw shape_error("coaction has wrong shape");

        /* comodule laws on Sigma */
        for (int j = 0; j < ds; ++j) {
            Mat v(f, ds, 1);
            for (auto [sh, c] : detail::sparse_col(coaction_, j))
                v.at(sh / dh, 0) =
                    f.add(v.at(sh / dh, 0), f.mul(c, base_->hopf()->counit().at(0, sh % dh)));
            if (v != Mat::unit_vector(f, ds, j))
                throw axiom_error("equivariant counit law fails at basis element " +
                                  std::to_string(j));
        }
        detail::Scratch lhs, rhs;
        lhs.resize(static_cast<std::size_t>(ds) * dh * dh);
        rhs.resize(lhs.v.size());
        for (int j = 0; j < ds; ++j) {
            lhs.clear();
            rhs.clear();
            for (auto [sh, c] : detail::sparse_col(coaction_, j)) {
                int s = sh / dh, h = sh % dh;
                for (auto [s2h2, c2] : detail::sparse_col(coaction_, s))
                    lhs.add(static_cast<std::size_t>(s2h2) * dh + h, f.mul(c, c2), f);
                for (auto [h1h2, c2] : detail::sparse_col(base_->hopf()->delta(), h))
                    rhs.add(static_cast<std::size_t>(s) * dh * dh + h1h2, f.mul(c, c2), f);
            }
            if (!lhs.equals(rhs))
                throw axiom_error("equivariant coassociativity fails at basis element " +
                                  std::to_string(j));
        }

        /* one-sided compatibilities */
        Mat s2 = base_->hopf()->antipode_squared();
        Mat twisted = kron(Mat::identity(f, da), s2) * base_->coaction();
        detail::ProductTable ph = detail::ProductTable::build(*base_->hopf()->algebra());
        std::vector<detail::SparseVec> lcols(static_cast<std::size_t>(da) * ds),
            rcols(lcols.size()), ccols, acols, tcols;
        for (int a = 0; a < da; ++a)
            for (int s = 0; s < ds; ++s) {
                lcols[static_cast<std::size_t>(a) * ds + s] =
                    detail::sparse_col(bi_.left_basis_action(a), s);
                rcols[static_cast<std::size_t>(a) * ds + s] =
                    detail::sparse_col(bi_.right_basis_action(a), s);
            }
        for (int s = 0; s < ds; ++s) ccols.push_back(detail::sparse_col(coaction_, s));
        for (int a = 0; a < da; ++a) {
            acols.push_back(detail::sparse_col(base_->coaction(), a));
            tcols.push_back(detail::sparse_col(twisted, a));
        }
        detail::Scratch a1, a2;
        a1.resize(static_cast<std::size_t>(ds) * dh);
        a2.resize(a1.v.size());
        /* Contracts an A-coaction column against a Sigma-coaction column.
         * The H legs multiply in the same order as the module legs: a-leg
         * first when acting on the left, Sigma-leg first when on the right. */
        auto contract = [&](detail::Scratch& acc, const detail::SparseVec& a_side,
                            const detail::SparseVec& s_side, bool act_left) {
            for (auto [ah, c1] : a_side) {
                int a0 = ah / dh, h1 = ah % dh;
                for (auto [sh, c2] : s_side) {
                    int s0 = sh / dh, h2 = sh % dh;
                    const detail::SparseVec& sa =
                        (act_left ? lcols : rcols)[static_cast<std::size_t>(a0) * ds + s0];
                    const detail::SparseVec& hh = act_left ? ph.at(h1, h2) : ph.at(h2, h1);
                    std::uint64_t cc = f.mul(c1, c2);
                    for (auto [x, cx] : sa)
                        for (auto [y, cy] : hh)
                            acc.add(static_cast<std::size_t>(x) * dh + y,
                                    f.mul(f.mul(cc, cx), cy), f);
                }
            }
        };
        auto coact_of_action = [&](detail::Scratch& acc, const detail::SparseVec& action_col) {
            for (auto [t, ct] : action_col)
                for (auto [sh, c] : ccols[t])
                    acc.add(static_cast<std::size_t>(sh), f.mul(ct, c), f);
        };
        for (int a = 0; a < da; ++a)
            for (int s = 0; s < ds; ++s) {
                /* left: delta(a s) = a0 s0 x S^2(a1) s1 */
                a1.clear();
                coact_of_action(a1, lcols[static_cast<std::size_t>(a) * ds + s]);
                a2.clear();
                contract(a2, tcols[a], ccols[s], true);
                if (!a1.equals(a2))
                    throw axiom_error("left equivariance fails at basis pair (" +
                                      std::to_string(a) + ", " + std::to_string(s) + ")");
                /* right: delta(s a) = s0 a0 x s1 a1 */
                a1.clear();
                coact_of_action(a1, rcols[static_cast<std::size_t>(a) * ds + s]);
                a2.clear();
                contract(a2, acols[a], ccols[s], false);
                if (!a1.equals(a2))
                    throw axiom_error("right equivariance fails at basis pair (" +
                                      std::to_string(a) + ", " + std::to_string(s) + ")");
            }
    }

    ComodulePtr base_;
    Bimodule bi_;
    Mat coaction_;
};

/* The dual bimodule A^* with the coaction delta(a^*) = <a^*, a_i(0)> a^i x
 * S(a_i(1)) induced from the coaction on A. */
inline EquivariantBimodule equivariant_dual_bimodule(const ComodulePtr& base) {
    const Fp& f = base->algebra()->field();
    int da = base->algebra()->dim(), dh = base->hopf()->dim();
    Mat co(f, da * dh, da);
    const Mat& d = base->coaction();
    const Mat& s = base->hopf()->antipode();
    for (int j = 0; j < da; ++j)
        for (int i = 0; i < da; ++i)
            for (int h = 0; h < dh; ++h) {
                std::uint64_t c = d.at(j * dh + h, i);
                if (c == 0) continue;
                for (int h2 = 0; h2 < dh; ++h2)
                    if (s.at(h2, h) != 0)
                        co.at(i * dh + h2, j) =
                            f.add(co.at(i * dh + h2, j), f.mul(c, s.at(h2, h)));
            }
    return EquivariantBimodule::make(base, dual_bimodule(base->algebra()), std::move(co));
}

/* Regular bimodule with coaction delta(a) = a_(0) x g a_(1) for a pivotal g. */
inline EquivariantBimodule pivotal_twist_bimodule(const ComodulePtr& base, const Mat& g_piv) {
    if (!is_pivotal(*base->hopf(), g_piv))
        throw not_pivotal_error("element is not pivotal");
    const Fp& f = base->algebra()->field();
    Mat co = kron(Mat::identity(f, base->algebra()->dim()),
                  base->hopf()->algebra()->left_mult(g_piv)) *
             base->coaction();
    return EquivariantBimodule::make(base, regular_bimodule(base->algebra()), std::move(co));
}

/* Forms lambda on Sigma with lambda(s_(0)) s_(1) = lambda(s) 1_H in addition
 * to symmetry; columns are a basis. */
inline Mat module_compatible_trace_space(const EquivariantBimodule& e) {
    const Bimodule& s = e.bimodule();
    const Fp& f = s.left_algebra()->field();
    int ds = s.dim(), dh = e.base()->hopf()->dim();
    EchelonAccumulator acc = detail::commutator_rows(s);
    const Mat& unit_h = e.base()->hopf()->algebra()->unit();
    std::vector<std::uint64_t> row(ds);
    for (int j = 0; j < ds; ++j)
        for (int h = 0; h < dh; ++h) {
            std::fill(row.begin(), row.end(), 0);
            for (int t = 0; t < ds; ++t) row[t] = e.coaction().at(t * dh + h, j);
            row[j] = f.sub(row[j], unit_h.at(h, 0));
            acc.add_row(row);
        }
    return acc.kernel_basis();
}

/* Pointwise membership test for a single form. */
inline bool is_module_compatible_form(const EquivariantBimodule& e, const Mat& lam_row) {
    const Bimodule& s = e.bimodule();
    if (!is_symmetric_form(s, lam_row)) return false;
    const Fp& f = s.left_algebra()->field();
    int ds = s.dim(), dh = e.base()->hopf()->dim();
    const Mat& unit_h = e.base()->hopf()->algebra()->unit();
    for (int j = 0; j < ds; ++j)
        for (int h = 0; h < dh; ++h) {
            std::uint64_t v = 0;
            for (int t = 0; t < ds; ++t)
                v = f.add(v, f.mul(lam_row.at(0, t), e.coaction().at(t * dh + h, j)));
            if (v != f.mul(lam_row.at(0, j), unit_h.at(h, 0))) return false;
        }
    return true;
}

/* lambda^nat is H-colinear iff delta_{A^*} lambda^nat = (lambda^nat x id) delta_Sigma. */
inline bool induced_dual_map_colinear(const Mat& lam_row, const EquivariantBimodule& sigma,
                                      const EquivariantBimodule& dual) {
    Mat lnat = induced_dual_map(lam_row, sigma.bimodule());
    const Fp& f = lam_row.field();
    int dh = sigma.base()->hopf()->dim();
    Mat lhs = dual.coaction() * lnat;
    Mat rhs = kron(lnat, Mat::identity(f, dh)) * sigma.coaction();
    return lhs == rhs;
}

/* Forms lambda on a comodule algebra with lambda(a_(0)) a_(1) = lambda(a) g;
 * columns are a basis. */
inline Mat grouplike_cointegrals(const ComodulePtr& base, const Mat& g) {
    if (!is_grouplike(*base->hopf(), g))
        throw not_grouplike_error("cointegral target must be grouplike");
    const Fp& f = base->algebra()->field();
    int da = base->algebra()->dim(), dh = base->hopf()->dim();
    EchelonAccumulator acc(f, da);
    std::vector<std::uint64_t> row(da);
    for (int j = 0; j < da; ++j)
        for (int h = 0; h < dh; ++h) {
            std::fill(row.begin(), row.end(), 0);
            for (int t = 0; t < da; ++t) row[t] = base->coaction().at(t * dh + h, j);
            row[j] = f.sub(row[j], g.at(h, 0));
            acc.add_row(row);
        }
    return acc.kernel_basis();
}

/* Pointwise check of lambda(a_(0)) a_(1) = lambda(a) g for one form. */
inline bool is_grouplike_cointegral(const ComodulePtr& base, const Mat& lam_row, const Mat& g) {
    if (!is_grouplike(*base->hopf(), g))
        throw not_grouplike_error("cointegral target must be grouplike");
    const Fp& f = base->algebra()->field();
    int da = base->algebra()->dim(), dh = base->hopf()->dim();
    if (lam_row.rows() != 1 || lam_row.cols() != da) throw shape_error("form row expected");
    for (int j = 0; j < da; ++j)
        for (int h = 0; h < dh; ++h) {
            std::uint64_t v = 0;
            for (int t = 0; t < da; ++t)
                v = f.add(v, f.mul(lam_row.at(0, t), base->coaction().at(t * dh + h, j)));
            if (v != f.mul(lam_row.at(0, j), g.at(h, 0))) return false;
        }
    return true;
}

/* Right modified trace space: symmetric forms that are cointegrals for
 * g_piv^{-1}, with a per-basis-column Frobenius flag. */
struct ModifiedTraceSpace {
    Mat basis;  /* dim(A) x k */
    std::vector<bool> column_nondegenerate;
};

inline ModifiedTraceSpace modified_trace_space(const ComodulePtr& base, const Mat& g_piv) {
    if (!is_pivotal(*base->hopf(), g_piv))
        throw not_pivotal_error("element is not pivotal");
    const AlgebraPtr& a = base->algebra();
    const Fp& f = a->field();
    Mat g_inv = base->hopf()->algebra()->element_inverse(g_piv);
    int da = a->dim(), dh = base->hopf()->dim();
    EchelonAccumulator acc = detail::commutator_rows(regular_bimodule(a));
    std::vector<std::uint64_t> row(da);
    for (int j = 0; j < da; ++j)
        for (int h = 0; h < dh; ++h) {
            std::fill(row.begin(), row.end(), 0);
            for (int t = 0; t < da; ++t) row[t] = base->coaction().at(t * dh + h, j);
            row[j] = f.sub(row[j], g_inv.at(h, 0));
            acc.add_row(row);
        }
    Mat basis = acc.kernel_basis();
    std::vector<bool> flags;
    for (int i = 0; i < basis.cols(); ++i) {
        Mat lam = basis.col(i).transpose();
        bool nd = false;
        try {
            frobenius_data(a, lam);
            nd = true;
        } catch (const not_frobenius_error&) {
        }
        flags.push_back(nd);
    }
    return ModifiedTraceSpace{std::move(basis), std::move(flags)};
}

}  // namespace modtrace
