#pragma once

#include <cstdint>
#include <vector>

#include "modtrace/hopf.hpp"

namespace modtrace {
namespace families {

namespace detail {

/* Pair of product tables for multiplying inside L (x) R, coordinates
 * (a, h) -> a*dim(R) + h. */
struct TensorRing {
    const Fp* f;
    modtrace::detail::ProductTable left, right;

    static TensorRing build(const Algebra& l, const Algebra& r) {
        return TensorRing{&l.field(), modtrace::detail::ProductTable::build(l),
                          modtrace::detail::ProductTable::build(r)};
    }

    Mat mul(const Mat& u, const Mat& v) const {
        int dl = left.dim, dr = right.dim;
        Mat out(*f, dl * dr, 1);
        for (int a = 0; a < dl; ++a)
            for (int h = 0; h < dr; ++h) {
                std::uint64_t cu = u.at(a * dr + h, 0);
                if (cu == 0) continue;
                for (int b = 0; b < dl; ++b)
                    for (int k = 0; k < dr; ++k) {
                        std::uint64_t cv = v.at(b * dr + k, 0);
                        if (cv == 0) continue;
                        std::uint64_t c = f->mul(cu, cv);
                        for (auto [x, cx] : left.at(a, b))
                            for (auto [y, cy] : right.at(h, k))
                                out.at(x * dr + y, 0) = f->add(out.at(x * dr + y, 0),
                                                               f->mul(f->mul(c, cx), cy));
                    }
            }
        return out;
    }

    /* Powers u^0 .. u^count. */
    std::vector<Mat> powers(const Mat& unit_l, const Mat& unit_r, const Mat& u,
                            int count) const {
        std::vector<Mat> t;
        t.push_back(kron(unit_l, unit_r));
        for (int i = 1; i <= count; ++i) t.push_back(mul(t.back(), u));
        return t;
    }
};

}  // namespace detail

/* Taft Hopf algebra of order N^2: generators g, x with g^N = 1, x^N = 0,
 * g x = omega x g; basis x^i g^j at index i*N + j. */
struct TaftFamily {
    HopfPtr hopf;
    int n;
    Mat x, g;
};

inline int taft_index(int n, int i, int j) { return i * n + j; }

inline TaftFamily taft(const Fp& f, int n) {
    if (n < 1 || f.root_order() != static_cast<std::uint64_t>(n))
        throw domain_error("field root order must equal N");
    int dim = n * n;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(dim) * dim * dim, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (i + k >= n) continue;
                    int a = taft_index(n, i, j), b = taft_index(n, k, l);
                    int t = taft_index(n, i + k, (j + l) % n);
                    c[(static_cast<std::size_t>(a) * dim + b) * dim + t] =
                        f.omega_pow(static_cast<std::int64_t>(j) * k);
                }
    AlgebraPtr alg = Algebra::make(f, dim, std::move(c), Mat::unit_vector(f, dim, 0));

    Mat x = Mat::unit_vector(f, dim, taft_index(n, 1 % n, 0));
    Mat g = Mat::unit_vector(f, dim, taft_index(n, 0, 1 % n));
    if (n == 1) x = Mat(f, dim, 1); /* x = 0 in the trivial case */

    /* Delta(x) = x (x) g + 1 (x) x, Delta(g) = g (x) g, extended as an
     * algebra map; antipode S(x) = -x g^{-1}, S(g) = g^{-1}, extended as an
     * anti-map. */
    Mat dx = kron(x, g) + kron(alg->unit(), x);
    Mat dg = kron(g, g);
    detail::TensorRing hh = detail::TensorRing::build(*alg, *alg);
    std::vector<Mat> px = hh.powers(alg->unit(), alg->unit(), dx, n - 1);
    std::vector<Mat> pg = hh.powers(alg->unit(), alg->unit(), dg, n - 1);
    Mat delta(f, dim * dim, dim);
    Mat counit(f, 1, dim);
    Mat antipode(f, dim, dim);
    Mat sg = alg->pow(g, static_cast<std::uint64_t>(n - 1));
    Mat sx = alg->mul(x, sg).scaled(f.neg(1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int idx = taft_index(n, i, j);
            Mat dcol = hh.mul(px[i], pg[j]);
            for (int r = 0; r < dim * dim; ++r) delta.at(r, idx) = dcol.at(r, 0);
            counit.at(0, idx) = (i == 0) ? 1 : 0;
            Mat scol = alg->mul(alg->pow(sg, static_cast<std::uint64_t>(j)),
                                alg->pow(sx, static_cast<std::uint64_t>(i)));
            for (int r = 0; r < dim; ++r) antipode.at(r, idx) = scol.at(r, 0);
        }
    return TaftFamily{HopfAlgebra::make(alg, std::move(delta), std::move(counit),
                                        std::move(antipode)),
                      n, std::move(x), std::move(g)};
}

/* Coideal subalgebra A(d) of the Taft algebra: basis x^i g^{m j} with
 * m = N/d, 0 <= i < N, 0 <= j < d, index i*d + j; coaction restricted from
 * Delta. */
inline int taft_coideal_index(int d, int i, int j) { return i * d + j; }

inline ComodulePtr taft_coideal(const TaftFamily& t, int d) {
    int n = t.n;
    if (d < 1 || n % d != 0) throw not_divisor_error("d must divide N");
    int m = n / d, dim = n * d, dimh = n * n;
    const Fp& f = t.hopf->field();
    std::vector<std::uint64_t> c(static_cast<std::size_t>(dim) * dim * dim, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < d; ++l) {
                    if (i + k >= n) continue;
                    int a = taft_coideal_index(d, i, j), b = taft_coideal_index(d, k, l);
                    int tt = taft_coideal_index(d, i + k, (j + l) % d);
                    c[(static_cast<std::size_t>(a) * dim + b) * dim + tt] =
                        f.omega_pow(static_cast<std::int64_t>(m) * j * k);
                }
    AlgebraPtr alg = Algebra::make(f, dim, std::move(c), Mat::unit_vector(f, dim, 0));

    Mat coact(f, dim * dimh, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            int idx = taft_coideal_index(d, i, j);
            Mat dcol = t.hopf->delta().col(taft_index(n, i, (m * j) % n));
            for (int a = 0; a < dimh; ++a)
                for (int h = 0; h < dimh; ++h) {
                    std::uint64_t v = dcol.at(a * dimh + h, 0);
                    if (v == 0) continue;
                    int ai = a / n, aj = a % n;
                    if (aj % m != 0)
                        throw axiom_error("restricted comultiplication leaves the span");
                    coact.at(taft_coideal_index(d, ai, aj / m) * dimh + h, idx) = v;
                }
        }
    return ComoduleAlgebra::make(alg, t.hopf, std::move(coact));
}

/* The cointegral of the coideal family: lambda(x^i g^{m j}) =
 * [i = N-1][j = 0], as a row vector. */
inline Mat taft_cointegral_row(const TaftFamily& t, int d) {
    const Fp& f = t.hopf->field();
    Mat row(f, 1, t.n * d);
    row.at(0, taft_coideal_index(d, t.n - 1, 0)) = 1;
    return row;
}

/* Book Hopf algebra of order N^3: generators g, x, y with g^N = 1,
 * x^N = y^N = 0, g x = omega x g, g y = omega^{-1} y g, y x = omega x y;
 * basis x^r y^s g^t at index (r*N + s)*N + t. */
struct BookFamily {
    HopfPtr hopf;
    int n;
    Mat x, y, g;
};

inline int book_index(int n, int r, int s, int t) { return (r * n + s) * n + t; }

inline BookFamily book(const Fp& f, int n) {
    if (n < 1 || f.root_order() != static_cast<std::uint64_t>(n))
        throw domain_error("field root order must equal N");
    int dim = n * n * n;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(dim) * dim * dim, 0);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v)
                        for (int w = 0; w < n; ++w) {
                            if (r + u >= n || s + v >= n) continue;
                            int a = book_index(n, r, s, t), b = book_index(n, u, v, w);
                            int tt = book_index(n, r + u, s + v, (t + w) % n);
                            c[(static_cast<std::size_t>(a) * dim + b) * dim + tt] =
                                f.omega_pow(static_cast<std::int64_t>(t) * u +
                                            static_cast<std::int64_t>(s) * u -
                                            static_cast<std::int64_t>(t) * v);
                        }
    AlgebraPtr alg = Algebra::make(f, dim, std::move(c), Mat::unit_vector(f, dim, 0));

    Mat x = Mat::unit_vector(f, dim, book_index(n, 1 % n, 0, 0));
    Mat y = Mat::unit_vector(f, dim, book_index(n, 0, 1 % n, 0));
    Mat g = Mat::unit_vector(f, dim, book_index(n, 0, 0, 1 % n));
    if (n == 1) {
        x = Mat(f, dim, 1);
        y = Mat(f, dim, 1);
    }

    Mat dx(f, dim * dim, 1), dy(f, dim * dim, 1), dg(f, dim * dim, 1);
    dx = kron(x, g) + kron(alg->unit(), x);
    dy = kron(y, g) + kron(alg->unit(), y);
    dg = kron(g, g);
    detail::TensorRing hh = detail::TensorRing::build(*alg, *alg);
    std::vector<Mat> px = hh.powers(alg->unit(), alg->unit(), dx, n - 1);
    std::vector<Mat> py = hh.powers(alg->unit(), alg->unit(), dy, n - 1);
    std::vector<Mat> pg = hh.powers(alg->unit(), alg->unit(), dg, n - 1);
    Mat delta(f, dim * dim, dim);
    Mat counit(f, 1, dim);
    Mat antipode(f, dim, dim);
    Mat sg = alg->pow(g, static_cast<std::uint64_t>(n - 1));
    Mat sx = alg->mul(x, sg).scaled(f.neg(1));
    Mat sy = alg->mul(y, sg).scaled(f.neg(1));
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                int idx = book_index(n, r, s, t);
                Mat dcol = hh.mul(hh.mul(px[r], py[s]), pg[t]);
                for (int rr = 0; rr < dim * dim; ++rr) delta.at(rr, idx) = dcol.at(rr, 0);
                counit.at(0, idx) = (r == 0 && s == 0) ? 1 : 0;
                Mat scol = alg->mul(alg->pow(sg, static_cast<std::uint64_t>(t)),
                                    alg->mul(alg->pow(sy, static_cast<std::uint64_t>(s)),
                                             alg->pow(sx, static_cast<std::uint64_t>(r))));
                for (int rr = 0; rr < dim; ++rr) antipode.at(rr, idx) = scol.at(rr, 0);
            }
    return BookFamily{HopfAlgebra::make(alg, std::move(delta), std::move(counit),
                                        std::move(antipode)),
                      n, std::move(x), std::move(y), std::move(g)};
}

/* Comodule algebra A(d; xi, mu) over the book Hopf algebra: generators
 * X, Y, G with X^N = xi, Y^N = mu, G^d = 1, G X = omega^m X G,
 * Y X = omega X Y, G Y = omega^{-m} Y G where m = N/d; basis X^r Y^s G^t
 * at index (r*N + s)*d + t; coaction sends X -> X (x) g + 1 (x) x,
 * Y -> Y (x) g + 1 (x) y, G -> G (x) g^m. */
struct BookComodule {
    ComodulePtr comodule;
    int n, d;
    std::uint64_t xi, mu;
    Mat big_x, big_y, big_g;
};

inline int book_comodule_index(int n, int d, int r, int s, int t) { return (r * n + s) * d + t; }

inline BookComodule book_comodule(const BookFamily& bf, int d, std::uint64_t xi,
                                  std::uint64_t mu) {
    int n = bf.n;
    if (d < 1 || n % d != 0) throw not_divisor_error("d must divide N");
    const Fp& f = bf.hopf->field();
    xi %= f.p();
    mu %= f.p();
    int m = n / d, dim = n * n * d, dimh = n * n * n;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(dim) * dim * dim, 0);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < d; ++t)
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v)
                        for (int w = 0; w < d; ++w) {
                            std::uint64_t coeff =
                                f.omega_pow(static_cast<std::int64_t>(m) * t * u +
                                            static_cast<std::int64_t>(s) * u -
                                            static_cast<std::int64_t>(m) * t * v);
                            int rr = r + u, ss = s + v;
                            if (rr >= n) {
                                coeff = f.mul(coeff, xi);
                                rr -= n;
                            }
                            if (ss >= n) {
                                coeff = f.mul(coeff, mu);
                                ss -= n;
                            }
                            if (coeff == 0) continue;
                            int a = book_comodule_index(n, d, r, s, t);
                            int b = book_comodule_index(n, d, u, v, w);
                            int tt = book_comodule_index(n, d, rr, ss, (t + w) % d);
                            c[(static_cast<std::size_t>(a) * dim + b) * dim + tt] = coeff;
                        }
    AlgebraPtr alg = Algebra::make(f, dim, std::move(c), Mat::unit_vector(f, dim, 0));

    const AlgebraPtr& halg = bf.hopf->algebra();
    Mat bx = Mat::unit_vector(f, dim, book_comodule_index(n, d, 1 % n, 0, 0));
    Mat by = Mat::unit_vector(f, dim, book_comodule_index(n, d, 0, 1 % n, 0));
    Mat bg = Mat::unit_vector(f, dim, book_comodule_index(n, d, 0, 0, 1 % d));
    if (n == 1) {
        bx = alg->unit().scaled(xi);
        by = alg->unit().scaled(mu);
    }

    Mat dX = kron(bx, bf.g) + kron(alg->unit(), bf.x);
    Mat dY = kron(by, bf.g) + kron(alg->unit(), bf.y);
    Mat dG = kron(bg, halg->pow(bf.g, static_cast<std::uint64_t>(m)));
    detail::TensorRing ah = detail::TensorRing::build(*alg, *halg);
    std::vector<Mat> pX = ah.powers(alg->unit(), halg->unit(), dX, n - 1);
    std::vector<Mat> pY = ah.powers(alg->unit(), halg->unit(), dY, n - 1);
    std::vector<Mat> pG = ah.powers(alg->unit(), halg->unit(), dG, d - 1);
    Mat coact(f, dim * dimh, dim);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < d; ++t) {
                int idx = book_comodule_index(n, d, r, s, t);
                Mat dcol = ah.mul(ah.mul(pX[r], pY[s]), pG[t]);
                for (int rr = 0; rr < dim * dimh; ++rr) coact.at(rr, idx) = dcol.at(rr, 0);
            }
    return BookComodule{ComoduleAlgebra::make(alg, bf.hopf, std::move(coact)),
                        n, d, xi, mu, std::move(bx), std::move(by), std::move(bg)};
}

/* lambda_u(X^r Y^s G^t) = [r = N-1][s = N-1][t = u], as a row vector. */
inline Mat lambda_u(const BookComodule& a, int u) {
    if (u < 0 || u >= a.d) throw domain_error("u must lie in [0, d)");
    const Fp& f = a.comodule->algebra()->field();
    Mat row(f, 1, a.comodule->algebra()->dim());
    row.at(0, book_comodule_index(a.n, a.d, a.n - 1, a.n - 1, u)) = 1;
    return row;
}

/* The Nakayama automorphism of lambda_u in closed form:
 * nu_u(X^r Y^s G^t) = omega^{(m u - 1) r + (1 - m u) s} X^r Y^s G^t. */
inline Mat expected_nakayama(const BookComodule& a, int u) {
    if (u < 0 || u >= a.d) throw domain_error("u must lie in [0, d)");
    const Fp& f = a.comodule->algebra()->field();
    int n = a.n, d = a.d, m = n / d;
    Mat nu(f, n * n * d, n * n * d);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < d; ++t) {
                int idx = book_comodule_index(n, d, r, s, t);
                nu.at(idx, idx) =
                    f.omega_pow((static_cast<std::int64_t>(m) * u - 1) * r +
                                (1 - static_cast<std::int64_t>(m) * u) * s);
            }
    return nu;
}

}  // namespace families
}  // namespace modtrace
