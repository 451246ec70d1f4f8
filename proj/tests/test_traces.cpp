#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "modtrace/traces.hpp"
#include "builders.hpp"

using namespace modtrace;
using namespace modtrace::testbuild;

namespace {

Mat random_symmetric_form(const Bimodule& s, std::mt19937_64& rng) {
    Mat basis = trace_space(s);
    Mat lam(s.left_algebra()->field(), 1, s.dim());
    const Fp& f = s.left_algebra()->field();
    std::uniform_int_distribution<std::uint64_t> d(0, f.p() - 1);
    for (int i = 0; i < basis.cols(); ++i) {
        std::uint64_t c = d(rng);
        for (int j = 0; j < s.dim(); ++j)
            lam.at(0, j) = f.add(lam.at(0, j), f.mul(c, basis.at(j, i)));
    }
    return lam;
}

Mat random_hom_combo(const HomBasis& h, std::mt19937_64& rng) {
    const Mat& b0 = h.stacked;
    Mat x = random_vector(b0.field(), h.dim(), rng);
    if (h.dim() == 0) throw modtrace::domain_error("empty hom space");
    return h.from_coords(x);
}

/* Small deterministic family of projectives over A: free ranks one and two
 * plus images of right multiplication by found idempotent elements. */
std::vector<Projective> projective_family(const AlgebraPtr& a, std::mt19937_64& rng) {
    std::vector<Projective> fam;
    fam.push_back(free_projective(a, 1));
    fam.push_back(free_projective(a, 2));
    const Fp& f = a->field();
    int found = 0;
    for (int t = 0; t < 300 && found < 2; ++t) {
        Mat u = random_vector(f, a->dim(), rng);
        if (a->mul(u, u) != u || u.is_zero() || u == a->unit()) continue;
        fam.push_back(projective_from_idempotent(a, 1, a->right_mult(u)));
        ++found;
    }
    return fam;
}

}  // namespace

TEST_CASE("zeroth Hochschild homology of commutative algebras is everything", "[traces]") {
    Fp f = Fp::make(7, 1);
    for (AlgebraPtr a : {truncated_poly(f, 3), cyclic_group_algebra(f, 4)}) {
        HH0 h = hochschild0(regular_bimodule(a));
        CHECK(h.dim() == a->dim());
        CHECK(trace_space(regular_bimodule(a)).cols() == a->dim());
    }
}

TEST_CASE("zeroth Hochschild homology of the matrix algebra is a line", "[traces]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr m2 = matrix_algebra2(f);
    CHECK(hochschild0(regular_bimodule(m2)).dim() == 1);
    Mat ts = trace_space(regular_bimodule(m2));
    REQUIRE(ts.cols() == 1);
    /* the symmetric form is proportional to the matrix trace */
    Mat lam = ts.col(0).transpose();
    CHECK(lam.at(0, 1) == 0);
    CHECK(lam.at(0, 2) == 0);
    CHECK(lam.at(0, 0) == lam.at(0, 3));
    CHECK(is_symmetric_form(regular_bimodule(m2), lam));
}

TEST_CASE("trace of multiplication maps recovers the class of the multiplier", "[traces]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 20; ++t) {
        AlgebraPtr a = random_algebra(f, rng);
        Bimodule sigma = random_bimodule(a, rng);
        TraceSetup ts = make_trace_setup(sigma, free_projective(a, 1));
        Mat s = random_vector(f, sigma.dim(), rng);
        Mat fmap = phi_map(ts, s);
        CHECK(hattori_stallings(ts, fmap) == ts.hh0.space.proj * s);
    }
}

TEST_CASE("trace classes are invariant under cyclic exchange", "[traces]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(3031);
    int done = 0;
    while (done < 20) {
        AlgebraPtr a = random_algebra(f, rng);
        Bimodule sigma = random_bimodule(a, rng);
        Projective p = free_projective(a, 1);
        Projective q = free_projective(a, (done % 2) + 1);
        TraceSetup tsp = make_trace_setup(sigma, p);
        TraceSetup tsq = make_trace_setup(sigma, q);
        HomBasis pq = hom_space(p.carrier, q.carrier);
        HomBasis qsp = hom_space(q.carrier, tsp.tensor.mod);
        if (pq.dim() == 0 || qsp.dim() == 0) continue;
        Mat fmap = random_hom_combo(pq, rng);
        Mat gmap = random_hom_combo(qsp, rng);
        CHECK(hattori_stallings(tsp, gmap * fmap) ==
              hattori_stallings(tsq, induced_tensor_map(tsp, tsq, fmap) * gmap));
        ++done;
    }
}

TEST_CASE("dual bases transport along module maps", "[traces]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(3233);
    for (int t = 0; t < 20; ++t) {
        AlgebraPtr a = random_algebra(f, rng);
        Projective p = free_projective(a, 1 + (t % 2));
        Projective q = free_projective(a, 1 + ((t + 1) % 2));
        HomBasis pq = hom_space(p.carrier, q.carrier);
        if (pq.dim() == 0) continue;
        Mat fmap = random_hom_combo(pq, rng);
        DualModule dp = dual_module(p.carrier);
        TensorQuotient tq = tensor_over_algebra(dp.mod, q.carrier);
        Mat lhs(f, tq.space.ambient, 1), rhs(f, tq.space.ambient, 1);
        for (int j = 0; j < p.free_rank; ++j)
            lhs = lhs + kron(dp.maps.coords(p.forms[j]), fmap * p.gens[j]);
        for (int i = 0; i < q.free_rank; ++i)
            rhs = rhs + kron(dp.maps.coords(q.forms[i] * fmap), q.gens[i]);
        CHECK(tq.space.proj * lhs == tq.space.proj * rhs);
    }
}

TEST_CASE("canonical trace against the dual computes the twisted trace", "[traces]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(3435);
    int done = 0;
    while (done < 20) {
        AlgebraPtr a = random_algebra(f, rng);
        Bimodule sigma = random_bimodule(a, rng);
        Projective p = free_projective(a, 1 + (done % 2));
        TraceSetup ts = make_trace_setup(sigma, p);
        TraceSetup dts = make_trace_setup(dual_bimodule(a), free_projective(a, 1 + (done % 2)));
        HomBasis maps = hom_space(p.carrier, ts.tensor.mod);
        if (maps.dim() == 0) continue;
        Mat lam = random_symmetric_form(sigma, rng);
        Mat fmap = random_hom_combo(maps, rng);
        Mat transport = dual_transport_on_tensor(lam, ts, dts);
        CHECK(twisted_trace(lam, ts, fmap) == canonical_trace(dts, transport * fmap));
        ++done;
    }
}

TEST_CASE("nondegeneracy of the induced dual map matches the trace pairing", "[traces]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(3637);
    int nondeg_seen = 0, deg_seen = 0;
    for (int t = 0; t < 12; ++t) {
        AlgebraPtr a = random_algebra(f, rng);
        Bimodule sigma = (t % 2 == 0) ? dual_bimodule(a) : random_bimodule(a, rng);
        Mat lam = (t % 4 == 0) ? a->unit().transpose() * Mat::identity(f, sigma.dim())
                               : random_symmetric_form(sigma, rng);
        if (t % 4 == 0 && sigma.dim() != a->dim()) continue;
        bool nd = nondegeneracy_certificate(lam, sigma).has_value();
        std::vector<Projective> fam = projective_family(a, rng);
        bool all_perfect = true;
        for (const Projective& p : fam) {
            TraceSetup ts = make_trace_setup(sigma, p);
            for (const Projective& q : fam)
                if (!gram_nondegenerate(pairing_gram(lam, ts, q))) {
                    all_perfect = false;
                    break;
                }
            if (!all_perfect) break;
        }
        CHECK(nd == all_perfect);
        (nd ? nondeg_seen : deg_seen)++;
    }
    CHECK(nondeg_seen > 0);
    CHECK(deg_seen > 0);
}

TEST_CASE("frobenius data on hand-checked forms", "[traces]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr d2 = truncated_poly(f, 2);
    Mat lam = Mat::from(f, 1, 2, {0, 1});  /* dual of x */
    FrobeniusData fd = frobenius_data(d2, lam);
    CHECK(fd.gram == Mat::from(f, 2, 2, {0, 1, 1, 0}));
    CHECK(fd.nakayama == Mat::identity(f, 2));
    CHECK_THROWS_AS(frobenius_data(d2, Mat::from(f, 1, 2, {1, 0})), not_frobenius_error);

    AlgebraPtr m2 = matrix_algebra2(f);
    Mat tracef = Mat::from(f, 1, 4, {1, 0, 0, 1});
    CHECK(frobenius_data(m2, tracef).nakayama == Mat::identity(f, 4));
}

TEST_CASE("nakayama automorphism is multiplicative and theta intertwines", "[traces]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(3839);
    for (int t = 0; t < 15; ++t) {
        AlgebraPtr base = (t % 2 == 0) ? cyclic_group_algebra(f, 2 + static_cast<int>(rng() % 3))
                                       : matrix_algebra2(f);
        AlgebraPtr a = change_basis(base, random_invertible(f, base->dim(), rng));
        /* search a Frobenius form inside the symmetric space */
        SymmetricFrobeniusReport rep = symmetric_frobenius_report(a);
        REQUIRE(rep.found);
        FrobeniusData fd = *rep.data;
        const Mat& nu = fd.nakayama;
        CHECK(nu * a->unit() == a->unit());
        for (int i = 0; i < a->dim(); ++i)
            for (int j = 0; j < a->dim(); ++j) {
                Mat lhs = nu * a->mul(Mat::unit_vector(f, a->dim(), i), Mat::unit_vector(f, a->dim(), j));
                Mat rhs = a->mul(nu.col(i), nu.col(j));
                CHECK(lhs == rhs);
            }
        /* theta = G^T is a bimodule map from the nu-twisted regular bimodule to the dual */
        Bimodule tw = twisted_regular_bimodule(a, nu);
        Bimodule du = dual_bimodule(a);
        for (int i = 0; i < a->dim(); ++i) {
            CHECK(fd.theta * tw.left_basis_action(i) == du.left_basis_action(i) * fd.theta);
            CHECK(fd.theta * tw.right_basis_action(i) == du.right_basis_action(i) * fd.theta);
        }
    }
}

TEST_CASE("dual tensor products are twists of the module", "[traces]") {
    Fp f = Fp::make(7, 1);
    std::mt19937_64 rng(4041);
    for (int t = 0; t < 10; ++t) {
        AlgebraPtr base = (t % 2 == 0) ? cyclic_group_algebra(f, 3) : matrix_algebra2(f);
        AlgebraPtr a = change_basis(base, random_invertible(f, base->dim(), rng));
        SymmetricFrobeniusReport rep = symmetric_frobenius_report(a);
        REQUIRE(rep.found);
        FrobeniusData fd = *rep.data;
        LeftModule m = (t % 3 == 0) ? free_module(a, 2) : left_regular_module(a);
        TensorQuotient tq = tensor_over_algebra(dual_bimodule(a).right_part(), m);
        /* Phi(m) = class(lambda x m) intertwines the nu-twisted action with the
         * hit action on the tensor */
        Mat lam_coords = rep.form.transpose();
        Mat phi(f, tq.dim(), m.dim());
        for (int j = 0; j < m.dim(); ++j) {
            Mat cls = tq.class_of(lam_coords, Mat::unit_vector(f, m.dim(), j));
            for (int r = 0; r < tq.dim(); ++r) phi.at(r, j) = cls.at(r, 0);
        }
        REQUIRE(tq.dim() == m.dim());
        CHECK(try_inverse(phi).has_value());
        ModuleTensor mt = bimodule_tensor_module(dual_bimodule(a), m);
        for (int i = 0; i < a->dim(); ++i) {
            Mat twisted_act = m.act(fd.nakayama.col(i));
            CHECK(phi * twisted_act == mt.mod.act_basis(i) * phi);
        }
    }
}

TEST_CASE("symmetric frobenius search finds classical positives", "[traces]") {
    Fp f = Fp::make(7, 1);
    SymmetricFrobeniusReport r1 = symmetric_frobenius_report(truncated_poly(f, 2));
    CHECK(r1.found);
    CHECK(r1.data->nakayama == Mat::identity(f, 2));
    SymmetricFrobeniusReport r2 = symmetric_frobenius_report(matrix_algebra2(f));
    CHECK(r2.found);
    CHECK(r2.data->nakayama == Mat::identity(f, 4));
    CHECK(r2.exhaustive);  /* one-dimensional space over F_7 */
    CHECK(r2.invertible_count == 6);
}

TEST_CASE("symmetric frobenius search certifies negatives", "[traces]") {
    Fp f = Fp::make(7, 1);
    SymmetricFrobeniusReport r = symmetric_frobenius_report(upper_triangular2(f));
    CHECK_FALSE(r.found);
    REQUIRE(r.common_kernel.has_value());
    CHECK(r.common_kernel->cols() > 0);
    CHECK(r.exhaustive);
    CHECK(r.invertible_count == 0);
    /* the certificate vector is killed by the Gram of every symmetric form */
    Mat v = r.common_kernel->col(0);
    CHECK_FALSE(v.is_zero());
    for (int i = 0; i < r.sym_forms.cols(); ++i) {
        Mat lam = r.sym_forms.col(i).transpose();
        Mat g(f, 3, 3);
        AlgebraPtr a = upper_triangular2(f);
        for (int r2 = 0; r2 < 3; ++r2) {
            Mat row = lam * a->left_basis(r2);
            for (int c = 0; c < 3; ++c) g.at(r2, c) = row.at(0, c);
        }
        CHECK((g * v).is_zero());
    }
}

TEST_CASE("module map validation rejects non-linear endomorphisms", "[traces]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr a = matrix_algebra2(f);
    TraceSetup ts = make_trace_setup(regular_bimodule(a), free_projective(a, 1));
    Mat bad(f, ts.tensor.tensor.dim(), 4);
    bad.at(0, 1) = 1;
    CHECK_THROWS_AS(hattori_stallings(ts, bad), axiom_error);
    CHECK_THROWS_AS(hattori_stallings(ts, Mat(f, 1, 1)), shape_error);
}

TEST_CASE("zero-dimensional bimodule has trivial homology and traces", "[traces]") {
    Fp f = Fp::make(7, 1);
    AlgebraPtr a = truncated_poly(f, 2);
    std::vector<Mat> none(2, Mat(f, 0, 0));
    Bimodule z = Bimodule::make(a, a, none, none);
    CHECK(hochschild0(z).dim() == 0);
    CHECK(trace_space(z).cols() == 0);
    TraceSetup ts = make_trace_setup(z, free_projective(a, 1));
    Mat fmap(f, 0, 2);
    CHECK(hattori_stallings(ts, fmap).rows() == 0);
    CHECK(twisted_trace(Mat(f, 1, 0), ts, fmap) == 0);
}
