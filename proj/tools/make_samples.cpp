#include <fstream>
#include <iostream>
#include <string>

#include "modtrace/deffile.hpp"
#include "modtrace/families.hpp"
#include "modtrace/traces.hpp"

using namespace modtrace;

namespace {

void write(const std::string& dir, const std::string& name, const std::string& text) {
    std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
    std::cout << path << "\n";
}

/* F_7[x]/(x^3) with its regular and dual bimodules, the free rank-one
 * projective, the map a -> class(a x (x) 1), and the top-coefficient form. */
std::string truncated_poly_doc() {
    Fp f = Fp::make(7, 1);
    int n = 3;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) c[(static_cast<std::size_t>(i) * n + j) * n + (i + j)] = 1;
    AlgebraPtr poly = Algebra::make(f, n, c, Mat::unit_vector(f, n, 0));

    io::Definition d;
    d.field = f;
    d.algebras.push_back(io::describe_algebra("poly", poly));
    d.bimodules.push_back(
        io::describe_bimodule("poly.reg", "poly", "poly", regular_bimodule(poly)));
    d.bimodules.push_back(
        io::describe_bimodule("poly.dual", "poly", "poly", dual_bimodule(poly)));
    d.elements.push_back(io::ElementDef{"one", "poly", poly->unit()});
    d.elements.push_back(io::ElementDef{"x", "poly", Mat::unit_vector(f, n, 1)});
    Mat top(f, 1, n);
    top.at(0, n - 1) = 1;
    d.forms.push_back(io::FormDef{"eps.top", "poly", top});
    d.projectives.push_back(
        io::ProjectiveDef{"P.free", "poly", 1, Mat::identity(f, n)});

    Projective p = free_projective(poly, 1);
    TraceSetup ts = make_trace_setup(regular_bimodule(poly), std::move(p));
    d.maps.push_back(io::MapDef{"f.right_x", phi_map(ts, Mat::unit_vector(f, n, 1))});
    return io::emit_definition(d);
}

/* 2x2 matrices over F_7: the column projective cut out by right
 * multiplication with e11, the matrix trace form, and p -> class(1 (x) p). */
std::string matrix_doc() {
    Fp f = Fp::make(7, 1);
    int n = 4;
    auto idx = [](int r, int c) { return r * 2 + c; };
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) * n * n, 0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                c[(static_cast<std::size_t>(idx(a, b)) * n + idx(b, g)) * n + idx(a, g)] = 1;
    Mat unit(f, n, 1);
    unit.at(idx(0, 0), 0) = 1;
    unit.at(idx(1, 1), 0) = 1;
    AlgebraPtr m2 = Algebra::make(f, n, c, unit);

    io::Definition d;
    d.field = f;
    d.algebras.push_back(io::describe_algebra("m2", m2));
    d.bimodules.push_back(io::describe_bimodule("m2.reg", "m2", "m2", regular_bimodule(m2)));
    Mat e11 = Mat::unit_vector(f, n, idx(0, 0));
    d.elements.push_back(io::ElementDef{"e11", "m2", e11});
    Mat tr(f, 1, n);
    tr.at(0, idx(0, 0)) = 1;
    tr.at(0, idx(1, 1)) = 1;
    d.forms.push_back(io::FormDef{"tr", "m2", tr});
    d.projectives.push_back(io::ProjectiveDef{"P.col", "m2", 1, m2->right_mult(e11)});

    Projective p = projective_from_idempotent(m2, 1, m2->right_mult(e11));
    TraceSetup ts = make_trace_setup(regular_bimodule(m2), std::move(p));
    Mat ins = kron(m2->unit(), Mat::identity(f, ts.p.dim()));
    d.maps.push_back(io::MapDef{"f.id", ts.tensor.tensor.space.proj * ins});
    return io::emit_definition(d);
}

/* Taft data at N = 3 over F_7: the Hopf algebra, both coideal subalgebras,
 * and the grouplike elements used as cointegral targets. */
std::string taft_doc() {
    Fp f = Fp::make(7, 3);
    families::TaftFamily t = families::taft(f, 3);
    ComodulePtr a1 = families::taft_coideal(t, 1);
    ComodulePtr a3 = families::taft_coideal(t, 3);

    io::Definition d;
    d.field = f;
    d.algebras.push_back(io::describe_algebra("taft", t.hopf->algebra()));
    d.algebras.push_back(io::describe_algebra("A1", a1->algebra()));
    d.algebras.push_back(io::describe_algebra("A3", a3->algebra()));
    d.hopf_algebras.push_back(io::describe_hopf("H", "taft", *t.hopf));
    d.comodule_algebras.push_back(io::describe_comodule("C1", "A1", "H", *a1));
    d.comodule_algebras.push_back(io::describe_comodule("C3", "A3", "H", *a3));
    const AlgebraPtr& h = t.hopf->algebra();
    d.elements.push_back(io::ElementDef{"g", "taft", t.g});
    d.elements.push_back(io::ElementDef{"g.inv", "taft", h->element_inverse(t.g)});
    d.elements.push_back(io::ElementDef{"one", "taft", h->unit()});
    d.forms.push_back(io::FormDef{"lam1", "A1", families::taft_cointegral_row(t, 1)});
    return io::emit_definition(d);
}

/* Book comodule algebra A(2; 1, 1) at N = 2 over F_7 with its Hopf algebra. */
std::string book_doc() {
    Fp f = Fp::make(7, 2);
    families::BookFamily b = families::book(f, 2);
    families::BookComodule bc = families::book_comodule(b, 2, 1, 1);

    io::Definition d;
    d.field = f;
    d.algebras.push_back(io::describe_algebra("book", b.hopf->algebra()));
    d.algebras.push_back(io::describe_algebra("A2", bc.comodule->algebra()));
    d.hopf_algebras.push_back(io::describe_hopf("H", "book", *b.hopf));
    d.comodule_algebras.push_back(io::describe_comodule("C2", "A2", "H", *bc.comodule));
    d.elements.push_back(io::ElementDef{"g", "book", b.g});
    d.forms.push_back(io::FormDef{"lam1", "A2", families::lambda_u(bc, 1)});
    return io::emit_definition(d);
}

/* The product table ignores e1, so the declared unit is not two-sided and
 * validation must flag the algebra. */
std::string invalid_doc() {
    return R"({
  "schema": "modtrace.def/1",
  "field": {"p": 7, "root_order": 1},
  "algebras": [
    {
      "name": "broken",
      "dim": 2,
      "unit": [[0, 1]],
      "products": [
        [0, 0, 0, 1]
      ]
    }
  ]
}
)";
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    write(dir, "truncated_poly_f7.json", truncated_poly_doc());
    write(dir, "m2_f7.json", matrix_doc());
    write(dir, "taft_n3_f7.json", taft_doc());
    write(dir, "book_n2_f7.json", book_doc());
    write(dir, "invalid_algebra.json", invalid_doc());
    write(dir, "malformed.json", "{\n  \"schema\": \"modtrace.def/1\",\n  \"field\": {\n");
    return 0;
}
