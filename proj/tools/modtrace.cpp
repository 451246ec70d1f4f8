#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "modtrace/deffile.hpp"
#include "modtrace/families.hpp"
#include "modtrace/hopf.hpp"
#include "modtrace/report.hpp"
#include "modtrace/traces.hpp"

using namespace modtrace;
using io::ordered_json;

namespace {

struct Options {
    std::string input;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 0;
    int max_dim = 256;
    bool timing = false;

    std::string bimodule, projective, map, form;
    std::string comodule, grouplike, pivotal;

    std::string family;
    int n = 0;
    int d = 1;
    std::uint64_t p = 0;
    std::uint64_t xi = 0, mu = 0;
    int samples = 5;
};

struct Outcome {
    io::Report report;
    int exit = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read input file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

io::Definition load(const Options& o) {
    if (o.input.empty()) throw parse_error("--input is required for this command");
    return io::parse_definition(read_file(o.input), o.max_dim);
}

Mat random_element(const Fp& f, int dim, std::mt19937_64& rng) {
    Mat v(f, dim, 1);
    for (int i = 0; i < dim; ++i) v.at(i, 0) = rng() % f.p();
    return v;
}

bool rows_proportional(const Mat& a, const Mat& b) {
    return rank(vstack(a, b)) <= 1;
}

/* lambda(ab) vs lambda(nu(b) a) on seeded random pairs; the values travel
 * into the report so the seed visibly shapes the bytes. */
ordered_json trace_samples(const AlgebraPtr& alg, const Mat& lam, const FrobeniusData& fd,
                           std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    ordered_json out;
    out["seed"] = seed;
    out["count"] = count;
    ordered_json values = ordered_json::array();
    bool all_ok = true;
    for (int s = 0; s < count; ++s) {
        Mat a = random_element(alg->field(), alg->dim(), rng);
        Mat b = random_element(alg->field(), alg->dim(), rng);
        std::uint64_t lhs = (lam * alg->mul(a, b)).at(0, 0);
        std::uint64_t rhs = (lam * alg->mul(fd.nakayama * b, a)).at(0, 0);
        bool ok = lhs == rhs;
        all_ok = all_ok && ok;
        values.push_back({lhs, rhs, ok ? 1 : 0});
    }
    out["values"] = std::move(values);
    out["all_ok"] = all_ok;
    return out;
}

ordered_json modified_traces_json(const ModifiedTraceSpace& mts) {
    ordered_json j;
    j["dim"] = mts.basis.cols();
    j["basis"] = io::columns_json(mts.basis);
    ordered_json flags = ordered_json::array();
    for (bool b : mts.column_nondegenerate) flags.push_back(b);
    j["nondegenerate"] = std::move(flags);
    return j;
}

/* First non-degenerate basis column with its Gram inverse, or null. */
ordered_json certificate_json(const AlgebraPtr& alg, const ModifiedTraceSpace& mts) {
    for (std::size_t i = 0; i < mts.column_nondegenerate.size(); ++i) {
        if (!mts.column_nondegenerate[i]) continue;
        FrobeniusData fd = frobenius_data(alg, mts.basis.col(static_cast<int>(i)).transpose());
        ordered_json c;
        c["column"] = i;
        c["gram_inverse"] = io::matrix_json(fd.gram_inv);
        return c;
    }
    return nullptr;
}

Outcome cmd_validate(const Options& o) {
    io::Definition def = load(o);
    io::Instances inst(def);
    io::Report r("validate");
    r.doc["input"] = o.input;
    r.doc["field"] = {{"p", def.field.p()}, {"root_order", def.field.root_order()}};

    bool all_ok = true;
    ordered_json checks = ordered_json::array();
    auto record = [&](const char* kind, const std::string& name, bool ok,
                      const std::string& detail) {
        ordered_json c;
        c["kind"] = kind;
        c["name"] = name;
        c["ok"] = ok;
        if (!ok) c["detail"] = detail;
        checks.push_back(std::move(c));
        all_ok = all_ok && ok;
    };

    for (const auto& a : def.algebras) {
        try {
            inst.algebra(a.name);
            record("algebra", a.name, true, "");
        } catch (const error& e) {
            record("algebra", a.name, false, e.what());
        }
    }
    for (const auto& h : def.hopf_algebras) {
        AlgebraPtr alg;
        try {
            alg = inst.algebra(h.algebra);
        } catch (const error&) {
            record("hopf", h.name, false,
                   "underlying algebra \"" + h.algebra + "\" failed to validate");
            continue;
        }
        for (const AxiomCheck& c : check_hopf(alg, h.delta, h.counit, h.antipode)) {
            ordered_json cj;
            cj["kind"] = "hopf_axiom";
            cj["name"] = h.name;
            cj["axiom"] = c.axiom;
            cj["ok"] = c.ok;
            if (!c.ok) cj["detail"] = c.detail;
            checks.push_back(std::move(cj));
            all_ok = all_ok && c.ok;
        }
    }
    for (const auto& c : def.comodule_algebras) {
        try {
            inst.comodule(c.name);
            record("comodule_algebra", c.name, true, "");
        } catch (const error& e) {
            record("comodule_algebra", c.name, false, e.what());
        }
    }
    for (const auto& b : def.bimodules) {
        try {
            inst.bimodule(b.name);
            record("bimodule", b.name, true, "");
        } catch (const error& e) {
            record("bimodule", b.name, false, e.what());
        }
    }
    for (const auto& p : def.projectives) {
        try {
            inst.projective(p.name);
            record("projective", p.name, true, "");
        } catch (const error& e) {
            record("projective", p.name, false, e.what());
        }
    }

    r.doc["counts"] = {{"algebras", def.algebras.size()},
                       {"hopf_algebras", def.hopf_algebras.size()},
                       {"comodule_algebras", def.comodule_algebras.size()},
                       {"bimodules", def.bimodules.size()},
                       {"elements", def.elements.size()},
                       {"forms", def.forms.size()},
                       {"projectives", def.projectives.size()},
                       {"maps", def.maps.size()}};
    r.doc["checks"] = std::move(checks);
    r.doc["ok"] = all_ok;
    return Outcome{std::move(r), all_ok ? 0 : 1};
}

Outcome cmd_hh0(const Options& o) {
    io::Definition def = load(o);
    io::Instances inst(def);
    Bimodule sigma = inst.bimodule(o.bimodule);
    io::Report r("hh0");
    r.doc["input"] = o.input;
    r.doc["bimodule"] = o.bimodule;
    r.doc["dim_sigma"] = sigma.dim();

    HH0 h = hochschild0(sigma);
    ordered_json hj;
    hj["dim"] = h.dim();
    hj["class_representatives"] = io::columns_json(h.space.section);
    r.doc["hh0"] = std::move(hj);

    Mat tr = trace_space(sigma);
    ordered_json tj;
    tj["dim"] = tr.cols();
    tj["basis"] = io::columns_json(tr);
    r.doc["trace_space"] = std::move(tj);
    return Outcome{std::move(r), 0};
}

Outcome cmd_trace(const Options& o) {
    io::Definition def = load(o);
    io::Instances inst(def);
    Bimodule sigma = inst.bimodule(o.bimodule);
    Projective p = inst.projective(o.projective);
    Mat f = inst.map(o.map).entries;
    TraceSetup ts = make_trace_setup(std::move(sigma), std::move(p));

    io::Report r("trace");
    r.doc["input"] = o.input;
    r.doc["bimodule"] = o.bimodule;
    r.doc["projective"] = o.projective;
    r.doc["map"] = o.map;
    r.doc["hs_representative"] = io::vector_json(hattori_stallings_representative(ts, f));
    r.doc["hs_class"] = io::vector_json(hattori_stallings(ts, f));
    r.doc["hh0_dim"] = ts.hh0.dim();
    if (!o.form.empty()) {
        Mat lam = inst.form(o.form).coords;
        ordered_json fj;
        fj["form"] = o.form;
        fj["is_symmetric"] = is_symmetric_form(ts.sigma, lam);
        fj["scalar_trace"] = twisted_trace(lam, ts, f);
        r.doc["twisted_trace"] = std::move(fj);
    }
    return Outcome{std::move(r), 0};
}

Outcome cmd_cointegrals(const Options& o) {
    io::Definition def = load(o);
    io::Instances inst(def);
    ComodulePtr c = inst.comodule(o.comodule);
    Mat g = inst.element(o.grouplike).coords;
    Mat basis = grouplike_cointegrals(c, g);

    io::Report r("cointegrals");
    r.doc["input"] = o.input;
    r.doc["comodule"] = o.comodule;
    r.doc["grouplike"] = o.grouplike;
    r.doc["dim"] = basis.cols();
    r.doc["basis"] = io::columns_json(basis);
    return Outcome{std::move(r), 0};
}

Outcome cmd_modified_traces(const Options& o) {
    io::Definition def = load(o);
    io::Instances inst(def);
    ComodulePtr c = inst.comodule(o.comodule);
    Mat g = inst.element(o.pivotal).coords;
    ModifiedTraceSpace mts = modified_trace_space(c, g);

    io::Report r("modified-traces");
    r.doc["input"] = o.input;
    r.doc["comodule"] = o.comodule;
    r.doc["pivotal"] = o.pivotal;
    r.doc["modified_traces"] = modified_traces_json(mts);
    r.doc["nondegeneracy_certificate"] = certificate_json(c->algebra(), mts);
    return Outcome{std::move(r), 0};
}

Outcome demo_taft(const Options& o) {
    Fp f = Fp::make(o.p, static_cast<std::uint64_t>(o.n));
    families::TaftFamily t = families::taft(f, o.n);
    ComodulePtr a = families::taft_coideal(t, o.d);
    const HopfPtr& h = t.hopf;

    io::Report r("demo");
    r.doc["family"] = "taft";
    r.doc["p"] = o.p;
    r.doc["n"] = o.n;
    r.doc["d"] = o.d;
    r.doc["omega"] = f.omega();
    r.doc["hopf_dim"] = h->dim();
    r.doc["algebra_dim"] = a->algebra()->dim();
    r.doc["pivotal_ok"] = is_pivotal(*h, t.g);

    ModifiedTraceSpace mts = modified_trace_space(a, t.g);
    r.doc["modified_traces"] = modified_traces_json(mts);
    r.doc["nondegeneracy_certificate"] = certificate_json(a->algebra(), mts);

    ordered_json sweep = ordered_json::array();
    for (int k = 0; k < o.n; ++k) {
        Mat gk = h->algebra()->pow(t.g, static_cast<std::uint64_t>(k));
        Mat basis = grouplike_cointegrals(a, gk);
        sweep.push_back({{"target_exponent", k}, {"dim", basis.cols()}});
    }
    r.doc["cointegral_sweep"] = std::move(sweep);

    Mat ginv = h->algebra()->element_inverse(t.g);
    Mat basis = grouplike_cointegrals(a, ginv);
    ordered_json cj;
    cj["dim"] = basis.cols();
    cj["basis"] = io::columns_json(basis);
    cj["proportional_to_top_power_dual"] =
        basis.cols() == 1 &&
        rows_proportional(basis.col(0).transpose(), families::taft_cointegral_row(t, o.d));
    r.doc["cointegrals_for_inverse_pivot"] = std::move(cj);

    bool nd = false;
    for (std::size_t i = 0; i < mts.column_nondegenerate.size() && !nd; ++i)
        nd = mts.column_nondegenerate[i];
    if (nd) {
        Mat lam = mts.basis.col(0).transpose();
        FrobeniusData fd = frobenius_data(a->algebra(), lam);
        r.doc["samples"] = trace_samples(a->algebra(), lam, fd, o.seed, o.samples);
    } else {
        r.doc["samples"] = nullptr;
    }
    return Outcome{std::move(r), 0};
}

Outcome demo_book(const Options& o) {
    Fp f = Fp::make(o.p, static_cast<std::uint64_t>(o.n));
    families::BookFamily b = families::book(f, o.n);
    families::BookComodule bc = families::book_comodule(b, o.d, o.xi, o.mu);
    const AlgebraPtr& a = bc.comodule->algebra();
    const HopfPtr& h = b.hopf;
    int m = o.n / o.d;

    io::Report r("demo");
    r.doc["family"] = "book";
    r.doc["p"] = o.p;
    r.doc["n"] = o.n;
    r.doc["d"] = o.d;
    r.doc["xi"] = f.reduce(o.xi);
    r.doc["mu"] = f.reduce(o.mu);
    r.doc["omega"] = f.omega();
    r.doc["hopf_dim"] = h->dim();
    r.doc["algebra_dim"] = a->dim();
    r.doc["pivotal_ok"] = is_pivotal(*h, b.g);

    ModifiedTraceSpace mts = modified_trace_space(bc.comodule, b.g);
    r.doc["modified_traces"] = modified_traces_json(mts);
    r.doc["nondegeneracy_certificate"] = certificate_json(a, mts);

    bool inner_case = o.d < o.n && f.reduce(o.xi) != 0 && f.reduce(o.mu) != 0;
    ordered_json lams = ordered_json::array();
    for (int u = 0; u < o.d; ++u) {
        Mat lam = families::lambda_u(bc, u);
        FrobeniusData fd = frobenius_data(a, lam);
        ordered_json lj;
        lj["u"] = u;
        int e = ((m * u - 2) % o.n + o.n) % o.n;
        lj["cointegral_target_exponent"] = e;
        Mat target = h->algebra()->pow(b.g, static_cast<std::uint64_t>(e));
        lj["is_cointegral"] = is_grouplike_cointegral(bc.comodule, lam, target);
        lj["nakayama_x_ok"] =
            fd.nakayama * bc.big_x == bc.big_x.scaled(f.omega_pow(m * u - 1));
        lj["nakayama_y_ok"] =
            fd.nakayama * bc.big_y == bc.big_y.scaled(f.omega_pow(1 - m * u));
        lj["nakayama_g_ok"] = fd.nakayama * bc.big_g == bc.big_g;
        lj["nakayama_diagonal_ok"] = fd.nakayama == families::expected_nakayama(bc, u);
        if (inner_case) {
            Mat c = a->mul(a->pow(bc.big_g, static_cast<std::uint64_t>(u)),
                           a->mul(bc.big_x, bc.big_y));
            Mat conj = a->left_mult(a->element_inverse(c)) * a->right_mult(c);
            lj["inner_nakayama_ok"] = fd.nakayama == conj;
        }
        lams.push_back(std::move(lj));
    }
    r.doc["lambda_checks"] = std::move(lams);

    bool nd = false;
    for (std::size_t i = 0; i < mts.column_nondegenerate.size() && !nd; ++i)
        nd = mts.column_nondegenerate[i];
    if (nd) {
        Mat lam = mts.basis.col(0).transpose();
        FrobeniusData fd = frobenius_data(a, lam);
        r.doc["samples"] = trace_samples(a, lam, fd, o.seed, o.samples);
    } else {
        r.doc["samples"] = nullptr;
    }
    return Outcome{std::move(r), 0};
}

Outcome cmd_demo(const Options& o) {
    if (o.p == 0) throw domain_error("--p is required for demo");
    if (o.n <= 0) throw domain_error("--n must be positive");
    if (o.d <= 0 || o.n % o.d != 0)
        throw not_divisor_error(std::to_string(o.d) + " does not divide " +
                                std::to_string(o.n));
    if (o.family == "taft") return demo_taft(o);
    if (o.family == "book") return demo_book(o);
    throw domain_error("unknown family \"" + o.family + "\"");
}

void write_output(const io::Report& r, const Options& o) {
    std::string text = o.format == "text" ? r.plain_text() : r.json_text();
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw domain_error("cannot open output file \"" + o.output + "\"");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"exact twisted traces on modules over finite dimensional algebras"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input)
            sub->add_option("--input", o.input, "definition document")->required();
        sub->add_option("--output", o.output, "write the report here (default stdout)");
        sub->add_option("--format", o.format, "report format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", o.seed, "seed for sampled checks");
        sub->add_option("--max-dim", o.max_dim, "largest accepted dimension")
            ->check(CLI::Range(1, k_dim_cap));
        sub->add_flag("--timing", o.timing, "append wall time to the report");
    };

    CLI::App* validate = app.add_subcommand("validate", "run every applicable axiom checker");
    add_common(validate, true);

    CLI::App* hh0 = app.add_subcommand("hh0", "zeroth Hochschild homology and trace space");
    add_common(hh0, true);
    hh0->add_option("--bimodule", o.bimodule, "bimodule name")->required();

    CLI::App* trace = app.add_subcommand("trace", "Hattori-Stallings class and scalar trace");
    add_common(trace, true);
    trace->add_option("--bimodule", o.bimodule, "coefficient bimodule")->required();
    trace->add_option("--projective", o.projective, "projective module")->required();
    trace->add_option("--map", o.map, "matrix of the twisted endomorphism")->required();
    trace->add_option("--form", o.form, "optional form for the scalar value");

    CLI::App* coint = app.add_subcommand("cointegrals", "basis of grouplike cointegrals");
    add_common(coint, true);
    coint->add_option("--comodule", o.comodule, "comodule algebra name")->required();
    coint->add_option("--grouplike", o.grouplike, "target grouplike element")->required();

    CLI::App* mod = app.add_subcommand("modified-traces",
                                       "modified trace space with Frobenius flags");
    add_common(mod, true);
    mod->add_option("--comodule", o.comodule, "comodule algebra name")->required();
    mod->add_option("--pivotal", o.pivotal, "pivotal grouplike element")->required();

    CLI::App* demo = app.add_subcommand("demo", "built-in families with full verdicts");
    add_common(demo, false);
    demo->add_option("--family", o.family, "taft or book")->required();
    demo->add_option("--n", o.n, "root of unity order")->required();
    demo->add_option("--d", o.d, "divisor selecting the coideal subalgebra");
    demo->add_option("--p", o.p, "field characteristic")->required();
    demo->add_option("--xi", o.xi, "book family parameter xi");
    demo->add_option("--mu", o.mu, "book family parameter mu");
    demo->add_option("--samples", o.samples, "sampled identity checks")
        ->check(CLI::Range(0, 10000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto start = std::chrono::steady_clock::now();
        Outcome out = [&]() {
            if (validate->parsed()) return cmd_validate(o);
            if (hh0->parsed()) return cmd_hh0(o);
            if (trace->parsed()) return cmd_trace(o);
            if (coint->parsed()) return cmd_cointegrals(o);
            if (mod->parsed()) return cmd_modified_traces(o);
            return cmd_demo(o);
        }();
        if (o.timing) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            out.report.doc["timing_ms"] = ms;
        }
        write_output(out.report, o);
        return out.exit;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const size_cap_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
