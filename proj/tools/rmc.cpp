// rmc: construct, analyze, verify, and search rank metric codes.
//
// Exit codes: 0 success/pass, 1 verification failed, 2 input or parameter
// error, 3 enumeration budget exceeded.

#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmc/atw.hpp"
#include "rmc/code.hpp"
#include "rmc/hamming.hpp"
#include "rmc/io.hpp"
#include "rmc/search.hpp"
#include "rmc/spread.hpp"

using json = nlohmann::json;
using namespace rmc;

namespace {

struct GlobalOpts {
    u64 budget = kDefaultBudget;
    unsigned threads = 1;
    bool json_out = false;
};

std::string join_counts(const std::map<std::size_t, u64>& counts) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : counts) {
        if (!first) os << " ";
        os << w << ":" << c;
        first = false;
    }
    return os.str();
}

template <typename T>
std::string join_list(const std::vector<T>& v, const char* sep = ",") {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

void print_mat(std::ostream& os, const Mat& M) {
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) os << (j ? " " : "") << M.at(i, j);
        os << "\n";
    }
}

json mat_json(const Mat& M) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows; ++i) rows.push_back(M.row(i));
    return rows;
}

// File content to stdout when no --out; otherwise write the file and print a
// one-line summary of what was built.
void emit_matrix(const Mat& G, const Embedding& base, const std::string& out) {
    if (out.empty()) {
        write_matrix(std::cout, G, base);
    } else {
        write_matrix_file(out, G, base);
        std::cout << "field=" << base.sup()->spec() << " base=" << base.sub()->spec()
                  << " k=" << G.rows << " n=" << G.cols << " -> " << out << "\n";
    }
}

void emit_spread(const Spread& S, const std::string& out) {
    if (out.empty()) {
        write_spread(std::cout, S);
    } else {
        write_spread_file(out, S);
        std::cout << "N=" << S.N << " t=" << S.t << " q=" << S.field->order()
                  << " count=" << S.elements.size() << " -> " << out << "\n";
    }
}

void print_spread_element(std::ostream& os, const Subspace& e) {
    for (std::size_t i = 0; i < e.dim(); ++i) {
        if (i) os << ";";
        for (std::size_t j = 0; j < e.ambient(); ++j) os << (j ? " " : "") << e.basis().at(i, j);
    }
    os << "\n";
}

int run_field(const GlobalOpts& g, const std::string& spec) {
    FieldPtr f = parse_field_spec(spec);
    if (g.json_out) {
        json j;
        j["p"] = f->p();
        j["degree"] = f->degree();
        j["order"] = f->order();
        j["modulus"] = f->modulus();
        j["spec"] = f->spec();
        j["generator"] = f->generator();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "p=" << f->p() << "\n"
                  << "degree=" << f->degree() << "\n"
                  << "order=" << f->order() << "\n"
                  << "modulus=" << f->modulus() << "\n"
                  << "spec=" << f->spec() << "\n"
                  << "generator=" << f->generator() << "\n";
    }
    return 0;
}

int run_analyze(const GlobalOpts& g, const std::string& file, const std::string& metric) {
    RankCode C = read_matrix_file(file);
    if (!C.is_nondegenerate())
        throw std::invalid_argument(
            "degenerate code: compress it first (compress_degenerate)");
    if (metric == "rank") {
        AtwReport rep = analyze_atw(C, g.budget, g.threads);
        if (g.json_out) {
            json j;
            j["distribution"] = json::parse(to_json_string(rep.dist));
            j["report"] = json::parse(to_json_string(rep));
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "code: [" << C.n() << ", " << C.k() << "] over " << C.sup()->spec()
                      << " / " << C.sub()->spec() << "\n"
                      << "rank counts: " << join_counts(rep.dist.counts) << "\n"
                      << "two_weight=" << (rep.two_weight ? "true" : "false")
                      << " atw=" << (rep.antipodal ? "true" : "false") << " d=" << rep.d
                      << " d2=" << rep.d2 << "\n";
            if (!rep.predicted.empty())
                std::cout << "predicted: " << join_counts(rep.predicted) << "\n";
        }
    } else {  // hamming-expansion
        HammingCode H = hamming_expansion(C, g.budget);
        HammingTwoWeightReport rep = analyze_hamming_two_weight(H, C, g.budget);
        if (g.json_out) {
            json j;
            j["distribution"] = json::parse(to_json_string(rep.dist));
            j["report"] = json::parse(to_json_string(rep));
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "expansion: [" << H.length() << ", " << H.k() << "] over "
                      << C.sup()->spec() << "\n"
                      << "hamming counts: " << join_counts(rep.dist.counts) << "\n"
                      << "two_weight=" << (rep.two_weight ? "true" : "false")
                      << " antipodal=" << (rep.antipodal ? "true" : "false") << " w1=" << rep.w1
                      << " w2=" << rep.w2 << "\n";
        }
    }
    return 0;
}

int report_verdict(const GlobalOpts& g, const std::string& what, bool pass,
                   const std::string& detail) {
    if (g.json_out) {
        json j;
        j["check"] = what;
        j["pass"] = pass;
        j["detail"] = detail;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << (pass ? "PASS " : "FAIL ") << what << ": " << detail << "\n";
    }
    return pass ? 0 : 1;
}

int run_verify(const GlobalOpts& g, const std::string& what, const std::string& file) {
    if (what == "spread") {
        Spread S = read_spread_file(file);
        SpreadDiagnostics diag = verify_spread(S);
        std::ostringstream d;
        if (diag.valid)
            d << "N=" << S.N << " t=" << S.t << " count=" << S.elements.size();
        else
            d << "violated axiom: " << diag.violation;
        return report_verdict(g, what, diag.valid, d.str());
    }
    RankCode C = read_matrix_file(file);
    if (what == "atw") {
        AtwReport rep = analyze_atw(C, g.budget, g.threads);
        std::ostringstream d;
        if (rep.antipodal)
            d << "d=" << rep.d << " n=" << C.n();
        else
            d << "support=" << join_list(rep.dist.support());
        return report_verdict(g, what, rep.antipodal, d.str());
    }
    if (what == "mrd") {
        bool pass = is_mrd(C, g.budget);
        std::ostringstream d;
        d << "d=" << min_distance(C, g.budget) << " singleton=" << (C.n() - C.k() + 1);
        return report_verdict(g, what, pass, d.str());
    }
    if (what == "theorem6") {
        SpreadCorrespondence res = verify_spread_correspondence(C, g.budget);
        std::ostringstream d;
        d << "atw=" << (res.atw ? "true" : "false")
          << " subspread=" << (res.subspread ? "true" : "false");
        if (!res.agree) d << " (sides disagree)";
        return report_verdict(g, what, res.agree, d.str());
    }
    if (what == "weight-corr") {
        bool pass = verify_weight_correspondence(C, g.budget);
        return report_verdict(g, what, pass,
                              pass ? "rank/hamming weight map holds on every scalar class"
                                   : "weight map violated");
    }
    if (what == "induced-by-mrd") {
        bool pass = is_induced_by_mrd(C, g.budget);
        std::ostringstream d;
        d << "q-system " << (pass ? "is" : "is not") << " closed under the embedded subfield";
        return report_verdict(g, what, pass, d.str());
    }
    // half-classify
    HalfClassification h = classify_half_distance(C, g.budget);
    bool pass = h.kind == HalfKind::Canonical;
    if (g.json_out) {
        json j;
        j["check"] = what;
        j["pass"] = pass;
        if (pass) {
            j["subfield_basis"] = h.subfield_basis;
            j["canonical"] = mat_json(h.canonical);
        }
        std::cout << j.dump() << "\n";
    } else if (pass) {
        std::cout << "PASS " << what << ": subfield basis " << join_list(h.subfield_basis)
                  << "\ncanonical:\n";
        print_mat(std::cout, h.canonical);
    } else {
        std::cout << "FAIL " << what << ": not antipodal two-weight\n";
    }
    return pass ? 0 : 1;
}

int run_spread_extract(const GlobalOpts& g, const std::string& file, const std::string& out) {
    RankCode C = read_matrix_file(file);
    Spread S = spread_from_atw(C, g.budget);
    emit_spread(S, out);
    return 0;
}

int run_spread_split(const std::string& file) {
    Spread S = read_spread_file(file);
    std::vector<Subspace> blocks = direct_sum_split(S);
    std::cout << "blocks=" << blocks.size() << "\n";
    for (const Subspace& b : blocks) print_spread_element(std::cout, b);
    return 0;
}

int run_spread_project(const GlobalOpts& g, const std::string& file, const std::string& wfile) {
    Spread S = read_spread_file(file);
    std::vector<std::vector<u64>> gens = read_vectors_file(wfile);
    if (gens.empty()) throw std::invalid_argument("no vectors in " + wfile);
    for (const auto& v : gens)
        if (v.size() != S.N) throw std::invalid_argument("W vector has wrong length");
    Subspace W = Subspace::from_vectors(S.field, S.N, gens);
    auto [parts, rep] = project_spread(S, W);
    if (g.json_out) {
        json j;
        j["subspread"] = rep.is_subspread;
        j["t_prime"] = rep.t_prime;
        j["count"] = rep.count;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "subspread=" << (rep.is_subspread ? "true" : "false")
                  << " t_prime=" << rep.t_prime << " count=" << rep.count << "\n";
        for (const Subspace& p : parts) print_spread_element(std::cout, p);
    }
    return 0;
}

int run_expand_hamming(const GlobalOpts& g, const std::string& file, const std::string& out) {
    RankCode C = read_matrix_file(file);
    HammingCode H = hamming_expansion(C, g.budget);
    emit_matrix(H.g, C.base(), out);
    return 0;
}

int run_search(const GlobalOpts& g, const SearchJob& job_in) {
    SearchJob job = job_in;
    job.budget = g.budget;
    job.threads = g.threads;
    SearchSummary s = search_codes(job);
    unsigned n = job.n;
    for (const Finding& f : s.findings) {
        if (g.json_out) {
            json j;
            j["index"] = f.index;
            j["support"] = f.support;
            j["atw"] = f.atw;
            j["d"] = f.d;
            if (f.atw) {
                json inv;
                inv["k2"] = job.k == 2;
                inv["half"] = 2 * f.d >= n;
                inv["divides"] = (n - f.d) != 0 && n % (n - f.d) == 0;
                j["invariants"] = inv;
            }
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "finding index=" << f.index << " support=" << join_list(f.support)
                      << " atw=" << (f.atw ? "true" : "false") << " d=" << f.d << "\n";
        }
    }
    if (g.json_out) {
        json j;
        j["summary"]["examined"] = s.examined;
        j["summary"]["non_spanning"] = s.non_spanning;
        j["summary"]["findings"] = s.findings.size();
        j["summary"]["by_support"] = s.by_support;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "examined=" << s.examined << " non_spanning=" << s.non_spanning
                  << " findings=" << s.findings.size() << "\n";
        for (const auto& [sup, cnt] : s.by_support)
            std::cout << "support " << sup << ": " << cnt << "\n";
    }
    return 0;
}

int run_equiv(const GlobalOpts& g, const std::string& f1, const std::string& f2) {
    RankCode C1 = read_matrix_file(f1);
    RankCode C2 = read_matrix_file(f2);
    EquivalenceResult res = codes_equivalent(C1, C2, g.budget);
    if (res.status == EquivalenceResult::Status::Budget) {
        std::ostringstream d;
        d << "budget exceeded: the witness scan needs |GL(" << C1.n() << ", " << C1.q()
          << ")| * (projective scalar classes) matrices";
        try {
            d << " = " << gl_order(C1.q(), (unsigned)C1.n()) << " * "
              << projective_rep_count(C1.sup()->order(), 1);
        } catch (const std::overflow_error&) {
        }
        std::cerr << d.str() << "\n";
        return 3;
    }
    bool yes = res.status == EquivalenceResult::Status::Yes;
    if (g.json_out) {
        json j;
        j["equivalent"] = yes;
        if (yes) {
            j["alpha"] = res.alpha;
            j["M"] = mat_json(res.M);
        }
        std::cout << j.dump() << "\n";
    } else if (yes) {
        std::cout << "equivalent alpha=" << res.alpha << "\nM:\n";
        print_mat(std::cout, res.M);
    } else {
        std::cout << "not equivalent\n";
    }
    return yes ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank metric code toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--budget", g.budget, "enumeration budget (objects)")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "data-parallel width")->capture_default_str();
    app.add_flag("--json", g.json_out, "machine-readable JSON output");

    auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    int rc = 0;

    // field
    std::string field_spec;
    CLI::App* c_field = sub(&app, "field", "describe a finite field");
    c_field->add_option("spec", field_spec, "p, p^D, or p^D:modulus")->required();
    c_field->callback([&] { rc = run_field(g, field_spec); });

    // construct
    CLI::App* c_con = sub(&app, "construct", "build generator-matrix files");
    c_con->require_subcommand(1);
    struct {
        u64 q = 2;
        unsigned d = 2, m = 4, k = 2, l = 2, t = 1;
        std::string out;
    } con;

    CLI::App* c_ex1 = sub(c_con, "example1", "[2d, 2, d] antipodal two-weight code");
    c_ex1->add_option("--q", con.q, "base field order")->required();
    c_ex1->add_option("--d", con.d, "minimum distance (d | m, d < m)")->required();
    c_ex1->add_option("--m", con.m, "extension degree")->required();
    c_ex1->add_option("--out", con.out, "output file (stdout if omitted)");
    c_ex1->callback([&] {
        RankCode C = two_block_atw(con.q, con.d, con.m);
        emit_matrix(C.generator(), C.base(), con.out);
    });

    CLI::App* c_ex2 = sub(c_con, "example2", "[kd, k, d] two-weight, not antipodal (k > 2)");
    c_ex2->add_option("--q", con.q, "base field order")->required();
    c_ex2->add_option("--d", con.d, "block width")->required();
    c_ex2->add_option("--k", con.k, "dimension (> 2)")->required();
    c_ex2->add_option("--out", con.out, "output file (stdout if omitted)");
    c_ex2->callback([&] {
        RankCode C = block_diagonal_two_weight(con.q, con.d, con.k);
        emit_matrix(C.generator(), C.base(), con.out);
    });

    CLI::App* c_gab = sub(c_con, "gabidulin", "[l, k, l-k+1] evaluation code");
    c_gab->add_option("--q", con.q, "base subfield order (prime power)")->required();
    c_gab->add_option("--m", con.m, "extension degree over the base subfield")->required();
    c_gab->add_option("--l", con.l, "length (<= m)")->required();
    c_gab->add_option("--k", con.k, "dimension (<= l)")->required();
    c_gab->add_option("--out", con.out, "output file (stdout if omitted)");
    c_gab->callback([&] {
        auto [p, e] = prime_power_decompose(con.q);
        Embedding emb =
            Embedding::build(Field::canonical(p, e), Field::canonical(p, e * con.m));
        RankCode C = gabidulin(emb, con.l, con.k);
        emit_matrix(C.generator(), C.base(), con.out);
    });

    CLI::App* c_had = sub(c_con, "hadamard", "[mk, k, m] constant-weight code");
    c_had->add_option("--q", con.q, "base field order")->required();
    c_had->add_option("--m", con.m, "extension degree")->required();
    c_had->add_option("--k", con.k, "dimension")->required();
    c_had->add_option("--out", con.out, "output file (stdout if omitted)");
    c_had->callback([&] {
        RankCode C = hadamard_code(con.q, con.m, con.k);
        emit_matrix(C.generator(), C.base(), con.out);
    });

    CLI::App* c_emrd = sub(c_con, "expand-mrd",
                           "[lt, 2, (l-1)t] antipodal code from an [l, 2] MRD code");
    c_emrd->add_option("--q", con.q, "final base field order")->required();
    c_emrd->add_option("--t", con.t, "intermediate degree (t | m)")->required();
    c_emrd->add_option("--l", con.l, "MRD length (2 <= l <= m/t)")->required();
    c_emrd->add_option("--m", con.m, "extension degree over the base")->required();
    c_emrd->add_option("--out", con.out, "output file (stdout if omitted)");
    c_emrd->callback([&] {
        if (con.t == 0 || con.m % con.t != 0)
            throw std::invalid_argument("expand-mrd requires t | m");
        auto [p, e] = prime_power_decompose(con.q);
        Embedding emb = Embedding::build(Field::canonical(p, e * con.t),
                                         Field::canonical(p, e * con.m));
        RankCode mrd = gabidulin(emb, con.l, 2);
        RankCode C = expand_mrd_to_atw(mrd, Field::canonical(p, e), g.budget);
        emit_matrix(C.generator(), C.base(), con.out);
    });

    // analyze
    std::string an_file, an_metric = "rank";
    CLI::App* c_an = sub(&app, "analyze", "weight distribution and two-weight report");
    c_an->add_option("file", an_file, "generator matrix file")->required();
    c_an->add_option("--metric", an_metric, "rank | hamming-expansion")
        ->check(CLI::IsMember({"rank", "hamming-expansion"}))
        ->capture_default_str();
    c_an->callback([&] { rc = run_analyze(g, an_file, an_metric); });

    // verify
    std::string v_what, v_file;
    CLI::App* c_ver = sub(&app, "verify", "pass/fail checks");
    c_ver->add_option("what", v_what, "check to run")
        ->check(CLI::IsMember({"atw", "mrd", "spread", "theorem6", "weight-corr",
                               "induced-by-mrd", "half-classify"}))
        ->required();
    c_ver->add_option("file", v_file, "matrix file (spread: dump file)")->required();
    c_ver->callback([&] { rc = run_verify(g, v_what, v_file); });

    // spread
    CLI::App* c_spr = sub(&app, "spread", "spread extraction and operations");
    c_spr->require_subcommand(1);
    std::string sp_file, sp_out, sp_wfile;

    CLI::App* c_spx = sub(c_spr, "extract", "hyperplane-intersection spread of an ATW code");
    c_spx->add_option("file", sp_file, "generator matrix file")->required();
    c_spx->add_option("--out", sp_out, "output dump (stdout if omitted)");
    c_spx->callback([&] { rc = run_spread_extract(g, sp_file, sp_out); });

    CLI::App* c_sps = sub(c_spr, "split", "greedy direct-sum decomposition");
    c_sps->add_option("file", sp_file, "spread dump file")->required();
    c_sps->callback([&] { rc = run_spread_split(sp_file); });

    CLI::App* c_spp = sub(c_spr, "project", "project onto a subspace W");
    c_spp->add_option("file", sp_file, "spread dump file")->required();
    c_spp->add_option("--w-file", sp_wfile, "file of basis vectors for W")->required();
    c_spp->callback([&] { rc = run_spread_project(g, sp_file, sp_wfile); });

    // expand-hamming
    std::string eh_file, eh_out;
    CLI::App* c_eh = sub(&app, "expand-hamming", "projective-system Hamming expansion");
    c_eh->add_option("file", eh_file, "generator matrix file")->required();
    c_eh->add_option("--out", eh_out, "output file (stdout if omitted)");
    c_eh->callback([&] { rc = run_expand_hamming(g, eh_file, eh_out); });

    // search
    SearchJob job;
    u64 sample = 0;
    CLI::App* c_sea = sub(&app, "search", "enumerate q-systems and report weight supports");
    c_sea->add_option("--q", job.q, "base field order")->capture_default_str();
    c_sea->add_option("--m", job.m, "extension degree")->required();
    c_sea->add_option("--n", job.n, "code length (q-system dimension)")->required();
    c_sea->add_option("--k", job.k, "code dimension")->capture_default_str();
    c_sea->add_option("--sample", sample, "sample this many systems instead of all");
    c_sea->add_option("--seed", job.seed, "sampling seed")->capture_default_str();
    c_sea->add_flag("--atw-only", job.atw_only, "report only antipodal two-weight findings");
    c_sea->add_flag("--two-weight-only", job.two_weight_only, "report only two-weight findings");
    c_sea->callback([&] {
        job.exhaustive = sample == 0;
        job.sample_count = sample;
        rc = run_search(g, job);
    });

    // equiv
    std::string eq_f1, eq_f2;
    CLI::App* c_eq = sub(&app, "equiv", "exhaustive equivalence witness search");
    c_eq->add_option("file1", eq_f1, "generator matrix file")->required();
    c_eq->add_option("file2", eq_f2, "generator matrix file")->required();
    c_eq->callback([&] { rc = run_equiv(g, eq_f1, eq_f2); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
