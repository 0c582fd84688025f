#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "json.hpp"
#include "rmc/atw.hpp"
#include "rmc/io.hpp"
#include "rmc/search.hpp"
#include "rmc/spread.hpp"

using namespace rmc;
using nlohmann::json;

namespace {

// scratch file helper: writes content, removes the file on scope exit
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content = "")
        : path("scratch_" + name) {
        if (!content.empty()) {
            std::ofstream out(path);
            out << content;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
};

u64 findings_total(const SearchSummary& s) {
    return std::accumulate(s.by_support.begin(), s.by_support.end(), u64(0),
                           [](u64 a, const auto& kv) { return a + kv.second; });
}

}  // namespace

TEST_CASE("field specs parse and round-trip") {
    FieldPtr f2 = parse_field_spec("2");
    CHECK(f2->p() == 2);
    CHECK(f2->degree() == 1);
    CHECK(format_field_spec(*f2) == "2^1:2");

    FieldPtr f16 = parse_field_spec("2^4");
    CHECK(f16->modulus() == 19);  // x^4 + x + 1
    CHECK(format_field_spec(*f16) == "2^4:19");
    CHECK(parse_field_spec("2^4:19")->same(*f16));

    FieldPtr alt = parse_field_spec("2^4:25");  // x^4 + x^3 + 1 is also irreducible
    CHECK(alt->order() == 16);
    CHECK(alt->modulus() == 25);
    CHECK_FALSE(alt->same(*f16));

    CHECK(parse_field_spec("3^2")->spec() == "3^2:10");

    CHECK_THROWS_AS(parse_field_spec("4"), std::invalid_argument);       // not prime
    CHECK_THROWS_AS(parse_field_spec("2^4:17"), std::invalid_argument);  // x^4 + 1 is reducible
    CHECK_THROWS_AS(parse_field_spec("2^0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_field_spec("2^a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_field_spec(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_field_spec("2^4:19x"), std::invalid_argument);
}

TEST_CASE("matrix files round-trip and reject tampering") {
    RankCode C = two_block_atw(2, 2, 4);
    TempFile f("matrix.txt");
    write_matrix_file(f.path, C);

    std::ifstream in(f.path);
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all == "field=2^4:19 base=2^1:2 k=2 n=4\n0 0 1 6\n1 6 0 0\n");

    RankCode C2 = read_matrix_file(f.path);
    CHECK(C2.sup()->same(*C.sup()));
    CHECK(C2.base().sub()->same(*C.base().sub()));
    CHECK(C2.generator().a == C.generator().a);
    CHECK(rank_weight_distribution(C2).counts == rank_weight_distribution(C).counts);

    CHECK_THROWS_WITH_AS(read_matrix_file("no_such_file.txt"),
                         "cannot open file: no_such_file.txt", std::invalid_argument);
    TempFile bad1("m1.txt", "field=2^4:19 base=2^1:2 k=2 n=4\n0 0 1 99\n1 6 0 0\n");
    CHECK_THROWS_WITH_AS(read_matrix_file(bad1.path), "matrix entry out of field range",
                         std::invalid_argument);
    TempFile bad2("m2.txt", "field=2^4:19 base=2^1:2 k=2 n=4\n0 0 1\n1 6 0 0\n");
    CHECK_THROWS_WITH_AS(read_matrix_file(bad2.path), "matrix row has too few entries",
                         std::invalid_argument);
    TempFile bad3("m3.txt", "field=2^4:19 base=2^1:2 k=2 n=4\n0 0 1 6 3\n1 6 0 0\n");
    CHECK_THROWS_WITH_AS(read_matrix_file(bad3.path), "matrix row has too many entries",
                         std::invalid_argument);
    TempFile bad4("m4.txt", "field=2^4:19 base=2^1:2 k=2 n=4\n0 0 1 6\n");
    CHECK_THROWS_AS(read_matrix_file(bad4.path), std::invalid_argument);  // truncated
    TempFile bad5("m5.txt", "field=2^4:19 k=2 n=4\n0 0 1 6\n1 6 0 0\n");
    CHECK_THROWS_WITH_AS(read_matrix_file(bad5.path), "malformed header: expected base=...",
                         std::invalid_argument);
    TempFile bad6("m6.txt", "field=2^4:19 base=2^1:2 k=0 n=4\n");
    CHECK_THROWS_AS(read_matrix_file(bad6.path), std::invalid_argument);
    // rank-deficient rows are rejected by code construction, not silently kept
    TempFile bad7("m7.txt", "field=2^4:19 base=2^1:2 k=2 n=2\n1 2\n1 2\n");
    CHECK_THROWS_AS(read_matrix_file(bad7.path), std::invalid_argument);
}

TEST_CASE("spread files round-trip; the count header is advisory") {
    Spread S = desarguesian_spread(2, 2, 2);
    TempFile f("spread.txt");
    write_spread_file(f.path, S);

    std::ifstream in(f.path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "N=4 t=2 q=2 count=5");

    Spread S2 = read_spread_file(f.path);
    CHECK(S2.N == 4);
    CHECK(S2.t == 2);
    CHECK(S2.field->order() == 2);
    REQUIRE(S2.elements.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(S2.elements[i].key() == S.elements[i].key());
    CHECK(verify_spread(S2).valid);

    // a wrong advisory count is ignored as long as the elements are intact
    {
        std::ifstream src(f.path);
        std::string body((std::istreambuf_iterator<char>(src)), std::istreambuf_iterator<char>());
        TempFile adv("sp_adv.txt", "N=4 t=2 q=2 count=7" + body.substr(body.find('\n')));
        Spread S3 = read_spread_file(adv.path);
        CHECK(S3.elements.size() == 5);
        CHECK(verify_spread(S3).valid);
    }
    // dropping an element parses (advisory count) but fails verification
    {
        std::ifstream src(f.path);
        std::string line, kept;
        for (int i = 0; i < 5 && std::getline(src, line); ++i) kept += line + "\n";
        TempFile cut("sp_cut.txt", kept);  // header + only 4 of the 5 elements
        Spread S4 = read_spread_file(cut.path);
        CHECK(S4.elements.size() == 4);
        SpreadDiagnostics diag = verify_spread(S4);
        CHECK_FALSE(diag.valid);
        CHECK(diag.violation == "count");
    }
    TempFile bad1("sp1.txt", "N=4 t=2 q=2 count=1\n0 0 2 0;0 0 0 1\n");
    CHECK_THROWS_WITH_AS(read_spread_file(bad1.path), "coordinate out of field range",
                         std::invalid_argument);
    TempFile bad2("sp2.txt", "N=4 t=2 q=2 count=1\n0 0 1;0 0 0 1\n");
    CHECK_THROWS_WITH_AS(read_spread_file(bad2.path), "spread vector has wrong length",
                         std::invalid_argument);
    TempFile bad3("sp3.txt", "N=4 t=2 count=1\n");
    CHECK_THROWS_AS(read_spread_file(bad3.path), std::invalid_argument);  // q= missing
}

TEST_CASE("vector list files") {
    TempFile f("vecs.txt", "1 0 1\n\n0 2 1\n");
    auto vs = read_vectors_file(f.path);
    REQUIRE(vs.size() == 2);
    CHECK(vs[0] == std::vector<u64>{1, 0, 1});
    CHECK(vs[1] == std::vector<u64>{0, 2, 1});
    TempFile bad("vecs_bad.txt", "1 x 1\n");
    CHECK_THROWS_AS(read_vectors_file(bad.path), std::invalid_argument);
}

TEST_CASE("json serializations have stable shapes") {
    RankCode C = two_block_atw(2, 2, 4);
    json d = json::parse(to_json_string(rank_weight_distribution(C)));
    CHECK(d["metric"] == "rank");
    CHECK(d["n"] == 4);
    CHECK(d["counts"] == json({{"0", 1}, {"2", 75}, {"4", 180}}));

    json a = json::parse(to_json_string(analyze_atw(C)));
    CHECK(a["atw"] == true);
    CHECK(a["two_weight"] == true);
    CHECK(a["d"] == 2);
    CHECK(a["d2"] == 4);
    CHECK(a["counts"] == json({{"0", 1}, {"2", 75}, {"4", 180}}));
    CHECK(a["predicted"] == json({{"0", 1}, {"2", 75}, {"4", 180}}));

    json h = json::parse(to_json_string(analyze_hamming_two_weight(hamming_expansion(C), C)));
    CHECK(h["two_weight"] == true);
    CHECK(h["antipodal"] == true);
    CHECK(h["w1"] == 12);
    CHECK(h["w2"] == 15);
    CHECK(h["counts"] == json({{"0", 1}, {"12", 75}, {"15", 180}}));
}

TEST_CASE("exhaustive search censuses every system once") {
    SearchJob job;
    job.q = 2;
    job.m = 2;
    job.n = 2;
    job.k = 2;
    SearchSummary s = search_codes(job);
    CHECK(s.examined == 35);  // [4 2]_2 subspaces of F_2^4
    CHECK(s.non_spanning == 5);
    CHECK(s.by_support == std::map<std::string, u64>{{"1,2", 30}});
    CHECK(s.findings.size() == 30);
    // every [2, 2] system over F_4 is antipodal with d = 1
    for (const Finding& f : s.findings) {
        CHECK(f.atw);
        CHECK(f.d == 1);
        CHECK(f.support == std::vector<std::size_t>{1, 2});
    }
    // indices ascend and identify distinct systems
    for (std::size_t i = 1; i < s.findings.size(); ++i)
        CHECK(s.findings[i - 1].index < s.findings[i].index);

    // the atw filter keeps the same findings here
    job.atw_only = true;
    CHECK(search_codes(job).findings.size() == 30);
}

TEST_CASE("search is deterministic across runs and threads") {
    SearchJob job;
    job.q = 2;
    job.m = 3;
    job.n = 3;
    job.k = 2;
    SearchSummary a = search_codes(job);
    CHECK(a.examined == 1395);  // [6 3]_2
    CHECK(a.non_spanning + findings_total(a) == a.examined);
    CHECK(a.findings.size() == findings_total(a));

    SearchSummary b = search_codes(job);  // repeat run
    job.threads = 3;
    SearchSummary c = search_codes(job);  // threaded run
    for (const SearchSummary* other : {&b, &c}) {
        CHECK(other->examined == a.examined);
        CHECK(other->non_spanning == a.non_spanning);
        CHECK(other->by_support == a.by_support);
        REQUIRE(other->findings.size() == a.findings.size());
        for (std::size_t i = 0; i < a.findings.size(); ++i) {
            CHECK(other->findings[i].index == a.findings[i].index);
            CHECK(other->findings[i].support == a.findings[i].support);
            CHECK(other->findings[i].atw == a.findings[i].atw);
        }
    }
}

TEST_CASE("sampled search is reproducible by seed") {
    SearchJob job;
    job.q = 2;
    job.m = 3;
    job.n = 4;
    job.k = 2;
    job.exhaustive = false;
    job.sample_count = 40;
    job.seed = 9;
    SearchSummary a = search_codes(job);
    SearchSummary b = search_codes(job);
    CHECK(a.examined == 40);
    REQUIRE(a.findings.size() == b.findings.size());
    for (std::size_t i = 0; i < a.findings.size(); ++i)
        CHECK(a.findings[i].index == b.findings[i].index);
    CHECK(a.by_support == b.by_support);
}

TEST_CASE("search budget and parameter validation") {
    SearchJob job;
    job.q = 2;
    job.m = 3;
    job.n = 3;
    job.k = 3;
    job.budget = 100;
    try {
        search_codes(job);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == 788035);  // [9 3]_2
        CHECK(e.budget() == 100);
    }
    SearchJob bad;
    bad.n = 0;
    CHECK_THROWS_AS(search_codes(bad), std::invalid_argument);
    SearchJob big;
    big.q = 2;
    big.m = 2;
    big.k = 2;
    big.n = 5;  // exceeds mk = 4
    CHECK_THROWS_AS(search_codes(big), std::invalid_argument);
    SearchJob oversample;
    oversample.exhaustive = false;
    oversample.sample_count = 50;
    oversample.budget = 10;
    oversample.m = 2;
    oversample.n = 2;
    CHECK_THROWS_AS(search_codes(oversample), BudgetExceeded);
}
