#include "rmc/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rmc {

namespace {

u64 parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        u64 v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid integer for ") + what + ": '" + s + "'");
    }
}

// "key=value" pairs from a header line, order-checked by the caller
u64 header_field(std::istringstream& is, const std::string& key) {
    std::string tok;
    if (!(is >> tok) || tok.rfind(key + "=", 0) != 0)
        throw std::invalid_argument("malformed header: expected " + key + "=...");
    return parse_u64(tok.substr(key.size() + 1), key.c_str());
}

std::string header_field_str(std::istringstream& is, const std::string& key) {
    std::string tok;
    if (!(is >> tok) || tok.rfind(key + "=", 0) != 0)
        throw std::invalid_argument("malformed header: expected " + key + "=...");
    return tok.substr(key.size() + 1);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    return out;
}

nlohmann::json counts_json(const std::map<std::size_t, u64>& counts) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [w, c] : counts) j[std::to_string(w)] = c;
    return j;
}

}  // namespace

FieldPtr parse_field_spec(const std::string& s) {
    std::size_t caret = s.find('^');
    if (caret == std::string::npos)
        return Field::canonical(parse_u64(s, "field characteristic"), 1);
    u64 p = parse_u64(s.substr(0, caret), "field characteristic");
    std::string rest = s.substr(caret + 1);
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
        return Field::canonical(p, (unsigned)parse_u64(rest, "field degree"));
    u64 degree = parse_u64(rest.substr(0, colon), "field degree");
    u64 modulus = parse_u64(rest.substr(colon + 1), "field modulus");
    return Field::with_modulus(p, (unsigned)degree, modulus);
}

std::string format_field_spec(const Field& f) { return f.spec(); }

RankCode read_matrix_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty matrix file: " + path);
    std::istringstream hs(line);
    FieldPtr field = parse_field_spec(header_field_str(hs, "field"));
    FieldPtr base = parse_field_spec(header_field_str(hs, "base"));
    u64 k = header_field(hs, "k");
    u64 n = header_field(hs, "n");
    if (k == 0 || n == 0) throw std::invalid_argument("matrix dimensions must be positive");
    Mat G(field, k, n);
    for (u64 i = 0; i < k; ++i) {
        if (!std::getline(in, line)) throw std::invalid_argument("matrix file truncated: " + path);
        std::istringstream ls(line);
        for (u64 j = 0; j < n; ++j) {
            std::string tok;
            if (!(ls >> tok)) throw std::invalid_argument("matrix row has too few entries");
            u64 v = parse_u64(tok, "matrix entry");
            if (v >= field->order()) throw std::invalid_argument("matrix entry out of field range");
            G.at(i, j) = v;
        }
        std::string extra;
        if (ls >> extra) throw std::invalid_argument("matrix row has too many entries");
    }
    return RankCode::from_generator(std::move(G), Embedding::build(base, field));
}

void write_matrix(std::ostream& os, const Mat& G, const Embedding& base) {
    os << "field=" << base.sup()->spec() << " base=" << base.sub()->spec() << " k=" << G.rows
       << " n=" << G.cols << "\n";
    for (std::size_t i = 0; i < G.rows; ++i) {
        for (std::size_t j = 0; j < G.cols; ++j) os << (j ? " " : "") << G.at(i, j);
        os << "\n";
    }
}

void write_matrix_file(const std::string& path, const Mat& G, const Embedding& base) {
    std::ofstream out = open_output(path);
    write_matrix(out, G, base);
    if (!out) throw std::invalid_argument("failed writing file: " + path);
}

void write_matrix_file(const std::string& path, const RankCode& C) {
    write_matrix_file(path, C.generator(), C.base());
}

Spread read_spread_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty spread file: " + path);
    std::istringstream hs(line);
    u64 N = header_field(hs, "N");
    u64 t = header_field(hs, "t");
    u64 q = header_field(hs, "q");
    u64 count = header_field(hs, "count");
    (void)count;  // advisory
    Spread S;
    S.field = canonical_field_of_order(q);
    S.N = N;
    S.t = t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::vector<u64>> gens;
        std::istringstream es(line);
        std::string vec;
        while (std::getline(es, vec, ';')) {
            std::istringstream vs(vec);
            std::vector<u64> v;
            std::string tok;
            while (vs >> tok) {
                u64 x = parse_u64(tok, "coordinate");
                if (x >= q) throw std::invalid_argument("coordinate out of field range");
                v.push_back(x);
            }
            if (v.size() != N) throw std::invalid_argument("spread vector has wrong length");
            gens.push_back(std::move(v));
        }
        if (gens.empty()) throw std::invalid_argument("spread element has no vectors");
        S.elements.push_back(Subspace::from_vectors(S.field, N, gens));
    }
    return S;
}

void write_spread(std::ostream& os, const Spread& S) {
    os << "N=" << S.N << " t=" << S.t << " q=" << S.field->order() << " count=" << S.elements.size()
       << "\n";
    for (const Subspace& e : S.elements) {
        for (std::size_t i = 0; i < e.dim(); ++i) {
            if (i) os << ";";
            for (std::size_t j = 0; j < e.ambient(); ++j)
                os << (j ? " " : "") << e.basis().at(i, j);
        }
        os << "\n";
    }
}

void write_spread_file(const std::string& path, const Spread& S) {
    std::ofstream out = open_output(path);
    write_spread(out, S);
    if (!out) throw std::invalid_argument("failed writing file: " + path);
}

std::vector<std::vector<u64>> read_vectors_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<u64>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream vs(line);
        std::vector<u64> v;
        std::string tok;
        while (vs >> tok) v.push_back(parse_u64(tok, "coordinate"));
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

std::string to_json_string(const WeightDistribution& d) {
    nlohmann::json j;
    j["metric"] = d.metric == WeightDistribution::Metric::Rank ? "rank" : "hamming";
    j["n"] = d.n;
    j["counts"] = counts_json(d.counts);
    return j.dump();
}

std::string to_json_string(const AtwReport& r) {
    nlohmann::json j;
    j["atw"] = r.antipodal;
    j["two_weight"] = r.two_weight;
    j["d"] = r.d;
    j["d2"] = r.d2;
    j["n"] = r.dist.n;
    j["counts"] = counts_json(r.dist.counts);
    j["predicted"] = counts_json(r.predicted);
    return j.dump();
}

std::string to_json_string(const HammingTwoWeightReport& r) {
    nlohmann::json j;
    j["two_weight"] = r.two_weight;
    j["antipodal"] = r.antipodal;
    j["w1"] = r.w1;
    j["w2"] = r.w2;
    j["n"] = r.dist.n;
    j["counts"] = counts_json(r.dist.counts);
    return j.dump();
}

}  // namespace rmc
