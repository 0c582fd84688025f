#include "rmc/search.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rmc {

namespace {

struct Chunk {
    u64 non_spanning = 0;
    std::map<std::string, u64> by_support;
    std::vector<Finding> findings;
};

std::string support_key(const std::vector<std::size_t>& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s[i];
    }
    return os.str();
}

// platform-stable uniform draw in [0, limit) by rejection
u64 bounded_draw(std::mt19937_64& rng, u64 limit) {
    const u64 zone = (~u64(0)) / limit * limit;
    u64 r;
    do {
        r = rng();
    } while (r >= zone);
    return r % limit;
}

}  // namespace

SearchSummary search_codes(const SearchJob& job) {
    if (job.n == 0 || job.k == 0 || job.m == 0)
        throw std::invalid_argument("search parameters must be positive");
    auto [p, e] = prime_power_decompose(job.q);
    FieldPtr sub = Field::canonical(p, e);
    FieldPtr sup = Field::canonical(p, e * job.m);
    Embedding base = Embedding::build(sub, sup);
    const unsigned N = job.m * job.k;
    if (job.n > N) throw std::invalid_argument("system dimension exceeds the ambient space");
    SubspaceEnumerator subspaces(sub, N, job.n);

    std::vector<u64> indices;
    if (job.exhaustive) {
        if (subspaces.count() > job.budget)
            throw BudgetExceeded("exhaustive search", subspaces.count(), job.budget);
    } else {
        if (job.sample_count > job.budget)
            throw BudgetExceeded("sampled search", job.sample_count, job.budget);
        std::mt19937_64 rng(job.seed);
        indices.reserve(job.sample_count);
        for (u64 i = 0; i < job.sample_count; ++i)
            indices.push_back(bounded_draw(rng, subspaces.count()));
    }
    const u64 total = job.exhaustive ? subspaces.count() : job.sample_count;
    const std::size_t n = job.n, k = job.k;
    const unsigned m = job.m;
    const u64 qm = sup->order();
    const u64 weight_reps = projective_rep_count(qm, k);

    auto examine = [&](u64 slot, Chunk& out) {
        const u64 index = job.exhaustive ? slot : indices[slot];
        Subspace S = subspaces.at(index);
        // fold each RREF basis row into a generator column over the extension field
        Mat G(sup, k, n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<u64> row = S.basis().row(j);
            for (std::size_t c = 0; c < k; ++c)
                G.at(c, j) = base.from_coords(
                    std::vector<u64>(row.begin() + c * m, row.begin() + (c + 1) * m));
        }
        if (mat_rank(G) < k) {
            ++out.non_spanning;
            return;
        }
        std::map<std::size_t, u64> counts;
        for (u64 i = 0; i < weight_reps; ++i) {
            std::vector<u64> word = vec_mat(projective_rep_at(sup, k, i), G);
            counts[rank_over_subfield(word, base)] += 1;
        }
        std::vector<std::size_t> support;
        for (const auto& [w, c] : counts)
            if (w > 0) support.push_back(w);
        out.by_support[support_key(support)] += 1;

        const bool two_weight = support.size() == 2;
        const std::size_t d = support.empty() ? 0 : support.front();
        const bool atw = two_weight && support.back() == n && support.front() < n;
        if (atw) {
            if (k != 2)
                throw std::logic_error("search invariant violated: antipodal finding of dimension > 2");
            if (2 * d < n)
                throw std::logic_error("search invariant violated: antipodal finding with d < n/2");
            if (n % (n - d) != 0)
                throw std::logic_error("search invariant violated: (n-d) does not divide n");
        }
        if (job.atw_only && !atw) return;
        if (job.two_weight_only && !two_weight) return;
        out.findings.push_back(Finding{index, std::move(support), atw, d});
    };

    SearchSummary summary;
    summary.examined = total;
    unsigned T = job.threads <= 1 ? 1 : (unsigned)std::min<u64>(job.threads, std::max<u64>(1, total / 64));
    if (T <= 1) {
        Chunk c;
        for (u64 i = 0; i < total; ++i) examine(i, c);
        summary.non_spanning = c.non_spanning;
        summary.by_support = std::move(c.by_support);
        summary.findings = std::move(c.findings);
        return summary;
    }
    std::vector<Chunk> parts(T);
    std::vector<std::exception_ptr> errors(T);
    std::vector<std::thread> pool;
    const u64 chunk = (total + T - 1) / T;
    for (unsigned t = 0; t < T; ++t) {
        u64 lo = std::min<u64>(total, t * chunk);
        u64 hi = std::min<u64>(total, lo + chunk);
        pool.emplace_back([&, t, lo, hi] {
            try {
                for (u64 i = lo; i < hi; ++i) examine(i, parts[t]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const std::exception_ptr& err : errors)
        if (err) std::rethrow_exception(err);
    for (Chunk& c : parts) {
        summary.non_spanning += c.non_spanning;
        for (const auto& [key, cnt] : c.by_support) summary.by_support[key] += cnt;
        summary.findings.insert(summary.findings.end(),
                                std::make_move_iterator(c.findings.begin()),
                                std::make_move_iterator(c.findings.end()));
    }
    return summary;
}

}  // namespace rmc
