#include "rmc/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmc {

namespace {

constexpr u64 kMaxOrder = u64(1) << 62;
constexpr u64 kTableLimit = u64(1) << 16;

// ---- scalar arithmetic mod p ----

u64 sinv(u64 a, u64 p) {
    // extended Euclid; a in (0, p), p prime
    long long t = 0, nt = 1;
    long long r = (long long)p, nr = (long long)a;
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += (long long)p;
    return (u64)t;
}

// ---- dense polynomials over F_p: digit vectors, low degree first ----

using Poly = std::vector<u64>;

void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly psub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    ptrim(r);
    return r;
}

// a*b mod f, f monic
Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
    }
    size_t df = f.size() - 1;
    for (size_t i = c.size(); i-- > df;) {
        u64 ci = c[i];
        if (ci) {
            for (size_t j = 0; j < df; ++j)
                c[i - df + j] = (c[i - df + j] + p - (ci * f[j]) % p) % p;
            c[i] = 0;
        }
    }
    if (c.size() > df) c.resize(df);
    ptrim(c);
    return c;
}

Poly ppowmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r = {1};
    while (e) {
        if (e & 1) r = pmulmod(r, base, f, p);
        base = pmulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly pgcd(Poly a, Poly b, u64 p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        u64 lead = b.back();
        if (lead != 1) {
            u64 il = sinv(lead, p);
            for (auto& x : b) x = x * il % p;
        }
        while (a.size() >= b.size()) {
            u64 ca = a.back();
            if (ca) {
                size_t off = a.size() - b.size();
                for (size_t j = 0; j < b.size(); ++j)
                    a[off + j] = (a[off + j] + p - ca * b[j] % p) % p;
            }
            a.pop_back();
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> ps;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

namespace detail {

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool poly_irreducible(u64 p, unsigned degree, u64 encoded) {
    if (degree == 0) return false;
    Poly f(degree + 1);
    u64 t = encoded;
    for (unsigned i = 0; i <= degree; ++i) {
        f[i] = t % p;
        t /= p;
    }
    if (t != 0 || f[degree] != 1) return false;
    if (degree == 1) return true;

    // Rabin test: x^{p^degree} = x (mod f), and x^{p^{degree/r}} - x coprime
    // to f for each prime r dividing the degree.
    std::vector<u64> rs = prime_factors(degree);
    std::vector<char> mark(degree + 1, 0);
    for (u64 r : rs) mark[degree / r] = 1;

    const Poly x = {0, 1};
    Poly fr = x;
    for (unsigned s = 1; s <= degree; ++s) {
        fr = ppowmod(fr, p, f, p);
        if (s < degree && mark[s]) {
            Poly g = pgcd(psub(fr, x, p), f, p);
            if (g.size() > 1) return false;
        }
    }
    return fr == x;
}

}  // namespace detail

// ---- Field ----

Field::Field(u64 p, unsigned degree, u64 modulus)
    : p_(p), degree_(degree), modulus_(modulus) {
    order_ = 1;
    for (unsigned i = 0; i < degree; ++i) order_ *= p;
    if (order_ <= kTableLimit) build_tables();
}

FieldPtr Field::canonical(u64 p, unsigned degree) {
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("field characteristic must be prime");
    if (degree == 0) throw std::invalid_argument("extension degree must be positive");
    u64 order = 1;
    for (unsigned i = 0; i < degree; ++i) {
        if (order > kMaxOrder / p) throw std::invalid_argument("field order exceeds supported bound 2^62");
        order *= p;
    }
    if (order >= kMaxOrder) throw std::invalid_argument("field order exceeds supported bound 2^62");
    for (u64 m = order; m < 2 * order; ++m)
        if (detail::poly_irreducible(p, degree, m))
            return FieldPtr(new Field(p, degree, m));
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

FieldPtr Field::with_modulus(u64 p, unsigned degree, u64 modulus) {
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("field characteristic must be prime");
    if (degree == 0) throw std::invalid_argument("extension degree must be positive");
    u64 order = 1;
    for (unsigned i = 0; i < degree; ++i) {
        if (order > kMaxOrder / p) throw std::invalid_argument("field order exceeds supported bound 2^62");
        order *= p;
    }
    if (order >= kMaxOrder) throw std::invalid_argument("field order exceeds supported bound 2^62");
    if (!detail::poly_irreducible(p, degree, modulus))
        throw std::invalid_argument("modulus is not a monic irreducible of the stated degree");
    return FieldPtr(new Field(p, degree, modulus));
}

void Field::build_tables() {
    u64 n = order_ - 1;
    std::vector<u64> rs = prime_factors(n);
    u64 g = 0;
    for (u64 cand = 1; cand < order_; ++cand) {
        bool ok = true;
        for (u64 r : rs)
            if (pow_nocache(cand, n / r) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    generator_.store(g, std::memory_order_relaxed);
    exp_.resize(n);
    log_.assign(order_, 0);
    u64 cur = 1;
    for (u64 i = 0; i < n; ++i) {
        exp_[i] = (std::uint32_t)cur;
        log_[cur] = (std::uint32_t)i;
        cur = mul_nocache(cur, g);
    }
    has_tables_ = true;
}

u64 Field::add(u64 a, u64 b) const {
    if (p_ == 2) return a ^ b;
    u64 r = 0, mult = 1;
    while (a || b) {
        u64 da = a % p_, db = b % p_;
        r += ((da + db) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

u64 Field::neg(u64 a) const {
    if (p_ == 2) return a;
    u64 r = 0, mult = 1;
    while (a) {
        u64 da = a % p_;
        r += ((p_ - da) % p_) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

u64 Field::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 Field::mul(u64 a, u64 b) const {
    if (has_tables_) {
        if (a == 0 || b == 0) return 0;
        u64 n = order_ - 1;
        return exp_[(log_[a] + log_[b]) % n];
    }
    return mul_nocache(a, b);
}

u64 Field::mul_nocache(u64 a, u64 b) const {
    if (p_ == 2) {
        u64 r = 0;
        const u64 top = u64(1) << degree_;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a & top) a ^= modulus_;
        }
        return r;
    }
    const unsigned D = degree_;
    std::vector<u64> da(D), db(D), m(D), c(2 * D - 1, 0);
    u64 t = a;
    for (unsigned i = 0; i < D; ++i) { da[i] = t % p_; t /= p_; }
    t = b;
    for (unsigned i = 0; i < D; ++i) { db[i] = t % p_; t /= p_; }
    t = modulus_;
    for (unsigned i = 0; i < D; ++i) { m[i] = t % p_; t /= p_; }
    for (unsigned i = 0; i < D; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < D; ++j) {
            if (!db[j]) continue;
            c[i + j] = (c[i + j] + da[i] * db[j]) % p_;
        }
    }
    for (unsigned i = 2 * D - 1; i-- > D;) {
        u64 ci = c[i];
        if (ci) {
            for (unsigned j = 0; j < D; ++j)
                c[i - D + j] = (c[i - D + j] + p_ - (ci * m[j]) % p_) % p_;
            c[i] = 0;
        }
    }
    u64 r = 0, mult = 1;
    for (unsigned i = 0; i < D; ++i) {
        r += c[i] * mult;
        mult *= p_;
    }
    return r;
}

u64 Field::inv(u64 a) const {
    if (a == 0) throw std::invalid_argument("inversion of zero");
    if (has_tables_) {
        u64 n = order_ - 1;
        return exp_[(n - log_[a]) % n];
    }
    return pow_nocache(a, order_ - 2);
}

u64 Field::pow(u64 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (has_tables_) {
        u64 n = order_ - 1;
        return exp_[(u64)log_[a] * (e % n) % n];
    }
    return pow_nocache(a, e);
}

u64 Field::pow_nocache(u64 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul_nocache(r, a);
        a = mul_nocache(a, a);
        e >>= 1;
    }
    return r;
}

u64 Field::frobenius(u64 a, u64 Q) const {
    u64 t = Q;
    if (t < p_) throw std::invalid_argument("frobenius exponent must be a positive power of p");
    while (t % p_ == 0) t /= p_;
    if (t != 1) throw std::invalid_argument("frobenius exponent must be a positive power of p");
    return pow(a, Q);
}

u64 Field::generator() const {
    u64 g = generator_.load(std::memory_order_relaxed);
    if (g != 0 || order_ == 2) {
        if (order_ == 2) return 1;
        return g;
    }
    u64 n = order_ - 1;
    std::vector<u64> rs = prime_factors(n);
    for (u64 cand = 1; cand < order_; ++cand) {
        bool ok = true;
        for (u64 r : rs)
            if (pow_nocache(cand, n / r) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            generator_.store(cand, std::memory_order_relaxed);
            return cand;
        }
    }
    throw std::logic_error("no generator found");  // unreachable
}

std::vector<u64> Field::digits(u64 a) const {
    std::vector<u64> d(degree_);
    for (unsigned i = 0; i < degree_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

u64 Field::from_digits(const std::vector<u64>& d) const {
    if (d.size() > degree_) throw std::invalid_argument("digit vector longer than field degree");
    u64 r = 0, mult = 1;
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] >= p_) throw std::invalid_argument("digit out of range");
        r += d[i] * mult;
        mult *= p_;
    }
    return r;
}

u64 Field::class_of_x() const {
    if (degree_ >= 2) return p_;
    return (p_ - (modulus_ - p_)) % p_;  // root of the linear modulus x + c0
}

std::string Field::spec() const {
    return std::to_string(p_) + "^" + std::to_string(degree_) + ":" + std::to_string(modulus_);
}

// ---- Element ----

Element::Element(FieldPtr field, u64 repr) : field_(std::move(field)), repr_(repr) {
    if (!field_) throw std::invalid_argument("element requires a field");
    if (repr_ >= field_->order()) throw std::invalid_argument("element repr out of range");
}

static void check_owner(const Element& a, const Element& b) {
    if (!a.field()->same(*b.field())) throw std::invalid_argument("element owner mismatch");
}

Element operator+(const Element& a, const Element& b) {
    check_owner(a, b);
    return Element(a.field(), a.field()->add(a.repr(), b.repr()));
}

Element operator-(const Element& a, const Element& b) {
    check_owner(a, b);
    return Element(a.field(), a.field()->sub(a.repr(), b.repr()));
}

Element operator*(const Element& a, const Element& b) {
    check_owner(a, b);
    return Element(a.field(), a.field()->mul(a.repr(), b.repr()));
}

Element Element::operator-() const { return Element(field_, field_->neg(repr_)); }
Element Element::inverse() const { return Element(field_, field_->inv(repr_)); }
Element Element::pow(u64 e) const { return Element(field_, field_->pow(repr_, e)); }
Element Element::frobenius(u64 Q) const { return Element(field_, field_->frobenius(repr_, Q)); }

bool Element::operator==(const Element& o) const {
    return field_->same(*o.field_) && repr_ == o.repr_;
}

// ---- F_p linear solving used by Embedding ----

namespace {

// Solve A t = rhs over F_p where A has the given columns (digit vectors of
// common length).  Status: 0 ok, 1 dependent columns, 2 inconsistent.
int fp_solve(u64 p, const std::vector<std::vector<u64>>& cols,
             const std::vector<u64>& rhs, std::vector<u64>& out) {
    const size_t rows = rhs.size(), nc = cols.size();
    std::vector<std::vector<u64>> a(rows, std::vector<u64>(nc + 1, 0));
    for (size_t j = 0; j < nc; ++j)
        for (size_t i = 0; i < rows; ++i) a[i][j] = cols[j][i];
    for (size_t i = 0; i < rows; ++i) a[i][nc] = rhs[i];

    std::vector<size_t> pivot_row(nc, SIZE_MAX);
    size_t r = 0;
    for (size_t c = 0; c < nc && r < rows; ++c) {
        size_t pr = SIZE_MAX;
        for (size_t i = r; i < rows; ++i)
            if (a[i][c]) {
                pr = i;
                break;
            }
        if (pr == SIZE_MAX) continue;
        std::swap(a[r], a[pr]);
        u64 il = sinv(a[r][c], p);
        for (size_t j = c; j <= nc; ++j) a[r][j] = a[r][j] * il % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || !a[i][c]) continue;
            u64 f = a[i][c];
            for (size_t j = c; j <= nc; ++j) a[i][j] = (a[i][j] + p - a[r][j] * f % p) % p;
        }
        pivot_row[c] = r;
        ++r;
    }
    for (size_t c = 0; c < nc; ++c)
        if (pivot_row[c] == SIZE_MAX) return 1;
    for (size_t i = r; i < rows; ++i)
        if (a[i][nc]) return 2;
    out.assign(nc, 0);
    for (size_t c = 0; c < nc; ++c) out[c] = a[pivot_row[c]][nc];
    return 0;
}

}  // namespace

// ---- Embedding ----

Embedding Embedding::build(FieldPtr sub, FieldPtr sup) {
    if (!sub || !sup) throw std::invalid_argument("embedding requires two fields");
    if (sub->p() != sup->p()) throw std::invalid_argument("embedding requires equal characteristic");
    if (sup->degree() % sub->degree() != 0)
        throw std::invalid_argument("subfield degree must divide extension degree");

    const u64 p = sub->p();
    const unsigned dsub = sub->degree(), dsup = sup->degree();

    // Smallest-repr root of sub's modulus in sup.
    std::vector<u64> coeffs(dsub + 1);
    u64 t = sub->modulus();
    for (unsigned i = 0; i <= dsub; ++i) {
        coeffs[i] = t % p;
        t /= p;
    }
    u64 root = 0;
    bool found = false;
    for (u64 z = 0; z < sup->order(); ++z) {
        u64 acc = 0;
        for (unsigned i = dsub + 1; i-- > 0;) acc = sup->add(sup->mul(acc, z), coeffs[i]);
        if (acc == 0) {
            root = z;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no root of subfield modulus in extension");

    Embedding e;
    e.sub_ = std::move(sub);
    e.sup_ = std::move(sup);
    e.gen_image_ = root;
    e.ratio_ = dsup / dsub;

    e.sub_monomial_images_.resize(dsub);
    for (unsigned j = 0; j < dsub; ++j) e.sub_monomial_images_[j] = e.sup_->pow(root, j);

    // Invert the F_p change of basis from the product basis
    // {map(x_sub^j) * y^i} to sup digits (columns indexed i*dsub + j).
    const u64 y = e.sup_->class_of_x();
    std::vector<std::vector<u64>> cols(dsup);
    for (unsigned i = 0; i < e.ratio_; ++i) {
        u64 yi = e.sup_->pow(y, i);
        for (unsigned j = 0; j < dsub; ++j)
            cols[i * dsub + j] = e.sup_->digits(e.sup_->mul(e.sub_monomial_images_[j], yi));
    }
    e.inv_.assign(dsup, std::vector<u64>(dsup, 0));
    for (unsigned k = 0; k < dsup; ++k) {
        std::vector<u64> rhs(dsup, 0), sol;
        rhs[k] = 1;
        if (fp_solve(p, cols, rhs, sol) != 0)
            throw std::logic_error("tower product basis is singular");
        for (unsigned i = 0; i < dsup; ++i) e.inv_[i][k] = sol[i];
    }
    return e;
}

u64 Embedding::map(u64 a) const {
    if (a >= sub_->order()) throw std::invalid_argument("element repr out of range");
    std::vector<u64> d = sub_->digits(a);
    u64 acc = 0;
    for (unsigned j = sub_->degree(); j-- > 0;) acc = sup_->add(sup_->mul(acc, gen_image_), d[j]);
    return acc;
}

bool Embedding::in_image(u64 z) const {
    if (z >= sup_->order()) throw std::invalid_argument("element repr out of range");
    return sup_->frobenius(z, sub_->order()) == z;
}

std::vector<u64> Embedding::monomial_basis() const {
    std::vector<u64> b(ratio_);
    u64 cur = 1;
    for (unsigned i = 0; i < ratio_; ++i) {
        b[i] = cur;
        cur *= sup_->p();
    }
    return b;
}

std::vector<u64> Embedding::coords(u64 a) const {
    if (a >= sup_->order()) throw std::invalid_argument("element repr out of range");
    const unsigned dsub = sub_->degree(), dsup = sup_->degree();
    std::vector<u64> d = sup_->digits(a), t(dsup, 0);
    const u64 p = sup_->p();
    for (unsigned i = 0; i < dsup; ++i) {
        u64 acc = 0;
        for (unsigned k = 0; k < dsup; ++k) acc = (acc + inv_[i][k] * d[k]) % p;
        t[i] = acc;
    }
    std::vector<u64> c(ratio_);
    for (unsigned i = 0; i < ratio_; ++i) {
        std::vector<u64> part(t.begin() + i * dsub, t.begin() + (i + 1) * dsub);
        c[i] = sub_->from_digits(part);
    }
    return c;
}

u64 Embedding::preimage(u64 z) const {
    std::vector<u64> c = coords(z);
    for (unsigned i = 1; i < ratio_; ++i)
        if (c[i] != 0) throw std::invalid_argument("element not in the embedded subfield");
    return c[0];
}

u64 Embedding::from_coords(const std::vector<u64>& c) const {
    if (c.size() != ratio_) throw std::invalid_argument("coordinate vector has wrong length");
    const u64 y = sup_->class_of_x();
    u64 acc = 0;
    for (unsigned i = ratio_; i-- > 0;) acc = sup_->add(sup_->mul(acc, y), map(c[i]));
    return acc;
}

std::vector<u64> Embedding::coords_in_basis(u64 a, const std::vector<u64>& basis) const {
    if (a >= sup_->order()) throw std::invalid_argument("element repr out of range");
    if (basis.empty()) throw std::invalid_argument("empty basis");
    const unsigned dsub = sub_->degree();
    const u64 p = sup_->p();
    std::vector<std::vector<u64>> cols;
    cols.reserve(basis.size() * dsub);
    for (u64 b : basis) {
        if (b >= sup_->order()) throw std::invalid_argument("basis repr out of range");
        for (unsigned j = 0; j < dsub; ++j)
            cols.push_back(sup_->digits(sup_->mul(b, sub_monomial_images_[j])));
    }
    std::vector<u64> sol;
    int st = fp_solve(p, cols, sup_->digits(a), sol);
    if (st == 1) throw std::invalid_argument("basis is dependent over the subfield");
    if (st == 2) throw std::invalid_argument("element outside the basis span");
    std::vector<u64> c(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        std::vector<u64> part(sol.begin() + i * dsub, sol.begin() + (i + 1) * dsub);
        c[i] = sub_->from_digits(part);
    }
    return c;
}

}  // namespace rmc
