#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rmc {

using u64 = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// An extension field F_{p^D} = F_p[x]/(modulus).  Elements are integers in
// [0, p^D) whose base-p digits are the coefficients of the representative
// polynomial (digit i = coefficient of x^i).  The modulus itself is encoded
// the same way (monic, so its integer lies in [p^D, 2*p^D)).
//
// Fields are immutable and shareable across threads; all element operations
// are pure functions on integer representations.  Fields of order <= 2^16
// carry exp/log tables; larger fields use direct polynomial arithmetic
// (supported up to p^D < 2^62, p < 2^31).
class Field : public std::enable_shared_from_this<Field> {
public:
    // Field with the canonical modulus: the monic irreducible of degree D
    // over F_p with the smallest integer encoding.  Pure: same (p, D) always
    // yields the identical modulus.
    static FieldPtr canonical(u64 p, unsigned degree);

    // Field with a caller-supplied modulus (validated monic irreducible of
    // the given degree).
    static FieldPtr with_modulus(u64 p, unsigned degree, u64 modulus);

    u64 p() const { return p_; }
    unsigned degree() const { return degree_; }
    u64 order() const { return order_; }
    u64 modulus() const { return modulus_; }

    // --- element arithmetic (reprs must be < order()) ---
    u64 add(u64 a, u64 b) const;
    u64 sub(u64 a, u64 b) const;
    u64 neg(u64 a) const;
    u64 mul(u64 a, u64 b) const;
    u64 inv(u64 a) const;  // throws std::invalid_argument on 0
    u64 pow(u64 a, u64 e) const;

    // a^Q where Q must be a power of p (Q = p^s, s >= 1); a field
    // automorphism whose fixed set is F_Q intersected with this field.
    u64 frobenius(u64 a, u64 Q) const;

    // Smallest-repr primitive element (multiplicative generator).
    u64 generator() const;

    // Base-p digit vector of length degree() (digit i = coefficient of x^i).
    std::vector<u64> digits(u64 a) const;
    u64 from_digits(const std::vector<u64>& d) const;

    // The class of x: repr p for degree >= 2; for degree 1 it collapses to
    // the root of the linear modulus (0 for the canonical modulus x).
    u64 class_of_x() const;

    // "p^D:modulus" text form, e.g. "2^4:19".
    std::string spec() const;

    // Structural equality of field parameters (p, degree, modulus); distinct
    // Field objects with equal parameters are interchangeable.
    bool same(const Field& o) const {
        return p_ == o.p_ && degree_ == o.degree_ && modulus_ == o.modulus_;
    }

    ~Field() = default;
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    Field(u64 p, unsigned degree, u64 modulus);
    void build_tables();
    u64 mul_nocache(u64 a, u64 b) const;
    u64 pow_nocache(u64 a, u64 e) const;

    u64 p_;
    unsigned degree_;
    u64 order_;
    u64 modulus_;
    mutable std::atomic<u64> generator_{0};  // lazily computed when table-free
    bool has_tables_ = false;
    std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, i in [0, order-1)
    std::vector<std::uint32_t> log_;  // log_[exp_[i]] = i; log_[0] unused
};

// A checked element wrapper for call sites where owner validation matters.
// Hot paths use raw u64 reprs through Field directly.
class Element {
public:
    Element(FieldPtr field, u64 repr);

    u64 repr() const { return repr_; }
    const FieldPtr& field() const { return field_; }

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    Element operator-() const;
    Element inverse() const;
    Element pow(u64 e) const;
    Element frobenius(u64 Q) const;

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    u64 repr_;
};

// The inclusion F_{p^{D1}} -> F_{p^{D2}} (D1 | D2) sending sub's class of x
// to its smallest-repr root in sup.  Precomputes the change-of-basis data
// needed for coordinates of sup elements over sub.
class Embedding {
public:
    // Deterministic: generator_image is the smallest-repr root of sub's
    // modulus in sup.  Throws std::invalid_argument on p mismatch or degree
    // non-divisibility.
    static Embedding build(FieldPtr sub, FieldPtr sup);

    const FieldPtr& sub() const { return sub_; }
    const FieldPtr& sup() const { return sup_; }
    u64 generator_image() const { return gen_image_; }
    unsigned ratio() const { return ratio_; }  // deg(sup)/deg(sub)

    // sub -> sup homomorphism.
    u64 map(u64 a) const;

    // Membership in the image (= fixed field of frobenius by |sub|).
    bool in_image(u64 z) const;

    // Inverse of map on the image; throws std::invalid_argument outside it.
    u64 preimage(u64 z) const;

    // Monomial basis {1, y, ..., y^{ratio-1}} of sup over sub, y = sup's
    // class of x; reprs are p^i.
    std::vector<u64> monomial_basis() const;

    // Coordinates of a over sub in the monomial basis (length ratio()).
    std::vector<u64> coords(u64 a) const;
    u64 from_coords(const std::vector<u64>& c) const;

    // Coordinates of a over sub in an arbitrary sub-linearly-independent
    // basis of sup elements.  Throws std::invalid_argument if the basis is
    // sub-dependent or a lies outside its sub-span.
    std::vector<u64> coords_in_basis(u64 a, const std::vector<u64>& basis) const;

private:
    Embedding() = default;

    FieldPtr sub_;
    FieldPtr sup_;
    u64 gen_image_ = 0;
    unsigned ratio_ = 1;
    // Row-reduced solver data for the product basis {map(x_sub^j) * y^i}:
    // columns of inv_ map sup digit vectors to product-basis coordinates.
    std::vector<std::vector<u64>> inv_;  // degree(sup) x degree(sup) over F_p
    std::vector<u64> sub_monomial_images_;  // map(x_sub^j), j < deg(sub)
};

namespace detail {
// Irreducibility of a monic polynomial over F_p, encoded as base-p integer.
bool poly_irreducible(u64 p, unsigned degree, u64 encoded);
bool is_prime_u64(u64 n);
}  // namespace detail

}  // namespace rmc
