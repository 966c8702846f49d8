#ifndef NORMGRAPH_GF_HPP
#define NORMGRAPH_GF_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace normgraph {

/// An element of F_{p^d}, stored as the coefficient vector of a residue
/// polynomial mod the field modulus, low degree first. Every coefficient
/// lies in [0, p); two elements are equal iff their vectors are equal.
class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(std::vector<uint32_t> coeffs) : c_(std::move(coeffs)) {}

    const std::vector<uint32_t>& coeffs() const { return c_; }
    uint32_t coeff(size_t i) const { return c_[i]; }
    size_t degree_bound() const { return c_.size(); }

    bool is_zero() const {
        for (uint32_t v : c_)
            if (v != 0) return false;
        return true;
    }

    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return c_ != o.c_; }

private:
    std::vector<uint32_t> c_;
};

/// Finds the lexicographically smallest monic irreducible polynomial of
/// degree d over F_p, comparing coefficient tuples (c_{d-1},...,c_0).
/// Returned low degree first with leading coefficient 1 at index d.
/// For d = 1 this is x.
std::vector<uint32_t> find_irreducible(uint32_t p, uint32_t d);

/// True iff f (low degree first, monic) is irreducible over F_p. Trial
/// division by every monic polynomial of degree 1..deg(f)/2.
bool is_irreducible(uint32_t p, const std::vector<uint32_t>& f);

bool is_prime(uint64_t n);

/// The tower F_p <= F_q <= F_{q^{t-1}} with q = p^h, realized as the single
/// extension F_p[x]/(modulus) of degree d = h*(t-1). The subfield F_q is not
/// a separate type: membership is a^q = a. Immutable after construction and
/// safe to share across threads; all operations are pure.
class FieldCtx {
public:
    /// Validates p prime, h >= 1, t >= 2 and p^d within the overflow cap,
    /// then selects the canonical modulus via find_irreducible(p, d).
    FieldCtx(uint32_t p, uint32_t h, uint32_t t);

    uint32_t p() const { return p_; }
    uint32_t h() const { return h_; }
    uint32_t t() const { return t_; }
    uint64_t q() const { return q_; }
    uint32_t degree() const { return d_; }      // d = h*(t-1)
    uint64_t big_order() const { return big_order_; } // p^d = q^(t-1)
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(uint64_t v) const; // v reduced mod p into the constant term

    /// Canonical rank of an element: sum c_i * p^i. Rank order coincides with
    /// lexicographic order on (c_{d-1},...,c_0), the canonical element order.
    uint64_t rank(const FieldElement& a) const;
    FieldElement element(uint64_t rank) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    /// Throws std::domain_error on zero input.
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, unsigned __int128 e) const;

    /// a^(q^e), the e-th power of the q-Frobenius.
    FieldElement frobenius_q(const FieldElement& a, uint32_t e) const;

    /// N(a) = a^(1+q+...+q^(t-2)), the norm F_{q^(t-1)} -> F_q.
    FieldElement norm(const FieldElement& a) const;

    /// True iff a^q = a, i.e. a lies in the subfield F_q.
    bool in_subfield(const FieldElement& a) const;

    /// The q elements of F_q in canonical (strictly increasing rank) order.
    std::vector<FieldElement> subfield_elements() const;

    /// Text form "c0,c1,...,c_{d-1}", low degree first.
    std::string to_string(const FieldElement& a) const;
    FieldElement parse(const std::string& text) const;

private:
    uint32_t p_, h_, t_, d_;
    uint64_t q_, big_order_;
    std::vector<uint32_t> modulus_;
};

} // namespace normgraph

#endif
