#include "normgraph/gf.hpp"

#include <algorithm>
#include <stdexcept>

#include "normgraph/errors.hpp"

namespace normgraph {

namespace {

// Dense polynomial arithmetic over F_p, low degree first, no implicit
// normalization of trailing zeros unless stated.

std::vector<uint32_t> poly_trim(std::vector<uint32_t> f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

std::vector<uint32_t> poly_mul(const std::vector<uint32_t>& a,
                               const std::vector<uint32_t>& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + uint64_t(a[i]) * b[j]) % p;
    }
    return r;
}

// Remainder of f by monic g.
std::vector<uint32_t> poly_mod(std::vector<uint32_t> f,
                               const std::vector<uint32_t>& g, uint32_t p) {
    f = poly_trim(std::move(f));
    const size_t dg = g.size() - 1;
    while (f.size() > dg) {
        uint32_t lead = f.back();
        size_t shift = f.size() - 1 - dg;
        if (lead != 0) {
            for (size_t i = 0; i < dg; ++i) {
                uint64_t sub = uint64_t(lead) * g[i] % p;
                uint64_t cur = f[shift + i];
                f[shift + i] = uint32_t((cur + p - sub) % p);
            }
        }
        f.pop_back();
        while (!f.empty() && f.back() == 0) f.pop_back();
    }
    return f;
}

uint32_t mod_inverse(uint32_t a, uint32_t p) {
    // Fermat; p prime and small.
    uint64_t r = 1, b = a % p;
    uint32_t e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return uint32_t(r);
}

} // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

bool is_irreducible(uint32_t p, const std::vector<uint32_t>& f) {
    const std::vector<uint32_t> ft = poly_trim(f);
    if (ft.size() < 2) return false; // constants are units/zero
    if (ft.back() != 1) throw std::invalid_argument("is_irreducible: polynomial must be monic");
    const size_t d = ft.size() - 1;
    if (d == 1) return true;
    // Trial division by every monic divisor candidate of degree 1..d/2.
    for (size_t dd = 1; dd <= d / 2; ++dd) {
        uint64_t count = 1;
        for (size_t i = 0; i < dd; ++i) count *= p;
        for (uint64_t m = 0; m < count; ++m) {
            std::vector<uint32_t> g(dd + 1, 0);
            uint64_t v = m;
            for (size_t i = 0; i < dd; ++i) {
                g[i] = uint32_t(v % p);
                v /= p;
            }
            g[dd] = 1;
            if (poly_mod(ft, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<uint32_t> find_irreducible(uint32_t p, uint32_t d) {
    if (!is_prime(p)) throw std::invalid_argument("find_irreducible: p must be prime");
    if (d < 1) throw std::invalid_argument("find_irreducible: degree must be >= 1");
    // Lex order on (c_{d-1},...,c_0) equals numeric order of sum c_i p^i,
    // so scanning m = 0,1,2,... visits candidates in canonical order.
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p;
    for (uint64_t m = 0; m < count; ++m) {
        std::vector<uint32_t> f(d + 1, 0);
        uint64_t v = m;
        for (uint32_t i = 0; i < d; ++i) {
            f[i] = uint32_t(v % p);
            v /= p;
        }
        f[d] = 1;
        if (is_irreducible(p, f)) return f;
    }
    throw std::logic_error("find_irreducible: no irreducible polynomial found"); // unreachable
}

FieldCtx::FieldCtx(uint32_t p, uint32_t h, uint32_t t) : p_(p), h_(h), t_(t) {
    if (!is_prime(p)) throw std::invalid_argument("FieldCtx: p must be prime");
    if (h < 1) throw std::invalid_argument("FieldCtx: h must be >= 1");
    if (t < 2) throw std::invalid_argument("FieldCtx: t must be >= 2");
    d_ = h * (t - 1);
    // Overflow cap: ranks, orders and norm exponents stay inside uint64.
    unsigned __int128 order = 1;
    for (uint32_t i = 0; i < d_; ++i) {
        order *= p;
        if (order > (unsigned __int128)1 << 40)
            throw CapacityError("FieldCtx: p^(h*(t-1)) exceeds the 2^40 field size cap");
    }
    big_order_ = uint64_t(order);
    q_ = 1;
    for (uint32_t i = 0; i < h; ++i) q_ *= p;
    modulus_ = find_irreducible(p, d_);
}

FieldElement FieldCtx::zero() const { return FieldElement(std::vector<uint32_t>(d_, 0)); }

FieldElement FieldCtx::one() const {
    std::vector<uint32_t> c(d_, 0);
    c[0] = 1 % p_;
    return FieldElement(std::move(c));
}

FieldElement FieldCtx::from_int(uint64_t v) const {
    std::vector<uint32_t> c(d_, 0);
    c[0] = uint32_t(v % p_);
    return FieldElement(std::move(c));
}

uint64_t FieldCtx::rank(const FieldElement& a) const {
    uint64_t r = 0;
    for (size_t i = a.coeffs().size(); i-- > 0;) r = r * p_ + a.coeff(i);
    return r;
}

FieldElement FieldCtx::element(uint64_t rank) const {
    std::vector<uint32_t> c(d_, 0);
    for (uint32_t i = 0; i < d_; ++i) {
        c[i] = uint32_t(rank % p_);
        rank /= p_;
    }
    if (rank != 0) throw std::invalid_argument("FieldCtx::element: rank out of range");
    return FieldElement(std::move(c));
}

FieldElement FieldCtx::add(const FieldElement& a, const FieldElement& b) const {
    std::vector<uint32_t> c(d_);
    for (uint32_t i = 0; i < d_; ++i) c[i] = (a.coeff(i) + b.coeff(i)) % p_;
    return FieldElement(std::move(c));
}

FieldElement FieldCtx::sub(const FieldElement& a, const FieldElement& b) const {
    std::vector<uint32_t> c(d_);
    for (uint32_t i = 0; i < d_; ++i) c[i] = (a.coeff(i) + p_ - b.coeff(i)) % p_;
    return FieldElement(std::move(c));
}

FieldElement FieldCtx::neg(const FieldElement& a) const { return sub(zero(), a); }

FieldElement FieldCtx::mul(const FieldElement& a, const FieldElement& b) const {
    std::vector<uint32_t> prod = poly_mul(a.coeffs(), b.coeffs(), p_);
    std::vector<uint32_t> rem = poly_mod(std::move(prod), modulus_, p_);
    rem.resize(d_, 0);
    return FieldElement(std::move(rem));
}

FieldElement FieldCtx::inv(const FieldElement& a) const {
    if (a.is_zero()) throw std::domain_error("FieldCtx::inv: zero has no inverse");
    // Extended Euclid in F_p[x] on (modulus, a).
    std::vector<uint32_t> r0 = modulus_, r1 = poly_trim(a.coeffs());
    std::vector<uint32_t> s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // Divide r0 by r1.
        std::vector<uint32_t> quot(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        std::vector<uint32_t> rem = r0;
        uint32_t lead_inv = mod_inverse(r1.back(), p_);
        while (rem.size() >= r1.size() && !rem.empty()) {
            uint32_t cq = uint32_t(uint64_t(rem.back()) * lead_inv % p_);
            size_t shift = rem.size() - r1.size();
            quot[shift] = cq;
            if (cq != 0)
                for (size_t i = 0; i < r1.size(); ++i) {
                    uint64_t sub_v = uint64_t(cq) * r1[i] % p_;
                    rem[shift + i] = uint32_t((rem[shift + i] + p_ - sub_v) % p_);
                }
            rem.pop_back();
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - quot*s1)
        std::vector<uint32_t> qs = poly_mul(quot, s1, p_);
        std::vector<uint32_t> s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            uint32_t x = i < s0.size() ? s0[i] : 0;
            uint32_t y = i < qs.size() ? qs[i] : 0;
            s2[i] = (x + p_ - y) % p_;
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = poly_trim(std::move(s2));
    }
    // r0 = gcd, a nonzero constant since modulus is irreducible.
    uint32_t scale = mod_inverse(r0[0], p_);
    std::vector<uint32_t> out(d_, 0);
    for (size_t i = 0; i < s0.size() && i < d_; ++i)
        out[i] = uint32_t(uint64_t(s0[i]) * scale % p_);
    return FieldElement(std::move(out));
}

FieldElement FieldCtx::pow(const FieldElement& a, unsigned __int128 e) const {
    FieldElement base = a, result = one();
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement FieldCtx::frobenius_q(const FieldElement& a, uint32_t e) const {
    const uint32_t k = t_ - 1; // a^(q^k) = a for all a in F_{q^(t-1)}
    uint32_t er = k == 0 ? 0 : e % k;
    if (er == 0) return a;
    unsigned __int128 exp = 1;
    for (uint32_t i = 0; i < er; ++i) exp *= q_;
    return pow(a, exp);
}

FieldElement FieldCtx::norm(const FieldElement& a) const {
    // 1 + q + ... + q^(t-2) = (p^d - 1)/(q - 1)
    unsigned __int128 exp = (unsigned __int128)(big_order_ - 1) / (q_ - 1);
    return pow(a, exp);
}

bool FieldCtx::in_subfield(const FieldElement& a) const { return frobenius_q(a, 1) == a; }

std::vector<FieldElement> FieldCtx::subfield_elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (uint64_t r = 0; r < big_order_; ++r) {
        FieldElement a = element(r);
        if (in_subfield(a)) out.push_back(std::move(a));
    }
    return out;
}

std::string FieldCtx::to_string(const FieldElement& a) const {
    std::string s;
    for (uint32_t i = 0; i < d_; ++i) {
        if (i) s += ',';
        s += std::to_string(a.coeff(i));
    }
    return s;
}

FieldElement FieldCtx::parse(const std::string& text) const {
    std::vector<uint32_t> c;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw std::invalid_argument("FieldCtx::parse: empty coefficient");
        c.push_back(uint32_t(std::stoul(tok)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (c.size() != d_) throw std::invalid_argument("FieldCtx::parse: expected " + std::to_string(d_) + " coefficients");
    for (uint32_t v : c)
        if (v >= p_) throw std::invalid_argument("FieldCtx::parse: coefficient out of range");
    return FieldElement(std::move(c));
}

} // namespace normgraph
