#include "pgcycles/gf.hpp"

#include <algorithm>

namespace pgc {
namespace {

using Poly = std::vector<std::uint32_t>;  // coefficient of x^i at index i

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    }
    return -1;
}

// Remainder of f by the monic divisor g, both over GF(p).
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    const int dg = degree(g);
    for (int i = degree(f); i >= dg; --i) {
        const std::uint64_t c = f[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            auto& slot = f[static_cast<std::size_t>(i - dg + j)];
            const std::uint64_t sub = c * g[static_cast<std::size_t>(j)] % p;
            slot = static_cast<std::uint32_t>((slot + p - sub) % p);
        }
    }
    f.resize(static_cast<std::size_t>(dg > 0 ? dg : 1), 0);
    return f;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
    const int df = degree(f);
    if (df <= 0) return false;
    if (df == 1) return true;
    // Trial division by every monic polynomial of degree 1..df/2.
    for (int d = 1; d <= df / 2; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(static_cast<std::size_t>(d) + 1, 0);
            std::uint64_t t = idx;
            for (int i = 0; i < d; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            g[static_cast<std::size_t>(d)] = 1;
            if (degree(poly_mod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

bool factor_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& e) {
    if (q < 2) return false;
    std::uint32_t base = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            base = d;
            break;
        }
    }
    if (base == 0) {
        p = q;
        e = 1;
        return true;
    }
    std::uint32_t rest = q;
    std::uint32_t exp = 0;
    while (rest % base == 0) {
        rest /= base;
        ++exp;
    }
    if (rest != 1) return false;
    p = base;
    e = exp;
    return true;
}

Field Field::make(std::uint32_t p, std::uint32_t e) {
    if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p) + " is not prime");
    if (e < 1) throw InvalidField("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxQ) throw SizeExceeded("field size p^e exceeds 2^20");
    }

    auto d = std::make_shared<Data>();
    d->p = p;
    d->e = e;
    d->q = static_cast<std::uint32_t>(q);
    if (e == 1) {
        d->modulus = {0, 1};  // x
        return Field(std::move(d));
    }
    // Scan monic degree-e polynomials in ascending lexicographic order of
    // (c_0, ..., c_{e-1}) with the constant term most significant.
    std::vector<std::uint32_t> c(e, 0);
    for (;;) {
        Poly f(e + 1, 0);
        for (std::uint32_t i = 0; i < e; ++i) f[i] = c[i];
        f[e] = 1;
        if (is_irreducible(f, p)) {
            d->modulus = std::move(f);
            return Field(std::move(d));
        }
        int pos = static_cast<int>(e) - 1;  // least significant position
        while (pos >= 0) {
            if (++c[static_cast<std::size_t>(pos)] < p) break;
            c[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) throw InternalError("no irreducible polynomial found");
    }
}

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p) + " is not prime");
    if (e < 1) throw InvalidField("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxQ) throw SizeExceeded("field size p^e exceeds 2^20");
    }
    if (modulus.size() != static_cast<std::size_t>(e) + 1)
        throw InvalidField("modulus must have degree e");
    for (auto c : modulus) {
        if (c >= p) throw InvalidField("modulus coefficient out of range");
    }
    if (modulus[e] != 1) throw InvalidField("modulus must be monic");
    if (e == 1) {
        if (modulus[0] != 0) throw InvalidField("prime-field modulus must be x");
    } else if (!is_irreducible(modulus, p)) {
        throw InvalidField("modulus is reducible");
    }
    auto d = std::make_shared<Data>();
    d->p = p;
    d->e = e;
    d->q = static_cast<std::uint32_t>(q);
    d->modulus = std::move(modulus);
    d_ = std::move(d);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
    std::vector<std::uint32_t> c(d_->e, 0);
    for (std::uint32_t i = 0; i < d_->e; ++i) {
        c[i] = a % d_->p;
        a /= d_->p;
    }
    return c;
}

Elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != d_->e) throw InvalidField("coefficient vector has wrong length");
    Elem v = 0;
    for (std::uint32_t i = d_->e; i-- > 0;) {
        if (c[i] >= d_->p) throw InvalidField("coefficient out of range");
        v = v * d_->p + c[i];
    }
    return v;
}

Elem Field::add(Elem a, Elem b) const {
    const std::uint32_t p = d_->p;
    Elem out = 0;
    Elem scale = 1;
    for (std::uint32_t i = 0; i < d_->e; ++i) {
        out += (a % p + b % p) % p * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return out;
}

Elem Field::neg(Elem a) const {
    const std::uint32_t p = d_->p;
    Elem out = 0;
    Elem scale = 1;
    for (std::uint32_t i = 0; i < d_->e; ++i) {
        out += (p - a % p) % p * scale;
        a /= p;
        scale *= p;
    }
    return out;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
    const std::uint32_t p = d_->p;
    const std::uint32_t e = d_->e;
    if (e == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p);
    // Polynomial product followed by reduction modulo the field modulus.
    std::vector<std::uint64_t> prod(2 * e - 1, 0);
    const auto ca = coeffs(a);
    const auto cb = coeffs(b);
    for (std::uint32_t i = 0; i < e; ++i) {
        if (ca[i] == 0) continue;
        for (std::uint32_t j = 0; j < e; ++j) {
            prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
        }
    }
    const auto& m = d_->modulus;
    for (std::uint32_t i = 2 * e - 2; i >= e; --i) {
        const std::uint64_t c = prod[i] % p;
        prod[i] = 0;
        if (c == 0) continue;
        for (std::uint32_t j = 0; j < e; ++j) {
            prod[i - e + j] += c * (p - m[j]);
        }
    }
    Elem out = 0;
    Elem scale = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        out += static_cast<Elem>(prod[i] % p) * scale;
        scale *= p;
    }
    return out;
}

Elem Field::pow(Elem a, std::uint64_t m) const {
    Elem result = 1;
    Elem base = a;
    while (m > 0) {
        if (m & 1) result = mul(result, base);
        base = mul(base, base);
        m >>= 1;
    }
    return result;
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    return pow(a, d_->q - 2);
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(d_->q);
    for (std::uint32_t i = 0; i < d_->q; ++i) out[i] = i;
    return out;
}

std::uint32_t Field::multiplicative_order(Elem a) const {
    if (a == 0) throw DivisionByZero("order of zero");
    const std::uint32_t group = d_->q - 1;
    std::uint32_t order = group;
    std::uint32_t rest = group;
    for (std::uint32_t f = 2; f * f <= rest; ++f) {
        if (rest % f != 0) continue;
        while (rest % f == 0) rest /= f;
        while (order % f == 0 && pow(a, order / f) == 1) order /= f;
    }
    if (rest > 1) {
        while (order % rest == 0 && pow(a, order / rest) == 1) order /= rest;
    }
    return order;
}

Elem Field::primitive_element() const {
    for (Elem a = 1; a < d_->q; ++a) {
        if (multiplicative_order(a) == d_->q - 1) return a;
    }
    throw InternalError("no primitive element found");
}

}  // namespace pgc
