#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pgcycles/errors.hpp"

namespace pgc {

/// An element of GF(p^e), stored as its canonical integer encoding
///   value = sum_i coeffs[i] * p^i,
/// where coeffs[i] in [0,p) is the coefficient of x^i in the residue
/// polynomial. The zero element is 0 and the one element is 1.
using Elem = std::uint32_t;

/// Exact arithmetic in GF(q), q = p^e.
///
/// The field is the quotient GF(p)[x] / (m) for a monic irreducible m of
/// degree e. Field::make selects the canonical modulus: monic degree-e
/// polynomials are scanned in ascending lexicographic order of
/// (c_0, c_1, ..., c_{e-1}) with the constant term most significant, and
/// the first irreducible one is kept. For e = 1 the modulus is x and the
/// arithmetic is plain mod-p.
///
/// Field handles are cheap to copy (shared immutable state) and all
/// operations are pure, so a Field may be used concurrently without
/// synchronization.
class Field {
public:
    /// Builds GF(p^e) with the canonical modulus.
    /// Throws NonPrime if p is composite, SizeExceeded if p^e > 2^20.
    static Field make(std::uint32_t p, std::uint32_t e);

    /// Builds GF(p^e) from an explicit modulus (constant term first,
    /// length e+1, monic, irreducible). Used when reconstructing a field
    /// from a serialized header. Throws InvalidField on a bad modulus.
    Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

    std::uint32_t p() const { return d_->p; }
    std::uint32_t e() const { return d_->e; }
    std::uint32_t q() const { return d_->q; }

    /// Modulus coefficients, constant term first (length e+1, monic).
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    /// Multiplicative inverse; throws DivisionByZero for inv(0).
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t m) const;

    /// Coefficient vector of a, length e, coefficient of x^i at index i.
    std::vector<std::uint32_t> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<std::uint32_t>& c) const;

    /// All q elements in canonical integer order: 0, 1, ..., q-1.
    std::vector<Elem> elements() const;

    /// First element in canonical order whose multiplicative order is q-1.
    Elem primitive_element() const;

    /// Order of a in the multiplicative group; a must be nonzero.
    std::uint32_t multiplicative_order(Elem a) const;

    bool operator==(const Field& o) const {
        return d_->p == o.d_->p && d_->modulus == o.d_->modulus;
    }

    /// Largest supported field size.
    static constexpr std::uint32_t kMaxQ = 1u << 20;

private:
    struct Data {
        std::uint32_t p = 0;
        std::uint32_t e = 0;
        std::uint32_t q = 0;
        std::vector<std::uint32_t> modulus;
    };

    explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    std::shared_ptr<const Data> d_;
};

/// Deterministic primality test by trial division (intended for p <= 2^20).
bool is_prime(std::uint32_t p);

/// If q = p^e for a prime p, stores p and e and returns true.
bool factor_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& e);

}  // namespace pgc
