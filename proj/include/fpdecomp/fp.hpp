#pragma once

// Exact arithmetic and quadratic-residue machinery for the prime field F_p.
//
// All values are canonical representatives in [0, p).  Products go through a
// 128-bit intermediate, so any prime below 2^62 is supported without big-int
// arithmetic; construction rejects anything larger.

#include <cstdint>
#include <utility>

#include "fpdecomp/errors.hpp"

namespace fpdecomp {

/// A verified prime modulus.  p = 2 is allowed but flagged; operations that
/// only make sense in odd characteristic call require_odd() and reject it.
class PrimeModulus {
public:
    /// Largest accepted modulus: products of two residues must fit __int128
    /// comfortably and signed conversions must stay safe.
    static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 62);

    /// Validates primality (deterministic Miller-Rabin, exact for 64-bit).
    explicit PrimeModulus(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    bool is_two() const { return p_ == 2; }

    /// Throws std::domain_error naming `operation` when p = 2.
    void require_odd(const char* operation) const;

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    std::uint64_t p_;
};

enum class ResidueClass { Zero, Residue, NonResidue };

const char* to_string(ResidueClass c);

/// An element of F_p, stored as its canonical representative.
class Scalar {
public:
    Scalar(std::uint64_t value, PrimeModulus m) : v_(value % m.p()), m_(m) {}

    /// Reduces a signed integer (e.g. an integer determinant) into [0, p).
    static Scalar from_int(std::int64_t value, PrimeModulus m);

    std::uint64_t value() const { return v_; }
    PrimeModulus modulus() const { return m_; }
    bool is_zero() const { return v_ == 0; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;

    friend bool operator==(const Scalar&, const Scalar&) = default;

private:
    std::uint64_t v_;
    PrimeModulus m_;
};

/// Multiplicative inverse; throws std::domain_error on zero.
Scalar inv(const Scalar& a);

Scalar pow(const Scalar& base, std::uint64_t exponent);

/// Euler's criterion: x^((p-1)/2) is 1 for residues and p-1 for nonresidues.
/// Odd p only.
ResidueClass residue_class(const Scalar& x);

/// Deterministic Tonelli-Shanks square root (auxiliary nonresidue taken as
/// smallest_nonresidue).  Returns the smaller of the two roots as an integer
/// in [0, p).  Throws std::domain_error if x is a nonresidue or p = 2.
Scalar sqrt(const Scalar& x);

/// The minimal integer representative t of a nonresidue mod p (odd p >= 3).
/// By minimality t-1 is always a residue.
Scalar smallest_nonresidue(PrimeModulus m);

/// Writes a nonresidue x as a sum a + b of two residues:
/// with t = smallest_nonresidue and s = x/t, returns (s, s*(t-1)).
std::pair<Scalar, Scalar> two_square_split(const Scalar& x);

namespace detail {
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);
} // namespace detail

} // namespace fpdecomp
