#include "fpdecomp/fp.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace fpdecomp {

namespace detail {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin, exact for all 64-bit inputs with this base set.
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
    if (p > kMaxModulus)
        throw std::domain_error("modulus " + std::to_string(p) +
                                " exceeds the supported bound 2^62");
    if (!detail::is_prime_u64(p))
        throw std::domain_error("modulus " + std::to_string(p) + " is not prime");
}

void PrimeModulus::require_odd(const char* operation) const {
    if (p_ == 2)
        throw std::domain_error(std::string(operation) +
                                " is not defined for p = 2");
}

const char* to_string(ResidueClass c) {
    switch (c) {
        case ResidueClass::Zero: return "Zero";
        case ResidueClass::Residue: return "Residue";
        case ResidueClass::NonResidue: return "NonResidue";
    }
    return "?";
}

Scalar Scalar::from_int(std::int64_t value, PrimeModulus m) {
    const auto p = static_cast<std::int64_t>(m.p());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return Scalar(static_cast<std::uint64_t>(r), m);
}

namespace {
void require_same_modulus(const Scalar& a, const Scalar& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("mixed moduli: " +
                                    std::to_string(a.modulus().p()) + " vs " +
                                    std::to_string(b.modulus().p()));
}
} // namespace

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_modulus(*this, o);
    std::uint64_t s = v_ + o.v_;
    if (s >= m_.p()) s -= m_.p();
    return Scalar(s, m_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_modulus(*this, o);
    std::uint64_t s = v_ >= o.v_ ? v_ - o.v_ : v_ + m_.p() - o.v_;
    return Scalar(s, m_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_modulus(*this, o);
    return Scalar(detail::mul_mod(v_, o.v_, m_.p()), m_);
}

Scalar Scalar::operator-() const {
    return Scalar(v_ == 0 ? 0 : m_.p() - v_, m_);
}

Scalar inv(const Scalar& a) {
    if (a.is_zero())
        throw std::domain_error("division by zero in F_" +
                                std::to_string(a.modulus().p()));
    // Fermat: a^(p-2).
    return pow(a, a.modulus().p() - 2);
}

Scalar pow(const Scalar& base, std::uint64_t exponent) {
    return Scalar(detail::pow_mod(base.value(), exponent, base.modulus().p()),
                  base.modulus());
}

ResidueClass residue_class(const Scalar& x) {
    x.modulus().require_odd("residue_class");
    if (x.is_zero()) return ResidueClass::Zero;
    const std::uint64_t p = x.modulus().p();
    const std::uint64_t e = detail::pow_mod(x.value(), (p - 1) / 2, p);
    return e == 1 ? ResidueClass::Residue : ResidueClass::NonResidue;
}

Scalar smallest_nonresidue(PrimeModulus m) {
    m.require_odd("smallest_nonresidue");
    for (std::uint64_t t = 2; t < m.p(); ++t) {
        Scalar s(t, m);
        if (residue_class(s) == ResidueClass::NonResidue) return s;
    }
    throw std::logic_error("no nonresidue found; modulus is not an odd prime");
}

Scalar sqrt(const Scalar& x) {
    x.modulus().require_odd("sqrt");
    const std::uint64_t p = x.modulus().p();
    if (x.is_zero()) return x;
    if (residue_class(x) == ResidueClass::NonResidue)
        throw std::domain_error(std::to_string(x.value()) +
                                " has no square root mod " + std::to_string(p));

    std::uint64_t root;
    if (p % 4 == 3) {
        root = detail::pow_mod(x.value(), (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks with a deterministic auxiliary nonresidue.
        std::uint64_t q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        const std::uint64_t z = smallest_nonresidue(x.modulus()).value();
        std::uint64_t c = detail::pow_mod(z, q, p);
        std::uint64_t t = detail::pow_mod(x.value(), q, p);
        std::uint64_t r = detail::pow_mod(x.value(), (q + 1) / 2, p);
        int m = s;
        while (t != 1) {
            std::uint64_t t2 = t;
            int i = 0;
            while (t2 != 1) {
                t2 = detail::mul_mod(t2, t2, p);
                ++i;
            }
            std::uint64_t b = c;
            for (int j = 0; j < m - i - 1; ++j) b = detail::mul_mod(b, b, p);
            r = detail::mul_mod(r, b, p);
            c = detail::mul_mod(b, b, p);
            t = detail::mul_mod(t, c, p);
            m = i;
        }
        root = r;
    }
    // Smaller-representative convention keeps golden tests stable.
    const std::uint64_t other = p - root;
    return Scalar(root <= other ? root : other, x.modulus());
}

std::pair<Scalar, Scalar> two_square_split(const Scalar& x) {
    x.modulus().require_odd("two_square_split");
    if (residue_class(x) != ResidueClass::NonResidue)
        throw std::invalid_argument("two_square_split requires a nonresidue, got " +
                                    std::to_string(x.value()) + " mod " +
                                    std::to_string(x.modulus().p()));
    const Scalar t = smallest_nonresidue(x.modulus());
    const Scalar s = x * inv(t);
    const Scalar one(1, x.modulus());
    return {s, s * (t - one)};
}

} // namespace fpdecomp
