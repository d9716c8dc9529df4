#include <doctest.h>

#include <stdexcept>
#include <vector>

#include <fpdecomp/fp.hpp>

using namespace fpdecomp;

namespace {

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 3; p <= limit; p += 2)
        if (detail::is_prime_u64(p)) out.push_back(p);
    return out;
}

} // namespace

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(PrimeModulus(0), std::domain_error);
    CHECK_THROWS_AS(PrimeModulus(1), std::domain_error);
    CHECK_THROWS_AS(PrimeModulus(4), std::domain_error);
    CHECK_THROWS_AS(PrimeModulus(91), std::domain_error);  // 7 * 13
    CHECK_THROWS_AS(PrimeModulus((std::uint64_t{1} << 62) + 1),
                    std::domain_error);

    CHECK(PrimeModulus(2).is_two());
    CHECK_FALSE(PrimeModulus(3).is_two());
    CHECK(PrimeModulus(2305843009213693951ull).p() ==
          2305843009213693951ull);  // 2^61 - 1
    CHECK_THROWS_AS(PrimeModulus(2).require_odd("op"), std::domain_error);
    CHECK_NOTHROW(PrimeModulus(5).require_odd("op"));
}

TEST_CASE("scalar arithmetic") {
    PrimeModulus m(7);
    Scalar a(3, m), b(5, m);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 1);
    CHECK((-a).value() == 4);
    CHECK((-Scalar(0, m)).value() == 0);
    CHECK(Scalar(10, m).value() == 3);

    CHECK(Scalar::from_int(-1, m).value() == 6);
    CHECK(Scalar::from_int(-14, m).value() == 0);
    CHECK(Scalar::from_int(20, m).value() == 6);

    CHECK(inv(a) == b);
    CHECK_THROWS_AS(inv(Scalar(0, m)), std::domain_error);
    CHECK(fpdecomp::pow(a, 0).value() == 1);
    CHECK(fpdecomp::pow(a, 6).value() == 1);

    PrimeModulus other(11);
    CHECK_THROWS_AS(a + Scalar(1, other), std::invalid_argument);
    CHECK_THROWS_AS(a * Scalar(1, other), std::invalid_argument);
}

TEST_CASE("residue classes") {
    PrimeModulus m7(7);
    CHECK(residue_class(Scalar(0, m7)) == ResidueClass::Zero);
    CHECK(residue_class(Scalar(2, m7)) == ResidueClass::Residue);
    CHECK(residue_class(Scalar(3, m7)) == ResidueClass::NonResidue);
    CHECK(residue_class(Scalar(5, PrimeModulus(13))) == ResidueClass::NonResidue);
    CHECK_THROWS_AS(residue_class(Scalar(1, PrimeModulus(2))), std::domain_error);

    CHECK(std::string(to_string(ResidueClass::Zero)) == "Zero");
    CHECK(std::string(to_string(ResidueClass::Residue)) == "Residue");
    CHECK(std::string(to_string(ResidueClass::NonResidue)) == "NonResidue");
}

TEST_CASE("residue and nonresidue counts match for every odd prime up to 200") {
    for (std::uint64_t p : odd_primes_up_to(200)) {
        PrimeModulus m(p);
        std::uint64_t res = 0, nonres = 0;
        for (std::uint64_t x = 1; x < p; ++x) {
            switch (residue_class(Scalar(x, m))) {
                case ResidueClass::Residue: ++res; break;
                case ResidueClass::NonResidue: ++nonres; break;
                case ResidueClass::Zero: FAIL("nonzero value classed Zero");
            }
        }
        CHECK(res == (p - 1) / 2);
        CHECK(nonres == (p - 1) / 2);
    }
}

TEST_CASE("residue classes are multiplicative") {
    for (std::uint64_t p : odd_primes_up_to(50)) {
        PrimeModulus m(p);
        for (std::uint64_t x = 1; x < p; ++x) {
            for (std::uint64_t y = 1; y < p; ++y) {
                Scalar sx(x, m), sy(y, m);
                const bool rx = residue_class(sx) == ResidueClass::Residue;
                const bool ry = residue_class(sy) == ResidueClass::Residue;
                const bool rxy = residue_class(sx * sy) == ResidueClass::Residue;
                CHECK(rxy == (rx == ry));
            }
            CHECK(residue_class(Scalar(x, m)) ==
                  residue_class(inv(Scalar(x, m))));
        }
    }
}

TEST_CASE("square roots") {
    CHECK(fpdecomp::sqrt(Scalar(2, PrimeModulus(7))).value() == 3);
    CHECK(fpdecomp::sqrt(Scalar(4, PrimeModulus(13))).value() == 2);
    CHECK(fpdecomp::sqrt(Scalar(0, PrimeModulus(11))).value() == 0);
    CHECK_THROWS_AS(fpdecomp::sqrt(Scalar(3, PrimeModulus(7))),
                    std::domain_error);
    CHECK_THROWS_AS(fpdecomp::sqrt(Scalar(1, PrimeModulus(2))),
                    std::domain_error);

    for (std::uint64_t p : odd_primes_up_to(200)) {
        PrimeModulus m(p);
        for (std::uint64_t x = 1; x < p; ++x) {
            Scalar s(x, m);
            if (residue_class(s) != ResidueClass::Residue) continue;
            Scalar r = fpdecomp::sqrt(s);
            CHECK(r * r == s);
            CHECK(r.value() <= p - r.value());  // smaller-root convention
        }
    }
}

TEST_CASE("smallest nonresidue") {
    CHECK(smallest_nonresidue(PrimeModulus(3)).value() == 2);
    CHECK(smallest_nonresidue(PrimeModulus(5)).value() == 2);
    CHECK(smallest_nonresidue(PrimeModulus(7)).value() == 3);
    CHECK(smallest_nonresidue(PrimeModulus(11)).value() == 2);
    CHECK(smallest_nonresidue(PrimeModulus(13)).value() == 2);
    CHECK(smallest_nonresidue(PrimeModulus(73)).value() == 5);
    CHECK_THROWS_AS(smallest_nonresidue(PrimeModulus(2)), std::domain_error);

    for (std::uint64_t p : odd_primes_up_to(200)) {
        PrimeModulus m(p);
        Scalar t = smallest_nonresidue(m);
        CHECK(residue_class(t) == ResidueClass::NonResidue);
        // Minimality: everything below t is a residue.
        for (std::uint64_t x = 1; x < t.value(); ++x)
            CHECK(residue_class(Scalar(x, m)) == ResidueClass::Residue);
    }
}

TEST_CASE("two-square split") {
    {
        auto [a, b] = two_square_split(Scalar(3, PrimeModulus(7)));
        CHECK(a.value() == 1);
        CHECK(b.value() == 2);
    }
    {
        auto [a, b] = two_square_split(Scalar(2, PrimeModulus(5)));
        CHECK(a.value() == 1);
        CHECK(b.value() == 1);
    }
    CHECK_THROWS_AS(two_square_split(Scalar(2, PrimeModulus(7))),
                    std::invalid_argument);
    CHECK_THROWS_AS(two_square_split(Scalar(0, PrimeModulus(7))),
                    std::invalid_argument);
    CHECK_THROWS_AS(two_square_split(Scalar(1, PrimeModulus(2))),
                    std::domain_error);

    for (std::uint64_t p : odd_primes_up_to(200)) {
        PrimeModulus m(p);
        for (std::uint64_t x = 1; x < p; ++x) {
            Scalar s(x, m);
            if (residue_class(s) != ResidueClass::NonResidue) continue;
            auto [a, b] = two_square_split(s);
            CHECK(a + b == s);
            CHECK(residue_class(a) == ResidueClass::Residue);
            CHECK(residue_class(b) == ResidueClass::Residue);
        }
    }
}
