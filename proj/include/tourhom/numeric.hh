#pragma once

#include <gmpxx.h>

#include <string>

namespace tourhom
{
    using BigInt = mpz_class;
    using Rational = mpq_class;

    inline auto pow(const BigInt & base, unsigned long exponent) -> BigInt
    {
        BigInt result;
        mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
        return result;
    }

    inline auto pow(const Rational & base, unsigned long exponent) -> Rational
    {
        Rational result{pow(BigInt{base.get_num()}, exponent), pow(BigInt{base.get_den()}, exponent)};
        result.canonicalize();
        return result;
    }

    inline auto make_rational(const BigInt & num, const BigInt & den) -> Rational
    {
        Rational result{num, den};
        result.canonicalize();
        return result;
    }

    /// "num/den", or just "num" when the denominator is one.
    inline auto to_string(const Rational & q) -> std::string
    {
        return q.get_str();
    }

    /// Accepts "a", "a/b" and "-a/b". Throws std::invalid_argument.
    auto parse_rational(const std::string & text) -> Rational;

    /// Ratio of two big integers as a double, safe when both exceed the
    /// double range.
    auto ratio_to_double(const BigInt & num, const BigInt & den) -> double;

    auto to_double(const Rational & q) -> double;
}
