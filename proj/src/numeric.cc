#include <tourhom/numeric.hh>

#include <cmath>
#include <stdexcept>

namespace tourhom
{
    auto parse_rational(const std::string & text) -> Rational
    {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos)
                return Rational{BigInt{text, 10}};
            BigInt num{text.substr(0, slash), 10}, den{text.substr(slash + 1), 10};
            if (den == 0)
                throw std::invalid_argument{"zero denominator in '" + text + "'"};
            return make_rational(num, den);
        }
        catch (const std::invalid_argument &) {
            throw std::invalid_argument{"not a rational number: '" + text + "'"};
        }
    }

    auto ratio_to_double(const BigInt & num, const BigInt & den) -> double
    {
        if (num == 0)
            return 0.0;
        long num_exp = 0, den_exp = 0;
        double num_mant = mpz_get_d_2exp(&num_exp, num.get_mpz_t());
        double den_mant = mpz_get_d_2exp(&den_exp, den.get_mpz_t());
        return std::ldexp(num_mant / den_mant, static_cast<int>(num_exp - den_exp));
    }

    auto to_double(const Rational & q) -> double
    {
        return ratio_to_double(q.get_num(), q.get_den());
    }
}
