#include <tourhom/kernels.hh>

#include <bit>

namespace tourhom::kernels
{
    namespace
    {
        auto popcount(const std::uint64_t * a, std::size_t n) -> std::size_t
        {
            std::size_t result = 0;
            for (std::size_t i = 0 ; i < n ; ++i)
                result += std::popcount(a[i]);
            return result;
        }

        auto and_popcount(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> std::size_t
        {
            std::size_t result = 0;
            for (std::size_t i = 0 ; i < n ; ++i)
                result += std::popcount(a[i] & b[i]);
            return result;
        }

        auto and_into(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> void
        {
            for (std::size_t i = 0 ; i < n ; ++i)
                dst[i] = a[i] & b[i];
        }

        auto and_assign(std::uint64_t * dst, const std::uint64_t * a, std::size_t n) -> void
        {
            for (std::size_t i = 0 ; i < n ; ++i)
                dst[i] &= a[i];
        }

        auto and_any(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> bool
        {
            for (std::size_t i = 0 ; i < n ; ++i)
                if (a[i] & b[i])
                    return true;
            return false;
        }

        constexpr Table table{Level::Scalar, popcount, and_popcount, and_into, and_assign, and_any};
    }

    auto scalar_table() -> const Table &
    {
        return table;
    }
}
