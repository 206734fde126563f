// Built only for aarch64 targets, where Advanced SIMD is mandatory.

#include "variants.hh"

#include <arm_neon.h>

#include <bit>

namespace tourhom::kernels::detail
{
    namespace
    {
        inline auto count_128(uint64x2_t v) -> std::size_t
        {
            return vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
        }

        auto popcount(const std::uint64_t * a, std::size_t n) -> std::size_t
        {
            std::size_t i = 0, result = 0;
            for ( ; i + 2 <= n ; i += 2)
                result += count_128(vld1q_u64(a + i));
            for ( ; i < n ; ++i)
                result += std::popcount(a[i]);
            return result;
        }

        auto and_popcount(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> std::size_t
        {
            std::size_t i = 0, result = 0;
            for ( ; i + 2 <= n ; i += 2)
                result += count_128(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
            for ( ; i < n ; ++i)
                result += std::popcount(a[i] & b[i]);
            return result;
        }

        auto and_into(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> void
        {
            std::size_t i = 0;
            for ( ; i + 2 <= n ; i += 2)
                vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
            for ( ; i < n ; ++i)
                dst[i] = a[i] & b[i];
        }

        auto and_assign(std::uint64_t * dst, const std::uint64_t * a, std::size_t n) -> void
        {
            std::size_t i = 0;
            for ( ; i + 2 <= n ; i += 2)
                vst1q_u64(dst + i, vandq_u64(vld1q_u64(dst + i), vld1q_u64(a + i)));
            for ( ; i < n ; ++i)
                dst[i] &= a[i];
        }

        auto and_any(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> bool
        {
            std::size_t i = 0;
            for ( ; i + 2 <= n ; i += 2)
                if (vmaxvq_u32(vreinterpretq_u32_u64(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))))
                    return true;
            for ( ; i < n ; ++i)
                if (a[i] & b[i])
                    return true;
            return false;
        }

        constexpr Table table{Level::Neon, popcount, and_popcount, and_into, and_assign, and_any};
    }

    auto neon_table() -> const Table *
    {
        return &table;
    }
}
