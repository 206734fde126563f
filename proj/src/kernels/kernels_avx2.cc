// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include "variants.hh"

#include <immintrin.h>

#include <bit>

namespace tourhom::kernels::detail
{
    namespace
    {
        // Nibble-lookup popcount: per-byte counts via pshufb, summed with psadbw.
        inline auto popcount_256(__m256i v) -> __m256i
        {
            const __m256i lookup = _mm256_setr_epi8(
                    0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                    0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
            const __m256i low_mask = _mm256_set1_epi8(0x0f);
            __m256i lo = _mm256_and_si256(v, low_mask);
            __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
            __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
            return _mm256_sad_epu8(counts, _mm256_setzero_si256());
        }

        inline auto horizontal_sum(__m256i v) -> std::size_t
        {
            return static_cast<std::size_t>(_mm256_extract_epi64(v, 0)) + static_cast<std::size_t>(_mm256_extract_epi64(v, 1))
                + static_cast<std::size_t>(_mm256_extract_epi64(v, 2)) + static_cast<std::size_t>(_mm256_extract_epi64(v, 3));
        }

        auto popcount(const std::uint64_t * a, std::size_t n) -> std::size_t
        {
            std::size_t i = 0;
            __m256i acc = _mm256_setzero_si256();
            for ( ; i + 4 <= n ; i += 4) {
                __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
                acc = _mm256_add_epi64(acc, popcount_256(va));
            }
            std::size_t result = horizontal_sum(acc);
            for ( ; i < n ; ++i)
                result += std::popcount(a[i]);
            return result;
        }

        auto and_popcount(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> std::size_t
        {
            std::size_t i = 0;
            __m256i acc = _mm256_setzero_si256();
            for ( ; i + 4 <= n ; i += 4) {
                __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
                __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
                acc = _mm256_add_epi64(acc, popcount_256(_mm256_and_si256(va, vb)));
            }
            std::size_t result = horizontal_sum(acc);
            for ( ; i < n ; ++i)
                result += std::popcount(a[i] & b[i]);
            return result;
        }

        auto and_into(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> void
        {
            std::size_t i = 0;
            for ( ; i + 4 <= n ; i += 4) {
                __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
                __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
                _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_and_si256(va, vb));
            }
            for ( ; i < n ; ++i)
                dst[i] = a[i] & b[i];
        }

        auto and_assign(std::uint64_t * dst, const std::uint64_t * a, std::size_t n) -> void
        {
            std::size_t i = 0;
            for ( ; i + 4 <= n ; i += 4) {
                __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(dst + i));
                __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
                _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_and_si256(vd, va));
            }
            for ( ; i < n ; ++i)
                dst[i] &= a[i];
        }

        auto and_any(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> bool
        {
            std::size_t i = 0;
            for ( ; i + 4 <= n ; i += 4) {
                __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
                __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
                if (! _mm256_testz_si256(va, vb))
                    return true;
            }
            for ( ; i < n ; ++i)
                if (a[i] & b[i])
                    return true;
            return false;
        }

        constexpr Table table{Level::Avx2, popcount, and_popcount, and_into, and_assign, and_any};
    }

    auto avx2_table() -> const Table *
    {
        __builtin_cpu_init();
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt"))
            return &table;
        return nullptr;
    }
}
