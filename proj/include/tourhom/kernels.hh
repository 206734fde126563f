#pragma once

// Word-level bitset kernels. Every variant implements the same table of
// operations over arrays of 64-bit words; the active table is picked once at
// startup from what the CPU supports and can be overridden for testing.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tourhom::kernels
{
    enum class Level
    {
        Scalar,
        Avx2,
        Neon
    };

    struct Table
    {
        Level level;
        auto (* popcount)(const std::uint64_t * a, std::size_t n) -> std::size_t;
        auto (* and_popcount)(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> std::size_t;
        auto (* and_into)(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> void;
        auto (* and_assign)(std::uint64_t * dst, const std::uint64_t * a, std::size_t n) -> void;
        auto (* and_any)(const std::uint64_t * a, const std::uint64_t * b, std::size_t n) -> bool;
    };

    auto scalar_table() -> const Table &;

    /// Returns nullptr when the variant was not compiled in or the CPU lacks it.
    auto table_for(Level level) -> const Table *;

    auto available_levels() -> std::vector<Level>;

    auto best_level() -> Level;

    /// The table used by Bitset. Initialised to best_level(), or to the level
    /// named by the TOURHOM_SIMD environment variable (scalar|avx2|neon).
    auto active() -> const Table &;

    /// Throws std::invalid_argument if the level is unavailable.
    auto select(Level level) -> void;

    auto level_name(Level level) -> std::string;
}
