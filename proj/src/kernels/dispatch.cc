#include "variants.hh"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace tourhom::kernels
{
    namespace detail
    {
#ifndef TOURHOM_HAVE_AVX2
        auto avx2_table() -> const Table *
        {
            return nullptr;
        }
#endif
#ifndef TOURHOM_HAVE_NEON
        auto neon_table() -> const Table *
        {
            return nullptr;
        }
#endif
    }

    namespace
    {
        auto initial_table() -> const Table *
        {
            if (const char * env = std::getenv("TOURHOM_SIMD")) {
                std::string_view name{env};
                const Table * t = nullptr;
                if (name == "scalar")
                    t = &scalar_table();
                else if (name == "avx2")
                    t = detail::avx2_table();
                else if (name == "neon")
                    t = detail::neon_table();
                if (t)
                    return t;
            }
            return table_for(best_level());
        }

        auto current() -> const Table *&
        {
            static const Table * t = initial_table();
            return t;
        }
    }

    auto table_for(Level level) -> const Table *
    {
        switch (level) {
            case Level::Scalar: return &scalar_table();
            case Level::Avx2:   return detail::avx2_table();
            case Level::Neon:   return detail::neon_table();
        }
        return nullptr;
    }

    auto available_levels() -> std::vector<Level>
    {
        std::vector<Level> result;
        for (auto level : {Level::Scalar, Level::Avx2, Level::Neon})
            if (table_for(level))
                result.push_back(level);
        return result;
    }

    auto best_level() -> Level
    {
        if (detail::avx2_table())
            return Level::Avx2;
        if (detail::neon_table())
            return Level::Neon;
        return Level::Scalar;
    }

    auto active() -> const Table &
    {
        return *current();
    }

    auto select(Level level) -> void
    {
        const Table * t = table_for(level);
        if (! t)
            throw std::invalid_argument{"kernel level " + level_name(level) + " is not available"};
        current() = t;
    }

    auto level_name(Level level) -> std::string
    {
        switch (level) {
            case Level::Scalar: return "scalar";
            case Level::Avx2:   return "avx2";
            case Level::Neon:   return "neon";
        }
        return "unknown";
    }
}
