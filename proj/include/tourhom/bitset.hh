#pragma once

#include <tourhom/kernels.hh>

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace tourhom
{
    /// Fixed-size (chosen at construction) set of small non-negative integers,
    /// stored as 64-bit words. Bulk operations go through the active SIMD
    /// kernel table.
    class Bitset
    {
        public:
            Bitset() = default;

            explicit Bitset(int bits) :
                _bits(bits),
                _words((static_cast<std::size_t>(bits) + 63) / 64, 0)
            {
            }

            auto size() const -> int { return _bits; }
            auto word_count() const -> std::size_t { return _words.size(); }
            auto words() const -> std::span<const std::uint64_t> { return _words; }
            auto words() -> std::span<std::uint64_t> { return _words; }

            auto set(int i) -> void { _words[i >> 6] |= std::uint64_t{1} << (i & 63); }
            auto reset(int i) -> void { _words[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
            auto test(int i) const -> bool { return (_words[i >> 6] >> (i & 63)) & 1; }

            auto set_all() -> void
            {
                for (auto & w : _words)
                    w = ~std::uint64_t{0};
                clear_tail();
            }

            auto clear() -> void
            {
                for (auto & w : _words)
                    w = 0;
            }

            auto count() const -> std::size_t
            {
                return kernels::active().popcount(_words.data(), _words.size());
            }

            auto any() const -> bool
            {
                for (auto w : _words)
                    if (w)
                        return true;
                return false;
            }

            auto none() const -> bool { return ! any(); }

            /// Smallest member, or -1 when empty.
            auto first() const -> int
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    if (_words[i])
                        return static_cast<int>(i * 64 + std::countr_zero(_words[i]));
                return -1;
            }

            auto operator&= (const Bitset & other) -> Bitset &
            {
                kernels::active().and_assign(_words.data(), other._words.data(), _words.size());
                return *this;
            }

            auto operator|= (const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            /// this := this \ other
            auto subtract(const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            auto assign_and(const Bitset & a, const Bitset & b) -> void
            {
                kernels::active().and_into(_words.data(), a._words.data(), b._words.data(), _words.size());
            }

            auto intersects(const Bitset & other) const -> bool
            {
                return kernels::active().and_any(_words.data(), other._words.data(), _words.size());
            }

            auto intersection_count(const Bitset & other) const -> std::size_t
            {
                return kernels::active().and_popcount(_words.data(), other._words.data(), _words.size());
            }

            template <typename F>
            auto for_each(F && f) const -> void
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i) {
                    std::uint64_t w = _words[i];
                    while (w) {
                        int bit = std::countr_zero(w);
                        w &= w - 1;
                        f(static_cast<int>(i * 64 + bit));
                    }
                }
            }

            auto members() const -> std::vector<int>
            {
                std::vector<int> result;
                for_each([&] (int v) { result.push_back(v); });
                return result;
            }

            friend auto operator== (const Bitset &, const Bitset &) -> bool = default;

        private:
            auto clear_tail() -> void
            {
                if (_bits % 64 != 0 && ! _words.empty())
                    _words.back() &= (std::uint64_t{1} << (_bits % 64)) - 1;
            }

            int _bits = 0;
            std::vector<std::uint64_t> _words;
    };
}
