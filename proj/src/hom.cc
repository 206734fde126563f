#include <tourhom/hom.hh>

#include <algorithm>
#include <map>
#include <unordered_map>

namespace tourhom
{
    namespace
    {
        // Counts are accumulated in 128 bits; on overflow the whole count is
        // redone with arbitrary precision.
        using Small = unsigned __int128;

        struct Overflow
        {
        };

        inline auto add_to(Small & a, Small b) -> void
        {
            if (__builtin_add_overflow(a, b, &a))
                throw Overflow{};
        }

        inline auto multiply(Small a, Small b) -> Small
        {
            Small r;
            if (__builtin_mul_overflow(a, b, &r))
                throw Overflow{};
            return r;
        }

        inline auto add_to(BigInt & a, const BigInt & b) -> void
        {
            a += b;
        }

        inline auto multiply(const BigInt & a, const BigInt & b) -> BigInt
        {
            return a * b;
        }

        inline auto is_zero(Small a) -> bool { return a == 0; }
        inline auto is_zero(const BigInt & a) -> bool { return a == 0; }

        template <typename C>
        auto from_count(std::size_t n) -> C
        {
            if constexpr (std::is_same_v<C, BigInt>)
                return BigInt{static_cast<unsigned long>(n)};
            else
                return static_cast<Small>(n);
        }

        auto to_big(Small v) -> BigInt
        {
            BigInt high{static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64))};
            BigInt low{static_cast<unsigned long>(static_cast<std::uint64_t>(v))};
            return (high << 64) + low;
        }
    }

    struct Engine
    {
        const Digraph & pattern;
        const Digraph & host;
        HomOptions options;
        int pattern_size, host_size;
        std::size_t host_words;

        // Unique neighbours of each pattern vertex, with arc directions:
        // bit 0 for v -> w, bit 1 for w -> v.
        std::vector<std::vector<Vertex>> neighbours;
        std::vector<std::vector<std::uint8_t>> directions;
        std::vector<Bitset> neighbour_set;
        std::vector<int> degree;

        std::vector<Vertex> image;
        std::vector<int> constrained;
        std::vector<bool> pinned;
        std::vector<Bitset> domain;

        std::vector<Vertex> trail_vertices;
        std::vector<std::uint64_t> trail_words;

        std::uint64_t node_count = 0;

        std::unordered_map<std::string, Small> small_cache;
        std::unordered_map<std::string, BigInt> big_cache;

        struct Mark
        {
            std::size_t vertices, words;
        };

        Engine(const Digraph & p, const Digraph & h, HomOptions o) :
            pattern(p),
            host(h),
            options(o),
            pattern_size(p.size()),
            host_size(h.size()),
            host_words((static_cast<std::size_t>(h.size()) + 63) / 64),
            neighbours(p.size()),
            directions(p.size()),
            neighbour_set(p.size(), Bitset{p.size()}),
            degree(p.size()),
            image(p.size(), -1),
            constrained(p.size(), 0),
            pinned(p.size(), false),
            domain(p.size(), Bitset{h.size()})
        {
            for (Vertex v = 0 ; v < pattern_size ; ++v) {
                neighbour_set[v] = p.out(v);
                neighbour_set[v] |= p.in(v);
                neighbour_set[v].for_each([&] (Vertex w) {
                    neighbours[v].push_back(w);
                    directions[v].push_back((p.has_arc(v, w) ? 1 : 0) | (p.has_arc(w, v) ? 2 : 0));
                });
                degree[v] = p.degree(v);
            }
        }

        auto reset() -> void
        {
            std::fill(image.begin(), image.end(), -1);
            std::fill(constrained.begin(), constrained.end(), 0);
            std::fill(pinned.begin(), pinned.end(), false);
            trail_vertices.clear();
            trail_words.clear();
        }

        auto mark() const -> Mark
        {
            return {trail_vertices.size(), trail_words.size()};
        }

        // Assigns v := c and narrows the domains of unplaced neighbours.
        // Returns false if some neighbour is left with no candidates; the
        // trail is consistent either way.
        auto place(Vertex v, Vertex c) -> bool
        {
            image[v] = c;
            const auto & ns = neighbours[v];
            for (std::size_t i = 0 ; i < ns.size() ; ++i) {
                Vertex w = ns[i];
                if (image[w] != -1)
                    continue;
                trail_vertices.push_back(w);
                auto dir = directions[v][i];
                Bitset & d = domain[w];
                if (constrained[w] > 0) {
                    auto words = d.words();
                    trail_words.insert(trail_words.end(), words.begin(), words.end());
                    if (dir & 1)
                        d &= host.out(c);
                    if (dir & 2)
                        d &= host.in(c);
                }
                else if (dir == 3)
                    d.assign_and(host.out(c), host.in(c));
                else if (dir & 1)
                    d = host.out(c);
                else
                    d = host.in(c);
                ++constrained[w];
                if (d.none())
                    return false;
            }
            return true;
        }

        auto restore(const Mark & m) -> void
        {
            while (trail_vertices.size() > m.vertices) {
                Vertex w = trail_vertices.back();
                trail_vertices.pop_back();
                if (--constrained[w] > 0) {
                    auto words = domain[w].words();
                    std::copy(trail_words.end() - host_words, trail_words.end(), words.begin());
                    trail_words.resize(trail_words.size() - host_words);
                }
            }
        }

        auto unplace(Vertex v, const Mark & m) -> void
        {
            restore(m);
            image[v] = -1;
        }

        auto components(const Bitset & set) const -> std::vector<Bitset>
        {
            std::vector<Bitset> result;
            Bitset rest = set;
            std::vector<Vertex> stack;
            while (rest.any()) {
                Vertex s = rest.first();
                Bitset comp{pattern_size};
                comp.set(s);
                rest.reset(s);
                stack.push_back(s);
                while (! stack.empty()) {
                    Vertex u = stack.back();
                    stack.pop_back();
                    for (Vertex w : neighbours[u])
                        if (rest.test(w)) {
                            rest.reset(w);
                            comp.set(w);
                            stack.push_back(w);
                        }
                }
                result.push_back(std::move(comp));
            }
            return result;
        }

        auto domain_size(Vertex v) const -> std::size_t
        {
            return constrained[v] > 0 ? domain[v].count() : static_cast<std::size_t>(host_size);
        }

        auto smallest_domain(const Bitset & comp) const -> std::size_t
        {
            std::size_t best = static_cast<std::size_t>(host_size);
            comp.for_each([&] (Vertex v) {
                if (constrained[v] > 0)
                    best = std::min(best, domain[v].count());
            });
            return best;
        }

        // Fewest candidates first, then most placed neighbours, highest
        // degree, lowest index. Returns -1 if a constrained vertex has an
        // empty domain.
        auto choose(const Bitset & set) const -> Vertex
        {
            Vertex best = -1;
            std::size_t best_size = 0;
            bool dead = false;
            set.for_each([&] (Vertex v) {
                if (dead)
                    return;
                std::size_t size = domain_size(v);
                if (size == 0) {
                    dead = true;
                    return;
                }
                if (best == -1 || size < best_size
                        || (size == best_size && (constrained[v] > constrained[best]
                                || (constrained[v] == constrained[best] && degree[v] > degree[best])))) {
                    best = v;
                    best_size = size;
                }
            });
            return dead ? -1 : best;
        }

        auto tick() -> void
        {
            ++node_count;
            if (options.node_limit != 0 && node_count > options.node_limit)
                throw BudgetExceeded{"homomorphism search exceeded " + std::to_string(options.node_limit) + " nodes"};
        }

        template <typename C>
        auto cache() -> std::unordered_map<std::string, C> &
        {
            if constexpr (std::is_same_v<C, BigInt>)
                return big_cache;
            else
                return small_cache;
        }

        // Key on the component and the images of the placed vertices it
        // touches; the count depends on nothing else. Components touching
        // only pins are not worth remembering.
        auto cache_key(const Bitset & comp, std::string & key) const -> bool
        {
            if (options.cache_boundary_limit <= 0)
                return false;
            Bitset boundary{pattern_size};
            comp.for_each([&] (Vertex u) { boundary |= neighbour_set[u]; });
            boundary.subtract(comp);
            if (boundary.count() > static_cast<std::size_t>(options.cache_boundary_limit))
                return false;
            bool only_pins = true;
            boundary.for_each([&] (Vertex u) { only_pins = only_pins && pinned[u]; });
            if (only_pins)
                return false;

            auto words = comp.words();
            key.assign(reinterpret_cast<const char *>(words.data()), words.size() * sizeof(std::uint64_t));
            boundary.for_each([&] (Vertex u) {
                key.append(reinterpret_cast<const char *>(&image[u]), sizeof(Vertex));
            });
            return true;
        }

        template <typename C>
        auto count_components(std::vector<Bitset> & comps) -> C
        {
            if (comps.size() == 1)
                return count_component<C>(comps.front());

            std::vector<std::pair<std::size_t, std::size_t>> order;
            for (std::size_t i = 0 ; i < comps.size() ; ++i)
                order.emplace_back(smallest_domain(comps[i]), i);
            std::sort(order.begin(), order.end());

            C product = from_count<C>(1);
            for (auto & [size, i] : order) {
                C part = count_component<C>(comps[i]);
                if (is_zero(part))
                    return part;
                product = multiply(product, part);
            }
            return product;
        }

        template <typename C>
        auto count_component(const Bitset & comp) -> C
        {
            tick();
            if (comp.count() == 1)
                return from_count<C>(domain_size(comp.first()));

            std::string key;
            bool cacheable = cache_key(comp, key);
            if (cacheable) {
                auto & memo = cache<C>();
                if (auto it = memo.find(key) ; it != memo.end())
                    return it->second;
            }

            Vertex v = choose(comp);
            if (v == -1)
                return from_count<C>(0);

            Bitset rest = comp;
            rest.reset(v);
            auto sub = components(rest);

            C total = from_count<C>(0);
            auto try_candidate = [&] (Vertex c) {
                auto m = mark();
                if (place(v, c))
                    add_to(total, count_components<C>(sub));
                unplace(v, m);
            };

            if (constrained[v] > 0) {
                Bitset candidates = domain[v];
                candidates.for_each(try_candidate);
            }
            else
                for (Vertex c = 0 ; c < host_size ; ++c)
                    try_candidate(c);

            if (cacheable) {
                auto & memo = cache<C>();
                if (memo.size() >= options.cache_max_entries)
                    memo.clear();
                memo.emplace(std::move(key), total);
            }
            return total;
        }

        // Applies the pins; false if they are already inconsistent.
        auto apply_pins(std::span<const Pin> pins) -> bool
        {
            for (auto [v, c] : pins) {
                if (v < 0 || v >= pattern_size)
                    throw GraphError{"pinned pattern vertex " + std::to_string(v) + " out of range"};
                if (c < 0 || c >= host_size)
                    throw GraphError{"pinned host vertex " + std::to_string(c) + " out of range"};
                if (image[v] != -1) {
                    if (image[v] != c)
                        return false;
                    continue;
                }
                if (constrained[v] > 0 && ! domain[v].test(c))
                    return false;
                pinned[v] = true;
                if (! place(v, c))
                    return false;
            }
            return true;
        }

        template <typename C>
        auto count_all(std::span<const Pin> pins) -> C
        {
            reset();
            if (! apply_pins(pins))
                return from_count<C>(0);
            Bitset unplaced{pattern_size};
            for (Vertex v = 0 ; v < pattern_size ; ++v)
                if (image[v] == -1)
                    unplaced.set(v);
            if (unplaced.none())
                return from_count<C>(1);
            auto comps = components(unplaced);
            return count_components<C>(comps);
        }

        auto count(std::span<const Pin> pins) -> BigInt
        {
            try {
                return to_big(count_all<Small>(pins));
            }
            catch (const Overflow &) {
                return count_all<BigInt>(pins);
            }
        }

        // Plain backtracking over the whole pattern, no decomposition.
        auto enumerate(const HomVisitor & visit, std::uint64_t cap, EnumerationResult & result) -> bool
        {
            tick();
            Bitset unplaced{pattern_size};
            for (Vertex v = 0 ; v < pattern_size ; ++v)
                if (image[v] == -1)
                    unplaced.set(v);

            if (unplaced.none()) {
                if (result.visited == cap)
                    throw CapExceeded{"more than " + std::to_string(cap) + " homomorphisms"};
                ++result.visited;
                if (! visit(image)) {
                    result.stopped = true;
                    return false;
                }
                return true;
            }

            Vertex v = choose(unplaced);
            if (v == -1)
                return true;

            bool keep_going = true;
            auto try_candidate = [&] (Vertex c) {
                if (! keep_going)
                    return;
                auto m = mark();
                if (place(v, c))
                    keep_going = enumerate(visit, cap, result);
                unplace(v, m);
            };

            if (constrained[v] > 0) {
                Bitset candidates = domain[v];
                candidates.for_each(try_candidate);
            }
            else
                for (Vertex c = 0 ; c < host_size && keep_going ; ++c)
                    try_candidate(c);
            return keep_going;
        }
    };

    struct HomCounter::Impl : Engine
    {
        using Engine::Engine;
    };

    HomCounter::HomCounter(const Digraph & pattern, const Digraph & host, HomOptions options) :
        _imp(std::make_unique<Impl>(pattern, host, options))
    {
    }

    HomCounter::~HomCounter() = default;

    auto HomCounter::count() -> BigInt
    {
        return _imp->count({});
    }

    auto HomCounter::count(std::span<const Pin> pins) -> BigInt
    {
        return _imp->count(pins);
    }

    auto HomCounter::count_rooted(Vertex z, Vertex w, Vertex x, Vertex y) -> BigInt
    {
        const Pin pins[] = {{z, x}, {w, y}};
        return _imp->count(pins);
    }

    auto HomCounter::nodes() const -> std::uint64_t
    {
        return _imp->node_count;
    }

    auto count_hom(const Digraph & pattern, const Digraph & host, HomOptions options) -> BigInt
    {
        HomCounter counter{pattern, host, options};
        return counter.count();
    }

    auto count_hom_bruteforce(const Digraph & pattern, const Digraph & host,
            std::span<const Pin> pins, std::uint64_t budget) -> BigInt
    {
        const int k = pattern.size(), n = host.size();
        std::vector<Vertex> image(k, -1);
        for (auto [v, c] : pins) {
            if (v < 0 || v >= k || c < 0 || c >= n)
                throw GraphError{"pin out of range"};
            if (image[v] != -1 && image[v] != c)
                return 0;
            image[v] = c;
        }
        std::vector<Vertex> free;
        for (Vertex v = 0 ; v < k ; ++v)
            if (image[v] == -1)
                free.push_back(v);

        if (! free.empty() && n == 0)
            return 0;
        BigInt total_maps = pow(BigInt{n}, free.size());
        if (total_maps > BigInt{std::to_string(budget)})
            throw BudgetExceeded{"brute force would enumerate " + total_maps.get_str() + " maps"};

        auto arcs = pattern.arcs();
        for (auto v : free)
            image[v] = 0;

        std::uint64_t count = 0;
        while (true) {
            bool ok = true;
            for (auto [u, v] : arcs)
                if (! host.has_arc(image[u], image[v])) {
                    ok = false;
                    break;
                }
            if (ok)
                ++count;

            std::size_t i = 0;
            for ( ; i < free.size() ; ++i) {
                if (++image[free[i]] < n)
                    break;
                image[free[i]] = 0;
            }
            if (i == free.size())
                break;
        }
        return BigInt{std::to_string(count)};
    }

    auto count_hom_rooted(const RootedDigraph & pattern, const Digraph & host, Vertex x, Vertex y,
            HomOptions options) -> BigInt
    {
        pattern.validate();
        HomCounter counter{pattern.graph, host, options};
        return counter.count_rooted(pattern.z, pattern.w, x, y);
    }

    auto density(const Digraph & pattern, const Digraph & host) -> Rational
    {
        if (host.size() == 0)
            throw GraphError{"density into an empty host"};
        return make_rational(count_hom(pattern, host), pow(BigInt{host.size()}, pattern.size()));
    }

    auto conditional_density(const RootedDigraph & pattern, const Digraph & host, Vertex x, Vertex y) -> Rational
    {
        if (host.size() == 0)
            throw GraphError{"density into an empty host"};
        return make_rational(count_hom_rooted(pattern, host, x, y), pow(BigInt{host.size()}, pattern.graph.size() - 2));
    }

    auto enumerate_homs(const Digraph & pattern, const Digraph & host, std::span<const Pin> pins,
            const HomVisitor & visit, std::uint64_t cap) -> EnumerationResult
    {
        Engine search{pattern, host, HomOptions{}};
        EnumerationResult result;
        if (! search.apply_pins(pins))
            return result;
        search.enumerate(visit, cap, result);
        return result;
    }

    auto eval_quantum(const QuantumDigraph & g, const Digraph & host, HomOptions options) -> Rational
    {
        if (host.size() == 0)
            throw GraphError{"density into an empty host"};

        std::map<std::pair<int, std::vector<Arc>>, Rational> known;
        auto component_density = [&] (const Digraph & d) -> Rational {
            std::pair<int, std::vector<Arc>> key{d.size(), d.arcs()};
            if (auto it = known.find(key) ; it != known.end())
                return it->second;
            Rational t = make_rational(count_hom(d, host, options), pow(BigInt{host.size()}, d.size()));
            known.emplace(std::move(key), t);
            return t;
        };

        Rational total{0};
        for (auto & term : g.terms()) {
            Rational t{1};
            for (auto & comp : weak_components(term.graph)) {
                t *= component_density(induced_subdigraph(term.graph, comp));
                if (t == 0)
                    break;
            }
            total += term.coef * t;
        }
        return total;
    }
}
