#include <tourhom/spectral.hh>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace tourhom
{
    DensityMatrix::DensityMatrix(int order, BigInt denominator) :
        _order(order),
        _denominator(std::move(denominator))
    {
        if (order < 0)
            throw std::invalid_argument{"negative matrix order"};
        if (_denominator <= 0)
            throw std::invalid_argument{"density denominator must be positive"};
    }

    auto DensityMatrix::count(Vertex x, Vertex y) const -> BigInt
    {
        auto it = _counts.find({std::min(x, y), std::max(x, y)});
        return it == _counts.end() ? BigInt{0} : it->second;
    }

    auto DensityMatrix::entry(Vertex x, Vertex y) const -> Rational
    {
        return make_rational(count(x, y), _denominator);
    }

    auto DensityMatrix::set_count(Vertex x, Vertex y, BigInt value) -> void
    {
        if (x < 0 || y < 0 || x >= _order || y >= _order)
            throw std::out_of_range{"matrix index out of range"};
        Arc key{std::min(x, y), std::max(x, y)};
        if (value == 0)
            _counts.erase(key);
        else
            _counts[key] = std::move(value);
    }

    auto DensityMatrix::support() const -> std::vector<Vertex>
    {
        std::set<Vertex> rows;
        for (auto & [key, value] : _counts) {
            rows.insert(key.first);
            rows.insert(key.second);
        }
        return {rows.begin(), rows.end()};
    }

    auto DensityMatrix::mark_partial(std::vector<Arc> pairs) -> void
    {
        for (auto & [x, y] : pairs)
            if (x > y)
                std::swap(x, y);
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        _complete = false;
        _evaluated = std::move(pairs);
    }

    auto DensityMatrix::support_counts() const -> std::vector<std::vector<BigInt>>
    {
        auto rows = support();
        std::map<Vertex, std::size_t> index;
        for (std::size_t i = 0 ; i < rows.size() ; ++i)
            index[rows[i]] = i;
        std::vector<std::vector<BigInt>> dense(rows.size(), std::vector<BigInt>(rows.size(), 0));
        for (auto & [key, value] : _counts) {
            auto i = index[key.first], j = index[key.second];
            dense[i][j] = value;
            dense[j][i] = value;
        }
        return dense;
    }

    namespace
    {
        auto gadget_denominator(const RootedDigraph & gadget, const Digraph & host) -> BigInt
        {
            if (host.size() == 0)
                throw GraphError{"density matrix of an empty host"};
            return pow(BigInt{host.size()}, gadget.graph.size() - 2);
        }
    }

    namespace
    {
        // Pairs are handed out through a shared index; each worker owns a
        // counter, and results are written back in pair order.
        auto count_pairs(const RootedDigraph & gadget, const Digraph & host, const std::vector<Arc> & pairs,
                HomOptions options) -> std::vector<BigInt>
        {
            std::vector<BigInt> counts(pairs.size());
            unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
            workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(pairs.size(), 1)));

            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            auto work = [&] {
                try {
                    HomCounter counter{gadget.graph, host, options};
                    for (std::size_t p ; (p = next++) < pairs.size() ; )
                        counts[p] = counter.count_rooted(gadget.z, gadget.w, pairs[p].first, pairs[p].second);
                }
                catch (...) {
                    std::lock_guard lock{failure_mutex};
                    if (! failure)
                        failure = std::current_exception();
                    next = pairs.size();
                }
            };

            if (workers <= 1)
                work();
            else {
                std::vector<std::thread> pool;
                for (unsigned t = 0 ; t < workers ; ++t)
                    pool.emplace_back(work);
                for (auto & t : pool)
                    t.join();
            }
            if (failure)
                std::rethrow_exception(failure);
            return counts;
        }
    }

    auto density_matrix(const RootedDigraph & gadget, const Digraph & host, HomOptions options) -> DensityMatrix
    {
        gadget.validate();
        DensityMatrix m{host.size(), gadget_denominator(gadget, host)};
        std::vector<Arc> pairs;
        for (Vertex x = 0 ; x < host.size() ; ++x)
            for (Vertex y = x ; y < host.size() ; ++y)
                pairs.emplace_back(x, y);
        auto counts = count_pairs(gadget, host, pairs, options);
        for (std::size_t p = 0 ; p < pairs.size() ; ++p)
            m.set_count(pairs[p].first, pairs[p].second, std::move(counts[p]));
        return m;
    }

    auto density_matrix_on_pairs(const RootedDigraph & gadget, const Digraph & host, const std::vector<Arc> & pairs,
            HomOptions options) -> DensityMatrix
    {
        gadget.validate();
        DensityMatrix m{host.size(), gadget_denominator(gadget, host)};
        auto counts = count_pairs(gadget, host, pairs, options);
        for (std::size_t p = 0 ; p < pairs.size() ; ++p)
            m.set_count(pairs[p].first, pairs[p].second, std::move(counts[p]));
        m.mark_partial(pairs);
        return m;
    }

    namespace
    {
        using IntMatrix = std::vector<std::vector<BigInt>>;

        auto multiply(const IntMatrix & a, const IntMatrix & b) -> IntMatrix
        {
            const std::size_t n = a.size();
            IntMatrix c(n, std::vector<BigInt>(n, 0));
            for (std::size_t i = 0 ; i < n ; ++i)
                for (std::size_t k = 0 ; k < n ; ++k) {
                    if (a[i][k] == 0)
                        continue;
                    const auto & aik = a[i][k];
                    auto & row = c[i];
                    const auto & brow = b[k];
                    for (std::size_t j = 0 ; j < n ; ++j)
                        if (brow[j] != 0)
                            mpz_addmul(row[j].get_mpz_t(), aik.get_mpz_t(), brow[j].get_mpz_t());
                }
            return c;
        }

        // Trace of A B for symmetric B.
        auto trace_of_product(const IntMatrix & a, const IntMatrix & b) -> BigInt
        {
            BigInt total = 0;
            for (std::size_t i = 0 ; i < a.size() ; ++i)
                for (std::size_t j = 0 ; j < a.size() ; ++j)
                    mpz_addmul(total.get_mpz_t(), a[i][j].get_mpz_t(), b[i][j].get_mpz_t());
            return total;
        }

        auto matrix_power(const IntMatrix & c, int e) -> IntMatrix
        {
            IntMatrix result = c;
            for (int i = 1 ; i < e ; ++i)
                result = multiply(result, c);
            return result;
        }
    }

    auto trace_power(const DensityMatrix & m, int ell) -> BigInt
    {
        if (ell < 1)
            throw std::invalid_argument{"trace power must be at least 1"};
        auto c = m.support_counts();
        if (c.empty())
            return 0;
        if (ell == 1) {
            BigInt total = 0;
            for (std::size_t i = 0 ; i < c.size() ; ++i)
                total += c[i][i];
            return total;
        }
        int half = ell / 2;
        auto p = matrix_power(c, half);
        auto q = ell - half == half ? p : matrix_power(c, ell - half);
        return trace_of_product(p, q);
    }

    auto trace_powers_4_8_12(const DensityMatrix & m) -> TraceTriple
    {
        auto c = m.support_counts();
        if (c.empty())
            return {0, 0, 0};
        auto c2 = multiply(c, c);
        auto c4 = multiply(c2, c2);
        auto c8 = multiply(c4, c4);
        return {trace_of_product(c2, c2), trace_of_product(c4, c4), trace_of_product(c8, c4)};
    }

    auto symmetric_eigenvalues(const Eigen::MatrixXd & a) -> std::vector<double>
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument{"eigenvalues of a non-square matrix"};
        if (a.rows() == 0)
            return {};
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver{a, Eigen::EigenvaluesOnly};
        if (solver.info() != Eigen::Success)
            throw std::runtime_error{"symmetric eigensolver did not converge"};
        std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
        std::stable_sort(values.begin(), values.end(), [] (double u, double v) { return std::abs(u) > std::abs(v); });
        return values;
    }

    auto scaled_spectrum(const DensityMatrix & m) -> ScaledSpectrum
    {
        ScaledSpectrum result;
        result.scale = 0;
        auto c = m.support_counts();
        if (! c.empty()) {
            BigInt largest = 0;
            for (auto & [key, value] : m.nonzero())
                largest = std::max(largest, BigInt{abs(value)});
            const auto n = static_cast<Eigen::Index>(c.size());
            Eigen::MatrixXd a(n, n);
            for (Eigen::Index i = 0 ; i < n ; ++i)
                for (Eigen::Index j = 0 ; j < n ; ++j)
                    a(i, j) = ratio_to_double(c[i][j], largest);
            result.eigenvalues = symmetric_eigenvalues(a);
            result.scale = make_rational(largest, m.denominator());
        }
        result.eigenvalues.resize(m.order(), 0.0);
        return result;
    }

    auto power_sum(std::span<const double> eigenvalues, int ell) -> double
    {
        double total = 0;
        for (double v : eigenvalues)
            total += std::pow(v, ell);
        return total;
    }

    auto power_sum(const DensityMatrix & m, int ell) -> double
    {
        auto s = scaled_spectrum(m);
        return power_sum(s.eigenvalues, ell) * std::pow(to_double(s.scale), ell);
    }

    auto necklace_density_direct(const RootedDigraph & gadget, const Digraph & host, int ell, HomOptions options) -> Rational
    {
        auto necklace = build_necklace(gadget, ell);
        if (host.size() == 0)
            throw GraphError{"density into an empty host"};
        return make_rational(count_hom(necklace, host, options), pow(BigInt{host.size()}, necklace.size()));
    }

    auto necklace_density_trace(const DensityMatrix & m, int ell, int exponent) -> Rational
    {
        BigInt n{m.order()};
        if (pow(n, exponent) != m.denominator())
            throw std::invalid_argument{"matrix denominator is not N^" + std::to_string(exponent)};
        return make_rational(trace_power(m, ell), pow(n, static_cast<unsigned long>(ell) * (exponent + 1)));
    }

    auto necklace_density_spectral(const DensityMatrix & m, int ell) -> double
    {
        if (ell < 3)
            throw std::invalid_argument{"necklace length must be at least 3"};
        auto s = scaled_spectrum(m);
        if (m.is_zero())
            return 0;
        Rational step = s.scale / Rational{m.order()};
        return power_sum(s.eigenvalues, ell) * std::pow(to_double(step), ell);
    }

    auto xy_point(const DensityMatrix & m) -> XYPoint
    {
        if (m.is_zero())
            throw DegenerateHost{"the fourth power sum vanishes"};
        auto traces = trace_powers_4_8_12(m);
        XYPoint p;
        p.exact_x = make_rational(traces.t8, traces.t4 * traces.t4);
        p.exact_y = make_rational(traces.t12, traces.t4 * traces.t4 * traces.t4);
        p.x = to_double(*p.exact_x);
        p.y = to_double(*p.exact_y);
        p.traces = std::move(traces);
        return p;
    }

    auto xy_point_spectral(const DensityMatrix & m) -> XYPoint
    {
        if (m.is_zero())
            throw DegenerateHost{"the fourth power sum vanishes"};
        auto s = scaled_spectrum(m);
        double p4 = power_sum(s.eigenvalues, 4);
        XYPoint p;
        p.x = power_sum(s.eigenvalues, 8) / (p4 * p4);
        p.y = power_sum(s.eigenvalues, 12) / (p4 * p4 * p4);
        return p;
    }

    auto xy_point(const RootedDigraph & gadget, const Digraph & host, HomOptions options) -> XYPoint
    {
        return xy_point(density_matrix(gadget, host, options));
    }

    auto graphon_pattern_check(const DensityMatrix & m, const HostAtlas & atlas, int i) -> GraphonVerdict
    {
        std::set<Arc> expected;
        for (auto & block : atlas.blocks)
            if (block.i == i)
                for (auto & cell : block.cells) {
                    Vertex a = block.base.at(cell.edge.first), b = block.base.at(cell.edge.second);
                    expected.emplace(std::min(a, b), std::max(a, b));
                }

        GraphonVerdict verdict;
        verdict.expected_pairs = expected.size();
        auto fail = [&] (const std::string & reason, Arc pair) {
            verdict.holds = false;
            verdict.reason = reason;
            verdict.offending = pair;
            return verdict;
        };

        std::optional<BigInt> common;
        auto check = [&] (Arc pair, const BigInt & value) -> std::optional<std::string> {
            bool want = expected.contains(pair);
            if (want && value == 0)
                return "zero entry on a graph edge";
            if (! want && value != 0)
                return "nonzero entry off the graph edges";
            if (want) {
                if (! common)
                    common = value;
                else if (*common != value)
                    return "unequal entries on graph edges";
            }
            return std::nullopt;
        };

        if (m.complete()) {
            for (auto & [pair, value] : m.nonzero()) {
                ++verdict.checked_pairs;
                if (auto problem = check(pair, value))
                    return fail(*problem, pair);
            }
            for (auto & pair : expected)
                if (! m.nonzero().contains(pair)) {
                    ++verdict.checked_pairs;
                    return fail("zero entry on a graph edge", pair);
                }
        }
        else
            for (auto & pair : m.evaluated()) {
                ++verdict.checked_pairs;
                if (auto problem = check(pair, m.count(pair.first, pair.second)))
                    return fail(*problem, pair);
            }

        if (! common) {
            verdict.reason = "no graph edge was evaluated";
            return verdict;
        }
        verdict.holds = true;
        verdict.count = *common;
        if (mpz_perfect_square_p(common->get_mpz_t()))
            verdict.b = sqrt(*common);
        verdict.a = make_rational(*common, m.denominator());
        return verdict;
    }

    namespace
    {
        template <typename Cell>
        auto write_csv(const DensityMatrix & m, Cell cell) -> std::string
        {
            std::ostringstream out;
            out << "vertex";
            for (Vertex y = 0 ; y < m.order() ; ++y)
                out << ',' << y;
            out << '\n';
            for (Vertex x = 0 ; x < m.order() ; ++x) {
                out << x;
                for (Vertex y = 0 ; y < m.order() ; ++y)
                    out << ',' << cell(x, y);
                out << '\n';
            }
            return out.str();
        }

        auto split(const std::string & line) -> std::vector<std::string>
        {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream in{line};
            while (std::getline(in, cell, ','))
                cells.push_back(cell);
            return cells;
        }
    }

    auto counts_to_csv(const DensityMatrix & m) -> std::string
    {
        return write_csv(m, [&] (Vertex x, Vertex y) { return m.count(x, y).get_str(); });
    }

    auto densities_to_csv(const DensityMatrix & m) -> std::string
    {
        return write_csv(m, [&] (Vertex x, Vertex y) { return to_string(m.entry(x, y)); });
    }

    auto density_matrix_from_csv(const std::string & text) -> DensityMatrix
    {
        std::istringstream in{text};
        std::string line;
        if (! std::getline(in, line))
            throw std::invalid_argument{"empty matrix file"};
        const int n = static_cast<int>(split(line).size()) - 1;
        if (n < 0)
            throw std::invalid_argument{"malformed matrix header"};

        std::vector<std::vector<Rational>> entries;
        BigInt common = 1;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            auto cells = split(line);
            if (static_cast<int>(cells.size()) != n + 1)
                throw std::invalid_argument{"matrix row " + std::to_string(entries.size()) + " has the wrong length"};
            std::vector<Rational> row;
            for (int j = 1 ; j <= n ; ++j) {
                row.push_back(parse_rational(cells[j]));
                mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), row.back().get_den_mpz_t());
            }
            entries.push_back(std::move(row));
        }
        if (static_cast<int>(entries.size()) != n)
            throw std::invalid_argument{"matrix is not square"};

        DensityMatrix m{n, common};
        for (int x = 0 ; x < n ; ++x)
            for (int y = x ; y < n ; ++y) {
                if (entries[x][y] != entries[y][x])
                    throw std::invalid_argument{"matrix is not symmetric at (" + std::to_string(x) + "," + std::to_string(y) + ")"};
                Rational scaled = entries[x][y] * Rational{common};
                m.set_count(x, y, scaled.get_num());
            }
        return m;
    }
}
