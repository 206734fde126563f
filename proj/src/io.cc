#include <tourhom/io.hh>

#include <fstream>
#include <sstream>

namespace tourhom
{
    auto parse_graph_text(std::istream & in) -> ParsedGraphText
    {
        ParsedGraphText result;
        bool have_header = false;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (! line.empty() && line.back() == '\r')
                line.pop_back();
            auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#')
                continue;

            std::istringstream words{line};
            auto fail = [&] (const std::string & why) {
                throw FormatError{"line " + std::to_string(line_no) + ": " + why};
            };

            if (! have_header) {
                std::string keyword;
                words >> keyword;
                if (keyword != "digraph" && keyword != "graph")
                    fail("expected 'digraph <n>' header");
                if (! (words >> result.n) || result.n < 0)
                    fail("bad vertex count");
                result.undirected_header = (keyword == "graph");
                have_header = true;
                continue;
            }

            if (line.compare(first, 5, "roots") == 0) {
                std::string keyword;
                Vertex z, w;
                words >> keyword;
                if (! (words >> z >> w))
                    fail("bad roots line");
                if (result.roots)
                    fail("repeated roots line");
                result.roots = {z, w};
                continue;
            }

            Vertex u, v;
            if (! (words >> u >> v))
                fail("expected 'u v'");
            std::string extra;
            if (words >> extra)
                fail("trailing text");
            result.pairs.emplace_back(u, v);
        }
        if (! have_header)
            throw FormatError{"missing 'digraph <n>' header"};
        return result;
    }

    auto parse_graph_text(const std::string & text) -> ParsedGraphText
    {
        std::istringstream in{text};
        return parse_graph_text(in);
    }

    auto read_text_file(const std::string & path) -> std::string
    {
        std::ifstream in{path};
        if (! in)
            throw FormatError{"cannot open '" + path + "'"};
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto write_text_file(const std::string & path, const std::string & contents) -> void
    {
        std::ofstream out{path};
        if (! out)
            throw FormatError{"cannot write '" + path + "'"};
        out << contents;
        if (! out)
            throw FormatError{"error writing '" + path + "'"};
    }

    auto load_digraph(const std::string & path) -> Digraph
    {
        auto parsed = parse_graph_text(read_text_file(path));
        return Digraph::from_arcs(parsed.n, parsed.pairs);
    }

    auto load_rooted(const std::string & path) -> RootedDigraph
    {
        auto parsed = parse_graph_text(read_text_file(path));
        if (! parsed.roots)
            throw FormatError{"'" + path + "' has no roots line"};
        RootedDigraph result{Digraph::from_arcs(parsed.n, parsed.pairs), parsed.roots->first, parsed.roots->second, {}};
        result.validate();
        return result;
    }

    auto load_tournament(const std::string & path) -> Tournament
    {
        auto parsed = parse_graph_text(read_text_file(path));
        return Tournament::make(parsed.n, parsed.pairs);
    }

    auto load_simple_graph(const std::string & path) -> SimpleGraph
    {
        auto parsed = parse_graph_text(read_text_file(path));
        return SimpleGraph::make(parsed.n, parsed.pairs);
    }

    auto to_text(const Digraph & g, std::optional<std::pair<Vertex, Vertex>> roots) -> std::string
    {
        std::ostringstream out;
        out << "digraph " << g.size() << '\n';
        if (roots)
            out << "roots " << roots->first << ' ' << roots->second << '\n';
        for (auto [u, v] : g.arcs())
            out << u << ' ' << v << '\n';
        return out.str();
    }

    auto to_text(const RootedDigraph & g) -> std::string
    {
        return to_text(g.graph, std::pair{g.z, g.w});
    }

    auto to_text(const SimpleGraph & g) -> std::string
    {
        std::ostringstream out;
        out << "graph " << g.n << '\n';
        for (auto [a, b] : g.edges)
            out << a << ' ' << b << '\n';
        return out.str();
    }
}
