#pragma once

#include <tourhom/digraph.hh>

#include <iosfwd>
#include <optional>
#include <string>

namespace tourhom
{
    /// Text format: a header line `digraph <n>` (or `graph <n>` for an
    /// undirected edge list), an optional `roots <z> <w>` line, then one
    /// `u v` pair per line, 0-indexed. Blank lines and lines starting with '#'
    /// are ignored.
    struct ParsedGraphText
    {
        int n = 0;
        bool undirected_header = false;
        std::optional<std::pair<Vertex, Vertex>> roots;
        std::vector<Arc> pairs;
    };

    class FormatError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    auto parse_graph_text(std::istream & in) -> ParsedGraphText;
    auto parse_graph_text(const std::string & text) -> ParsedGraphText;

    auto read_text_file(const std::string & path) -> std::string;
    auto write_text_file(const std::string & path, const std::string & contents) -> void;

    auto load_digraph(const std::string & path) -> Digraph;
    auto load_rooted(const std::string & path) -> RootedDigraph;
    auto load_tournament(const std::string & path) -> Tournament;
    auto load_simple_graph(const std::string & path) -> SimpleGraph;

    auto to_text(const Digraph & g, std::optional<std::pair<Vertex, Vertex>> roots = std::nullopt) -> std::string;
    auto to_text(const RootedDigraph & g) -> std::string;
    auto to_text(const SimpleGraph & g) -> std::string;
}
