#include "mantel/hypergraph_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace mantel {
namespace {

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t line_no) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (line[pos] == ' ') {
            ++pos;
            continue;
        }
        std::uint64_t value = 0;
        const char* first = line.data() + pos;
        const char* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || (ptr != last && *ptr != ' '))
            throw InputError("line " + std::to_string(line_no) + ": expected unsigned integers", line_no);
        out.push_back(value);
        pos = static_cast<std::size_t>(ptr - line.data());
    }
    return out;
}

}  // namespace

void write_text(std::ostream& os, const Hypergraph& h) {
    os << h.num_vertices() << ' ' << h.uniformity() << ' ' << h.size() << '\n';
    for (EdgeId id = 0; id < h.size(); ++id) {
        const Edge e = h.edge(id);
        for (int i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << '\n';
    }
}

std::string to_text(const Hypergraph& h) {
    std::ostringstream os;
    write_text(os, h);
    return os.str();
}

Hypergraph parse_text(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty()) throw InputError("empty input: missing header line", 1);

    const auto header = parse_numbers(lines[0], 1);
    if (header.size() != 3) throw InputError("line 1: header must be \"n k m\"", 1);
    const std::size_t n = header[0], m = header[2];
    const int k = static_cast<int>(header[1]);
    if (lines.size() - 1 != m)
        throw InputError("header declares " + std::to_string(m) + " edges, found " +
                             std::to_string(lines.size() - 1) + " edge lines",
                         1);
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(m);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto nums = parse_numbers(lines[i], i + 1);
        std::vector<Vertex> e;
        for (std::uint64_t x : nums) {
            if (x >= n) throw InputError("line " + std::to_string(i + 1) + ": vertex out of range", i + 1);
            e.push_back(static_cast<Vertex>(x));
        }
        edges.push_back(std::move(e));
    }
    try {
        return build_hypergraph(n, k, edges);
    } catch (const InputError& err) {
        const std::size_t line = err.item() ? *err.item() + 2 : 1;
        throw InputError("line " + std::to_string(line) + ": " + err.what(), line);
    }
}

Hypergraph read_text(std::istream& is) {
    const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
    return parse_text(text);
}

Hypergraph load_hypergraph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return read_text(in);
}

void save_hypergraph(const std::string& path, const Hypergraph& h) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    write_text(out, h);
}

}  // namespace mantel
