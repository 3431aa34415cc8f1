#include "polygas/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polygas {

using nlohmann::json;

LoadedGraph load_graph_text(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> n;
    std::vector<std::pair<PolymerId, PolymerId>> pairs;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        if (!n) {
            std::string tag;
            if (!(fields >> tag)) continue;  // blank line before the header
            long long count = -1;
            if (tag != "n" || !(fields >> count) || count < 0)
                throw std::invalid_argument("graph text line " + std::to_string(lineno) +
                                            ": expected header `n <count>`");
            n = static_cast<std::size_t>(count);
            continue;
        }
        long long u, v;
        if (!(fields >> u)) continue;
        if (!(fields >> v) || u < 0 || v < 0)
            throw std::invalid_argument("graph text line " + std::to_string(lineno) +
                                        ": expected `u v`");
        pairs.emplace_back(static_cast<PolymerId>(u), static_cast<PolymerId>(v));
    }
    if (!n) throw std::invalid_argument("graph text is missing the `n <count>` header");
    return LoadedGraph{build_graph(*n, pairs), {}};
}

void save_graph_text(std::ostream& out, const InteractionGraph& g,
                     const std::map<PolymerId, std::string>& labels) {
    out << "# polymer incompatibility graph\n";
    for (const auto& [id, label] : labels) out << "# label " << id << " " << label << "\n";
    out << "n " << g.n_polymers() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

LoadedGraph load_graph_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.is_object() || !doc.contains("n"))
        throw std::invalid_argument("graph JSON needs an object with an `n` field");
    LoadedGraph out;
    std::vector<std::pair<PolymerId, PolymerId>> pairs;
    for (const auto& e : doc.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph JSON edges must be [u,v] pairs");
        pairs.emplace_back(e[0].get<PolymerId>(), e[1].get<PolymerId>());
    }
    out.graph = build_graph(doc.at("n").get<std::size_t>(), pairs);
    if (doc.contains("labels"))
        for (const auto& [key, value] : doc.at("labels").items())
            out.labels[static_cast<PolymerId>(std::stoull(key))] = value.get<std::string>();
    return out;
}

SubsetPolymerFamily family_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.is_object() || !doc.contains("sites") || !doc.contains("polymers"))
        throw std::invalid_argument("family JSON needs `sites` and `polymers` arrays");
    const json& sites = doc.at("sites");

    SubsetPolymerFamily f;
    f.n_sites = sites.size();
    f.site_labels.reserve(sites.size());
    for (const auto& s : sites) f.site_labels.push_back(s.dump());

    const auto site_index = [&](const json& value) -> std::size_t {
        for (std::size_t i = 0; i < sites.size(); ++i)
            if (sites[i] == value) return i;
        throw std::invalid_argument("polymer refers to unknown site " + value.dump());
    };
    for (const auto& p : doc.at("polymers")) {
        if (!p.is_array() || p.empty())
            throw std::invalid_argument("each polymer must be a nonempty array of sites");
        std::vector<std::size_t> cells;
        for (const auto& s : p) cells.push_back(site_index(s));
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        f.polymers.push_back(std::move(cells));
    }
    return f;
}

namespace {

std::optional<long long> parse_count(const std::string& text) {
    if (text.empty()) return std::nullopt;
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return std::stoll(text);
}

ModelInstance self_exclusion_model(std::size_t n) {
    ModelInstance m;
    m.graph = InteractionGraph(n);
    m.degree = 0;
    return m;
}

ModelInstance complete_model(std::size_t n) {
    ModelInstance m;
    m.graph = InteractionGraph(n);
    for (PolymerId u = 0; u < n; ++u)
        for (PolymerId v = u + 1; v < n; ++v) m.graph.add_incompatibility(u, v);
    m.degree = n > 0 ? static_cast<unsigned>(n - 1) : 0;
    return m;
}

/// Two-level tree whose interior vertex (the root) has the full degree D;
/// every first-level vertex also reaches degree D through D-1 leaves.
ModelInstance tree_model(unsigned degree) {
    ModelInstance m;
    const std::size_t n = 1 + degree + (degree > 0 ? degree * (degree - 1) : 0);
    m.graph = InteractionGraph(n);
    PolymerId next = 1 + degree;
    for (unsigned c = 1; c <= degree; ++c) {
        m.graph.add_incompatibility(0, c);
        for (unsigned l = 0; l + 1 < degree; ++l) m.graph.add_incompatibility(c, next++);
    }
    m.degree = degree;
    return m;
}

}  // namespace

std::optional<ModelInstance> parse_model(const std::string& descriptor) {
    const auto colon = descriptor.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string head = descriptor.substr(0, colon);
    const std::string tail = descriptor.substr(colon + 1);

    ModelInstance m;
    if (head == "selfx") {
        const auto n = parse_count(tail);
        if (!n || *n < 1) throw std::invalid_argument("selfx:N needs N >= 1");
        m = self_exclusion_model(static_cast<std::size_t>(*n));
    } else if (head == "complete") {
        const auto n = parse_count(tail);
        if (!n || *n < 1) throw std::invalid_argument("complete:N needs N >= 1");
        m = complete_model(static_cast<std::size_t>(*n));
    } else if (head == "tree") {
        const auto d = parse_count(tail);
        if (!d) throw std::invalid_argument("tree:D needs a degree");
        m = tree_model(static_cast<unsigned>(*d));
    } else if (head == "degree") {
        const auto d = parse_count(tail);
        if (!d) throw std::invalid_argument("degree:D needs a degree");
        m.closed_form_only = true;
        m.degree = static_cast<unsigned>(*d);
        m.note = "bounded-degree closed forms; the criterion value on a regular tree";
    } else if (head == "domino") {
        const auto x = tail.find('x');
        if (x == std::string::npos) throw std::invalid_argument("domino:WxH needs a window size");
        const auto w = parse_count(tail.substr(0, x));
        const auto h = parse_count(tail.substr(x + 1));
        if (!w || !h) throw std::invalid_argument("domino:WxH needs a window size");
        m.family = domino_family(static_cast<std::size_t>(*w), static_cast<std::size_t>(*h));
        m.graph = build_family_graph(*m.family);
        m.focal = interior_polymer(*m.family);
        m.degree = static_cast<unsigned>(m.graph.degree(m.focal));
    } else if (head == "tri") {
        if (tail.empty() || tail[0] != 'r')
            throw std::invalid_argument("tri:rR needs a radius, e.g. tri:r2");
        const auto r = parse_count(tail.substr(1));
        if (!r) throw std::invalid_argument("tri:rR needs a radius, e.g. tri:r2");
        TriangularPatch patch = triangular_patch(static_cast<int>(*r));
        m.graph = std::move(patch.graph);
        m.focal = patch.center;
        m.degree = static_cast<unsigned>(m.graph.degree(m.focal));
        m.reference_polynomial = {1.0, 7.0, 8.0, 2.0};
        m.note =
            "printed criterion polynomial 1+7u+8u^2+2u^3 differs from the enumerated "
            "neighborhood polynomial";
    } else {
        return std::nullopt;
    }
    m.name = descriptor;
    return m;
}

ModelInstance load_model_or_graph(const std::string& arg) {
    if (auto m = parse_model(arg)) return *m;

    std::ifstream in(arg);
    if (!in)
        throw std::invalid_argument("`" + arg +
                                    "` is neither a model descriptor nor a readable file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    ModelInstance m;
    m.name = arg;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const json doc = json::parse(text);
        if (doc.contains("sites")) {
            m.family = family_from_json(text);
            m.graph = build_family_graph(*m.family);
        } else {
            m.graph = load_graph_json(text).graph;
        }
    } else {
        std::istringstream stream(text);
        m.graph = load_graph_text(stream).graph;
    }
    m.degree = static_cast<unsigned>(m.graph.n_polymers() ? m.graph.degree(m.focal) : 0);
    return m;
}

}  // namespace polygas
