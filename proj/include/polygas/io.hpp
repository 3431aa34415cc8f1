#pragma once

#include "polygas/graph.hpp"
#include "polygas/models.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace polygas {

struct LoadedGraph {
    InteractionGraph graph;
    std::map<PolymerId, std::string> labels;  // side table, I/O only
};

/// Text format: optional '#' comment lines, a header line `n <count>`, then
/// one `u v` line per incompatible pair.
LoadedGraph load_graph_text(std::istream& in);
void save_graph_text(std::ostream& out, const InteractionGraph& g,
                     const std::map<PolymerId, std::string>& labels = {});

/// JSON format: {"n": int, "edges": [[u,v],...], "labels": {"0": "name", ...}}.
LoadedGraph load_graph_json(const std::string& text);

/// Family JSON: {"sites": [...], "polymers": [[site,...],...]} where polymer
/// entries repeat site values from the sites array.
SubsetPolymerFamily family_from_json(const std::string& text);

/// A realized model: descriptor models carry a finite graph (except the
/// closed-form bounded-degree family) plus the polymer whose neighborhood
/// stands in for the infinite-volume local structure.
struct ModelInstance {
    std::string name;
    bool closed_form_only = false;  // degree:D carries no finite graph
    InteractionGraph graph;
    PolymerId focal = 0;
    unsigned degree = 0;  // maximal degree used by the closed forms
    std::optional<SubsetPolymerFamily> family;
    std::vector<double> reference_polynomial;  // printed criterion, when it
                                               // differs from enumeration
    std::string note;
};

/// Builtin descriptors: selfx:N, complete:N, tree:D, degree:D, domino:WxH,
/// tri:rR. Returns nothing when the string is not a descriptor.
std::optional<ModelInstance> parse_model(const std::string& descriptor);

/// Descriptor, graph file (text or JSON) or family JSON file.
ModelInstance load_model_or_graph(const std::string& arg);

}  // namespace polygas
