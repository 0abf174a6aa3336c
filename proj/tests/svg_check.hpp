#pragma once

// Parses an SVG document as XML and counts polylines per data series group.

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <map>
#include <sstream>
#include <string>

namespace svg_check {

struct Summary {
    std::map<std::string, int> polylines;  ///< keyed by data-name
    int truth_polylines = 0;
    bool has_truth = false;
};

/// Throws boost::property_tree::xml_parser_error if the document is not well formed.
inline Summary inspect(const std::string& svg) {
    namespace pt = boost::property_tree;
    std::istringstream in(svg);
    pt::ptree tree;
    pt::read_xml(in, tree);
    Summary out;
    for (const auto& [tag, node] : tree.get_child("svg")) {
        if (tag != "g") continue;
        const auto cls = node.get<std::string>("<xmlattr>.class", "");
        if (cls != "series" && cls != "truth") continue;
        int count = 0;
        for (const auto& [child, _] : node) count += child == "polyline";
        if (cls == "truth") {
            out.has_truth = true;
            out.truth_polylines = count;
        } else {
            out.polylines[node.get<std::string>("<xmlattr>.data-name")] = count;
        }
    }
    return out;
}

}  // namespace svg_check
