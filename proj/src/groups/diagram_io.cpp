#include <sstream>

#include "json.hpp"
#include "smforge/groups.hpp"

namespace smforge {

namespace {

using nlohmann::ordered_json;

std::string letter_text(Letter l) { return to_string(Word{l}); }

Letter parse_letter(const std::string& s) {
    const Word w = parse_word(s);
    if (w.size() != 1) throw ParseError("expected a single letter, got '" + s + "'");
    return w[0];
}

std::optional<DiagramKind> parse_kind(const std::string& s) {
    for (auto k : {DiagramKind::trapezium, DiagramKind::semi_trapezium, DiagramKind::compressed, DiagramKind::disk})
        if (kind_name(k) == s) return k;
    return std::nullopt;
}

std::string dot_escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r;
}

}  // namespace

std::string diagram_to_json(const GridDiagram& d) {
    ordered_json j;
    j["kind"] = kind_name(d.kind);
    j["machine"] = d.machine;
    j["bottom"] = to_string(d.bottom);
    j["top"] = to_string(d.top);
    j["left"] = to_string(d.left);
    j["right"] = to_string(d.right);
    j["contour"] = to_string(d.contour);
    j["glued"] = d.glued;
    j["hub"] = d.hub ? ordered_json(to_string(*d.hub)) : ordered_json(nullptr);
    j["hub_measure"] = d.hub_measure;
    j["area"] = d.area();
    ordered_json bands = ordered_json::array();
    for (const auto& b : d.bands) {
        ordered_json jb;
        jb["rule"] = b.rule;
        jb["rule_name"] = b.rule_name;
        jb["left"] = letter_text(b.left);
        jb["right"] = letter_text(b.right);
        jb["bottom"] = to_string(b.bottom);
        jb["top"] = to_string(b.top);
        jb["bottom_left"] = to_string(b.bottom_left);
        jb["bottom_right"] = to_string(b.bottom_right);
        jb["top_left"] = to_string(b.top_left);
        jb["top_right"] = to_string(b.top_right);
        ordered_json cells = ordered_json::array();
        for (const auto& c : b.cells) {
            ordered_json jc;
            jc["id"] = c.id;
            jc["class"] = class_tag(c.cls);
            jc["bottom"] = to_string(c.bottom);
            jc["top"] = to_string(c.top);
            jc["left"] = letter_text(c.left);
            jc["right"] = letter_text(c.right);
            jc["coordinate"] = c.coordinate;
            jc["t"] = c.t_cell;
            cells.push_back(std::move(jc));
        }
        jb["cells"] = std::move(cells);
        bands.push_back(std::move(jb));
    }
    j["bands"] = std::move(bands);
    return j.dump(1) + "\n";
}

GridDiagram diagram_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("diagram document is not valid JSON: ") + e.what());
    }
    try {
        GridDiagram d;
        auto kind = parse_kind(j.at("kind").get<std::string>());
        if (!kind) throw ParseError("unknown diagram kind");
        d.kind = *kind;
        d.machine = j.at("machine").get<std::string>();
        d.bottom = parse_word(j.at("bottom").get<std::string>());
        d.top = parse_word(j.at("top").get<std::string>());
        d.left = parse_word(j.at("left").get<std::string>());
        d.right = parse_word(j.at("right").get<std::string>());
        d.contour = parse_word(j.at("contour").get<std::string>());
        d.glued = j.at("glued").get<bool>();
        if (!j.at("hub").is_null()) d.hub = parse_word(j.at("hub").get<std::string>());
        d.hub_measure = j.at("hub_measure").get<std::size_t>();
        for (const auto& jb : j.at("bands")) {
            Band b;
            b.rule = jb.at("rule").get<RuleRef>();
            b.rule_name = jb.at("rule_name").get<std::string>();
            b.left = parse_letter(jb.at("left").get<std::string>());
            b.right = parse_letter(jb.at("right").get<std::string>());
            b.bottom = parse_word(jb.at("bottom").get<std::string>());
            b.top = parse_word(jb.at("top").get<std::string>());
            b.bottom_left = parse_word(jb.at("bottom_left").get<std::string>());
            b.bottom_right = parse_word(jb.at("bottom_right").get<std::string>());
            b.top_left = parse_word(jb.at("top_left").get<std::string>());
            b.top_right = parse_word(jb.at("top_right").get<std::string>());
            for (const auto& jc : jb.at("cells")) {
                Cell c;
                c.id = jc.at("id").get<std::size_t>();
                auto cls = parse_class_tag(jc.at("class").get<std::string>());
                if (!cls) throw ParseError("unknown cell class");
                c.cls = *cls;
                c.bottom = parse_word(jc.at("bottom").get<std::string>());
                c.top = parse_word(jc.at("top").get<std::string>());
                c.left = parse_letter(jc.at("left").get<std::string>());
                c.right = parse_letter(jc.at("right").get<std::string>());
                c.coordinate = jc.at("coordinate").get<int>();
                c.t_cell = jc.at("t").get<bool>();
                b.cells.push_back(std::move(c));
            }
            d.bands.push_back(std::move(b));
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed diagram document: ") + e.what());
    }
}

std::string diagram_to_dot(const GridDiagram& d) {
    std::ostringstream os;
    os << "digraph diagram {\n  node [shape=box, fontsize=10];\n  rankdir=BT;\n";
    os << "  label=\"" << dot_escape(kind_name(d.kind) + " of " + d.machine + ", area " + std::to_string(d.area()))
       << "\";\n";
    for (std::size_t j = 0; j < d.bands.size(); ++j) {
        const auto& b = d.bands[j];
        os << "  subgraph band" << j << " {\n    rank=same;\n";
        os << "    b" << j << " [shape=plaintext, label=\"" << dot_escape(b.rule_name) << "\"];\n";
        std::string prev = "b" + std::to_string(j);
        for (const auto& c : b.cells) {
            const std::string id = "c" + std::to_string(c.id);
            os << "    " << id << " [label=\"" << dot_escape(to_string(c.bottom) + " | " + to_string(c.top)) << "\"];\n";
            os << "    " << prev << " -> " << id << " [label=\"" << dot_escape(letter_text(c.left))
               << "\", arrowhead=none];\n";
            prev = id;
        }
        os << "  }\n";
        if (j > 0) os << "  b" << (j - 1) << " -> b" << j << " [style=dotted];\n";
    }
    if (d.hub) {
        os << "  hub [shape=doublecircle, label=\"hub\"];\n";
        if (!d.bands.empty()) os << "  b" << (d.bands.size() - 1) << " -> hub [style=dotted];\n";
    }
    os << "}\n";
    return os.str();
}

std::string diagram_to_text(const GridDiagram& d) {
    std::ostringstream os;
    const auto sig = diagram_signature(d);
    os << kind_name(d.kind) << " of " << d.machine << "\n";
    os << "bottom: " << to_string(d.bottom) << "\n";
    os << "top:    " << to_string(d.top) << "\n";
    os << "left:   " << to_string(d.left) << "\n";
    os << "right:  " << to_string(d.right) << "\n";
    if (d.glued) os << "sides glued\n";
    if (d.hub) os << "hub:    " << to_string(*d.hub) << "\n";
    os << "bands: " << d.bands.size() << "  area: " << d.area() << "\n";
    os << "signature: (" << sig.disks << ", " << sig.t_cells << ", " << sig.a_cells << ", " << sig.A_cells << ")\n";
    for (std::size_t j = 0; j < d.bands.size(); ++j)
        os << "  " << j << " " << d.bands[j].rule_name << ": " << d.bands[j].cells.size() << " cells\n";
    return os.str();
}

}  // namespace smforge
