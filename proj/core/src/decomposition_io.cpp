#include "msox/decomposition_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "msox/error.hpp"

namespace msox {

namespace {

using nlohmann::json;

void collect_names(const json& node, std::set<std::string>& names, int& max_color) {
    if (!node.is_object() || !node.contains("op")) throw ParseError("decomposition json: bad node");
    std::string op = node.at("op");
    if (op == "const") {
        max_color = std::max(max_color, node.at("color").get<int>());
        if (node.contains("loops"))
            for (const auto& s : node.at("loops")) names.insert(s.get<std::string>());
    } else if (op == "marked") {
    } else if (op == "recolor") {
        for (const auto& v : node.at("map")) max_color = std::max(max_color, v.get<int>());
        collect_names(node.at("child"), names, max_color);
    } else if (op == "join") {
        if (node.contains("M"))
            for (const auto& rule : node.at("M")) {
                names.insert(rule.at(0).get<std::string>());
                max_color = std::max(max_color, rule.at(2).get<int>());
                max_color = std::max(max_color, rule.at(3).get<int>());
            }
        collect_names(node.at("left"), names, max_color);
        collect_names(node.at("right"), names, max_color);
    } else {
        throw ParseError("decomposition json: unknown op '" + op + "'");
    }
}

struct Loader {
    Signature sig;
    int base = 0;
    int next_leaf = 0;

    int color_in(int c) const {
        int v = c - base;
        if (v < 0 || v >= sig.num_colors) throw ParseError("decomposition json: color out of range");
        return v;
    }

    Decomposition node(const json& j) {
        std::string op = j.at("op");
        if (op == "const") {
            std::vector<int> loops;
            if (j.contains("loops"))
                for (const auto& s : j.at("loops")) {
                    int idx = sig.arc_index(s.get<std::string>());
                    if (idx < 0) throw ParseError("decomposition json: loop symbol unknown");
                    loops.push_back(idx);
                }
            int stated = -1;
            if (j.contains("id")) {
                stated = j.at("id").get<int>();
                if (stated != next_leaf)
                    throw ParseError("decomposition json: leaf id " + std::to_string(stated) +
                                     " does not match depth-first position " +
                                     std::to_string(next_leaf));
            }
            ++next_leaf;
            return make_constant(sig, color_in(j.at("color").get<int>()), loops, stated);
        }
        if (op == "marked") {
            ++next_leaf;  // the hole occupies a leaf slot
            return make_marked(sig);
        }
        if (op == "recolor") {
            const auto& m = j.at("map");
            if ((int)m.size() != sig.num_colors)
                throw ParseError("decomposition json: recolor map length != k");
            std::vector<int> map;
            for (const auto& v : m) map.push_back(color_in(v.get<int>()));
            return make_recolor(map, node(j.at("child")));
        }
        if (op == "join") {
            Decomposition left = node(j.at("left"));
            Decomposition right = node(j.at("right"));
            std::vector<JoinRule> rules;
            if (j.contains("M"))
                for (const auto& r : j.at("M")) {
                    if (!r.is_array() || r.size() != 4)
                        throw ParseError("decomposition json: rule must be [sym,side,from,to]");
                    JoinRule rule;
                    int idx = sig.arc_index(r.at(0).get<std::string>());
                    if (idx < 0) throw ParseError("decomposition json: rule symbol unknown");
                    rule.sym = idx;
                    std::string side = r.at(1).get<std::string>();
                    if (side == "right")
                        rule.dir = JoinDir::LeftToRight;
                    else if (side == "left")
                        rule.dir = JoinDir::RightToLeft;
                    else
                        throw ParseError("decomposition json: rule side must be left/right");
                    rule.from_color = color_in(r.at(2).get<int>());
                    rule.to_color = color_in(r.at(3).get<int>());
                    rules.push_back(rule);
                }
            return make_join(rules, left, right);
        }
        throw ParseError("decomposition json: unknown op '" + op + "'");
    }
};

Decomposition load_tree(const json& tree, int base, int k, std::vector<std::string> symbols) {
    if (k <= 0 || symbols.empty()) {
        std::set<std::string> names;
        int max_color = base;  // at least one color
        collect_names(tree, names, max_color);
        if (symbols.empty()) symbols.assign(names.begin(), names.end());
        if (symbols.empty()) symbols = {"->"};
        if (k <= 0) k = max_color - base + 1;
    }
    Loader loader;
    loader.sig.arc_symbols = std::move(symbols);
    loader.sig.num_colors = k;
    loader.base = base;
    Decomposition c = loader.node(tree);
    c.check();
    return c;
}

json tree_json(const Decomposition& c, int idx) {
    const auto& n = c.nodes[idx];
    json j;
    switch (n.op) {
        case NodeOp::Constant: {
            j["op"] = "const";
            j["color"] = n.color;
            if (!n.loops.empty()) {
                json loops = json::array();
                for (int s : n.loops) loops.push_back(c.sig.arc_symbols[s]);
                j["loops"] = loops;
            }
            break;
        }
        case NodeOp::Marked:
            j["op"] = "marked";
            break;
        case NodeOp::Recolor:
            j["op"] = "recolor";
            j["map"] = n.map;
            j["child"] = tree_json(c, n.child);
            break;
        case NodeOp::Join: {
            j["op"] = "join";
            json rules = json::array();
            for (const auto& r : n.rules) {
                json rule = json::array();
                rule.push_back(c.sig.arc_symbols[r.sym]);
                rule.push_back(r.dir == JoinDir::LeftToRight ? "right" : "left");
                rule.push_back(r.from_color);
                rule.push_back(r.to_color);
                rules.push_back(rule);
            }
            j["M"] = rules;
            j["left"] = tree_json(c, n.left);
            j["right"] = tree_json(c, n.right);
            break;
        }
    }
    return j;
}

}  // namespace

Decomposition parse_decomposition_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("decomposition json: ") + e.what());
    }
    if (j.is_object() && j.contains("tree")) {
        int base = j.value("base", 0);
        if (base != 0 && base != 1) throw ParseError("decomposition json: base must be 0 or 1");
        int k = j.value("k", 0);
        std::vector<std::string> symbols;
        if (j.contains("symbols"))
            for (const auto& s : j.at("symbols")) symbols.push_back(s.get<std::string>());
        return load_tree(j.at("tree"), base, k, std::move(symbols));
    }
    return load_tree(j, 0, 0, {});
}

Decomposition read_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open decomposition file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_decomposition_json(ss.str());
}

std::string print_decomposition_json(const Decomposition& c) {
    json j;
    j["base"] = 0;
    j["k"] = c.sig.num_colors;
    j["symbols"] = c.sig.arc_symbols;
    j["tree"] = tree_json(c, c.root);
    return j.dump(2) + "\n";
}

void write_decomposition_file(const Decomposition& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write decomposition file: " + path);
    out << print_decomposition_json(c);
}

std::vector<Decomposition> read_universe_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open universe file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("universe json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("universe"))
        throw ParseError("universe json: need {\"universe\": [...]}");
    int base = j.value("base", 0);
    int k = j.value("k", 0);
    std::vector<std::string> symbols;
    if (j.contains("symbols"))
        for (const auto& s : j.at("symbols")) symbols.push_back(s.get<std::string>());
    std::vector<Decomposition> out;
    for (const auto& t : j.at("universe")) out.push_back(load_tree(t, base, k, symbols));
    return out;
}

std::string print_universe_json(const std::vector<Decomposition>& universe) {
    json j;
    if (universe.empty()) throw Error("print_universe_json: empty universe");
    j["base"] = 0;
    j["k"] = universe[0].sig.num_colors;
    j["symbols"] = universe[0].sig.arc_symbols;
    json arr = json::array();
    for (const auto& c : universe) {
        if (c.sig != universe[0].sig)
            throw SignatureMismatch("print_universe_json: mixed signatures");
        arr.push_back(tree_json(c, c.root));
    }
    j["universe"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace msox
