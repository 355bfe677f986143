#include "saw/graph_io.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "saw/errors.hpp"

namespace saw {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::set<std::string>& required, const std::string& where) {
    if (!j.is_object()) throw IoError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw IoError(where + ": unknown field '" + it.key() + "'");
    for (const auto& k : required)
        if (!j.contains(k)) throw IoError(where + ": missing field '" + k + "'");
}

Alphabet parse_alphabet(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw IoError(where + ": expected a nonempty array of {token, inverse}");
    Alphabet sigma;
    std::vector<std::string> inverses;
    for (const auto& entry : j) {
        expect_keys(entry, {"token", "inverse"}, {"token", "inverse"}, where);
        sigma.add(entry.at("token").get<std::string>());
        inverses.push_back(entry.at("inverse").get<std::string>());
    }
    for (Token t = 0; t < sigma.size(); ++t) {
        if (!sigma.has(inverses[t]))
            throw IoError(where + ": inverse token '" + inverses[t] +
                          "' is not declared");
        sigma.set_inverse(t, sigma.index(inverses[t]));
    }
    if (!sigma.involution_ok())
        throw IoError(where + ": inverse map is not an involution");
    return sigma;
}

Word parse_word(const Alphabet& sigma, const json& j, const std::string& where) {
    if (!j.is_array()) throw IoError(where + ": words are arrays of tokens");
    Word w;
    for (const auto& tok : j) w.push_back(sigma.index(tok.get<std::string>()));
    return w;
}

LabelledGraph parse_finite(const json& j) {
    expect_keys(j, {"mode", "labels", "vertices", "darts", "involution"},
                {"labels", "vertices", "darts", "involution"}, "finite graph");
    LabelledGraph g;
    g.alphabet = parse_alphabet(j.at("labels"), "labels");
    std::map<std::string, int> vid;
    for (const auto& v : j.at("vertices")) {
        std::string name = v.get<std::string>();
        if (vid.count(name)) throw IoError("duplicate vertex id: " + name);
        vid[name] = static_cast<int>(g.vertex_names.size());
        g.vertex_names.push_back(name);
    }
    for (const auto& d : j.at("darts")) {
        expect_keys(d, {"tail", "head", "label"}, {"tail", "head", "label"}, "dart");
        auto tail = d.at("tail").get<std::string>();
        auto head = d.at("head").get<std::string>();
        if (!vid.count(tail) || !vid.count(head))
            throw IoError("dart references unknown vertex");
        g.darts.push_back({vid.at(tail), vid.at(head),
                           g.alphabet.index(d.at("label").get<std::string>())});
    }
    g.twin.assign(g.darts.size(), -1);
    for (const auto& pair : j.at("involution")) {
        if (!pair.is_array() || pair.size() != 2)
            throw IoError("involution entries are dart index pairs");
        int a = pair[0].get<int>(), b = pair[1].get<int>();
        if (a < 0 || b < 0 || a >= g.num_darts() || b >= g.num_darts())
            throw IoError("involution pair out of range");
        g.twin[a] = b;
        g.twin[b] = a;
    }
    g.rebuild_index();
    return g;
}

CayleyGraphSpec parse_cayley(const json& j) {
    expect_keys(j, {"mode", "generators", "rules"}, {"generators", "rules"},
                "cayley spec");
    CayleyGraphSpec spec;
    spec.system.alphabet = parse_alphabet(j.at("generators"), "generators");
    for (const auto& r : j.at("rules")) {
        expect_keys(r, {"lhs", "rhs"}, {"lhs", "rhs"}, "rule");
        spec.system.rules.push_back(
            {parse_word(spec.system.alphabet, r.at("lhs"), "rule lhs"),
             parse_word(spec.system.alphabet, r.at("rhs"), "rule rhs")});
    }
    return spec;
}

std::string kind_name(BlockKind k) { return to_string(k); }

BlockKind kind_of(const std::string& s) {
    if (s == "cycle") return BlockKind::Cycle;
    if (s == "multilink") return BlockKind::Multilink;
    if (s == "three_connected") return BlockKind::ThreeConnected;
    throw IoError("unknown 3-block kind: " + s);
}

json reals_to_json(const Alphabet& sigma, const std::vector<QRealEdge>& reals) {
    json arr = json::array();
    for (const auto& e : reals)
        arr.push_back({{"ends", {e.u, e.v}},
                       {"labels", {sigma.name(e.label_uv), sigma.name(e.label_vu)}}});
    return arr;
}

std::vector<QRealEdge> reals_from_json(const Alphabet& sigma, const json& arr) {
    std::vector<QRealEdge> out;
    for (const auto& e : arr) {
        expect_keys(e, {"ends", "labels"}, {"ends", "labels"}, "real edge");
        QRealEdge r;
        r.u = e.at("ends")[0].get<int>();
        r.v = e.at("ends")[1].get<int>();
        r.label_uv = sigma.index(e.at("labels")[0].get<std::string>());
        r.label_vu = sigma.index(e.at("labels")[1].get<std::string>());
        out.push_back(r);
    }
    return out;
}

json exits_to_json(const std::vector<QVirtualEdge>& exits) {
    json arr = json::array();
    for (const auto& x : exits)
        arr.push_back({{"ends", {x.end0, x.end1}},
                       {"to_orbit", x.to_orbit},
                       {"to_ends", {x.to_end0, x.to_end1}}});
    return arr;
}

std::vector<QVirtualEdge> exits_from_json(const json& arr) {
    std::vector<QVirtualEdge> out;
    for (const auto& e : arr) {
        expect_keys(e, {"ends", "to_orbit", "to_ends"},
                    {"ends", "to_orbit", "to_ends"}, "exit edge");
        QVirtualEdge x;
        x.end0 = e.at("ends")[0].get<int>();
        x.end1 = e.at("ends")[1].get<int>();
        x.to_orbit = e.at("to_orbit").get<int>();
        x.to_end0 = e.at("to_ends")[0].get<int>();
        x.to_end1 = e.at("to_ends")[1].get<int>();
        out.push_back(x);
    }
    return out;
}

json level3_to_json(const QuotientLevel3& q) {
    json orbits = json::array();
    for (const auto& b : q.orbits) {
        json jb = {{"kind", kind_name(b.kind)},
                   {"vertices", b.vertex_names},
                   {"real_edges", reals_to_json(q.alphabet, b.reals)},
                   {"entry",
                    {{"ends", {b.entry_end0, b.entry_end1}},
                     {"classes", {b.cls0, b.cls1}}}},
                   {"exits", exits_to_json(b.exits)}};
        if (!b.vclass.empty()) jb["vclass"] = b.vclass;
        orbits.push_back(std::move(jb));
    }
    json root = {{"kind", kind_name(q.root.kind)},
                 {"vertices", q.root.vertex_names},
                 {"real_edges", reals_to_json(q.alphabet, q.root.reals)},
                 {"exits", exits_to_json(q.root.exits)},
                 {"vertex", q.root.root_vertex}};
    if (!q.root.vclass.empty()) root["vclass"] = q.root.vclass;
    return {{"orbits", orbits}, {"classes", q.num_classes}, {"root", root}};
}

QuotientLevel3 level3_from_json(const Alphabet& sigma, const json& j) {
    expect_keys(j, {"orbits", "classes", "root"}, {"orbits", "classes", "root"},
                "blocks3");
    QuotientLevel3 q;
    q.alphabet = sigma;
    q.num_classes = j.at("classes").get<int>();
    for (const auto& jb : j.at("orbits")) {
        expect_keys(jb, {"kind", "vertices", "real_edges", "entry", "exits", "vclass"},
                    {"kind", "vertices", "real_edges", "entry", "exits"}, "orbit");
        QBlock b;
        b.kind = kind_of(jb.at("kind").get<std::string>());
        b.vertex_names = jb.at("vertices").get<std::vector<std::string>>();
        b.reals = reals_from_json(sigma, jb.at("real_edges"));
        const json& entry = jb.at("entry");
        expect_keys(entry, {"ends", "classes"}, {"ends", "classes"}, "entry");
        b.entry_end0 = entry.at("ends")[0].get<int>();
        b.entry_end1 = entry.at("ends")[1].get<int>();
        b.cls0 = entry.at("classes")[0].get<int>();
        b.cls1 = entry.at("classes")[1].get<int>();
        b.exits = exits_from_json(jb.at("exits"));
        if (jb.contains("vclass")) b.vclass = jb.at("vclass").get<std::vector<int>>();
        q.orbits.push_back(std::move(b));
    }
    const json& root = j.at("root");
    expect_keys(root, {"kind", "vertices", "real_edges", "exits", "vertex", "vclass"},
                {"kind", "vertices", "real_edges", "exits", "vertex"}, "root");
    q.root.kind = kind_of(root.at("kind").get<std::string>());
    q.root.vertex_names = root.at("vertices").get<std::vector<std::string>>();
    q.root.reals = reals_from_json(sigma, root.at("real_edges"));
    q.root.exits = exits_from_json(root.at("exits"));
    q.root.root_vertex = root.at("vertex").get<int>();
    if (root.contains("vclass"))
        q.root.vclass = root.at("vclass").get<std::vector<int>>();
    q.validate();
    return q;
}

json level2_to_json(const QuotientLevel2& q) {
    json blocks = json::array();
    for (const auto& b : q.blocks)
        blocks.push_back({{"vertices", b.vertex_names},
                          {"real_edges", reals_to_json(q.alphabet, b.reals)},
                          {"incidence", b.incidence}});
    json edges = json::array();
    for (const auto& e : q.edges)
        edges.push_back({{"block", e.block}, {"vertex", e.vertex}});
    return {{"blocks", blocks},
            {"edges", edges},
            {"neighbors", q.neighbors},
            {"root", {{"block", q.root_block}, {"vertex", q.root_vertex}}}};
}

QuotientLevel2 level2_from_json(const Alphabet& sigma, const json& j) {
    expect_keys(j, {"blocks", "edges", "neighbors", "root"},
                {"blocks", "edges", "neighbors", "root"}, "level2");
    QuotientLevel2 q;
    q.alphabet = sigma;
    for (const auto& jb : j.at("blocks")) {
        expect_keys(jb, {"vertices", "real_edges", "incidence"},
                    {"vertices", "real_edges", "incidence"}, "level2 block");
        QL2Block b;
        b.vertex_names = jb.at("vertices").get<std::vector<std::string>>();
        b.reals = reals_from_json(sigma, jb.at("real_edges"));
        b.incidence = jb.at("incidence").get<std::vector<int>>();
        q.blocks.push_back(std::move(b));
    }
    for (const auto& je : j.at("edges")) {
        expect_keys(je, {"block", "vertex"}, {"block", "vertex"}, "level2 edge");
        q.edges.push_back({je.at("block").get<int>(), je.at("vertex").get<int>()});
    }
    q.neighbors = j.at("neighbors").get<std::vector<std::vector<int>>>();
    const json& root = j.at("root");
    expect_keys(root, {"block", "vertex"}, {"block", "vertex"}, "level2 root");
    q.root_block = root.at("block").get<int>();
    q.root_vertex = root.at("vertex").get<int>();
    q.validate();
    return q;
}

json alphabet_to_json(const Alphabet& sigma) {
    json arr = json::array();
    for (Token t = 0; t < sigma.size(); ++t)
        arr.push_back({{"token", sigma.name(t)},
                       {"inverse", sigma.name(sigma.inverse(t))}});
    return arr;
}

QuotientDecomposition parse_quotient(const json& j) {
    expect_keys(j, {"mode", "labels", "blocks3", "level2"}, {"labels"}, "quotient");
    Alphabet sigma = parse_alphabet(j.at("labels"), "labels");
    QuotientDecomposition q;
    if (j.contains("blocks3")) q.level3 = level3_from_json(sigma, j.at("blocks3"));
    if (j.contains("level2")) q.level2 = level2_from_json(sigma, j.at("level2"));
    if (!q.level3 && !q.level2)
        throw IoError("quotient document carries neither blocks3 nor level2");
    return q;
}

} // namespace

InputDoc parse_input(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("mode"))
        throw IoError("input document must declare 'mode'");
    std::string mode = j.at("mode").get<std::string>();
    InputDoc doc;
    if (mode == "finite") {
        doc.mode = InputMode::Finite;
        doc.graph = parse_finite(j);
    } else if (mode == "cayley") {
        doc.mode = InputMode::Cayley;
        doc.spec = parse_cayley(j);
    } else if (mode == "quotient") {
        doc.mode = InputMode::Quotient;
        doc.quotient = parse_quotient(j);
    } else {
        throw IoError("mode must be one of finite | cayley | quotient");
    }
    return doc;
}

InputDoc load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str());
}

std::string quotient_to_json(const QuotientDecomposition& q) {
    const Alphabet* sigma = nullptr;
    if (q.level3) sigma = &q.level3->alphabet;
    else if (q.level2) sigma = &q.level2->alphabet;
    else throw IoError("empty quotient");
    json j = {{"mode", "quotient"}, {"labels", alphabet_to_json(*sigma)}};
    if (q.level3) j["blocks3"] = level3_to_json(*q.level3);
    if (q.level2) j["level2"] = level2_to_json(*q.level2);
    return j.dump(2) + "\n";
}

QuotientDecomposition quotient_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("JSON parse error: ") + e.what());
    }
    return parse_quotient(j);
}

QuotientDecomposition load_quotient(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open quotient file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return quotient_from_json(buf.str());
}

void save_quotient(const QuotientDecomposition& q, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << quotient_to_json(q);
}

} // namespace saw
