#include "saw/quotient.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "saw/errors.hpp"
#include "saw/multigraph.hpp"

namespace saw {

std::pair<int, int> QuotientLevel3::class_representative(int cls) const {
    for (int o = 0; o < static_cast<int>(orbits.size()); ++o) {
        if (orbits[o].cls0 == cls) return {o, 0};
        if (orbits[o].cls1 == cls) return {o, 1};
    }
    throw InvalidSpecError("walk class without representative: " + std::to_string(cls));
}

namespace {

void validate_reals(const Alphabet& sigma, const std::vector<QRealEdge>& reals,
                    int nverts, const std::string& where) {
    std::set<std::pair<int, Token>> out_labels;
    for (const auto& e : reals) {
        if (e.u < 0 || e.u >= nverts || e.v < 0 || e.v >= nverts)
            throw InvalidSpecError(where + ": real edge endpoint out of range");
        if (e.u == e.v) throw InvalidSpecError(where + ": loop edge");
        if (e.label_uv < 0 || e.label_uv >= sigma.size() || e.label_vu < 0 ||
            e.label_vu >= sigma.size())
            throw InvalidSpecError(where + ": edge label out of range");
        if (sigma.inverse(e.label_uv) != e.label_vu)
            throw InvalidSpecError(where + ": reversed dart label is not the inverse");
        if (!out_labels.insert({e.u, e.label_uv}).second ||
            !out_labels.insert({e.v, e.label_vu}).second)
            throw InvalidSpecError(where + ": labelling not deterministic");
    }
}

MultiGraph block_shape(const std::vector<QRealEdge>& reals,
                       const std::vector<QVirtualEdge>& exits, int entry0,
                       int entry1, int nverts) {
    MultiGraph m;
    m.n = nverts;
    int id = 0;
    for (const auto& e : reals)
        m.edges.push_back({e.u, e.v, id++, false, e.label_uv, e.label_vu});
    for (const auto& e : exits)
        m.edges.push_back({e.end0, e.end1, id++, true, -1, -1});
    if (entry0 >= 0) m.edges.push_back({entry0, entry1, id++, true, -1, -1});
    return m;
}

void validate_kind(const MultiGraph& shape, BlockKind kind, const std::string& where) {
    if (shape.edges.size() < 3)
        throw InvalidSpecError(where + ": 3-block must have >= 3 edges");
    std::set<int> used;
    for (const auto& e : shape.edges) {
        used.insert(e.u);
        used.insert(e.v);
    }
    switch (kind) {
        case BlockKind::Multilink:
            if (used.size() != 2)
                throw InvalidSpecError(where + ": multilink must have 2 vertices");
            break;
        case BlockKind::Cycle: {
            MultiGraph compact = shape;
            if (!compact.is_cycle())
                throw InvalidSpecError(where + ": node marked cycle is not a cycle");
            break;
        }
        case BlockKind::ThreeConnected:
            if (used.size() < 4)
                throw InvalidSpecError(where + ": 3-connected node needs >= 4 vertices");
            break;
    }
}

} // namespace

void QuotientLevel3::validate() const {
    if (!alphabet.involution_ok())
        throw InvalidSpecError("level3: label inverses are not an involution");
    std::vector<char> seen_cls(num_classes, 0);
    auto check_exits = [&](const std::vector<QVirtualEdge>& exits, int nverts,
                           const std::string& where) {
        for (const auto& x : exits) {
            if (x.end0 < 0 || x.end0 >= nverts || x.end1 < 0 || x.end1 >= nverts ||
                x.end0 == x.end1)
                throw InvalidSpecError(where + ": exit endpoints invalid");
            if (x.to_orbit < 0 || x.to_orbit >= static_cast<int>(orbits.size()))
                throw InvalidSpecError(where + ": exit to_orbit out of range");
            if ((x.to_end0 != 0 && x.to_end0 != 1) || (x.to_end1 != 0 && x.to_end1 != 1))
                throw InvalidSpecError(where + ": exit to_end flag invalid");
        }
    };
    for (size_t i = 0; i < orbits.size(); ++i) {
        const QBlock& b = orbits[i];
        std::string where = "level3 orbit " + std::to_string(i);
        int nv = static_cast<int>(b.vertex_names.size());
        validate_reals(alphabet, b.reals, nv, where);
        if (b.entry_end0 < 0 || b.entry_end0 >= nv || b.entry_end1 < 0 ||
            b.entry_end1 >= nv || b.entry_end0 == b.entry_end1)
            throw InvalidSpecError(where + ": entry endpoints invalid");
        if (b.cls0 < 0 || b.cls0 >= num_classes || b.cls1 < 0 || b.cls1 >= num_classes)
            throw InvalidSpecError(where + ": class id out of range");
        seen_cls[b.cls0] = seen_cls[b.cls1] = 1;
        check_exits(b.exits, nv, where);
        if (!b.vclass.empty() && static_cast<int>(b.vclass.size()) != nv)
            throw InvalidSpecError(where + ": vclass size mismatch");
        validate_kind(block_shape(b.reals, b.exits, b.entry_end0, b.entry_end1, nv),
                      b.kind, where);
    }
    for (int c = 0; c < num_classes; ++c)
        if (!seen_cls[c])
            throw InvalidSpecError("level3: class without representative: " +
                                   std::to_string(c));
    int nv = static_cast<int>(root.vertex_names.size());
    validate_reals(alphabet, root.reals, nv, "level3 root");
    check_exits(root.exits, nv, "level3 root");
    if (root.root_vertex < 0 || root.root_vertex >= nv)
        throw InvalidSpecError("level3 root: root vertex out of range");
    if (!root.vclass.empty() && static_cast<int>(root.vclass.size()) != nv)
        throw InvalidSpecError("level3 root: vclass size mismatch");
}

void QuotientLevel2::validate() const {
    if (!alphabet.involution_ok())
        throw InvalidSpecError("level2: label inverses are not an involution");
    for (size_t i = 0; i < blocks.size(); ++i) {
        const QL2Block& b = blocks[i];
        std::string where = "level2 block " + std::to_string(i);
        int nv = static_cast<int>(b.vertex_names.size());
        validate_reals(alphabet, b.reals, nv, where);
        if (static_cast<int>(b.incidence.size()) != nv)
            throw InvalidSpecError(where + ": incidence table size mismatch");
        for (int id : b.incidence)
            if (id < -1 || id >= static_cast<int>(edges.size()))
                throw InvalidSpecError(where + ": incidence id out of range");
    }
    if (neighbors.size() != edges.size())
        throw InvalidSpecError("level2: neighbor table size mismatch");
    for (size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].block < 0 || edges[e].block >= static_cast<int>(blocks.size()))
            throw InvalidSpecError("level2 edge: block orbit out of range");
        const QL2Block& b = blocks[edges[e].block];
        if (edges[e].vertex < 0 ||
            edges[e].vertex >= static_cast<int>(b.vertex_names.size()))
            throw InvalidSpecError("level2 edge: representative vertex out of range");
        if (b.incidence[edges[e].vertex] != static_cast<int>(e))
            throw InvalidSpecError(
                "level2 edge: representative vertex does not carry the edge's "
                "incidence class");
        for (int f : neighbors[e]) {
            if (f < 0 || f >= static_cast<int>(edges.size()))
                throw InvalidSpecError("level2: N(e) entry out of range");
            if (f == static_cast<int>(e))
                throw InvalidSpecError("level2: N(e) contains e");
            bool back = std::find(neighbors[f].begin(), neighbors[f].end(),
                                  static_cast<int>(e)) != neighbors[f].end();
            if (!back) throw InvalidSpecError("level2: N is not symmetric");
        }
    }
    if (root_block < 0 || root_block >= static_cast<int>(blocks.size()))
        throw InvalidSpecError("level2: root block out of range");
    if (root_vertex < 0 ||
        root_vertex >= static_cast<int>(blocks[root_block].vertex_names.size()))
        throw InvalidSpecError("level2: root vertex out of range");
}

// ---------------------------------------------------------------------------
// Cayley-mode orbit computation
// ---------------------------------------------------------------------------

namespace {

struct CayleyCtx {
    const CayleyGraphSpec& spec;
    const BallView& ball;
    int trusted_depth; // vertices deeper than this are not trusted

    const Word& word_of(int v) const { return ball.vertex_words[v]; }
    bool trusted_vertex(int v) const {
        return ball.complete || ball.depth[v] <= trusted_depth;
    }
    std::string translated(int base, int v) const {
        return ball.graph.alphabet.format(
            left_translate(spec, word_of(base), word_of(v)));
    }
};

// canonical serialization of a block's labelled structure translated so that
// `base` becomes the identity; `mark` optionally marks a directed virtual
// edge (entry) or a vertex
std::string encode_edges(const CayleyCtx& ctx, int base,
                         const std::vector<MEdge>& edges, int entry_idx,
                         int entry_from) {
    std::vector<std::string> reals, virtuals;
    const Alphabet& sigma = ctx.ball.graph.alphabet;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        const MEdge& e = edges[i];
        if (i == entry_idx) continue;
        std::string wu = ctx.translated(base, e.u);
        std::string wv = ctx.translated(base, e.v);
        if (e.virt) {
            if (wv < wu) std::swap(wu, wv);
            virtuals.push_back("(" + wu + "~" + wv + ")");
        } else {
            Token luv = e.label_uv, lvu = e.label_vu;
            if (wv < wu) {
                std::swap(wu, wv);
                std::swap(luv, lvu);
            }
            reals.push_back("(" + wu + ">" + sigma.name(luv) + ">" + wv + "<" +
                            sigma.name(lvu) + ")");
        }
    }
    std::sort(reals.begin(), reals.end());
    std::sort(virtuals.begin(), virtuals.end());
    std::string out = "R:";
    for (auto& s : reals) out += s;
    out += ";X:";
    for (auto& s : virtuals) out += s;
    if (entry_idx >= 0) {
        const MEdge& e = edges[entry_idx];
        int other = e.u == entry_from ? e.v : e.u;
        out += ";E:" + ctx.translated(base, entry_from) + ">" +
               ctx.translated(base, other);
    }
    return out;
}

struct Level3Builder {
    const CayleyCtx& ctx;
    const ThreeBlockTree& tree;
    int enc_depth;
    std::vector<std::vector<std::pair<int, int>>> virt_lookup; // (node, edge idx) -> tree edge, side

    std::map<std::string, int> class_of;
    std::map<std::string, int> orbit_of;
    struct OrbitRep {
        int node;       // target node A(a+)
        int entry_idx;  // index of lambda(a-check) within the node
        int end0, end1; // global vertex ids, end0 = canonical base
        int cls0, cls1;
    };
    std::vector<OrbitRep> reps;
    std::queue<int> pending;
    QuotientLevel3 out;

    Level3Builder(const CayleyCtx& c, const ThreeBlockTree& t, int depth)
        : ctx(c), tree(t), enc_depth(depth) {
        virt_lookup.assign(tree.nodes.size(), {});
        for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i)
            virt_lookup[i].resize(tree.nodes[i].graph.edges.size(), {-1, -1});
        for (int te = 0; te < static_cast<int>(tree.edges.size()); ++te) {
            const TBTEdge& e = tree.edges[te];
            virt_lookup[e.n1][e.e1] = {te, 0};
            virt_lookup[e.n2][e.e2] = {te, 1};
        }
        out.alphabet = ctx.ball.graph.alphabet;
    }

    void require_trusted(int node) {
        for (const auto& e : tree.nodes[node].graph.edges)
            for (int v : {e.u, e.v})
                if (!ctx.trusted_vertex(v))
                    throw RadiusError(
                        "3-block reaches the untrusted boundary region; increase "
                        "the radius");
    }

    // serialization of a node's labelled structure translated by `base`,
    // descending `depth` further tree layers across virtual edges (the edge
    // arrived through is skipped, so the summary describes one side only)
    std::string node_summary(int base, int node, int skip_idx, int depth) {
        const Alphabet& sigma = ctx.ball.graph.alphabet;
        const auto& edges = tree.nodes[node].graph.edges;
        std::vector<std::string> reals, virtuals;
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            if (i == skip_idx) continue;
            const MEdge& e = edges[i];
            std::string wu = ctx.translated(base, e.u);
            std::string wv = ctx.translated(base, e.v);
            if (!e.virt) {
                Token luv = e.label_uv, lvu = e.label_vu;
                if (wv < wu) {
                    std::swap(wu, wv);
                    std::swap(luv, lvu);
                }
                reals.push_back("(" + wu + ">" + sigma.name(luv) + ">" + wv + "<" +
                                sigma.name(lvu) + ")");
            } else {
                std::string sub;
                if (depth > 0) {
                    auto [te, side] = virt_lookup[node][i];
                    if (te < 0) throw Error("internal: unpaired virtual edge");
                    int neighbor = side == 0 ? tree.edges[te].n2 : tree.edges[te].n1;
                    int back = side == 0 ? tree.edges[te].e2 : tree.edges[te].e1;
                    sub = node_summary(base, neighbor, back, depth - 1);
                }
                if (wv < wu) std::swap(wu, wv);
                virtuals.push_back("(" + wu + "~" + wv + "|" + sub + ")");
            }
        }
        std::sort(reals.begin(), reals.end());
        std::sort(virtuals.begin(), virtuals.end());
        std::string out = "R:";
        for (auto& x : reals) out += x;
        out += ";X:";
        for (auto& x : virtuals) out += x;
        return out;
    }

    // canonical key of the pair (directed tree edge into `target`, start
    // vertex `from`): translate so `from` is the identity and serialize the
    // far side of the edge to the configured depth
    std::string encode_direction(int target, int entry_idx, int from) {
        const MEdge& lam = tree.nodes[target].graph.edges[entry_idx];
        int other = lam.u == from ? lam.v : lam.u;
        return "E:>" + ctx.translated(from, other) + ";" +
               node_summary(from, target, entry_idx, enc_depth);
    }

    // directed tree edge given by (node it leaves, virtual edge index in it)
    // -> orbit id; registers classes and enqueues new orbits
    int classify_exit(int from_node, int edge_idx, int* cls_u, int* cls_v) {
        auto [te, side] = virt_lookup[from_node][edge_idx];
        if (te < 0) throw Error("internal: virtual edge without tree pairing");
        const TBTEdge& e = tree.edges[te];
        int target = side == 0 ? e.n2 : e.n1;
        int entry_idx = side == 0 ? e.e2 : e.e1;
        require_trusted(target);
        const MEdge& lam = tree.nodes[target].graph.edges[entry_idx];
        int p = lam.u, q = lam.v;
        std::string enc_p = encode_direction(target, entry_idx, p);
        std::string enc_q = encode_direction(target, entry_idx, q);
        auto cls_id = [&](const std::string& enc) {
            auto it = class_of.find(enc);
            if (it != class_of.end()) return it->second;
            int id = static_cast<int>(class_of.size());
            class_of.emplace(enc, id);
            return id;
        };
        int cp = cls_id(enc_p), cq = cls_id(enc_q);
        if (cls_u) *cls_u = (lam.u == p) ? cp : cq;
        if (cls_v) *cls_v = (lam.v == p) ? cp : cq;
        const std::string& key = enc_p <= enc_q ? enc_p : enc_q;
        auto it = orbit_of.find(key);
        if (it != orbit_of.end()) return it->second;
        int id = static_cast<int>(reps.size());
        orbit_of.emplace(key, id);
        OrbitRep rep;
        rep.node = target;
        rep.entry_idx = entry_idx;
        rep.end0 = enc_p <= enc_q ? p : q;
        rep.end1 = enc_p <= enc_q ? q : p;
        rep.cls0 = enc_p <= enc_q ? cp : cq;
        rep.cls1 = enc_p <= enc_q ? cq : cp;
        reps.push_back(rep);
        pending.push(id);
        return id;
    }

    // builds vertex table translated by `base`, filling names and local index
    std::map<int, int> local_vertices(int node, int base,
                                      std::vector<std::string>& names) {
        std::set<int> verts;
        for (const auto& e : tree.nodes[node].graph.edges) {
            verts.insert(e.u);
            verts.insert(e.v);
        }
        std::vector<std::pair<Word, int>> tw;
        for (int v : verts)
            tw.push_back({left_translate(ctx.spec, ctx.word_of(base), ctx.word_of(v)), v});
        std::sort(tw.begin(), tw.end(), [](const auto& a, const auto& b) {
            return shortlex_less(a.first, b.first);
        });
        std::map<int, int> local;
        const Alphabet& sigma = ctx.ball.graph.alphabet;
        for (const auto& [w, v] : tw) {
            local[v] = static_cast<int>(names.size());
            names.push_back(w.empty() ? "e" : sigma.format(w));
        }
        return local;
    }

    void fill_edges(int node, int skip_idx, const std::map<int, int>& local,
                    std::vector<QRealEdge>& reals, std::vector<QVirtualEdge>& exits) {
        const auto& edges = tree.nodes[node].graph.edges;
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            if (i == skip_idx) continue;
            const MEdge& e = edges[i];
            if (!e.virt) {
                QRealEdge r;
                r.u = local.at(e.u);
                r.v = local.at(e.v);
                r.label_uv = e.label_uv;
                r.label_vu = e.label_vu;
                if (r.u > r.v) {
                    std::swap(r.u, r.v);
                    std::swap(r.label_uv, r.label_vu);
                }
                reals.push_back(r);
            } else {
                int cu = -1, cv = -1;
                int orb = classify_exit(node, i, &cu, &cv);
                QVirtualEdge x;
                x.end0 = local.at(e.u);
                x.end1 = local.at(e.v);
                x.to_orbit = orb;
                // entry-end index in the target carrying the class
                x.to_end0 = (reps[orb].cls0 == cu) ? 0 : 1;
                x.to_end1 = (reps[orb].cls0 == cv) ? 0 : 1;
                if (x.end0 > x.end1) {
                    std::swap(x.end0, x.end1);
                    std::swap(x.to_end0, x.to_end1);
                }
                exits.push_back(x);
            }
        }
        std::sort(reals.begin(), reals.end(), [](const QRealEdge& a, const QRealEdge& b) {
            return std::tie(a.u, a.v, a.label_uv) < std::tie(b.u, b.v, b.label_uv);
        });
        std::sort(exits.begin(), exits.end(), [](const QVirtualEdge& a, const QVirtualEdge& b) {
            return std::tie(a.end0, a.end1, a.to_orbit, a.to_end0) <
                   std::tie(b.end0, b.end1, b.to_orbit, b.to_end0);
        });
    }

    QuotientLevel3 run(int root_node) {
        require_trusted(root_node);
        // root block data (translated by the ball root, normally identity)
        out.root.kind = tree.nodes[root_node].kind;
        auto local = local_vertices(root_node, ctx.ball.root, out.root.vertex_names);
        fill_edges(root_node, -1, local, out.root.reals, out.root.exits);
        out.root.root_vertex = local.at(ctx.ball.root);
        while (!pending.empty()) {
            int id = pending.front();
            pending.pop();
            const OrbitRep rep = reps[id];
            QBlock b;
            b.kind = tree.nodes[rep.node].kind;
            auto loc = local_vertices(rep.node, rep.end0, b.vertex_names);
            fill_edges(rep.node, rep.entry_idx, loc, b.reals, b.exits);
            b.entry_end0 = loc.at(rep.end0);
            b.entry_end1 = loc.at(rep.end1);
            b.cls0 = rep.cls0;
            b.cls1 = rep.cls1;
            if (static_cast<int>(out.orbits.size()) <= id) out.orbits.resize(id + 1);
            out.orbits[id] = std::move(b);
        }
        out.num_classes = static_cast<int>(class_of.size());
        out.validate();
        return out;
    }
};

// blocks of the ball as vertex sets + edge lists
struct BallBlocks {
    BlockCutTree bct;
    std::vector<std::vector<int>> blocks_of_vertex;
    std::vector<bool> closed;

    BallBlocks(const BallView& ball) : bct(block_cut_tree(ball.graph)) {
        blocks_of_vertex.assign(ball.graph.num_vertices(), {});
        closed.assign(bct.blocks.size(), true);
        for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b)
            for (int v : bct.blocks[b]) {
                blocks_of_vertex[v].push_back(b);
                if (ball.frontier(v)) closed[b] = false;
            }
    }
};

struct Level2Builder {
    const CayleyCtx& ctx;
    const BallBlocks& bb;

    std::map<std::string, int> orbit_of; // block orbit by min-vertex encoding
    std::map<std::string, int> ey_of;    // incidence orbit encoding -> EY id
    std::queue<int> pending;             // block orbit ids
    struct Rep {
        int block;
        int base;
    };
    std::vector<Rep> reps;
    QuotientLevel2 out;

    explicit Level2Builder(const CayleyCtx& c, const BallBlocks& b) : ctx(c), bb(b) {
        out.alphabet = ctx.ball.graph.alphabet;
    }

    std::vector<MEdge> block_edges(int b) const {
        std::vector<MEdge> edges;
        for (int id : bb.bct.block_edges[b]) {
            const Dart& d = ctx.ball.graph.darts[id];
            MEdge e;
            e.u = d.tail;
            e.v = d.head;
            e.id = id;
            e.label_uv = d.label;
            e.label_vu = ctx.ball.graph.darts[ctx.ball.graph.twin[id]].label;
            edges.push_back(e);
        }
        return edges;
    }

    std::string enc(int b, int base) const {
        return encode_edges(ctx, base, block_edges(b), -1, -1);
    }

    int register_block(int b) {
        if (!bb.closed[b])
            throw RadiusError(
                "a 2-block did not close inside the ball; increase the radius "
                "(graphs with infinite 2-blocks and cutvertices need a "
                "hand-authored quotient)");
        std::string best;
        int base = -1;
        for (int v : bb.bct.blocks[b]) {
            std::string e = enc(b, v);
            if (base < 0 || e < best) {
                best = e;
                base = v;
            }
        }
        auto it = orbit_of.find(best);
        if (it != orbit_of.end()) return it->second;
        int id = static_cast<int>(reps.size());
        orbit_of.emplace(best, id);
        reps.push_back({b, base});
        pending.push(id);
        return id;
    }

    QuotientLevel2 run(int root_vertex) {
        // canonical root block: minimal (size, encoding) among the root's blocks
        int root_block = -1;
        std::string root_key;
        for (int b : bb.blocks_of_vertex[root_vertex]) {
            std::string k = std::to_string(bb.bct.blocks[b].size()) + "|" +
                            enc(b, root_vertex);
            if (root_block < 0 || k < root_key) {
                root_key = k;
                root_block = b;
            }
        }
        if (root_block < 0) throw Error("internal: root has no block");
        // ensure the root's block becomes the representative of its orbit and
        // is translated by the root itself for a stable root image
        out.root_block = register_block(root_block);
        if (reps[out.root_block].block == root_block)
            reps[out.root_block].base = root_vertex;
        for (int b : bb.blocks_of_vertex[root_vertex]) register_block(b);

        // process orbits breadth-first
        std::vector<QL2Block> blocks;
        std::vector<QL2Edge> edges;
        while (!pending.empty()) {
            int id = pending.front();
            pending.pop();
            const Rep rep = reps[id];
            QL2Block qb;
            auto bedges = block_edges(rep.block);
            // local vertex table translated by the base
            std::set<int> verts(bb.bct.blocks[rep.block].begin(),
                                bb.bct.blocks[rep.block].end());
            std::vector<std::pair<Word, int>> tw;
            for (int v : verts)
                tw.push_back(
                    {left_translate(ctx.spec, ctx.word_of(rep.base), ctx.word_of(v)), v});
            std::sort(tw.begin(), tw.end(), [](const auto& a, const auto& b) {
                return shortlex_less(a.first, b.first);
            });
            std::map<int, int> local;
            for (const auto& [w, v] : tw) {
                local[v] = static_cast<int>(qb.vertex_names.size());
                qb.vertex_names.push_back(
                    w.empty() ? "e" : ctx.ball.graph.alphabet.format(w));
            }
            for (const auto& e : bedges) {
                QRealEdge r;
                r.u = local.at(e.u);
                r.v = local.at(e.v);
                r.label_uv = e.label_uv;
                r.label_vu = e.label_vu;
                if (r.u > r.v) {
                    std::swap(r.u, r.v);
                    std::swap(r.label_uv, r.label_vu);
                }
                qb.reals.push_back(r);
            }
            std::sort(qb.reals.begin(), qb.reals.end(),
                      [](const QRealEdge& a, const QRealEdge& b) {
                          return std::tie(a.u, a.v, a.label_uv) <
                                 std::tie(b.u, b.v, b.label_uv);
                      });
            qb.incidence.assign(qb.vertex_names.size(), -1);
            for (const auto& [w, v] : tw) {
                if (!ctx.trusted_vertex(v))
                    throw RadiusError(
                        "block representative touches the untrusted region; "
                        "increase the radius");
                const auto& vblocks = bb.blocks_of_vertex[v];
                if (vblocks.size() < 2) continue; // not a cutvertex
                std::string key = enc(rep.block, v);
                auto it = ey_of.find(key);
                int ey;
                if (it != ey_of.end()) {
                    ey = it->second;
                } else {
                    ey = static_cast<int>(edges.size());
                    ey_of.emplace(key, ey);
                    edges.push_back({id, local.at(v)});
                }
                qb.incidence[local.at(v)] = ey;
                for (int ob : vblocks)
                    if (ob != rep.block) register_block(ob);
            }
            if (static_cast<int>(blocks.size()) <= id) blocks.resize(id + 1);
            blocks[id] = std::move(qb);
        }
        out.blocks = std::move(blocks);
        out.edges = std::move(edges);
        // single cutvertex class under a simply transitive action
        out.neighbors.assign(out.edges.size(), {});
        for (size_t e = 0; e < out.edges.size(); ++e)
            for (size_t f = 0; f < out.edges.size(); ++f)
                if (e != f) out.neighbors[e].push_back(static_cast<int>(f));
        // root image inside the root block's representative
        const Rep& rrep = reps[out.root_block];
        Word tw = left_translate(ctx.spec, ctx.word_of(rrep.base),
                                 ctx.word_of(root_vertex));
        std::string name = tw.empty() ? "e" : ctx.ball.graph.alphabet.format(tw);
        const auto& names = out.blocks[out.root_block].vertex_names;
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw Error("internal: root image missing in representative");
        out.root_vertex = static_cast<int>(it - names.begin());
        out.validate();
        return out;
    }
};

} // namespace

QuotientDecomposition quotient_from_cayley(const CayleyGraphSpec& spec, int r,
                                           const QuotientOptions& opts) {
    BallView ball = expand_ball(spec, r);
    CayleyCtx ctx{spec, ball, ball.complete ? r : r - opts.margin};
    BallBlocks bb(ball);

    bool root_all_closed = true;
    for (int b : bb.blocks_of_vertex[ball.root])
        if (!bb.closed[b]) root_all_closed = false;

    QuotientDecomposition q;
    if (root_all_closed) {
        Level2Builder builder(ctx, bb);
        q.level2 = builder.run(ball.root);
        return q;
    }

    // 2-connected route: the root's single unclosed block must cover the
    // whole trusted region
    if (bb.blocks_of_vertex[ball.root].size() != 1)
        throw RadiusError(
            "root belongs to several blocks but not all of them closed; "
            "increase the radius or supply a hand-authored quotient");
    int rb = bb.blocks_of_vertex[ball.root][0];
    std::set<int> in_block(bb.bct.blocks[rb].begin(), bb.bct.blocks[rb].end());
    for (int v = 0; v < ball.graph.num_vertices(); ++v)
        if (ctx.trusted_vertex(v) && !in_block.count(v))
            throw RadiusError(
                "graph mixes an infinite 2-block with cutvertices; supply a "
                "hand-authored quotient (load_quotient)");

    // Tutte decomposition of the root block
    MultiGraph m;
    m.n = ball.graph.num_vertices();
    {
        Level2Builder helper(ctx, bb); // reuse edge extraction
        m.edges = helper.block_edges(rb);
    }
    ThreeBlockTree tree = tutte_decomposition(m);

    // end-size guard: apparent 3-blocks intersecting the trusted region must
    // not grow past the bound
    auto node_verts = [&](const TBTNode& n) {
        std::set<int> s;
        for (const auto& e : n.graph.edges) {
            s.insert(e.u);
            s.insert(e.v);
        }
        return s;
    };
    long largest_trusted = 0;
    for (const auto& n : tree.nodes) {
        auto vs = node_verts(n);
        bool trusted = true;
        for (int v : vs)
            if (!ctx.trusted_vertex(v)) trusted = false;
        if (trusted) largest_trusted = std::max(largest_trusted, (long)vs.size());
    }
    long bound = opts.size_bound > 0 ? opts.size_bound
                                     : std::max<long>(64, 10 * largest_trusted);
    for (const auto& n : tree.nodes) {
        auto vs = node_verts(n);
        bool touches = false;
        for (int v : vs)
            if (ctx.trusted_vertex(v)) touches = true;
        if (touches && (long)vs.size() > bound)
            throw EndSizeError(
                "an apparent 3-block keeps growing past the size bound; the "
                "graph likely has an end of size >= 3");
    }

    // canonical root node: smallest (vertex count, kind, vertex words)
    int root_node = -1;
    std::tuple<size_t, int, std::vector<std::string>> best;
    for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
        auto vs = node_verts(tree.nodes[i]);
        if (!vs.count(ball.root)) continue;
        std::vector<std::string> words;
        for (int v : vs) words.push_back(ball.graph.vertex_names[v]);
        std::sort(words.begin(), words.end());
        auto key = std::tuple(vs.size(), static_cast<int>(tree.nodes[i].kind), words);
        if (root_node < 0 || key < best) {
            best = key;
            root_node = i;
        }
    }
    if (root_node < 0) throw Error("internal: no 3-block contains the root");

    // raise attribute depth until the orbit partition stabilizes
    QuotientLevel3 prev;
    bool have_prev = false;
    for (int depth = opts.enc_depth; depth <= opts.enc_depth_cap; ++depth) {
        Level3Builder builder(ctx, tree, depth);
        QuotientLevel3 cur = builder.run(root_node);
        if (have_prev && cur == prev) {
            q.level3 = std::move(cur);
            return q;
        }
        prev = std::move(cur);
        have_prev = true;
    }
    throw RadiusError(
        "orbit identification did not stabilize with deeper encodings; "
        "increase the radius or supply a hand-authored quotient");
}

// ---------------------------------------------------------------------------
// finite graphs: trivial orbits
// ---------------------------------------------------------------------------

QuotientDecomposition quotient_from_finite(const LabelledGraph& g, int root) {
    QuotientDecomposition q;
    BlockCutTree bct = block_cut_tree(g);
    std::vector<std::vector<int>> blocks_of_vertex(g.num_vertices());
    for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b)
        for (int v : bct.blocks[b]) blocks_of_vertex[v].push_back(b);

    auto block_medges = [&](int b) {
        std::vector<MEdge> edges;
        for (int id : bct.block_edges[b]) {
            const Dart& d = g.darts[id];
            edges.push_back({d.tail, d.head, id, false, d.label,
                             g.darts[g.twin[id]].label});
        }
        return edges;
    };

    if (bct.blocks.size() == 1 && bct.blocks[0].size() >= 3 &&
        bct.block_edges[0].size() >= 3) {
        // 2-connected: trivial-orbit level-3 data
        MultiGraph m;
        m.n = g.num_vertices();
        m.edges = block_medges(0);
        ThreeBlockTree tree = tutte_decomposition(m);

        QuotientLevel3 l3;
        l3.alphabet = g.alphabet;
        // one orbit per directed tree edge; classes distinct per (edge, end)
        std::vector<std::vector<std::pair<int, int>>> virt_lookup(tree.nodes.size());
        for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i)
            virt_lookup[i].resize(tree.nodes[i].graph.edges.size(), {-1, -1});
        for (int te = 0; te < static_cast<int>(tree.edges.size()); ++te) {
            virt_lookup[tree.edges[te].n1][tree.edges[te].e1] = {te, 0};
            virt_lookup[tree.edges[te].n2][tree.edges[te].e2] = {te, 1};
        }
        // directed edge id: 2*te + side(0: n1->n2, 1: n2->n1)
        auto target_of = [&](int dir) {
            const TBTEdge& e = tree.edges[dir / 2];
            return dir % 2 == 0 ? e.n2 : e.n1;
        };
        auto entry_of = [&](int dir) {
            const TBTEdge& e = tree.edges[dir / 2];
            return dir % 2 == 0 ? e.e2 : e.e1;
        };
        int norb = 2 * static_cast<int>(tree.edges.size());
        l3.orbits.resize(norb);
        l3.num_classes = 2 * norb;
        auto fill_block = [&](int node, int skip_idx, std::vector<std::string>& names,
                              std::vector<QRealEdge>& reals,
                              std::vector<QVirtualEdge>& exits,
                              std::map<int, int>& local) {
            std::set<int> verts;
            for (const auto& e : tree.nodes[node].graph.edges) {
                verts.insert(e.u);
                verts.insert(e.v);
            }
            for (int v : verts) {
                local[v] = static_cast<int>(names.size());
                names.push_back(g.vertex_names[v]);
            }
            const auto& edges = tree.nodes[node].graph.edges;
            for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
                if (i == skip_idx) continue;
                const MEdge& e = edges[i];
                if (!e.virt) {
                    reals.push_back({local.at(e.u), local.at(e.v), e.label_uv,
                                     e.label_vu});
                } else {
                    auto [te, side] = virt_lookup[node][i];
                    int dir = 2 * te + side; // leaves `node` toward the other side
                    const MEdge& lam = tree.nodes[target_of(dir)]
                                           .graph.edges[entry_of(dir)];
                    QVirtualEdge x;
                    x.end0 = local.at(e.u);
                    x.end1 = local.at(e.v);
                    x.to_orbit = dir;
                    // orbit rep end0 is the smaller global id of the pair
                    int rep_end0 = std::min(lam.u, lam.v);
                    x.to_end0 = (e.u == rep_end0) ? 0 : 1;
                    x.to_end1 = (e.v == rep_end0) ? 0 : 1;
                    exits.push_back(x);
                }
            }
        };
        for (int dir = 0; dir < norb; ++dir) {
            int node = target_of(dir);
            int eidx = entry_of(dir);
            const MEdge& lam = tree.nodes[node].graph.edges[eidx];
            QBlock b;
            b.kind = tree.nodes[node].kind;
            std::map<int, int> local;
            fill_block(node, eidx, b.vertex_names, b.reals, b.exits, local);
            int e0 = std::min(lam.u, lam.v), e1 = std::max(lam.u, lam.v);
            b.entry_end0 = local.at(e0);
            b.entry_end1 = local.at(e1);
            b.cls0 = 2 * dir;
            b.cls1 = 2 * dir + 1;
            l3.orbits[dir] = std::move(b);
        }
        // root node: canonical smallest containing the root
        int root_node = -1;
        std::tuple<size_t, int, std::vector<int>> best;
        for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
            std::set<int> verts;
            for (const auto& e : tree.nodes[i].graph.edges) {
                verts.insert(e.u);
                verts.insert(e.v);
            }
            if (!verts.count(root)) continue;
            auto key = std::tuple(verts.size(), static_cast<int>(tree.nodes[i].kind),
                                  std::vector<int>(verts.begin(), verts.end()));
            if (root_node < 0 || key < best) {
                best = key;
                root_node = i;
            }
        }
        if (root_node < 0) throw Error("internal: no 3-block contains the root");
        std::map<int, int> local;
        l3.root.kind = tree.nodes[root_node].kind;
        fill_block(root_node, -1, l3.root.vertex_names, l3.root.reals, l3.root.exits,
                   local);
        l3.root.root_vertex = local.at(root);
        l3.validate();
        q.level3 = std::move(l3);
        return q;
    }

    // level-2 with trivial orbits: every incidence its own EY edge
    QuotientLevel2 l2;
    l2.alphabet = g.alphabet;
    std::map<std::pair<int, int>, int> ey_of; // (block, cutvertex) -> id
    l2.blocks.resize(bct.blocks.size());
    std::vector<int> cut_of_edge;
    for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b) {
        QL2Block qb;
        std::map<int, int> local;
        for (int v : bct.blocks[b]) {
            local[v] = static_cast<int>(qb.vertex_names.size());
            qb.vertex_names.push_back(g.vertex_names[v]);
        }
        for (const auto& e : block_medges(b))
            qb.reals.push_back({local.at(e.u), local.at(e.v), e.label_uv, e.label_vu});
        qb.incidence.assign(qb.vertex_names.size(), -1);
        for (int v : bct.blocks[b]) {
            if (blocks_of_vertex[v].size() < 2) continue;
            int ey = static_cast<int>(l2.edges.size());
            ey_of[{b, v}] = ey;
            l2.edges.push_back({b, local.at(v)});
            cut_of_edge.push_back(v);
            qb.incidence[local.at(v)] = ey;
        }
        l2.blocks[b] = std::move(qb);
    }
    l2.neighbors.assign(l2.edges.size(), {});
    for (size_t e = 0; e < l2.edges.size(); ++e)
        for (size_t f = 0; f < l2.edges.size(); ++f)
            if (e != f && cut_of_edge[e] == cut_of_edge[f])
                l2.neighbors[e].push_back(static_cast<int>(f));
    // canonical root block
    int root_block = -1;
    std::pair<size_t, std::vector<int>> best;
    for (int b : blocks_of_vertex[root]) {
        auto key = std::pair(bct.blocks[b].size(), bct.blocks[b]);
        if (root_block < 0 || key < best) {
            best = key;
            root_block = b;
        }
    }
    l2.root_block = root_block;
    std::map<int, int> local;
    for (int v : bct.blocks[root_block]) local[v] = static_cast<int>(local.size());
    l2.root_vertex = local.at(root);
    l2.validate();
    q.level2 = std::move(l2);
    return q;
}

} // namespace saw
