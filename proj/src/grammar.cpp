#include "saw/grammar.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "saw/errors.hpp"

namespace saw {

namespace {

int find_or_add(std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<int>(it - names.begin());
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
}

} // namespace

int Grammar::terminal(const std::string& name) { return find_or_add(terminals, name); }
int Grammar::variable(const std::string& name) { return find_or_add(variables, name); }

void Grammar::add(int var, Rhs rhs) { productions.push_back({var, std::move(rhs)}); }

void Grammar::finish() {
    std::sort(productions.begin(), productions.end());
    productions.erase(std::unique(productions.begin(), productions.end()),
                      productions.end());
}

bool Grammar::right_linear() const {
    for (const auto& [lhs, rhs] : productions) {
        for (size_t i = 0; i < rhs.size(); ++i)
            if (rhs[i].is_var && i + 1 != rhs.size()) return false;
    }
    return true;
}

std::string Grammar::format() const {
    std::ostringstream out;
    out << "start " << variables.at(0) << "\n";
    for (const auto& [lhs, rhs] : productions) {
        out << variables[lhs] << " ->";
        for (const auto& s : rhs)
            out << ' ' << (s.is_var ? variables[s.id] : terminals[s.id]);
        out << " ;\n";
    }
    return out.str();
}

Grammar parse_grammar_text(const std::string& text) {
    std::istringstream in(text);
    return parse_grammar(in);
}

Grammar parse_grammar(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    if (lines.empty() || lines[0].size() != 2 || lines[0][0] != "start")
        throw IoError("grammar text must declare 'start <variable>' on line 1");
    std::string start = lines[0][1];

    std::set<std::string> vars{start};
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() < 3 || lines[i][1] != "->" || lines[i].back() != ";")
            throw IoError("grammar production must look like 'A -> x y B ;'");
        vars.insert(lines[i][0]);
    }
    Grammar g;
    g.variable(start);
    for (size_t i = 1; i < lines.size(); ++i) {
        int lhs = g.variable(lines[i][0]);
        Grammar::Rhs rhs;
        for (size_t j = 2; j + 1 < lines[i].size(); ++j) {
            const std::string& sym = lines[i][j];
            if (vars.count(sym))
                rhs.push_back(Grammar::V(g.variable(sym)));
            else
                rhs.push_back(Grammar::T(g.terminal(sym)));
        }
        g.add(lhs, std::move(rhs));
    }
    g.finish();
    return g;
}

void check_proper(const Grammar& g) {
    const int nv = static_cast<int>(g.variables.size());
    // nullable fixpoint
    std::vector<char> nullable(nv, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [lhs, rhs] : g.productions) {
            if (nullable[lhs]) continue;
            bool all = true;
            for (const auto& s : rhs)
                if (!s.is_var || !nullable[s.id]) { all = false; break; }
            if (all) {
                nullable[lhs] = 1;
                changed = true;
            }
        }
    }
    for (int v = 1; v < nv; ++v)
        if (nullable[v])
            throw PropernessError("variable '" + g.variables[v] +
                                  "' derives the empty word");
    // effective unit productions: A -> alpha where some variable B of alpha
    // is accompanied only by nullable variables.  These propagate words of
    // equal length and must not form a cycle.
    std::vector<std::vector<int>> unit(nv);
    for (const auto& [lhs, rhs] : g.productions) {
        for (size_t i = 0; i < rhs.size(); ++i) {
            if (!rhs[i].is_var) continue;
            bool rest_nullable = true;
            for (size_t j = 0; j < rhs.size(); ++j) {
                if (i == j) continue;
                if (!rhs[j].is_var || !nullable[rhs[j].id]) {
                    rest_nullable = false;
                    break;
                }
            }
            if (rest_nullable) unit[lhs].push_back(rhs[i].id);
        }
    }
    std::vector<int> state(nv, 0);
    std::function<void(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int u : unit[v]) {
            if (state[u] == 1)
                throw PropernessError("unit productions form a cycle through '" +
                                      g.variables[u] + "'");
            if (state[u] == 0) dfs(u);
        }
        state[v] = 2;
    };
    for (int v = 0; v < nv; ++v)
        if (state[v] == 0) dfs(v);
}

Grammar prune_unproductive(const Grammar& g) {
    const int nv = static_cast<int>(g.variables.size());
    std::vector<char> productive(nv, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [lhs, rhs] : g.productions) {
            if (productive[lhs]) continue;
            bool all = true;
            for (const auto& s : rhs)
                if (s.is_var && !productive[s.id]) { all = false; break; }
            if (all) {
                productive[lhs] = 1;
                changed = true;
            }
        }
    }
    // reachability from start over productive productions
    std::vector<char> reach(nv, 0);
    reach[0] = 1;
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& [lhs, rhs] : g.productions) {
            if (!reach[lhs]) continue;
            bool ok = true;
            for (const auto& s : rhs)
                if (s.is_var && !productive[s.id]) { ok = false; break; }
            if (!ok) continue;
            for (const auto& s : rhs)
                if (s.is_var && !reach[s.id]) { reach[s.id] = 1; changed = true; }
        }
    }
    Grammar out;
    out.terminals = g.terminals;
    std::vector<int> remap(nv, -1);
    out.variables.push_back(g.variables[0]);
    remap[0] = 0;
    for (int v = 1; v < nv; ++v)
        if (productive[v] && reach[v]) {
            remap[v] = static_cast<int>(out.variables.size());
            out.variables.push_back(g.variables[v]);
        }
    for (const auto& [lhs, rhs] : g.productions) {
        if (remap[lhs] < 0 || !reach[lhs]) continue;
        bool ok = true;
        Grammar::Rhs nr;
        for (const auto& s : rhs) {
            if (s.is_var) {
                if (remap[s.id] < 0) { ok = false; break; }
                nr.push_back(Grammar::V(remap[s.id]));
            } else {
                nr.push_back(s);
            }
        }
        if (ok) out.add(remap[lhs], std::move(nr));
    }
    out.finish();
    return out;
}

namespace {

using Entry = std::pair<Word, mpz_class>;
using Layer = std::vector<Entry>; // sorted by word

void accumulate(std::map<Word, mpz_class>& into, const Word& w, const mpz_class& m) {
    into[w] += m;
}

// words of the rhs suffix starting at symbol index si with remaining length
// `len`; cur/mult accumulate the prefix.  Nullable variables may take 0.
void expand_rhs(const Grammar& g, const std::vector<char>& nullable,
                const std::vector<std::vector<Layer>>& table, // [var][len]
                const Grammar::Rhs& rhs, size_t si, int len, Word& cur,
                const mpz_class& mult, std::map<Word, mpz_class>& into) {
    if (si == rhs.size()) {
        if (len == 0) accumulate(into, cur, mult);
        return;
    }
    const auto& s = rhs[si];
    if (!s.is_var) {
        if (len == 0) return;
        cur.push_back(s.id);
        expand_rhs(g, nullable, table, rhs, si + 1, len - 1, cur, mult, into);
        cur.pop_back();
        return;
    }
    int min_rest = 0;
    for (size_t j = si + 1; j < rhs.size(); ++j)
        min_rest += (!rhs[j].is_var || !nullable[rhs[j].id]) ? 1 : 0;
    int take_min = nullable[s.id] ? 0 : 1;
    for (int take = take_min; take <= len - min_rest; ++take) {
        const Layer& layer = table[s.id][take];
        for (const auto& [w, m] : layer) {
            size_t before = cur.size();
            cur.insert(cur.end(), w.begin(), w.end());
            expand_rhs(g, nullable, table, rhs, si + 1, len - take, cur, mult * m,
                       into);
            cur.resize(before);
        }
    }
}

} // namespace

std::vector<CensusEntry> words_up_to(const Grammar& g, int n) {
    check_proper(g);
    const int nv = static_cast<int>(g.variables.size());

    std::vector<char> nullable(nv, 0);
    for (const auto& [lhs, rhs] : g.productions)
        if (rhs.empty()) nullable[lhs] = 1; // only the start, by properness

    // topological order of effective unit productions (leaves first): these
    // are the same-length dependencies
    std::vector<std::vector<int>> unit(nv);
    for (const auto& [lhs, rhs] : g.productions)
        for (size_t i = 0; i < rhs.size(); ++i) {
            if (!rhs[i].is_var) continue;
            bool rest_nullable = true;
            for (size_t j = 0; j < rhs.size(); ++j) {
                if (i == j) continue;
                if (!rhs[j].is_var || !nullable[rhs[j].id]) rest_nullable = false;
            }
            if (rest_nullable) unit[lhs].push_back(rhs[i].id);
        }
    std::vector<int> order;
    std::vector<int> state(nv, 0);
    std::function<void(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int u : unit[v])
            if (state[u] == 0) dfs(u);
        state[v] = 2;
        order.push_back(v);
    };
    for (int v = 0; v < nv; ++v)
        if (state[v] == 0) dfs(v);

    std::vector<std::vector<Layer>> table(nv);
    for (auto& t : table) t.resize(n + 1);

    std::vector<std::vector<const std::pair<int, Grammar::Rhs>*>> prods(nv);
    for (const auto& p : g.productions) prods[p.first].push_back(&p);

    for (int len = 0; len <= n; ++len) {
        for (int v : order) {
            std::map<Word, mpz_class> into;
            for (const auto* p : prods[v]) {
                const auto& rhs = p->second;
                if (len == 0) {
                    if (rhs.empty()) accumulate(into, {}, 1);
                    continue;
                }
                Word cur;
                expand_rhs(g, nullable, table, rhs, 0, len, cur, 1, into);
            }
            table[v][len] = Layer(into.begin(), into.end());
        }
    }

    std::vector<CensusEntry> out;
    for (int len = 0; len <= n; ++len)
        for (const auto& [w, m] : table[0][len]) out.push_back({w, m});
    return out;
}

Census census_up_to(const Grammar& g, int n) {
    auto words = words_up_to(g, n);
    Census c;
    c.count.assign(n + 1, 0);
    c.max_multiplicity.assign(n + 1, 0);
    for (const auto& e : words) {
        int len = static_cast<int>(e.word.size());
        c.count[len] += 1;
        if (e.multiplicity > c.max_multiplicity[len])
            c.max_multiplicity[len] = e.multiplicity;
    }
    return c;
}

namespace {

// removes epsilon productions outside the start by the standard nullable
// closure (each nullable occurrence kept or dropped)
Grammar eliminate_epsilon(const Grammar& g) {
    const int nv = static_cast<int>(g.variables.size());
    std::vector<char> nullable(nv, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [lhs, rhs] : g.productions) {
            if (nullable[lhs]) continue;
            bool all = true;
            for (const auto& s : rhs)
                if (!s.is_var || !nullable[s.id]) { all = false; break; }
            if (all) {
                nullable[lhs] = 1;
                changed = true;
            }
        }
    }
    Grammar h;
    h.terminals = g.terminals;
    h.variables = g.variables;
    for (const auto& [lhs, rhs] : g.productions) {
        std::vector<int> opt;
        for (size_t i = 0; i < rhs.size(); ++i)
            if (rhs[i].is_var && nullable[rhs[i].id]) opt.push_back(static_cast<int>(i));
        for (unsigned mask = 0; mask < (1u << opt.size()); ++mask) {
            Grammar::Rhs variant;
            for (size_t i = 0; i < rhs.size(); ++i) {
                bool drop = false;
                for (size_t k = 0; k < opt.size(); ++k)
                    if (opt[k] == static_cast<int>(i) && (mask & (1u << k))) drop = true;
                if (!drop) variant.push_back(rhs[i]);
            }
            if (variant.empty()) continue;
            h.add(lhs, std::move(variant));
        }
    }
    if (nullable[0]) h.add(0, {});
    h.finish();
    return h;
}

} // namespace

Grammar intersect_regular(const Grammar& g, const Dfa& d) {
    for (int q = 0; q < d.num_states; ++q)
        if (static_cast<int>(d.delta[q].size()) != static_cast<int>(g.terminals.size()))
            throw InvalidSpecError("automaton is not total over the grammar terminals");

    Grammar out;
    out.terminals = g.terminals;
    out.variable("S&");
    auto triple = [&](int q, int a, int p) {
        return out.variable("(" + std::to_string(q) + "," + g.variables[a] + "," +
                            std::to_string(p) + ")");
    };
    for (const auto& [lhs, rhs] : g.productions) {
        // all state sequences q_0 .. q_m consistent with the terminals
        std::function<void(size_t, int, Grammar::Rhs&, int)> rec =
            [&](size_t i, int q, Grammar::Rhs& acc, int q0) {
                if (i == rhs.size()) {
                    out.add(triple(q0, lhs, q), acc);
                    return;
                }
                const auto& s = rhs[i];
                if (!s.is_var) {
                    int p = d.delta[q][s.id];
                    acc.push_back(s);
                    rec(i + 1, p, acc, q0);
                    acc.pop_back();
                    return;
                }
                for (int p = 0; p < d.num_states; ++p) {
                    acc.push_back(Grammar::V(triple(q, s.id, p)));
                    rec(i + 1, p, acc, q0);
                    acc.pop_back();
                }
            };
        for (int q0 = 0; q0 < d.num_states; ++q0) {
            Grammar::Rhs acc;
            rec(0, q0, acc, q0);
        }
    }
    for (int f = 0; f < d.num_states; ++f)
        if (d.accept[f]) out.add(0, {Grammar::V(triple(d.start, 0, f))});
    out.finish();
    return prune_unproductive(eliminate_epsilon(out));
}

Grammar substitute(const Grammar& outer, const std::map<int, Grammar>& map) {
    for (int t = 0; t < static_cast<int>(outer.terminals.size()); ++t)
        if (!map.count(t))
            throw InvalidSpecError("substitution map misses terminal '" +
                                   outer.terminals[t] + "'");

    Grammar out;
    out.variables = outer.variables;

    enum class Mode { Empty, Inline, Splice };
    struct InnerInfo {
        Mode mode;
        std::vector<Word> words;       // Inline: terminal words over inner ids
        std::vector<int> term_remap;   // inner terminal id -> out terminal id
        std::vector<int> var_remap;    // Splice: inner variable id -> out id
    };
    std::map<int, InnerInfo> info;
    int splice_counter = 0;

    for (const auto& [t, inner] : map) {
        InnerInfo ii;
        Grammar pruned = prune_unproductive(inner);
        bool empty = true;
        for (const auto& [lhs, rhs] : pruned.productions)
            if (lhs == 0) empty = false;
        if (empty) {
            ii.mode = Mode::Empty;
            info[t] = std::move(ii);
            continue;
        }
        ii.term_remap.resize(pruned.terminals.size());
        for (size_t i = 0; i < pruned.terminals.size(); ++i)
            ii.term_remap[i] = out.terminal(pruned.terminals[i]);
        bool finite_list = true;
        for (const auto& [lhs, rhs] : pruned.productions) {
            if (lhs != 0) { finite_list = false; break; }
            for (const auto& s : rhs)
                if (s.is_var) { finite_list = false; break; }
            if (!finite_list) break;
        }
        if (finite_list) {
            ii.mode = Mode::Inline;
            for (const auto& [lhs, rhs] : pruned.productions) {
                Word w;
                for (const auto& s : rhs) w.push_back(ii.term_remap[s.id]);
                ii.words.push_back(std::move(w));
            }
        } else {
            ii.mode = Mode::Splice;
            ii.var_remap.resize(pruned.variables.size());
            for (size_t v = 0; v < pruned.variables.size(); ++v)
                ii.var_remap[v] = out.variable(
                    "sub" + std::to_string(t) + "." + pruned.variables[v]);
            for (const auto& [lhs, rhs] : pruned.productions) {
                Grammar::Rhs nr;
                for (const auto& s : rhs)
                    nr.push_back(s.is_var ? Grammar::V(ii.var_remap[s.id])
                                          : Grammar::T(ii.term_remap[s.id]));
                out.add(ii.var_remap[lhs], std::move(nr));
            }
        }
        info[t] = std::move(ii);
    }
    // keep the pruned inner grammars around for splice production copies
    // (handled above); now expand outer productions
    for (const auto& [lhs, rhs] : outer.productions) {
        bool dead = false;
        for (const auto& s : rhs)
            if (!s.is_var && info.at(s.id).mode == Mode::Empty) dead = true;
        if (dead) continue;
        std::vector<Grammar::Rhs> alts{{}};
        for (const auto& s : rhs) {
            if (s.is_var) {
                for (auto& a : alts) a.push_back(s);
                continue;
            }
            const InnerInfo& ii = info.at(s.id);
            if (ii.mode == Mode::Splice) {
                // fresh start copy for this occurrence
                int fresh = out.variable("occ" + std::to_string(splice_counter++));
                // productions of the inner start, re-rooted at the fresh copy
                const Grammar pruned = prune_unproductive(map.at(s.id));
                for (const auto& [ilhs, irhs] : pruned.productions) {
                    if (ilhs != 0) continue;
                    Grammar::Rhs nr;
                    for (const auto& is : irhs)
                        nr.push_back(is.is_var ? Grammar::V(ii.var_remap[is.id])
                                               : Grammar::T(ii.term_remap[is.id]));
                    out.add(fresh, std::move(nr));
                }
                for (auto& a : alts) a.push_back(Grammar::V(fresh));
            } else { // Inline
                std::vector<Grammar::Rhs> next;
                for (const auto& a : alts)
                    for (const auto& w : ii.words) {
                        Grammar::Rhs ext = a;
                        for (Token x : w) ext.push_back(Grammar::T(x));
                        next.push_back(std::move(ext));
                    }
                alts = std::move(next);
            }
        }
        for (auto& a : alts) out.add(lhs, std::move(a));
    }
    out.finish();
    return prune_unproductive(out);
}

} // namespace saw
