#include "saw/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "saw/errors.hpp"
#include "saw/pipeline.hpp"

namespace saw {

namespace {

struct Config {
    std::string input;
    std::string out;
    std::string grammar_file;
    std::string template_str;
    int radius = 8;
    int maxlen = 8;
    int parallel = 1;
    int margin = 3;
    long size_bound = 0;
    double tol = 1e-9;
    int kmin = 1, kmax = 6, lmin = 1, lmax = 6, mmin = 1, mmax = 6;
};

void emit(const Config& cfg, std::ostream& fallback, const std::string& text) {
    if (cfg.out.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw IoError("cannot open output file: " + cfg.out);
    f << text;
}

WordTemplate parse_template(const Alphabet& sigma, const std::string& text) {
    WordTemplate t;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        std::istringstream ps(piece);
        std::vector<std::string> toks;
        std::string tok;
        while (ps >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        WordTemplate::Piece p;
        if (toks.back() == "^k" || toks.back() == "^l" || toks.back() == "^m") {
            p.slot = toks.back() == "^k" ? 0 : toks.back() == "^l" ? 1 : 2;
            toks.pop_back();
        }
        for (const auto& s : toks) p.word.push_back(sigma.index(s));
        if (p.word.empty()) throw IoError("template piece without tokens");
        t.pieces.push_back(std::move(p));
    }
    if (t.pieces.empty()) throw IoError("empty word template");
    return t;
}

std::string counts_tsv(const SawCounts& c) {
    std::ostringstream os;
    os << "n\tc_n\n";
    for (size_t n = 0; n < c.counts.size(); ++n)
        os << n << "\t" << c.counts[n].get_str() << "\n";
    return os.str();
}

std::string series_tsv(const PowerSeriesQ& s, int N) {
    std::ostringstream os;
    os << "n\tc_n\n";
    for (int n = 0; n <= N && n <= s.order(); ++n) {
        const mpq_class& q = s.coeff[n];
        os << n << "\t";
        if (q.get_den() == 1)
            os << q.get_num().get_str();
        else
            os << q.get_str();
        os << "\n";
    }
    return os.str();
}

Grammar load_grammar_arg(const Config& cfg, const InputDoc* doc) {
    if (!cfg.grammar_file.empty()) {
        std::ifstream in(cfg.grammar_file);
        if (!in) throw IoError("cannot open grammar file: " + cfg.grammar_file);
        return parse_grammar(in);
    }
    if (!doc) throw IoError("either --input or --grammar is required");
    QuotientOptions opts;
    opts.margin = cfg.margin;
    opts.size_bound = static_cast<int>(cfg.size_bound);
    return pipeline_grammar(*doc, cfg.radius, opts);
}

std::string decimal(const mpq_class& q, int digits) {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpq_class scaled = q * mpq_class(scale);
    mpz_class n = scaled.get_num() / scaled.get_den(); // floor for positives
    std::string s = n.get_str();
    bool neg = false;
    if (!s.empty() && s[0] == '-') {
        neg = true;
        s.erase(0, 1);
    }
    while (static_cast<int>(s.size()) <= digits) s.insert(0, "0");
    s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
}

int dispatch(const std::string& cmd, const Config& cfg, std::ostream& out) {
    std::optional<InputDoc> doc;
    if (!cfg.input.empty()) doc = load_input(cfg.input);
    QuotientOptions qopts;
    qopts.margin = cfg.margin;
    qopts.size_bound = static_cast<int>(cfg.size_bound);

    if (cmd == "validate") {
        if (!doc) throw IoError("--input is required");
        std::ostringstream os;
        bool ok = true;
        if (doc->mode == InputMode::Finite) {
            auto rep = validate(doc->graph);
            for (const auto& issue : rep.issues) {
                ok = false;
                os << issue.kind << ":";
                for (int d : issue.darts) os << " dart" << d;
                os << " " << issue.detail << "\n";
            }
        } else if (doc->mode == InputMode::Cayley) {
            if (!doc->spec.system.terminating()) {
                ok = false;
                os << "termination: a rule is not shortlex-decreasing\n";
            } else {
                auto rep = check_confluence(doc->spec.system);
                for (const auto& cp : rep.unresolved) {
                    ok = false;
                    os << "confluence: unresolved critical pair of rules "
                       << cp.rule_a << "," << cp.rule_b << " over '"
                       << doc->spec.system.alphabet.format(cp.overlap) << "': '"
                       << doc->spec.system.alphabet.format(cp.descendant_a)
                       << "' vs '"
                       << doc->spec.system.alphabet.format(cp.descendant_b) << "'\n";
                }
            }
        } else {
            if (doc->quotient.level3) doc->quotient.level3->validate();
            if (doc->quotient.level2) doc->quotient.level2->validate();
        }
        os << (ok ? "valid\n" : "invalid\n");
        emit(cfg, out, os.str());
        return ok ? 0 : 1;
    }
    if (cmd == "count") {
        if (!doc) throw IoError("--input is required");
        auto view = pipeline_view(*doc, cfg.radius);
        emit(cfg, out, counts_tsv(count_saws(view, cfg.maxlen, cfg.parallel)));
        return 0;
    }
    if (cmd == "words") {
        if (!doc) throw IoError("--input is required");
        auto view = pipeline_view(*doc, cfg.radius);
        std::ostringstream os;
        for (const auto& w : saw_words(view, cfg.maxlen))
            os << view.graph.alphabet.format(w) << "\n";
        emit(cfg, out, os.str());
        return 0;
    }
    if (cmd == "probe") {
        if (!doc) throw IoError("--input is required");
        auto view = pipeline_view(*doc, cfg.radius);
        auto t = parse_template(view.graph.alphabet, cfg.template_str);
        std::vector<std::pair<int, int>> ranges;
        std::vector<std::pair<int, int>> all{{cfg.kmin, cfg.kmax},
                                             {cfg.lmin, cfg.lmax},
                                             {cfg.mmin, cfg.mmax}};
        for (int s = 0; s < t.num_slots(); ++s) ranges.push_back(all[s]);
        std::ostringstream os;
        const char* names = "klm";
        for (int s = 0; s < t.num_slots(); ++s) os << names[s] << "\t";
        os << "member\n";
        for (const auto& e : probe_family(view, t, ranges)) {
            for (int x : e.exponents) os << x << "\t";
            os << (e.member ? "1" : "0") << "\n";
        }
        emit(cfg, out, os.str());
        return 0;
    }
    if (cmd == "blocks") {
        if (!doc || doc->mode != InputMode::Finite)
            throw IoError("blocks requires a finite graph input");
        auto tree = block_cut_tree(doc->graph);
        std::ostringstream os;
        os << "{\n  \"blocks\": [";
        for (size_t b = 0; b < tree.blocks.size(); ++b) {
            os << (b ? ", " : "") << "[";
            for (size_t i = 0; i < tree.blocks[b].size(); ++i)
                os << (i ? ", " : "") << "\""
                   << doc->graph.vertex_names[tree.blocks[b][i]] << "\"";
            os << "]";
        }
        os << "],\n  \"cutvertices\": [";
        for (size_t i = 0; i < tree.cutvertices.size(); ++i)
            os << (i ? ", " : "") << "\""
               << doc->graph.vertex_names[tree.cutvertices[i]] << "\"";
        os << "]\n}\n";
        emit(cfg, out, os.str());
        return 0;
    }
    if (cmd == "tutte") {
        if (!doc || doc->mode != InputMode::Finite)
            throw IoError("tutte requires a finite graph input");
        auto tree = tutte_decomposition(multigraph_of(doc->graph));
        std::ostringstream os;
        os << "{\n  \"nodes\": [\n";
        for (size_t i = 0; i < tree.nodes.size(); ++i) {
            os << "    {\"kind\": \"" << to_string(tree.nodes[i].kind)
               << "\", \"edges\": [";
            const auto& es = tree.nodes[i].graph.edges;
            for (size_t j = 0; j < es.size(); ++j) {
                os << (j ? ", " : "") << "[\""
                   << doc->graph.vertex_names[es[j].u] << "\", \""
                   << doc->graph.vertex_names[es[j].v] << "\", "
                   << (es[j].virt ? "\"virtual\"" : "\"real\"") << "]";
            }
            os << "]}" << (i + 1 < tree.nodes.size() ? "," : "") << "\n";
        }
        os << "  ],\n  \"tree_edges\": [";
        for (size_t i = 0; i < tree.edges.size(); ++i)
            os << (i ? ", " : "") << "[" << tree.edges[i].n1 << ", "
               << tree.edges[i].n2 << "]";
        os << "]\n}\n";
        emit(cfg, out, os.str());
        return 0;
    }
    if (cmd == "quotient") {
        if (!doc) throw IoError("--input is required");
        emit(cfg, out, quotient_to_json(pipeline_quotient(*doc, cfg.radius, qopts)));
        return 0;
    }
    if (cmd == "grammar") {
        Grammar g = load_grammar_arg(cfg, doc ? &*doc : nullptr);
        emit(cfg, out, g.format());
        return 0;
    }
    if (cmd == "census") {
        Grammar g = load_grammar_arg(cfg, doc ? &*doc : nullptr);
        auto census = census_up_to(g, cfg.maxlen);
        std::ostringstream os;
        os << "n\tcount\tmax_multiplicity\n";
        for (int n = 0; n <= cfg.maxlen; ++n)
            os << n << "\t" << census.count[n].get_str() << "\t"
               << census.max_multiplicity[n].get_str() << "\n";
        emit(cfg, out, os.str());
        return 0;
    }
    if (cmd == "series") {
        Grammar g = load_grammar_arg(cfg, doc ? &*doc : nullptr);
        auto sys = grammar_to_system(g);
        auto series = solve_series(sys, cfg.maxlen);
        emit(cfg, out, series_tsv(series[0], cfg.maxlen));
        return 0;
    }
    if (cmd == "minpoly" || cmd == "mu") {
        Grammar g = load_grammar_arg(cfg, doc ? &*doc : nullptr);
        auto algebra = pipeline_algebra(g, std::max(cfg.maxlen, 24));
        const BiPoly& P = algebra.minimal_polynomial;
        if (cmd == "minpoly") {
            std::ostringstream os;
            os << "deg_t\tdeg_y\tcoeff\n";
            for (size_t j = 0; j < P.c.size(); ++j)
                for (size_t i = 0; i < P.c[j].size(); ++i)
                    if (P.c[j][i] != 0)
                        os << i << "\t" << j << "\t" << P.c[j][i].get_str() << "\n";
            os << "# P(t, y) = " << P.render() << "\n";
            emit(cfg, out, os.str());
            return 0;
        }
        int window = std::max({cfg.maxlen, 2 * (P.tdeg() + P.ydeg()) + 2, 48});
        auto series = solve_series(algebra.system, window);
        auto mu = connective_constant(series[0], P, mpq_class(cfg.tol));
        std::ostringstream os;
        os << "mu_lo\tmu_hi\n";
        os << decimal(mu.mu.lo, 12) << "\t" << decimal(mu.mu.hi, 12) << "\n";
        emit(cfg, out, os.str());
        return 0;
    }
    if (cmd == "verify") {
        if (!doc) throw IoError("--input is required");
        auto view = pipeline_view(*doc, cfg.radius);
        auto oracle = count_saws(view, cfg.maxlen, cfg.parallel);
        Grammar g = pipeline_grammar(*doc, cfg.radius, qopts);
        auto census = census_up_to(g, cfg.maxlen);
        std::ostringstream os;
        bool ok = true;
        os << "n\toracle\tgrammar\tmax_multiplicity\n";
        for (int n = 0; n <= cfg.maxlen; ++n) {
            os << n << "\t" << oracle.counts[n].get_str() << "\t"
               << census.count[n].get_str() << "\t"
               << census.max_multiplicity[n].get_str() << "\n";
            if (oracle.counts[n] != census.count[n]) ok = false;
            if (census.max_multiplicity[n] > 1) ok = false;
        }
        os << (ok ? "match\n" : "MISMATCH\n");
        emit(cfg, out, os.str());
        return ok ? 0 : 3;
    }
    throw IoError("unknown subcommand: " + cmd);
}

} // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"self-avoiding-walk language toolkit"};
    app.require_subcommand(1);
    Config cfg;

    const std::vector<std::string> commands = {
        "validate", "count", "words",  "probe",  "blocks", "tutte",  "quotient",
        "grammar",  "census", "series", "minpoly", "mu",    "verify"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--input", cfg.input, "graph description file");
        sub->add_option("--radius", cfg.radius, "ball radius for cayley inputs");
        sub->add_option("--maxlen", cfg.maxlen, "maximal walk length / order");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--tol", cfg.tol, "interval tolerance for mu");
        sub->add_option("--parallel", cfg.parallel, "oracle worker threads");
        sub->add_option("--margin", cfg.margin, "trusted-depth margin");
        sub->add_option("--size-bound", cfg.size_bound,
                        "3-block size bound (0 = auto)");
        if (name == "probe") {
            sub->add_option("--template", cfg.template_str,
                            "pieces separated by ';', slot suffix ^k ^l ^m")
                ->required();
            sub->add_option("--kmin", cfg.kmin);
            sub->add_option("--kmax", cfg.kmax);
            sub->add_option("--lmin", cfg.lmin);
            sub->add_option("--lmax", cfg.lmax);
            sub->add_option("--mmin", cfg.mmin);
            sub->add_option("--mmax", cfg.mmax);
        }
        if (name == "census" || name == "grammar" || name == "series" ||
            name == "minpoly" || name == "mu")
            sub->add_option("--grammar", cfg.grammar_file,
                            "read a grammar text file instead of --input");
    }

    // CLI11 wants a mutable char** style parse
    std::vector<std::string> args = argv;
    std::vector<char*> cargs;
    std::string prog = "saw";
    cargs.push_back(prog.data());
    for (auto& a : args) cargs.push_back(a.data());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 4;
    }

    std::string cmd;
    for (const auto* sub : app.get_subcommands()) cmd = sub->get_name();

    try {
        return dispatch(cmd, cfg, out);
    } catch (const GuardError& e) {
        err << "guard error: " << e.what() << "\n";
        return 2;
    } catch (const RadiusError& e) {
        err << "radius error: " << e.what() << "\n";
        return 2;
    } catch (const EndSizeError& e) {
        err << "end-size error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return 4;
    } catch (const InvalidSpecError& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const PropernessError& e) {
        err << "improper grammar/system: " << e.what() << "\n";
        return 1;
    } catch (const NonterminationError& e) {
        err << "nontermination: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace saw
