#include "hsg/grammar.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace hsg {

namespace {

int nt_count(const Cfg& g) { return static_cast<int>(g.nonterminals.size()); }

void check_valid(const Cfg& g) {
    if (g.nonterminals.empty()) throw std::invalid_argument("grammar has no nonterminals");
    if (g.start < 0 || g.start >= nt_count(g))
        throw std::invalid_argument("start symbol is not a nonterminal");
    for (const auto& p : g.productions) {
        if (p.head < 0 || p.head >= nt_count(g))
            throw std::invalid_argument("production head out of range");
        for (const auto& s : p.body) {
            int limit = s.is_terminal ? g.terminals.size() : nt_count(g);
            if (s.id < 0 || s.id >= limit)
                throw std::invalid_argument("production body symbol out of range");
        }
    }
}

std::vector<char> nullable_set(const Cfg& g) {
    std::vector<char> nullable(nt_count(g), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (nullable[p.head]) continue;
            bool all = true;
            for (const auto& s : p.body)
                if (s.is_terminal || !nullable[s.id]) {
                    all = false;
                    break;
                }
            if (all) {
                nullable[p.head] = 1;
                changed = true;
            }
        }
    }
    return nullable;
}

std::vector<char> generating_set(const Cfg& g) {
    // Worklist fixed point: a production fires once all body nonterminals
    // generate; counts track what is still missing.
    std::vector<char> gen(nt_count(g), 0);
    std::vector<int> missing(g.productions.size(), 0);
    std::vector<std::vector<int>> occurs(nt_count(g));
    std::queue<int> fired;
    for (int i = 0; i < static_cast<int>(g.productions.size()); ++i) {
        for (const auto& s : g.productions[i].body)
            if (!s.is_terminal) {
                ++missing[i];
                occurs[s.id].push_back(i);
            }
        if (missing[i] == 0) fired.push(i);
    }
    while (!fired.empty()) {
        int i = fired.front();
        fired.pop();
        int head = g.productions[i].head;
        if (gen[head]) continue;
        gen[head] = 1;
        for (int j : occurs[head])
            if (--missing[j] == 0) fired.push(j);
    }
    return gen;
}

}  // namespace

Cfg trim(const Cfg& g) {
    check_valid(g);
    std::vector<char> gen = generating_set(g);
    std::vector<std::vector<int>> by_head(nt_count(g));
    for (int i = 0; i < static_cast<int>(g.productions.size()); ++i)
        by_head[g.productions[i].head].push_back(i);
    std::vector<char> reach(nt_count(g), 0);
    // Reachability through productions whose nonterminals all generate.
    std::queue<int> q;
    reach[g.start] = 1;
    q.push(g.start);
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        for (int pi : by_head[a]) {
            const auto& p = g.productions[pi];
            bool usable = true;
            for (const auto& s : p.body)
                if (!s.is_terminal && !gen[s.id]) {
                    usable = false;
                    break;
                }
            if (!usable) continue;
            for (const auto& s : p.body)
                if (!s.is_terminal && !reach[s.id]) {
                    reach[s.id] = 1;
                    q.push(s.id);
                }
        }
    }

    std::vector<int> remap(nt_count(g), -1);
    Cfg out;
    out.terminals = g.terminals;
    for (int a = 0; a < nt_count(g); ++a)
        if (reach[a] && (gen[a] || a == g.start)) remap[a] = out.add_nonterminal(g.nonterminals[a]);
    out.start = remap[g.start];
    for (const auto& p : g.productions) {
        if (remap[p.head] < 0) continue;
        bool usable = true;
        std::vector<CfgSymbol> body;
        for (const auto& s : p.body) {
            if (s.is_terminal) {
                body.push_back(s);
            } else if (remap[s.id] >= 0 && gen[s.id]) {
                body.push_back(CfgSymbol::nonterminal(remap[s.id]));
            } else {
                usable = false;
                break;
            }
        }
        if (usable) out.add_production(remap[p.head], std::move(body));
    }
    return out;
}

bool is_empty_cfg(const Cfg& g) {
    check_valid(g);
    return !generating_set(g)[g.start];
}

CnfGrammar to_cnf(const Cfg& g0) {
    check_valid(g0);
    Cfg g = g0;

    // 1. ε-elimination. Every subset of nullable body positions may vanish.
    std::vector<char> nullable = nullable_set(g);
    bool start_nullable = nullable[g.start];
    {
        std::vector<CfgProduction> out;
        std::set<std::pair<int, std::vector<std::pair<bool, int>>>> seen;
        for (const auto& p : g.productions) {
            std::vector<int> opt;  // positions of nullable nonterminals
            for (size_t i = 0; i < p.body.size(); ++i)
                if (!p.body[i].is_terminal && nullable[p.body[i].id])
                    opt.push_back(static_cast<int>(i));
            if (opt.size() > 20) throw std::runtime_error("to_cnf: ε-elimination blowup");
            for (size_t mask = 0; mask < (1u << opt.size()); ++mask) {
                std::vector<CfgSymbol> body;
                size_t oi = 0;
                for (size_t i = 0; i < p.body.size(); ++i) {
                    if (oi < opt.size() && static_cast<int>(i) == opt[oi]) {
                        bool drop = mask & (1u << oi);
                        ++oi;
                        if (drop) continue;
                    }
                    body.push_back(p.body[i]);
                }
                if (body.empty()) continue;
                std::vector<std::pair<bool, int>> key;
                for (const auto& s : body) key.push_back({s.is_terminal, s.id});
                if (seen.insert({p.head, key}).second) out.push_back({p.head, std::move(body)});
            }
        }
        g.productions = std::move(out);
    }

    // 2. Unit-production elimination via the unit-pair closure.
    {
        int n = nt_count(g);
        std::vector<std::vector<char>> unit(n, std::vector<char>(n, 0));
        for (int a = 0; a < n; ++a) unit[a][a] = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g.productions)
                if (p.body.size() == 1 && !p.body[0].is_terminal)
                    for (int a = 0; a < n; ++a)
                        if (unit[a][p.head] && !unit[a][p.body[0].id]) {
                            unit[a][p.body[0].id] = 1;
                            changed = true;
                        }
        }
        std::vector<CfgProduction> out;
        std::set<std::pair<int, std::vector<std::pair<bool, int>>>> seen;
        for (const auto& p : g.productions) {
            if (p.body.size() == 1 && !p.body[0].is_terminal) continue;
            for (int a = 0; a < n; ++a) {
                if (!unit[a][p.head]) continue;
                std::vector<std::pair<bool, int>> key;
                for (const auto& s : p.body) key.push_back({s.is_terminal, s.id});
                if (seen.insert({a, key}).second) out.push_back({a, p.body});
            }
        }
        g.productions = std::move(out);
    }

    // 3. Useless-symbol removal.
    g = trim(g);

    CnfGrammar cnf;
    cnf.terminals = g.terminals;
    cnf.nonterminals = g.nonterminals;
    cnf.start = g.start;
    cnf.accepts_epsilon = start_nullable;

    auto fresh = [&](std::string name) {
        cnf.nonterminals.push_back(std::move(name));
        return static_cast<int>(cnf.nonterminals.size()) - 1;
    };

    // 4. Terminal lifting (one shared nonterminal per terminal), 5. binarization.
    std::unordered_map<int, int> lifted;
    auto lift = [&](Letter a) {
        auto it = lifted.find(a);
        if (it != lifted.end()) return it->second;
        int nt = fresh("<" + g.terminals.name(a) + ">");
        cnf.lexical.push_back({nt, a});
        lifted.emplace(a, nt);
        return nt;
    };

    for (const auto& p : g.productions) {
        if (p.body.size() == 1) {
            // After unit elimination a 1-symbol body is a terminal.
            cnf.lexical.push_back({p.head, p.body[0].id});
            continue;
        }
        std::vector<int> nts;
        for (const auto& s : p.body) nts.push_back(s.is_terminal ? lift(s.id) : s.id);
        int head = p.head;
        for (size_t i = 0; i + 2 < nts.size(); ++i) {
            int cont = fresh(g.nonterminals[p.head] + "~" + std::to_string(i));
            cnf.binary.push_back({head, nts[i], cont});
            head = cont;
        }
        cnf.binary.push_back({head, nts[nts.size() - 2], nts[nts.size() - 1]});
    }
    return cnf;
}

Cfg cnf_to_cfg(const CnfGrammar& g) {
    Cfg out;
    out.terminals = g.terminals;
    out.nonterminals = g.nonterminals;
    out.start = g.start;
    for (const auto& [a, b, c] : g.binary)
        out.add_production(a, {CfgSymbol::nonterminal(b), CfgSymbol::nonterminal(c)});
    for (const auto& [a, t] : g.lexical) out.add_production(a, {CfgSymbol::terminal(t)});
    if (g.accepts_epsilon) out.add_production(g.start, {});
    return out;
}

namespace {

using Bits = std::vector<uint64_t>;

inline void bits_set(Bits& b, int i) { b[i >> 6] |= uint64_t{1} << (i & 63); }
inline bool bits_get(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }

}  // namespace

bool cyk_member(const CnfGrammar& g, const Word& w) {
    for (Letter x : w)
        if (x < 0 || x >= g.terminals.size())
            throw std::out_of_range("cyk_member: letter outside grammar terminals");
    if (w.empty()) return g.accepts_epsilon;
    const int n = static_cast<int>(w.size());
    const int nn = static_cast<int>(g.nonterminals.size());
    const int blocks = (nn + 63) / 64;
    // cell(i,len) = nonterminals deriving w[i..i+len)
    std::vector<Bits> table(static_cast<size_t>(n) * n, Bits(blocks, 0));
    auto cell = [&](int i, int len) -> Bits& { return table[static_cast<size_t>(i) * n + len - 1]; };

    for (int i = 0; i < n; ++i)
        for (const auto& [a, t] : g.lexical)
            if (t == w[i]) bits_set(cell(i, 1), a);

    for (int len = 2; len <= n; ++len)
        for (int i = 0; i + len <= n; ++i) {
            Bits& dst = cell(i, len);
            for (int split = 1; split < len; ++split) {
                const Bits& left = cell(i, split);
                const Bits& right = cell(i + split, len - split);
                for (const auto& [a, b, c] : g.binary)
                    if (bits_get(left, b) && bits_get(right, c)) bits_set(dst, a);
            }
        }
    return bits_get(cell(0, n), g.start);
}

NonterminalBound nonterminal_bound_k(const CnfGrammar& g) {
    const int n = static_cast<int>(g.nonterminals.size());
    constexpr int kInf = 1 << 28;
    std::vector<int> len(n, kInf);
    for (const auto& [a, t] : g.lexical) {
        (void)t;
        len[a] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b, c] : g.binary) {
            if (len[b] >= kInf || len[c] >= kInf) continue;
            int cand = len[b] + len[c];
            if (cand < len[a]) {
                len[a] = cand;
                changed = true;
            }
        }
    }
    for (int a = 0; a < n; ++a)
        if (len[a] >= kInf)
            throw std::invalid_argument("nonterminal derives no word: " + g.nonterminals[a] +
                                        " (trim the grammar first)");

    // Witnesses in increasing shortest-length order; children are strictly shorter.
    std::vector<int> order(n);
    for (int a = 0; a < n; ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return len[x] < len[y]; });
    NonterminalBound out;
    out.witnesses.assign(n, {});
    std::vector<char> done(n, 0);
    for (int a : order) {
        Word best;
        for (const auto& [h, t] : g.lexical) {
            if (h != a || len[a] != 1) continue;
            Word cand = {t};
            if (best.empty() || cand < best) best = cand;
        }
        for (const auto& [h, b, c] : g.binary) {
            if (h != a || !done[b] || !done[c] || len[b] + len[c] != len[a]) continue;
            Word cand = concat(out.witnesses[b], out.witnesses[c]);
            if (best.empty() || cand < best) best = std::move(cand);
        }
        out.witnesses[a] = std::move(best);
        done[a] = 1;
        out.k = std::max(out.k, len[a]);
    }
    return out;
}

Cfg union_cfg(const Cfg& a, const Cfg& b) {
    if (a.terminals != b.terminals)
        throw std::invalid_argument("union_cfg: grammars over different terminal alphabets");
    Cfg out;
    out.terminals = a.terminals;
    out.start = out.add_nonterminal("U");
    int offa = static_cast<int>(out.nonterminals.size());
    for (const auto& name : a.nonterminals) out.add_nonterminal("l." + name);
    int offb = static_cast<int>(out.nonterminals.size());
    for (const auto& name : b.nonterminals) out.add_nonterminal("r." + name);
    auto shift = [](const CfgProduction& p, int off) {
        CfgProduction q;
        q.head = p.head + off;
        for (const auto& s : p.body)
            q.body.push_back(s.is_terminal ? s : CfgSymbol::nonterminal(s.id + off));
        return q;
    };
    for (const auto& p : a.productions) out.productions.push_back(shift(p, offa));
    for (const auto& p : b.productions) out.productions.push_back(shift(p, offb));
    out.add_production(out.start, {CfgSymbol::nonterminal(a.start + offa)});
    out.add_production(out.start, {CfgSymbol::nonterminal(b.start + offb)});
    return out;
}

Cfg cfg_from_nfa(const Nfa& a) {
    Cfg out;
    out.terminals = a.alphabet;
    for (int s = 0; s < a.num_states; ++s) out.add_nonterminal("q" + std::to_string(s));
    out.start = out.add_nonterminal("S");
    for (int s : a.initial) out.add_production(out.start, {CfgSymbol::nonterminal(s)});
    for (const auto& e : a.edges) {
        if (e.label == kEpsilonLabel)
            out.add_production(e.from, {CfgSymbol::nonterminal(e.to)});
        else
            out.add_production(e.from,
                               {CfgSymbol::terminal(e.label), CfgSymbol::nonterminal(e.to)});
    }
    for (int f : a.final) out.add_production(f, {});
    if (a.num_states == 0) return out;  // empty language, start generates nothing
    return out;
}

Cfg cfg_word(const Alphabet& alphabet, const Word& w) {
    Cfg out;
    out.terminals = alphabet;
    out.start = out.add_nonterminal("S");
    std::vector<CfgSymbol> body;
    for (Letter x : w) body.push_back(CfgSymbol::terminal(x));
    out.add_production(out.start, std::move(body));
    return out;
}

Cfg intersect_regular(const Cfg& g0, const Nfa& a0) {
    if (g0.terminals != a0.alphabet)
        throw std::invalid_argument("intersect_regular: alphabets differ");
    CnfGrammar g = to_cnf(trim(g0));
    Nfa a = remove_epsilon(a0);

    Cfg out;
    out.terminals = g0.terminals;
    out.start = out.add_nonterminal("S&");
    if (a.num_states == 0 || g.nonterminals.empty()) return out;

    // Single initial state.
    int q0;
    if (a.initial.size() == 1) {
        q0 = a.initial[0];
    } else {
        q0 = a.num_states++;
        std::vector<NfaEdge> extra;
        bool q0_final = false;
        for (int i : a.initial) {
            for (const auto& e : a.edges)
                if (e.from == i) extra.push_back({q0, e.label, e.to});
            if (std::find(a.final.begin(), a.final.end(), i) != a.final.end()) q0_final = true;
        }
        for (auto& e : extra) a.edges.push_back(e);
        if (q0_final) a.final.push_back(q0);
        a.initial = {q0};
    }

    const int Q = a.num_states;
    const int N = static_cast<int>(g.nonterminals.size());
    auto key = [&](int p, int nt, int q) { return (static_cast<long long>(p) * N + nt) * Q + q; };

    // Phase 1: derivability closure over triples (p, A, q).
    std::unordered_set<long long> derivable;
    std::vector<std::array<int, 3>> worklist;
    // by_from[B][p] = list of q with (p,B,q) derivable; by_to[B][q] = list of p.
    std::vector<std::unordered_map<int, std::vector<int>>> by_from(N), by_to(N);
    std::vector<std::vector<int>> rules_left(N), rules_right(N);  // rule indices by child
    for (int r = 0; r < static_cast<int>(g.binary.size()); ++r) {
        rules_left[g.binary[r][1]].push_back(r);
        rules_right[g.binary[r][2]].push_back(r);
    }

    auto add_triple = [&](int p, int nt, int q) {
        if (derivable.insert(key(p, nt, q)).second) {
            worklist.push_back({p, nt, q});
            by_from[nt][p].push_back(q);
            by_to[nt][q].push_back(p);
        }
    };

    for (const auto& [nt, t] : g.lexical)
        for (const auto& e : a.edges)
            if (e.label == t) add_triple(e.from, nt, e.to);

    while (!worklist.empty()) {
        auto [p, x, q] = worklist.back();
        worklist.pop_back();
        for (int r : rules_left[x]) {
            int head = g.binary[r][0], right = g.binary[r][2];
            auto it = by_from[right].find(q);
            if (it == by_from[right].end()) continue;
            for (int q2 : std::vector<int>(it->second)) add_triple(p, head, q2);
        }
        for (int r : rules_right[x]) {
            int head = g.binary[r][0], left = g.binary[r][1];
            auto it = by_to[left].find(p);
            if (it == by_to[left].end()) continue;
            for (int p2 : std::vector<int>(it->second)) add_triple(p2, head, q);
        }
    }

    // Phase 2: emit the grammar over derivable triples only.
    std::unordered_map<long long, int> nt_ids;
    auto triple_nt = [&](int p, int nt, int q) {
        long long k = key(p, nt, q);
        auto it = nt_ids.find(k);
        if (it != nt_ids.end()) return it->second;
        int id = out.add_nonterminal("[" + std::to_string(p) + "," + g.nonterminals[nt] + "," +
                                     std::to_string(q) + "]");
        nt_ids.emplace(k, id);
        return id;
    };

    for (const auto& [nt, t] : g.lexical)
        for (const auto& e : a.edges)
            if (e.label == t)
                out.add_production(triple_nt(e.from, nt, e.to), {CfgSymbol::terminal(t)});

    for (const auto& [head, b, c] : g.binary)
        for (const auto& [p, qs] : by_from[b])
            for (int r : qs) {
                auto it = by_from[c].find(r);
                if (it == by_from[c].end()) continue;
                for (int q : it->second)
                    if (derivable.count(key(p, head, q)))
                        out.add_production(triple_nt(p, head, q),
                                           {CfgSymbol::nonterminal(triple_nt(p, b, r)),
                                            CfgSymbol::nonterminal(triple_nt(r, c, q))});
            }

    for (int f : a.final)
        if (derivable.count(key(q0, g.start, f)))
            out.add_production(out.start, {CfgSymbol::nonterminal(triple_nt(q0, g.start, f))});

    if (g.accepts_epsilon &&
        std::find(a.final.begin(), a.final.end(), q0) != a.final.end())
        out.add_production(out.start, {});

    return trim(out);
}

Cfg hom_image_cfg(const FreeHom& h, const Cfg& g) {
    if (g.terminals != h.source())
        throw std::invalid_argument("hom_image_cfg: grammar terminals differ from hom source");
    Cfg out;
    out.terminals = h.target();
    out.nonterminals = g.nonterminals;
    out.start = g.start;
    for (const auto& p : g.productions) {
        CfgProduction q;
        q.head = p.head;
        for (const auto& s : p.body) {
            if (!s.is_terminal) {
                q.body.push_back(s);
                continue;
            }
            for (Letter y : h.image(s.id)) q.body.push_back(CfgSymbol::terminal(y));
        }
        out.productions.push_back(std::move(q));
    }
    return out;
}

Cfg hom_preimage_cfg(const FreeHom& h, const Cfg& g) {
    if (g.terminals != h.target())
        throw std::invalid_argument("hom_preimage_cfg: grammar terminals differ from hom target");
    bool letter_sized = true;
    for (Letter a = 0; a < h.source().size(); ++a)
        if (h.image(a).size() > 1) letter_sized = false;
    if (!letter_sized) {
        // Route long images through the transducer factorization; its edge
        // labels are letter-sized after normalization.
        return apply_transduction(invert(hom_transducer(h, /*include_empty=*/true)), g);
    }

    CnfGrammar gc = to_cnf(trim(g));
    Cfg out;
    out.terminals = h.source();
    for (const auto& name : gc.nonterminals) out.add_nonterminal(name);
    int eps_nt = out.add_nonterminal("E~");
    out.start = out.add_nonterminal("S~");

    out.add_production(eps_nt, {});
    for (Letter a = 0; a < h.source().size(); ++a)
        if (h.image(a).empty())
            out.add_production(eps_nt,
                               {CfgSymbol::terminal(a), CfgSymbol::nonterminal(eps_nt)});

    for (const auto& [head, b, c] : gc.binary)
        out.add_production(head, {CfgSymbol::nonterminal(b), CfgSymbol::nonterminal(c)});
    for (const auto& [head, t] : gc.lexical)
        for (Letter a = 0; a < h.source().size(); ++a)
            if (h.image(a).size() == 1 && h.image(a)[0] == t)
                out.add_production(head, {CfgSymbol::nonterminal(eps_nt), CfgSymbol::terminal(a),
                                          CfgSymbol::nonterminal(eps_nt)});

    if (!gc.nonterminals.empty())
        out.add_production(out.start, {CfgSymbol::nonterminal(gc.start)});
    if (gc.accepts_epsilon) out.add_production(out.start, {CfgSymbol::nonterminal(eps_nt)});
    return trim(out);
}

Cfg apply_transduction(const Transducer& t0, const Cfg& g) {
    if (g.terminals != t0.in_alphabet)
        throw std::invalid_argument("apply_transduction: grammar is not over the input alphabet");
    Transducer t = normalize_letters(t0);

    // Edge coding: one fresh letter per edge.
    std::vector<std::string> names;
    names.reserve(t.edges.size());
    for (size_t i = 0; i < t.edges.size(); ++i) names.push_back("e" + std::to_string(i));
    Alphabet coding(names);

    std::vector<Word> in_images, out_images;
    for (const auto& e : t.edges) {
        in_images.push_back(e.in);
        out_images.push_back(e.out);
    }
    FreeHom h_in(coding, t.in_alphabet, in_images, /*monoid_mode=*/true);
    FreeHom h_out(coding, t.out_alphabet, out_images, /*monoid_mode=*/true);

    Nfa paths = nfa_empty(coding);
    paths.num_states = t.num_states;
    paths.initial = t.initial;
    paths.final = t.final;
    for (int i = 0; i < static_cast<int>(t.edges.size()); ++i)
        paths.add_edge(t.edges[i].from, i, t.edges[i].to);

    Cfg coded = hom_preimage_cfg(h_in, g);
    Cfg valid = intersect_regular(coded, paths);
    return trim(hom_image_cfg(h_out, valid));
}

Cfg restrict_terminals(const Cfg& g, const Alphabet& smaller) {
    for (const auto& p : g.productions)
        for (const auto& s : p.body)
            if (s.is_terminal && s.id >= smaller.size())
                throw std::invalid_argument("restrict_terminals: terminal outside sub-alphabet");
    Cfg out = g;
    out.terminals = smaller;
    return out;
}

Cfg extend_terminals(const Cfg& g, const Alphabet& bigger) {
    for (int i = 0; i < g.terminals.size(); ++i)
        if (i >= bigger.size() || bigger.name(i) != g.terminals.name(i))
            throw std::invalid_argument("extend_terminals: not a prefix extension");
    Cfg out = g;
    out.terminals = bigger;
    return out;
}

Cfg remap_terminals(const Cfg& g, const Alphabet& target) {
    Cfg out = g;
    out.terminals = target;
    for (auto& p : out.productions)
        for (auto& s : p.body)
            if (s.is_terminal) s.id = target.at(g.terminals.name(s.id));
    return out;
}

std::vector<Word> cfg_bounded_words(const CnfGrammar& g, int maxlen, size_t cap) {
    const int n = static_cast<int>(g.nonterminals.size());
    // Intern pool keyed on the words themselves.
    std::vector<Word> pool;
    std::map<Word, int> ids;
    auto intern = [&](const Word& w) {
        auto it = ids.find(w);
        if (it != ids.end()) return it->second;
        pool.push_back(w);
        if (pool.size() > cap) throw std::runtime_error("cfg_bounded_words: cap exceeded");
        int id = static_cast<int>(pool.size()) - 1;
        ids.emplace(w, id);
        return id;
    };

    // sets[A][len] = word ids derived by A with exactly len letters
    std::vector<std::vector<std::vector<int>>> sets(
        n, std::vector<std::vector<int>>(static_cast<size_t>(maxlen) + 1));
    if (maxlen >= 1)
        for (const auto& [a, t] : g.lexical) {
            int id = intern({t});
            auto& v = sets[a][1];
            if (std::find(v.begin(), v.end(), id) == v.end()) v.push_back(id);
        }
    for (int len = 2; len <= maxlen; ++len) {
        std::vector<std::unordered_set<long long>> dedup(n);
        for (const auto& [a, b, c] : g.binary) {
            for (int i = 1; i < len; ++i) {
                const auto& lefts = sets[b][i];
                const auto& rights = sets[c][len - i];
                if (lefts.empty() || rights.empty()) continue;
                for (int lw : lefts)
                    for (int rw : rights) {
                        long long pk = static_cast<long long>(lw) << 32 | static_cast<uint32_t>(rw);
                        if (!dedup[a].insert(pk).second) continue;
                        Word w = concat(pool[lw], pool[rw]);
                        int id = intern(w);
                        sets[a][len].push_back(id);
                    }
            }
        }
        // A pair-key dedup can still alias distinct pairs to one word.
        for (int a2 = 0; a2 < n; ++a2) {
            auto& v = sets[a2][len];
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    std::vector<Word> out;
    if (g.accepts_epsilon) out.push_back({});
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<Word> level;
        for (int id : sets[g.start][len]) level.push_back(pool[id]);
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

Cfg parse_cfg(const std::string& text) {
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() < 2 || tokens[1] != "->")
            throw std::invalid_argument("grammar line must be of the form 'A -> ...': " + line);
        std::vector<std::vector<std::string>> alts(1);
        for (size_t i = 2; i < tokens.size(); ++i) {
            if (tokens[i] == "|")
                alts.emplace_back();
            else
                alts.back().push_back(tokens[i]);
        }
        lines.push_back({tokens[0], std::move(alts)});
    }
    if (lines.empty()) throw std::invalid_argument("empty grammar text");

    Cfg out;
    std::map<std::string, int> nts;
    for (const auto& [head, alts] : lines) {
        (void)alts;
        if (!nts.count(head)) nts[head] = out.add_nonterminal(head);
    }
    out.start = nts[lines[0].first];
    std::vector<std::string> term_names;
    std::map<std::string, int> terms;
    for (const auto& [head, alts] : lines) {
        (void)head;
        for (const auto& alt : alts)
            for (const auto& tok : alt)
                if (tok != kEpsilonToken && !nts.count(tok) && !terms.count(tok)) {
                    terms[tok] = static_cast<int>(term_names.size());
                    term_names.push_back(tok);
                }
    }
    out.terminals = Alphabet(term_names);
    for (const auto& [head, alts] : lines)
        for (const auto& alt : alts) {
            std::vector<CfgSymbol> body;
            for (const auto& tok : alt) {
                if (tok == kEpsilonToken) continue;
                if (nts.count(tok))
                    body.push_back(CfgSymbol::nonterminal(nts[tok]));
                else
                    body.push_back(CfgSymbol::terminal(terms[tok]));
            }
            out.add_production(nts.at(head), std::move(body));
        }
    return out;
}

std::string cfg_text(const Cfg& g) {
    // Group productions by head, start symbol first.
    std::ostringstream out;
    std::vector<int> order;
    order.push_back(g.start);
    for (int a = 0; a < nt_count(g); ++a)
        if (a != g.start) order.push_back(a);
    for (int a : order) {
        std::vector<std::string> alts;
        for (const auto& p : g.productions) {
            if (p.head != a) continue;
            if (p.body.empty()) {
                alts.push_back(kEpsilonToken);
                continue;
            }
            std::string alt;
            for (const auto& s : p.body) {
                if (!alt.empty()) alt += ' ';
                alt += s.is_terminal ? g.terminals.name(s.id) : g.nonterminals[s.id];
            }
            alts.push_back(std::move(alt));
        }
        if (alts.empty()) continue;
        out << g.nonterminals[a] << " ->";
        for (size_t i = 0; i < alts.size(); ++i) out << (i ? " | " : " ") << alts[i];
        out << "\n";
    }
    return out.str();
}

}  // namespace hsg
