#include "hsg/valence.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hsg {

PolycyclicWord reduce(PolycyclicWord m) {
    PolycyclicWord out;
    for (PolyOp op : m) {
        if (op == 0) throw std::invalid_argument("polycyclic index must be nonzero");
        if (!out.empty() && out.back() > 0 && op == -out.back())
            out.pop_back();
        else
            out.push_back(op);
    }
    return out;
}

bool is_identity(const PolycyclicWord& m) { return reduce(m).empty(); }

bool stack_sim_identity(const PolycyclicWord& m) {
    std::vector<int> stack;
    for (PolyOp op : m) {
        if (op > 0) {
            stack.push_back(op);
        } else if (op < 0) {
            if (stack.empty() || stack.back() != -op) return false;
            stack.pop_back();
        } else {
            throw std::invalid_argument("polycyclic index must be nonzero");
        }
    }
    return stack.empty();
}

PolycyclicWord parse_poly(const std::string& text) {
    if (text == "@one") return {};
    PolycyclicWord out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || (tok[0] != 'p' && tok[0] != 'q'))
            throw std::invalid_argument("bad polycyclic token: " + tok);
        int idx = std::stoi(tok.substr(1));
        if (idx < 1) throw std::invalid_argument("polycyclic index must be >= 1: " + tok);
        out.push_back(tok[0] == 'p' ? idx : -idx);
    }
    return out;
}

std::string poly_text(const PolycyclicWord& m) {
    if (m.empty()) return "@one";
    std::string out;
    for (PolyOp op : m) {
        if (!out.empty()) out += ' ';
        out += (op > 0 ? "p" : "q") + std::to_string(op > 0 ? op : -op);
    }
    return out;
}

namespace {

struct NormalEdge {
    int from;
    Letter in;    // kEpsilonLabel or a letter
    PolyOp op;    // 0 = none, +i push, -i pop
    int to;
};

struct NormalVa {
    int num_states;
    std::vector<NormalEdge> edges;
    std::vector<int> initial;
    std::vector<int> final;
};

NormalVa normalize(const ValenceAutomaton& v) {
    NormalVa out;
    out.num_states = v.num_states;
    out.initial = v.initial;
    out.final = v.final;
    for (const auto& e : v.edges) {
        size_t steps = std::max<size_t>(1, e.in.size() + e.ops.size());
        if (e.in.size() <= 1 && e.ops.size() <= 1) {
            out.edges.push_back({e.from, e.in.empty() ? kEpsilonLabel : e.in[0],
                                 e.ops.empty() ? 0 : e.ops[0], e.to});
            continue;
        }
        // Spell input letters, then monoid letters, through fresh states.
        int cur = e.from;
        size_t done = 0;
        for (Letter x : e.in) {
            ++done;
            int nxt = (done == steps) ? e.to : out.num_states++;
            out.edges.push_back({cur, x, 0, nxt});
            cur = nxt;
        }
        for (PolyOp op : e.ops) {
            ++done;
            int nxt = (done == steps) ? e.to : out.num_states++;
            out.edges.push_back({cur, kEpsilonLabel, op, nxt});
            cur = nxt;
        }
    }
    return out;
}

}  // namespace

Cfg to_cfg(const ValenceAutomaton& v) {
    NormalVa n = normalize(v);

    // Bottom marker: user indices shift up by one and a fresh index 1 is
    // popped on a new edge behind each final state. A path label reduces to
    // the identity iff the corresponding run nets exactly that bottom pop.
    std::vector<NormalEdge> shifted;
    shifted.reserve(n.edges.size() + n.final.size());
    for (NormalEdge e : n.edges) {
        if (e.op > 0) e.op += 1;
        if (e.op < 0) e.op -= 1;
        shifted.push_back(e);
    }
    int sink = n.num_states++;
    for (int f : n.final) shifted.push_back({f, kEpsilonLabel, -1, sink});

    std::vector<int> indices;  // stack alphabet actually used (shifted)
    {
        std::set<int> used = {1};
        for (const auto& e : shifted)
            if (e.op != 0) used.insert(e.op > 0 ? e.op : -e.op);
        indices.assign(used.begin(), used.end());
    }

    const int Q = n.num_states;
    Cfg g;
    g.terminals = v.alphabet;
    g.start = g.add_nonterminal("S");

    // Triple nonterminals [s, i, t]: words readable from s to t whose net
    // stack effect is exactly one pop of i, never dipping below it earlier.
    std::map<std::tuple<int, int, int>, int> ids;
    auto triple = [&](int s, int i, int t) {
        auto key = std::make_tuple(s, i, t);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = g.add_nonterminal("[" + std::to_string(s) + "|" + std::to_string(i) + "|" +
                                   std::to_string(t) + "]");
        ids.emplace(key, id);
        return id;
    };

    auto body_letter = [&](Letter x) {
        std::vector<CfgSymbol> b;
        if (x != kEpsilonLabel) b.push_back(CfgSymbol::terminal(x));
        return b;
    };

    for (const auto& e : shifted) {
        if (e.op < 0) {
            // pop edge: [from, i, to] -> a
            g.add_production(triple(e.from, -e.op, e.to), body_letter(e.in));
        } else if (e.op == 0) {
            // neutral edge: [from, i, t] -> a [to, i, t]
            for (int i : indices)
                for (int t = 0; t < Q; ++t) {
                    auto b = body_letter(e.in);
                    b.push_back(CfgSymbol::nonterminal(triple(e.to, i, t)));
                    g.add_production(triple(e.from, i, t), std::move(b));
                }
        } else {
            // push edge: [from, i, t] -> a [to, j, r] [r, i, t]
            for (int i : indices)
                for (int r = 0; r < Q; ++r)
                    for (int t = 0; t < Q; ++t) {
                        auto b = body_letter(e.in);
                        b.push_back(CfgSymbol::nonterminal(triple(e.to, e.op, r)));
                        b.push_back(CfgSymbol::nonterminal(triple(r, i, t)));
                        g.add_production(triple(e.from, i, t), std::move(b));
                    }
        }
    }

    for (int s0 : n.initial)
        g.add_production(g.start, {CfgSymbol::nonterminal(triple(s0, 1, sink))});

    return trim(g);
}

bool defined_language_member(const ValenceAutomaton& v, const Word& w) {
    return cyk_member(to_cnf(to_cfg(v)), w);
}

ValenceAutomaton figure2_automaton() {
    ValenceAutomaton v;
    v.alphabet = Alphabet({"a", "b"});
    int s0 = v.add_state(), s1 = v.add_state();
    v.add_edge(s0, {v.alphabet.at("a")}, {+1}, s0);
    v.add_edge(s0, {}, {}, s1);
    v.add_edge(s1, {v.alphabet.at("b")}, {-1}, s1);
    v.initial = {s0};
    v.final = {s1};
    return v;
}

ValenceAutomaton figure3_automaton() {
    ValenceAutomaton v;
    v.alphabet = Alphabet({"a", "b"}).with_marker();
    const Letter a = v.alphabet.at("a"), b = v.alphabet.at("b"), m = v.alphabet.marker();
    // Chain of loop stages matching the successful-path label pattern
    //   b^i a^j # b^{k'} b^{k''} a^l # a^m b^n
    //   p2^i p1^j   q1^{k'} p2^{k''} p1^l   q1^m q2^n.
    std::vector<int> q(7);
    for (auto& s : q) s = v.add_state();
    v.add_edge(q[0], {b}, {+2}, q[0]);
    v.add_edge(q[0], {}, {}, q[1]);
    v.add_edge(q[1], {a}, {+1}, q[1]);
    v.add_edge(q[1], {m}, {}, q[2]);
    v.add_edge(q[2], {b}, {-1}, q[2]);
    v.add_edge(q[2], {}, {}, q[3]);
    v.add_edge(q[3], {b}, {+2}, q[3]);
    v.add_edge(q[3], {}, {}, q[4]);
    v.add_edge(q[4], {a}, {+1}, q[4]);
    v.add_edge(q[4], {m}, {}, q[5]);
    v.add_edge(q[5], {a}, {-1}, q[5]);
    v.add_edge(q[5], {}, {}, q[6]);
    v.add_edge(q[6], {b}, {-2}, q[6]);
    v.initial = {q[0]};
    v.final = {q[6]};
    return v;
}

}  // namespace hsg
