#include "hsg/nfa.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace hsg {

namespace {

void check_same_alphabet(const Nfa& a, const Nfa& b) {
    if (a.alphabet != b.alphabet)
        throw std::invalid_argument("automata are over different alphabets");
}

void check_word(const Nfa& a, const Word& w) {
    for (Letter x : w)
        if (x < 0 || x >= a.alphabet.size())
            throw std::out_of_range("word letter outside the automaton alphabet");
}

std::vector<std::vector<std::pair<Letter, int>>> adjacency(const Nfa& a) {
    std::vector<std::vector<std::pair<Letter, int>>> adj(a.num_states);
    for (const auto& e : a.edges) adj[e.from].push_back({e.label, e.to});
    return adj;
}

std::vector<char> epsilon_closure(const Nfa& a,
                                  const std::vector<std::vector<std::pair<Letter, int>>>& adj,
                                  std::vector<char> in) {
    std::queue<int> q;
    for (int s = 0; s < a.num_states; ++s)
        if (in[s]) q.push(s);
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (auto [lab, t] : adj[s])
            if (lab == kEpsilonLabel && !in[t]) {
                in[t] = 1;
                q.push(t);
            }
    }
    return in;
}

/// Disjoint union of state sets; returns the offset of b's states.
int append_states(Nfa& out, const Nfa& b) {
    int offset = out.num_states;
    out.num_states += b.num_states;
    for (const auto& e : b.edges) out.add_edge(e.from + offset, e.label, e.to + offset);
    return offset;
}

}  // namespace

Nfa nfa_empty(const Alphabet& alphabet) {
    Nfa a;
    a.alphabet = alphabet;
    return a;
}

Nfa nfa_epsilon(const Alphabet& alphabet) {
    Nfa a = nfa_empty(alphabet);
    int s = a.add_state();
    a.initial = {s};
    a.final = {s};
    return a;
}

Nfa nfa_letter(const Alphabet& alphabet, Letter x) {
    if (x < 0 || x >= alphabet.size()) throw std::out_of_range("letter outside alphabet");
    Nfa a = nfa_empty(alphabet);
    int s = a.add_state(), t = a.add_state();
    a.add_edge(s, x, t);
    a.initial = {s};
    a.final = {t};
    return a;
}

Nfa nfa_word(const Alphabet& alphabet, const Word& w) {
    Nfa a = nfa_empty(alphabet);
    int s = a.add_state();
    a.initial = {s};
    int cur = s;
    for (Letter x : w) {
        if (x < 0 || x >= alphabet.size()) throw std::out_of_range("letter outside alphabet");
        int nxt = a.add_state();
        a.add_edge(cur, x, nxt);
        cur = nxt;
    }
    a.final = {cur};
    return a;
}

Nfa sigma_star(const Alphabet& alphabet) {
    Nfa a = nfa_empty(alphabet);
    int s = a.add_state();
    for (Letter x = 0; x < alphabet.size(); ++x) a.add_edge(s, x, s);
    a.initial = {s};
    a.final = {s};
    return a;
}

Nfa sigma_plus(const Alphabet& alphabet) {
    Nfa a = nfa_empty(alphabet);
    int s = a.add_state(), t = a.add_state();
    for (Letter x = 0; x < alphabet.size(); ++x) {
        a.add_edge(s, x, t);
        a.add_edge(t, x, t);
    }
    a.initial = {s};
    a.final = {t};
    return a;
}

Nfa marked_shape(const Alphabet& marked, bool nonempty_components) {
    const Letter m = marked.marker();
    Nfa a = nfa_empty(marked);
    // States 0,1,2 read the three components; marker edges advance.
    int s0 = a.add_state(), s1 = a.add_state(), s2 = a.add_state();
    for (Letter x = 0; x < marked.size(); ++x) {
        if (x == m) continue;
        a.add_edge(s0, x, s0);
        a.add_edge(s1, x, s1);
        a.add_edge(s2, x, s2);
    }
    a.add_edge(s0, m, s1);
    a.add_edge(s1, m, s2);
    a.initial = {s0};
    a.final = {s2};
    if (!nonempty_components) return a;
    // Σ^+ components: require one letter before each transition point.
    Nfa b = nfa_empty(marked);
    int t0 = b.add_state(), t1 = b.add_state(), t2 = b.add_state();
    int t3 = b.add_state(), t4 = b.add_state(), t5 = b.add_state();
    for (Letter x = 0; x < marked.size(); ++x) {
        if (x == m) continue;
        b.add_edge(t0, x, t1);
        b.add_edge(t1, x, t1);
        b.add_edge(t2, x, t3);
        b.add_edge(t3, x, t3);
        b.add_edge(t4, x, t5);
        b.add_edge(t5, x, t5);
    }
    b.add_edge(t1, m, t2);
    b.add_edge(t3, m, t4);
    b.initial = {t0};
    b.final = {t5};
    return b;
}

Nfa marked_pair_shape(const Alphabet& marked, bool nonempty_components) {
    const Letter m = marked.marker();
    Nfa a = nfa_empty(marked);
    if (!nonempty_components) {
        int s0 = a.add_state(), s1 = a.add_state();
        for (Letter x = 0; x < marked.size(); ++x) {
            if (x == m) continue;
            a.add_edge(s0, x, s0);
            a.add_edge(s1, x, s1);
        }
        a.add_edge(s0, m, s1);
        a.initial = {s0};
        a.final = {s1};
        return a;
    }
    int t0 = a.add_state(), t1 = a.add_state(), t2 = a.add_state(), t3 = a.add_state();
    for (Letter x = 0; x < marked.size(); ++x) {
        if (x == m) continue;
        a.add_edge(t0, x, t1);
        a.add_edge(t1, x, t1);
        a.add_edge(t2, x, t3);
        a.add_edge(t3, x, t3);
    }
    a.add_edge(t1, m, t2);
    a.initial = {t0};
    a.final = {t3};
    return a;
}

Nfa remap_labels(const Nfa& a, const Alphabet& target) {
    Nfa out = a;
    out.alphabet = target;
    for (auto& e : out.edges)
        if (e.label != kEpsilonLabel) e.label = target.at(a.alphabet.name(e.label));
    return out;
}

Nfa union_nfa(const Nfa& a, const Nfa& b) {
    check_same_alphabet(a, b);
    Nfa out = a;
    int off = append_states(out, b);
    for (int s : b.initial) out.initial.push_back(s + off);
    for (int s : b.final) out.final.push_back(s + off);
    return out;
}

Nfa concat(const Nfa& a, const Nfa& b) {
    check_same_alphabet(a, b);
    Nfa out = a;
    int off = append_states(out, b);
    for (int f : a.final)
        for (int i : b.initial) out.add_edge(f, kEpsilonLabel, i + off);
    out.final.clear();
    for (int s : b.final) out.final.push_back(s + off);
    return out;
}

Nfa star(const Nfa& a) {
    Nfa out = a;
    int s = out.add_state();
    for (int i : a.initial) out.add_edge(s, kEpsilonLabel, i);
    for (int f : a.final) out.add_edge(f, kEpsilonLabel, s);
    out.initial = {s};
    out.final = {s};
    return out;
}

Nfa plus(const Nfa& a) {
    Nfa out = a;
    for (int f : a.final)
        for (int i : a.initial) out.add_edge(f, kEpsilonLabel, i);
    return out;
}

Nfa remove_epsilon(const Nfa& a) {
    auto adj = adjacency(a);
    Nfa out = nfa_empty(a.alphabet);
    out.num_states = a.num_states;
    out.initial = a.initial;

    std::vector<char> final_mask(a.num_states, 0);
    for (int f : a.final) final_mask[f] = 1;

    std::set<std::tuple<int, Letter, int>> seen;
    for (int s = 0; s < a.num_states; ++s) {
        std::vector<char> cl(a.num_states, 0);
        cl[s] = 1;
        cl = epsilon_closure(a, adj, std::move(cl));
        bool fin = false;
        for (int t = 0; t < a.num_states; ++t) {
            if (!cl[t]) continue;
            if (final_mask[t]) fin = true;
            for (auto [lab, u] : adj[t])
                if (lab != kEpsilonLabel && seen.insert({s, lab, u}).second)
                    out.add_edge(s, lab, u);
        }
        if (fin) out.final.push_back(s);
    }
    return trim(out);
}

Nfa trim(const Nfa& a) {
    auto adj = adjacency(a);
    std::vector<std::vector<int>> radj(a.num_states);
    for (const auto& e : a.edges) radj[e.to].push_back(e.from);

    std::vector<char> reach(a.num_states, 0), coreach(a.num_states, 0);
    std::queue<int> q;
    for (int s : a.initial)
        if (!reach[s]) {
            reach[s] = 1;
            q.push(s);
        }
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (auto [lab, t] : adj[s])
            if (!reach[t]) {
                reach[t] = 1;
                q.push(t);
            }
    }
    for (int s : a.final)
        if (!coreach[s]) {
            coreach[s] = 1;
            q.push(s);
        }
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (int t : radj[s])
            if (!coreach[t]) {
                coreach[t] = 1;
                q.push(t);
            }
    }

    std::vector<int> remap(a.num_states, -1);
    Nfa out = nfa_empty(a.alphabet);
    for (int s = 0; s < a.num_states; ++s)
        if (reach[s] && coreach[s]) remap[s] = out.add_state();
    for (const auto& e : a.edges)
        if (remap[e.from] >= 0 && remap[e.to] >= 0)
            out.add_edge(remap[e.from], e.label, remap[e.to]);
    for (int s : a.initial)
        if (remap[s] >= 0) out.initial.push_back(remap[s]);
    for (int s : a.final)
        if (remap[s] >= 0) out.final.push_back(remap[s]);
    return out;
}

Nfa determinize(const Nfa& a0) {
    Nfa a = remove_epsilon(a0);
    Nfa out = nfa_empty(a.alphabet);
    auto adj = adjacency(a);
    std::vector<char> final_mask(std::max(a.num_states, 1), 0);
    for (int f : a.final) final_mask[f] = 1;

    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> worklist;

    std::vector<int> start(a.initial);
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    ids[start] = out.add_state();
    out.initial = {0};
    worklist.push_back(start);
    if (std::any_of(start.begin(), start.end(), [&](int s) { return final_mask[s]; }))
        out.final.push_back(0);

    for (size_t i = 0; i < worklist.size(); ++i) {
        std::vector<int> cur = worklist[i];
        int cur_id = ids[cur];
        for (Letter x = 0; x < a.alphabet.size(); ++x) {
            std::set<int> nxt;
            for (int s : cur)
                for (auto [lab, t] : adj[s])
                    if (lab == x) nxt.insert(t);
            if (nxt.empty()) continue;
            std::vector<int> key(nxt.begin(), nxt.end());
            auto [it, fresh] = ids.emplace(key, out.num_states);
            if (fresh) {
                out.add_state();
                worklist.push_back(key);
                if (std::any_of(key.begin(), key.end(), [&](int s) { return final_mask[s]; }))
                    out.final.push_back(it->second);
            }
            out.add_edge(cur_id, x, it->second);
        }
    }
    return out;
}

Nfa complement(const Nfa& a) {
    Nfa d = determinize(a);
    // Complete with a sink before flipping.
    int sink = d.add_state();
    std::vector<std::vector<char>> has(d.num_states, std::vector<char>(d.alphabet.size(), 0));
    for (const auto& e : d.edges) has[e.from][e.label] = 1;
    for (int s = 0; s < d.num_states; ++s)
        for (Letter x = 0; x < d.alphabet.size(); ++x)
            if (!has[s][x]) d.add_edge(s, x, sink);
    std::vector<char> fin(d.num_states, 0);
    for (int f : d.final) fin[f] = 1;
    d.final.clear();
    for (int s = 0; s < d.num_states; ++s)
        if (!fin[s]) d.final.push_back(s);
    return d;
}

Nfa intersect(const Nfa& a0, const Nfa& b0) {
    check_same_alphabet(a0, b0);
    Nfa a = remove_epsilon(a0), b = remove_epsilon(b0);
    Nfa out = nfa_empty(a.alphabet);
    if (a.num_states == 0 || b.num_states == 0) return out;
    auto id = [&](int s, int t) { return s * b.num_states + t; };
    out.num_states = a.num_states * b.num_states;
    for (const auto& ea : a.edges)
        for (const auto& eb : b.edges)
            if (ea.label == eb.label)
                out.add_edge(id(ea.from, eb.from), ea.label, id(ea.to, eb.to));
    for (int s : a.initial)
        for (int t : b.initial) out.initial.push_back(id(s, t));
    for (int s : a.final)
        for (int t : b.final) out.final.push_back(id(s, t));
    return trim(out);
}

Nfa hom_image(const FreeHom& h, const Nfa& a) {
    if (a.alphabet != h.source())
        throw std::invalid_argument("hom_image: automaton alphabet differs from hom source");
    Nfa out = nfa_empty(h.target());
    out.num_states = a.num_states;
    out.initial = a.initial;
    out.final = a.final;
    for (const auto& e : a.edges) {
        if (e.label == kEpsilonLabel) {
            out.add_edge(e.from, kEpsilonLabel, e.to);
            continue;
        }
        const Word& img = h.image(e.label);
        if (img.empty()) {
            out.add_edge(e.from, kEpsilonLabel, e.to);
        } else {
            int cur = e.from;
            for (size_t i = 0; i + 1 < img.size(); ++i) {
                int nxt = out.add_state();
                out.add_edge(cur, img[i], nxt);
                cur = nxt;
            }
            out.add_edge(cur, img.back(), e.to);
        }
    }
    return out;
}

Nfa hom_preimage(const FreeHom& h, const Nfa& a) {
    if (a.alphabet != h.target())
        throw std::invalid_argument("hom_preimage: automaton alphabet differs from hom target");
    auto adj = adjacency(a);
    auto closure_of = [&](std::vector<char> in) { return epsilon_closure(a, adj, std::move(in)); };

    Nfa out = nfa_empty(h.source());
    out.num_states = a.num_states;
    out.initial = a.initial;
    std::vector<char> final_mask(a.num_states, 0);
    for (int f : a.final) final_mask[f] = 1;
    for (int s = 0; s < a.num_states; ++s) {
        std::vector<char> cl(a.num_states, 0);
        cl[s] = 1;
        cl = closure_of(std::move(cl));
        for (int t = 0; t < a.num_states; ++t)
            if (cl[t] && final_mask[t]) {
                out.final.push_back(s);
                break;
            }
    }
    for (Letter x = 0; x < h.source().size(); ++x) {
        const Word& img = h.image(x);
        for (int s = 0; s < a.num_states; ++s) {
            std::vector<char> cur(a.num_states, 0);
            cur[s] = 1;
            cur = closure_of(std::move(cur));
            for (Letter y : img) {
                std::vector<char> nxt(a.num_states, 0);
                for (int t = 0; t < a.num_states; ++t)
                    if (cur[t])
                        for (auto [lab, u] : adj[t])
                            if (lab == y) nxt[u] = 1;
                cur = closure_of(std::move(nxt));
            }
            for (int t = 0; t < a.num_states; ++t)
                if (cur[t]) out.add_edge(s, x, t);
        }
    }
    return trim(out);
}

Nfa restrict_alphabet(const Nfa& a, const Alphabet& smaller) {
    Nfa out = a;
    out.alphabet = smaller;
    for (const auto& e : a.edges)
        if (e.label >= smaller.size())
            throw std::invalid_argument("restrict_alphabet: edge label outside the sub-alphabet");
    return out;
}

Nfa extend_alphabet(const Nfa& a, const Alphabet& bigger) {
    for (int i = 0; i < a.alphabet.size(); ++i)
        if (i >= bigger.size() || bigger.name(i) != a.alphabet.name(i))
            throw std::invalid_argument("extend_alphabet: not a prefix extension");
    Nfa out = a;
    out.alphabet = bigger;
    return out;
}

bool member(const Nfa& a, const Word& w) {
    check_word(a, w);
    auto adj = adjacency(a);
    std::vector<char> cur(a.num_states, 0);
    for (int s : a.initial) cur[s] = 1;
    cur = epsilon_closure(a, adj, std::move(cur));
    for (Letter x : w) {
        std::vector<char> nxt(a.num_states, 0);
        for (int s = 0; s < a.num_states; ++s)
            if (cur[s])
                for (auto [lab, t] : adj[s])
                    if (lab == x) nxt[t] = 1;
        cur = epsilon_closure(a, adj, std::move(nxt));
    }
    for (int f : a.final)
        if (cur[f]) return true;
    return false;
}

bool is_empty(const Nfa& a) {
    Nfa t = trim(a);
    return t.initial.empty() || t.final.empty();
}

std::vector<Word> bounded_words(const Nfa& a0, int maxlen, size_t cap) {
    Nfa a = remove_epsilon(a0);
    auto adj = adjacency(a);
    std::vector<char> final_mask(std::max(a.num_states, 1), 0);
    for (int f : a.final) final_mask[f] = 1;

    std::vector<Word> out;
    // Frontier of (state set, word), expanded level by level in lex order.
    std::vector<std::pair<std::vector<int>, Word>> frontier;
    std::vector<int> start(a.initial);
    std::sort(start.begin(), start.end());
    if (!start.empty()) frontier.push_back({start, {}});
    for (int len = 0; len <= maxlen; ++len) {
        std::vector<std::pair<std::vector<int>, Word>> next;
        for (auto& [states, w] : frontier) {
            if (std::any_of(states.begin(), states.end(), [&](int s) { return final_mask[s]; })) {
                out.push_back(w);
                if (out.size() > cap) throw std::runtime_error("bounded_words: cap exceeded");
            }
            if (len == maxlen) continue;
            for (Letter x = 0; x < a.alphabet.size(); ++x) {
                std::set<int> nxt;
                for (int s : states)
                    for (auto [lab, t] : adj[s])
                        if (lab == x) nxt.insert(t);
                if (nxt.empty()) continue;
                Word w2 = w;
                w2.push_back(x);
                next.push_back({std::vector<int>(nxt.begin(), nxt.end()), std::move(w2)});
            }
        }
        frontier = std::move(next);
    }
    return out;
}

bool bounded_equal(const Nfa& a, const Nfa& b, int maxlen) {
    return bounded_words(a, maxlen) == bounded_words(b, maxlen);
}

RatExpr RatExpr::empty() { return RatExpr{Kind::Empty, "", {}}; }
RatExpr RatExpr::epsilon() { return RatExpr{Kind::Epsilon, "", {}}; }
RatExpr RatExpr::lit(std::string token) { return RatExpr{Kind::Letter, std::move(token), {}}; }
RatExpr RatExpr::alt(RatExpr a, RatExpr b) {
    return RatExpr{Kind::Union, "", {std::move(a), std::move(b)}};
}
RatExpr RatExpr::seq(RatExpr a, RatExpr b) {
    return RatExpr{Kind::Concat, "", {std::move(a), std::move(b)}};
}
RatExpr RatExpr::star_of(RatExpr a) { return RatExpr{Kind::Star, "", {std::move(a)}}; }
RatExpr RatExpr::plus_of(RatExpr a) { return RatExpr{Kind::Plus, "", {std::move(a)}}; }

namespace {

struct RatParser {
    std::vector<std::string> tokens;
    size_t pos = 0;

    explicit RatParser(const std::string& text) {
        std::string cur;
        auto flush = [&] {
            if (!cur.empty()) {
                tokens.push_back(cur);
                cur.clear();
            }
        };
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                flush();
            } else if (c == '(' || c == ')' || c == '+' || c == '*') {
                flush();
                tokens.push_back(std::string(1, c));
            } else {
                cur += c;
            }
        }
        flush();
    }

    bool peek(const std::string& t) const { return pos < tokens.size() && tokens[pos] == t; }
    bool at_end() const { return pos >= tokens.size(); }

    RatExpr parse_expr() {
        RatExpr e = parse_term();
        while (peek("+")) {
            ++pos;
            e = RatExpr::alt(std::move(e), parse_term());
        }
        return e;
    }

    RatExpr parse_term() {
        RatExpr e = parse_factor();
        while (!at_end() && !peek("+") && !peek(")"))
            e = RatExpr::seq(std::move(e), parse_factor());
        return e;
    }

    RatExpr parse_factor() {
        RatExpr e = parse_atom();
        while (peek("*")) {
            ++pos;
            e = RatExpr::star_of(std::move(e));
        }
        return e;
    }

    RatExpr parse_atom() {
        if (at_end()) throw std::invalid_argument("rational expression ended unexpectedly");
        if (peek("(")) {
            ++pos;
            RatExpr e = parse_expr();
            if (!peek(")")) throw std::invalid_argument("missing ) in rational expression");
            ++pos;
            return e;
        }
        std::string t = tokens[pos++];
        if (t == kEpsilonToken) return RatExpr::epsilon();
        if (t == "@empty") return RatExpr::empty();
        return RatExpr::lit(std::move(t));
    }
};

}  // namespace

RatExpr parse_ratexpr(const std::string& text) {
    RatParser p(text);
    if (p.at_end()) throw std::invalid_argument("empty rational expression");
    RatExpr e = p.parse_expr();
    if (!p.at_end()) throw std::invalid_argument("trailing tokens in rational expression");
    return e;
}

Nfa compile(const RatExpr& e, const Alphabet& alphabet) {
    switch (e.kind) {
        case RatExpr::Kind::Empty:
            return nfa_empty(alphabet);
        case RatExpr::Kind::Epsilon:
            return nfa_epsilon(alphabet);
        case RatExpr::Kind::Letter: {
            // A multi-character token that is not a letter may still be a
            // compact word like "ba" over single-character letters.
            if (auto l = alphabet.find(e.letter)) return nfa_letter(alphabet, *l);
            return nfa_word(alphabet, parse_word(alphabet, e.letter));
        }
        case RatExpr::Kind::Union:
            return union_nfa(compile(e.children[0], alphabet), compile(e.children[1], alphabet));
        case RatExpr::Kind::Concat:
            return concat(compile(e.children[0], alphabet), compile(e.children[1], alphabet));
        case RatExpr::Kind::Star:
            return star(compile(e.children[0], alphabet));
        case RatExpr::Kind::Plus:
            return plus(compile(e.children[0], alphabet));
    }
    throw std::logic_error("unreachable");
}

Nfa compile(const std::string& expr_text, const Alphabet& alphabet) {
    return compile(parse_ratexpr(expr_text), alphabet);
}

}  // namespace hsg
