#include "hsg/transducer.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace hsg {

namespace {

void check_compatible(const Transducer& a, const Transducer& b) {
    if (a.in_alphabet != b.in_alphabet || a.out_alphabet != b.out_alphabet)
        throw std::invalid_argument("transducers are over different alphabet pairs");
}

int append_states(Transducer& out, const Transducer& b) {
    int offset = out.num_states;
    out.num_states += b.num_states;
    for (const auto& e : b.edges) out.add_edge(e.from + offset, e.in, e.out, e.to + offset);
    return offset;
}

}  // namespace

Transducer t_empty(const Alphabet& in, const Alphabet& out) {
    Transducer t;
    t.in_alphabet = in;
    t.out_alphabet = out;
    return t;
}

Transducer t_pair(const Alphabet& in, const Alphabet& out, const Word& u, const Word& v) {
    Transducer t = t_empty(in, out);
    int s = t.add_state(), f = t.add_state();
    t.add_edge(s, u, v, f);
    t.initial = {s};
    t.final = {f};
    return t;
}

Transducer t_union(const Transducer& a, const Transducer& b) {
    check_compatible(a, b);
    Transducer out = a;
    int off = append_states(out, b);
    for (int s : b.initial) out.initial.push_back(s + off);
    for (int s : b.final) out.final.push_back(s + off);
    return out;
}

Transducer t_concat(const Transducer& a, const Transducer& b) {
    check_compatible(a, b);
    Transducer out = a;
    int off = append_states(out, b);
    for (int f : a.final)
        for (int i : b.initial) out.add_edge(f, {}, {}, i + off);
    out.final.clear();
    for (int s : b.final) out.final.push_back(s + off);
    return out;
}

Transducer t_star(const Transducer& a) {
    Transducer out = a;
    int s = out.add_state();
    for (int i : a.initial) out.add_edge(s, {}, {}, i);
    for (int f : a.final) out.add_edge(f, {}, {}, s);
    out.initial = {s};
    out.final = {s};
    return out;
}

Transducer t_plus(const Transducer& a) {
    Transducer out = a;
    for (int f : a.final)
        for (int i : a.initial) out.add_edge(f, {}, {}, i);
    return out;
}

Transducer t_identity(const Alphabet& alphabet, bool include_empty) {
    Transducer t = t_empty(alphabet, alphabet);
    int s = t.add_state();
    for (Letter x = 0; x < alphabet.size(); ++x) t.add_edge(s, {x}, {x}, s);
    t.initial = {s};
    t.final = {s};
    if (!include_empty) {
        // One letter must be read before accepting.
        Transducer p = t_empty(alphabet, alphabet);
        int s0 = p.add_state(), s1 = p.add_state();
        for (Letter x = 0; x < alphabet.size(); ++x) {
            p.add_edge(s0, {x}, {x}, s1);
            p.add_edge(s1, {x}, {x}, s1);
        }
        p.initial = {s0};
        p.final = {s1};
        return p;
    }
    return t;
}

PairExpr PairExpr::empty() { return PairExpr{Kind::Empty, {}, {}, {}}; }
PairExpr PairExpr::pair(Word in, Word out) {
    return PairExpr{Kind::Pair, std::move(in), std::move(out), {}};
}
PairExpr PairExpr::alt(PairExpr a, PairExpr b) {
    return PairExpr{Kind::Union, {}, {}, {std::move(a), std::move(b)}};
}
PairExpr PairExpr::seq(PairExpr a, PairExpr b) {
    return PairExpr{Kind::Concat, {}, {}, {std::move(a), std::move(b)}};
}
PairExpr PairExpr::star_of(PairExpr a) { return PairExpr{Kind::Star, {}, {}, {std::move(a)}}; }
PairExpr PairExpr::plus_of(PairExpr a) { return PairExpr{Kind::Plus, {}, {}, {std::move(a)}}; }

Transducer from_pairs(const PairExpr& e, const Alphabet& in, const Alphabet& out) {
    switch (e.kind) {
        case PairExpr::Kind::Empty:
            return t_empty(in, out);
        case PairExpr::Kind::Pair:
            return t_pair(in, out, e.in, e.out);
        case PairExpr::Kind::Union:
            return t_union(from_pairs(e.children[0], in, out), from_pairs(e.children[1], in, out));
        case PairExpr::Kind::Concat:
            return t_concat(from_pairs(e.children[0], in, out), from_pairs(e.children[1], in, out));
        case PairExpr::Kind::Star:
            return t_star(from_pairs(e.children[0], in, out));
        case PairExpr::Kind::Plus:
            return t_plus(from_pairs(e.children[0], in, out));
    }
    throw std::logic_error("unreachable");
}

Transducer hom_transducer(const FreeHom& h, bool include_empty) {
    Transducer t = t_empty(h.source(), h.target());
    int s0 = t.add_state(), s1 = t.add_state();
    for (Letter a = 0; a < h.source().size(); ++a) {
        t.add_edge(s0, {a}, h.image(a), s1);
        t.add_edge(s1, {a}, h.image(a), s1);
    }
    t.initial = {s0};
    t.final = include_empty ? std::vector<int>{s0, s1} : std::vector<int>{s1};
    return t;
}

Transducer tau_of_hom(const FreeHom& h, bool include_empty) {
    if (h.monoid_mode())
        throw std::invalid_argument("tau_of_hom requires a semigroup homomorphism");
    Transducer t = t_empty(h.source(), h.target());
    int s0 = t.add_state(), s1 = t.add_state();
    for (Letter a = 0; a < h.source().size(); ++a) {
        Word img = reverse(h.image(a));
        t.add_edge(s0, {a}, img, s1);
        t.add_edge(s1, {a}, img, s1);
    }
    t.initial = {s0};
    t.final = include_empty ? std::vector<int>{s0, s1} : std::vector<int>{s1};
    return t;
}

namespace {

/// Lift a transducer over base alphabets to the marked ones. Ids survive
/// because the marker is appended last.
Transducer lift_to_marked(const Transducer& t, const Alphabet& in_m, const Alphabet& out_m) {
    Transducer out = t;
    out.in_alphabet = in_m;
    out.out_alphabet = out_m;
    return out;
}

}  // namespace

Transducer generator_change_rho(const FreeHom& h, bool monoid_domain) {
    if (h.source().has_marker() || h.target().has_marker())
        throw std::invalid_argument("generator_change_rho expects marker-free alphabets");
    Alphabet in_m = h.source().with_marker();
    Alphabet out_m = h.target().with_marker();
    Transducer hom = lift_to_marked(hom_transducer(h, monoid_domain), in_m, out_m);
    Transducer tau = lift_to_marked(tau_of_hom(h, monoid_domain), in_m, out_m);
    Transducer hash = t_pair(in_m, out_m, {in_m.marker()}, {out_m.marker()});
    return t_concat(t_concat(t_concat(t_concat(hom, hash), hom), hash), tau);
}

Transducer wp_rho(const FreeHom& h) {
    if (h.source().has_marker() || h.target().has_marker())
        throw std::invalid_argument("wp_rho expects marker-free alphabets");
    Alphabet in_m = h.source().with_marker();
    Alphabet out_m = h.target().with_marker();
    Transducer hom = lift_to_marked(hom_transducer(h), in_m, out_m);
    Transducer tau = lift_to_marked(tau_of_hom(h), in_m, out_m);
    Transducer hash = t_pair(in_m, out_m, {in_m.marker()}, {out_m.marker()});
    return t_concat(t_concat(hom, hash), tau);
}

Transducer normalize_letters(const Transducer& t) {
    Transducer out = t_empty(t.in_alphabet, t.out_alphabet);
    out.num_states = t.num_states;
    out.initial = t.initial;
    out.final = t.final;
    for (const auto& e : t.edges) {
        if (e.in.size() <= 1 && e.out.size() <= 1) {
            out.add_edge(e.from, e.in, e.out, e.to);
            continue;
        }
        // Spell the input tape first, then the output tape.
        int cur = e.from;
        size_t steps = e.in.size() + e.out.size();
        size_t done = 0;
        for (Letter x : e.in) {
            ++done;
            int nxt = (done == steps) ? e.to : out.add_state();
            out.add_edge(cur, {x}, {}, nxt);
            cur = nxt;
        }
        for (Letter y : e.out) {
            ++done;
            int nxt = (done == steps) ? e.to : out.add_state();
            out.add_edge(cur, {}, {y}, nxt);
            cur = nxt;
        }
        if (steps == 0) out.add_edge(cur, {}, {}, e.to);
    }
    return out;
}

Transducer invert(const Transducer& t) {
    Transducer out = t_empty(t.out_alphabet, t.in_alphabet);
    out.num_states = t.num_states;
    out.initial = t.initial;
    out.final = t.final;
    for (const auto& e : t.edges) out.add_edge(e.from, e.out, e.in, e.to);
    return out;
}

Transducer compose(const Transducer& first, const Transducer& second) {
    if (first.out_alphabet != second.in_alphabet)
        throw std::invalid_argument("compose: middle alphabets differ");
    Transducer a = normalize_letters(first), b = normalize_letters(second);
    Transducer out = t_empty(a.in_alphabet, b.out_alphabet);
    if (a.num_states == 0 || b.num_states == 0) return out;
    auto id = [&](int s, int t2) { return s * b.num_states + t2; };
    out.num_states = a.num_states * b.num_states;
    for (const auto& ea : a.edges) {
        if (ea.out.empty()) {
            // advance a alone
            for (int s = 0; s < b.num_states; ++s)
                out.add_edge(id(ea.from, s), ea.in, {}, id(ea.to, s));
        } else {
            for (const auto& eb : b.edges)
                if (!eb.in.empty() && eb.in == ea.out)
                    out.add_edge(id(ea.from, eb.from), ea.in, eb.out, id(ea.to, eb.to));
        }
    }
    for (const auto& eb : b.edges)
        if (eb.in.empty())
            for (int s = 0; s < a.num_states; ++s)
                out.add_edge(id(s, eb.from), {}, eb.out, id(s, eb.to));
    for (int s : a.initial)
        for (int t2 : b.initial) out.initial.push_back(id(s, t2));
    for (int s : a.final)
        for (int t2 : b.final) out.final.push_back(id(s, t2));
    return out;
}

bool relates(const Transducer& t0, const Word& x, const Word& y) {
    Transducer t = normalize_letters(t0);
    // BFS over (state, consumed-in, produced-out).
    std::set<std::tuple<int, size_t, size_t>> seen;
    std::queue<std::tuple<int, size_t, size_t>> q;
    std::vector<std::vector<const TransducerEdge*>> adj(t.num_states);
    for (const auto& e : t.edges) adj[e.from].push_back(&e);
    for (int s : t.initial) {
        q.push({s, 0, 0});
        seen.insert({s, 0, 0});
    }
    std::set<int> final_set(t.final.begin(), t.final.end());
    while (!q.empty()) {
        auto [s, i, j] = q.front();
        q.pop();
        if (i == x.size() && j == y.size() && final_set.count(s)) return true;
        for (const auto* e : adj[s]) {
            size_t ni = i, nj = j;
            if (!e->in.empty()) {
                if (i >= x.size() || x[i] != e->in[0]) continue;
                ni = i + 1;
            }
            if (!e->out.empty()) {
                if (j >= y.size() || y[j] != e->out[0]) continue;
                nj = j + 1;
            }
            if (seen.insert({e->to, ni, nj}).second) q.push({e->to, ni, nj});
        }
    }
    return false;
}

Nfa apply_to_regular(const Transducer& t0, const Nfa& a0) {
    if (t0.in_alphabet != a0.alphabet)
        throw std::invalid_argument("apply_to_regular: alphabets differ");
    Transducer t = normalize_letters(t0);
    Nfa a = remove_epsilon(a0);
    Nfa out = nfa_empty(t.out_alphabet);
    if (t.num_states == 0 || a.num_states == 0) return out;
    auto id = [&](int ts, int as) { return ts * a.num_states + as; };
    out.num_states = t.num_states * a.num_states;
    for (const auto& e : t.edges) {
        Letter outlab = e.out.empty() ? kEpsilonLabel : e.out[0];
        if (e.in.empty()) {
            for (int s = 0; s < a.num_states; ++s)
                out.add_edge(id(e.from, s), outlab, id(e.to, s));
        } else {
            for (const auto& ea : a.edges)
                if (ea.label == e.in[0])
                    out.add_edge(id(e.from, ea.from), outlab, id(e.to, ea.to));
        }
    }
    for (int ts : t.initial)
        for (int as : a.initial) out.initial.push_back(id(ts, as));
    for (int ts : t.final)
        for (int as : a.final) out.final.push_back(id(ts, as));
    return trim(out);
}

std::vector<Word> image_of_word(const Transducer& t, const Word& x, int maxlen) {
    Nfa w = nfa_word(t.in_alphabet, x);
    return bounded_words(apply_to_regular(t, w), maxlen);
}

}  // namespace hsg
