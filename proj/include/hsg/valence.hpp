/* valence.hpp -- automata over Σ*×M_cf for the polycyclic monoid
 * M_cf = ⟨p_i, q_i | p_i q_i = 1⟩, and their conversion to context-free
 * grammars for decidable membership.
 */
#pragma once

#include "hsg/grammar.hpp"
#include "hsg/words.hpp"

namespace hsg {

/// +i encodes p_i (push), -i encodes q_i (pop), indices i >= 1.
using PolyOp = int;
using PolycyclicWord = std::vector<PolyOp>;

/// Unique normal form: repeatedly delete adjacent p_i q_i pairs.
PolycyclicWord reduce(PolycyclicWord m);
bool is_identity(const PolycyclicWord& m);
/// Left-to-right stack simulation: push(i) pushes i, pop(i) requires top = i;
/// true iff it never faults and ends with an empty stack.
bool stack_sim_identity(const PolycyclicWord& m);

PolycyclicWord parse_poly(const std::string& text);  // e.g. "p1 q2", "@one"
std::string poly_text(const PolycyclicWord& m);

struct ValenceEdge {
    int from = 0;
    Word in;
    PolycyclicWord ops;
    int to = 0;
};

struct ValenceAutomaton {
    Alphabet alphabet;
    int num_states = 0;
    std::vector<ValenceEdge> edges;
    std::vector<int> initial;
    std::vector<int> final;

    int add_state() { return num_states++; }
    void add_edge(int from, Word in, PolycyclicWord ops, int to) {
        edges.push_back({from, std::move(in), std::move(ops), to});
    }
};

/// Grammar for the defined language {w : (w, 1) is accepted}: edges are
/// normalized to one input letter and one push/pop at most, a bottom marker
/// is adjoined, and the standard triple construction [s, stack-symbol, t]
/// produces the productions.
Cfg to_cfg(const ValenceAutomaton& v);

/// Membership always routes through to_cfg; ε-input edges with nonidentity
/// monoid labels would make a direct path search non-terminating.
bool defined_language_member(const ValenceAutomaton& v, const Word& w);

/// Chain automaton accepting (a, p1)^* (b, q1)^*, defining {a^i b^i}.
ValenceAutomaton figure2_automaton();
/// Chain automaton over {a,b,#} whose successful path labels are
/// (b^i a^j # b^{k'+k''} a^l # a^m b^n, p2^i p1^j q1^{k'} p2^{k''} p1^l q1^m q2^n),
/// defining the bicyclic multiplication table.
ValenceAutomaton figure3_automaton();

}  // namespace hsg
