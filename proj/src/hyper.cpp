#include "hsg/hyper.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace hsg {

namespace {

std::string pack(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter x : w) s.push_back(static_cast<char>(x));
    return s;
}

/// Deterministic membership runner for repeated queries against one NFA.
struct DfaRunner {
    std::vector<std::vector<int>> delta;
    std::vector<char> accepting;
    int start = -1;

    explicit DfaRunner(const Nfa& r) {
        Nfa d = determinize(r);
        delta.assign(d.num_states, std::vector<int>(d.alphabet.size(), -1));
        accepting.assign(std::max(d.num_states, 1), 0);
        for (const auto& e : d.edges) delta[e.from][e.label] = e.to;
        for (int f : d.final) accepting[f] = 1;
        if (!d.initial.empty()) start = d.initial[0];
    }

    bool accepts(const Word& w) const {
        int s = start;
        if (s < 0) return false;
        for (Letter x : w) {
            s = delta[s][x];
            if (s < 0) return false;
        }
        return accepting[s];
    }
};

}  // namespace

Combing make_combing(OraclePtr oracle, Nfa r, int surjectivity_radius, int surjectivity_maxlen,
                     bool check) {
    if (!oracle) throw std::invalid_argument("combing needs an oracle");
    if (r.alphabet != oracle->alphabet())
        throw std::invalid_argument("combing automaton is not over the oracle alphabet");
    if (!oracle->monoid_mode() && member(r, {}))
        throw std::invalid_argument("semigroup combing must not contain the empty word");
    if (check) {
        auto hits = minimal_combing_words(*oracle, r, surjectivity_maxlen);
        for (const auto& entry : ball(*oracle, surjectivity_radius))
            if (!hits.count(entry.element))
                throw std::invalid_argument(
                    "combing fails the desk-scale surjectivity check: element " + entry.element +
                    " (radius " + std::to_string(surjectivity_radius) + ") has no R-word of length <= " +
                    std::to_string(surjectivity_maxlen));
    }
    return Combing{std::move(oracle), std::move(r)};
}

TableLanguage TableLanguage::from_cfg(Cfg g, std::string provenance) {
    TableLanguage t;
    t.kind = Kind::Cfg;
    t.cfg = std::move(g);
    t.provenance = std::move(provenance);
    return t;
}

TableLanguage TableLanguage::from_valence(ValenceAutomaton v, std::string provenance) {
    TableLanguage t;
    t.kind = Kind::Valence;
    t.cfg = to_cfg(v);
    t.valence = std::move(v);
    t.provenance = std::move(provenance);
    return t;
}

namespace {

/// Oracle-generated table triples with |u|+|v|+|w| <= maxlen, unsorted.
std::vector<MarkedWord> oracle_positives(const Combing& c, int maxlen, size_t cap,
                                         const CombingWords& cw) {
    const SemigroupOracle& o = *c.oracle;
    const int minw = o.monoid_mode() ? 0 : 1;
    std::vector<MarkedWord> out;

    for (size_t i = 0; i < cw.words.size(); ++i) {
        const int li = static_cast<int>(cw.words[i].size());
        if (li + 2 * minw > maxlen) break;  // words sorted by length
        for (size_t j = 0; j < cw.words.size(); ++j) {
            const int lj = static_cast<int>(cw.words[j].size());
            if (li + lj + minw > maxlen) break;
            Element e = o.product(cw.elements[i], cw.elements[j]);
            auto it = cw.by_element.find(e);
            if (it == cw.by_element.end()) continue;
            const int rem = maxlen - li - lj;
            for (int k : it->second) {
                if (static_cast<int>(cw.words[k].size()) > rem) break;  // (len, lex) order
                out.push_back({cw.words[i], cw.words[j], cw.words[k]});
                if (out.size() > cap) throw std::runtime_error("generate_table: cap exceeded");
            }
        }
    }
    return out;
}

int table_budget(const SemigroupOracle& o, int maxlen) {
    return o.monoid_mode() ? maxlen : maxlen - 2;
}

}  // namespace

std::vector<MarkedWord> generate_table(const Combing& c, int maxlen, size_t cap) {
    CombingWords cw =
        combing_words_by_element(*c.oracle, c.r, std::max(table_budget(*c.oracle, maxlen), 0), cap);
    std::vector<MarkedWord> out = oracle_positives(c, maxlen, cap, cw);
    Alphabet marked = c.oracle->alphabet().with_marker();
    std::sort(out.begin(), out.end(), [&](const MarkedWord& x, const MarkedWord& y) {
        size_t lx = x.u.size() + x.v.size() + x.w.size();
        size_t ly = y.u.size() + y.v.size() + y.w.size();
        if (lx != ly) return lx < ly;
        return mark(marked, x) < mark(marked, y);
    });
    return out;
}

VerifyReport verify_table(const HyperbolicStructure& s, int maxlen, size_t cap) {
    const SemigroupOracle& o = *s.combing.oracle;
    const Alphabet marked = o.alphabet().with_marker();
    if (s.table.cfg.terminals != marked)
        throw std::invalid_argument("table language is not over the marked oracle alphabet");
    const int minw = o.monoid_mode() ? 0 : 1;

    VerifyReport report;
    report.maxlen = maxlen;

    CombingWords cw =
        combing_words_by_element(o, s.combing.r, std::max(table_budget(o, maxlen), 0), cap);

    // Exact size of the quantification domain, from per-length R-word counts.
    {
        std::vector<long long> count_by_len(maxlen + 1, 0);
        for (const Word& w : cw.words)
            if (static_cast<int>(w.size()) <= maxlen) ++count_by_len[w.size()];
        for (int a = minw; a <= maxlen; ++a)
            for (int b = minw; a + b <= maxlen; ++b)
                for (int c2 = minw; a + b + c2 <= maxlen; ++c2)
                    report.checked += count_by_len[a] * count_by_len[b] * count_by_len[c2];
    }

    std::vector<MarkedWord> positives = oracle_positives(s.combing, maxlen, cap, cw);
    std::unordered_set<std::string> positive_set;
    positive_set.reserve(positives.size() * 2);
    for (const auto& t : positives) positive_set.insert(pack(mark(marked, t)));

    // The table side, by bounded enumeration of the language.
    std::vector<Word> table_words = cfg_bounded_words(to_cnf(s.table.cfg), maxlen + 2, cap);
    std::unordered_set<std::string> table_set;
    table_set.reserve(table_words.size() * 2);
    for (const Word& w : table_words) table_set.insert(pack(w));

    DfaRunner r_member(s.combing.r);
    const Letter m = marked.marker();
    for (const Word& w : table_words) {
        if (std::count(w.begin(), w.end(), m) != 2) continue;  // outside the R-triple domain
        MarkedWord t = unmark(marked, w);
        int total = static_cast<int>(t.u.size() + t.v.size() + t.w.size());
        if (total > maxlen) continue;
        if (static_cast<int>(t.u.size()) < minw || static_cast<int>(t.v.size()) < minw ||
            static_cast<int>(t.w.size()) < minw)
            continue;
        if (!r_member.accepts(t.u) || !r_member.accepts(t.v) || !r_member.accepts(t.w)) continue;
        if (!positive_set.count(pack(w))) report.disagreements.push_back({t, true, false});
    }
    for (const auto& t : positives)
        if (!table_set.count(pack(mark(marked, t))))
            report.disagreements.push_back({t, false, true});

    std::sort(report.disagreements.begin(), report.disagreements.end(),
              [&](const Disagreement& x, const Disagreement& y) {
                  Word wx = mark(marked, x.triple), wy = mark(marked, y.triple);
                  if (wx.size() != wy.size()) return wx.size() < wy.size();
                  return wx < wy;
              });
    return report;
}

HyperbolicStructure change_generators(const HyperbolicStructure& s, const FreeHom& h,
                                      OraclePtr target) {
    const SemigroupOracle& src = *s.combing.oracle;
    if (h.source() != src.alphabet() || h.target() != target->alphabet())
        throw std::invalid_argument("change_generators: homomorphism does not match the oracles");
    for (Letter a = 0; a < h.source().size(); ++a)
        if (target->evaluate(h.image(a)) != src.evaluate({a}))
            throw std::invalid_argument("change_generators: g∘h = f fails on letter " +
                                        h.source().name(a));

    Nfa r1 = trim(remove_epsilon(hom_image(h, s.combing.r)));
    Transducer rho = generator_change_rho(h, src.monoid_mode());
    Cfg t1 = apply_transduction(rho, s.table.cfg);
    HyperbolicStructure out;
    out.combing = make_combing(std::move(target), std::move(r1));
    out.table = TableLanguage::from_cfg(std::move(t1), "generator change along " +
                                                           s.table.provenance);
    return out;
}

HyperbolicStructure subsemigroup_structure(const HyperbolicStructure& ambient_free,
                                           const FreeHom& h, OraclePtr sub_oracle) {
    if (h.target() != ambient_free.combing.oracle->alphabet())
        throw std::invalid_argument("subsemigroup_structure: h must map into the ambient alphabet");
    if (h.source() != sub_oracle->alphabet())
        throw std::invalid_argument("subsemigroup_structure: h must start at the sub-oracle alphabet");
    Transducer rho = generator_change_rho(h);
    Cfg table = apply_transduction(invert(rho), ambient_free.table.cfg);
    HyperbolicStructure out;
    out.combing = make_combing(std::move(sub_oracle), sigma_plus(h.source()));
    out.table = TableLanguage::from_cfg(std::move(table),
                                        "pullback of " + ambient_free.table.provenance);
    return out;
}

HyperbolicStructure adjoin_zero(const HyperbolicStructure& s, const std::string& letter) {
    OraclePtr inner = s.combing.oracle;
    auto adjoined = std::make_shared<AdjoinedOracle>(inner, AdjoinedOracle::Mode::Zero, letter);
    Alphabet big = adjoined->alphabet();
    Alphabet big_marked = big.with_marker();
    const Letter x = big.at(letter);

    Nfa r_big = remap_labels(s.combing.r, big);
    Nfa r_new = union_nfa(r_big, nfa_letter(big, x));

    Cfg table = remap_terminals(s.table.cfg, big_marked);
    Nfa r_marked = remap_labels(s.combing.r, big_marked);
    const Letter xm = big_marked.at(letter), mm = big_marked.marker();
    Nfa summand_rxx = concat(r_marked, nfa_word(big_marked, {mm, xm, mm, xm}));
    Nfa summand_xrx = concat(concat(nfa_word(big_marked, {xm, mm}), r_marked),
                             nfa_word(big_marked, {mm, xm}));
    Nfa summand_xxx = nfa_word(big_marked, {xm, mm, xm, mm, xm});
    table = union_cfg(table, cfg_from_nfa(summand_rxx));
    table = union_cfg(table, cfg_from_nfa(summand_xrx));
    table = union_cfg(table, cfg_from_nfa(summand_xxx));

    HyperbolicStructure out;
    out.combing = make_combing(adjoined, std::move(r_new));
    out.table = TableLanguage::from_cfg(std::move(table),
                                        s.table.provenance + " + zero summands");
    return out;
}

HyperbolicStructure restrict_structure(const HyperbolicStructure& s, OraclePtr target) {
    const Alphabet small = target->alphabet();
    const Alphabet big = s.combing.oracle->alphabet();
    const Alphabet small_marked = small.with_marker();
    const Alphabet big_marked = big.with_marker();
    const bool monoid = target->monoid_mode();

    Nfa sub_words = remap_labels(monoid ? sigma_star(small) : sigma_plus(small), big);
    Nfa r_new = remap_labels(trim(remove_epsilon(intersect(s.combing.r, sub_words))), small);

    Nfa shape = remap_labels(marked_shape(small_marked, /*nonempty=*/!monoid), big_marked);
    Cfg table = remap_terminals(trim(intersect_regular(s.table.cfg, shape)), small_marked);

    HyperbolicStructure out;
    out.combing = make_combing(std::move(target), std::move(r_new));
    out.table = TableLanguage::from_cfg(std::move(table),
                                        s.table.provenance + " restricted");
    return out;
}

HyperbolicStructure erase_identity_letter(const HyperbolicStructure& s, OraclePtr target) {
    const Alphabet small = target->alphabet();
    const Alphabet big = s.combing.oracle->alphabet();
    const Alphabet small_marked = small.with_marker();
    const Alphabet big_marked = big.with_marker();

    // The erased letter is whichever generator the target lacks.
    std::vector<Word> images, marked_images;
    for (int i = 0; i < big.size(); ++i) {
        if (small.contains(big.name(i))) {
            images.push_back({small.at(big.name(i))});
            marked_images.push_back({small_marked.at(big.name(i))});
        } else {
            images.push_back({});
            marked_images.push_back({});
        }
    }
    marked_images.push_back({small_marked.marker()});
    FreeHom erase(big, small, images, /*monoid_mode=*/true);
    FreeHom erase_marked(big_marked, small_marked, marked_images, /*monoid_mode=*/true);

    bool monoid = target->monoid_mode();
    Nfa r_img = trim(remove_epsilon(hom_image(erase, s.combing.r)));
    Nfa r_new = trim(remove_epsilon(
        intersect(r_img, monoid ? sigma_star(small) : sigma_plus(small))));
    Cfg table = hom_image_cfg(erase_marked, s.table.cfg);
    table = trim(intersect_regular(table, marked_shape(small_marked, /*nonempty=*/!monoid)));

    HyperbolicStructure out;
    out.combing = make_combing(std::move(target), std::move(r_new));
    out.table = TableLanguage::from_cfg(std::move(table),
                                        s.table.provenance + " with identity letter erased");
    return out;
}

IdentityPairs identity_pairs_language(const Combing& c, int maxlen, size_t cap) {
    const SemigroupOracle& o = *c.oracle;
    CombingWords cw = combing_words_by_element(o, c.r, maxlen, cap);
    Alphabet marked = o.alphabet().with_marker();
    const Letter m = marked.marker();

    IdentityPairs out;
    for (const auto& [e, idxs] : cw.by_element) {
        (void)e;
        if (idxs.size() > 1) out.injective = false;
        for (int i : idxs)
            for (int j : idxs) {
                if (static_cast<int>(cw.words[i].size() + cw.words[j].size()) > maxlen) continue;
                Word w = cw.words[i];
                w.push_back(m);
                Word rj = reverse(cw.words[j]);
                w.insert(w.end(), rj.begin(), rj.end());
                out.words.push_back(std::move(w));
                if (out.words.size() > cap)
                    throw std::runtime_error("identity_pairs_language: cap exceeded");
            }
    }
    std::sort(out.words.begin(), out.words.end(), [](const Word& x, const Word& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

std::vector<Word> word_problem_language(const SemigroupOracle& o, int maxlen, size_t cap) {
    // Definition over Σ^+ components even when the oracle is a monoid.
    CombingWords cw = combing_words_by_element(o, sigma_plus(o.alphabet()), maxlen - 1, cap);
    Alphabet marked = o.alphabet().with_marker();
    const Letter m = marked.marker();
    std::vector<Word> out;
    for (const auto& [e, idxs] : cw.by_element) {
        (void)e;
        for (int i : idxs)
            for (int j : idxs) {
                if (static_cast<int>(cw.words[i].size() + cw.words[j].size()) > maxlen) continue;
                Word w = cw.words[i];
                w.push_back(m);
                Word rj = reverse(cw.words[j]);
                w.insert(w.end(), rj.begin(), rj.end());
                out.push_back(std::move(w));
                if (out.size() > cap)
                    throw std::runtime_error("word_problem_language: cap exceeded");
            }
    }
    std::sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

Cfg subsemigroup_word_problem(const Cfg& w, const FreeHom& h) {
    if (w.terminals != h.target().with_marker())
        throw std::invalid_argument(
            "subsemigroup_word_problem: word problem must be over the marked ambient alphabet");
    return apply_transduction(invert(wp_rho(h)), w);
}

InvolutiveAlphabet involutive_alphabet(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<std::string> letters;
    for (const auto& [a, ai] : pairs) {
        letters.push_back(a);
        letters.push_back(ai);
    }
    InvolutiveAlphabet out{Alphabet(letters), {}};
    out.inverse.resize(out.alphabet.size());
    for (const auto& [a, ai] : pairs) {
        out.inverse[out.alphabet.at(a)] = out.alphabet.at(ai);
        out.inverse[out.alphabet.at(ai)] = out.alphabet.at(a);
    }
    return out;
}

namespace {

/// Identity relation restricted to non-marker letters, starred.
Transducer letter_identity_star(const Alphabet& marked_in, const Alphabet& out_alpha) {
    Transducer t = t_empty(marked_in, out_alpha);
    int s = t.add_state();
    for (Letter a = 0; a < marked_in.size(); ++a) {
        if (marked_in.has_marker() && a == marked_in.marker()) continue;
        t.add_edge(s, {a}, {out_alpha.at(marked_in.name(a))}, s);
    }
    t.initial = {s};
    t.final = {s};
    return t;
}

}  // namespace

Cfg group_wp_to_semigroup(const Cfg& v, const InvolutiveAlphabet& sigma) {
    const Alphabet& alpha = sigma.alphabet;
    if (v.terminals != alpha)
        throw std::invalid_argument("group_wp_to_semigroup: V must be over the group alphabet");
    Alphabet marked = alpha.with_marker();

    // V1 = h^{-1}(V) ∩ Σ^+#Σ^+ where h erases the marker.
    std::vector<Word> images;
    for (int a = 0; a < alpha.size(); ++a) images.push_back({a});
    images.push_back({});
    FreeHom h_erase(marked, alpha, images, /*monoid_mode=*/true);
    Cfg v1 = trim(intersect_regular(hom_preimage_cfg(h_erase, v), marked_pair_shape(marked, true)));

    // ρ = (I)(#,#)(τ) with τ the letterwise formal inversion.
    Transducer ident = letter_identity_star(marked, marked);
    Transducer hash = t_pair(marked, marked, {marked.marker()}, {marked.marker()});
    Transducer tau = t_empty(marked, marked);
    {
        int s0 = tau.add_state(), s1 = tau.add_state();
        for (Letter a = 0; a < alpha.size(); ++a) {
            tau.add_edge(s0, {a}, {sigma.inverse[a]}, s1);
            tau.add_edge(s1, {a}, {sigma.inverse[a]}, s1);
        }
        tau.initial = {s0};
        tau.final = {s1};
    }
    Transducer rho = t_concat(t_concat(ident, hash), tau);
    return trim(apply_transduction(rho, v1));
}

Cfg semigroup_wp_to_group(const Cfg& w, const Word& w1, const SemigroupOracle* check_identity) {
    const Alphabet marked = w.terminals;
    if (!marked.has_marker())
        throw std::invalid_argument("semigroup_wp_to_group: W must be over a marked alphabet");
    Alphabet alpha = marked.without_marker();
    if (w1.empty()) throw std::invalid_argument("w1 must be a nonempty identity word");
    if (check_identity && check_identity->evaluate(w1) != check_identity->identity())
        throw std::invalid_argument("w1 does not evaluate to the identity");

    // ρ = (I)(#,ε)(w1^r,ε); the image of W is {w : w#w1^r in W}.
    Transducer ident = letter_identity_star(marked, alpha);
    Transducer hash_drop = t_pair(marked, alpha, {marked.marker()}, {});
    Transducer tail_drop = t_pair(marked, alpha, reverse(w1), {});
    Transducer rho = t_concat(t_concat(ident, hash_drop), tail_drop);
    return trim(union_cfg(cfg_word(alpha, {}), apply_transduction(rho, w)));
}

}  // namespace hsg
