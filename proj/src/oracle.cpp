#include "hsg/oracle.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace hsg {

Element SemigroupOracle::identity() const {
    throw std::logic_error("oracle has no identity element (semigroup mode)");
}

Element SemigroupOracle::evaluate(const Word& w) const {
    if (w.empty()) {
        if (!monoid_mode())
            throw std::invalid_argument("empty word has no value in a semigroup oracle");
        return identity();
    }
    Element e = generator(w[0]);
    for (size_t i = 1; i < w.size(); ++i) e = product(e, generator(w[i]));
    return e;
}

FiniteOracle::FiniteOracle(Alphabet alphabet, std::vector<std::string> elements,
                           std::vector<std::vector<int>> table, std::vector<int> generator_map,
                           int identity_index)
    : alphabet_(std::move(alphabet)), elements_(std::move(elements)), table_(std::move(table)),
      generator_map_(std::move(generator_map)), identity_index_(identity_index) {
    const int n = static_cast<int>(elements_.size());
    if (n == 0 || n > 64) throw std::invalid_argument("finite oracle supports 1..64 elements");
    if (static_cast<int>(table_.size()) != n)
        throw std::invalid_argument("multiplication table must be n x n");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("multiplication table must be n x n");
        for (int v : row)
            if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
                    throw std::invalid_argument("multiplication table is not associative");
    if (static_cast<int>(generator_map_.size()) != alphabet_.size())
        throw std::invalid_argument("generator map must cover the alphabet");
    for (int g : generator_map_)
        if (g < 0 || g >= n) throw std::invalid_argument("generator map entry out of range");
    if (identity_index_ >= n) throw std::invalid_argument("identity index out of range");
    if (identity_index_ >= 0)
        for (int i = 0; i < n; ++i)
            if (table_[identity_index_][i] != i || table_[i][identity_index_] != i)
                throw std::invalid_argument("declared identity is not neutral");
    for (int i = 0; i < n; ++i) index_.emplace(elements_[i], i);
    if (index_.size() != elements_.size())
        throw std::invalid_argument("element names must be distinct");
}

Element FiniteOracle::product(const Element& x, const Element& y) const {
    auto ix = index_.find(x), iy = index_.find(y);
    if (ix == index_.end() || iy == index_.end())
        throw std::invalid_argument("unknown element in finite oracle product");
    return elements_[table_[ix->second][iy->second]];
}

Element FiniteOracle::identity() const {
    if (identity_index_ < 0) return SemigroupOracle::identity();
    return elements_[identity_index_];
}

Element FreeOracle::product(const Element& x, const Element& y) const {
    if (x.empty() || y.empty()) throw std::invalid_argument("free semigroup has no empty element");
    if (alphabet_.any_multichar()) return x + " " + y;
    return x + y;
}

BicyclicOracle::BicyclicOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    if (alphabet_.size() != 2)
        throw std::invalid_argument("bicyclic oracle needs exactly two generators");
}

std::pair<long long, long long> BicyclicOracle::parse(const Element& e) {
    size_t comma = e.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad bicyclic element: " + e);
    return {std::stoll(e.substr(0, comma)), std::stoll(e.substr(comma + 1))};
}

Element BicyclicOracle::print(long long i, long long j) {
    return std::to_string(i) + "," + std::to_string(j);
}

Element BicyclicOracle::generator(Letter a) const {
    if (a == 0) return print(0, 1);  // a
    if (a == 1) return print(1, 0);  // b
    throw std::out_of_range("bicyclic oracle has two generators");
}

Element BicyclicOracle::product(const Element& x, const Element& y) const {
    auto [i, j] = parse(x);
    auto [k, l] = parse(y);
    if (j >= k) return print(i, j - k + l);
    return print(i + k - j, l);
}

Element BicyclicOracle::evaluate(const Word& w) const {
    long long i = 0, j = 0;
    for (Letter x : w) {
        if (x == 0) {  // a = (0,1)
            j += 1;
        } else if (x == 1) {  // b = (1,0): j >= 1 cancels, else climbs
            if (j >= 1)
                j -= 1;
            else
                i += 1;
        } else {
            throw std::out_of_range("bicyclic oracle has two generators");
        }
    }
    return print(i, j);
}

FreeCommutativeOracle::FreeCommutativeOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    if (alphabet_.size() != 2)
        throw std::invalid_argument("free commutative oracle is over two generators");
}

Element FreeCommutativeOracle::generator(Letter a) const {
    if (a == 0) return "1,0";
    if (a == 1) return "0,1";
    throw std::out_of_range("free commutative oracle has two generators");
}

Element FreeCommutativeOracle::product(const Element& x, const Element& y) const {
    auto [i, j] = BicyclicOracle::parse(x);
    auto [k, l] = BicyclicOracle::parse(y);
    return BicyclicOracle::print(i + k, j + l);
}

RewritingOracle::RewritingOracle(Alphabet generators, Alphabet working,
                                 std::vector<std::pair<Word, Word>> rules, bool monoid,
                                 size_t step_budget)
    : generators_(std::move(generators)), working_(std::move(working)), rules_(std::move(rules)),
      monoid_(monoid), step_budget_(step_budget) {
    for (int i = 0; i < generators_.size(); ++i)
        if (!working_.contains(generators_.name(i)) ||
            working_.at(generators_.name(i)) != i)
            throw std::invalid_argument("working alphabet must extend the generator alphabet");
    for (const auto& [l, r] : rules_) {
        if (l.empty()) throw std::invalid_argument("rewrite rule with empty left side");
        for (Letter a : l)
            if (a < 0 || a >= working_.size())
                throw std::invalid_argument("rule letter outside the working alphabet");
        for (Letter a : r)
            if (a < 0 || a >= working_.size())
                throw std::invalid_argument("rule letter outside the working alphabet");
    }
}

namespace {

/// Position of the leftmost match of any rule; picks the lowest rule index on
/// ties so rewriting is deterministic.
std::pair<size_t, int> leftmost_match(const Word& w,
                                      const std::vector<std::pair<Word, Word>>& rules) {
    for (size_t pos = 0; pos < w.size(); ++pos)
        for (int ri = 0; ri < static_cast<int>(rules.size()); ++ri) {
            const Word& l = rules[ri].first;
            if (pos + l.size() > w.size()) continue;
            if (std::equal(l.begin(), l.end(), w.begin() + pos)) return {pos, ri};
        }
    return {w.size(), -1};
}

Word apply_rule(const Word& w, size_t pos, const Word& l, const Word& r) {
    Word out(w.begin(), w.begin() + pos);
    out.insert(out.end(), r.begin(), r.end());
    out.insert(out.end(), w.begin() + pos + l.size(), w.end());
    return out;
}

}  // namespace

Word RewritingOracle::normal_form(Word w) const {
    for (size_t step = 0; step < step_budget_; ++step) {
        auto [pos, ri] = leftmost_match(w, rules_);
        if (ri < 0) return w;
        w = apply_rule(w, pos, rules_[ri].first, rules_[ri].second);
    }
    throw std::runtime_error("rewriting step budget exceeded (system not terminating?)");
}

Word RewritingOracle::normal_form_random(Word w, unsigned seed) const {
    std::mt19937 rng(seed);
    for (size_t step = 0; step < step_budget_; ++step) {
        std::vector<std::pair<size_t, int>> matches;
        for (size_t pos = 0; pos < w.size(); ++pos)
            for (int ri = 0; ri < static_cast<int>(rules_.size()); ++ri) {
                const Word& l = rules_[ri].first;
                if (pos + l.size() <= w.size() &&
                    std::equal(l.begin(), l.end(), w.begin() + pos))
                    matches.push_back({pos, ri});
            }
        if (matches.empty()) return w;
        auto [pos, ri] = matches[rng() % matches.size()];
        w = apply_rule(w, pos, rules_[ri].first, rules_[ri].second);
    }
    throw std::runtime_error("rewriting step budget exceeded (system not terminating?)");
}

Element RewritingOracle::generator(Letter a) const {
    if (a < 0 || a >= generators_.size()) throw std::out_of_range("unknown generator");
    return word_text(working_, normal_form({a}));
}

Element RewritingOracle::product(const Element& x, const Element& y) const {
    Word wx = parse_word(working_, x), wy = parse_word(working_, y);
    return word_text(working_, normal_form(concat(wx, wy)));
}

Element RewritingOracle::identity() const {
    if (!monoid_) return SemigroupOracle::identity();
    return word_text(working_, {});
}

AdjoinedOracle::AdjoinedOracle(OraclePtr inner, Mode mode, const std::string& letter)
    : inner_(std::move(inner)), mode_(mode), letter_(letter),
      alphabet_(inner_->alphabet().with_letter(letter)) {}

Element AdjoinedOracle::adjoined_element() const {
    return mode_ == Mode::Zero ? "@zero" : "@one";
}

bool AdjoinedOracle::monoid_mode() const {
    return mode_ == Mode::Identity || inner_->monoid_mode();
}

Element AdjoinedOracle::generator(Letter a) const {
    if (a == inner_->alphabet().size()) return adjoined_element();
    return inner_->generator(a);
}

Element AdjoinedOracle::product(const Element& x, const Element& y) const {
    if (mode_ == Mode::Zero) {
        if (x == "@zero" || y == "@zero") return "@zero";
        return inner_->product(x, y);
    }
    if (x == "@one") return y;
    if (y == "@one") return x;
    return inner_->product(x, y);
}

Element AdjoinedOracle::identity() const {
    if (mode_ == Mode::Identity) return "@one";
    return inner_->identity();  // zero adjunction keeps the inner identity
}

std::vector<BallEntry> ball(const SemigroupOracle& o, int radius, size_t cap) {
    if (radius < 1) throw std::invalid_argument("ball radius must be >= 1");
    std::vector<BallEntry> out;
    std::set<Element> seen;
    // Level-synchronized BFS; frontiers iterate in witness-lex order so the
    // first witness of an element is the least one of minimal length.
    std::vector<std::pair<Element, Word>> frontier;
    if (o.monoid_mode()) {
        Element e = o.identity();
        seen.insert(e);
        out.push_back({e, 0, {}});
        frontier.push_back({e, {}});
    } else {
        frontier.push_back({"", {}});  // placeholder seed, expanded below
    }
    for (int len = 1; len <= radius; ++len) {
        // Expanding only newly discovered elements suffices: a minimal word
        // for an element extends a minimal word of its prefix element.
        std::vector<std::pair<Element, Word>> next;
        for (const auto& [e, w] : frontier)
            for (Letter a = 0; a < o.alphabet().size(); ++a) {
                Element e2 = (w.empty() && !o.monoid_mode()) ? o.generator(a)
                                                             : o.product(e, o.generator(a));
                Word w2 = w;
                w2.push_back(a);
                if (seen.insert(e2).second) {
                    out.push_back({e2, len, w2});
                    if (out.size() > cap) throw std::runtime_error("ball: element cap exceeded");
                    next.push_back({std::move(e2), std::move(w2)});
                }
            }
        frontier = std::move(next);
    }
    return out;
}

namespace {

struct Dfa {
    std::vector<std::vector<int>> delta;  // state x letter -> state or -1
    std::vector<char> accepting;
    int start = 0;
    std::vector<int> dist_to_final;  // -1 when no final is reachable
};

Dfa make_dfa(const Nfa& r) {
    Nfa d = determinize(r);
    Dfa out;
    out.delta.assign(d.num_states, std::vector<int>(d.alphabet.size(), -1));
    out.accepting.assign(std::max(d.num_states, 1), 0);
    for (const auto& e : d.edges) out.delta[e.from][e.label] = e.to;
    for (int f : d.final) out.accepting[f] = 1;
    out.start = d.initial.empty() ? -1 : d.initial[0];

    out.dist_to_final.assign(std::max(d.num_states, 1), -1);
    std::queue<int> q;
    std::vector<std::vector<int>> rev(d.num_states);
    for (const auto& e : d.edges) rev[e.to].push_back(e.from);
    for (int f : d.final) {
        out.dist_to_final[f] = 0;
        q.push(f);
    }
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (int p : rev[s])
            if (out.dist_to_final[p] < 0) {
                out.dist_to_final[p] = out.dist_to_final[s] + 1;
                q.push(p);
            }
    }
    return out;
}

}  // namespace

std::map<Element, CombingWitness> minimal_combing_words(const SemigroupOracle& o, const Nfa& r,
                                                        int maxlen, size_t cap) {
    if (r.alphabet != o.alphabet())
        throw std::invalid_argument("combing automaton is not over the oracle alphabet");
    Dfa dfa = make_dfa(r);
    std::map<Element, CombingWitness> out;
    if (dfa.start < 0) return out;

    std::set<std::pair<int, Element>> seen;
    std::vector<std::tuple<int, Element, Word>> frontier;
    Element seed;
    if (o.monoid_mode()) seed = o.identity();
    frontier.push_back({dfa.start, seed, {}});
    seen.insert({dfa.start, seed});
    if (dfa.accepting[dfa.start] && o.monoid_mode()) out.emplace(seed, CombingWitness{0, {}});

    for (int len = 1; len <= maxlen; ++len) {
        std::vector<std::tuple<int, Element, Word>> next;
        for (const auto& [s, e, w] : frontier) {
            for (Letter a = 0; a < o.alphabet().size(); ++a) {
                int s2 = dfa.delta[s][a];
                if (s2 < 0) continue;
                if (dfa.dist_to_final[s2] < 0 || dfa.dist_to_final[s2] > maxlen - len) continue;
                Element e2 = (w.empty() && !o.monoid_mode()) ? o.generator(a)
                                                             : o.product(e, o.generator(a));
                if (!seen.insert({s2, e2}).second) continue;
                if (seen.size() > cap)
                    throw std::runtime_error("minimal_combing_words: cap exceeded");
                Word w2 = w;
                w2.push_back(a);
                if (dfa.accepting[s2] && !out.count(e2)) out.emplace(e2, CombingWitness{len, w2});
                next.push_back({s2, std::move(e2), std::move(w2)});
            }
        }
        frontier = std::move(next);
    }
    return out;
}

CombingWords combing_words_by_element(const SemigroupOracle& o, const Nfa& r, int maxlen,
                                      size_t cap) {
    if (r.alphabet != o.alphabet())
        throw std::invalid_argument("combing automaton is not over the oracle alphabet");
    Dfa dfa = make_dfa(r);
    CombingWords out;
    if (dfa.start < 0) return out;

    auto record = [&](const Word& w, const Element& e) {
        out.words.push_back(w);
        out.elements.push_back(e);
        out.by_element[e].push_back(static_cast<int>(out.words.size()) - 1);
        if (out.words.size() > cap) throw std::runtime_error("combing words: cap exceeded");
    };

    std::vector<std::tuple<int, Element, Word>> frontier;
    Element seed;
    if (o.monoid_mode()) seed = o.identity();
    frontier.push_back({dfa.start, seed, {}});
    if (dfa.accepting[dfa.start]) {
        if (o.monoid_mode())
            record({}, seed);
        else
            throw std::invalid_argument("semigroup combing must not contain the empty word");
    }
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<std::tuple<int, Element, Word>> next;
        for (const auto& [s, e, w] : frontier) {
            for (Letter a = 0; a < o.alphabet().size(); ++a) {
                int s2 = dfa.delta[s][a];
                if (s2 < 0) continue;
                if (dfa.dist_to_final[s2] < 0 || dfa.dist_to_final[s2] > maxlen - len) continue;
                Element e2 = (w.empty() && !o.monoid_mode()) ? o.generator(a)
                                                             : o.product(e, o.generator(a));
                Word w2 = w;
                w2.push_back(a);
                if (dfa.accepting[s2]) record(w2, e2);
                next.push_back({s2, std::move(e2), std::move(w2)});
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace hsg
