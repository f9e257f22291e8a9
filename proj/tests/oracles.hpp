/* oracles.hpp -- test-only reference computations, kept independent of the
 * implementation paths they check.
 */
#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "hsg/grammar.hpp"

namespace hsg::testing {

inline std::vector<Word> all_words(const Alphabet& alphabet, int maxlen) {
    std::vector<Word> out = {{}};
    size_t begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        size_t end = out.size();
        for (size_t i = begin; i < end; ++i)
            for (Letter x = 0; x < alphabet.size(); ++x) {
                Word w = out[i];
                w.push_back(x);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

inline void sort_words(std::vector<Word>& ws) {
    std::sort(ws.begin(), ws.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
}

/// Brute-force leftmost-derivation enumeration, independent of CNF and CYK.
/// Sentential forms are pruned by the sum of minimal derivable lengths, which
/// keeps the search finite for grammars whose production bodies are nonempty.
inline std::set<Word> derive_words(const Cfg& g, int maxlen, size_t step_cap = 4000000) {
    // Minimal derivable length per nonterminal (0 when nullable).
    constexpr int kInf = 1 << 20;
    std::vector<int> min_len(g.nonterminals.size(), kInf);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            int total = 0;
            for (const auto& s : p.body) total += s.is_terminal ? 1 : min_len[s.id];
            if (total < min_len[p.head]) {
                min_len[p.head] = std::min(total, kInf);
                changed = true;
            }
        }
    }

    std::set<Word> out;
    std::set<std::vector<std::pair<bool, int>>> seen;
    std::queue<std::vector<CfgSymbol>> frontier;
    frontier.push({CfgSymbol::nonterminal(g.start)});
    size_t steps = 0;
    while (!frontier.empty()) {
        if (++steps > step_cap)
            throw std::runtime_error("derive_words: enumeration did not terminate");
        std::vector<CfgSymbol> form = frontier.front();
        frontier.pop();
        size_t leftmost = form.size();
        int floor_len = 0;
        for (size_t i = 0; i < form.size(); ++i) {
            if (!form[i].is_terminal && leftmost == form.size()) leftmost = i;
            floor_len += form[i].is_terminal ? 1 : min_len[form[i].id];
        }
        if (floor_len > maxlen) continue;
        if (leftmost == form.size()) {
            Word w;
            for (const auto& s : form) w.push_back(s.id);
            out.insert(w);
            continue;
        }
        for (const auto& p : g.productions) {
            if (p.head != form[leftmost].id) continue;
            std::vector<CfgSymbol> next(form.begin(), form.begin() + leftmost);
            next.insert(next.end(), p.body.begin(), p.body.end());
            next.insert(next.end(), form.begin() + leftmost + 1, form.end());
            std::vector<std::pair<bool, int>> key;
            for (const auto& s : next) key.push_back({s.is_terminal, s.id});
            if (seen.insert(key).second) frontier.push(std::move(next));
        }
    }
    return out;
}

}  // namespace hsg::testing
