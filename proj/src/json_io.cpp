#include "hsg/json_io.hpp"

#include <stdexcept>

namespace hsg {

namespace {

Alphabet alphabet_from_json(const Json& j) {
    std::vector<std::string> letters;
    bool marked = false;
    for (const auto& t : j) {
        if (t.get<std::string>() == kMarkerToken) {
            marked = true;
            continue;
        }
        letters.push_back(t.get<std::string>());
    }
    Alphabet a(letters);
    return marked ? a.with_marker() : a;
}

Json alphabet_to_json(const Alphabet& a) {
    Json out = Json::array();
    for (const auto& l : a.letters()) out.push_back(l);
    return out;
}

std::string label_text(const Alphabet& a, Letter l) {
    return l == kEpsilonLabel ? kEpsilonToken : a.name(l);
}

}  // namespace

Json nfa_to_json(const Nfa& a) {
    Json edges = Json::array();
    for (const auto& e : a.edges)
        edges.push_back(Json::array({e.from, label_text(a.alphabet, e.label), e.to}));
    return Json{{"alphabet", alphabet_to_json(a.alphabet)},
                {"states", a.num_states},
                {"initial", a.initial},
                {"final", a.final},
                {"edges", edges}};
}

Nfa nfa_from_json(const Json& j) {
    Nfa a;
    a.alphabet = alphabet_from_json(j.at("alphabet"));
    a.num_states = j.at("states").get<int>();
    a.initial = j.at("initial").get<std::vector<int>>();
    a.final = j.at("final").get<std::vector<int>>();
    for (const auto& e : j.at("edges")) {
        std::string lab = e.at(1).get<std::string>();
        Letter l = lab == kEpsilonToken ? kEpsilonLabel : a.alphabet.at(lab);
        a.add_edge(e.at(0).get<int>(), l, e.at(2).get<int>());
    }
    return a;
}

Json transducer_to_json(const Transducer& t) {
    Json edges = Json::array();
    for (const auto& e : t.edges)
        edges.push_back(Json::array(
            {e.from, word_text(t.in_alphabet, e.in), word_text(t.out_alphabet, e.out), e.to}));
    return Json{{"in_alphabet", alphabet_to_json(t.in_alphabet)},
                {"out_alphabet", alphabet_to_json(t.out_alphabet)},
                {"states", t.num_states},
                {"initial", t.initial},
                {"final", t.final},
                {"edges", edges}};
}

Transducer transducer_from_json(const Json& j) {
    Transducer t;
    t.in_alphabet = alphabet_from_json(j.at("in_alphabet"));
    t.out_alphabet = alphabet_from_json(j.at("out_alphabet"));
    t.num_states = j.at("states").get<int>();
    t.initial = j.at("initial").get<std::vector<int>>();
    t.final = j.at("final").get<std::vector<int>>();
    for (const auto& e : j.at("edges"))
        t.add_edge(e.at(0).get<int>(), parse_word(t.in_alphabet, e.at(1).get<std::string>()),
                   parse_word(t.out_alphabet, e.at(2).get<std::string>()), e.at(3).get<int>());
    return t;
}

Json valence_to_json(const ValenceAutomaton& v) {
    Json edges = Json::array();
    for (const auto& e : v.edges)
        edges.push_back(
            Json::array({e.from, word_text(v.alphabet, e.in), poly_text(e.ops), e.to}));
    return Json{{"alphabet", alphabet_to_json(v.alphabet)},
                {"states", v.num_states},
                {"initial", v.initial},
                {"final", v.final},
                {"edges", edges}};
}

ValenceAutomaton valence_from_json(const Json& j) {
    ValenceAutomaton v;
    v.alphabet = alphabet_from_json(j.at("alphabet"));
    v.num_states = j.at("states").get<int>();
    v.initial = j.at("initial").get<std::vector<int>>();
    v.final = j.at("final").get<std::vector<int>>();
    for (const auto& e : j.at("edges"))
        v.add_edge(e.at(0).get<int>(), parse_word(v.alphabet, e.at(1).get<std::string>()),
                   parse_poly(e.at(2).get<std::string>()), e.at(3).get<int>());
    return v;
}

Json cfg_to_json(const Cfg& g) {
    Json prods = Json::array();
    for (const auto& p : g.productions) {
        Json body = Json::array();
        for (const auto& s : p.body)
            body.push_back(s.is_terminal ? g.terminals.name(s.id) : g.nonterminals[s.id]);
        prods.push_back(Json::array({g.nonterminals[p.head], body}));
    }
    return Json{{"terminals", alphabet_to_json(g.terminals)},
                {"nonterminals", g.nonterminals},
                {"start", g.nonterminals[g.start]},
                {"productions", prods}};
}

Cfg cfg_from_json(const Json& j) {
    Cfg g;
    g.terminals = alphabet_from_json(j.at("terminals"));
    std::map<std::string, int> nts;
    for (const auto& n : j.at("nonterminals")) {
        std::string name = n.get<std::string>();
        nts[name] = g.add_nonterminal(name);
    }
    g.start = nts.at(j.at("start").get<std::string>());
    for (const auto& p : j.at("productions")) {
        std::vector<CfgSymbol> body;
        for (const auto& tok : p.at(1)) {
            std::string t = tok.get<std::string>();
            auto it = nts.find(t);
            if (it != nts.end())
                body.push_back(CfgSymbol::nonterminal(it->second));
            else
                body.push_back(CfgSymbol::terminal(g.terminals.at(t)));
        }
        g.add_production(nts.at(p.at(0).get<std::string>()), std::move(body));
    }
    return g;
}

Json oracle_to_json(const SemigroupOracle& o) {
    if (auto* f = dynamic_cast<const FiniteOracle*>(&o)) {
        Json j{{"kind", "finite"},
               {"alphabet", alphabet_to_json(f->alphabet())},
               {"elements", f->elements()},
               {"table", f->table()},
               {"generators", f->generator_map()}};
        if (f->identity_index() >= 0) j["identity"] = f->identity_index();
        return j;
    }
    if (auto* f = dynamic_cast<const FreeOracle*>(&o))
        return Json{{"kind", "free"}, {"alphabet", alphabet_to_json(f->alphabet())}};
    if (auto* f = dynamic_cast<const BicyclicOracle*>(&o))
        return Json{{"kind", "bicyclic"}, {"alphabet", alphabet_to_json(f->alphabet())}};
    if (auto* f = dynamic_cast<const FreeCommutativeOracle*>(&o))
        return Json{{"kind", "freecomm"}, {"alphabet", alphabet_to_json(f->alphabet())}};
    if (auto* f = dynamic_cast<const RewritingOracle*>(&o)) {
        Json rules = Json::array();
        for (const auto& [l, r] : f->rules())
            rules.push_back(Json::array({word_text(f->working_alphabet(), l),
                                         word_text(f->working_alphabet(), r)}));
        return Json{{"kind", "rewriting"},
                    {"alphabet", alphabet_to_json(f->alphabet())},
                    {"working", alphabet_to_json(f->working_alphabet())},
                    {"rules", rules},
                    {"monoid", f->monoid_mode()}};
    }
    if (auto* f = dynamic_cast<const AdjoinedOracle*>(&o))
        return Json{{"kind", f->mode() == AdjoinedOracle::Mode::Zero ? "adjoin-zero"
                                                                     : "adjoin-identity"},
                    {"inner", oracle_to_json(*f->inner())},
                    {"letter", f->letter()}};
    throw std::invalid_argument("oracle kind has no JSON form");
}

OraclePtr oracle_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") {
        int identity = j.contains("identity") ? j.at("identity").get<int>() : -1;
        return std::make_shared<FiniteOracle>(
            alphabet_from_json(j.at("alphabet")), j.at("elements").get<std::vector<std::string>>(),
            j.at("table").get<std::vector<std::vector<int>>>(),
            j.at("generators").get<std::vector<int>>(), identity);
    }
    if (kind == "free") return std::make_shared<FreeOracle>(alphabet_from_json(j.at("alphabet")));
    if (kind == "bicyclic")
        return std::make_shared<BicyclicOracle>(alphabet_from_json(j.at("alphabet")));
    if (kind == "freecomm")
        return std::make_shared<FreeCommutativeOracle>(alphabet_from_json(j.at("alphabet")));
    if (kind == "rewriting") {
        Alphabet working = alphabet_from_json(j.at("working"));
        std::vector<std::pair<Word, Word>> rules;
        for (const auto& r : j.at("rules"))
            rules.push_back({parse_word(working, r.at(0).get<std::string>()),
                             parse_word(working, r.at(1).get<std::string>())});
        return std::make_shared<RewritingOracle>(alphabet_from_json(j.at("alphabet")), working,
                                                 rules, j.value("monoid", false));
    }
    if (kind == "adjoin-zero" || kind == "adjoin-identity")
        return std::make_shared<AdjoinedOracle>(oracle_from_json(j.at("inner")),
                                                kind == "adjoin-zero"
                                                    ? AdjoinedOracle::Mode::Zero
                                                    : AdjoinedOracle::Mode::Identity,
                                                j.at("letter").get<std::string>());
    throw std::invalid_argument("unknown oracle kind: " + kind);
}

Json structure_to_json(const HyperbolicStructure& s) {
    Json table;
    if (s.table.kind == TableLanguage::Kind::Valence) {
        table = Json{{"kind", "valence"}, {"automaton", valence_to_json(*s.table.valence)}};
    } else {
        table = Json{{"kind", "cfg"}, {"grammar", cfg_to_json(s.table.cfg)}};
    }
    table["provenance"] = s.table.provenance;
    return Json{{"oracle", oracle_to_json(*s.combing.oracle)},
                {"combing", nfa_to_json(s.combing.r)},
                {"table", table}};
}

HyperbolicStructure structure_from_json(const Json& j, bool check_combing) {
    OraclePtr oracle = oracle_from_json(j.at("oracle"));
    Nfa r = nfa_from_json(j.at("combing"));
    Combing c = make_combing(oracle, std::move(r), 6, 12, check_combing);
    const Json& tj = j.at("table");
    std::string provenance = tj.value("provenance", "");
    TableLanguage table;
    if (tj.at("kind").get<std::string>() == "valence")
        table = TableLanguage::from_valence(valence_from_json(tj.at("automaton")), provenance);
    else
        table = TableLanguage::from_cfg(cfg_from_json(tj.at("grammar")), provenance);
    return HyperbolicStructure{std::move(c), std::move(table)};
}

Json verify_report_to_json(const VerifyReport& r, const Alphabet& marked) {
    Alphabet base = marked.without_marker();
    Json ds = Json::array();
    for (const auto& d : r.disagreements)
        ds.push_back(Json{{"u", word_text(base, d.triple.u)},
                          {"v", word_text(base, d.triple.v)},
                          {"w", word_text(base, d.triple.w)},
                          {"table", d.in_table},
                          {"oracle", d.oracle_holds}});
    return Json{{"maxlen", r.maxlen}, {"checked", r.checked}, {"disagreements", ds}};
}

Json delta_report_to_json(const DeltaReport& r, const Alphabet& alphabet) {
    return Json{{"kind", "delta"},
                {"maxlen", r.maxlen},
                {"delta", r.delta},
                {"triangles", r.triangles},
                {"worst_case", Json{{"u", word_text(alphabet, r.worst.u)},
                                    {"v", word_text(alphabet, r.worst.v)},
                                    {"w", word_text(alphabet, r.worst.w)}}}};
}

Json fit_report_to_json(const FitReport& r, const std::string& kind) {
    Json samples = Json::array();
    for (const auto& s : r.samples)
        samples.push_back(Json{{"n", s.n}, {"max_dist", s.max_dist}, {"count", s.count}});
    return Json{{"kind", kind},
                {"samples", samples},
                {"fit", Json{{"k1", r.k1}, {"k2", r.k2}}},
                {"pairs", r.pairs},
                {"skipped", r.skipped}};
}

}  // namespace hsg
