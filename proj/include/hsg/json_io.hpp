/* json_io.hpp -- JSON forms of automata, grammars, oracles, structure bundles
 * and reports.
 */
#pragma once

#include "json.hpp"

#include "hsg/geometry.hpp"
#include "hsg/grammar.hpp"
#include "hsg/hyper.hpp"
#include "hsg/oracle.hpp"
#include "hsg/transducer.hpp"
#include "hsg/valence.hpp"

namespace hsg {

using Json = nlohmann::json;

Json nfa_to_json(const Nfa& a);
Nfa nfa_from_json(const Json& j);

Json transducer_to_json(const Transducer& t);
Transducer transducer_from_json(const Json& j);

Json valence_to_json(const ValenceAutomaton& v);
ValenceAutomaton valence_from_json(const Json& j);

Json cfg_to_json(const Cfg& g);
Cfg cfg_from_json(const Json& j);

Json oracle_to_json(const SemigroupOracle& o);
OraclePtr oracle_from_json(const Json& j);

Json structure_to_json(const HyperbolicStructure& s);
HyperbolicStructure structure_from_json(const Json& j, bool check_combing = true);

Json verify_report_to_json(const VerifyReport& r, const Alphabet& marked);
Json delta_report_to_json(const DeltaReport& r, const Alphabet& alphabet);
Json fit_report_to_json(const FitReport& r, const std::string& kind);

}  // namespace hsg
