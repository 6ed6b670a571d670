#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdt/action.hpp"
#include "qdt/decision.hpp"
#include "qdt/network.hpp"
#include "qdt/utility.hpp"

namespace qdt {

/// A parsed model file. Guaranteed to denote a valid network and utility
/// ranking; re-serializing and re-parsing yields a semantically identical
/// document.
struct ModelDocument {
  std::string name;
  NetworkDraft draft;
  std::vector<UtilClause> util_clauses;

  CausalNetwork network() const { return CausalNetwork::build(draft); }
  UtilityRanking utility() const {
    return UtilityRanking::from_clauses(static_cast<int>(draft.variables.size()), util_clauses);
  }
  EpistemicState epistemic_state() const { return EpistemicState::make(network(), utility()); }
};

/// Parses the line-oriented model format:
///
///   model <name>
///   var <ident> [persist=<int>=1]          # declaration order = index
///   edge <ident> -> <ident>
///   rank <ident> [| <ident>=<T|F>, ...] : T=<rank>, F=<rank>
///   util <int> : <formula>                 # first matching clause wins
///
/// '#' starts a comment; <rank> is an unsigned integer or `inf`. Throws
/// ParseError for lexical/syntactic problems (with position and expected
/// tokens) and SemanticError for well-formed text denoting an invalid model.
ModelDocument parse_model(std::string_view text);

/// Canonical text form: declarations in index order, table rows in binary
/// parent-assignment order, formulas with minimal parentheses. Deterministic;
/// parse(serialize(parse(t))) is semantically identical to parse(t).
std::string serialize_model(const ModelDocument& doc);

/// Rebuilds a document from semantic objects (for generated models).
ModelDocument document_from(const CausalNetwork& net, std::vector<UtilClause> clauses,
                            std::string name);

struct QueryCommand {
  enum class Kind { Observe, Do, Ought, Dmc, ShowRanking, ShowUtility, Reset };
  Kind kind = Kind::Reset;
  Prop formula;       // Observe, Dmc (the consequent)
  ActionDNF action;   // Do, Ought, Dmc
  bool strong = false;  // Ought
};

struct QueryScript {
  std::vector<QueryCommand> commands;
};

/// Parses a query script against a model's variable names:
///
///   observe <formula>
///   do <action-dnf>
///   ought <action-dnf> [strong] ?
///   dmc <action-dnf> => <formula> ?
///   show ranking | show utility
///   reset
///
/// where <action-dnf> is (lit [& lit]...) [| (...)]... and lit is [!]<ident>.
QueryScript parse_query(std::string_view text, const ModelDocument& doc);

/// Canonical rendering of a command / script (used for transcripts and
/// reproduction files).
std::string serialize_command(const QueryCommand& cmd, std::span<const Variable> vars);
std::string serialize_query(const QueryScript& script, std::span<const Variable> vars);

}  // namespace qdt
