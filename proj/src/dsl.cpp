#include "qdt/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

enum class Tok {
  Ident,
  Int,
  Arrow,     // ->
  FatArrow,  // =>
  Pipe,
  Colon,
  Equal,
  Comma,
  LParen,
  RParen,
  Bang,
  Amp,
  Question,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;  // Tok::Int
  int line = 0;
  int col = 0;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Pipe: return "'|'";
    case Tok::Colon: return "':'";
    case Tok::Equal: return "'='";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Question: return "'?'";
    case Tok::End: return "end of line";
  }
  return "?";
}

// Tokenizes one line (already stripped of its comment).
std::vector<Token> tokenize_line(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t start, std::size_t len, std::int64_t value = 0) {
    out.push_back(Token{kind, std::string(line.substr(start, len)), value, line_no,
                        static_cast<int>(start) + 1});
  };
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
        ++i;
      push(Tok::Ident, start, i - start);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      ++i;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      std::int64_t v = 0;
      try {
        v = std::stoll(std::string(line.substr(start, i - start)));
      } catch (const std::exception&) {
        throw ParseError(line_no, static_cast<int>(start) + 1, "integer out of range");
      }
      push(Tok::Int, start, i - start, v);
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      push(Tok::Arrow, start, 2);
      i += 2;
      continue;
    }
    if (c == '=' && i + 1 < line.size() && line[i + 1] == '>') {
      push(Tok::FatArrow, start, 2);
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '|': kind = Tok::Pipe; break;
      case ':': kind = Tok::Colon; break;
      case '=': kind = Tok::Equal; break;
      case ',': kind = Tok::Comma; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '!': kind = Tok::Bang; break;
      case '&': kind = Tok::Amp; break;
      case '?': kind = Tok::Question; break;
      default:
        throw ParseError(line_no, static_cast<int>(i) + 1,
                         std::string("unexpected character '") + c + "'");
    }
    push(kind, start, 1);
    ++i;
  }
  out.push_back(Token{Tok::End, "", 0, line_no, static_cast<int>(line.size()) + 1});
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }

  Token expect(Tok kind, std::vector<std::string> also_expected = {}) {
    if (!at(kind)) {
      also_expected.insert(also_expected.begin(), tok_name(kind));
      std::string message =
          "expected " + also_expected.front() + ", found " +
          (peek().kind == Tok::End ? std::string("end of line") : "'" + peek().text + "'");
      throw ParseError(peek().line, peek().col, message, std::move(also_expected));
    }
    return next();
  }

  void expect_end() {
    if (!at(Tok::End))
      throw ParseError(peek().line, peek().col, "trailing input '" + peek().text + "'",
                       {"end of line"});
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Strips the comment and tells whether anything remains.
std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

struct Symbols {
  std::map<std::string, int, std::less<>> index;

  int resolve(const Token& t) const {
    auto it = index.find(t.text);
    if (it == index.end())
      throw SemanticError("unknown variable '" + t.text + "'", t.line);
    return it->second;
  }
};

// formula := or ; or := and {'|' and} ; and := not {'&' not}
// not := '!' not | ident | 'true' | 'false' | '(' or ')'
constexpr int kMaxFormulaDepth = 128;

Prop parse_or(Cursor& c, const Symbols& sym, int depth);

Prop parse_not(Cursor& c, const Symbols& sym, int depth) {
  if (depth > kMaxFormulaDepth)
    throw ParseError(c.peek().line, c.peek().col, "formula nested too deeply");
  if (c.accept(Tok::Bang)) return !parse_not(c, sym, depth + 1);
  if (c.accept(Tok::LParen)) {
    Prop p = parse_or(c, sym, depth + 1);
    c.expect(Tok::RParen);
    return p;
  }
  Token t = c.expect(Tok::Ident, {"'!'", "'('", "'true'", "'false'"});
  if (t.text == "true") return Prop::top();
  if (t.text == "false") return Prop::bottom();
  return Prop::var(sym.resolve(t));
}

Prop parse_and(Cursor& c, const Symbols& sym, int depth) {
  Prop p = parse_not(c, sym, depth);
  while (c.accept(Tok::Amp)) p = p & parse_not(c, sym, depth);
  return p;
}

Prop parse_or(Cursor& c, const Symbols& sym, int depth = 0) {
  Prop p = parse_and(c, sym, depth);
  while (c.accept(Tok::Pipe)) p = p | parse_and(c, sym, depth);
  return p;
}

// action-dnf := '(' lit {'&' lit} ')' {'|' '(' ... ')'} ; lit := ['!'] ident
ActionDNF parse_dnf(Cursor& c, const Symbols& sym) {
  std::vector<ActionConjunct> disjuncts;
  do {
    Token open = c.expect(Tok::LParen);
    std::vector<std::pair<int, bool>> lits;
    do {
      bool positive = !c.accept(Tok::Bang);
      Token t = c.expect(Tok::Ident, positive ? std::vector<std::string>{"'!'"}
                                              : std::vector<std::string>{});
      lits.emplace_back(sym.resolve(t), positive);
    } while (c.accept(Tok::Amp));
    c.expect(Tok::RParen);
    try {
      disjuncts.push_back(ActionConjunct::of(std::move(lits)));
    } catch (const SemanticError& e) {
      throw SemanticError(e.what() + std::string(" (in action)"), open.line);
    }
  } while (c.accept(Tok::Pipe));
  return ActionDNF{std::move(disjuncts)};
}

Rank parse_rank_value(Cursor& c) {
  if (c.at_keyword("inf")) {
    c.next();
    return Rank::infinity();
  }
  Token t = c.expect(Tok::Int, {"'inf'"});
  if (t.value < 0) throw SemanticError("rank must be non-negative", t.line);
  if (t.value > 1000000000) throw SemanticError("rank too large", t.line);
  return Rank::finite(t.value);
}

bool parse_tf(Cursor& c) {
  Token t = c.expect(Tok::Ident, {"'T'", "'F'"});
  if (t.text == "T") return true;
  if (t.text == "F") return false;
  throw ParseError(t.line, t.col, "expected 'T' or 'F', found '" + t.text + "'", {"'T'", "'F'"});
}

// Rows accumulate per node across lines until the whole file is read.
struct PendingTable {
  std::vector<int> parents;  // ascending; fixed by the first row seen
  std::map<std::uint32_t, RankPair> rows;
  int first_line = 0;
};

}  // namespace

ModelDocument parse_model(std::string_view text) {
  ModelDocument doc;
  Symbols sym;
  std::map<int, PendingTable> pending;
  std::set<std::pair<int, int>> edge_set;
  bool saw_model = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = strip_comment(raw);
    if (blank(line)) continue;
    Cursor c(tokenize_line(line, line_no));

    Token head = c.expect(Tok::Ident, {"'model'", "'var'", "'edge'", "'rank'", "'util'"});
    if (head.text == "model") {
      if (saw_model) throw SemanticError("duplicate model line", line_no);
      saw_model = true;
      doc.name = c.expect(Tok::Ident).text;
      c.expect_end();
    } else if (head.text == "var") {
      Token name = c.expect(Tok::Ident);
      std::int64_t persistence = 1;
      if (c.at_keyword("persist")) {
        c.next();
        c.expect(Tok::Equal);
        Token v = c.expect(Tok::Int);
        persistence = v.value;
        if (persistence < 1) throw SemanticError("persistence must be >= 1", v.line);
      }
      c.expect_end();
      if (sym.index.count(name.text))
        throw SemanticError("variable '" + name.text + "' declared twice", line_no);
      int idx = static_cast<int>(doc.draft.variables.size());
      if (idx >= kMaxVariables)
        throw SemanticError("more than " + std::to_string(kMaxVariables) + " variables", line_no);
      sym.index.emplace(name.text, idx);
      doc.draft.variables.push_back(Variable{name.text, idx, persistence});
    } else if (head.text == "edge") {
      int from = sym.resolve(c.expect(Tok::Ident));
      c.expect(Tok::Arrow);
      int to = sym.resolve(c.expect(Tok::Ident));
      c.expect_end();
      if (!edge_set.emplace(from, to).second)
        throw SemanticError("duplicate edge", line_no);
      doc.draft.edges.emplace_back(from, to);
    } else if (head.text == "rank") {
      int node = sym.resolve(c.expect(Tok::Ident));
      std::vector<std::pair<int, bool>> assignment;
      if (c.accept(Tok::Pipe)) {
        do {
          int parent = sym.resolve(c.expect(Tok::Ident));
          c.expect(Tok::Equal);
          assignment.emplace_back(parent, parse_tf(c));
        } while (c.accept(Tok::Comma));
      }
      c.expect(Tok::Colon);
      Token t_label = c.expect(Tok::Ident);
      if (t_label.text != "T")
        throw ParseError(t_label.line, t_label.col, "expected 'T'", {"'T'"});
      c.expect(Tok::Equal);
      Rank rank_true = parse_rank_value(c);
      c.expect(Tok::Comma);
      Token f_label = c.expect(Tok::Ident);
      if (f_label.text != "F")
        throw ParseError(f_label.line, f_label.col, "expected 'F'", {"'F'"});
      c.expect(Tok::Equal);
      Rank rank_false = parse_rank_value(c);
      c.expect_end();

      std::sort(assignment.begin(), assignment.end());
      for (std::size_t i = 1; i < assignment.size(); ++i)
        if (assignment[i].first == assignment[i - 1].first)
          throw SemanticError("parent listed twice in rank row", line_no);
      std::vector<int> parents;
      std::uint32_t row = 0;
      for (std::size_t j = 0; j < assignment.size(); ++j) {
        parents.push_back(assignment[j].first);
        if (assignment[j].second) row |= (1u << j);
      }

      auto [it, fresh] = pending.try_emplace(node);
      if (fresh) {
        it->second.parents = parents;
        it->second.first_line = line_no;
      } else if (it->second.parents != parents) {
        throw SemanticError("rank rows for '" +
                                doc.draft.variables[static_cast<std::size_t>(node)].name +
                                "' list different parent sets",
                            line_no);
      }
      if (min(rank_true, rank_false) != Rank())
        throw SemanticError("row not normalized: neither value has rank 0", line_no);
      if (!it->second.rows.emplace(row, RankPair{rank_true, rank_false}).second)
        throw SemanticError("duplicate table row", line_no);
    } else if (head.text == "util") {
      Token level = c.expect(Tok::Int);
      if (level.value > 1000 || level.value < -1000)
        throw SemanticError("utility level out of range", line_no);
      c.expect(Tok::Colon);
      Prop formula = parse_or(c, sym);
      c.expect_end();
      doc.util_clauses.push_back(UtilClause{level.value, formula});
    } else {
      throw ParseError(head.line, head.col, "unknown directive '" + head.text + "'",
                       {"'model'", "'var'", "'edge'", "'rank'", "'util'"});
    }
  }

  if (!saw_model) throw SemanticError("missing model line");
  if (doc.draft.variables.empty()) throw SemanticError("model declares no variables");

  for (auto& [node, table] : pending) {
    ConditionalRankTable t;
    t.node = node;
    t.parents = table.parents;
    std::uint32_t rows = 1u << table.parents.size();
    for (std::uint32_t r = 0; r < rows; ++r) {
      auto it = table.rows.find(r);
      if (it == table.rows.end()) {
        std::string assign;
        for (std::size_t j = 0; j < table.parents.size(); ++j) {
          if (!assign.empty()) assign += ", ";
          assign += doc.draft.variables[static_cast<std::size_t>(table.parents[j])].name;
          assign += (r >> j) & 1u ? "=T" : "=F";
        }
        throw SemanticError(
            "missing row for '" + doc.draft.variables[static_cast<std::size_t>(node)].name +
                (assign.empty() ? "'" : "' at " + assign),
            table.first_line);
      }
      t.rows.push_back(it->second);
    }
    doc.draft.tables.push_back(std::move(t));
  }

  // Cycles, parent mismatches and anything the line checks missed.
  auto diagnostics = validate_network(doc.draft);
  if (!diagnostics.empty()) {
    std::string msg = diagnostics.front().code + ": " + diagnostics.front().message;
    throw SemanticError(msg);
  }
  return doc;
}

namespace {

std::string rank_text(Rank r) { return r.to_string(); }

}  // namespace

std::string serialize_model(const ModelDocument& doc) {
  std::ostringstream out;
  out << "model " << doc.name << "\n";
  for (const Variable& v : doc.draft.variables) {
    out << "var " << v.name;
    if (v.persistence != 1) out << " persist=" << v.persistence;
    out << "\n";
  }
  std::vector<std::pair<int, int>> edges = doc.draft.edges;
  std::sort(edges.begin(), edges.end());
  for (auto [p, c] : edges)
    out << "edge " << doc.draft.variables[static_cast<std::size_t>(p)].name << " -> "
        << doc.draft.variables[static_cast<std::size_t>(c)].name << "\n";

  std::vector<const ConditionalRankTable*> tables;
  for (const ConditionalRankTable& t : doc.draft.tables) tables.push_back(&t);
  std::sort(tables.begin(), tables.end(),
            [](const ConditionalRankTable* a, const ConditionalRankTable* b) {
              return a->node < b->node;
            });
  for (const ConditionalRankTable* t : tables) {
    for (std::uint32_t r = 0; r < t->rows.size(); ++r) {
      out << "rank " << doc.draft.variables[static_cast<std::size_t>(t->node)].name;
      for (std::size_t j = 0; j < t->parents.size(); ++j) {
        out << (j == 0 ? " | " : ", ")
            << doc.draft.variables[static_cast<std::size_t>(t->parents[j])].name << "="
            << (((r >> j) & 1u) ? "T" : "F");
      }
      out << " : T=" << rank_text(t->rows[r].if_true) << ", F=" << rank_text(t->rows[r].if_false)
          << "\n";
    }
  }
  for (const UtilClause& c : doc.util_clauses)
    out << "util " << c.level << " : " << c.formula.to_string(doc.draft.variables) << "\n";
  return out.str();
}

ModelDocument document_from(const CausalNetwork& net, std::vector<UtilClause> clauses,
                            std::string name) {
  ModelDocument doc;
  doc.name = std::move(name);
  doc.draft.variables = net.variables();
  doc.draft.edges = net.edges();
  for (int i = 0; i < net.n_vars(); ++i) doc.draft.tables.push_back(net.table(i));
  doc.util_clauses = std::move(clauses);
  return doc;
}

QueryScript parse_query(std::string_view text, const ModelDocument& doc) {
  Symbols sym;
  for (const Variable& v : doc.draft.variables) sym.index.emplace(v.name, v.index);

  QueryScript script;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = strip_comment(raw);
    if (blank(line)) continue;
    Cursor c(tokenize_line(line, line_no));

    Token head = c.expect(Tok::Ident, {"'observe'", "'do'", "'ought'", "'dmc'", "'show'", "'reset'"});
    QueryCommand cmd;
    if (head.text == "observe") {
      cmd.kind = QueryCommand::Kind::Observe;
      cmd.formula = parse_or(c, sym);
    } else if (head.text == "do") {
      cmd.kind = QueryCommand::Kind::Do;
      cmd.action = parse_dnf(c, sym);
    } else if (head.text == "ought") {
      cmd.kind = QueryCommand::Kind::Ought;
      cmd.action = parse_dnf(c, sym);
      if (c.at_keyword("strong")) {
        c.next();
        cmd.strong = true;
      }
      c.expect(Tok::Question, {"'strong'"});
    } else if (head.text == "dmc") {
      cmd.kind = QueryCommand::Kind::Dmc;
      cmd.action = parse_dnf(c, sym);
      c.expect(Tok::FatArrow);
      cmd.formula = parse_or(c, sym);
      c.expect(Tok::Question);
    } else if (head.text == "show") {
      Token what = c.expect(Tok::Ident, {"'ranking'", "'utility'"});
      if (what.text == "ranking")
        cmd.kind = QueryCommand::Kind::ShowRanking;
      else if (what.text == "utility")
        cmd.kind = QueryCommand::Kind::ShowUtility;
      else
        throw ParseError(what.line, what.col, "expected 'ranking' or 'utility'",
                         {"'ranking'", "'utility'"});
    } else if (head.text == "reset") {
      cmd.kind = QueryCommand::Kind::Reset;
    } else {
      throw ParseError(head.line, head.col, "unknown command '" + head.text + "'",
                       {"'observe'", "'do'", "'ought'", "'dmc'", "'show'", "'reset'"});
    }
    c.expect_end();
    script.commands.push_back(std::move(cmd));
  }
  return script;
}

namespace {

std::string dnf_text(const ActionDNF& a, std::span<const Variable> vars) {
  std::string out;
  for (std::size_t d = 0; d < a.disjuncts.size(); ++d) {
    if (d > 0) out += " | ";
    out += "(";
    const auto& lits = a.disjuncts[d].literals;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i > 0) out += " & ";
      if (!lits[i].second) out += "!";
      out += vars[static_cast<std::size_t>(lits[i].first)].name;
    }
    out += ")";
  }
  return out;
}

}  // namespace

std::string serialize_command(const QueryCommand& cmd, std::span<const Variable> vars) {
  switch (cmd.kind) {
    case QueryCommand::Kind::Observe:
      return "observe " + cmd.formula.to_string(vars);
    case QueryCommand::Kind::Do:
      return "do " + dnf_text(cmd.action, vars);
    case QueryCommand::Kind::Ought:
      return "ought " + dnf_text(cmd.action, vars) + (cmd.strong ? " strong ?" : " ?");
    case QueryCommand::Kind::Dmc:
      return "dmc " + dnf_text(cmd.action, vars) + " => " + cmd.formula.to_string(vars) + " ?";
    case QueryCommand::Kind::ShowRanking:
      return "show ranking";
    case QueryCommand::Kind::ShowUtility:
      return "show utility";
    case QueryCommand::Kind::Reset:
      return "reset";
  }
  return "";
}

std::string serialize_query(const QueryScript& script, std::span<const Variable> vars) {
  std::string out;
  for (const QueryCommand& cmd : script.commands) out += serialize_command(cmd, vars) + "\n";
  return out;
}

}  // namespace qdt
