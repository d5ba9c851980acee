#include "eaplan/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace eaplan::pddl {

namespace {

// ---------------------------------------------------------------------------
// S-expression layer

struct Sexp {
  // Either a symbol or a list, with the source position of its first token.
  std::string sym;
  std::vector<Sexp> list;
  bool isList = false;
  SourcePos pos;

  bool isSym() const { return !isList; }
  const std::string& head() const {
    static const std::string empty;
    if (!isList || list.empty() || !list[0].isSym()) return empty;
    return list[0].sym;
  }
};

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& filename)
      : text_(text), file_(filename) {}

  Sexp parseAll() {
    Sexp root;
    root.isList = true;
    skipWs();
    while (!eof()) {
      root.list.push_back(parseOne());
      skipWs();
    }
    return root;
  }

  [[noreturn]] void fail(const std::string& msg, SourcePos p) const {
    std::ostringstream os;
    os << file_ << ":" << p.line << ":" << p.col << ": " << msg;
    throw ParseError(os.str(), p);
  }

 private:
  Sexp parseOne() {
    skipWs();
    SourcePos p = pos();
    if (eof()) fail("unexpected end of input", p);
    char c = peek();
    if (c == '(') {
      get();
      Sexp s;
      s.isList = true;
      s.pos = p;
      skipWs();
      while (!eof() && peek() != ')') {
        s.list.push_back(parseOne());
        skipWs();
      }
      if (eof()) fail("unbalanced '(' opened here", p);
      get();  // ')'
      return s;
    }
    if (c == ')') fail("unexpected ')'", p);
    Sexp s;
    s.pos = p;
    while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '(' &&
           peek() != ')' && peek() != ';') {
      s.sym.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(get()))));
    }
    return s;
  }

  void skipWs() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  bool eof() const { return idx_ >= text_.size(); }
  char peek() const { return text_[idx_]; }
  char get() {
    char c = text_[idx_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  SourcePos pos() const { return {line_, col_}; }

  std::string_view text_;
  std::string file_;
  std::size_t idx_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Domain / problem readers

const std::set<std::string> kKnownUnsupported = {
    "forall", "exists",   "or",      "oneof",  ":derived", ":durative-action",
    "when",   "decrease", "assign",  "scale-up", "scale-down", "preference",
};

class Reader {
 public:
  Reader(std::string_view text, const std::string& filename)
      : lex_(text, filename) {}

  LiftedDomain readDomain() {
    Sexp root = lex_.parseAll();
    const Sexp* def = findDefine(root, "domain");
    if (def == nullptr) lex_.fail("no (define (domain ...)) found", root.pos);
    LiftedDomain dom;
    dom.name = (*def).list[1].list[1].sym;
    for (std::size_t i = 2; i < def->list.size(); ++i) {
      const Sexp& sec = def->list[i];
      const std::string& h = sec.head();
      if (h == ":requirements") {
        readRequirements(sec, dom);
      } else if (h == ":types") {
        readTypedList(sec, 1, dom.types, "object");
      } else if (h == ":constants") {
        readTypedList(sec, 1, dom.constants, "object");
      } else if (h == ":predicates") {
        for (std::size_t j = 1; j < sec.list.size(); ++j) {
          LiftedDomain::Predicate p;
          expectList(sec.list[j], "predicate declaration");
          p.name = symAt(sec.list[j], 0, "predicate name");
          readTypedList(sec.list[j], 1, p.params, "object");
          for (const auto& existing : dom.predicates)
            if (existing.name == p.name)
              lex_.fail("duplicate predicate: " + p.name, sec.list[j].pos);
          dom.predicates.push_back(std::move(p));
        }
      } else if (h == ":functions") {
        for (std::size_t j = 1; j < sec.list.size(); ++j) {
          const Sexp& f = sec.list[j];
          if (f.isList && f.head() == "total-cost" && f.list.size() == 1) {
            dom.hasTotalCost = true;
          } else if (f.isSym() && f.sym == "-") {
            ++j;  // "- number" tail
          } else {
            unsupported(f.isList ? f.head() : f.sym,
                        "only the (total-cost) fluent is supported", f.pos);
          }
        }
      } else if (h == ":action") {
        dom.actions.push_back(readAction(sec, dom));
      } else if (!h.empty() && kKnownUnsupported.count(h) > 0) {
        unsupported(h, "construct not in the supported fragment: " + h, sec.pos);
      } else {
        unsupported(h, "unknown domain section: " + h, sec.pos);
      }
    }
    validateDomain(dom);
    return dom;
  }

  LiftedProblem readProblem(const LiftedDomain& dom) {
    Sexp root = lex_.parseAll();
    const Sexp* def = findDefine(root, "problem");
    if (def == nullptr) lex_.fail("no (define (problem ...)) found", root.pos);
    LiftedProblem prob;
    prob.name = def->list[1].list[1].sym;
    for (std::size_t i = 2; i < def->list.size(); ++i) {
      const Sexp& sec = def->list[i];
      const std::string& h = sec.head();
      if (h == ":domain") {
        prob.domainName = symAt(sec, 1, "domain name");
      } else if (h == ":objects") {
        readTypedList(sec, 1, prob.objects, "object");
      } else if (h == ":init") {
        for (std::size_t j = 1; j < sec.list.size(); ++j) {
          const Sexp& a = sec.list[j];
          if (a.isList && a.head() == "=") continue;  // (= (total-cost) 0)
          prob.init.push_back(readAtom(a));
        }
      } else if (h == ":goal") {
        if (sec.list.size() != 2) lex_.fail(":goal takes one formula", sec.pos);
        readConjunction(sec.list[1], prob.goal);
      } else if (h == ":metric") {
        prob.metricMinimizeCost = true;
      } else {
        unsupported(h, "unknown problem section: " + h, sec.pos);
      }
    }
    if (prob.domainName != dom.name)
      lex_.fail("problem references domain '" + prob.domainName + "' but got '" + dom.name + "'",
                def->pos);
    validateProblem(prob, dom);
    return prob;
  }

 private:
  [[noreturn]] void unsupported(const std::string& construct, const std::string& msg,
                                SourcePos p) {
    throw UnsupportedFeatureError(construct, msg + " (at line " + std::to_string(p.line) + ")",
                                  p);
  }

  static const Sexp* findDefine(const Sexp& root, const std::string& kind) {
    for (const auto& top : root.list) {
      if (top.isList && top.head() == "define" && top.list.size() >= 2 &&
          top.list[1].isList && top.list[1].head() == kind && top.list[1].list.size() == 2)
        return &top;
    }
    return nullptr;
  }

  void readRequirements(const Sexp& sec, LiftedDomain& dom) {
    static const std::set<std::string> ok = {
        ":strips", ":typing", ":action-costs", ":negative-preconditions",
        ":disjunctive-preconditions", ":conditional-effects", ":equality"};
    for (std::size_t j = 1; j < sec.list.size(); ++j) {
      const std::string& r = sec.list[j].sym;
      if (ok.count(r) == 0)
        unsupported(r, "requirement outside the supported fragment: " + r, sec.list[j].pos);
      dom.requirements.push_back(r);
    }
  }

  // Reads "a b c - t d e - u" style lists starting at index `from`.
  void readTypedList(const Sexp& sec, std::size_t from, std::vector<TypedName>& out,
                     const std::string& defaultType) {
    std::vector<std::string> pending;
    for (std::size_t j = from; j < sec.list.size(); ++j) {
      const Sexp& tok = sec.list[j];
      if (!tok.isSym()) lex_.fail("expected name in typed list", tok.pos);
      if (tok.sym == "-") {
        if (j + 1 >= sec.list.size()) lex_.fail("dangling '-' in typed list", tok.pos);
        const std::string& ty = sec.list[++j].sym;
        for (auto& n : pending) out.push_back({n, ty});
        pending.clear();
      } else {
        pending.push_back(tok.sym);
      }
    }
    for (auto& n : pending) out.push_back({n, defaultType});
  }

  std::string symAt(const Sexp& s, std::size_t i, const std::string& what) {
    if (!s.isList || s.list.size() <= i || !s.list[i].isSym())
      lex_.fail("expected " + what, s.pos);
    return s.list[i].sym;
  }

  void expectList(const Sexp& s, const std::string& what) {
    if (!s.isList) lex_.fail("expected " + what, s.pos);
  }

  Atom readAtom(const Sexp& s) {
    expectList(s, "atom");
    if (s.list.empty() || !s.list[0].isSym()) lex_.fail("expected predicate name", s.pos);
    Atom a;
    a.pred = s.list[0].sym;
    for (std::size_t i = 1; i < s.list.size(); ++i) {
      if (!s.list[i].isSym()) lex_.fail("atom arguments must be names", s.list[i].pos);
      a.args.push_back(s.list[i].sym);
    }
    return a;
  }

  void readConjunction(const Sexp& s, std::vector<Atom>& out) {
    expectList(s, "formula");
    if (s.head() == "and") {
      for (std::size_t i = 1; i < s.list.size(); ++i) readConjunction(s.list[i], out);
      return;
    }
    if (kKnownUnsupported.count(s.head()) > 0 || s.head() == "not" || s.head() == "imply" ||
        s.head() == "implies")
      unsupported(s.head(), "only conjunctions of positive atoms are allowed here", s.pos);
    out.push_back(readAtom(s));
  }

  ActionSchema readAction(const Sexp& sec, const LiftedDomain& dom) {
    ActionSchema a;
    a.name = symAt(sec, 1, "action name");
    std::size_t i = 2;
    while (i < sec.list.size()) {
      if (!sec.list[i].isSym()) lex_.fail("expected action keyword", sec.list[i].pos);
      const std::string& kw = sec.list[i].sym;
      if (i + 1 >= sec.list.size()) lex_.fail("missing body after " + kw, sec.list[i].pos);
      const Sexp& body = sec.list[i + 1];
      if (kw == ":parameters") {
        readTypedList(body, 0, a.params, "object");
      } else if (kw == ":precondition") {
        readPrecondition(body, a);
      } else if (kw == ":effect") {
        readEffect(body, a, {});
      } else {
        unsupported(kw, "unknown action keyword: " + kw, sec.list[i].pos);
      }
      i += 2;
    }
    (void)dom;
    return a;
  }

  void readPrecondition(const Sexp& s, ActionSchema& a) {
    expectList(s, "precondition");
    if (s.list.empty()) return;  // (and) / ()
    const std::string& h = s.head();
    if (h == "and") {
      for (std::size_t i = 1; i < s.list.size(); ++i) readPrecondition(s.list[i], a);
      return;
    }
    if (h == "implies" || h == "imply") {
      if (s.list.size() != 3)
        lex_.fail("implication takes a guard and a consequent", s.pos);
      Implication imp;
      imp.guard = readAtom(s.list[1]);
      imp.consequent = readAtom(s.list[2]);
      a.implPrecs.push_back(std::move(imp));
      return;
    }
    if (h == "not") {
      // Only the static inequality (not (= ?x ?y)) is allowed.
      if (s.list.size() == 2 && s.list[1].isList && s.list[1].head() == "=" &&
          s.list[1].list.size() == 3 && s.list[1].list[1].isSym() && s.list[1].list[2].isSym()) {
        a.inequalities.push_back({s.list[1].list[1].sym, s.list[1].list[2].sym});
        return;
      }
      unsupported("not", "negative preconditions are not in the input fragment", s.pos);
    }
    if (kKnownUnsupported.count(h) > 0)
      unsupported(h, "preconditions are conjunctions of atoms plus (implies g c): " + h, s.pos);
    a.precondition.push_back(readAtom(s));
  }

  void readEffect(const Sexp& s, ActionSchema& a, const std::vector<Atom>& cond) {
    expectList(s, "effect");
    if (s.list.empty()) return;
    const std::string& h = s.head();
    if (h == "and") {
      for (std::size_t i = 1; i < s.list.size(); ++i) readEffect(s.list[i], a, cond);
      return;
    }
    if (h == "not") {
      if (s.list.size() != 2) lex_.fail("(not ...) takes one atom", s.pos);
      a.effects.push_back({cond, readAtom(s.list[1]), true});
      return;
    }
    if (h == "when") {
      if (!cond.empty())
        unsupported("when", "nested conditional effects are not supported", s.pos);
      if (s.list.size() != 3) lex_.fail("(when cond eff) takes two parts", s.pos);
      std::vector<Atom> c;
      readConjunction(s.list[1], c);
      readEffect(s.list[2], a, c);
      return;
    }
    if (h == "increase") {
      if (s.list.size() != 3 || !s.list[1].isList || s.list[1].head() != "total-cost")
        unsupported("increase", "only (increase (total-cost) n) is supported", s.pos);
      if (!cond.empty())
        unsupported("increase", "conditional cost effects are not supported", s.pos);
      if (!s.list[2].isSym()) lex_.fail("cost must be a number", s.list[2].pos);
      try {
        a.cost = Rational::parse(s.list[2].sym);
      } catch (const std::exception&) {
        lex_.fail("cannot parse cost literal: " + s.list[2].sym, s.list[2].pos);
      }
      a.hasExplicitCost = true;
      return;
    }
    if (kKnownUnsupported.count(h) > 0)
      unsupported(h, "effect construct not supported: " + h, s.pos);
    a.effects.push_back({cond, readAtom(s), false});
  }

  void validateDomain(LiftedDomain& dom) {
    std::unordered_map<std::string, std::size_t> arity;
    for (const auto& p : dom.predicates) arity[p.name] = p.params.size();
    std::unordered_set<std::string> names;
    for (const auto& a : dom.actions) {
      if (!names.insert(a.name).second)
        lex_.fail("duplicate action schema: " + a.name, {0, 0});
      std::unordered_set<std::string> declared;
      for (const auto& p : a.params) declared.insert(p.name);
      for (const auto& c : dom.constants) declared.insert(c.name);
      auto checkAtom = [&](const Atom& at) {
        auto it = arity.find(at.pred);
        if (it == arity.end())
          lex_.fail("undeclared predicate '" + at.pred + "' in action " + a.name, {0, 0});
        if (it->second != at.args.size())
          lex_.fail("arity mismatch for '" + at.pred + "' in action " + a.name, {0, 0});
        for (const auto& arg : at.args)
          if (!arg.empty() && arg[0] == '?' && declared.count(arg) == 0)
            lex_.fail("variable " + arg + " not declared in parameters of " + a.name, {0, 0});
      };
      for (const auto& at : a.precondition) checkAtom(at);
      for (const auto& imp : a.implPrecs) {
        checkAtom(imp.guard);
        checkAtom(imp.consequent);
      }
      for (const auto& e : a.effects) {
        checkAtom(e.atom);
        for (const auto& c : e.condition) checkAtom(c);
      }
    }
  }

  void validateProblem(const LiftedProblem& prob, const LiftedDomain& dom) {
    std::unordered_map<std::string, std::size_t> arity;
    for (const auto& p : dom.predicates) arity[p.name] = p.params.size();
    std::unordered_set<std::string> objs;
    for (const auto& o : prob.objects) objs.insert(o.name);
    for (const auto& c : dom.constants) objs.insert(c.name);
    auto checkGround = [&](const Atom& at, const char* where) {
      auto it = arity.find(at.pred);
      if (it == arity.end())
        lex_.fail(std::string("undeclared predicate '") + at.pred + "' in " + where, {0, 0});
      if (it->second != at.args.size())
        lex_.fail(std::string("arity mismatch for '") + at.pred + "' in " + where, {0, 0});
      for (const auto& arg : at.args) {
        if (!arg.empty() && arg[0] == '?')
          lex_.fail(std::string("variable in ") + where + ": " + arg, {0, 0});
        if (objs.count(arg) == 0)
          lex_.fail(std::string("undeclared object '") + arg + "' in " + where, {0, 0});
      }
    };
    for (const auto& at : prob.init) checkGround(at, "init");
    for (const auto& at : prob.goal) checkGround(at, "goal");
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Serialization

void writeTypedList(std::ostream& os, const std::vector<TypedName>& list) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) os << " ";
    os << list[i].name;
    os << " - " << list[i].type;
  }
}

void writeAtom(std::ostream& os, const Atom& a) {
  os << "(" << a.pred;
  for (const auto& arg : a.args) os << " " << arg;
  os << ")";
}

}  // namespace

std::string Atom::str() const {
  std::ostringstream os;
  writeAtom(os, *this);
  return os.str();
}

const LiftedDomain::Predicate* LiftedDomain::findPredicate(std::string_view n) const {
  for (const auto& p : predicates)
    if (p.name == n) return &p;
  return nullptr;
}

bool LiftedDomain::isSubtype(const std::string& sub, const std::string& super) const {
  if (sub == super || super == "object") return true;
  std::string cur = sub;
  // Walk the supertype chain; types default to object.
  for (int hop = 0; hop < 64; ++hop) {
    const TypedName* found = nullptr;
    for (const auto& t : types)
      if (t.name == cur) {
        found = &t;
        break;
      }
    if (found == nullptr) return false;
    if (found->type == super) return true;
    if (found->type == "object" || found->type == cur) return false;
    cur = found->type;
  }
  return false;
}

LiftedDomain parse_domain(std::string_view text, const std::string& filename) {
  return Reader(text, filename).readDomain();
}

LiftedProblem parse_problem(std::string_view text, const LiftedDomain& dom,
                            const std::string& filename) {
  return Reader(text, filename).readProblem(dom);
}

std::string serialize_domain(const LiftedDomain& dom) {
  std::ostringstream os;
  os << "(define (domain " << dom.name << ")\n";
  if (!dom.requirements.empty()) {
    std::vector<std::string> reqs = dom.requirements;
    std::sort(reqs.begin(), reqs.end());
    reqs.erase(std::unique(reqs.begin(), reqs.end()), reqs.end());
    os << "  (:requirements";
    for (const auto& r : reqs) os << " " << r;
    os << ")\n";
  }
  if (!dom.types.empty()) {
    std::vector<TypedName> types = dom.types;
    std::sort(types.begin(), types.end(),
              [](const TypedName& a, const TypedName& b) { return a.name < b.name; });
    os << "  (:types ";
    writeTypedList(os, types);
    os << ")\n";
  }
  if (!dom.constants.empty()) {
    std::vector<TypedName> cs = dom.constants;
    std::sort(cs.begin(), cs.end(),
              [](const TypedName& a, const TypedName& b) { return a.name < b.name; });
    os << "  (:constants ";
    writeTypedList(os, cs);
    os << ")\n";
  }
  os << "  (:predicates\n";
  std::vector<LiftedDomain::Predicate> preds = dom.predicates;
  std::sort(preds.begin(), preds.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  for (const auto& p : preds) {
    os << "    (" << p.name;
    if (!p.params.empty()) {
      os << " ";
      writeTypedList(os, p.params);
    }
    os << ")\n";
  }
  os << "  )\n";
  if (dom.hasTotalCost) os << "  (:functions (total-cost))\n";

  std::vector<ActionSchema> actions = dom.actions;
  std::sort(actions.begin(), actions.end(),
            [](const ActionSchema& a, const ActionSchema& b) { return a.name < b.name; });
  for (const auto& a : actions) {
    os << "  (:action " << a.name << "\n";
    os << "    :parameters (";
    writeTypedList(os, a.params);
    os << ")\n";
    os << "    :precondition (and";
    std::vector<Atom> prec = a.precondition;
    std::sort(prec.begin(), prec.end(),
              [](const Atom& x, const Atom& y) { return x.str() < y.str(); });
    for (const auto& at : prec) {
      os << " ";
      writeAtom(os, at);
    }
    std::vector<std::pair<std::string, std::string>> ineqs = a.inequalities;
    std::sort(ineqs.begin(), ineqs.end());
    for (const auto& [x, y] : ineqs) os << " (not (= " << x << " " << y << "))";
    std::vector<Implication> imps = a.implPrecs;
    std::sort(imps.begin(), imps.end(), [](const Implication& x, const Implication& y) {
      return x.guard.str() + x.consequent.str() < y.guard.str() + y.consequent.str();
    });
    for (const auto& imp : imps) {
      os << "\n      (implies ";
      writeAtom(os, imp.guard);
      os << " ";
      writeAtom(os, imp.consequent);
      os << ")";
    }
    os << ")\n";
    os << "    :effect (and";
    std::vector<Effect> effs = a.effects;
    std::stable_sort(effs.begin(), effs.end(), [](const Effect& x, const Effect& y) {
      return x.condition.empty() && !y.condition.empty();
    });
    for (const auto& e : effs) {
      os << "\n      ";
      if (!e.condition.empty()) {
        os << "(when (and";
        for (const auto& c : e.condition) {
          os << " ";
          writeAtom(os, c);
        }
        os << ") ";
      }
      if (e.isDelete) os << "(not ";
      writeAtom(os, e.atom);
      if (e.isDelete) os << ")";
      if (!e.condition.empty()) os << ")";
    }
    if (a.hasExplicitCost) os << "\n      (increase (total-cost) " << a.cost.str() << ")";
    os << ")\n  )\n";
  }
  os << ")\n";
  return os.str();
}

std::string serialize_problem(const LiftedProblem& prob, const LiftedDomain& dom) {
  std::ostringstream os;
  os << "(define (problem " << prob.name << ")\n";
  os << "  (:domain " << prob.domainName << ")\n";
  if (!prob.objects.empty()) {
    std::vector<TypedName> objs = prob.objects;
    std::sort(objs.begin(), objs.end(),
              [](const TypedName& a, const TypedName& b) { return a.name < b.name; });
    os << "  (:objects ";
    writeTypedList(os, objs);
    os << ")\n";
  }
  os << "  (:init";
  std::vector<Atom> init = prob.init;
  std::sort(init.begin(), init.end(),
            [](const Atom& a, const Atom& b) { return a.str() < b.str(); });
  for (const auto& at : init) {
    os << "\n    ";
    writeAtom(os, at);
  }
  if (dom.hasTotalCost) os << "\n    (= (total-cost) 0)";
  os << "\n  )\n";
  os << "  (:goal (and";
  std::vector<Atom> goal = prob.goal;
  std::sort(goal.begin(), goal.end(),
            [](const Atom& a, const Atom& b) { return a.str() < b.str(); });
  for (const auto& at : goal) {
    os << " ";
    writeAtom(os, at);
  }
  os << "))\n";
  if (dom.hasTotalCost || prob.metricMinimizeCost)
    os << "  (:metric minimize (total-cost))\n";
  os << ")\n";
  return os.str();
}

namespace {

template <typename T, typename Key>
std::vector<T> sortedBy(std::vector<T> v, Key key) {
  std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
  return v;
}

std::string atomKey(const Atom& a) { return a.str(); }

bool sameAtomSet(std::vector<Atom> a, std::vector<Atom> b) {
  return sortedBy(std::move(a), atomKey) == sortedBy(std::move(b), atomKey);
}

}  // namespace

bool structurally_equal(const LiftedDomain& a, const LiftedDomain& b) {
  if (a.name != b.name) return false;
  auto nameKey = [](const auto& x) { return x.name; };
  auto pa = sortedBy(a.predicates, nameKey);
  auto pb = sortedBy(b.predicates, nameKey);
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (pa[i].name != pb[i].name || pa[i].params != pb[i].params) return false;
  auto aa = sortedBy(a.actions, nameKey);
  auto ab = sortedBy(b.actions, nameKey);
  if (aa.size() != ab.size()) return false;
  for (std::size_t i = 0; i < aa.size(); ++i) {
    const auto& x = aa[i];
    const auto& y = ab[i];
    if (x.name != y.name || x.params != y.params || x.cost != y.cost) return false;
    if (!sameAtomSet(x.precondition, y.precondition)) return false;
    auto ix = x.inequalities, iy = y.inequalities;
    std::sort(ix.begin(), ix.end());
    std::sort(iy.begin(), iy.end());
    if (ix != iy) return false;
    auto impKey = [](const Implication& im) { return im.guard.str() + "|" + im.consequent.str(); };
    if (sortedBy(x.implPrecs, impKey) != sortedBy(y.implPrecs, impKey)) return false;
    auto effKey = [](const Effect& e) {
      std::string k = e.isDelete ? "d|" : "a|";
      for (const auto& c : sortedBy(e.condition, atomKey)) k += c.str();
      return k + "|" + e.atom.str();
    };
    auto ex = sortedBy(x.effects, effKey);
    auto ey = sortedBy(y.effects, effKey);
    if (ex.size() != ey.size()) return false;
    for (std::size_t j = 0; j < ex.size(); ++j) {
      if (ex[j].isDelete != ey[j].isDelete || ex[j].atom != ey[j].atom) return false;
      if (!sameAtomSet(ex[j].condition, ey[j].condition)) return false;
    }
  }
  return true;
}

bool structurally_equal(const LiftedProblem& a, const LiftedProblem& b) {
  auto nameKey = [](const TypedName& t) { return t.name + "-" + t.type; };
  return a.name == b.name && a.domainName == b.domainName &&
         sortedBy(a.objects, nameKey) == sortedBy(b.objects, nameKey) &&
         sameAtomSet(a.init, b.init) && sameAtomSet(a.goal, b.goal);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace eaplan::pddl
