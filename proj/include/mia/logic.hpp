#ifndef MIA_LOGIC_HPP
#define MIA_LOGIC_HPP

#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mia/core.hpp"
#include "mia/frames.hpp"
#include "mia/mixture.hpp"

namespace mia {

// ---------------------------------------------------------------------------
// Formulas. The evaluator handles exactly the primitives {T, p, ~, &, dia,
// wbox}; every derived connective (F, |, ->, <->, box, wdia, diaU, boxU) is
// expanded away when a formula is built. Nodes are interned, so structural
// equality is pointer equality and per-model evaluation can be memoized by
// node id.
// ---------------------------------------------------------------------------

enum class NodeKind { Top, Var, Not, And, Dia, WBox };

struct Formula {
  NodeKind kind;
  int var = -1;
  const Formula* lhs = nullptr;
  const Formula* rhs = nullptr;
  int id = 0;
};

class FormulaFactory {
 public:
  static FormulaFactory& instance() {
    static FormulaFactory f;
    return f;
  }

  const Formula* top() { return intern({NodeKind::Top, -1, nullptr, nullptr}); }
  const Formula* var(int k) {
    if (k < 0) throw UsageError("negative variable index");
    return intern({NodeKind::Var, k, nullptr, nullptr});
  }
  const Formula* mk_not(const Formula* a) {
    return intern({NodeKind::Not, -1, a, nullptr});
  }
  const Formula* mk_and(const Formula* a, const Formula* b) {
    return intern({NodeKind::And, -1, a, b});
  }
  const Formula* mk_dia(const Formula* a, const Formula* b) {
    return intern({NodeKind::Dia, -1, a, b});
  }
  const Formula* mk_wbox(const Formula* a, const Formula* b) {
    return intern({NodeKind::WBox, -1, a, b});
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }

 private:
  const Formula* intern(Formula f) {
    auto key = std::make_tuple(f.kind, f.var, f.lhs, f.rhs);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    f.id = static_cast<int>(nodes_.size());
    nodes_.push_back(f);
    const Formula* p = &nodes_.back();
    index_.emplace(key, p);
    return p;
  }

  std::deque<Formula> nodes_;
  std::map<std::tuple<NodeKind, int, const Formula*, const Formula*>,
           const Formula*>
      index_;
};

inline const Formula* f_top() { return FormulaFactory::instance().top(); }
inline const Formula* f_var(int k) { return FormulaFactory::instance().var(k); }
inline const Formula* f_not(const Formula* a) {
  return FormulaFactory::instance().mk_not(a);
}
inline const Formula* f_and(const Formula* a, const Formula* b) {
  return FormulaFactory::instance().mk_and(a, b);
}
inline const Formula* f_dia(const Formula* a, const Formula* b) {
  return FormulaFactory::instance().mk_dia(a, b);
}
inline const Formula* f_wbox(const Formula* a, const Formula* b) {
  return FormulaFactory::instance().mk_wbox(a, b);
}

// Derived connectives, expanded at construction time.
inline const Formula* f_bot() { return f_not(f_top()); }
inline const Formula* f_or(const Formula* a, const Formula* b) {
  return f_not(f_and(f_not(a), f_not(b)));
}
inline const Formula* f_imp(const Formula* a, const Formula* b) {
  return f_not(f_and(a, f_not(b)));
}
inline const Formula* f_iff(const Formula* a, const Formula* b) {
  return f_and(f_imp(a, b), f_imp(b, a));
}
inline const Formula* f_box(const Formula* a, const Formula* b) {
  return f_not(f_dia(f_not(a), f_not(b)));
}
inline const Formula* f_wdia(const Formula* a, const Formula* b) {
  return f_not(f_wbox(f_not(a), f_not(b)));
}
/// diaU(a,b) := dia(a,b) | ~wbox(a,b).
inline const Formula* f_diaU(const Formula* a, const Formula* b) {
  return f_or(f_dia(a, b), f_not(f_wbox(a, b)));
}
/// boxU(a,b) := box(a,b) & wbox(~a,~b).
inline const Formula* f_boxU(const Formula* a, const Formula* b) {
  return f_and(f_box(a, b), f_wbox(f_not(a), f_not(b)));
}

/// Canonical text of the normalized (core-primitive) form. Conjunctions are
/// always parenthesized, so parse(render(f)) == f.
inline std::string render(const Formula* f) {
  switch (f->kind) {
    case NodeKind::Top:
      return "T";
    case NodeKind::Var:
      return "p" + std::to_string(f->var);
    case NodeKind::Not:
      return "~" + render(f->lhs);
    case NodeKind::And:
      return "(" + render(f->lhs) + " & " + render(f->rhs) + ")";
    case NodeKind::Dia:
      return "dia(" + render(f->lhs) + ", " + render(f->rhs) + ")";
    case NodeKind::WBox:
      return "wbox(" + render(f->lhs) + ", " + render(f->rhs) + ")";
  }
  throw InternalError("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Parser. Grammar: T F p<k> ~ & | -> <-> dia(,) box(,) wbox(,) wdia(,)
// diaU(,) boxU(,); precedence ~ > & > | > -> > <->, -> and <-> associate to
// the right, & and | to the left; whitespace is insignificant.
// ---------------------------------------------------------------------------

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& text) : text_(text) {}

  const Formula* parse() {
    const Formula* f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) err("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void err(const std::string& msg) const {
    throw UsageError("syntax error at position " + std::to_string(pos_) +
                     ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  const Formula* parse_iff() {
    const Formula* lhs = parse_imp();
    if (eat("<->")) return f_iff(lhs, parse_iff());
    return lhs;
  }

  const Formula* parse_imp() {
    const Formula* lhs = parse_or();
    skip_ws();
    // not <->
    if (text_.compare(pos_, 2, "->") == 0) {
      pos_ += 2;
      return f_imp(lhs, parse_imp());
    }
    return lhs;
  }

  const Formula* parse_or() {
    const Formula* lhs = parse_and();
    while (peek() == '|') {
      ++pos_;
      lhs = f_or(lhs, parse_and());
    }
    return lhs;
  }

  const Formula* parse_and() {
    const Formula* lhs = parse_unary();
    while (peek() == '&') {
      ++pos_;
      lhs = f_and(lhs, parse_unary());
    }
    return lhs;
  }

  const Formula* parse_unary() {
    if (eat("~")) return f_not(parse_unary());
    return parse_primary();
  }

  std::string read_word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  const Formula* parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) err("formula expected");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const Formula* f = parse_iff();
      if (!eat(")")) err("')' expected");
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string w = read_word();
      if (w == "T") return f_top();
      if (w == "F") return f_bot();
      if (w == "dia") return parse_binary(&f_dia);
      if (w == "box") return parse_binary(&f_box);
      if (w == "wbox") return parse_binary(&f_wbox);
      if (w == "wdia") return parse_binary(&f_wdia);
      if (w == "diaU") return parse_binary(&f_diaU);
      if (w == "boxU") return parse_binary(&f_boxU);
      if (w.size() >= 2 && w[0] == 'p') {
        for (std::size_t i = 1; i < w.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(w[i])))
            err("bad variable name '" + w + "'");
        return f_var(std::stoi(w.substr(1)));
      }
      err("unknown token '" + w + "'");
    }
    err(std::string("unexpected character '") + c + "'");
  }

  const Formula* parse_binary(const Formula* (*mk)(const Formula*,
                                                   const Formula*)) {
    if (!eat("(")) err("'(' expected");
    const Formula* a = parse_iff();
    if (!eat(",")) err("',' expected");
    const Formula* b = parse_iff();
    if (!eat(")")) err("')' expected");
    return mk(a, b);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline const Formula* parse_formula(const std::string& text) {
  return detail::FormulaParser(text).parse();
}

// ---------------------------------------------------------------------------
// Models and evaluation.
// ---------------------------------------------------------------------------

/// A frame with a valuation for variables p0..p(k-1). Model frames must be
/// wMIA frames; the check can be bypassed explicitly for counterexample
/// experiments.
struct Model {
  TernaryFrame frame;
  std::vector<std::uint64_t> valuation;  // valuation[k] is the set of p_k

  Model(TernaryFrame f, std::vector<std::uint64_t> val,
        bool require_wmia = true)
      : frame(std::move(f)), valuation(std::move(val)) {
    if (require_wmia && !frame.is_wmia())
      throw UsageError("model frame is not a wMIA frame");
    for (auto v : valuation)
      if (v & ~universe())
        throw UsageError("valuation contains an undeclared world");
  }

  std::uint64_t universe() const {
    int w = frame.world_count();
    return w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
  }
};

/// Memoizing evaluator: each interned node is evaluated at most once per
/// model.
class EvalCache {
 public:
  explicit EvalCache(const Model& m) : M_(&m) {}

  std::uint64_t eval(const Formula* f) {
    if (static_cast<std::size_t>(f->id) >= known_.size()) {
      known_.resize(FormulaFactory::instance().node_count(), 0);
      val_.resize(known_.size(), 0);
    }
    if (known_[f->id]) return val_[f->id];
    std::uint64_t v = 0;
    switch (f->kind) {
      case NodeKind::Top:
        v = M_->universe();
        break;
      case NodeKind::Var:
        if (static_cast<std::size_t>(f->var) >= M_->valuation.size())
          throw UsageError("undeclared variable p" + std::to_string(f->var));
        v = M_->valuation[f->var];
        break;
      case NodeKind::Not:
        v = ~eval(f->lhs) & M_->universe();
        break;
      case NodeKind::And:
        v = eval(f->lhs) & eval(f->rhs);
        break;
      case NodeKind::Dia:
        v = poss_op(M_->frame.R, eval(f->lhs), eval(f->rhs));
        break;
      case NodeKind::WBox:
        v = suff_op(M_->frame.S, eval(f->lhs), eval(f->rhs)) & M_->universe();
        break;
    }
    known_[f->id] = 1;
    val_[f->id] = v;
    return v;
  }

 private:
  const Model* M_;
  std::vector<char> known_;
  std::vector<std::uint64_t> val_;
};

/// The extension of a formula: the set of worlds where it is satisfied.
inline std::uint64_t eval_formula(const Model& M, const Formula* f) {
  return EvalCache(M).eval(f);
}

inline bool globally_true(const Model& M, const Formula* f) {
  return eval_formula(M, f) == M.universe();
}

// ---------------------------------------------------------------------------
// Enumerated formula pools. The pool of depth d over k variables contains
// T, F, the literals p_i and ~p_i, and, for each smaller depth, dia/wbox
// combinations of pool members and their negations. This is the bound used
// wherever "all formulas up to depth d" must be made finite; the bound is an
// artifact parameter, not something the modal language fixes.
// ---------------------------------------------------------------------------

inline std::vector<const Formula*> formula_pool(int vars, int depth,
                                                std::uint64_t budget = kDefaultBudget) {
  std::vector<const Formula*> pool;
  pool.push_back(f_top());
  pool.push_back(f_bot());
  for (int k = 0; k < vars; ++k) {
    pool.push_back(f_var(k));
    pool.push_back(f_not(f_var(k)));
  }
  std::map<const Formula*, bool> seen;
  for (const Formula* f : pool) seen[f] = true;
  for (int d = 0; d < depth; ++d) {
    std::size_t prev = pool.size();
    require_within_budget(4 * static_cast<std::uint64_t>(prev) * prev, budget,
                          "formula pool of depth " + std::to_string(d + 1));
    for (std::size_t i = 0; i < prev; ++i)
      for (std::size_t j = 0; j < prev; ++j) {
        for (const Formula* g :
             {f_dia(pool[i], pool[j]), f_not(f_dia(pool[i], pool[j])),
              f_wbox(pool[i], pool[j]), f_not(f_wbox(pool[i], pool[j]))}) {
          if (!seen[g]) {
            seen[g] = true;
            pool.push_back(g);
          }
        }
      }
  }
  return pool;
}

// ---------------------------------------------------------------------------
// Axiom schemas.
// ---------------------------------------------------------------------------

struct SchemaInfo {
  std::string id;
  int arity;
  int forms;
};

inline const std::vector<SchemaInfo>& axiom_schemas() {
  static const std::vector<SchemaInfo> s = {
      {"M1", 1, 2}, {"M2", 3, 2}, {"M3", 1, 2}, {"M4", 3, 2}, {"CU", 2, 1},
      {"TU", 1, 1}, {"4U", 1, 1}, {"BU", 1, 1}, {"SU", 2, 1}};
  return s;
}

inline const SchemaInfo& schema_info(const std::string& id) {
  for (const auto& s : axiom_schemas())
    if (s.id == id) return s;
  throw UsageError("unknown axiom schema: " + id);
}

/// Build one instance of a schema form from argument formulas.
inline const Formula* schema_instance(const std::string& id, int form,
                                      const std::vector<const Formula*>& a) {
  const SchemaInfo& info = schema_info(id);
  if (static_cast<int>(a.size()) != info.arity || form < 0 ||
      form >= info.forms)
    throw UsageError("bad schema instantiation for " + id);
  if (id == "M1")
    return form == 0 ? f_not(f_dia(f_bot(), a[0])) : f_not(f_dia(a[0], f_bot()));
  if (id == "M2")
    return form == 0
               ? f_iff(f_or(f_dia(a[0], a[1]), f_dia(a[0], a[2])),
                       f_dia(a[0], f_or(a[1], a[2])))
               : f_iff(f_or(f_dia(a[0], a[1]), f_dia(a[2], a[1])),
                       f_dia(f_or(a[0], a[2]), a[1]));
  if (id == "M3") return form == 0 ? f_wbox(f_bot(), a[0]) : f_wbox(a[0], f_bot());
  if (id == "M4")
    return form == 0
               ? f_iff(f_and(f_wbox(a[0], a[1]), f_wbox(a[0], a[2])),
                       f_wbox(a[0], f_or(a[1], a[2])))
               : f_iff(f_and(f_wbox(a[0], a[1]), f_wbox(a[2], a[1])),
                       f_wbox(f_or(a[0], a[2]), a[1]));
  if (id == "CU")
    return f_imp(f_and(f_diaU(a[0], f_top()), f_diaU(a[1], f_top())),
                 f_diaU(a[0], a[1]));
  if (id == "TU") return f_imp(a[0], f_diaU(a[0], f_top()));
  if (id == "4U")
    return f_imp(f_diaU(f_diaU(a[0], f_top()), f_top()),
                 f_diaU(a[0], f_top()));
  if (id == "BU")
    return f_imp(a[0], f_boxU(f_diaU(a[0], f_top()), f_bot()));
  if (id == "SU") return f_imp(f_diaU(a[0], a[1]), f_diaU(a[1], a[0]));
  throw UsageError("unknown axiom schema: " + id);
}

/// All instances of a schema with arguments from the depth-bounded pool, in
/// deterministic order: argument tuples ascend lexicographically by pool
/// index, forms alternate innermost.
inline std::vector<const Formula*> axiom_instances(
    const std::string& id, int vars, int depth,
    std::uint64_t budget = kDefaultBudget) {
  const SchemaInfo& info = schema_info(id);
  std::vector<const Formula*> pool = formula_pool(vars, depth, budget);
  std::uint64_t total = info.forms;
  for (int i = 0; i < info.arity; ++i) total *= pool.size();
  require_within_budget(total, budget, "instances of " + id);

  std::vector<const Formula*> out;
  out.reserve(total);
  std::vector<std::size_t> idx(info.arity, 0);
  for (;;) {
    std::vector<const Formula*> args;
    for (int i = 0; i < info.arity; ++i) args.push_back(pool[idx[i]]);
    for (int form = 0; form < info.forms; ++form)
      out.push_back(schema_instance(id, form, args));
    int i = info.arity - 1;
    while (i >= 0 && ++idx[i] == pool.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validity.
// ---------------------------------------------------------------------------

struct ValidityResult {
  bool valid = true;
  std::vector<std::uint64_t> valuation;  // counter-valuation when invalid
  int world = -1;
};

/// Exhaustive validity of a formula in a frame: every valuation of
/// p0..p(vars-1), every world. The 2^(|W| * vars) valuation space must fit
/// the budget; otherwise the check refuses instead of sampling.
inline ValidityResult valid_in_frame(const TernaryFrame& F, const Formula* f,
                                     int vars,
                                     std::uint64_t budget = kDefaultBudget,
                                     bool require_wmia = true) {
  if (require_wmia && !F.is_wmia())
    throw UsageError("frame is not a wMIA frame (use the bypass to probe "
                     "non-wMIA frames)");
  int w = F.world_count();
  if (static_cast<std::uint64_t>(w) * vars >= 63)
    throw ResourceError("valuation space exceeds 64-bit indexing");
  std::uint64_t count = std::uint64_t{1} << (w * vars);
  require_within_budget(count, budget, "validity check");

  std::uint64_t wmask = (w == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
  for (std::uint64_t vi = 0; vi < count; ++vi) {
    std::vector<std::uint64_t> val(vars);
    for (int k = 0; k < vars; ++k) val[k] = (vi >> (k * w)) & wmask;
    Model M(F, val, /*require_wmia=*/false);
    std::uint64_t ext = eval_formula(M, f);
    if (ext != M.universe()) {
      std::uint64_t missing = M.universe() & ~ext;
      return {false, val, __builtin_ctzll(missing)};
    }
  }
  return {true, {}, -1};
}

// ---------------------------------------------------------------------------
// Soundness.
// ---------------------------------------------------------------------------

struct SoundnessFailure {
  std::string schema;
  int form = 0;
  std::string instance;                  // rendered failing instance
  std::vector<std::uint64_t> valuation;  // of p0..p(vars-1)
  int world = -1;
};

struct SoundnessReport {
  bool all_valid = true;
  std::uint64_t instances_covered = 0;
  std::vector<SoundnessFailure> failures;  // first witness per schema form
};

namespace detail {

/// Semantic axiom-schema checks over extension masks. These mirror the
/// schema builders above; their agreement with formula evaluation is pinned
/// by tests.
struct SchemaSemantics {
  const TernaryFrame* F;
  std::uint64_t U;

  std::uint64_t poss(std::uint64_t x, std::uint64_t y) const {
    return poss_op(F->R, x, y);
  }
  std::uint64_t suff(std::uint64_t x, std::uint64_t y) const {
    return suff_op(F->S, x, y) & U;
  }
  std::uint64_t diaU(std::uint64_t x, std::uint64_t y) const {
    return poss(x, y) | (U & ~suff(x, y));
  }
  std::uint64_t boxU(std::uint64_t x, std::uint64_t y) const {
    return (U & ~poss(U & ~x, U & ~y)) & suff(U & ~x, U & ~y);
  }

  /// The set of worlds where the instance FAILS (empty = valid).
  std::uint64_t violations(const std::string& id, int form,
                           const std::vector<std::uint64_t>& a) const {
    auto neq = [&](std::uint64_t l, std::uint64_t r) { return l ^ r; };
    if (id == "M1") return form == 0 ? poss(0, a[0]) : poss(a[0], 0);
    if (id == "M2")
      return form == 0
                 ? neq(poss(a[0], a[1]) | poss(a[0], a[2]),
                       poss(a[0], a[1] | a[2]))
                 : neq(poss(a[0], a[1]) | poss(a[2], a[1]),
                       poss(a[0] | a[2], a[1]));
    if (id == "M3") return U & ~(form == 0 ? suff(0, a[0]) : suff(a[0], 0));
    if (id == "M4")
      return form == 0
                 ? neq(suff(a[0], a[1]) & suff(a[0], a[2]),
                       suff(a[0], a[1] | a[2]))
                 : neq(suff(a[0], a[1]) & suff(a[2], a[1]),
                       suff(a[0] | a[2], a[1]));
    if (id == "CU")
      return diaU(a[0], U) & diaU(a[1], U) & ~diaU(a[0], a[1]);
    if (id == "TU") return a[0] & ~diaU(a[0], U);
    if (id == "4U") return diaU(diaU(a[0], U), U) & ~diaU(a[0], U);
    if (id == "BU") return a[0] & ~boxU(diaU(a[0], U), 0);
    if (id == "SU") return diaU(a[0], a[1]) & ~diaU(a[1], a[0]);
    throw UsageError("unknown axiom schema: " + id);
  }
};

}  // namespace detail

/// Check every instance of every K# axiom schema (plus the derived SU) whose
/// arguments come from the depth-bounded pool, over every valuation of the
/// variable pool. Because an instance's truth at a world depends only on the
/// extensions of its arguments, instances are checked per valuation on the
/// distinct extensions realized by the pool; this covers exactly the same
/// instance set as literal enumeration, which the tests confirm on small
/// cases.
inline SoundnessReport soundness_report(const TernaryFrame& F, int depth,
                                        int vars,
                                        std::uint64_t budget = kDefaultBudget,
                                        bool require_wmia = true) {
  if (require_wmia && !F.is_wmia())
    throw UsageError("frame is not a wMIA frame (use the bypass to probe "
                     "non-wMIA frames)");
  int w = F.world_count();
  if (static_cast<std::uint64_t>(w) * vars >= 63)
    throw ResourceError("valuation space exceeds 64-bit indexing");
  std::uint64_t count = std::uint64_t{1} << (w * vars);
  require_within_budget(count, budget, "soundness valuation space");
  std::vector<const Formula*> pool = formula_pool(vars, depth, budget);

  SoundnessReport report;
  std::map<std::pair<std::string, int>, bool> failed_already;
  std::uint64_t wmask = (w == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
  detail::SchemaSemantics sem{&F, wmask};

  for (std::uint64_t vi = 0; vi < count; ++vi) {
    std::vector<std::uint64_t> val(vars);
    for (int k = 0; k < vars; ++k) val[k] = (vi >> (k * w)) & wmask;
    Model M(F, val, /*require_wmia=*/false);
    EvalCache cache(M);

    // Distinct extensions realized by the pool, with a representative
    // formula each (first in pool order).
    std::vector<std::uint64_t> exts;
    std::vector<const Formula*> reps;
    std::map<std::uint64_t, bool> seen;
    for (const Formula* f : pool) {
      std::uint64_t e = cache.eval(f);
      if (!seen[e]) {
        seen[e] = true;
        exts.push_back(e);
        reps.push_back(f);
      }
    }

    for (const SchemaInfo& s : axiom_schemas()) {
      std::vector<std::size_t> idx(s.arity, 0);
      for (;;) {
        std::vector<std::uint64_t> args(s.arity);
        for (int i = 0; i < s.arity; ++i) args[i] = exts[idx[i]];
        for (int form = 0; form < s.forms; ++form) {
          std::uint64_t bad = sem.violations(s.id, form, args);
          if (bad && !failed_already[{s.id, form}]) {
            failed_already[{s.id, form}] = true;
            report.all_valid = false;
            std::vector<const Formula*> rep_args(s.arity);
            for (int i = 0; i < s.arity; ++i) rep_args[i] = reps[idx[i]];
            report.failures.push_back(
                {s.id, form, render(schema_instance(s.id, form, rep_args)),
                 val, __builtin_ctzll(bad)});
          }
        }
        int i = s.arity - 1;
        while (i >= 0 && ++idx[i] == exts.size()) idx[i--] = 0;
        if (i < 0) break;
      }
    }
  }

  // Instances covered per schema: forms * |pool|^arity, summed.
  for (const SchemaInfo& s : axiom_schemas()) {
    std::uint64_t t = s.forms;
    for (int i = 0; i < s.arity; ++i) t *= pool.size();
    report.instances_covered += t;
  }
  return report;
}

// ---------------------------------------------------------------------------
// The underline model and modal equivalence.
// ---------------------------------------------------------------------------

/// The special model of a wMIA model: the frame is the special frame of the
/// doubled frame (one relation, R = S), and each variable holds at a copy
/// exactly when it holds at the original.
inline Model underline_model(const Model& M) {
  TernaryFrame sf = special_frame(M.frame);
  int n = M.frame.world_count();
  std::vector<std::uint64_t> val;
  val.reserve(M.valuation.size());
  for (std::uint64_t v : M.valuation) val.push_back(v | (v << n));
  return Model(std::move(sf), std::move(val));
}

struct EquivReport {
  bool equivalent = true;
  const Formula* witness = nullptr;
  bool true_in_first = false;
  bool true_in_second = false;
  std::size_t formulas_checked = 0;
};

/// Compare global truth (truth at every world) of each formula in the set.
inline EquivReport modal_equiv(const Model& M1, const Model& M2,
                               const std::vector<const Formula*>& formulas) {
  EquivReport r;
  EvalCache c1(M1), c2(M2);
  for (const Formula* f : formulas) {
    ++r.formulas_checked;
    bool t1 = c1.eval(f) == M1.universe();
    bool t2 = c2.eval(f) == M2.universe();
    if (t1 != t2) {
      r.equivalent = false;
      r.witness = f;
      r.true_in_first = t1;
      r.true_in_second = t2;
      return r;
    }
  }
  return r;
}

}  // namespace mia

#endif  // MIA_LOGIC_HPP
