#ifndef MIA_PS_ALGEBRA_HPP
#define MIA_PS_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mia/boolean.hpp"
#include "mia/core.hpp"
#include "mia/report.hpp"

namespace mia {

enum class OperatorKind { Possibility, Sufficiency };

/// A binary operator stored only on atom pairs. The extension to arbitrary
/// elements is forced: a possibility operator distributes over joins in each
/// argument (so the value at (x, y) is the join over the atom entries below
/// x and y, empty join = 0), a sufficiency operator turns joins into meets
/// (meet over atom entries, empty meet = 1). Every atom table therefore
/// yields a legal normal operator.
class OperatorTable {
 public:
  OperatorTable(OperatorKind kind, int atom_count)
      : kind_(kind),
        n_(atom_count),
        entries_(static_cast<std::size_t>(atom_count) * atom_count, 0) {}

  OperatorKind kind() const { return kind_; }
  int atom_count() const { return n_; }

  std::uint32_t entry(int p, int q) const { return entries_[p * n_ + q]; }
  void set_entry(int p, int q, std::uint32_t bits) { entries_[p * n_ + q] = bits; }

  std::uint32_t extend(std::uint32_t x, std::uint32_t y,
                       std::uint32_t universe) const {
    if (kind_ == OperatorKind::Possibility) {
      std::uint32_t acc = 0;
      for_each_bit(x, [&](int p) {
        for_each_bit(y, [&](int q) { acc |= entry(p, q); });
      });
      return acc;
    }
    std::uint32_t acc = universe;
    for_each_bit(x, [&](int p) {
      for_each_bit(y, [&](int q) { acc &= entry(p, q); });
    });
    return acc;
  }

 private:
  OperatorKind kind_;
  int n_;
  std::vector<std::uint32_t> entries_;
};

/// A Boolean algebra with a binary possibility operator f and a binary
/// sufficiency operator g. Normality f(x,0)=f(0,x)=0, additivity of f,
/// co-normality g(x,0)=g(0,x)=1 and co-additivity of g all hold by the
/// extension rule.
class PSAlgebra {
 public:
  PSAlgebra(BooleanAlgebra base, OperatorTable f, OperatorTable g)
      : base_(std::move(base)), f_(std::move(f)), g_(std::move(g)) {
    if (f_.kind() != OperatorKind::Possibility)
      throw UsageError("f must be a possibility table");
    if (g_.kind() != OperatorKind::Sufficiency)
      throw UsageError("g must be a sufficiency table");
    if (f_.atom_count() != base_.atom_count() ||
        g_.atom_count() != base_.atom_count())
      throw UsageError("operator tables do not match the atom count");
    for (int p = 0; p < base_.atom_count(); ++p)
      for (int q = 0; q < base_.atom_count(); ++q)
        if (f_.entry(p, q) > base_.universe() || g_.entry(p, q) > base_.universe())
          throw UsageError("operator entry outside the element universe");
  }

  const BooleanAlgebra& base() const { return base_; }
  const OperatorTable& f_table() const { return f_; }
  const OperatorTable& g_table() const { return g_; }
  OperatorTable& f_table() { return f_; }
  OperatorTable& g_table() { return g_; }

  Element element(std::uint32_t bits) const { return base_.element(bits); }

  std::uint32_t f_bits(std::uint32_t x, std::uint32_t y) const {
    return f_.extend(x, y, base_.universe());
  }
  std::uint32_t g_bits(std::uint32_t x, std::uint32_t y) const {
    return g_.extend(x, y, base_.universe());
  }

  Element f(const Element& x, const Element& y) const {
    return base_.element(f_bits(x.bits(), y.bits()));
  }
  Element g(const Element& x, const Element& y) const {
    return base_.element(g_bits(x.bits(), y.bits()));
  }

  // Derived operators. u is a binary necessity operator; u1 and d are its
  // unary specializations used by the discriminator checks.
  std::uint32_t fdual_bits(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t U = base_.universe();
    return ~f_bits(~x & U, ~y & U) & U;
  }
  std::uint32_t gstar_bits(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t U = base_.universe();
    return g_bits(~x & U, ~y & U);
  }
  std::uint32_t u_bits(std::uint32_t x, std::uint32_t y) const {
    return fdual_bits(x, y) & gstar_bits(x, y);
  }
  std::uint32_t h_bits(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t U = base_.universe();
    return f_bits(x, y) | (~g_bits(x, y) & U);
  }
  std::uint32_t u1_bits(std::uint32_t x) const { return u_bits(x, 0); }
  std::uint32_t d_bits(std::uint32_t x) const {
    std::uint32_t U = base_.universe();
    return f_bits(x, x) | (~g_bits(x, x) & U);
  }

  Element fdual(const Element& x, const Element& y) const {
    return base_.element(fdual_bits(x.bits(), y.bits()));
  }
  Element gstar(const Element& x, const Element& y) const {
    return base_.element(gstar_bits(x.bits(), y.bits()));
  }
  Element u(const Element& x, const Element& y) const {
    return base_.element(u_bits(x.bits(), y.bits()));
  }
  Element h(const Element& x, const Element& y) const {
    return base_.element(h_bits(x.bits(), y.bits()));
  }
  Element u1(const Element& x) const { return base_.element(u1_bits(x.bits())); }
  Element d(const Element& x) const { return base_.element(d_bits(x.bits())); }

 private:
  BooleanAlgebra base_;
  OperatorTable f_;
  OperatorTable g_;
};

/// Named derived-operator dispatch. u1 and d are unary; passing a second
/// argument to them, or omitting it elsewhere, is a usage error.
inline Element derived(const PSAlgebra& A, const std::string& name,
                       const Element& x, std::optional<Element> y = {}) {
  const bool unary = (name == "u1" || name == "d");
  if (unary && y) throw UsageError(name + " takes one argument");
  if (!unary && !y) throw UsageError(name + " takes two arguments");
  if (name == "fdual") return A.fdual(x, *y);
  if (name == "gstar") return A.gstar(x, *y);
  if (name == "u") return A.u(x, *y);
  if (name == "h") return A.h(x, *y);
  if (name == "u1") return A.u1(x);
  if (name == "d") return A.d(x);
  throw UsageError("unknown derived operator: " + name);
}

/// View of a PS-algebra for the predicate checkers. Elements are indices
/// 0..count-1; for a concrete PSAlgebra the index is the atom-set bit
/// pattern, so ascending index is the lexicographic element order used for
/// witness selection. Image subalgebras of embeddings provide the same
/// interface over world sets.
struct PSAlgebraView {
  const PSAlgebra* A;

  std::uint32_t count() const { return A->base().element_count(); }
  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return A->base().universe(); }
  std::uint32_t join(std::uint32_t x, std::uint32_t y) const { return x | y; }
  std::uint32_t meet(std::uint32_t x, std::uint32_t y) const { return x & y; }
  std::uint32_t complement(std::uint32_t x) const { return ~x & A->base().universe(); }
  bool leq(std::uint32_t x, std::uint32_t y) const { return (x & ~y) == 0; }
  std::uint32_t f(std::uint32_t x, std::uint32_t y) const { return A->f_bits(x, y); }
  std::uint32_t g(std::uint32_t x, std::uint32_t y) const { return A->g_bits(x, y); }
  std::string name(std::uint32_t x) const {
    return A->base().element_name(A->base().element(x));
  }
};

namespace detail {

template <class V>
std::uint32_t view_u(const V& v, std::uint32_t x, std::uint32_t y) {
  return v.meet(v.complement(v.f(v.complement(x), v.complement(y))),
                v.g(v.complement(x), v.complement(y)));
}
template <class V>
std::uint32_t view_u1(const V& v, std::uint32_t x) {
  return view_u(v, x, v.zero());
}
template <class V>
std::uint32_t view_d(const V& v, std::uint32_t x) {
  return v.join(v.f(x, x), v.complement(v.g(x, x)));
}

template <class V, class Body>
PredicateReport quantify1(const V& v, const std::string& id,
                          std::uint64_t budget, Body body) {
  require_within_budget(v.count(), budget, "predicate " + id);
  PredicateReport r{id, true, {}, {}};
  for (std::uint32_t x = 0; x < v.count(); ++x) {
    std::string detail;
    if (!body(x, detail)) {
      r.holds = false;
      r.witness = {v.name(x)};
      r.detail = detail;
      return r;
    }
  }
  return r;
}

template <class V, class Body>
PredicateReport quantify2(const V& v, const std::string& id,
                          std::uint64_t budget, Body body) {
  require_within_budget(std::uint64_t{v.count()} * v.count(), budget,
                        "predicate " + id);
  PredicateReport r{id, true, {}, {}};
  for (std::uint32_t x = 0; x < v.count(); ++x)
    for (std::uint32_t y = 0; y < v.count(); ++y) {
      std::string detail;
      if (!body(x, y, detail)) {
        r.holds = false;
        r.witness = {v.name(x), v.name(y)};
        r.detail = detail;
        return r;
      }
    }
  return r;
}

template <class V, class Body>
PredicateReport quantify3(const V& v, const std::string& id,
                          std::uint64_t budget, Body body) {
  require_within_budget(std::uint64_t{v.count()} * v.count() * v.count(),
                        budget, "predicate " + id);
  PredicateReport r{id, true, {}, {}};
  for (std::uint32_t x = 0; x < v.count(); ++x)
    for (std::uint32_t y = 0; y < v.count(); ++y)
      for (std::uint32_t z = 0; z < v.count(); ++z)
        if (!body(x, y, z)) {
          r.holds = false;
          r.witness = {v.name(x), v.name(y), v.name(z)};
          return r;
        }
  return r;
}

}  // namespace detail

/// Fixed equation suites. sigma is the PS-algebra axiom set plus the five
/// u-equations; sigmaB adds the algebraic betweenness axioms.
inline const std::vector<std::string>& sigma_suite() {
  static const std::vector<std::string> ids = {
      "normality", "additivity", "co-normality", "co-additivity",
      "eq41",      "eq42",       "eq43",         "eq44",
      "eq45"};
  return ids;
}
inline const std::vector<std::string>& sigma_b_suite() {
  static const std::vector<std::string> ids = {
      "normality", "additivity", "co-normality", "co-additivity",
      "eq41",      "eq42",       "eq43",         "eq44",
      "eq45",      "abt0",       "abt1",         "abt1g",
      "abt2",      "abt3"};
  return ids;
}

inline const std::vector<std::string>& algebra_predicate_ids() {
  static const std::vector<std::string> ids = {
      "wMIA",       "dMIA",       "eq41",
      "eq42",       "eq43",       "eq44",
      "eq45",       "discriminator", "dual-discriminator-u1",
      "abt0",       "abt1",       "abt1g",
      "abt2",       "abt3",       "normality",
      "additivity", "co-normality", "co-additivity",
      "u-zero-symmetric", "u-commutative", "u-range-01"};
  return ids;
}

/// Exhaustively check one predicate over all element tuples of a view.
/// Verdicts come with the first violating tuple in ascending element order.
template <class V>
PredicateReport check_view_predicate(const V& v, const std::string& id,
                                     std::uint64_t budget = kDefaultBudget) {
  using detail::quantify1;
  using detail::quantify2;
  using detail::quantify3;
  using detail::view_d;
  using detail::view_u;
  using detail::view_u1;

  if (id == "wMIA")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string& d) {
      if (x == v.zero() || y == v.zero()) return true;
      if (v.leq(v.g(x, y), v.f(x, y))) return true;
      d = "g=" + v.name(v.g(x, y)) + " not below f=" + v.name(v.f(x, y));
      return false;
    });
  if (id == "dMIA")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string& d) {
      if (v.meet(x, y) == v.zero()) return true;
      if (v.leq(v.g(x, y), v.f(x, y))) return true;
      d = "g=" + v.name(v.g(x, y)) + " not below f=" + v.name(v.f(x, y));
      return false;
    });
  if (id == "eq41")
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      return v.leq(view_u1(v, x), x);
    });
  if (id == "eq42")
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      return v.leq(view_u1(v, x), view_u1(v, view_u1(v, x)));
    });
  if (id == "eq43")
    // x <= u(-u(-x,0),0); the inner term is the dual of the unary
    // necessity u(.,0).
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      return v.leq(x, view_u1(v, v.complement(view_u1(v, v.complement(x)))));
    });
  if (id == "eq44")
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      auto uxx = view_u(v, x, x);
      return uxx == view_u1(v, x) && view_u1(v, x) == view_u(v, v.zero(), x);
    });
  if (id == "eq45")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string&) {
      return view_u(v, x, y) ==
             v.join(view_u1(v, x), view_u(v, v.zero(), y));
    });
  if (id == "discriminator")
    return quantify1(v, id, budget, [&](auto x, std::string& d) {
      auto want = (x == v.zero()) ? v.zero() : v.one();
      if (view_d(v, x) == want) return true;
      d = "d=" + v.name(view_d(v, x));
      return false;
    });
  if (id == "dual-discriminator-u1")
    return quantify1(v, id, budget, [&](auto x, std::string& d) {
      auto want = (x == v.one()) ? v.one() : v.zero();
      if (view_u1(v, x) == want) return true;
      d = "u1=" + v.name(view_u1(v, x));
      return false;
    });
  if (id == "abt0")
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      return v.leq(x, v.f(x, x));
    });
  if (id == "abt1")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string&) {
      return v.leq(v.f(x, y), v.f(y, x));
    });
  if (id == "abt1g")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string&) {
      return v.leq(v.g(x, y), v.g(y, x));
    });
  if (id == "abt2")
    return quantify3(v, id, budget, [&](auto x, auto y, auto z) {
      return v.leq(v.meet(y, v.f(x, z)), v.f(v.meet(x, v.f(x, y)), z));
    });
  if (id == "abt3")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string&) {
      return v.leq(v.f(x, v.meet(v.g(x, v.complement(y)), y)), y);
    });
  if (id == "normality")
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      return v.f(x, v.zero()) == v.zero() && v.f(v.zero(), x) == v.zero();
    });
  if (id == "additivity")
    return quantify3(v, id, budget, [&](auto x, auto y, auto z) {
      return v.join(v.f(x, y), v.f(x, z)) == v.f(x, v.join(y, z)) &&
             v.join(v.f(y, x), v.f(z, x)) == v.f(v.join(y, z), x);
    });
  if (id == "co-normality")
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      return v.g(x, v.zero()) == v.one() && v.g(v.zero(), x) == v.one();
    });
  if (id == "co-additivity")
    return quantify3(v, id, budget, [&](auto x, auto y, auto z) {
      return v.meet(v.g(x, y), v.g(x, z)) == v.g(x, v.join(y, z)) &&
             v.meet(v.g(y, x), v.g(z, x)) == v.g(v.join(y, z), x);
    });
  if (id == "u-zero-symmetric")
    return quantify1(v, id, budget, [&](auto x, std::string&) {
      return view_u1(v, x) == view_u(v, v.zero(), x);
    });
  if (id == "u-commutative")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string&) {
      return view_u(v, x, y) == view_u(v, y, x);
    });
  if (id == "u-range-01")
    return quantify2(v, id, budget, [&](auto x, auto y, std::string&) {
      auto uxy = view_u(v, x, y);
      return uxy == v.zero() || uxy == v.one();
    });
  throw UsageError("unknown algebra predicate: " + id);
}

inline PredicateReport check_algebra_predicate(
    const PSAlgebra& A, const std::string& id,
    std::uint64_t budget = kDefaultBudget) {
  return check_view_predicate(PSAlgebraView{&A}, id, budget);
}

/// Congruence-filter test by definition: build theta_F and exhaustively
/// check that it is compatible with the necessity operators f-dual and
/// g-star.
inline bool is_congruence_filter_direct(const PSAlgebra& A, const Filter& F) {
  Congruence theta = theta_of_filter(F);
  const std::uint32_t n = A.base().element_count();
  auto cls = [&](std::uint32_t bits) { return theta.class_of(A.element(bits)); };
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t x2 = 0; x2 < n; ++x2) {
      if (cls(x) != cls(x2)) continue;
      for (std::uint32_t y = 0; y < n; ++y)
        for (std::uint32_t y2 = 0; y2 < n; ++y2) {
          if (cls(y) != cls(y2)) continue;
          if (cls(A.fdual_bits(x, y)) != cls(A.fdual_bits(x2, y2))) return false;
          if (cls(A.gstar_bits(x, y)) != cls(A.gstar_bits(x2, y2))) return false;
        }
    }
  return true;
}

/// Congruence-filter test via the u operator: u(a,0) * u(0,a) must lie in F
/// for every member a of F.
inline bool is_congruence_filter_u(const PSAlgebra& A, const Filter& F) {
  const std::uint32_t n = A.base().element_count();
  for (std::uint32_t a = 0; a < n; ++a) {
    if (!F.contains(A.element(a))) continue;
    std::uint32_t crit = A.u_bits(a, 0) & A.u_bits(0, a);
    if (!F.contains(A.element(crit))) return false;
  }
  return true;
}

/// All principal filters whose induced congruence preserves the derived
/// necessity operators, in generator order.
inline std::vector<Filter> congruence_filters(const PSAlgebra& A) {
  std::vector<Filter> out;
  for (std::uint32_t c = 0; c < A.base().element_count(); ++c) {
    Filter F(A.element(c));
    if (is_congruence_filter_direct(A, F)) out.push_back(F);
  }
  return out;
}

/// Simple: the only congruence filters are the trivial filter and the whole
/// algebra.
inline bool is_simple(const PSAlgebra& A) {
  for (std::uint32_t c = 1; c + 1 < A.base().element_count(); ++c)
    if (is_congruence_filter_direct(A, Filter(A.element(c)))) return false;
  return true;
}

}  // namespace mia

#endif  // MIA_PS_ALGEBRA_HPP
