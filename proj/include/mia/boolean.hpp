#ifndef MIA_BOOLEAN_HPP
#define MIA_BOOLEAN_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mia/core.hpp"

namespace mia {

class BooleanAlgebra;

/// An element of a finite Boolean algebra, stored as the set of atoms below
/// it. Elements remember their algebra; combining elements of different
/// algebra objects is a usage error.
class Element {
 public:
  Element() = default;
  Element(const BooleanAlgebra* alg, std::uint32_t bits)
      : alg_(alg), bits_(bits) {}

  std::uint32_t bits() const { return bits_; }
  const BooleanAlgebra* algebra() const { return alg_; }

  friend bool operator==(const Element& a, const Element& b) {
    a.check_same(b);
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const Element& a, const Element& b) {
    return !(a == b);
  }

  Element operator+(const Element& o) const {  // join
    check_same(o);
    return Element(alg_, bits_ | o.bits_);
  }
  Element operator*(const Element& o) const {  // meet
    check_same(o);
    return Element(alg_, bits_ & o.bits_);
  }
  Element operator-() const;  // complement

  /// Lattice order: every atom of *this is an atom of o.
  bool leq(const Element& o) const {
    check_same(o);
    return (bits_ & ~o.bits_) == 0;
  }

  void check_same(const Element& o) const {
    if (alg_ != o.alg_)
      throw UsageError("elements belong to different algebras");
  }

 private:
  const BooleanAlgebra* alg_ = nullptr;
  std::uint32_t bits_ = 0;
};

/// A finite Boolean algebra given by its atoms. The element universe is the
/// full powerset of the atom set; lattice operations are set operations.
/// Atom identifiers are strings in I/O and indices internally; the declared
/// order defines the index order.
class BooleanAlgebra {
 public:
  explicit BooleanAlgebra(std::vector<std::string> atoms)
      : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw UsageError("an algebra needs at least one atom");
    if (atoms_.size() > 16)
      throw UsageError("at most 16 atoms are supported");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (!index_.emplace(atoms_[i], static_cast<int>(i)).second)
        throw UsageError("duplicate atom name: " + atoms_[i]);
    }
  }

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  std::uint32_t element_count() const { return 1u << atoms_.size(); }
  std::uint32_t universe() const { return element_count() - 1; }

  const std::vector<std::string>& atom_names() const { return atoms_; }
  const std::string& atom_name(int i) const { return atoms_[i]; }
  int atom_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UsageError("unknown atom: " + name);
    return it->second;
  }

  Element element(std::uint32_t bits) const {
    if (bits > universe()) throw UsageError("element outside the universe");
    return Element(this, bits);
  }
  Element zero() const { return Element(this, 0); }
  Element one() const { return Element(this, universe()); }
  Element atom(int i) const { return Element(this, 1u << i); }

  Element complement(const Element& x) const {
    return Element(this, ~x.bits() & universe());
  }

  /// Render an element as its sorted atom-name list, e.g. "[a,b]".
  std::string element_name(const Element& x) const {
    std::string out = "[";
    bool first = true;
    for_each_bit(x.bits(), [&](int i) {
      if (!first) out += ',';
      out += atoms_[i];
      first = false;
    });
    out += ']';
    return out;
  }

 private:
  std::vector<std::string> atoms_;
  std::map<std::string, int> index_;
};

inline Element Element::operator-() const {
  return alg_->complement(*this);
}

/// Symmetric sum x*y + -(x+y): the complement of the symmetric difference.
/// Equals 1 exactly when x = y.
inline Element symmetric_sum(const Element& x, const Element& y) {
  return x * y + -(x + y);
}

/// A filter of a finite Boolean algebra. Every filter here is principal, so
/// only the generator is stored; membership is generator <= x.
class Filter {
 public:
  explicit Filter(Element generator) : gen_(generator) {}

  /// Normalize an arbitrary nonempty member list to its principal generator
  /// (the meet of the members).
  static Filter from_members(const std::vector<Element>& members) {
    if (members.empty()) throw UsageError("a filter needs at least one member");
    Element g = members.front();
    for (const auto& m : members) g = g * m;
    return Filter(g);
  }

  const Element& generator() const { return gen_; }
  bool contains(const Element& x) const { return gen_.leq(x); }

  bool is_trivial() const { return gen_ == gen_.algebra()->one(); }
  bool is_whole_algebra() const { return gen_ == gen_.algebra()->zero(); }
  /// Proper and maximal, i.e. generated by an atom.
  bool is_ultrafilter() const { return popcount32(gen_.bits()) == 1; }

  std::vector<Element> members() const {
    const BooleanAlgebra& alg = *gen_.algebra();
    std::vector<Element> out;
    for (std::uint32_t x = 0; x < alg.element_count(); ++x)
      if (contains(alg.element(x))) out.push_back(alg.element(x));
    return out;
  }

  friend bool operator==(const Filter& a, const Filter& b) {
    return a.gen_ == b.gen_;
  }

 private:
  Element gen_;
};

/// A congruence as a partition of the element universe. class_of maps each
/// element (by bit pattern) to its class id; classes are numbered by their
/// smallest member.
class Congruence {
 public:
  Congruence(const BooleanAlgebra* alg, std::vector<int> class_of)
      : alg_(alg), class_of_(std::move(class_of)) {
    int next = 0;
    std::map<int, int> renumber;
    for (std::size_t x = 0; x < class_of_.size(); ++x) {
      auto [it, fresh] = renumber.emplace(class_of_[x], next);
      if (fresh) ++next;
      class_of_[x] = it->second;
    }
    classes_.resize(next);
    for (std::size_t x = 0; x < class_of_.size(); ++x)
      classes_[class_of_[x]].push_back(static_cast<std::uint32_t>(x));
  }

  const BooleanAlgebra* algebra() const { return alg_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  int class_of(const Element& x) const { return class_of_[x.bits()]; }
  bool related(const Element& x, const Element& y) const {
    return class_of(x) == class_of(y);
  }
  const std::vector<std::vector<std::uint32_t>>& classes() const {
    return classes_;
  }

  bool is_identity() const {
    return classes_.size() == alg_->element_count();
  }
  bool is_universal() const { return classes_.size() == 1; }

  /// Exhaustively check compatibility with +, * and -.
  bool is_boolean_congruence() const {
    const std::uint32_t n = alg_->element_count();
    for (std::uint32_t x = 0; x < n; ++x) {
      std::uint32_t cx = ~x & alg_->universe();
      for (std::uint32_t y = 0; y < n; ++y) {
        if (class_of_[x] != class_of_[y]) continue;
        std::uint32_t cy = ~y & alg_->universe();
        if (class_of_[cx] != class_of_[cy]) return false;
        for (std::uint32_t z = 0; z < n; ++z) {
          if (class_of_[x | z] != class_of_[y | z]) return false;
          if (class_of_[x & z] != class_of_[y & z]) return false;
        }
      }
    }
    return true;
  }

  bool operator==(const Congruence& o) const {
    return class_of_ == o.class_of_;
  }

 private:
  const BooleanAlgebra* alg_;
  std::vector<int> class_of_;
  std::vector<std::vector<std::uint32_t>> classes_;
};

/// The Boolean congruence induced by a filter: x ~ y iff the symmetric sum
/// x nabla y lies in F. Equivalently, x and y agree on every atom of the
/// generator.
inline Congruence theta_of_filter(const Filter& F) {
  const BooleanAlgebra& alg = *F.generator().algebra();
  std::vector<int> class_of(alg.element_count());
  for (std::uint32_t x = 0; x < alg.element_count(); ++x)
    class_of[x] = static_cast<int>(x & F.generator().bits());
  return Congruence(&alg, std::move(class_of));
}

/// The filter recovered from a congruence: the class of 1, normalized to its
/// principal generator. Round trip with theta_of_filter is the identity.
inline Filter filter_of_theta(const Congruence& theta) {
  const BooleanAlgebra& alg = *theta.algebra();
  std::vector<Element> cls;
  for (std::uint32_t x = 0; x < alg.element_count(); ++x)
    if (theta.related(alg.element(x), alg.one())) cls.push_back(alg.element(x));
  return Filter::from_members(cls);
}

/// All ultrafilters: one principal filter per atom, in atom order.
inline std::vector<Filter> ultrafilters(const BooleanAlgebra& alg) {
  std::vector<Filter> out;
  out.reserve(alg.atom_count());
  for (int i = 0; i < alg.atom_count(); ++i) out.emplace_back(alg.atom(i));
  return out;
}

}  // namespace mia

#endif  // MIA_BOOLEAN_HPP
