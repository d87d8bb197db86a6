#ifndef MIA_FRAMES_HPP
#define MIA_FRAMES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mia/core.hpp"
#include "mia/ps_algebra.hpp"
#include "mia/report.hpp"

namespace mia {

// Triples are (left, middle, right) and the evaluation world sits in the
// MIDDLE coordinate: R(x, z, y) supports z when checking <R>(X, Y), exactly
// as in the set definition { z : (X x {z} x Y) meets R }. Getting this wrong
// is the easiest mistake to make in this code base; every loop below follows
// the middle convention.
struct Triple {
  int a, b, c;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// A world of a frame. Copies produced by the doubling construction carry a
/// prime flag and render with a trailing prime, e.g. "x'".
struct World {
  std::string base;
  bool prime = false;

  std::string name() const { return prime ? base + "'" : base; }
  friend bool operator==(const World&, const World&) = default;
};

/// A ternary relation over a fixed world count: an insertion-ordered,
/// duplicate-free triple sequence plus a constant-time membership index.
/// Witnesses of the frame predicates follow the stored order, so frames
/// built by the copying construction report witnesses in cell order.
class Relation {
 public:
  Relation() : w_(0) {}
  explicit Relation(int world_count)
      : w_(world_count),
        member_(static_cast<std::size_t>(world_count) * world_count *
                world_count) {}

  int world_count() const { return w_; }
  std::size_t index(const Triple& t) const {
    return (static_cast<std::size_t>(t.a) * w_ + t.b) * w_ + t.c;
  }
  Triple triple_at(std::size_t idx) const {
    int c = static_cast<int>(idx % w_);
    int b = static_cast<int>((idx / w_) % w_);
    int a = static_cast<int>(idx / (static_cast<std::size_t>(w_) * w_));
    return {a, b, c};
  }

  bool contains(const Triple& t) const { return member_.test(index(t)); }
  bool contains(int a, int b, int c) const { return contains({a, b, c}); }

  void insert(const Triple& t) {
    if (t.a < 0 || t.a >= w_ || t.b < 0 || t.b >= w_ || t.c < 0 || t.c >= w_)
      throw UsageError("triple coordinate is not a declared world");
    if (!member_.test(index(t))) {
      member_.set(index(t));
      seq_.push_back(t);
    }
  }

  const std::vector<Triple>& triples() const { return seq_; }
  const DynBitset& mask() const { return member_; }
  std::size_t size() const { return seq_.size(); }

  /// Set-equality (ignores stored order).
  friend bool operator==(const Relation& x, const Relation& y) {
    return x.w_ == y.w_ && x.member_ == y.member_;
  }

 private:
  int w_;
  std::vector<Triple> seq_;
  DynBitset member_;
};

/// A frame: a nonempty world list with two ternary relations R and S.
/// Frames produced by the special-frame construction have R = S and carry
/// the special tag.
struct TernaryFrame {
  std::vector<World> worlds;
  Relation R, S;
  bool special = false;

  TernaryFrame(std::vector<World> ws, Relation r, Relation s,
               bool special_tag = false)
      : worlds(std::move(ws)), R(std::move(r)), S(std::move(s)),
        special(special_tag) {
    if (worlds.empty()) throw UsageError("a frame needs at least one world");
    if (worlds.size() > 64) throw UsageError("at most 64 worlds are supported");
    int n = static_cast<int>(worlds.size());
    if (R.world_count() != n || S.world_count() != n)
      throw UsageError("relation world count does not match the frame");
    std::map<std::string, int> seen;
    for (int i = 0; i < n; ++i)
      if (!seen.emplace(worlds[i].name(), i).second)
        throw UsageError("duplicate world name: " + worlds[i].name());
  }

  static TernaryFrame make(std::vector<std::string> names,
                           std::vector<Triple> r, std::vector<Triple> s) {
    std::vector<World> ws;
    ws.reserve(names.size());
    for (auto& n : names) ws.push_back(parse_world(n));
    Relation R(static_cast<int>(ws.size())), S(static_cast<int>(ws.size()));
    for (const auto& t : r) R.insert(t);
    for (const auto& t : s) S.insert(t);
    return TernaryFrame(std::move(ws), std::move(R), std::move(S));
  }

  /// World names with a trailing prime reload as copies.
  static World parse_world(const std::string& name) {
    if (name.size() > 1 && name.back() == '\'')
      return World{name.substr(0, name.size() - 1), true};
    return World{name, false};
  }

  int world_count() const { return static_cast<int>(worlds.size()); }
  const std::string world_name(int i) const { return worlds[i].name(); }
  int world_index(const std::string& name) const {
    for (int i = 0; i < world_count(); ++i)
      if (worlds[i].name() == name) return i;
    throw UsageError("unknown world: " + name);
  }

  std::string triple_name(const Triple& t) const {
    return "(" + world_name(t.a) + "," + world_name(t.b) + "," +
           world_name(t.c) + ")";
  }

  bool is_wmia() const { return S.mask().is_subset_of(R.mask()); }
};

/// <R>(X, Y): worlds z such that some (x, z, y) with x in X, y in Y lies in
/// the relation. World sets are bitmasks over the frame's world order.
inline std::uint64_t poss_op(const Relation& rel, std::uint64_t X,
                             std::uint64_t Y) {
  std::uint64_t out = 0;
  for (const Triple& t : rel.triples())
    if ((X >> t.a) & 1 && (Y >> t.c) & 1) out |= std::uint64_t{1} << t.b;
  return out;
}

/// [[S]](X, Y): worlds z with X x {z} x Y entirely inside the relation.
inline std::uint64_t suff_op(const Relation& rel, std::uint64_t X,
                             std::uint64_t Y) {
  int w = rel.world_count();
  std::uint64_t out = 0;
  for (int z = 0; z < w; ++z) {
    bool all = true;
    for (int x = 0; x < w && all; ++x) {
      if (!((X >> x) & 1)) continue;
      for (int y = 0; y < w; ++y)
        if ((Y >> y) & 1 && !rel.contains(x, z, y)) {
          all = false;
          break;
        }
    }
    if (all) out |= std::uint64_t{1} << z;
  }
  return out;
}

inline const std::vector<std::string>& frame_predicate_ids() {
  static const std::vector<std::string> ids = {
      "bt0", "bt1", "bt2", "bt3", "btw", "bt2s", "t1", "t2", "t3", "wmia"};
  return ids;
}

/// Check one ternary-relation property of T (worlds taken from the frame);
/// the wmia id ignores T and checks S subset-of R. Premise-driven laws scan
/// T in stored order and report the first violating tuple.
inline PredicateReport check_frame_property(const TernaryFrame& F,
                                            const Relation& T,
                                            const std::string& id) {
  PredicateReport r{id, true, {}, {}};
  auto fail = [&](std::vector<std::string> witness, std::string detail = {}) {
    r.holds = false;
    r.witness = std::move(witness);
    r.detail = std::move(detail);
  };

  if (id == "bt0" || id == "t1") {
    for (int a = 0; a < F.world_count(); ++a)
      if (!T.contains(a, a, a)) {
        fail({F.world_name(a)}, "missing " + F.triple_name({a, a, a}));
        return r;
      }
    return r;
  }
  if (id == "bt1" || id == "t2") {
    for (const Triple& t : T.triples())
      if (!T.contains(t.c, t.b, t.a)) {
        fail({F.triple_name(t)},
             "missing " + F.triple_name({t.c, t.b, t.a}));
        return r;
      }
    return r;
  }
  if (id == "bt2") {
    for (const Triple& t : T.triples())
      if (!T.contains(t.a, t.a, t.b)) {
        fail({F.triple_name(t)},
             "missing " + F.triple_name({t.a, t.a, t.b}));
        return r;
      }
    return r;
  }
  if (id == "bt3") {
    for (const Triple& t : T.triples())
      if (t.b != t.c && T.contains(t.a, t.c, t.b)) {
        fail({F.triple_name(t), F.triple_name({t.a, t.c, t.b})},
             F.world_name(t.b) + " != " + F.world_name(t.c));
        return r;
      }
    return r;
  }
  if (id == "btw") {
    for (const Triple& t : T.triples())
      if (t.a == t.c && t.a != t.b) {
        fail({F.triple_name(t)});
        return r;
      }
    return r;
  }
  if (id == "bt2s") {
    for (int a = 0; a < F.world_count(); ++a)
      for (int b = 0; b < F.world_count(); ++b)
        if (!T.contains(a, a, b)) {
          fail({F.world_name(a), F.world_name(b)},
               "missing " + F.triple_name({a, a, b}));
          return r;
        }
    return r;
  }
  if (id == "t3") {
    // Three premises sharing the middle world force the conclusion on every
    // triple over the left ends and every triple over the right ends.
    std::vector<std::vector<Triple>> by_middle(F.world_count());
    for (const Triple& t : T.triples()) by_middle[t.b].push_back(t);
    for (const auto& group : by_middle)
      for (const Triple& t1 : group)
        for (const Triple& t2 : group)
          for (const Triple& t3 : group) {
            const int xs[3] = {t1.a, t2.a, t3.a};
            const int zs[3] = {t1.c, t2.c, t3.c};
            for (const int* side : {xs, zs})
              for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                  for (int k = 0; k < 3; ++k)
                    if (!T.contains(side[i], side[j], side[k])) {
                      fail({F.triple_name(t1), F.triple_name(t2),
                            F.triple_name(t3)},
                           "missing " +
                               F.triple_name({side[i], side[j], side[k]}));
                      return r;
                    }
          }
    return r;
  }
  if (id == "wmia") {
    for (const Triple& t : F.S.triples())
      if (!F.R.contains(t)) {
        fail({F.triple_name(t)}, "S triple outside R");
        return r;
      }
    return r;
  }
  throw UsageError("unknown frame predicate: " + id);
}

/// The full complex algebra of a frame: one atom per world, f and g acting
/// as <R> and [[S]]. The atom tables determine the operators; the extension
/// agrees with the set definitions on all pairs.
inline PSAlgebra complex_algebra(const TernaryFrame& F) {
  int w = F.world_count();
  if (w > 16)
    throw UsageError("complex algebra limited to 16 worlds");
  std::vector<std::string> atoms;
  atoms.reserve(w);
  for (int i = 0; i < w; ++i) atoms.push_back(F.world_name(i));
  OperatorTable f(OperatorKind::Possibility, w);
  OperatorTable g(OperatorKind::Sufficiency, w);
  for (int p = 0; p < w; ++p)
    for (int q = 0; q < w; ++q) {
      std::uint32_t fv = 0, gv = 0;
      for (int z = 0; z < w; ++z) {
        if (F.R.contains(p, z, q)) fv |= 1u << z;
        if (F.S.contains(p, z, q)) gv |= 1u << z;
      }
      f.set_entry(p, q, fv);
      g.set_entry(p, q, gv);
    }
  return PSAlgebra(BooleanAlgebra(std::move(atoms)), std::move(f),
                   std::move(g));
}

/// The canonical frame: worlds are the ultrafilters of the base algebra
/// (all principal, named "u_<atom>"), with
///   R_f(u1,u2,u3)  iff  f[u1 x u3] subset-of u2,
///   S_g(u1,u2,u3)  iff  g[u1 x u3] meets u2.
/// Since f is isotone and g antitone, both conditions reduce to the value on
/// the generating atoms: q <= f(p, r), resp. q <= g(p, r). The naive
/// quantification over whole ultrafilters is kept in the tests as an oracle.
inline TernaryFrame canonical_frame(const PSAlgebra& A) {
  int n = A.base().atom_count();
  std::vector<World> worlds;
  worlds.reserve(n);
  for (int i = 0; i < n; ++i)
    worlds.push_back(World{"u_" + A.base().atom_name(i), false});
  Relation R(n), S(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        std::uint32_t qa = 1u << q;
        if ((qa & ~A.f_bits(1u << p, 1u << r)) == 0) R.insert({p, q, r});
        if ((qa & ~A.g_bits(1u << p, 1u << r)) == 0) S.insert({p, q, r});
      }
  return TernaryFrame(std::move(worlds), std::move(R), std::move(S));
}

/// T_h over the ultrafilters, where h(a,b) = f(a,b) + -g(a,b). The lemma
/// T_h = R_f union -S_g is re-verified on every call rather than assumed.
inline Relation t_relation(const PSAlgebra& A) {
  int n = A.base().atom_count();
  Relation T(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        if (((1u << q) & ~A.h_bits(1u << p, 1u << r)) == 0)
          T.insert({p, q, r});

  TernaryFrame cf = canonical_frame(A);
  DynBitset expect = cf.R.mask() | cf.S.mask().complemented();
  if (T.mask() != expect)
    throw InternalError("T_h does not equal R_f union -S_g");
  return T;
}

/// A verified frame embedding: world map plus the outcome of the injectivity
/// and relation-preservation checks.
struct FrameEmbedding {
  TernaryFrame target;
  std::vector<int> world_map;
  bool injective = false;
  bool r_preserved = false;
  bool s_preserved = false;

  bool ok() const { return injective && r_preserved && s_preserved; }
};

/// Embed a wMIA frame into the canonical frame of its complex algebra via
/// w -> the principal ultrafilter at the atom {w}. Both relations must be
/// preserved in both directions on the image; a failure is an internal
/// error, since the construction guarantees it.
inline FrameEmbedding embed_frame_into_canonical_of_complex(
    const TernaryFrame& F) {
  if (!F.is_wmia())
    throw UsageError("frame is not a wMIA frame (S must be a subset of R)");
  TernaryFrame target = canonical_frame(complex_algebra(F));
  // Cm atoms follow the world order, so the ultrafilter of atom {w} is
  // target world w.
  std::vector<int> map(F.world_count());
  for (int i = 0; i < F.world_count(); ++i) map[i] = i;

  FrameEmbedding e{std::move(target), std::move(map), true, true, true};
  for (int i = 0; i < F.world_count(); ++i)
    for (int j = 0; j < i; ++j)
      if (e.world_map[i] == e.world_map[j]) e.injective = false;
  int w = F.world_count();
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      for (int c = 0; c < w; ++c) {
        Triple img{e.world_map[a], e.world_map[b], e.world_map[c]};
        if (F.R.contains(a, b, c) != e.target.R.contains(img))
          e.r_preserved = false;
        if (F.S.contains(a, b, c) != e.target.S.contains(img))
          e.s_preserved = false;
      }
  if (!e.ok())
    throw InternalError("frame embedding verification failed");
  return e;
}

}  // namespace mia

#endif  // MIA_FRAMES_HPP
