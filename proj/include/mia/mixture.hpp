#ifndef MIA_MIXTURE_HPP
#define MIA_MIXTURE_HPP

#include <string>
#include <vector>

#include "mia/core.hpp"
#include "mia/frames.hpp"

namespace mia {

namespace detail {

inline void require_undoubled(const TernaryFrame& F) {
  for (const World& w : F.worlds)
    if (w.prime)
      throw UsageError("frame already contains copies; iterated copying is "
                       "not supported");
}

// Tag patterns of the eight variants of a cell, in the order the variants
// are listed for the construction: the triple itself, the three one-prime
// variants, the three two-prime variants, the full copy.
inline constexpr int kCellTags[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};

}  // namespace detail

/// Worlds of the doubled frame: the originals followed by their copies, so
/// the copy of world i is world i + n.
inline std::vector<World> doubled_worlds(const TernaryFrame& F) {
  detail::require_undoubled(F);
  std::vector<World> ws = F.worlds;
  for (const World& w : F.worlds) ws.push_back(World{w.base, true});
  return ws;
}

/// Tag erasure: j maps a world of the doubled frame to its original.
inline int j_world(int world, int base_count) {
  return world < base_count ? world : world - base_count;
}
inline Triple j_project(const Triple& t, int base_count) {
  return {j_world(t.a, base_count), j_world(t.b, base_count),
          j_world(t.c, base_count)};
}

/// Pure: all three coordinates original, or all three copies.
inline bool is_pure(const Triple& t, int base_count) {
  bool ta = t.a >= base_count, tb = t.b >= base_count, tc = t.c >= base_count;
  return ta == tb && tb == tc;
}

/// The cell of a base triple: its eight tag variants in the doubled frame.
inline std::vector<Triple> cell(const Triple& base, int base_count) {
  std::vector<Triple> out;
  out.reserve(8);
  for (const auto& tag : detail::kCellTags)
    out.push_back({base.a + tag[0] * base_count, base.b + tag[1] * base_count,
                   base.c + tag[2] * base_count});
  return out;
}

/// The disjoint union of a frame with its isomorphic copy.
inline TernaryFrame double_frame(const TernaryFrame& F) {
  int n = F.world_count();
  std::vector<World> ws = doubled_worlds(F);
  Relation R(2 * n), S(2 * n);
  for (const Triple& t : F.R.triples()) R.insert(t);
  for (const Triple& t : F.R.triples()) R.insert({t.a + n, t.b + n, t.c + n});
  for (const Triple& t : F.S.triples()) S.insert(t);
  for (const Triple& t : F.S.triples()) S.insert({t.a + n, t.b + n, t.c + n});
  return TernaryFrame(std::move(ws), std::move(R), std::move(S));
}

/// The mixture m(P): the union of the cells of the (j-projected) triples of
/// P. P must consist of pure triples of the doubled frame of `base`; triples
/// over the base frame's own indices are pure by definition.
inline Relation mixture_rel(const TernaryFrame& base,
                            const std::vector<Triple>& P) {
  detail::require_undoubled(base);
  int n = base.world_count();
  Relation out(2 * n);
  for (const Triple& t : P) {
    if (t.a < 0 || t.a >= 2 * n || t.b < 0 || t.b >= 2 * n || t.c < 0 ||
        t.c >= 2 * n)
      throw UsageError("mixture input triple out of range");
    if (!is_pure(t, n))
      throw UsageError("mixture input triple is mixed: (" +
                       std::to_string(t.a) + "," + std::to_string(t.b) + "," +
                       std::to_string(t.c) + ")");
    for (const Triple& v : cell(j_project(t, n), n)) out.insert(v);
  }
  return out;
}

/// The special frame of a wMIA frame: 2|W| worlds and a single relation
/// (returned as both R and S) built as
///   R' := m(S) union [ m(R \ S) minus (R union R-copy) ]
/// while the complement of S' is materialized from the two-sided definition
///   -S' := m(-R) union [ (R union R-copy) minus (S union S-copy) ]
/// and the equality R' = S' is verified rather than assumed. A violation is
/// an internal error and can only mean the construction itself is broken.
inline TernaryFrame special_frame(const TernaryFrame& F) {
  detail::require_undoubled(F);
  if (!F.is_wmia())
    throw UsageError(
        "special frame requires a wMIA frame (S must be a subset of R)");
  const int n = F.world_count();

  // R union R-copy and S union S-copy as membership masks.
  Relation RRp(2 * n), SSp(2 * n);
  for (const Triple& t : F.R.triples()) {
    RRp.insert(t);
    RRp.insert({t.a + n, t.b + n, t.c + n});
  }
  for (const Triple& t : F.S.triples()) {
    SSp.insert(t);
    SSp.insert({t.a + n, t.b + n, t.c + n});
  }

  std::vector<Triple> r_minus_s;
  for (const Triple& t : F.R.triples())
    if (!F.S.contains(t)) r_minus_s.push_back(t);
  std::vector<Triple> not_r;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (!F.R.contains(a, b, c)) not_r.push_back({a, b, c});

  Relation m_s = mixture_rel(F, F.S.triples());
  Relation m_rs = mixture_rel(F, r_minus_s);
  Relation m_nr = mixture_rel(F, not_r);

  Relation Rbar(2 * n);
  for (const Triple& t : m_s.triples()) Rbar.insert(t);
  for (const Triple& t : m_rs.triples())
    if (!RRp.contains(t)) Rbar.insert(t);

  DynBitset not_sbar = m_nr.mask() | (RRp.mask() - SSp.mask());
  DynBitset sbar = not_sbar.complemented();

  if (Rbar.mask() != sbar)
    throw InternalError("special frame construction violated R = S");

  Relation Sbar = Rbar;  // verified equal; serialized as an alias
  return TernaryFrame(doubled_worlds(F), std::move(Rbar), std::move(Sbar),
                      /*special_tag=*/true);
}

}  // namespace mia

#endif  // MIA_MIXTURE_HPP
