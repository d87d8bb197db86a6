#ifndef MIA_TESTS_ORACLES_HPP
#define MIA_TESTS_ORACLES_HPP

// Independent brute-force oracles. These deliberately avoid the shortcuts
// the library takes (atom-determined canonical relations, principal
// ultrafilters), so they can vouch for them.

#include <cstdint>
#include <vector>

#include "mia/boolean.hpp"
#include "mia/frames.hpp"
#include "mia/ps_algebra.hpp"

namespace oracles {

using namespace mia;

/// Maximal proper filters by brute force: a proper principal filter with no
/// proper principal filter strictly above it.
inline std::vector<std::uint32_t> maximal_proper_filter_generators(
    const BooleanAlgebra& alg) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 1; c < alg.element_count(); ++c) {
    bool maximal = true;
    for (std::uint32_t d = 1; d < alg.element_count(); ++d) {
      // up(c) strictly inside up(d) iff d < c as sets
      if (d != c && (d & ~c) == 0) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(c);
  }
  return out;
}

/// An ultrafilter as an explicit member set (the upset of a generator).
inline std::vector<std::uint32_t> upset(const BooleanAlgebra& alg,
                                        std::uint32_t gen) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < alg.element_count(); ++x)
    if ((gen & ~x) == 0) out.push_back(x);
  return out;
}

/// Canonical frame by the definition: quantify f[u1 x u3] over the whole
/// ultrafilter member sets, no isotonicity shortcut.
inline TernaryFrame naive_canonical_frame(const PSAlgebra& A) {
  const BooleanAlgebra& alg = A.base();
  std::vector<std::uint32_t> gens = maximal_proper_filter_generators(alg);
  std::vector<World> worlds;
  for (std::uint32_t g : gens)
    worlds.push_back(World{"u_" + alg.element_name(alg.element(g)), false});
  int n = static_cast<int>(gens.size());
  Relation R(n), S(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto u1 = upset(alg, gens[i]);
        auto u2 = upset(alg, gens[j]);
        auto u3 = upset(alg, gens[k]);
        auto in_u2 = [&](std::uint32_t v) { return (gens[j] & ~v) == 0; };
        bool rf = true, sg = false;
        for (std::uint32_t a : u1)
          for (std::uint32_t b : u3) {
            if (!in_u2(A.f_bits(a, b))) rf = false;
            if (in_u2(A.g_bits(a, b))) sg = true;
          }
        if (rf) R.insert({i, j, k});
        if (sg) S.insert({i, j, k});
      }
  return TernaryFrame(std::move(worlds), std::move(R), std::move(S));
}

/// Mixture by the definition: a triple of the doubled frame belongs to m(P)
/// iff its tag erasure belongs to the erasure of P.
inline bool naive_in_mixture(const Triple& t, const std::vector<Triple>& P,
                             int n) {
  Triple jt = j_project(t, n);
  for (const Triple& p : P) {
    Triple jp = j_project(p, n);
    if (jp == jt) return true;
  }
  return false;
}

}  // namespace oracles

#endif  // MIA_TESTS_ORACLES_HPP
