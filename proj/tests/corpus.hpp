#ifndef MIA_TESTS_CORPUS_HPP
#define MIA_TESTS_CORPUS_HPP

// Named algebras and frames used across the unit and acceptance suites,
// plus the deterministic random corpora (fixed seeds, std::mt19937 is
// portable by definition).

#include <cstdint>
#include <random>
#include <vector>

#include "mia/frames.hpp"
#include "mia/logic.hpp"
#include "mia/mixture.hpp"
#include "mia/ps_algebra.hpp"
#include "mia/search.hpp"

namespace corpus {

using namespace mia;

// Two-atom algebra with f, g given on atoms by
//   f(a,a)=0  f(a,b)=0  f(b,a)=0  f(b,b)=1
//   g(a,a)=b  g(a,b)=b  g(b,a)=b  g(b,b)=0
// It satisfies eq45 but fails wMIA (and dMIA) at (a,a).
inline PSAlgebra eq45_not_wmia() {
  OperatorTable f(OperatorKind::Possibility, 2);
  OperatorTable g(OperatorKind::Sufficiency, 2);
  f.set_entry(0, 0, 0b00);
  f.set_entry(0, 1, 0b00);
  f.set_entry(1, 0, 0b00);
  f.set_entry(1, 1, 0b11);
  g.set_entry(0, 0, 0b10);
  g.set_entry(0, 1, 0b10);
  g.set_entry(1, 0, 0b10);
  g.set_entry(1, 1, 0b00);
  return PSAlgebra(BooleanAlgebra({"a", "b"}), std::move(f), std::move(g));
}

/// f total on nonzero pairs, g constantly 1: a weak MIA.
inline PSAlgebra top_algebra(int n) {
  OperatorTable f(OperatorKind::Possibility, n);
  OperatorTable g(OperatorKind::Sufficiency, n);
  std::uint32_t one = (1u << n) - 1;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      f.set_entry(p, q, one);
      g.set_entry(p, q, one);
    }
  return PSAlgebra(BooleanAlgebra(default_atom_names(n)), std::move(f),
                   std::move(g));
}

/// f constantly 0 (only normality), g constantly 1.
inline PSAlgebra f0_g1_algebra(int n) {
  OperatorTable f(OperatorKind::Possibility, n);
  OperatorTable g(OperatorKind::Sufficiency, n);
  std::uint32_t one = (1u << n) - 1;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) g.set_entry(p, q, one);
  return PSAlgebra(BooleanAlgebra(default_atom_names(n)), std::move(f),
                   std::move(g));
}

inline PSAlgebra one_atom(std::uint32_t faa, std::uint32_t gaa) {
  OperatorTable f(OperatorKind::Possibility, 1);
  OperatorTable g(OperatorKind::Sufficiency, 1);
  f.set_entry(0, 0, faa);
  g.set_entry(0, 0, gaa);
  return PSAlgebra(BooleanAlgebra({"a"}), std::move(f), std::move(g));
}

/// A dMIA that fails eq45: diagonal g below f, off-diagonal g = 1 with
/// f = 0.
inline PSAlgebra dmia_not_eq45() {
  OperatorTable f(OperatorKind::Possibility, 2);
  OperatorTable g(OperatorKind::Sufficiency, 2);
  f.set_entry(0, 0, 0b01);
  f.set_entry(1, 1, 0b10);
  g.set_entry(0, 1, 0b11);
  g.set_entry(1, 0, 0b11);
  return PSAlgebra(BooleanAlgebra({"a", "b"}), std::move(f), std::move(g));
}

/// A would-be two-atom counterexample given by full 4x4 tables. Its f table
/// is NOT additive (f(a,b)+f(b,b) = 1 yet f(1,b) = 0), so no atom table can
/// produce it; the tests pin this defect and the search finds a genuine
/// witness instead.
struct FullTables {
  // index order 0, a, b, 1 with a = bit0, b = bit1
  std::uint32_t f[4][4];
  std::uint32_t g[4][4];
};
inline FullTables nonadditive_full_tables() {
  return FullTables{
      {{0, 0, 0, 0}, {0, 0, 3, 3}, {0, 0, 0, 0}, {0, 0, 0, 3}},
      {{3, 3, 3, 3}, {3, 0, 0, 0}, {3, 0, 3, 0}, {3, 0, 0, 0}}};
}

/// W = {x,y,z}, R = {(x,y,z)}, S = empty: the worked wMIA frame whose
/// special frame fails bt2.
inline TernaryFrame worked_frame() {
  return TernaryFrame::make({"x", "y", "z"}, {{0, 1, 2}}, {});
}

/// Same worlds with R = {(x,y,z),(x,z,y)}: the companion whose special frame
/// also fails bt3.
inline TernaryFrame companion_frame() {
  return TernaryFrame::make({"x", "y", "z"}, {{0, 1, 2}, {0, 2, 1}}, {});
}

inline TernaryFrame single_reflexive_frame() {
  return TernaryFrame::make({"w"}, {{0, 0, 0}}, {{0, 0, 0}});
}

/// Every wMIA atom-table pair over n atoms (g below f slotwise), in
/// enumeration order. 3 algebras at n=1, 6561 at n=2.
inline std::vector<PSAlgebra> all_wmia_algebras(int n) {
  std::vector<PSAlgebra> out;
  std::uint64_t space = std::uint64_t{1} << (n * n * n);
  for (std::uint64_t f_idx = 0; f_idx < space; ++f_idx)
    for (std::uint64_t g_idx = 0; g_idx < space; ++g_idx) {
      PSAlgebra A = algebra_from_index(n, f_idx, g_idx);
      bool wmia = true;
      for (int p = 0; p < n && wmia; ++p)
        for (int q = 0; q < n; ++q)
          if (A.g_table().entry(p, q) & ~A.f_table().entry(p, q)) {
            wmia = false;
            break;
          }
      if (wmia) out.push_back(std::move(A));
    }
  return out;
}

/// Every wMIA frame over w worlds: R over all masks, S over the submasks.
inline std::vector<TernaryFrame> all_wmia_frames(int w) {
  std::vector<TernaryFrame> out;
  int bits = w * w * w;
  std::uint64_t space = std::uint64_t{1} << bits;
  for (std::uint64_t r = 0; r < space; ++r) {
    std::uint64_t s = r;
    for (;;) {  // submask walk, descending, ending at 0
      out.push_back(frame_from_index(w, r, s));
      if (s == 0) break;
      s = (s - 1) & r;
    }
  }
  return out;
}

/// Deterministic random wMIA atom tables: f uniform, g a random submask of f
/// slot by slot.
inline PSAlgebra random_wmia_algebra(int n, std::mt19937_64& rng) {
  OperatorTable f(OperatorKind::Possibility, n);
  OperatorTable g(OperatorKind::Sufficiency, n);
  std::uint32_t one = (1u << n) - 1;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      std::uint32_t fv = static_cast<std::uint32_t>(rng()) & one;
      std::uint32_t gv = static_cast<std::uint32_t>(rng()) & fv;
      f.set_entry(p, q, fv);
      g.set_entry(p, q, gv);
    }
  return PSAlgebra(BooleanAlgebra(default_atom_names(n)), std::move(f),
                   std::move(g));
}

inline TernaryFrame random_wmia_frame(int w, std::mt19937_64& rng) {
  int bits = w * w * w;
  auto draw = [&](int b) {
    std::uint64_t v = 0;
    for (int i = 0; i < b; i += 32)
      v |= static_cast<std::uint64_t>(static_cast<std::uint32_t>(rng()))
           << i;
    return b >= 64 ? v : v & ((std::uint64_t{1} << b) - 1);
  };
  std::uint64_t r = draw(bits);
  std::uint64_t s = draw(bits) & r;
  return frame_from_index(w, r, s);
}

/// A random model on a random wMIA frame with `vars` variables.
inline Model random_wmia_model(int max_worlds, int vars,
                               std::mt19937_64& rng) {
  int w = 1 + static_cast<int>(rng() % max_worlds);
  TernaryFrame F = random_wmia_frame(w, rng);
  std::uint64_t wmask = (std::uint64_t{1} << w) - 1;
  std::vector<std::uint64_t> val;
  for (int k = 0; k < vars; ++k) val.push_back(rng() & wmask);
  return Model(std::move(F), std::move(val));
}

/// The deterministic stratified sample of the two-atom algebra space
/// (256 f-tables x 256 g-tables = 65536 candidates): one index drawn per
/// equal-width block with a fixed-seed generator.
inline std::vector<PSAlgebra> stratified_two_atom_sample(std::size_t count) {
  std::vector<PSAlgebra> out;
  out.reserve(count);
  const std::uint64_t space = 65536;
  std::mt19937_64 rng(0x5eedu);
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t lo = k * space / count;
    std::uint64_t hi = (k + 1) * space / count;
    std::uint64_t idx = lo + (hi > lo ? rng() % (hi - lo) : 0);
    out.push_back(algebra_from_index(2, idx >> 8, idx & 0xff));
  }
  return out;
}

/// Algebras every suite must keep passing: the named counterexamples and
/// the basic shapes.
inline std::vector<PSAlgebra> regression_algebras() {
  std::vector<PSAlgebra> out;
  out.push_back(eq45_not_wmia());
  out.push_back(dmia_not_eq45());
  out.push_back(top_algebra(1));
  out.push_back(top_algebra(2));
  out.push_back(top_algebra(3));
  out.push_back(f0_g1_algebra(2));
  for (std::uint32_t fa = 0; fa <= 1; ++fa)
    for (std::uint32_t ga = 0; ga <= 1; ++ga) out.push_back(one_atom(fa, ga));
  return out;
}

}  // namespace corpus

#endif  // MIA_TESTS_CORPUS_HPP
