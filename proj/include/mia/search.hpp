#ifndef MIA_SEARCH_HPP
#define MIA_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mia/core.hpp"
#include "mia/frames.hpp"
#include "mia/ps_algebra.hpp"

namespace mia {

// ---------------------------------------------------------------------------
// Candidate spaces. An algebra candidate over n atoms is a pair of operator
// atom tables; each of the n^2 slots holds one of the 2^n elements, so a
// table is an n^3-bit index (slot p*n+q occupies bits [s*n, s*n+n)). Frame
// candidates over w worlds are pairs of relation masks with w^3 bits each,
// bit t standing for the triple with index t. Enumeration order is outer
// index (f resp. R) ascending, inner index (g resp. S) ascending, which
// makes every stream position a resumable (outer, inner) cursor.
// ---------------------------------------------------------------------------

struct SearchSpec {
  enum class Kind { Algebras, Frames };

  Kind kind = Kind::Algebras;
  int size = 1;  // atom count or world count
  std::vector<std::string> require;
  std::vector<std::string> forbid;
  std::uint64_t limit = 1;                  // stop after this many results
  std::uint64_t cursor_outer = 0;           // resume position
  std::uint64_t cursor_inner = 0;
  std::uint64_t scan_max = kDefaultBudget;  // candidates examined per run
  bool allow_large = false;                 // lift the 3-atom soft cap
  bool count_only = false;                  // do not materialize results
  int threads = 1;
};

struct SearchHit {
  std::uint64_t outer = 0, inner = 0;
};

struct SearchOutcome {
  std::vector<SearchHit> hit_positions;
  std::vector<PSAlgebra> algebras;   // parallel to hit_positions (algebra runs)
  std::vector<TernaryFrame> frames;  // parallel to hit_positions (frame runs)
  std::uint64_t scanned = 0;
  std::uint64_t matched = 0;
  bool exhausted = false;  // the whole candidate space is behind next_cursor
  std::uint64_t next_outer = 0, next_inner = 0;
  double elapsed_ms = 0;
};

inline std::vector<std::string> default_atom_names(int n) {
  static const char* names[] = {"a", "b", "c", "d"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(names[i]);
  return out;
}

inline PSAlgebra algebra_from_index(int n, std::uint64_t f_idx,
                                    std::uint64_t g_idx) {
  OperatorTable f(OperatorKind::Possibility, n);
  OperatorTable g(OperatorKind::Sufficiency, n);
  std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      int s = p * n + q;
      f.set_entry(p, q, static_cast<std::uint32_t>((f_idx >> (s * n)) & mask));
      g.set_entry(p, q, static_cast<std::uint32_t>((g_idx >> (s * n)) & mask));
    }
  return PSAlgebra(BooleanAlgebra(default_atom_names(n)), std::move(f),
                   std::move(g));
}

/// Position of an algebra in the enumeration (inverse of algebra_from_index).
inline std::pair<std::uint64_t, std::uint64_t> algebra_index(
    const PSAlgebra& A) {
  int n = A.base().atom_count();
  if (n > 4) throw UsageError("index space supports at most 4 atoms");
  std::uint64_t f_idx = 0, g_idx = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      int s = p * n + q;
      f_idx |= static_cast<std::uint64_t>(A.f_table().entry(p, q)) << (s * n);
      g_idx |= static_cast<std::uint64_t>(A.g_table().entry(p, q)) << (s * n);
    }
  return {f_idx, g_idx};
}

inline TernaryFrame frame_from_index(int w, std::uint64_t r_idx,
                                     std::uint64_t s_idx) {
  std::vector<World> worlds;
  for (int i = 0; i < w; ++i) worlds.push_back(World{"w" + std::to_string(i), false});
  Relation R(w), S(w);
  std::size_t nt = static_cast<std::size_t>(w) * w * w;
  for (std::size_t t = 0; t < nt; ++t) {
    if ((r_idx >> t) & 1) R.insert(R.triple_at(t));
    if ((s_idx >> t) & 1) S.insert(S.triple_at(t));
  }
  return TernaryFrame(std::move(worlds), std::move(R), std::move(S));
}

/// A frame filter: either the two-relation wmia check or a ternary-relation
/// property applied to R or to S via the "-on-R"/"-on-S" suffix.
struct FrameFilter {
  std::string base_id;
  int rel;  // 0 = R, 1 = S, 2 = both (wmia)

  static FrameFilter parse(const std::string& id) {
    if (id == "wmia") return {"wmia", 2};
    auto ends_with = [&](const std::string& suf) {
      return id.size() > suf.size() &&
             id.compare(id.size() - suf.size(), suf.size(), suf) == 0;
    };
    std::string base;
    int rel;
    if (ends_with("-on-R")) {
      base = id.substr(0, id.size() - 5);
      rel = 0;
    } else if (ends_with("-on-S")) {
      base = id.substr(0, id.size() - 5);
      rel = 1;
    } else {
      throw UsageError("frame predicate '" + id +
                       "' needs an -on-R or -on-S suffix (or use wmia)");
    }
    const auto& known = frame_predicate_ids();
    if (std::find(known.begin(), known.end(), base) == known.end() ||
        base == "wmia")
      throw UsageError("unknown frame predicate: " + base);
    return {base, rel};
  }

  bool holds(const TernaryFrame& F) const {
    const Relation& T = (rel == 1) ? F.S : F.R;
    return check_frame_property(F, T, base_id).holds;
  }
};

namespace detail {

struct IndexSpace {
  int bits;  // 0..64
  std::uint64_t last() const {
    return bits >= 64 ? ~std::uint64_t{0}
                      : (std::uint64_t{1} << bits) - 1;
  }
  bool valid(std::uint64_t v) const { return bits >= 64 || v <= last(); }
};

struct ScanConfig {
  SearchSpec spec;
  IndexSpace outer, inner;
  std::vector<FrameFilter> frame_require, frame_forbid;
};

inline ScanConfig make_config(const SearchSpec& spec) {
  ScanConfig cfg{spec, {0}, {0}, {}, {}};
  if (spec.kind == SearchSpec::Kind::Algebras) {
    int cap = spec.allow_large ? 4 : 3;
    if (spec.size < 1 || spec.size > cap)
      throw UsageError("atom count " + std::to_string(spec.size) +
                       " is over the cap of " + std::to_string(cap) +
                       (spec.allow_large ? "" : " (raise with the override)"));
    cfg.outer.bits = cfg.inner.bits = spec.size * spec.size * spec.size;
    for (const auto& id : spec.require) check_algebra_predicate(
        algebra_from_index(spec.size, 0, 0), id);  // validates the id
    for (const auto& id : spec.forbid)
      check_algebra_predicate(algebra_from_index(spec.size, 0, 0), id);
  } else {
    if (spec.size < 1 || spec.size > 4)
      throw UsageError("world count " + std::to_string(spec.size) +
                       " is over the cap of 4");
    cfg.outer.bits = cfg.inner.bits = spec.size * spec.size * spec.size;
    for (const auto& id : spec.require)
      cfg.frame_require.push_back(FrameFilter::parse(id));
    for (const auto& id : spec.forbid)
      cfg.frame_forbid.push_back(FrameFilter::parse(id));
  }
  if (!cfg.outer.valid(spec.cursor_outer) || !cfg.inner.valid(spec.cursor_inner))
    throw UsageError("cursor outside the candidate space");
  if (spec.limit == 0) throw UsageError("limit must be positive");
  return cfg;
}

inline bool algebra_matches(const PSAlgebra& A, const SearchSpec& spec) {
  for (const auto& id : spec.require)
    if (!check_algebra_predicate(A, id).holds) return false;
  for (const auto& id : spec.forbid)
    if (check_algebra_predicate(A, id).holds) return false;
  return true;
}

inline bool frame_matches(const TernaryFrame& F, const ScanConfig& cfg) {
  for (const auto& flt : cfg.frame_require)
    if (!flt.holds(F)) return false;
  for (const auto& flt : cfg.frame_forbid)
    if (flt.holds(F)) return false;
  return true;
}

struct ChunkResult {
  std::vector<SearchHit> hits;
  std::vector<PSAlgebra> algebras;
  std::vector<TernaryFrame> frames;
  std::uint64_t examined = 0;  // candidates looked at before stopping
};

/// Scan `count` candidates starting at (outer, inner), stopping early once
/// `limit` matches are found.
inline ChunkResult scan_chunk(const ScanConfig& cfg, std::uint64_t outer,
                              std::uint64_t inner, std::uint64_t count,
                              std::uint64_t limit) {
  ChunkResult out;
  const SearchSpec& spec = cfg.spec;
  while (out.examined < count) {
    if (spec.kind == SearchSpec::Kind::Algebras) {
      PSAlgebra A = algebra_from_index(spec.size, outer, inner);
      if (algebra_matches(A, spec)) {
        out.hits.push_back({outer, inner});
        if (!spec.count_only) out.algebras.push_back(A);
      }
    } else {
      TernaryFrame F = frame_from_index(spec.size, outer, inner);
      if (frame_matches(F, cfg)) {
        out.hits.push_back({outer, inner});
        if (!spec.count_only) out.frames.push_back(F);
      }
    }
    ++out.examined;
    if (out.hits.size() >= limit) break;
    // advance, detecting the end of the space
    if (inner == cfg.inner.last()) {
      inner = 0;
      if (outer == cfg.outer.last()) break;  // whole space behind us
      ++outer;
    } else {
      ++inner;
    }
  }
  return out;
}

/// Linear cursor offset (128-bit positions internally).
inline unsigned __int128 linear_pos(const IndexSpace& inner, std::uint64_t o,
                                    std::uint64_t i) {
  return (static_cast<unsigned __int128>(o) << inner.bits) | i;
}

}  // namespace detail

/// Run one (resumable) search pass. Scans at most spec.scan_max candidates
/// from the cursor, in enumeration order, collecting matches until
/// spec.limit is reached. Never silent: the outcome always says whether the
/// space was exhausted and where a follow-up run must resume.
inline SearchOutcome run_search(const SearchSpec& spec) {
  auto t0 = std::chrono::steady_clock::now();
  detail::ScanConfig cfg = detail::make_config(spec);

  const int total_bits = cfg.outer.bits + cfg.inner.bits;
  unsigned __int128 start = detail::linear_pos(cfg.inner, spec.cursor_outer,
                                       spec.cursor_inner);
  // Remaining candidates from the cursor to the end of the space; the space
  // size 2^total_bits can reach 2^128, so clamp through the complement.
  unsigned __int128 remaining;
  if (total_bits >= 128) {
    remaining = ~static_cast<unsigned __int128>(0) - start + 1;
    if (remaining == 0) remaining = ~static_cast<unsigned __int128>(0);
  } else {
    remaining = (static_cast<unsigned __int128>(1) << total_bits) - start;
  }
  std::uint64_t to_scan = static_cast<std::uint64_t>(
      std::min<unsigned __int128>(remaining, spec.scan_max));

  int threads = std::max(1, spec.threads);
  std::vector<detail::ChunkResult> chunks;
  if (threads == 1 || to_scan < 1024) {
    chunks.push_back(detail::scan_chunk(cfg, spec.cursor_outer,
                                        spec.cursor_inner, to_scan,
                                        spec.limit));
  } else {
    std::uint64_t chunk = (to_scan + threads - 1) / threads;
    chunks.resize(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      std::uint64_t off = chunk * t;
      std::uint64_t len = off >= to_scan ? 0 : std::min(chunk, to_scan - off);
      pool.emplace_back([&, t, off, len] {
        if (len == 0) return;
        unsigned __int128 p = start + off;
        std::uint64_t o = static_cast<std::uint64_t>(p >> cfg.inner.bits);
        std::uint64_t i = static_cast<std::uint64_t>(
            p & ((static_cast<unsigned __int128>(1) << cfg.inner.bits) - 1));
        chunks[t] = detail::scan_chunk(cfg, o, i, len, spec.limit);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge in range order, applying the global limit.
  SearchOutcome out;
  unsigned __int128 consumed = 0;  // positions logically covered
  bool limit_hit = false;
  std::uint64_t chunk_sz = (threads == 1 || to_scan < 1024)
                               ? to_scan
                               : (to_scan + threads - 1) / threads;
  for (std::size_t t = 0; t < chunks.size() && !limit_hit; ++t) {
    const auto& c = chunks[t];
    std::uint64_t base_off = static_cast<std::uint64_t>(chunk_sz * t);
    for (std::size_t h = 0; h < c.hits.size(); ++h) {
      out.hit_positions.push_back(c.hits[h]);
      if (!spec.count_only) {
        if (spec.kind == SearchSpec::Kind::Algebras)
          out.algebras.push_back(c.algebras[h]);
        else
          out.frames.push_back(c.frames[h]);
      }
      if (out.hit_positions.size() >= spec.limit) {
        limit_hit = true;
        consumed =
            detail::linear_pos(cfg.inner, c.hits[h].outer, c.hits[h].inner) +
            1;
        break;
      }
    }
    if (!limit_hit) consumed = start + base_off + c.examined;
  }
  if (!limit_hit && chunks.size() > 1)
    consumed = start + to_scan;  // all chunks fully examined

  out.matched = out.hit_positions.size();
  out.scanned = static_cast<std::uint64_t>(consumed - start);
  bool at_end;
  if (total_bits >= 128) {
    at_end = false;  // a 2^128 space cannot be scanned to the end
  } else {
    at_end = consumed >= (static_cast<unsigned __int128>(1) << total_bits);
  }
  out.exhausted = at_end;
  if (!at_end) {
    out.next_outer = static_cast<std::uint64_t>(consumed >> cfg.inner.bits);
    out.next_inner = static_cast<std::uint64_t>(
        consumed & ((static_cast<unsigned __int128>(1) << cfg.inner.bits) - 1));
  } else {
    out.next_outer = out.next_inner = 0;
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return out;
}

/// First matching structure, or an explicit "exhausted" verdict. Searches
/// that stop at the scan cap report neither: the caller sees an empty result
/// with exhausted == false and a resume cursor.
inline SearchOutcome find_witness(SearchSpec spec) {
  spec.limit = 1;
  return run_search(spec);
}

}  // namespace mia

#endif  // MIA_SEARCH_HPP
