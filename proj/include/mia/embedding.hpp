#ifndef MIA_EMBEDDING_HPP
#define MIA_EMBEDDING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mia/core.hpp"
#include "mia/frames.hpp"
#include "mia/mixture.hpp"
#include "mia/ps_algebra.hpp"

namespace mia {

/// A verified algebra-to-frame embedding: the element map s together with
/// the outcome of the total verification (injectivity and commutation with
/// both operators, over all element pairs).
struct AlgebraEmbedding {
  PSAlgebra source;
  TernaryFrame target;
  bool single_relation;  // both operators read target.R when set
  std::vector<std::uint64_t> element_map;  // world set per element bits
  bool injective = false;
  bool f_commutes = false;
  bool g_commutes = false;

  bool ok() const { return injective && f_commutes && g_commutes; }

  std::uint64_t image_f(std::uint64_t X, std::uint64_t Y) const {
    return poss_op(target.R, X, Y);
  }
  std::uint64_t image_g(std::uint64_t X, std::uint64_t Y) const {
    const Relation& rel = single_relation ? target.R : target.S;
    return suff_op(rel, X, Y) & world_universe();
  }
  std::uint64_t world_universe() const {
    int w = target.world_count();
    return w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
  }

  std::string world_set_name(std::uint64_t mask) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < target.world_count(); ++i)
      if ((mask >> i) & 1) {
        if (!first) out += ',';
        out += target.world_name(i);
        first = false;
      }
    return out + "}";
  }
};

namespace detail {

inline void verify_embedding(AlgebraEmbedding& e) {
  const std::uint32_t n = e.source.base().element_count();
  e.injective = true;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < x; ++y)
      if (e.element_map[x] == e.element_map[y]) e.injective = false;
  e.f_commutes = true;
  e.g_commutes = true;
  std::string offending;
  for (std::uint32_t x = 0; x < n && offending.empty(); ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      std::uint64_t fx = e.element_map[e.source.f_bits(x, y)];
      std::uint64_t gx = e.element_map[e.source.g_bits(x, y)];
      if (fx != e.image_f(e.element_map[x], e.element_map[y])) {
        e.f_commutes = false;
        offending = "f at (" +
                    e.source.base().element_name(e.source.element(x)) + ", " +
                    e.source.base().element_name(e.source.element(y)) + ")";
        break;
      }
      if (gx != e.image_g(e.element_map[x], e.element_map[y])) {
        e.g_commutes = false;
        offending = "g at (" +
                    e.source.base().element_name(e.source.element(x)) + ", " +
                    e.source.base().element_name(e.source.element(y)) + ")";
        break;
      }
    }
  if (!e.ok())
    throw InternalError("embedding verification failed: " +
                        (offending.empty() ? std::string("map not injective")
                                           : offending));
}

}  // namespace detail

/// Embed a weak MIA into the complex algebra of a 3-frame: the special frame
/// of its canonical frame, which carries a single ternary relation. The map
/// sends an element to the ultrafilters containing it together with their
/// copies. Verification is total over all element pairs.
inline AlgebraEmbedding embed_into_3frame(const PSAlgebra& A) {
  if (!check_algebra_predicate(A, "wMIA").holds)
    throw UsageError("algebra is not a weak MIA");
  int n = A.base().atom_count();
  TernaryFrame target = special_frame(canonical_frame(A));
  std::vector<std::uint64_t> map(A.base().element_count());
  for (std::uint32_t x = 0; x < A.base().element_count(); ++x)
    map[x] = static_cast<std::uint64_t>(x) | (static_cast<std::uint64_t>(x) << n);
  AlgebraEmbedding e{A, std::move(target), /*single_relation=*/true,
                     std::move(map)};
  detail::verify_embedding(e);
  return e;
}

/// Embed a weak MIA into the complex algebra of its canonical frame (two
/// relations), via the Stone map a -> { u : a in u }.
inline AlgebraEmbedding embed_algebra_into_complex_of_canonical(
    const PSAlgebra& A) {
  if (!check_algebra_predicate(A, "wMIA").holds)
    throw UsageError("algebra is not a weak MIA");
  TernaryFrame target = canonical_frame(A);
  std::vector<std::uint64_t> map(A.base().element_count());
  for (std::uint32_t x = 0; x < A.base().element_count(); ++x)
    map[x] = x;
  AlgebraEmbedding e{A, std::move(target), /*single_relation=*/false,
                     std::move(map)};
  detail::verify_embedding(e);
  return e;
}

/// The s-image as a predicate-checker view: elements are indexed like the
/// source, but every operation is computed on world sets with the target's
/// operators and mapped back. A result outside the image would mean the
/// image is not closed and is reported as an internal error.
class ImageAlgebraView {
 public:
  explicit ImageAlgebraView(const AlgebraEmbedding& e) : e_(&e) {
    for (std::uint32_t i = 0; i < e.element_map.size(); ++i)
      reverse_.emplace(e.element_map[i], i);
  }

  std::uint32_t count() const {
    return static_cast<std::uint32_t>(e_->element_map.size());
  }
  std::uint32_t zero() const { return lookup(0); }
  std::uint32_t one() const { return lookup(full_image_mask()); }
  std::uint32_t join(std::uint32_t x, std::uint32_t y) const {
    return lookup(mask(x) | mask(y));
  }
  std::uint32_t meet(std::uint32_t x, std::uint32_t y) const {
    return lookup(mask(x) & mask(y));
  }
  std::uint32_t complement(std::uint32_t x) const {
    return lookup(full_image_mask() & ~mask(x));
  }
  bool leq(std::uint32_t x, std::uint32_t y) const {
    return (mask(x) & ~mask(y)) == 0;
  }
  std::uint32_t f(std::uint32_t x, std::uint32_t y) const {
    return lookup(e_->image_f(mask(x), mask(y)));
  }
  std::uint32_t g(std::uint32_t x, std::uint32_t y) const {
    return lookup(e_->image_g(mask(x), mask(y)));
  }
  std::string name(std::uint32_t x) const {
    return e_->world_set_name(mask(x));
  }

 private:
  std::uint64_t mask(std::uint32_t i) const { return e_->element_map[i]; }
  std::uint64_t full_image_mask() const {
    return e_->element_map[e_->source.base().universe()];
  }
  std::uint32_t lookup(std::uint64_t m) const {
    auto it = reverse_.find(m);
    if (it == reverse_.end())
      throw InternalError("image subalgebra is not closed at " +
                          e_->world_set_name(m));
    return it->second;
  }

  const AlgebraEmbedding* e_;
  std::map<std::uint64_t, std::uint32_t> reverse_;
};

struct SuiteComparison {
  struct Entry {
    std::string id;
    bool source_holds;
    bool image_holds;
  };
  std::vector<Entry> entries;
  bool all_agree = true;
};

/// Run an equation suite on the embedded image and confirm that every
/// verdict agrees with the source algebra's.
inline SuiteComparison equations_hold_in_image(
    const AlgebraEmbedding& e, const std::vector<std::string>& suite,
    std::uint64_t budget = kDefaultBudget) {
  ImageAlgebraView image(e);
  PSAlgebraView source{&e.source};
  SuiteComparison out;
  for (const std::string& id : suite) {
    bool s = check_view_predicate(source, id, budget).holds;
    bool i = check_view_predicate(image, id, budget).holds;
    out.entries.push_back({id, s, i});
    if (s != i) out.all_agree = false;
  }
  return out;
}

}  // namespace mia

#endif  // MIA_EMBEDDING_HPP
