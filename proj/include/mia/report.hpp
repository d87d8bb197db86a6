#ifndef MIA_REPORT_HPP
#define MIA_REPORT_HPP

#include <string>
#include <vector>

namespace mia {

/// Outcome of a single predicate check. When the predicate fails, witness
/// holds the offending tuple (elements, worlds or triples, rendered in the
/// declared order) and re-evaluates to a violation.
struct PredicateReport {
  std::string id;
  bool holds = true;
  std::vector<std::string> witness;
  std::string detail;

  std::string to_string() const {
    std::string s = id + (holds ? ": holds" : ": fails");
    if (!holds && !witness.empty()) {
      s += ", witness (";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) s += ", ";
        s += witness[i];
      }
      s += ")";
    }
    if (!detail.empty()) s += " — " + detail;
    return s;
  }
};

}  // namespace mia

#endif  // MIA_REPORT_HPP
