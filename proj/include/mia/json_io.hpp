#ifndef MIA_JSON_IO_HPP
#define MIA_JSON_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mia/boolean.hpp"
#include "mia/embedding.hpp"
#include "mia/frames.hpp"
#include "mia/logic.hpp"
#include "mia/ps_algebra.hpp"
#include "mia/report.hpp"

namespace mia {

using nlohmann::json;

// --- elements ---------------------------------------------------------------

inline json element_to_json(const BooleanAlgebra& alg, std::uint32_t bits) {
  json arr = json::array();
  for_each_bit(bits, [&](int i) { arr.push_back(alg.atom_name(i)); });
  return arr;
}

inline std::uint32_t element_from_json(const BooleanAlgebra& alg,
                                       const json& arr) {
  if (!arr.is_array()) throw UsageError("element must be an array of atoms");
  std::uint32_t bits = 0;
  for (const auto& a : arr)
    bits |= 1u << alg.atom_index(a.get<std::string>());
  return bits;
}

/// Parse the bracket rendering used in reports, e.g. "[a,b]" or "[]".
inline Element element_from_name(const BooleanAlgebra& alg,
                                 const std::string& name) {
  if (name.size() < 2 || name.front() != '[' || name.back() != ']')
    throw UsageError("bad element rendering: " + name);
  std::uint32_t bits = 0;
  std::string body = name.substr(1, name.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    bits |= 1u << alg.atom_index(body.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return alg.element(bits);
}

// --- algebras ---------------------------------------------------------------

inline json algebra_to_json(const PSAlgebra& A) {
  const BooleanAlgebra& alg = A.base();
  json j;
  j["atoms"] = alg.atom_names();
  json f = json::object(), g = json::object();
  for (int p = 0; p < alg.atom_count(); ++p)
    for (int q = 0; q < alg.atom_count(); ++q) {
      std::string key = alg.atom_name(p) + "," + alg.atom_name(q);
      f[key] = element_to_json(alg, A.f_table().entry(p, q));
      g[key] = element_to_json(alg, A.g_table().entry(p, q));
    }
  j["f"] = f;
  j["g"] = g;
  return j;
}

inline PSAlgebra algebra_from_json(const json& j) {
  if (!j.contains("atoms")) throw UsageError("algebra JSON needs \"atoms\"");
  BooleanAlgebra alg(j.at("atoms").get<std::vector<std::string>>());
  int n = alg.atom_count();
  OperatorTable f(OperatorKind::Possibility, n);
  OperatorTable g(OperatorKind::Sufficiency, n);
  for (auto [table, kind] : {std::pair{&f, "f"}, std::pair{&g, "g"}}) {
    if (!j.contains(kind))
      throw UsageError(std::string("algebra JSON needs \"") + kind + "\"");
    const json& tj = j.at(kind);
    std::size_t keys = 0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        std::string key = alg.atom_name(p) + "," + alg.atom_name(q);
        if (!tj.contains(key))
          throw UsageError(std::string(kind) + " table is missing entry " +
                           key);
        table->set_entry(p, q, element_from_json(alg, tj.at(key)));
        ++keys;
      }
    if (tj.size() != keys)
      throw UsageError(std::string(kind) + " table has unknown keys");
  }
  return PSAlgebra(std::move(alg), std::move(f), std::move(g));
}

// --- frames and models ------------------------------------------------------

inline json frame_to_json(const TernaryFrame& F) {
  json j;
  json worlds = json::array();
  for (const World& w : F.worlds) worlds.push_back(w.name());
  j["worlds"] = worlds;
  auto rel = [&](const Relation& r) {
    json arr = json::array();
    for (const Triple& t : r.triples())
      arr.push_back({F.world_name(t.a), F.world_name(t.b), F.world_name(t.c)});
    return arr;
  };
  j["R"] = rel(F.R);
  j["S"] = rel(F.S);
  if (F.special) j["special"] = true;
  return j;
}

inline TernaryFrame frame_from_json(const json& j) {
  for (const char* key : {"worlds", "R", "S"})
    if (!j.contains(key))
      throw UsageError(std::string("frame JSON needs \"") + key + "\"");
  std::vector<World> worlds;
  for (const auto& n : j.at("worlds"))
    worlds.push_back(TernaryFrame::parse_world(n.get<std::string>()));
  TernaryFrame probe(worlds, Relation(static_cast<int>(worlds.size())),
                     Relation(static_cast<int>(worlds.size())));
  auto rel = [&](const json& arr) {
    Relation r(probe.world_count());
    for (const auto& t : arr) {
      if (!t.is_array() || t.size() != 3)
        throw UsageError("a triple must have exactly three worlds");
      r.insert({probe.world_index(t[0].get<std::string>()),
                probe.world_index(t[1].get<std::string>()),
                probe.world_index(t[2].get<std::string>())});
    }
    return r;
  };
  bool special = j.value("special", false);
  return TernaryFrame(std::move(worlds), rel(j.at("R")), rel(j.at("S")),
                      special);
}

inline json world_set_to_json(const TernaryFrame& F, std::uint64_t mask) {
  json arr = json::array();
  for (int i = 0; i < F.world_count(); ++i)
    if ((mask >> i) & 1) arr.push_back(F.world_name(i));
  return arr;
}

inline json model_to_json(const Model& M) {
  json j = frame_to_json(M.frame);
  json val = json::object();
  for (std::size_t k = 0; k < M.valuation.size(); ++k)
    val["p" + std::to_string(k)] = world_set_to_json(M.frame, M.valuation[k]);
  j["valuation"] = val;
  return j;
}

inline Model model_from_json(const json& j, bool require_wmia = true) {
  TernaryFrame F = frame_from_json(j);
  if (!j.contains("valuation"))
    throw UsageError("model JSON needs \"valuation\"");
  const json& val = j.at("valuation");
  int max_var = -1;
  for (const auto& [key, _] : val.items()) {
    if (key.size() < 2 || key[0] != 'p')
      throw UsageError("valuation keys must be p0, p1, ...: " + key);
    for (std::size_t i = 1; i < key.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(key[i])))
        throw UsageError("valuation keys must be p0, p1, ...: " + key);
    max_var = std::max(max_var, std::stoi(key.substr(1)));
  }
  std::vector<std::uint64_t> valuation(max_var + 1, 0);
  for (const auto& [key, worlds] : val.items()) {
    std::uint64_t mask = 0;
    for (const auto& w : worlds)
      mask |= std::uint64_t{1} << F.world_index(w.get<std::string>());
    valuation[std::stoi(key.substr(1))] = mask;
  }
  return Model(std::move(F), std::move(valuation), require_wmia);
}

// --- reports ----------------------------------------------------------------

inline json predicate_report_to_json(const PredicateReport& r) {
  json j;
  j["id"] = r.id;
  j["verdict"] = r.holds ? "holds" : "fails";
  if (!r.holds) {
    j["witness"] = r.witness;
    if (!r.detail.empty()) j["detail"] = r.detail;
  }
  return j;
}

inline json embedding_report_to_json(const AlgebraEmbedding& e,
                                     bool with_frame = false) {
  json j;
  j["injective"] = e.injective;
  j["f_commutes"] = e.f_commutes;
  j["g_commutes"] = e.g_commutes;
  j["worlds"] = e.target.world_count();
  json map = json::object();
  const BooleanAlgebra& alg = e.source.base();
  for (std::uint32_t x = 0; x < alg.element_count(); ++x)
    map[alg.element_name(alg.element(x))] =
        world_set_to_json(e.target, e.element_map[x]);
  j["map"] = map;
  if (with_frame) j["frame"] = frame_to_json(e.target);
  return j;
}

// --- files ------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace mia

#endif  // MIA_JSON_IO_HPP
