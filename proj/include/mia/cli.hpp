#ifndef MIA_CLI_HPP
#define MIA_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mia/embedding.hpp"
#include "mia/frames.hpp"
#include "mia/json_io.hpp"
#include "mia/logic.hpp"
#include "mia/mixture.hpp"
#include "mia/ps_algebra.hpp"
#include "mia/search.hpp"

namespace mia::cli {

// Exit-code contract: 0 = all checks pass / witness found as requested;
// 1 = a checked property fails (witness printed); 2 = usage or resource
// error. Identical inputs and flags produce byte-identical output.

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    if (comma > pos) out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

inline std::vector<std::string> resolve_suite(const std::string& s) {
  if (s == "sigma") return sigma_suite();
  if (s == "sigmaB") return sigma_b_suite();
  if (s == "all") return algebra_predicate_ids();
  return split_csv(s);
}

inline std::uint64_t env_budget() {
  if (const char* e = std::getenv("MIA_BUDGET")) {
    try {
      return std::stoull(e);
    } catch (...) {
      throw UsageError("MIA_BUDGET is not a number");
    }
  }
  return kDefaultBudget;
}

struct CommonOpts {
  std::uint64_t budget = 0;  // 0 = take MIA_BUDGET or the default
  bool json = false;

  std::uint64_t effective_budget() const {
    return budget ? budget : env_budget();
  }
};

inline void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--budget", o.budget,
                  "cap on exhaustive spaces (default: MIA_BUDGET or 2^26)");
  cmd->add_flag("--json", o.json, "machine-readable JSON report");
}

inline std::string valuation_text(const TernaryFrame& F,
                                  const std::vector<std::uint64_t>& val) {
  std::string s;
  for (std::size_t k = 0; k < val.size(); ++k) {
    if (k) s += ", ";
    s += "v(p" + std::to_string(k) + ")=" +
         world_set_to_json(F, val[k]).dump();
  }
  return s;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"workbench for PS-algebras and ternary-relation frames"};
  app.require_subcommand(1);

  // --- check-algebra --------------------------------------------------------
  struct {
    std::string file, suite = "sigma";
    CommonOpts common;
  } ca;
  auto* cmd_ca = app.add_subcommand(
      "check-algebra", "run predicate checks on an algebra file");
  cmd_ca->add_option("file", ca.file, "algebra JSON")->required();
  cmd_ca->add_option("--suite", ca.suite,
                     "comma list of predicate ids, or sigma|sigmaB|all");
  add_common(cmd_ca, ca.common);

  // --- check-frame ----------------------------------------------------------
  struct {
    std::string file, suite = "bt0,bt1,bt2,bt3", rel = "R";
    CommonOpts common;
  } cf;
  auto* cmd_cf =
      app.add_subcommand("check-frame", "run frame-property checks");
  cmd_cf->add_option("file", cf.file, "frame JSON")->required();
  cmd_cf->add_option("--suite", cf.suite, "comma list of frame property ids");
  cmd_cf->add_option("--rel", cf.rel, "relation to check, R or S")
      ->check(CLI::IsMember({"R", "S"}));
  add_common(cmd_cf, cf.common);

  // --- transforms -----------------------------------------------------------
  struct {
    std::string file;
  } cx, sp;
  struct {
    std::string file;
    bool with_t = false;
  } cn;
  auto* cmd_cx = app.add_subcommand(
      "complex", "complex algebra of a frame (atoms = worlds)");
  cmd_cx->add_option("file", cx.file, "frame JSON")->required();
  auto* cmd_cn = app.add_subcommand(
      "canonical", "canonical frame of an algebra (ultrafilter worlds)");
  cmd_cn->add_option("file", cn.file, "algebra JSON")->required();
  cmd_cn->add_flag("--with-t", cn.with_t, "also emit the T_h relation");
  auto* cmd_sp = app.add_subcommand(
      "special", "special frame of a wMIA frame (copying construction)");
  cmd_sp->add_option("file", sp.file, "frame JSON")->required();

  // --- embeddings -----------------------------------------------------------
  struct {
    std::string file;
    bool with_frame = false;
    CommonOpts common;
  } em;
  auto* cmd_em = app.add_subcommand(
      "embed", "embed a weak MIA into the complex algebra of a 3-frame");
  cmd_em->add_option("file", em.file, "algebra JSON")->required();
  cmd_em->add_flag("--with-frame", em.with_frame, "include the target frame");
  add_common(cmd_em, em.common);

  struct {
    std::string file;
    CommonOpts common;
  } ec;
  auto* cmd_ec = app.add_subcommand(
      "embed-canonical",
      "representation embeddings: an algebra into Cm(Cf), or a frame into "
      "Cf(Cm), chosen by the input file");
  cmd_ec->add_option("file", ec.file, "algebra or frame JSON")->required();
  add_common(cmd_ec, ec.common);

  // --- mc -------------------------------------------------------------------
  struct {
    std::string file, formula;
    bool allow_non_wmia = false;
    CommonOpts common;
  } mc;
  auto* cmd_mc = app.add_subcommand("mc", "evaluate a formula on a model");
  cmd_mc->add_option("file", mc.file, "model JSON")->required();
  cmd_mc->add_option("formula", mc.formula, "formula text")->required();
  cmd_mc->add_flag("--allow-non-wmia", mc.allow_non_wmia,
                   "bypass the wMIA frame check");
  add_common(cmd_mc, mc.common);

  // --- sound ----------------------------------------------------------------
  struct {
    std::string file;
    int depth = 1, vars = 2;
    bool allow_non_wmia = false;
    CommonOpts common;
  } so;
  auto* cmd_so = app.add_subcommand(
      "sound", "validate every axiom-schema instance on a frame");
  cmd_so->add_option("file", so.file, "frame JSON")->required();
  cmd_so->add_option("--depth", so.depth, "subformula pool depth");
  cmd_so->add_option("--vars", so.vars, "variable pool size");
  cmd_so->add_flag("--allow-non-wmia", so.allow_non_wmia,
                   "bypass the wMIA frame check");
  add_common(cmd_so, so.common);

  // --- equiv ------------------------------------------------------------
  struct {
    std::string file, file2;
    int depth = 2, vars = 2;
    CommonOpts common;
  } eq;
  auto* cmd_eq = app.add_subcommand(
      "equiv",
      "compare global truth over the enumerated formula pool; with one model, "
      "compares it against its special model");
  cmd_eq->add_option("file", eq.file, "model JSON")->required();
  cmd_eq->add_option("file2", eq.file2, "second model JSON (optional)");
  cmd_eq->add_option("--depth", eq.depth, "formula pool depth");
  cmd_eq->add_option("--vars", eq.vars, "variable pool size");
  add_common(cmd_eq, eq.common);

  // --- search -----------------------------------------------------------
  struct {
    int atoms = 0, worlds = 0, threads = 1;
    std::string require, forbid, cursor;
    std::uint64_t limit = 1, scan_max = 0;
    bool count = false, allow_large = false;
    CommonOpts common;
  } se;
  auto* cmd_se = app.add_subcommand(
      "search", "enumerate small algebras or frames against predicates");
  auto* atoms_opt = cmd_se->add_option("--atoms", se.atoms, "atom count");
  cmd_se->add_option("--worlds", se.worlds, "world count")->excludes(atoms_opt);
  cmd_se->add_option("--require", se.require, "predicates that must hold");
  cmd_se->add_option("--forbid", se.forbid, "predicates that must fail");
  cmd_se->add_option("--limit", se.limit, "stop after this many results");
  cmd_se->add_option("--cursor", se.cursor, "resume position outer,inner");
  cmd_se->add_option("--scan-max", se.scan_max,
                     "candidates examined this run (default: budget)");
  cmd_se->add_option("--threads", se.threads, "worker threads");
  cmd_se->add_flag("--count", se.count, "count matches, do not emit them");
  cmd_se->add_flag("--allow-large", se.allow_large,
                   "lift the 3-atom enumeration cap");
  add_common(cmd_se, se.common);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << std::flush;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*cmd_ca) {
      PSAlgebra A = algebra_from_json(load_json_file(ca.file));
      std::vector<PredicateReport> reports;
      bool all = true;
      for (const std::string& id : resolve_suite(ca.suite)) {
        reports.push_back(
            check_algebra_predicate(A, id, ca.common.effective_budget()));
        all = all && reports.back().holds;
      }
      if (ca.common.json) {
        json j;
        j["results"] = json::array();
        for (const auto& r : reports)
          j["results"].push_back(predicate_report_to_json(r));
        j["all_hold"] = all;
        out << j.dump(2) << "\n";
      } else {
        for (const auto& r : reports) out << r.to_string() << "\n";
      }
      return all ? 0 : 1;
    }

    if (*cmd_cf) {
      TernaryFrame F = frame_from_json(load_json_file(cf.file));
      const Relation& T = (cf.rel == "S") ? F.S : F.R;
      std::vector<PredicateReport> reports;
      bool all = true;
      for (const std::string& id : split_csv(cf.suite)) {
        reports.push_back(check_frame_property(F, T, id));
        all = all && reports.back().holds;
      }
      if (cf.common.json) {
        json j;
        j["rel"] = cf.rel;
        j["results"] = json::array();
        for (const auto& r : reports)
          j["results"].push_back(predicate_report_to_json(r));
        j["all_hold"] = all;
        out << j.dump(2) << "\n";
      } else {
        for (const auto& r : reports) out << r.to_string() << "\n";
      }
      return all ? 0 : 1;
    }

    if (*cmd_cx) {
      out << algebra_to_json(complex_algebra(frame_from_json(
                                 load_json_file(cx.file))))
                 .dump(2)
          << "\n";
      return 0;
    }

    if (*cmd_cn) {
      PSAlgebra A = algebra_from_json(load_json_file(cn.file));
      TernaryFrame F = canonical_frame(A);
      json j = frame_to_json(F);
      if (cn.with_t) {
        Relation T = t_relation(A);
        json arr = json::array();
        for (const Triple& t : T.triples())
          arr.push_back(
              {F.world_name(t.a), F.world_name(t.b), F.world_name(t.c)});
        j["T"] = arr;
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*cmd_sp) {
      out << frame_to_json(special_frame(frame_from_json(
                               load_json_file(sp.file))))
                 .dump(2)
          << "\n";
      return 0;
    }

    if (*cmd_em) {
      PSAlgebra A = algebra_from_json(load_json_file(em.file));
      AlgebraEmbedding e = embed_into_3frame(A);
      out << embedding_report_to_json(e, em.with_frame).dump(2) << "\n";
      return e.ok() ? 0 : 1;
    }

    if (*cmd_ec) {
      json j = load_json_file(ec.file);
      if (j.contains("worlds")) {
        TernaryFrame F = frame_from_json(j);
        FrameEmbedding e = embed_frame_into_canonical_of_complex(F);
        json rep;
        rep["direction"] = "frame-into-canonical-of-complex";
        rep["injective"] = e.injective;
        rep["r_preserved"] = e.r_preserved;
        rep["s_preserved"] = e.s_preserved;
        json map = json::object();
        for (int i = 0; i < F.world_count(); ++i)
          map[F.world_name(i)] = e.target.world_name(e.world_map[i]);
        rep["map"] = map;
        out << rep.dump(2) << "\n";
        return e.ok() ? 0 : 1;
      }
      PSAlgebra A = algebra_from_json(j);
      AlgebraEmbedding e = embed_algebra_into_complex_of_canonical(A);
      json rep = embedding_report_to_json(e, false);
      rep["direction"] = "algebra-into-complex-of-canonical";
      out << rep.dump(2) << "\n";
      return e.ok() ? 0 : 1;
    }

    if (*cmd_mc) {
      Model M = model_from_json(load_json_file(mc.file), !mc.allow_non_wmia);
      const Formula* f = parse_formula(mc.formula);
      std::uint64_t ext = eval_formula(M, f);
      bool global = ext == M.universe();
      if (mc.common.json) {
        json j;
        j["formula"] = render(f);
        j["extension"] = world_set_to_json(M.frame, ext);
        j["globally_true"] = global;
        out << j.dump(2) << "\n";
      } else {
        out << render(f) << " holds at " << world_set_to_json(M.frame, ext).dump()
            << (global ? " (globally true)" : " (not globally true)") << "\n";
      }
      return global ? 0 : 1;
    }

    if (*cmd_so) {
      TernaryFrame F = frame_from_json(load_json_file(so.file));
      SoundnessReport rep =
          soundness_report(F, so.depth, so.vars, so.common.effective_budget(),
                           !so.allow_non_wmia);
      if (so.common.json) {
        json j;
        j["all_valid"] = rep.all_valid;
        j["instances_covered"] = rep.instances_covered;
        j["failures"] = json::array();
        for (const auto& f : rep.failures) {
          json fj;
          fj["schema"] = f.schema;
          fj["form"] = f.form;
          fj["instance"] = f.instance;
          fj["valuation"] = json::array();
          for (auto v : f.valuation)
            fj["valuation"].push_back(world_set_to_json(F, v));
          fj["world"] = F.world_name(f.world);
          j["failures"].push_back(fj);
        }
        out << j.dump(2) << "\n";
      } else {
        out << (rep.all_valid ? "all schema instances valid"
                              : "soundness failures found")
            << " (" << rep.instances_covered << " instances)\n";
        for (const auto& f : rep.failures)
          out << "  " << f.schema << " fails: " << f.instance << " with "
              << valuation_text(F, f.valuation) << " at world "
              << F.world_name(f.world) << "\n";
      }
      return rep.all_valid ? 0 : 1;
    }

    if (*cmd_eq) {
      Model M1 = model_from_json(load_json_file(eq.file));
      Model M2 = eq.file2.empty()
                     ? underline_model(M1)
                     : model_from_json(load_json_file(eq.file2));
      std::vector<const Formula*> pool =
          formula_pool(eq.vars, eq.depth, eq.common.effective_budget());
      EquivReport rep = modal_equiv(M1, M2, pool);
      if (eq.common.json) {
        json j;
        j["equivalent"] = rep.equivalent;
        j["formulas_checked"] = rep.formulas_checked;
        j["pool"] = {{"depth", eq.depth}, {"vars", eq.vars}};
        if (!rep.equivalent) {
          j["witness"] = render(rep.witness);
          j["true_in_first"] = rep.true_in_first;
          j["true_in_second"] = rep.true_in_second;
        }
        out << j.dump(2) << "\n";
      } else {
        if (rep.equivalent)
          out << "modally equivalent on the enumerated pool ("
              << rep.formulas_checked << " formulas, depth " << eq.depth
              << ", " << eq.vars << " vars)\n";
        else
          out << "disagreement on " << render(rep.witness) << " (first: "
              << (rep.true_in_first ? "true" : "false") << ", second: "
              << (rep.true_in_second ? "true" : "false") << ")\n";
      }
      return rep.equivalent ? 0 : 1;
    }

    if (*cmd_se) {
      SearchSpec spec;
      if (se.atoms > 0) {
        spec.kind = SearchSpec::Kind::Algebras;
        spec.size = se.atoms;
      } else if (se.worlds > 0) {
        spec.kind = SearchSpec::Kind::Frames;
        spec.size = se.worlds;
      } else {
        throw UsageError("search needs --atoms or --worlds");
      }
      spec.require = split_csv(se.require);
      spec.forbid = split_csv(se.forbid);
      spec.limit = se.count ? ~std::uint64_t{0} : se.limit;
      spec.count_only = se.count;
      spec.scan_max = se.scan_max ? se.scan_max : se.common.effective_budget();
      spec.threads = se.threads;
      spec.allow_large = se.allow_large;
      if (!se.cursor.empty()) {
        auto parts = split_csv(se.cursor);
        if (parts.size() != 2) throw UsageError("--cursor wants outer,inner");
        spec.cursor_outer = std::stoull(parts[0]);
        spec.cursor_inner = std::stoull(parts[1]);
      }

      SearchOutcome o = run_search(spec);
      json manifest;
      manifest["spec"] = {
          {"kind", spec.kind == SearchSpec::Kind::Algebras ? "algebras"
                                                           : "frames"},
          {"size", spec.size},
          {"require", spec.require},
          {"forbid", spec.forbid},
          {"limit", se.count ? json("all") : json(spec.limit)},
          {"cursor", {spec.cursor_outer, spec.cursor_inner}},
          {"scan_max", spec.scan_max}};
      manifest["scanned"] = o.scanned;
      manifest["matched"] = o.matched;
      manifest["exhausted"] = o.exhausted;
      manifest["verdict"] =
          o.matched > 0 ? "found"
                        : (o.exhausted ? "exhausted" : "inconclusive");
      if (!o.exhausted) manifest["next_cursor"] = {o.next_outer, o.next_inner};
      json results = json::array();
      for (std::size_t i = 0; i < o.hit_positions.size(); ++i) {
        json r;
        r["cursor"] = {o.hit_positions[i].outer, o.hit_positions[i].inner};
        if (!spec.count_only) {
          if (spec.kind == SearchSpec::Kind::Algebras)
            r["algebra"] = algebra_to_json(o.algebras[i]);
          else
            r["frame"] = frame_to_json(o.frames[i]);
        }
        results.push_back(r);
      }
      if (!spec.count_only) manifest["results"] = results;
      if (se.common.json) {
        // elapsed time stays out of machine output so identical runs stay
        // byte-identical
        out << manifest.dump(2) << "\n";
      } else {
        out << manifest["verdict"].get<std::string>() << ": " << o.matched
            << " match(es) in " << o.scanned << " scanned candidates ("
            << o.elapsed_ms << " ms)\n";
        if (!spec.count_only && !results.empty())
          out << results.dump(2) << "\n";
        if (!o.exhausted)
          out << "resume with --cursor " << o.next_outer << ","
              << o.next_inner << "\n";
      }
      return o.matched > 0 || spec.count_only ? 0 : 1;
    }

    throw UsageError("no command selected");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mia::cli

#endif  // MIA_CLI_HPP
