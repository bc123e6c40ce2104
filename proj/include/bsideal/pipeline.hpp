#ifndef BSIDEAL_PIPELINE_HPP
#define BSIDEAL_PIPELINE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bsideal/io.hpp"

// run(spec) -> report. The report is built as ordered JSON; the text form is
// rendered from it so both views always agree.

namespace bsideal {

struct RunOptions {
  int slope_bound = 8;
  std::size_t max_matrix_cells = 0;  // 0 = unlimited
};

enum ExitCode : int { exit_pass = 0, exit_check_failed = 1, exit_usage = 2, exit_bounds = 3 };

struct RunResult {
  Json report;
  int exit_code = exit_pass;
};

/// One distinct b found by sample_ideal, with the strategies that found it.
struct SampledElement {
  BSCertificate cert;
  std::vector<std::string> strategies;
};

inline std::vector<SampledElement> sample_with_strategies(const std::shared_ptr<const Collection>& F,
                                                          std::span<const int> a, const SolveBounds& bounds) {
  std::map<ParamPoly, SampledElement> found;
  for (const auto& strategy : sampling_strategies(F->n(), bounds.max_operator_order)) {
    auto cert = find_bs_pair_with_support(F, a, bounds, strategy.betas);
    if (!cert) continue;
    ParamPoly key = cert->b.monic();
    auto it = found.find(key);
    if (it == found.end()) {
      found.emplace(std::move(key), SampledElement{std::move(*cert), {strategy.name}});
    } else {
      it->second.strategies.push_back(strategy.name);
    }
  }
  if (found.empty()) throw Error(errc::no_solution, "no strategy found an element within the bounds");
  std::vector<SampledElement> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

namespace detail {

class CheckList {
 public:
  void add(const std::string& name, bool pass, bool gating = true) {
    list_.push_back(Json{{"name", name}, {"pass", pass}, {"gating", gating}});
    if (gating && !pass) ok_ = false;
  }
  bool ok() const noexcept { return ok_; }
  Json json() const { return list_; }

 private:
  Json list_ = Json::array();
  bool ok_ = true;
};

inline std::vector<ParamPoly> bs_of(const std::vector<SampledElement>& s) {
  std::vector<ParamPoly> out;
  for (const auto& e : s) out.push_back(e.cert.b);
  return out;
}

inline Json verdicts_json(const StructureReport& rep) {
  Json out = Json::array();
  for (const auto& v : rep.verdicts) {
    Json h = hyperplane_json(v.hyperplane);
    h["slopes_nonnegative"] = v.slopes_nonnegative;
    h["intercept_positive"] = v.intercept_positive;
    h["strict_index_exists"] = v.strict_index_exists;
    out.push_back(std::move(h));
  }
  return out;
}

inline std::vector<int> unit(std::size_t r, std::size_t i, int scale = 1) {
  std::vector<int> e(r, 0);
  e[i] = scale;
  return e;
}

inline std::string index_label(std::size_t i) { return "i=" + std::to_string(i + 1); }

class Runner {
 public:
  Runner(const ProblemSpec& spec, const RunOptions& opts)
      : spec_(spec), opts_(opts), F_(std::make_shared<const Collection>(spec.n(), spec.F)), names_(spec.names()) {
    bounds_ = spec.bounds;
    bounds_.max_matrix_cells = opts.max_matrix_cells;
  }

  Json run() {
    Json report;
    report["id"] = spec_.id;
    report["input"] = input_json();
    report["tasks"] = spec_.tasks;
    try {
      if (spec_.has_task("bs-find")) report["bs_find"] = bs_find();
      if (spec_.has_task("bs-verify")) report["bs_verify"] = bs_verify();
      if (spec_.has_task("decompose")) report["decompose"] = decompose();
      if (spec_.has_task("snc")) report["snc"] = snc();
      if (spec_.has_task("zeta")) report["zeta"] = zeta();
      if (spec_.has_task("exp-compare")) report["exp_compare"] = exp_compare();
    } catch (const Error& e) {
      report["checks"] = checks_.json();
      report["error"] = Json{{"code", e.code()}, {"message", e.what()}};
      report["status"] = e.code();
      exit_ = e.code() == errc::no_solution ? exit_bounds : exit_usage;
      return report;
    }
    report["checks"] = checks_.json();
    report["status"] = checks_.ok() ? "pass" : errc::check_failed;
    exit_ = checks_.ok() ? exit_pass : exit_check_failed;
    return report;
  }

  int exit_code() const noexcept { return exit_; }

 private:
  Json input_json() const {
    Json F = Json::array();
    for (const auto& f : spec_.F) F.push_back(to_string(f, spec_.variables));
    Json j;
    j["variables"] = spec_.variables;
    j["F"] = std::move(F);
    j["a"] = vector_json(spec_.a);
    j["bounds"] = Json{{"max_operator_order", spec_.bounds.max_operator_order},
                       {"max_x_degree", spec_.bounds.max_x_degree},
                       {"max_s_degree", spec_.bounds.max_s_degree},
                       {"max_b_degree", spec_.bounds.max_b_degree}};
    j["slope_bound"] = opts_.slope_bound;
    if (spec_.graph) {
      j["resolution_graph"] = graph_json(*spec_.graph);
      j["resolution_graph"]["ambient"] = spec_.graph_ambient;
    }
    return j;
  }

  // Sampled elements of B_F^a for the given a and bounds, memoized.
  const std::vector<SampledElement>& sample(const std::vector<int>& a, const SolveBounds& b) {
    auto key = std::make_tuple(a, b.max_operator_order, b.max_x_degree, b.max_s_degree, b.max_b_degree);
    auto it = samples_.find(key);
    if (it != samples_.end()) return it->second;
    return samples_.emplace(key, sample_with_strategies(F_, a, b)).first->second;
  }

  const std::vector<SampledElement>& main_sample() { return sample(spec_.a, bounds_); }

  ZeroLocusSummary zero_locus(const std::vector<int>& a, const SolveBounds& b) {
    const auto bs = bs_of(sample(a, b));
    return common_hyperplanes(bs, opts_.slope_bound);
  }

  Json bs_find() {
    const auto& s = main_sample();
    Json j;
    // The "full" strategy comes first and gives the minimal b.
    for (const auto& e : s)
      if (std::find(e.strategies.begin(), e.strategies.end(), "full") != e.strategies.end())
        j["certificate"] = certificate_json(e.cert, names_);
    Json elems = Json::array();
    for (const auto& e : s) {
      Json x{{"b", to_string(e.cert.b, names_.s)}, {"P", to_string(e.cert.P, names_)}};
      x["strategies"] = e.strategies;
      elems.push_back(std::move(x));
    }
    j["sample"] = std::move(elems);
    return j;
  }

  Json bs_verify() {
    Json out = Json::array();
    if (spec_.certificate) {
      BSCertificate c{spec_.certificate->first, spec_.certificate->second, F_, spec_.a};
      const bool ok = verify(c);
      out.push_back(Json{{"source", "input"}, {"b", to_string(c.b, names_.s)}, {"verified", ok}});
      checks_.add("verify input certificate", ok);
    }
    for (const auto& e : main_sample()) {
      const bool ok = verify(e.cert);
      out.push_back(Json{{"source", "solver"}, {"b", to_string(e.cert.b, names_.s)}, {"verified", ok}});
      checks_.add("verify " + to_string(e.cert.b, names_.s), ok);
    }
    return out;
  }

  Json decompose() {
    const auto& s = main_sample();
    Json elements = Json::array();
    bool every_factor_ok = true;
    for (const auto& e : s) {
      auto dec = extract_hyperplanes(e.cert.b, opts_.slope_bound);
      std::vector<Hyperplane> hs;
      Json factors = Json::array();
      for (const auto& f : dec.factors) {
        hs.push_back(f.hyperplane);
        Json h = hyperplane_json(f.hyperplane);
        h["multiplicity"] = f.multiplicity;
        factors.push_back(std::move(h));
      }
      auto rep = check_theorem_A(hs, spec_.a);
      every_factor_ok = every_factor_ok && rep.all_pass();
      elements.push_back(Json{{"b", to_string(e.cert.b, names_.s)},
                              {"factors", std::move(factors)},
                              {"remainder", to_string(dec.remainder, names_.s)},
                              {"structure", verdicts_json(rep)}});
    }
    auto z = zero_locus(spec_.a, bounds_);
    std::vector<ParamPoly> leftover;
    for (const auto& rem : z.remainders)
      if (rem.degree() > 0) leftover.push_back(rem);
    auto rep = check_theorem_A(z.hyperplanes, spec_.a, leftover);
    Json leftover_json = Json::array();
    for (const auto& p : rep.leftover) leftover_json.push_back(to_string(p, names_.s));
    Json j;
    j["elements"] = std::move(elements);
    j["zero_locus"] = Json{{"hyperplanes", verdicts_json(rep)}, {"leftover", std::move(leftover_json)}};
    checks_.add("structure of every extracted hyperplane", every_factor_ok);
    checks_.add("structure of the common hyperplanes", rep.all_pass());
    if (spec_.translation) j["translation"] = translation();
    return j;
  }

  Json translation() {
    const auto& t = *spec_.translation;
    const std::size_t r = spec_.r();
    const auto hyps_1 = zero_locus(unit(r, t.i), bounds_).hyperplanes;
    Json rows = Json::array();
    for (int l : t.ls) {
      SolveBounds bl = bounds_;
      bl.max_operator_order *= l;
      bl.max_b_degree *= l;
      const auto hyps_l = zero_locus(unit(r, t.i, l), bl).hyperplanes;
      const bool ok = check_translation_union(hyps_l, hyps_1, t.i, l);
      Json hs = Json::array();
      for (const auto& h : hyps_l) hs.push_back(hyperplane_json(h));
      rows.push_back(Json{{"l", l}, {"hyperplanes", std::move(hs)}, {"union_identity", ok}});
      checks_.add("translation union " + index_label(t.i) + " l=" + std::to_string(l), ok);
    }
    return Json{{"i", t.i + 1}, {"rows", std::move(rows)}};
  }

  std::optional<ExponentMatrix> monomial_exponents() const {
    ExponentMatrix m;
    for (const auto& f : spec_.F) {
      if (f.size() != 1 || f.leading_coefficient() != 1) return std::nullopt;
      m.emplace_back(f.leading_monomial().begin(), f.leading_monomial().end());
    }
    return m;
  }

  Json snc() {
    const auto& g = *spec_.graph;
    Json j;
    const SlopeSet slopes = slope_set(g, spec_.a);
    Json sj = Json::array();
    for (const auto& v : slopes) sj.push_back(vector_json(v));
    j["slope_set"] = std::move(sj);

    const ParamPoly b = snc_b_element(g, spec_.a);
    j["b_element"] = to_string(b, names_.s);
    auto dec = extract_hyperplanes(b, opts_.slope_bound);
    std::vector<Hyperplane> hs;
    SlopeSet extracted;
    for (const auto& f : dec.factors) {
      hs.push_back(f.hyperplane);
      extracted.insert(f.hyperplane.slope());
    }
    auto rep = check_theorem_A(hs, spec_.a);
    j["b_element_structure"] = verdicts_json(rep);
    checks_.add("structure of the normal-crossing b-element", rep.all_pass());
    checks_.add("b-element slopes equal the slope set", extracted == slopes && dec.remainder.degree() == 0);

    if (auto m = monomial_exponents()) {
      auto cert = snc_certificate(*m, spec_.a);
      const bool ok = verify(cert);
      j["certificate"] = certificate_json(cert, names_);
      j["certificate"]["verified"] = ok;
      checks_.add("normal-crossing certificate verifies", ok);
    }

    if (spec_.has_task("bs-find") || spec_.has_task("decompose") || spec_.has_task("exp-compare")) {
      SlopeSet found;
      for (const auto& h : zero_locus(spec_.a, bounds_).hyperplanes) found.insert(h.slope());
      const bool ok = pullback_slope_check(found, g, spec_.a);
      Json fj = Json::array();
      for (const auto& v : found) fj.push_back(vector_json(v));
      j["pullback"] = Json{{"slopes_F", std::move(fj)}, {"contained", ok}};
      checks_.add("solver slopes lie in the graph slope set", ok);
    }
    return j;
  }

  Json zeta() {
    const auto& g = *spec_.graph;
    const std::vector<long> m = spec_.sabbah_m ? *spec_.sabbah_m : std::vector<long>(spec_.r(), 1);
    const MonZeta z = mon_zeta(g);
    const MonZeta special = sabbah_specialize(z, m);
    const MonZeta reweighted = mon_zeta(g.reweighted(m));
    const bool ok = special == reweighted;
    checks_.add("specialization matches the reweighted graph", ok);
    return Json{{"mon_zeta", zeta_json(z)},
                {"m", vector_json(m)},
                {"specialized", zeta_json(special)},
                {"reweighted", zeta_json(reweighted)},
                {"equal", ok}};
  }

  std::vector<TorusCoset> exp_of(const std::vector<int>& a) {
    return exp_images(zero_locus(a, bounds_).hyperplanes);
  }

  Json exp_compare() {
    const std::size_t r = spec_.r();
    Json j;
    const auto combined = exp_of(spec_.a);
    j["combined"] = cosets_json(combined);

    std::vector<int> active(r, 0);
    std::map<std::size_t, std::vector<TorusCoset>> per_i;
    Json axes = Json::array();
    for (std::size_t i = 0; i < r; ++i) {
      if (spec_.a[i] == 0 || spec_.F[i].degree() < 1) continue;
      active[i] = 1;
      per_i[i] = exp_of(unit(r, i));
      axes.push_back(Json{{"i", i + 1}, {"cosets", cosets_json(per_i[i])}});
    }
    j["per_axis"] = std::move(axes);
    const bool eq3 = check_eq_III(per_i, combined, active);
    j["exp_union_identity"] = eq3;
    checks_.add("Exp of combined locus equals union over axes", eq3);

    if (spec_.graph) {
      const auto& g = *spec_.graph;
      const auto loci = support_loci(g, spec_.a);
      std::vector<TorusCoset> uni;
      for (std::size_t i = 0; i < r; ++i) {
        if (!active[i]) continue;
        auto part = support_loci(g, unit(r, i));
        uni.insert(uni.end(), part.begin(), part.end());
      }
      const bool eq1 = union_equal(loci, uni);
      j["support_loci"] = cosets_json(loci);
      j["support_union_identity"] = eq1;
      checks_.add("support locus equals union over axes", eq1);

      // Exp(Z(B)) against the combinatorial support loci. Gating only when the
      // graph is F itself; otherwise the model is reported, not enforced.
      Json cmp = Json::array();
      auto compare = [&](const std::string& label, const std::vector<int>& a,
                         const std::vector<TorusCoset>& exp_side) {
        const auto model = support_loci(g, a);
        const bool eq = union_equal(exp_side, model);
        cmp.push_back(Json{{"a", vector_json(a)}, {"exp", cosets_json(exp_side)}, {"model", cosets_json(model)},
                           {"equal", eq}});
        checks_.add("Exp locus equals support locus " + label, eq, spec_.graph_ambient);
      };
      for (const auto& [i, cs] : per_i) compare(index_label(i), unit(r, i), cs);
      compare("for a", spec_.a, combined);
      j["locus_comparison"] = Json{{"enforced", spec_.graph_ambient}, {"rows", std::move(cmp)}};
    }
    return j;
  }

  const ProblemSpec& spec_;
  RunOptions opts_;
  std::shared_ptr<const Collection> F_;
  WeylNames names_;
  SolveBounds bounds_;
  CheckList checks_;
  std::map<std::tuple<std::vector<int>, int, int, int, int>, std::vector<SampledElement>> samples_;
  int exit_ = exit_pass;
};

}  // namespace detail

inline RunResult run(const ProblemSpec& spec, const RunOptions& opts = {}) {
  detail::Runner runner(spec, opts);
  RunResult out;
  out.report = runner.run();
  out.exit_code = runner.exit_code();
  return out;
}

namespace detail {

inline bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline void render(const Json& j, const std::string& pad, std::string& out);

inline void render_value(const std::string& prefix, const Json& v, const std::string& pad, std::string& out) {
  if (is_scalar(v)) {
    out += prefix + " " + scalar_text(v) + "\n";
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return is_scalar(x); })) {
    std::string line = prefix + " [";
    for (std::size_t k = 0; k < v.size(); ++k) line += (k ? ", " : "") + scalar_text(v[k]);
    out += line + "]\n";
  } else if (v.empty()) {
    out += prefix + (v.is_array() ? " []\n" : " {}\n");
  } else {
    out += prefix + "\n";
    render(v, pad + "  ", out);
  }
}

inline void render(const Json& j, const std::string& pad, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_value(pad + k + ":", v, pad, out);
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() && !v.empty()) {
        std::string sub;
        render(v, pad + "  ", sub);
        // Replace the first line's indent with the list marker.
        sub.replace(pad.size(), 2, "- ");
        out += sub;
      } else {
        render_value(pad + "-", v, pad, out);
      }
    }
  } else {
    out += pad + scalar_text(j) + "\n";
  }
}

}  // namespace detail

/// Indented, human-readable rendering of a report.
inline std::string render_text(const Json& report) {
  std::string out;
  detail::render(report, "", out);
  return out;
}

}  // namespace bsideal

#endif  // BSIDEAL_PIPELINE_HPP
