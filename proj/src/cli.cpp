#include "vfa/cli.hpp"

#include "vfa/numcx.hpp"
#include "vfa/reconstruct.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace vfa {

namespace {

struct Context {
  const Json& params;
  const Scenario* scenario;

  bool has(const char* key) const { return params.contains(key) && !params.at(key).is_null(); }

  template <class T>
  T get(const char* key, T fallback) const {
    if (!has(key)) return fallback;
    try {
      return params.at(key).get<T>();
    } catch (const Json::exception& e) {
      throw Error(std::string("bad value for ") + key + ": " + e.what());
    }
  }

  std::string need(const char* key) const {
    if (!has(key)) throw Error(std::string("missing required parameter --") + key);
    return params.at(key).get<std::string>();
  }

  Weight max_weight(Weight fallback) const {
    Weight W = get<Weight>("max_weight", scenario ? scenario->max_weight : fallback);
    if (W < 0) throw Error("max weight must be non-negative");
    return W;
  }

  SamplingSpec sampling(std::size_t count) const {
    SamplingSpec s;
    s.seed = get<std::uint64_t>("seed", 0);
    s.count = get<std::size_t>("samples", count);
    s.mode_min = get<int>("mode_min", s.mode_min);
    s.mode_max = get<int>("mode_max", s.mode_max);
    return s;
  }

  /// `key` names a presentation file or a builtin; otherwise the scenario's
  /// presentation; otherwise `fallback`.
  PresentationPtr presentation(const char* key, const std::string& fallback, Weight W) const {
    if (has(key)) {
      const Json& v = params.at(key);
      if (v.is_object()) return presentation_from_json(v, has("max_weight") ? std::optional<Weight>(W) : std::nullopt);
      std::string name = v.get<std::string>();
      if (std::filesystem::exists(name)) {
        std::ifstream in(name);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const Json::exception& e) {
          throw Error("cannot parse presentation file " + name + ": " + e.what());
        }
        return presentation_from_json(j, has("max_weight") ? std::optional<Weight>(W) : std::nullopt);
      }
      if (auto P = builtin_presentation(name, W)) return P;
      throw Error("no presentation file or builtin named \"" + name + "\"");
    }
    if (scenario) return presentation_from_json(scenario->presentation_json, W);
    return builtin_presentation(fallback, W);
  }
};

struct Outcome {
  Report report;
  Json result = Json::object();
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> string_list(const Json& v, char sep) {
  if (v.is_array()) return v.get<std::vector<std::string>>();
  return split(v.get<std::string>(), sep);
}

Outcome jet_build(const Context& ctx) {
  Weight W = ctx.max_weight(6);
  PresentationPtr P;
  if (ctx.has("gens")) {
    auto gens = string_list(ctx.params.at("gens"), ',');
    std::vector<std::string> rels;
    if (ctx.has("relations")) rels = string_list(ctx.params.at("relations"), ';');
    P = make_presentation(AlgebraPresentation::parse(gens, rels, W));
  } else {
    P = ctx.presentation("preset", "jet-x", W);
  }
  Outcome o;
  o.result["presentation"] = presentation_to_json(*P);
  o.result["inhomogeneous_relations"] = P->has_inhomogeneous_relations();
  if (ctx.get<bool>("dims", false)) o.result["dims"] = P->weight_dimensions();
  if (ctx.get<bool>("basis", false)) {
    Json basis = Json::object();
    for (Weight w = 0; w <= P->max_weight(); ++w) {
      Json list = Json::array();
      for (const auto& m : P->weight_basis(w)) list.push_back(m.str(P->generators()));
      basis[std::to_string(w)] = list;
    }
    o.result["basis"] = basis;
  }
  o.report.record("presentation", true);
  return o;
}

Outcome vertex_modes(const Context& ctx) {
  VertexAlgebra V(ctx.presentation("preset", "jet-x", ctx.max_weight(6)));
  const auto& P = V.presentation();
  GradedElement a = P.parse_element(ctx.need("a"));
  GradedElement b = P.parse_element(ctx.need("b"));
  Outcome o;
  o.result["a"] = P.str(a);
  o.result["b"] = P.str(b);
  auto check = [&](int n, const GradedElement& value) {
    o.report.tally("matches_reconstruction", value == mode_of(a, b, n, V));
  };
  if (ctx.has("n")) {
    int n = ctx.get<int>("n", -1);
    GradedElement v = V.mode(a, b, n);
    o.result["n"] = n;
    o.result["value"] = P.str(v);
    check(n, v);
  } else {
    Json modes = Json::object();
    ModeTable table = vertex_op(a, b, V);
    for (const auto& [n, v] : table.entries()) {
      modes[std::to_string(n)] = P.str(v);
      check(n, v);
    }
    o.result["modes"] = modes;
  }
  return o;
}

Outcome vertex_check(const Context& ctx) {
  Weight W = ctx.max_weight(6);
  SamplingSpec s = ctx.sampling(200);
  Outcome o;
  std::vector<std::pair<std::string, PresentationPtr>> algebras;
  if (ctx.has("preset") || ctx.scenario)
    algebras.emplace_back("", ctx.presentation("preset", "jet-x", W));
  else
    for (const char* name : {"jet-x", "jet-xy"}) algebras.emplace_back(std::string(name) + "/", builtin_presentation(name, W));
  for (const auto& [prefix, P] : algebras) o.report.merge(check_vertex_axioms(VertexAlgebra(P), s), prefix);
  o.result["samples"] = s.count;
  return o;
}

TensorSection section_on(PresentationPtr P, const BasisElement& L, const Json& factors) {
  std::vector<GradedElement> elems;
  for (const auto& f : factors) elems.push_back(P->parse_element(f.get<std::string>()));
  return TensorSection::simple(P, L, elems);
}

Outcome fact_check(const Context& ctx) {
  PresentationPtr P = ctx.presentation("preset", "jet-x", ctx.max_weight(4));
  SamplingSpec s = ctx.sampling(100);
  Outcome o;
  o.report.merge(check_pfa_axioms(P, s));
  o.report.merge(check_placement_independence(P, s));
  o.result["samples"] = s.count;

  if (ctx.has("pushes")) {
    if (!ctx.scenario) throw Error("pushes need a scenario with named geometry");
    Json pushes = Json::array();
    for (const auto& push : ctx.params.at("pushes")) {
      std::string from = push.at("from").get<std::string>(), to = push.at("to").get<std::string>();
      auto lookup = [&](const std::string& name) -> const GeometryObject& {
        auto it = ctx.scenario->geometry.find(name);
        if (it == ctx.scenario->geometry.end()) throw Error("scenario has no geometry object \"" + name + "\"");
        return it->second;
      };
      const auto* L = std::get_if<BasisElement>(&lookup(from));
      if (!L) throw Error("push source \"" + from + "\" must be a basis element");
      TensorSection sec = section_on(P, *L, push.at("factors"));
      Json entry{{"from", from}, {"to", to}};
      std::string name = "push " + from + " -> " + to;
      try {
        if (const auto* M = std::get_if<BasisElement>(&lookup(to))) {
          entry["value"] = corestrict(sec, *L, *M).str();
        } else {
          const auto& U = std::get<SupportedOpen>(lookup(to));
          entry["value"] = evaluate(P, U).push(sec).str(P->generators());
        }
        o.report.record(name, true);
      } catch (const Error& e) {
        entry["error"] = e.what();
        o.report.record(name, false, Json{{"error", e.what()}});
      }
      pushes.push_back(entry);
    }
    o.result["pushes"] = pushes;
  }
  return o;
}

Outcome fact_coeq(const Context& ctx) {
  Weight W = ctx.max_weight(5);
  PresentationPtr P = ctx.presentation("preset", "jet-x", W);
  Weight weight = ctx.get<Weight>("weight", W);
  Outcome o;
  std::vector<std::vector<Rational>> chains;
  if (ctx.has("radii")) {
    std::vector<Rational> radii;
    for (const auto& r : string_list(ctx.params.at("radii"), ',')) radii.push_back(parse_rational(r));
    chains.push_back(radii);
  } else {
    for (long k = 1; k <= 5; ++k) {
      std::vector<Rational> radii;
      for (long j = 1; j <= k; ++j) radii.emplace_back(j);
      chains.push_back(radii);
    }
  }
  for (std::size_t c = 0; c < chains.size(); ++c)
    o.report.merge(check_coequalizer_chain(P, chains[c], weight),
                   chains.size() == 1 ? "" : "length_" + std::to_string(chains[c].size()) + "/");
  o.result["chains"] = chains.size();
  return o;
}

Outcome fact_adjunction(const Context& ctx) {
  Weight W = ctx.max_weight(4);
  PresentationPtr source = ctx.presentation("source", "jet-x", W);
  PresentationPtr target = ctx.presentation("target", "jet-xy", W);
  SamplingSpec s = ctx.sampling(20);
  Outcome o;
  o.report.merge(check_adjunction(source, target, s));
  o.result["samples"] = s.count;
  return o;
}

Outcome reconstruct_roundtrip(const Context& ctx) {
  Weight W = ctx.max_weight(6);
  VertexAlgebra V(ctx.presentation("preset", "jet-x", W));
  SamplingSpec s = ctx.sampling(20);
  Outcome o;
  o.report.merge(eta_roundtrip_check(V, W, s, ctx.get<int>("max_mode", 6)));
  if (ctx.has("lift")) {
    VertexAlgebra target(ctx.presentation("lift_target", "jet-y", W));
    auto source = make_presentation(AlgebraPresentation::free({"x"}, W));
    std::vector<GradedElement> f0;
    for (const auto& e : string_list(ctx.params.at("lift"), ';'))
      f0.push_back(target.presentation().parse_element(e));
    o.report.merge(check_jet_lift(f0, source, target), "lift/");
  }
  return o;
}

ContourFunction laurent_function(const std::string& name) {
  using C = Complex;
  const double inf = std::numeric_limits<double>::infinity();
  if (name == "polynomial") return scalar_function([](C z) { return 3.0 + 2.0 * z * z; });
  if (name == "partial_fraction")
    return scalar_function([](C z) { return 1.0 / (z * (z - 2.0)); }, Domain{0.0, 0.0, 2.0, {0.0}});
  if (name == "inverse_square") return scalar_function([](C z) { return 1.0 / (z * z); }, Domain{0.0, 0.0, inf, {0.0}});
  if (name == "sinc") return scalar_function([](C z) { return std::sin(z) / z; }, Domain{0.0, 0.0, inf, {0.0}});
  if (name == "exp_inverse") return scalar_function([](C z) { return std::exp(1.0 / z); }, Domain{0.0, 0.0, inf, {0.0}});
  throw Error("unknown function \"" + name + "\"; expected polynomial, partial_fraction, inverse_square, sinc, exp_inverse");
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Outcome num_laurent(const Context& ctx) {
  std::size_t nodes = ctx.get<std::size_t>("nodes", 128);
  double radius = ctx.get<double>("radius", 1.0);
  Outcome o;
  if (!ctx.has("function")) {
    Weight W = ctx.max_weight(6);
    VertexAlgebra V(ctx.presentation("preset", "jet-x", W));
    o.report.merge(check_numeric_modes(V, W, ctx.get<int>("max_mode", 6), nodes, radius,
                                       ctx.get<double>("tolerance", 1e-9)));
    o.report.merge(check_contour_sanity(nodes, ctx.get<std::uint64_t>("seed", 0)), "contour/");
    return o;
  }
  ContourFunction f = laurent_function(ctx.need("function"));
  Complex center = 0;
  if (ctx.has("center")) {
    auto parts = string_list(ctx.params.at("center"), ',');
    if (parts.empty() || parts.size() > 2) throw Error("--center expects re[,im]");
    center = Complex(std::stod(parts[0]), parts.size() == 2 ? std::stod(parts[1]) : 0.0);
  }
  if (ctx.has("n")) {
    int n = ctx.get<int>("n", 0);
    o.result["n"] = n;
    o.result["coefficient"] = complex_json(cauchy_coeff(f, center, n, radius, nodes)[0]);
  }
  double threshold = ctx.get<double>("threshold", 1e-8);
  Singularity sing = classify_singularity(f, center, {radius / 2, radius}, ctx.get<int>("window", 8), threshold, nodes);
  o.result["classification"] = sing.str();
  o.result["residue"] = complex_json(sing.residue[0]);
  o.report.record("coefficients_finite", std::all_of(sing.negative_coefficients.begin(), sing.negative_coefficients.end(),
                                                      [](double x) { return std::isfinite(x); }));
  return o;
}

Outcome num_swap(const Context& ctx) {
  Weight W = ctx.max_weight(4);
  VertexAlgebra V(ctx.presentation("preset", "jet-x", W));
  SamplingSpec s = ctx.sampling(20);
  unsigned max_n = ctx.get<unsigned>("max_n", 2);
  NumericModel model(V);
  SwapOptions opts;
  opts.nodes = ctx.get<std::size_t>("nodes", 128);
  opts.tolerance = ctx.get<double>("tolerance", 1e-8);
  opts.outer_radius = ctx.get<double>("outer_radius", 2.0);
  opts.inner_radius = ctx.get<double>("inner_radius", 1.0);
  opts.model = &model;
  if (ctx.get<bool>("perturb", false))
    opts.perturbation = [d = model.dim()](Complex z, Complex w) {
      NumericVector v(d);
      v[0] = 1.0 / ((z - w) * w);
      return v;
    };
  ElementSampler es(V.presentation(), s.seed, s.coefficient_range);
  Outcome o;
  Weight hi = std::min<Weight>(W, 2);
  for (std::size_t k = 0; k < s.count; ++k) {
    GradedElement a = es.homogeneous(es.nonempty_weight(0, hi));
    GradedElement b = es.homogeneous(es.nonempty_weight(0, hi));
    GradedElement c = es.homogeneous(es.nonempty_weight(0, hi));
    int m = es.draw_int(-3, 1), n = es.draw_int(-3, 1);
    for (unsigned N = 0; N <= max_n; ++N) {
      Report r = residue_swap_check(a, b, c, m, n, N, V, opts);
      for (const auto& chk : r.checks()) {
        std::string name = chk.name + "_N" + std::to_string(N);
        o.report.tally(name, chk.pass(), [&] { return chk.detail; });
      }
    }
  }
  o.result["samples"] = s.count;
  return o;
}

using Handler = Outcome (*)(const Context&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"jet build", jet_build},           {"vertex modes", vertex_modes},
      {"vertex check", vertex_check},     {"fact check", fact_check},
      {"fact coeq", fact_coeq},           {"fact adjunction", fact_adjunction},
      {"reconstruct roundtrip", reconstruct_roundtrip},
      {"num laurent", num_laurent},       {"num swap", num_swap}};
  return table;
}

}  // namespace

Json run_command(const std::string& command, const Json& params, const Scenario* scenario) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw Error("unknown command \"" + command + "\"");
  auto t0 = std::chrono::steady_clock::now();
  Outcome o = it->second(Context{params, scenario});
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return Json{{"command", command}, {"params", params}, {"checks", o.report.to_json()}, {"timing_ms", ms},
              {"result", o.result}};
}

int exit_status(const Json& report) {
  for (const auto& c : report.at("checks"))
    if (c.at("status") != "pass") return kExitFail;
  return kExitPass;
}

namespace {

// Options whose values land in the params object only when given.
class ParamSink {
 public:
  template <class T>
  void option(CLI::App* app, const std::string& flag, const std::string& help) {
    auto value = std::make_shared<std::optional<T>>();
    app->add_option(flag, *value, help);
    std::string key = key_of(flag);
    sinks_.push_back([value, key](Json& params) {
      if (*value) params[key] = **value;
    });
  }
  void flag(CLI::App* app, const std::string& flag, const std::string& help) {
    auto value = std::make_shared<bool>(false);
    app->add_flag(flag, *value, help);
    std::string key = key_of(flag);
    sinks_.push_back([value, key](Json& params) {
      if (*value) params[key] = true;
    });
  }
  Json collect() const {
    Json params = Json::object();
    for (const auto& s : sinks_) s(params);
    return params;
  }

 private:
  static std::string key_of(std::string flag) {
    while (!flag.empty() && flag.front() == '-') flag.erase(0, 1);
    for (auto& ch : flag)
      if (ch == '-') ch = '_';
    return flag;
  }
  std::vector<std::function<void(Json&)>> sinks_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jet vertex algebras and locally constant factorization algebras on C"};
  app.require_subcommand(1);
  app.fallthrough();
  ParamSink sink;
  std::optional<std::string> out_file, scenario_file;
  sink.option<std::string>(&app, "--preset", "Presentation JSON file or builtin name (jet-x, jet-y, jet-xy)");
  sink.option<std::uint64_t>(&app, "--seed", "Seed for all sampling (default 0)");
  sink.option<Weight>(&app, "--max-weight", "Truncation bound W");
  sink.option<std::size_t>(&app, "--samples", "Number of samples");
  sink.option<double>(&app, "--tolerance", "Numeric tolerance");
  app.add_option("--out", out_file, "Write the report here instead of stdout");
  app.add_option("--scenario", scenario_file, "Scenario JSON file");

  std::string command;
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, const std::string& help) {
    auto* c = g->add_subcommand(name, help);
    c->fallthrough();
    std::string full = g->get_name() + " " + name;
    c->callback([&command, full] { command = full; });
    return c;
  };

  auto* jet = group("jet", "Jet algebra presentations");
  auto* build = leaf(jet, "build", "Normal forms and weight spaces");
  sink.option<std::string>(build, "--gens", "Comma-separated generator names");
  sink.option<std::string>(build, "--relations", "Semicolon-separated relations");
  sink.flag(build, "--dims", "Report weight-space dimensions");
  sink.flag(build, "--basis", "Report standard monomials per weight");

  auto* vertex = group("vertex", "Vertex algebra structure");
  auto* modes = leaf(vertex, "modes", "Compute a_(n) b");
  sink.option<std::string>(modes, "--a", "Element a");
  sink.option<std::string>(modes, "--b", "Element b");
  sink.option<int>(modes, "--n", "Mode index (all modes when omitted)");
  auto* vcheck = leaf(vertex, "check", "Vertex algebra axiom suite");
  sink.option<int>(vcheck, "--mode-min", "Smallest sampled mode index");
  sink.option<int>(vcheck, "--mode-max", "Largest sampled mode index");

  auto* fact = group("fact", "Factorization algebra checks");
  leaf(fact, "check", "Prefactorization, equivariance and placement checks");
  auto* coeq = leaf(fact, "coeq", "Coequalizer chains of concentric disks");
  sink.option<std::string>(coeq, "--radii", "Comma-separated increasing radii (default: chains 1..k, k <= 5)");
  sink.option<Weight>(coeq, "--weight", "Largest weight checked");
  auto* adj = leaf(fact, "adjunction", "theta / theta' adjunction");
  sink.option<std::string>(adj, "--source", "Source presentation (free)");
  sink.option<std::string>(adj, "--target", "Target presentation");

  auto* rec = group("reconstruct", "Vertex algebra of the factorization algebra");
  auto* rt = leaf(rec, "roundtrip", "Reconstruct vacuum, translation and modes");
  sink.option<int>(rt, "--max-mode", "Largest |n| compared");
  sink.option<std::string>(rt, "--lift", "Images of x under f0, semicolon-separated, for the jet lift check");
  sink.option<std::string>(rt, "--lift-target", "Target presentation of the lift (default jet-y)");

  auto* num = group("num", "Numeric complex analysis");
  auto* laurent = leaf(num, "laurent", "Laurent coefficients: numeric modes, or a named test function");
  sink.option<std::string>(laurent, "--function", "polynomial | partial_fraction | inverse_square | sinc | exp_inverse");
  sink.option<int>(laurent, "--n", "Coefficient index");
  sink.option<double>(laurent, "--radius", "Contour radius");
  sink.option<std::string>(laurent, "--center", "Center re[,im]");
  sink.option<std::size_t>(laurent, "--nodes", "Quadrature nodes");
  sink.option<int>(laurent, "--window", "Negative-index window for classification");
  sink.option<double>(laurent, "--threshold", "Significance threshold");
  sink.option<int>(laurent, "--max-mode", "Largest |n| compared");
  auto* swap = leaf(num, "swap", "Residue swap in both contour orders");
  sink.option<unsigned>(swap, "--max-n", "Largest power N of (z - w)");
  sink.option<std::size_t>(swap, "--nodes", "Quadrature nodes per contour");
  sink.option<double>(swap, "--outer-radius", "Outer contour radius");
  sink.option<double>(swap, "--inner-radius", "Inner contour radius");
  sink.flag(swap, "--perturb", "Add a (z - w)^-1 w^-1 term (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  Json report;
  try {
    Json params = sink.collect();
    if (scenario_file) {
      std::ifstream in(*scenario_file);
      if (!in) throw Error("cannot open scenario " + *scenario_file);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::exception& e) {
        throw Error("cannot parse scenario " + *scenario_file + ": " + e.what());
      }
      Scenario sc = scenario_from_json(j);
      std::vector<Json> runs;
      for (const auto& c : sc.commands)
        if (c.at("command") == command) runs.push_back(c);
      if (sc.commands.empty()) runs.push_back(Json{{"command", command}});
      Report merged;
      Json reports = Json::array();
      for (std::size_t i = 0; i < runs.size(); ++i) {
        Json p = runs[i];
        p.erase("command");
        for (const auto& [k, v] : params.items()) p[k] = v;  // flags override the file
        Json r = run_command(command, p, &sc);
        for (const auto& chk : r.at("checks"))
          merged.record(std::to_string(i) + "/" + chk.at("name").get<std::string>(), chk.at("status") == "pass",
                        chk.at("detail"));
        reports.push_back(r);
      }
      report = Json{{"command", command},
                    {"params", Json{{"scenario", *scenario_file}, {"runs", runs.size()}}},
                    {"checks", merged.to_json()},
                    {"timing_ms", 0.0},
                    {"result", Json{{"reports", reports}}}};
      double total = 0;
      for (const auto& r : reports) total += r.at("timing_ms").get<double>();
      report["timing_ms"] = total;
    } else {
      report = run_command(command, params);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  std::string text = report.dump(2) + "\n";
  if (out_file) {
    std::ofstream f(*out_file);
    if (!f) {
      err << "error: cannot write " << *out_file << "\n";
      return kExitParse;
    }
    f << text;
  } else {
    out << text;
  }
  return exit_status(report);
}

}  // namespace vfa
