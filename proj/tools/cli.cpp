#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qalg/colimit.hpp"
#include "qalg/entailment.hpp"
#include "qalg/error.hpp"
#include "qalg/finitarity.hpp"
#include "qalg/io.hpp"
#include "qalg/report.hpp"
#include "qalg/variety.hpp"

namespace qalg::cli {

namespace {

std::vector<std::string> split_top(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

std::optional<std::string> after_prefix(const std::string& s, std::initializer_list<std::string_view> prefixes) {
  for (std::string_view p : prefixes)
    if (s.rfind(p, 0) == 0) return s.substr(p.size());
  return std::nullopt;
}

std::vector<Distance> parse_grid(const std::string& text) {
  std::vector<Distance> out;
  for (const auto& item : split_top(text, ',')) out.push_back(parse_distance(item));
  if (out.empty()) throw ValidationError("empty eps grid");
  return out;
}

std::string grid_text(const std::vector<Distance>& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + format_distance(g[i]);
  return s;
}

MetricSpace space_or_default(const std::string& path) {
  return path.empty() ? counterexample_space() : load_space(path);
}

DistanceTable element_table(const FreeAlgebraModel& model, const std::vector<Term>& elems) {
  DistanceTable t;
  t.name = "distance";
  for (const Term& e : elems) {
    t.rows.push_back(to_string(e));
    t.cols.push_back(to_string(e));
  }
  for (const Term& a : elems)
    for (const Term& b : elems) t.values.push_back(model.distance(a, b));
  return t;
}

DistanceTable space_table(const std::string& name, const PseudoMetricSpace& s) {
  DistanceTable t{name, s.points(), s.points(), {s.table().begin(), s.table().end()}};
  return t;
}

Claim factorization_claim(const FactorizationVerdict& v, const std::string& expect) {
  Claim c{"factorization", "nonexpanding factorization through T i_X", std::string(v.exists ? "exists" : "fails"),
          {}, true, ""};
  if (!expect.empty()) {
    c.expected = expect;
    c.pass = (expect == "exists") == v.exists;
  }
  if (v.witness) {
    const auto& w = *v.witness;
    c.witness = to_string(w.t) + " vs " + to_string(w.u) + ": d_TX = " + format_distance(w.d_tx) +
                ", d_Y = " + format_distance(w.d_y);
  }
  return c;
}

struct Common {
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--output", c.output, "Write the report to this file instead of stdout");
}

int emit(const Report& r, const Common& c, std::ostream& out) {
  std::string text = c.format == "json" ? to_json(r) : c.format == "csv" ? to_csv(r) : to_text(r);
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + c.output);
    f << text;
  }
  return r.pass ? kOk : kCheckFailed;
}

bool all_pass(const std::vector<Claim>& claims) {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

}  // namespace

std::vector<std::pair<std::string, std::string>> split_pairs(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& group : split_top(text, ';')) {
    if (group.empty()) continue;
    const auto items = split_top(group, ',');
    if (items.size() != 2 || items[0].empty() || items[1].empty())
      throw ValidationError("--pairs: expected 'left,right' but got '" + group + "'");
    out.emplace_back(items[0], items[1]);
  }
  if (out.empty()) throw ValidationError("--pairs: no pairs given");
  return out;
}

std::string expand_set_sugar(const std::string& item, const Signature& sig) {
  if (item.empty() || item.front() != '{') return item;
  if (item.back() != '}') throw ValidationError("unterminated set '" + item + "'");
  std::string join, bot;
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity == 2) join = join.empty() ? name : "?";
    if (arity == 0) bot = bot.empty() ? name : "?";
  }
  if (join.empty() || join == "?" || bot.empty() || bot == "?")
    throw ValidationError("set notation needs one binary and one nullary symbol");
  const std::string inner = item.substr(1, item.size() - 2);
  std::vector<std::string> names;
  if (inner.find_first_not_of(" \t") != std::string::npos) names = split_top(inner, ',');
  if (names.empty()) return "(" + bot + ")";
  std::string s = names.back();
  for (std::size_t i = names.size() - 1; i-- > 0;) s = "(" + join + " " + names[i] + " " + s + ")";
  return s;
}

std::uint64_t universe_cap_from_env() {
  const char* v = std::getenv("QALG_UNIVERSE_CAP");
  if (!v || !*v) return kDefaultUniverseCap;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError("QALG_UNIVERSE_CAP must be a positive integer, got '" + s + "'");
  const auto cap = std::stoull(s);
  if (cap == 0) throw ValidationError("QALG_UNIVERSE_CAP must be positive");
  return cap;
}

std::unique_ptr<FreeAlgebraModel> make_model(const std::string& spec, const MetricSpace& x,
                                             const ModelOptions& o) {
  const bool generic = o.kind == ModelKind::Generic;
  const std::size_t sample = std::min<std::size_t>(o.max_depth, 2);
  if (spec == "monoid" || spec == "word") {
    if (generic)
      return std::make_unique<OrdinaryFreeModel>(monoid_presentation(), x, monoid_oracle(), o.max_depth, o.cap);
    return std::make_unique<WordMonoidModel>(x, o.max_len);
  }
  if (spec == "semilattice" || spec == "hausdorff") {
    if (generic)
      return std::make_unique<OrdinaryFreeModel>(semilattice_presentation(), x, semilattice_oracle(),
                                                 o.max_depth, o.cap);
    return std::make_unique<HausdorffModel>(x);
  }
  if (auto a = after_prefix(spec, {"small:"})) {
    const Distance eps = parse_distance(*a);
    if (generic) return std::make_unique<UnaryFreeModel>(small_presentation(eps), x, o.max_depth, o.cap);
    return std::make_unique<SmallSpaceModel>(x, eps);
  }
  if (auto a = after_prefix(spec, {"action:"})) {
    FiniteQuantAlgebra m = load_algebra(*a);
    if (generic) return std::make_unique<UnaryFreeModel>(action_presentation(m), x, o.max_depth, o.cap);
    return std::make_unique<ActionModel>(std::move(m), x);
  }
  if (auto a = after_prefix(spec, {"exceptions:", "exception:"})) {
    MetricSpace e = load_space(*a);
    if (generic) return std::make_unique<UnaryFreeModel>(exceptions_presentation(e), x, o.max_depth, o.cap);
    return std::make_unique<ExceptionModel>(x, std::move(e));
  }
  if (auto a = after_prefix(spec, {"two-eps-ops:", "two-ops:"})) {
    if (generic) throw PreconditionError("two-eps-ops has no generic construction; use the closed form");
    return std::make_unique<TwoOpsModel>(x, parse_distance(*a), sample);
  }
  if (spec == "term") {
    Signature sig{{"sigma1", 2}, {"sigma2", 2}};
    if (!o.signature_file.empty()) sig = parse_signature(read_file(o.signature_file));
    return std::make_unique<TermMonadModel>(sig, x, sample);
  }
  VarietyPresentation v = load_variety(spec);
  if (v.unary()) return std::make_unique<UnaryFreeModel>(v, x, o.max_depth, o.cap);
  if (!v.ordinary())
    throw PreconditionError("no free-algebra construction for '" + spec +
                            "': symbols of arity > 1 with eps > 0 equations");
  if (v.equations.empty()) return std::make_unique<TermMonadModel>(v.signature, x, sample);
  if (v.signature == monoid_presentation().signature)
    return std::make_unique<OrdinaryFreeModel>(v, x, monoid_oracle(), o.max_depth, o.cap);
  if (v.signature == semilattice_presentation().signature)
    return std::make_unique<OrdinaryFreeModel>(v, x, semilattice_oracle(), o.max_depth, o.cap);
  throw PreconditionError("no congruence oracle for the signature of '" + spec + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free quantitative algebras, term metrics and strong-finitarity probes", "qalg"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::uint64_t cap = kDefaultUniverseCap;

  // counterexample
  Common cx_c;
  double cx_eps = 0.5;
  std::size_t cx_depth = 2;
  std::string cx_grid = "0.25,0.5,1";
  auto* cx = app.add_subcommand("counterexample", "Reproduce the two-operation counter-example");
  cx->add_option("--eps", cx_eps, "eps with 0 < eps < 1")->required();
  cx->add_option("--max-depth", cx_depth, "Depth of Y's term universe (>= 2)");
  cx->add_option("--grid", cx_grid, "Comma-separated eps grid for the condition sweep");
  add_common(cx, cx_c);

  // free
  Common fr_c;
  std::string fr_variety, fr_space, fr_pairs, fr_sig, fr_kind = "closed";
  std::size_t fr_depth = 3, fr_len = 3, fr_limit = 64;
  bool fr_table = false;
  auto* fr = app.add_subcommand("free", "Distances in a free algebra");
  fr->add_option("--variety", fr_variety, "Variety name or file")->required();
  fr->add_option("--space", fr_space, "Base space file")->required();
  fr->add_option("--pairs", fr_pairs, "Element pairs 'l,r;l,r'; {p,q} denotes a join of leaves");
  fr->add_option("--model", fr_kind, "closed or generic construction")->check(CLI::IsMember({"closed", "generic"}));
  fr->add_option("--max-depth", fr_depth, "Depth bound of generic constructions");
  fr->add_option("--max-len", fr_len, "Word length bound of the word monoid");
  fr->add_option("--signature", fr_sig, "Signature file for the term monad");
  fr->add_option("--limit", fr_limit, "Maximum elements in a table");
  fr->add_flag("--table", fr_table, "Print the full distance table of the queried elements");
  add_common(fr, fr_c);

  // meet
  Common me_c;
  std::string me_left, me_right;
  auto* me = app.add_subcommand("meet", "Meet of two pseudometrics on the same points");
  me->add_option("--left", me_left, "First space file")->required();
  me->add_option("--right", me_right, "Second space file")->required();
  add_common(me, me_c);

  // check
  Common ch_c;
  std::string ch_alg, ch_var;
  auto* ch = app.add_subcommand("check", "Check a finite algebra against a variety");
  ch->add_option("--algebra", ch_alg, "Algebra file")->required();
  ch->add_option("--variety", ch_var, "Variety name or file")->required();
  add_common(ch, ch_c);

  // laws
  Common la_c;
  std::string la_monad, la_space, la_target, la_sig;
  std::size_t la_len = 3, la_depth = 2, la_elems = 300;
  bool la_no_free = false;
  auto* la = app.add_subcommand("laws", "Monad law suite and freeness spot check");
  la->add_option("--monad", la_monad, "Model name (word, hausdorff, term, small:<eps>, ...)")->required();
  la->add_option("--space", la_space, "Base space file")->required();
  la->add_option("--max-len", la_len, "Word length bound");
  la->add_option("--max-depth", la_depth, "Depth bound");
  la->add_option("--max-elements", la_elems, "Element prefix for the sweeps");
  la->add_option("--target", la_target, "Codomain space for the sample maps");
  la->add_option("--signature", la_sig, "Signature file for the term monad");
  la->add_flag("--no-freeness", la_no_free, "Skip the freeness spot check");
  add_common(la, la_c);

  // colimit
  Common co_c;
  std::string co_chain, co_pair;
  std::size_t co_stages = 0, co_from = 0;
  auto* co = app.add_subcommand("colimit", "Directed-colimit distance along a chain");
  co->add_option("--chain", co_chain, "Chain file")->required();
  co->add_option("--stages", co_stages, "Number of stages to generate");
  co->add_option("--pair", co_pair, "Points 'y,y2' of the first stage")->required();
  co->add_option("--from", co_from, "Stage position to start from");
  add_common(co, co_c);

  // condition
  Common cd_c;
  std::string cd_variety = "two-eps-ops:0.5", cd_space, cd_grid = "0.25,0.5,1";
  std::size_t cd_depth = 2, cd_len = 3;
  auto* cd = app.add_subcommand("condition", "Condition sweep for the meet target of a model");
  cd->add_option("--variety", cd_variety, "Variety name or file");
  cd->add_option("--space", cd_space, "Base space file (default: {a,b} at distance 1)");
  cd->add_option("--max-depth", cd_depth, "Depth of the term universe");
  cd->add_option("--max-len", cd_len, "Word length bound");
  cd->add_option("--grid", cd_grid, "Comma-separated eps grid");
  add_common(cd, cd_c);

  // factorize
  Common fa_c;
  std::string fa_variety, fa_space, fa_probe = "meet", fa_expect;
  std::size_t fa_depth = 2, fa_len = 3;
  auto* fa = app.add_subcommand("factorize", "Factorization probe through T i_X");
  fa->add_option("--variety", fa_variety, "Variety name or file")->required();
  fa->add_option("--space", fa_space, "Base space file (default: {a,b} at distance 1)");
  fa->add_option("--probe", fa_probe, "meet or quotient")->check(CLI::IsMember({"meet", "quotient"}));
  fa->add_option("--max-depth", fa_depth, "Depth of the probe universe");
  fa->add_option("--max-len", fa_len, "Word length bound");
  fa->add_option("--expect", fa_expect, "Expected verdict; mismatch exits 1")
      ->check(CLI::IsMember({"exists", "fails"}));
  add_common(fa, fa_c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    cap = universe_cap_from_env();
    Report r;

    if (cx->parsed()) {
      const auto grid = parse_grid(cx_grid);
      const CounterexampleReport rep = run_counterexample(cx_eps, cx_depth, grid, cap);
      r.command = "counterexample";
      r.parameters = {{"eps", format_distance(cx_eps)},
                      {"max-depth", std::to_string(cx_depth)},
                      {"grid", grid_text(grid)},
                      {"universe", std::to_string(rep.universe_size)}};
      r.claims = rep.claims;
      r.verdict = rep.verdict;
      r.pass = rep.reproduced;
      return emit(r, cx_c, out);
    }

    if (fr->parsed()) {
      const MetricSpace x = load_space(fr_space);
      ModelOptions o{fr_kind == "generic" ? ModelKind::Generic : ModelKind::Closed, fr_depth, fr_len, cap, fr_sig};
      const auto model = make_model(fr_variety, x, o);
      r.command = "free";
      r.parameters = {{"variety", fr_variety}, {"model", model->name()}, {"space", fr_space}};
      std::vector<Term> elems;
      if (fr_pairs.empty()) {
        elems = model->elements();
        if (elems.size() > fr_limit) elems.resize(fr_limit);
        r.tables.push_back(element_table(*model, elems));
      } else {
        for (const auto& [l, rt] : split_pairs(fr_pairs)) {
          const Term a = model->parse_element(expand_set_sugar(l, model->signature()));
          const Term b = model->parse_element(expand_set_sugar(rt, model->signature()));
          r.results.push_back({{"left", to_string(a)}, {"right", to_string(b)}, {"distance", model->distance(a, b)}});
          for (const Term& t : {a, b})
            if (std::find(elems.begin(), elems.end(), t) == elems.end()) elems.push_back(t);
        }
        if (fr_table) r.tables.push_back(element_table(*model, elems));
      }
      return emit(r, fr_c, out);
    }

    if (me->parsed()) {
      const MetricSpace a = load_space(me_left), b = load_space(me_right);
      const PseudoMetricSpace m = meet(a, b);
      r.command = "meet";
      r.parameters = {{"left", me_left}, {"right", me_right}};
      r.tables.push_back(space_table("meet", m));
      bool below_a = true, below_b = true;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          below_a = below_a && leq(m(i, j), a.distance(m.point(i), m.point(j)));
          below_b = below_b && leq(m(i, j), b.distance(m.point(i), m.point(j)));
        }
      const auto violation = validate_metric(m, false);
      r.claims.push_back({"pseudometric", "the meet is a pseudometric", !violation.has_value(), true,
                          !violation.has_value(), violation.value_or("")});
      r.claims.push_back({"below-left", "meet <= left pointwise", below_a, true, below_a, ""});
      r.claims.push_back({"below-right", "meet <= right pointwise", below_b, true, below_b, ""});
      r.pass = all_pass(r.claims);
      return emit(r, me_c, out);
    }

    if (ch->parsed()) {
      const FiniteQuantAlgebra a = load_algebra(ch_alg);
      const VarietyPresentation v = resolve_variety(ch_var);
      r.command = "check";
      r.parameters = {{"algebra", ch_alg}, {"variety", ch_var}};
      const NonexpansionReport ne = check_nonexpanding(a);
      r.claims.push_back({"nonexpanding", "operations are nonexpanding", ne.ok, true, ne.ok,
                          ne.ok ? std::string() : ne.describe(a)});
      for (const auto& [name, arity] : v.signature.symbols())
        if (!a.interprets(name)) throw ValidationError("algebra does not interpret '" + name + "'");
      const VarietyCheck vc = satisfies_all(a, v);
      for (std::size_t k = 0; k < v.equations.size(); ++k) {
        const auto& s = vc.per_equation[k];
        r.claims.push_back({"eq" + std::to_string(k), v.equations[k].text(), s.worst, v.equations[k].eps, s.holds,
                            s.holds ? std::string() : s.describe(a)});
      }
      r.pass = all_pass(r.claims);
      r.verdict = r.pass ? "in the variety" : "not in the variety";
      return emit(r, ch_c, out);
    }

    if (la->parsed()) {
      const MetricSpace x = load_space(la_space);
      ModelOptions o{ModelKind::Closed, la_depth, la_len, cap, la_sig};
      const auto model = make_model(la_monad, x, o);
      LawSuiteOptions lo;
      lo.max_elements = la_elems;
      if (!la_target.empty()) lo.target = load_space(la_target);
      const LawSuiteReport rep = monad_law_suite(*model, lo);
      r.command = "laws";
      r.parameters = {{"monad", la_monad}, {"model", model->name()}, {"space", la_space}};
      for (const auto& l : rep.laws) r.claims.push_back(law_claim(l));
      if (!la_no_free)
        for (const auto& l : freeness_spot_check(*model, sample_algebras(*model))) r.claims.push_back(law_claim(l));
      r.pass = all_pass(r.claims);
      r.verdict = r.pass ? "all laws pass" : "law failure";
      return emit(r, la_c, out);
    }

    if (co->parsed()) {
      const DirectedChain chain = load_chain(co_chain, co_stages);
      const auto pr = split_top(co_pair, ',');
      if (pr.size() != 2) throw ValidationError("--pair: expected 'y,y2'");
      const ColimitDistance cd_r = chain_colimit_distance(chain, co_from, pr[0], pr[1]);
      r.command = "colimit";
      r.parameters = {{"chain", co_chain}, {"stages", std::to_string(chain.size())}, {"pair", co_pair}};
      for (std::size_t k = 0; k < cd_r.values.size(); ++k)
        r.results.push_back({{"stage", std::to_string(chain.label(co_from + k))}, {"distance", cd_r.values[k]}});
      bool monotone = true;
      for (std::size_t k = 1; k < cd_r.values.size(); ++k) monotone = monotone && cd_r.values[k] <= cd_r.values[k - 1];
      r.claims.push_back({"nonincreasing", "stage distances are nonincreasing", monotone, true, monotone, ""});
      r.claims.push_back({"infimum", "infimum over the available stages", cd_r.infimum, {}, true,
                          "upper bound on the colimit distance of a truncated chain"});
      r.claims.push_back({"trend", "trend of the stage distances", to_string(cd_r.trend), {}, true, ""});
      r.verdict = cd_r.trend == ChainTrend::Collapse ? "collapse: distance -> 0, the points are identified"
                                                     : "trend " + to_string(cd_r.trend);
      r.pass = monotone;
      return emit(r, co_c, out);
    }

    if (cd->parsed()) {
      const MetricSpace x = space_or_default(cd_space);
      ModelOptions o{ModelKind::Closed, cd_depth, cd_len, cap, ""};
      const auto model = make_model(cd_variety, x, o);
      const auto grid = parse_grid(cd_grid);
      const MeetTarget target = meet_target(*model, cd_depth, cap);
      const ConditionReport rep = check_condition(
          model->signature(), x, [&](const Term& t, const Term& u) { return target.distance(t, u); }, grid,
          cd_depth, cap);
      r.command = "condition";
      r.parameters = {{"variety", cd_variety}, {"model", model->name()}, {"max-depth", std::to_string(cd_depth)},
                      {"grid", grid_text(grid)}};
      for (const auto& e : rep.per_eps) {
        r.claims.push_back({"eps=" + format_distance(e.eps),
                            "max d_Y over " + std::to_string(e.terms) + " terms on " +
                                std::to_string(e.neighborhood_pairs) + " pairs <= eps",
                            e.max, e.eps, e.pass, e.pass || !e.worst ? std::string() : to_string(*e.worst)});
      }
      r.pass = rep.pass;
      r.verdict = rep.pass ? "condition holds" : "condition fails";
      return emit(r, cd_c, out);
    }

    if (fa->parsed()) {
      const MetricSpace x = space_or_default(fa_space);
      ModelOptions o{ModelKind::Closed, fa_depth, fa_len, cap, ""};
      const auto model = make_model(fa_variety, x, o);
      FactorizationVerdict v;
      if (fa_probe == "meet") {
        v = meet_probe(*model, fa_depth, cap);
      } else {
        ModelOptions g = o;
        g.kind = ModelKind::Generic;
        const auto generic = make_model(fa_variety, x, g);
        v = quotient_probe(*generic, *model);
      }
      r.command = "factorize";
      r.parameters = {{"variety", fa_variety}, {"model", model->name()}, {"probe", fa_probe},
                      {"max-depth", std::to_string(fa_depth)}};
      r.claims.push_back(factorization_claim(v, fa_expect));
      r.verdict = v.detail;
      r.pass = all_pass(r.claims);
      return emit(r, fa_c, out);
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (raise QALG_UNIVERSE_CAP to allow)\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qalg::cli
