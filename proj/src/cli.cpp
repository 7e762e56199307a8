#include "unirenorm/cli.hpp"

#include "unirenorm/horseshoe.hpp"
#include "unirenorm/io.hpp"
#include "unirenorm/nest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace unirenorm {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  int degree = 2;
  int precision_bits = 256;
  std::string out;
  std::string format;
  std::string config;
  BigReal rho;
  int grid = kDefaultMontelGrid;
  NestOptions nest;
};

struct Options {
  std::string word;
  std::string germ_path;
  std::string param;
  std::string as_level;
  int period_max = 64;
  int levels = 12;
  int depth = 14;
  int steps = 10;
  int shadow_min = 0;
  int shadow_step = 2;
  int max_levels = -1;
  int tail_confirm = -1;
};

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: " + key + " expects an integer, got '" + value + "'");
  }
}

struct ConfigValues {
  std::optional<int> precision_bits, degree, grid, tail_confirm, max_levels;
  std::optional<std::string> format, rho;
};

ConfigValues read_config(const std::string& path) {
  ConfigValues v;
  Config c;
  try {
    c = load_config(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& [key, value] : c) {
    if (key == "precision_bits") v.precision_bits = parse_int(key, value);
    else if (key == "degree") v.degree = parse_int(key, value);
    else if (key == "grid") v.grid = parse_int(key, value);
    else if (key == "tail_confirm") v.tail_confirm = parse_int(key, value);
    else if (key == "max_levels") v.max_levels = parse_int(key, value);
    else if (key == "format") v.format = value;
    else if (key == "rho") v.rho = value;
    else if (key == "escape") {
      if (value != "error") throw UsageError("config: escape supports only 'error'");
    } else {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
  return v;
}

BigReal parse_real(const std::string& what, const std::string& text) {
  try {
    return parse_decimal(text);
  } catch (const std::exception&) {
    throw UsageError(what + ": not a decimal number: '" + text + "'");
  }
}

Word parse_word(const std::string& text) {
  try {
    return Word::parse(text);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("--word: ") + e.what());
  }
}

Germ input_germ(const Globals& g, const Options& o) {
  if (!o.germ_path.empty() && !o.param.empty()) throw UsageError("give either --germ or --param, not both");
  if (!o.germ_path.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(o.germ_path));
    } catch (const std::exception& e) {
      throw UsageError(std::string("--germ: ") + e.what());
    }
    try {
      return germ_from_json(j);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (o.param.empty()) throw UsageError("one of --germ or --param is required");
  return Germ::polynomial(g.degree, parse_real("--param", o.param));
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    s += c;
    first = false;
  }
  return s + '\n';
}

std::string dump(const Json& j) { return j.dump(2) + '\n'; }

struct Output {
  std::string main;
  /// (suffix, content) written next to --out.
  std::vector<std::pair<std::string, std::string>> sidecars;
};

Json string_array(const std::vector<BigReal>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(json_real(x));
  return a;
}

Output cmd_solve(const Globals& g, const Options& o, bool csv) {
  const Word w = parse_word(o.word);
  if (w.past() != 0) throw UsageError("solve: word must not have a past");
  const BigReal c = tuned_param(g.degree, w);
  if (csv) return {csv_line({"c"}) + csv_line({csv_real(c)}), {}};
  return {dump(Json{{"word", w.str()}, {"degree", g.degree}, {"c", json_real(c)},
                    {"germ", germ_to_json(Germ::polynomial(g.degree, c))}}),
          {}};
}

Output cmd_tune(const Globals& g, const Options& o, bool csv) {
  const Word w = parse_word(o.word);
  if (w.past() != 0) throw UsageError("tune: word must not have a past");
  const TuneResult t = tune(g.degree, w);
  if (csv) {
    std::string s = csv_line({"level", "c", "bracket_lo", "bracket_hi"});
    for (std::size_t k = 0; k < t.level_params.size(); ++k)
      s += csv_line({std::to_string(k + 1), csv_real(t.level_params[k]), csv_real(t.brackets[k].lo),
                     csv_real(t.brackets[k].hi)});
    return {s, {}};
  }
  Json levels = Json::array();
  for (std::size_t k = 0; k < t.level_params.size(); ++k)
    levels.push_back(Json{{"level", k + 1},
                          {"c", json_real(t.level_params[k])},
                          {"bracket", Json::array({json_real(t.brackets[k].lo), json_real(t.brackets[k].hi)})}});
  return {dump(Json{{"word", w.str()}, {"degree", g.degree}, {"c", json_real(t.param())}, {"levels", levels}}), {}};
}

Output cmd_renormalize(const Globals& g, const Options& o, bool csv) {
  const Germ germ = input_germ(g, o);
  auto renormalized = [&]() -> Renormalized {
    if (!o.as_level.empty()) {
      LevelCombinatorics level;
      try {
        level = LevelCombinatorics::parse(o.as_level);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--as: ") + e.what());
      }
      return renormalize_as(germ, level);
    }
    if (o.period_max < 2) throw UsageError("--period-max must be >= 2");
    return renormalize_min(germ, o.period_max);
  };
  const Renormalized r = renormalized();
  if (csv)
    return {csv_line({"p", "b", "beta", "combinatorics"}) +
                csv_line({std::to_string(r.period), csv_real(r.pre.b), csv_real(r.pre.beta), r.combinatorics.str()}),
            {}};
  return {dump(Json{{"germ", germ_to_json(r.germ)},
                    {"pre_renorm", pre_renorm_to_json(r.pre)},
                    {"combinatorics", r.combinatorics.str()}}),
          {}};
}

NestOptions nest_options(const Globals& g, const Options& o) {
  NestOptions n = g.nest;
  if (o.max_levels >= 0) n.max_levels = o.max_levels;
  if (o.tail_confirm >= 0) n.tail_confirm = o.tail_confirm;
  if (n.max_levels < 1 || n.tail_confirm < 1) throw UsageError("max_levels and tail_confirm must be positive");
  return n;
}

Json nest_summary(const NestReport& r) {
  return Json{{"height", r.height},
              {"terminal_level", r.terminal_level},
              {"renorm_period", r.renorm_period},
              {"sjk_ok", r.sjk_ok},
              {"Iprime0_ok", r.iprime0_ok}};
}

Output cmd_nest(const Globals& g, const Options& o, bool csv) {
  const Germ germ = input_germ(g, o);
  const NestReport r = build_nest(germ, nest_options(g, o));
  const CascadeReport c = classify_cascades(germ, r);
  std::vector<int> j_index(r.levels(), -1);
  for (std::size_t k = 0; k < r.j.size(); ++k)
    if (static_cast<std::size_t>(r.j[k]) < j_index.size()) j_index[static_cast<std::size_t>(r.j[k])] = static_cast<int>(k);
  const Json summary = nest_summary(r);
  if (csv) {
    std::string s = csv_line({"level", "a_n", "v_n", "lambda_n", "central", "j_index", "cascade_id", "cascade_type"});
    for (std::size_t n = 0; n < r.levels(); ++n) {
      const int run = c.run_of_level[n];
      s += csv_line({std::to_string(n), csv_real(r.a[n]), std::to_string(r.v[n]),
                     n < r.lambda.size() ? csv_real(r.lambda[n]) : "", r.central[n] ? "1" : "0",
                     j_index[n] >= 0 ? std::to_string(j_index[n]) : "", run >= 0 ? std::to_string(run) : "",
                     run >= 0 ? cascade_type_name(c.runs[static_cast<std::size_t>(run)].type) : ""});
    }
    return {s, {{".summary.json", dump(summary)}}};
  }
  Json levels = Json::array();
  for (std::size_t n = 0; n < r.levels(); ++n) {
    const int run = c.run_of_level[n];
    levels.push_back(Json{{"level", n},
                          {"a_n", json_real(r.a[n])},
                          {"v_n", r.v[n]},
                          {"lambda_n", n < r.lambda.size() ? Json(json_real(r.lambda[n])) : Json()},
                          {"central", static_cast<bool>(r.central[n])},
                          {"j_index", j_index[n] >= 0 ? Json(j_index[n]) : Json()},
                          {"cascade_id", run >= 0 ? Json(run) : Json()}});
  }
  Json j = summary;
  j["alpha"] = json_real(r.alpha);
  j["tp_half_width"] = json_real(r.tp_half_width);
  j["levels"] = levels;
  return {dump(j), {}};
}

Output cmd_cascades(const Globals& g, const Options& o, bool csv) {
  const Germ germ = input_germ(g, o);
  const NestReport r = build_nest(germ, nest_options(g, o));
  const CascadeReport c = classify_cascades(germ, r);
  if (csv) {
    std::string s = csv_line({"cascade_id", "start_level", "length", "step", "type", "uniform_step"});
    for (std::size_t i = 0; i < c.runs.size(); ++i) {
      const auto& run = c.runs[i];
      s += csv_line({std::to_string(i), std::to_string(run.start_level), std::to_string(run.length),
                     std::to_string(run.step), cascade_type_name(run.type), run.uniform_step ? "1" : "0"});
    }
    return {s, {}};
  }
  Json runs = Json::array();
  for (const auto& run : c.runs) {
    Json j{{"start_level", run.start_level},
           {"length", run.length},
           {"step", run.step},
           {"type", cascade_type_name(run.type)},
           {"uniform_step", run.uniform_step},
           {"profile", string_array(run.profile)},
           {"top_lambda", run.top_lambda ? Json(json_real(*run.top_lambda)) : Json()}};
    if (run.type == CascadeType::SaddleNode && run.length >= 12) {
      const YoccozReport y = yoccoz_check(run);
      j["yoccoz"] = Json{{"ratio_max_form", json_real(y.ratio_max_form)},
                         {"ratio_min_form", json_real(y.ratio_min_form)},
                         {"symmetry", json_real(y.symmetry)}};
    }
    runs.push_back(std::move(j));
  }
  return {dump(Json{{"summary", nest_summary(r)}, {"runs", runs}}), {}};
}

constexpr const char* kRateCaveat =
    "sup-norm on [-rho, rho]; Holder-equivalent to the leafwise Caratheodory metric, so only rate < 1 is comparable";

Json contraction_json(const ContractionTrace& t) {
  return Json{{"distances", string_array(t.distances)},
              {"fitted_rate", json_real(t.fitted_rate)},
              {"fit_r2", json_real(t.fit_r2)},
              {"fit_points", t.fit_points},
              {"exact_zero", t.exact_zero},
              {"metric", kRateCaveat}};
}

std::string distances_csv(const std::vector<BigReal>& d) {
  std::string s = csv_line({"n", "d_n"});
  for (std::size_t n = 0; n < d.size(); ++n) s += csv_line({std::to_string(n), csv_real(d[n])});
  return s;
}

Output cmd_contract(const Globals& g, const Options& o, bool csv) {
  const Word tail = parse_word(o.word.empty() ? "2:LC" : o.word);
  if (tail.past() != 0) throw UsageError("contract: tail must not have a past");
  if (o.steps < 2) throw UsageError("--steps must be >= 2");
  if (o.depth < o.steps + 1) throw UsageError("--depth must exceed --steps");
  Word w;
  for (int k = 0; k < o.depth; ++k) w.levels.push_back(tail.levels[static_cast<std::size_t>(k) % tail.size()]);
  const Germ f = Germ::polynomial(g.degree, tuned_param(g.degree, w));
  const Germ rf = renormalize_as(f, w.levels[0]).germ;
  Word shifted;
  for (std::size_t k = 1; k <= tail.size(); ++k) shifted.levels.push_back(tail.levels[k % tail.size()]);
  const ContractionTrace t = contraction_rate(shifted, f, rf, o.steps, MontelMetric{g.rho, g.grid});
  if (csv) return {distances_csv(t.distances), {}};
  Json j{{"tail", tail.str()}, {"degree", g.degree}, {"depth", o.depth}};
  j.update(contraction_json(t));
  return {dump(j), {}};
}

Output cmd_horseshoe(const Globals& g, const Options& o, bool csv) {
  if (o.word.empty()) throw UsageError("horseshoe: --word is required");
  const Word w = parse_word(o.word);
  const MontelMetric metric{g.rho, g.grid};
  const Germ h = realize(w, g.degree);
  Json j{{"word", w.str()}, {"degree", g.degree}, {"realized_germ", germ_to_json(h)}};
  j["equivariance_defect"] = w.future() >= 2 ? Json(json_real(shift_equivariance(w, g.degree, metric))) : Json();
  Json gaps = Json::array();
  if (o.shadow_step >= 1 && static_cast<int>(w.past()) - o.shadow_step >= o.shadow_min + 1) {
    const ShadowingTrace s = shadowing(w, g.degree, o.shadow_min, o.shadow_step, metric);
    for (std::size_t i = 0; i < s.gaps.size(); ++i)
      gaps.push_back(Json{{"N", s.n_values[i]}, {"gap", json_real(s.gaps[i])}});
  }
  j["shadow_gaps"] = gaps;
  std::vector<BigReal> distances;
  if (w.future() >= 3) {
    Word future = truncate_past(w, 0);
    const ContractionTrace t =
        contraction_rate(future, h, realize(future, g.degree), static_cast<int>(w.future()) - 1, metric);
    j["contraction"] = contraction_json(t);
    distances = t.distances;
  } else {
    j["contraction"] = Json();
  }
  if (csv) return {distances_csv(distances), {}};
  return {dump(j), {{".contraction.csv", distances_csv(distances)}}};
}

Output cmd_feigenbaum(const Globals& g, const Options& o, bool csv) {
  LevelCombinatorics level = doubling_level();
  if (!o.word.empty()) {
    try {
      level = LevelCombinatorics::parse(o.word);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--word: ") + e.what());
    }
  }
  if (o.levels < 4) throw UsageError("--levels must be >= 4");
  const auto est = feigenbaum_estimates(g.degree, level, o.levels);
  if (csv) {
    std::string s = csv_line({"n", "c_n", "delta_n"});
    for (const auto& e : est) s += csv_line({std::to_string(e.n), csv_real(e.c), e.delta ? csv_real(*e.delta) : ""});
    return {s, {}};
  }
  Json rows = Json::array();
  for (const auto& e : est)
    rows.push_back(Json{{"n", e.n}, {"c_n", json_real(e.c)}, {"delta_n", e.delta ? Json(json_real(*e.delta)) : Json()}});
  return {dump(Json{{"level", level.str()}, {"degree", g.degree}, {"estimates", rows}}), {}};
}

std::optional<int> env_precision() {
  const char* v = std::getenv("RENORM_PRECISION_BITS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    return parse_int("RENORM_PRECISION_BITS", v);
  } catch (const UsageError&) {
    throw UsageError(std::string("RENORM_PRECISION_BITS is not an integer: '") + v + "'");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renormalization lab for x^d + c", "renorm"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Options o;
  std::optional<int> degree_flag, precision_flag;
  std::string format_flag;
  app.add_option("--degree", degree_flag, "Even degree d >= 2 (default 2)");
  app.add_option("--precision-bits", precision_flag, "Working precision (default 256)");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", format_flag, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", g.config, "Flat key = value config file");

  auto add_germ = [&](CLI::App* s) {
    s->add_option("--germ", o.germ_path, "Germ JSON file");
    s->add_option("--param", o.param, "Parameter c of x^d + c");
  };
  auto* solve = app.add_subcommand("solve", "Superstable parameter of a combinatorics word");
  solve->add_option("--word", o.word, "Level word, e.g. 2:LC|3:LRC")->required();
  auto* tune_cmd = app.add_subcommand("tune", "Nested tuning brackets of a word");
  tune_cmd->add_option("--word", o.word, "Level word")->required();
  auto* renorm = app.add_subcommand("renormalize", "One renormalization step");
  add_germ(renorm);
  renorm->add_option("--period-max", o.period_max, "Largest period tried (default 64)");
  renorm->add_option("--as", o.as_level, "Prescribed combinatorics, e.g. 3:LRC");
  auto* nest = app.add_subcommand("nest", "Principal nest");
  add_germ(nest);
  nest->add_option("--max-levels", o.max_levels, "Level cap");
  nest->add_option("--tail-confirm", o.tail_confirm, "Central levels confirming the terminal level");
  auto* cascades = app.add_subcommand("cascades", "Central cascades of the principal nest");
  add_germ(cascades);
  cascades->add_option("--max-levels", o.max_levels, "Level cap");
  cascades->add_option("--tail-confirm", o.tail_confirm, "Central levels confirming the terminal level");
  auto* contract = app.add_subcommand("contract", "Contraction of R along a periodic tail");
  contract->add_option("--word", o.word, "Periodic tail (default 2:LC)");
  contract->add_option("--depth", o.depth, "Tuning depth of f (default 14)");
  contract->add_option("--steps", o.steps, "Renormalization steps (default 10)");
  auto* horseshoe = app.add_subcommand("horseshoe", "Realize a two-sided word");
  horseshoe->add_option("--word", o.word, "past;future, e.g. 2:LC|3:LRC;2:LC|2:LC")->required();
  horseshoe->add_option("--shadow-min", o.shadow_min, "Smallest N for shadowing gaps (default 0)");
  horseshoe->add_option("--shadow-step", o.shadow_step, "Gap step (default 2)");
  auto* feig = app.add_subcommand("feigenbaum", "Feigenbaum ratio estimates");
  feig->add_option("--levels", o.levels, "Largest n (default 12)");
  feig->add_option("--word", o.word, "Level (default 2:LC)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const bool csv_default = name == "nest" || name == "feigenbaum";
  const auto started = std::chrono::steady_clock::now();
  try {
    ConfigValues cfg;
    if (!g.config.empty()) cfg = read_config(g.config);
    g.precision_bits = precision_flag.value_or(cfg.precision_bits.value_or(env_precision().value_or(256)));
    g.degree = degree_flag.value_or(cfg.degree.value_or(2));
    const std::string format = !format_flag.empty() ? format_flag : cfg.format.value_or(csv_default ? "csv" : "json");
    if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
    if (g.precision_bits < 64) throw UsageError("precision must be at least 64 bits");
    if (g.degree < 2 || g.degree % 2 != 0) throw UsageError("--degree must be an even integer >= 2");
    set_precision_bits(g.precision_bits);
    g.rho = cfg.rho ? parse_real("config: rho", *cfg.rho) : default_montel_rho();
    if (!(g.rho > 0)) throw UsageError("config: rho must be positive");
    g.grid = cfg.grid.value_or(kDefaultMontelGrid);
    if (g.grid < 2) throw UsageError("config: grid must be >= 2");
    if (cfg.tail_confirm) g.nest.tail_confirm = *cfg.tail_confirm;
    if (cfg.max_levels) g.nest.max_levels = *cfg.max_levels;

    const bool csv = format == "csv";
    Output result;
    if (name == "solve") result = cmd_solve(g, o, csv);
    else if (name == "tune") result = cmd_tune(g, o, csv);
    else if (name == "renormalize") result = cmd_renormalize(g, o, csv);
    else if (name == "nest") result = cmd_nest(g, o, csv);
    else if (name == "cascades") result = cmd_cascades(g, o, csv);
    else if (name == "contract") result = cmd_contract(g, o, csv);
    else if (name == "horseshoe") result = cmd_horseshoe(g, o, csv);
    else result = cmd_feigenbaum(g, o, csv);

    if (g.out.empty()) {
      out << result.main;
    } else {
      write_atomic(g.out, result.main);
      for (const auto& [suffix, content] : result.sidecars) write_atomic(g.out + suffix, content);
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      Json meta{{"command", name}, {"degree", g.degree}, {"precision_bits", g.precision_bits},
                {"format", format}, {"elapsed_seconds", elapsed}};
      if (name == "contract" || name == "horseshoe") meta["rate_caveat"] = kRateCaveat;
      write_atomic(g.out + ".meta.json", dump(meta));
    }
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace unirenorm
