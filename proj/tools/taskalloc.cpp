// Command-line front end: init, validate, evaluate, compare, optimize, risk, serve.
#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "taskalloc/evaluator.hpp"
#include "taskalloc/optimizer.hpp"
#include "taskalloc/report.hpp"
#include "taskalloc/risk.hpp"
#include "taskalloc/scenario_io.hpp"
#include "taskalloc/service.hpp"

using namespace taskalloc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3, kRefusal = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string mode = "deterministic";
  std::optional<std::uint64_t> seed;
  bool tree() const { return format == "tree"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

void emit(const Options& opt, const Json& tree, const std::string& text) {
  if (opt.tree()) {
    std::cout << tree.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return "";
  return std::string(s.substr(first, s.find_last_not_of(" \t") - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

// "task=site,task=site"; pinned tasks may be omitted.
Assignment parse_assign(const Scenario& scenario, const std::string& text) {
  Assignment out;
  for (const auto& item : split(text, ',')) {
    if (trim(item).empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--assign", "expected task=site, got '" + item + "'");
    out.mapping[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return with_pins(scenario, std::move(out));
}

const NamedAlternative& find_alt(const Scenario& scenario, const std::string& label) {
  if (const auto* alt = scenario.find_alternative(label)) return *alt;
  throw Error("unknown_label", "no alternative labelled '" + label + "' in the scenario");
}

// Labels may themselves contain commas, so pieces are re-joined until they
// name a stored alternative.
std::vector<NamedAlternative> parse_alts(const Scenario& scenario, const std::string& text) {
  std::vector<NamedAlternative> out;
  std::string pending;
  bool open = false;
  for (const auto& piece : split(text, ',')) {
    pending = open ? pending + "," + piece : piece;
    open = true;
    if (const auto* alt = scenario.find_alternative(trim(pending))) {
      out.push_back(*alt);
      open = false;
    }
  }
  if (open && !trim(pending).empty()) find_alt(scenario, trim(pending));
  return out;
}

EvaluationMode eval_mode(const Options& opt) {
  if (opt.mode == "sampled") return EvaluationMode::sampled(opt.seed.value_or(0));
  return EvaluationMode::deterministic();
}

Json error_json(const std::string& code, const std::string& message) {
  return Json{{"error", code}, {"message", message}};
}

int report_error(const Options& opt, const std::string& code, const std::string& message,
                 const std::vector<Issue>& issues, int exit_code) {
  std::cerr << "error: " << code << ": " << message << "\n";
  for (const auto& issue : issues) {
    std::cerr << "  " << issue.code << (issue.path.empty() ? "" : " at " + issue.path) << ": " << issue.message
              << "\n";
  }
  if (opt.tree()) {
    auto j = error_json(code, message);
    if (!issues.empty()) j["violations"] = to_json(issues);
    std::cout << j.dump(2) << "\n";
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task allocation decision support for distributed software projects"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "tree"}));
  app.add_option("--mode", opt.mode, "Evaluation mode")->check(CLI::IsMember({"deterministic", "sampled"}));
  app.add_option("--seed", opt.seed, "Seed for sampled evaluation, search and risk");

  std::string path;
  std::string assign, alt, alts;
  bool exhaustive = false;
  int restarts = SearchConfig{}.restarts;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::size_t n = 10000;
  std::optional<double> budget;
  std::vector<double> percentiles;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string cors = "*";
  std::string snapshot;

  auto* init = app.add_subcommand("init", "Write the GlobalSoft demo scenario");
  init->add_option("path", path)->required();

  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("scenario", path)->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate one assignment");
  evaluate_cmd->add_option("scenario", path)->required();
  auto* assign_opt = evaluate_cmd->add_option("--assign", assign, "task=site,...");
  auto* alt_opt = evaluate_cmd->add_option("--alt", alt, "Stored alternative label");
  assign_opt->excludes(alt_opt);

  auto* compare_cmd = app.add_subcommand("compare", "Compare stored alternatives");
  compare_cmd->add_option("scenario", path)->required();
  compare_cmd->add_option("--alts", alts, "Comma-separated labels (default: all)");

  auto* optimize_cmd = app.add_subcommand("optimize", "Search for the best assignment");
  optimize_cmd->add_option("scenario", path)->required();
  auto* exhaustive_flag = optimize_cmd->add_flag("--exhaustive", exhaustive, "Enumerate every assignment");
  optimize_cmd->add_option("--restarts", restarts, "Hill-climbing restarts")->excludes(exhaustive_flag);
  optimize_cmd->add_option("--cap", cap, "Enumeration cap for --exhaustive");

  auto* risk_cmd = app.add_subcommand("risk", "Monte Carlo cost distribution");
  risk_cmd->add_option("scenario", path)->required();
  risk_cmd->add_option("--alt", alt, "Stored alternative label")->required();
  risk_cmd->add_option("-n", n, "Samples")->check(CLI::PositiveNumber);
  risk_cmd->add_option("--budget", budget, "Report P(cost > budget)");
  risk_cmd->add_option("--percentile", percentiles, "Percentile in [0,1]; repeatable")->check(CLI::Range(0.0, 1.0));

  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--cors-origin", cors);
  serve_cmd->add_option("--snapshot", snapshot, "Write all sessions here on shutdown");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (init->parsed()) {
      write_file(path, serialize_scenario(demo_scenario()));
      if (!opt.tree()) std::cout << "wrote " << path << "\n";
      return kOk;
    }
    if (serve_cmd->parsed()) {
      Service service;
      std::signal(SIGINT, [](int) { stop_serving(); });
      std::signal(SIGTERM, [](int) { stop_serving(); });
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!serve(service, host, port, cors)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
      if (!snapshot.empty()) service.snapshot(snapshot);
      return kOk;
    }

    const auto text = read_file(path);
    if (validate->parsed()) {
      const auto scenario = read_scenario_document(text);
      const auto report = validate_scenario(scenario);
      emit(opt, to_json(report), render_validation(report));
      return report.ok() ? kOk : kValidation;
    }

    const auto scenario = parse_scenario(text);
    if (evaluate_cmd->parsed()) {
      if (assign.empty() && alt.empty()) {
        std::cerr << "evaluate needs --assign or --alt\n";
        return kUsage;
      }
      const auto assignment = alt.empty() ? parse_assign(scenario, assign) : find_alt(scenario, alt).assignment;
      const auto result = evaluate(scenario, assignment, eval_mode(opt));
      emit(opt, to_json(result), render_evaluation(scenario, result));
    } else if (compare_cmd->parsed()) {
      const auto chosen = alts.empty() ? scenario.alternatives : parse_alts(scenario, alts);
      const auto report = compare(scenario, chosen);
      emit(opt, to_json(report), render_comparison(report));
    } else if (optimize_cmd->parsed()) {
      SearchResult result;
      if (exhaustive) {
        result = brute_force(scenario, scenario.goal, cap);
      } else {
        SearchConfig config;
        config.restarts = restarts;
        config.seed = opt.seed.value_or(config.seed);
        config.objective = scenario.goal;
        result = hill_climb(scenario, config);
      }
      emit(opt, to_json(result), render_search(scenario, result));
    } else if (risk_cmd->parsed()) {
      if (percentiles.empty()) percentiles = {0.5, 0.8, 0.95};
      const auto dist = monte_carlo(scenario, find_alt(scenario, alt).assignment, n, opt.seed.value_or(0));
      const auto summary = summarize(dist, percentiles, budget);
      emit(opt, to_json(summary), render_risk(summary));
    }
    return kOk;
  } catch (const IoError& e) {
    return report_error(opt, "io_error", e.what(), {}, kIo);
  } catch (const ValidationError& e) {
    return report_error(opt, e.code(), e.what(), e.issues(), kValidation);
  } catch (const ParseError& e) {
    std::string where;
    if (e.line() > 0) where = " (line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) + ")";
    return report_error(opt, e.code(), e.what() + where, {}, kValidation);
  } catch (const RefusalError& e) {
    return report_error(opt, e.code(), e.what(), {}, kRefusal);
  } catch (const Error& e) {
    return report_error(opt, e.code(), e.what(), {}, kValidation);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    return report_error(opt, "invalid_argument", e.what(), {}, kUsage);
  }
}
