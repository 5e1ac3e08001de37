#include "lrs/cli.hpp"

#include "lrs/json_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

namespace lrs::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shared by every subcommand that runs a decider.
struct RunConfig {
  std::string problem;
  Fuel fuel;
  std::string backend = "internal";
  std::string solverPath;
  double solverTimeout = 30;
  std::string mode = "cramer";
};

void addFuelOptions(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--problem", cfg.problem, "skolem, positivity or upp")->required();
  cmd->add_option("--max-precision", cfg.fuel.maxPrecision, "last round p")->check(CLI::PositiveNumber);
  cmd->add_option("--max-terms", cfg.fuel.maxTerms, "longest prefix searched")->check(CLI::PositiveNumber);
  cmd->add_option("--max-subdivisions", cfg.fuel.maxSubdivisions, "refuter budget per configuration")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-stride", cfg.fuel.maxStride, "tail index search limit")->check(CLI::PositiveNumber);
  cmd->add_option("--backend", cfg.backend, "internal or smtlib")->check(CLI::IsMember({"internal", "smtlib"}));
  cmd->add_option("--solver", cfg.solverPath, "SMT-LIB2 solver executable");
  cmd->add_option("--solver-timeout", cfg.solverTimeout, "seconds per script")->check(CLI::NonNegativeNumber);
  cmd->add_option("--mode", cfg.mode, "sentence form given to the solver: cramer or existential");
}

Problem problemOf(const RunConfig& cfg) {
  try {
    return parseProblem(cfg.problem);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Fuel fuelOf(const RunConfig& cfg) {
  Fuel f = cfg.fuel;
  try {
    f.mode = parseSentenceMode(cfg.mode);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (cfg.backend == "smtlib") {
    if (cfg.solverPath.empty()) throw SolverError("--backend smtlib needs --solver");
    if (!resolveSolver(cfg.solverPath)) throw SolverError("solver not found or not executable: " + cfg.solverPath);
    f.solverPath = cfg.solverPath;
    f.solverTimeout = cfg.solverTimeout;
  } else {
    f.solverTimeout = 0;
  }
  return f;
}

Json readJson(const std::string& path) {
  std::stringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    text << in.rdbuf();
  }
  try {
    return Json::parse(text.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

LinRec readInstance(const std::string& path) { return instanceFromJson(readJson(path)); }

int exitFor(const Verdict& v) { return v.halted ? (v.answer == 1 ? 0 : 1) : 2; }

int cmdDecide(const RunConfig& cfg, const std::string& instance, const std::string& outPath, std::ostream& out) {
  Problem problem = problemOf(cfg);
  Fuel fuel = fuelOf(cfg);
  LinRec r = readInstance(instance);
  Verdict v;
  try {
    v = decide(problem, r, fuel);
  } catch (const SolverNotFound& e) {
    throw SolverError(e.what());
  } catch (const MalformedSolverOutput& e) {
    throw SolverError(e.what());
  }
  std::string text = toJson(v).dump(2);
  out << text << '\n';
  if (!outPath.empty()) {
    std::ofstream f(outPath);
    if (!f) throw InputError("cannot write " + outPath);
    f << text << '\n';
  }
  return exitFor(v);
}

int cmdTrichotomy(const RunConfig& cfg, const std::string& boxText, int maxDepth, long maxBoxes, std::ostream& out) {
  Problem problem = problemOf(cfg);
  Fuel fuel = fuelOf(cfg);
  std::vector<RealInterval> box = parseBox(boxText);
  if (box.size() % 2 != 0) throw InputError("a box needs 2n coordinates: n coefficients then n initial values");
  Trichotomy t = boxTrichotomy(problem, box, fuel, maxDepth, maxBoxes);
  out << toString(t) << '\n';
  return t == Trichotomy::Exhausted ? 2 : 0;
}

int cmdCheck(const std::string& instance, const std::string& verdictPath, const CheckOptions& options,
             std::ostream& out) {
  if (!options.solverPath.empty() && !resolveSolver(options.solverPath))
    throw SolverError("solver not found or not executable: " + options.solverPath);
  LinRec r = readInstance(instance);
  Verdict v = verdictFromJson(readJson(verdictPath));
  CheckResult res = checkCertificate(r, v, options);
  if (res.valid) {
    out << "valid\n";
    return 0;
  }
  out << "invalid: " << res.reason << '\n';
  return 1;
}

int cmdEmit(const std::string& instance, long precision, const std::string& dir, const std::string& modeText,
            const ClusteringFuel& clustering, std::ostream& out) {
  SentenceMode mode;
  try {
    mode = parseSentenceMode(modeText);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  LinRec r = readInstance(instance);
  Fuel fuel;
  fuel.clustering = clustering;
  auto t = negatedSentences(r, precision, fuel, mode);
  if (!t) {
    out << "no clustering at precision " << precision << '\n';
    return 2;
  }
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < t->sentences.size(); ++i) {
    auto path = std::filesystem::path(dir) / ("config_" + std::to_string(i + 1) + ".smt2");
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path.string());
    f << "; " << t->sentences[i].configuration.describe() << '\n' << emitSmtlib(t->sentences[i].system);
    out << path.string() << '\n';
  }
  return 0;
}

// Each coordinate is lo + (hi - lo) k / 2^20 with k drawn from the top 20
// bits of a std::mt19937_64 seeded with `seed`.
int cmdMeasure(const RunConfig& cfg, int order, const std::string& boxText, long samples, unsigned long long seed,
               std::ostream& out) {
  Problem problem = problemOf(cfg);
  Fuel fuel = fuelOf(cfg);
  std::vector<RealInterval> box = parseBox(boxText);
  if (static_cast<int>(box.size()) != 2 * order)
    throw InputError("box has " + std::to_string(box.size()) + " coordinates, order " + std::to_string(order) +
                     " needs " + std::to_string(2 * order));
  std::mt19937_64 rng(seed);
  const Rational grid = pow2(-20);
  long halted = 0, positive = 0, negative = 0;
  for (long s = 0; s < samples; ++s) {
    std::vector<Rational> c, u;
    for (std::size_t i = 0; i < box.size(); ++i) {
      Rational k(static_cast<unsigned long>(rng() >> 44));
      Rational x = box[i].lo() + box[i].width() * k * grid;
      x.canonicalize();
      (i < static_cast<std::size_t>(order) ? c : u).push_back(x);
    }
    Verdict v = decide(problem, LinRec::fromRationals(c, u), fuel);
    if (v.halted) {
      ++halted;
      (v.answer == 1 ? positive : negative) += 1;
    }
  }
  Json j = {{"problem", toString(problem)},
            {"order", order},
            {"samples", samples},
            {"seed", seed},
            {"halted", halted},
            {"answer1", positive},
            {"answer0", negative},
            {"fraction", samples > 0 ? static_cast<double>(halted) / static_cast<double>(samples) : 0.0}};
  out << j.dump() << '\n';
  return 0;
}

}  // namespace

std::vector<RealInterval> parseBox(const std::string& text) {
  static const std::regex interval(R"(\s*\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]\s*)");
  static const std::regex power(R"(\s*(\[[^\]]*\])\s*\^\s*(\d+)\s*)");
  auto one = [](const std::string& s) {
    std::smatch m;
    if (!std::regex_match(s, m, interval)) throw InputError("bad interval \"" + s + "\"");
    try {
      Rational lo = parseRational(m[1].str()), hi = parseRational(m[2].str());
      if (lo > hi) throw InputError("interval with lo > hi: " + s);
      return RealInterval(lo, hi);
    } catch (const ParseError& e) {
      throw InputError(e.what());
    }
  };
  std::smatch m;
  if (std::regex_match(text, m, power)) {
    int n = std::stoi(m[2].str());
    if (n <= 0 || n > 64) throw InputError("bad box exponent");
    return std::vector<RealInterval>(static_cast<std::size_t>(n), one(m[1].str()));
  }
  std::vector<RealInterval> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t close = text.find(']', pos);
    if (close == std::string::npos) throw InputError("bad box \"" + text + "\"");
    out.push_back(one(text.substr(pos, close + 1 - pos)));
    pos = text.find_first_not_of(" \t", close + 1);
    if (pos == std::string::npos) break;
    if (text[pos] != 'x' && text[pos] != '*') throw InputError("intervals must be joined by 'x'");
    ++pos;
  }
  if (out.empty()) throw InputError("empty box");
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified Skolem, Positivity and Ultimate Positivity for real linear recurrences", "lrsdec"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string instance, verdictPath, outPath, boxText, outDir, emitMode = "cramer";
  int maxDepth = 3, order = 2;
  long maxBoxes = 512, precision = 8, samples = 200;
  unsigned long long seed = 1;
  CheckOptions check;

  auto* decideCmd = app.add_subcommand("decide", "run a decider and print the verdict with its certificate");
  addFuelOptions(decideCmd, cfg);
  decideCmd->add_option("instance", instance, "instance JSON file, - for stdin")->required();
  decideCmd->add_option("--out", outPath, "also write the verdict here");

  auto* trichCmd = app.add_subcommand("trichotomy", "decide a box of instances: 1, 0, -1 or exhausted");
  addFuelOptions(trichCmd, cfg);
  trichCmd->add_option("--box", boxText, "[a,b]x[c,d]... coefficients then initial values, or [a,b]^n")->required();
  trichCmd->add_option("--max-depth", maxDepth)->check(CLI::NonNegativeNumber);
  trichCmd->add_option("--max-boxes", maxBoxes)->check(CLI::PositiveNumber);

  auto* checkCmd = app.add_subcommand("check-cert", "replay the certificate of a verdict");
  checkCmd->add_option("instance", instance)->required();
  checkCmd->add_option("verdict", verdictPath, "verdict JSON written by decide")->required();
  checkCmd->add_option("--solver", check.solverPath);
  checkCmd->add_option("--solver-timeout", check.solverTimeout)->check(CLI::NonNegativeNumber);
  checkCmd->add_option("--max-subdivisions", check.maxSubdivisions)->check(CLI::NonNegativeNumber);

  ClusteringFuel clustering;
  auto* emitCmd = app.add_subcommand("emit-smt", "write the negated sentences of one round as SMT-LIB2 scripts");
  emitCmd->add_option("instance", instance)->required();
  emitCmd->add_option("--precision", precision, "round p")->check(CLI::PositiveNumber);
  emitCmd->add_option("--out-dir", outDir)->required();
  emitCmd->add_option("--mode", emitMode, "cramer or existential");

  auto* measureCmd = app.add_subcommand("measure", "halting fraction over uniform samples from a box");
  addFuelOptions(measureCmd, cfg);
  measureCmd->add_option("--order", order)->check(CLI::Range(1, 16));
  measureCmd->add_option("--box", boxText)->required();
  measureCmd->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  measureCmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << '\n';
    return kExitMalformed;
  }

  try {
    if (*decideCmd) return cmdDecide(cfg, instance, outPath, out);
    if (*trichCmd) return cmdTrichotomy(cfg, boxText, maxDepth, maxBoxes, out);
    if (*checkCmd) return cmdCheck(instance, verdictPath, check, out);
    if (*emitCmd) return cmdEmit(instance, precision, outDir, emitMode, clustering, out);
    return cmdMeasure(cfg, order, boxText, samples, seed, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace lrs::cli
