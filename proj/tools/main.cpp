// command-line front end: closed-form and finite-window capacities, exact
// permissible-set enumeration, log-density spectra, random-coding simulation,
// and the negation-attack demonstration
#include <CLI11.hpp>

#include "stegocap/capacity.hpp"
#include "stegocap/coding.hpp"
#include "stegocap/config.hpp"
#include "stegocap/spectrum.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace stegocap;

struct AwgnTriple {
  double c = 0, se2 = 0, sa2 = 0;
};

AwgnTriple parse_awgn(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("awgn spec expects c=..,se2=..,sa2=..");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  AwgnTriple t;
  t.c = kv_double(kv, "c");
  t.se2 = kv_double_or(kv, "se2", 0.0);
  t.sa2 = kv_double_or(kv, "sa2", 0.0);
  return t;
}

LogBase base_from_flag(const std::string& b) {
  return b == "e" ? LogBase::nats : LogBase::bits;
}

// output sink: a file when --out is given, stdout otherwise
struct Sink {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    stream = &file;
  }
};

struct CapacityArgs {
  std::string analyzer = "sum";
  std::string awgn;
  std::string channel;
  int n_max = 16;
  std::uint64_t budget = EnumBudget{}.max_tuples;
  std::string base = "2";
  std::string out;
};

int run_capacity(const CapacityArgs& a) {
  Sink sink(a.out);
  CsvWriter csv(*sink.stream);
  LogBase base = base_from_flag(a.base);
  csv.metadata("log_base", a.base == "e" ? "nats" : "bits");

  if (!a.awgn.empty()) {
    auto t = parse_awgn(a.awgn);
    auto r = awgn_secure_capacity(t.c, t.se2, t.sa2, base);
    csv.metadata("mode", "gaussian_closed_form");
    csv.metadata("unbounded", r.unbounded ? "true" : "false");
    csv.header({"c", "se2", "sa2", "capacity"});
    csv.row({CsvWriter::num(t.c), CsvWriter::num(t.se2), CsvWriter::num(t.sa2),
             CsvWriter::num(r.value)});
    return 0;
  }

  if (!a.channel.empty()) {
    auto w = dmc_from_spec(a.channel);
    auto g = steganalyzer_from_spec(a.analyzer);
    auto r = dmsc_secure_capacity(w, g, base);
    csv.metadata("mode", "restricted_channel_optimization");
    csv.metadata("channel", a.channel);
    csv.metadata("detector", a.analyzer);
    csv.header({"capacity"});
    csv.row({CsvWriter::num(r.value)});
    return 0;
  }

  auto g = steganalyzer_from_spec(a.analyzer);
  if (a.n_max < 1) throw std::invalid_argument("--n-max must be positive");
  std::vector<int> window(static_cast<std::size_t>(a.n_max));
  for (int i = 0; i < a.n_max; ++i) window[i] = i + 1;
  EnumBudget budget{a.budget};
  auto counts = permissible_counts(g, budget);
  auto r = noiseless_secure_capacity(counts, window, base);
  csv.metadata("mode", "noiseless_window_rates");
  csv.metadata("detector", a.analyzer);
  csv.metadata("tail_liminf", r.liminf_estimate);
  csv.metadata("tail_limsup", r.limsup_estimate);
  csv.metadata("value", r.value);
  csv.header({"n", "count", "rate"});
  for (std::size_t i = 0; i < window.size(); ++i)
    csv.row({std::to_string(window[i]), CsvWriter::num(counts(window[i])),
             CsvWriter::num(r.per_n_rates[i])});
  return 0;
}

struct EnumerateArgs {
  std::string analyzer = "sum";
  int n = 4;
  std::uint64_t budget = EnumBudget{}.max_tuples;
  std::string out;
};

int run_enumerate(const EnumerateArgs& a) {
  Sink sink(a.out);
  auto g = steganalyzer_from_spec(a.analyzer);
  auto ps = enumerate_permissible(g, a.n, EnumBudget{a.budget});
  *sink.stream << "# detector: " << a.analyzer << "\n";
  *sink.stream << "# n: " << a.n << "\n";
  *sink.stream << "# count: " << ps.count.str() << "\n";
  for (const auto& tuple : ps.members) {
    for (std::size_t i = 0; i < tuple.size(); ++i)
      *sink.stream << (i ? " " : "") << tuple[i];
    *sink.stream << "\n";
  }
  return 0;
}

struct SpectrumArgs {
  std::string type = "entropy";
  std::string probs = "0.5,0.5";
  std::string channel;
  int n = 4;
  std::uint64_t draws = 0;
  std::uint64_t seed = 1;
  double power = 1.0;
  double noise = 1.0;
  std::string base = "2";
  std::string out;
};

int run_spectrum(const SpectrumArgs& a) {
  Sink sink(a.out);
  CsvWriter csv(*sink.stream);
  LogBase base = base_from_flag(a.base);
  csv.metadata("log_base", a.base == "e" ? "nats" : "bits");
  csv.metadata("type", a.type);

  SpectrumSample s;
  if (a.type == "gaussian") {
    if (a.draws == 0)
      throw std::invalid_argument("the gaussian spectrum needs --draws");
    s = gaussian_information_spectrum(a.power, a.noise, a.n, a.draws, a.seed, base);
  } else {
    auto input = BlockDist::iid(Distribution(parse_double_list(a.probs)), a.n);
    auto mode = a.draws == 0 ? SpectrumMode::exact_mode()
                             : SpectrumMode::sampled(a.draws, a.seed);
    if (a.type == "entropy") {
      s = entropy_spectrum(input, mode, base);
    } else if (a.type == "information") {
      if (a.channel.empty())
        throw std::invalid_argument("the information spectrum needs --channel");
      s = information_spectrum(input, BlockKernel(dmc_from_spec(a.channel), a.n),
                               mode, base);
    } else {
      throw std::invalid_argument("unknown spectrum type '" + a.type + "'");
    }
  }
  csv.metadata("exact", s.exact ? "true" : "false");
  csv.metadata("mean", s.mean());
  csv.header({"value", "prob"});
  for (const auto& atom : s.atoms)
    csv.row({CsvWriter::num(atom.value), CsvWriter::num(atom.prob)});
  return 0;
}

struct SimulateArgs {
  std::string awgn = "c=1,se2=0,sa2=0";
  double rate = 0.1;
  int n = 64;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  double margin = 0.05;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  Sink sink(a.out);
  CsvWriter csv(*sink.stream);
  auto t = parse_awgn(a.awgn);
  AwgnExperimentParams p;
  p.c = t.c;
  p.se2 = t.se2;
  p.sa2 = t.sa2;
  p.rate_bits = a.rate;
  p.n = a.n;
  p.trials = a.trials;
  p.seed = a.seed;
  p.margin_fraction = a.margin;
  auto r = awgn_experiment(p);
  csv.metadata("mode", r.explicit_codebook ? "explicit_codebook" : "ensemble_average");
  csv.metadata("trials", static_cast<double>(p.trials));
  csv.metadata("seed", static_cast<double>(p.seed));
  csv.metadata("m_log2", r.m_log2);
  csv.metadata("rate_penalty_bits", r.rate_penalty_bits);
  csv.header({"n", "rate", "epsilon", "delta", "eps_hw", "delta_hw", "p_in"});
  csv.row({std::to_string(p.n), CsvWriter::num(p.rate_bits),
           CsvWriter::num(r.epsilon.value), CsvWriter::num(r.delta.value),
           CsvWriter::num(r.epsilon.half_width), CsvWriter::num(r.delta.half_width),
           CsvWriter::num(r.p_in)});
  return 0;
}

struct DemoArgs {
  int n = 5;
  std::string out;
};

int run_demo(const DemoArgs& a) {
  Sink sink(a.out);
  auto rep = two_noise_demo(a.n);
  auto& os = *sink.stream;
  os << "two sign detectors in series at n = " << rep.n << "\n";
  os << "tuples passing both detectors: " << (rep.composite_empty ? 0 : 1)
     << " (the series composition is " << (rep.composite_empty ? "empty" : "nonempty")
     << ")\n";
  os << "codebook through a negation between them: " << rep.codebook_size.str()
     << " words\n";
  os << "rate: " << CsvWriter::num(rep.rate_bits) << " bits per use\n";
  os << "decoding error: " << CsvWriter::num(rep.epsilon) << "\n";
  os << "detection probability: " << CsvWriter::num(rep.delta) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "capacity, enumeration, spectrum, and simulation tools for detector-"
      "constrained channels"};
  app.require_subcommand(1);

  CapacityArgs cap;
  auto* cap_cmd = app.add_subcommand(
      "capacity", "closed-form or finite-window capacity numbers");
  cap_cmd->add_option("--steganalyzer", cap.analyzer, "detector spec");
  cap_cmd->add_option("--awgn", cap.awgn, "gaussian pipeline c=..,se2=..,sa2=..");
  cap_cmd->add_option("--channel", cap.channel,
                      "channel spec for the restricted-channel capacity");
  cap_cmd->add_option("--n-max", cap.n_max, "window of block lengths 1..n_max");
  cap_cmd->add_option("--budget", cap.budget, "enumeration budget in tuples");
  cap_cmd->add_option("--base", cap.base, "log base")
      ->check(CLI::IsMember({"2", "e"}));
  cap_cmd->add_option("--out", cap.out, "output file (default stdout)");

  EnumerateArgs en;
  auto* en_cmd =
      app.add_subcommand("enumerate", "list the permissible tuples at one n");
  en_cmd->add_option("--steganalyzer", en.analyzer, "detector spec");
  en_cmd->add_option("--n", en.n, "block length");
  en_cmd->add_option("--budget", en.budget, "enumeration budget in tuples");
  en_cmd->add_option("--out", en.out, "output file (default stdout)");

  SpectrumArgs sp;
  auto* sp_cmd =
      app.add_subcommand("spectrum", "law of a normalized log-density");
  sp_cmd->add_option("--type", sp.type, "entropy | information | gaussian")
      ->check(CLI::IsMember({"entropy", "information", "gaussian"}));
  sp_cmd->add_option("--probs", sp.probs, "letter probabilities, e.g. 0.7,0.3");
  sp_cmd->add_option("--channel", sp.channel, "channel spec (information type)");
  sp_cmd->add_option("--n", sp.n, "block length");
  sp_cmd->add_option("--draws", sp.draws, "samples (0 = exact where available)");
  sp_cmd->add_option("--seed", sp.seed, "sampling seed");
  sp_cmd->add_option("--power", sp.power, "input power (gaussian type)");
  sp_cmd->add_option("--noise", sp.noise, "noise variance (gaussian type)");
  sp_cmd->add_option("--base", sp.base, "log base")
      ->check(CLI::IsMember({"2", "e"}));
  sp_cmd->add_option("--out", sp.out, "output file (default stdout)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "random-coding error/detection rates for a gaussian pipeline");
  sim_cmd->add_option("--awgn", sim.awgn, "pipeline spec c=..,se2=..,sa2=..");
  sim_cmd->add_option("--rate", sim.rate, "code rate in bits per use");
  sim_cmd->add_option("--n", sim.n, "block length");
  sim_cmd->add_option("--trials", sim.trials, "independent trials");
  sim_cmd->add_option("--seed", sim.seed, "master seed");
  sim_cmd->add_option("--margin", sim.margin,
                      "power back-off as a fraction of the threshold");
  sim_cmd->add_option("--out", sim.out, "output file (default stdout)");

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand(
      "demo", "negation attack between two sign detectors in series");
  demo_cmd->add_option("--n", demo.n, "odd block length");
  demo_cmd->add_option("--out", demo.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cap_cmd) return run_capacity(cap);
    if (*en_cmd) return run_enumerate(en);
    if (*sp_cmd) return run_spectrum(sp);
    if (*sim_cmd) return run_simulate(sim);
    if (*demo_cmd) return run_demo(demo);
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
