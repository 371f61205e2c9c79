#include "listhyp/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "listhyp/error.hpp"
#include "listhyp/oracle.hpp"
#include "listhyp/report.hpp"
#include "listhyp/rng.hpp"

namespace listhyp::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kDefaultFamilies = "qstar,uniform,marginal";

struct Options {
  std::string instance;
  std::optional<std::uint32_t> l;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::string family;
  std::string format;
  std::string out;
  bool no_timestamp = false;
  std::uint64_t count = 200;
  std::uint32_t m = 3;
  std::size_t card_y = 3;
  double concentration = 1.0;
  std::string prior;
  std::string channel;
  std::uint32_t n = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-check counts for oracle-check.
struct CheckTally {
  std::string name;
  std::uint64_t run = 0;
  std::uint64_t failed = 0;
};

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw UsageError("cannot parse number \"" + item + "\"");
    }
    out.push_back(v);
  }
  return out;
}

Instance load(const Options& o) {
  if (o.instance.empty()) throw UsageError("--instance is required");
  Instance inst = o.instance == "-" ? [] {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return parse_instance(buf.str());
  }()
                                    : read_instance(o.instance);
  if (o.l) {
    if (*o.l < 1 || *o.l > inst.joint.M()) throw Error(ErrorCode::BadListSize, "--l must lie in [1, M]");
    inst.L = *o.l;
  }
  return inst;
}

std::string format_or(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw std::runtime_error("cannot write " + o.out);
  file << text;
}

ojson digest(const JointDistribution& P, std::uint32_t L) {
  return {{"M", P.M()}, {"L", L}, {"cardY", P.card_y()}, {"hash", content_hash(P)}};
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const auto inst = load(o);
  const auto report = analyze(inst, o.family.empty() ? kDefaultFamilies : o.family, worker_count());
  if (format_or(o, "json") == "csv") {
    emit(o, report_csv(report), out);
  } else {
    emit(o, report_json(report, !o.no_timestamp).dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_sweep_qy(const Options& o, std::ostream& out) {
  if (o.family.empty()) throw UsageError("--family is required");
  const auto inst = load(o);
  const auto report = analyze(inst, o.family, worker_count());
  if (format_or(o, "csv") == "csv") {
    emit(o, report_csv(report), out);
  } else {
    emit(o, report_json(report, !o.no_timestamp).dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto inst = load(o);
  if (o.samples == 0) throw UsageError("--samples must be positive");
  const auto eps = min_error(inst.joint, inst.L).eps_min;
  const auto test = optimal_list_test(inst.joint, inst.L);
  const double empirical = simulate(inst.joint, test, o.samples, o.seed);
  const double se = std::sqrt(std::max(eps * (1.0 - eps), 0.0) / static_cast<double>(o.samples));

  if (format_or(o, "json") == "csv") {
    std::ostringstream line;
    line << "instance_hash,M,L,cardY,samples,seed,empirical_error,eps_min,std_error\n"
         << content_hash(inst.joint) << ',' << inst.joint.M() << ',' << inst.L << ','
         << inst.joint.card_y() << ',' << o.samples << ',' << o.seed << ','
         << format_real(empirical) << ',' << format_real(eps) << ',' << format_real(se) << '\n';
    emit(o, line.str(), out);
  } else {
    ojson doc;
    doc["spec_version"] = "1";
    doc["instance"] = digest(inst.joint, inst.L);
    doc["samples"] = o.samples;
    doc["seed"] = o.seed;
    doc["empirical_error"] = empirical;
    doc["eps_min"] = eps;
    doc["std_error"] = se;
    emit(o, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

/// Every cross-check the oracle module can certify for one instance.
/// An empty entry means the check did not apply (support too large for the envelope oracle).
std::vector<std::optional<bool>> check_instance(const JointDistribution& P, std::uint32_t L) {
  constexpr double kMinErrorTol = 1e-12;
  constexpr double kIdentityTol = 1e-9;
  constexpr double kLambdaTol = 1e-10;
  constexpr double kNpTol = 1e-10;

  std::vector<std::optional<bool>> ok(5, true);
  ok[4].reset();
  const double eps = min_error(P, L).eps_min;
  ok[0] = std::abs(eps - oracle::brute_min_error(P, L)) <= kMinErrorTol;

  const auto PL = build_list_joint(P, L);
  const auto qs = qstar(PL);
  const auto mc = meta_converse_bound(PL, qs.q);
  ok[1] = std::abs(eps - mc.lower_bound_eps) <= kIdentityTol;

  const auto is = info_spectrum_sup(PL, qs.q);
  ok[2] = std::abs(eps - is.lower_bound_eps) <= kIdentityTol &&
          std::abs(is.lambda_opt - lambda_star(PL)) <= kLambdaTol;

  const double beta = 1.0 / static_cast<double>(PL.num_lists());
  for (const auto& q : {qs.q, OutputDistribution::uniform(P.card_y())}) {
    const auto pq = list_mass_pair(PL, q);
    const double primal = alpha_beta(pq, beta).value;
    if (std::abs(primal - alpha_beta_dual(pq, beta)) > kNpTol) ok[3] = false;
    if (pq.size() <= 16) {
      const bool agrees = std::abs(primal - oracle::brute_alpha_beta(pq, beta)) <= kNpTol;
      ok[4] = ok[4].value_or(true) && agrees;
    }
  }
  return ok;
}

int cmd_oracle_check(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<JointDistribution, std::uint32_t>> instances;
  if (!o.instance.empty()) {
    auto inst = load(o);
    instances.emplace_back(std::move(inst.joint), inst.L);
  } else {
    if (o.count == 0) throw UsageError("--count must be positive");
    for (std::uint64_t i = 0; i < o.count; ++i) {
      Rng rng(derive_seed(o.seed, i));
      const auto M = static_cast<std::uint32_t>(2 + rng.uniform_index(5));
      const auto L = static_cast<std::uint32_t>(1 + rng.uniform_index(std::min<std::uint32_t>(3, M)));
      const std::size_t card_y = 2 + rng.uniform_index(7);
      instances.emplace_back(random_instance(M, card_y, L, rng.next_u64(), 1.0), L);
    }
  }

  std::vector<std::vector<std::optional<bool>>> results(instances.size());
  parallel_for(instances.size(), worker_count(), [&](std::size_t i) {
    results[i] = check_instance(instances[i].first, instances[i].second);
  });

  std::vector<CheckTally> tally{{"min_error_vs_brute"},
                                {"meta_converse_identity"},
                                {"info_spectrum_identity"},
                                {"np_primal_vs_dual"},
                                {"np_vs_envelope"}};
  std::uint64_t failed_instances = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    bool all = true;
    for (std::size_t c = 0; c < tally.size(); ++c) {
      if (!results[i][c]) continue;
      ++tally[c].run;
      if (!*results[i][c]) {
        ++tally[c].failed;
        all = false;
      }
    }
    if (!all) {
      ++failed_instances;
      err << "mismatch on instance " << i << " (hash " << content_hash(instances[i].first)
          << ", L=" << instances[i].second << ")\n";
    }
  }

  const bool pass = failed_instances == 0;
  if (format_or(o, "json") == "json") {
    ojson doc;
    doc["spec_version"] = "1";
    doc["instances"] = instances.size();
    doc["seed"] = o.seed;
    ojson checks;
    for (const auto& t : tally) checks[t.name] = {{"run", t.run}, {"failed", t.failed}};
    doc["checks"] = std::move(checks);
    doc["failed_instances"] = failed_instances;
    doc["pass"] = pass;
    emit(o, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    csv << "check,run,failed\n";
    for (const auto& t : tally) csv << t.name << ',' << t.run << ',' << t.failed << '\n';
    emit(o, csv.str(), out);
  }
  return pass ? kExitOk : kExitOracleMismatch;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const std::uint32_t L = o.l.value_or(1);
  JointDistribution P = [&] {
    if (o.prior.empty() != o.channel.empty()) throw UsageError("--prior and --channel go together");
    if (!o.prior.empty()) {
      const auto prior = parse_reals(o.prior);
      Matrix channel;
      std::stringstream ss(o.channel);
      std::string row;
      while (std::getline(ss, row, ';')) channel.push_back(parse_reals(row));
      return product_channel(prior, channel, o.n);
    }
    return random_instance(o.m, o.card_y, L, o.seed, o.concentration);
  }();
  if (L < 1 || L > P.M()) throw Error(ErrorCode::BadListSize, "--l must lie in [1, M]");
  emit(o, instance_to_json(P, L).dump(2) + "\n", out);
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--instance", o.instance, "Instance JSON file ('-' for stdin)");
  cmd->add_option("--l", o.l, "List size (overrides the instance)");
  cmd->add_option("--seed", o.seed, "64-bit seed");
  cmd->add_option("--format", o.format, "json or csv");
  cmd->add_option("--out", o.out, "Write to this file instead of stdout");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit timestamp and timings");
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("LISTHYP_THREADS")) {
    unsigned v = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum error and converse bounds for list hypothesis testing", "listhyp"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full report for one instance");
  add_common(analyze_cmd, o);
  analyze_cmd->add_option("--family", o.family, "Q_Y families (default qstar,uniform,marginal)");

  auto* sweep = app.add_subcommand("sweep-qy", "Bounds for a family of Q_Y");
  add_common(sweep, o);
  sweep->add_option("--family", o.family, "uniform | marginal | qstar | dirichlet:SEED:COUNT");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo error of the optimal list test");
  add_common(sim, o);
  sim->add_option("--samples", o.samples, "Number of samples");

  auto* check = app.add_subcommand("oracle-check", "Cross-check against brute-force oracles");
  add_common(check, o);
  check->add_option("--count", o.count, "Random instances to generate without --instance");

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  add_common(gen, o);
  gen->add_option("--m", o.m, "Number of hypotheses");
  gen->add_option("--cardy", o.card_y, "Number of outcomes");
  gen->add_option("--concentration", o.concentration, "Dirichlet concentration");
  gen->add_option("--prior", o.prior, "Comma separated prior (product channel)");
  gen->add_option("--channel", o.channel, "Channel rows, ';' between rows and ',' within");
  gen->add_option("--n", o.n, "Block length (product channel)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "listhyp: " << e.what() << "\n";
    return kExitSchema;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(o, out);
    if (sweep->parsed()) return cmd_sweep_qy(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (check->parsed()) return cmd_oracle_check(o, out, err);
    return cmd_gen(o, out);
  } catch (const SchemaError& e) {
    err << "listhyp: schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const FamilyError& e) {
    err << "listhyp: " << e.what() << "\n";
    return kExitSchema;
  } catch (const UsageError& e) {
    err << "listhyp: " << e.what() << "\n";
    return kExitSchema;
  } catch (const Error& e) {
    err << "listhyp: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "listhyp: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace listhyp::cli
