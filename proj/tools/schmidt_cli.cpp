#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "schmidt/campaign.hpp"
#include "schmidt/config.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/filtration.hpp"
#include "schmidt/position.hpp"
#include "schmidt/projgeom.hpp"

using namespace schmidt;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kConfig = 1, kPosition = 2, kConsistency = 3 };

struct Common {
  std::string config;
  std::string out;
  std::string format = "csv";
  bool hyperplane = false;
};

// Stdout unless --out names a file.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ConfigError("--out: cannot open " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool is_stdout() const { return !file_; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

OutputFormat parse_format(const std::string& f) { return f == "json" ? OutputFormat::json : OutputFormat::csv; }

std::string csv_cell(const ojson& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : " ") + csv_cell(e);
    return joined;
  }
  return v.dump();
}

// Rows share the keys of the first row.
void emit_table(std::ostream& out, const std::vector<ojson>& rows, const std::string& format, const ojson& extra = {}) {
  if (format == "json") {
    ojson doc;
    doc["rows"] = rows;
    for (const auto& [k, v] : extra.items()) doc[k] = v;
    out << doc.dump(2) << '\n';
    return;
  }
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [k, v] : rows.front().items()) {
    out << (first ? "" : ",") << k;
    first = false;
  }
  out << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [k, v] : row.items()) {
      out << (first ? "" : ",") << csv_cell(v);
      first = false;
    }
    out << '\n';
  }
}

CampaignConfig load(const Common& c) {
  if (c.config.empty()) throw ConfigError("--config: required for this subcommand");
  auto cfg = load_config(c.config);
  if (c.hyperplane) enable_hyperplane_mode(cfg);
  return cfg;
}

std::vector<HomForm> forms_at(const CampaignConfig& cfg, long alpha) {
  auto Q = cfg.family.at(alpha);
  bool common = true;
  for (const auto& f : Q) common = common && f.degree() == Q.front().degree();
  return common ? Q : to_common_degree(Q);
}

// N+1 of the q forms, 1-based indices; the first N+1 by default.
std::vector<HomForm> pick_subset(const CampaignConfig& cfg, std::vector<HomForm> Q, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> idx = subset;
  if (idx.empty()) {
    for (std::size_t j = 1; j <= cfg.N + 1; ++j) idx.push_back(j);
  }
  if (idx.size() != cfg.N + 1) throw ConfigError("--subset: needs N+1 = " + std::to_string(cfg.N + 1) + " indices");
  std::vector<HomForm> out;
  for (std::size_t j : idx) {
    if (j == 0 || j > Q.size()) throw ConfigError("--subset: index " + std::to_string(j) + " out of range");
    out.push_back(Q[j - 1]);
  }
  return out;
}

long default_alpha(const CampaignConfig& cfg, const std::optional<long>& alpha) {
  return alpha ? *alpha : cfg.position_samples.front();
}

ojson verdict_json(const PositionVerdict& v, const CampaignConfig& cfg) {
  ojson row;
  row["mode"] = v.mode_name();
  row["certified_weakly"] = v.certified_weakly;
  row["samples"] = cfg.position_samples;
  row["witness_subset"] = v.witness_subset ? ojson(*v.witness_subset) : ojson(nullptr);
  row["witness_alpha"] = v.witness_alpha ? ojson(*v.witness_alpha) : ojson(nullptr);
  row["failed_subsets"] = v.failed_samples.size();
  return row;
}

int cmd_verify(const Common& c) {
  const auto cfg = load(c);
  Sink sink(c.out);
  const auto s = run_campaign(cfg, sink.stream(), parse_format(c.format));
  if (c.format == "csv") (sink.is_stdout() ? std::cerr : std::cout) << summary_json(s, cfg) << '\n';
  if (!s.position.certified_weakly) {
    std::cerr << "position: not certified in weak " << cfg.N << "-subgeneral position\n";
    return kPosition;
  }
  return kOk;
}

int cmd_check_position(const Common& c) {
  const auto cfg = load(c);
  const auto v = check_position(cfg.family, cfg.N, cfg.position_samples);
  Sink sink(c.out);
  emit_table(sink.stream(), {verdict_json(v, cfg)}, c.format);
  return v.certified_weakly ? kOk : kPosition;
}

int cmd_reduce(const Common& c, const std::optional<long>& alpha_opt, const std::vector<std::size_t>& subset) {
  const auto cfg = load(c);
  const long alpha = default_alpha(cfg, alpha_opt);
  const auto Q = pick_subset(cfg, forms_at(cfg, alpha), subset);
  const auto r = reduce_to_general(Q, cfg.n, cfg.N);
  std::vector<ojson> rows;
  for (std::size_t t = 1; t <= r.forms.size(); ++t) {
    ojson row;
    row["alpha"] = alpha;
    row["t"] = t;
    std::vector<std::string> coeffs;
    if (t >= 2) {
      for (const auto& x : r.coefficients[t - 2]) coeffs.push_back(to_string(x));
    }
    row["coefficients"] = coeffs;
    row["form"] = r.forms[t - 1].to_string();
    rows.push_back(row);
  }
  Sink sink(c.out);
  emit_table(sink.stream(), rows, c.format);
  return kOk;
}

int cmd_filtration(const Common& c, std::size_t n, unsigned d, unsigned L, const std::optional<long>& alpha_opt,
                   const std::vector<std::size_t>& subset) {
  std::optional<FiltrationData> built;
  Rational eps_prime = 1;
  if (!c.config.empty()) {
    const auto cfg = load(c);
    const auto Q = pick_subset(cfg, forms_at(cfg, default_alpha(cfg, alpha_opt)), subset);
    const auto r = reduce_to_general(Q, cfg.n, cfg.N);
    eps_prime = cfg.epsilon_prime;
    const std::vector<HomForm> P(r.forms.begin(), r.forms.begin() + static_cast<long>(cfg.n));
    built = build_filtration(P, L);
    n = cfg.n;
    d = P.front().degree();
  }
  if (n == 0 || d == 0) throw ConfigError("--n/--d: required without --config");
  const auto stats = filtration_stats(n, d, L);
  const auto ratio = filtration_ratio(n, d, L, eps_prime);

  std::vector<ojson> rows;
  const auto tuples = built ? built->tuples : staircase_tuples(n, L / d);
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const long M = static_cast<long>(L) - static_cast<long>(d * tuple_norm(tuples[k]));
    ojson row;
    row["k"] = k + 1;
    row["tuple"] = tuples[k];
    row["norm"] = tuple_norm(tuples[k]);
    row["expected_jump"] = to_string(lemma33_count(n, d, M));
    row["jump"] = built ? ojson(built->m[k]) : ojson(nullptr);
    rows.push_back(row);
  }
  ojson summary;
  summary["n"] = n;
  summary["d"] = d;
  summary["L"] = L;
  summary["u"] = to_string(stats.u);
  summary["K"] = to_string(stats.K);
  summary["a"] = to_string(stats.a);
  summary["ratio"] = ratio ? ojson(to_string(*ratio)) : ojson(nullptr);
  summary["span_built"] = built.has_value();
  Sink sink(c.out);
  emit_table(sink.stream(), rows, c.format, {{"stats", summary}});
  if (c.format == "csv") std::cerr << summary.dump() << '\n';
  return kOk;
}

int cmd_choose_l(const Common& c, std::size_t n, unsigned d, std::size_t N, std::string eps, std::string eps_prime) {
  Rational epsilon, epsilon_prime = 1;
  if (!c.config.empty()) {
    const auto cfg = load(c);
    n = cfg.n;
    N = cfg.N;
    epsilon = cfg.epsilon;
    epsilon_prime = cfg.epsilon_prime;
    Integer D = 1;
    for (const auto& f : cfg.family.at(cfg.position_samples.front())) D = lcm(D, Integer(f.degree()));
    if (d == 0) d = static_cast<unsigned>(D.get_ui());
  } else {
    if (n == 0 || d == 0 || N == 0 || eps.empty()) throw ConfigError("--n/--d/--N/--epsilon: required without --config");
    try {
      epsilon = parse_rational(eps);
      if (!eps_prime.empty()) epsilon_prime = parse_rational(eps_prime);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("--epsilon: ") + e.what());
    }
  }
  const auto ch = choose_L(n, d, N, epsilon, epsilon_prime);
  ojson row;
  row["n"] = n;
  row["d"] = d;
  row["N"] = N;
  row["epsilon"] = to_string(epsilon);
  row["epsilon_prime"] = to_string(epsilon_prime);
  row["L"] = ch.L;
  row["ratio"] = to_string(ch.ratio);
  row["bound"] = to_string(ch.bound);
  Sink sink(c.out);
  emit_table(sink.stream(), {row}, c.format);
  return kOk;
}

// H(x)^d H(Q) from the height kernels; first_main_identity multiplies local multipliers instead.
Rational expected_identity(const HomForm& Q, const ProjectivePoint& x) {
  return pow(point_height(x).kernel(), Q.degree()) * form_height_primitive(Q).kernel();
}

int cmd_fmt_check(const Common& c, int samples, unsigned long seed) {
  std::vector<ojson> rows;
  bool ok = true;
  auto record = [&](ojson row, const HomForm& Q, const ProjectivePoint& x) {
    const Rational got = first_main_identity(Q, x);
    const Rational want = expected_identity(Q, x);
    row["product"] = to_string(got);
    row["expected"] = to_string(want);
    row["ok"] = got == want;
    ok = ok && got == want;
    rows.push_back(row);
  };
  if (!c.config.empty()) {
    const auto cfg = load(c);
    for (long alpha : cfg.alphas()) {
      const auto x = cfg.points.at(alpha);
      const auto Q = cfg.family.at(alpha);
      for (std::size_t j = 0; j < Q.size(); ++j) {
        if (evaluate(Q[j], x) == 0) continue;
        record({{"alpha", alpha}, {"form", j + 1}}, Q[j], x);
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(seed);
    for (int s = 0; s < samples;) {
      const std::size_t n = 1 + rng() % 3;
      const unsigned d = 1 + static_cast<unsigned>(rng() % 4);
      HomForm::Coefficients coeffs;
      for (const auto& I : enumerate_Td(n, d)) coeffs[I] = Rational(Integer(gen.get_z_range(2001)) - 1000);
      const auto Q = HomForm::make(n, d, coeffs);
      std::vector<Rational> raw;
      for (std::size_t i = 0; i <= n; ++i) raw.emplace_back(Integer(gen.get_z_range(2001)) - 1000);
      if (!Q || std::all_of(raw.begin(), raw.end(), [](const Rational& v) { return v == 0; })) continue;
      const auto x = ProjectivePoint::from_raw(std::span<const Rational>(raw));
      if (evaluate(*Q, x) == 0) continue;
      record({{"sample", s + 1}, {"form", Q->to_string()}}, *Q, x);
      ++s;
    }
  }
  Sink sink(c.out);
  emit_table(sink.stream(), rows, c.format);
  if (!ok) {
    std::cerr << "fmt-check: product of local multipliers differs from H(x)^d H(Q)\n";
    return kConsistency;
  }
  return kOk;
}

int cmd_probe(const Common& c, unsigned degree) {
  const auto cfg = load(c);
  const unsigned e = degree ? degree : cfg.probe_degree;
  const auto alphas = cfg.alphas();
  const auto v = nondegeneracy_probe(cfg.points, e, alphas);
  ojson row;
  row["degree"] = e;
  row["samples"] = alphas.size();
  row["rank"] = v.rank;
  row["columns"] = v.columns;
  row["nondegenerate"] = v.nondegenerate;
  row["witness"] = v.witness ? ojson(v.witness->to_string()) : ojson(nullptr);
  row["limitation"] = ProbeVerdict::limitation;
  Sink sink(c.out);
  emit_table(sink.stream(), {row}, c.format);
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool needs_config) {
  auto* opt = sub->add_option("--config", c.config, "campaign config (JSON)")->check(CLI::ExistingFile);
  if (needs_config) opt->required();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--hyperplane-mode", c.hyperplane, "degree-1 family with bound constant n+1+epsilon");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic harness for the moving-target subspace inequality"};
  app.require_subcommand(1);
  Common c;

  auto* verify = app.add_subcommand("verify", "run the campaign and report the summary");
  add_common(verify, c, true);

  auto* position = app.add_subcommand("check-position", "certify weak N-subgeneral position at sampled alphas");
  add_common(position, c, true);

  std::optional<long> alpha;
  std::vector<std::size_t> subset;
  auto* reduce = app.add_subcommand("reduce", "replace the family by n+1 forms in general position");
  add_common(reduce, c, true);
  reduce->add_option("--alpha", alpha, "index at which to freeze the coefficients");
  reduce->add_option("--subset", subset, "N+1 form indices, 1-based (default 1..N+1)")->delimiter(',');

  std::size_t n = 0, N = 0;
  unsigned d = 0, L = 0;
  auto* filtration = app.add_subcommand("filtration", "staircase filtration jumps and u, K, a");
  add_common(filtration, c, false);
  filtration->add_option("--n", n, "projective dimension");
  filtration->add_option("--d", d, "common degree");
  filtration->add_option("--L", L, "degree of V_L")->required();
  filtration->add_option("--alpha", alpha, "index at which to freeze the coefficients");
  filtration->add_option("--subset", subset, "N+1 form indices, 1-based (default 1..N+1)")->delimiter(',');

  std::string eps, eps_prime;
  auto* choose = app.add_subcommand("choose-l", "smallest L meeting the filtration bound");
  add_common(choose, c, false);
  choose->add_option("--n", n, "projective dimension");
  choose->add_option("--d", d, "common degree");
  choose->add_option("--N", N, "subgeneral index");
  choose->add_option("--epsilon", eps, "rational p/q");
  choose->add_option("--epsilon-prime", eps_prime, "rational p/q (default 1)");

  int samples = 200;
  unsigned long seed = 1;
  auto* fmt = app.add_subcommand("fmt-check", "product of local multipliers against H(x)^d H(Q)");
  add_common(fmt, c, false);
  fmt->add_option("--samples", samples, "random pairs when no config is given");
  fmt->add_option("--seed", seed, "seed for the random pairs");

  unsigned degree = 0;
  auto* probe = app.add_subcommand("probe", "constant-coefficient nondegeneracy probe of x(alpha)");
  add_common(probe, c, true);
  probe->add_option("--degree", degree, "probe degree (default: probe_degree from the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*verify) return cmd_verify(c);
    if (*position) return cmd_check_position(c);
    if (*reduce) return cmd_reduce(c, alpha, subset);
    if (*filtration) return cmd_filtration(c, n, d, L, alpha, subset);
    if (*choose) return cmd_choose_l(c, n, d, N, eps, eps_prime);
    if (*fmt) return cmd_fmt_check(c, samples, seed);
    if (*probe) return cmd_probe(c, degree);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const PositionError& e) {
    std::cerr << "position error: " << e.what() << '\n';
    return kPosition;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << '\n';
    return kConsistency;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kConsistency;
  }
  return kOk;
}
