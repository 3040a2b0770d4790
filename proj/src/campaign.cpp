#include "schmidt/campaign.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

#include "schmidt/errors.hpp"
#include "schmidt/linalg.hpp"

namespace schmidt {

namespace {

using ojson = nlohmann::ordered_json;

unsigned degree_lcm(std::span<const unsigned> degrees) {
  Integer D = 1;
  for (auto d : degrees) D = lcm(D, Integer(d));
  return static_cast<unsigned>(D.get_ui());
}

// lhs > c * h(x) for lhs = log(K)/D, decided exactly unless the float gap is wide.
bool exceeds_bound(const Rational& K, unsigned D, const Rational& H, const Rational& c, const BigFloat& lhs,
                   const BigFloat& rhs) {
  const unsigned prec = lhs.precision();
  const BigFloat gap = lhs - rhs;
  BigFloat tol(Rational(1), prec);
  tol = tol / BigFloat(Rational(Integer(1) << (prec / 2)), prec);
  tol = tol * (BigFloat(Rational(1), prec) + rhs.abs());
  if (gap.abs() > tol) return gap > BigFloat(prec);
  // K^q > H^(D p) with c = p/q
  const unsigned long p = c.get_num().get_ui();
  const unsigned long q = c.get_den().get_ui();
  return pow(K, q) > pow(H, static_cast<unsigned long>(D) * p);
}

}  // namespace

std::string to_string(Exclusion e) {
  switch (e) {
    case Exclusion::none:
      return "none";
    case Exclusion::zero_height:
      return "zero_height";
    case Exclusion::on_hypersurface:
      return "on_hypersurface";
    case Exclusion::vanishing_form:
      return "vanishing_form";
  }
  return "none";
}

InstanceRecord evaluate_instance(const CampaignConfig& config, long alpha) {
  if (alpha < config.alpha_min || alpha > config.alpha_max) throw DomainError("alpha outside the campaign range");
  const unsigned prec = config.precision_bits;
  const std::size_t n = config.n;
  const auto& S = config.places;

  InstanceRecord r;
  r.alpha = alpha;
  r.x = config.points.at(alpha);
  r.H_x = point_height(r.x).kernel();
  r.h_x = BigFloat::log(r.H_x, prec);
  const auto degrees = config.family.degrees();
  const unsigned D = degree_lcm(degrees);
  r.lhs_root = D;

  std::vector<HomForm> Q;
  for (const auto& f : config.family.forms()) {
    auto form = f.at(n, alpha);
    if (!form) {
      r.excluded = Exclusion::vanishing_form;
      return r;
    }
    Q.push_back(std::move(*form));
  }

  const bool positive_height = r.H_x != 1;
  for (const auto& F : Q) r.H_Q.push_back(form_height_primitive(F).kernel());
  if (positive_height) {
    BigFloat worst(prec);
    for (const auto& H : r.H_Q) {
      const BigFloat s = BigFloat::log(H, prec) / r.h_x;
      if (s > worst) worst = s;
    }
    r.smallness = worst;
  }

  std::vector<Rational> values;
  for (const auto& F : Q) {
    values.push_back(F.evaluate(r.x));
    if (values.back() == 0) {
      r.excluded = Exclusion::on_hypersurface;
      return r;
    }
  }

  Rational K = 1;
  for (std::size_t j = 0; j < Q.size(); ++j) {
    std::vector<ExactPositive> row;
    for (const auto& v : S) {
      row.push_back(weil_multiplier(Q[j], v, r.x));
      K *= pow(row.back().value(), D / degrees[j]);
    }
    r.multipliers.push_back(std::move(row));
  }
  r.lhs_kernel = K;
  const BigFloat root(Rational(D), prec);
  r.lhs = BigFloat::log(K, prec) / root;
  const Rational c = config.bound_constant();
  r.rhs = BigFloat(c, prec) * r.h_x;

  const auto coords = r.x.rational_coords();
  for (const auto& v : S) {
    std::vector<ExactPositive> local;
    for (const auto& val : values) local.push_back(local_norm(v, val));
    std::vector<std::size_t> perm(Q.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return local[a] < local[b]; });
    r.permutation.push_back(std::move(perm));
    if (std::all_of(degrees.begin(), degrees.end(), [&](unsigned d) { return d == degrees.front(); })) {
      const auto xnorm = point_local_norm(v, coords).pow(degrees.front());
      Rational best = 0;
      for (const auto& l : local) {
        const Rational ratio = l.value() / xnorm.value();
        if (ratio > best) best = ratio;
      }
      r.boundedness.push_back(best);
    }
  }

  const auto inf = std::find(S.begin(), S.end(), Place::archimedean());
  try {
    const auto tilde = tilde_normalize(Q);
    BigFloat worst(prec);
    for (std::size_t i = 0; i < Q.size(); ++i) {
      std::vector<unsigned> lead(n + 1, 0);
      lead[0] = degrees[i];
      const HomForm scaled = Q[i].scaled(1 / Q[i].coefficient(MultiIndex(lead)));
      for (const auto& v : S) {
        const auto mt = weil_multiplier(tilde[i], v, r.x);
        const auto ms = weil_multiplier(scaled, v, r.x);
        if (!v.is_archimedean()) {
          // Gauss's lemma: ||F^e||_v = ||F||_v^e at finite places
          if (mt != ms.pow(D / degrees[i])) {
            throw ConsistencyError("tilde normalization changed the Weil function at " + v.to_string() +
                                   " (alpha=" + std::to_string(alpha) + ")");
          }
          continue;
        }
        const BigFloat gap = (BigFloat::log(mt.value(), prec) / root -
                              BigFloat::log(ms.value(), prec) / BigFloat(Rational(degrees[i]), prec))
                                 .abs();
        if (gap > worst) worst = gap;
      }
    }
    if (inf != S.end()) r.tilde_discrepancy = worst;
  } catch (const DomainError&) {
    // leading coefficient vanishes at this alpha; nothing to compare
  }

  if (!positive_height) {
    r.excluded = Exclusion::zero_height;
    return r;
  }
  r.ratio = *r.lhs / r.h_x;
  r.violation = exceeds_bound(K, D, r.H_x, c, *r.lhs, *r.rhs);
  return r;
}

std::string csv_row(const InstanceRecord& r) {
  auto num = [](const std::optional<BigFloat>& f) { return f ? f->to_string(12) : std::string(); };
  std::string line = std::to_string(r.alpha);
  line += "," + r.h_x.to_string(12);
  line += "," + num(r.lhs);
  line += "," + num(r.rhs);
  line += "," + num(r.ratio);
  line += "," + num(r.smallness);
  line += "," + to_string(r.excluded);
  line += "," + (r.lhs_kernel ? r.lhs_kernel->get_num().get_str() : std::string());
  line += "," + (r.lhs_kernel ? r.lhs_kernel->get_den().get_str() : std::string());
  return line;
}

namespace {

ojson record_json(const InstanceRecord& r, const CampaignConfig& config) {
  auto num = [](const std::optional<BigFloat>& f) -> ojson { return f ? ojson(f->to_string(12)) : ojson(nullptr); };
  ojson o;
  o["alpha"] = r.alpha;
  o["x"] = r.x.to_string();
  o["h_x"] = r.h_x.to_string(12);
  o["lhs"] = num(r.lhs);
  o["rhs"] = num(r.rhs);
  o["ratio"] = num(r.ratio);
  o["smallness"] = num(r.smallness);
  o["excluded"] = to_string(r.excluded);
  o["violation"] = r.violation;
  o["lhs_kernel_num"] = r.lhs_kernel ? ojson(r.lhs_kernel->get_num().get_str()) : ojson(nullptr);
  o["lhs_kernel_den"] = r.lhs_kernel ? ojson(r.lhs_kernel->get_den().get_str()) : ojson(nullptr);
  o["lhs_root"] = r.lhs_root;
  o["H_x"] = to_string(r.H_x);
  ojson hq = ojson::array();
  for (const auto& H : r.H_Q) hq.push_back(to_string(H));
  o["H_Q"] = hq;
  ojson mult = ojson::object();
  ojson perm = ojson::object();
  ojson bounded = ojson::object();
  for (std::size_t k = 0; k < config.places.size(); ++k) {
    const auto key = config.places[k].to_string();
    if (!r.multipliers.empty()) {
      ojson col = ojson::array();
      for (const auto& row : r.multipliers) col.push_back(to_string(row[k].value()));
      mult[key] = col;
    }
    if (k < r.permutation.size()) perm[key] = r.permutation[k];
    if (k < r.boundedness.size()) bounded[key] = to_string(r.boundedness[k]);
  }
  o["multipliers"] = mult;
  o["permutation"] = perm;
  o["boundedness"] = bounded;
  o["tilde_discrepancy"] = num(r.tilde_discrepancy);
  return o;
}

}  // namespace

CampaignSummary run_campaign(const CampaignConfig& config, std::ostream& out, OutputFormat format) {
  CampaignSummary s;
  s.bound_constant = config.bound_constant();
  s.position = check_position(config.family, config.N, config.position_samples);

  std::vector<InstanceRecord> records;
  for (long alpha : config.alphas()) records.push_back(evaluate_instance(config, alpha));

  std::vector<const BigFloat*> smallness;
  for (const auto& r : records) {
    ++s.instances;
    switch (r.excluded) {
      case Exclusion::zero_height:
        ++s.excluded_zero_height;
        continue;
      case Exclusion::on_hypersurface:
        ++s.excluded_on_hypersurface;
        continue;
      case Exclusion::vanishing_form:
        ++s.excluded_vanishing_form;
        continue;
      case Exclusion::none:
        break;
    }
    if (!s.max_ratio || *r.ratio > *s.max_ratio) {
      s.max_ratio = *r.ratio;
      s.max_ratio_alpha = r.alpha;
    }
    if (r.violation) {
      ++s.violations;
      s.violating_alphas.push_back(r.alpha);
    } else {
      s.satisfying_alphas.push_back(r.alpha);
    }
    smallness.push_back(&*r.smallness);
    if (r.tilde_discrepancy && (!s.max_tilde_discrepancy || *r.tilde_discrepancy > *s.max_tilde_discrepancy)) {
      s.max_tilde_discrepancy = *r.tilde_discrepancy;
    }
    for (std::size_t k = 0; k < r.boundedness.size(); ++k) {
      if (s.boundedness.size() <= k) {
        s.boundedness.push_back(PlaceRange{config.places[k], r.boundedness[k], r.boundedness[k]});
        continue;
      }
      s.boundedness[k].min = std::min(s.boundedness[k].min, r.boundedness[k]);
      s.boundedness[k].max = std::max(s.boundedness[k].max, r.boundedness[k]);
    }
  }
  for (std::size_t k = smallness.size() * 3 / 4; k < smallness.size(); ++k) {
    if (!s.smallness_trend || *smallness[k] > *s.smallness_trend) s.smallness_trend = *smallness[k];
  }

  if (format == OutputFormat::csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << csv_row(r) << '\n';
  } else {
    ojson doc;
    doc["rows"] = ojson::array();
    for (const auto& r : records) doc["rows"].push_back(record_json(r, config));
    doc["summary"] = ojson::parse(summary_json(s, config));
    out << doc.dump(2) << '\n';
  }
  if (!out) throw std::runtime_error("failed to write campaign output");
  return s;
}

std::string summary_json(const CampaignSummary& s, const CampaignConfig& config) {
  auto num = [](const std::optional<BigFloat>& f) -> ojson { return f ? ojson(f->to_string(12)) : ojson(nullptr); };
  ojson o;
  o["n"] = config.n;
  o["N"] = config.N;
  o["q"] = config.family.q();
  o["epsilon"] = to_string(config.epsilon);
  o["hyperplane_mode"] = config.hyperplane_mode;
  o["bound_constant"] = to_string(s.bound_constant);
  o["precision_bits"] = config.precision_bits;
  o["rounding"] = "nearest";
  o["instances"] = s.instances;
  o["excluded"] = {{"zero_height", s.excluded_zero_height},
                   {"on_hypersurface", s.excluded_on_hypersurface},
                   {"vanishing_form", s.excluded_vanishing_form}};
  o["max_ratio"] = num(s.max_ratio);
  o["max_ratio_alpha"] = s.max_ratio_alpha ? ojson(*s.max_ratio_alpha) : ojson(nullptr);
  o["violations"] = s.violations;
  o["violating_alphas"] = s.violating_alphas;
  o["satisfying_alphas"] = s.satisfying_alphas;
  o["smallness_trend"] = num(s.smallness_trend);
  ojson pos;
  pos["mode"] = s.position.mode_name();
  pos["certified_weakly"] = s.position.certified_weakly;
  pos["samples"] = config.position_samples;
  pos["uniform_position"] = "sampled only";
  if (s.position.witness_subset) pos["witness_subset"] = *s.position.witness_subset;
  if (s.position.witness_alpha) pos["witness_alpha"] = *s.position.witness_alpha;
  o["position"] = pos;
  o["max_tilde_discrepancy"] = num(s.max_tilde_discrepancy);
  ojson bounded = ojson::array();
  for (const auto& b : s.boundedness) {
    bounded.push_back({{"place", b.place.to_string()},
                       {"min", BigFloat(b.min, config.precision_bits).to_string(12)},
                       {"max", BigFloat(b.max, config.precision_bits).to_string(12)}});
  }
  o["boundedness"] = bounded;
  return o.dump(2);
}

ProbeVerdict nondegeneracy_probe(const PointSequence& points, unsigned e, std::span<const long> alphas) {
  if (e == 0) throw DomainError("probe degree must be positive");
  const std::size_t n = points.n();
  const auto monomials = enumerate_Td(n, e);
  if (alphas.size() < monomials.size() + 2) {
    throw DomainError("probe needs at least " + std::to_string(monomials.size() + 2) + " samples");
  }
  linalg::IntMatrix rows;
  for (long alpha : alphas) {
    const auto x = points.at(alpha);
    linalg::IntVector row;
    for (const auto& I : monomials) {
      Integer m = 1;
      for (std::size_t i = 0; i <= n; ++i) {
        Integer t;
        mpz_pow_ui(t.get_mpz_t(), x.coords()[i].get_mpz_t(), I[i]);
        m *= t;
      }
      row.push_back(m);
    }
    rows.push_back(std::move(row));
  }
  ProbeVerdict v;
  v.columns = monomials.size();
  v.rank = linalg::rank(rows, v.columns);
  v.nondegenerate = v.rank == v.columns;
  if (!v.nondegenerate) {
    auto kernel = linalg::nullspace(rows, v.columns).front();
    const auto lead = std::find_if(kernel.begin(), kernel.end(), [](const Integer& c) { return c != 0; });
    if (*lead < 0) {
      for (auto& c : kernel) c = -c;
    }
    HomForm::Coefficients coeffs;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      if (kernel[k] != 0) coeffs[monomials[k]] = Rational(kernel[k]);
    }
    v.witness = HomForm(n, e, std::move(coeffs));
  }
  return v;
}

SmallnessReport smallness_report(const CampaignConfig& config) {
  const unsigned prec = config.precision_bits;
  SmallnessReport report;
  report.threshold = config.smallness_threshold;
  report.per_form.resize(config.family.q());
  for (std::size_t j = 0; j < report.per_form.size(); ++j) report.per_form[j].form = j;

  for (long alpha : config.alphas()) {
    const Rational H = point_height(config.points.at(alpha)).kernel();
    if (H == 1) continue;
    const BigFloat h = BigFloat::log(H, prec);
    for (std::size_t j = 0; j < config.family.q(); ++j) {
      const auto form = config.family.forms()[j].at(config.n, alpha);
      if (!form) continue;
      auto& t = report.per_form[j];
      t.alphas.push_back(alpha);
      t.ratios.push_back(BigFloat::log(form_height_primitive(*form).kernel(), prec) / h);
    }
  }

  const BigFloat threshold(config.smallness_threshold, prec);
  report.consistent = true;
  for (auto& t : report.per_form) {
    t.envelope = t.ratios;
    for (std::size_t k = t.envelope.size(); k-- > 1;) {
      if (t.envelope[k] > t.envelope[k - 1]) t.envelope[k - 1] = t.envelope[k];
    }
    if (!t.envelope.empty()) t.last_quartile_max = t.envelope[t.envelope.size() * 3 / 4];
    t.consistent = t.last_quartile_max && *t.last_quartile_max < threshold;
    report.consistent = report.consistent && t.consistent;
  }
  return report;
}

}  // namespace schmidt
