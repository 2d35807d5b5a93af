#pragma once

#include "dyadic/io.hpp"
#include "dyadic/tensor.hpp"

namespace dyadic {

/// Everything the pipeline needs; deterministic (no seeds anywhere).
struct ExperimentConfig {
  long m = 4;
  long k = 1;
  long ell = 1;
  Rat eta{1, 4};
  OrliczGauge phi = OrliczGauge::loglog(Rat(1, 4));
  std::size_t pool_cap = 128;
  std::size_t budget = 16;
};

struct PipelineReport {
  bool all_pass = false;
  Json doc;
};

namespace detail {

inline void add_check(Json& checks, bool& all, const std::string& name, bool pass,
                      const std::string& exact, const std::string& display) {
  checks.push_back({{"name", name}, {"pass", pass}, {"exact", exact}, {"display", display}});
  all = all && pass;
}

}  // namespace detail

/// Build the full (m,k) instance, run every verifier, and assemble the
/// headline comparison: the pairing stays >= 2^k while any certified
/// eta-sparse form the greedy search finds is Lambda-limited.
inline PipelineReport run_pipeline(const ExperimentConfig& cfg) {
  require(cfg.m >= cfg.k + 2, errc::bad_input, "config requires m >= k + 2");
  require(cfg.eta > 0 && cfg.eta <= 1, errc::bad_input, "eta must be in (0,1]");
  PipelineReport rep;
  rep.doc["version"] = kVersion;
  rep.doc["config"] = {{"m", cfg.m},     {"k", cfg.k},
                       {"ell", cfg.ell}, {"eta", rat_str(cfg.eta)},
                       {"phi", cfg.phi.kind == OrliczGauge::Kind::power
                                   ? "power:" + rat_str(cfg.phi.param)
                                   : "loglog:" + rat_str(cfg.phi.param)},
                       {"pool_cap", cfg.pool_cap}, {"budget", cfg.budget}};
  Json checks = Json::array();
  bool all = true;

  auto P = construct_p(cfg.m);
  auto sep = verify_separation(P);
  detail::add_check(checks, all, "separation", sep.violations.empty(),
                    rat_str(sep.min_dist_sq.to_rat()), float_str(sep.min_dist_sq.to_rat()));

  auto Z = construct_z(P, cfg.k, cfg.ell);
  auto zrep = verify_z_properties(P, Z);
  detail::add_check(checks, all, "z_properties", zrep.ok(), rat_str(Rat(zrep.count)),
                    std::to_string(zrep.count));
  auto trz = verify_trz(P, Z);
  detail::add_check(checks, all, "trz", trz.ok(std::int64_t(Z.witnesses.size())), "", "");

  auto mu = measure_on_p(P);
  std::vector<DyadicPoint> zs;
  for (const auto& w : Z.witnesses) zs.push_back(w.z);
  auto nu = uniform_measure(zs);
  Rat two_k = Rat(Int(1) << cfg.k);

  auto pr = pairing_ms(mu, nu);
  detail::add_check(checks, all, "pairing_ms", !pr.infinite && pr.value >= two_k,
                    rat_str(pr.value), float_str(pr.value));

  auto sigma = build_sigma(P, Z);
  Rat mp = martingale_pairing(sigma, mu, nu);
  detail::add_check(checks, all, "martingale_pairing", mp == two_k, rat_str(mp), float_str(mp));

  auto pa = product_averages_check(mu, nu, cfg.m, cfg.k);
  detail::add_check(checks, all, "product_averages_constant", pa.constant > 0,
                    rat_str(pa.constant), float_str(pa.constant));
  rep.doc["product_averages_argmax"] = pa.argmax.str();

  auto pool = default_rect_pool(mu, nu, 2 * cfg.m + 2, cfg.pool_cap);
  auto greedy = greedy_max_form(mu, nu, cfg.eta, pool, cfg.budget);
  detail::add_check(checks, all, "greedy_certificate", certificate_valid(greedy.certificate),
                    rat_str(greedy.form), float_str(greedy.form));
  rep.doc["greedy_collection"] = collection_to_json(greedy.collection);

  auto f = build_f_simple(P);
  auto orlicz_form = form_phi(greedy.collection, f, nu, cfg.phi);
  detail::add_check(checks, all, "orlicz_form", orlicz_form.hi >= orlicz_form.lo,
                    rat_str(orlicz_form.lo) + ".." + rat_str(orlicz_form.hi),
                    float_str(orlicz_form.mid()));

  // headline: pairing vs the Lambda-normalized greedy form. Lambda = 1/eta
  // certifies the collection, so form/Lambda = eta * form is what a sparse
  // domination would have to beat; the ratio grows with k.
  Rat normalized = cfg.eta * greedy.form;
  Rat headline = normalized > 0 ? pr.value / normalized : Rat(0);
  detail::add_check(checks, all, "headline_ratio", headline > 0, rat_str(headline),
                    float_str(headline));
  rep.doc["headline_ratio"] = rat_str(headline);

  rep.doc["checks"] = checks;
  rep.doc["all_pass"] = all;
  rep.all_pass = all;
  return rep;
}

/// One row per config; failures are recorded in the row, not fatal.
inline Json sweep(const std::vector<ExperimentConfig>& configs) {
  Json rows = Json::array();
  for (const auto& cfg : configs) {
    try {
      auto rep = run_pipeline(cfg);
      Json row = {{"m", cfg.m}, {"k", cfg.k}, {"all_pass", rep.all_pass}};
      for (const auto& c : rep.doc["checks"])
        row[c.at("name").get<std::string>()] = c.at("exact");
      row["headline_ratio"] = rep.doc["headline_ratio"];
      rows.push_back(row);
    } catch (const error& e) {
      rows.push_back({{"m", cfg.m}, {"k", cfg.k}, {"all_pass", false}, {"error", e.what()}});
    }
  }
  return rows;
}

inline std::string sweep_to_csv(const Json& rows) {
  std::string out = "m,k,all_pass,pairing_ms,martingale_pairing,headline_ratio\n";
  for (const auto& r : rows) {
    out += std::to_string(r.at("m").get<long>()) + "," + std::to_string(r.at("k").get<long>()) +
           "," + (r.at("all_pass").get<bool>() ? "1" : "0") + ",";
    out += (r.contains("pairing_ms") ? r.at("pairing_ms").get<std::string>() : "") + ",";
    out += (r.contains("martingale_pairing") ? r.at("martingale_pairing").get<std::string>() : "") +
           ",";
    out += (r.contains("headline_ratio") ? r.at("headline_ratio").get<std::string>() : "") + "\n";
  }
  return out;
}

}  // namespace dyadic
