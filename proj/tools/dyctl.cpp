#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dyadic/pipeline.hpp"

using namespace dyadic;

namespace {

struct Options {
  std::string format = "json";
  std::string out;
};

void emit(const Options& opt, const Json& j, const std::string& csv = "") {
  std::string text = opt.format == "csv" && !csv.empty() ? csv : j.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    f << text;
  }
}

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(errc::bad_input, "cannot open '" + path + "'");
  Json j;
  f >> j;
  return j;
}

OrliczGauge parse_phi(const std::string& spec) {
  auto sep = spec.find(':');
  require(sep != std::string::npos, errc::bad_input, "gauge spec '" + spec + "'");
  std::string kind = spec.substr(0, sep);
  Rat param = parse_rat(spec.substr(sep + 1));
  if (kind == "power") return OrliczGauge::power(param);
  if (kind == "loglog") return OrliczGauge::loglog(param);
  fail(errc::bad_input, "gauge kind '" + kind + "'");
}

DyadicPoint parse_point(const std::string& s) {
  std::vector<DyadicCoord> coords;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find(',', pos);
    coords.push_back(DyadicCoord::parse(
        s.substr(pos, next == std::string::npos ? next : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return DyadicPoint(std::move(coords));
}

AtomicMeasure measure_from_file(const std::string& path) {
  return measure_from_json(read_json(path));
}

std::pair<AtomicMeasure, AtomicMeasure> construction_measures(long m, long k, long ell) {
  auto P = construct_p(m);
  auto Z = construct_z(P, k, ell);
  std::vector<DyadicPoint> zs;
  for (const auto& w : Z.witnesses) zs.push_back(w.z);
  return {measure_on_p(P), uniform_measure(zs)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadic sparse-domination counterexample toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", opt.out, "write output to file instead of stdout");

  long m = 4, k = 1, ell = 1, j_level = 4, res = 6;
  std::string mu_path, nu_path, fn_path, coll_path, point_str, rect_str, eta_str = "1/4",
              phi_str = "loglog:1/4", sigma_src = "from-z", kind = "11", lambda_str = "1",
              configs_path;
  std::size_t budget = 16, pool_cap = 128;

  auto* cp = app.add_subcommand("construct-p", "build the separated point family");
  cp->add_option("-m,--m", m)->required();

  auto* cz = app.add_subcommand("construct-z", "build the witness family");
  cz->add_option("-m,--m", m)->required();
  cz->add_option("-k,--k", k)->required();
  cz->add_option("--ell", ell)->capture_default_str();

  auto* vf = app.add_subcommand("verify", "run the construction verifiers");
  vf->add_option("-m,--m", m)->required();
  vf->add_option("-k,--k", k, "also verify the witness family (0 = skip)")->capture_default_str();
  vf->add_option("--ell", ell)->capture_default_str();

  auto* me = app.add_subcommand("ms-eval", "evaluate the strong maximal function");
  me->add_option("--measure", mu_path, "measure JSON file");
  me->add_option("--function", fn_path, "simple-function JSON file");
  me->add_option("--point", point_str, "evaluation point 'num/2^e,num/2^e'")->required();

  auto* pg = app.add_subcommand("pairing", "<M_S(mu), nu>");
  pg->add_option("--mu", mu_path)->required();
  pg->add_option("--nu", nu_path)->required();

  auto* hp = app.add_subcommand("haar-pairing", "martingale transform pairing");
  hp->add_option("-m,--m", m)->required();
  hp->add_option("-k,--k", k)->required();
  hp->add_option("--ell", ell)->capture_default_str();
  hp->add_option("--sigma", sigma_src, "symbol source")->check(CLI::IsMember({"from-z"}));

  auto* oz = app.add_subcommand("orlicz", "Luxemburg average over a rectangle");
  oz->add_option("--function", fn_path)->required();
  oz->add_option("--rect", rect_str, "'level:index x level:index'")->required();
  oz->add_option("--phi", phi_str)->capture_default_str();

  auto* cs = app.add_subcommand("check-sparse", "certify eta-sparsity or exhibit a violator");
  cs->add_option("--collection", coll_path)->required();
  cs->add_option("--eta", eta_str)->capture_default_str();

  auto* ms = app.add_subcommand("max-sparsity", "bracket the best sparsity constant");
  ms->add_option("--collection", coll_path)->required();

  auto* fm = app.add_subcommand("form", "evaluate a sparse form");
  fm->add_option("--kind", kind)->check(CLI::IsMember({"11", "phi"}))->capture_default_str();
  fm->add_option("--collection", coll_path)->required();
  fm->add_option("--mu", mu_path);
  fm->add_option("--nu", nu_path)->required();
  fm->add_option("--function", fn_path);
  fm->add_option("--phi", phi_str)->capture_default_str();

  auto* gr = app.add_subcommand("greedy", "greedy sparse form maximization");
  gr->add_option("-m,--m", m)->required();
  gr->add_option("-k,--k", k)->required();
  gr->add_option("--ell", ell)->capture_default_str();
  gr->add_option("--eta", eta_str)->capture_default_str();
  gr->add_option("--budget", budget)->capture_default_str();
  gr->add_option("--pool-cap", pool_cap)->capture_default_str();

  auto* tp = app.add_subcommand("tensor-project", "project a weighted 3-d family");
  tp->add_option("--collection", coll_path)->required();

  auto* pl = app.add_subcommand("pipeline", "full construction + verification run");
  pl->add_option("-m,--m", m)->required();
  pl->add_option("-k,--k", k)->required();
  pl->add_option("--ell", ell)->capture_default_str();
  pl->add_option("--eta", eta_str)->capture_default_str();
  pl->add_option("--phi", phi_str)->capture_default_str();
  pl->add_option("--budget", budget)->capture_default_str();
  pl->add_option("--pool-cap", pool_cap)->capture_default_str();

  auto* sw = app.add_subcommand("sweep", "run the pipeline over a config list");
  sw->add_option("--configs", configs_path, "JSON array of {m,k,ell,eta,phi}")->required();

  auto* st = app.add_subcommand("stairs", "maximal-function level set on a grid");
  st->add_option("--measure", mu_path, "measure JSON (required unless --omega)");
  st->add_option("--lambda", lambda_str)->capture_default_str();
  st->add_option("--res", res)->capture_default_str();
  st->add_option("-j,--omega", j_level, "emit Omega_j instead (when >= 0)")->default_val(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cp) {
      auto P = construct_p(m);
      emit(opt, pointset_to_json(P), points_to_csv(P));
    } else if (*cz) {
      auto P = construct_p(m);
      emit(opt, zset_to_json(construct_z(P, k, ell)));
    } else if (*vf) {
      auto P = construct_p(m);
      auto sep = verify_separation(P);
      bool ok = sep.violations.empty();
      Json doc{{"version", kVersion},
               {"separation_min", rat_str(sep.min_dist_sq.to_rat())},
               {"separation_ok", ok}};
      if (k > 0) {
        auto Z = construct_z(P, k, ell);
        auto zr = verify_z_properties(P, Z);
        auto tr = verify_trz(P, Z);
        doc["z_ok"] = zr.ok();
        doc["z4_constant"] = rat_str(zr.z4_constant);
        doc["z5_constant"] = rat_str(zr.z5_constant);
        doc["trz_ok"] = tr.ok(std::int64_t(Z.witnesses.size()));
        ok = ok && zr.ok() && tr.ok(std::int64_t(Z.witnesses.size()));
      }
      doc["all_pass"] = ok;
      emit(opt, doc);
      return ok ? 0 : 1;
    } else if (*me) {
      auto z = parse_point(point_str);
      Json doc{{"point", point_to_json(z)}};
      if (!fn_path.empty()) {
        Rat v = ms_eval_simple(simple_from_json(read_json(fn_path)), z);
        doc["value"] = rat_str(v);
        doc["display"] = float_str(v);
      } else {
        require(!mu_path.empty(), errc::bad_input, "need --measure or --function");
        auto v = ms_eval(measure_from_file(mu_path), z);
        doc["infinite"] = v.infinite;
        if (!v.infinite) {
          doc["value"] = rat_str(v.value);
          doc["display"] = float_str(v.value);
        }
      }
      emit(opt, doc);
    } else if (*pg) {
      auto v = pairing_ms(measure_from_file(mu_path), measure_from_file(nu_path));
      Json doc{{"infinite", v.infinite}};
      if (!v.infinite) {
        doc["value"] = rat_str(v.value);
        doc["display"] = float_str(v.value);
      }
      emit(opt, doc);
    } else if (*hp) {
      auto P = construct_p(m);
      auto Z = construct_z(P, k, ell);
      auto [muC, nuC] = construction_measures(m, k, ell);
      Rat v = martingale_pairing(build_sigma(P, Z), muC, nuC);
      bool ok = v == Rat(Int(1) << k);
      emit(opt, Json{{"value", rat_str(v)}, {"display", float_str(v)}, {"equals_2k", ok}});
      return ok ? 0 : 1;
    } else if (*oz) {
      auto f = simple_from_json(read_json(fn_path));
      auto iv = orlicz_average(f, DyadicRect::parse(rect_str), parse_phi(phi_str));
      emit(opt, interval_to_json(iv));
    } else if (*cs) {
      auto S = collection_from_json(read_json(coll_path));
      auto res2 = check_sparse(S, parse_rat(eta_str));
      if (std::holds_alternative<SparsityCertificate>(res2)) {
        emit(opt, Json{{"sparse", true},
                       {"certificate", certificate_to_json(std::get<SparsityCertificate>(res2))}});
        return 0;
      }
      emit(opt, Json{{"sparse", false},
                     {"violation", violation_to_json(std::get<HallViolation>(res2))}});
      return 1;
    } else if (*ms) {
      emit(opt, carleson_report_to_json(max_sparsity(collection_from_json(read_json(coll_path)))));
    } else if (*fm) {
      auto S = collection_from_json(read_json(coll_path));
      auto nuM = measure_from_file(nu_path);
      if (kind == "11") {
        require(!mu_path.empty(), errc::bad_input, "form --kind 11 needs --mu");
        Rat v = form_11(S, measure_from_file(mu_path), nuM);
        emit(opt, Json{{"value", rat_str(v)}, {"display", float_str(v)}});
      } else {
        require(!fn_path.empty(), errc::bad_input, "form --kind phi needs --function");
        auto iv = form_phi(S, simple_from_json(read_json(fn_path)), nuM, parse_phi(phi_str));
        emit(opt, interval_to_json(iv));
      }
    } else if (*gr) {
      auto [muC, nuC] = construction_measures(m, k, ell);
      auto pool = default_rect_pool(muC, nuC, 2 * m + 2, pool_cap);
      auto got = greedy_max_form(muC, nuC, parse_rat(eta_str), pool, budget);
      emit(opt, Json{{"form", rat_str(got.form)},
                     {"display", float_str(got.form)},
                     {"collection", collection_to_json(got.collection)},
                     {"certificate", certificate_to_json(got.certificate)}});
    } else if (*tp) {
      emit(opt, collection_to_json(tensor_project(collection_from_json(read_json(coll_path)))));
    } else if (*pl) {
      ExperimentConfig cfg;
      cfg.m = m;
      cfg.k = k;
      cfg.ell = ell;
      cfg.eta = parse_rat(eta_str);
      cfg.phi = parse_phi(phi_str);
      cfg.budget = budget;
      cfg.pool_cap = pool_cap;
      auto rep = run_pipeline(cfg);
      emit(opt, rep.doc);
      return rep.all_pass ? 0 : 1;
    } else if (*sw) {
      std::vector<ExperimentConfig> cfgs;
      for (const auto& row : read_json(configs_path)) {
        ExperimentConfig cfg;
        cfg.m = row.at("m").get<long>();
        cfg.k = row.at("k").get<long>();
        if (row.contains("ell")) cfg.ell = row.at("ell").get<long>();
        if (row.contains("eta")) cfg.eta = parse_rat(row.at("eta").get<std::string>());
        if (row.contains("phi")) cfg.phi = parse_phi(row.at("phi").get<std::string>());
        cfgs.push_back(cfg);
      }
      auto rows = sweep(cfgs);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.at("all_pass").get<bool>();
      emit(opt, rows, sweep_to_csv(rows));
      return ok ? 0 : 1;
    } else if (*st) {
      if (j_level >= 0) {
        auto om = omega_region(j_level);
        emit(opt, Json{{"j", j_level}, {"area", rat_str(om.area)}}, stairs_to_csv(om));
      } else {
        auto region =
            stairs_level_set(measure_from_file(mu_path), parse_rat(lambda_str), res);
        Json cells = Json::array();
        for (const auto& c : region.cells) cells.push_back(c.str());
        emit(opt, Json{{"area", rat_str(region.area)}, {"cells", cells}},
             stairs_to_csv(region));
      }
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
