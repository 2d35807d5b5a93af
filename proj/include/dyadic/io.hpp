#pragma once

#include <string>

#include "dyadic/forms.hpp"
#include "dyadic/haar.hpp"
#include "json.hpp"

namespace dyadic {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::json;

inline std::string float_str(const Rat& r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", rat_double(r));
  return buf;
}

// ---- points, measures, functions ----

inline Json point_to_json(const DyadicPoint& p) {
  Json a = Json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) a.push_back(p[i].str());
  return a;
}

inline DyadicPoint point_from_json(const Json& j) {
  std::vector<DyadicCoord> coords;
  for (const auto& c : j) coords.push_back(DyadicCoord::parse(c.get<std::string>()));
  return DyadicPoint(std::move(coords));
}

inline Json measure_to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (std::size_t i = 0; i < mu.size(); ++i)
    atoms.push_back({{"point", point_to_json(mu.points[i])}, {"weight", rat_str(mu.weights[i])}});
  return Json{{"atoms", atoms}};
}

inline AtomicMeasure measure_from_json(const Json& j) {
  std::vector<DyadicPoint> pts;
  std::vector<Rat> ws;
  for (const auto& a : j.at("atoms")) {
    pts.push_back(point_from_json(a.at("point")));
    ws.push_back(parse_rat(a.at("weight").get<std::string>()));
  }
  return make_atomic(std::move(pts), std::move(ws));
}

inline Json simple_to_json(const SimpleFunction& f) {
  Json pieces = Json::array();
  for (std::size_t i = 0; i < f.pieces.size(); ++i)
    pieces.push_back({{"rect", f.pieces[i].str()}, {"value", rat_str(f.values[i])}});
  return Json{{"pieces", pieces}};
}

inline SimpleFunction simple_from_json(const Json& j) {
  std::vector<DyadicRect> pieces;
  std::vector<Rat> values;
  for (const auto& p : j.at("pieces")) {
    pieces.push_back(DyadicRect::parse(p.at("rect").get<std::string>()));
    values.push_back(parse_rat(p.at("value").get<std::string>()));
  }
  return make_simple(std::move(pieces), std::move(values));
}

// ---- constructions ----

inline Json pointset_to_json(const PointSetP& P) {
  Json pts = Json::array();
  for (std::int64_t r = 0; r < P.size(); ++r) pts.push_back(point_to_json(P.point(r)));
  return Json{{"m", P.m}, {"count", P.size()}, {"points", pts}};
}

inline Json zset_to_json(const ZSet& Z) {
  Json ws = Json::array();
  for (const auto& w : Z.witnesses)
    ws.push_back({{"source", w.source.rect.str()},
                  {"anchor", w.anchor},
                  {"r_star", w.r_star.str()},
                  {"z", point_to_json(w.z)},
                  {"t_rect", w.t_rect.str()}});
  return Json{{"m", Z.m}, {"k", Z.k}, {"ell", Z.ell}, {"count", Z.witnesses.size()},
              {"witnesses", ws}};
}

// ---- collections and certificates ----

inline Json collection_to_json(const RectCollection& S) {
  Json rects = Json::array();
  for (const auto& R : S.rects) rects.push_back(R.str());
  Json j{{"rects", rects}};
  if (!S.weights.empty()) {
    Json w = Json::object();
    for (const auto& [R, a] : S.weights) w[R.str()] = rat_str(a);
    j["weights"] = w;
  }
  return j;
}

inline RectCollection collection_from_json(const Json& j) {
  std::vector<DyadicRect> rects;
  for (const auto& r : j.at("rects")) rects.push_back(DyadicRect::parse(r.get<std::string>()));
  auto S = make_collection(std::move(rects));
  if (j.contains("weights"))
    for (const auto& [key, val] : j.at("weights").items())
      S.weights[DyadicRect::parse(key)] = parse_rat(val.get<std::string>());
  return S;
}

inline Json box_to_json(const Box& b) {
  Json lo = Json::array(), hi = Json::array();
  for (const auto& x : b.lo) lo.push_back(rat_str(x));
  for (const auto& x : b.hi) hi.push_back(rat_str(x));
  return Json{{"lo", lo}, {"hi", hi}};
}

inline Json certificate_to_json(const SparsityCertificate& cert) {
  Json assign = Json::array();
  for (const auto& [R, cells] : cert.assignment) {
    Json cj = Json::array();
    for (const auto& [cell, frac] : cells)
      cj.push_back({{"cell", box_to_json(cell)}, {"fraction", rat_str(frac)}});
    assign.push_back({{"rect", R.str()}, {"cells", cj}});
  }
  return Json{{"eta", rat_str(cert.eta)}, {"assignment", assign}};
}

inline Json violation_to_json(const HallViolation& v) {
  Json fam = Json::array();
  for (const auto& R : v.family) fam.push_back(R.str());
  return Json{{"eta", rat_str(v.eta)},
              {"family", fam},
              {"total_area", rat_str(v.total_area)},
              {"union_area", rat_str(v.union_area)}};
}

inline Json carleson_report_to_json(const CarlesonReport& rep) {
  Json wit = Json::array();
  for (const auto& R : rep.witness) wit.push_back(R.str());
  return Json{{"eta_lo", rat_str(rep.eta_lo)},     {"eta_hi", rat_str(rep.eta_hi)},
              {"lambda_lo", rat_str(rep.lambda_lo)}, {"lambda_hi", rat_str(rep.lambda_hi)},
              {"exact", rep.exact},                {"witness", wit}};
}

inline Json interval_to_json(const RatInterval& iv) {
  return Json{{"lo", rat_str(iv.lo)}, {"hi", rat_str(iv.hi)}, {"exact", iv.is_exact()}};
}

// ---- CSV ----

inline std::string stairs_to_csv(const StairsRegion& region) {
  std::string out = "rect,area\n";
  for (const auto& c : region.cells) out += c.str() + "," + rat_str(c.area().to_rat()) + "\n";
  out += "total," + rat_str(region.area) + "\n";
  return out;
}

inline std::string points_to_csv(const PointSetP& P) {
  std::string out = "x,y\n";
  for (std::int64_t r = 0; r < P.size(); ++r) {
    auto p = P.point(r);
    out += p[0].str() + "," + p[1].str() + "\n";
  }
  return out;
}

}  // namespace dyadic
