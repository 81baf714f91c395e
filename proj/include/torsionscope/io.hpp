#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "torsionscope/complex.hpp"
#include "torsionscope/homology.hpp"
#include "torsionscope/metric.hpp"
#include "torsionscope/obstruction.hpp"
#include "torsionscope/persistence.hpp"
#include "torsionscope/prime_guard.hpp"
#include "torsionscope/snf.hpp"

namespace torsionscope::io {

/// Insertion-ordered JSON keeps key layout deterministic across runs.
using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline void check_version(const Json& j, const char* what) {
  if (!j.is_object()) throw IoError(std::string(what) + ": expected a JSON object");
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != kFormatVersion) {
    throw IoError(std::string(what) + ": missing or unsupported format_version");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// point clouds and metrics

inline Json metric_to_json(const MetricSpec& m) {
  Json j;
  j["kind"] = metric_kind_name(m.kind());
  switch (m.kind()) {
    case MetricKind::lq: j["q"] = m.q(); break;
    case MetricKind::randers: j["b"] = m.drift(); break;
    case MetricKind::circle_geodesic: j["circumference"] = m.circumference(); break;
    case MetricKind::distance_table: j["table"] = m.table(); break;
    default: break;
  }
  return j;
}

inline MetricSpec metric_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw IoError("metric: missing kind");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "euclidean") return MetricSpec::euclidean();
    if (kind == "lq") return MetricSpec::lq(j.at("q").get<double>());
    if (kind == "randers") return MetricSpec::randers(j.at("b").get<std::vector<double>>());
    if (kind == "circle_geodesic") {
      return MetricSpec::circle_geodesic(j.at("circumference").get<double>());
    }
    if (kind == "rp2_quotient") return MetricSpec::rp2_quotient();
    if (kind == "klein_quotient") return MetricSpec::klein_quotient();
    if (kind == "distance_table") {
      return MetricSpec::distance_table(
          j.at("table").get<std::vector<std::vector<double>>>());
    }
  } catch (const Json::exception& e) {
    throw IoError(std::string("metric: ") + e.what());
  }
  throw IoError("metric: unknown kind '" + kind + "'");
}

inline Json cloud_to_json(const PointCloud& cloud) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["points"] = cloud.points();
  j["metric"] = metric_to_json(cloud.metric());
  return j;
}

inline PointCloud cloud_from_json(const Json& j) {
  // a bare JSON matrix is accepted as a distance table over abstract indices
  if (j.is_array()) {
    try {
      return PointCloud({}, MetricSpec::distance_table(
                                j.get<std::vector<std::vector<double>>>()));
    } catch (const Json::exception& e) {
      throw IoError(std::string("distance table: ") + e.what());
    }
  }
  detail::check_version(j, "point cloud");
  try {
    auto metric = metric_from_json(j.at("metric"));
    auto points = j.contains("points")
                      ? j.at("points").get<std::vector<std::vector<double>>>()
                      : std::vector<std::vector<double>>{};
    return PointCloud(std::move(points), std::move(metric));
  } catch (const Json::exception& e) {
    throw IoError(std::string("point cloud: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// complexes and filtrations

inline Json complex_to_json(const SimplicialComplex& complex) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["vertex_count"] = complex.vertex_count();
  j["maximal_simplices"] = complex.maximal_simplices();
  if (complex.dim_cap()) j["dim_cap"] = *complex.dim_cap();
  return j;
}

inline SimplicialComplex complex_from_json(const Json& j) {
  detail::check_version(j, "complex");
  try {
    auto maximal = j.at("maximal_simplices").get<std::vector<Simplex>>();
    auto out = SimplicialComplex::close_under_faces(maximal, j.at("vertex_count").get<int>());
    if (j.contains("dim_cap")) out.set_dim_cap(j["dim_cap"].get<int>());
    return out;
  } catch (const Json::exception& e) {
    throw IoError(std::string("complex: ") + e.what());
  }
}

inline Json filtration_to_json(const Filtration& f) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["vertex_count"] = f.complex().vertex_count();
  j["flavor"] = flavor_name(f.flavor());
  j["scales"] = f.scales();
  if (f.complex().dim_cap()) j["dim_cap"] = *f.complex().dim_cap();
  Json births = Json::array();
  for (int k = 0; k <= f.complex().dimension(); ++k) {
    const auto& simps = f.complex().simplices(k);
    for (std::size_t i = 0; i < simps.size(); ++i) {
      Json entry = Json::array();
      for (int v : simps[i]) entry.push_back(v);
      entry.push_back(f.birth_at(k, i));
      births.push_back(std::move(entry));
    }
  }
  j["births"] = births;
  return j;
}

inline Filtration filtration_from_json(const Json& j) {
  detail::check_version(j, "filtration");
  try {
    std::map<Simplex, double> births;
    std::vector<Simplex> simplices;
    for (const auto& entry : j.at("births")) {
      if (!entry.is_array() || entry.size() < 2) {
        throw IoError("filtration: malformed birth entry");
      }
      Simplex s;
      for (std::size_t i = 0; i + 1 < entry.size(); ++i) s.push_back(entry[i].get<int>());
      std::sort(s.begin(), s.end());
      births[s] = entry.back().get<double>();
      simplices.push_back(std::move(s));
    }
    auto complex = SimplicialComplex::close_under_faces(simplices,
                                                        j.at("vertex_count").get<int>());
    if (j.contains("dim_cap")) complex.set_dim_cap(j["dim_cap"].get<int>());
    Flavor flavor = Flavor::generic;
    if (j.contains("flavor")) {
      const std::string name = j["flavor"].get<std::string>();
      if (name == "rips") flavor = Flavor::rips;
      else if (name == "cech") flavor = Flavor::cech;
      else if (name != "generic") throw IoError("filtration: unknown flavor");
    }
    return Filtration::from_births(std::move(complex), births,
                                   j.at("scales").get<std::vector<double>>(), flavor);
  } catch (const Json::exception& e) {
    throw IoError(std::string("filtration: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// integer matrices (decimal-string entries for arbitrary precision)

inline Json matrix_to_json(const IntegerMatrix& a) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  Json triplets = Json::array();
  for (const auto& [rc, v] : a.entries()) {
    triplets.push_back(Json::array({rc.first, rc.second, v.str()}));
  }
  j["triplets"] = triplets;
  return j;
}

inline IntegerMatrix matrix_from_json(const Json& j) {
  detail::check_version(j, "matrix");
  try {
    IntegerMatrix a(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& t : j.at("triplets")) {
      if (!t.is_array() || t.size() != 3) throw IoError("matrix: malformed triplet");
      Int v = t[2].is_string() ? Int(t[2].get<std::string>())
                               : Int(t[2].get<long long>());
      a.set(t[0].get<int>(), t[1].get<int>(), std::move(v));
    }
    return a;
  } catch (const Json::exception& e) {
    throw IoError(std::string("matrix: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw IoError(std::string("matrix: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// analysis reports

inline Json homology_to_json(int k, const HomologyGroup& h) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["k"] = k;
  j["betti"] = h.betti;
  Json torsion = Json::array();
  for (const auto& t : h.torsion) torsion.push_back(t.str());
  j["torsion"] = torsion;
  return j;
}

inline Json snf_to_json(const SnfResult& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  Json divisors = Json::array();
  for (const auto& d : r.divisors) divisors.push_back(d.str());
  j["divisors"] = divisors;
  j["rank"] = r.rank;
  if (r.U) j["U"] = matrix_to_json(*r.U);
  if (r.V) j["V"] = matrix_to_json(*r.V);
  return j;
}

inline Json prime_report_to_json(const PrimeReport& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["aggregate"] = r.aggregate;
  Json stages = Json::array();
  for (const auto& e : r.per_stage) {
    Json s;
    s["scale"] = e.scale;
    s["k"] = e.k;
    s["primes"] = e.primes;
    stages.push_back(std::move(s));
  }
  j["per_stage"] = stages;
  return j;
}

inline Json certificate_to_json(const GoodPrimeCertificate& c) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["prime"] = c.prime;
  j["pass"] = c.pass;
  Json checks = Json::array();
  for (const auto& chk : c.checks) {
    Json e;
    e["scale"] = chk.scale;
    e["k"] = chk.k;
    e["zp_dim"] = chk.zp_dim;
    e["betti"] = chk.betti;
    e["pass"] = chk.pass;
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;
  return j;
}

inline Json barcode_to_json(const Barcode& b, bool verbose = false) {
  Json j;
  j["format_version"] = kFormatVersion;
  auto interval_json = [](const Interval& iv) {
    Json e;
    e["k"] = iv.k;
    e["birth"] = iv.birth;
    if (iv.finite()) {
      e["death"] = iv.death;
    } else {
      e["death"] = "inf";
    }
    return e;
  };
  Json intervals = Json::array();
  for (const auto& iv : b.intervals) intervals.push_back(interval_json(iv));
  j["intervals"] = intervals;
  if (verbose) {
    Json zero = Json::array();
    for (const auto& iv : b.zero_length) zero.push_back(interval_json(iv));
    j["zero_length"] = zero;
  }
  return j;
}

inline Barcode barcode_from_json(const Json& j) {
  detail::check_version(j, "barcode");
  try {
    Barcode b;
    for (const auto& e : j.at("intervals")) {
      Interval iv;
      iv.k = e.at("k").get<int>();
      iv.birth = e.at("birth").get<double>();
      iv.death = e.at("death").is_string() ? infinite_death() : e.at("death").get<double>();
      b.intervals.push_back(iv);
    }
    if (j.contains("zero_length")) {
      for (const auto& e : j["zero_length"]) {
        Interval iv;
        iv.k = e.at("k").get<int>();
        iv.birth = e.at("birth").get<double>();
        iv.death = e.at("death").is_string() ? infinite_death() : e.at("death").get<double>();
        b.zero_length.push_back(iv);
      }
    }
    std::sort(b.intervals.begin(), b.intervals.end());
    std::sort(b.zero_length.begin(), b.zero_length.end());
    return b;
  } catch (const Json::exception& e) {
    throw IoError(std::string("barcode: ") + e.what());
  }
}

/// Plain-text rendering, one interval per line: "k birth death".
inline std::string barcode_to_text(const Barcode& b) {
  std::ostringstream os;
  for (const auto& iv : b.intervals) {
    os << iv.k << ' ' << Json(iv.birth).dump() << ' ';
    if (iv.finite()) {
      os << Json(iv.death).dump();
    } else {
      os << "inf";
    }
    os << '\n';
  }
  return os.str();
}

inline Json witnesses_to_json(const std::vector<EmptySimplexWitness>& ws) {
  Json arr = Json::array();
  for (const auto& w : ws) arr.push_back(w.vertices);
  return arr;
}

inline Json representability_to_json(const RepresentabilityReport& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["verdict"] = rips_verdict_name(r.verdict);
  j["witnesses"] = witnesses_to_json(r.witnesses);
  Json dims = Json::array();
  for (const auto& w : r.witnesses) dims.push_back(w.k);
  j["dimensions"] = dims;
  return j;
}

inline Json capture_to_json(const CaptureReport& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["verdict"] = r.obstructed ? "NOT-CECH" : "INCONCLUSIVE";
  j["ambient_dim"] = r.ambient_dim;
  j["witnesses"] = witnesses_to_json(r.witnesses);
  Json dims = Json::array();
  for (const auto& w : r.witnesses) dims.push_back(w.k);
  j["dimensions"] = dims;
  return j;
}

inline Json vanishing_to_json(const VanishingReport& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["pass"] = r.pass;
  j["ambient_dim"] = r.ambient_dim;
  j["max_k"] = r.max_k;
  if (r.warning_not_cech) {
    j["warning"] = "filtration flavor is not cech; the vanishing corollary does not apply";
  }
  Json v = Json::array();
  for (const auto& viol : r.violations) {
    Json e;
    e["scale"] = viol.scale;
    e["k"] = viol.k;
    e["betti"] = viol.betti;
    v.push_back(std::move(e));
  }
  j["violations"] = v;
  return j;
}

inline Json axiom_report_to_json(const NormAxiomReport& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["samples"] = r.samples;
  j["pass"] = r.clean();
  Json v = Json::array();
  for (const auto& viol : r.violations) {
    Json e;
    e["check"] = viol.check;
    e["detail"] = viol.detail;
    v.push_back(std::move(e));
  }
  j["violations"] = v;
  return j;
}

inline Json diff_to_json(const BarcodeDiff& d) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["equal"] = d.empty();
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    Json x;
    x["k"] = e.interval.k;
    x["birth"] = e.interval.birth;
    if (e.interval.finite()) {
      x["death"] = e.interval.death;
    } else {
      x["death"] = "inf";
    }
    x["count_a"] = e.count_a;
    x["count_b"] = e.count_b;
    entries.push_back(std::move(x));
  }
  j["entries"] = entries;
  return j;
}

// ---------------------------------------------------------------------------
// files

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << dump(j);
  if (!out) throw IoError("write failed: " + path);
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw IoError("parse error in " + path + ": " + e.what());
  }
}

}  // namespace torsionscope::io
