#pragma once

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trapsim/conditions.hpp"
#include "trapsim/correlation.hpp"
#include "trapsim/landscape.hpp"
#include "trapsim/prm.hpp"

// File formats.
//
// Landscapes and PRM marks serialize to JSON with values as %.17g decimal
// strings (exact double round-trip); above kInlineValueLimit entries the
// values move to a little-endian float64 side file referenced from the
// JSON. Condition reports serialize to a versioned JSON schema plus a
// plain-text summary. Correlation sweeps emit CSV with the fixed column
// set (n, alpha, a, scale_class, b_n, t, rho, mean, stderr, M,
// landscape_seed).

namespace trapsim {

inline constexpr std::size_t kInlineValueLimit = 100000;
inline constexpr int kSchemaVersion = 1;

namespace io_detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline nlohmann::json values_to_json(const std::vector<double>& values) {
  nlohmann::json arr = nlohmann::json::array();
  for (double v : values) arr.push_back(format_double(v));
  return arr;
}

inline std::vector<double> values_from_json(const nlohmann::json& arr) {
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& s : arr) out.push_back(std::stod(s.get<std::string>()));
  return out;
}

inline void write_binary_values(const std::string& path,
                                const std::vector<double>& values) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.write(reinterpret_cast<const char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
}

inline std::vector<double> read_binary_values(const std::string& path,
                                              std::size_t count) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::vector<double> out(count);
  f.read(reinterpret_cast<char*>(out.data()),
         static_cast<std::streamsize>(count * sizeof(double)));
  if (!f) throw std::runtime_error("short read: " + path);
  return out;
}

inline nlohmann::json seed_to_json(const SeedRecord& s) {
  return {{"master", s.master}, {"stream", s.stream}, {"replica", s.replica}};
}

inline SeedRecord seed_from_json(const nlohmann::json& j) {
  return SeedRecord{j.at("master").get<std::uint64_t>(),
                    j.at("stream").get<std::uint64_t>(),
                    j.at("replica").get<std::uint64_t>()};
}

inline nlohmann::json tail_to_json(const TailSpec& t) {
  nlohmann::json j;
  switch (t.kind()) {
    case TailKind::pareto:
      j["kind"] = "pareto";
      j["alpha"] = t.alpha();
      j["x_min"] = t.x_min();
      break;
    case TailKind::degenerate:
      j["kind"] = "degenerate";
      j["value"] = t.x_min();
      break;
    case TailKind::quantile_table:
      j["kind"] = "quantile_table";
      j["alpha"] = t.alpha();
      break;
  }
  return j;
}

inline TailSpec tail_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pareto")
    return TailSpec::pareto(j.at("alpha").get<double>(),
                            j.at("x_min").get<double>());
  if (kind == "degenerate")
    return TailSpec::degenerate(j.at("value").get<double>());
  throw std::runtime_error("tail kind not round-trippable: " + kind);
}

}  // namespace io_detail

// Writes the JSON document (and the binary side file when values are
// large) and returns the JSON text.
inline std::string write_landscape(const Landscape& scape,
                                   const std::string& json_path) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "landscape";
  j["n"] = scape.n;
  j["tail"] = io_detail::tail_to_json(scape.tail);
  j["seed"] = io_detail::seed_to_json(scape.seed);
  if (scape.tau.size() > kInlineValueLimit) {
    const std::string side = json_path + ".values.f64le";
    io_detail::write_binary_values(side, scape.tau);
    j["values_file"] = side.substr(side.find_last_of('/') + 1);
    j["values_count"] = scape.tau.size();
    j["values_format"] = "f64-le";
  } else {
    j["values"] = io_detail::values_to_json(scape.tau);
  }
  std::ofstream f(json_path);
  if (!f) throw std::runtime_error("cannot write " + json_path);
  const std::string text = j.dump(2);
  f << text << '\n';
  return text;
}

inline Landscape read_landscape(const std::string& json_path) {
  std::ifstream f(json_path);
  if (!f) throw std::runtime_error("cannot read " + json_path);
  nlohmann::json j = nlohmann::json::parse(f);
  Landscape scape;
  scape.n = j.at("n").get<std::size_t>();
  scape.tail = io_detail::tail_from_json(j.at("tail"));
  scape.seed = io_detail::seed_from_json(j.at("seed"));
  if (j.contains("values_file")) {
    const std::string dir =
        json_path.find('/') == std::string::npos
            ? ""
            : json_path.substr(0, json_path.find_last_of('/') + 1);
    scape.tau = io_detail::read_binary_values(
        dir + j.at("values_file").get<std::string>(),
        j.at("values_count").get<std::size_t>());
  } else {
    scape.tau = io_detail::values_from_json(j.at("values"));
  }
  if (scape.tau.size() != scape.n)
    throw std::runtime_error("landscape value count mismatch");
  return scape;
}

inline std::string write_prm_points(const PRMPoints& prm,
                                    const std::string& json_path) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "prm_points";
  j["alpha"] = prm.alpha;
  j["K"] = prm.K;
  j["tail_bound"] = prm.tail_bound;
  j["seed"] = io_detail::seed_to_json(prm.seed);
  if (prm.gamma.size() > kInlineValueLimit) {
    const std::string side = json_path + ".values.f64le";
    io_detail::write_binary_values(side, prm.gamma);
    j["values_file"] = side.substr(side.find_last_of('/') + 1);
    j["values_count"] = prm.gamma.size();
    j["values_format"] = "f64-le";
  } else {
    j["values"] = io_detail::values_to_json(prm.gamma);
  }
  std::ofstream f(json_path);
  if (!f) throw std::runtime_error("cannot write " + json_path);
  const std::string text = j.dump(2);
  f << text << '\n';
  return text;
}

inline PRMPoints read_prm_points(const std::string& json_path) {
  std::ifstream f(json_path);
  if (!f) throw std::runtime_error("cannot read " + json_path);
  nlohmann::json j = nlohmann::json::parse(f);
  PRMPoints prm;
  prm.alpha = j.at("alpha").get<double>();
  prm.K = j.at("K").get<std::size_t>();
  prm.tail_bound = j.at("tail_bound").get<double>();
  prm.seed = io_detail::seed_from_json(j.at("seed"));
  if (j.contains("values_file")) {
    const std::string dir =
        json_path.find('/') == std::string::npos
            ? ""
            : json_path.substr(0, json_path.find_last_of('/') + 1);
    prm.gamma = io_detail::read_binary_values(
        dir + j.at("values_file").get<std::string>(),
        j.at("values_count").get<std::size_t>());
  } else {
    prm.gamma = io_detail::values_from_json(j.at("values"));
  }
  return prm;
}

// ---------------------------------------------------------------------------
// Correlation CSV: shared by dynamics sweeps and limit sweeps (the latter
// use scale_class = "limit").

struct SweepRow {
  std::size_t n = 0;
  double alpha = 0.0, a = 0.0;
  std::string scale_class;
  double b_n = 0.0, t = 0.0, rho = 0.0;
  CorrelationEstimate estimate;
  std::uint64_t landscape_seed = 0;
};

inline std::string sweep_csv_header() {
  return "n,alpha,a,scale_class,b_n,t,rho,mean,stderr,M,landscape_seed";
}

inline std::string sweep_csv_row(const SweepRow& r) {
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "%zu,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%" PRIu64,
                r.n, r.alpha, r.a, r.scale_class.c_str(), r.b_n, r.t, r.rho,
                r.estimate.mean, r.estimate.stderr_, r.estimate.replicas,
                r.landscape_seed);
  return buf;
}

// ---------------------------------------------------------------------------
// Condition reports.

inline nlohmann::json report_to_json(const ConditionReport& rep) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "condition_report";
  j["condition"] = rep.condition;
  j["t_grid"] = rep.t_grid;
  j["grid"] = rep.u_grid;
  j["computed"] = rep.computed;
  j["target"] = rep.target;
  j["deviations"] = rep.deviations;
  j["sup_deviation"] = rep.sup_deviation;
  j["tol"] = rep.tol;
  j["verdict"] = rep.pass ? "pass" : "fail";
  j["verdict_applicable"] = rep.verdict_applicable;
  j["degenerate_target"] = rep.degenerate_target;
  j["bn_over_n"] = rep.bn_over_n;
  if (!rep.cross_check.empty()) j["a3_prime_cross_check"] = rep.cross_check;
  if (rep.envelope.fitted)
    j["fit"] = {{"c0", rep.envelope.c0},
                {"c1", rep.envelope.c1},
                {"c2", rep.envelope.c2}};
  return j;
}

inline std::string report_text_summary(const ConditionReport& rep) {
  std::ostringstream os;
  os << "condition " << rep.condition << ": sup deviation " << rep.sup_deviation
     << " (tol " << rep.tol << ") -> ";
  if (!rep.verdict_applicable)
    os << "reported (verdict not applicable)";
  else
    os << (rep.pass ? "PASS" : "FAIL");
  if (rep.degenerate_target) os << " [degenerate target delta_inf]";
  os << "; " << rep.u_grid.size() << " grid points";
  if (!rep.t_grid.empty()) os << " x " << rep.t_grid.size() << " t values";
  if (rep.envelope.fitted)
    os << "; envelope c0=" << rep.envelope.c0 << " c1=" << rep.envelope.c1
       << " c2=" << rep.envelope.c2;
  return os.str();
}

}  // namespace trapsim
