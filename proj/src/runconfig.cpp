#include "swlat/runconfig.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "swlat/snapshot.hpp"

namespace swlat {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw std::runtime_error("run config: unknown key '" + item.key() + "' in " + where);
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(std::string("run config: invalid JSON: ") + err.what());
  }

  RunConfig cfg;
  check_keys(j, "top level", {"lattice", "bundle", "seed", "out_dir"});

  if (j.contains("lattice")) {
    const json& l = j["lattice"];
    check_keys(l, "lattice", {"n", "h"});
    if (l.contains("n")) cfg.n = l["n"].get<int>();
    if (l.contains("h")) cfg.h = l["h"].get<double>();
  }
  if (j.contains("bundle")) {
    const json& b = j["bundle"];
    check_keys(b, "bundle", {"flux", "kg", "kg_file"});
    if (b.contains("flux")) {
      if (!b["flux"].is_array() || b["flux"].size() != 6)
        throw std::runtime_error("run config: bundle.flux must be an array of 6 integers");
      for (int i = 0; i < 6; ++i) cfg.flux[i] = b["flux"][i].get<int>();
    }
    if (b.contains("kg") && b.contains("kg_file"))
      throw std::runtime_error("run config: bundle.kg and bundle.kg_file are mutually exclusive");
    if (b.contains("kg")) cfg.kg_constant = b["kg"].get<double>();
    if (b.contains("kg_file")) cfg.kg_file = b["kg_file"].get<std::string>();
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("run config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_run_config(ss.str());
}

BundleData make_bundle(const Lattice& lat, const RunConfig& cfg) {
  if (cfg.kg_file) {
    Cochain kg = load_cochain0(lat, *cfg.kg_file);
    return BundleData(lat, cfg.flux, std::move(kg));
  }
  return BundleData::constant_kg(lat, cfg.flux, cfg.kg_constant);
}

Configuration make_zero_configuration(const Lattice& lat, const RunConfig& cfg) {
  return Configuration(Cochain(lat, 1), SpinorField(lat, Chirality::plus), make_bundle(lat, cfg));
}

}  // namespace swlat
