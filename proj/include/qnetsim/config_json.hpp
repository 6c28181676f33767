#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qnetsim/error.hpp"
#include "qnetsim/simulation.hpp"

namespace qnetsim {

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* name : allowed)
      if (key == name) {
        ok = true;
        break;
      }
    if (!ok) fail(errc::validation_error, "unknown key \"" + key + "\" in " + where);
  }
}

template <class T>
void read_field(const nlohmann::json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace detail

inline DistributionKind parse_distribution_kind(const std::string& name) {
  if (name == "uniform") return DistributionKind::uniform;
  if (name == "gaussian") return DistributionKind::gaussian;
  if (name == "powerlaw") return DistributionKind::power_law;
  fail(errc::validation_error,
       "distribution variant must be uniform, gaussian or powerlaw, got \"" + name +
           "\"");
}

// Parse a JSON config. Missing keys take the defaults; unknown keys are an
// error; range violations raise validation errors via validate().
inline SimConfig parse_sim_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, e.what());
  }
  if (!doc.is_object()) fail(errc::parse_error, "config root must be a JSON object");

  detail::reject_unknown_keys(
      doc,
      {"n_nodes", "alpha", "m_connections", "distribution", "proactive_fraction",
       "proactive_interval", "seed", "degree_stride", "output_dir"},
      "config");

  SimConfig cfg;
  detail::read_field(doc, "n_nodes", cfg.n_nodes);
  detail::read_field(doc, "alpha", cfg.alpha);
  detail::read_field(doc, "m_connections", cfg.m_connections);
  detail::read_field(doc, "proactive_fraction", cfg.proactive_fraction);
  detail::read_field(doc, "proactive_interval", cfg.proactive_interval);
  detail::read_field(doc, "seed", cfg.seed);
  detail::read_field(doc, "degree_stride", cfg.degree_stride);
  detail::read_field(doc, "output_dir", cfg.output_dir);

  if (doc.contains("distribution")) {
    const nlohmann::json& dist = doc.at("distribution");
    if (!dist.is_object())
      fail(errc::parse_error, "\"distribution\" must be a JSON object");
    detail::reject_unknown_keys(dist, {"variant", "mu", "sigma", "exponent"},
                                "distribution");
    std::string variant = "uniform";
    detail::read_field(dist, "variant", variant);
    cfg.distribution.kind = parse_distribution_kind(variant);
    detail::read_field(dist, "mu", cfg.distribution.mu);
    detail::read_field(dist, "sigma", cfg.distribution.sigma);
    detail::read_field(dist, "exponent", cfg.distribution.exponent);
  }

  validate(cfg);
  return cfg;
}

inline SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sim_config(buf.str());
}

inline nlohmann::json to_json(const SimConfig& cfg) {
  return nlohmann::json{
      {"n_nodes", cfg.n_nodes},
      {"alpha", cfg.alpha},
      {"m_connections", cfg.m_connections},
      {"distribution",
       {{"variant", distribution_kind_name(cfg.distribution.kind)},
        {"mu", cfg.distribution.mu},
        {"sigma", cfg.distribution.sigma},
        {"exponent", cfg.distribution.exponent}}},
      {"proactive_fraction", cfg.proactive_fraction},
      {"proactive_interval", cfg.proactive_interval},
      {"seed", cfg.seed},
      {"degree_stride", cfg.degree_stride},
      {"output_dir", cfg.output_dir}};
}

}  // namespace qnetsim
