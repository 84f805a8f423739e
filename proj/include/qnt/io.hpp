// SPDX-License-Identifier: Apache-2.0
//
// File formats:
//   * measurement databases -- JSON-lines, one record per shot:
//       {"circuit":"multicast_z","n":4,"basis":"Z",
//        "outcome":{"bits":"010"},"seed":7,"index":0}
//       {"circuit":"multicast_ghz","n":4,"basis":"GHZ",
//        "outcome":{"b":0,"s":"101"},"seed":7,"index":1}
//     Bit strings read left to right as leaf 1 .. leaf n-1; s is relative
//     to the root qubit, and the GHZ basis state labeled (b, s) is
//     (|0,s> + (-1)^b |1,~s>)/sqrt(2).
//   * star configs -- JSON {n, links:[{kind, ...params}]} with kinds
//     bit_flip {p}, depolarizing {theta}, general_pauli {probs:[4]}.
//   * estimates -- JSON {candidates:[[...]], degenerate:bool, flags:[...]}.
//   * experiment configs -- flat JSON keys mirroring ExperimentConfig.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnt/database.hpp"
#include "qnt/distribution.hpp"
#include "qnt/error.hpp"
#include "qnt/estimators.hpp"
#include "qnt/experiments.hpp"
#include "qnt/format.hpp"
#include "qnt/network.hpp"
#include "qnt/version.hpp"

namespace qnt {

using json = nlohmann::ordered_json;

// --- bit-string helpers ----------------------------------------------------

inline std::string bits_to_string(std::uint32_t value, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i)
    if ((value >> (width - 1 - i)) & 1) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

inline std::uint32_t string_to_bits(const std::string& text, int width) {
  if (static_cast<int>(text.size()) != width)
    fail(Errc::invalid_argument,
         "bit string '" + text + "' does not have length " +
             std::to_string(width));
  std::uint32_t value = 0;
  for (char c : text) {
    if (c != '0' && c != '1')
      fail(Errc::invalid_argument, "bit string contains '" +
                                       std::string(1, c) + "'");
    value = (value << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return value;
}

// --- generic JSON plumbing ---------------------------------------------------

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::invalid_argument, what + ": " + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_argument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_argument, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(Errc::invalid_argument, "short write to " + path);
}

// --- measurement databases ---------------------------------------------------

inline json record_to_json(const MeasurementRecord& record, std::uint64_t seed,
                           std::uint64_t index) {
  const int m = record.n - 1;
  json j;
  j["circuit"] =
      record.variant == Variant::GHZ ? "multicast_ghz" : "multicast_z";
  j["n"] = record.n;
  j["basis"] = variant_name(record.variant);
  if (record.variant == Variant::GHZ) {
    const auto [b, s] = ghz_split(record.outcome, m);
    j["outcome"] = json{{"b", b}, {"s", bits_to_string(s, m)}};
  } else {
    j["outcome"] = json{{"bits", bits_to_string(record.outcome, m)}};
  }
  j["seed"] = seed;
  j["index"] = index;
  return j;
}

inline std::string database_to_jsonl(const MeasurementDatabase& db) {
  std::string out;
  for (std::size_t i = 0; i < db.records.size(); ++i) {
    out += record_to_json(db.records[i], db.seed, i).dump();
    out += '\n';
  }
  return out;
}

inline void write_database(const MeasurementDatabase& db,
                           const std::string& path) {
  write_text_file(path, database_to_jsonl(db));
}

inline MeasurementRecord record_from_json(const json& j) {
  try {
    MeasurementRecord record;
    const std::string circuit = j.at("circuit").get<std::string>();
    const std::string basis = j.at("basis").get<std::string>();
    record.n = j.at("n").get<int>();
    if (record.n < 3 || record.n > 31)
      fail(Errc::invalid_argument, "record n out of range");
    const int m = record.n - 1;
    if (circuit == "multicast_z" && basis == "Z") {
      record.variant = Variant::Z;
      record.outcome =
          string_to_bits(j.at("outcome").at("bits").get<std::string>(), m);
    } else if (circuit == "multicast_ghz" && basis == "GHZ") {
      record.variant = Variant::GHZ;
      const int b = j.at("outcome").at("b").get<int>();
      if (b != 0 && b != 1) fail(Errc::invalid_argument, "b must be 0 or 1");
      const std::uint32_t s =
          string_to_bits(j.at("outcome").at("s").get<std::string>(), m);
      record.outcome = (static_cast<std::uint32_t>(b) << m) | s;
    } else {
      fail(Errc::invalid_argument,
           "unknown circuit/basis pair: " + circuit + "/" + basis);
    }
    return record;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::invalid_argument, std::string("bad record: ") + e.what());
  }
}

inline MeasurementDatabase read_database(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_argument, "cannot open " + path);
  MeasurementDatabase db;
  std::string line;
  std::size_t line_no = 0;
  bool have_seed = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j =
        parse_json_text(line, path + ":" + std::to_string(line_no));
    db.records.push_back(record_from_json(j));
    if (!have_seed && j.contains("seed")) {
      db.seed = j["seed"].get<std::uint64_t>();
      have_seed = true;
    }
  }
  return db;
}

// --- star configs ------------------------------------------------------------

inline LinkChannel link_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bit_flip") return LinkChannel::bit_flip(j.at("p").get<double>());
    if (kind == "depolarizing")
      return LinkChannel::depolarizing(j.at("theta").get<double>());
    if (kind == "general_pauli") {
      const auto probs = j.at("probs").get<std::vector<double>>();
      if (probs.size() != 4)
        fail(Errc::invalid_argument, "general_pauli probs needs 4 entries");
      return LinkChannel::general_pauli(
          PauliProbs{probs[0], probs[1], probs[2], probs[3]});
    }
    fail(Errc::invalid_argument, "unknown link kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::invalid_argument, std::string("bad link config: ") + e.what());
  }
}

inline StarNetwork star_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const json& links_json = j.at("links");
    if (!links_json.is_array() || static_cast<int>(links_json.size()) != n)
      fail(Errc::invalid_argument,
           "star config: links must be an array of exactly n entries");
    std::vector<LinkChannel> links;
    links.reserve(links_json.size());
    for (const json& lj : links_json) links.push_back(link_from_json(lj));
    return StarNetwork(std::move(links));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::invalid_argument, std::string("bad star config: ") + e.what());
  }
}

inline StarNetwork read_star_config(const std::string& path) {
  return star_from_json(read_json_file(path));
}

inline json star_to_json(const StarNetwork& star) {
  json links = json::array();
  for (const LinkChannel& link : star.links()) {
    json lj;
    lj["kind"] = channel_kind_name(link.kind());
    switch (link.kind()) {
      case ChannelKind::BitFlip: lj["p"] = link.parameter(); break;
      case ChannelKind::Depolarizing: lj["theta"] = link.parameter(); break;
      case ChannelKind::GeneralPauli: {
        const PauliProbs& w = link.probs();
        lj["probs"] = {w.p_I, w.p_X, w.p_Y, w.p_Z};
        break;
      }
    }
    links.push_back(std::move(lj));
  }
  return json{{"n", star.n()}, {"links", std::move(links)}};
}

// --- estimates ---------------------------------------------------------------

inline json estimate_to_json(const EstimateSet& set) {
  json j;
  j["candidates"] = set.candidates;
  j["degenerate"] = set.degenerate;
  j["flags"] = set.flags;
  return j;
}

// --- experiment configs --------------------------------------------------------

inline ExperimentConfig experiment_config_from_json(const json& j,
                                                    std::uint64_t default_seed) {
  try {
    ExperimentConfig cfg;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "qcrb_sweep")
      cfg.kind = ExperimentKind::QcrbSweep;
    else if (kind == "mse_curve")
      cfg.kind = ExperimentKind::MseCurve;
    else
      fail(Errc::invalid_argument, "unknown experiment kind '" + kind + "'");

    if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<int>>();
    if (j.contains("variants")) {
      cfg.variants.clear();
      for (const json& vj : j["variants"]) {
        const std::string v = vj.get<std::string>();
        if (v == "Z")
          cfg.variants.push_back(Variant::Z);
        else if (v == "GHZ")
          cfg.variants.push_back(Variant::GHZ);
        else
          fail(Errc::invalid_argument, "unknown variant '" + v + "'");
      }
    }
    if (cfg.kind == ExperimentKind::QcrbSweep)
      cfg.theta_grid = j.contains("theta_grid")
                           ? j["theta_grid"].get<std::vector<double>>()
                           : default_theta_grid();
    if (j.contains("theta_star")) cfg.theta_star = j["theta_star"].get<double>();
    if (cfg.kind == ExperimentKind::MseCurve)
      cfg.sample_points =
          j.contains("sample_points")
              ? j["sample_points"].get<std::vector<std::uint64_t>>()
              : default_sample_points();
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
    cfg.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : default_seed;
    if (j.contains("output")) cfg.output_path = j["output"].get<std::string>();
    if (j.contains("include_singular"))
      cfg.include_singular = j["include_singular"].get<bool>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::invalid_argument,
         std::string("bad experiment config: ") + e.what());
  }
}

inline ExperimentConfig read_experiment_config(const std::string& path,
                                               std::uint64_t default_seed) {
  return experiment_config_from_json(read_json_file(path), default_seed);
}

inline json experiment_config_echo(const ExperimentConfig& cfg) {
  json j;
  j["kind"] =
      cfg.kind == ExperimentKind::QcrbSweep ? "qcrb_sweep" : "mse_curve";
  j["sizes"] = cfg.sizes;
  json variants = json::array();
  for (Variant v : cfg.variants) variants.push_back(variant_name(v));
  j["variants"] = std::move(variants);
  if (cfg.kind == ExperimentKind::QcrbSweep) {
    j["theta_grid"] = cfg.theta_grid;
    j["include_singular"] = cfg.include_singular;
  } else {
    j["theta_star"] = cfg.theta_star;
    j["sample_points"] = cfg.sample_points;
    j["trials"] = cfg.trials;
  }
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j;
}

// Sidecar metadata written next to each experiment CSV.  Not covered by the
// byte-identity guarantee (it records wall time).
inline json experiment_metadata(const ExperimentConfig& cfg, std::size_t rows,
                                double wall_seconds) {
  json j;
  j["tool"] = "qnt-star";
  j["version"] = kVersion;
  j["config"] = experiment_config_echo(cfg);
  j["rows"] = rows;
  j["wall_time_s"] = wall_seconds;
  return j;
}

// --- exact-distribution pretty printer -----------------------------------------

inline std::string distribution_table_string(const OutcomeDistribution& dist) {
  const int m = dist.n - 1;
  std::string out = "# circuit ";
  out += dist.variant == Variant::GHZ ? "multicast_ghz" : "multicast_z";
  out += " n=" + std::to_string(dist.n) + "\n";
  out += dist.variant == Variant::GHZ ? "# b s probability\n"
                                      : "# bits probability\n";
  for (std::size_t idx = 0; idx < dist.p.size(); ++idx) {
    if (dist.variant == Variant::GHZ) {
      const auto [b, s] = ghz_split(static_cast<std::uint32_t>(idx), m);
      out += std::to_string(b) + " " + bits_to_string(s, m);
    } else {
      out += bits_to_string(static_cast<std::uint32_t>(idx), m);
    }
    out += ' ';
    out += format_double(dist.p[idx]);
    out += '\n';
  }
  return out;
}

}  // namespace qnt
