#include "recom/graph_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "recom/errors.hpp"
#include "recom/version.hpp"

namespace recom {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_failure, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::io_failure, "read error on " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
  out << bytes;
  if (!out) fail(ErrorCode::io_failure, "write error on " + path.string());
}

ordered_json parse_json(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  ordered_json doc = ordered_json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::parse_error, "invalid JSON in " + path.string());
  return doc;
}

std::int64_t require_int(const ordered_json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field) || !obj[field].is_number_integer())
    fail(ErrorCode::schema_mismatch, where + " needs integer field '" + field + "'");
  return obj[field].get<std::int64_t>();
}

std::string require_string(const ordered_json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field) || !obj[field].is_string())
    fail(ErrorCode::schema_mismatch, where + " needs string field '" + field + "'");
  return obj[field].get<std::string>();
}

Vote parse_vote(const ordered_json& value, const std::string& where) {
  if (value.is_number_integer()) return Vote::of(value.get<std::int64_t>());
  if (value.is_array() && value.size() == 2 && value[0].is_number_integer() &&
      value[1].is_number_integer())
    return Vote::ratio(value[0].get<std::int64_t>(), value[1].get<std::int64_t>());
  fail(ErrorCode::schema_mismatch,
       where + " must be an integer or a [numerator, denominator] pair");
}

ordered_json vote_to_json(const Vote& v) {
  if (v.is_integer()) return v.num;
  return ordered_json::array({v.num, v.den});
}

}  // namespace

const char* to_string(UnitLevel level) {
  return level == UnitLevel::block ? "block" : "precinct";
}

UnitLevel unit_level_from_string(std::string_view name) {
  if (name == "precinct") return UnitLevel::precinct;
  if (name == "block") return UnitLevel::block;
  fail(ErrorCode::schema_mismatch, "unknown unit level '" + std::string(name) + "'");
}

double default_epsilon(UnitLevel level) { return level == UnitLevel::block ? 0.01 : 0.02; }

LoadedGraph load_graph(const std::filesystem::path& path,
                       const std::vector<ContestSpec>& contest_overrides) {
  const ordered_json doc = parse_json(path);
  const std::string where = path.filename().string();
  if (require_string(doc, "format", where) != "recom-graph")
    fail(ErrorCode::schema_mismatch, where + " is not a recom-graph document");
  if (require_int(doc, "version", where) != 1)
    fail(ErrorCode::schema_mismatch, where + " has an unsupported version");

  GraphMeta meta;
  meta.unit_level = unit_level_from_string(require_string(doc, "unit_level", where));
  if (!doc.contains("contests") || !doc["contests"].is_array())
    fail(ErrorCode::schema_mismatch, where + " needs a 'contests' array");
  if (contest_overrides.empty()) {
    for (const auto& name : doc["contests"]) {
      if (!name.is_string())
        fail(ErrorCode::schema_mismatch, where + " contest names must be strings");
      meta.contests.push_back(ContestSpec::conventional(name.get<std::string>()));
    }
  } else {
    meta.contests = contest_overrides;
  }

  if (!doc.contains("nodes") || !doc["nodes"].is_array() || doc["nodes"].empty())
    fail(ErrorCode::schema_mismatch, where + " needs a nonempty 'nodes' array");
  if (!doc.contains("links") || !doc["links"].is_array())
    fail(ErrorCode::schema_mismatch, where + " needs a 'links' array");

  std::vector<NodeRecord> nodes;
  std::vector<std::string> keys;
  std::unordered_map<std::string, NodeId> by_key;
  nodes.reserve(doc["nodes"].size());
  for (const auto& entry : doc["nodes"]) {
    const std::string key = require_string(entry, "key", where + " node");
    if (!by_key.emplace(key, static_cast<NodeId>(nodes.size())).second)
      fail(ErrorCode::parse_error, where + " has duplicate node key '" + key + "'");
    NodeRecord record;
    record.population = require_int(entry, "population", where + " node '" + key + "'");
    record.vap = require_int(entry, "vap", where + " node '" + key + "'");
    record.county = require_string(entry, "county", where + " node '" + key + "'");
    record.votes.reserve(meta.contests.size());
    for (const ContestSpec& contest : meta.contests) {
      VotePair votes;
      for (const auto& [column, slot] :
           {std::pair{&contest.dem_column, &votes.dem}, {&contest.rep_column, &votes.rep}}) {
        if (!entry.contains(*column))
          fail(ErrorCode::schema_mismatch,
               where + " node '" + key + "' is missing column '" + *column + "' for contest '" +
                   contest.name + "'");
        *slot = parse_vote(entry[*column], where + " node '" + key + "' column '" + *column + "'");
      }
      record.votes.push_back(votes);
    }
    nodes.push_back(std::move(record));
    keys.push_back(key);
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(doc["links"].size());
  for (const auto& link : doc["links"]) {
    if (!link.is_array() || link.size() != 2 || !link[0].is_string() || !link[1].is_string())
      fail(ErrorCode::schema_mismatch, where + " links must be [key, key] pairs");
    const auto resolve = [&](const std::string& key) {
      const auto it = by_key.find(key);
      if (it == by_key.end())
        fail(ErrorCode::parse_error, where + " link references unknown node '" + key + "'");
      return it->second;
    };
    edges.emplace_back(resolve(link[0].get<std::string>()), resolve(link[1].get<std::string>()));
  }

  std::vector<std::string> contest_names;
  for (const ContestSpec& c : meta.contests) contest_names.push_back(c.name);
  return LoadedGraph{
      build_graph(std::move(nodes), std::move(edges), std::move(contest_names), std::move(keys)),
      std::move(meta)};
}

void save_graph(const Graph& graph, const GraphMeta& meta, const std::filesystem::path& path) {
  ordered_json doc;
  doc["format"] = "recom-graph";
  doc["version"] = 1;
  doc["unit_level"] = to_string(meta.unit_level);
  ordered_json contests = ordered_json::array();
  for (const ContestSpec& c : meta.contests) contests.push_back(c.name);
  doc["contests"] = std::move(contests);

  ordered_json nodes = ordered_json::array();
  for (NodeId i = 0; i < graph.size(); ++i) {
    const NodeRecord& r = graph.node(i);
    ordered_json entry;
    entry["key"] = graph.node_keys()[static_cast<std::size_t>(i)];
    entry["population"] = r.population;
    entry["vap"] = r.vap;
    entry["county"] = r.county;
    for (std::size_t c = 0; c < meta.contests.size(); ++c) {
      entry[meta.contests[c].dem_column] = vote_to_json(r.votes[c].dem);
      entry[meta.contests[c].rep_column] = vote_to_json(r.votes[c].rep);
    }
    nodes.push_back(std::move(entry));
  }
  doc["nodes"] = std::move(nodes);

  ordered_json links = ordered_json::array();
  for (const auto& [u, v] : graph.edges())
    links.push_back(ordered_json::array({graph.node_keys()[static_cast<std::size_t>(u)],
                                         graph.node_keys()[static_cast<std::size_t>(v)]}));
  doc["links"] = std::move(links);
  write_file(path, doc.dump(2) + "\n");
}

std::vector<ContestSpec> load_election_config(const std::filesystem::path& path) {
  const ordered_json doc = parse_json(path);
  const std::string where = path.filename().string();
  if (!doc.contains("contests") || !doc["contests"].is_array())
    fail(ErrorCode::schema_mismatch, where + " needs a 'contests' array");
  std::vector<ContestSpec> contests;
  for (const auto& entry : doc["contests"]) {
    ContestSpec spec;
    spec.name = require_string(entry, "name", where + " contest");
    spec.dem_column = require_string(entry, "dem_column", where + " contest");
    spec.rep_column = require_string(entry, "rep_column", where + " contest");
    contests.push_back(std::move(spec));
  }
  return contests;
}

void save_plan(const Graph& graph, const Assignment& assignment,
               const std::filesystem::path& path) {
  ordered_json doc;
  doc["format"] = "recom-plan";
  doc["version"] = 1;
  doc["k"] = assignment.k();
  ordered_json labels;
  for (NodeId i = 0; i < graph.size(); ++i)
    labels[graph.node_keys()[static_cast<std::size_t>(i)]] = assignment.district_of(i);
  doc["assignment"] = std::move(labels);
  write_file(path, doc.dump(2) + "\n");
}

Assignment load_plan(const Graph& graph, const std::filesystem::path& path) {
  const ordered_json doc = parse_json(path);
  const std::string where = path.filename().string();
  if (require_string(doc, "format", where) != "recom-plan")
    fail(ErrorCode::schema_mismatch, where + " is not a recom-plan document");
  const auto k = static_cast<std::int32_t>(require_int(doc, "k", where));
  if (!doc.contains("assignment") || !doc["assignment"].is_object())
    fail(ErrorCode::schema_mismatch, where + " needs an 'assignment' object");
  std::unordered_map<std::string, NodeId> by_key;
  for (NodeId i = 0; i < graph.size(); ++i)
    by_key.emplace(graph.node_keys()[static_cast<std::size_t>(i)], i);
  std::vector<DistrictId> labels(static_cast<std::size_t>(graph.size()), -1);
  for (const auto& [key, district] : doc["assignment"].items()) {
    const auto it = by_key.find(key);
    if (it == by_key.end())
      fail(ErrorCode::parse_error, where + " assigns unknown node '" + key + "'");
    if (!district.is_number_integer())
      fail(ErrorCode::schema_mismatch, where + " district labels must be integers");
    labels[static_cast<std::size_t>(it->second)] = district.get<DistrictId>();
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] < 0)
      fail(ErrorCode::parse_error,
           where + " is missing node '" + graph.node_keys()[i] + "'");
  return Assignment(graph, std::move(labels), k);
}

std::string sha256_file(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::io_failure, "SHA-256 digest failed for " + path.string());
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(static_cast<std::size_t>(length) * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  ordered_json doc;
  doc["format"] = "recom-manifest";
  doc["version"] = 1;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["command"] = manifest.command;
  doc["graph"] = {{"path", manifest.graph_path},
                  {"sha256", manifest.graph_sha256},
                  {"unit_level", to_string(manifest.unit_level)}};
  doc["params"] = {{"epsilon", manifest.params.epsilon},
                   {"steps", manifest.params.steps},
                   {"rng_seed", manifest.params.rng_seed},
                   {"max_tree_attempts", manifest.params.max_tree_attempts},
                   {"k", manifest.params.k},
                   {"pair_retries", manifest.params.pair_retries},
                   {"burn_in", manifest.params.burn_in},
                   {"thin", manifest.params.thin}};
  doc["k_list"] = manifest.k_list;
  doc["seed_rule"] =
      "derived_seed(salt) = splitmix64(rng_seed XOR 0x9E3779B97F4A7C15 * salt); "
      "multiscale runs use salt = k, region runs use salt = 0 (region a), 1 (region b), 2 (full)";
  ordered_json contests = ordered_json::array();
  for (std::size_t i = 0; i < manifest.contests.size(); ++i) {
    const ContestSpec& c = manifest.contests[i];
    ordered_json entry = {{"name", c.name},
                          {"dem_column", c.dem_column},
                          {"rep_column", c.rep_column}};
    if (i < manifest.contest_shares.size()) entry["statewide_share"] = manifest.contest_shares[i];
    contests.push_back(std::move(entry));
  }
  doc["contests"] = std::move(contests);
  doc["tie_policy"] = to_string(manifest.tie_policy);
  doc["outputs"] = manifest.outputs;
  if (!manifest.failures.empty()) {
    ordered_json failures = ordered_json::array();
    for (const auto& [k, message] : manifest.failures)
      failures.push_back({{"k", k}, {"error", message}});
    doc["failures"] = std::move(failures);
  }
  write_file(path, doc.dump(2) + "\n");
}

RunManifest load_manifest(const std::filesystem::path& path) {
  const ordered_json doc = parse_json(path);
  const std::string where = path.filename().string();
  if (require_string(doc, "format", where) != "recom-manifest")
    fail(ErrorCode::schema_mismatch, where + " is not a recom-manifest document");
  RunManifest m;
  m.command = require_string(doc, "command", where);
  if (!doc.contains("graph") || !doc["graph"].is_object())
    fail(ErrorCode::schema_mismatch, where + " needs a 'graph' object");
  m.graph_path = require_string(doc["graph"], "path", where + " graph");
  m.graph_sha256 = require_string(doc["graph"], "sha256", where + " graph");
  m.unit_level = unit_level_from_string(require_string(doc["graph"], "unit_level", where));
  if (!doc.contains("params") || !doc["params"].is_object())
    fail(ErrorCode::schema_mismatch, where + " needs a 'params' object");
  const auto& p = doc["params"];
  if (!p.contains("epsilon") || !p["epsilon"].is_number())
    fail(ErrorCode::schema_mismatch, where + " params need a numeric 'epsilon'");
  m.params.epsilon = p["epsilon"].get<double>();
  m.params.steps = require_int(p, "steps", where + " params");
  if (!p.contains("rng_seed") || !p["rng_seed"].is_number())
    fail(ErrorCode::schema_mismatch, where + " params need an integer 'rng_seed'");
  m.params.rng_seed = p["rng_seed"].get<std::uint64_t>();
  m.params.max_tree_attempts =
      static_cast<int>(require_int(p, "max_tree_attempts", where + " params"));
  m.params.k = static_cast<std::int32_t>(require_int(p, "k", where + " params"));
  m.params.pair_retries = static_cast<int>(require_int(p, "pair_retries", where + " params"));
  m.params.burn_in = require_int(p, "burn_in", where + " params");
  m.params.thin = require_int(p, "thin", where + " params");
  if (doc.contains("k_list"))
    for (const auto& k : doc["k_list"]) m.k_list.push_back(k.get<std::int32_t>());
  if (doc.contains("contests"))
    for (const auto& entry : doc["contests"]) {
      ContestSpec spec;
      spec.name = require_string(entry, "name", where + " contest");
      spec.dem_column = require_string(entry, "dem_column", where + " contest");
      spec.rep_column = require_string(entry, "rep_column", where + " contest");
      m.contests.push_back(std::move(spec));
      m.contest_shares.push_back(entry.contains("statewide_share")
                                     ? entry["statewide_share"].get<double>()
                                     : 0.0);
    }
  m.tie_policy = tie_policy_from_string(require_string(doc, "tie_policy", where));
  if (doc.contains("outputs"))
    for (const auto& o : doc["outputs"]) m.outputs.push_back(o.get<std::string>());
  if (doc.contains("failures"))
    for (const auto& f : doc["failures"])
      m.failures.emplace_back(f["k"].get<std::int32_t>(), f["error"].get<std::string>());
  return m;
}

}  // namespace recom
