#include "sponge/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sponge/errors.hpp"

namespace sponge {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

int as_int(const json& value, const std::string& what) {
  if (!value.is_number_integer()) throw ParseError(what + " must be an integer");
  return value.get<int>();
}

Digit as_digit(const json& value, const std::string& what) {
  if (!value.is_array()) throw ParseError(what + " must be an array of integers");
  Digit digit;
  for (const json& entry : value) digit.push_back(as_int(entry, what));
  return digit;
}

Rational as_ratio(const json& value, const std::string& what) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long>());
  throw ParseError(what + " must be a decimal or \"p/q\" string");
}

SpongeSpec parse_bm(const json& doc) {
  const json& bases_json = field(doc, "bases");
  if (!bases_json.is_array()) throw ParseError("\"bases\" must be an array");
  std::vector<int> bases;
  for (const json& b : bases_json) bases.push_back(as_int(b, "base"));
  const json& digits_json = field(doc, "digits");
  if (!digits_json.is_array()) throw ParseError("\"digits\" must be an array");
  std::vector<Digit> digits;
  for (const json& d : digits_json) digits.push_back(as_digit(d, "digit"));
  return SpongeSpec::canonical(std::move(bases), std::move(digits));
}

LgSpongeSpec parse_lg(const json& doc) {
  const int dims = as_int(field(doc, "dims"), "\"dims\"");
  const json& nodes_json = field(doc, "nodes");
  if (!nodes_json.is_array()) throw ParseError("\"nodes\" must be an array");
  std::vector<std::pair<Digit, LgNode>> nodes;
  for (const json& node : nodes_json) {
    if (!node.is_object()) throw ParseError("each node must be an object");
    Digit prefix = as_digit(field(node, "prefix"), "\"prefix\"");
    LgNode value{as_ratio(field(node, "c"), "\"c\""), as_ratio(field(node, "t"), "\"t\"")};
    nodes.emplace_back(std::move(prefix), std::move(value));
  }
  return LgSpongeSpec(dims, nodes);
}

}  // namespace

AnySpec parse_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("spec document must be a JSON object");
  const json& type = field(doc, "type");
  if (!type.is_string()) throw ParseError("\"type\" must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "bedford-mcmullen") return parse_bm(doc);
  if (kind == "lalley-gatzouras") return parse_lg(doc);
  throw ParseError("unknown sponge type \"" + kind + "\"");
}

AnySpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

std::string spec_to_json(const SpongeSpec& spec) {
  json doc;
  doc["type"] = "bedford-mcmullen";
  doc["bases"] = spec.bases;
  doc["digits"] = spec.digits;
  return doc.dump();
}

std::string spec_to_json(const LgSpongeSpec& spec) {
  json doc;
  doc["type"] = "lalley-gatzouras";
  doc["dims"] = spec.dims();
  json nodes = json::array();
  for (const auto& [prefix, node] : spec.nodes()) {
    nodes.push_back({{"prefix", prefix}, {"c", to_string(node.contraction)}, {"t", to_string(node.translation)}});
  }
  doc["nodes"] = nodes;
  return doc.dump();
}

}  // namespace sponge
