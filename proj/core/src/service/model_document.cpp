#include "ahp/service/model_document.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace ahp::service {
namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& message) { throw ServiceError(ServiceErrorCode::ParseError, message); }

const json& field(const json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) parse_error(std::string("missing field '") + name + "'");
  return *it;
}

std::string id_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_string()) parse_error(std::string("field '") + name + "' must be a string");
  std::string id = v.get<std::string>();
  if (id.empty()) parse_error(std::string("field '") + name + "' must be nonempty");
  for (char c : id)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '/' || c == '@')
      parse_error("id '" + id + "' may not contain whitespace, '/' or '@'");
  return id;
}

const json& array_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_array()) parse_error(std::string("field '") + name + "' must be an array");
  return v;
}

double number_field(const json& obj, const char* name, double fallback) {
  const auto it = obj.find(name);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) parse_error(std::string("field '") + name + "' must be a number");
  return it->get<double>();
}

void parse_hierarchy(const json& j, ModelDocument& doc) {
  for (const json& n : array_field(j, "nodes")) {
    if (!n.is_object()) parse_error("each node must be an object");
    Node node;
    node.id = id_field(n, "id");
    const json& kind = field(n, "kind");
    const auto parsed = kind.is_string() ? parse_node_kind(kind.get<std::string>()) : std::nullopt;
    if (!parsed) parse_error("node '" + node.id + "' has kind other than goal, criterion or alternative");
    node.kind = *parsed;
    const json& level = field(n, "level");
    if (!level.is_number_integer()) parse_error("node '" + node.id + "' needs an integer level");
    node.level = level.get<int>();
    doc.hierarchy.nodes.push_back(std::move(node));
  }
  for (const json& e : array_field(j, "edges")) {
    if (!e.is_object()) parse_error("each edge must be an object");
    doc.hierarchy.edges.push_back({id_field(e, "parent"), id_field(e, "child")});
  }
  doc.hierarchy.rho = doc.rho;
}

void parse_network(const json& j, ModelDocument& doc) {
  for (const json& c : array_field(j, "components")) {
    if (!c.is_object()) parse_error("each component must be an object");
    Component comp;
    comp.id = id_field(c, "id");
    for (const json& e : array_field(c, "elements")) {
      const json wrapper = {{"element", e}};
      comp.elements.push_back(id_field(wrapper, "element"));
    }
    doc.network.components.push_back(std::move(comp));
  }
  for (const json& a : array_field(j, "arcs")) {
    if (!a.is_object()) parse_error("each arc must be an object");
    doc.network.arcs.push_back({id_field(a, "from"), id_field(a, "to")});
  }
  if (const auto it = j.find("cluster_weights"); it != j.end()) {
    if (!it->is_object()) parse_error("cluster_weights must be an object");
    for (const auto& [element, per] : it->items()) {
      if (!per.is_object()) parse_error("cluster_weights for '" + element + "' must be an object");
      for (const auto& [component, w] : per.items()) {
        if (!w.is_number()) parse_error("cluster weight must be a number");
        doc.cluster_weights[element][component] = w.get<double>();
      }
    }
  }
  if (const auto it = j.find("identity_sinks"); it != j.end()) {
    if (!it->is_boolean()) parse_error("identity_sinks must be a boolean");
    doc.identity_sinks = it->get<bool>();
  }
}

}  // namespace

std::string_view to_string(ServiceErrorCode code) noexcept {
  switch (code) {
    case ServiceErrorCode::ParseError: return "parse_error";
    case ServiceErrorCode::ValidationFailed: return "validation_failed";
    case ServiceErrorCode::UnknownSession: return "unknown_session";
    case ServiceErrorCode::UnknownContext: return "unknown_context";
    case ServiceErrorCode::UnknownPair: return "unknown_pair";
    case ServiceErrorCode::NonPositiveValue: return "non_positive_value";
    case ServiceErrorCode::InvalidAction: return "invalid_action";
  }
  return "unknown";
}

std::string network_context_id(const std::string& element, const std::string& component) {
  return element + "@" + component;
}

std::vector<Context> contexts_of(const ModelDocument& doc) {
  std::vector<Context> out;
  if (doc.kind == StructureKind::Hierarchy) {
    for (const auto& parent : comparison_parents(doc.hierarchy)) out.push_back({parent, children_of(doc.hierarchy, parent)});
    return out;
  }
  std::set<std::string> seen;
  for (const auto& arc : doc.network.arcs) {
    const Component* dependent = doc.network.find(arc.from);
    const Component* target = doc.network.find(arc.to);
    if (!dependent || !target) continue;
    for (const auto& element : target->elements) {
      std::string id = network_context_id(element, dependent->id);
      if (seen.insert(id).second) out.push_back({std::move(id), dependent->elements});
    }
  }
  return out;
}

const Context& find_context(const std::vector<Context>& contexts, const std::string& id) {
  const auto it = std::find_if(contexts.begin(), contexts.end(), [&](const Context& c) { return c.id == id; });
  if (it == contexts.end()) throw ServiceError(ServiceErrorCode::UnknownContext, "unknown context '" + id + "'");
  return *it;
}

void put_judgment(JudgmentSet& judgments, const Context& context, const std::string& row, const std::string& col,
                  double value) {
  const auto& el = context.elements;
  const auto r = std::find(el.begin(), el.end(), row);
  const auto c = std::find(el.begin(), el.end(), col);
  if (r == el.end() || c == el.end() || r == c)
    throw ServiceError(ServiceErrorCode::UnknownPair,
                       "(" + row + ", " + col + ") is not a pair of distinct elements in context '" + context.id + "'");
  if (!(value > 0.0) || !std::isfinite(value))
    throw ServiceError(ServiceErrorCode::NonPositiveValue, "judgment values must be positive and finite");
  if (r < c)
    judgments[context.id][{row, col}] = value;
  else
    judgments[context.id][{col, row}] = 1.0 / value;
}

double parse_value(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) parse_error("judgment value must be a number or a \"p/q\" string");
  const std::string s = j.get<std::string>();
  auto read = [&](std::string_view part) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || end != part.data() + part.size()) parse_error("bad judgment value '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return read(s);
  return read(std::string_view(s).substr(0, slash)) / read(std::string_view(s).substr(slash + 1));
}

ModelDocument parse_model(const json& j) {
  if (!j.is_object()) parse_error("model document must be an object");
  const json& version = field(j, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    parse_error("unsupported format_version; expected " + std::to_string(kFormatVersion));

  ModelDocument doc;
  const json& kind = field(j, "kind");
  if (kind == "hierarchy")
    doc.kind = StructureKind::Hierarchy;
  else if (kind == "network")
    doc.kind = StructureKind::Network;
  else
    parse_error("kind must be \"hierarchy\" or \"network\"");

  doc.rho = number_field(j, "rho", kDefaultRho);
  doc.cr_threshold = number_field(j, "cr_threshold", kDefaultCrThreshold);
  if (!(doc.cr_threshold > 0.0)) parse_error("cr_threshold must be positive");
  if (const auto it = j.find("mode"); it != j.end()) {
    const auto mode = it->is_string() ? parse_rank_mode(it->get<std::string>()) : std::nullopt;
    if (!mode) parse_error("mode must be \"distributive\" or \"ideal\"");
    doc.mode = *mode;
  }

  if (doc.kind == StructureKind::Hierarchy)
    parse_hierarchy(j, doc);
  else
    parse_network(j, doc);

  if (const auto it = j.find("judgments"); it != j.end()) {
    if (!it->is_array()) parse_error("judgments must be an array");
    const auto contexts = contexts_of(doc);
    for (const json& jj : *it) {
      if (!jj.is_object()) parse_error("each judgment must be an object");
      const json& context = field(jj, "context");
      const json& row = field(jj, "row");
      const json& col = field(jj, "col");
      if (!context.is_string() || !row.is_string() || !col.is_string())
        parse_error("judgment context, row and col must be strings");
      put_judgment(doc.judgments, find_context(contexts, context.get<std::string>()), row.get<std::string>(),
                   col.get<std::string>(), parse_value(field(jj, "value")));
    }
  }
  return doc;
}

ModelDocument parse_model_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("not a JSON document: ") + e.what());
  }
  return parse_model(j);
}

json to_json(const ModelDocument& doc) {
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = doc.kind == StructureKind::Hierarchy ? "hierarchy" : "network";
  j["rho"] = doc.rho;
  j["mode"] = std::string(to_string(doc.mode));
  j["cr_threshold"] = doc.cr_threshold;
  if (doc.kind == StructureKind::Hierarchy) {
    j["nodes"] = json::array();
    for (const auto& n : doc.hierarchy.nodes)
      j["nodes"].push_back({{"id", n.id}, {"kind", std::string(to_string(n.kind))}, {"level", n.level}});
    j["edges"] = json::array();
    for (const auto& e : doc.hierarchy.edges) j["edges"].push_back({{"parent", e.parent}, {"child", e.child}});
  } else {
    j["components"] = json::array();
    for (const auto& c : doc.network.components) j["components"].push_back({{"id", c.id}, {"elements", c.elements}});
    j["arcs"] = json::array();
    for (const auto& a : doc.network.arcs) j["arcs"].push_back({{"from", a.from}, {"to", a.to}});
    if (!doc.cluster_weights.empty()) j["cluster_weights"] = doc.cluster_weights;
    j["identity_sinks"] = doc.identity_sinks;
  }
  j["judgments"] = json::array();
  for (const auto& context : contexts_of(doc)) {
    const auto it = doc.judgments.find(context.id);
    if (it == doc.judgments.end()) continue;
    for (const auto& [pair, value] : it->second)
      j["judgments"].push_back({{"context", context.id}, {"row", pair.first}, {"col", pair.second}, {"value", value}});
  }
  return j;
}

}  // namespace ahp::service
