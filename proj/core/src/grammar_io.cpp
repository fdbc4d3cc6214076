#include "stag/grammar_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace stag {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& message) {
  throw GrammarLoadError(ErrorKind::schema, field + ": " + message, field);
}

void reject_unknown_fields(const json& object, const std::string& field,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto name : allowed) known = known || key == name;
    if (!known) schema_error(field, "unknown field \"" + key + "\"");
  }
}

const json& require(const json& object, const std::string& field, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) schema_error(field, std::string("missing field \"") + key + "\"");
  return *it;
}

const json& expect_object(const json& value, const std::string& field) {
  if (!value.is_object()) schema_error(field, "expected an object");
  return value;
}

const json& expect_array(const json& value, const std::string& field) {
  if (!value.is_array()) schema_error(field, "expected an array");
  return value;
}

std::string expect_string(const json& value, const std::string& field) {
  if (!value.is_string()) schema_error(field, "expected a string");
  return value.get<std::string>();
}

long long expect_integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) schema_error(field, "expected an integer");
  return value.get<long long>();
}

std::size_t expect_index(const json& value, const std::string& field) {
  long long v = expect_integer(value, field);
  if (v < 0) schema_error(field, "expected a non-negative index");
  return static_cast<std::size_t>(v);
}

GornAddress expect_address(const json& value, const std::string& field) {
  std::string text = expect_string(value, field);
  auto address = GornAddress::try_parse(text);
  if (!address) schema_error(field, "bad address \"" + text + "\"");
  return *address;
}

TreeNode parse_node(const json& value, const std::string& field, int depth) {
  if (depth > 256) schema_error(field, "tree nesting too deep");
  expect_object(value, field);
  reject_unknown_fields(value, field, {"cat", "kind", "adjoin", "word", "feats", "children"});
  TreeNode node;
  node.category = expect_string(require(value, field, "cat"), field + ".cat");
  if (auto it = value.find("kind"); it != value.end()) {
    std::string text = expect_string(*it, field + ".kind");
    auto kind = parse_node_kind(text);
    if (!kind) schema_error(field + ".kind", "unknown kind \"" + text + "\"");
    node.kind = *kind;
  }
  if (auto it = value.find("adjoin"); it != value.end()) {
    std::string text = expect_string(*it, field + ".adjoin");
    auto adjoin = parse_adjoin(text);
    if (!adjoin) schema_error(field + ".adjoin", "unknown adjoin value \"" + text + "\"");
    node.adjoin = *adjoin;
  }
  if (auto it = value.find("word"); it != value.end()) {
    node.word = expect_string(*it, field + ".word");
  }
  if (auto it = value.find("feats"); it != value.end()) {
    expect_object(*it, field + ".feats");
    for (const auto& [name, v] : it->items()) {
      node.features[name] = expect_string(v, field + ".feats." + name);
    }
  }
  if (auto it = value.find("children"); it != value.end()) {
    expect_array(*it, field + ".children");
    for (std::size_t i = 0; i < it->size(); ++i) {
      node.children.push_back(
          parse_node((*it)[i], field + ".children[" + std::to_string(i) + "]", depth + 1));
    }
  }
  return node;
}

SyncPair parse_pair(const json& value, const std::string& field) {
  expect_object(value, field);
  reject_unknown_fields(value, field, {"name", "priority", "source", "target", "links"});
  SyncPair pair;
  pair.name = expect_string(require(value, field, "name"), field + ".name");
  const std::string where = field + " (" + pair.name + ")";

  const json& source = expect_object(require(value, where, "source"), where + ".source");
  reject_unknown_fields(source, where + ".source", {"components", "head", "dominance"});
  const json& components =
      expect_array(require(source, where + ".source", "components"), where + ".source.components");
  for (std::size_t i = 0; i < components.size(); ++i) {
    pair.source.components.emplace_back(
        parse_node(components[i], where + ".source.components[" + std::to_string(i) + "]", 0));
  }
  if (auto it = source.find("head"); it != source.end()) {
    pair.source.head = expect_index(*it, where + ".source.head");
  }
  if (auto it = source.find("dominance"); it != source.end()) {
    expect_array(*it, where + ".source.dominance");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string f = where + ".source.dominance[" + std::to_string(i) + "]";
      const json& entry = expect_array((*it)[i], f);
      if (entry.size() != 2) schema_error(f, "expected [dominator, dominated]");
      pair.source.dominance.emplace_back(expect_index(entry[0], f + "[0]"),
                                         expect_index(entry[1], f + "[1]"));
    }
  }

  pair.target = ElementaryTree(parse_node(require(value, where, "target"), where + ".target", 0));

  if (auto it = value.find("links"); it != value.end()) {
    expect_array(*it, where + ".links");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string f = where + ".links[" + std::to_string(i) + "]";
      const json& entry = expect_object((*it)[i], f);
      reject_unknown_fields(entry, f, {"comp", "src", "tgt"});
      Link link;
      link.comp = expect_index(require(entry, f, "comp"), f + ".comp");
      link.src = expect_address(require(entry, f, "src"), f + ".src");
      link.tgt = expect_address(require(entry, f, "tgt"), f + ".tgt");
      if (link.comp >= pair.source.components.size()) {
        schema_error(f + ".comp", "no source component " + std::to_string(link.comp));
      }
      if (!pair.source.components[link.comp].find(link.src)) {
        schema_error(f + ".src", "address \"" + link.src.str() + "\" does not exist in component " +
                                     std::to_string(link.comp));
      }
      if (!pair.target.find(link.tgt)) {
        schema_error(f + ".tgt", "address \"" + link.tgt.str() + "\" does not exist in the target tree");
      }
      pair.links.push_back(std::move(link));
    }
  }

  if (auto it = value.find("priority"); it != value.end()) {
    long long priority = expect_integer(*it, where + ".priority");
    if (priority < 1 || priority > 1'000'000) {
      schema_error(where + ".priority", "priority must be in [1, 1000000]");
    }
    pair.priority = static_cast<int>(priority);
  } else {
    pair.priority = default_priority(pair.source);
  }
  return pair;
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  for (std::size_t i = 0; i < byte; ++i) line += text[i] == '\n';
  return line;
}

json dump_node(const TreeNode& node) {
  json out = json::object();
  out["cat"] = node.category;
  if (node.kind != NodeKind::interior) out["kind"] = std::string(to_string(node.kind));
  if (node.adjoin != AdjoinConstraint::allow) out["adjoin"] = std::string(to_string(node.adjoin));
  if (!node.word.empty()) out["word"] = node.word;
  if (!node.features.empty()) {
    json feats = json::object();
    for (const auto& [name, value] : node.features) feats[name] = value;
    out["feats"] = feats;
  }
  if (!node.children.empty()) {
    json children = json::array();
    for (const TreeNode& child : node.children) children.push_back(dump_node(child));
    out["children"] = children;
  }
  return out;
}

}  // namespace

Grammar load_grammar(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw GrammarLoadError(ErrorKind::syntax,
                           "line " + std::to_string(line) + ": " + e.what(), {}, line);
  }

  try {
    expect_object(doc, "document");
    reject_unknown_fields(doc, "document",
                          {"version", "source_language", "target_language", "start_symbol",
                           "particles", "pairs"});
    long long version = expect_integer(require(doc, "document", "version"), "version");
    if (version != kGrammarFormatVersion) {
      schema_error("version", "unsupported version " + std::to_string(version));
    }
    GrammarMeta meta;
    meta.source_language = expect_string(require(doc, "document", "source_language"), "source_language");
    meta.target_language = expect_string(require(doc, "document", "target_language"), "target_language");
    meta.start_symbol = expect_string(require(doc, "document", "start_symbol"), "start_symbol");
    if (auto it = doc.find("particles"); it != doc.end()) {
      expect_array(*it, "particles");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string f = "particles[" + std::to_string(i) + "]";
        const json& entry = expect_object((*it)[i], f);
        reject_unknown_fields(entry, f, {"form", "case"});
        std::string form = expect_string(require(entry, f, "form"), f + ".form");
        std::string label = expect_string(require(entry, f, "case"), f + ".case");
        if (form.empty()) schema_error(f + ".form", "empty particle form");
        if (!meta.particles.emplace(form, label).second) {
          schema_error(f + ".form", "duplicate particle \"" + form + "\"");
        }
      }
    }
    std::vector<SyncPair> pairs;
    const json& list = expect_array(require(doc, "document", "pairs"), "pairs");
    for (std::size_t i = 0; i < list.size(); ++i) {
      pairs.push_back(parse_pair(list[i], "pairs[" + std::to_string(i) + "]"));
    }

    std::vector<Diagnostic> diagnostics;
    for (const SyncPair& pair : pairs) {
      for (Diagnostic& d : validate_pair(pair)) {
        if (d.severity == Severity::error) diagnostics.push_back(std::move(d));
      }
    }
    if (!diagnostics.empty()) {
      std::string message = "grammar failed validation:";
      for (const Diagnostic& d : diagnostics) message += "\n  " + d.str();
      throw GrammarLoadError(ErrorKind::validation, message, {}, 0, std::move(diagnostics));
    }
    try {
      return index_grammar(std::move(pairs), std::move(meta));
    } catch (const GrammarLoadError&) {
      throw;
    } catch (const Error& e) {
      throw GrammarLoadError(e.kind(), e.what());
    }
  } catch (const json::exception& e) {
    throw GrammarLoadError(ErrorKind::schema, e.what());
  }
}

Grammar load_grammar_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GrammarLoadError(ErrorKind::io, "cannot read grammar file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw GrammarLoadError(ErrorKind::io, "error reading " + path.string());
  try {
    return load_grammar(buffer.str());
  } catch (const GrammarLoadError& e) {
    throw GrammarLoadError(e.kind(), path.string() + ": " + e.what(), e.field(), e.line(),
                           e.diagnostics());
  }
}

std::string dump_grammar(const Grammar& grammar) {
  json doc = json::object();
  doc["version"] = kGrammarFormatVersion;
  doc["source_language"] = grammar.meta().source_language;
  doc["target_language"] = grammar.meta().target_language;
  doc["start_symbol"] = grammar.start_symbol();
  json particles = json::array();
  for (const auto& [form, label] : grammar.particles()) {
    particles.push_back({{"form", form}, {"case", label}});
  }
  doc["particles"] = particles;

  json pairs = json::array();
  for (const SyncPair& pair : grammar.pairs()) {
    json p = json::object();
    p["name"] = pair.name;
    p["priority"] = pair.priority;
    json components = json::array();
    for (const ElementaryTree& tree : pair.source.components) components.push_back(dump_node(tree.root()));
    json dominance = json::array();
    for (const auto& [d, e] : pair.source.dominance) dominance.push_back({d, e});
    p["source"] = {{"components", components}, {"head", pair.source.head}, {"dominance", dominance}};
    p["target"] = dump_node(pair.target.root());
    json links = json::array();
    for (const Link& link : pair.links) {
      links.push_back({{"comp", link.comp}, {"src", link.src.str()}, {"tgt", link.tgt.str()}});
    }
    p["links"] = links;
    pairs.push_back(std::move(p));
  }
  doc["pairs"] = pairs;
  return doc.dump(2) + "\n";
}

}  // namespace stag
