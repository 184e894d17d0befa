#include "logicnet/rules.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "logicnet/csv.hpp"
#include "logicnet/errors.hpp"
#include "logicnet/network.hpp"

namespace logicnet {

namespace {

std::vector<std::string> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::string token;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
      if (line[i] != '"') {
        token.push_back(line[i++]);
        continue;
      }
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\\' && i + 1 < line.size()) {
          token.push_back(line[i + 1]);
          i += 2;
        } else if (line[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          token.push_back(line[i++]);
        }
      }
      if (!closed) throw ModelError(lineno, "unterminated quote");
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::string quote_if_needed(std::string_view text) {
  const bool plain = !text.empty() && text.find_first_of(" \t\"\\=#") == std::string_view::npos;
  if (plain) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::size_t parse_count(std::string_view text, std::size_t lineno, std::string_view what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ModelError(lineno, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

Bit parse_bit(std::string_view text, std::size_t lineno, std::string_view what) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  throw ModelError(lineno, std::string(what) + " must be 0 or 1, got '" + std::string(text) + "'");
}

FeatureDecl parse_feature(const std::vector<std::string>& tokens, std::size_t lineno) {
  if (tokens.size() < 2) throw ModelError(lineno, "feature line needs a name");
  FeatureDecl decl;
  decl.encoder.feature = tokens[1];
  bool have_index = false;
  bool have_polarity = false;
  bool have_threshold = false;
  std::optional<FeatureKind> kind;
  for (std::size_t t = 2; t < tokens.size(); ++t) {
    const std::string& tok = tokens[t];
    if (tok == "degenerate") {
      decl.encoder.degenerate = true;
      continue;
    }
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ModelError(lineno, "expected key=value, got '" + tok + "'");
    const std::string_view key = std::string_view(tok).substr(0, eq);
    const std::string_view value = std::string_view(tok).substr(eq + 1);
    if (key == "x") {
      decl.index = parse_count(value, lineno, "feature index");
      have_index = true;
    } else if (key == "kind") {
      kind = parse_feature_kind(value);
      if (!kind) throw ModelError(lineno, "unknown feature kind '" + std::string(value) + "'");
    } else if (key == "u") {
      const auto u = parse_number(value);
      if (!u) throw ModelError(lineno, "bad threshold '" + std::string(value) + "'");
      decl.encoder.threshold = *u;
      have_threshold = true;
    } else if (key == "category") {
      decl.encoder.category = std::string(value);
    } else if (key == "h") {
      decl.encoder.polarity = parse_bit(value, lineno, "polarity h");
      have_polarity = true;
    } else if (key == "e") {
      decl.encoder.error = parse_count(value, lineno, "error count");
    } else {
      throw ModelError(lineno, "unknown feature attribute '" + std::string(key) + "'");
    }
  }
  if (!have_index) throw ModelError(lineno, "feature '" + decl.name() + "' lacks x=<index>");
  decl.encoder.kind = kind.value_or(have_threshold ? FeatureKind::quantitative : FeatureKind::boolean);
  if (!decl.encoder.degenerate) {
    if (!have_polarity) throw ModelError(lineno, "feature '" + decl.name() + "' lacks h=<bit>");
    if (decl.encoder.kind == FeatureKind::quantitative && !have_threshold) {
      throw ModelError(lineno, "quantitative feature '" + decl.name() + "' lacks u=<threshold>");
    }
  }
  if (decl.encoder.kind == FeatureKind::boolean) decl.encoder.threshold = 0.5;
  return decl;
}

std::string print_feature(const FeatureDecl& decl) {
  const Encoder& enc = decl.encoder;
  std::string line = "feature " + quote_if_needed(enc.feature) + " x=" + std::to_string(decl.index) +
                     " kind=" + std::string(to_string(enc.kind));
  if (enc.kind == FeatureKind::quantitative && !std::isnan(enc.threshold)) {
    line += " u=" + format_number(enc.threshold);
  }
  if (enc.kind == FeatureKind::nominal && !enc.degenerate) {
    line += " category=" + quote_if_needed(enc.category);
  }
  if (!enc.degenerate || enc.kind != FeatureKind::nominal) {
    line += " h=" + std::to_string(enc.polarity);
  }
  if (enc.error) line += " e=" + std::to_string(*enc.error);
  if (enc.degenerate) line += " degenerate";
  return line;
}

}  // namespace

const FeatureDecl* FormulaTable::find_feature(std::size_t index) const {
  auto it = std::ranges::find(features, index, &FeatureDecl::index);
  return it == features.end() ? nullptr : &*it;
}

FormulaTable parse_formula_table(std::string_view text) {
  FormulaTable table;
  bool in_header = true;
  bool seen_classes = false;
  std::set<std::size_t> layer_ids;
  std::set<std::size_t> prev_ids;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (in_header) table.comments.emplace_back(raw.substr(raw.find('#') + 1));
      continue;
    }
    in_header = false;
    const auto tokens = tokenize(line, lineno);
    const std::string& head = tokens.front();

    if (head == "classes") {
      if (tokens.size() != 3) throw ModelError(lineno, "classes line needs exactly two names");
      if (seen_classes || !table.features.empty() || !table.layers.empty()) {
        throw ModelError(lineno, "classes must appear once, before features and layers");
      }
      table.class_names = {tokens[1], tokens[2]};
      seen_classes = true;
    } else if (head == "feature") {
      if (!table.layers.empty()) throw ModelError(lineno, "feature declared after the first layer");
      FeatureDecl decl = parse_feature(tokens, lineno);
      if (table.find_feature(decl.index)) {
        throw ModelError(lineno, "feature index x" + std::to_string(decl.index) + " declared twice");
      }
      if (std::ranges::any_of(table.features, [&](const FeatureDecl& f) { return f.name() == decl.name(); })) {
        throw ModelError(lineno, "feature name '" + decl.name() + "' declared twice");
      }
      table.features.push_back(std::move(decl));
    } else if (head == "layer") {
      if (tokens.size() != 2) throw ModelError(lineno, "layer line needs a number");
      const std::size_t r = parse_count(tokens[1], lineno, "layer number");
      if (r != table.layers.size() + 1) {
        throw ModelError(lineno, "expected layer " + std::to_string(table.layers.size() + 1) + ", got " + tokens[1]);
      }
      if (!table.layers.empty() && table.layers.back().empty()) {
        throw ModelError(lineno, "layer " + std::to_string(table.layers.size()) + " has no units");
      }
      prev_ids = std::move(layer_ids);
      layer_ids.clear();
      table.layers.emplace_back();
    } else {
      if (table.layers.empty()) throw ModelError(lineno, "unknown directive '" + head + "'");
      if (tokens.size() != 4) throw ModelError(lineno, "unit row needs 4 fields: i j k l");
      FormulaRow row;
      row.id = parse_count(tokens[0], lineno, "unit id");
      row.fn = FunctionId{static_cast<int>(parse_count(tokens[1], lineno, "function id"))};
      row.left = parse_count(tokens[2], lineno, "left operand");
      row.right = parse_count(tokens[3], lineno, "right operand");
      if (!Catalog::extended().contains(row.fn)) {
        throw ModelError(lineno, "unknown function id " + tokens[1]);
      }
      if (!layer_ids.insert(row.id).second) {
        throw ModelError(lineno, "duplicate unit id " + tokens[0] + " in layer " + std::to_string(table.layers.size()));
      }
      if (table.layers.size() == 1) {
        if (!table.find_feature(row.left)) throw ModelError(lineno, "undeclared feature x" + tokens[2]);
      } else if (!prev_ids.contains(row.left)) {
        throw ModelError(lineno, "dangling reference y" + tokens[2] + ": no such unit in layer " +
                                     std::to_string(table.layers.size() - 1));
      }
      if (!table.find_feature(row.right)) throw ModelError(lineno, "undeclared feature x" + tokens[3]);
      table.layers.back().push_back(row);
    }
  }
  if (table.layers.empty()) throw ModelError(0, "model has no layers");
  if (table.layers.back().empty()) throw ModelError(lineno, "last layer has no units");
  return table;
}

std::string print_formula_table(const FormulaTable& table) {
  std::ostringstream out;
  for (const auto& c : table.comments) out << '#' << c << '\n';
  out << "classes " << quote_if_needed(table.class_names[0]) << ' ' << quote_if_needed(table.class_names[1])
      << '\n';
  for (const auto& f : table.features) out << print_feature(f) << '\n';
  for (std::size_t r = 0; r < table.layers.size(); ++r) {
    out << "layer " << r + 1 << '\n';
    for (const auto& row : table.layers[r]) {
      out << row.id << ' ' << row.fn.value << ' ' << row.left << ' ' << row.right << '\n';
    }
  }
  return out.str();
}

FormulaTable to_formula_table(const Network& net) {
  FormulaTable table;
  table.class_names = net.class_names();
  table.comments.push_back(" training error " + std::to_string(net.training_error()) + ", " +
                           std::to_string(net.layers().size()) + " layer(s), N = " +
                           std::to_string(net.syndromes().size()) + ", stop: " +
                           std::string(to_string(net.stop_reason())));
  for (std::size_t j = 0; j < net.encoders().size(); ++j) {
    table.features.push_back(FeatureDecl{j, net.encoders()[j]});
  }
  const auto live = net.live_units();
  const auto& layers = net.layers();
  for (std::size_t r = 0; r < layers.size(); ++r) {
    auto& rows = table.layers.emplace_back();
    for (std::size_t u = 0; u < layers[r].size(); ++u) {
      if (!live[r][u]) continue;
      const Unit& unit = layers[r].units[u];
      const std::size_t left = r == 0 ? unit.left : layers[r - 1].units[unit.left].id;
      rows.push_back(FormulaRow{unit.id, unit.fn, left, unit.right});
    }
  }
  return table;
}

std::string formula_text(const Network& net) { return print_formula_table(to_formula_table(net)); }

SyndromeComplex::SyndromeComplex(std::vector<Node> nodes, std::vector<std::size_t> roots,
                                 std::vector<FeatureDecl> features, std::array<std::string, 2> class_names)
    : nodes_(std::move(nodes)),
      roots_(std::move(roots)),
      features_(std::move(features)),
      class_names_(std::move(class_names)) {
  if (roots_.empty()) throw ModelError(0, "a syndrome complex needs at least one syndrome");
  for (const Node& n : nodes_) {
    if (n.kind == Node::Kind::function && !Catalog::extended().contains(n.fn)) {
      throw CatalogMiss("unknown logic function " + to_string(n.fn));
    }
    if (n.kind == Node::Kind::feature && n.slot >= features_.size()) {
      throw ModelError(0, "expression leaf references an undeclared feature");
    }
  }
}

std::optional<std::size_t> SyndromeComplex::find_feature(std::string_view token) const {
  for (std::size_t s = 0; s < features_.size(); ++s) {
    if (features_[s].name() == token) return s;
  }
  if (token.size() > 1 && token.front() == 'x') {
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), index);
    if (ec == std::errc{} && ptr == token.data() + token.size()) {
      for (std::size_t s = 0; s < features_.size(); ++s) {
        if (features_[s].index == index) return s;
      }
    }
  }
  return std::nullopt;
}

Bit SyndromeComplex::eval_node(std::size_t node, std::span<const Bit> bits) const {
  const Node& n = nodes_[node];
  if (n.kind == Node::Kind::feature) return bits[n.slot];
  return Catalog::extended().at(n.fn)(eval_node(n.left, bits), eval_node(n.right, bits));
}

Bit SyndromeComplex::evaluate_syndrome(std::size_t s, std::span<const Bit> bits) const {
  if (bits.size() != features_.size()) {
    throw DimensionError("expected " + std::to_string(features_.size()) + " feature bits, got " +
                         std::to_string(bits.size()));
  }
  return eval_node(roots_.at(s), bits);
}

SignedDecision SyndromeComplex::evaluate(std::span<const Bit> bits) const {
  std::size_t ones = 0;
  for (std::size_t s = 0; s < roots_.size(); ++s) ones += evaluate_syndrome(s, bits);
  return SignedDecision::from_votes(ones, roots_.size());
}

SignedDecision SyndromeComplex::evaluate(const std::map<std::size_t, Bit>& by_index) const {
  BitVector bits(features_.size());
  for (std::size_t s = 0; s < features_.size(); ++s) {
    auto it = by_index.find(features_[s].index);
    if (it == by_index.end()) {
      throw EvaluationError("feature '" + features_[s].name() + "' (x" + std::to_string(features_[s].index) +
                            ") is unassigned");
    }
    bits[s] = it->second & 1;
  }
  return evaluate(bits);
}

SignedDecision SyndromeComplex::classify(const std::map<std::string, std::string, std::less<>>& row) const {
  BitVector bits(features_.size());
  for (std::size_t s = 0; s < features_.size(); ++s) {
    auto it = row.find(features_[s].name());
    if (it == row.end() || trim(it->second).empty()) {
      throw EvaluationError("missing value for feature '" + features_[s].name() + "'");
    }
    bits[s] = features_[s].encoder.encode(std::string_view(it->second));
  }
  return evaluate(bits);
}

std::string SyndromeComplex::expression(std::size_t s) const {
  auto render = [&](auto&& self, std::size_t node) -> std::string {
    const Node& n = nodes_[node];
    if (n.kind == Node::Kind::feature) return features_[n.slot].name();
    return to_string(n.fn) + "(" + self(self, n.left) + ", " + self(self, n.right) + ")";
  };
  return render(render, roots_.at(s));
}

SyndromeComplex make_complex(const FormulaTable& table) {
  using Node = SyndromeComplex::Node;
  // Referenced features, ascending by index.
  std::set<std::size_t> referenced;
  std::vector<std::vector<bool>> live(table.layers.size());
  for (std::size_t r = 0; r < table.layers.size(); ++r) live[r].assign(table.layers[r].size(), false);
  live.back().assign(table.layers.back().size(), true);
  for (std::size_t r = table.layers.size(); r-- > 0;) {
    for (std::size_t u = 0; u < table.layers[r].size(); ++u) {
      if (!live[r][u]) continue;
      const FormulaRow& row = table.layers[r][u];
      referenced.insert(row.right);
      if (r == 0) {
        referenced.insert(row.left);
        continue;
      }
      const auto& prev = table.layers[r - 1];
      auto it = std::ranges::find(prev, row.left, &FormulaRow::id);
      if (it == prev.end()) {
        throw ModelError(0, "dangling reference y" + std::to_string(row.left) + " in layer " + std::to_string(r + 1));
      }
      live[r - 1][static_cast<std::size_t>(it - prev.begin())] = true;
    }
  }

  std::vector<FeatureDecl> features;
  std::map<std::size_t, std::size_t> slot_of;
  for (std::size_t index : referenced) {
    const FeatureDecl* decl = table.find_feature(index);
    if (!decl) throw ModelError(0, "undeclared feature x" + std::to_string(index));
    slot_of[index] = features.size();
    features.push_back(*decl);
  }

  std::vector<Node> nodes;
  std::map<std::size_t, std::size_t> leaf_node;
  auto leaf = [&](std::size_t index) {
    auto [it, inserted] = leaf_node.try_emplace(index, nodes.size());
    if (inserted) nodes.push_back(Node{Node::Kind::feature, slot_of.at(index), {}, 0, 0});
    return it->second;
  };
  // node index of each live unit, per layer
  std::vector<std::map<std::size_t, std::size_t>> unit_node(table.layers.size());
  for (std::size_t r = 0; r < table.layers.size(); ++r) {
    for (std::size_t u = 0; u < table.layers[r].size(); ++u) {
      if (!live[r][u]) continue;
      const FormulaRow& row = table.layers[r][u];
      const std::size_t left = r == 0 ? leaf(row.left) : unit_node[r - 1].at(row.left);
      const std::size_t right = leaf(row.right);
      unit_node[r][row.id] = nodes.size();
      nodes.push_back(Node{Node::Kind::function, 0, row.fn, left, right});
    }
  }
  std::vector<std::size_t> roots;
  for (const FormulaRow& row : table.layers.back()) roots.push_back(unit_node.back().at(row.id));
  return SyndromeComplex(std::move(nodes), std::move(roots), std::move(features), table.class_names);
}

SyndromeComplex extract(const Network& net) { return make_complex(to_formula_table(net)); }

std::pair<std::size_t, std::size_t> decision_levels(const SyndromeComplex& sc) {
  return {sc.size() / 2 + 1, sc.size()};
}

}  // namespace logicnet
