#include "logicnet/tabulate.hpp"

#include <algorithm>
#include <sstream>

#include "logicnet/csv.hpp"
#include "logicnet/decision.hpp"
#include "logicnet/errors.hpp"

namespace logicnet {

namespace {

std::string bits_of(std::size_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1) s[i] = '1';
  }
  return s;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

}  // namespace

DiagnosticTable make_table(const SyndromeComplex& sc, std::span<const std::string> row_features,
                           std::span<const std::string> col_features) {
  const std::size_t a = row_features.size();
  const std::size_t b = col_features.size();
  if (a + b > kMaxTableFeatures) {
    throw TableError("table over " + std::to_string(a + b) + " features exceeds the limit of " +
                     std::to_string(kMaxTableFeatures));
  }
  std::vector<std::size_t> slots;
  std::vector<bool> used(sc.features().size(), false);
  DiagnosticTable table;
  table.syndromes = sc.size();
  auto resolve = [&](const std::string& token, std::vector<std::string>& names) {
    const auto slot = sc.find_feature(token);
    if (!slot) throw TableError("feature '" + token + "' is not referenced by the rule");
    if (used[*slot]) throw TableError("feature '" + token + "' appears more than once in the split");
    used[*slot] = true;
    slots.push_back(*slot);
    names.push_back(sc.features()[*slot].name());
  };
  for (const auto& f : row_features) resolve(f, table.row_features);
  for (const auto& f : col_features) resolve(f, table.col_features);
  for (std::size_t s = 0; s < used.size(); ++s) {
    if (!used[s]) throw TableError("feature '" + sc.features()[s].name() + "' is missing from the split");
  }

  const std::size_t total = a + b;
  table.cells.resize(std::size_t{1} << total);
  BitVector bits(sc.features().size());
  for (std::size_t code = 0; code < table.cells.size(); ++code) {
    // the combined code is row bits followed by column bits, so it equals r * cols + c
    for (std::size_t i = 0; i < total; ++i) bits[slots[i]] = (code >> (total - 1 - i)) & 1;
    table.cells[code] = sc.evaluate(bits).value();
  }
  return table;
}

std::vector<std::pair<std::size_t, std::size_t>> detect_contradictions(const DiagnosticTable& t) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (t.at(r, c) == 0) out.emplace_back(r, c);
    }
  }
  return out;
}

std::string render(const DiagnosticTable& t, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::csv) {
    std::vector<std::string> header = t.row_features;
    const std::string col_key = join(t.col_features, '|') + "=";
    for (std::size_t c = 0; c < t.cols(); ++c) header.push_back(col_key + bits_of(c, t.col_features.size()));
    write_csv_row(out, header);
    for (std::size_t r = 0; r < t.rows(); ++r) {
      std::vector<std::string> fields;
      const std::string rb = bits_of(r, t.row_features.size());
      for (char ch : rb) fields.emplace_back(1, ch);
      for (std::size_t c = 0; c < t.cols(); ++c) fields.push_back(std::to_string(t.at(r, c)));
      write_csv_row(out, fields);
    }
    return out.str();
  }

  std::size_t cell_width = 2;
  for (long v : t.cells) cell_width = std::max(cell_width, format_signed(v).size());
  ++cell_width;
  const std::string row_header = join(t.row_features, ' ');
  std::size_t left = row_header.size();
  for (const auto& f : t.col_features) left = std::max(left, f.size());

  auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };
  auto pad_right = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };

  for (std::size_t i = 0; i < t.col_features.size(); ++i) {
    out << pad_left(t.col_features[i], left) << " |";
    for (std::size_t c = 0; c < t.cols(); ++c) {
      out << pad_left(std::to_string((c >> (t.col_features.size() - 1 - i)) & 1), cell_width);
    }
    out << '\n';
  }
  out << pad_right(row_header, left) << " |\n";
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::string bits;
    for (std::size_t i = 0; i < t.row_features.size(); ++i) {
      if (i) bits += ' ';
      bits += pad_left(std::to_string((r >> (t.row_features.size() - 1 - i)) & 1), t.row_features[i].size());
    }
    out << pad_right(bits, left) << " |";
    for (std::size_t c = 0; c < t.cols(); ++c) out << pad_left(format_signed(t.at(r, c)), cell_width);
    out << '\n';
  }
  return out.str();
}

DiagnosticTable parse_table_csv(std::string_view text, std::size_t syndromes) {
  std::istringstream in{std::string(text)};
  const CsvTable csv = read_csv(in);
  DiagnosticTable t;
  t.syndromes = syndromes;
  std::string col_key;
  std::size_t first_cell = csv.header.size();
  for (std::size_t i = 0; i < csv.header.size(); ++i) {
    const auto eq = csv.header[i].rfind('=');
    if (eq != std::string::npos) {
      col_key = csv.header[i].substr(0, eq);
      first_cell = i;
      break;
    }
    t.row_features.push_back(csv.header[i]);
  }
  if (first_cell == csv.header.size()) throw TableError("table csv has no column headers");
  std::size_t start = 0;
  while (start <= col_key.size() && !col_key.empty()) {
    const auto bar = col_key.find('|', start);
    t.col_features.push_back(col_key.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (csv.header.size() - first_cell != t.cols() || csv.rows.size() != t.rows()) {
    throw TableError("table csv shape does not match its feature headers");
  }
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    if (row.size() != csv.header.size()) throw TableError("ragged table csv row " + std::to_string(r + 1));
    std::string row_bits;
    for (std::size_t i = 0; i < first_cell; ++i) row_bits += trim(row[i]);
    if (row_bits != bits_of(r, first_cell)) {
      throw TableError("table csv row " + std::to_string(r + 1) + " is out of order");
    }
    for (std::size_t c = first_cell; c < row.size(); ++c) {
      const auto v = parse_number(row[c]);
      if (!v || *v != static_cast<double>(static_cast<long>(*v))) {
        throw TableError("bad table cell '" + row[c] + "'");
      }
      t.cells.push_back(static_cast<long>(*v));
    }
  }
  return t;
}

std::pair<std::vector<std::string>, std::vector<std::string>> default_split(const SyndromeComplex& sc) {
  std::pair<std::vector<std::string>, std::vector<std::string>> split;
  const std::size_t rows = (sc.features().size() + 1) / 2;
  for (std::size_t s = 0; s < sc.features().size(); ++s) {
    (s < rows ? split.first : split.second).push_back(sc.features()[s].name());
  }
  return split;
}

}  // namespace logicnet
