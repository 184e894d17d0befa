#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "logicnet/csv.hpp"
#include "logicnet/dataset.hpp"
#include "logicnet/errors.hpp"
#include "logicnet/network.hpp"
#include "logicnet/oracle.hpp"
#include "logicnet/rules.hpp"
#include "logicnet/tabulate.hpp"
#include "validate.hpp"

namespace logicnet::cli {

namespace {

using nlohmann::json;

// Knobs of every command. Defaults here are the documented ones; a config file (sections named
// after the commands) fills in values the command line leaves out.
struct RunConfig {
  std::string input;
  std::string input2;
  std::string output;
  std::string report;

  std::string label_column = "label";
  std::vector<std::string> class_names;
  std::vector<std::string> kinds;
  char delimiter = ',';
  bool drop_missing = false;

  std::size_t beam = TrainConfig{}.beam_width;
  std::size_t max_layers = TrainConfig{}.max_layers;
  std::size_t patience = TrainConfig{}.patience;
  bool extended_catalog = false;
  std::string syndromes = "best";

  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::string format = "text";
  bool check_contradictions = false;
  std::string export_to = "formulas";

  std::string fixture_dir = "fixtures";

  std::uint64_t seed = 1;
  std::size_t gen_features = 24;
  std::size_t gen_rows = 35;
  std::size_t gen_syndromes = 3;
  std::size_t gen_threshold = 0;
  std::size_t gen_noise = 0;
};

// Writes to `path`, or to `fallback` when the path is empty or "-".
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError(DataErrorKind::io, "cannot write '" + path + "'");
  body(file);
  if (!file) throw DataError(DataErrorKind::io, "error while writing '" + path + "'");
}

LoadOptions load_options(const RunConfig& rc) {
  LoadOptions opts;
  opts.label_column = rc.label_column;
  opts.delimiter = rc.delimiter;
  opts.missing = rc.drop_missing ? MissingPolicy::drop_row : MissingPolicy::reject;
  if (!rc.class_names.empty()) {
    if (rc.class_names.size() != 2) throw CLI::ValidationError("--classes", "expects exactly two names");
    opts.class_names = std::array<std::string, 2>{rc.class_names[0], rc.class_names[1]};
  }
  for (const auto& spec : rc.kinds) {
    const auto eq = spec.find('=');
    const auto kind = eq == std::string::npos ? std::nullopt : parse_feature_kind(spec.substr(eq + 1));
    if (!kind) throw CLI::ValidationError("--kind", "expected NAME=quantitative|boolean|nominal, got '" + spec + "'");
    opts.kind_overrides[spec.substr(0, eq)] = *kind;
  }
  return opts;
}

TrainConfig train_config(const RunConfig& rc) {
  TrainConfig cfg;
  cfg.beam_width = rc.beam;
  cfg.max_layers = rc.max_layers;
  cfg.patience = rc.patience;
  cfg.extended_catalog = rc.extended_catalog;
  cfg.syndromes = rc.syndromes == "all" ? SyndromeSelection::whole_layer : SyndromeSelection::best;
  return cfg;
}

FormulaTable load_model(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_formula_table(text);
  } catch (const ModelError& e) {
    throw ModelError(0, path + ": " + e.what());
  }
}

std::string describe_encoder(const Encoder& enc) {
  std::ostringstream out;
  out << std::left << std::setw(20) << enc.feature << ' ' << std::setw(12) << to_string(enc.kind);
  if (enc.degenerate) {
    out << " degenerate (constant)";
  } else if (enc.kind == FeatureKind::nominal) {
    out << " category=" << enc.category << " h=" << int{enc.polarity};
  } else if (enc.kind == FeatureKind::quantitative) {
    out << " u=" << format_number(enc.threshold) << " h=" << int{enc.polarity};
  } else {
    out << " h=" << int{enc.polarity};
  }
  if (enc.error) out << " e=" << *enc.error;
  return out.str();
}

void cmd_train(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const Dataset ds = load_csv(std::filesystem::path(rc.input), load_options(rc), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  const auto start = std::chrono::steady_clock::now();
  const Network net = train(ds, train_config(rc));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  emit(rc.output, out, [&](std::ostream& o) { o << formula_text(net); });

  const bool model_on_stdout = rc.output.empty() || rc.output == "-";
  std::ostream& report_fallback = model_on_stdout ? err : out;
  emit(rc.report, report_fallback, [&](std::ostream& o) {
    const auto [n0, n1] = class_counts(ds);
    o << "rows " << ds.size() << ", features " << ds.feature_count() << ", classes " << ds.class_names()[0] << " ("
      << n0 << ") / " << ds.class_names()[1] << " (" << n1 << ")\n";
    o << "features:\n";
    for (const auto& enc : net.encoders()) o << "  " << describe_encoder(enc) << '\n';
    o << "layers:\n";
    for (std::size_t r = 0; r < net.layers().size(); ++r) {
      o << "  " << r + 1 << ": " << net.layers()[r].size() << " units, min error " << net.layers()[r].min_error()
        << '\n';
    }
    const SyndromeComplex sc = extract(net);
    const auto [n1_level, n] = decision_levels(sc);
    o << "syndromes: N = " << n << ", decisions at M = " << n1_level << ".." << n << '\n';
    o << "inputs:";
    for (const auto& f : sc.features()) o << ' ' << f.name();
    o << '\n';
    o << "stop: " << to_string(net.stop_reason()) << '\n';
    o << "training error: " << net.training_error() << "/" << ds.size() << '\n';
    o << "time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
  });
}

// Column of each referenced feature in the CSV header: by name first, then as "x<index>".
std::vector<std::size_t> locate_columns(const SyndromeComplex& sc, const std::vector<std::string>& header) {
  std::vector<std::size_t> where;
  for (const auto& f : sc.features()) {
    std::optional<std::size_t> hit;
    for (const std::string& key : {f.name(), "x" + std::to_string(f.index)}) {
      for (std::size_t c = 0; c < header.size() && !hit; ++c) {
        if (trim(header[c]) == key) hit = c;
      }
      if (hit) break;
    }
    if (!hit) throw DataError(DataErrorKind::unknown_feature, "input has no column for feature '" + f.name() + "'");
    where.push_back(*hit);
  }
  return where;
}

void cmd_classify(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const SyndromeComplex sc = make_complex(load_model(rc.input));
  std::istringstream in(read_text_file(rc.input2));
  const CsvTable csv = read_csv(in, rc.delimiter);
  if (csv.header.empty()) return;
  const auto columns = locate_columns(sc, csv.header);

  std::size_t ties = 0;
  emit(rc.output, out, [&](std::ostream& o) {
    const bool as_csv = rc.format == "csv";
    if (as_csv) {
      const std::vector<std::string> header{"row", "class", "decision", "votes", "syndromes", "confidence",
                                            "membership_" + sc.class_names()[0], "membership_" + sc.class_names()[1]};
      write_csv_row(o, header);
    }
    for (std::size_t t = 0; t < csv.rows.size(); ++t) {
      const auto& row = csv.rows[t];
      std::map<std::string, std::string, std::less<>> values;
      for (std::size_t s = 0; s < columns.size(); ++s) {
        if (columns[s] >= row.size()) {
          throw DataError(DataErrorKind::ragged_row, "line " + std::to_string(csv.lines[t]) + ": too few fields");
        }
        values[sc.features()[s].name()] = row[columns[s]];
      }
      SignedDecision d;
      try {
        d = sc.classify(values);
      } catch (const Error& e) {
        throw EvaluationError("line " + std::to_string(csv.lines[t]) + ": " + e.what());
      }
      const std::string cls = d.label() ? sc.class_names()[*d.label()] : "contradictory";
      ties += d.contradictory();
      if (as_csv) {
        const std::vector<std::string> fields{std::to_string(t + 1),
                                              cls,
                                              format_signed(d.value()),
                                              std::to_string(d.winner_votes()),
                                              std::to_string(d.total()),
                                              format_number(d.confidence()),
                                              format_number(d.membership(0)),
                                              format_number(d.membership(1))};
        write_csv_row(o, fields);
      } else {
        o << cls << ", " << format_signed(d.value()) << ", " << d.winner_votes() << "/" << d.total() << '\n';
      }
    }
  });
  if (ties) err << ties << " contradictory row(s): syndrome votes tie\n";
}

std::vector<std::string> complement(const SyndromeComplex& sc, const std::vector<std::string>& taken) {
  std::vector<bool> used(sc.features().size(), false);
  for (const auto& token : taken) {
    if (auto slot = sc.find_feature(token)) used[*slot] = true;
  }
  std::vector<std::string> rest;
  for (std::size_t s = 0; s < used.size(); ++s) {
    if (!used[s]) rest.push_back(sc.features()[s].name());
  }
  return rest;
}

int cmd_tabulate(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const SyndromeComplex sc = make_complex(load_model(rc.input));
  auto [rows, cols] = default_split(sc);
  if (!rc.rows.empty() || !rc.cols.empty()) {
    rows = rc.rows.empty() ? complement(sc, rc.cols) : rc.rows;
    cols = rc.cols.empty() ? complement(sc, rc.rows) : rc.cols;
  }
  const DiagnosticTable table = make_table(sc, rows, cols);
  emit(rc.output, out,
       [&](std::ostream& o) { o << render(table, rc.format == "csv" ? TableFormat::csv : TableFormat::text); });
  const auto ties = detect_contradictions(table);
  if (!ties.empty()) {
    err << ties.size() << " contradictory cell(s):";
    for (const auto& [r, c] : ties) err << " (" << r << "," << c << ")";
    err << '\n';
    if (rc.check_contradictions) return exit_validation;
  }
  return exit_ok;
}

json to_json(const FormulaTable& table) {
  json j;
  j["comments"] = table.comments;
  j["classes"] = table.class_names;
  j["features"] = json::array();
  for (const auto& f : table.features) {
    const Encoder& e = f.encoder;
    json jf{{"name", e.feature}, {"x", f.index}, {"kind", to_string(e.kind)}, {"h", int{e.polarity}}};
    if (e.kind == FeatureKind::quantitative && !e.degenerate) jf["u"] = e.threshold;
    if (e.kind == FeatureKind::nominal) jf["category"] = e.category;
    if (e.error) jf["e"] = *e.error;
    if (e.degenerate) jf["degenerate"] = true;
    j["features"].push_back(jf);
  }
  j["layers"] = json::array();
  for (const auto& layer : table.layers) {
    json jl = json::array();
    for (const auto& row : layer) jl.push_back({row.id, row.fn.value, row.left, row.right});
    j["layers"].push_back(jl);
  }
  const SyndromeComplex sc = make_complex(table);
  const auto [n1, n] = decision_levels(sc);
  j["syndromes"] = json::array();
  for (std::size_t s = 0; s < sc.size(); ++s) j["syndromes"].push_back(sc.expression(s));
  j["decision_levels"] = {n1, n};
  return j;
}

FormulaTable from_json(const json& j) {
  FormulaTable table;
  if (j.contains("comments")) table.comments = j.at("comments").get<std::vector<std::string>>();
  if (j.contains("classes")) table.class_names = j.at("classes").get<std::array<std::string, 2>>();
  for (const auto& jf : j.at("features")) {
    FeatureDecl f;
    f.index = jf.at("x").get<std::size_t>();
    f.encoder.feature = jf.at("name").get<std::string>();
    const auto kind = parse_feature_kind(jf.at("kind").get<std::string>());
    if (!kind) throw ModelError(0, "feature '" + f.encoder.feature + "' has an unknown kind");
    f.encoder.kind = *kind;
    f.encoder.polarity = static_cast<Bit>(jf.at("h").get<int>() != 0);
    if (jf.contains("u")) f.encoder.threshold = jf.at("u").get<double>();
    if (*kind == FeatureKind::boolean) f.encoder.threshold = 0.5;
    if (jf.contains("category")) f.encoder.category = jf.at("category").get<std::string>();
    if (jf.contains("e")) f.encoder.error = jf.at("e").get<std::size_t>();
    f.encoder.degenerate = jf.value("degenerate", false);
    table.features.push_back(std::move(f));
  }
  for (const auto& jl : j.at("layers")) {
    std::vector<FormulaRow> layer;
    for (const auto& jr : jl) {
      const auto v = jr.get<std::array<std::size_t, 4>>();
      layer.push_back({v[0], FunctionId{static_cast<int>(v[1])}, v[2], v[3]});
    }
    table.layers.push_back(std::move(layer));
  }
  return table;
}

void cmd_export(const RunConfig& rc, std::ostream& out) {
  const FormulaTable table = load_model(rc.input);
  emit(rc.output, out, [&](std::ostream& o) {
    if (rc.export_to == "json") {
      o << to_json(table).dump(2) << '\n';
    } else if (rc.export_to == "expressions") {
      const SyndromeComplex sc = make_complex(table);
      const auto [n1, n] = decision_levels(sc);
      o << "M-of-N with N = " << n << "; a class wins with M >= " << n1 << " votes\n";
      o << "a syndrome equal to 0 votes " << sc.class_names()[0] << ", equal to 1 votes " << sc.class_names()[1]
        << '\n';
      for (std::size_t s = 0; s < sc.size(); ++s) o << "s" << s + 1 << " = " << sc.expression(s) << '\n';
    } else {
      o << print_formula_table(table);
    }
  });
}

void cmd_import(const RunConfig& rc, std::ostream& out) {
  const std::string text = read_text_file(rc.input);
  FormulaTable table;
  try {
    table = from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ModelError(0, rc.input + ": " + e.what());
  }
  // Round trip through the text parser so imported models meet the same checks as model files.
  const std::string model = print_formula_table(table);
  try {
    parse_formula_table(model);
  } catch (const ModelError& e) {
    throw ModelError(0, rc.input + ": " + e.what());
  }
  emit(rc.output, out, [&](std::ostream& o) { o << model; });
}

int cmd_validate(const RunConfig& rc, std::ostream& out) {
  const ValidationReport report = validate_fixtures(rc.fixture_dir);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  return report.passed() ? exit_ok : exit_validation;
}

void cmd_gen(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  oracle::PlantedRuleSpec spec;
  spec.seed = rc.seed;
  spec.features = rc.gen_features;
  spec.rows = rc.gen_rows;
  spec.syndromes = rc.gen_syndromes;
  if (rc.gen_threshold) spec.vote_threshold = rc.gen_threshold;
  spec.noise = rc.gen_noise;
  const oracle::PlantedDataset planted = oracle::generate_planted(spec);
  emit(rc.output, out, [&](std::ostream& o) { write_csv(planted.dataset, o, rc.label_column, rc.delimiter); });
  err << "planted rule: label 1 iff at least " << planted.vote_threshold << " of";
  for (const auto& s : planted.rule) err << " g" << s.fn << "(f" << s.left << ", f" << s.right << ")";
  err << " output 1";
  if (spec.noise) err << "; " << spec.noise << " label(s) flipped";
  err << '\n';
}

int exit_code_for(const DataError& e) {
  return e.kind() == DataErrorKind::io ? exit_io : exit_data;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Logic network classifier: train, tabulate and apply M-of-N syndrome rules", "logicnet"};
  app.set_config("--config", "", "INI/TOML file with option defaults, one [section] per command")
      ->envname("LOGICNET_CONFIG");
  app.require_subcommand(1);
  app.fallthrough();

  auto add_csv_options = [&](CLI::App* cmd) {
    cmd->add_option("--label", rc.label_column, "Name of the class label column")->capture_default_str();
    cmd->add_option("--delimiter", rc.delimiter, "CSV field delimiter")->capture_default_str();
  };

  auto* train_cmd = app.add_subcommand("train", "Train a network on a labelled CSV and write its model file");
  train_cmd->add_option("data", rc.input, "Training CSV")->required();
  train_cmd->add_option("-o,--output", rc.output, "Model file (default: standard output)");
  train_cmd->add_option("--report", rc.report, "Training report file (default: standard output, or standard error "
                                               "when the model goes to standard output)");
  add_csv_options(train_cmd);
  train_cmd->add_option("--classes", rc.class_names, "Label texts of class 0 and class 1, e.g. IE,SRL")
      ->delimiter(',')
      ->expected(2);
  train_cmd->add_option("--kind", rc.kinds, "Override an inferred feature kind: NAME=quantitative|boolean|nominal");
  train_cmd->add_flag("--drop-missing", rc.drop_missing, "Drop rows with blank cells instead of rejecting the file");
  train_cmd->add_option("--beam", rc.beam, "Units kept per layer")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--max-layers", rc.max_layers, "Layer limit")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--patience", rc.patience, "Layers without improvement before stopping")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  train_cmd->add_flag("--extended-catalog", rc.extended_catalog, "Also try g1(a, b) = a AND NOT b");
  train_cmd->add_option("--syndromes", rc.syndromes, "Final-layer units that vote: best (minimum error) or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"best", "all"}));

  auto* classify_cmd = app.add_subcommand("classify", "Apply a model to every row of a CSV");
  classify_cmd->add_option("model", rc.input, "Model file")->required();
  classify_cmd->add_option("data", rc.input2, "CSV with one column per model feature")->required();
  classify_cmd->add_option("-o,--output", rc.output, "Output file (default: standard output)");
  classify_cmd->add_option("--format", rc.format, "text or csv")->capture_default_str()->check(
      CLI::IsMember({"text", "csv"}));
  classify_cmd->add_option("--delimiter", rc.delimiter, "CSV field delimiter")->capture_default_str();

  auto* tabulate_cmd = app.add_subcommand("tabulate", "Print the diagnostic table of a model");
  tabulate_cmd->add_option("model", rc.input, "Model file")->required();
  tabulate_cmd->add_option("--rows", rc.rows, "Row features, most significant first")->delimiter(',');
  tabulate_cmd->add_option("--cols", rc.cols, "Column features, most significant first")->delimiter(',');
  tabulate_cmd->add_option("--format", rc.format, "text or csv")->capture_default_str()->check(
      CLI::IsMember({"text", "csv"}));
  tabulate_cmd->add_flag("--check-contradictions", rc.check_contradictions, "Exit 4 if any cell is a tie");
  tabulate_cmd->add_option("-o,--output", rc.output, "Output file (default: standard output)");

  auto* export_cmd = app.add_subcommand("export", "Re-emit a model as canonical formulas, JSON or expressions");
  export_cmd->add_option("model", rc.input, "Model file")->required();
  export_cmd->add_option("--to", rc.export_to, "formulas, json or expressions")
      ->capture_default_str()
      ->check(CLI::IsMember({"formulas", "json", "expressions"}));
  export_cmd->add_option("-o,--output", rc.output, "Output file (default: standard output)");

  auto* import_cmd = app.add_subcommand("import", "Turn a JSON export back into a model file");
  import_cmd->add_option("json", rc.input, "JSON model")->required();
  import_cmd->add_option("-o,--output", rc.output, "Model file (default: standard output)");

  auto* validate_cmd = app.add_subcommand("validate", "Check the shipped fixture models against their tables");
  validate_cmd->add_option("dir", rc.fixture_dir, "Fixture directory")->capture_default_str();

  auto* gen_cmd = app.add_subcommand("gen", "Generate a CSV labelled by a hidden M-of-N rule");
  gen_cmd->add_option("--seed", rc.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--features", rc.gen_features, "Number of features")->capture_default_str();
  gen_cmd->add_option("--rows", rc.gen_rows, "Number of rows")->capture_default_str();
  gen_cmd->add_option("--syndromes", rc.gen_syndromes, "N of the hidden rule")->capture_default_str();
  gen_cmd->add_option("--threshold", rc.gen_threshold, "M of the hidden rule (default: smallest majority)");
  gen_cmd->add_option("--noise", rc.gen_noise, "Labels to flip")->capture_default_str();
  gen_cmd->add_option("-o,--output", rc.output, "Output CSV (default: standard output)");
  add_csv_options(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*train_cmd) {
      cmd_train(rc, out, err);
    } else if (*classify_cmd) {
      cmd_classify(rc, out, err);
    } else if (*tabulate_cmd) {
      return cmd_tabulate(rc, out, err);
    } else if (*export_cmd) {
      cmd_export(rc, out);
    } else if (*import_cmd) {
      cmd_import(rc, out);
    } else if (*validate_cmd) {
      return cmd_validate(rc, out);
    } else if (*gen_cmd) {
      cmd_gen(rc, out, err);
    }
    return exit_ok;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const EncodingError& e) {
    err << "data error: " << e.what() << '\n';
    return exit_data;
  } catch (const EvaluationError& e) {
    err << "data error: " << e.what() << '\n';
    return exit_data;
  } catch (const DimensionError& e) {
    err << "data error: " << e.what() << '\n';
    return exit_data;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return exit_model;
  } catch (const CatalogMiss& e) {
    err << "model error: " << e.what() << '\n';
    return exit_model;
  } catch (const TableError& e) {
    err << "table error: " << e.what() << '\n';
    return exit_usage;
  } catch (const TrainingError& e) {
    err << "training failed: " << e.what() << '\n';
    return exit_training;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace logicnet::cli
