#include "validate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "logicnet/csv.hpp"
#include "logicnet/errors.hpp"
#include "logicnet/oracle.hpp"
#include "logicnet/rules.hpp"
#include "logicnet/tabulate.hpp"

namespace logicnet::cli {

namespace {

namespace fs = std::filesystem;

struct Fixture {
  std::string file;
  std::optional<SyndromeComplex> complex;
  std::optional<FormulaTable> table;
};

std::string cell_name(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

std::string describe_mismatches(const DiagnosticTable& got, const DiagnosticTable& want) {
  std::ostringstream out;
  std::size_t same = 0;
  std::vector<std::string> diffs;
  for (std::size_t r = 0; r < want.rows(); ++r) {
    for (std::size_t c = 0; c < want.cols(); ++c) {
      if (got.at(r, c) == want.at(r, c)) {
        ++same;
      } else {
        diffs.push_back(cell_name(r, c) + " computed " + format_signed(got.at(r, c)) + " printed " +
                        format_signed(want.at(r, c)));
      }
    }
  }
  out << same << "/" << want.cells.size() << " cells agree";
  for (const auto& d : diffs) out << "; " << d;
  return out.str();
}

std::size_t agreeing_cells(const DiagnosticTable& got, const DiagnosticTable& want) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < want.cells.size(); ++i) same += got.cells[i] == want.cells[i];
  return same;
}

class Validator {
 public:
  explicit Validator(fs::path dir) : dir_(std::move(dir)) {}

  ValidationReport run() {
    if (!fs::is_directory(dir_)) {
      throw DataError(DataErrorKind::io, "fixture directory '" + dir_.string() + "' does not exist");
    }
    Fixture srl = load("ie_srl.model");
    Fixture ar = load("ie_ar.model");
    Fixture comp = load("complications.model");
    const std::string srl_csv = read_text_file(dir_ / "ie_srl_table.csv");
    const std::string ar_csv = read_text_file(dir_ / "ie_ar_table.csv");

    if (srl.complex) check_ie_srl(*srl.table, *srl.complex, srl_csv);
    if (ar.complex) check_ie_ar(*ar.table, *ar.complex, ar_csv);
    if (comp.complex) check_complications(*comp.table, *comp.complex);
    for (const Fixture* f : {&srl, &ar, &comp}) {
      if (f->complex) check_coherence(f->file, *f->complex);
    }
    return std::move(report_);
  }

 private:
  Fixture load(const std::string& file) {
    Fixture f{file, std::nullopt, std::nullopt};
    const std::string text = read_text_file(dir_ / file);
    try {
      f.table = parse_formula_table(text);
      f.complex = make_complex(*f.table);
      add(file + " parses", true, std::to_string(f.table->layers.size()) + " layers, N = " +
                                      std::to_string(f.complex->size()));
    } catch (const ModelError& e) {
      add(file + " parses", false, file + ":" + e.what());
    }
    return f;
  }

  void add(std::string name, bool passed, std::string detail) {
    report_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

  // Runs `body`, turning a library error into a failed check.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      add(name, false, e.what());
    }
  }

  void check_ie_srl(const FormulaTable& table, const SyndromeComplex& sc, const std::string& csv) {
    guarded("ie_srl anchors", [&] {
      std::map<std::size_t, Bit> z;
      for (const auto& f : sc.features()) z[f.index] = 0;
      const SignedDecision origin = sc.evaluate(z);
      z[2] = z[5] = 1;
      const SignedDecision worked = sc.evaluate(z);
      const SignedDecision raw = sc.classify({{"leukocytes", "5.0"},
                                              {"immune_complexes", "100"},
                                              {"articular_syndrome", "0"},
                                              {"anhelation", "0"},
                                              {"skin_erythema", "0"},
                                              {"heart_noises", "0"},
                                              {"hepatomegaly", "0"},
                                              {"myocarditis", "0"}});
      const bool ok = table.layers.size() == 2 && sc.size() == 9 && worked.value() == 6 &&
                      origin.value() == 7 && raw == worked;
      add("ie_srl anchors", ok,
          "N = " + std::to_string(sc.size()) + ", (1,1,0,0,0,0,0,0) -> " + to_string(worked) +
              ", all zero -> " + to_string(origin) + ", raw row -> " + to_string(raw));
    });
    guarded("ie_srl table", [&] {
      const std::vector<std::string> rows{"leukocytes", "immune_complexes", "articular_syndrome", "anhelation"};
      const std::vector<std::string> cols{"skin_erythema", "heart_noises", "hepatomegaly", "myocarditis"};
      const DiagnosticTable got = make_table(sc, rows, cols);
      const DiagnosticTable want = parse_table_csv(csv, sc.size());
      if (got.row_features != want.row_features || got.col_features != want.col_features) {
        add("ie_srl table", false, "transcription headers do not match the fixture features");
        return;
      }
      const bool bounded = std::ranges::all_of(got.cells, [](long v) { return std::labs(v) >= 5 && std::labs(v) <= 9; });
      const bool close = agreeing_cells(got, want) * 100 >= want.cells.size() * 95;
      add("ie_srl table", bounded && close,
          std::string(bounded ? "" : "a cell falls outside [5, 9]; ") + describe_mismatches(got, want));
    });
  }

  void check_ie_ar(const FormulaTable& table, const SyndromeComplex& sc, const std::string& csv) {
    guarded("ie_ar table", [&] {
      const std::vector<std::string> rows{"x9", "x10", "x12"};
      const std::vector<std::string> cols{"x19", "x20", "x22"};
      const DiagnosticTable got = make_table(sc, rows, cols);
      const DiagnosticTable want = parse_table_csv(csv, sc.size());
      const auto ties = detect_contradictions(got);
      const bool ok = table.layers.size() == 4 && sc.size() == 18 && ties.empty() && got.at(0, 0) == 18;
      add("ie_ar structure", ok,
          std::to_string(table.layers.size()) + " layers, N = " + std::to_string(sc.size()) + ", " +
              std::to_string(ties.size()) + " contradictory cells, origin " + format_signed(got.at(0, 0)));
      const bool close = agreeing_cells(got, want) * 100 >= want.cells.size() * 95;
      add("ie_ar table", close, describe_mismatches(got, want));
    });
  }

  void check_complications(const FormulaTable& table, const SyndromeComplex& sc) {
    std::vector<std::size_t> used;
    for (const auto& f : sc.features()) used.push_back(f.index);
    const std::vector<std::size_t> expected{3, 4, 5, 6, 8, 9, 10};
    std::string list;
    for (std::size_t i : used) list += (list.empty() ? "x" : ", x") + std::to_string(i);
    add("complications structure", table.layers.size() == 2 && sc.size() == 22 && used == expected,
        std::to_string(table.layers.size()) + " layers, N = " + std::to_string(sc.size()) + ", inputs " + list);
  }

  // Complex evaluation, table lookup and the brute-force oracle agree on every assignment.
  void check_coherence(const std::string& file, const SyndromeComplex& sc) {
    const std::string name = file + " coherence";
    guarded(name, [&] {
      const std::size_t q = sc.features().size();
      if (q > oracle::kMaxExhaustiveFeatures) {
        add(name, true, "skipped: " + std::to_string(q) + " features");
        return;
      }
      const auto [rows, cols] = default_split(sc);
      const DiagnosticTable t = make_table(sc, rows, cols);
      const auto reference = oracle::exhaustive_decision_check(sc);
      std::size_t bad = 0;
      BitVector bits(q);
      for (std::size_t code = 0; code < reference.size(); ++code) {
        for (std::size_t s = 0; s < q; ++s) bits[s] = static_cast<Bit>((code >> (q - 1 - s)) & 1u);
        const SignedDecision d = sc.evaluate(bits);
        const std::size_t r = code >> cols.size();
        const std::size_t c = code & ((std::size_t{1} << cols.size()) - 1);
        bad += !(d == reference[code] && t.at(r, c) == d.value());
      }
      add(name, bad == 0,
          std::to_string(reference.size() - bad) + "/" + std::to_string(reference.size()) + " assignments agree");
    });
  }

  fs::path dir_;
  ValidationReport report_;
};

}  // namespace

bool ValidationReport::passed() const {
  return std::ranges::all_of(checks, &CheckResult::passed);
}

ValidationReport validate_fixtures(const std::filesystem::path& dir) {
  return Validator(dir).run();
}

}  // namespace logicnet::cli
