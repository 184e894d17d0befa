#include <doctest.h>

#include <map>
#include <string>

#include "logicnet/csv.hpp"
#include "logicnet/errors.hpp"
#include "logicnet/network.hpp"
#include "logicnet/oracle.hpp"
#include "logicnet/rules.hpp"

using namespace logicnet;

namespace {

std::string fixture(const std::string& name) {
  return read_text_file(std::string(LOGICNET_FIXTURE_DIR) + "/" + name);
}

SyndromeComplex load(const std::string& name) { return make_complex(parse_formula_table(fixture(name))); }

std::size_t model_error_line(const std::string& text) {
  try {
    parse_formula_table(text);
  } catch (const ModelError& e) {
    return e.line();
  }
  FAIL("expected a ModelError");
  return 0;
}

const std::string kXor =
    "classes no yes\n"
    "feature a x=0 kind=boolean h=1\n"
    "feature b x=1 kind=boolean h=1\n"
    "layer 1\n"
    "1 5 0 1\n";

}  // namespace

TEST_CASE("worked example of the first fixture") {
  const SyndromeComplex sc = load("ie_srl.model");
  CHECK(sc.size() == 9);
  CHECK(sc.class_names() == std::array<std::string, 2>{"IE", "SRL"});
  std::map<std::size_t, Bit> z{{2, 1}, {5, 1}, {8, 0}, {11, 0}, {13, 0}, {14, 0}, {15, 0}, {16, 0}};
  const SignedDecision d = sc.evaluate(z);
  CHECK(d.label() == Bit{0});
  CHECK(d.value() == 6);
  CHECK(d.total() == 9);
  for (auto& [k, v] : z) v = 0;
  CHECK(sc.evaluate(z).value() == 7);
  // (1,0,1,0,0,0,0,0) lands in table row 1010, whose first cell is -9
  z[2] = 1;
  z[8] = 1;
  const long v = sc.evaluate(z).value();
  CHECK(std::labs(v) >= 5);
  CHECK(std::labs(v) <= 9);
  CHECK(v == -9);
  z.erase(16);
  CHECK_THROWS_AS(sc.evaluate(z), EvaluationError);
}

TEST_CASE("raw values go through the declared encoders") {
  const SyndromeComplex sc = load("ie_srl.model");
  std::map<std::string, std::string, std::less<>> row{
      {"leukocytes", "5.0"},   {"immune_complexes", "100"}, {"articular_syndrome", "0"}, {"anhelation", "0"},
      {"skin_erythema", "0"}, {"heart_noises", "0"},       {"hepatomegaly", "0"},        {"myocarditis", "0"}};
  CHECK(sc.classify(row).value() == 6);
  row["leukocytes"] = "7.0";
  row["immune_complexes"] = "150";
  CHECK(sc.classify(row).value() == 7);
  row.erase("myocarditis");
  CHECK_THROWS_AS(sc.classify(row), EvaluationError);
}

TEST_CASE("expressions unfold shared units") {
  const SyndromeComplex sc = load("ie_srl.model");
  CHECK(sc.expression(1) == "g0(g12(anhelation, leukocytes), articular_syndrome)");
  CHECK(sc.expression(0) == "g6(g3(hepatomegaly, skin_erythema), leukocytes)");
  CHECK(sc.expression(8) == "g10(g3(hepatomegaly, skin_erythema), heart_noises)");
  // y125 feeds two syndromes but is stored once
  std::size_t g3_nodes = 0;
  for (const auto& n : sc.nodes()) g3_nodes += n.kind == SyndromeComplex::Node::Kind::function && n.fn.value == 3;
  CHECK(g3_nodes == 1);
  CHECK(sc.find_feature("x11") == sc.find_feature("anhelation"));
  CHECK_FALSE(sc.find_feature("x3"));
}

TEST_CASE("layer counts of the other fixtures") {
  const FormulaTable ar = parse_formula_table(fixture("ie_ar.model"));
  CHECK(ar.layers.size() == 4);
  CHECK(ar.layers.back().size() == 18);
  CHECK(decision_levels(make_complex(ar)) == std::pair<std::size_t, std::size_t>{10, 18});

  const FormulaTable comp = parse_formula_table(fixture("complications.model"));
  CHECK(comp.layers.size() == 2);
  const SyndromeComplex sc = make_complex(comp);
  CHECK(sc.size() == 22);
  std::vector<std::size_t> used;
  for (const auto& f : sc.features()) used.push_back(f.index);
  CHECK(used == std::vector<std::size_t>{3, 4, 5, 6, 8, 9, 10});
  CHECK(decision_levels(load("ie_srl.model")) == std::pair<std::size_t, std::size_t>{5, 9});
}

TEST_CASE("decision level bounds a non-contradictory winner") {
  const SyndromeComplex xor1 = make_complex(parse_formula_table(kXor));
  CHECK(decision_levels(xor1) == std::pair<std::size_t, std::size_t>{1, 1});
  for (std::size_t n = 1; n <= 22; ++n) {
    const std::size_t n1 = n / 2 + 1;
    for (std::size_t ones = 0; ones <= n; ++ones) {
      const SignedDecision d = SignedDecision::from_votes(ones, n);
      CHECK((d.winner_votes() >= n1) == !d.contradictory());
    }
  }
}

TEST_CASE("parse errors carry a line number") {
  CHECK(model_error_line(kXor + "layer 2\n1 8 99 1\n") == 7);
  CHECK(model_error_line(kXor + "layer 2\n1 2 1 1\n") == 7);
  CHECK(model_error_line(kXor + "layer 2\n1 8 1 7\n") == 7);
  CHECK(model_error_line(kXor + "layer 2\n1 8 1 1\n1 0 1 0\n") == 8);
  CHECK(model_error_line(kXor + "layer 3\n") == 6);
  CHECK(model_error_line(kXor + "1 5 0\n") == 6);
  CHECK(model_error_line("layer 1\n1 5 0 1\n") == 2);
  try {
    parse_formula_table(kXor + "layer 2\n1 0 99 1\n");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("dangling") != std::string::npos);
  }
  try {
    parse_formula_table(kXor + "layer 2\n1 4 1 1\n");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("unknown function id") != std::string::npos);
  }
}

TEST_CASE("print and parse round trip") {
  for (const char* name : {"ie_srl.model", "ie_ar.model", "complications.model"}) {
    const FormulaTable t = parse_formula_table(fixture(name));
    const std::string canonical = print_formula_table(t);
    CHECK(print_formula_table(parse_formula_table(canonical)) == canonical);
    const FormulaTable back = parse_formula_table(canonical);
    CHECK(back.layers == t.layers);
    CHECK(back.comments == t.comments);
  }
  // whitespace does not matter
  const std::string loose = "  classes no  yes\nfeature a  x=0 kind=boolean h=1\nfeature b x=1 kind=boolean h=1\n\nlayer 1\n 1\t5 0 1 \n";
  CHECK(print_formula_table(parse_formula_table(loose)) == print_formula_table(parse_formula_table(kXor)));
  const std::string quoted = "feature \"heart noises\" x=0 kind=quantitative u=0.1 h=1 e=3\n"
                             "feature b x=1 kind=nominal category=\"red wine\" h=0\nlayer 1\n1 5 0 1\n";
  const FormulaTable q = parse_formula_table(quoted);
  CHECK(q.features[0].name() == "heart noises");
  CHECK(q.features[0].encoder.threshold == 0.1);
  CHECK(q.features[0].encoder.error == 3u);
  CHECK(q.features[1].encoder.category == "red wine");
  CHECK(print_formula_table(parse_formula_table(print_formula_table(q))) == print_formula_table(q));
}

TEST_CASE("trained network to formulas and back") {
  std::vector<FeatureSpec> f{{"a", FeatureKind::boolean, 0}, {"b", FeatureKind::boolean, 1}};
  const Dataset xs(f, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}}, BitVector{0, 1, 1, 0});
  const Network net = train(xs);
  const FormulaTable table = to_formula_table(net);
  REQUIRE(table.layers.size() == 1);
  REQUIRE(table.layers[0].size() == 1);
  CHECK(table.layers[0][0].fn.value == 5);
  CHECK(table.layers[0][0].left == 0);
  CHECK(table.layers[0][0].right == 1);
  CHECK(parse_formula_table(formula_text(net)).layers == table.layers);
  const SyndromeComplex sc = extract(net);
  CHECK(sc.size() == 1);
  CHECK(sc.expression(0) == "g5(a, b)");
}

TEST_CASE("extraction agrees with the network on every assignment") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    oracle::PlantedRuleSpec spec;
    spec.seed = seed;
    spec.features = 3 + seed % 5;
    spec.rows = 20 + seed;
    spec.syndromes = 1 + 2 * (seed % 3);
    const Dataset ds = oracle::generate_planted(spec).dataset;
    const EncodedDataset enc = encode_dataset(ds);
    TrainConfig cfg;
    cfg.syndromes = seed % 2 ? SyndromeSelection::best : SyndromeSelection::whole_layer;
    try {
      const Network net = train(enc, cfg);
      const SyndromeComplex sc = extract(net);
      const SyndromeComplex reparsed = make_complex(parse_formula_table(formula_text(net)));
      const std::size_t q = sc.features().size();
      for (std::size_t code = 0; code < (std::size_t{1} << q); ++code) {
        BitVector slots(q);
        BitVector bits(enc.encoders.size(), 0);
        for (std::size_t s = 0; s < q; ++s) {
          slots[s] = static_cast<Bit>((code >> s) & 1u);
          bits[sc.features()[s].index] = slots[s];
        }
        CHECK(sc.evaluate(slots) == net.classify_encoded(bits));
        CHECK(reparsed.evaluate(slots) == sc.evaluate(slots));
      }
    } catch (const TrainingError& e) {
      MESSAGE("seed " << seed << ": " << e.what());
    }
  }
}
