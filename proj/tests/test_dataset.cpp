#include <doctest.h>

#include <sstream>

#include "logicnet/csv.hpp"
#include "logicnet/dataset.hpp"
#include "logicnet/errors.hpp"

using namespace logicnet;

namespace {

Dataset load(const std::string& text, LoadOptions opts = {}, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return load_csv(in, opts, warnings);
}

DataErrorKind kind_of(const std::string& text, LoadOptions opts = {}) {
  try {
    load(text, opts);
  } catch (const DataError& e) {
    return e.kind();
  }
  FAIL("expected a DataError");
  return DataErrorKind::io;
}

}  // namespace

TEST_CASE("smallest valid set") {
  const Dataset ds = load("v,label\n1,0\n2,0\n8,1\n9,1\n");
  CHECK(ds.size() == 4);
  CHECK(ds.feature_count() == 1);
  CHECK(ds.features()[0].kind == FeatureKind::quantitative);
  CHECK(ds.labels() == BitVector{0, 0, 1, 1});
  CHECK(ds.numeric_column(0) == std::vector<double>{1, 2, 8, 9});
}

TEST_CASE("kind inference and overrides") {
  const Dataset ds = load("a,b,c,label\n0,1.5,x,0\n1,2,y,1\n1,3,x,0\n");
  CHECK(ds.features()[0].kind == FeatureKind::boolean);
  CHECK(ds.features()[1].kind == FeatureKind::quantitative);
  CHECK(ds.features()[2].kind == FeatureKind::nominal);

  LoadOptions opts;
  opts.kind_overrides["a"] = FeatureKind::quantitative;
  CHECK(load("a,label\n0,0\n1,1\n", opts).features()[0].kind == FeatureKind::quantitative);
  opts.kind_overrides = {{"a", FeatureKind::boolean}};
  CHECK(kind_of("a,label\n0,0\n3,1\n", opts) == DataErrorKind::kind_mismatch);
  opts.kind_overrides = {{"zzz", FeatureKind::boolean}};
  CHECK(kind_of("a,label\n0,0\n1,1\n", opts) == DataErrorKind::unknown_feature);
}

TEST_CASE("24 features by 35 rows") {
  std::ostringstream csv;
  for (int j = 0; j < 24; ++j) csv << "x" << j << ',';
  csv << "label\n";
  for (int t = 0; t < 18; ++t) {
    for (int j = 0; j < 24; ++j) csv << (t * 7 + j * 3) % 11 << ',';
    csv << (t < 9 ? 0 : 1) << '\n';
  }
  const Dataset ds = load(csv.str());
  CHECK(ds.feature_count() == 24);
  CHECK(ds.size() == 18);
}

TEST_CASE("class counts") {
  CHECK(class_counts(load("v,label\n1,0\n2,0\n3,1\n4,1\n")) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(class_counts(load("v,label\n1,0\n2,1\n3,1\n")) == std::pair<std::size_t, std::size_t>{1, 2});
  std::ostringstream csv;
  csv << "v,label\n";
  for (int t = 0; t < 35; ++t) csv << t << ',' << (t < 18 ? "IE" : "AR") << '\n';
  LoadOptions opts;
  opts.class_names = std::array<std::string, 2>{"IE", "AR"};
  const Dataset ds = load(csv.str(), opts);
  CHECK(class_counts(ds) == std::pair<std::size_t, std::size_t>{18, 17});
  CHECK(ds.class_names()[0] == "IE");
}

TEST_CASE("every violated invariant has its own error") {
  CHECK(kind_of("") == DataErrorKind::no_header);
  CHECK(kind_of("a,b\n1,0\n2,1\n") == DataErrorKind::missing_label_column);
  CHECK(kind_of("a,a,label\n1,1,0\n2,2,1\n") == DataErrorKind::duplicate_feature);
  CHECK(kind_of("a,label\n1,0\n2\n3,1\n") == DataErrorKind::ragged_row);
  CHECK(kind_of("a,label\n1,0\n,1\n3,1\n") == DataErrorKind::missing_cell);
  CHECK(kind_of("a,label\n1,0\n2,2\n") == DataErrorKind::bad_label);
  CHECK(kind_of("a,label\n1,1\n2,1\n") == DataErrorKind::empty_class);
  CHECK(kind_of("a,label\n1,1\n") == DataErrorKind::too_few_rows);
  CHECK(kind_of("a,label\n1,\n2,1\n") == DataErrorKind::missing_cell);
}

TEST_CASE("empty class message names the class") {
  try {
    load("a,label\n1,0\n2,0\n");
    FAIL("should throw");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("empty class") != std::string::npos);
  }
}

TEST_CASE("missing values can be dropped with a warning") {
  LoadOptions opts;
  opts.missing = MissingPolicy::drop_row;
  std::vector<std::string> warnings;
  const Dataset ds = load("a,b,label\n1,2,0\n,3,1\n4,5,1\n6,7,0\n", opts, &warnings);
  CHECK(ds.size() == 3);
  CHECK(warnings.size() == 1);
}

TEST_CASE("contradictory duplicates warn but load") {
  std::vector<std::string> warnings;
  const Dataset ds = load("a,b,label\n1,2,0\n1,2,1\n1,2,0\n3,3,1\n", {}, &warnings);
  CHECK(ds.size() == 4);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("contradict") != std::string::npos);
}

TEST_CASE("quoted fields and custom delimiter") {
  LoadOptions opts;
  opts.delimiter = ';';
  const Dataset ds = load("\"name; with delim\";label\n\"a\"\"b\";0\nc;1\n", opts);
  CHECK(ds.features()[0].name == "name; with delim");
  CHECK(ds.rows()[0][0] == "a\"b");
  CHECK(ds.features()[0].kind == FeatureKind::nominal);
  std::istringstream bad("a,label\n\"open,0\n");
  CHECK_THROWS_AS(read_csv(bad), DataError);
}

TEST_CASE("load, write, load is the identity") {
  const std::string text = "t,flag,colour,label\n1.25,0,\"red, dark\",A\n-3,1,blue,B\n1e3,1,red,A\n";
  LoadOptions opts;
  opts.class_names = std::array<std::string, 2>{"A", "B"};
  const Dataset first = load(text, opts);
  std::ostringstream out;
  write_csv(first, out);
  const Dataset second = load(out.str(), opts);
  CHECK(second.rows() == first.rows());
  CHECK(second.labels() == first.labels());
  for (std::size_t j = 0; j < first.feature_count(); ++j) {
    CHECK(second.features()[j].kind == first.features()[j].kind);
    CHECK(second.features()[j].name == first.features()[j].name);
  }
}

TEST_CASE("number helpers") {
  CHECK(parse_number(" +6.5 ") == 6.5);
  CHECK_FALSE(parse_number("abc"));
  CHECK_FALSE(parse_number("inf"));
  CHECK_FALSE(parse_number("1.5x"));
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(130) == "130");
  for (double v : {0.1, 1.0 / 3.0, 92.55000000000001, -7e-300}) CHECK(parse_number(format_number(v)) == v);
  CHECK(infer_kind({"0", "1", "1"}) == FeatureKind::boolean);
  CHECK(infer_kind({"0", "2"}) == FeatureKind::quantitative);
  CHECK(infer_kind({"0", "x"}) == FeatureKind::nominal);
}

TEST_CASE("missing file is an io error") {
  CHECK_THROWS_AS(load_csv(std::filesystem::path("/nonexistent/file.csv"), LoadOptions{}), DataError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.txt"), DataError);
}
