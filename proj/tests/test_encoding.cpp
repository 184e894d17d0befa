#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "logicnet/encoding.hpp"
#include "logicnet/errors.hpp"
#include "logicnet/oracle.hpp"

using namespace logicnet;

namespace {

std::size_t errors_of(const Encoder& enc, std::span<const double> values, std::span<const Bit> labels) {
  std::size_t e = 0;
  for (std::size_t t = 0; t < values.size(); ++t) e += enc.encode(values[t]) != labels[t];
  return e;
}

}  // namespace

TEST_CASE("quantitative threshold examples") {
  const std::vector<double> v{1, 2, 8, 9};
  const Encoder a = fit_quantitative("v", v, BitVector{1, 1, 0, 0});
  CHECK(a.threshold == 5.0);
  CHECK(a.polarity == 0);
  CHECK(a.error == 0u);
  const Encoder b = fit_quantitative("v", v, BitVector{0, 0, 1, 1});
  CHECK(b.threshold == 5.0);
  CHECK(b.polarity == 1);
  CHECK(b.error == 0u);
}

TEST_CASE("constant feature is degenerate and refuses to encode") {
  const std::vector<double> v{3, 3, 3, 3};
  const Encoder enc = fit_quantitative("v", v, BitVector{0, 1, 0, 1});
  CHECK(enc.degenerate);
  CHECK(enc.error == 2u);
  CHECK(std::isnan(enc.threshold));
  CHECK_THROWS_AS(enc.encode(3.0), EncodingError);
}

TEST_CASE("encode follows threshold and polarity") {
  Encoder leuk{"leukocytes", FeatureKind::quantitative, 6.2, {}, 0, std::nullopt, false};
  CHECK(leuk.encode(5.0) == 1);
  CHECK(leuk.encode(7.0) == 0);
  CHECK(leuk.encode(6.2) == 1);
  Encoder hb{"hemoglobin", FeatureKind::quantitative, 90.9, {}, 1, std::nullopt, false};
  CHECK(hb.encode(100.0) == 1);
  CHECK(hb.encode(std::string_view("80")) == 0);
  CHECK_THROWS_AS(hb.encode(std::string_view("n/a")), EncodingError);
}

TEST_CASE("boolean fit") {
  const Encoder id = fit_boolean("b", BitVector{0, 0, 1, 1}, BitVector{0, 0, 1, 1});
  CHECK(id.polarity == 1);
  CHECK(id.error == 0u);
  const Encoder comp = fit_boolean("b", BitVector{0, 0, 1, 1}, BitVector{1, 1, 0, 0});
  CHECK(comp.polarity == 0);
  CHECK(comp.error == 0u);
  const Encoder tie = fit_boolean("b", BitVector{0, 1, 0, 1}, BitVector{0, 0, 1, 1});
  CHECK(tie.polarity == 1);
  CHECK(tie.error == 2u);
  CHECK(tie.encode(1.0) == 1);
  CHECK(tie.encode(std::string_view("0")) == 0);
  CHECK(fit_boolean("b", BitVector{1, 1, 1}, BitVector{0, 1, 0}).degenerate);
}

TEST_CASE("nominal fit") {
  const std::vector<std::string> ab{"a", "a", "b", "b"};
  const Encoder e1 = fit_nominal("n", ab, BitVector{0, 0, 1, 1});
  CHECK(e1.error == 0u);
  for (std::size_t t = 0; t < ab.size(); ++t) CHECK(e1.encode(std::string_view(ab[t])) == (t >= 2));
  // first-seen category wins the tie, here as a complement
  CHECK(e1.category == "a");
  CHECK(e1.polarity == 0);

  const Encoder e2 = fit_nominal("n", std::vector<std::string>{"a", "b", "c", "a"}, BitVector{1, 0, 0, 1});
  CHECK(e2.category == "a");
  CHECK(e2.polarity == 1);
  CHECK(e2.error == 0u);
  CHECK(e2.encode(std::string_view("zzz")) == 0);

  const Encoder single = fit_nominal("n", std::vector<std::string>{"a", "a", "a"}, BitVector{0, 1, 0});
  CHECK(single.degenerate);
  CHECK(single.error == 1u);
}

TEST_CASE("encode_dataset") {
  std::vector<FeatureSpec> one{{"v", FeatureKind::quantitative, 0}};
  const Dataset ds(one, {{"1"}, {"2"}, {"8"}, {"9"}}, BitVector{1, 1, 0, 0});
  const EncodedDataset enc = encode_dataset(ds);
  CHECK(enc.columns[0] == BitVector{1, 1, 0, 0});
  CHECK(enc.errors[0] == 0);
  CHECK(enc.informative == std::vector<std::size_t>{0});

  const Dataset flat(one, {{"4"}, {"4"}, {"4"}}, BitVector{0, 1, 0});
  CHECK(encode_dataset(flat).informative.empty());

  std::vector<FeatureSpec> two{{"a", FeatureKind::boolean, 0}, {"b", FeatureKind::boolean, 1}};
  const Dataset x(two, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}}, BitVector{0, 1, 1, 0});
  const EncodedDataset ex = encode_dataset(x);
  CHECK(ex.informative.size() == 2);
  CHECK(ex.errors == std::vector<std::size_t>{2, 2});
}

TEST_CASE("oracle equivalence, monotone invariance and error bounds on random sets") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    std::vector<double> v(n);
    BitVector y(n);
    for (std::size_t t = 0; t < n; ++t) {
      v[t] = static_cast<double>(rng() % 12) / 2.0;
      y[t] = static_cast<Bit>(rng() & 1);
    }
    if (std::ranges::count(y, Bit{1}) == 0) y[0] = 1;
    if (std::ranges::count(y, Bit{0}) == 0) y[0] = 0;
    const Encoder enc = fit_quantitative("v", v, y);
    const auto ref = oracle::brute_force_threshold(v, y);
    CHECK(enc.degenerate == ref.constant);
    CHECK(*enc.error == ref.error);
    if (enc.degenerate) continue;
    CHECK(enc.threshold == ref.threshold);
    CHECK(enc.polarity == ref.polarity);
    CHECK(errors_of(enc, v, y) == *enc.error);
    CHECK(*enc.error * 2 <= n);

    std::vector<double> w(n);
    std::ranges::transform(v, w.begin(), [](double x) { return std::exp(x) * 3.0 - 1.0; });
    CHECK(*fit_quantitative("w", w, y).error == *enc.error);

    Encoder flipped = enc;
    flipped.polarity ^= 1;
    CHECK(errors_of(flipped, v, y) == n - *enc.error);
  }
}

TEST_CASE("the minority count bound needs a reachable split") {
  // every midpoint split does worse than always answering 0, so e exceeds the minority count
  const std::vector<double> v{0, 0, 0, 1};
  const Encoder enc = fit_quantitative("v", v, BitVector{0, 0, 1, 0});
  CHECK_FALSE(enc.degenerate);
  CHECK(enc.error == 2u);
}
