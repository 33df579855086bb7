#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "mixr2/dataset.hpp"

using mixr2::Dataset;
using mixr2::parse_csv;

namespace {
Dataset from_text(const std::string& text,
                  const std::vector<std::string>& hints = {}) {
  std::istringstream in(text);
  return parse_csv(in, hints);
}
}  // namespace

TEST_CASE("numeric and categorical columns are inferred", "[dataset]") {
  Dataset ds = from_text("y,g\n1,a\n2,b\n");
  REQUIRE(ds.n_rows == 2);
  const auto& y = ds.at("y");
  CHECK_FALSE(y.is_categorical);
  CHECK(y.values == std::vector<double>{1.0, 2.0});
  const auto& g = ds.at("g");
  CHECK(g.is_categorical);
  CHECK(g.levels == std::vector<std::string>{"a", "b"});
  CHECK(g.codes == std::vector<int>{0, 1});
}

TEST_CASE("missing values are rejected with the row index", "[dataset]") {
  CHECK_THROWS_WITH(from_text("y,g\n1,a\nNA,b\n"),
                    Catch::Matchers::ContainsSubstring("row 2"));
  CHECK_THROWS_WITH(from_text("y,g\n1,a\n2,\n"),
                    Catch::Matchers::ContainsSubstring("column 'g'"));
}

TEST_CASE("ragged rows are rejected", "[dataset]") {
  CHECK_THROWS_WITH(from_text("y,g\n1,a\n2\n"),
                    Catch::Matchers::ContainsSubstring("ragged"));
}

TEST_CASE("categorical hints force numeric-looking codes into levels",
          "[dataset]") {
  std::string text = "infected,farm\n";
  for (int i = 1; i <= 24; ++i) {
    text += std::to_string(i % 2) + "," + std::to_string(i) + "\n";
  }
  Dataset ds = from_text(text, {"farm"});
  const auto& farm = ds.at("farm");
  CHECK(farm.is_categorical);
  CHECK(farm.levels.size() == 24);
  CHECK_FALSE(ds.at("infected").is_categorical);
}

TEST_CASE("quoted fields, embedded commas, and CRLF", "[dataset]") {
  Dataset ds = from_text("name,x\r\n\"a,b\",1\r\n\"say \"\"hi\"\"\",2\r\n");
  const auto& name = ds.at("name");
  REQUIRE(name.is_categorical);
  CHECK(name.levels == std::vector<std::string>{"a,b", "say \"hi\""});
  CHECK(ds.at("x").values == std::vector<double>{1.0, 2.0});
}

TEST_CASE("categorical levels are deduplicated and sorted", "[dataset]") {
  Dataset ds = from_text("g\nzebra\napple\nzebra\nmango\n");
  CHECK(ds.at("g").levels ==
        std::vector<std::string>{"apple", "mango", "zebra"});
  CHECK(ds.at("g").codes == std::vector<int>{2, 0, 2, 1});
}

TEST_CASE("unreadable files raise an error", "[dataset]") {
  CHECK_THROWS_WITH(mixr2::load_csv("/nonexistent/definitely_missing.csv"),
                    Catch::Matchers::ContainsSubstring("cannot open"));
}
