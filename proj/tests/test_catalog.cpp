#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "amlkit/syllogistics.hpp"
#include "amlkit/syntax.hpp"
#include "json.hpp"

using namespace aml;

namespace {

const std::filesystem::path kData(AMLKIT_DATA_DIR);

CatalogOptions options(unsigned jobs = 1) {
  CatalogOptions o;
  o.base_dir = kData;
  o.jobs = jobs;
  return o;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Catalog, ShippedCatalogLoads) {
  auto entries = load_catalog(kData / "catalog.jsonl");
  EXPECT_GE(entries.size(), 90u);
  std::set<std::string> ids, chapters;
  for (const auto& e : entries) {
    ids.insert(e.id);
    chapters.insert(e.source);
    EXPECT_NO_THROW(entry_syllogism(e)) << e.id;
  }
  EXPECT_EQ(ids.size(), entries.size());
  for (const char* c : {"A8", "A9", "A10", "A11", "A14", "A15", "A16", "A17", "A18", "A19", "A20", "A21", "A22"})
    EXPECT_TRUE(chapters.count(c)) << c;
}

TEST(Catalog, ShippedCatalogMatches) {
  auto entries = load_catalog(kData / "catalog.jsonl");
  CatalogReport r = run_catalog(entries, options());
  for (const auto& e : r.entries) EXPECT_EQ(e.expected, e.computed) << e.id << ": " << e.detail;
  EXPECT_TRUE(r.all_passed());
}

TEST(Catalog, ExplicitFormulasOverrideMood) {
  CatalogEntry e = parse_catalog_entry(
      R"({"id":"x","source":"T","figure":"third","ross_mood":"A A^c I^p","expected":"valid",)"
      R"("evidence":{"depth":8},"premises":["C -> A","<u>C -> <u>B"],"stars":["*C","*<u>C"],)"
      R"("conclusion":"<>A ~> <u>B"})");
  Syllogism s = entry_syllogism(e);
  EXPECT_EQ(s.conclusion, parse_formula("<>A ~> <u>B"));
  EXPECT_EQ(s.star_premises.size(), 2u);
  EXPECT_EQ(run_entry(e, options()).computed, "valid");
}

TEST(Catalog, RejectsMalformedEntries) {
  for (const char* bad : {
           R"({"id":"x","source":"T","figure":"first","ross_mood":"AAA","expected":"valid","evidence":{}})",
           R"({"id":"x","source":"T","figure":"first","ross_mood":"AAA","expected":"invalid","evidence":{"depth":3}})",
           R"({"id":"x","source":"T","figure":"fifth","ross_mood":"AAA","expected":"valid","evidence":{"depth":3}})",
           R"({"id":"x","source":"T","figure":"first","ross_mood":"AAA","expected":"maybe","evidence":{"depth":3}})",
           R"({"source":"T","figure":"first","ross_mood":"AAA","expected":"valid","evidence":{"depth":3}})",
           R"({"id":"x","source":"T","figure":"first","ross_mood":"AAA","theory":"K","expected":"valid","evidence":{"depth":3}})",
           "{not json",
       })
    EXPECT_ANY_THROW(parse_catalog_entry(bad)) << bad;
}

TEST(Catalog, DuplicateIdsNameTheLine) {
  std::string line = R"({"id":"dup","source":"T","figure":"first","ross_mood":"AAA","expected":"valid","evidence":{"depth":3}})";
  auto p = write_temp("amlkit_dup.jsonl", line + "\n\n" + line + "\n");
  try {
    load_catalog(p);
    FAIL() << "duplicate id accepted";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
}

TEST(Catalog, FilterTokens) {
  auto entries = load_catalog(kData / "catalog.jsonl");
  auto a8 = filter_catalog(entries, "A8");
  auto a8first = filter_catalog(entries, "A8:first");
  auto pair = filter_catalog(entries, "A8:first,asr-1-AAA");
  EXPECT_EQ(a8.size(), 14u);
  EXPECT_EQ(a8first.size(), 4u);
  EXPECT_EQ(pair.size(), 5u);
  EXPECT_TRUE(filter_catalog(entries, "nothing").empty());
}

// Flipping expectations must be caught: the harness is not vacuous.
TEST(Catalog, MutatedExpectationsFail) {
  auto entries = filter_catalog(load_catalog(kData / "catalog.jsonl"), "A8,A9,A10");
  std::size_t flipped = 0;
  for (std::size_t i = 0; i < entries.size(); i += 5) {
    CatalogEntry& e = entries[i];
    if (e.proof) continue;
    e.expected_valid = !e.expected_valid;
    if (e.expected_valid) e.depth = 8; else e.bounds = std::make_pair(2, 4);
    ++flipped;
  }
  CatalogReport r = run_catalog(entries, options());
  EXPECT_GT(flipped, 5u);
  EXPECT_EQ(r.failed + r.unknown, flipped);
  EXPECT_FALSE(r.all_passed());
}

TEST(Catalog, WitnessThatDoesNotRefuteIsUnknown) {
  CatalogEntry e = parse_catalog_entry(
      R"({"id":"w","source":"T","figure":"first","expected":"invalid","evidence":{"bounds":[2,4],)"
      R"("witness":"models/snow.model.json"},"premises":["Man -> White"],"conclusion":"White -> Man"})");
  EntryResult r = run_entry(e, options());
  EXPECT_EQ(r.computed, "unknown");
  EXPECT_NE(r.detail.find("premises_unsatisfied"), std::string::npos) << r.detail;
}

TEST(Catalog, ReportIsIndependentOfJobs) {
  auto entries = filter_catalog(load_catalog(kData / "catalog.jsonl"), "A17,A18,A21");
  CatalogReport one = run_catalog(entries, options(1));
  CatalogReport many = run_catalog(entries, options(8));
  EXPECT_EQ(one.to_json(), many.to_json());
  EXPECT_EQ(one.table(), many.table());
  auto j = nlohmann::json::parse(one.to_json());
  EXPECT_EQ(j["total"], entries.size());
  EXPECT_EQ(j["entries"][0]["id"], entries[0].id);
  EXPECT_TRUE(nlohmann::json::parse(one.timing_json()).contains("entries"));
}
