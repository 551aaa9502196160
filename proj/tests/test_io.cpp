#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "bihom/pipeline.hpp"

using namespace bihom;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> files_in(const char* dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string location_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const document_error& e) {
    return e.location();
  }
  return "";
}

}  // namespace

TEST(Corpus, RoundTripIsByteExact) {
  const auto files = files_in(BIHOM_CORPUS_DIR);
  ASSERT_GE(files.size(), 10u);
  for (const auto& f : files) {
    const std::string text = slurp(f);
    const std::string once = canonicalize(text);
    EXPECT_EQ(canonicalize(once), once) << f;
    EXPECT_EQ(serialize_document(parse_document(once)), once) << f;
    // every corpus file except the hand-written one is stored canonically
    if (f.filename() != "handwritten_1_2.json") EXPECT_EQ(once, text) << f;
  }
}

TEST(Corpus, CanonicalFormNormalizesHandwrittenInput) {
  const auto doc = parse_document(slurp(fs::path(BIHOM_CORPUS_DIR) / "handwritten_1_2.json"));
  // [e3,e2] = 2/2 e1 and [e2,e3] = 1 e1, explicit zero dropped
  ASSERT_TRUE(doc.bracket2);
  EXPECT_EQ(doc.bracket2->entries().size(), 2u);
  EXPECT_EQ(doc.bracket2->coefficient({2, 1, 0}), Scalar(1));
  EXPECT_EQ(doc.scalars.at("lambda"), Scalar(-1, 2));
  EXPECT_EQ(doc.map("N"), GradedMap::diagonal(doc.space, {2, 1, 2}));
  const std::string canon = canonicalize(slurp(fs::path(BIHOM_CORPUS_DIR) / "handwritten_1_2.json"));
  EXPECT_NE(canon.find("\"lambda\": \"-1/2\""), std::string::npos);
}

TEST(Corpus, SemanticallyEqualDocumentsSerializeIdentically) {
  const std::string a = R"({"format": 1, "space": {"dim": 2, "parities": [0, 0]},
    "bracket2": [[1, 2, 2, "2/2"], [2, 1, 2, -1]], "scalars": {"lambda": "3/6"}})";
  const std::string b = R"({"scalars": {"lambda": "1/2"}, "bracket2": [[2, 1, 2, "-1"],
    [1, 1, 1, 0], [1, 2, 2, 1]], "space": {"parities": [0, 0], "dim": 2}, "format": 1})";
  EXPECT_EQ(canonicalize(a), canonicalize(b));
}

TEST(Parse, MinimalDocument) {
  const auto doc = parse_document(R"({"format": 1, "space": {"dim": 1, "parities": [0]}})");
  EXPECT_EQ(doc.space.dim(), 1u);
  EXPECT_FALSE(doc.bracket2);
  EXPECT_FALSE(doc.bracket3);
  EXPECT_EQ(serialize_document(doc),
            "{\n  \"format\": 1,\n  \"space\": {\n    \"dim\": 1,\n    \"parities\": [0]\n  }\n}\n");
}

TEST(Parse, InvalidDocumentsCarryLocations) {
  const std::map<std::string, std::string> expected = {
      {"parity_violation.json", "/bracket3/0"},
      {"zero_denominator.json", "/bracket2/0/3"},
      {"short_row.json", "/maps/N/matrix/1"},
      {"index_out_of_range.json", "/bracket2/0/1"},
      {"odd_twist.json", "/maps/alpha"},
  };
  const auto files = files_in(BIHOM_INVALID_DIR);
  ASSERT_EQ(files.size(), expected.size() + 1);
  for (const auto& f : files) {
    const std::string loc = location_of(slurp(f));
    EXPECT_FALSE(loc.empty()) << f;
    const auto name = f.filename().string();
    if (name == "syntax_error.json")
      EXPECT_EQ(loc.rfind("line ", 0), 0u) << loc;
    else
      EXPECT_EQ(loc, expected.at(name)) << name;
  }
}

TEST(Parse, RejectsStructuralProblems) {
  EXPECT_EQ(location_of(R"({"space": {"dim": 1, "parities": [0]}})"), "/");
  EXPECT_EQ(location_of(R"({"format": 2, "space": {"dim": 1, "parities": [0]}})"), "/format");
  EXPECT_EQ(location_of(R"({"format": 1, "space": {"dim": 2, "parities": [0]}})"),
            "/space/parities");
  EXPECT_EQ(location_of(R"({"format": 1, "space": {"dim": 1, "parities": [2]}})"),
            "/space/parities/0");
  EXPECT_EQ(location_of(R"({"format": 1, "space": {"dim": 1, "parities": [0]},
    "bracket2": [[1, 1, 1, "1"], [1, 1, 1, "2"]]})"),
            "/bracket2/1");
  EXPECT_EQ(location_of(R"({"format": 1, "space": {"dim": 2, "parities": [0, 1]},
    "maps": {"tau": {"row": ["0", "1"]}}})"),
            "/maps/tau");
}

TEST(Parse, SyntaxErrorLineAndColumn) {
  EXPECT_EQ(location_of("{\n  \"format\": 1,\n  \"space\": ]\n}"), "line 3, column 12");
}

TEST(Pipeline, DanglingNameIsAnInputError) {
  const auto doc = parse_document(slurp(fs::path(BIHOM_CORPUS_DIR) / "zero_ternary.json"));
  PipelineOptions opts;
  opts.map = "missing";
  const auto r = run_pipeline(doc, "check-nijenhuis", opts);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_NE(r.error.find("/maps/missing"), std::string::npos);
}

TEST(Pipeline, DigestDependsOnDocumentAndOptions) {
  const auto doc = parse_document(slurp(fs::path(BIHOM_CORPUS_DIR) / "a4.json"));
  const auto a = run_pipeline(doc, "verify");
  EXPECT_EQ(a.inputs_digest, run_pipeline(doc, "verify").inputs_digest);
  PipelineOptions ff;
  ff.fail_fast = true;
  EXPECT_NE(a.inputs_digest, run_pipeline(doc, "verify", ff).inputs_digest);
  EXPECT_EQ(a.inputs_digest.size(), std::string("sha256:").size() + 64);
}

TEST(Pipeline, Sha256KnownValue) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Pipeline, StatusFollowsMandatoryChecks) {
  const auto doc = parse_document(slurp(fs::path(BIHOM_CORPUS_DIR) / "a4.json"));
  PipelineOptions opts;
  opts.map = "S";
  const auto r = run_pipeline(doc, "check-rb", opts);
  EXPECT_EQ(r.status, RunStatus::fail);
  opts.map = "R";
  EXPECT_EQ(run_pipeline(doc, "check-rb", opts).status, RunStatus::pass);
  const auto j = report_to_json(r);
  EXPECT_EQ(j.at("status"), "fail");
  EXPECT_FALSE(j.at("checks").at(0).at("holds").get<bool>());
}

TEST(Pipeline, MatchesLibraryCalls) {
  const auto doc = parse_document(slurp(fs::path(BIHOM_CORPUS_DIR) / "super2_1_induced.json"));
  const auto a = doc.ternary();
  PipelineOptions opts;
  opts.map = "N";
  EXPECT_EQ(run_pipeline(doc, "check-nijenhuis", opts).status == RunStatus::pass,
            is_nijenhuis_3(a, doc.map("N")).holds());
  auto nb = run_pipeline(doc, "n-brackets", opts);
  ASSERT_TRUE(nb.derived);
  EXPECT_EQ(nb.derived->tensors.at("omega1"), make_n_bracket_1(a, doc.map("N")));
  EXPECT_EQ(nb.derived->tensors.at("omega2"), make_n_bracket_2(a, doc.map("N")));
  auto ders = run_pipeline(doc, "derivations");
  EXPECT_EQ(ders.outputs.at("dimension").get<std::size_t>(),
            solve_derivation_space(a, {0, 0, Parity::even}).dimension());
}
