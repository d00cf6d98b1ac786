#include "doctest.h"

#include <fstream>
#include <map>
#include <set>

#include "mazu/corpus.hpp"
#include "mazu/error.hpp"
#include "mazu/render.hpp"
#include "mazu/spec_io.hpp"

#ifndef MAZU_CORPUS_DIR
#define MAZU_CORPUS_DIR "corpus"
#endif

using namespace mazu;

namespace {

// Pinned hashes of the fixtures in corpus/, each entry at its reference
// spacing.
const std::map<std::string, std::string> kPinned = {
    {"unit-square", "bb2d2f984fc553fc"},
    {"slit-disc", "0650aeadb9d44e02"},
    {"comb-I", "08065c671e4923dc"},
    {"comb-II", "ad33663560322c67"},
    {"thick-comb", "66c8fcbfb0134943"},
    {"ex1", "902a54aa0f8624dc"},
    {"Rempe", "874d6d0253439b30"},
    {"iterated-sine", "b72e7669756a6545"},
    {"Cantor-Omega", "b4e8c38eeb564eef"},
    {"Cantor-Omega-prime", "288613a1a9b446a3"},
    {"ex-R3-finconn-compl-new", "480693ee56cbd180"},
    {"ex-R3-compl-locconn", "6b0ccfdf9884145f"},
    {"ex-R3-locconn-locacc", "8dca305c485b0cc4"},
    {"ex-Jana", "4a1997279736ea53"},
};

}  // namespace

TEST_CASE("registry names are unique and split by dimension") {
  auto all = exampleNames();
  std::set<std::string> unique(all.begin(), all.end());
  CHECK(unique.size() == all.size());
  CHECK(exampleNames2d().size() + exampleNames3d().size() == all.size());
  for (const auto& n : exampleNames3d()) CHECK(buildExample(n).dim == 3);
  for (const auto& n : exampleNames2d()) CHECK(buildExample(n).dim == 2);
}

TEST_CASE("unknown examples are reported") {
  try {
    buildExample("no-such-domain");
    FAIL("expected UnknownExample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownExample);
  }
}

TEST_CASE("every expectation states its claim and machine-checkable ones have a key the checker knows") {
  for (const auto& n : exampleNames()) {
    CorpusEntry e = buildExample(n);
    CHECK_FALSE(e.truncation.empty());
    CHECK_FALSE(e.probes.empty());
    for (const auto& p : e.probes)
      for (const auto& x : p.expectations) {
        CAPTURE(n);
        CAPTURE(x.key);
        CHECK_FALSE(x.claim.empty());
      }
  }
}

TEST_CASE("fixtures match the generators and their pinned hashes") {
  REQUIRE(kPinned.size() == exampleNames().size());
  for (const auto& n : exampleNames()) {
    CAPTURE(n);
    CorpusEntry e = buildExample(n);
    std::string generated = hashHex(specHash(e.factory(e.referenceH)));
    CHECK(generated == kPinned.at(n));
    DomainSpec fixture = loadSpecFile(std::string(MAZU_CORPUS_DIR) + "/" + n + ".json");
    CHECK(hashHex(specHash(fixture)) == kPinned.at(n));
  }
}

TEST_CASE("truncation follows the spacing") {
  CorpusEntry comb = buildExample("Cantor-Omega");
  std::string coarse = specToJson(comb.factory(1.0 / 64)).dump();
  std::string fine = specToJson(comb.factory(1.0 / 1024)).dump();
  CHECK(fine != coarse);
  CHECK(specToJson(comb.factory(1.0 / 1024)).dump() == fine);
}

TEST_CASE("probe run reports expectations") {
  CorpusEntry e = buildExample("slit-disc");
  ProbeResult r = runProbe(e, e.probes.front());
  CHECK(r.error.empty());
  CHECK(r.pass());
  CHECK_FALSE(r.results.empty());
  CHECK(r.auditViolations.empty());
}

TEST_CASE("not machine-checkable expectations are skipped") {
  CorpusEntry e = buildExample("unit-square");
  BoundaryVerdict v = classifyPoint(e.factory, e.probes.front().x0, 0.25, 3);
  ExpectationResult r = checkExpectation({"boundaryPathImKleinen", Expected::kNotMachineCheckable, 0, "n/a"}, v);
  CHECK_FALSE(r.checked);
  CHECK(r.pass);
}

TEST_CASE("render: unit square is one fill color and renders are deterministic") {
  const double h = 1.0 / 16;
  DomainSpec spec = buildExample("unit-square").factory(h);
  Raster r = rasterize(spec, spec.defaultWindow(), h);
  std::string svg = renderRasterSvg(r);
  CHECK(svg.find("<svg") == 0);
  std::set<std::string> fills;
  for (std::size_t pos = 0; (pos = svg.find("fill=\"#", pos)) != std::string::npos; pos += 7)
    fills.insert(svg.substr(pos + 6, 7));
  CHECK(fills == std::set<std::string>{"#ffffff", "#c6dbef"});
  CHECK(svg == renderRasterSvg(r));
}

TEST_CASE("render: comb-I labeling shows several components and the ladder circles") {
  CorpusEntry e = buildExample("comb-I");
  BoundaryVerdict v = classifyPoint(e.factory, {0, 0}, 0.3, 2);
  std::string svg = renderVerdictSvg(v);
  std::set<std::string> fills;
  for (std::size_t pos = 0; (pos = svg.find("fill=\"#", pos)) != std::string::npos; pos += 7)
    fills.insert(svg.substr(pos + 6, 7));
  CHECK(fills.size() >= 3);
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) ++circles;
  CHECK(circles == v.ladder.scales.size());
}

TEST_CASE("render: oversized payloads are refused") {
  Raster big = rasterFromMask(2, 1.0 / 4096, {0, 0}, {2049, 2049, 1}, std::vector<std::uint8_t>(2049 * 2049, 1));
  try {
    renderRasterSvg(big);
    FAIL("expected PayloadTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPayloadTooLarge);
  }
}
