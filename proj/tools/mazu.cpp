#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mazu.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReportDeleter {
  void operator()(mazu_report* r) const { mazu_report_free(r); }
};
struct DomainDeleter {
  void operator()(mazu_domain* d) const { mazu_domain_free(d); }
};
using ReportPtr = std::unique_ptr<mazu_report, ReportDeleter>;
using DomainPtr = std::unique_ptr<mazu_domain, DomainDeleter>;

void check(mazu_status s) {
  if (s != MAZU_OK) throw UsageError(std::string(mazu_status_name(s)) + ": " + mazu_last_error());
}

double rational(const std::string& text, const char* flag) {
  double v = 0.0;
  if (mazu_parse_rational(text.c_str(), &v) != MAZU_OK)
    throw UsageError(std::string(flag) + ": " + mazu_last_error());
  return v;
}

std::vector<double> rationalList(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(rational(text.substr(start, comma - start), flag));
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> nameList(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    if (comma > start) out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

struct PointArg {
  double xyz[3] = {0, 0, 0};
  int dim = 0;
};

PointArg point(const std::string& text, const char* flag, int domainDim) {
  PointArg p;
  if (mazu_parse_point(text.c_str(), p.xyz, &p.dim) != MAZU_OK)
    throw UsageError(std::string(flag) + ": " + mazu_last_error());
  if (domainDim && p.dim != domainDim)
    throw UsageError(std::string(flag) + ": point has " + std::to_string(p.dim) + " coordinates, domain has " +
                     std::to_string(domainDim));
  return p;
}

void writeText(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// Shared domain selection: --spec PATH or --example NAME.
struct DomainArgs {
  std::string spec;
  std::string example;

  void add(CLI::App* app) {
    auto* s = app->add_option("--spec", spec, "Domain spec JSON file");
    auto* e = app->add_option("--example", example, "Corpus example name");
    s->excludes(e);
  }

  DomainPtr open() const {
    mazu_domain* d = nullptr;
    if (!spec.empty())
      check(mazu_domain_from_file(spec.c_str(), &d));
    else if (!example.empty())
      check(mazu_domain_from_example(example.c_str(), &d));
    else
      throw UsageError("one of --spec or --example is required");
    return DomainPtr(d);
  }
};

struct LadderArgs {
  std::string r0 = "1/4";
  int kmax = 3;
  std::string hRatio = "64";

  void add(CLI::App* app) {
    app->add_option("--r0", r0, "Outer radius (rational)")->capture_default_str();
    app->add_option("--kmax", kmax, "Ladder depth")->capture_default_str();
    app->add_option("--h-ratio", hRatio, "Spacing h = r / ratio at each scale")->capture_default_str();
  }

  mazu_ladder_options options() const {
    mazu_ladder_options o;
    mazu_ladder_options_init(&o);
    o.r0 = rational(r0, "--r0");
    o.kmax = kmax;
    o.h_ratio = rational(hRatio, "--h-ratio");
    return o;
  }
};

int emit(const ReportPtr& report, const std::string& path) {
  writeText(mazu_report_text(report.get()), path);
  return mazu_report_pass(report.get()) ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mazurkiewicz boundary and separation toolkit"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(mazu_version()));
  app.require_subcommand(1);
  std::string out;

  // classify
  auto* classify = app.add_subcommand("classify", "Scale-indexed boundary classification at a point");
  DomainArgs classifyDomain;
  LadderArgs classifyLadder;
  std::string classifyPoint, classifySvg, stride = "1/8";
  bool allBoundary = false;
  int limit = 50;
  classifyDomain.add(classify);
  classifyLadder.add(classify);
  classify->add_option("--point", classifyPoint, "Boundary point \"x,y[,z]\"");
  classify->add_flag("--all-boundary", allBoundary, "Sweep boundary samples instead of one point");
  classify->add_option("--stride", stride, "Sample spacing for --all-boundary")->capture_default_str();
  classify->add_option("--limit", limit, "Most samples classified by --all-boundary")->capture_default_str();
  classify->add_option("--json,--out", out, "Write the JSON report here instead of stdout");
  classify->add_option("--svg", classifySvg, "Also render the coarsest ladder scale");

  // dm
  auto* dm = app.add_subcommand("dm", "Mazurkiewicz distance bounds between two points");
  DomainArgs dmDomain;
  std::string dmH = "1/128", from, to, dmSvg;
  bool exact = false;
  std::uint64_t budget = 2'000'000;
  dmDomain.add(dm);
  dm->add_option("--h", dmH, "Raster spacing (rational)")->capture_default_str();
  dm->add_option("--from", from, "Start point \"x,y[,z]\"")->required();
  dm->add_option("--to", to, "End point \"x,y[,z]\"")->required();
  dm->add_flag("--exact", exact, "Also run the exact branch and bound");
  dm->add_option("--budget", budget, "Node budget for --exact")->capture_default_str();
  dm->add_option("--json,--out", out, "Write the JSON report here instead of stdout");
  dm->add_option("--svg", dmSvg, "Also render the witness path");

  // net
  auto* net = app.add_subcommand("net", "Epsilon-net sizes across refinements");
  DomainArgs netDomain;
  std::string eps = "2/5,1/5,1/10", spacings;
  netDomain.add(net);
  net->add_option("--eps", eps, "Comma separated epsilons")->capture_default_str();
  net->add_option("--spacings", spacings, "Comma separated spacings (default 1/64,1/256,1/1024)");
  net->add_option("--json,--out", out, "Write the JSON report here instead of stdout");

  // fibers
  auto* fibers = app.add_subcommand("fibers", "Completion boundary points over a boundary point");
  DomainArgs fiberDomain;
  LadderArgs fiberLadder;
  std::string fiberPoint, threshold = "1/2";
  bool strict = false;
  unsigned fiberSeed = 1;
  int phiSamples = 100;
  fiberDomain.add(fibers);
  fiberLadder.add(fibers);
  fibers->add_option("--point", fiberPoint, "Boundary point \"x,y[,z]\"")->required();
  fibers->add_option("--tau", threshold, "Fiber split threshold as a multiple of r0")->capture_default_str();
  fibers->add_flag("--strict", strict, "Fail when the evidence says not finitely connected");
  fibers->add_option("--seed", fiberSeed, "Seed for the projection check")->capture_default_str();
  fibers->add_option("--samples", phiSamples, "Pairs checked by the projection")->capture_default_str();
  fibers->add_option("--json,--out", out, "Write the JSON report here instead of stdout");

  // seplab
  auto* seplab = app.add_subcommand("seplab", "Randomized separation theorem suites");
  mazu_seplab_options sep;
  mazu_seplab_options_init(&sep);
  std::string suite = "all", sepH = "1/128";
  seplab->add_option("--suite", suite, "janiszewski, countable, nested, union or all")->capture_default_str();
  seplab->add_option("--count", sep.count, "Hypothesis-satisfying instances")->capture_default_str();
  seplab->add_option("--seed", sep.seed, "Generator seed")->capture_default_str();
  seplab->add_option("--h", sepH, "Lattice spacing (rational)")->capture_default_str();
  seplab->add_option("--budget", sep.max_attempts, "Most generated instances")->capture_default_str();
  seplab->add_option("--max-sets", sep.max_sets, "Sets per instance")->capture_default_str();
  seplab->add_option("--json,--out", out, "Write the JSON report here instead of stdout");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Example corpus with expected flags");
  corpus->require_subcommand(1);
  auto* corpusList = corpus->add_subcommand("list", "List entries, probes and expectations");
  corpusList->add_option("--json,--out", out, "Write the JSON report here instead of stdout");
  auto* corpusRun = corpus->add_subcommand("run", "Classify every probe and compare with expectations");
  std::string only, corpusRatio;
  int threads = 0;
  bool quiet = false;
  corpusRun->add_option("--only", only, "Comma separated entry names");
  corpusRun->add_option("--h-ratio", corpusRatio, "Override every entry's h = r / ratio");
  corpusRun->add_option("--threads", threads, "Worker threads (default: MAZU_THREADS or hardware)");
  corpusRun->add_flag("--quiet", quiet, "No summary on stderr");
  corpusRun->add_option("--json,--out", out, "Write the JSON report here instead of stdout");
  auto* corpusExport = corpus->add_subcommand("export", "Write each entry's spec at its reference spacing");
  std::string exportDir = "corpus";
  corpusExport->add_option("--dir", exportDir, "Output directory (must exist)")->capture_default_str();

  // render
  auto* render = app.add_subcommand("render", "SVG of a domain, a ladder or a witness path");
  DomainArgs renderDomain;
  LadderArgs renderLadder;
  std::string renderH = "1/128", renderPoint, renderFrom, renderTo, svg;
  renderDomain.add(render);
  renderLadder.add(render);
  render->add_option("--h", renderH, "Raster spacing for domain and path renders")->capture_default_str();
  render->add_option("--point", renderPoint, "Render the ladder at this boundary point");
  render->add_option("--from", renderFrom, "Witness path start");
  render->add_option("--to", renderTo, "Witness path end");
  render->add_option("--svg,--out", svg, "Write the SVG here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      DomainPtr d = classifyDomain.open();
      mazu_ladder_options o = classifyLadder.options();
      mazu_report* r = nullptr;
      if (allBoundary) {
        check(mazu_classify_boundary(d.get(), rational(stride, "--stride"), limit, &o, &r));
        return emit(ReportPtr(r), out);
      }
      if (classifyPoint.empty()) throw UsageError("--point or --all-boundary is required");
      PointArg p = point(classifyPoint, "--point", mazu_domain_dim(d.get()));
      check(mazu_classify(d.get(), p.xyz, &o, &r));
      ReportPtr report(r);
      if (!classifySvg.empty()) {
        mazu_report* s = nullptr;
        check(mazu_render_verdict(d.get(), p.xyz, &o, &s));
        writeText(mazu_report_text(ReportPtr(s).get()), classifySvg);
      }
      return emit(report, out);
    }
    if (*dm) {
      DomainPtr d = dmDomain.open();
      int dim = mazu_domain_dim(d.get());
      PointArg a = point(from, "--from", dim), b = point(to, "--to", dim);
      double h = rational(dmH, "--h");
      mazu_report* r = nullptr;
      check(mazu_dm(d.get(), h, a.xyz, b.xyz, exact ? 1 : 0, budget, &r));
      ReportPtr report(r);
      if (!dmSvg.empty()) {
        mazu_report* s = nullptr;
        check(mazu_render_dm_path(d.get(), h, a.xyz, b.xyz, &s));
        writeText(mazu_report_text(ReportPtr(s).get()), dmSvg);
      }
      return emit(report, out);
    }
    if (*net) {
      DomainPtr d = netDomain.open();
      std::vector<double> e = rationalList(eps, "--eps");
      std::vector<double> sp = spacings.empty() ? std::vector<double>{} : rationalList(spacings, "--spacings");
      mazu_report* r = nullptr;
      check(mazu_net_profile(d.get(), e.data(), e.size(), sp.empty() ? nullptr : sp.data(), sp.size(), &r));
      return emit(ReportPtr(r), out);
    }
    if (*fibers) {
      DomainPtr d = fiberDomain.open();
      mazu_ladder_options o = fiberLadder.options();
      mazu_fiber_options f;
      mazu_fiber_options_init(&f);
      f.threshold_factor = rational(threshold, "--tau");
      f.strict = strict ? 1 : 0;
      f.seed = fiberSeed;
      f.phi_samples = phiSamples;
      PointArg p = point(fiberPoint, "--point", mazu_domain_dim(d.get()));
      mazu_report* r = nullptr;
      check(mazu_fibers(d.get(), p.xyz, &o, &f, &r));
      return emit(ReportPtr(r), out);
    }
    if (*seplab) {
      sep.h = rational(sepH, "--h");
      std::vector<std::string> suites =
          suite == "all" ? std::vector<std::string>{"janiszewski", "countable", "nested", "union"} : nameList(suite);
      std::string text;
      bool pass = true;
      for (const auto& s : suites) {
        mazu_report* r = nullptr;
        check(mazu_seplab(s.c_str(), &sep, &r));
        ReportPtr report(r);
        pass = pass && mazu_report_pass(report.get());
        text += mazu_report_text(report.get());
      }
      writeText(text, out);
      return pass ? kExitOk : kExitMismatch;
    }
    if (*corpusList) {
      mazu_report* r = nullptr;
      check(mazu_corpus_list(&r));
      return emit(ReportPtr(r), out);
    }
    if (*corpusRun) {
      std::vector<std::string> names = nameList(only);
      std::vector<const char*> ptrs;
      for (const auto& n : names) ptrs.push_back(n.c_str());
      double ratio = corpusRatio.empty() ? 0.0 : rational(corpusRatio, "--h-ratio");
      mazu_report* r = nullptr;
      check(mazu_corpus_run(names.empty() ? nullptr : ptrs.data(), ptrs.size(), ratio, threads, &r));
      ReportPtr report(r);
      if (!quiet)
        std::fprintf(stderr, "corpus run: %s\n", mazu_report_pass(report.get()) ? "all expectations met" : "MISMATCH");
      return emit(report, out);
    }
    if (*corpusExport) {
      mazu_report* list = nullptr;
      check(mazu_corpus_list(&list));
      ReportPtr listReport(list);
      std::vector<std::string> names;
      nlohmann::json doc = nlohmann::json::parse(mazu_report_text(listReport.get()));
      for (const auto& e : doc["results"]["entries"])
        names.push_back(e["name"].get<std::string>());
      for (const auto& n : names) {
        mazu_domain* dp = nullptr;
        check(mazu_domain_from_example(n.c_str(), &dp));
        DomainPtr d(dp);
        mazu_report* r = nullptr;
        check(mazu_domain_spec_json(d.get(), 0.0, &r));
        writeText(mazu_report_text(ReportPtr(r).get()), exportDir + "/" + n + ".json");
        std::printf("%s %s\n", mazu_domain_spec_hash(d.get()), n.c_str());
      }
      return kExitOk;
    }
    if (*render) {
      DomainPtr d = renderDomain.open();
      int dim = mazu_domain_dim(d.get());
      mazu_report* r = nullptr;
      if (!renderPoint.empty()) {
        mazu_ladder_options o = renderLadder.options();
        PointArg p = point(renderPoint, "--point", dim);
        check(mazu_render_verdict(d.get(), p.xyz, &o, &r));
      } else if (!renderFrom.empty() || !renderTo.empty()) {
        if (renderFrom.empty() || renderTo.empty()) throw UsageError("--from and --to go together");
        PointArg a = point(renderFrom, "--from", dim), b = point(renderTo, "--to", dim);
        check(mazu_render_dm_path(d.get(), rational(renderH, "--h"), a.xyz, b.xyz, &r));
      } else {
        check(mazu_render_domain(d.get(), rational(renderH, "--h"), &r));
      }
      writeText(mazu_report_text(ReportPtr(r).get()), svg);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
