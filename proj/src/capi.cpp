#include "mazu.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"

#include "mazu/classifier.hpp"
#include "mazu/completion.hpp"
#include "mazu/corpus.hpp"
#include "mazu/error.hpp"
#include "mazu/geometry.hpp"
#include "mazu/metric.hpp"
#include "mazu/raster.hpp"
#include "mazu/render.hpp"
#include "mazu/separation.hpp"
#include "mazu/spec_io.hpp"

using nlohmann::json;

struct mazu_domain {
  std::string name;
  int dim = 2;
  mazu::SpecFactory factory;
  double referenceH = 0.0;  // 0 for fixed specs
  std::string hash;
  std::string source;  // "file", "json" or "example"
};

struct mazu_report {
  std::string text;
  bool pass = true;
};

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

thread_local std::string lastError;

mazu_status fail(mazu_status s, const std::string& msg) {
  lastError = msg;
  return s;
}

mazu_status statusOf(mazu::ErrorCode code) {
  switch (code) {
    case mazu::ErrorCode::kOk: return MAZU_OK;
    case mazu::ErrorCode::kMalformedSpec: return MAZU_ERR_MALFORMED_SPEC;
    case mazu::ErrorCode::kResolutionTooCoarse: return MAZU_ERR_RESOLUTION_TOO_COARSE;
    case mazu::ErrorCode::kWindowEmpty: return MAZU_ERR_WINDOW_EMPTY;
    case mazu::ErrorCode::kNotBoundary: return MAZU_ERR_NOT_BOUNDARY;
    case mazu::ErrorCode::kDisconnected: return MAZU_ERR_DISCONNECTED;
    case mazu::ErrorCode::kBudgetExceeded: return MAZU_ERR_BUDGET_EXCEEDED;
    case mazu::ErrorCode::kQueryInObstacle: return MAZU_ERR_QUERY_IN_OBSTACLE;
    case mazu::ErrorCode::kNotFinitelyConnected: return MAZU_ERR_NOT_FINITELY_CONNECTED;
    case mazu::ErrorCode::kUnknownExample: return MAZU_ERR_UNKNOWN_EXAMPLE;
    case mazu::ErrorCode::kPayloadTooLarge: return MAZU_ERR_PAYLOAD_TOO_LARGE;
    case mazu::ErrorCode::kInvalidArgument: return MAZU_ERR_INVALID_ARGUMENT;
    case mazu::ErrorCode::kIo: return MAZU_ERR_IO;
  }
  return MAZU_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes and the thread-local
// message.
mazu_status guard(const std::function<void()>& body) {
  try {
    body();
    lastError.clear();
    return MAZU_OK;
  } catch (const mazu::Error& e) {
    return fail(statusOf(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(MAZU_ERR_MALFORMED_SPEC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MAZU_ERR_BUDGET_EXCEEDED, "out of memory");
  } catch (const std::exception& e) {
    return fail(MAZU_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw mazu::Error(mazu::ErrorCode::kInvalidArgument, what);
}

mazu::Point toPoint(const double* p, int dim) {
  require(p != nullptr, "point is null");
  return mazu::Point{p[0], p[1], dim == 3 ? p[2] : 0.0};
}

json pointJson(mazu::Point p, int dim) {
  json a = {p.x, p.y};
  if (dim == 3) a.push_back(p.z);
  return a;
}

double seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

json ladderJson(const mazu_ladder_options& o) {
  return {{"r0", o.r0}, {"kMax", o.kmax}, {"hPolicy", {{"hRatio", o.h_ratio}, {"rule", "h_k = r_k / hRatio"}}}};
}

mazu_ladder_options ladderOrDefault(const mazu_ladder_options* opts) {
  mazu_ladder_options o;
  mazu_ladder_options_init(&o);
  if (opts) o = *opts;
  require(o.r0 > 0 && o.kmax >= 0 && o.h_ratio >= 32, "ladder needs r0 > 0, kmax >= 0 and h_ratio >= 32");
  return o;
}

mazu::DomainSpec specAt(const mazu_domain& d, double h) {
  return d.factory(h > 0 ? h : (d.referenceH > 0 ? d.referenceH : 1.0 / 256));
}

mazu_report* makeReport(const std::string& command, const mazu_domain* d, json parameters, json results,
                        double secs, bool pass = true) {
  json doc = {{"schemaVersion", kSchemaVersion},
              {"toolVersion", kToolVersion},
              {"command", command},
              {"specHash", d ? json(d->hash) : json(nullptr)},
              {"domain", d ? json{{"name", d->name}, {"dim", d->dim}, {"source", d->source}} : json(nullptr)},
              {"parameters", std::move(parameters)},
              {"results", std::move(results)},
              {"pass", pass},
              {"timings", {{"seconds", secs}}}};
  auto* r = new mazu_report;
  r->text = doc.dump(2) + "\n";
  r->pass = pass;
  return r;
}

mazu_report* textReport(std::string text) {
  auto* r = new mazu_report;
  r->text = std::move(text);
  return r;
}

mazu::CellId domainCell(const mazu::Raster& raster, mazu::Point p) {
  mazu::CellId c = raster.locate(p);
  if (c == mazu::kNoCell || !raster.inside(c))
    throw mazu::Error(mazu::ErrorCode::kQueryInObstacle, "query point is not in a domain cell at this spacing");
  return c;
}

mazu::BoundaryVerdict runClassify(const mazu_domain& d, mazu::Point x0, const mazu_ladder_options& o) {
  mazu::LadderPolicy policy;
  policy.hRatio = o.h_ratio;
  return mazu::classifyPoint(d.factory, x0, o.r0, o.kmax, policy);
}

mazu_domain* newDomain(std::string name, int dim, mazu::SpecFactory factory, double referenceH, std::string source) {
  auto* d = new mazu_domain;
  d->name = std::move(name);
  d->dim = dim;
  d->factory = std::move(factory);
  d->referenceH = referenceH;
  d->source = std::move(source);
  d->hash = mazu::hashHex(mazu::specHash(specAt(*d, 0)));
  return d;
}

}  // namespace

extern "C" {

const char* mazu_version(void) { return kToolVersion; }

const char* mazu_status_name(mazu_status status) {
  switch (status) {
    case MAZU_OK: return "Ok";
    case MAZU_ERR_INTERNAL: return "Internal";
    default: return mazu::errorCodeName(static_cast<mazu::ErrorCode>(status));
  }
}

const char* mazu_last_error(void) { return lastError.c_str(); }

void mazu_ladder_options_init(mazu_ladder_options* opts) {
  if (!opts) return;
  opts->r0 = 0.25;
  opts->kmax = 3;
  opts->h_ratio = 64.0;
}

void mazu_fiber_options_init(mazu_fiber_options* opts) {
  if (!opts) return;
  mazu::FiberOptions f;
  opts->threshold_factor = f.thresholdFactor;
  opts->strict = f.strict ? 1 : 0;
  opts->phi_samples = 100;
  opts->seed = 1;
}

void mazu_seplab_options_init(mazu_seplab_options* opts) {
  if (!opts) return;
  mazu::SuiteOptions s;
  opts->count = s.count;
  opts->seed = s.seed;
  opts->h = s.h;
  opts->min_separation = s.minSeparation;
  opts->max_attempts = s.maxAttempts;
  opts->max_sets = s.maxSets;
}

mazu_status mazu_parse_rational(const char* text, double* out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = mazu::parseRational(text);
  });
}

mazu_status mazu_parse_point(const char* text, double* out, int* dim) {
  return guard([&] {
    require(text && out && dim, "null argument");
    std::string s(text);
    int commas = 0;
    for (char c : s) commas += c == ',';
    mazu::Point p = mazu::parsePoint(s);
    out[0] = p.x;
    out[1] = p.y;
    out[2] = p.z;
    *dim = commas + 1;
  });
}

mazu_status mazu_domain_from_json(const char* text, mazu_domain** out) {
  return guard([&] {
    require(text && out, "null argument");
    mazu::DomainSpec spec = mazu::specFromJson(json::parse(text));
    std::string name = spec.name;
    int dim = spec.dim;
    *out = newDomain(name, dim, mazu::fixedSpec(std::move(spec)), 0.0, "json");
  });
}

mazu_status mazu_domain_from_file(const char* path, mazu_domain** out) {
  return guard([&] {
    require(path && out, "null argument");
    mazu::DomainSpec spec = mazu::loadSpecFile(path);
    std::string name = spec.name;
    int dim = spec.dim;
    *out = newDomain(name, dim, mazu::fixedSpec(std::move(spec)), 0.0, "file");
  });
}

mazu_status mazu_domain_from_example(const char* name, mazu_domain** out) {
  return guard([&] {
    require(name && out, "null argument");
    mazu::CorpusEntry e = mazu::buildExample(name);
    *out = newDomain(e.name, e.dim, e.factory, e.referenceH, "example");
  });
}

void mazu_domain_free(mazu_domain* domain) { delete domain; }

int mazu_domain_dim(const mazu_domain* domain) { return domain ? domain->dim : 0; }

const char* mazu_domain_spec_hash(const mazu_domain* domain) { return domain ? domain->hash.c_str() : ""; }

mazu_status mazu_domain_spec_json(const mazu_domain* domain, double h, mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    *out = textReport(mazu::specToJson(specAt(*domain, h)).dump(2) + "\n");
  });
}

mazu_status mazu_classify(const mazu_domain* domain, const double* point, const mazu_ladder_options* opts,
                          mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    auto o = ladderOrDefault(opts);
    mazu::Point x0 = toPoint(point, domain->dim);
    auto t0 = std::chrono::steady_clock::now();
    mazu::BoundaryVerdict v = runClassify(*domain, x0, o);
    json params = ladderJson(o);
    params["point"] = pointJson(x0, domain->dim);
    *out = makeReport("classify", domain, std::move(params), v.toJson(), seconds(t0), v.auditViolations.empty());
  });
}

mazu_status mazu_classify_boundary(const mazu_domain* domain, double stride, int limit,
                                   const mazu_ladder_options* opts, mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    require(stride > 0 && limit > 0, "stride and limit must be positive");
    auto o = ladderOrDefault(opts);
    auto t0 = std::chrono::steady_clock::now();
    mazu::DomainSpec spec = specAt(*domain, stride);
    mazu::Raster raster = mazu::rasterize(spec, spec.defaultWindow(), stride);
    auto samples = mazu::boundarySamples(spec, raster);
    json rows = json::array();
    int audit = 0;
    for (std::size_t i = 0; i < samples.size() && static_cast<int>(rows.size()) < limit; ++i) {
      json row = {{"point", pointJson(samples[i].point, domain->dim)},
                  {"sampleKind", mazu::boundaryKindName(samples[i].kind)}};
      try {
        mazu::BoundaryVerdict v = runClassify(*domain, samples[i].point, o);
        std::vector<int> ns;
        for (const auto& b : v.ladder.scales) ns.push_back(b.N);
        row["classification"] = v.classification.label();
        row["nPerScale"] = ns;
        row["auditViolations"] = v.auditViolations;
        audit += static_cast<int>(v.auditViolations.size());
      } catch (const mazu::Error& e) {
        row["error"] = std::string(mazu::errorCodeName(e.code())) + ": " + e.what();
      }
      rows.push_back(std::move(row));
    }
    json params = ladderJson(o);
    params["stride"] = stride;
    params["limit"] = limit;
    json results = {{"samples", samples.size()}, {"classified", rows}, {"auditViolations", audit}};
    *out = makeReport("classify-boundary", domain, std::move(params), std::move(results), seconds(t0), audit == 0);
  });
}

mazu_status mazu_dm(const mazu_domain* domain, double h, const double* from, const double* to, int exact,
                    uint64_t budget, mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    require(h > 0, "h must be positive");
    auto t0 = std::chrono::steady_clock::now();
    mazu::DomainSpec spec = specAt(*domain, h);
    mazu::Raster raster = mazu::rasterize(spec, spec.defaultWindow(), h);
    mazu::Point a = toPoint(from, domain->dim), b = toPoint(to, domain->dim);
    mazu::CellId x = domainCell(raster, a), y = domainCell(raster, b);
    mazu::DmBound bound = mazu::dmBounds(raster, x, y);
    json results = bound.toJson(raster);
    results["euclidean"] = mazu::dist(raster.center(x), raster.center(y));
    results["inner"] = mazu::innerDistance(raster, x, y);
    results["innerInflation"] = std::sqrt(static_cast<double>(domain->dim));
    if (exact) {
      mazu::DmExactResult ex = mazu::dmExact(raster, x, y, budget ? budget : 2'000'000);
      results["exact"] = ex.toJson(raster);
    }
    json params = {{"h", h},
                   {"from", pointJson(a, domain->dim)},
                   {"to", pointJson(b, domain->dim)},
                   {"exact", exact != 0},
                   {"budget", budget}};
    *out = makeReport("dm", domain, std::move(params), std::move(results), seconds(t0));
  });
}

mazu_status mazu_net_profile(const mazu_domain* domain, const double* eps, size_t count, const double* spacings,
                             size_t spacing_count, mazu_report** out) {
  return guard([&] {
    require(domain && out && eps && count > 0, "net profile needs at least one epsilon");
    auto t0 = std::chrono::steady_clock::now();
    mazu::NetPolicy policy;
    if (spacings && spacing_count > 0) policy.spacings.assign(spacings, spacings + spacing_count);
    std::vector<double> epsilons(eps, eps + count);
    mazu::NetProfile profile = mazu::totalBoundednessProfile(domain->factory, epsilons, policy);
    json params = {{"epsilons", epsilons},
                   {"spacings", policy.spacings},
                   {"growthFactor", policy.growthFactor},
                   {"budget", policy.budget}};
    json results = profile.toJson();
    results["divergenceEvidence"] = profile.divergenceEvidence();
    *out = makeReport("net", domain, std::move(params), std::move(results), seconds(t0));
  });
}

mazu_status mazu_fibers(const mazu_domain* domain, const double* point, const mazu_ladder_options* opts,
                        const mazu_fiber_options* fiber_opts, mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    auto o = ladderOrDefault(opts);
    mazu_fiber_options f;
    mazu_fiber_options_init(&f);
    if (fiber_opts) f = *fiber_opts;
    require(f.threshold_factor > 0 && f.phi_samples >= 0, "invalid fiber options");
    mazu::Point x0 = toPoint(point, domain->dim);
    auto t0 = std::chrono::steady_clock::now();
    mazu::BoundaryVerdict v = runClassify(*domain, x0, o);
    mazu::FiberOptions fo;
    fo.thresholdFactor = f.threshold_factor;
    fo.strict = f.strict != 0;
    mazu::FiberReport fibers = mazu::boundaryFibers(v, fo);
    mazu::PhiReport phi = mazu::projectPhi(fibers, v, f.phi_samples, f.seed);
    json params = ladderJson(o);
    params["point"] = pointJson(x0, domain->dim);
    params["thresholdFactor"] = f.threshold_factor;
    params["strict"] = f.strict != 0;
    params["phiSamples"] = f.phi_samples;
    params["seed"] = f.seed;
    json results = {{"fibers", fibers.toJson()}, {"phi", phi.toJson()}, {"classification", v.classification.label()}};
    *out = makeReport("fibers", domain, std::move(params), std::move(results), seconds(t0),
                      phi.lipschitzViolations == 0);
  });
}

mazu_status mazu_seplab(const char* suite, const mazu_seplab_options* opts, mazu_report** out) {
  return guard([&] {
    require(suite && out, "null argument");
    mazu_seplab_options o;
    mazu_seplab_options_init(&o);
    if (opts) o = *opts;
    mazu::SuiteOptions so;
    so.count = o.count;
    so.seed = o.seed;
    so.h = o.h;
    so.minSeparation = o.min_separation;
    so.maxAttempts = o.max_attempts;
    so.maxSets = o.max_sets;
    require(so.count > 0 && so.h > 0 && so.maxAttempts > 0 && so.maxSets > 0, "invalid seplab options");
    auto t0 = std::chrono::steady_clock::now();
    mazu::SuiteReport rep = mazu::runSeparationSuite(suite, so);
    json params = {{"suite", suite},   {"count", so.count}, {"seed", so.seed},       {"h", so.h},
                   {"tau", 1.5},       {"minSeparation", so.minSeparation},          {"maxAttempts", so.maxAttempts},
                   {"maxSets", so.maxSets}};
    json results = rep.toJson();
    results.erase("seconds");
    *out = makeReport("seplab", nullptr, std::move(params), std::move(results), seconds(t0), rep.pass());
  });
}

mazu_status mazu_corpus_list(mazu_report** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    json rows = json::array();
    for (const auto& name : mazu::exampleNames()) {
      mazu::CorpusEntry e = mazu::buildExample(name);
      json probes = json::array();
      for (const auto& p : e.probes) {
        json checks = json::array();
        for (const auto& x : p.expectations)
          checks.push_back({{"key", x.key}, {"expected", mazu::expectedName(x.value)}, {"n", x.n}, {"claim", x.claim}});
        probes.push_back({{"label", p.label},
                          {"point", pointJson(p.x0, e.dim)},
                          {"r0", p.r0},
                          {"kMax", p.kMax},
                          {"expectations", checks}});
      }
      rows.push_back({{"name", e.name},
                      {"dim", e.dim},
                      {"description", e.description},
                      {"truncation", e.truncation},
                      {"hRatio", e.hRatio},
                      {"referenceH", e.referenceH},
                      {"specHash", mazu::hashHex(mazu::specHash(e.factory(e.referenceH)))},
                      {"probes", probes}});
    }
    *out = makeReport("corpus-list", nullptr, json::object(), {{"entries", rows}}, 0.0);
  });
}

mazu_status mazu_corpus_run(const char* const* names, size_t count, double h_ratio, int threads,
                            mazu_report** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    std::vector<std::string> list;
    if (names)
      for (size_t i = 0; i < count; ++i) list.emplace_back(names[i]);
    else
      list = mazu::exampleNames();
    mazu::CorpusOptions opts;
    opts.hRatioOverride = h_ratio > 0 ? h_ratio : 0.0;
    opts.threads = threads;
    auto t0 = std::chrono::steady_clock::now();
    mazu::CorpusReport rep = mazu::runCorpus(list, opts);
    json params = {{"entries", list},
                   {"hRatioOverride", opts.hRatioOverride},
                   {"threads", threads > 0 ? threads : mazu::defaultThreads()}};
    json results = rep.toJson();
    json perProbe = json::array();
    for (const auto& p : rep.probes)
      perProbe.push_back({{"entry", p.entry}, {"probe", p.probe.label}, {"seconds", p.seconds}});
    mazu_report* r = makeReport("corpus-run", nullptr, std::move(params), std::move(results), seconds(t0), rep.pass());
    json doc = json::parse(r->text);
    doc["timings"]["probes"] = perProbe;
    r->text = doc.dump(2) + "\n";
    *out = r;
  });
}

mazu_status mazu_render_domain(const mazu_domain* domain, double h, mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    require(h > 0, "h must be positive");
    mazu::DomainSpec spec = specAt(*domain, h);
    mazu::Raster raster = mazu::rasterize(spec, spec.defaultWindow(), h);
    *out = textReport(mazu::renderRasterSvg(raster));
  });
}

mazu_status mazu_render_verdict(const mazu_domain* domain, const double* point, const mazu_ladder_options* opts,
                                mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    auto o = ladderOrDefault(opts);
    mazu::BoundaryVerdict v = runClassify(*domain, toPoint(point, domain->dim), o);
    *out = textReport(mazu::renderVerdictSvg(v));
  });
}

mazu_status mazu_render_dm_path(const mazu_domain* domain, double h, const double* from, const double* to,
                                mazu_report** out) {
  return guard([&] {
    require(domain && out, "null argument");
    require(h > 0, "h must be positive");
    mazu::DomainSpec spec = specAt(*domain, h);
    mazu::Raster raster = mazu::rasterize(spec, spec.defaultWindow(), h);
    mazu::Point a = toPoint(from, domain->dim), b = toPoint(to, domain->dim);
    mazu::DmBound bound = mazu::dmBounds(raster, domainCell(raster, a), domainCell(raster, b));
    mazu::SvgStyle style;
    style.probes = {a, b};
    if (domain->dim == 3) style.slice = raster.coords(raster.locate(a))[2];
    *out = textReport(mazu::renderPathSvg(raster, bound.witnessPath, style));
  });
}

const char* mazu_report_text(const mazu_report* report) { return report ? report->text.c_str() : ""; }

size_t mazu_report_size(const mazu_report* report) { return report ? report->text.size() : 0; }

int mazu_report_pass(const mazu_report* report) { return report && report->pass ? 1 : 0; }

void mazu_report_free(mazu_report* report) { delete report; }

}  // extern "C"
