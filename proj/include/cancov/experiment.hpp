#pragma once

// One experiment: generate a pack, build E_{d,λ} and its ball cover, run the
// minimal canonical pipeline, check it, and sweep the lower bound.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cancov/generators.hpp"
#include "cancov/io.hpp"
#include "cancov/providers.hpp"
#include "cancov/random.hpp"

namespace cancov {

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  GenParams pack;
  std::string ladder = "default";  // default | harmonic | interleaved | explicit
  std::vector<double> ladder_radii;
  std::string lambda_kind = "linear";  // linear | constant
  double lambda_value = 1.0;           // slope or constant value
  std::string provider = "auto";       // auto | finite_dim0 | interval_dim1 | singleton
  std::optional<std::size_t> shift;
  std::uint64_t seed = 1;
  std::size_t candidates = 200;
  std::size_t max_tries = 4000;
  Tol tol;
};

inline ExperimentConfig config_from_json(const Json& j) {
  return detail::parse_guard([&] {
    ExperimentConfig c;
    if (!j.contains("pack")) throw Error(ErrorCode::BadConfig, "missing pack");
    const Json& p = j["pack"];
    c.pack = default_params(pack_kind_from_string(p.at("kind").get<std::string>()));
    c.pack.base_points = p.value("base_points", c.pack.base_points);
    c.pack.levels = p.value("levels", c.pack.levels);
    c.pack.ratio = p.value("ratio", c.pack.ratio);
    c.pack.y_points = p.value("y_points", c.pack.y_points);
    if (j.contains("ladder")) {
      if (j["ladder"].is_array()) {
        c.ladder = "explicit";
        c.ladder_radii = j["ladder"].get<std::vector<double>>();
      } else {
        c.ladder = j["ladder"].get<std::string>();
      }
    }
    if (c.ladder != "default" && c.ladder != "harmonic" && c.ladder != "interleaved" && c.ladder != "explicit")
      throw Error(ErrorCode::BadConfig, "unknown ladder " + c.ladder);
    if (j.contains("lambda")) {
      const Json& l = j["lambda"];
      c.lambda_kind = l.value("kind", c.lambda_kind);
      c.lambda_value = l.value(c.lambda_kind == "constant" ? "value" : "slope", c.lambda_value);
    }
    if (c.lambda_kind != "linear" && c.lambda_kind != "constant")
      throw Error(ErrorCode::BadConfig, "unknown lambda kind " + c.lambda_kind);
    c.provider = j.value("provider", c.provider);
    if (c.provider != "auto" && c.provider != "finite_dim0" && c.provider != "interval_dim1" &&
        c.provider != "singleton")
      throw Error(ErrorCode::BadConfig, "unknown provider " + c.provider);
    if (j.contains("shift")) c.shift = j["shift"].get<std::size_t>();
    if (j.contains("sweep")) {
      const Json& s = j["sweep"];
      c.seed = s.value("seed", c.seed);
      c.candidates = s.value("candidates", c.candidates);
      c.max_tries = s.value("max_tries", c.max_tries);
    }
    if (j.contains("tolerances")) {
      c.tol.c0 = j["tolerances"].value("c0", c.tol.c0);
      c.tol.unif = j["tolerances"].value("unif", c.tol.unif);
    }
    return c;
  });
}

inline Json to_json(const ExperimentConfig& c) {
  Json pack{{"kind", to_string(c.pack.kind)},
            {"base_points", c.pack.base_points},
            {"levels", c.pack.levels},
            {"ratio", c.pack.ratio},
            {"y_points", c.pack.y_points}};
  Json j{{"pack", std::move(pack)}};
  j["ladder"] = c.ladder == "explicit" ? Json(c.ladder_radii) : Json(c.ladder);
  j["lambda"] = Json{{"kind", c.lambda_kind}, {c.lambda_kind == "constant" ? "value" : "slope", c.lambda_value}};
  j["provider"] = c.provider;
  if (c.shift) j["shift"] = *c.shift;
  j["sweep"] = Json{{"seed", c.seed}, {"candidates", c.candidates}, {"max_tries", c.max_tries}};
  j["tolerances"] = Json{{"c0", c.tol.c0}, {"unif", c.tol.unif}, {"triangle", Tolerances{}.triangle}};
  return j;
}

struct ExperimentRun {
  Json report;
  bool all_pass = false;
  std::optional<DiscretePack> pack;
  Cover cover;  // the final canonical cover
};

struct SweepStats {
  std::size_t requested = 0;
  std::size_t accepted = 0;
  std::size_t tries = 0;
  std::size_t refutations = 0;
  int min_multiplicity = 0;
  std::optional<BoundCertificate> first_refutation;
};

namespace detail {

inline ScaleLadder ladder_for(const DiscretePack& pack, const ExperimentConfig& c) {
  if (c.ladder == "harmonic") return harmonic_ladder(pack);
  if (c.ladder == "interleaved") return interleaved_ladder(pack);
  if (c.ladder == "explicit") {
    ScaleLadder l(c.ladder_radii);
    check_ladder(pack, l);
    return l;
  }
  return default_ladder(pack);
}

/// {E(C)} for a random partition of X̂ into clusters whose radius is at most a
/// random multiple of their depth, with a few merges inside a depth band.
inline Cover cluster_candidate(Rng& rng, const DiscretePack& pack, const Relation& e) {
  const PointSet& in = pack.interior();
  PointSet centers = random_subset(rng, in, std::uniform_real_distribution<double>(0.03, 0.5)(rng));
  const double scale = std::exp(std::uniform_real_distribution<double>(std::log(0.25), std::log(8.0))(rng));
  auto band = [&](PointId a, PointId b) {
    const double r = pack.depth(a) / pack.depth(b);
    return r >= 0.4 && r <= 2.5;
  };
  std::vector<std::size_t> label(pack.size());
  for (PointId x : in) {
    double best = kInfinity;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double d = pack.dist(x, centers[i]);
      if (!band(centers[i], x) || d > scale * std::max(pack.depth(x), pack.depth(centers[i]))) continue;
      if (d < best) best = d, pick = i;
    }
    if (best == kInfinity) {
      pick = centers.size();
      centers.push_back(x);
    }
    label[x] = pick;
  }
  const std::size_t merges = uniform_index(rng, 3);
  for (std::size_t m = 0; m < merges; ++m) {
    const std::size_t a = uniform_index(rng, centers.size());
    const std::size_t b = uniform_index(rng, centers.size());
    if (a == b || !band(centers[a], centers[b])) continue;
    for (PointId x : in)
      if (label[x] == b) label[x] = a;
  }
  std::vector<PointSet> clusters(centers.size());
  for (PointId x : in) clusters[label[x]].push_back(x);
  Cover c{{}, in};
  for (const auto& s : clusters)
    if (!s.empty()) c.members.push_back(image(e, s));
  return c;
}

/// The canonical cover with one to three pairs of intersecting members merged.
inline Cover merge_candidate(Rng& rng, const Cover& alpha) {
  Cover c = alpha;
  const std::size_t merges = 1 + uniform_index(rng, 3);
  for (std::size_t m = 0; m < merges && c.members.size() > 1; ++m) {
    const std::size_t a = uniform_index(rng, c.members.size());
    std::vector<std::size_t> partners;
    for (std::size_t b = 0; b < c.members.size(); ++b)
      if (b != a && intersects(c.members[a], c.members[b])) partners.push_back(b);
    if (partners.empty()) continue;
    const std::size_t b = partners[uniform_index(rng, partners.size())];
    c.members[a] = set_union(c.members[a], c.members[b]);
    c.members.erase(c.members.begin() + static_cast<std::ptrdiff_t>(b));
  }
  return c;
}

}  // namespace detail

/// Lower-bound checks on random E-open candidate covers, keeping only those
/// that cover X̂ and pass the uniformity verdict.
inline SweepStats lower_bound_sweep(const DiscretePack& pack, const ScaleLadder& ladder, const Relation& e,
                                    const Cover& canonical, std::uint64_t seed, std::size_t requested,
                                    std::size_t max_tries, double tol = Tol{}.unif) {
  Rng rng(seed);
  const Cover balls = ball_cover(e, pack.interior());
  SweepStats s;
  s.requested = requested;
  s.min_multiplicity = std::numeric_limits<int>::max();
  while (s.accepted < requested && s.tries < max_tries) {
    const Cover c = s.tries++ % 2 == 0 ? detail::cluster_candidate(rng, pack, e)
                                       : detail::merge_candidate(rng, canonical);
    const auto cert = lower_bound_check_with(pack, ladder, c, &balls, tol);
    if (cert.verdict == BoundVerdict::PRECONDITION_UNMET) continue;
    ++s.accepted;
    s.min_multiplicity = std::min(s.min_multiplicity, cert.mult_at_witness);
    if (cert.verdict == BoundVerdict::REFUTATION && s.refutations++ == 0) s.first_refutation = cert;
  }
  if (s.accepted == 0) s.min_multiplicity = 0;
  return s;
}

namespace detail {

inline Json stage(const std::string& name, const std::string& verdict, Json data) {
  return Json{{"name", name}, {"verdict", verdict}, {"data", std::move(data)}};
}

inline const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

template <class F>
auto tagged(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), "stage " + name + ": " + e.detail());
  }
}

}  // namespace detail

inline ExperimentRun run_experiment(const ExperimentConfig& cfg) {
  ExperimentRun run;
  Json stages = Json::array();

  run.pack = detail::tagged("generate", [&] { return generate_pack(cfg.pack); });
  const DiscretePack& pack = *run.pack;
  const int dim = pack.meta().known_dim;
  stages.push_back(detail::stage("generate", "PASS",
                                 Json{{"kind", to_string(pack.meta().kind)},
                                      {"size", pack.size()},
                                      {"boundary", pack.boundary().size()},
                                      {"known_dim", dim},
                                      {"cylindrical", pack.meta().cylindrical},
                                      {"k_sup", pack.k_sup()},
                                      {"delta_res", pack.delta_res()},
                                      {"delta_dense", pack.delta_dense()}}));

  const ScaleLadder ladder = detail::tagged("ladder", [&] { return detail::ladder_for(pack, cfg); });
  const std::string provider_tag =
      cfg.provider != "auto" ? cfg.provider
      : !pack.meta().cylindrical ? "singleton"
      : dim == 0 ? "finite_dim0"
                 : "interval_dim1";

  Json summary{{"dim_plus_2", dim + 2}, {"naive_bound_2dim_plus_2", 2 * dim + 2}};
  std::optional<Relation> e;
  int achieved = 0;

  if (provider_tag == "singleton") {
    const std::string skip = "the singleton cover needs no γ";
    stages.push_back(detail::stage("controlled_E", "SKIPPED", Json{{"reason", skip}}));
    stages.push_back(detail::stage("ball_cover", "SKIPPED", Json{{"reason", skip}}));
    run.cover = singleton_cover(pack.interior());
    const auto uv = uniformity_verdict(pack, ladder, run.cover, cfg.tol.unif);
    achieved = multiplicity(run.cover);
    const bool ok = run.cover.covers() && uv.verdict == Verdict::ACCEPT;
    stages.push_back(detail::stage("singleton_cover", detail::pass(ok),
                                   Json{{"members", run.cover.size()},
                                        {"covers", run.cover.covers()},
                                        {"multiplicity", achieved},
                                        {"uniformity_verdict", to_json(uv)}}));
    stages.push_back(detail::stage("checks", detail::pass(ok && achieved == 1),
                                   Json{{"achieved_multiplicity", achieved}, {"canonical", ok}}));
  } else {
    const LambdaSpec lambda = cfg.lambda_kind == "constant" ? constant_lambda(ladder, cfg.lambda_value)
                                                            : linear_lambda(ladder, cfg.lambda_value);
    e = detail::tagged("controlled_E", [&] { return controlled_E(pack, ladder, lambda, cfg.tol.c0); });
    const auto c0 = c0_modulus(pack, ladder, *e, cfg.tol.c0);
    stages.push_back(detail::stage("controlled_E", to_string(c0.verdict) == std::string("ACCEPT") ? "PASS" : "FAIL",
                                   Json{{"pairs", e->pair_count()},
                                        {"symmetric", is_symmetric(*e)},
                                        {"c0_verdict", to_json(c0)}}));

    const Cover gamma = detail::tagged("ball_cover", [&] { return ball_cover(*e, pack.interior()); });
    const auto gv = uniformity_verdict(pack, ladder, gamma, cfg.tol.unif);
    stages.push_back(detail::stage("ball_cover", detail::pass(gv.verdict == Verdict::ACCEPT),
                                   Json{{"members", gamma.size()},
                                        {"multiplicity", multiplicity(gamma)},
                                        {"uniformity_verdict", to_json(gv)}}));

    PipelineOptions opt;
    opt.ladder = ladder;
    opt.unif_tol = cfg.tol.unif;
    opt.shift = cfg.shift;
    const PipelineReport rep = detail::tagged("minimal_canonical", [&] {
      std::unique_ptr<CoverProvider> prov;
      if (provider_tag == "finite_dim0") prov = std::make_unique<FiniteDim0Provider>();
      else prov = std::make_unique<IntervalDim1Provider>(IntervalDim1Provider::for_pack(pack));
      return minimal_canonical(pack, gamma, *prov, opt);
    });
    run.cover = rep.result.cover;
    achieved = rep.result.multiplicity;
    const bool canonical = run.cover.covers() && rep.result.witness_ok &&
                           rep.result.uniformity.verdict == Verdict::ACCEPT;
    stages.push_back(detail::stage("minimal_canonical", detail::pass(canonical), to_json(pack, rep)));

    const bool within_common = rep.consecutive_common.empty() || achieved <= rep.max_common_mult;
    const bool provider_ok = rep.provider_max_mult <= dim + 1 && rep.max_common_mult <= dim + 2;
    stages.push_back(detail::stage("checks", detail::pass(canonical && within_common && provider_ok),
                                   Json{{"achieved_multiplicity", achieved},
                                        {"dim_plus_2", rep.bound_dim_plus_2},
                                        {"naive_bound_2dim_plus_2", rep.naive_bound_2dim_plus_2},
                                        {"max_common_mult", rep.max_common_mult},
                                        {"mult_le_common", within_common},
                                        {"provider_max_mult", rep.provider_max_mult},
                                        {"provider_ok", provider_ok},
                                        {"witness_ok", rep.result.witness_ok}}));
  }

  if (!pack.meta().cylindrical || !e) {
    stages.push_back(detail::stage("lower_bound_sweep", "SKIPPED", Json{{"reason", "NonCylindricalPack"}}));
  } else {
    const auto cert = lower_bound_check(pack, ladder, run.cover, &*e, cfg.tol.unif);
    const SweepStats s = detail::tagged("lower_bound_sweep", [&] {
      return lower_bound_sweep(pack, ladder, *e, run.cover, cfg.seed, cfg.candidates, cfg.max_tries, cfg.tol.unif);
    });
    Json data{{"canonical", to_json(cert, pack)}, {"requested", s.requested},   {"accepted", s.accepted},
              {"tries", s.tries},                 {"refutations", s.refutations}, {"min_multiplicity", s.min_multiplicity},
              {"bound", dim + 2}};
    if (s.first_refutation) data["first_refutation"] = to_json(*s.first_refutation, pack);
    const bool ok = cert.verdict == BoundVerdict::HOLDS && s.refutations == 0 && s.accepted >= s.requested;
    stages.push_back(detail::stage("lower_bound_sweep", detail::pass(ok), std::move(data)));
  }

  Json failed = Json::array();
  for (const auto& st : stages)
    if (st["verdict"] == "FAIL") failed.push_back(st["name"]);
  run.all_pass = failed.empty();
  summary["achieved_multiplicity"] = achieved;
  summary["all_pass"] = run.all_pass;
  summary["failed_stages"] = std::move(failed);
  run.report = Json{{"schema_version", kReportSchemaVersion},
                    {"config", to_json(cfg)},
                    {"stages", std::move(stages)},
                    {"summary", std::move(summary)}};
  return run;
}

inline ExperimentConfig default_config(PackKindTag kind) {
  ExperimentConfig c;
  c.pack = default_params(kind);
  return c;
}

}  // namespace cancov
