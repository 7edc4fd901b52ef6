#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cancov/experiment.hpp"
#include "cancov/svg.hpp"
#include "cancov/verify.hpp"

using namespace cancov;

namespace {

int pack_gen(const std::string& kind, int base_points, int levels, double ratio, int y_points,
             const std::string& out) {
  GenParams g = default_params(pack_kind_from_string(kind));
  if (base_points > 0) g.base_points = base_points;
  if (levels > 0) g.levels = levels;
  if (ratio > 0) g.ratio = ratio;
  if (y_points > 0) g.y_points = y_points;
  const DiscretePack pack = generate_pack(g);
  write_json_file(out, to_json(pack));
  std::printf("%s: %zu points, %zu on the boundary, k_sup %.6g, delta_res %.6g\n", to_string(g.kind).c_str(),
              pack.size(), pack.boundary().size(), pack.k_sup(), pack.delta_res());
  return 0;
}

int cover_build(const std::string& pack_path, const std::string& ladder_kind, double slope,
                const std::string& provider, const std::string& out, const std::string& report_out,
                const std::string& relation_out, const std::string& curve_out) {
  const DiscretePack pack = pack_from_json(read_json_file(pack_path));
  ExperimentConfig cfg;
  cfg.ladder = ladder_kind;
  const ScaleLadder ladder = detail::ladder_for(pack, cfg);
  const Relation e = controlled_E(pack, ladder, linear_lambda(ladder, slope));
  const auto c0 = c0_modulus(pack, ladder, e);
  const Cover gamma = ball_cover(e, pack.interior());
  std::unique_ptr<CoverProvider> prov;
  if (provider == "auto") prov = provider_for_dim(pack, pack.meta().known_dim);
  else if (provider == "finite_dim0") prov = std::make_unique<FiniteDim0Provider>();
  else if (provider == "interval_dim1") prov = std::make_unique<IntervalDim1Provider>(IntervalDim1Provider::for_pack(pack));
  else throw Error(ErrorCode::BadConfig, "unknown provider " + provider);
  PipelineOptions opt;
  opt.ladder = ladder;
  const PipelineReport rep = minimal_canonical(pack, gamma, *prov, opt);
  write_json_file(out, to_json(pack, rep.result.cover, Target::interior));
  if (!report_out.empty()) write_json_file(report_out, to_json(pack, rep));
  if (!relation_out.empty()) write_json_file(relation_out, to_json(pack, e));
  if (!curve_out.empty()) write_text_file(curve_out, curve_csv(rep.result.uniformity.curve));
  const bool ok = c0.verdict == Verdict::ACCEPT && rep.result.witness_ok &&
                  rep.result.uniformity.verdict == Verdict::ACCEPT && rep.result.cover.covers();
  std::printf("c0 %s, %zu members, multiplicity %d (dim + 2 = %d, 2 dim + 2 = %d), uniformity %s, witness %s\n",
              to_string(c0.verdict), rep.result.cover.size(), rep.result.multiplicity, rep.bound_dim_plus_2,
              rep.naive_bound_2dim_plus_2, to_string(rep.result.uniformity.verdict), rep.result.witness_ok ? "ok" : "bad");
  return ok ? 0 : 1;
}

int verify(std::uint64_t seed, const VerifySizes& sizes) {
  const VerifySummary s = verify_suite(seed, sizes);
  for (const auto& c : s.checks) {
    std::printf("%-30s %8zu instances %4zu failures", c.name.c_str(), c.instances, c.failures);
    if (c.failures) std::printf("  first: %s", c.first_failure.c_str());
    std::printf("\n");
  }
  std::printf("%s\n", s.ok() ? "all checks pass" : "FAILURES");
  return s.ok() ? 0 : 1;
}

int experiment(const std::string& config, const std::string& out, const std::string& svg) {
  const ExperimentRun run = run_experiment(config_from_json(read_json_file(config)));
  write_json_file(out, run.report);
  if (!svg.empty()) write_text_file(svg, emit_svg(*run.pack, &run.cover));
  for (const auto& st : run.report["stages"])
    std::printf("%-20s %s\n", st["name"].get<std::string>().c_str(), st["verdict"].get<std::string>().c_str());
  const auto& sum = run.report["summary"];
  std::printf("achieved multiplicity %d, dim + 2 = %d\n", sum["achieved_multiplicity"].get<int>(),
              sum["dim_plus_2"].get<int>());
  return run.all_pass ? 0 : 1;
}

int render(const std::string& pack_path, const std::string& cover_path, const std::string& out) {
  const DiscretePack pack = pack_from_json(read_json_file(pack_path));
  if (cover_path.empty()) {
    write_text_file(out, emit_svg(pack));
  } else {
    const Cover c = cover_from_json(pack, read_json_file(cover_path));
    write_text_file(out, emit_svg(pack, &c));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical covers of discrete compactification packs"};
  app.require_subcommand(1);

  auto* pack_cmd = app.add_subcommand("pack", "pack utilities");
  pack_cmd->require_subcommand(1);
  auto* gen = pack_cmd->add_subcommand("gen", "generate a pack");
  std::string kind, out;
  int base_points = 0, levels = 0, y_points = 0;
  double ratio = 0;
  gen->add_option("--kind", kind, "finite_cylinder | interval_cylinder | circle_in_disk | cube_face | countable_example")
      ->required();
  gen->add_option("--base-points", base_points);
  gen->add_option("--levels", levels);
  gen->add_option("--ratio", ratio);
  gen->add_option("--y-points", y_points);
  gen->add_option("--out", out)->required();

  auto* cover_cmd = app.add_subcommand("cover", "cover utilities");
  cover_cmd->require_subcommand(1);
  auto* build = cover_cmd->add_subcommand("build", "minimal canonical cover of a pack");
  std::string pack_path, ladder_kind = "default", provider = "auto", report_out, relation_out, curve_out;
  double slope = 1.0;
  build->add_option("--pack", pack_path)->required();
  build->add_option("--ladder", ladder_kind, "default | harmonic | interleaved");
  build->add_option("--lambda-slope", slope);
  build->add_option("--provider", provider, "auto | finite_dim0 | interval_dim1");
  build->add_option("--out", out)->required();
  build->add_option("--report", report_out);
  build->add_option("--relation", relation_out);
  build->add_option("--curve-csv", curve_out);

  auto* verify_cmd = app.add_subcommand("verify", "property sweeps");
  std::uint64_t seed = 1;
  VerifySizes sizes;
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--identity-instances", sizes.identity_instances);
  verify_cmd->add_option("--ext-packs", sizes.ext_packs);
  verify_cmd->add_option("--lemma-instances", sizes.lemma_instances);
  verify_cmd->add_option("--doubling-instances", sizes.doubling_instances);

  auto* exp_cmd = app.add_subcommand("experiment", "run an experiment config");
  std::string config, svg;
  exp_cmd->add_option("--config", config)->required();
  exp_cmd->add_option("--out", out)->required();
  exp_cmd->add_option("--svg", svg);

  auto* render_cmd = app.add_subcommand("render", "SVG of a pack and cover");
  std::string cover_path;
  render_cmd->add_option("--pack", pack_path)->required();
  render_cmd->add_option("--cover", cover_path);
  render_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return pack_gen(kind, base_points, levels, ratio, y_points, out);
    if (build->parsed())
      return cover_build(pack_path, ladder_kind, slope, provider, out, report_out, relation_out, curve_out);
    if (verify_cmd->parsed()) return verify(seed, sizes);
    if (exp_cmd->parsed()) return experiment(config, out, svg);
    if (render_cmd->parsed()) return render(pack_path, cover_path, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
