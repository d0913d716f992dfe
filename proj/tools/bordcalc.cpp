#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "bordcalc/cli.hpp"

using namespace bordcalc::cli;

int main(int argc, char** argv) {
  CLI::App app{"Equivariant bordism and Bogomolov multiplier calculator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Options o;
  bool json = false, no_cache = false, timing = false;
  std::string cache_dir = ".bordcalc-cache";
  long long point = 0;

  auto common = [&](CLI::App* sub, bool group_required) {
    auto g = sub->add_option("-g,--group", o.group_source, "builtin:NAME, file:PATH or presentation:TEXT|PATH");
    if (group_required) g->required();
    sub->add_option("--max-cosets", o.max_cosets, "coset cap for presentations");
    sub->add_flag("--json", json, "emit the JSON report");
    sub->add_option("--cache-dir", cache_dir, "cache directory");
    sub->add_flag("--no-cache", no_cache, "bypass the cache");
    sub->add_flag("--allow-large-integral", o.allow_large, "lift the order cap on integral elimination");
    sub->add_flag("--timing", timing, "include wall time and cache hits in the report");
  };
  auto method = [&](CLI::App* sub) {
    sub->add_option("--method", o.method, "integral | order-modular")
        ->check(CLI::IsMember({"integral", "order-modular"}));
  };
  auto flavor = [&](CLI::App* sub) {
    sub->add_option("--flavor", o.flavor, "u | so")->check(CLI::IsMember({"u", "so", "U", "SO"}));
  };

  auto* group = app.add_subcommand("group", "group summary and abelianization");
  common(group, true);
  auto* subgroups = app.add_subcommand("subgroups", "conjugacy classes of subgroups");
  common(subgroups, true);
  auto* h2 = app.add_subcommand("h2", "Schur multiplier H2(G)");
  common(h2, true);
  method(h2);
  auto* bogo = app.add_subcommand("bogomolov", "Bogomolov multiplier");
  common(bogo, true);
  method(bogo);
  auto* bord = app.add_subcommand("bordism", "two-dimensional equivariant bordism");
  common(bord, true);
  flavor(bord);
  auto* sk = app.add_subcommand("sk", "SK groups of BG, or the point values with --point");
  common(sk, false);
  auto* point_opt = sk->add_option("--point", point, "degree for SK_n(pt)");

  auto* witness = app.add_subcommand("witness", "surface witnesses for Bogomolov classes");
  witness->require_subcommand(1);
  auto* verify = witness->add_subcommand("verify", "check a surface tuple");
  common(verify, true);
  method(verify);
  verify->add_option("--tuple", o.tuple, "comma-separated words, e.g. a,c,a*b,c")->required();
  verify->add_option("--genus", o.genus, "expected genus");
  auto* search = witness->add_subcommand("search", "random search for a nontrivial surface tuple");
  common(search, true);
  method(search);
  search->add_option("--genus", o.genus, "genus (default 2)");
  search->add_option("--budget", o.budget, "number of samples");
  search->add_option("--seed", o.seed, "random seed");

  auto* tables = app.add_subcommand("tables", "relative bordism of adjacent families");
  tables->require_subcommand(1);
  auto* dim2 = tables->add_subcommand("dim2", "dimension 2");
  common(dim2, true);
  flavor(dim2);
  auto* dim3 = tables->add_subcommand("dim3", "dimension 3");
  common(dim3, true);
  flavor(dim3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Cache cache(cache_dir, !no_cache);
  try {
    if (point_opt->count()) o.point = point;
    Json report;
    if (group->parsed()) report = cmd_group(o);
    else if (subgroups->parsed()) report = cmd_subgroups(o, cache);
    else if (h2->parsed()) report = cmd_h2(o, cache);
    else if (bogo->parsed()) report = cmd_bogomolov(o, cache);
    else if (bord->parsed()) report = cmd_bordism(o, cache);
    else if (sk->parsed()) report = cmd_sk(o, cache);
    else if (verify->parsed()) report = cmd_witness_verify(o);
    else if (search->parsed()) report = cmd_witness_search(o);
    else if (dim2->parsed()) report = cmd_tables(o, 2);
    else report = cmd_tables(o, 3);

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (timing) {
      report["timing"] = {{"seconds", seconds}};
      report["cache_hits"] = cache.hits();
    }
    if (json) std::cout << report.dump(2) << '\n';
    else std::cout << render_text(report);
    std::cerr << "time " << seconds << " s, cache hits " << cache.hits() << '\n';
    return 0;
  } catch (const std::exception& e) {
    const int rc = exit_code_for(e);
    if (json) {
      Json err{{"version", kToolVersion}, {"error", {{"exit_code", rc}, {"message", e.what()}}}};
      std::cout << err.dump(2) << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return rc;
  }
}
