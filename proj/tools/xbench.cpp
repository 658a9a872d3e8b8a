#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "wavelab/wavelab.h"

namespace {

struct Options {
  std::string config, out = "xbench_out";
  std::string seed;
  int jobs = 1;
  int j_min = -1, j_max = -1, dim = 0;
};

int config_error(wl_status s) {
  std::fprintf(stderr, "xbench: %s: %s\n", wl_status_string(s), wl_last_error());
  return 2;
}

int run(const std::string& suite, const Options& o) {
  wl_set_jobs(o.jobs);
  wl_config* cfg = nullptr;
  wl_status s = wl_config_create(&cfg);
  if (s != WL_OK) return config_error(s);
  auto set = [&](const char* k, const std::string& v) {
    if (s == WL_OK) s = wl_config_set(cfg, k, v.c_str());
  };
  if (!o.config.empty()) s = wl_config_load(cfg, o.config.c_str());
  if (!o.seed.empty()) set("seed", o.seed);
  if (o.dim) set("dim", std::to_string(o.dim));
  if (o.j_min >= 0) set("j_min", std::to_string(o.j_min));
  if (o.j_max >= 0) set("j_max", std::to_string(o.j_max));
  wl_report* rep = nullptr;
  if (s == WL_OK) s = wl_run(cfg, suite.c_str(), &rep);
  wl_config_destroy(cfg);
  if (s != WL_OK) return config_error(s);

  size_t n = wl_report_record_count(rep);
  int failed = 0;
  for (size_t i = 0; i < n; ++i) {
    const char *name, *crit;
    double m, lo, hi;
    int pass;
    wl_report_record(rep, i, &name, &crit, &m, &lo, &hi, &pass);
    std::printf("%s %-4s %-34s %.6g in [%g, %g]\n", pass ? "PASS" : "FAIL", crit, name, m, lo, hi);
    failed += !pass;
  }
  s = wl_report_write(rep, o.out.c_str());
  if (s != WL_OK) {
    wl_report_destroy(rep);
    return config_error(s);
  }
  if (failed) {
    for (size_t i = 0; i < n; ++i) {
      const char* name;
      int pass;
      wl_report_record(rep, i, &name, nullptr, nullptr, nullptr, nullptr, &pass);
      if (!pass) std::fprintf(stderr, "xbench: threshold failed: %s\n", name);
    }
  }
  std::printf("%zu records, %d failed; report in %s\n", n, failed, o.out.c_str());
  wl_report_destroy(rep);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-operator numerical experiments"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;
  for (const char* name : {"partition", "cm", "kernel", "trilinear", "hardy", "lowerbound", "all"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " suite");
    sub->add_option("--config", o.config, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--seed", o.seed, "base seed (u64)");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--j-min", o.j_min, "first scale of the main range");
    sub->add_option("--j-max", o.j_max, "last scale of the main range");
    sub->add_option("--dim", o.dim, "spatial dimension")->check(CLI::Range(1, 3));
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(chosen, o);
}
