#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "wavelab/wavelab.h"

TEST_CASE("config rejects unknown keys and reports why") {
  wl_config* c = nullptr;
  REQUIRE(wl_config_create(&c) == WL_OK);
  CHECK(wl_config_set(c, "kernel.bogus", "1") == WL_BAD_ARGUMENT);
  CHECK(std::string(wl_last_error()).find("kernel.bogus") != std::string::npos);
  CHECK(wl_config_set(c, "seed", "77") == WL_OK);
  char buf[32];
  CHECK(wl_config_get(c, "seed", buf, sizeof buf) == WL_OK);
  CHECK(std::string(buf) == "77");
  CHECK(wl_config_get(c, "seed", buf, 2) == WL_BAD_ARGUMENT);
  CHECK(wl_config_parse(c, "dim = 2\n# note\n") == WL_OK);
  CHECK(wl_config_load(c, "/nonexistent/cfg") == WL_IO_FAILURE);
  wl_config_destroy(c);
  CHECK(wl_config_create(nullptr) == WL_BAD_ARGUMENT);
}

TEST_CASE("partition suite through the C API") {
  wl_config* c = nullptr;
  wl_config_create(&c);
  wl_report* r = nullptr;
  REQUIRE(wl_run(c, "partition", &r) == WL_OK);
  CHECK(wl_report_passed(r) == 1);
  REQUIRE(wl_report_record_count(r) == 2);
  const char* name = nullptr;
  double m = 1;
  int pass = 0;
  CHECK(wl_report_record(r, 0, &name, nullptr, &m, nullptr, nullptr, &pass) == WL_OK);
  CHECK(std::string(name) == "partition_identity_residual");
  CHECK(m < 1e-13);
  CHECK(wl_report_record(r, 5, &name, nullptr, nullptr, nullptr, nullptr, nullptr) == WL_BAD_ARGUMENT);
  wl_report_destroy(r);
  CHECK(wl_run(c, "nosuch", &r) == WL_BAD_ARGUMENT);
  wl_config_destroy(c);
}

TEST_CASE("guard violations surface with the offending grid") {
  wl_config* c = nullptr;
  wl_config_create(&c);
  wl_config_set(c, "trilinear.j", "7");
  wl_report* r = nullptr;
  CHECK(wl_run(c, "trilinear", &r) == WL_GUARD_VIOLATION);
  CHECK(std::string(wl_last_error()).find("j=7 N=256") != std::string::npos);
  wl_config_destroy(c);
}

TEST_CASE("empty report writes nothing") {
  wl_report* r = nullptr;
  REQUIRE(wl_report_create_empty(&r) == WL_OK);
  auto dir = std::filesystem::temp_directory_path() / "wavelab_capi_empty";
  std::filesystem::remove_all(dir);
  size_t count = 7;
  CHECK(wl_report_write_plots(r, dir.c_str(), &count) == WL_OK);
  CHECK(count == 0);
  CHECK(wl_report_write(r, dir.c_str()) == WL_OK);
  CHECK_FALSE(std::filesystem::exists(dir));
  wl_report_destroy(r);
}

TEST_CASE("fields, norms and the half-wave propagator") {
  wl_field* f = nullptr;
  REQUIRE(wl_field_create(2, 32, 4, &f) == WL_OK);
  size_t n = wl_field_size(f);
  CHECK(n == 32 * 32);
  std::vector<double> v(2 * n, 0);
  for (size_t k = 0; k < n; ++k) v[2 * k] = 1;
  CHECK(wl_field_set(f, v.data(), n) == WL_OK);
  CHECK(wl_field_set(f, v.data(), n - 1) == WL_BAD_ARGUMENT);
  double l1 = 0, sup = 0;
  CHECK(wl_field_lp_norm(f, 1, &l1) == WL_OK);
  CHECK(wl_field_lp_norm(f, 0, &sup) == WL_OK);
  CHECK(l1 == doctest::Approx(16).epsilon(1e-14));
  CHECK(sup == 1);

  // e^{i|D|} fixes the zero mode of a constant
  wl_field* out = nullptr;
  wl_field_create(2, 32, 4, &out);
  CHECK(wl_half_wave("phi", 1, 1, f, out) == WL_OK);
  std::vector<double> w(2 * n);
  wl_field_get(out, w.data(), n);
  CHECK(std::abs(w[0] - 1) < 1e-12);
  CHECK(wl_half_wave("nope", 1, 1, f, out) == WL_BAD_ARGUMENT);
  wl_field_destroy(out);
  wl_field_destroy(f);
}

TEST_CASE("partition evaluation and kernel slope") {
  double a = 0, b = 0;
  CHECK(wl_partition_eval(1, 1, 0, 0.5, &a) == WL_OK);
  CHECK(a == 1);
  CHECK(wl_partition_eval(1, 0, 3, 100, &b) == WL_OK);
  CHECK(b == 0);
  CHECK(wl_partition_eval(1, 9, 0, 1, &b) == WL_BAD_ARGUMENT);
  double s = 0;
  CHECK(wl_kernel_lp_slope("bump", 2, 2, 4, 1, 2, 256, 16, &s) == WL_OK);
  CHECK(s == doctest::Approx(1).epsilon(0.01));
  double res = 1;
  CHECK(wl_duality_residual(2, 64, 4, 2, 1, 5, 0, &res) == WL_OK);
  CHECK(res < 1e-10);
}
