#include "wavelab/wavelab.h"

#include <cstring>
#include <limits>

#include "bench.hpp"
#include "kernel.hpp"
#include "lowerbound.hpp"
#include "trilinear.hpp"

struct wl_config {
  wl::BenchConfig cfg;
};
struct wl_report {
  wl::BenchReport rep;
  std::vector<const wl::Record*> flat;
};
struct wl_field {
  wl::SpatialField f;
};

namespace {

thread_local std::string g_error;

template <class F>
wl_status guarded(F&& fn) {
  try {
    fn();
    g_error.clear();
    return WL_OK;
  } catch (const wl::Error& e) {
    g_error = e.what();
    return wl_status(e.code);
  } catch (const std::exception& e) {
    g_error = e.what();
    return WL_INTERNAL;
  } catch (...) {
    g_error = "unknown failure";
    return WL_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) wl::fail(wl::bad_argument, std::string(what) + " is null");
}

void index_records(wl_report* r) {
  r->flat.clear();
  for (auto& s : r->rep.suites)
    for (auto& rec : s.records) r->flat.push_back(&rec);
}

}  // namespace

extern "C" {

const char* wl_last_error(void) { return g_error.c_str(); }

const char* wl_status_string(wl_status s) {
  switch (s) {
    case WL_OK: return "ok";
    case WL_BAD_ARGUMENT: return "bad argument";
    case WL_GUARD_VIOLATION: return "aliasing guard violated";
    case WL_REGION_EXCEEDS_BOX: return "region exceeds box";
    case WL_NOT_SUPPORTED: return "not supported";
    case WL_REFUSED: return "refused";
    case WL_IO_FAILURE: return "io failure";
    default: return "internal error";
  }
}

void wl_set_jobs(int jobs) { wl::set_jobs(jobs); }

wl_status wl_config_create(wl_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new wl_config();
  });
}

wl_status wl_config_load(wl_config* c, const char* path) {
  return guarded([&] {
    need(c, "config");
    need(path, "path");
    c->cfg.load(path);
  });
}

wl_status wl_config_parse(wl_config* c, const char* text) {
  return guarded([&] {
    need(c, "config");
    need(text, "text");
    c->cfg.parse(text);
  });
}

wl_status wl_config_set(wl_config* c, const char* key, const char* value) {
  return guarded([&] {
    need(c, "config");
    need(key, "key");
    need(value, "value");
    c->cfg.set(key, value);
  });
}

wl_status wl_config_get(const wl_config* c, const char* key, char* buf, size_t len) {
  return guarded([&] {
    need(c, "config");
    need(key, "key");
    need(buf, "buf");
    const std::string& v = c->cfg.str(key);
    if (v.size() + 1 > len) wl::fail(wl::bad_argument, "buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

void wl_config_destroy(wl_config* c) { delete c; }

wl_status wl_run(const wl_config* c, const char* suite, wl_report** out) {
  return guarded([&] {
    need(c, "config");
    need(suite, "suite");
    need(out, "out");
    auto r = std::make_unique<wl_report>();
    r->rep = wl::run_bench(c->cfg, {suite});
    index_records(r.get());
    *out = r.release();
  });
}

int wl_report_passed(const wl_report* r) { return r && r->rep.all_pass() ? 1 : 0; }

size_t wl_report_record_count(const wl_report* r) { return r ? r->flat.size() : 0; }

wl_status wl_report_record(const wl_report* r, size_t i, const char** name, const char** criterion, double* measured,
                           double* lo, double* hi, int* pass) {
  return guarded([&] {
    need(r, "report");
    if (i >= r->flat.size()) wl::fail(wl::bad_argument, "record index out of range");
    const wl::Record& rec = *r->flat[i];
    if (name) *name = rec.name.c_str();
    if (criterion) *criterion = rec.criterion.c_str();
    if (measured) *measured = rec.measured;
    if (lo) *lo = rec.lo;
    if (hi) *hi = rec.hi;
    if (pass) *pass = rec.pass;
  });
}

wl_status wl_report_write(const wl_report* r, const char* out_dir) {
  return guarded([&] {
    need(r, "report");
    need(out_dir, "out_dir");
    wl::write_report(r->rep, out_dir);
  });
}

wl_status wl_report_write_plots(const wl_report* r, const char* dir, size_t* count) {
  return guarded([&] {
    need(r, "report");
    need(dir, "dir");
    size_t n = wl::write_plots(r->rep, dir);
    if (count) *count = n;
  });
}

void wl_report_destroy(wl_report* r) { delete r; }

wl_status wl_report_create_empty(wl_report** out) {
  return guarded([&] {
    need(out, "out");
    *out = new wl_report();
  });
}

wl_status wl_field_create(int dim, int N, double X, wl_field** out) {
  return guarded([&] {
    need(out, "out");
    *out = new wl_field{wl::zeros(wl::make_grid(dim, N, X))};
  });
}

size_t wl_field_size(const wl_field* f) { return f ? f->f.v.size() : 0; }

wl_status wl_field_set(wl_field* f, const double* re_im, size_t count) {
  return guarded([&] {
    need(f, "field");
    need(re_im, "values");
    if (count != f->f.v.size()) wl::fail(wl::bad_argument, "count does not match the grid");
    for (size_t k = 0; k < count; ++k) f->f.v[k] = {re_im[2 * k], re_im[2 * k + 1]};
  });
}

wl_status wl_field_get(const wl_field* f, double* re_im, size_t count) {
  return guarded([&] {
    need(f, "field");
    need(re_im, "values");
    if (count != f->f.v.size()) wl::fail(wl::bad_argument, "count does not match the grid");
    for (size_t k = 0; k < count; ++k) re_im[2 * k] = f->f.v[k].real(), re_im[2 * k + 1] = f->f.v[k].imag();
  });
}

wl_status wl_field_lp_norm(const wl_field* f, double p, double* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    if (p <= 0) p = std::numeric_limits<double>::infinity();
    *out = wl::lp_norm(f->f, p, wl::Region::Whole());
  });
}

void wl_field_destroy(wl_field* f) { delete f; }

wl_status wl_partition_eval(double sharpness, int kind, int j, double r, double* out) {
  return guarded([&] {
    need(out, "out");
    if (kind < 0 || kind > 3) wl::fail(wl::bad_argument, "kind must be 0..3");
    wl::LittlewoodPaley lp(sharpness);
    *out = wl::eval_component(lp, wl::Component(kind), j, &r, 1);
  });
}

wl_status wl_kernel_compute(const char* cutoff, int j, int phase_on, wl_field* out) {
  return guarded([&] {
    need(cutoff, "cutoff");
    need(out, "field");
    wl::LittlewoodPaley lp(1);
    auto K = wl::compute_kernel(wl::KernelSpec{wl::cutoff_by_name(lp, cutoff), j, phase_on != 0, {}}, out->f.grid);
    out->f = K.samples;
  });
}

wl_status wl_kernel_lp_slope(const char* cutoff, double p, int j_min, int j_max, int phase_on, int dim, int N,
                             double X, double* slope) {
  return guarded([&] {
    need(cutoff, "cutoff");
    need(slope, "slope");
    if (j_max - j_min < 1) wl::fail(wl::bad_argument, "need at least two scales");
    if (p <= 0) p = std::numeric_limits<double>::infinity();
    wl::LittlewoodPaley lp(1);
    std::vector<int> js;
    for (int j = j_min; j <= j_max; ++j) js.push_back(j);
    *slope = wl::lp_slope_scan(wl::cutoff_by_name(lp, cutoff), p, js, phase_on != 0, wl::make_grid(dim, N, X)).slope;
  });
}

wl_status wl_half_wave(const char* cutoff, int j, int phase_on, const wl_field* f, wl_field* out) {
  return guarded([&] {
    need(cutoff, "cutoff");
    need(f, "field");
    need(out, "out");
    wl::LittlewoodPaley lp(1);
    out->f = wl::apply_half_wave(wl::cutoff_by_name(lp, cutoff), j, phase_on != 0, f->f);
  });
}

wl_status wl_duality_residual(int dim, int N, double X, int j, int trials, uint64_t seed, int violated,
                              double* residual) {
  return guarded([&] {
    need(residual, "residual");
    wl::LittlewoodPaley lp(1);
    auto psi = wl::cutoff_psi(lp);
    auto tr = wl::make_triple(psi, psi, wl::cutoff_phi(lp, violated ? 2 : 4));
    *residual = wl::duality_residual(tr, j, trials, seed, wl::make_grid(dim, N, X), violated != 0).residual;
  });
}

wl_status wl_lower_bound_lhs(int j, double delta, double delta_prime, double* lhs, double* tail) {
  return guarded([&] {
    need(lhs, "lhs");
    wl::LhsOptions o;
    o.delta = delta;
    o.delta_prime = delta_prime;
    auto r = wl::evaluate_lhs(wl::cutoff_annular_bump(), j, o);
    *lhs = r.lhs;
    if (tail) *tail = r.tail_bound;
  });
}

}  // extern "C"
