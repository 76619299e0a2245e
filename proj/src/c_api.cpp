#include "tfim/tfim.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "tfim/errors.hpp"
#include "tfim/report.hpp"

struct tfim_instance {
  tfim::Instance value;
};

struct tfim_sdp {
  tfim::Instance inst;
  tfim::SdpSolution value;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
tfim_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const tfim::ParseError& e) {
    g_last_error = e.what();
    return TFIM_ERR_PARSE;
  } catch (const tfim::ArgumentError& e) {
    g_last_error = e.what();
    return TFIM_ERR_USAGE;
  } catch (const tfim::LimitError& e) {
    g_last_error = e.what();
    return TFIM_ERR_USAGE;
  } catch (const tfim::SolverError& e) {
    g_last_error = e.what();
    return TFIM_ERR_SOLVER;
  } catch (const tfim::VerificationError& e) {
    g_last_error = e.what();
    return TFIM_ERR_VERIFICATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TFIM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TFIM_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tfim_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return TFIM_ERR_USAGE;
}

}  // namespace

extern "C" {

const char* tfim_last_error(void) { return g_last_error.c_str(); }

void tfim_string_free(char* s) { std::free(s); }

tfim_status tfim_instance_parse(const char* json_text, tfim_instance** out) {
  if (json_text == nullptr || out == nullptr) return null_argument("json_text/out");
  return guarded([&] {
    *out = new tfim_instance{tfim::parse_instance(json_text)};
    return TFIM_OK;
  });
}

tfim_status tfim_instance_load(const char* path, tfim_instance** out) {
  if (path == nullptr || out == nullptr) return null_argument("path/out");
  return guarded([&] {
    *out = new tfim_instance{tfim::load_instance(path)};
    return TFIM_OK;
  });
}

tfim_status tfim_instance_triangle(double field, tfim_instance** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new tfim_instance{tfim::triangle_instance(field)};
    return TFIM_OK;
  });
}

void tfim_instance_free(tfim_instance* inst) { delete inst; }

int tfim_instance_size(const tfim_instance* inst) { return inst ? inst->value.size() : 0; }

size_t tfim_instance_edge_count(const tfim_instance* inst) {
  return inst ? inst->value.edges().size() : 0;
}

tfim_status tfim_instance_shift_constants(const tfim_instance* inst, double* total_weight,
                                          double* total_field) {
  if (inst == nullptr || total_weight == nullptr || total_field == nullptr) {
    return null_argument("inst/total_weight/total_field");
  }
  const tfim::ShiftConstants k = tfim::shift_constants(inst->value);
  *total_weight = k.total_weight;
  *total_field = k.total_field;
  return TFIM_OK;
}

tfim_status tfim_instance_is_frustrated(const tfim_instance* inst, int* frustrated) {
  if (inst == nullptr || frustrated == nullptr) return null_argument("inst/frustrated");
  *frustrated = tfim::is_frustrated(inst->value) ? 1 : 0;
  return TFIM_OK;
}

tfim_status tfim_instance_to_json(const tfim_instance* inst, char** out) {
  if (inst == nullptr || out == nullptr) return null_argument("inst/out");
  return guarded([&] {
    *out = copy_string(tfim::serialize_instance(inst->value));
    return TFIM_OK;
  });
}

tfim_status tfim_sdp_solve(const tfim_instance* inst, double tol, tfim_sdp** out) {
  if (inst == nullptr || out == nullptr) return null_argument("inst/out");
  return guarded([&] {
    *out = new tfim_sdp{inst->value, tfim::solve_soc_sdp(inst->value, tol)};
    return TFIM_OK;
  });
}

void tfim_sdp_free(tfim_sdp* sdp) { delete sdp; }

double tfim_sdp_objective(const tfim_sdp* sdp) { return sdp ? sdp->value.objective : 0.0; }

double tfim_sdp_edge_value(const tfim_sdp* sdp) { return sdp ? sdp->value.edge_value() : 0.0; }

double tfim_sdp_field_value(const tfim_sdp* sdp) { return sdp ? sdp->value.field_value() : 0.0; }

tfim_status tfim_sdp_x(const tfim_sdp* sdp, double* x_out, size_t n) {
  if (sdp == nullptr || x_out == nullptr) return null_argument("sdp/x_out");
  if (n != static_cast<size_t>(sdp->value.x.size())) {
    g_last_error = "x has " + std::to_string(sdp->value.x.size()) + " entries";
    return TFIM_ERR_USAGE;
  }
  for (size_t i = 0; i < n; ++i) x_out[i] = sdp->value.x(static_cast<Eigen::Index>(i));
  return TFIM_OK;
}

tfim_status tfim_sdp_to_json(const tfim_sdp* sdp, char** out) {
  if (sdp == nullptr || out == nullptr) return null_argument("sdp/out");
  return guarded([&] {
    *out = copy_string(tfim::dump_report(tfim::sdp_to_json(sdp->inst, sdp->value)));
    return TFIM_OK;
  });
}

tfim_status tfim_lambda_max(const tfim_instance* inst, int cap, double* value) {
  if (inst == nullptr || value == nullptr) return null_argument("inst/value");
  return guarded([&] {
    *value = tfim::lambda_max(tfim::build_hamiltonian(inst->value, cap)).value;
    return TFIM_OK;
  });
}

tfim_status tfim_evaluate_product_state(const tfim_instance* inst, const double* bloch, size_t n,
                                        double* value) {
  if (inst == nullptr || bloch == nullptr || value == nullptr) return null_argument("inst/bloch/value");
  return guarded([&] {
    tfim::BlochAssignment state(n);
    for (size_t i = 0; i < n; ++i) state[i] = {bloch[3 * i], bloch[3 * i + 1], bloch[3 * i + 2]};
    *value = tfim::evaluate_product_state(inst->value, state).total;
    return TFIM_OK;
  });
}

void tfim_round_options_init(tfim_round_options* opts) {
  if (opts == nullptr) return;
  const tfim::RoundOptions d;
  opts->algo = "best";
  opts->q = -1.0;
  opts->trials = d.trials;
  opts->seed = d.seed;
  opts->tol = d.tol;
  opts->cap = d.cap;
  opts->restarts = d.restarts;
}

void tfim_bench_options_init(tfim_bench_options* opts) {
  if (opts == nullptr) return;
  const tfim::BenchOptions d;
  opts->instances = d.instances;
  opts->n = d.n;
  opts->edge_prob = d.edge_prob;
  opts->neg_prob = d.neg_prob;
  opts->h_max = d.h_max;
  opts->trials = d.trials;
  opts->seed = d.seed;
  opts->tol = d.tol;
  opts->cap = d.cap;
}

tfim_status tfim_report_round(const tfim_instance* inst, const tfim_round_options* opts,
                              char** json_out) {
  if (inst == nullptr || opts == nullptr || json_out == nullptr) return null_argument("inst/opts/json_out");
  return guarded([&] {
    tfim::RoundOptions o;
    o.algo = opts->algo ? opts->algo : "best";
    if (opts->q >= 0.0) o.q = opts->q;
    o.trials = opts->trials;
    o.seed = opts->seed;
    o.tol = opts->tol;
    o.cap = opts->cap;
    o.restarts = opts->restarts;
    *json_out = copy_string(tfim::dump_report(tfim::round_report(inst->value, o)));
    return TFIM_OK;
  });
}

tfim_status tfim_report_exact(const tfim_instance* inst, int cap, int restarts, uint64_t seed,
                              char** json_out) {
  if (inst == nullptr || json_out == nullptr) return null_argument("inst/json_out");
  return guarded([&] {
    tfim::ExactOptions o;
    o.cap = cap;
    o.restarts = restarts;
    o.seed = seed;
    *json_out = copy_string(tfim::dump_report(tfim::exact_report(inst->value, o)));
    return TFIM_OK;
  });
}

tfim_status tfim_report_constants(char** json_out) {
  if (json_out == nullptr) return null_argument("json_out");
  return guarded([&] {
    *json_out = copy_string(tfim::dump_report(tfim::constants_report()));
    return TFIM_OK;
  });
}

tfim_status tfim_report_curve(int points, const char* format, char** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const std::string fmt = format ? format : "csv";
    if (fmt != "csv" && fmt != "json") throw tfim::ArgumentError("--format must be csv or json");
    const auto curve = tfim::q_opt_curve(points);
    if (fmt == "csv") {
      *out = copy_string(tfim::curve_csv(curve));
      return TFIM_OK;
    }
    nlohmann::json doc;
    doc["points"] = nlohmann::json::array();
    for (const auto& pt : curve) doc["points"].push_back({{"p", pt.p}, {"q_opt", pt.q_opt}, {"ratio", pt.ratio}});
    const double qs = tfim::q_star();
    const tfim::CurveFeatures f = tfim::analyze_curve(curve, qs);
    doc["features"] = {{"transition_p", f.transition_p},
                       {"crossing_p", f.crossing_p},
                       {"min_ratio", f.min_ratio},
                       {"max_q_jump", f.max_q_jump},
                       {"q_star", qs}};
    *out = copy_string(tfim::dump_report(doc));
    return TFIM_OK;
  });
}

tfim_status tfim_report_triangle(double field, int restarts, int trials, uint64_t seed, double tol,
                                 char** json_out) {
  if (json_out == nullptr) return null_argument("json_out");
  return guarded([&] {
    tfim::TriangleOptions o;
    o.field = field;
    o.restarts = restarts;
    o.trials = trials;
    o.seed = seed;
    o.tol = tol;
    const tfim::TriangleResult r = tfim::triangle_report(o);
    *json_out = copy_string(tfim::dump_report(r.report));
    if (!r.passed) {
      std::string diff = "triangle verification failed:";
      for (const auto& check : r.report["checks"]) {
        if (check["passed"].get<bool>()) continue;
        diff += "\n  " + check["name"].get<std::string>() + ": actual " + check["actual"].dump();
        if (check.contains("expected")) {
          diff += ", expected " + check["expected"].dump() + " +/- " + check["tolerance"].dump();
        }
      }
      g_last_error = diff;
      return TFIM_ERR_VERIFICATION;
    }
    return TFIM_OK;
  });
}

tfim_status tfim_report_bench(const tfim_bench_options* opts, const char* format, char** out) {
  if (opts == nullptr || out == nullptr) return null_argument("opts/out");
  return guarded([&] {
    const std::string fmt = format ? format : "csv";
    if (fmt != "csv" && fmt != "json") throw tfim::ArgumentError("--format must be csv or json");
    tfim::BenchOptions o;
    o.instances = opts->instances;
    o.n = opts->n;
    o.edge_prob = opts->edge_prob;
    o.neg_prob = opts->neg_prob;
    o.h_max = opts->h_max;
    o.trials = opts->trials;
    o.seed = opts->seed;
    o.tol = opts->tol;
    o.cap = opts->cap;
    const auto reports = tfim::bench_reports(o);
    *out = copy_string(fmt == "csv" ? tfim::bench_csv(reports)
                                    : tfim::dump_report(nlohmann::json(reports)));
    return TFIM_OK;
  });
}

}  // extern "C"
