#include "sgikit/sgikit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/errors.hpp"
#include "model/model.hpp"
#include "report/report.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sgikit_status record_error(sgikit_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
sgikit_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SGIKIT_OK;
    } catch (const sgikit::ParseError& e) {
        return record_error(SGIKIT_PARSE_ERROR, e.what());
    } catch (const sgikit::ResourceError& e) {
        return record_error(SGIKIT_RESOURCE_ERROR, e.what());
    } catch (const sgikit::DegenerateError& e) {
        return record_error(SGIKIT_DEGENERATE, e.what());
    } catch (const sgikit::InvalidArgument& e) {
        return record_error(SGIKIT_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return record_error(SGIKIT_INTERNAL_ERROR, e.what());
    } catch (...) {
        return record_error(SGIKIT_INTERNAL_ERROR, "unknown error");
    }
}

} // namespace

struct sgikit_model {
    sgikit::model::StructureSpec spec;
};

struct sgikit_options {
    sgikit::report::Options opts;
};

extern "C" {

const char* sgikit_version(void) { return sgikit::report::version(); }

const char* sgikit_last_error(void) { return g_last_error.c_str(); }

sgikit_status sgikit_model_parse_file(const char* path, sgikit_model** out) {
    if (!path || !out)
        return record_error(SGIKIT_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new sgikit_model{sgikit::model::parse_structure_file(path)};
    });
}

sgikit_status sgikit_model_parse_text(const char* text, sgikit_model** out) {
    if (!text || !out)
        return record_error(SGIKIT_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new sgikit_model{sgikit::model::parse_structure(text)};
    });
}

void sgikit_model_free(sgikit_model* model) { delete model; }

sgikit_options* sgikit_options_new(void) { return new sgikit_options{}; }

sgikit_status sgikit_options_set(sgikit_options* opts, const char* key,
                                 const char* value) {
    if (!opts || !key || !value)
        return record_error(SGIKIT_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto& o = opts->opts;
        std::string k = key, v = value;
        auto bad_value = [&]() -> sgikit::InvalidArgument {
            return sgikit::InvalidArgument("bad value for option '" + k +
                                           "': " + v);
        };
        auto as_long = [&](long min_value) {
            size_t used = 0;
            long n = 0;
            try {
                n = std::stol(v, &used);
            } catch (const std::exception&) {
                throw bad_value();
            }
            if (used != v.size() || n < min_value) throw bad_value();
            return n;
        };
        auto as_double = [&]() {
            size_t used = 0;
            double d = 0;
            try {
                d = std::stod(v, &used);
            } catch (const std::exception&) {
                throw bad_value();
            }
            if (used != v.size() || !(d > 0)) throw bad_value();
            return d;
        };
        if (k == "inputs") o.inputs = v;
        else if (k == "seed") o.seed = static_cast<uint64_t>(as_long(0));
        else if (k == "order") o.order = v;
        else if (k == "compare_order") o.compare_order = v;
        else if (k == "validate") o.validate = as_long(0) != 0;
        else if (k == "timings") o.timings = as_long(0) != 0;
        else if (k == "step_budget") o.step_budget = as_long(1);
        else if (k == "degree_bound") o.degree_bound = as_long(1);
        else if (k == "theta") o.theta = v;
        else if (k == "sim_input") o.sim_input = v;
        else if (k == "sim_t_end") o.sim_t_end = as_double();
        else if (k == "sim_points") o.sim_points = static_cast<int>(as_long(2));
        else throw sgikit::InvalidArgument("unknown option key '" + k + "'");
    });
}

void sgikit_options_free(sgikit_options* opts) { delete opts; }

namespace {

const sgikit::report::Options& effective(const sgikit_options* opts) {
    static const sgikit::report::Options defaults;
    return opts ? opts->opts : defaults;
}

} // namespace

sgikit_status sgikit_analyze(const sgikit_model* model,
                             const sgikit_options* opts, char** out) {
    if (!model || !out)
        return record_error(SGIKIT_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(sgikit::report::dump(
            sgikit::report::analyze(model->spec, effective(opts))));
    });
}

sgikit_status sgikit_invariants(const sgikit_model* model,
                                const sgikit_options* opts, char** out) {
    if (!model || !out)
        return record_error(SGIKIT_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(sgikit::report::dump(
            sgikit::report::invariants_report(model->spec, effective(opts))));
    });
}

sgikit_status sgikit_groebner(const sgikit_model* model,
                              const sgikit_options* opts, char** out) {
    if (!model || !out)
        return record_error(SGIKIT_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(sgikit::report::dump(
            sgikit::report::groebner_report(model->spec, effective(opts))));
    });
}

sgikit_status sgikit_simulate(const sgikit_model* model,
                              const sgikit_options* opts, char** out) {
    if (!model || !out)
        return record_error(SGIKIT_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(
            sgikit::report::simulate_csv(model->spec, effective(opts)));
    });
}

void sgikit_string_free(char* s) { std::free(s); }

} // extern "C"
