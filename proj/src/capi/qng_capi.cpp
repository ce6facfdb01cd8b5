// Copyright 2026 The qngcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qng/qng.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "qng/channels.hpp"
#include "qng/error.hpp"
#include "qng/json_io.hpp"
#include "qng/montecarlo.hpp"
#include "qng/scenario.hpp"
#include "qng/thresholds.hpp"

struct qng_context {
    qng::ThresholdOptions options;
    std::string cache_dir;
    std::unique_ptr<qng::ThresholdCache> cache;
    std::string last_error;

    qng::ThresholdCache &thresholds() {
        if (!cache) {
            cache = std::make_unique<qng::ThresholdCache>(options, cache_dir);
        }
        return *cache;
    }
};

namespace {

qng_status status_of(qng::ErrorCode code) {
    switch (code) {
        case qng::ErrorCode::InvalidArgument:
            return QNG_ERR_INVALID_ARGUMENT;
        case qng::ErrorCode::UnsupportedOrder:
            return QNG_ERR_UNSUPPORTED_ORDER;
        case qng::ErrorCode::Range:
            return QNG_ERR_RANGE;
        case qng::ErrorCode::Truncation:
            return QNG_ERR_TRUNCATION;
        case qng::ErrorCode::NotConverged:
            return QNG_ERR_NOT_CONVERGED;
        case qng::ErrorCode::Fit:
            return QNG_ERR_FIT;
        case qng::ErrorCode::Conditioning:
            return QNG_ERR_CONDITIONING;
        case qng::ErrorCode::Config:
            return QNG_ERR_CONFIG;
        case qng::ErrorCode::Io:
            return QNG_ERR_IO;
    }
    return QNG_ERR_INTERNAL;
}

template <typename F>
qng_status guarded(qng_context *ctx, F &&body) {
    if (!ctx) {
        return QNG_ERR_INVALID_ARGUMENT;
    }
    ctx->last_error.clear();
    try {
        body();
        return QNG_OK;
    } catch (const qng::Error &e) {
        ctx->last_error = e.what();
        return status_of(e.code());
    } catch (const nlohmann::json::exception &e) {
        ctx->last_error = std::string("malformed JSON: ") + e.what();
        return QNG_ERR_CONFIG;
    } catch (const std::bad_alloc &) {
        ctx->last_error = "out of memory";
        return QNG_ERR_INTERNAL;
    } catch (const std::exception &e) {
        ctx->last_error = e.what();
        return QNG_ERR_INTERNAL;
    }
}

qng::ThresholdKind kind_of(qng_threshold_kind k) {
    switch (k) {
        case QNG_KIND_CLASSICAL:
            return qng::ThresholdKind::Classical;
        case QNG_KIND_GAUSSIAN_MIN:
            return qng::ThresholdKind::GaussianMin;
        case QNG_KIND_GAUSSIAN_INTRINSIC:
            return qng::ThresholdKind::GaussianIntrinsic;
        case QNG_KIND_GENUINE:
            return qng::ThresholdKind::GenuineN;
    }
    qng::fail(qng::ErrorCode::InvalidArgument, "unknown threshold kind " + std::to_string(static_cast<int>(k)));
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require_out(const void *p) {
    qng::require(p != nullptr, "output pointer must not be NULL");
}

}  // namespace

extern "C" {

const char *qng_version(void) {
    return QNG_VERSION_STRING;
}

const char *qng_status_string(qng_status status) {
    switch (status) {
        case QNG_OK:
            return "ok";
        case QNG_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case QNG_ERR_NOT_CONVERGED:
            return "optimizer did not converge";
        case QNG_ERR_TRUNCATION:
            return "truncation too small";
        case QNG_ERR_RANGE:
            return "outside validated range";
        case QNG_ERR_FIT:
            return "fit failed";
        case QNG_ERR_IO:
            return "i/o error";
        case QNG_ERR_CONFIG:
            return "invalid configuration";
        case QNG_ERR_CONDITIONING:
            return "ill-conditioned problem";
        case QNG_ERR_UNSUPPORTED_ORDER:
            return "unsupported order";
        case QNG_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

qng_status qng_context_create(qng_context **out) {
    if (!out) {
        return QNG_ERR_INVALID_ARGUMENT;
    }
    *out = new (std::nothrow) qng_context();
    return *out ? QNG_OK : QNG_ERR_INTERNAL;
}

void qng_context_destroy(qng_context *ctx) {
    delete ctx;
}

qng_status qng_context_set_truncation(qng_context *ctx, int dim) {
    return guarded(ctx, [&] {
        qng::require(dim >= 16 && dim <= 4 * qng::kDefaultTruncation, "truncation must be in [16, 512]");
        ctx->options.truncation = dim;
        ctx->cache.reset();
    });
}

qng_status qng_context_set_cache_dir(qng_context *ctx, const char *dir) {
    return guarded(ctx, [&] {
        ctx->cache_dir = dir ? dir : "";
        ctx->cache.reset();
    });
}

const char *qng_context_last_error(const qng_context *ctx) {
    return ctx ? ctx->last_error.c_str() : "null context";
}

qng_status qng_threshold(qng_context *ctx, qng_threshold_kind kind, int m, int n, qng_threshold_info *out) {
    return guarded(ctx, [&] {
        require_out(out);
        const auto r = ctx->thresholds().get(kind_of(kind), qng::FockPair(m, n));
        out->kind = kind;
        out->m = r.pair.m();
        out->n = r.pair.n();
        out->value = r.value;
        out->argmax = {r.argmax.xi_mag, r.argmax.xi_phase, r.argmax.alpha_mag, r.argmax.alpha_phase};
        out->fock_index = r.fock_index.value_or(-1);
        out->core_dim = r.core ? r.core->dim() : 0;
        out->converged = r.diagnostics.converged ? 1 : 0;
    });
}

qng_status qng_threshold_json(qng_context *ctx, qng_threshold_kind kind, int m, int n, char **out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        const auto r = ctx->thresholds().get(kind_of(kind), qng::FockPair(m, n));
        *out_json = dup_string(qng::threshold_to_json(r).dump());
    });
}

qng_status qng_depth(qng_context *ctx, double measured, int m, int n, qng_threshold_kind kind, double *out_depth) {
    return guarded(ctx, [&] {
        require_out(out_depth);
        *out_depth = qng::depth(measured, qng::FockPair(m, n), kind_of(kind), ctx->thresholds()).depth;
    });
}

qng_status qng_depth_json(qng_context *ctx, double measured, int m, int n, qng_threshold_kind kind, char **out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        const auto d = qng::depth(measured, qng::FockPair(m, n), kind_of(kind), ctx->thresholds());
        *out_json = dup_string(qng::depth_to_json(d).dump());
    });
}

qng_status qng_certify_json(qng_context *ctx, int m, int n, double measured, double uncertainty, char **out_json,
                            int *any_verdict) {
    return guarded(ctx, [&] {
        require_out(out_json);
        const auto rep = qng::certify(qng::FockPair(m, n), measured, uncertainty, ctx->thresholds());
        *out_json = dup_string(qng::certification_to_json(rep).dump());
        if (any_verdict) {
            *any_verdict = rep.any_verdict() ? 1 : 0;
        }
    });
}

qng_status qng_mc_verify_json(qng_context *ctx, qng_threshold_kind kind, int m, int n, long samples, uint64_t seed,
                              char **out_json, long *violations) {
    return guarded(ctx, [&] {
        require_out(out_json);
        const auto rep = qng::mc_verify(kind_of(kind), qng::FockPair(m, n), samples, seed, ctx->thresholds());
        *out_json = dup_string(qng::mc_to_json(rep).dump());
        if (violations) {
            *violations = rep.violations;
        }
    });
}

qng_status qng_simulate_json(qng_context *ctx, const char *config_json, char **out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        qng::require(config_json != nullptr, "config must not be NULL");
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::parse_error &e) {
            qng::fail(qng::ErrorCode::Config, std::string("config is not valid JSON: ") + e.what());
        }
        const qng::ScenarioConfig sc = qng::parse_scenario(cfg);
        nlohmann::json out;
        out["config"] = qng::scenario_to_json(sc);
        out["results"] = qng::run_scenario(sc, ctx->thresholds());
        *out_json = dup_string(out.dump());
    });
}

void qng_free_string(char *s) {
    std::free(s);
}

}  // extern "C"
