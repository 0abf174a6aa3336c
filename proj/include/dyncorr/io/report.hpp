#pragma once

#include <optional>
#include <string>

#include "dyncorr/garch_dcc.hpp"
#include "dyncorr/metrics.hpp"
#include "json.hpp"

namespace dyncorr::io {

using nlohmann::json;

inline json to_json(const std::optional<FieldStats>& s) {
    if (!s) return nullptr;
    return {{"mean", s->mean}, {"sd", s->sd}, {"median", s->median}};
}

/// One method's block in the bench report.
inline json to_json(const McSummary& s) {
    return {
        {"n_reps", s.n_reps},
        {"n_converged", s.n_converged},
        {"dnc", s.dnc()},
        {"all_dnc", s.all_dnc()},
        {"mean_abs", to_json(s.mean_abs)},
        {"max_abs", to_json(s.max_abs)},
        {"mse", to_json(s.mse)},
    };
}

inline std::string to_string(FitStatus s) {
    return s == FitStatus::Converged ? "converged" : "did_not_converge";
}

inline json to_json(const GarchParams& p) {
    return {{"omega", p.omega}, {"alpha", p.alpha}, {"beta", p.beta},
            {"converged", p.converged}, {"loglik", p.loglik}};
}

inline json to_json(const DccParams& p) {
    return {{"a", p.a}, {"b", p.b}, {"s_bar_12", p.s_bar.xy},
            {"converged", p.converged}, {"loglik", p.loglik}};
}

inline json to_json(const DccFitReport& r) {
    return {{"status", to_string(r.status)},
            {"garch", json::array({to_json(r.garch[0]), to_json(r.garch[1])})},
            {"dcc", to_json(r.dcc)}};
}

/// Per-method block of the estimate sidecar; metrics are null for an empty or failed track.
inline json track_summary(const MethodResult& result) {
    json j;
    if (result.track && result.track->defined_count() > 0) {
        j["mean_abs"] = mean_abs(*result.track);
        j["max_abs"] = max_abs(*result.track);
        j["defined"] = result.track->defined_count();
        j["start_index"] = result.track->start_index;
    } else {
        j["mean_abs"] = nullptr;
        j["max_abs"] = nullptr;
        j["defined"] = 0;
    }
    if (result.dcc) {
        j.update(to_json(*result.dcc));
    }
    return j;
}

}  // namespace dyncorr::io
