#include "baryfit/nlaaa.hpp"

#include <limits>

namespace baryfit {

FallbackMode parse_fallback_mode(std::string_view name) {
    if (name == "probabilistic") return FallbackMode::probabilistic;
    if (name == "relative") return FallbackMode::relative;
    throw DataError("unknown fallback mode '" + std::string(name) + "' (expected probabilistic or relative)");
}

WeightChoice select_weights(const SupportSet& supports, const SampleSet& data, const CVector& w_prev_ext,
                            const RefineConfig& cfg) {
    if (static_cast<std::size_t>(w_prev_ext.size()) != supports.size())
        throw DomainError("select_weights: extended weight vector length differs from support count");

    WeightChoice best{w_prev_ext, Branch::fallback, full_squared_error(supports, w_prev_ext, data)};
    const double baseline = best.full_sq_err;

    auto consider = [&](const CVector& w, Branch tag) {
        const double err = full_squared_error(supports, w, data);
        if (err < best.full_sq_err) best = {w, tag, err};
    };

    RefineResult sk;
    double sk_err = std::numeric_limits<double>::infinity();
    try {
        sk = sk_iterate(supports, data, cfg);
        sk_err = sk.errors[sk.best_index];
    } catch (const NumericalError&) {
        sk.weights.resize(0);
    }

    CVector w_one;
    double one_err = std::numeric_limits<double>::infinity();
    try {
        w_one = wf_step(supports, data, w_prev_ext);
        one_err = active_squared_error(supports, w_one, data);
    } catch (const NumericalError&) {
        w_one.resize(0);
    }

    const bool seed_sk = sk_err < one_err;
    const CVector& seed = seed_sk ? sk.weights : w_prev_ext;
    RefineResult wf;
    bool have_wf = true;
    try {
        wf = wf_iterate(supports, data, seed, cfg);
    } catch (const NumericalError&) {
        have_wf = false;
    }

    if (have_wf) consider(wf.weights, seed_sk ? Branch::wf_from_sk : Branch::wf_from_prev);
    if (sk.weights.size() > 0) consider(sk.weights, Branch::sk);
    if (w_one.size() > 0) consider(w_one, Branch::wf_single);

    if (!(best.full_sq_err < baseline)) best = {w_prev_ext, Branch::fallback, baseline};
    return best;
}

std::vector<double> fallback_probabilities(const RationalModel& model, const SampleSet& data) {
    if (data.active_count() == 0) throw DomainError("fallback_greedy: no active samples");
    std::vector<double> err(data.size(), 0.0);
    double total = 0.0;
    bool any_inf = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!data.is_active(i)) continue;
        double e;
        try {
            e = std::abs(eval(model, data.point(i)) - data.value(i));
        } catch (const NumericalError&) {
            e = std::numeric_limits<double>::infinity();
        }
        if (!std::isfinite(e)) {
            e = std::numeric_limits<double>::infinity();
            any_inf = true;
        }
        err[i] = e;
        total += e;
    }

    std::vector<double> prob(data.size(), 0.0);
    if (any_inf) {
        // Poles on samples dominate: share the mass among them.
        double n = 0;
        for (double e : err) n += std::isinf(e) ? 1.0 : 0.0;
        for (std::size_t i = 0; i < err.size(); ++i) prob[i] = std::isinf(err[i]) ? 1.0 / n : 0.0;
    } else if (total == 0.0) {
        const double u = 1.0 / static_cast<double>(data.active_count());
        for (std::size_t i = 0; i < data.size(); ++i) prob[i] = data.is_active(i) ? u : 0.0;
    } else {
        for (std::size_t i = 0; i < data.size(); ++i) prob[i] = err[i] / total;
    }
    return prob;
}

std::size_t fallback_greedy(const RationalModel& model, const SampleSet& data, FallbackMode mode,
                            std::mt19937_64& rng) {
    if (data.active_count() == 0) throw DomainError("fallback_greedy: no active samples");

    if (mode == FallbackMode::relative) {
        std::size_t best = data.size();
        double best_ratio = -1.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (!data.is_active(i) || data.value(i) == Complex{}) continue;
            double e;
            try {
                e = std::abs(eval(model, data.point(i)) - data.value(i));
            } catch (const NumericalError&) {
                e = std::numeric_limits<double>::infinity();
            }
            if (std::isnan(e)) e = std::numeric_limits<double>::infinity();
            const double ratio = e / std::abs(data.value(i));
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = i;
            }
        }
        if (best == data.size())
            throw NumericalError("relative greedy selection: every active data value is zero");
        return best;
    }

    const auto prob = fallback_probabilities(model, data);
    // 53-bit uniform draw; keeps the sequence independent of the standard
    // library's distribution implementations.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double cum = 0.0;
    std::size_t last = data.size();
    for (std::size_t i = 0; i < prob.size(); ++i) {
        if (prob[i] <= 0.0) continue;
        cum += prob[i];
        last = i;
        if (u < cum) return i;
    }
    return last;
}

FitResult nlaaa_fit(const SampleSet& data, const NlaaaConfig& cfg) {
    if (data.size() < 2) throw DataError("nlaaa_fit needs at least two samples");
    if (!(cfg.tol >= 0.0)) throw DataError("nlaaa_fit: tolerance must be nonnegative");

    std::mt19937_64 rng(cfg.rng_seed);
    FitTrace trace;
    trace.stop = StopReason::budget_exhausted;
    RationalModel model = initial_model(data);
    SampleSet work = data;
    SupportSet supports;
    CVector weights;
    bool use_fallback_greedy = false;

    for (std::size_t k = 1; k <= cfg.max_degree + 1; ++k) {
        if (work.active_count() <= 1) {
            trace.stop = StopReason::data_exhausted;
            break;
        }
        const std::size_t idx = use_fallback_greedy ? fallback_greedy(model, work, cfg.fallback_mode, rng)
                                                    : greedy_select(model, work);
        use_fallback_greedy = false;

        work = work.with_interpolated(idx);
        supports.points.push_back(data.point(idx));
        supports.values.push_back(data.value(idx));

        TraceRecord rec;
        if (k == 1) {
            weights = CVector::Ones(1);
            rec.branch = Branch::initial;
        } else {
            CVector w_ext = CVector::Zero(weights.size() + 1);
            w_ext.head(weights.size()) = weights;
            auto choice = select_weights(supports, work, w_ext, cfg.refine);
            weights = choice.weights / choice.weights.norm();
            rec.branch = choice.branch;
            use_fallback_greedy = choice.branch == Branch::fallback;
        }
        model = RationalModel::barycentric(supports, weights);

        rec.k = k;
        rec.degree = k - 1;
        rec.support = data.point(idx);
        rec.raw_active_sq_err = active_squared_error(model, work);
        rec.full_sq_err = full_squared_error(model, work);
        const auto m = metrics(model, data);
        rec.l2 = m.l2;
        rec.linf = m.linf;
        trace.records.push_back(rec);

        if (rec.raw_active_sq_err < cfg.tol) {
            trace.stop = StopReason::tolerance;
            break;
        }
    }
    return {std::move(model), std::move(trace)};
}

}  // namespace baryfit
