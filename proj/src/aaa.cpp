#include "baryfit/aaa.hpp"

#include "baryfit/linalg.hpp"

namespace baryfit {

std::string_view branch_name(Branch b) {
    switch (b) {
        case Branch::initial: return "initial";
        case Branch::levy: return "levy";
        case Branch::sk: return "sk";
        case Branch::wf_single: return "wf-single";
        case Branch::wf_from_sk: return "wf-from-sk";
        case Branch::wf_from_prev: return "wf-from-prev";
        case Branch::fallback: return "fallback";
    }
    return "";
}

std::string_view stop_reason_name(StopReason s) {
    switch (s) {
        case StopReason::tolerance: return "tolerance";
        case StopReason::budget_exhausted: return "budget_exhausted";
        case StopReason::data_exhausted: return "data_exhausted";
    }
    return "";
}

RationalModel initial_model(const SampleSet& data) {
    Complex sum{};
    for (Complex h : data.values()) sum += h;
    return RationalModel::constant(sum / static_cast<double>(data.size()));
}

std::size_t greedy_select(const RationalModel& model, const SampleSet& data) {
    if (data.active_count() == 0) throw DomainError("greedy_select: no active samples");
    std::size_t best = data.size();
    double best_err = -1.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!data.is_active(i)) continue;
        double err;
        try {
            err = std::abs(eval(model, data.point(i)) - data.value(i));
        } catch (const NumericalError&) {
            err = std::numeric_limits<double>::infinity();
        }
        if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
        if (err > best_err) {
            best_err = err;
            best = i;
        }
    }
    return best;
}

CVector levy_weights(const SupportSet& supports, const SampleSet& data) {
    if (supports.size() == 0) throw DomainError("levy_weights: no support points");
    if (supports.size() == 1) return CVector::Ones(1);
    const auto sys = LevySystem::assemble(supports, data);
    return min_unit_norm_solution(levy_matrix(sys));
}

FitResult aaa_fit(const SampleSet& data, const FitConfig& cfg) {
    if (data.size() < 2) throw DataError("aaa_fit needs at least two samples");
    if (!(cfg.tol >= 0.0)) throw DataError("aaa_fit: tolerance must be nonnegative");

    FitTrace trace;
    RationalModel model = initial_model(data);
    SampleSet work = data;
    SupportSet supports;
    trace.stop = StopReason::budget_exhausted;

    for (std::size_t k = 1; k <= cfg.max_degree + 1; ++k) {
        if (work.active_count() <= 1) {
            trace.stop = StopReason::data_exhausted;
            break;
        }
        const std::size_t idx = greedy_select(model, work);
        work = work.with_interpolated(idx);
        supports.points.push_back(data.point(idx));
        supports.values.push_back(data.value(idx));

        const CVector w = levy_weights(supports, work);
        model = RationalModel::barycentric(supports, w);

        TraceRecord rec;
        rec.k = k;
        rec.degree = k - 1;
        rec.support = data.point(idx);
        rec.raw_active_sq_err = active_squared_error(model, work);
        rec.full_sq_err = full_squared_error(model, data);
        const auto m = metrics(model, data);
        rec.l2 = m.l2;
        rec.linf = m.linf;
        rec.branch = k == 1 ? Branch::initial : Branch::levy;
        trace.records.push_back(rec);

        if (rec.raw_active_sq_err < cfg.tol) {
            trace.stop = StopReason::tolerance;
            break;
        }
    }
    return {std::move(model), std::move(trace)};
}

}  // namespace baryfit
