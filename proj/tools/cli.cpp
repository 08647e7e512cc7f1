#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "baryfit/aaa.hpp"
#include "baryfit/datasets.hpp"
#include "baryfit/gradients.hpp"
#include "baryfit/io.hpp"
#include "baryfit/nlaaa.hpp"

namespace baryfit::cli {

namespace {

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
    const char* env = std::getenv("BARYFIT_LOG");
    if (env == nullptr) return LogLevel::info;
    const std::string v = env;
    if (v == "quiet") return LogLevel::quiet;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::info;
}

void log_info(const std::string& msg) {
    if (log_level() != LogLevel::quiet) std::cerr << "[baryfit] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() == LogLevel::debug) std::cerr << "[baryfit:debug] " << msg << '\n';
}

void log_trace(const FitTrace& trace, const char* algo) {
    if (log_level() != LogLevel::debug) return;
    for (const auto& r : trace.records) {
        log_debug(std::string(algo) + " k=" + std::to_string(r.k) + " l2=" + format_double(r.l2) +
                  " branch=" + std::string(branch_name(r.branch)));
    }
}

struct FitOptions {
    std::string algo = "nlaaa";
    std::string data;
    double tol = 1e-12;
    std::size_t max_degree = 30;
    std::size_t pmax = 20;
    double tol_sk = 1e-8;
    double tol_wf = 1e-8;
    std::string fallback = "probabilistic";
    std::uint64_t seed = 0;
    std::string model_out;
    std::string trace_out;
};

NlaaaConfig nlaaa_config(const FitOptions& o) {
    NlaaaConfig cfg;
    cfg.tol = o.tol;
    cfg.max_degree = o.max_degree;
    cfg.refine.p_max = o.pmax;
    cfg.refine.tol_sk = o.tol_sk;
    cfg.refine.tol_wf = o.tol_wf;
    cfg.fallback_mode = parse_fallback_mode(o.fallback);
    cfg.rng_seed = o.seed;
    return cfg;
}

void print_summary(const FitResult& res, const SampleSet& data) {
    const auto m = metrics(res.model, data);
    std::cout << "degree=" << res.model.degree() << " support_points=" << res.model.size()
              << " l2=" << format_double(m.l2) << " linf=" << format_double(m.linf)
              << " stop=" << stop_reason_name(res.trace.stop) << '\n';
}

int cmd_sample(const std::string& fn, std::size_t count, const std::string& out) {
    const auto data = sample_builtin(parse_builtin(fn), count);
    save_samples(out, data);
    log_info("wrote " + std::to_string(data.size()) + " samples of " + fn + " to " + out);
    return kSuccess;
}

int cmd_fit(const FitOptions& o) {
    const auto data = load_csv(o.data);
    log_info("loaded " + std::to_string(data.size()) + " samples from " + o.data);
    FitResult res = o.algo == "aaa" ? aaa_fit(data, FitConfig{o.tol, o.max_degree}) : nlaaa_fit(data, nlaaa_config(o));
    log_trace(res.trace, o.algo.c_str());
    if (!o.model_out.empty()) save_model(o.model_out, res.model);
    if (!o.trace_out.empty()) save_trace(o.trace_out, res.trace);
    if (res.trace.stop == StopReason::budget_exhausted) log_info("tolerance not reached within the degree budget");
    print_summary(res, data);
    return kSuccess;
}

int cmd_compare(const FitOptions& o, const std::string& out_dir) {
    const auto data = load_csv(o.data);
    log_info("comparing AAA and NL-AAA on " + std::to_string(data.size()) + " samples");
    auto aaa_job = std::async(std::launch::async, [&] { return aaa_fit(data, FitConfig{o.tol, o.max_degree}); });
    const FitResult nl = nlaaa_fit(data, nlaaa_config(o));
    const FitResult aaa = aaa_job.get();

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    save_trace(dir / "aaa_trace.csv", aaa.trace);
    save_trace(dir / "nlaaa_trace.csv", nl.trace);

    // A fit that stopped early keeps its final model, so its last row is carried forward.
    std::ofstream out(dir / "compare.csv", std::ios::binary);
    if (!out) throw DataError("cannot write " + (dir / "compare.csv").string());
    out << "k,aaa_l2,nlaaa_l2,aaa_linf,nlaaa_linf\n";
    const auto& a = aaa.trace.records;
    const auto& n = nl.trace.records;
    const std::size_t rows = std::max(a.size(), n.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& ra = a[std::min(i, a.size() - 1)];
        const auto& rn = n[std::min(i, n.size() - 1)];
        out << i + 1 << ',' << format_double(ra.l2) << ',' << format_double(rn.l2) << ','
            << format_double(ra.linf) << ',' << format_double(rn.linf) << '\n';
    }
    std::cout << "aaa:   ";
    print_summary(aaa, data);
    std::cout << "nlaaa: ";
    print_summary(nl, data);
    return kSuccess;
}

int cmd_eval(const std::string& model_path, const std::string& points_path) {
    const auto model = load_model(model_path);
    const auto pts = load_points_csv(points_path);
    std::cout << "z_re,z_im,r_re,r_im\n";
    for (Complex z : pts) {
        const Complex r = eval(model, z);
        std::cout << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(r.real())
                  << ',' << format_double(r.imag()) << '\n';
    }
    return kSuccess;
}

int cmd_realize(const std::string& model_path, const std::string& out_dir) {
    const auto model = load_model(model_path);
    const auto re = realize(model);
    save_realization(out_dir, re);

    Complex probe{0.0, 0.0};
    double radius = 0.0;
    for (Complex s : model.supports()) radius = std::max(radius, std::abs(s));
    for (Complex s : model.supports())
        if (s == probe) probe = Complex{radius + 1.0, 0.0};
    const Complex r = eval(model, probe);
    const Complex t = re.transfer(probe);
    std::cout << "order=" << model.size() << " check_z=" << format_double(probe.real()) << ','
              << format_double(probe.imag()) << " eval=" << format_double(r.real()) << ','
              << format_double(r.imag()) << " transfer=" << format_double(t.real()) << ','
              << format_double(t.imag()) << '\n';
    return kSuccess;
}

double relative_deviation(const CVector& analytic, const CVector& reference) {
    const double scale = std::max(reference.norm(), 1e-300);
    return (analytic - reference).norm() / scale;
}

int cmd_gradcheck(const std::string& data_path, std::size_t k, std::uint64_t seed) {
    const auto data = load_csv(data_path);
    if (k < 1 || k >= data.size()) throw DataError("--k must lie in [1, number of samples - 1]");

    std::mt19937_64 rng(seed);
    auto uniform = [&] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };

    // Random distinct supports drawn from the data; the rest stay active.
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (data.size() - i));
        std::swap(order[i], order[j]);
    }
    SampleSet work = data;
    SupportSet s;
    for (std::size_t i = 0; i < k; ++i) {
        work = work.with_interpolated(order[i]);
        s.points.push_back(data.point(order[i]));
        s.values.push_back(data.value(order[i]));
    }
    CVector w(static_cast<Eigen::Index>(k)), w_prev(static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        w(j) = Complex(uniform(), uniform());
        w_prev(j) = w(j) + 0.1 * Complex(uniform(), uniform());
    }

    struct Check {
        const char* name;
        double dev;
    };
    const Check checks[] = {
        {"nonlinear", relative_deviation(grad_nonlinear(s, work, w).d_w,
                                         fd_wirtinger([&](const CVector& v) { return error_nonlinear(s, work, v); }, w))},
        {"levy", relative_deviation(grad_levy(s, work, w).d_w,
                                    fd_wirtinger([&](const CVector& v) { return error_levy(s, work, v); }, w))},
        {"sk", relative_deviation(grad_sk_step(s, work, w, w_prev).d_w,
                                  fd_wirtinger([&](const CVector& v) { return error_sk(s, work, v, w_prev); }, w))},
        {"wf", relative_deviation(grad_wf_step(s, work, w, w_prev).d_w,
                                  fd_wirtinger([&](const CVector& v) { return error_wf(s, work, v, w_prev); }, w))},
    };
    double worst = 0.0;
    for (const auto& c : checks) {
        std::cout << c.name << " max_rel_dev=" << format_double(c.dev) << '\n';
        worst = std::max(worst, c.dev);
    }
    std::cout << "max_rel_dev=" << format_double(worst) << '\n';
    return worst <= 1e-5 ? kSuccess : kNumericalError;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Barycentric rational fitting: AAA and NL-AAA with SK/WF refinement"};
    app.require_subcommand(1);

    std::string fn, out;
    std::size_t count = 0;
    auto* sample = app.add_subcommand("sample", "Write samples of a builtin function on [-1, 1]");
    sample->add_option("--fn", fn, "abs | relu | abs_sin3pi | triwave")->required();
    sample->add_option("--count", count, "Number of equidistant points (>= 2)")->required();
    sample->add_option("--out", out, "Output CSV")->required();

    FitOptions fo;
    auto* fit = app.add_subcommand("fit", "Fit a rational model to sampled data");
    fit->add_option("--algo", fo.algo, "aaa | nlaaa")->check(CLI::IsMember({"aaa", "nlaaa"}))->capture_default_str();
    fit->add_option("--data", fo.data, "Sample CSV (z_re,z_im,H_re,H_im)")->required();
    fit->add_option("--tol", fo.tol, "Stop when the raw active squared error drops below this")->capture_default_str();
    fit->add_option("--max-degree", fo.max_degree, "Degree budget")->capture_default_str();
    auto* o_pmax = fit->add_option("--pmax", fo.pmax, "Max SK/WF iterations (nlaaa)")->capture_default_str();
    auto* o_tsk = fit->add_option("--tol-sk", fo.tol_sk, "SK weight-change tolerance (nlaaa)")->capture_default_str();
    auto* o_twf = fit->add_option("--tol-wf", fo.tol_wf, "WF weight-change tolerance (nlaaa)")->capture_default_str();
    auto* o_fb = fit->add_option("--fallback", fo.fallback, "probabilistic | relative (nlaaa)")
                     ->check(CLI::IsMember({"probabilistic", "relative"}))
                     ->capture_default_str();
    auto* o_seed = fit->add_option("--seed", fo.seed, "Seed of the fallback selection (nlaaa)")->capture_default_str();
    fit->add_option("--model", fo.model_out, "Model JSON output");
    fit->add_option("--trace", fo.trace_out, "Trace CSV output");

    FitOptions co;
    std::string compare_out;
    auto* compare = app.add_subcommand("compare", "Run AAA and NL-AAA to the same budget");
    compare->add_option("--data", co.data, "Sample CSV")->required();
    compare->add_option("--max-degree", co.max_degree, "Degree budget")->capture_default_str();
    compare->add_option("--tol", co.tol, "Stopping tolerance")->capture_default_str();
    compare->add_option("--pmax", co.pmax, "Max SK/WF iterations")->capture_default_str();
    compare->add_option("--fallback", co.fallback, "probabilistic | relative")
        ->check(CLI::IsMember({"probabilistic", "relative"}))
        ->capture_default_str();
    compare->add_option("--seed", co.seed, "Seed of the fallback selection")->capture_default_str();
    compare->add_option("--out", compare_out, "Output directory")->required();

    std::string gc_data;
    std::size_t gc_k = 3;
    std::uint64_t gc_seed = 0;
    auto* gradcheck = app.add_subcommand("gradcheck", "Check analytic Wirtinger gradients against finite differences");
    gradcheck->add_option("--data", gc_data, "Sample CSV")->required();
    gradcheck->add_option("--k", gc_k, "Number of support points")->capture_default_str();
    gradcheck->add_option("--seed", gc_seed, "Instance seed")->capture_default_str();

    std::string model_path, points_path, realize_out;
    auto* evalc = app.add_subcommand("eval", "Evaluate a model at points");
    evalc->add_option("--model", model_path, "Model JSON")->required();
    evalc->add_option("--points", points_path, "CSV whose first two columns are z_re,z_im")->required();

    auto* realizec = app.add_subcommand("realize", "Write the descriptor realization of a model");
    realizec->add_option("--model", model_path, "Model JSON")->required();
    realizec->add_option("--out", realize_out, "Output directory")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*sample) return cmd_sample(fn, count, out);
        if (*fit) {
            if (fo.algo == "aaa") {
                for (const auto* opt : {o_pmax, o_tsk, o_twf, o_fb, o_seed}) {
                    if (opt->count() > 0) {
                        std::cerr << "error: " << opt->get_name() << " only applies to --algo nlaaa\n";
                        return kUsageError;
                    }
                }
            }
            return cmd_fit(fo);
        }
        if (*compare) return cmd_compare(co, compare_out);
        if (*gradcheck) return cmd_gradcheck(gc_data, gc_k, gc_seed);
        if (*evalc) return cmd_eval(model_path, points_path);
        if (*realizec) return cmd_realize(model_path, realize_out);
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace baryfit::cli
