// teig: compute real generalized eigenvalues of even-order symmetric tensors
// and probe positive semidefiniteness, via unconstrained minimization.
//
// Subcommands: gen (tensor files), eig (eigenvalue solves), psd
// (semidefiniteness check), bench (experiment suites). Exit codes: 0 on
// success or a conclusive verdict, 1 on usage or I/O errors, 2 when the
// result is inconclusive. Lines reporting wall-clock time are prefixed
// "time:" so deterministic output can be filtered.

#include "teig/bench.hpp"
#include "teig/bfgs.hpp"
#include "teig/generators.hpp"
#include "teig/parallel.hpp"
#include "teig/psd.hpp"
#include "teig/rng.hpp"
#include "teig/tensor_io.hpp"
#include "teig/variational.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace {

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, const char* spec = "%.9e")
{
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

teig::SymmetricTensor load_symmetric(const std::string& path)
{
    return teig::read_tensor(path).verified_symmetric();
}

teig::BOperator parse_b(const std::string& spec, int order, int dim)
{
    if (spec == "unit") return teig::BOperator::unit_tensor(order, dim);
    if (spec == "zid") return teig::BOperator::identity_power(order, dim);
    if (spec.rfind("matrix:", 0) == 0) {
        const std::string path = spec.substr(7);
        const teig::SymmetricTensor t = teig::read_tensor(path);
        if (t.order() != 2)
            throw std::runtime_error(path + ": a metric matrix file must have order 2, got "
                                     + std::to_string(t.order()));
        if (t.dim() != dim)
            throw std::runtime_error(path + ": metric matrix is " + std::to_string(t.dim())
                                     + "-dimensional, tensor is " + std::to_string(dim));
        Eigen::MatrixXd d(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                d(i, j) = t.values()[static_cast<std::size_t>(i) * dim + j];
        return teig::BOperator::matrix_power(order, d); // throws unless SPD
    }
    throw std::runtime_error("unknown metric '" + spec + "' (expected unit, zid, or matrix:PATH)");
}

json eigenpair_json(const teig::Eigenpair& pair)
{
    json j;
    j["lambda"] = pair.lambda;
    j["residual"] = pair.residual;
    j["b_kind"] = teig::to_string(pair.b_kind);
    j["normalization"] =
        pair.normalization == teig::Normalization::UnitSphere ? "unit_sphere" : "b_level_set";
    j["dual_recovery_consistent"] = pair.dual_recovery_consistent;
    j["x"] = std::vector<double>(pair.x.data(), pair.x.data() + pair.x.size());
    return j;
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
    int example = 0;
    int n = -1;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& args)
{
    int n = args.n;
    if (n < 0) {
        if (args.example == 5) {
            n = 3;
        } else {
            std::cerr << "gen: --n is required for example " << args.example << "\n";
            return 1;
        }
    }
    const teig::SymmetricTensor t = teig::make_example(args.example, n, args.seed);
    std::vector<std::string> comments = {"generator: example" + std::to_string(args.example),
                                         "n: " + std::to_string(n)};
    if (args.example == 2 || args.example == 3 || args.example == 4 || args.example == 6)
        comments.push_back("seed: " + std::to_string(args.seed));
    teig::write_tensor(args.out, t, comments);
    std::cout << "wrote " << args.out << " (order " << t.order() << ", dim " << t.dim() << ", "
              << t.size() << " values)\n";
    return 0;
}

// ---------------------------------------------------------------- eig ----

struct EigArgs {
    std::string tensor;
    std::string b = "zid";
    std::string objective = "f1";
    double shift = 0.0;
    int starts = 10;
    std::uint64_t seed = 0;
    double solver_tol = 1e-10;
    int max_iter = 1000;
    std::string report;
    int jobs = 0;
};

struct StartResult {
    teig::CriticalPoint point;
    teig::Termination termination = teig::Termination::MaxIter;
    int iterations = 0;
    double wall_time = 0.0;
    std::uint64_t seed = 0;
};

int run_eig(const EigArgs& args)
{
    Timer timer;
    const auto tensor = std::make_shared<const teig::SymmetricTensor>(load_symmetric(args.tensor));
    const teig::BOperator b = parse_b(args.b, tensor->order(), tensor->dim());
    const teig::Flavor flavor = args.objective == "f2" ? teig::Flavor::F2 : teig::Flavor::F1;
    if (args.objective != "f1" && args.objective != "f2")
        throw std::runtime_error("unknown objective '" + args.objective + "' (expected f1 or f2)");

    teig::Objective obj(flavor, args.shift, tensor, b);
    teig::SolverConfig solver;
    solver.grad_tol = args.solver_tol;
    solver.max_iter = args.max_iter;

    std::vector<StartResult> results(static_cast<std::size_t>(args.starts));
    teig::parallel_for_index(args.starts, args.jobs, [&](int i) {
        StartResult& r = results[static_cast<std::size_t>(i)];
        r.seed = teig::child_seed(args.seed, static_cast<std::uint64_t>(i));
        teig::Rng rng(r.seed);
        const Eigen::VectorXd x0 = teig::normalized_random_start(tensor->dim(), rng);
        const teig::SolveReport rep = teig::minimize(obj, x0, solver);
        r.point = teig::classify_critical_point(obj, rep.x, rep.objective_value,
                                                rep.final_grad_norm);
        r.termination = rep.termination;
        r.iterations = rep.iterations;
        r.wall_time = rep.wall_time;
    });

    std::cout << "tensor: " << args.tensor << " (order " << tensor->order() << ", dim "
              << tensor->dim() << ")\n";
    std::cout << "objective: " << args.objective << "  b: " << args.b << "  shift: " << args.shift
              << "  starts: " << args.starts << "  seed: " << args.seed << "\n";

    int count_eigen = 0, count_zero = 0, count_other = 0;
    const StartResult* best = nullptr;
    for (const StartResult& r : results) {
        switch (r.point.classification) {
        case teig::PointClass::EigenpairPoint: {
            ++count_eigen;
            const double lambda = r.point.recovered->lambda;
            const bool better = !best
                || (flavor == teig::Flavor::F1 ? lambda < best->point.recovered->lambda
                                               : lambda > best->point.recovered->lambda);
            if (better) best = &r;
            break;
        }
        case teig::PointClass::ZeroPoint:
            ++count_zero;
            break;
        case teig::PointClass::Inconclusive:
            ++count_other;
            break;
        }
    }

    // Distinct eigenvalues, clustered at mixed tolerance.
    struct Cluster {
        double lambda;
        int count;
        double min_residual;
    };
    std::vector<Cluster> clusters;
    for (const StartResult& r : results) {
        if (r.point.classification != teig::PointClass::EigenpairPoint) continue;
        const double lambda = r.point.recovered->lambda;
        const double res = r.point.recovered->residual;
        bool merged = false;
        for (Cluster& c : clusters) {
            if (std::abs(c.lambda - lambda) <= 1e-6 * (1.0 + std::abs(lambda))) {
                ++c.count;
                c.min_residual = std::min(c.min_residual, res);
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({lambda, 1, res});
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.lambda < b.lambda; });

    for (std::size_t i = 0; i < results.size(); ++i) {
        const StartResult& r = results[i];
        std::cout << "start " << i << ": " << teig::to_string(r.point.classification);
        if (r.point.recovered)
            std::cout << " lambda=" << fmt(r.point.recovered->lambda)
                      << " residual=" << fmt(r.point.recovered->residual, "%.3e");
        std::cout << " iters=" << r.iterations << " termination=" << teig::to_string(r.termination)
                  << "\n";
    }

    if (best) {
        const teig::Eigenpair& pair = *best->point.recovered;
        std::cout << "best lambda: " << fmt(pair.lambda) << "\n";
        std::cout << "residual: " << fmt(pair.residual, "%.3e") << "\n";
        std::cout << "eigenvector:";
        for (Eigen::Index i = 0; i < pair.x.size(); ++i) std::cout << ' ' << fmt(pair.x[i], "%.17g");
        std::cout << "\n";
        std::cout << "distinct eigenvalues found:";
        for (const Cluster& c : clusters)
            std::cout << ' ' << fmt(c.lambda) << " (x" << c.count << ")";
        std::cout << "\n";
    } else {
        std::cout << "no eigenpair found\n";
    }
    std::cout << "outcomes: eigenpair " << count_eigen << ", zero_point " << count_zero
              << ", inconclusive " << count_other << "\n";
    std::cout << "time: " << fmt(timer.seconds(), "%.3f") << " s\n";

    if (!args.report.empty()) {
        json j;
        j["command"] = "eig";
        j["tensor"] = {{"path", args.tensor}, {"order", tensor->order()}, {"dim", tensor->dim()}};
        j["b"] = args.b;
        j["objective"] = args.objective;
        j["shift"] = args.shift;
        j["starts"] = args.starts;
        j["seed"] = args.seed;
        j["solver"] = {{"grad_tol", solver.grad_tol},
                       {"step_tol", solver.step_tol},
                       {"max_iter", solver.max_iter}};
        j["outcomes"] = {{"eigenpair", count_eigen},
                         {"zero_point", count_zero},
                         {"inconclusive", count_other}};
        j["best"] = best ? eigenpair_json(*best->point.recovered) : json(nullptr);
        json dl = json::array();
        for (const Cluster& c : clusters)
            dl.push_back({{"lambda", c.lambda}, {"count", c.count}, {"min_residual", c.min_residual}});
        j["distinct_eigenvalues"] = dl;
        json starts = json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const StartResult& r = results[i];
            json s;
            s["start"] = i;
            s["seed"] = r.seed;
            s["classification"] = teig::to_string(r.point.classification);
            s["termination"] = teig::to_string(r.termination);
            s["iterations"] = r.iterations;
            s["grad_norm"] = r.point.grad_norm;
            s["objective_value"] = r.point.objective_value;
            s["b_form"] = r.point.b_form;
            if (r.point.recovered) {
                s["lambda"] = r.point.recovered->lambda;
                s["residual"] = r.point.recovered->residual;
            }
            starts.push_back(std::move(s));
        }
        j["per_start"] = starts;
        std::ofstream out(args.report);
        if (!out) throw std::runtime_error(args.report + ": cannot open for writing");
        out << j.dump(2) << "\n";
    }

    if (count_eigen > 0) return 0;
    if (count_zero == args.starts) return 0; // a clean all-zero result is conclusive
    return 2;
}

// ---------------------------------------------------------------- psd ----

struct PsdArgs {
    std::string tensor;
    std::string b = "unit";
    double t = -1.0;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string json_path;
    int jobs = 0;
};

int run_psd(const PsdArgs& args)
{
    Timer timer;
    const teig::SymmetricTensor tensor = load_symmetric(args.tensor);
    teig::PsdConfig cfg;
    if (args.b == "unit")
        cfg.b_kind = teig::BKind::UnitTensor;
    else if (args.b == "zid")
        cfg.b_kind = teig::BKind::IdentityPower;
    else
        throw std::runtime_error("unknown metric '" + args.b + "' (expected unit or zid)");
    cfg.t = args.t;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.jobs = args.jobs;

    const teig::PsdVerdict verdict = teig::psd_check(tensor, cfg);

    switch (verdict.decision) {
    case teig::PsdDecision::NotPsd:
        std::cout << "verdict: NOT positive semidefinite\n";
        std::cout << "witness: lambda=" << fmt(verdict.witness->lambda)
                  << " residual=" << fmt(verdict.witness->residual, "%.3e") << "\n";
        break;
    case teig::PsdDecision::PositiveDefinite:
        std::cout << "verdict: positive definite (non-certified)\n";
        break;
    case teig::PsdDecision::PositiveSemidefinite:
        std::cout << "verdict: positive semidefinite (non-certified)\n";
        std::cout << "witness: lambda=" << fmt(verdict.witness->lambda)
                  << " residual=" << fmt(verdict.witness->residual, "%.3e") << "\n";
        break;
    case teig::PsdDecision::Inconclusive:
        std::cout << "verdict: inconclusive\n";
        break;
    }
    std::cout << "trials: " << verdict.trials_run << " (pd_votes "
              << verdict.counts.vote_positive_definite << ", witnesses "
              << verdict.counts.witness_negative << ", zero_votes "
              << verdict.counts.vote_zero_eigenvalue << ", positive "
              << verdict.counts.found_positive_eigenvalue << ", inconclusive "
              << verdict.counts.inconclusive << ")\n";
    std::cout << "b_form range: [" << fmt(verdict.b_form_min, "%.3e") << ", "
              << fmt(verdict.b_form_max, "%.3e") << "]\n";
    std::cout << "time: " << fmt(timer.seconds(), "%.3f") << " s\n";

    if (!args.json_path.empty()) {
        json j;
        j["command"] = "psd";
        j["tensor"] = {{"path", args.tensor}, {"order", tensor.order()}, {"dim", tensor.dim()}};
        j["config"] = {{"b", args.b},
                       {"t", cfg.t},
                       {"eta1", cfg.eta1},
                       {"eta2", cfg.eta2},
                       {"trials", cfg.trials},
                       {"seed", cfg.seed},
                       {"lambda_zero_tol", cfg.lambda_zero_tol},
                       {"retry_shifts", cfg.retry_shifts}};
        j["decision"] = teig::to_string(verdict.decision);
        j["certified"] = verdict.decision == teig::PsdDecision::NotPsd;
        j["witness"] = verdict.witness ? eigenpair_json(*verdict.witness) : json(nullptr);
        j["trials_run"] = verdict.trials_run;
        j["counts"] = {{"vote_positive_definite", verdict.counts.vote_positive_definite},
                       {"witness_negative", verdict.counts.witness_negative},
                       {"vote_zero_eigenvalue", verdict.counts.vote_zero_eigenvalue},
                       {"found_positive_eigenvalue", verdict.counts.found_positive_eigenvalue},
                       {"inconclusive", verdict.counts.inconclusive}};
        j["b_form_min"] = verdict.b_form_min;
        j["b_form_max"] = verdict.b_form_max;
        json trials = json::array();
        for (const teig::PsdTrial& t : verdict.trials) {
            trials.push_back({{"outcome", teig::to_string(t.outcome)},
                              {"b_form", t.b_form},
                              {"lambda_obj", t.lambda_obj},
                              {"lambda_alg", t.lambda_alg},
                              {"shift_used", t.shift_used},
                              {"retries", t.retries},
                              {"iterations", t.iterations}});
        }
        j["trials"] = trials;
        std::ofstream out(args.json_path);
        if (!out) throw std::runtime_error(args.json_path + ": cannot open for writing");
        out << j.dump(2) << "\n";
    }

    return verdict.decision == teig::PsdDecision::Inconclusive ? 2 : 0;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
    std::string suite;
    int trials = 0;
    std::uint64_t seed = 42;
    std::string out = "bench_out";
    int jobs = 0;
};

int run_bench(const BenchArgs& args)
{
    Timer timer;
    const teig::SuiteResult result = teig::run_suite(args.suite, args.trials, args.seed, args.jobs);
    const std::vector<std::string> written = teig::write_suite_outputs(result, args.out);
    std::cout << teig::emit_markdown(result.all_rows);
    for (const std::string& path : written) std::cout << "wrote " << path << "\n";
    std::cout << "time: " << fmt(timer.seconds(), "%.3f") << " s\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"real eigenvalues and positive semidefiniteness of even-order symmetric tensors"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a tensor file from a built-in family");
    gen->add_option("--example", gen_args.example, "family id (1..7)")
        ->required()
        ->check(CLI::Range(1, 7));
    gen->add_option("--n", gen_args.n, "dimension");
    gen->add_option("--seed", gen_args.seed, "seed for the random families");
    gen->add_option("--out", gen_args.out, "output .tns path")->required();

    EigArgs eig_args;
    CLI::App* eig = app.add_subcommand("eig", "compute eigenvalues by multi-start minimization");
    eig->add_option("--tensor", eig_args.tensor, "input .tns path")->required();
    eig->add_option("--b", eig_args.b, "metric: unit, zid, or matrix:PATH");
    eig->add_option("--objective", eig_args.objective, "f1 (negative side) or f2 (positive side)");
    eig->add_option("--shift", eig_args.shift, "spectral shift t");
    eig->add_option("--starts", eig_args.starts, "number of random starts")->check(CLI::PositiveNumber);
    eig->add_option("--seed", eig_args.seed, "master seed");
    eig->add_option("--solver-tol", eig_args.solver_tol, "gradient tolerance (infinity norm)");
    eig->add_option("--max-iter", eig_args.max_iter, "iteration cap");
    eig->add_option("--report", eig_args.report, "write a JSON report here");
    eig->add_option("--jobs", eig_args.jobs, "worker threads (0 = all cores)");

    PsdArgs psd_args;
    CLI::App* psd = app.add_subcommand("psd", "determine positive semidefiniteness");
    psd->add_option("--tensor", psd_args.tensor, "input .tns path")->required();
    psd->add_option("--b", psd_args.b, "metric: unit or zid");
    psd->add_option("--t", psd_args.t, "negative shift");
    psd->add_option("--trials", psd_args.trials, "number of random-start trials")
        ->check(CLI::PositiveNumber);
    psd->add_option("--seed", psd_args.seed, "master seed");
    psd->add_option("--json", psd_args.json_path, "write the verdict as JSON here");
    psd->add_option("--jobs", psd_args.jobs, "worker threads (0 = all cores)");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run a published experiment suite");
    bench->add_option("--suite", bench_args.suite, "table1 .. table7")->required();
    bench->add_option("--trials", bench_args.trials, "trials per method (0 = suite default)");
    bench->add_option("--seed", bench_args.seed, "master seed");
    bench->add_option("--out", bench_args.out, "output directory");
    bench->add_option("--jobs", bench_args.jobs, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (eig->parsed()) return run_eig(eig_args);
        if (psd->parsed()) return run_psd(psd_args);
        if (bench->parsed()) return run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
