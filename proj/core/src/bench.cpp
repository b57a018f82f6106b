#include "teig/bench.hpp"

#include "teig/generators.hpp"
#include "teig/parallel.hpp"
#include "teig/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace teig {

namespace {

// Child-seed streams inside one experiment: trial i uses index i directly,
// the tensor draw uses an index no trial count can reach.
constexpr std::uint64_t kTensorStream = std::uint64_t{1} << 32;
constexpr std::uint64_t kSuiteRowStream = std::uint64_t{1} << 33;

std::uint64_t fnv1a(const Eigen::VectorXd& v)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::uint64_t bits;
        const double d = v[i];
        std::memcpy(&bits, &d, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xFF;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

BOperator make_b(BKind kind, int order, int dim)
{
    switch (kind) {
    case BKind::UnitTensor: return BOperator::unit_tensor(order, dim);
    case BKind::IdentityPower: return BOperator::identity_power(order, dim);
    default:
        throw std::invalid_argument("experiment methods support the unit_tensor and identity_power metrics only");
    }
}

std::string fmt_sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fmt_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_sci(const std::optional<double>& v)
{
    return v ? fmt_sci(*v) : std::string();
}

void apply_success(TrialRecord& rec, SuccessRule rule, const ExperimentSpec& spec)
{
    switch (rule) {
    case SuccessRule::AccuracyBelow:
        rec.success = rec.outcome == TrialOutcome::FoundEigenpair && rec.accuracy
            && *rec.accuracy <= spec.accuracy_tol;
        break;
    case SuccessRule::NegativeLambda:
        rec.success = rec.lambda && *rec.lambda < -spec.lambda_zero_tol;
        break;
    case SuccessRule::ZeroLambda:
        rec.success = rec.outcome == TrialOutcome::FoundEigenpair && rec.lambda
            && std::abs(*rec.lambda) <= spec.lambda_zero_tol;
        break;
    case SuccessRule::ZeroPointReached:
        rec.success = rec.outcome == TrialOutcome::ZeroPoint;
        break;
    }
}

void run_variational(const VariationalMethod& m, const std::shared_ptr<const SymmetricTensor>& a,
                     const Eigen::VectorXd& x0, TrialRecord& rec)
{
    Objective obj(m.flavor, m.shift, a, make_b(m.b_kind, a->order(), a->dim()));
    const SolveReport rep = minimize(obj, x0, m.solver);
    const CriticalPoint cp = classify_critical_point(obj, rep.x, rep.objective_value,
                                                     rep.final_grad_norm, m.eta1, m.eta2);
    rec.iterations = rep.iterations;
    rec.wall_time = rep.wall_time;
    rec.termination = to_string(rep.termination);
    rec.b_form = cp.b_form;
    switch (cp.classification) {
    case PointClass::EigenpairPoint:
        rec.outcome = TrialOutcome::FoundEigenpair;
        rec.lambda = cp.recovered->lambda;
        rec.accuracy = cp.recovered->residual;
        break;
    case PointClass::ZeroPoint:
        rec.outcome = TrialOutcome::ZeroPoint;
        break;
    case PointClass::Inconclusive:
        rec.outcome = rep.termination == Termination::MaxIter ? TrialOutcome::MaxIterReached
                                                              : TrialOutcome::Diverged;
        break;
    }
}

void run_sshopm(const SshopmMethod& m, const std::shared_ptr<const SymmetricTensor>& a,
                const Eigen::VectorXd& x0, TrialRecord& rec)
{
    const auto t0 = std::chrono::steady_clock::now();
    const SshopmResult res = sshopm_run(*a, x0, m.config);
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.iterations = res.iterations;
    rec.termination = res.termination == SshopmTermination::Tol ? "tol" : "max_iters";
    // The iteration always ends holding an eigenpair estimate; its residual
    // tells how good it is.
    rec.outcome = TrialOutcome::FoundEigenpair;
    rec.lambda = res.pair.lambda;
    rec.accuracy = res.pair.residual;
}

void run_psd_step(const PsdStepMethod& m, const std::shared_ptr<const SymmetricTensor>& a,
                  const Eigen::VectorXd& x0, TrialRecord& rec)
{
    const PsdTrial trial = run_psd_trial(a, m.config, x0);
    rec.wall_time = trial.wall_time;
    rec.iterations = trial.iterations;
    rec.termination = to_string(trial.outcome);
    rec.b_form = trial.b_form;
    switch (trial.outcome) {
    case PsdTrialOutcome::VotePositiveDefinite:
        rec.outcome = TrialOutcome::ZeroPoint;
        break;
    case PsdTrialOutcome::WitnessNegative:
    case PsdTrialOutcome::VoteZeroEigenvalue:
    case PsdTrialOutcome::FoundPositiveEigenvalue:
        rec.outcome = TrialOutcome::FoundEigenpair;
        rec.lambda = trial.pair->lambda;
        rec.accuracy = trial.pair->residual;
        break;
    case PsdTrialOutcome::Inconclusive:
        rec.outcome = TrialOutcome::Diverged;
        break;
    }
}

} // namespace

const char* to_string(TrialOutcome o)
{
    switch (o) {
    case TrialOutcome::FoundEigenpair: return "found_eigenpair";
    case TrialOutcome::ZeroPoint: return "zero_point";
    case TrialOutcome::Diverged: return "diverged";
    case TrialOutcome::MaxIterReached: return "max_iter";
    }
    return "unknown";
}

ExperimentResult run_experiment(const ExperimentSpec& spec)
{
    if (spec.methods.empty())
        throw std::invalid_argument("experiment has no methods");
    if (spec.trials < 0)
        throw std::invalid_argument("experiment trial count must be >= 0");

    // Resolve the generator (and fail on unknown names) before any trial.
    const std::uint64_t tensor_seed = child_seed(spec.master_seed, kTensorStream);
    const auto tensor = std::make_shared<const SymmetricTensor>(
        make_example(spec.generator, spec.n, tensor_seed));

    ExperimentResult result;
    result.tensor_id = spec.generator + "_n" + std::to_string(spec.n);
    if (spec.trials == 0) return result;

    // Start vectors are shared across methods per trial index.
    std::vector<Eigen::VectorXd> starts(static_cast<std::size_t>(spec.trials));
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(spec.trials));
    for (int i = 0; i < spec.trials; ++i) {
        seeds[i] = child_seed(spec.master_seed, static_cast<std::uint64_t>(i));
        Rng rng(seeds[i]);
        starts[i] = normalized_random_start(tensor->dim(), rng);
    }

    const int method_count = static_cast<int>(spec.methods.size());
    result.records.resize(static_cast<std::size_t>(method_count) * spec.trials);
    parallel_for_index(method_count * spec.trials, spec.jobs, [&](int task) {
        const int m_idx = task / spec.trials;
        const int t_idx = task % spec.trials;
        const MethodSpec& ms = spec.methods[static_cast<std::size_t>(m_idx)];
        TrialRecord rec;
        rec.method = ms.name;
        rec.tensor_id = result.tensor_id;
        rec.n = tensor->dim();
        rec.trial_index = t_idx;
        rec.seed = seeds[static_cast<std::size_t>(t_idx)];
        rec.x0_hash = fnv1a(starts[static_cast<std::size_t>(t_idx)]);
        std::visit(
            [&](const auto& m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, VariationalMethod>)
                    run_variational(m, tensor, starts[static_cast<std::size_t>(t_idx)], rec);
                else if constexpr (std::is_same_v<T, SshopmMethod>)
                    run_sshopm(m, tensor, starts[static_cast<std::size_t>(t_idx)], rec);
                else
                    run_psd_step(m, tensor, starts[static_cast<std::size_t>(t_idx)], rec);
            },
            ms.method);
        apply_success(rec, ms.success_rule, spec);
        result.records[static_cast<std::size_t>(task)] = std::move(rec);
    });

    result.summary = summarize(result.records);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records)
{
    // Group keys in first-appearance order, then sort method-first.
    std::vector<std::pair<std::string, std::string>> keys;
    for (const TrialRecord& r : records) {
        const auto key = std::make_pair(r.method, r.tensor_id);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    std::stable_sort(keys.begin(), keys.end());

    std::vector<SummaryRow> rows;
    rows.reserve(keys.size());
    for (const auto& key : keys) {
        SummaryRow row;
        row.method = key.first;
        row.tensor_id = key.second;
        int successes = 0;
        double time_sum = 0.0;
        double iters_sum = 0.0;
        double acc_sum = 0.0;
        int acc_count = 0;
        bool first = true;
        for (const TrialRecord& r : records) {
            if (r.method != key.first || r.tensor_id != key.second) continue;
            row.n = r.n;
            ++row.trials;
            successes += r.success ? 1 : 0;
            time_sum += r.wall_time;
            iters_sum += r.iterations;
            if (first) {
                row.time_min = row.time_max = r.wall_time;
                first = false;
            } else {
                row.time_min = std::min(row.time_min, r.wall_time);
                row.time_max = std::max(row.time_max, r.wall_time);
            }
            if (r.accuracy) {
                if (!acc_count) {
                    row.acc_min = row.acc_max = *r.accuracy;
                } else {
                    row.acc_min = std::min(*row.acc_min, *r.accuracy);
                    row.acc_max = std::max(*row.acc_max, *r.accuracy);
                }
                acc_sum += *r.accuracy;
                ++acc_count;
            }
        }
        if (acc_count) row.acc_mean = acc_sum / acc_count;
        row.success_rate = row.trials ? 100.0 * successes / row.trials : 0.0;
        row.time_mean = row.trials ? time_sum / row.trials : 0.0;
        row.iters_mean = row.trials ? iters_sum / row.trials : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string emit_csv(const std::vector<SummaryRow>& rows)
{
    std::ostringstream out;
    out << "method,tensor_id,n,trials,success_rate,acc_min,acc_max,acc_mean,"
           "time_min,time_max,time_mean,iters_mean\n";
    for (const SummaryRow& r : rows) {
        out << r.method << ',' << r.tensor_id << ',' << r.n << ',' << r.trials << ','
            << fmt_sci(r.success_rate) << ',' << opt_sci(r.acc_min) << ',' << opt_sci(r.acc_max)
            << ',' << opt_sci(r.acc_mean) << ',' << fmt_sci(r.time_min) << ','
            << fmt_sci(r.time_max) << ',' << fmt_sci(r.time_mean) << ','
            << fmt_sci(r.iters_mean) << '\n';
    }
    return out.str();
}

std::string emit_markdown(const std::vector<SummaryRow>& rows)
{
    if (rows.empty()) throw std::invalid_argument("emit_markdown: no rows");
    const std::vector<std::string> header = {"Method", "Tensor", "n", "Trials", "Success %",
                                             "Acc min", "Acc max", "Acc mean", "Time min",
                                             "Time max", "Time mean", "Iters mean"};
    std::vector<std::vector<std::string>> cells;
    cells.push_back(header);
    for (const SummaryRow& r : rows) {
        cells.push_back({r.method, r.tensor_id, std::to_string(r.n), std::to_string(r.trials),
                         fmt_sci(r.success_rate),
                         r.acc_min ? fmt_sci(*r.acc_min) : "-",
                         r.acc_max ? fmt_sci(*r.acc_max) : "-",
                         r.acc_mean ? fmt_sci(*r.acc_mean) : "-",
                         fmt_sci(r.time_min), fmt_sci(r.time_max), fmt_sci(r.time_mean),
                         fmt_sci(r.iters_mean)});
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        out << '|';
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << ' ' << row[c] << std::string(width[c] - row[c].size(), ' ') << " |";
        }
        out << '\n';
    };
    emit_row(cells[0]);
    out << '|';
    for (std::size_t c = 0; c < header.size(); ++c) out << std::string(width[c] + 2, '-') << '|';
    out << '\n';
    for (std::size_t i = 1; i < cells.size(); ++i) emit_row(cells[i]);
    return out.str();
}

std::string emit_csv(const std::vector<TrialRecord>& records)
{
    return emit_csv(summarize(records));
}

std::string emit_markdown(const std::vector<TrialRecord>& records)
{
    return emit_markdown(summarize(records));
}

std::string emit_trials_csv(const std::vector<TrialRecord>& records)
{
    std::ostringstream out;
    out << "method,tensor_id,n,trial,seed,outcome,success,lambda,accuracy,b_form,"
           "iterations,termination,x0_hash,wall_time\n";
    char hashbuf[24];
    for (const TrialRecord& r : records) {
        std::snprintf(hashbuf, sizeof hashbuf, "%016llx",
                      static_cast<unsigned long long>(r.x0_hash));
        out << r.method << ',' << r.tensor_id << ',' << r.n << ',' << r.trial_index << ','
            << r.seed << ',' << to_string(r.outcome) << ',' << (r.success ? 1 : 0) << ','
            << (r.lambda ? fmt_full(*r.lambda) : std::string()) << ','
            << (r.accuracy ? fmt_full(*r.accuracy) : std::string()) << ','
            << (r.b_form ? fmt_full(*r.b_form) : std::string()) << ',' << r.iterations << ','
            << r.termination << ',' << hashbuf << ',' << fmt_sci(r.wall_time) << '\n';
    }
    return out.str();
}

namespace {

MethodSpec variational_zid_f1(double shift, SuccessRule rule)
{
    VariationalMethod m;
    m.flavor = Flavor::F1;
    m.b_kind = BKind::IdentityPower;
    m.shift = shift;
    std::string name = "variational_f1_zid";
    if (shift != 0.0) name += "_t" + std::to_string(static_cast<int>(shift));
    return MethodSpec{name, m, rule};
}

MethodSpec sshopm_method(double alpha, int max_iters, SuccessRule rule)
{
    SshopmMethod m;
    m.config.alpha = alpha;
    m.config.tol = 1e-12;
    m.config.max_iters = max_iters;
    std::ostringstream name;
    name << "sshopm_alpha" << alpha;
    return MethodSpec{name.str(), m, rule};
}

MethodSpec alg_psd_method(BKind b, double t, SuccessRule rule)
{
    PsdStepMethod m;
    m.config.b_kind = b;
    m.config.t = t;
    std::ostringstream name;
    name << "psd_" << (b == BKind::UnitTensor ? "unit" : "zid") << "_t" << t;
    return MethodSpec{name.str(), m, rule};
}

ExperimentSpec base_spec(const std::string& generator, int n, int trials,
                         std::uint64_t seed, int jobs)
{
    ExperimentSpec spec;
    spec.generator = generator;
    spec.n = n;
    spec.trials = trials;
    spec.master_seed = seed;
    spec.jobs = jobs;
    return spec;
}

} // namespace

std::vector<std::string> suite_names()
{
    return {"table1", "table2", "table3", "table4", "table5", "table6", "table7"};
}

std::vector<ExperimentSpec> make_suite(const std::string& suite, int trials,
                                       std::uint64_t master_seed, int jobs)
{
    std::vector<ExperimentSpec> specs;
    auto row_seed = [&](std::size_t row) { return child_seed(master_seed, kSuiteRowStream + row); };

    if (suite == "table1" || suite == "table2") {
        const int t = trials > 0 ? trials : 100;
        const std::string gen = suite == "table1" ? "example1" : "example2";
        const int sizes[] = {10, 20, 30, 40, 50, 60};
        for (std::size_t r = 0; r < std::size(sizes); ++r) {
            ExperimentSpec spec = base_spec(gen, sizes[r], t, row_seed(r), jobs);
            spec.methods.push_back(sshopm_method(-2.0, 5000, SuccessRule::AccuracyBelow));
            spec.methods.push_back(variational_zid_f1(0.0, SuccessRule::AccuracyBelow));
            specs.push_back(std::move(spec));
        }
    } else if (suite == "table3") {
        const int t = trials > 0 ? trials : 10;
        ExperimentSpec spec = base_spec("example3", 25, t, row_seed(0), jobs);
        spec.methods.push_back(variational_zid_f1(0.0, SuccessRule::AccuracyBelow));
        for (double alpha : {0.0, -1.0, -2.0, -5.0, -10.0, -100.0, -1000.0})
            spec.methods.push_back(sshopm_method(alpha, 5000, SuccessRule::AccuracyBelow));
        specs.push_back(std::move(spec));
    } else if (suite == "table4" || suite == "table5") {
        const int t = trials > 0 ? trials : 100;
        ExperimentSpec spec = suite == "table4"
            ? base_spec("example4", 30, t, row_seed(0), jobs)
            : base_spec("example5", 3, t, row_seed(0), jobs);
        for (BKind b : {BKind::UnitTensor, BKind::IdentityPower})
            for (double shift : {0.0, -1.0})
                spec.methods.push_back(alg_psd_method(b, shift, SuccessRule::NegativeLambda));
        if (suite == "table4") {
            for (double alpha : {-2.0, -10.0, -50.0, -100.0, -500.0})
                spec.methods.push_back(sshopm_method(alpha, 10000, SuccessRule::NegativeLambda));
        } else {
            spec.methods.push_back(sshopm_method(-2.0, 10000, SuccessRule::NegativeLambda));
        }
        specs.push_back(std::move(spec));
    } else if (suite == "table6" || suite == "table7") {
        const int t = trials > 0 ? trials : 100;
        ExperimentSpec spec = suite == "table6"
            ? base_spec("example6", 30, t, row_seed(0), jobs)
            : base_spec("example7", 30, t, row_seed(0), jobs);
        const SuccessRule rule = suite == "table6" ? SuccessRule::ZeroLambda
                                                   : SuccessRule::ZeroPointReached;
        spec.methods.push_back(alg_psd_method(BKind::UnitTensor, -1.0, rule));
        spec.methods.push_back(alg_psd_method(BKind::IdentityPower, -1.0, rule));
        specs.push_back(std::move(spec));
    } else {
        std::string names;
        for (const std::string& s : suite_names()) names += (names.empty() ? "" : ", ") + s;
        throw std::invalid_argument("unknown suite '" + suite + "' (valid: " + names + ")");
    }
    return specs;
}

SuiteResult run_suite(const std::string& suite, int trials, std::uint64_t master_seed, int jobs)
{
    SuiteResult result;
    result.name = suite;
    for (const ExperimentSpec& spec : make_suite(suite, trials, master_seed, jobs)) {
        ExperimentResult exp = run_experiment(spec);
        result.all_records.insert(result.all_records.end(), exp.records.begin(), exp.records.end());
        result.experiments.push_back(std::move(exp));
    }
    result.all_rows = summarize(result.all_records);
    return result;
}

std::vector<std::string> write_suite_outputs(const SuiteResult& result, const std::string& out_dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string base = (fs::path(out_dir) / result.name).string();
    const std::vector<std::pair<std::string, std::string>> files = {
        {base + "_summary.csv", emit_csv(result.all_rows)},
        {base + "_summary.md", emit_markdown(result.all_rows)},
        {base + "_trials.csv", emit_trials_csv(result.all_records)},
    };
    std::vector<std::string> written;
    for (const auto& [path, text] : files) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error(path + ": cannot open for writing");
        out << text;
        if (!out.good()) throw std::runtime_error(path + ": write failed");
        written.push_back(path);
    }
    return written;
}

} // namespace teig
