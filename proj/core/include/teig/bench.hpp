#pragma once

#include "teig/bfgs.hpp"
#include "teig/psd.hpp"
#include "teig/sshopm.hpp"
#include "teig/variational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace teig {

// Multi-trial experiment runner: N seeded trials per method on one tensor,
// with every method receiving the same start vector per trial index, plus
// aggregation into CSV / Markdown tables.

struct VariationalMethod {
    Flavor flavor = Flavor::F1;
    BKind b_kind = BKind::IdentityPower;
    double shift = 0.0;
    SolverConfig solver;
    double eta1 = 1e-10;
    double eta2 = 1e-4;
};

struct SshopmMethod {
    SshopmConfig config;
};

/// One shifted-minimization positive-semidefiniteness trial per experiment
/// trial (the config's own trial count is ignored here).
struct PsdStepMethod {
    PsdConfig config;
};

enum class SuccessRule {
    AccuracyBelow,    // found an eigenpair with accuracy <= accuracy_tol
    NegativeLambda,   // reported eigenvalue < -lambda_zero_tol
    ZeroLambda,       // found an eigenpair with |lambda| <= lambda_zero_tol
    ZeroPointReached, // ended at the trivial critical point
};

struct MethodSpec {
    std::string name;
    std::variant<VariationalMethod, SshopmMethod, PsdStepMethod> method;
    SuccessRule success_rule = SuccessRule::AccuracyBelow;
};

enum class TrialOutcome { FoundEigenpair, ZeroPoint, Diverged, MaxIterReached };

const char* to_string(TrialOutcome o);

struct TrialRecord {
    std::string method;
    std::string tensor_id;
    int n = 0;
    int trial_index = 0;
    std::uint64_t seed = 0;
    TrialOutcome outcome = TrialOutcome::Diverged;
    /// Final eigenvalue estimate whenever the method reported one (also for
    /// iteration-capped runs, which still carry their last estimate).
    std::optional<double> lambda;
    /// Residual accuracy; present iff outcome == FoundEigenpair.
    std::optional<double> accuracy;
    double wall_time = 0.0;
    int iterations = 0;
    std::optional<double> b_form;
    std::uint64_t x0_hash = 0;
    std::string termination;
    bool success = false;
};

struct ExperimentSpec {
    std::string generator; // example1 .. example7
    int n = 0;
    int trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<MethodSpec> methods;
    double accuracy_tol = 1e-4;    // AccuracyBelow threshold
    double lambda_zero_tol = 1e-8; // zero / negative eigenvalue threshold
    int jobs = 0;
};

struct SummaryRow {
    std::string method;
    std::string tensor_id;
    int n = 0;
    int trials = 0;
    double success_rate = 0.0; // percent
    std::optional<double> acc_min, acc_max, acc_mean;
    double time_min = 0.0, time_max = 0.0, time_mean = 0.0;
    double iters_mean = 0.0;
};

struct ExperimentResult {
    std::string tensor_id;
    std::vector<TrialRecord> records; // method-major, trial-index order
    std::vector<SummaryRow> summary;  // one row per method
};

/// Runs the experiment. Trial i draws its start from a child stream of
/// (master_seed, i), identical across methods; the tensor itself comes from
/// a separate child stream. Unknown generator names fail before any trial
/// runs. Trials fan out over `jobs` threads; outputs are schedule
/// independent.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Groups records by (method, tensor) into summary rows, sorted by method
/// then tensor.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

std::string emit_csv(const std::vector<SummaryRow>& rows);
std::string emit_markdown(const std::vector<SummaryRow>& rows);
/// emit_table: aggregate + render in one step.
std::string emit_csv(const std::vector<TrialRecord>& records);
std::string emit_markdown(const std::vector<TrialRecord>& records);
/// Per-trial detail (one line per trial; includes eigenvalue estimates, so a
/// scatter of found eigenvalues can be read straight off the file).
std::string emit_trials_csv(const std::vector<TrialRecord>& records);

// Canned experiment suites reproducing the published protocol at the
// published sizes (table1 .. table7). `trials` 0 means each suite's default
// count (100, except 10 for table3).

std::vector<std::string> suite_names();
std::vector<ExperimentSpec> make_suite(const std::string& suite, int trials,
                                       std::uint64_t master_seed, int jobs);

struct SuiteResult {
    std::string name;
    std::vector<ExperimentResult> experiments;
    std::vector<TrialRecord> all_records;
    std::vector<SummaryRow> all_rows;
};

SuiteResult run_suite(const std::string& suite, int trials, std::uint64_t master_seed, int jobs);

/// Writes <suite>_summary.csv, <suite>_summary.md and <suite>_trials.csv
/// under out_dir (created if missing). Returns the paths written.
std::vector<std::string> write_suite_outputs(const SuiteResult& result, const std::string& out_dir);

} // namespace teig
