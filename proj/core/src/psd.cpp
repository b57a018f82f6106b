#include "teig/psd.hpp"

#include "teig/parallel.hpp"
#include "teig/rng.hpp"
#include "teig/variational.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace teig {

const char* to_string(PsdDecision d)
{
    switch (d) {
    case PsdDecision::PositiveDefinite: return "positive_definite";
    case PsdDecision::PositiveSemidefinite: return "positive_semidefinite";
    case PsdDecision::NotPsd: return "not_psd";
    case PsdDecision::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

const char* to_string(PsdTrialOutcome o)
{
    switch (o) {
    case PsdTrialOutcome::VotePositiveDefinite: return "vote_positive_definite";
    case PsdTrialOutcome::WitnessNegative: return "witness_negative";
    case PsdTrialOutcome::VoteZeroEigenvalue: return "vote_zero_eigenvalue";
    case PsdTrialOutcome::FoundPositiveEigenvalue: return "found_positive_eigenvalue";
    case PsdTrialOutcome::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

BOperator make_b(BKind kind, int order, int dim)
{
    switch (kind) {
    case BKind::UnitTensor: return BOperator::unit_tensor(order, dim);
    case BKind::IdentityPower: return BOperator::identity_power(order, dim);
    default:
        throw std::invalid_argument("psd check supports the unit_tensor and identity_power metrics only");
    }
}

void validate(const PsdConfig& cfg)
{
    if (!(cfg.t < 0.0))
        throw std::invalid_argument("psd check requires a negative shift t");
    if (!(0.0 < cfg.eta1 && cfg.eta1 < cfg.eta2))
        throw std::invalid_argument("psd check requires 0 < eta1 < eta2");
    if (cfg.trials < 1)
        throw std::invalid_argument("psd check requires at least one trial");
}

} // namespace

PsdTrial run_psd_trial(const std::shared_ptr<const SymmetricTensor>& a, const PsdConfig& cfg,
                       const Eigen::VectorXd& x0)
{
    const auto t_start = std::chrono::steady_clock::now();
    const double m = static_cast<double>(a->order());

    // The configured shift first, then the retry ladder, skipping repeats.
    std::vector<double> shifts{cfg.t};
    for (double s : cfg.retry_shifts) {
        bool seen = false;
        for (double prev : shifts) seen = seen || prev == s;
        if (!seen) shifts.push_back(s);
    }

    PsdTrial trial;
    int attempts = 0;
    for (double t : shifts) {
        ++attempts;
        trial.retries = attempts - 1;
        trial.shift_used = t;
        Objective obj(Flavor::F1, t, a, make_b(cfg.b_kind, a->order(), a->dim()));
        const SolveReport rep = minimize(obj, x0, cfg.solver);
        trial.iterations = rep.iterations;
        trial.termination = rep.termination;
        const double bf = obj.b().form(rep.x);
        trial.b_form = bf;

        if (bf < cfg.eta1) {
            trial.outcome = PsdTrialOutcome::VotePositiveDefinite;
            break;
        }
        if (bf > cfg.eta2) {
            const double s = rep.objective_value;
            if (s > 1e-12) continue; // not at a critical value; retry with the next shift
            const double s_cl = s > 0.0 ? 0.0 : s;
            const double lambda_obj = -std::sqrt(-2.0 * m * s_cl) - t;
            Eigenpair pair = recover_lambda(obj, rep.x, cfg.eta1);
            trial.lambda_obj = lambda_obj;
            trial.lambda_alg = pair.lambda;
            trial.pair = pair;
            if (lambda_obj < -cfg.lambda_zero_tol) {
                const bool valid = pair.lambda < -cfg.lambda_zero_tol
                    && pair.residual <= cfg.witness_residual_tol;
                if (!valid) continue; // witness does not check out; retry
                trial.outcome = PsdTrialOutcome::WitnessNegative;
            } else if (std::abs(lambda_obj) <= cfg.lambda_zero_tol) {
                trial.outcome = PsdTrialOutcome::VoteZeroEigenvalue;
            } else {
                trial.outcome = PsdTrialOutcome::FoundPositiveEigenvalue;
            }
            break;
        }
        // eta1 <= B x^m <= eta2: inconclusive attempt, retry with the next shift
    }

    trial.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return trial;
}

PsdVerdict psd_check(const SymmetricTensor& a, const PsdConfig& cfg)
{
    validate(cfg);
    if (!a.is_symmetric())
        throw std::invalid_argument("psd_check: tensor must carry a verified symmetry flag (weak symmetry is required for gradient validity)");

    // Non-owning alias: the tensor outlives this call by contract.
    const std::shared_ptr<const SymmetricTensor> shared(std::shared_ptr<const SymmetricTensor>{}, &a);

    std::vector<PsdTrial> trials(static_cast<std::size_t>(cfg.trials));
    parallel_for_index(cfg.trials, cfg.jobs, [&](int i) {
        Rng rng(child_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        const Eigen::VectorXd x0 = normalized_random_start(a.dim(), rng);
        trials[static_cast<std::size_t>(i)] = run_psd_trial(shared, cfg, x0);
    });

    // Aggregate in trial-index order; the first validated witness decides.
    PsdVerdict verdict;
    bool any_bf = false;
    std::optional<Eigenpair> zero_witness;
    int conclusive = 0;
    int pd_votes = 0;
    std::vector<PsdTrial> walked;
    walked.reserve(trials.size());
    for (const PsdTrial& trial : trials) {
        walked.push_back(trial);
        if (!any_bf) {
            verdict.b_form_min = verdict.b_form_max = trial.b_form;
            any_bf = true;
        } else {
            verdict.b_form_min = std::min(verdict.b_form_min, trial.b_form);
            verdict.b_form_max = std::max(verdict.b_form_max, trial.b_form);
        }
        switch (trial.outcome) {
        case PsdTrialOutcome::VotePositiveDefinite:
            ++verdict.counts.vote_positive_definite;
            ++conclusive;
            ++pd_votes;
            break;
        case PsdTrialOutcome::WitnessNegative:
            ++verdict.counts.witness_negative;
            ++conclusive;
            break;
        case PsdTrialOutcome::VoteZeroEigenvalue:
            ++verdict.counts.vote_zero_eigenvalue;
            ++conclusive;
            if (!zero_witness) zero_witness = trial.pair;
            break;
        case PsdTrialOutcome::FoundPositiveEigenvalue:
            ++verdict.counts.found_positive_eigenvalue;
            ++conclusive;
            break;
        case PsdTrialOutcome::Inconclusive:
            ++verdict.counts.inconclusive;
            break;
        }
        if (trial.outcome == PsdTrialOutcome::WitnessNegative) {
            verdict.decision = PsdDecision::NotPsd;
            verdict.witness = trial.pair;
            break;
        }
    }
    verdict.trials_run = static_cast<int>(walked.size());
    verdict.trials = std::move(walked);

    if (verdict.decision != PsdDecision::NotPsd) {
        if (verdict.counts.vote_zero_eigenvalue > 0) {
            verdict.decision = PsdDecision::PositiveSemidefinite;
            verdict.witness = zero_witness;
        } else if (conclusive > 0 && pd_votes == conclusive) {
            verdict.decision = PsdDecision::PositiveDefinite;
        } else if (verdict.counts.found_positive_eigenvalue > 0) {
            // Only nonnegative eigenvalues were found: semidefinite per the
            // decision rule, but without a zero-eigenvalue witness.
            verdict.decision = PsdDecision::PositiveSemidefinite;
        } else {
            verdict.decision = PsdDecision::Inconclusive;
        }
    }
    return verdict;
}

} // namespace teig
