#pragma once

#include "teig/bfgs.hpp"
#include "teig/eigenpair.hpp"
#include "teig/tensor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace teig {

struct PsdConfig {
    double t = -1.0;      // negative shift; required for the definite/semidefinite split
    double eta1 = 1e-10;  // below: trivial critical point, positive definite vote
    double eta2 = 1e-4;   // above: genuine eigenvector
    BKind b_kind = BKind::UnitTensor; // UnitTensor or IdentityPower
    int trials = 100;
    std::vector<double> retry_shifts = {-1.0, -2.0, -5.0}; // tried when a trial lands in [eta1, eta2]
    double lambda_zero_tol = 1e-8;       // |lambda| at or below counts as zero
    double witness_residual_tol = 1e-6;  // a negative-eigenvalue witness must check out this well
    SolverConfig solver;
    std::uint64_t seed = 0;
    int jobs = 0; // 0 = hardware concurrency
};

enum class PsdDecision { PositiveDefinite, PositiveSemidefinite, NotPsd, Inconclusive };

const char* to_string(PsdDecision d);

enum class PsdTrialOutcome {
    VotePositiveDefinite,   // B x^m < eta1
    WitnessNegative,        // validated eigenpair with lambda < -lambda_zero_tol
    VoteZeroEigenvalue,     // |lambda| <= lambda_zero_tol
    FoundPositiveEigenvalue,// lambda > lambda_zero_tol (proves nothing by itself)
    Inconclusive,           // every shift landed inside [eta1, eta2] or malformed
};

const char* to_string(PsdTrialOutcome o);

struct PsdTrial {
    PsdTrialOutcome outcome = PsdTrialOutcome::Inconclusive;
    double b_form = 0.0;     // B x^m at the final attempt
    double lambda_obj = 0.0; // -sqrt(-2m s) - t route (valid for eigenpair outcomes)
    double lambda_alg = 0.0; // -B x^m - t route
    double shift_used = 0.0;
    int retries = 0;
    int iterations = 0;
    Termination termination = Termination::MaxIter;
    std::optional<Eigenpair> pair;
    double wall_time = 0.0;
};

struct PsdTrialCounts {
    int vote_positive_definite = 0;
    int witness_negative = 0;
    int vote_zero_eigenvalue = 0;
    int found_positive_eigenvalue = 0;
    int inconclusive = 0;
};

struct PsdVerdict {
    PsdDecision decision = PsdDecision::Inconclusive;
    /// NotPsd: validated negative eigenpair; PositiveSemidefinite: the
    /// zero-eigenvalue pair. Definite verdicts carry no certificate.
    std::optional<Eigenpair> witness;
    int trials_run = 0;
    PsdTrialCounts counts;
    double b_form_min = 0.0;
    double b_form_max = 0.0;
    std::vector<PsdTrial> trials; // in trial-index order, one per trial run
};

/// Single positive-semidefiniteness trial: minimize the shifted objective
/// from x0, classify against [eta1, eta2], retry with the configured shifts
/// while inconclusive. Used by psd_check and by the experiment harness.
PsdTrial run_psd_trial(const std::shared_ptr<const SymmetricTensor>& a, const PsdConfig& cfg,
                       const Eigen::VectorXd& x0);

/// Multi-start positive semidefiniteness check. Trials draw starts from
/// per-trial streams split off cfg.seed, so the verdict is independent of
/// scheduling; the first validated negative-eigenvalue witness (in trial
/// index order) short-circuits the decision to NotPsd. Otherwise: any
/// zero-eigenvalue vote gives PositiveSemidefinite (with the zero pair as
/// witness); all-conclusive zero-basin endings give PositiveDefinite;
/// trials that only found nonnegative eigenvalues give PositiveSemidefinite
/// without a witness. Definite and semidefinite verdicts aggregate votes
/// and are not certificates. Requires a tensor with the symmetry flag set.
PsdVerdict psd_check(const SymmetricTensor& a, const PsdConfig& cfg);

} // namespace teig
