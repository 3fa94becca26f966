#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pickands::studies {

// One statistic, one row; the fixed CSV schema
// study,alpha,delta,T,reps,seed,stat,value,std_err.
// Columns that do not apply to a row (horizon of a closed-form evaluation,
// replication count of an exact value) are 0. For closed-form rows std_err
// carries the certified truncation bound instead of a sampling error.
struct StudyRow {
    std::string study;
    double alpha;
    double delta;
    double T;
    long reps;
    std::uint64_t seed;
    std::string stat;
    double value;
    double std_err;
};

// Band or property verdict evaluated by a study; the CLI exit code is 0 iff
// every check of the run passed.
struct StudyCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct StudyReport {
    std::string study;
    std::vector<StudyRow> rows;
    std::vector<StudyCheck> checks;

    bool all_passed() const;
};

// Shared CLI options; empty lists select per-study defaults.
struct StudyOptions {
    double alpha = 1.0;
    std::vector<double> deltas;
    std::vector<double> horizons; // --T; doubles as the S-ladder for variance-blowup
    long reps = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
};

// h1_delta/h2_delta over a delta ladder (default {0.05 k : k = 1..60});
// checks strict monotone decrease and certified bounds <= 1e-12.
StudyReport study_closed_form(const StudyOptions& opt);

// xi campaigns over the delta x T product (defaults delta = 0.5, T = 4);
// for alpha in {1, 2} checks the mean against the closed form at 3 std_err.
StudyReport study_estimate(const StudyOptions& opt);

// Discretization rate. alpha in {1, 2}: exact closed-form ratio ladder with
// band and monotone-approach checks. Other alpha: paired common-random-number
// campaigns at (delta, delta/2) per rung and a fitted log-log slope with band
// alpha/2 +- 0.1.
StudyReport study_discretization(const StudyOptions& opt);

// Truncation error across a T ladder at fixed (alpha, delta), all horizons
// evaluated on shared paths; reports |mean(T) - mean(T_max)| with combined
// std_err and checks the penultimate difference and monotone decay.
StudyReport study_truncation(const StudyOptions& opt);

// Definitional-estimator variance along an S ladder (shared prefix paths)
// against the flat variance of xi(T) on the same horizons.
StudyReport study_variance_blowup(const StudyOptions& opt);

// Exceedance probabilities of xi at thresholds {2,3,4,6,12} with Wilson
// bounds; checks monotonicity, the hard bound xi <= 1/delta, and a negative
// slope of log p against log^2 x.
StudyReport study_tail(const StudyOptions& opt);

// CSV per the schema above, %.17g floats, LF endings.
void write_csv(const StudyReport& report, std::ostream& os);
// JSON object with the same numeric fields plus the check verdicts.
void write_json(const StudyReport& report, std::ostream& os);

} // namespace pickands::studies
