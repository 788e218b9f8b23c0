#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "specseq/graded_algebra.hpp"

namespace specseq {

/* Parameters of a seeded random filtered complex used as job input: a
 * chain complex supported on [degree_lo, degree_hi] with at most max_dim
 * dimensions per degree, carrying a filtration of the given length whose
 * top layer is the whole complex. */
struct RandomFiltrationSpec {
    int degree_lo = -2;
    int degree_hi = 5;
    int max_dim = 5;
    int length = 4;
};

/* One fully described job: which command to run, over which field, on
 * which presentations, with which window parameters.  A JobSpec plus its
 * seed determines the output bytes exactly.
 *
 * Commands and their required inputs:
 *   pages      base (+ optional target), or a random filtration spec
 *   tor, ext   base (+ optional target / module)
 *   aq         base (+ optional target; target must be the residue field)
 *   five-term  base (+ optional target; target must be the residue field)
 *   check      none (self-contained property corpus driven by the seed)
 * A missing target means the residue field of the base. */
struct JobSpec {
    std::string command;
    Field field = Field::rationals();
    std::optional<GradedAlgebraPresentation> base;
    std::optional<GradedAlgebraPresentation> target;
    std::optional<GradedAlgebraPresentation> module;
    std::optional<RandomFiltrationSpec> filtration;
    int trunc_level = 4;  // simplicial levels carried by resolutions
    int degree_bound = 4; // internal degree window
    int powers = 3;       // verified powers of the augmentation ideal
    int pages = 3;        // highest displayed page for the pages command
    int coeff_rank = 1;   // rank of the trivial coefficient module
    bool cohomological = false;
    std::string format = "text"; // "text" or "json"
    std::uint64_t seed = 0;
    bool quick = false;  // check: reduced corpus, a few seconds total
    std::string inject;  // check: named deliberate perturbation, see run_job
};

/* Parse a JSON job description.  Throws parse_error with the byte offset
 * for malformed JSON, and parse_error naming the offending key for
 * well-formed JSON that violates the job contract (unknown keys, missing
 * command, non-positive parameters, inconsistent field tags, referenced
 * files that do not exist).  Algebra values may be given inline or as
 * "@path" references to JSON files. */
JobSpec parse_job(const std::string& text);

/* Outcome of one job.  json holds the canonical report; rendering to text
 * always starts from these bytes.  ok mirrors the report's overall
 * verdict; failure names the first failing property or identity when not
 * ok, so callers can surface it without re-parsing the report. */
struct JobResult {
    std::string json;
    bool ok = true;
    std::string failure;
};

/* Execute the job and produce the canonical JSON report.  Identical
 * JobSpec contents (including seed) produce byte-identical output; no
 * clocks, addresses or environment enter the report.  Every dimension in
 * the report sits next to the window in which it is certified exact.
 *
 * The check command accepts inject == "hom-sign": the second pass of the
 * double-dualization property is evaluated with the alternating sign
 * dropped, which makes that property fail deterministically and
 * exercises the failure-reporting path end to end. */
JobResult run_job(const JobSpec& job);

/* Render a JSON report produced by run_job as a fixed-width text page.
 * The JSON is the source of truth; this reads only the report bytes. */
std::string render_text(const std::string& json_report);

} // namespace specseq
