#pragma once

#include <stdexcept>
#include <string>

namespace specseq {

/* Input could not be parsed (malformed JSON, bad polynomial syntax, ...).
 * CLI maps this to exit code 2. */
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

/* A requested value lies outside the window in which the computation is
 * certified exact (simplicial truncation level or internal degree bound).
 * The engine refuses to guess.  CLI maps this to exit code 3. */
struct window_error : std::runtime_error {
    explicit window_error(const std::string& msg) : std::runtime_error("window error: " + msg) {}
};

/* A structural invariant failed: d∘d != 0, a map does not respect a
 * filtration, mismatched fields, a cross-check between two independent
 * routes disagreed.  Always a bug or corrupt input, never a tolerance
 * issue.  CLI maps this to exit code 4. */
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error("invariant error: " + msg) {}
};

} // namespace specseq
