#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "specseq/errors.hpp"
#include "specseq/json_io.hpp"

namespace {

using ojson = nlohmann::ordered_json;

std::string read_stream(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/* Accept inline JSON, an "@file" reference (resolved later by the job
 * parser), or the literal "residue-field" shortcut for targets. */
ojson algebra_flag_value(const std::string& text, const std::string& flag) {
    if (text == "residue-field" || (!text.empty() && text[0] == '@'))
        return text;
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        throw specseq::parse_error(flag + ": expected inline JSON, \"@file\" or a shortcut");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectral sequences of filtered complexes and simplicial resolutions"};
    app.require_subcommand(1);

    std::string job_path, field_tag, format, base_str, target_str, module_str, inject;
    int trunc = -1, degree = -1, powers = -1, pages = -1, rank = -1;
    long long seed = -1;
    bool cohomological = false, quick = false;

    auto add_job_positional = [&](CLI::App* sub) {
        sub->add_option("job", job_path, "job description: a JSON file, or - for stdin");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", field_tag, "coefficient field: Q or F<p>");
        sub->add_option("--trunc-level", trunc, "simplicial levels carried by resolutions");
        sub->add_option("--degree-bound", degree, "internal degree window");
        sub->add_option("--powers", powers, "verified powers of the augmentation ideal");
        sub->add_option("--coeff-rank", rank, "rank of the trivial coefficient module");
        sub->add_option("--seed", seed, "seed for randomized inputs");
        sub->add_option("--format", format, "output format: text or json");
    };
    auto add_algebras = [&](CLI::App* sub, bool with_module) {
        sub->add_option("--base", base_str, "base algebra: inline JSON or @file");
        sub->add_option("--target", target_str,
                        "target algebra: inline JSON, @file or residue-field");
        if (with_module)
            sub->add_option("--module", module_str, "module algebra: inline JSON or @file");
    };

    CLI::App* sub_pages =
        app.add_subcommand("pages", "page tables and convergence of a spectral sequence");
    add_job_positional(sub_pages);
    add_common(sub_pages);
    add_algebras(sub_pages, false);
    sub_pages->add_option("--pages", pages, "highest displayed page");
    sub_pages->add_flag("--cohomological", cohomological,
                        "run the dual filtration instead of the homological one");

    CLI::App* sub_tor = app.add_subcommand("tor", "derived tensor table from a free resolution");
    add_job_positional(sub_tor);
    add_common(sub_tor);
    add_algebras(sub_tor, true);

    CLI::App* sub_ext = app.add_subcommand("ext", "derived hom table from a free resolution");
    add_job_positional(sub_ext);
    add_common(sub_ext);
    add_algebras(sub_ext, true);

    CLI::App* sub_aq = app.add_subcommand("aq", "cotangent homotopy and cohomotopy tables");
    add_job_positional(sub_aq);
    add_common(sub_aq);
    add_algebras(sub_aq, false);

    CLI::App* sub_five =
        app.add_subcommand("five-term", "low-degree exact sequences with reference dims");
    add_job_positional(sub_five);
    add_common(sub_five);
    add_algebras(sub_five, false);

    CLI::App* sub_check = app.add_subcommand("check", "seeded invariant corpus; exit 1 on failure");
    add_job_positional(sub_check);
    add_common(sub_check);
    sub_check->add_flag("--quick", quick, "small corpus, a few seconds total");
    sub_check->add_option("--inject", inject,
                          "deliberately perturb a convention to exercise failure reporting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // bad flags are an input problem
    }

    if (const char* tv = std::getenv("SPECSEQ_THREADS")) {
        // Reserved knob: results never depend on it, but reject garbage.
        char* end = nullptr;
        long v = std::strtol(tv, &end, 10);
        if (end == tv || *end != '\0' || v < 1) {
            std::cerr << "SPECSEQ_THREADS must be a positive integer\n";
            return 2;
        }
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();

    try {
        ojson merged = ojson::object();
        if (!job_path.empty()) {
            std::string text;
            if (job_path == "-") {
                text = read_stream(std::cin);
            } else {
                std::ifstream in(job_path);
                if (!in)
                    throw specseq::parse_error("cannot read job file " + job_path);
                text = read_stream(in);
            }
            try {
                merged = ojson::parse(text);
            } catch (const nlohmann::json::parse_error& e) {
                throw specseq::parse_error("malformed JSON at byte " + std::to_string(e.byte));
            }
            if (!merged.is_object())
                throw specseq::parse_error("job must be a JSON object");
        }
        auto passed = [&](const char* name) {
            const CLI::Option* o = sub->get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (merged.contains("command") && merged["command"] != cmd)
            throw specseq::parse_error("job command " + merged["command"].dump() +
                                       " disagrees with subcommand '" + cmd + "'");
        merged["command"] = cmd;
        if (passed("--field"))
            merged["field"] = field_tag;
        if (passed("--base"))
            merged["base"] = algebra_flag_value(base_str, "--base");
        if (passed("--target"))
            merged["target"] = algebra_flag_value(target_str, "--target");
        if (passed("--module"))
            merged["module"] = algebra_flag_value(module_str, "--module");
        if (passed("--trunc-level"))
            merged["trunc_level"] = trunc;
        if (passed("--degree-bound"))
            merged["degree_bound"] = degree;
        if (passed("--powers"))
            merged["powers"] = powers;
        if (passed("--coeff-rank"))
            merged["coeff_rank"] = rank;
        if (passed("--pages"))
            merged["pages"] = pages;
        if (passed("--seed"))
            merged["seed"] = seed;
        if (passed("--format"))
            merged["format"] = format;
        if (passed("--cohomological"))
            merged["cohomological"] = true;
        if (passed("--quick"))
            merged["quick"] = true;
        if (passed("--inject"))
            merged["inject"] = inject;

        specseq::JobSpec job = specseq::parse_job(merged.dump());
        specseq::JobResult res = specseq::run_job(job);
        if (job.format == "json")
            std::cout << res.json;
        else
            std::cout << specseq::render_text(res.json);

        if (!res.ok) {
            if (cmd == "check") {
                std::cerr << "check failed: property '" << res.failure << "', seed " << job.seed
                          << "\n";
                return 1;
            }
            std::cerr << "invariant violation: " << res.failure << "\n";
            return 4;
        }
        return 0;
    } catch (const specseq::parse_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const specseq::window_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const specseq::invariant_error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
