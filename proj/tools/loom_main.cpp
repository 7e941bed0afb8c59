#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "loom/cohomology.hpp"
#include "loom/error.hpp"
#include "loom/extension.hpp"
#include "loom/grassmann.hpp"
#include "loom/json_io.hpp"
#include "loom/sampling.hpp"
#include "loom/selftest.hpp"
#include "loom/verlinde.hpp"

namespace {

using loom::Json;

// --input takes a file path, "-" for stdin, or inline JSON
Json read_input(const std::string& spec) {
    if (spec.empty()) throw loom::invalid_input_error("an --input document is required");
    std::string text;
    if (spec == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else if (spec.front() == '{') {
        text = spec;
    } else {
        std::ifstream in(spec);
        if (!in) throw loom::invalid_input_error("cannot open input file: " + spec);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw loom::invalid_input_error(std::string("bad JSON input: ") + e.what());
    }
}

void emit(const Json& doc) { std::cout << doc.dump() << "\n"; }

Json with_version(Json doc) {
    Json out;
    out["schema_version"] = loom::kSchemaVersion;
    for (auto& [k, v] : doc.items()) out[k] = v;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"loom: exact loop-group, lattice and Verlinde computations"};
    app.require_subcommand(1);

    long prec_target = 24;
    app.add_option("--prec", prec_target, "truncation exponent for series computations")
        ->capture_default_str();

    std::string input;
    unsigned long seed = 1;
    long opt_rank = 2, opt_level = 0, opt_genus = 0, opt_trials = 50, opt_degree = 0, opt_depth = 0;
    std::string backend_name = "interval";
    std::string format = "json";
    bool with_terms = false;
    long table_rmax = 4, table_cmax = 4, table_gmax = 4;

    auto* verlinde_cmd = app.add_subcommand("verlinde", "Verlinde dimension for one (r, c, g)");
    verlinde_cmd->add_option("--rank", opt_rank, "rank r >= 2")->required();
    verlinde_cmd->add_option("--level", opt_level, "level c >= 0")->required();
    verlinde_cmd->add_option("--genus", opt_genus, "genus g >= 0")->required();
    verlinde_cmd->add_option("--backend", backend_name, "interval or exact")->capture_default_str();
    verlinde_cmd->add_flag("--terms", with_terms, "include the per-subset terms");

    auto* table_cmd = app.add_subcommand("verlinde-table", "Verlinde dimensions over a range");
    table_cmd->add_option("--rmax", table_rmax, "largest rank")->capture_default_str();
    table_cmd->add_option("--cmax", table_cmax, "largest level")->capture_default_str();
    table_cmd->add_option("--gmax", table_gmax, "largest genus")->capture_default_str();
    table_cmd->add_option("--format", format, "json or tsv")->capture_default_str();

    auto* dvector_cmd = app.add_subcommand("dvector", "invariant factors of the lattice of a matrix");
    dvector_cmd->add_option("--input", input, "LaurentMatrix JSON (path, '-', or inline)")->required();

    auto* birkhoff_cmd = app.add_subcommand("birkhoff", "Birkhoff factorization gamma- z^d gamma+");
    birkhoff_cmd->add_option("--input", input, "LaurentMatrix JSON")->required();

    auto* pole_cmd = app.add_subcommand("pole-bound", "least N with gamma, gamma^-1 of pole order <= N");
    pole_cmd->add_option("--input", input, "LaurentMatrix JSON")->required();

    auto* tate_cmd = app.add_subcommand("tate-check", "Tate cocycle vs residue on random pairs");
    tate_cmd->add_option("--seed", seed, "PRNG seed (std::mt19937_64)")->capture_default_str();
    tate_cmd->add_option("--trials", opt_trials, "number of random pairs")->capture_default_str();
    tate_cmd->add_option("--rank", opt_rank, "matrix rank")->capture_default_str();

    auto* adjoint_cmd = app.add_subcommand("adjoint", "adjoint action on a central element");
    adjoint_cmd->add_option("--input", input, "JSON {gamma, alpha, s}")->required();

    auto* tau_cmd = app.add_subcommand("tau", "tau function with the canonical Birkhoff section");
    tau_cmd->add_option("--input", input, "LaurentMatrix JSON")->required();
    tau_cmd->add_option("--depth", opt_depth, "window depth (0 = automatic)")->capture_default_str();

    auto* coh_cmd = app.add_subcommand("cohomology", "h0/h1 of the associated bundle on the line");
    coh_cmd->add_option("--input", input, "LaurentMatrix JSON")->required();

    auto* theta_cmd = app.add_subcommand("theta-check", "tau vanishing against the -p twist sections");
    theta_cmd->add_option("--input", input, "LaurentMatrix JSON")->required();

    auto* smith_cmd = app.add_subcommand("smith-infinity", "invariant factors of A(t) at infinity");
    smith_cmd->add_option("--input", input, "polynomial matrix JSON (exponents are t-degrees)")
        ->required();
    smith_cmd->add_option("--degree", opt_degree, "degree bound N")->required();

    auto* self_cmd = app.add_subcommand("selftest", "run every module's invariant suite");
    self_cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    loom::PrecisionContext ctx(prec_target, 4 * prec_target);
    try {
        if (verlinde_cmd->parsed()) {
            loom::VerlindeQuery q(opt_rank, opt_level, opt_genus);
            loom::VerlindeBackend backend;
            if (backend_name == "interval")
                backend = loom::VerlindeBackend::interval;
            else if (backend_name == "exact")
                backend = loom::VerlindeBackend::exact;
            else
                throw loom::invalid_input_error("backend must be interval or exact");
            Json out;
            out["r"] = opt_rank;
            out["c"] = opt_level;
            out["g"] = opt_genus;
            out["dimension"] = loom::verlinde_number(q, backend).get_str();
            out["backend"] = backend_name;
            if (with_terms) {
                Json terms = Json::array();
                for (const auto& [label, iv] : loom::verlinde_terms(q)) {
                    Json t;
                    t["subset"] = label.elements;
                    t["lo"] = iv.lo_double();
                    t["hi"] = iv.hi_double();
                    terms.push_back(t);
                }
                out["terms"] = terms;
            }
            emit(with_version(out));
        } else if (table_cmd->parsed()) {
            if (format == "tsv") {
                std::cout << "r\tc\tg\tdimension\n";
                for (long r = 2; r <= table_rmax; ++r)
                    for (long c = 0; c <= table_cmax; ++c)
                        for (long g = 0; g <= table_gmax; ++g)
                            std::cout << r << "\t" << c << "\t" << g << "\t"
                                      << loom::verlinde_number(loom::VerlindeQuery(r, c, g),
                                                               loom::VerlindeBackend::interval)
                                             .get_str()
                                      << "\n";
            } else if (format == "json") {
                Json rows = Json::array();
                for (long r = 2; r <= table_rmax; ++r)
                    for (long c = 0; c <= table_cmax; ++c)
                        for (long g = 0; g <= table_gmax; ++g) {
                            Json row;
                            row["r"] = r;
                            row["c"] = c;
                            row["g"] = g;
                            row["dimension"] = loom::verlinde_number(loom::VerlindeQuery(r, c, g),
                                                                     loom::VerlindeBackend::interval)
                                                   .get_str();
                            rows.push_back(row);
                        }
                Json out;
                out["table"] = rows;
                emit(with_version(out));
            } else {
                throw loom::invalid_input_error("format must be json or tsv");
            }
        } else if (dvector_cmd->parsed()) {
            loom::LaurentMatrix m = loom::laurent_matrix_from_json(read_input(input));
            loom::DVector d = loom::lattice_dvector(loom::Lattice(m), ctx);
            emit(with_version(loom::dvector_to_json(d)));
        } else if (birkhoff_cmd->parsed()) {
            loom::LaurentMatrix m = loom::laurent_matrix_from_json(read_input(input));
            emit(with_version(loom::birkhoff_to_json(loom::birkhoff_full(m, ctx))));
        } else if (pole_cmd->parsed()) {
            loom::LaurentMatrix m = loom::laurent_matrix_from_json(read_input(input));
            Json out;
            out["pole_bound"] = loom::pole_bound(m, ctx);
            emit(with_version(out));
        } else if (tate_cmd->parsed()) {
            std::mt19937_64 rng(seed);
            bool all_equal = true;
            for (long t = 0; t < opt_trials && all_equal; ++t) {
                loom::LaurentMatrix a = loom::sample_traceless(rng, opt_rank, 4, 4);
                loom::LaurentMatrix b = loom::sample_traceless(rng, opt_rank, 4, 4);
                loom::WindowSpec w(opt_rank * 8 + 2, opt_rank);
                all_equal = loom::tate_cocycle(a, b, w) == loom::residue_pairing(a, b);
            }
            Json out;
            out["seed"] = seed;
            out["trials"] = opt_trials;
            out["all_equal"] = all_equal;
            emit(with_version(out));
            return all_equal ? 0 : 1;
        } else if (adjoint_cmd->parsed()) {
            Json doc = read_input(input);
            if (!doc.contains("gamma")) throw loom::invalid_input_error("adjoint needs a gamma field");
            loom::LaurentMatrix gamma = loom::laurent_matrix_from_json(doc.at("gamma"));
            loom::CentralElement x = loom::central_element_from_json(doc);
            emit(with_version(loom::central_element_to_json(loom::adjoint_action(gamma, x, ctx))));
        } else if (tau_cmd->parsed()) {
            loom::LaurentMatrix m = loom::laurent_matrix_from_json(read_input(input));
            long depth = opt_depth > 0 ? opt_depth : std::max<long>(4, 2 * m.rank());
            Json out;
            out["tau"] = loom::rational_to_string(loom::tau(m, loom::WindowSpec(depth, m.rank()), ctx));
            emit(with_version(out));
        } else if (coh_cmd->parsed()) {
            loom::LaurentMatrix m = loom::laurent_matrix_from_json(read_input(input));
            emit(with_version(loom::cohomology_to_json(loom::cohomology_p1(m, ctx))));
        } else if (theta_cmd->parsed()) {
            loom::LaurentMatrix m = loom::laurent_matrix_from_json(read_input(input));
            Json out;
            out["theta_tau_consistent"] = loom::theta_tau_check(m, ctx);
            emit(with_version(out));
        } else if (smith_cmd->parsed()) {
            loom::LaurentMatrix m = loom::laurent_matrix_from_json(read_input(input));
            loom::DVector d = loom::infinity_invariant_factors(m, opt_degree);
            emit(with_version(loom::dvector_to_json(d)));
        } else if (self_cmd->parsed()) {
            int failures = loom::run_selftest(seed, std::cerr);
            Json out;
            out["seed"] = seed;
            out["failures"] = failures;
            emit(with_version(out));
            return failures == 0 ? 0 : 1;
        }
    } catch (const loom::error& e) {
        Json err;
        err["error"] = Json{{"code", static_cast<int>(e.code())}, {"message", e.what()}};
        emit(with_version(err));
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        Json err;
        err["error"] = Json{{"code", 2}, {"message", e.what()}};
        emit(with_version(err));
        return 2;
    }
    return 0;
}
