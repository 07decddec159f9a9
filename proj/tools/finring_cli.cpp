// finring command-line tool: evaluate instance scripts, decide ring
// properties, verify transfer laws, and fuzz them for disagreements.
//
// Exit codes:
//   0  all checks pass / all verdicts agree
//   1  a property check came out false (a legitimate mathematical outcome)
//   2  a transfer-law disagreement or internal cross-check failure (engine bug)
//   3  script parse error (syntax, undefined name, type mismatch)
//   4  validation error (invalid datum, bad descriptor, size caps)

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finring/ideal.hpp"
#include "finring/properties.hpp"
#include "finring/report.hpp"
#include "finring/script.hpp"
#include "finring/version.hpp"

namespace {

using namespace finring;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFalse = 1;
constexpr int kExitDisagreement = 2;
constexpr int kExitParseError = 3;
constexpr int kExitValidation = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open script file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string now_iso8601() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

struct GlobalFlags {
    std::optional<std::size_t> max_ring_size;
    std::optional<std::size_t> max_ideal_enum;
    std::string format = "text";
    std::string log_path;

    ParseConfig parse_config() const {
        ParseConfig cfg;
        cfg.caps = Caps::from_env();
        if (max_ring_size) {
            cfg.caps.max_ring_size = *max_ring_size;
            cfg.ring_cap_locked = true;
        }
        if (max_ideal_enum) {
            cfg.caps.max_ideal_enum = *max_ideal_enum;
            cfg.enum_cap_locked = true;
        }
        return cfg;
    }
};

const FiniteRing& ring_by_name(const InstanceScript& script, const std::string& name) {
    auto it = script.rings.find(name);
    if (it == script.rings.end())
        throw ValidationError("script does not define a ring named '" + name + "'");
    return it->second;
}

const BiAmalgDatum& datum_by_name(const InstanceScript& script, const std::string& name) {
    auto it = script.data.find(name);
    if (it == script.data.end())
        throw ValidationError("script does not define a datum named '" + name + "'");
    return it->second;
}

void maybe_log(const GlobalFlags& flags, const std::string& summary, std::uint64_t seed,
               const std::vector<TheoremVerdict>& verdicts) {
    if (flags.log_path.empty()) return;
    append_run_log(flags.log_path, summary, seed, verdicts, std::string(kVersion),
                   now_iso8601());
}

int run_check(const GlobalFlags& flags, const std::string& file, const std::string& property,
              const std::string& name) {
    InstanceScript script = parse_script(read_file(file), flags.parse_config());
    const FiniteRing& ring = ring_by_name(script, name);
    const Caps& caps = script.effective_caps;
    PropertyReport rep;
    if (property == "chained")
        rep = is_chained(ring, caps);
    else if (property == "arithmetical")
        rep = is_arithmetical(ring, caps);
    else if (property == "reduced")
        rep = is_reduced(ring);
    else if (property == "wdim-le-1")
        rep = wdim_le_1(ring, caps);
    else if (property == "semihereditary")
        rep = is_semihereditary_finite(ring, caps);
    else if (property == "coherent")
        rep = is_coherent_finite(ring);
    else if (property == "von-neumann-regular")
        rep = von_neumann_regular(ring);
    else
        throw ValidationError(
            "unknown property '" + property +
            "' (expected chained, arithmetical, reduced, wdim-le-1, semihereditary, coherent "
            "or von-neumann-regular)");
    std::cout << "check " << property << " " << name << ": " << (rep.holds ? "PASS" : "FAIL")
              << "\n";
    std::cout << "  path: " << rep.path << "\n";
    if (!rep.witness.empty()) std::cout << "  witness: " << rep.witness << "\n";
    return rep.holds ? kExitOk : kExitPropertyFalse;
}

int run_verify(const GlobalFlags& flags, const std::string& theorem, const std::string& file,
               const std::string& datum_name) {
    InstanceScript script = parse_script(read_file(file), flags.parse_config());
    const BiAmalgDatum& datum = datum_by_name(script, datum_name);
    HarnessOptions opt;
    opt.caps = script.effective_caps;
    opt.seed = script.seed.value_or(0);
    TheoremVerdict verdict = evaluate_theorem(theorem, datum, opt);
    std::vector<TheoremVerdict> verdicts{verdict};
    std::cout << format_report(verdicts, parse_format(flags.format));
    maybe_log(flags, "verify " + theorem + " " + file + " " + datum_name, opt.seed, verdicts);
    return verdict.ok() ? kExitOk : kExitDisagreement;
}

int run_fuzz(const GlobalFlags& flags, std::uint64_t seed, std::size_t count,
             const std::string& theorem, bool inject_rhs_bug) {
    ParseConfig cfg = flags.parse_config();
    HarnessOptions opt;
    opt.caps = cfg.caps;
    opt.seed = seed;
    opt.rhs_over_all_maximals = inject_rhs_bug;

    InstanceGenConfig gen;
    gen.seed = seed;
    gen.count = count;
    gen.caps = cfg.caps;

    std::vector<BiAmalgDatum> data = generate_instances(gen);
    std::vector<TheoremVerdict> verdicts;
    verdicts.reserve(data.size());
    std::optional<std::size_t> first_bad;
    for (const BiAmalgDatum& d : data) {
        verdicts.push_back(evaluate_theorem(theorem, d, opt));
        if (!verdicts.back().ok() && !first_bad) first_bad = verdicts.size() - 1;
    }
    std::cout << format_report(verdicts, parse_format(flags.format));

    std::size_t disagreements = 0;
    for (const TheoremVerdict& v : verdicts)
        if (!v.ok()) ++disagreements;

    if (first_bad) {
        auto [shrunk, steps] =
            shrink_disagreement(theorem, data[*first_bad], opt);
        TheoremVerdict sv = evaluate_theorem(theorem, shrunk, opt);
        std::cout << "counterexample: " << verdicts[*first_bad].fingerprint << " shrunk to "
                  << sv.fingerprint << " in " << steps << " step(s)\n";
        std::cout << "shrunk instance: A=" << shrunk.A.key() << " |J|=" << shrunk.J.size()
                  << " |J'|=" << shrunk.Jp.size() << "\n";
        verdicts.push_back(sv);
    }
    std::cout << "fuzz " << theorem << ": " << count << " instance(s), " << disagreements
              << " disagreement(s)\n";
    maybe_log(flags,
              "fuzz --seed " + std::to_string(seed) + " --count " + std::to_string(count) +
                  " --theorem " + theorem + (inject_rhs_bug ? " --inject-rhs-bug" : ""),
              seed, verdicts);
    return disagreements == 0 ? kExitOk : kExitDisagreement;
}

int run_spectrum(const GlobalFlags& flags, const std::string& file, const std::string& name) {
    InstanceScript script = parse_script(read_file(file), flags.parse_config());
    const FiniteRing& ring = ring_by_name(script, name);
    SpectrumReport rep = maximal_ideals(ring);
    std::cout << "ring " << name << ": " << ring.size() << " elements\n";
    std::cout << "nilradical: " << rep.nil.to_string() << "\n";
    std::cout << "maximal ideals (" << rep.maximals.size() << "):\n";
    for (const Ideal& m : rep.maximals) std::cout << "  " << m.to_string() << "\n";
    std::cout << "primitive idempotents of the reduced quotient: "
              << rep.primitive_idempotents.size() << "\n";
    return kExitOk;
}

int run_axioms(const GlobalFlags& flags, const std::string& file, const std::string& name) {
    InstanceScript script = parse_script(read_file(file), flags.parse_config());
    const FiniteRing& ring = ring_by_name(script, name);
    AxiomsReport rep = ring_axioms_check(ring);
    std::cout << "axioms " << name << ": " << (rep.ok ? "PASS" : "FAIL") << "\n";
    if (!rep.ok) std::cout << "  violation: " << rep.violation << "\n";
    return rep.ok ? kExitOk : kExitPropertyFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finring: a workbench for finite commutative rings and bi-amalgamated "
                 "constructions"};
    app.set_version_flag("--version", std::string(finring::kVersion));
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--max-ring-size", flags.max_ring_size,
                   "construction size cap (default 4096 or FINRING_MAX_RING_SIZE)");
    app.add_option("--max-ideal-enum", flags.max_ideal_enum,
                   "ideal lattice enumeration cap (default 512 or FINRING_MAX_IDEAL_ENUM)");
    app.add_option("--format", flags.format, "report format: text or records")
        ->check(CLI::IsMember({"text", "records"}));
    app.add_option("--log", flags.log_path, "append verdict records to this file");

    std::string arg_file, arg_property, arg_name, arg_theorem, arg_datum;
    std::uint64_t arg_seed = 0;
    std::size_t arg_count = 100;
    bool arg_inject = false;

    CLI::App* check = app.add_subcommand("check", "decide a ring property from a script");
    check->add_option("file", arg_file)->required();
    check->add_option("property", arg_property)->required();
    check->add_option("name", arg_name)->required();

    CLI::App* verify = app.add_subcommand("verify", "evaluate a transfer law on one datum");
    verify->add_option("theorem", arg_theorem)->required();
    verify->add_option("file", arg_file)->required();
    verify->add_option("datum", arg_datum)->required();

    CLI::App* fuzz = app.add_subcommand("fuzz", "generate instances and hunt disagreements");
    fuzz->add_option("--seed", arg_seed)->required();
    fuzz->add_option("--count", arg_count)->required();
    fuzz->add_option("--theorem", arg_theorem)->required();
    fuzz->add_flag("--inject-rhs-bug", arg_inject,
                   "deliberately quantify right-hand sides over all maximal ideals "
                   "(mutation test; a healthy engine reports disagreements)");

    CLI::App* spectrum = app.add_subcommand("spectrum", "print nilradical and maximal ideals");
    spectrum->add_option("file", arg_file)->required();
    spectrum->add_option("name", arg_name)->required();

    CLI::App* axioms = app.add_subcommand("axioms", "exhaustively check the ring axioms");
    axioms->add_option("file", arg_file)->required();
    axioms->add_option("name", arg_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParseError;
    }

    try {
        if (check->parsed()) return run_check(flags, arg_file, arg_property, arg_name);
        if (verify->parsed()) return run_verify(flags, arg_theorem, arg_file, arg_datum);
        if (fuzz->parsed()) return run_fuzz(flags, arg_seed, arg_count, arg_theorem, arg_inject);
        if (spectrum->parsed()) return run_spectrum(flags, arg_file, arg_name);
        if (axioms->parsed()) return run_axioms(flags, arg_file, arg_name);
    } catch (const finring::ScriptError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const finring::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const finring::InternalCheckError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitDisagreement;
    }
    return kExitOk;
}
