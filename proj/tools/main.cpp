#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "matchkit/oracle.hpp"
#include "matchkit/verify.hpp"

namespace {

using matchkit::Budgets;
using matchkit::ReportFormat;
using matchkit::VerdictReport;

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct GlobalOptions {
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = 1;
    std::string config_path;
    Budgets budgets;
};

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

/// key=value lines, '#' comments. Precedence: flag > config > default.
void load_config(GlobalOptions& opt) {
    std::string path = opt.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("MATCHKIT_CONFIG")) path = env;
    }
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw matchkit::DomainError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) continue;
        long long v = std::stoll(value);
        if (key == "max_group_order") opt.budgets.max_group_order = v;
        else if (key == "max_field_order") opt.budgets.max_field_order = v;
        else if (key == "max_matching_degree") opt.budgets.max_matching_degree = static_cast<int>(v);
        else if (key == "oracle_max_set") opt.budgets.oracle_max_set = static_cast<int>(v);
        else if (key == "oracle_max_field_order") opt.budgets.oracle_max_field_order = v;
        else if (key == "oracle_max_bases") opt.budgets.oracle_max_bases = v;
        else if (key == "sweep_budget") opt.budgets.sweep_budget = v;
        else if (key == "seed") {
            if (!opt.seed_given) opt.seed = static_cast<std::uint64_t>(v);
        } else {
            throw matchkit::DomainError("unknown config key: " + key);
        }
    }
}

void emit(const GlobalOptions& opt, const VerdictReport& report) {
    auto format = matchkit::parse_format(opt.format);
    if (format == ReportFormat::Csv) std::cout << matchkit::csv_header() << "\n";
    std::cout << matchkit::render(report, format) << "\n";
}

VerdictReport base_report(const GlobalOptions& opt, std::string command, std::string instance) {
    VerdictReport r;
    r.command = std::move(command);
    r.instance = std::move(instance);
    r.seed = opt.seed;
    return r;
}

// ------------------------------------------------------------- group commands

struct GroupArgs {
    std::string group;
    std::string a;
    std::string b;
    std::string c;
    int max_size = 2;
};

int run_group_match(const GlobalOptions& opt, const GroupArgs& args) {
    auto g = matchkit::parse_group(args.group);
    auto A = matchkit::parse_subset(g, args.a);
    auto B = matchkit::parse_subset(g, args.b);
    long long start = now_ms();
    matchkit::MatchResult result;
    std::string instance = "group=" + g.spec_string() + " A=" + A.format() + " B=" + B.format();
    if (args.c.empty()) {
        result = matchkit::find_matching(A, B);
    } else {
        auto C = matchkit::parse_subset(g, args.c);
        instance += " C=" + C.format();
        result = matchkit::find_c_matching(A, B, C);
    }
    auto report = base_report(opt, args.c.empty() ? "group.match" : "group.cmatch", instance);
    report.verdict = result.matched() ? "true" : "false";
    report.certificate = result.matched() ? matchkit::matching_json(*result.matching)
                                          : matchkit::hall_witness_json(*result.witness);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_group_local(const GlobalOptions& opt, const GroupArgs& args) {
    auto g = matchkit::parse_group(args.group);
    auto A = matchkit::parse_subset(g, args.a);
    auto B = matchkit::parse_subset(g, args.b);
    long long start = now_ms();
    auto cert = matchkit::is_locally_matched(A, B, opt.budgets);
    auto report = base_report(opt, "group.local",
                              "group=" + g.spec_string() + " A=" + A.format() + " B=" + B.format());
    report.verdict = cert.locally_matched ? "true" : "false";
    report.certificate = matchkit::local_certificate_json(cert);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_group_kneser(const GlobalOptions& opt, const GroupArgs& args) {
    auto g = matchkit::parse_group(args.group);
    auto A = matchkit::parse_subset(g, args.a);
    auto B = matchkit::parse_subset(g, args.b);
    long long start = now_ms();
    auto rec = matchkit::verify_kneser(A, B);
    auto report = base_report(opt, "group.kneser",
                              "group=" + g.spec_string() + " A=" + A.format() + " B=" + B.format());
    report.verdict = rec.holds ? "holds" : "fails";
    report.certificate = matchkit::kneser_json(rec);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return rec.holds ? kExitOk : kExitAssertionFailed;
}

int run_group_property(const GlobalOptions& opt, const GroupArgs& args) {
    auto g = matchkit::parse_group(args.group);
    long long start = now_ms();
    bool value = matchkit::has_matching_property(g);
    auto report = base_report(opt, "group.property", "group=" + g.spec_string());
    report.verdict = value ? "true" : "false";
    report.certificate = {{"order", g.order()}, {"prime_order", value}};
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_group_counterexample(const GlobalOptions& opt, const GroupArgs& args) {
    auto g = matchkit::parse_group(args.group);
    long long start = now_ms();
    auto [A, B] = matchkit::counterexample_pair(g, opt.budgets);
    bool fails = !matchkit::find_matching(A, B).matched();
    auto report = base_report(opt, "group.counterexample", "group=" + g.spec_string());
    report.verdict = fails ? "true" : "false";
    nlohmann::ordered_json cert;
    cert["A"] = matchkit::subset_json(A);
    cert["B"] = matchkit::subset_json(B);
    cert["fails_to_match"] = fails;
    report.certificate = cert;
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return fails ? kExitOk : kExitAssertionFailed;
}

int run_group_sweep(const GlobalOptions& opt, const GroupArgs& args) {
    auto g = matchkit::parse_group(args.group);
    long long start = now_ms();
    auto sweep = matchkit::exhaustive_matchability(g, args.max_size, opt.budgets, opt.workers);
    bool agree = sweep.agreements == sweep.pairs_total;
    auto report = base_report(opt, "group.sweep", "group=" + g.spec_string() + " max_size=" +
                                                      std::to_string(args.max_size));
    report.verdict = agree ? "holds" : "fails";
    report.certificate = matchkit::sweep_json(sweep);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return agree ? kExitOk : kExitAssertionFailed;
}

// ------------------------------------------------------------- field commands

struct FieldArgs {
    std::string field;
    std::string modulus;
    std::string a;
    std::string b;
    std::string basis;
    std::string family;
    bool extend = false;
    int dim_budget = 2;
};

matchkit::FieldExt make_field(const GlobalOptions& opt, const FieldArgs& args) {
    return matchkit::parse_field(args.field, args.modulus, opt.budgets);
}

std::string field_instance(const matchkit::FieldExt& ext) {
    return "field=" + ext.spec_string() + " modulus=" + ext.modulus_string();
}

int run_field_match(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    auto A = matchkit::parse_subspace(ext, args.a);
    auto B = matchkit::parse_subspace(ext, args.b);
    long long start = now_ms();
    auto result = matchkit::space_matched(A, B, opt.budgets);
    auto report = base_report(opt, "field.match",
                              field_instance(ext) + " A=" + A.format() + " B=" + B.format());
    report.verdict = result.matched ? "true" : "false";
    nlohmann::ordered_json cert;
    cert["matched"] = result.matched;
    if (!result.matched) cert["failing_S"] = matchkit::elements_json(ext, result.failing_S);
    report.certificate = cert;
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_field_basis(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    auto A = matchkit::parse_subspace(ext, args.a);
    auto B = matchkit::parse_subspace(ext, args.b);
    std::vector<matchkit::FqElem> basis;
    if (!args.basis.empty()) {
        // rows parsed individually to keep the user's order
        std::string row;
        std::istringstream chunks(args.basis);
        while (std::getline(chunks, row, ';')) basis.push_back(ext.parse_element(row));
    } else {
        basis = A.basis_elements();
    }
    long long start = now_ms();
    auto result = matchkit::find_matched_basis(basis, A, B);
    auto report = base_report(opt, "field.basis",
                              field_instance(ext) + " A=" + A.format() + " B=" + B.format() +
                                  " basis=" + matchkit::elements_json(ext, basis).dump());
    nlohmann::ordered_json cert;
    if (result.matching) {
        report.verdict = "true";
        cert = matchkit::basis_matching_json(*result.matching);
    } else {
        report.verdict = "false";
        cert["violating_J"] = result.violating_J;
    }
    report.certificate = cert;
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_field_local(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    auto A = matchkit::parse_subspace(ext, args.a);
    auto B = matchkit::parse_subspace(ext, args.b);
    long long start = now_ms();
    auto cert = matchkit::is_locally_matched_linear(A, B, opt.budgets);
    auto report = base_report(opt, "field.local",
                              field_instance(ext) + " A=" + A.format() + " B=" + B.format());
    report.verdict = cert.locally_matched ? "true" : "false";
    report.certificate = matchkit::linear_local_json(cert, ext);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_field_kneser(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    auto A = matchkit::parse_subspace(ext, args.a);
    auto B = matchkit::parse_subspace(ext, args.b);
    long long start = now_ms();
    auto rec = matchkit::verify_linear_kneser(A, B);
    auto report = base_report(opt, "field.kneser",
                              field_instance(ext) + " A=" + A.format() + " B=" + B.format());
    report.verdict = rec.holds ? "holds" : "fails";
    report.certificate = matchkit::linear_kneser_json(rec);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return rec.holds ? kExitOk : kExitAssertionFailed;
}

int run_field_transversal(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    std::vector<matchkit::Subspace> family;
    std::string chunk;
    std::istringstream chunks(args.family);
    while (std::getline(chunks, chunk, '|')) family.push_back(matchkit::parse_subspace(ext, chunk));
    long long start = now_ms();
    auto cert = matchkit::free_transversal(family);
    std::string instance = field_instance(ext) + " family=";
    for (std::size_t i = 0; i < family.size(); ++i)
        instance += (i ? "|" : "") + family[i].format();
    auto report = base_report(opt, "field.transversal", instance);
    report.verdict = cert.found ? "true" : "false";
    auto payload = matchkit::transversal_json(cert);
    if (args.extend && cert.found) {
        auto extended = matchkit::extend_family(family, matchkit::Subspace::full_space(ext));
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const auto& e : extended) list.push_back(matchkit::subspace_json(e));
        payload["extended"] = list;
    }
    report.certificate = payload;
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_field_primitive(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    auto B = matchkit::parse_subspace(ext, args.b);
    long long start = now_ms();
    auto result = matchkit::is_primitive(B, opt.budgets);
    auto report = base_report(opt, "field.primitive", field_instance(ext) + " B=" + B.format());
    report.verdict = result.primitive ? "true" : "false";
    nlohmann::ordered_json cert;
    cert["primitive"] = result.primitive;
    if (result.witness) cert["witness"] = ext.format_element(*result.witness);
    report.certificate = cert;
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_field_mn(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    long long start = now_ms();
    auto result = matchkit::compute_mn(ext, opt.budgets);
    auto report = base_report(opt, "field.mn", field_instance(ext));
    // a failed identity is a reported finding, never an assertion failure
    report.verdict = result.identity_holds ? "holds" : "fails";
    report.certificate = matchkit::mn_json(result);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return kExitOk;
}

int run_field_thm41(const GlobalOptions& opt, const FieldArgs& args) {
    auto ext = make_field(opt, args);
    long long start = now_ms();
    auto outcome = matchkit::theorem41_check(ext, args.dim_budget, opt.budgets, opt.workers);
    auto report = base_report(opt, "field.thm41", field_instance(ext) + " dim_budget=" +
                                                      std::to_string(args.dim_budget));
    report.verdict = outcome.all_matched ? "holds" : "fails";
    report.certificate = matchkit::thm41_json(outcome);
    report.elapsed_ms = now_ms() - start;
    emit(opt, report);
    return outcome.all_matched ? kExitOk : kExitAssertionFailed;
}

// ------------------------------------------------------------ verify commands

int run_verify(const GlobalOptions& opt, bool oracle_only) {
    matchkit::VerifyOptions vopt;
    vopt.seed = opt.seed;
    vopt.workers = opt.workers;
    vopt.budgets = opt.budgets;
    long long start = now_ms();
    auto run = oracle_only ? matchkit::run_oracle_agreement(vopt) : matchkit::run_acceptance(vopt);
    auto format = matchkit::parse_format(opt.format);
    if (format == ReportFormat::Json) {
        std::cout << run.stream;  // the canonical payload the determinism check compares
    } else {
        if (format == ReportFormat::Csv) std::cout << matchkit::csv_header() << "\n";
        for (const auto& record : run.records) std::cout << matchkit::render(record, format) << "\n";
        for (const auto& c : run.criteria)
            std::cout << "criterion " << c.id << " [" << c.name
                      << "]: " << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    std::cerr << (oracle_only ? "oracle agreement" : "acceptance") << ": "
              << (run.all_pass ? "all checks passed" : "FAILURES PRESENT") << " in "
              << (now_ms() - start) << " ms\n";
    return run.all_pass ? kExitOk : kExitAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOptions opt;
    CLI::App app{"matchkit: matchings in finite abelian groups and matched subspaces in finite "
                 "field extensions"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", opt.format, "Output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    auto* seed_opt = app.add_option("--seed", opt.seed, "Seed for randomized sweeps");
    app.add_option("--workers", opt.workers, "Worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--config", opt.config_path,
                   "Config file (key=value); also read from MATCHKIT_CONFIG");
    app.add_option("--max-group-order", opt.budgets.max_group_order,
                   "Budget for subgroup enumeration");
    app.add_option("--max-field-order", opt.budgets.max_field_order, "Budget for field sweeps");

    GroupArgs group_args;
    auto* group = app.add_subcommand("group", "Decisions in finite abelian groups");
    auto add_group_common = [&](CLI::App* cmd, bool needs_sets) {
        cmd->add_option("--group", group_args.group, "Group spec, e.g. Z4 or Z2xZ2")->required();
        if (needs_sets) {
            cmd->add_option("--A", group_args.a, "Subset A, e.g. 0,2 or {(0,1),(1,0)}")->required();
            cmd->add_option("--B", group_args.b, "Subset B")->required();
        }
    };
    auto* g_match = group->add_subcommand("match", "Find a matching from A to B or a witness");
    add_group_common(g_match, true);
    g_match->add_option("--C", group_args.c, "Forbidden set (defaults to A)");
    auto* g_local = group->add_subcommand("local", "Decide local matchability");
    add_group_common(g_local, true);
    auto* g_kneser = group->add_subcommand("kneser", "Check the sumset stabilizer inequality");
    add_group_common(g_kneser, true);
    auto* g_property = group->add_subcommand("property", "Does the group have the matching property?");
    add_group_common(g_property, false);
    auto* g_counter = group->add_subcommand("counterexample", "Canonical unmatched pair");
    add_group_common(g_counter, false);
    auto* g_sweep = group->add_subcommand("sweep", "Exhaustive matchability sweep");
    add_group_common(g_sweep, false);
    g_sweep->add_option("--max-size", group_args.max_size, "Largest subset size");

    FieldArgs field_args;
    auto* field = app.add_subcommand("field", "Decisions for subspaces of GF(p^n)");
    auto add_field_common = [&](CLI::App* cmd) {
        cmd->add_option("--field", field_args.field, "Field spec, e.g. GF(2^4)")->required();
        cmd->add_option("--modulus", field_args.modulus,
                        "Modulus coefficients c0,...,cn (low degree first)");
    };
    auto* f_match = field->add_subcommand("match", "Is A matched to B?");
    add_field_common(f_match);
    f_match->add_option("--A", field_args.a, "Subspace rows, ';'-separated (polys in t)")->required();
    f_match->add_option("--B", field_args.b, "Subspace rows")->required();
    auto* f_basis = field->add_subcommand("basis", "Match a concrete basis of A to a basis of B");
    add_field_common(f_basis);
    f_basis->add_option("--A", field_args.a, "Subspace rows")->required();
    f_basis->add_option("--B", field_args.b, "Subspace rows")->required();
    f_basis->add_option("--basis", field_args.basis, "Basis of A, ';'-separated (defaults to A's rows)");
    auto* f_local = field->add_subcommand("local", "Decide linear local matchability");
    add_field_common(f_local);
    f_local->add_option("--A", field_args.a, "Subspace rows")->required();
    f_local->add_option("--B", field_args.b, "Subspace rows")->required();
    auto* f_kneser = field->add_subcommand("kneser", "Check the product-span stabilizer inequality");
    add_field_common(f_kneser);
    f_kneser->add_option("--A", field_args.a, "Subspace rows")->required();
    f_kneser->add_option("--B", field_args.b, "Subspace rows")->required();
    auto* f_trans = field->add_subcommand("transversal", "Free transversal of a subspace family");
    add_field_common(f_trans);
    f_trans->add_option("--family", field_args.family, "Subspaces separated by '|'")->required();
    f_trans->add_flag("--extend", field_args.extend, "Also extend the family to exact intersections");
    auto* f_prim = field->add_subcommand("primitive", "Is B a primitive subspace?");
    add_field_common(f_prim);
    f_prim->add_option("--B", field_args.b, "Subspace rows")->required();
    auto* f_mn = field->add_subcommand("mn", "Max subfield degree and max primitive dimension");
    add_field_common(f_mn);
    auto* f_thm41 = field->add_subcommand("thm41", "All pairs with a primitive right side are matched");
    add_field_common(f_thm41);
    f_thm41->add_option("--dim-budget", field_args.dim_budget, "Largest dimension to sweep");

    auto* verify = app.add_subcommand("verify", "Acceptance suite and oracle cross-checks");
    bool oracle_only = false;
    std::string verify_what = "all";
    verify->add_option("what", verify_what, "all")->check(CLI::IsMember({"all"}));
    verify->add_flag("--oracle", oracle_only, "Run the oracle agreement suite instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    opt.seed_given = seed_opt->count() > 0;

    try {
        load_config(opt);
        if (g_match->parsed()) return run_group_match(opt, group_args);
        if (g_local->parsed()) return run_group_local(opt, group_args);
        if (g_kneser->parsed()) return run_group_kneser(opt, group_args);
        if (g_property->parsed()) return run_group_property(opt, group_args);
        if (g_counter->parsed()) return run_group_counterexample(opt, group_args);
        if (g_sweep->parsed()) return run_group_sweep(opt, group_args);
        if (f_match->parsed()) return run_field_match(opt, field_args);
        if (f_basis->parsed()) return run_field_basis(opt, field_args);
        if (f_local->parsed()) return run_field_local(opt, field_args);
        if (f_kneser->parsed()) return run_field_kneser(opt, field_args);
        if (f_trans->parsed()) return run_field_transversal(opt, field_args);
        if (f_prim->parsed()) return run_field_primitive(opt, field_args);
        if (f_mn->parsed()) return run_field_mn(opt, field_args);
        if (f_thm41->parsed()) return run_field_thm41(opt, field_args);
        if (verify->parsed()) return run_verify(opt, oracle_only);
        std::cerr << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const matchkit::ParseError& e) {
        std::cerr << "error: malformed instance " << e.what() << "\n";
        return kExitUsage;
    } catch (const matchkit::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const matchkit::SoundnessError& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kExitAssertionFailed;
    } catch (const matchkit::StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const matchkit::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
