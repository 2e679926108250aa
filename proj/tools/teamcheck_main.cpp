#include "teamcheck/clone.hpp"
#include "teamcheck/formula.hpp"
#include "teamcheck/kripke.hpp"
#include "teamcheck/limits.hpp"
#include "teamcheck/reductions.hpp"
#include "teamcheck/semantics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace {

using namespace teamcheck;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// "@path" pulls the value from a file, anything else is taken literally
std::string inline_or_file(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') return read_file(spec.substr(1));
    return spec;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

nlohmann::ordered_json stats_json(const EvalStats& stats) {
    nlohmann::ordered_json j;
    j["path"] = to_string(stats.path);
    j["nodes_visited"] = stats.nodes_visited;
    j["max_depth"] = stats.max_depth;
    j["successor_team_sets"] = stats.successor_team_sets;
    j["successor_teams_tried"] = stats.successor_teams_tried;
    return j;
}

void print_stats_human(const EvalStats& stats) {
    std::cout << "path: " << to_string(stats.path) << "\n"
              << "nodes_visited: " << stats.nodes_visited << "\n"
              << "max_depth: " << stats.max_depth << "\n"
              << "successor_team_sets: " << stats.successor_team_sets << "\n"
              << "successor_teams_tried: " << stats.successor_teams_tried << "\n";
}

struct CheckOptions {
    std::string model_path;
    std::string team_spec;
    std::string formula_text;
    std::string engine = "auto";
    std::string format = "human";
};

int run_check(const CheckOptions& o, const Limits& limits) {
    KripkeModel model = load_model(read_file(o.model_path));
    Team team = parse_team(model, inline_or_file(o.team_spec));
    Formula phi = parse_formula(inline_or_file(o.formula_text));
    EvalLimits eval_limits;
    eval_limits.max_steps = limits.eval_steps;
    EvalResult result = o.engine == "reference" ? check_reference(model, team, phi, eval_limits)
                                                : check(model, team, phi, eval_limits);
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["value"] = result.value;
        j["stats"] = stats_json(result.stats);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "value: " << (result.value ? "true" : "false") << "\n";
        print_stats_human(result.stats);
    }
    return result.value ? 0 : 1;
}

struct ClassifyOptions {
    std::string formula_text;
    std::string functions_path;
    std::string format = "human";
};

int run_classify(const ClassifyOptions& o) {
    if (o.formula_text.empty() == o.functions_path.empty())
        throw std::invalid_argument("classify needs exactly one of --formula or --functions");
    if (!o.formula_text.empty()) {
        Formula phi = parse_formula(inline_or_file(o.formula_text));
        FragmentSignature sig = fragment_signature(phi);
        std::string complexity = fragment_complexity(sig);
        if (o.format == "json") {
            nlohmann::ordered_json j;
            j["clone"] = to_string(sig.clone);
            j["uses_diamond"] = sig.uses_diamond;
            j["uses_box"] = sig.uses_box;
            j["uses_dep"] = sig.uses_dep;
            j["complexity"] = complexity;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "clone: " << to_string(sig.clone) << "\n"
                      << "uses_diamond: " << (sig.uses_diamond ? "true" : "false") << "\n"
                      << "uses_box: " << (sig.uses_box ? "true" : "false") << "\n"
                      << "uses_dep: " << (sig.uses_dep ? "true" : "false") << "\n"
                      << "complexity: " << complexity << "\n";
        }
        return 0;
    }
    FunctionRegistry reg;
    reg.merge_json(read_file(o.functions_path));
    std::vector<BooleanFunction> base = reg.all();
    CloneLabel clone = classify_clone(base);
    FragmentSignature with_dia_dep{clone, false, true, true};
    std::string complexity = fragment_complexity(with_dia_dep);
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["clone"] = to_string(clone);
        nlohmann::ordered_json names = nlohmann::ordered_json::array();
        for (const BooleanFunction& f : base) names.push_back(f.name());
        j["functions"] = std::move(names);
        j["complexity_with_dia_dep"] = complexity;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "clone: " << to_string(clone) << "\n"
                  << "functions: " << base.size() << "\n"
                  << "complexity_with_dia_dep: " << complexity << "\n";
    }
    return 0;
}

struct GenerateOptions {
    std::string kind;
    std::string input_path;
    std::string mode = "sat";
    std::string out_prefix;
    std::string format = "human";
};

int run_generate(const GenerateOptions& o) {
    std::string text = read_file(o.input_path);
    GeneratedInstance instance = [&] {
        switch (reduction_kind_from_string(o.kind)) {
        case ReductionKind::Reach: return gen_reach(parse_edge_list(text));
        case ReductionKind::Sat: return gen_sat(parse_dimacs(text), sat_mode_from_string(o.mode));
        case ReductionKind::Qbf: return gen_qbf(parse_qdimacs(text));
        }
        throw std::logic_error("unreachable");
    }();

    write_file(o.out_prefix + ".model.json", save_model(instance.model));
    write_file(o.out_prefix + ".team.txt", format_team(instance.model, instance.team) + "\n");
    write_file(o.out_prefix + ".formula.txt", render_formula(instance.formula) + "\n");
    nlohmann::ordered_json expected;
    expected["expected"] = instance.expected ? nlohmann::ordered_json(*instance.expected)
                                             : nlohmann::ordered_json(nullptr);
    expected["degenerate"] = instance.degenerate;
    if (!instance.note.empty()) expected["note"] = instance.note;
    write_file(o.out_prefix + ".expected.json", expected.dump(2) + "\n");

    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["kind"] = o.kind;
        j["out_prefix"] = o.out_prefix;
        j["worlds"] = instance.model.size();
        j["team_size"] = instance.team.size();
        j["formula_depth"] = instance.formula.depth();
        j["expected"] = expected["expected"];
        j["degenerate"] = instance.degenerate;
        if (!instance.note.empty()) j["note"] = instance.note;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "wrote " << o.out_prefix << ".model.json (" << instance.model.size()
                  << " worlds), .team.txt (" << instance.team.size() << " worlds), .formula.txt"
                  << " (depth " << instance.formula.depth() << "), .expected.json\n";
        std::cout << "expected: "
                  << (instance.expected ? (*instance.expected ? "true" : "false") : "unknown")
                  << "\n";
        if (instance.degenerate) std::cout << "warning: " << instance.note << "\n";
    }
    return 0;
}

struct VerifyCliOptions {
    std::string kind;
    VerifyOptions options;
    std::string format = "human";
};

int run_verify(const VerifyCliOptions& o) {
    VerifyReport report = verify_reduction(reduction_kind_from_string(o.kind), o.options);
    if (o.format == "json") {
        std::cout << verify_report_to_json(report);
    } else {
        std::cout << "kind: " << to_string(report.kind) << "\n"
                  << "mode: " << (report.exhaustive ? "exhaustive" : "random") << "\n"
                  << "seed: " << report.seed << "\n"
                  << "cases: " << report.total << " (agreed " << report.agreed
                  << ", degenerate excluded " << report.degenerate << ")\n"
                  << "matrix: tt=" << report.matrix[1][1] << " tf=" << report.matrix[1][0]
                  << " ft=" << report.matrix[0][1] << " ff=" << report.matrix[0][0] << "\n";
        if (report.all_agree()) {
            std::cout << "result: all agree\n";
        } else {
            std::cout << "result: " << report.disagreements.size() << " disagreements\n";
            std::size_t shown = 0;
            for (const VerifyInstanceRecord& rec : report.disagreements) {
                if (shown++ == 3) {
                    std::cout << "  ...\n";
                    break;
                }
                std::cout << "  expected " << (rec.expected ? "true" : "false") << ", got "
                          << (rec.got ? "true" : "false")
                          << (rec.mode.empty() ? "" : " (mode " + rec.mode + ")") << ", seed "
                          << rec.seed << ", instance:\n";
                std::istringstream lines(rec.source);
                std::string line;
                while (std::getline(lines, line)) std::cout << "    " << line << "\n";
            }
        }
    }
    return report.all_agree() ? 0 : 1;
}

struct BenchOptions {
    std::string suite = "box,dia";
    std::uint64_t seed = 1;
    std::size_t worlds = 1000;
    std::size_t depth = 50;
    std::size_t clauses = 10;
    std::size_t repeat = 3;
    std::string format = "json";
};

Formula box_chain(Formula leaf, std::size_t depth) {
    for (std::size_t i = 0; i < depth; ++i) leaf = Formula::box(std::move(leaf));
    return leaf;
}

struct BenchEntry {
    std::string name;
    std::string engine;
    bool value = false;
    double wall_ms = 0;
    EvalStats stats;
};

int run_bench(const BenchOptions& o, const Limits& limits) {
    EvalLimits eval_limits;
    eval_limits.max_steps = limits.eval_steps;
    std::vector<BenchEntry> entries;

    auto time_case = [&](const std::string& name, const KripkeModel& model, const Team& team,
                         const Formula& phi) {
        for (const char* engine : {"auto", "reference"}) {
            BenchEntry entry;
            entry.name = name;
            entry.engine = engine;
            double best = -1;
            std::size_t runs = o.repeat ? o.repeat : 1;
            for (std::size_t r = 0; r < runs; ++r) {
                auto t0 = std::chrono::steady_clock::now();
                EvalResult result = std::string(engine) == "reference"
                                        ? check_reference(model, team, phi, eval_limits)
                                        : check(model, team, phi, eval_limits);
                auto t1 = std::chrono::steady_clock::now();
                double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                if (best < 0 || ms < best) best = ms;
                entry.value = result.value;
                entry.stats = result.stats;
            }
            entry.wall_ms = best;
            entries.push_back(std::move(entry));
        }
    };

    for (const std::string& item : split_csv(o.suite)) {
        if (item == "box") {
            double edge_prob = o.worlds ? 4.0 / static_cast<double>(o.worlds) : 0.5;
            KripkeModel model =
                make_random_model(o.seed, o.worlds, edge_prob, {"p", "q", "r"});
            Team team(model.size());
            for (std::size_t w = 0; w < model.size(); ++w) team.add(w);
            Formula phi = Formula::apply(
                BooleanFunction::builtin_and(),
                {box_chain(Formula::dep({"p"}, "q"), o.depth),
                 Formula::apply(BooleanFunction::builtin_or(),
                                {box_chain(Formula::dep({"q"}, "r"), o.depth),
                                 box_chain(Formula::neg_prop("r"), o.depth)})});
            time_case("box_depth" + std::to_string(o.depth) + "_worlds" +
                          std::to_string(o.worlds),
                      model, team, phi);
        } else if (item == "dia") {
            std::mt19937_64 rng(o.seed);
            CnfInstance psi{4, {}};
            for (std::size_t j = 0; j < o.clauses; ++j) {
                std::vector<int> clause;
                int width = 1 + static_cast<int>(rng() % 3);
                for (int b = 0; b < width; ++b) {
                    int var = 1 + static_cast<int>(rng() % 4);
                    clause.push_back(rng() & 1 ? var : -var);
                }
                psi.clauses.push_back(std::move(clause));
            }
            GeneratedInstance instance = gen_sat(psi, SatMode::Sat);
            time_case("sat_clauses" + std::to_string(o.clauses), instance.model, instance.team,
                      instance.formula);
        } else {
            throw std::invalid_argument("unknown bench suite item: '" + item + "'");
        }
    }

    if (o.format == "json") {
        nlohmann::ordered_json suite = nlohmann::ordered_json::array();
        for (const BenchEntry& entry : entries) {
            nlohmann::ordered_json j;
            j["name"] = entry.name;
            j["engine"] = entry.engine;
            j["value"] = entry.value;
            j["wall_ms"] = entry.wall_ms;
            j["stats"] = stats_json(entry.stats);
            suite.push_back(std::move(j));
        }
        nlohmann::ordered_json out;
        out["seed"] = o.seed;
        out["suite"] = std::move(suite);
        std::cout << out.dump(2) << "\n";
    } else {
        for (const BenchEntry& entry : entries)
            std::cout << entry.name << " engine=" << entry.engine << " value="
                      << (entry.value ? "true" : "false") << " wall_ms=" << entry.wall_ms
                      << " path=" << to_string(entry.stats.path)
                      << " team_sets=" << entry.stats.successor_team_sets << "\n";
    }
    return 0;
}

struct ClosureOptions {
    std::string functions_path;
    std::string builtins_csv;
    unsigned max_arity = 3;
    std::string format = "human";
};

int run_closure(const ClosureOptions& o, const Limits& limits) {
    if (o.functions_path.empty() && o.builtins_csv.empty())
        throw std::invalid_argument("closure needs --functions and/or --builtins");
    std::vector<BooleanFunction> base;
    if (!o.functions_path.empty()) {
        FunctionRegistry reg;
        reg.merge_json(read_file(o.functions_path));
        base = reg.all();
    }
    for (const std::string& name : split_csv(o.builtins_csv)) {
        const BooleanFunction* f = FunctionRegistry::builtins().find(name);
        if (!f) throw std::invalid_argument("unknown builtin function: '" + name + "'");
        base.push_back(*f);
    }

    ClosureLimits closure_limits;
    closure_limits.max_functions = limits.closure_functions;
    closure_limits.max_compositions = limits.closure_compositions;
    std::vector<BooleanFunction> closed = closure_oracle(base, o.max_arity, closure_limits);
    CloneLabel clone = classify_clone(base);

    std::map<unsigned, std::size_t> by_arity;
    for (const BooleanFunction& f : closed) ++by_arity[f.arity()];

    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["clone"] = to_string(clone);
        j["base_size"] = base.size();
        j["max_arity"] = o.max_arity;
        j["closure_size"] = closed.size();
        nlohmann::ordered_json arities;
        for (const auto& [arity, count] : by_arity) arities[std::to_string(arity)] = count;
        j["by_arity"] = std::move(arities);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "clone: " << to_string(clone) << "\n"
                  << "base_size: " << base.size() << "\n"
                  << "closure_size (arity <= " << o.max_arity << "): " << closed.size() << "\n";
        for (const auto& [arity, count] : by_arity)
            std::cout << "  arity " << arity << ": " << count << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"team-semantics model checker for modal dependence logic"};
    app.require_subcommand(1);

    auto add_format = [](CLI::App* cmd, std::string& target) {
        cmd->add_option("--format", target, "output format")
            ->check(CLI::IsMember({"human", "json"}))
            ->capture_default_str();
    };

    CheckOptions check_opts;
    CLI::App* cmd_check = app.add_subcommand("check", "evaluate a formula on a model and team");
    cmd_check->add_option("--model", check_opts.model_path, "model JSON file")->required();
    cmd_check->add_option("--team", check_opts.team_spec, "team, e.g. '{w1,w2}', or @file")
        ->required();
    cmd_check->add_option("--formula", check_opts.formula_text, "formula text, or @file")
        ->required();
    cmd_check->add_option("--engine", check_opts.engine, "evaluation engine")
        ->check(CLI::IsMember({"auto", "reference", "fast"}))
        ->capture_default_str();
    add_format(cmd_check, check_opts.format);

    ClassifyOptions classify_opts;
    CLI::App* cmd_classify =
        app.add_subcommand("classify", "clone and complexity of a formula or function set");
    CLI::Option* classify_formula =
        cmd_classify->add_option("--formula", classify_opts.formula_text, "formula text, or @file");
    cmd_classify
        ->add_option("--functions", classify_opts.functions_path,
                     "JSON file of named truth tables")
        ->excludes(classify_formula);
    add_format(cmd_classify, classify_opts.format);

    GenerateOptions generate_opts;
    CLI::App* cmd_generate =
        app.add_subcommand("generate", "build a model-checking instance from a problem encoding");
    cmd_generate->add_option("kind", generate_opts.kind, "reduction kind")
        ->required()
        ->check(CLI::IsMember({"reach", "sat", "qbf"}));
    cmd_generate
        ->add_option("--input", generate_opts.input_path,
                     "edge list (reach), DIMACS (sat), or QDIMACS (qbf) file")
        ->required();
    cmd_generate
        ->add_option("--mode", generate_opts.mode,
                     "sat only: sat|unsat-accept|always-accept|always-reject")
        ->check(CLI::IsMember({"sat", "unsat-accept", "always-accept", "always-reject"}))
        ->capture_default_str();
    cmd_generate->add_option("--out", generate_opts.out_prefix, "output path prefix")->required();
    add_format(cmd_generate, generate_opts.format);

    VerifyCliOptions verify_opts;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "cross-check generated instances against oracles");
    cmd_verify->add_option("kind", verify_opts.kind, "reduction kind")
        ->required()
        ->check(CLI::IsMember({"reach", "sat", "qbf"}));
    cmd_verify->add_option("--count", verify_opts.options.count, "random instances to draw")
        ->capture_default_str();
    cmd_verify->add_option("--seed", verify_opts.options.seed, "base seed")
        ->capture_default_str();
    cmd_verify
        ->add_option("--max-nodes", verify_opts.options.bounds.max_nodes, "reach: node cap")
        ->capture_default_str();
    cmd_verify
        ->add_option("--max-vars", verify_opts.options.bounds.max_vars, "sat/qbf: variable cap")
        ->capture_default_str();
    cmd_verify
        ->add_option("--max-clauses", verify_opts.options.bounds.max_clauses,
                     "sat/qbf: clause cap")
        ->capture_default_str();
    cmd_verify
        ->add_option("--max-width", verify_opts.options.bounds.max_clause_width,
                     "sat/qbf: clause width cap")
        ->capture_default_str();
    cmd_verify->add_flag("--exhaustive", verify_opts.options.exhaustive,
                         "sweep every instance up to small caps instead of sampling");
    cmd_verify->add_flag("--inject-fault", verify_opts.options.inject_fault)->group("");
    add_format(cmd_verify, verify_opts.format);

    BenchOptions bench_opts;
    CLI::App* cmd_bench = app.add_subcommand("bench", "time the engines on synthetic workloads");
    cmd_bench->add_option("--suite", bench_opts.suite, "comma list of box,dia (empty = none)")
        ->capture_default_str();
    cmd_bench->add_option("--seed", bench_opts.seed, "model seed")->capture_default_str();
    cmd_bench->add_option("--worlds", bench_opts.worlds, "box suite: world count")
        ->capture_default_str();
    cmd_bench->add_option("--depth", bench_opts.depth, "box suite: modal depth")
        ->capture_default_str();
    cmd_bench->add_option("--clauses", bench_opts.clauses, "dia suite: clause count")
        ->capture_default_str();
    cmd_bench->add_option("--repeat", bench_opts.repeat, "runs per case, best kept")
        ->capture_default_str();
    add_format(cmd_bench, bench_opts.format);

    ClosureOptions closure_opts;
    CLI::App* cmd_closure =
        app.add_subcommand("closure", "enumerate the clone generated by a function set");
    cmd_closure->add_option("--functions", closure_opts.functions_path,
                            "JSON file of named truth tables");
    cmd_closure->add_option("--builtins", closure_opts.builtins_csv,
                            "comma list of and,or,not,xor,top,bot");
    cmd_closure->add_option("--max-arity", closure_opts.max_arity, "closure arity bound")
        ->check(CLI::Range(0u, 4u))
        ->capture_default_str();
    add_format(cmd_closure, closure_opts.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Limits limits = limits_from_env();
        if (cmd_check->parsed()) return run_check(check_opts, limits);
        if (cmd_classify->parsed()) return run_classify(classify_opts);
        if (cmd_generate->parsed()) return run_generate(generate_opts);
        if (cmd_verify->parsed()) return run_verify(verify_opts);
        if (cmd_bench->parsed()) return run_bench(bench_opts, limits);
        if (cmd_closure->parsed()) return run_closure(closure_opts, limits);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
