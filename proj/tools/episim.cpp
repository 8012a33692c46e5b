// episim — build, check, convert and model-check epistemic models with
// distributed knowledge: Kripke-style frames with one PER per agent group,
// and their geometric counterpart, epistemic coverings of chromatic
// semi-simplicial sets.
//
// Exit codes: 0 success / check passed, 1 check failed, 2 parse error,
// 3 validation error, 4 unknown world, 5 oracle budget exceeded.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "episim/axioms.hpp"
#include "episim/fixtures.hpp"
#include "episim/io.hpp"

using namespace episim;
using nlohmann::json;

namespace {

struct Options {
    bool json = false;
    bool complete = false;
};

GeneralizedEpistemicModel frame_view(const LoadedFile& f) {
    if (f.kind == FileKind::Covering) return kappa(*f.covering);
    return *f.model;
}

std::string group_str(AgentSet g, const std::vector<std::string>& roster) {
    return group_label(g, roster);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_file(path, text);
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& file, const Options& opt) {
    std::string text = read_file(file);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("kind"))
        throw ParseError("model files need a top-level \"kind\" field");

    std::vector<std::string> defects;
    if (j.at("kind") == "frame") {
        // re-run the loader in report mode to list every defect
        try {
            parse_model_text(text, opt.complete);
        } catch (const ValidationError& e) {
            std::string msg = e.what();
            std::size_t pos = msg.find('\n');
            while (pos != std::string::npos) {
                std::size_t end = msg.find('\n', pos + 1);
                std::string line = msg.substr(pos + 3, end == std::string::npos ? end : end - pos - 3);
                if (!line.empty()) defects.push_back(line);
                pos = end;
            }
            if (defects.empty()) defects.push_back(msg);
        }
    } else {
        try {
            parse_model_text(text, opt.complete);
        } catch (const ValidationError& e) {
            defects.push_back(e.what());
        }
    }

    if (opt.json) {
        json out;
        out["valid"] = defects.empty();
        out["defects"] = defects;
        std::cout << out.dump(2) << "\n";
    } else {
        if (defects.empty())
            std::cout << "VALID\n";
        else
            for (const auto& d : defects) std::cout << "DEFECT " << d << "\n";
    }
    return defects.empty() ? 0 : 3;
}

// -------------------------------------------------------------------- eval

int cmd_eval(const std::string& file, const std::string& world, const std::string& formula,
             bool explain, const Options& opt) {
    LoadedFile f = load_model_file(file, opt.complete);
    bool verdict = false;
    std::vector<EvalStep> steps;
    if (f.kind == FileKind::Covering) {
        const auto& x = *f.covering;
        Formula phi = parse_formula(formula, x.cov.top.agents);
        int w = x.cov.top.world_index(world);
        if (w < 0) throw UnknownWorldError(world);
        verdict = explain ? satisfies_covering_explain(x, w, phi, steps)
                          : satisfies_covering(x, w, phi);
    } else {
        const auto& m = *f.model;
        Formula phi = parse_formula(formula, m.frame.agents);
        int w = m.frame.world_index_checked(world);
        verdict = explain ? satisfies_explain(m, w, phi, steps) : satisfies(m, w, phi);
    }

    if (opt.json) {
        json out;
        out["verdict"] = verdict;
        out["steps"] = json::array();
        for (const auto& s : steps)
            out["steps"].push_back({{"formula", s.formula},
                                    {"world", s.world},
                                    {"accessible", s.accessible},
                                    {"verdict", s.verdict}});
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& s : steps) {
            std::cout << s.formula << " @ " << s.world << " -> {";
            for (std::size_t i = 0; i < s.accessible.size(); ++i) {
                if (i) std::cout << ",";
                std::cout << s.accessible[i];
            }
            std::cout << "} => " << (s.verdict ? "TRUE" : "FALSE") << "\n";
        }
        std::cout << (verdict ? "TRUE" : "FALSE") << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- properties

int cmd_properties(const std::string& file, const Options& opt) {
    LoadedFile f = load_model_file(file, opt.complete);
    json out = json::array();
    for (ModelProperty p : kAllProperties) {
        std::string verdict;
        bool holds;
        if (f.kind == FileKind::Covering) {
            auto v = check_covering_property(f.covering->cov, p);
            holds = v.holds;
            verdict = describe(v);
        } else {
            auto v = check_property(f.model->frame, p);
            holds = v.holds;
            verdict = describe(v, f.model->frame);
        }
        if (opt.json)
            out.push_back({{"property", property_name(p)}, {"holds", holds},
                           {"detail", verdict}});
        else
            std::cout << property_name(p) << " " << verdict << "\n";
    }
    if (opt.json) std::cout << out.dump(2) << "\n";
    return 0;
}

// ------------------------------------------------------------------ axioms

int cmd_axioms(const std::string& file, const std::string& variant_name, bool derived,
               bool classify, const Options& opt) {
    LoadedFile f = load_model_file(file, opt.complete);
    GeneralizedEpistemicModel m = frame_view(f);

    auto variant = variant_by_name(variant_name);
    if (!variant) {
        std::string names;
        for (const auto& v : variant_registry()) names += " " + v.name;
        throw ParseError("unknown variant '" + variant_name + "'; known:" + names);
    }

    json out;
    bool all_ok = true;
    auto rows = check_soundness(m.frame, *variant);
    if (opt.json) out["instances"] = json::array();
    for (const auto& r : rows) {
        all_ok = all_ok && r.valid;
        if (opt.json) {
            json e;
            e["scheme"] = scheme_name(r.inst.scheme);
            e["groups"] = json::array();
            for (AgentSet g : r.inst.groups) e["groups"].push_back(group_str(g, m.frame.agents));
            e["valid"] = r.valid;
            out["instances"].push_back(e);
        } else {
            std::cout << describe(r, m.frame) << "\n";
        }
    }
    if (derived) {
        auto ds = derived_theorems_check(m.frame);
        if (opt.json) out["derived"] = json::array();
        for (const auto& r : ds) {
            all_ok = all_ok && r.valid;
            if (opt.json)
                out["derived"].push_back({{"family", r.family}, {"valid", r.valid}});
            else
                std::cout << describe(r, m.frame) << "\n";
        }
    }
    if (classify) {
        auto c = classify_model(m.frame);
        if (opt.json) {
            out["properties"] = json::array();
            for (auto p : c.properties) out["properties"].push_back(property_name(p));
            out["axioms"] = json::array();
            for (auto s : c.axioms) out["axioms"].push_back(scheme_name(s));
            out["implied"] = json::array();
            for (auto s : c.implied) out["implied"].push_back(scheme_name(s));
            out["no_axiom"] = json::array();
            for (auto p : c.no_axiom) out["no_axiom"].push_back(property_name(p));
        } else {
            std::cout << "properties:";
            for (auto p : c.properties) std::cout << " " << property_name(p);
            std::cout << "\nsuggested: ECn";
            for (auto s : c.axioms) std::cout << " + " << scheme_name(s);
            std::cout << "\n";
            if (!c.implied.empty()) {
                std::cout << "implied by Pure:";
                for (auto s : c.implied) std::cout << " " << scheme_name(s);
                std::cout << "\n";
            }
            if (!c.no_axiom.empty()) {
                std::cout << "no axiom needed:";
                for (auto p : c.no_axiom) std::cout << " " << property_name(p);
                std::cout << "\n";
            }
        }
    }
    if (opt.json) {
        out["pass"] = all_ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (all_ok ? "PASS" : "FAIL") << "\n";
    }
    return all_ok ? 0 : 1;
}

// ----------------------------------------------------------------- convert

int cmd_convert(const std::string& file, const std::string& to, const std::string& outfile,
                bool roundtrip, const Options& opt) {
    LoadedFile f = load_model_file(file, opt.complete);

    if (roundtrip) {
        bool ok;
        if (f.kind == FileKind::Covering) {
            ok = sigma(kappa(*f.covering)) == canonical_form(*f.covering);
        } else {
            ok = kappa(sigma(*f.model)) == *f.model;
        }
        if (opt.json)
            std::cout << json{{"roundtrip", ok}}.dump(2) << "\n";
        else
            std::cout << (ok ? "ROUNDTRIP OK" : "ROUNDTRIP MISMATCH") << "\n";
        return ok ? 0 : 1;
    }

    std::string text;
    if (to == "covering") {
        EpistemicCoveringModel x =
            f.kind == FileKind::Covering ? canonical_form(*f.covering) : sigma(*f.model);
        auto defects = validate_covering(x.cov);
        if (!defects.empty()) throw ValidationError("conversion produced an invalid covering");
        text = covering_to_json(x);
    } else if (to == "frame") {
        GeneralizedEpistemicModel m = frame_view(f);
        if (!validate_frame(m.frame).empty())
            throw ValidationError("conversion produced an invalid frame");
        text = frame_to_json(m);
    } else {
        throw ParseError("--to must be 'covering' or 'frame'");
    }
    emit(outfile, text);
    return 0;
}

// ----------------------------------------------------------------- unravel

int cmd_unravel(const std::string& file, int depth, const std::string& outfile,
                const Options& opt) {
    LoadedFile f = load_model_file(file, opt.complete);
    GeneralizedEpistemicModel m = frame_view(f);
    auto u = unravel(m, depth);
    emit(outfile, frame_to_json(u.model));
    if (!outfile.empty())
        std::cout << "worlds: " << u.model.frame.world_count() << "\n";
    return 0;
}

// ------------------------------------------------------------------- bisim

int cmd_bisim(const std::string& src_file, const std::string& dst_file,
              const std::string& map_file, const Options& opt) {
    GeneralizedEpistemicModel src = frame_view(load_model_file(src_file, opt.complete));
    GeneralizedEpistemicModel dst = frame_view(load_model_file(dst_file, opt.complete));
    auto raw = load_world_map(map_file);
    std::vector<int> map(static_cast<std::size_t>(src.frame.world_count()), -1);
    for (int w = 0; w < src.frame.world_count(); ++w) {
        auto it = raw.find(src.frame.worlds[static_cast<std::size_t>(w)]);
        if (it == raw.end())
            throw ValidationError("map misses source world '" +
                                  src.frame.worlds[static_cast<std::size_t>(w)] + "'");
        map[static_cast<std::size_t>(w)] = dst.frame.world_index(it->second);
        if (map[static_cast<std::size_t>(w)] < 0) throw UnknownWorldError(it->second);
    }

    auto r = check_functional_bisimulation(src, dst, map);
    if (opt.json) {
        json out;
        out["bisimulation"] = r.ok;
        if (!r.ok) {
            out["clause"] = r.clause;
            if (r.u >= 0) out["world"] = src.frame.worlds[static_cast<std::size_t>(r.u)];
        }
        std::cout << out.dump(2) << "\n";
    } else if (r.ok) {
        std::cout << "BISIMULATION\n";
    } else {
        std::cout << "NOT A BISIMULATION (" << r.clause << ")";
        if (r.u >= 0) std::cout << " at " << src.frame.worlds[static_cast<std::size_t>(r.u)];
        if (r.clause == "back" && r.v >= 0)
            std::cout << " vs " << dst.frame.worlds[static_cast<std::size_t>(r.v)] << " via "
                      << group_str(r.group, src.frame.agents);
        if (r.clause == "forth" && r.v >= 0)
            std::cout << "," << src.frame.worlds[static_cast<std::size_t>(r.v)] << " via "
                      << group_str(r.group, src.frame.agents);
        std::cout << "\n";
    }
    return r.ok ? 0 : 1;
}

// ---------------------------------------------------------------- fixtures

std::string fixture_text(const Fixture& fx) {
    if (fx.model) return frame_to_json(*fx.model);
    if (fx.covering) return covering_to_json(*fx.covering);
    return scenario_to_json(*fx.scenario);
}

int cmd_fixtures(bool list, const std::string& name, const std::string& outfile, bool all,
                 const std::string& dir, const Options& opt) {
    if (list) {
        if (opt.json) {
            json out = json::array();
            for (const auto& fx : builtin_fixtures())
                out.push_back({{"name", fx.name}, {"description", fx.description}});
            std::cout << out.dump(2) << "\n";
        } else {
            for (const auto& fx : builtin_fixtures())
                std::cout << fx.name << " — " << fx.description << "\n";
        }
        return 0;
    }
    if (all) {
        if (dir.empty()) throw ParseError("--all needs --dir");
        for (const auto& fx : builtin_fixtures())
            write_file(dir + "/" + fx.name + ".json", fixture_text(fx));
        std::cout << builtin_fixtures().size() << " fixtures written to " << dir << "\n";
        return 0;
    }
    const Fixture* fx = find_fixture(name);
    if (!fx) throw ParseError("unknown fixture '" + name + "'; try --list");
    emit(outfile, fixture_text(*fx));
    return 0;
}

// -------------------------------------------------------------- export-dot

int cmd_export_dot(const std::string& file, const std::string& outfile, const Options& opt) {
    LoadedFile f = load_model_file(file, opt.complete);
    EpistemicCoveringModel x =
        f.kind == FileKind::Covering ? *f.covering : sigma(*f.model);
    emit(outfile, to_dot(x));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"model checker for epistemic logic with distributed knowledge over "
                 "generalized epistemic frames and epistemic coverings"};
    app.require_subcommand(1);

    Options opt;
    std::string file, world, formula, outfile, to, variant = "ECn", name, dir, src, dst, mapf;
    bool explain = false, derived = false, classify = false, roundtrip = false, list = false,
         all = false;
    int depth = 0;

    auto add_common = [&](CLI::App* c, bool loads_files = true) {
        c->add_flag("--json", opt.json, "machine-readable output");
        if (loads_files)
            c->add_flag("--complete", opt.complete,
                        "treat relation pairs as generators and complete downward");
    };

    auto* validate = app.add_subcommand("validate", "check a model file's invariants");
    validate->add_option("file", file)->required();
    add_common(validate);

    auto* eval = app.add_subcommand("eval", "evaluate a formula at a world");
    eval->add_option("file", file)->required();
    eval->add_option("world", world)->required();
    eval->add_option("formula", formula)->required();
    eval->add_flag("--explain", explain, "print the accessible set at each D-node");
    add_common(eval);

    auto* properties = app.add_subcommand("properties", "report the seven structural properties");
    properties->add_option("file", file)->required();
    add_common(properties);

    auto* axioms = app.add_subcommand("axioms", "frame-validity of a logic variant's schemes");
    axioms->add_option("file", file)->required();
    axioms->add_option("--variant", variant, "logic variant (default ECn)");
    axioms->add_flag("--derived", derived, "also check the derived theorem families");
    axioms->add_flag("--classify", classify, "print the property profile and suggested axioms");
    add_common(axioms);

    auto* convert = app.add_subcommand("convert", "translate between frames and coverings");
    convert->add_option("file", file)->required();
    convert->add_option("--to", to, "target kind: covering | frame");
    convert->add_option("-o,--out", outfile, "output file (stdout otherwise)");
    convert->add_flag("--roundtrip", roundtrip,
                      "apply both translations and diff against the canonical input");
    add_common(convert);

    auto* unravel_cmd = app.add_subcommand("unravel", "histories model up to a depth bound");
    unravel_cmd->add_option("file", file)->required();
    unravel_cmd->add_option("--depth", depth, "maximum history length")->required();
    unravel_cmd->add_option("-o,--out", outfile, "output file (stdout otherwise)");
    add_common(unravel_cmd);

    auto* bisim = app.add_subcommand("bisim", "check a functional bisimulation between models");
    bisim->add_option("source", src)->required();
    bisim->add_option("target", dst)->required();
    bisim->add_option("map", mapf)->required();
    add_common(bisim);

    auto* fixtures = app.add_subcommand("fixtures", "built-in models from the worked examples");
    fixtures->add_option("name", name, "fixture to print");
    fixtures->add_flag("--list", list, "list fixture names");
    fixtures->add_flag("--all", all, "write every fixture");
    fixtures->add_option("--dir", dir, "directory for --all");
    fixtures->add_option("-o,--out", outfile, "output file (stdout otherwise)");
    add_common(fixtures, false);

    auto* dot = app.add_subcommand("export-dot", "emit the covering as graphviz");
    dot->add_option("file", file)->required();
    dot->add_option("-o,--out", outfile, "output file (stdout otherwise)");
    add_common(dot);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(file, opt);
        if (eval->parsed()) return cmd_eval(file, world, formula, explain, opt);
        if (properties->parsed()) return cmd_properties(file, opt);
        if (axioms->parsed()) return cmd_axioms(file, variant, derived, classify, opt);
        if (convert->parsed()) return cmd_convert(file, to, outfile, roundtrip, opt);
        if (unravel_cmd->parsed()) return cmd_unravel(file, depth, outfile, opt);
        if (bisim->parsed()) return cmd_bisim(src, dst, mapf, opt);
        if (fixtures->parsed()) return cmd_fixtures(list, name, outfile, all, dir, opt);
        if (dot->parsed()) return cmd_export_dot(file, outfile, opt);
    } catch (const UnknownWorldError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
