#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "crepant/crepant.hpp"

using namespace crepant;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, cross_check = 3 };

constexpr std::size_t kListLimit = 64;
constexpr std::size_t kHVectorCellLimit = 200000;

struct Options {
    std::string format = "text";
    bool no_timing = false;
    std::string lattice;
    bool lambda_trace = false;
    std::string export_spec;
    std::string path;

    bool structured() const { return format == "structured"; }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Collects the report in both renderings; only one is printed.
struct Report {
    Json doc = Json::object();
    std::ostringstream text;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int finish(const Options& opt, int code) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        if (opt.structured()) {
            doc["exit_code"] = code;
            if (!opt.no_timing) doc["timing_ms"] = ms;
            std::cout << doc.dump(2) << "\n";
        } else {
            if (!opt.no_timing) text << "time: " << ms << " ms\n";
            std::cout << text.str();
        }
        return code;
    }
};

std::string read_file(const std::string& path) {
    if (path.empty()) throw UsageError("an input file is required");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string export_path(const Options& opt) {
    if (opt.export_spec.empty()) return {};
    const std::string prefix = "off:";
    if (opt.export_spec.rfind(prefix, 0) != 0 || opt.export_spec.size() == prefix.size())
        throw UsageError("--export expects off:<path>, got '" + opt.export_spec + "'");
    return opt.export_spec.substr(prefix.size());
}

void write_off_file(const std::string& path, const Triangulation& t) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    write_off(out, t);
}

void require_no_lattice(const Options& opt, const char* cmd) {
    if (!opt.lattice.empty()) throw UsageError(std::string("--lattice is not accepted by '") + cmd + "'");
}

struct Loaded {
    ParsedInput input;
    ValidationReport validation;
    std::optional<CanonicalForm> canonical;
};

Loaded load(const Options& opt) {
    Loaded l;
    l.input = parse_datum(read_file(opt.path));
    l.validation = validate(l.input.datum);
    if (l.validation.valid) l.canonical = canonicalize(l.input.datum);
    return l;
}

void report_validation(const Loaded& l, Report& r) {
    const auto& v = l.validation;
    r.doc["valid"] = v.valid;
    r.doc["input_form"] = l.input.form == InputForm::sets ? "sets" : "forest";
    r.doc["input"] = datum_json(l.input.datum);
    if (!v.valid) {
        r.doc["clause"] = v.clause;
        Json off = Json::array();
        for (const auto& s : v.offending) off.push_back(s);
        r.doc["offending"] = off;
        r.doc["message"] = v.message;
        r.text << "verdict: invalid\nclause: " << v.clause << "\nmessage: " << v.message << "\noffending:";
        for (const auto& s : v.offending) r.text << " " << format_set(s);
        r.text << "\n";
    }
}

void report_canonical(const CanonicalForm& c, Report& r) {
    auto forest = to_forest(c.datum);
    r.doc["canonical"] = datum_json(c.datum);
    r.doc["relabelling"] = c.theta;
    r.doc["forest"] = forest_json(forest);
    r.doc["splitting_codimension"] = splitting_codimension(forest);
    r.text << "canonical datum:\n" << write_sets(c.datum) << "relabelling:";
    for (std::size_t i = 0; i < c.theta.size(); ++i) r.text << " " << i + 1 << "->" << c.theta[i];
    r.text << "\nforest:\n" << forest_text(forest);
    r.text << "splitting codimension: " << splitting_codimension(forest) << "\n";
}

/// Shared front matter for the pipeline commands. Returns false after reporting an invalid datum.
bool front(const Options& opt, Report& r, Loaded& l) {
    l = load(opt);
    report_validation(l, r);
    if (!l.validation.valid) return false;
    r.doc["canonical"] = datum_json(l.canonical->datum);
    r.text << "datum: ";
    for (const auto& [s, w] : l.canonical->datum.entries()) r.text << format_set(s) << ":" << w << " ";
    r.text << "\n";
    return true;
}

int cmd_validate(const Options& opt) {
    require_no_lattice(opt, "validate");
    Report r;
    Loaded l = load(opt);
    report_validation(l, r);
    if (!l.validation.valid) return r.finish(opt, negative);
    r.text << "verdict: valid\n";
    report_canonical(*l.canonical, r);
    return r.finish(opt, ok);
}

int cmd_build(const Options& opt) {
    require_no_lattice(opt, "build");
    const auto off = export_path(opt);
    Report r;
    Loaded l;
    if (!front(opt, r, l)) return r.finish(opt, negative);
    const auto& datum = l.canonical->datum;
    auto g = build_forest_geometry(datum);
    auto dec = decompose(datum);
    auto t = triangulate(dec);
    const auto& cert = *t.certificate;

    r.doc["group_order"] = exact_json(g.group_order());
    r.doc["vertices"] = g.transformed;
    r.doc["decomposition"] = decomposition_json(dec.root);
    r.doc["triangulation"] = triangulation_json(t);
    if (opt.lambda_trace) r.doc["epsilon_trace"] = epsilon_trace_json(t.epsilon_trace);

    r.text << "group order: " << g.group_order() << "\nvertices:\n";
    for (const auto& v : g.transformed) r.text << "  " << vector_text(v) << "\n";
    r.text << "decomposition:\n" << decomposition_text(dec.root, 1);
    r.text << "triangulation: " << t.cell_count() << " cells, " << t.vertex_count() << " vertices, dim " << t.dim << "\n";
    if (t.cell_count() <= kListLimit)
        for (std::size_t c = 0; c < t.cell_count(); ++c) r.text << "  cell " << vector_text(t.cell(c)) << "\n";
    r.text << certificate_text(cert);
    if (opt.lambda_trace)
        for (const auto& s : t.epsilon_trace)
            r.text << "epsilon: dim " << s.dim << " lambda " << s.lambda << " epsilon " << s.epsilon << " (" << s.halvings
                   << " halvings, " << s.cross_walls << " cross walls)\n";
    if (!off.empty()) {
        write_off_file(off, t);
        r.doc["export"] = off;
        r.text << "exported OFF: " << off << "\n";
    }
    return r.finish(opt, cert.overall ? ok : cross_check);
}

void report_group(const std::vector<GroupElement>& elems, const std::vector<RationalVector>& divisors, Report& r) {
    std::map<int, std::size_t> by_age;
    for (const auto& e : elems) ++by_age[e.age];
    r.doc["group"] = group_json(elems);
    Json ex = Json::array();
    for (const auto& p : divisors) ex.push_back(exact_array(p));
    r.doc["exceptional_divisors"] = ex;

    r.text << "group: " << elems.size() << " elements; by age:";
    for (const auto& [age, n] : by_age) r.text << " " << age << ":" << n;
    r.text << "\n";
    if (elems.size() <= kListLimit)
        for (const auto& e : elems) r.text << "  " << vector_text(e.representative) << " age " << e.age << "\n";
    r.text << "exceptional divisors: " << divisors.size() << "\n";
    if (divisors.size() <= kListLimit)
        for (const auto& p : divisors) r.text << "  " << vector_text(p) << "\n";
}

int report_fan(const ResolutionFan& fan, Report& r) {
    auto crep = check_crepant(fan);
    auto smooth = check_smooth(fan);
    r.doc["fan"] = fan_json(fan);
    r.doc["crepant"] = crepancy_json(crep);
    r.doc["smooth"] = smoothness_json(smooth);
    r.text << "fan: " << fan.cone_count() << " cones, " << fan.rays.size() << " rays\n";
    if (fan.cone_count() <= kListLimit)
        for (std::size_t c = 0; c < fan.cone_count(); ++c) {
            r.text << "  cone";
            for (const auto& v : fan.cone(c)) r.text << " " << vector_text(v);
            r.text << "\n";
        }
    r.text << "crepant: " << (crep.ok ? "true" : "false") << "\nsmooth: " << (smooth.ok ? "true" : "false") << "\n";
    return crep.ok && smooth.ok ? ok : negative;
}

int cmd_resolve(const Options& opt) {
    Report r;
    if (!opt.lattice.empty()) {
        if (!opt.path.empty()) throw UsageError("give either an input file or --lattice, not both");
        auto n = parse_lattice(opt.lattice);
        r.doc["lattice"] = opt.lattice;
        r.text << "lattice: " << opt.lattice << "\n";
        report_group(enumerate_group(n), exceptional_divisors(n), r);
        if (n.dim() != 3) {
            r.doc["fan"] = nullptr;
            r.text << "fan: not constructed (direct lattice input supports d = 3)\n";
            return r.finish(opt, negative);
        }
        return r.finish(opt, report_fan(stellar_fan(n), r));
    }
    Loaded l;
    if (!front(opt, r, l)) return r.finish(opt, negative);
    auto g = build_forest_geometry(l.canonical->datum);
    auto t = triangulate(decompose(l.canonical->datum));
    r.doc["group_order"] = exact_json(g.group_order());
    r.text << "group order: " << g.group_order() << "\n";
    report_group(enumerate_group(g), exceptional_divisors(g), r);
    int code = report_fan(build_fan(g, t), r);
    if (!t.certificate->overall) code = cross_check;
    return r.finish(opt, code);
}

int cmd_cohomology(const Options& opt) {
    Report r;
    CohomologyReport c;
    if (!opt.lattice.empty()) {
        if (!opt.path.empty()) throw UsageError("give either an input file or --lattice, not both");
        auto n = parse_lattice(opt.lattice);
        std::vector<RationalVector> verts;
        for (std::size_t i = 0; i < n.dim(); ++i) verts.push_back(unit_vector(n.dim(), i));
        auto e = ehrhart_bruteforce(verts, n);
        c.d = static_cast<int>(n.dim());
        c.brute_force = e.delta;
        c.a = e.a;
        c.dims = e.delta;
        for (const auto& x : c.dims) c.euler += x;
        c.routes.push_back("brute-force Ehrhart counts");
        r.doc["lattice"] = opt.lattice;
        r.text << "lattice: " << opt.lattice << "\n";
    } else {
        Loaded l;
        if (!front(opt, r, l)) return r.finish(opt, negative);
        const auto& datum = l.canonical->datum;
        auto g = build_forest_geometry(datum);
        if (g.group_order() <= kHVectorCellLimit) {
            auto t = triangulate(decompose(datum));
            c = cohomology_dims(datum, &t);
        } else {
            c = cohomology_dims(datum);
        }
    }
    r.doc["cohomology"] = cohomology_json(c);
    r.text << cohomology_text(c);
    return r.finish(opt, ok);
}

int cmd_export(const Options& opt) {
    require_no_lattice(opt, "export");
    const auto off = export_path(opt);
    auto l = load(opt);
    if (!l.validation.valid) {
        Report r;
        report_validation(l, r);
        return r.finish(opt, negative);
    }
    const auto& datum = l.canonical->datum;
    auto g = build_forest_geometry(datum);
    auto dec = decompose(datum);
    auto t = triangulate(dec);
    if (opt.structured()) {
        Json doc;
        doc["canonical"] = datum_json(datum);
        doc["forest"] = forest_json(g.forest);
        doc["vertices"] = g.transformed;
        doc["decomposition"] = decomposition_json(dec.root);
        doc["triangulation"] = triangulation_json(t);
        doc["fan"] = fan_json(build_fan(g, t));
        if (!off.empty()) write_off_file(off, t);
        std::cout << doc.dump(2) << "\n";
    } else if (!off.empty()) {
        write_off_file(off, t);
        std::cout << "exported OFF: " << off << "\n";
    } else {
        write_off(std::cout, t);
    }
    return t.certificate->overall ? ok : cross_check;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified triangulations and resolution fans from special data"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "Report rendering")->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--no-timing", opt.no_timing, "Omit the timing field");
    app.add_option("--lattice", opt.lattice, "Inline lattice such as 1/7(3,3,1)");
    app.add_flag("--lambda-trace", opt.lambda_trace, "Print every epsilon chosen during refinement");
    app.add_option("--export", opt.export_spec, "Write the triangulation as OFF: off:<path>");

    using Handler = int (*)(const Options&);
    const std::vector<std::tuple<const char*, const char*, Handler>> commands = {
        {"validate", "Check a datum and print its canonical form", cmd_validate},
        {"build", "Construct and certify the triangulation", cmd_build},
        {"resolve", "Build the resolution fan and check it", cmd_resolve},
        {"cohomology", "Compare delta-vector routes and print Betti numbers", cmd_cohomology},
        {"export", "Write the triangulation (OFF) or the full structured document", cmd_export},
    };
    std::vector<std::pair<CLI::App*, Handler>> subs;
    for (const auto& [name, help, fn] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", opt.path, "Datum file");
        subs.emplace_back(sub, fn);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        for (const auto& [sub, fn] : subs)
            if (sub->parsed()) return fn(opt);
    } catch (const ParseError& e) {
        std::cerr << (opt.path.empty() ? std::string("--lattice") : opt.path) << ":" << e.what() << "\n";
        return usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid datum: " << e.what() << "\n";
        return negative;
    } catch (const Error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return cross_check;
    }
    return usage;
}
