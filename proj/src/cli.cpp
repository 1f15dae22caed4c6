#include "twistbench/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "twistbench/io.hpp"

namespace twistbench::cli {

namespace {

using io::Json;

struct Options {
    std::string format = "text";
    std::string output;
    std::optional<std::int64_t> modulus;
    int degree = 2;
    std::string involution = "negation";
    std::optional<std::size_t> cap;
    std::optional<double> tolerance;
    std::uint64_t seed = 1;
    bool analyze = false;
    bool stability = false;
    std::vector<std::string> paths;
};

bool json_out(const Options& o) { return o.format == "json"; }

Limits limits_of(const Options& o)
{
    Limits l = default_limits();
    if (o.cap) l.nerve_cap = *o.cap;
    return l;
}

void check_options(const Options& o)
{
    if (o.modulus && (*o.modulus < 0 || *o.modulus == 1))
        throw ParseError("--modulus must be 0 or at least 2, got " + std::to_string(*o.modulus));
    if (o.degree < 0) throw ParseError("--degree must be nonnegative");
    if (o.cap && *o.cap == 0) throw ParseError("--cap must be positive");
    if (o.tolerance && !(*o.tolerance > 0)) throw ParseError("--tolerance must be positive");
    parse_involution(o.involution);
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Json coords_json(const std::vector<std::int64_t>& c)
{
    Json a = Json::array();
    for (auto v : c) a.push_back(v);
    return a;
}

std::string coords_text(const CohomologyClass& c)
{
    if (c.is_zero()) return "0";
    std::string s = "[";
    for (std::size_t i = 0; i < c.coordinates.size(); ++i) s += (i ? ", " : "") + std::to_string(c.coordinates[i]);
    return s + "]";
}

Json class_json(const CohomologyClass& c)
{
    return {{"group", c.group.to_string()}, {"invariant_factors", coords_json(c.group.invariant_factors)},
            {"coordinates", coords_json(c.coordinates)}};
}

std::string class_pair(const ExtensionClass& k) { return "(" + coords_text(k.c) + ", " + coords_text(k.lambda) + ")"; }

Json extension_class_json(const ExtensionClass& k) { return {{"c", class_json(k.c)}, {"lambda", class_json(k.lambda)}}; }

// text lines and the JSON report of one command
struct Result {
    std::vector<std::string> lines;
    Json json = Json::object();
    int code = 0;
    bool to_stdout = false;  // --output already holds the product
};

void emit(const Options& o, const Result& r, std::ostream& out)
{
    std::ostringstream body;
    if (json_out(o)) body << r.json.dump(2) << "\n";
    else
        for (const auto& l : r.lines) body << l << "\n";
    if (o.output.empty() || r.to_stdout) {
        out << body.str();
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw ParseError("cannot write " + o.output);
    f << body.str();
}

void write_file(const std::string& path, const Json& j)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + path);
    f << j.dump(2) << "\n";
}

void add_report(Result& r, const ValidationReport& rep, const std::string& indent = "  ")
{
    for (const auto& v : rep.violations()) r.lines.push_back(indent + v.rule + ": " + v.witness);
}

io::Document expect(const std::string& path, std::initializer_list<io::FileKind> kinds)
{
    auto d = io::read_document(path);
    for (auto k : kinds)
        if (d.kind == k) return d;
    std::string names;
    for (auto k : kinds) names += (names.empty() ? "" : " or ") + io::to_string(k);
    throw ParseError(path + ": expected a " + names + " file, found " + io::to_string(d.kind));
}

void require_ok(const ValidationReport& r, const std::string& what)
{
    if (!r.ok()) throw InvalidError(what + " is invalid", r);
}

Result cmd_validate(const Options& o)
{
    Result r;
    Json files = Json::array();
    bool all = true;
    for (const auto& p : o.paths) {
        auto d = io::read_document(p);
        ValidationReport rep;
        try {
            rep = io::validate_document(d, limits_of(o));
        } catch (const ParseError& e) {
            throw ParseError(p + ": " + e.what());
        }
        all = all && rep.ok();
        r.lines.push_back(p + ": " + (rep.ok() ? "valid" : "invalid") + " (" + io::to_string(d.kind) + ")");
        add_report(r, rep);
        auto j = io::report_to_json(rep);
        files.push_back({{"path", p}, {"kind", io::to_string(d.kind)}, {"valid", j["valid"]}, {"violations", j["violations"]}});
    }
    r.json = {{"command", "validate"}, {"valid", all}, {"files", files}};
    r.code = all ? 0 : 1;
    return r;
}

Result cmd_cohomology(const Options& o)
{
    auto d = expect(o.paths.at(0), {io::FileKind::groupoid});
    auto raw = io::parse_raw_groupoid(d.json, d.dir);
    require_ok(io::validate_raw_groupoid(raw), "groupoid");
    auto g = io::parse_groupoid(d.json, d.dir);
    const auto limits = limits_of(o);
    CoefficientModule coeff{o.modulus.value_or(default_modulus(*g)), parse_involution(o.involution)};
    CohomologyGroup H(g, o.degree, coeff, limits);
    const auto group = H.group().to_string();
    const std::string coeff_name = coeff.modulus == 0 ? "Z" : "Z/" + std::to_string(coeff.modulus);
    Result r;
    r.lines.push_back("Ȟ^" + std::to_string(o.degree) + "((Γ,φ), " + coeff_name + " " + o.involution + ") = " + group);
    r.json = {{"command", "cohomology"},
              {"degree", o.degree},
              {"modulus", coeff.modulus},
              {"involution", o.involution},
              {"group", group},
              {"invariant_factors", coords_json(H.group().invariant_factors)},
              {"order", H.group().order().str()}};
    if (o.stability) {
        if (coeff.modulus == 0) throw UnsupportedError("the stability check needs a finite modulus");
        const auto L = circle_lift(*g, o.degree, coeff.involution, limits);
        // classes of H trivial in U(1); the images of H under k/m ↦ 2k/2m when `into` is given
        auto scan = [&](const CohomologyGroup& h, const CohomologyGroup* into, bool& lossless) {
            const auto m = h.coefficients().modulus;
            CohomologyGroup lifted(g, o.degree, {m * L, coeff.involution}, limits);
            std::size_t trivial = 0, total = 0;
            for (const auto& z : h.enumerate(limits.nerve_cap)) {
                auto v = h.representative(z).values();
                auto up = v;
                for (auto& x : up) x *= L;
                const bool t = lifted.solve_coboundary(Cochain(g, o.degree, lifted.coefficients(), up)).has_value();
                trivial += t;
                ++total;
                if (into) {
                    for (auto& x : v) x *= 2;
                    auto img = into->coordinates(Cochain(g, o.degree, into->coefficients(), v));
                    const bool killed = std::all_of(img.begin(), img.end(), [](std::int64_t x) { return x == 0; });
                    if (killed && !t) lossless = false;
                }
            }
            return total / trivial;
        };
        CohomologyGroup H2(g, o.degree, {2 * coeff.modulus, coeff.involution}, limits);
        bool lossless = true, unused = true;
        const auto seen_m = scan(H, &H2, lossless);
        const auto seen_2m = scan(H2, nullptr, unused);
        const auto m2 = std::to_string(2 * coeff.modulus);
        r.lines.push_back("stability: Z/" + std::to_string(coeff.modulus) + " -> Z/" + m2 + " " +
                          (lossless ? "loses no" : "loses") + " U(1) classes; U(1) classes seen: " +
                          std::to_string(seen_m) + " at m, " + std::to_string(seen_2m) + " at 2m" +
                          (seen_m == seen_2m ? " (stable)" : " (grows)"));
        r.json["stability"] = {{"modulus", 2 * coeff.modulus},
                               {"group", H2.group().to_string()},
                               {"lossless", lossless},
                               {"circle_classes", {seen_m, seen_2m}},
                               {"stable", seen_m == seen_2m}};
    }
    return r;
}

Result cmd_classify(const Options& o)
{
    const auto& path = o.paths.at(0);
    auto d = expect(path, {io::FileKind::extension, io::FileKind::dfm, io::FileKind::cochain});
    const auto limits = limits_of(o);
    Result r;
    r.json["command"] = "classify";
    if (d.kind == io::FileKind::cochain) {
        auto c = io::parse_cochain(d.json, d.dir);
        auto k = reduce_to_class(c, limits);
        r.lines.push_back("class: " + coords_text(k) + " in " + k.group.to_string());
        r.json["class"] = class_json(k);
        return r;
    }
    std::optional<TwistedExtension> e;
    std::optional<Cochain> alpha;
    if (d.kind == io::FileKind::dfm) {
        auto t = io::parse_dfm(d.json, d.dir);
        require_ok(validate_dfm(t, limits), "DFM twisting");
        auto desc = dfm_to_descriptor(t, limits);
        e = desc.extension;
        alpha = desc.alpha;
    } else {
        auto f = io::parse_extension_file(d.json, d.dir);
        if (f.alpha) require_ok(validate_descriptor({f.extension, *f.alpha}, limits), "descriptor");
        else require_ok(validate_extension(f.extension, limits), "extension");
        e = f.extension;
        alpha = f.alpha;
    }
    auto k = extension_class(*e, limits);
    r.lines.push_back("class: " + class_pair(k));
    r.lines.push_back("Ȟ¹(Γ, Z/2) = " + k.c.group.to_string() + ", Ȟ²((Γ,φ), Z/" + std::to_string(e->modulus()) +
                      ") = " + k.lambda.group.to_string());
    r.json["modulus"] = e->modulus();
    r.json["class"] = extension_class_json(k);
    if (alpha) {
        const auto& g = *e->groupoid();
        std::string line = "alpha:";
        Json a = Json::object();
        for (int x = 0; x < g.num_objects(); ++x) {
            line += " " + g.object_id(x) + "=" + std::to_string(alpha->value(x));
            a[g.object_id(x)] = alpha->value(x);
        }
        r.lines.push_back(line);
        r.json["alpha"] = a;
    }
    return r;
}

Result cmd_transgress(const Options& o, std::ostream& out)
{
    auto d = expect(o.paths.at(0), {io::FileKind::multiplicative});
    const auto limits = limits_of(o);
    auto t = io::parse_multiplicative(d.json);
    require_ok(validate_multiplicative(t, limits), "multiplicative twisting");
    auto e = transgress(t, limits);
    require_ok(validate_extension(e, limits), "transgressed extension");
    auto j = io::extension_to_json(e);
    Result r;
    if (o.output.empty()) {
        out << j.dump(2) << "\n";
        r.code = -1;
        return r;
    }
    write_file(o.output, j);
    auto k = extension_class(e, limits);
    r.to_stdout = true;
    r.lines.push_back("wrote " + o.output + ": extension on G⫽G with " + std::to_string(e.groupoid()->num_objects()) +
                      " objects, class " + class_pair(k));
    r.json = {{"command", "transgress"}, {"output", o.output}, {"class", extension_class_json(k)}};
    return r;
}

Result cmd_reps(const Options& o)
{
    auto d = expect(o.paths.at(0), {io::FileKind::rep});
    const auto limits = limits_of(o);
    auto rep = io::parse_rep(d.json, d.dir);
    if (o.tolerance) rep = TwistedMorphismData(rep.source(), rep.target(), rep.dims(), rep.ops(), *o.tolerance);
    ValidationReport report;
    report.merge(validate_extension(rep.source(), limits), "source ");
    report.merge(validate_extension(rep.target(), limits), "target ");
    if (report.ok()) report = validate_rep(rep, limits);
    Result r;
    r.json["command"] = "reps";
    r.json["valid"] = report.ok();
    if (!report.ok()) {
        r.lines.push_back("invalid");
        add_report(r, report);
        r.json["violations"] = io::report_to_json(report)["violations"];
        r.code = 1;
        return r;
    }
    const auto& g = *rep.groupoid();
    std::string dims = "dims:";
    Json dj = Json::object();
    for (int x = 0; x < g.num_objects(); ++x) {
        const auto& sd = rep.dims()[x];
        dims += " " + g.object_id(x) + "=" + std::to_string(sd.even) + "|" + std::to_string(sd.odd);
        dj[g.object_id(x)] = {sd.even, sd.odd};
    }
    r.json["dims"] = dj;
    if (!o.analyze) {
        r.lines.push_back("valid");
        r.lines.push_back(dims);
        return r;
    }
    const bool irr = is_irreducible(rep, o.seed);
    std::string head = std::string("valid, ") + (irr ? "irreducible" : "reducible");
    r.json["irreducible"] = irr;
    if (irr) {
        auto type = endo_type(rep, o.seed);
        head += ", type " + to_string(type);
        r.json["endo_type"] = to_string(type);
    }
    auto end = intertwiner_space(rep, rep);
    r.lines.push_back(head);
    r.lines.push_back(dims);
    r.lines.push_back("End: real dimension " + std::to_string(end.real_dimension()) + ", even part " +
                      std::to_string(end.even_real_dimension()));
    r.json["intertwiners"] = {{"real_dimension", end.real_dimension()}, {"even_real_dimension", end.even_real_dimension()}};
    return r;
}

Result cmd_count_simples(const Options& o)
{
    auto d = expect(o.paths.at(0), {io::FileKind::extension, io::FileKind::multiplicative});
    const auto limits = limits_of(o);
    std::optional<TwistedExtension> e;
    if (d.kind == io::FileKind::multiplicative) {
        auto t = io::parse_multiplicative(d.json);
        require_ok(validate_multiplicative(t, limits), "multiplicative twisting");
        e = transgress(t, limits);
    } else {
        e = io::parse_extension(d.json, d.dir);
    }
    require_ok(validate_extension(*e, limits), "extension");
    auto s = count_simples(*e, o.tolerance.value_or(1e-9), limits);
    Result r;
    r.lines.push_back(std::to_string(s.count));
    r.lines.push_back("centre rank " + std::to_string(s.rank) + ", smallest kept " + fmt(s.smallest_kept) +
                      ", largest dropped " + fmt(s.largest_dropped) + ", tolerance " + fmt(s.tolerance));
    r.json = {{"command", "count-simples"},   {"count", s.count},
              {"rank", s.rank},               {"smallest_kept", fmt(s.smallest_kept)},
              {"largest_dropped", fmt(s.largest_dropped)}, {"tolerance", fmt(s.tolerance)}};
    return r;
}

Result cmd_compare(const Options& o)
{
    if (o.paths.size() != 1 && o.paths.size() != 3) throw ParseError("compare takes a functor file and optionally two extension files");
    auto d = expect(o.paths[0], {io::FileKind::functor});
    const auto limits = limits_of(o);
    auto F = io::parse_functor(d.json, d.dir);
    auto w = is_weak_equivalence(F);
    Result r;
    r.lines.push_back(std::string("weak equivalence: ") + (w.value ? "yes" : "no") + (w.value ? "" : " (" + w.witness + ")"));
    r.json = {{"command", "compare"}, {"weak_equivalence", w.value}};
    if (!w.value) r.json["witness"] = w.witness;
    if (o.paths.size() == 3) {
        std::vector<TwistedExtension> es;
        for (int i = 1; i <= 2; ++i) {
            auto di = expect(o.paths[i], {io::FileKind::extension});
            auto e = io::rehome(io::parse_extension(di.json, di.dir), F.target());
            require_ok(validate_extension(e, limits), o.paths[i]);
            es.push_back(e);
        }
        if (es[0].modulus() != es[1].modulus()) throw InvalidError("the two extensions use different moduli");
        ExtensionClassifier down(F.target(), es[0].modulus(), limits), up(F.source(), es[0].modulus(), limits);
        Json classes = Json::array();
        std::vector<ExtensionClass> kd, ku;
        for (int i = 0; i < 2; ++i) {
            kd.push_back(down.classify(es[i]));
            ku.push_back(up.classify(pullback_extension(es[i], F, limits)));
            r.lines.push_back(o.paths[i + 1] + ": " + class_pair(kd[i]) + " pulls back to " + class_pair(ku[i]));
            classes.push_back({{"target", extension_class_json(kd[i])}, {"pullback", extension_class_json(ku[i])}});
        }
        const bool same_down = kd[0] == kd[1], same_up = ku[0] == ku[1];
        r.lines.push_back(std::string("classes equal: ") + (same_down ? "yes" : "no") + ", after pullback: " +
                          (same_up ? "yes" : "no"));
        r.json["classes"] = classes;
        r.json["equal"] = same_down;
        r.json["equal_after_pullback"] = same_up;
    }
    return r;
}

const char* error_kind(int code)
{
    switch (code) {
    case 1: return "invalid";
    case 2: return "parse";
    case 3: return "unsupported";
    case 4: return "cap-exceeded";
    }
    return "error";
}

int report_error(const Options& o, int code, const std::string& msg, const ValidationReport* rep, std::ostream& out,
                 std::ostream& err)
{
    err << "error: " << msg << "\n";
    if (json_out(o)) {
        Json j = {{"error", {{"code", code}, {"kind", error_kind(code)}, {"message", msg}}}};
        if (rep && !rep->ok()) j["error"]["violations"] = io::report_to_json(*rep)["violations"];
        out << j.dump(2) << "\n";
    }
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Twistings over finite graded groupoids", "twistbench"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output", o.output, "write the result to PATH");
    app.add_option("--modulus", o.modulus, "coefficient modulus m (0 for Z)");
    app.add_option("--degree", o.degree, "cohomology degree");
    app.add_option("--involution", o.involution, "trivial or negation")->check(CLI::IsMember({"trivial", "negation"}));
    app.add_option("--cap", o.cap, "nerve elements per level");
    app.add_option("--tolerance", o.tolerance, "numerical tolerance");
    app.add_option("--seed", o.seed, "seed for randomized checks");

    auto* validate = app.add_subcommand("validate", "validate files of any kind");
    validate->add_option("paths", o.paths)->required();
    auto* coh = app.add_subcommand("cohomology", "graded cohomology of a groupoid");
    coh->add_option("groupoid", o.paths)->required()->expected(1);
    coh->add_flag("--stability", o.stability, "check that Z/m -> Z/2m loses no U(1) classes");
    auto* classify = app.add_subcommand("classify", "class of an extension, DFM twisting or cocycle");
    classify->add_option("file", o.paths)->required()->expected(1);
    auto* trans = app.add_subcommand("transgress", "extension on G⫽G from a multiplicative twisting");
    trans->add_option("file", o.paths)->required()->expected(1);
    auto* reps = app.add_subcommand("reps", "validate and analyze a twisted representation");
    reps->add_option("file", o.paths)->required()->expected(1);
    reps->add_flag("--analyze", o.analyze, "irreducibility, endomorphism type and intertwiners");
    auto* count = app.add_subcommand("count-simples", "number of simple twisted representations");
    count->add_option("file", o.paths)->required()->expected(1);
    auto* compare = app.add_subcommand("compare", "weak equivalence and class transport");
    compare->add_option("files", o.paths)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return report_error(o, 2, e.what(), nullptr, out, err);
    }

    try {
        check_options(o);
        Result r;
        if (validate->parsed()) r = cmd_validate(o);
        else if (coh->parsed()) r = cmd_cohomology(o);
        else if (classify->parsed()) r = cmd_classify(o);
        else if (trans->parsed()) r = cmd_transgress(o, out);
        else if (reps->parsed()) r = cmd_reps(o);
        else if (count->parsed()) r = cmd_count_simples(o);
        else r = cmd_compare(o);
        if (r.code < 0) return 0;
        emit(o, r, out);
        return r.code;
    } catch (const InvalidError& e) {
        return report_error(o, 1, e.what(), &e.report(), out, err);
    } catch (const Error& e) {
        return report_error(o, e.exit_code(), e.what(), nullptr, out, err);
    } catch (const std::exception& e) {
        return report_error(o, 1, e.what(), nullptr, out, err);
    }
}

}  // namespace twistbench::cli
