#include "twistbench/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "twistbench/corpus.hpp"

namespace twistbench::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!j.is_object()) fail(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) fail("unknown key '" + it.key() + "' in " + where);
    }
    if (j.contains("format") && j["format"] != 1) fail(where + ": unsupported format, expected 1");
}

const Json& need(const Json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) fail(where + ": missing key '" + key + "'");
    return j.at(key);
}

std::string as_id(const Json& v, const std::string& where)
{
    if (!v.is_string()) fail(where + ": expected a string identifier");
    auto s = v.get<std::string>();
    if (s.empty()) fail(where + ": empty identifier");
    if (s.find('|') != std::string::npos) fail(where + ": identifier '" + s + "' contains '|'");
    return s;
}

std::int64_t as_int(const Json& v, const std::string& where)
{
    if (!v.is_number_integer()) fail(where + ": expected an integer");
    return v.get<std::int64_t>();
}

std::vector<std::string> id_list(const Json& v, const std::string& where)
{
    if (!v.is_array()) fail(where + ": expected an array of identifiers");
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(as_id(x, where));
    return out;
}

const Json& as_map(const Json& v, const std::string& where)
{
    if (!v.is_object()) fail(where + ": expected an object");
    return v;
}

int object_of(const GradedGroupoid& g, const std::string& id, const std::string& where)
{
    auto x = g.base().find_object(id);
    if (!x) fail(where + ": unknown object '" + id + "'");
    return *x;
}

int morphism_of(const GradedGroupoid& g, const std::string& id, const std::string& where)
{
    auto h = g.base().find_morphism(id);
    if (!h) fail(where + ": unknown morphism '" + id + "'");
    return *h;
}

Json load_json(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        fail(path.string() + ": " + e.what());
    }
}

// inline object, or a path relative to dir; sub receives the directory of the data
Json resolve(const Json& v, const fs::path& dir, fs::path& sub, const std::string& where)
{
    if (v.is_string()) {
        fs::path p = dir / v.get<std::string>();
        sub = p.parent_path();
        return load_json(p);
    }
    if (!v.is_object()) fail(where + ": expected an inline object or a path");
    sub = dir;
    return v;
}

std::vector<int> parse_epsilon(const GroupTable& G, const Json& j, const std::string& where)
{
    std::vector<int> eps(G.order(), 1);
    if (j.is_null()) return eps;
    for (auto it = as_map(j, where).begin(); it != j.end(); ++it) {
        int a = -1;
        for (int i = 0; i < G.order(); ++i)
            if (G.element_id(i) == it.key()) a = i;
        if (a < 0) fail(where + ": unknown element '" + it.key() + "'");
        auto v = as_int(it.value(), where);
        if (v != 1 && v != -1) fail(where + ": grading values must be 1 or -1");
        eps[a] = static_cast<int>(v);
    }
    return eps;
}

Covering parse_covering(const Json& j, const fs::path& dir, const std::string& where)
{
    check_keys(j, {"base", "objects", "pi"}, where);
    fs::path sub;
    auto base = parse_groupoid(resolve(need(j, "base", where), dir, sub, where), sub);
    auto objs = id_list(need(j, "objects", where), where);
    const auto& pm = as_map(need(j, "pi", where), where);
    std::vector<int> pi;
    for (const auto& y : objs) {
        if (!pm.contains(y)) fail(where + ": pi has no image for '" + y + "'");
        pi.push_back(object_of(*base, as_id(pm[y], where), where));
    }
    if (pm.size() != objs.size()) fail(where + ": pi lists objects outside the cover");
    return covering_groupoid(base, objs, pi);
}

Json covering_to_json(const Covering& c)
{
    Json j;
    j["base"] = groupoid_to_json(*c.projection.target());
    const auto& g = *c.groupoid;
    j["objects"] = g.base().object_ids();
    Json pi = Json::object();
    for (int y = 0; y < g.num_objects(); ++y) pi[g.object_id(y)] = c.projection.target()->object_id(c.projection.obj(y));
    j["pi"] = pi;
    return j;
}

GradedGroupoid raw_to_graded(RawGroupoid r) { return GradedGroupoid(std::move(r.base), std::move(r.phi)); }

RawGroupoid from_graded(const GradedGroupoid& g) { return {g.base(), g.phi_values()}; }

std::vector<std::string> split_key(const std::string& key)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        auto bar = key.find('|', start);
        parts.push_back(key.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return parts;
}

Json matrix_to_json(const CMatrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(row);
    }
    return rows;
}

CMatrix parse_matrix(const Json& j, int rows, int cols, const std::string& where)
{
    if (!j.is_array()) fail(where + ": matrix must be an array of rows");
    if (j.empty()) {
        if (rows != 0 && cols != 0) fail(where + ": empty matrix, expected " + std::to_string(rows) + "x" + std::to_string(cols));
        return CMatrix(rows, cols);
    }
    const auto r = static_cast<int>(j.size());
    int c = -1;
    CMatrix m;
    for (int i = 0; i < r; ++i) {
        const auto& row = j[i];
        if (!row.is_array()) fail(where + ": matrix rows must be arrays");
        if (c < 0) {
            c = static_cast<int>(row.size());
            m.resize(r, c);
        }
        if (static_cast<int>(row.size()) != c) fail(where + ": ragged matrix");
        for (int k = 0; k < c; ++k) {
            const auto& v = row[k];
            if (v.is_number()) m(i, k) = Complex(v.get<double>(), 0);
            else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
                m(i, k) = Complex(v[0].get<double>(), v[1].get<double>());
            else fail(where + ": entries must be numbers or [re, im] pairs");
        }
    }
    return m;
}

Cochain reduce_values(const GroupoidPtr& g, int level, CoefficientModule coeff, std::vector<std::int64_t> v)
{
    for (auto& x : v) x = coeff.reduce(x);
    return Cochain(g, level, coeff, std::move(v));
}

Cochain parse_grading_values(const GroupoidPtr& g, const Json& j, const std::string& where)
{
    auto c = parse_cochain_values(g, 1, grading_coefficients(), j.is_null() ? Json::object() : j);
    if (!j.is_null())
        for (auto it = j.begin(); it != j.end(); ++it) {
            auto v = it.value().get<std::int64_t>();
            if (v != 0 && v != 1) fail(where + ": grading values must be 0 or 1");
        }
    return c;
}

Json body_json(const TwistedExtension& e)
{
    Json j;
    j["modulus"] = e.modulus();
    j["c"] = cochain_values_to_json(e.c());
    j["lambda"] = cochain_values_to_json(e.lambda());
    return j;
}

}  // namespace

std::string to_string(FileKind k)
{
    switch (k) {
    case FileKind::groupoid: return "groupoid";
    case FileKind::functor: return "functor";
    case FileKind::cochain: return "cochain";
    case FileKind::extension: return "extension";
    case FileKind::multiplicative: return "multiplicative";
    case FileKind::real_extension: return "real-extension";
    case FileKind::dfm: return "dfm";
    case FileKind::rep: return "rep";
    }
    return "?";
}

FileKind parse_kind(const std::string& s)
{
    for (auto k : {FileKind::groupoid, FileKind::functor, FileKind::cochain, FileKind::extension,
                   FileKind::multiplicative, FileKind::real_extension, FileKind::dfm, FileKind::rep})
        if (to_string(k) == s) return k;
    fail("unknown file kind '" + s + "'");
}

FileKind detect_kind(const Json& j)
{
    if (!j.is_object()) fail("a document must be a JSON object");
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) fail("kind must be a string");
        return parse_kind(j["kind"].get<std::string>());
    }
    if (j.contains("ops") || j.contains("dims")) return FileKind::rep;
    if (j.contains("omega") || (j.contains("group") && j.contains("modulus"))) return FileKind::multiplicative;
    if (j.contains("tau") || j.contains("beta")) return FileKind::real_extension;
    if (j.contains("cover")) return FileKind::dfm;
    if (j.contains("level") || j.contains("values")) return FileKind::cochain;
    if (j.contains("obj_map") || j.contains("mor_map") || j.contains("projection") || j.contains("terminal"))
        return FileKind::functor;
    if (j.contains("groupoid")) return FileKind::extension;
    if (j.contains("objects") || j.contains("group") || j.contains("action") || j.contains("covering") ||
        j.contains("conjugation"))
        return FileKind::groupoid;
    fail("cannot tell the kind of this document; add a \"kind\" key");
}

Document parse_document(const std::string& text, const fs::path& dir)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail("a document must be a JSON object");
    if (!j.contains("format")) fail("missing \"format\": 1");
    if (j["format"] != 1) fail("unsupported format, expected 1");
    auto kind = detect_kind(j);
    return {std::move(j), dir, kind};
}

Document read_document(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_document(ss.str(), path.parent_path());
    } catch (const ParseError& e) {
        fail(path.string() + ": " + e.what());
    }
}

// ---- groups and groupoids

GroupData parse_group(const Json& j)
{
    const std::string where = "group";
    check_keys(j, {"elements", "table", "epsilon"}, where);
    auto elems = id_list(need(j, "elements", where), where);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
        if (!index.emplace(elems[i], static_cast<int>(i)).second) fail(where + ": duplicate element '" + elems[i] + "'");
    const auto& t = need(j, "table", where);
    if (!t.is_array() || t.size() != elems.size()) fail(where + ": table must have one row per element");
    std::vector<std::vector<int>> table;
    for (const auto& row : t) {
        if (!row.is_array() || row.size() != elems.size()) fail(where + ": table rows must have one entry per element");
        std::vector<int> r;
        for (const auto& v : row) {
            auto id = as_id(v, where);
            auto it = index.find(id);
            if (it == index.end()) fail(where + ": unknown element '" + id + "' in the table");
            r.push_back(it->second);
        }
        table.push_back(std::move(r));
    }
    GroupTable G(elems, table);
    auto eps = parse_epsilon(G, j.contains("epsilon") ? j["epsilon"] : Json(), where + " epsilon");
    return {std::move(G), std::move(eps)};
}

Json group_to_json(const GroupTable& g, const std::vector<int>& epsilon)
{
    Json j;
    j["elements"] = g.element_ids();
    Json t = Json::array();
    for (int a = 0; a < g.order(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.element_id(g.mul(a, b)));
        t.push_back(row);
    }
    j["table"] = t;
    if (std::find(epsilon.begin(), epsilon.end(), -1) != epsilon.end()) {
        Json e = Json::object();
        for (int a = 0; a < g.order(); ++a) e[g.element_id(a)] = epsilon[a];
        j["epsilon"] = e;
    }
    return j;
}

RawGroupoid parse_raw_groupoid(const Json& jin, const fs::path& dir)
{
    const std::string where = "groupoid";
    fs::path sub;
    Json j = resolve(jin, dir, sub, where);
    if (j.contains("group")) {
        check_keys(j, {"format", "kind", "group"}, where);
        fs::path gs;
        auto G = parse_group(resolve(j["group"], sub, gs, "group"));
        return from_graded(delooping(G.group, G.epsilon));
    }
    if (j.contains("conjugation")) {
        check_keys(j, {"format", "kind", "conjugation"}, where);
        fs::path gs;
        auto G = parse_group(resolve(j["conjugation"], sub, gs, "conjugation"));
        return from_graded(corpus::conjugation_groupoid(G.group));
    }
    if (j.contains("action")) {
        check_keys(j, {"format", "kind", "action"}, where);
        const auto& a = j["action"];
        check_keys(a, {"set", "group", "act"}, "action");
        auto set = id_list(need(a, "set", "action"), "action set");
        auto G = parse_group(need(a, "group", "action"));
        const auto& act = as_map(need(a, "act", "action"), "action act");
        std::vector<std::vector<int>> table;
        for (const auto& x : set) {
            if (!act.contains(x)) fail("action act: no row for '" + x + "'");
            const auto& row = as_map(act[x], "action act");
            std::vector<int> r;
            for (int g = 0; g < G.group.order(); ++g) {
                const auto& gid = G.group.element_id(g);
                if (!row.contains(gid)) fail("action act: no value for " + x + "·" + gid);
                auto y = as_id(row[gid], "action act");
                auto it = std::find(set.begin(), set.end(), y);
                if (it == set.end()) fail("action act: unknown point '" + y + "'");
                r.push_back(static_cast<int>(it - set.begin()));
            }
            if (row.size() != static_cast<std::size_t>(G.group.order())) fail("action act: unknown element in row '" + x + "'");
            table.push_back(std::move(r));
        }
        if (act.size() != set.size()) fail("action act: rows for points outside the set");
        return from_graded(action_groupoid(set, G.group, table, G.epsilon));
    }
    if (j.contains("covering")) {
        check_keys(j, {"format", "kind", "covering"}, where);
        return from_graded(*parse_covering(j["covering"], sub, "covering").groupoid);
    }

    check_keys(j, {"format", "kind", "objects", "morphisms", "compose", "identities", "inverses", "phi"}, where);
    auto objects = id_list(need(j, "objects", where), where + " objects");
    const auto& ms = need(j, "morphisms", where);
    if (!ms.is_array()) fail(where + ": morphisms must be an array");
    std::vector<MorphismRecord> records;
    for (const auto& m : ms) {
        check_keys(m, {"id", "src", "tgt"}, "morphism");
        records.push_back({as_id(need(m, "id", "morphism"), "morphism id"), as_id(need(m, "src", "morphism"), "morphism src"),
                           as_id(need(m, "tgt", "morphism"), "morphism tgt")});
    }
    std::vector<std::array<std::string, 3>> compose;
    if (j.contains("compose")) {
        if (!j["compose"].is_array()) fail(where + ": compose must be an array of triples");
        for (const auto& t : j["compose"]) {
            if (!t.is_array() || t.size() != 3) fail(where + ": compose entries must be [g1, g2, g1∘g2]");
            compose.push_back({as_id(t[0], "compose"), as_id(t[1], "compose"), as_id(t[2], "compose")});
        }
    }
    auto pairs = [&](const char* key) {
        std::vector<std::pair<std::string, std::string>> out;
        if (!j.contains(key)) return out;
        const auto& m = as_map(j[key], where + " " + key);
        for (auto it = m.begin(); it != m.end(); ++it) out.emplace_back(it.key(), as_id(it.value(), key));
        return out;
    };
    auto base = FiniteGroupoid::from_records(objects, records, compose, pairs("identities"), pairs("inverses"));
    std::vector<int> phi(base.num_morphisms(), 1);
    if (j.contains("phi")) {
        const auto& p = as_map(j["phi"], where + " phi");
        for (auto it = p.begin(); it != p.end(); ++it) {
            auto h = base.find_morphism(it.key());
            if (!h) fail(where + " phi: unknown morphism '" + it.key() + "'");
            auto v = as_int(it.value(), "phi");
            if (v != 1 && v != -1) fail(where + " phi: values must be 1 or -1");
            phi[*h] = static_cast<int>(v);
        }
    }
    return {std::move(base), std::move(phi)};
}

ValidationReport validate_raw_groupoid(const RawGroupoid& g)
{
    auto r = validate_groupoid(g.base);
    if (r.ok()) r = validate_grading(g.base, g.phi);
    return r;
}

GroupoidPtr parse_groupoid(const Json& j, const fs::path& dir) { return share(raw_to_graded(parse_raw_groupoid(j, dir))); }

Json groupoid_to_json(const GradedGroupoid& g)
{
    Json j;
    j["objects"] = g.base().object_ids();
    Json ms = Json::array();
    for (int h = 0; h < g.num_morphisms(); ++h)
        ms.push_back({{"id", g.morphism_id(h)}, {"src", g.object_id(g.src(h))}, {"tgt", g.object_id(g.tgt(h))}});
    j["morphisms"] = ms;
    Json comp = Json::array();
    for (int a = 0; a < g.num_morphisms(); ++a)
        for (int b : g.base().into(g.src(a)))
            comp.push_back(Json::array({g.morphism_id(a), g.morphism_id(b), g.morphism_id(g.compose(a, b))}));
    j["compose"] = comp;
    Json ids = Json::object();
    for (int x = 0; x < g.num_objects(); ++x) ids[g.object_id(x)] = g.morphism_id(g.identity(x));
    j["identities"] = ids;
    Json inv = Json::object();
    for (int h = 0; h < g.num_morphisms(); ++h) inv[g.morphism_id(h)] = g.morphism_id(g.inverse(h));
    j["inverses"] = inv;
    if (!g.is_ungraded()) {
        Json phi = Json::object();
        for (int h = 0; h < g.num_morphisms(); ++h) phi[g.morphism_id(h)] = g.phi(h);
        j["phi"] = phi;
    }
    return j;
}

bool same_groupoid(const GradedGroupoid& a, const GradedGroupoid& b)
{
    if (a.base().object_ids() != b.base().object_ids() || a.base().morphism_ids() != b.base().morphism_ids())
        return false;
    for (int h = 0; h < a.num_morphisms(); ++h)
        if (a.src(h) != b.src(h) || a.tgt(h) != b.tgt(h) || a.phi(h) != b.phi(h)) return false;
    for (int x = 0; x < a.num_morphisms(); ++x)
        for (int y = 0; y < a.num_morphisms(); ++y)
            if (a.src(x) == a.tgt(y) && a.compose(x, y) != b.compose(x, y)) return false;
    return true;
}

// ---- functors

GroupoidFunctor parse_functor(const Json& jin, const fs::path& dir)
{
    const std::string where = "functor";
    fs::path sub;
    Json j = resolve(jin, dir, sub, where);
    if (j.contains("projection")) {
        check_keys(j, {"format", "kind", "projection"}, where);
        return parse_covering(j["projection"], sub, "projection").projection;
    }
    if (j.contains("terminal")) {
        check_keys(j, {"format", "kind", "terminal"}, where);
        fs::path s2;
        auto g = parse_groupoid(resolve(j["terminal"], sub, s2, "terminal"), s2);
        return terminal_functor(g, share(point_groupoid()));
    }
    check_keys(j, {"format", "kind", "source", "target", "obj_map", "mor_map"}, where);
    fs::path s1, s2;
    auto src = parse_groupoid(resolve(need(j, "source", where), sub, s1, "source"), s1);
    auto tgt = parse_groupoid(resolve(need(j, "target", where), sub, s2, "target"), s2);
    const auto& om = as_map(need(j, "obj_map", where), "obj_map");
    const auto& mm = as_map(need(j, "mor_map", where), "mor_map");
    std::vector<int> obj, mor;
    for (int x = 0; x < src->num_objects(); ++x) {
        const auto& id = src->object_id(x);
        if (!om.contains(id)) fail("obj_map: no image for '" + id + "'");
        obj.push_back(object_of(*tgt, as_id(om[id], "obj_map"), "obj_map"));
    }
    for (int h = 0; h < src->num_morphisms(); ++h) {
        const auto& id = src->morphism_id(h);
        if (!mm.contains(id)) fail("mor_map: no image for '" + id + "'");
        mor.push_back(morphism_of(*tgt, as_id(mm[id], "mor_map"), "mor_map"));
    }
    if (om.size() != obj.size()) fail("obj_map: unknown source object");
    if (mm.size() != mor.size()) fail("mor_map: unknown source morphism");
    return GroupoidFunctor(src, tgt, obj, mor);
}

Json functor_to_json(const GroupoidFunctor& F)
{
    Json j;
    j["format"] = 1;
    j["kind"] = "functor";
    const auto& s = *F.source();
    const auto& t = *F.target();
    j["source"] = groupoid_to_json(s);
    j["target"] = groupoid_to_json(t);
    Json om = Json::object(), mm = Json::object();
    for (int x = 0; x < s.num_objects(); ++x) om[s.object_id(x)] = t.object_id(F.obj(x));
    for (int h = 0; h < s.num_morphisms(); ++h) mm[s.morphism_id(h)] = t.morphism_id(F.mor(h));
    j["obj_map"] = om;
    j["mor_map"] = mm;
    return j;
}

// ---- cochains

Cochain parse_cochain_values(const GroupoidPtr& g, int level, CoefficientModule coeff, const Json& values)
{
    const std::string where = "values";
    NerveLevel nerve(*g, level, default_limits().nerve_cap);
    std::vector<std::int64_t> v(nerve.size(), 0);
    if (values.is_null()) return Cochain(g, level, coeff, v);
    as_map(values, where);
    std::vector<int> t(std::max(level, 1));
    for (auto it = values.begin(); it != values.end(); ++it) {
        const auto& key = it.key();
        const auto w = where + " '" + key + "'";
        if (level == 0) {
            t[0] = object_of(*g, key, w);
        } else {
            auto parts = split_key(key);
            if (static_cast<int>(parts.size()) != level)
                fail(w + ": expected " + std::to_string(level) + " morphisms separated by '|'");
            for (int i = 0; i < level; ++i) t[i] = morphism_of(*g, parts[i], w);
            for (int i = 0; i + 1 < level; ++i)
                if (g->src(t[i]) != g->tgt(t[i + 1])) fail(w + ": not a composable tuple");
        }
        v[nerve.index_of(t.data())] = as_int(it.value(), w);
    }
    return reduce_values(g, level, coeff, std::move(v));
}

Json cochain_values_to_json(const Cochain& c, bool skip_zero)
{
    const auto& g = *c.groupoid();
    NerveLevel nerve(g, c.level(), std::max(default_limits().nerve_cap, c.size()));
    Json out = Json::object();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!skip_zero || c.value(i) != 0) out[tuple_key(g, nerve.tuple(i), c.level())] = c.value(i);
    return out;
}

Cochain parse_cochain(const Json& j, const fs::path& dir)
{
    const std::string where = "cochain";
    check_keys(j, {"format", "kind", "groupoid", "level", "modulus", "involution", "values"}, where);
    fs::path sub;
    auto g = parse_groupoid(resolve(need(j, "groupoid", where), dir, sub, where), sub);
    auto level = as_int(need(j, "level", where), "level");
    if (level < 0) fail("level must be nonnegative");
    CoefficientModule coeff;
    coeff.modulus = as_int(need(j, "modulus", where), "modulus");
    check_modulus(coeff.modulus);
    if (j.contains("involution")) {
        if (!j["involution"].is_string()) fail("involution must be a string");
        coeff.involution = parse_involution(j["involution"].get<std::string>());
    }
    return parse_cochain_values(g, static_cast<int>(level), coeff, j.contains("values") ? j["values"] : Json());
}

Json cochain_to_json(const Cochain& c)
{
    Json j;
    j["format"] = 1;
    j["kind"] = "cochain";
    j["groupoid"] = groupoid_to_json(*c.groupoid());
    j["level"] = c.level();
    j["modulus"] = c.coefficients().modulus;
    j["involution"] = to_string(c.coefficients().involution);
    j["values"] = cochain_values_to_json(c);
    return j;
}

// ---- extensions

TwistedExtension parse_extension_body(const GroupoidPtr& g, const Json& j)
{
    const std::string where = "extension";
    check_keys(j, {"format", "modulus", "c", "lambda"}, where);
    auto m = as_int(need(j, "modulus", where), "modulus");
    check_modulus(m);
    if (m == 0) throw InvalidError("extensions need a finite modulus");
    auto c = parse_grading_values(g, j.contains("c") ? j["c"] : Json(), "c");
    auto l = parse_cochain_values(g, 2, phase_coefficients(m), j.contains("lambda") ? j["lambda"] : Json());
    return TwistedExtension(c, l);
}

ExtensionFile parse_extension_file(const Json& jin, const fs::path& dir)
{
    const std::string where = "extension";
    fs::path sub;
    Json j = resolve(jin, dir, sub, where);
    check_keys(j, {"format", "kind", "groupoid", "modulus", "c", "lambda", "alpha"}, where);
    fs::path gsub;
    auto g = parse_groupoid(resolve(need(j, "groupoid", where), sub, gsub, "groupoid"), gsub);
    Json body = j;
    body.erase("kind");
    body.erase("groupoid");
    body.erase("alpha");
    ExtensionFile f{parse_extension_body(g, body), std::nullopt};
    if (j.contains("alpha")) {
        auto a = parse_cochain_values(g, 0, grading_coefficients(), j["alpha"]);
        for (auto it = j["alpha"].begin(); it != j["alpha"].end(); ++it)
            if (it.value() != 0 && it.value() != 1) fail("alpha values must be 0 or 1");
        f.alpha = a;
    }
    return f;
}

TwistedExtension parse_extension(const Json& j, const fs::path& dir) { return parse_extension_file(j, dir).extension; }

Json extension_to_json(const TwistedExtension& e, const std::optional<Cochain>& alpha)
{
    Json j;
    j["format"] = 1;
    j["kind"] = "extension";
    j["groupoid"] = groupoid_to_json(*e.groupoid());
    j["modulus"] = e.modulus();
    j["c"] = cochain_values_to_json(e.c());
    j["lambda"] = cochain_values_to_json(e.lambda());
    if (alpha) j["alpha"] = cochain_values_to_json(*alpha, false);
    return j;
}

TwistedExtension rehome(const TwistedExtension& e, const GroupoidPtr& g)
{
    if (e.groupoid() == g) return e;
    if (!same_groupoid(*e.groupoid(), *g)) throw InvalidError("extension lives on a different groupoid");
    return TwistedExtension(Cochain(g, 1, e.c().coefficients(), e.c().values()),
                            Cochain(g, 2, e.lambda().coefficients(), e.lambda().values()));
}

// ---- multiplicative twistings

MultiplicativeTwisting parse_multiplicative(const Json& j)
{
    const std::string where = "multiplicative";
    check_keys(j, {"format", "kind", "group", "modulus", "omega"}, where);
    auto G = parse_group(need(j, "group", where)).group;
    auto m = as_int(need(j, "modulus", where), "modulus");
    check_modulus(m);
    if (m == 0) throw InvalidError("multiplicative twistings need a finite modulus");
    const std::size_t n = G.order();
    std::vector<std::int64_t> omega(n * n * n, 0);
    if (j.contains("omega")) {
        const auto& om = as_map(j["omega"], "omega");
        std::map<std::string, int> index;
        for (int a = 0; a < G.order(); ++a) index[G.element_id(a)] = a;
        for (auto it = om.begin(); it != om.end(); ++it) {
            auto parts = split_key(it.key());
            if (parts.size() != 3) fail("omega '" + it.key() + "': expected g|h|k");
            std::size_t k = 0;
            for (const auto& p : parts) {
                auto f = index.find(p);
                if (f == index.end()) fail("omega '" + it.key() + "': unknown element '" + p + "'");
                k = k * n + f->second;
            }
            omega[k] = mod_reduce(as_int(it.value(), "omega"), m);
        }
    }
    return MultiplicativeTwisting{std::move(G), m, std::move(omega)};
}

Json multiplicative_to_json(const MultiplicativeTwisting& t)
{
    Json j;
    j["format"] = 1;
    j["kind"] = "multiplicative";
    j["group"] = group_to_json(t.group);
    j["modulus"] = t.modulus;
    Json om = Json::object();
    const int n = t.group.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (t.at(a, b, c))
                    om[t.group.element_id(a) + "|" + t.group.element_id(b) + "|" + t.group.element_id(c)] = t.at(a, b, c);
    j["omega"] = om;
    return j;
}

// ---- Real central extensions

RealCentralExtension parse_real_extension(const Json& j, const fs::path& dir)
{
    const std::string where = "real-extension";
    check_keys(j, {"format", "kind", "groupoid", "tau", "modulus", "lambda", "beta"}, where);
    fs::path sub;
    auto g = parse_groupoid(resolve(need(j, "groupoid", where), dir, sub, "groupoid"), sub);
    const auto& tj = need(j, "tau", where);
    std::vector<int> obj(g->num_objects()), mor(g->num_morphisms());
    if (tj == "identity") {
        for (int x = 0; x < g->num_objects(); ++x) obj[x] = x;
        for (int h = 0; h < g->num_morphisms(); ++h) mor[h] = h;
    } else {
        check_keys(tj, {"objects", "morphisms"}, "tau");
        const auto& om = as_map(need(tj, "objects", "tau"), "tau objects");
        const auto& mm = as_map(need(tj, "morphisms", "tau"), "tau morphisms");
        for (int x = 0; x < g->num_objects(); ++x) {
            const auto& id = g->object_id(x);
            obj[x] = om.contains(id) ? object_of(*g, as_id(om[id], "tau"), "tau") : x;
        }
        for (int h = 0; h < g->num_morphisms(); ++h) {
            const auto& id = g->morphism_id(h);
            mor[h] = mm.contains(id) ? morphism_of(*g, as_id(mm[id], "tau"), "tau") : h;
        }
        for (auto it = om.begin(); it != om.end(); ++it) object_of(*g, it.key(), "tau objects");
        for (auto it = mm.begin(); it != mm.end(); ++it) morphism_of(*g, it.key(), "tau morphisms");
    }
    RealStructure real(GroupoidFunctor(g, g, obj, mor));
    auto m = as_int(need(j, "modulus", where), "modulus");
    check_modulus(m);
    if (m == 0) throw InvalidError("Real extensions need a finite modulus");
    auto l = parse_cochain_values(g, 2, phase_coefficients(m), j.contains("lambda") ? j["lambda"] : Json());
    auto b = parse_cochain_values(g, 1, phase_coefficients(m), j.contains("beta") ? j["beta"] : Json());
    return RealCentralExtension{real, m, l, b};
}

Json real_extension_to_json(const RealCentralExtension& r)
{
    Json j;
    j["format"] = 1;
    j["kind"] = "real-extension";
    const auto& g = *r.real.base();
    j["groupoid"] = groupoid_to_json(g);
    Json om = Json::object(), mm = Json::object();
    for (int x = 0; x < g.num_objects(); ++x) om[g.object_id(x)] = g.object_id(r.real.tau_obj(x));
    for (int h = 0; h < g.num_morphisms(); ++h) mm[g.morphism_id(h)] = g.morphism_id(r.real.tau_mor(h));
    j["tau"] = {{"objects", om}, {"morphisms", mm}};
    j["modulus"] = r.modulus;
    j["lambda"] = cochain_values_to_json(r.lambda);
    j["beta"] = cochain_values_to_json(r.beta);
    return j;
}

// ---- DFM twistings

DFMTwisting parse_dfm(const Json& j, const fs::path& dir)
{
    const std::string where = "dfm";
    check_keys(j, {"format", "kind", "cover", "d", "modulus", "c", "lambda"}, where);
    auto cover = parse_covering(need(j, "cover", where), dir, "cover");
    const auto& g = cover.groupoid;
    std::vector<std::int64_t> d(g->num_objects(), 0);
    if (j.contains("d")) {
        const auto& dm = as_map(j["d"], "d");
        for (auto it = dm.begin(); it != dm.end(); ++it) d[object_of(*g, it.key(), "d")] = as_int(it.value(), "d");
    }
    Json body = {{"modulus", need(j, "modulus", where)}};
    if (j.contains("c")) body["c"] = j["c"];
    if (j.contains("lambda")) body["lambda"] = j["lambda"];
    return DFMTwisting{cover, d, parse_extension_body(g, body)};
}

Json dfm_to_json(const DFMTwisting& t)
{
    Json j;
    j["format"] = 1;
    j["kind"] = "dfm";
    j["cover"] = covering_to_json(t.cover);
    Json d = Json::object();
    for (int y = 0; y < t.cover.groupoid->num_objects(); ++y) d[t.cover.groupoid->object_id(y)] = t.d[y];
    j["d"] = d;
    j["modulus"] = t.extension.modulus();
    j["c"] = cochain_values_to_json(t.extension.c());
    j["lambda"] = cochain_values_to_json(t.extension.lambda());
    return j;
}

// ---- representations

TwistedMorphismData parse_rep(const Json& j, const fs::path& dir)
{
    const std::string where = "rep";
    check_keys(j, {"format", "kind", "extension", "target", "dims", "ops", "tolerance"}, where);
    fs::path sub;
    auto src = parse_extension(resolve(need(j, "extension", where), dir, sub, "extension"), sub);
    const auto& g = src.groupoid();
    auto tgt = j.contains("target") ? parse_extension_body(g, j["target"]) : TwistedExtension::trivial(g, src.modulus());
    SuperDims dims(g->num_objects());
    if (j.contains("dims")) {
        const auto& dm = as_map(j["dims"], "dims");
        for (auto it = dm.begin(); it != dm.end(); ++it) {
            const int x = object_of(*g, it.key(), "dims");
            const auto& v = it.value();
            if (!v.is_array() || v.size() != 2) fail("dims '" + it.key() + "': expected [p, q]");
            dims[x] = {static_cast<int>(as_int(v[0], "dims")), static_cast<int>(as_int(v[1], "dims"))};
        }
    }
    const Json ops_json = j.contains("ops") ? as_map(j["ops"], "ops") : Json::object();
    for (auto it = ops_json.begin(); it != ops_json.end(); ++it) morphism_of(*g, it.key(), "ops");
    std::vector<Operator> ops;
    for (int h = 0; h < g->num_morphisms(); ++h) {
        const auto& id = g->morphism_id(h);
        const int rows = dims[g->tgt(h)].total(), cols = dims[g->src(h)].total();
        if (!ops_json.contains(id)) {
            if (rows && cols) fail("ops: no operator for '" + id + "'");
            ops.push_back({CMatrix(rows, cols), g->phi(h) == -1});
            continue;
        }
        const auto& o = ops_json[id];
        check_keys(o, {"matrix", "antilinear"}, "op '" + id + "'");
        bool anti = false;
        if (o.contains("antilinear")) {
            if (!o["antilinear"].is_boolean()) fail("op '" + id + "': antilinear must be a boolean");
            anti = o["antilinear"].get<bool>();
        }
        ops.push_back({parse_matrix(need(o, "matrix", "op '" + id + "'"), rows, cols, "op '" + id + "'"), anti});
    }
    double tol = 1e-9;
    if (j.contains("tolerance")) {
        if (!j["tolerance"].is_number()) fail("tolerance must be a number");
        tol = j["tolerance"].get<double>();
    }
    return TwistedMorphismData(src, tgt, dims, ops, tol);
}

Json rep_to_json(const TwistedMorphismData& r)
{
    Json j;
    j["format"] = 1;
    j["kind"] = "rep";
    auto ext = extension_to_json(r.source());
    ext.erase("format");
    ext.erase("kind");
    j["extension"] = ext;
    if (!(r.target() == TwistedExtension::trivial(r.groupoid(), r.target().modulus())) ||
        r.target().modulus() != r.source().modulus())
        j["target"] = body_json(r.target());
    const auto& g = *r.groupoid();
    Json dims = Json::object();
    for (int x = 0; x < g.num_objects(); ++x) dims[g.object_id(x)] = {r.dims()[x].even, r.dims()[x].odd};
    j["dims"] = dims;
    Json ops = Json::object();
    for (int h = 0; h < g.num_morphisms(); ++h)
        ops[g.morphism_id(h)] = {{"matrix", matrix_to_json(r.op(h).matrix)}, {"antilinear", r.op(h).antilinear}};
    j["ops"] = ops;
    j["tolerance"] = r.tolerance();
    return j;
}

// ---- validation

ValidationReport validate_document(const Document& d, const Limits& limits)
{
    try {
        switch (d.kind) {
        case FileKind::groupoid: return validate_raw_groupoid(parse_raw_groupoid(d.json, d.dir));
        case FileKind::functor: parse_functor(d.json, d.dir); return {};
        case FileKind::cochain: parse_cochain(d.json, d.dir); return {};
        case FileKind::extension: {
            auto f = parse_extension_file(d.json, d.dir);
            if (f.alpha) return validate_descriptor(TwoLineDescriptor{f.extension, *f.alpha}, limits);
            return validate_extension(f.extension, limits);
        }
        case FileKind::multiplicative: return validate_multiplicative(parse_multiplicative(d.json), limits);
        case FileKind::real_extension: return validate_real_extension(parse_real_extension(d.json, d.dir), limits);
        case FileKind::dfm: return validate_dfm(parse_dfm(d.json, d.dir), limits);
        case FileKind::rep: {
            auto r = parse_rep(d.json, d.dir);
            ValidationReport out;
            out.merge(validate_extension(r.source(), limits), "source ");
            out.merge(validate_extension(r.target(), limits), "target ");
            if (out.ok()) out = validate_rep(r, limits);
            return out;
        }
        }
    } catch (const InvalidError& e) {
        ValidationReport r = e.report();
        if (r.ok()) r.add("invalid", e.what());
        return r;
    }
    return {};
}

Json report_to_json(const ValidationReport& r)
{
    Json v = Json::array();
    for (const auto& x : r.violations()) v.push_back({{"rule", x.rule}, {"witness", x.witness}});
    return {{"valid", r.ok()}, {"violations", v}};
}

}  // namespace twistbench::io
