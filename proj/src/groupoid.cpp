#include "twistbench/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <sstream>

namespace twistbench {

namespace {

constexpr std::size_t kMaxWitnesses = 20;

class RuleCollector {
public:
    explicit RuleCollector(ValidationReport& r) : report_(r) {}
    void add(const std::string& rule, const std::string& witness)
    {
        auto& n = counts_[rule];
        if (n++ < kMaxWitnesses) report_.add(rule, witness);
    }
    ~RuleCollector()
    {
        for (const auto& [rule, n] : counts_)
            if (n > kMaxWitnesses)
                report_.add(rule, "... and " + std::to_string(n - kMaxWitnesses) + " more");
    }

private:
    ValidationReport& report_;
    std::map<std::string, std::size_t> counts_;
};

std::vector<int> index_vector(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

void FiniteGroupoid::build_index()
{
    object_index_.clear();
    morphism_index_.clear();
    for (int i = 0; i < num_objects(); ++i)
        if (!object_index_.emplace(objects_[i], i).second)
            throw ParseError("duplicate object id '" + objects_[i] + "'");
    for (int i = 0; i < num_morphisms(); ++i)
        if (!morphism_index_.emplace(morphisms_[i], i).second)
            throw ParseError("duplicate morphism id '" + morphisms_[i] + "'");
}

void FiniteGroupoid::build_composition()
{
    into_.assign(num_objects(), {});
    slot_.assign(num_morphisms(), 0);
    for (int b = 0; b < num_morphisms(); ++b) {
        slot_[b] = static_cast<int>(into_[tgt_[b]].size());
        into_[tgt_[b]].push_back(b);
    }
    row_.assign(num_morphisms(), 0);
    std::size_t total = 0;
    for (int a = 0; a < num_morphisms(); ++a) {
        row_[a] = total;
        total += into_[src_[a]].size();
    }
    compose_.assign(total, -1);
    stray_.clear();
}

int FiniteGroupoid::stray(int g1, int g2) const
{
    if (stray_.empty()) return -1;
    auto it = stray_.find(static_cast<std::uint64_t>(g1) << 32 | static_cast<std::uint32_t>(g2));
    return it == stray_.end() ? -1 : it->second;
}

int FiniteGroupoid::object_index(const std::string& id) const
{
    auto it = object_index_.find(id);
    if (it == object_index_.end()) throw ParseError("unknown object '" + id + "'");
    return it->second;
}

int FiniteGroupoid::morphism_index(const std::string& id) const
{
    auto it = morphism_index_.find(id);
    if (it == morphism_index_.end()) throw ParseError("unknown morphism '" + id + "'");
    return it->second;
}

std::optional<int> FiniteGroupoid::find_object(const std::string& id) const
{
    auto it = object_index_.find(id);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> FiniteGroupoid::find_morphism(const std::string& id) const
{
    auto it = morphism_index_.find(id);
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
}

FiniteGroupoid FiniteGroupoid::from_records(
    const std::vector<std::string>& objects, const std::vector<MorphismRecord>& morphisms,
    const std::vector<std::array<std::string, 3>>& compose,
    const std::vector<std::pair<std::string, std::string>>& identities,
    const std::vector<std::pair<std::string, std::string>>& inverses)
{
    FiniteGroupoid g;
    g.objects_ = objects;
    for (const auto& m : morphisms) g.morphisms_.push_back(m.id);
    g.build_index();
    const int n = g.num_morphisms();
    for (const auto& m : morphisms) {
        g.src_.push_back(g.object_index(m.src));
        g.tgt_.push_back(g.object_index(m.tgt));
    }
    g.build_composition();
    for (const auto& [a, b, c] : compose) {
        int i = g.morphism_index(a), j = g.morphism_index(b), k = g.morphism_index(c);
        int& slot = g.composable(i, j) ? g.compose_[g.row_[i] + g.slot_[j]]
                                       : g.stray_.try_emplace(static_cast<std::uint64_t>(i) << 32 | static_cast<std::uint32_t>(j), -1).first->second;
        if (slot != -1 && slot != k)
            throw ParseError("conflicting compose entries for (" + a + ", " + b + ")");
        slot = k;
    }
    g.identity_.assign(g.num_objects(), -1);
    for (const auto& [x, e] : identities) g.identity_[g.object_index(x)] = g.morphism_index(e);
    g.inverse_.assign(n, -1);
    for (const auto& [a, b] : inverses) g.inverse_[g.morphism_index(a)] = g.morphism_index(b);
    return g;
}

FiniteGroupoid FiniteGroupoid::from_rule(std::vector<std::string> objects,
                                         std::vector<std::string> morphism_ids,
                                         std::vector<int> src, std::vector<int> tgt,
                                         const std::function<int(int, int)>& compose)
{
    FiniteGroupoid g;
    g.objects_ = std::move(objects);
    g.morphisms_ = std::move(morphism_ids);
    g.src_ = std::move(src);
    g.tgt_ = std::move(tgt);
    g.build_index();
    g.build_composition();
    const int n = g.num_morphisms();
    for (int i = 0; i < n; ++i)
        for (int j : g.into_[g.src_[i]]) g.compose_[g.row_[i] + g.slot_[j]] = compose(i, j);
    g.identity_.assign(g.num_objects(), -1);
    for (int e = 0; e < n; ++e) {
        const int x = g.src_[e];
        if (g.tgt_[e] != x || g.identity_[x] != -1) continue;
        bool unit = true;
        for (int h : g.into_[x])
            if (g.compose(e, h) != h) unit = false;
        for (int h = 0; h < n && unit; ++h)
            if (g.src_[h] == x && g.compose(h, e) != h) unit = false;
        if (unit) g.identity_[x] = e;
    }
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        const int e = g.identity_[g.src_[a]];
        if (e == -1) continue;
        for (int b : g.into_[g.src_[a]])
            if (g.src_[b] == g.tgt_[a] && g.compose(b, a) == e) {
                g.inverse_[a] = b;
                break;
            }
    }
    return g;
}

std::vector<int> FiniteGroupoid::hom(int from, int to) const
{
    std::vector<int> out;
    for (int g : into_[to])
        if (src_[g] == from) out.push_back(g);
    return out;
}

bool FiniteGroupoid::is_identity(int g) const { return identity_[src_[g]] == g; }

ValidationReport validate_groupoid(const FiniteGroupoid& g, bool check_associativity)
{
    ValidationReport report;
    {
        RuleCollector out(report);
        const int n = g.num_morphisms();
        auto name = [&](int h) { return h < 0 ? std::string("<undefined>") : g.morphism_id(h); };
        for (int x = 0; x < g.num_objects(); ++x) {
            int e = g.identity_[x];
            if (e < 0) {
                out.add("identity axiom", "object " + g.object_id(x) + " has no identity");
            } else if (g.src(e) != x || g.tgt(e) != x) {
                out.add("identity axiom", "identity " + name(e) + " of " + g.object_id(x) + " is not a loop at it");
            }
        }
        std::vector<std::pair<int, int>> strays;
        for (const auto& [key, c] : g.stray_) strays.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu)});
        std::sort(strays.begin(), strays.end());
        for (auto [a, b] : strays) out.add("composition domain", name(a) + " ∘ " + name(b) + " defined for non-composable pair");
        for (int a = 0; a < n; ++a)
            for (int b : g.into(g.src(a))) {
                int c = g.compose(a, b);
                if (c < 0) {
                    out.add("composition domain", name(a) + " ∘ " + name(b) + " is missing");
                } else if (g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a)) {
                    out.add("composition endpoints", name(a) + " ∘ " + name(b) + " = " + name(c));
                }
            }
        for (int h = 0; h < n; ++h) {
            int es = g.identity_[g.src(h)], et = g.identity_[g.tgt(h)];
            if (es >= 0 && g.compose(h, es) != h) out.add("unit axiom", name(h) + " ∘ " + name(es));
            if (et >= 0 && g.compose(et, h) != h) out.add("unit axiom", name(et) + " ∘ " + name(h));
        }
        for (int h = 0; h < n; ++h) {
            int inv = g.inverse_[h];
            if (inv < 0) {
                out.add("inverse axiom", name(h) + " has no inverse");
                continue;
            }
            int es = g.identity_[g.src(h)], et = g.identity_[g.tgt(h)];
            if (g.compose(inv, h) != es || g.compose(h, inv) != et || es < 0 || et < 0)
                out.add("inverse axiom", name(h));
        }
        if (check_associativity)
            for (int a = 0; a < n; ++a)
                for (int b : g.into(g.src(a))) {
                    int ab = g.compose(a, b);
                    if (ab < 0) continue;
                    for (int c : g.into(g.src(b))) {
                        int bc = g.compose(b, c);
                        if (bc < 0) continue;
                        int l = g.compose(ab, c), r = g.compose(a, bc);
                        if (l < 0 || l != r)
                            out.add("associativity", "(" + name(a) + ", " + name(b) + ", " + name(c) + ")");
                    }
                }
    }
    return report;
}

ValidationReport validate_grading(const FiniteGroupoid& g, const std::vector<int>& phi)
{
    ValidationReport report;
    if (static_cast<int>(phi.size()) != g.num_morphisms()) {
        report.add("grading shape", "expected one sign per morphism");
        return report;
    }
    RuleCollector out(report);
    for (int h = 0; h < g.num_morphisms(); ++h)
        if (phi[h] != 1 && phi[h] != -1) out.add("grading values", g.morphism_id(h));
    for (int x = 0; x < g.num_objects(); ++x) {
        int e = g.identity(x);
        if (e >= 0 && phi[e] != 1) out.add("grading unital", g.morphism_id(e));
    }
    for (int a = 0; a < g.num_morphisms(); ++a)
        for (int b : g.into(g.src(a))) {
            int c = g.compose(a, b);
            if (c >= 0 && phi[c] != phi[a] * phi[b])
                out.add("grading multiplicative", "(" + g.morphism_id(a) + ", " + g.morphism_id(b) + ")");
        }
    return report;
}

GradedGroupoid::GradedGroupoid(FiniteGroupoid base)
    : GradedGroupoid(base, std::vector<int>(base.num_morphisms(), 1))
{
}

GradedGroupoid::GradedGroupoid(FiniteGroupoid base, std::vector<int> phi)
    : GradedGroupoid(std::move(base), std::move(phi), true)
{
}

GradedGroupoid GradedGroupoid::assembled(FiniteGroupoid base, std::vector<int> phi)
{
    return GradedGroupoid(std::move(base), std::move(phi), false);
}

GradedGroupoid::GradedGroupoid(FiniteGroupoid base, std::vector<int> phi, bool check_associativity)
    : base_(std::move(base)), phi_(std::move(phi))
{
    auto report = validate_groupoid(base_, check_associativity);
    if (!report.ok()) throw InvalidError("invalid groupoid", report);
    report = validate_grading(base_, phi_);
    if (!report.ok()) throw InvalidError("invalid grading", report);
}

bool GradedGroupoid::is_ungraded() const
{
    return std::all_of(phi_.begin(), phi_.end(), [](int s) { return s == 1; });
}

GroupTable::GroupTable(std::vector<std::string> elements, std::vector<std::vector<int>> table)
    : elements_(std::move(elements)), table_(std::move(table))
{
    const int n = order();
    if (n == 0) throw InvalidError("group has no elements");
    if (static_cast<int>(table_.size()) != n) throw InvalidError("group table has wrong number of rows");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n) throw InvalidError("group table row has wrong length");
        for (int v : row)
            if (v < 0 || v >= n) throw InvalidError("group table entry out of range");
    }
    {
        std::set<std::string> seen(elements_.begin(), elements_.end());
        if (static_cast<int>(seen.size()) != n) throw ParseError("duplicate group element id");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool unit = true;
        for (int a = 0; a < n && unit; ++a) unit = table_[e][a] == a && table_[a][e] == a;
        if (unit) identity_ = e;
    }
    if (identity_ < 0) throw InvalidError("group table has no identity element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw InvalidError("group table is not associative at (" + elements_[a] + ", " +
                                       elements_[b] + ", " + elements_[c] + ")");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (int a = 0; a < n; ++a)
        if (inverse_[a] < 0) throw InvalidError("group element " + elements_[a] + " has no inverse");
}

int GroupTable::element_index(const std::string& id) const
{
    auto it = std::find(elements_.begin(), elements_.end(), id);
    if (it == elements_.end()) throw ParseError("unknown group element '" + id + "'");
    return static_cast<int>(it - elements_.begin());
}

int GroupTable::element_order(int a) const
{
    int k = 1;
    for (int p = a; p != identity_; p = table_[p][a]) ++k;
    return k;
}

ValidationReport validate_homomorphism(const GroupTable& g, const std::vector<int>& epsilon)
{
    ValidationReport report;
    if (static_cast<int>(epsilon.size()) != g.order()) {
        report.add("homomorphism shape", "expected one sign per element");
        return report;
    }
    for (int a = 0; a < g.order(); ++a) {
        if (epsilon[a] != 1 && epsilon[a] != -1) report.add("homomorphism values", g.element_id(a));
        for (int b = 0; b < g.order(); ++b)
            if (epsilon[g.mul(a, b)] != epsilon[a] * epsilon[b]) {
                report.add("homomorphism", "(" + g.element_id(a) + ", " + g.element_id(b) + ")");
                return report;
            }
    }
    return report;
}

ValidationReport validate_functor(const GradedGroupoid& source, const GradedGroupoid& target,
                                  const std::vector<int>& obj_map, const std::vector<int>& mor_map)
{
    ValidationReport report;
    if (static_cast<int>(obj_map.size()) != source.num_objects() ||
        static_cast<int>(mor_map.size()) != source.num_morphisms()) {
        report.add("functor shape", "maps must cover every object and morphism");
        return report;
    }
    for (int v : obj_map)
        if (v < 0 || v >= target.num_objects()) {
            report.add("functor range", "object image out of range");
            return report;
        }
    for (int v : mor_map)
        if (v < 0 || v >= target.num_morphisms()) {
            report.add("functor range", "morphism image out of range");
            return report;
        }
    RuleCollector out(report);
    for (int g = 0; g < source.num_morphisms(); ++g) {
        int h = mor_map[g];
        if (target.src(h) != obj_map[source.src(g)] || target.tgt(h) != obj_map[source.tgt(g)])
            out.add("functor endpoints", source.morphism_id(g));
    }
    for (int x = 0; x < source.num_objects(); ++x)
        if (mor_map[source.identity(x)] != target.identity(obj_map[x]))
            out.add("functor identities", source.object_id(x));
    for (int a = 0; a < source.num_morphisms(); ++a)
        for (int b : source.base().into(source.src(a))) {
            int c = source.compose(a, b);
            if (c >= 0 && target.compose(mor_map[a], mor_map[b]) != mor_map[c])
                out.add("functor composition", "(" + source.morphism_id(a) + ", " + source.morphism_id(b) + ")");
        }
    return report;
}

GroupoidFunctor::GroupoidFunctor(GroupoidPtr source, GroupoidPtr target, std::vector<int> obj_map,
                                 std::vector<int> mor_map)
    : source_(std::move(source)), target_(std::move(target)), obj_map_(std::move(obj_map)),
      mor_map_(std::move(mor_map))
{
    auto report = validate_functor(*source_, *target_, obj_map_, mor_map_);
    if (!report.ok()) throw InvalidError("invalid functor", report);
    for (int g = 0; g < source_->num_morphisms(); ++g)
        if (target_->phi(mor_map_[g]) != source_->phi(g)) even_ = false;
}

NatTransformation::NatTransformation(GroupoidFunctor F, GroupoidFunctor G, std::vector<int> components)
    : F_(std::move(F)), G_(std::move(G)), components_(std::move(components))
{
    const auto& src = *F_.source();
    const auto& tgt = *F_.target();
    if (F_.source() != G_.source() || F_.target() != G_.target())
        throw InvalidError("natural transformation between functors with different endpoints");
    if (static_cast<int>(components_.size()) != src.num_objects())
        throw InvalidError("natural transformation needs one component per object");
    ValidationReport report;
    for (int x = 0; x < src.num_objects(); ++x) {
        int c = components_[x];
        if (c < 0 || c >= tgt.num_morphisms() || tgt.src(c) != F_.obj(x) || tgt.tgt(c) != G_.obj(x))
            report.add("component endpoints", src.object_id(x));
        else if (tgt.phi(c) != 1)
            even_ = false;
    }
    if (report.ok())
        for (int g = 0; g < src.num_morphisms(); ++g) {
            int lhs = tgt.compose(G_.mor(g), components_[src.src(g)]);
            int rhs = tgt.compose(components_[src.tgt(g)], F_.mor(g));
            if (lhs != rhs) report.add("naturality", src.morphism_id(g));
        }
    if (!report.ok()) throw InvalidError("invalid natural transformation", report);
}

RealStructure::RealStructure(GroupoidFunctor tau) : tau_(std::move(tau))
{
    if (tau_.source() != tau_.target())
        throw InvalidError("Real structure must be an endofunctor");
    if (!tau_.source()->is_ungraded()) throw InvalidError("Real structure requires an ungraded base");
    ValidationReport report;
    const auto& g = *tau_.source();
    for (int x = 0; x < g.num_objects(); ++x)
        if (tau_.obj(tau_.obj(x)) != x) report.add("involution", g.object_id(x));
    for (int h = 0; h < g.num_morphisms(); ++h)
        if (tau_.mor(tau_.mor(h)) != h) report.add("involution", g.morphism_id(h));
    if (!report.ok()) throw InvalidError("tau is not a strict involution", report);
}

GradedGroupoid point_groupoid()
{
    return GradedGroupoid(FiniteGroupoid::from_rule({"*"}, {"e"}, {0}, {0}, [](int, int) { return 0; }));
}

GradedGroupoid discrete_groupoid(const std::vector<std::string>& objects)
{
    std::vector<std::string> ids;
    for (const auto& x : objects) ids.push_back("id_" + x);
    auto idx = index_vector(static_cast<int>(objects.size()));
    return GradedGroupoid(FiniteGroupoid::from_rule(objects, ids, idx, idx, [](int a, int) { return a; }));
}

GradedGroupoid pair_groupoid(const std::vector<std::string>& objects)
{
    const int n = static_cast<int>(objects.size());
    std::vector<std::string> ids;
    std::vector<int> src, tgt;
    // morphism index from * n + to, id "from->to"
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ids.push_back(objects[a] + "->" + objects[b]);
            src.push_back(a);
            tgt.push_back(b);
        }
    return GradedGroupoid(FiniteGroupoid::from_rule(objects, ids, src, tgt, [n](int g1, int g2) {
        return (g2 / n) * n + (g1 % n);
    }));
}

GradedGroupoid disjoint_union(const GradedGroupoid& a, const GradedGroupoid& b)
{
    const auto& A = a.base();
    const auto& B = b.base();
    bool clash = false;
    for (const auto& x : B.object_ids()) clash = clash || A.find_object(x).has_value();
    for (const auto& g : B.morphism_ids()) clash = clash || A.find_morphism(g).has_value();
    auto tag = [clash](const std::string& s, int side) {
        return clash ? std::to_string(side) + ":" + s : s;
    };
    std::vector<std::string> objects, morphisms;
    std::vector<int> src, tgt, phi;
    const int na = A.num_objects(), ma = A.num_morphisms();
    for (const auto& x : A.object_ids()) objects.push_back(tag(x, 1));
    for (const auto& x : B.object_ids()) objects.push_back(tag(x, 2));
    for (int g = 0; g < ma; ++g) {
        morphisms.push_back(tag(A.morphism_id(g), 1));
        src.push_back(A.src(g));
        tgt.push_back(A.tgt(g));
        phi.push_back(a.phi(g));
    }
    for (int g = 0; g < B.num_morphisms(); ++g) {
        morphisms.push_back(tag(B.morphism_id(g), 2));
        src.push_back(B.src(g) + na);
        tgt.push_back(B.tgt(g) + na);
        phi.push_back(b.phi(g));
    }
    auto base = FiniteGroupoid::from_rule(objects, morphisms, src, tgt, [&](int g1, int g2) {
        if (g1 < ma) return A.compose(g1, g2);
        return B.compose(g1 - ma, g2 - ma) + ma;
    });
    return GradedGroupoid(std::move(base), std::move(phi));
}

GradedGroupoid delooping(const GroupTable& group, const std::vector<int>& epsilon)
{
    auto report = validate_homomorphism(group, epsilon);
    if (!report.ok()) throw InvalidError("epsilon is not a homomorphism", report);
    const int n = group.order();
    auto base = FiniteGroupoid::from_rule({"*"}, group.element_ids(), std::vector<int>(n, 0),
                                          std::vector<int>(n, 0),
                                          [&](int a, int b) { return group.mul(a, b); });
    return GradedGroupoid(std::move(base), epsilon);
}

GradedGroupoid delooping(const GroupTable& group)
{
    return delooping(group, std::vector<int>(group.order(), 1));
}

GradedGroupoid action_groupoid(const std::vector<std::string>& set, const GroupTable& group,
                               const std::vector<std::vector<int>>& act,
                               const std::vector<int>& epsilon)
{
    auto report = validate_homomorphism(group, epsilon);
    if (!report.ok()) throw InvalidError("epsilon is not a homomorphism", report);
    const int nx = static_cast<int>(set.size()), ng = group.order();
    if (static_cast<int>(act.size()) != nx) throw InvalidError("action table has wrong number of rows");
    for (int x = 0; x < nx; ++x) {
        if (static_cast<int>(act[x].size()) != ng) throw InvalidError("action table row has wrong length");
        for (int y : act[x])
            if (y < 0 || y >= nx) throw InvalidError("action table entry out of range");
        if (act[x][group.identity()] != x) report.add("action unit", set[x]);
        for (int g = 0; g < ng; ++g)
            for (int h = 0; h < ng; ++h)
                if (act[act[x][g]][h] != act[x][group.mul(g, h)])
                    report.add("right action", set[x] + "·" + group.element_id(g) + "·" + group.element_id(h));
    }
    if (!report.ok()) throw InvalidError("invalid right action", report);
    // morphism (g,x) has index g * nx + x
    std::vector<std::string> ids;
    std::vector<int> src, tgt, phi;
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < nx; ++x) {
            ids.push_back("(" + group.element_id(g) + "," + set[x] + ")");
            src.push_back(act[x][g]);
            tgt.push_back(x);
            phi.push_back(epsilon[g]);
        }
    auto base = FiniteGroupoid::from_rule(set, ids, src, tgt, [&](int m1, int m2) {
        int g = m1 / nx, x = m1 % nx, h = m2 / nx;
        return group.mul(g, h) * nx + x;
    });
    return GradedGroupoid(std::move(base), std::move(phi));
}

GradedGroupoid graded_semidirect(const RealStructure& r)
{
    const auto& g = *r.base();
    const int n = g.num_morphisms();
    std::vector<std::string> ids;
    std::vector<int> src, tgt, phi;
    for (int sign = 0; sign < 2; ++sign)
        for (int h = 0; h < n; ++h) {
            ids.push_back("(" + g.morphism_id(h) + (sign ? ",-)" : ",+)"));
            src.push_back(sign ? r.tau_obj(g.src(h)) : g.src(h));
            tgt.push_back(g.tgt(h));
            phi.push_back(sign ? -1 : 1);
        }
    auto base = FiniteGroupoid::from_rule(g.base().object_ids(), ids, src, tgt, [&](int a, int b) {
        int x1 = a / n, x2 = b / n;
        int g1 = a % n, g2 = b % n;
        int moved = x1 ? r.tau_mor(g2) : g2;
        return ((x1 ^ x2) * n) + g.compose(g1, moved);
    });
    return GradedGroupoid(std::move(base), std::move(phi));
}

GroupoidFunctor semidirect_even_inclusion(const RealStructure& r, const GroupoidPtr& semidirect)
{
    const auto& g = *r.base();
    return GroupoidFunctor(r.base(), semidirect, index_vector(g.num_objects()), index_vector(g.num_morphisms()));
}

GradedGroupoid even_subgroupoid(const GradedGroupoid& g)
{
    std::vector<int> keep, position(g.num_morphisms(), -1);
    for (int h = 0; h < g.num_morphisms(); ++h)
        if (g.phi(h) == 1) {
            position[h] = static_cast<int>(keep.size());
            keep.push_back(h);
        }
    std::vector<std::string> ids;
    std::vector<int> src, tgt;
    for (int h : keep) {
        ids.push_back(g.morphism_id(h));
        src.push_back(g.src(h));
        tgt.push_back(g.tgt(h));
    }
    return GradedGroupoid(FiniteGroupoid::from_rule(g.base().object_ids(), ids, src, tgt, [&](int a, int b) {
        return position[g.compose(keep[a], keep[b])];
    }));
}

GroupoidFunctor even_inclusion(const GroupoidPtr& even, const GroupoidPtr& g)
{
    std::vector<int> mor;
    for (int h = 0; h < even->num_morphisms(); ++h) mor.push_back(g->base().morphism_index(even->morphism_id(h)));
    return GroupoidFunctor(even, g, index_vector(g->num_objects()), mor);
}

Subgroupoid full_subgroupoid(const GroupoidPtr& g, const std::vector<int>& objects)
{
    std::vector<int> obj_pos(g->num_objects(), -1);
    std::vector<std::string> obj_ids;
    for (int x : objects) {
        if (x < 0 || x >= g->num_objects()) throw InvalidError("object index out of range");
        if (obj_pos[x] >= 0) continue;
        obj_pos[x] = static_cast<int>(obj_ids.size());
        obj_ids.push_back(g->object_id(x));
    }
    std::vector<int> keep, position(g->num_morphisms(), -1);
    std::vector<std::string> ids;
    std::vector<int> src, tgt, phi;
    for (int h = 0; h < g->num_morphisms(); ++h)
        if (obj_pos[g->src(h)] >= 0 && obj_pos[g->tgt(h)] >= 0) {
            position[h] = static_cast<int>(keep.size());
            keep.push_back(h);
            ids.push_back(g->morphism_id(h));
            src.push_back(obj_pos[g->src(h)]);
            tgt.push_back(obj_pos[g->tgt(h)]);
            phi.push_back(g->phi(h));
        }
    auto sub = share(GradedGroupoid(
        FiniteGroupoid::from_rule(obj_ids, ids, src, tgt,
                                  [&](int a, int b) { return position[g->compose(keep[a], keep[b])]; }),
        phi));
    std::vector<int> obj_map;
    for (int x = 0; x < g->num_objects(); ++x)
        if (obj_pos[x] >= 0) obj_map.push_back(x);
    std::sort(obj_map.begin(), obj_map.end(), [&](int a, int b) { return obj_pos[a] < obj_pos[b]; });
    return {sub, GroupoidFunctor(sub, g, obj_map, keep)};
}

Covering covering_groupoid(const GroupoidPtr& g, const std::vector<std::string>& cover_objects,
                           const std::vector<int>& pi)
{
    const int ny = static_cast<int>(cover_objects.size());
    if (static_cast<int>(pi.size()) != ny) throw InvalidError("covering map needs one image per cover object");
    std::vector<bool> hit(g->num_objects(), false);
    for (int p : pi) {
        if (p < 0 || p >= g->num_objects()) throw InvalidError("covering map image out of range");
        hit[p] = true;
    }
    for (int x = 0; x < g->num_objects(); ++x)
        if (!hit[x]) throw InvalidError("covering map is not surjective: " + g->object_id(x) + " is missed");
    std::vector<std::string> ids;
    std::vector<int> src, tgt, phi, base_mor;
    std::map<std::tuple<int, int, int>, int> index;
    for (int h = 0; h < g->num_morphisms(); ++h)
        for (int y = 0; y < ny; ++y) {
            if (pi[y] != g->tgt(h)) continue;
            for (int y2 = 0; y2 < ny; ++y2) {
                if (pi[y2] != g->src(h)) continue;
                index[{y, h, y2}] = static_cast<int>(ids.size());
                ids.push_back("(" + cover_objects[y] + "," + g->morphism_id(h) + "," + cover_objects[y2] + ")");
                src.push_back(y2);
                tgt.push_back(y);
                phi.push_back(g->phi(h));
                base_mor.push_back(h);
            }
        }
    // recover (y, γ, y') from the index
    std::vector<std::tuple<int, int, int>> parts(ids.size());
    for (const auto& [key, i] : index) parts[i] = key;
    auto base = FiniteGroupoid::from_rule(cover_objects, ids, src, tgt, [&](int a, int b) {
        auto [y1, h1, y2] = parts[a];
        auto [y3, h2, y4] = parts[b];
        (void)y2;
        (void)y3;
        return index.at({y1, g->compose(h1, h2), y4});
    });
    auto cover = share(GradedGroupoid::assembled(std::move(base), std::move(phi)));
    GroupoidFunctor proj(cover, g, pi, base_mor);
    return {cover, std::move(proj)};
}

FibreProduct fibre_product(const GroupoidFunctor& T, const GroupoidFunctor& T2)
{
    if (T.target() != T2.target()) throw InvalidError("fibre product needs functors with a common target");
    if (!T.even() || !T2.even()) throw InvalidError("fibre product needs even functors");
    const auto& G = *T.target();
    const auto& L = *T.source();
    const auto& L2 = *T2.source();
    struct Obj {
        int p, alpha, p2;
    };
    std::vector<Obj> objs;
    std::vector<std::string> obj_ids;
    std::map<std::tuple<int, int, int>, int> obj_index;
    for (int p = 0; p < L.num_objects(); ++p)
        for (int p2 = 0; p2 < L2.num_objects(); ++p2)
            for (int alpha : G.base().hom(T.obj(p), T2.obj(p2))) {
                if (G.phi(alpha) != 1) continue;
                obj_index[{p, alpha, p2}] = static_cast<int>(objs.size());
                objs.push_back({p, alpha, p2});
                obj_ids.push_back("(" + L.object_id(p) + "," + G.morphism_id(alpha) + "," + L2.object_id(p2) + ")");
            }
    std::vector<std::string> ids;
    std::vector<int> src, tgt, phi;
    std::vector<std::pair<int, int>> parts;
    for (int i = 0; i < static_cast<int>(objs.size()); ++i)      // source object
        for (int j = 0; j < static_cast<int>(objs.size()); ++j)  // target object
            for (int a : L.base().hom(objs[i].p, objs[j].p))
                for (int b : L2.base().hom(objs[i].p2, objs[j].p2)) {
                    if (G.compose(T2.mor(b), objs[i].alpha) != G.compose(objs[j].alpha, T.mor(a))) continue;
                    parts.push_back({a, b});
                    ids.push_back("(" + L.morphism_id(a) + "," + G.morphism_id(objs[i].alpha) + "," + L2.morphism_id(b) + ")");
                    src.push_back(i);
                    tgt.push_back(j);
                    phi.push_back(L.phi(a));
                }
    std::map<std::tuple<int, int, int, int>, int> full_index;
    for (int k = 0; k < static_cast<int>(ids.size()); ++k)
        full_index[{parts[k].first, parts[k].second, src[k], tgt[k]}] = k;
    auto base = FiniteGroupoid::from_rule(obj_ids, ids, src, tgt, [&](int m1, int m2) {
        int a = L.compose(parts[m1].first, parts[m2].first);
        int b = L2.compose(parts[m1].second, parts[m2].second);
        return full_index.at({a, b, src[m2], tgt[m1]});
    });
    auto product = share(GradedGroupoid::assembled(std::move(base), std::move(phi)));
    std::vector<int> o1, o2, m1, m2;
    for (const auto& o : objs) {
        o1.push_back(o.p);
        o2.push_back(o.p2);
    }
    for (const auto& [a, b] : parts) {
        m1.push_back(a);
        m2.push_back(b);
    }
    return {product, GroupoidFunctor(product, T.source(), o1, m1), GroupoidFunctor(product, T2.source(), o2, m2)};
}

CommonRefinement common_refinement(const Covering& first, const Covering& second)
{
    const auto& G = first.projection.target();
    if (G != second.projection.target()) throw InvalidError("coverings of different groupoids");
    const auto& Y = *first.groupoid;
    const auto& Y2 = *second.groupoid;
    std::vector<std::string> z_ids;
    std::vector<int> zeta;
    std::vector<std::pair<int, int>> z_parts;
    for (int y = 0; y < Y.num_objects(); ++y)
        for (int y2 = 0; y2 < Y2.num_objects(); ++y2)
            if (first.projection.obj(y) == second.projection.obj(y2)) {
                z_ids.push_back("(" + Y.object_id(y) + "," + Y2.object_id(y2) + ")");
                zeta.push_back(first.projection.obj(y));
                z_parts.push_back({y, y2});
            }
    Covering joint = covering_groupoid(G, z_ids, zeta);
    FibreProduct product = fibre_product(first.projection, second.projection);
    const auto& P = *product.groupoid;
    const auto& J = *joint.groupoid;
    std::vector<int> obj_map, mor_map;
    for (int z = 0; z < J.num_objects(); ++z) {
        auto [y, y2] = z_parts[z];
        int e = G->identity(zeta[z]);
        obj_map.push_back(P.base().object_index("(" + Y.object_id(y) + "," + G->morphism_id(e) + "," +
                                                Y2.object_id(y2) + ")"));
    }
    for (int h = 0; h < J.num_morphisms(); ++h) {
        int zs = J.src(h), zt = J.tgt(h);
        int gamma = joint.projection.mor(h);
        std::string a = "(" + Y.object_id(z_parts[zt].first) + "," + G->morphism_id(gamma) + "," +
                        Y.object_id(z_parts[zs].first) + ")";
        std::string b = "(" + Y2.object_id(z_parts[zt].second) + "," + G->morphism_id(gamma) + "," +
                        Y2.object_id(z_parts[zs].second) + ")";
        int ia = Y.base().morphism_index(a), ib = Y2.base().morphism_index(b);
        int found = -1;
        for (int k = 0; k < P.num_morphisms() && found < 0; ++k)
            if (product.first.mor(k) == ia && product.second.mor(k) == ib && P.src(k) == obj_map[zs] &&
                P.tgt(k) == obj_map[zt])
                found = k;
        if (found < 0) throw InvalidError("comparison functor is undefined on " + J.morphism_id(h));
        mor_map.push_back(found);
    }
    GroupoidFunctor comparison(joint.groupoid, product.groupoid, obj_map, mor_map);
    return {std::move(joint), std::move(product), std::move(comparison)};
}

GroupoidFunctor identity_functor(const GroupoidPtr& g)
{
    return GroupoidFunctor(g, g, index_vector(g->num_objects()), index_vector(g->num_morphisms()));
}

GroupoidFunctor compose_functors(const GroupoidFunctor& G, const GroupoidFunctor& F)
{
    if (F.target() != G.source()) throw InvalidError("functors are not composable");
    std::vector<int> obj, mor;
    for (int x : F.obj_map()) obj.push_back(G.obj(x));
    for (int h : F.mor_map()) mor.push_back(G.mor(h));
    return GroupoidFunctor(F.source(), G.target(), obj, mor);
}

GroupoidFunctor terminal_functor(const GroupoidPtr& g, const GroupoidPtr& point)
{
    return GroupoidFunctor(g, point, std::vector<int>(g->num_objects(), 0),
                           std::vector<int>(g->num_morphisms(), 0));
}

WeakEquivalenceResult is_weak_equivalence(const GroupoidFunctor& F)
{
    const auto& A = *F.source();
    const auto& B = *F.target();
    std::vector<bool> reached(B.num_objects(), false);
    for (int x = 0; x < A.num_objects(); ++x) reached[F.obj(x)] = true;
    std::vector<bool> covered(B.num_objects(), false);
    for (int h = 0; h < B.num_morphisms(); ++h)
        if (reached[B.src(h)]) covered[B.tgt(h)] = true;
    for (int y = 0; y < B.num_objects(); ++y)
        if (!covered[y])
            return {false, "not essentially surjective: object " + B.object_id(y) + " is not isomorphic to any image"};
    std::map<std::pair<int, int>, std::vector<int>> homs;
    for (int h = 0; h < A.num_morphisms(); ++h) homs[{A.src(h), A.tgt(h)}].push_back(h);
    for (int x = 0; x < A.num_objects(); ++x)
        for (int x2 = 0; x2 < A.num_objects(); ++x2) {
            const auto it = homs.find({x, x2});
            std::set<int> images;
            std::size_t count = 0;
            if (it != homs.end()) {
                count = it->second.size();
                for (int h : it->second) images.insert(F.mor(h));
            }
            std::size_t target_count = B.base().hom(F.obj(x), F.obj(x2)).size();
            if (images.size() != count || images.size() != target_count) {
                std::ostringstream os;
                os << "not fully faithful: Hom(" << A.object_id(x) << ", " << A.object_id(x2) << ") has " << count
                   << " morphisms, Hom(" << B.object_id(F.obj(x)) << ", " << B.object_id(F.obj(x2)) << ") has "
                   << target_count << ", image has " << images.size();
                return {false, os.str()};
            }
        }
    return {true, ""};
}

std::vector<std::vector<int>> connected_components(const FiniteGroupoid& g)
{
    std::vector<int> parent(g.num_objects());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int h = 0; h < g.num_morphisms(); ++h) {
        int a = find(g.src(h)), b = find(g.tgt(h));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<int, std::vector<int>> groups;
    for (int x = 0; x < g.num_objects(); ++x) groups[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

bool is_isomorphism(const GroupoidFunctor& F)
{
    const auto& A = *F.source();
    const auto& B = *F.target();
    if (A.num_objects() != B.num_objects() || A.num_morphisms() != B.num_morphisms()) return false;
    std::set<int> objs(F.obj_map().begin(), F.obj_map().end());
    std::set<int> mors(F.mor_map().begin(), F.mor_map().end());
    return static_cast<int>(objs.size()) == A.num_objects() && static_cast<int>(mors.size()) == A.num_morphisms();
}

namespace {

class IsoSearch {
public:
    IsoSearch(const GradedGroupoid& a, const GradedGroupoid& b) : A(a), B(b) {}

    bool run()
    {
        obj.assign(A.num_objects(), -1);
        obj_used.assign(B.num_objects(), false);
        return assign_object(0);
    }

    std::vector<int> obj, mor;

private:
    bool assign_object(int x)
    {
        if (x == A.num_objects()) {
            mor.assign(A.num_morphisms(), -1);
            mor_used.assign(B.num_morphisms(), false);
            return assign_morphism(0);
        }
        for (int y = 0; y < B.num_objects(); ++y) {
            if (obj_used[y]) continue;
            if (A.base().hom(x, x).size() != B.base().hom(y, y).size()) continue;
            obj[x] = y;
            obj_used[y] = true;
            if (assign_object(x + 1)) return true;
            obj_used[y] = false;
        }
        obj[x] = -1;
        return false;
    }

    bool consistent(int g)
    {
        for (int h = 0; h <= g; ++h) {
            for (auto [p, q] : {std::pair{g, h}, std::pair{h, g}}) {
                int c = A.compose(p, q);
                if (c < 0 || mor[c] < 0) continue;
                if (B.compose(mor[p], mor[q]) != mor[c]) return false;
            }
            // composites that land on g
        }
        for (int p = 0; p < A.num_morphisms(); ++p) {
            if (mor[p] < 0) continue;
            for (int q = 0; q < A.num_morphisms(); ++q) {
                if (mor[q] < 0) continue;
                if (A.compose(p, q) == g && B.compose(mor[p], mor[q]) != mor[g]) return false;
            }
        }
        return true;
    }

    bool assign_morphism(int g)
    {
        if (g == A.num_morphisms()) return true;
        for (int h : B.base().hom(obj[A.src(g)], obj[A.tgt(g)])) {
            if (mor_used[h] || B.phi(h) != A.phi(g)) continue;
            mor[g] = h;
            mor_used[h] = true;
            if (consistent(g) && assign_morphism(g + 1)) return true;
            mor_used[h] = false;
            mor[g] = -1;
        }
        return false;
    }

    const GradedGroupoid& A;
    const GradedGroupoid& B;
    std::vector<bool> obj_used, mor_used;
};

}  // namespace

std::optional<GroupoidFunctor> find_isomorphism(const GroupoidPtr& a, const GroupoidPtr& b)
{
    if (a->num_objects() != b->num_objects() || a->num_morphisms() != b->num_morphisms()) return std::nullopt;
    IsoSearch search(*a, *b);
    if (!search.run()) return std::nullopt;
    return GroupoidFunctor(a, b, search.obj, search.mor);
}

}  // namespace twistbench
