#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistbench/error.hpp"

namespace twistbench {

struct MorphismRecord {
    std::string id;
    std::string src;
    std::string tgt;
};

// Finite groupoid with dense tables. Composition g1∘g2 is defined iff
// src(g1) == tgt(g2) and runs src(g2) -> tgt(g1). Entries may be missing
// (-1) in a raw table; validate_groupoid reports every broken axiom.
class FiniteGroupoid {
public:
    FiniteGroupoid() = default;

    // Builds from identifiers. Unknown or duplicate ids raise ParseError;
    // absent table entries are stored as -1.
    static FiniteGroupoid from_records(
        const std::vector<std::string>& objects,
        const std::vector<MorphismRecord>& morphisms,
        const std::vector<std::array<std::string, 3>>& compose,
        const std::vector<std::pair<std::string, std::string>>& identities,
        const std::vector<std::pair<std::string, std::string>>& inverses);

    // Fills the table from a composition rule on indices; identities and
    // inverses are located by search.
    static FiniteGroupoid from_rule(std::vector<std::string> objects,
                                    std::vector<std::string> morphism_ids,
                                    std::vector<int> src, std::vector<int> tgt,
                                    const std::function<int(int, int)>& compose);

    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
    const std::string& object_id(int x) const { return objects_.at(x); }
    const std::string& morphism_id(int g) const { return morphisms_.at(g); }
    const std::vector<std::string>& object_ids() const { return objects_; }
    const std::vector<std::string>& morphism_ids() const { return morphisms_; }

    int object_index(const std::string& id) const;
    int morphism_index(const std::string& id) const;
    std::optional<int> find_object(const std::string& id) const;
    std::optional<int> find_morphism(const std::string& id) const;

    int src(int g) const { return src_[g]; }
    int tgt(int g) const { return tgt_[g]; }
    int identity(int x) const { return identity_[x]; }
    int inverse(int g) const { return inverse_[g]; }
    bool composable(int g1, int g2) const { return src_[g1] == tgt_[g2]; }
    // -1 when undefined or missing
    int compose(int g1, int g2) const
    {
        return src_[g1] == tgt_[g2] ? compose_[row_[g1] + slot_[g2]] : stray(g1, g2);
    }
    // morphisms with target x, in index order
    const std::vector<int>& into(int x) const { return into_[x]; }

    std::vector<int> hom(int from, int to) const;
    bool is_identity(int g) const;

private:
    friend ValidationReport validate_groupoid(const FiniteGroupoid&, bool);
    void build_index();
    void build_composition();
    int stray(int g1, int g2) const;

    std::vector<std::string> objects_;
    std::vector<std::string> morphisms_;
    std::vector<int> src_, tgt_, identity_, inverse_;
    // composites of composable pairs: compose_[row_[a] + slot_[b]], with
    // slot_[b] the position of b in into_[tgt b]
    std::vector<std::vector<int>> into_;
    std::vector<std::size_t> row_;
    std::vector<int> slot_, compose_;
    // table entries given for non-composable pairs, kept for reporting
    std::unordered_map<std::uint64_t, int> stray_;
    std::unordered_map<std::string, int> object_index_, morphism_index_;
};

// The associativity check visits every composable triple; constructions that
// are associative by design may skip it.
ValidationReport validate_groupoid(const FiniteGroupoid& g, bool check_associativity = true);

// Groupoid with a grading phi into {+1,-1}; validated on construction.
class GradedGroupoid {
public:
    explicit GradedGroupoid(FiniteGroupoid base);
    GradedGroupoid(FiniteGroupoid base, std::vector<int> phi);
    // validated except for associativity, for composition rules inherited
    // componentwise from valid groupoids
    static GradedGroupoid assembled(FiniteGroupoid base, std::vector<int> phi);

    const FiniteGroupoid& base() const { return base_; }
    int phi(int g) const { return phi_[g]; }
    const std::vector<int>& phi_values() const { return phi_; }
    bool is_ungraded() const;

    int num_objects() const { return base_.num_objects(); }
    int num_morphisms() const { return base_.num_morphisms(); }
    int src(int g) const { return base_.src(g); }
    int tgt(int g) const { return base_.tgt(g); }
    int compose(int g1, int g2) const { return base_.compose(g1, g2); }
    int inverse(int g) const { return base_.inverse(g); }
    int identity(int x) const { return base_.identity(x); }
    const std::string& object_id(int x) const { return base_.object_id(x); }
    const std::string& morphism_id(int g) const { return base_.morphism_id(g); }

private:
    GradedGroupoid(FiniteGroupoid base, std::vector<int> phi, bool check_associativity);

    FiniteGroupoid base_;
    std::vector<int> phi_;
};

ValidationReport validate_grading(const FiniteGroupoid& g, const std::vector<int>& phi);

using GroupoidPtr = std::shared_ptr<const GradedGroupoid>;

inline GroupoidPtr share(GradedGroupoid g) { return std::make_shared<const GradedGroupoid>(std::move(g)); }

class GroupTable {
public:
    // table[i][j] is the index of elements[i] * elements[j]
    GroupTable(std::vector<std::string> elements, std::vector<std::vector<int>> table);

    int order() const { return static_cast<int>(elements_.size()); }
    int mul(int a, int b) const { return table_[a][b]; }
    int identity() const { return identity_; }
    int inverse(int a) const { return inverse_[a]; }
    const std::string& element_id(int a) const { return elements_.at(a); }
    const std::vector<std::string>& element_ids() const { return elements_; }
    int element_index(const std::string& id) const;
    int element_order(int a) const;
    const std::vector<std::vector<int>>& table() const { return table_; }

private:
    std::vector<std::string> elements_;
    std::vector<std::vector<int>> table_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

ValidationReport validate_homomorphism(const GroupTable& g, const std::vector<int>& epsilon);

class GroupoidFunctor {
public:
    GroupoidFunctor(GroupoidPtr source, GroupoidPtr target, std::vector<int> obj_map,
                    std::vector<int> mor_map);

    const GroupoidPtr& source() const { return source_; }
    const GroupoidPtr& target() const { return target_; }
    int obj(int x) const { return obj_map_[x]; }
    int mor(int g) const { return mor_map_[g]; }
    const std::vector<int>& obj_map() const { return obj_map_; }
    const std::vector<int>& mor_map() const { return mor_map_; }
    bool even() const { return even_; }

private:
    GroupoidPtr source_, target_;
    std::vector<int> obj_map_, mor_map_;
    bool even_ = true;
};

ValidationReport validate_functor(const GradedGroupoid& source, const GradedGroupoid& target,
                                  const std::vector<int>& obj_map, const std::vector<int>& mor_map);

class NatTransformation {
public:
    NatTransformation(GroupoidFunctor F, GroupoidFunctor G, std::vector<int> components);

    const GroupoidFunctor& from() const { return F_; }
    const GroupoidFunctor& to() const { return G_; }
    int component(int x) const { return components_[x]; }
    bool even() const { return even_; }

private:
    GroupoidFunctor F_, G_;
    std::vector<int> components_;
    bool even_ = true;
};

// Strict involution on an ungraded groupoid.
class RealStructure {
public:
    explicit RealStructure(GroupoidFunctor tau);

    const GroupoidPtr& base() const { return tau_.source(); }
    const GroupoidFunctor& tau() const { return tau_; }
    int tau_obj(int x) const { return tau_.obj(x); }
    int tau_mor(int g) const { return tau_.mor(g); }

private:
    GroupoidFunctor tau_;
};

GradedGroupoid point_groupoid();
GradedGroupoid discrete_groupoid(const std::vector<std::string>& objects);
GradedGroupoid pair_groupoid(const std::vector<std::string>& objects);
GradedGroupoid disjoint_union(const GradedGroupoid& a, const GradedGroupoid& b);
GradedGroupoid delooping(const GroupTable& group, const std::vector<int>& epsilon);
GradedGroupoid delooping(const GroupTable& group);

// act[x][g] = x·g for a right action. Morphism (g,x) runs x·g -> x.
GradedGroupoid action_groupoid(const std::vector<std::string>& set, const GroupTable& group,
                               const std::vector<std::vector<int>>& act,
                               const std::vector<int>& epsilon);

// Objects of the base; morphisms (γ,+) in base order followed by (γ,-).
// (γ,x) runs τ^x(sγ) -> tγ and (γ1,x1)∘(γ2,x2) = (γ1∘τ^{x1}(γ2), x1x2).
GradedGroupoid graded_semidirect(const RealStructure& r);
// γ ↦ (γ,+)
GroupoidFunctor semidirect_even_inclusion(const RealStructure& r, const GroupoidPtr& semidirect);

GradedGroupoid even_subgroupoid(const GradedGroupoid& g);
GroupoidFunctor even_inclusion(const GroupoidPtr& even, const GroupoidPtr& g);

struct Covering {
    GroupoidPtr groupoid;
    GroupoidFunctor projection;
};

// Morphisms (y,γ,y') with π(y) = tγ and sγ = π(y'), running y' -> y.
Covering covering_groupoid(const GroupoidPtr& g, const std::vector<std::string>& cover_objects,
                           const std::vector<int>& pi);

struct FibreProduct {
    GroupoidPtr groupoid;
    GroupoidFunctor first;
    GroupoidFunctor second;
};

// Objects (p, α, p') with α: T(p) -> T'(p') an even morphism of the common
// target; morphisms (a, α, b) out of (p, α, p') with T'(b)∘α = α'∘T(a).
// Graded by φ(a) = φ(b).
FibreProduct fibre_product(const GroupoidFunctor& T, const GroupoidFunctor& T2);

struct CommonRefinement {
    Covering joint;          // Γ^ζ for ζ: Y ×_{Γ0} Y' -> Γ0
    FibreProduct product;    // Γ^π ×_Γ Γ^π'
    GroupoidFunctor comparison;
};

CommonRefinement common_refinement(const Covering& first, const Covering& second);

struct Subgroupoid {
    GroupoidPtr groupoid;
    GroupoidFunctor inclusion;
};

// full subgroupoid on the given objects, keeping ids and grading
Subgroupoid full_subgroupoid(const GroupoidPtr& g, const std::vector<int>& objects);

GroupoidFunctor identity_functor(const GroupoidPtr& g);
// G ∘ F
GroupoidFunctor compose_functors(const GroupoidFunctor& G, const GroupoidFunctor& F);
// the unique functor to the point groupoid
GroupoidFunctor terminal_functor(const GroupoidPtr& g, const GroupoidPtr& point);

struct WeakEquivalenceResult {
    bool value = false;
    std::string witness;
};

WeakEquivalenceResult is_weak_equivalence(const GroupoidFunctor& F);
std::vector<std::vector<int>> connected_components(const FiniteGroupoid& g);
bool is_isomorphism(const GroupoidFunctor& F);
std::optional<GroupoidFunctor> find_isomorphism(const GroupoidPtr& a, const GroupoidPtr& b);

}  // namespace twistbench
