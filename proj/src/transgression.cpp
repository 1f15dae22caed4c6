#include "twistbench/transgression.hpp"

#include <map>
#include <memory>

#include "twistbench/corpus.hpp"

namespace twistbench {

namespace {

// Bracketed tensor words of simple objects g and one carrier V_y.
struct Word;
using WordPtr = std::shared_ptr<const Word>;

struct Word {
    enum Kind { simple, carrier, product } kind;
    int label = 0;  // group element, for simple and carrier
    WordPtr left, right;
};

WordPtr simple(int g) { return std::make_shared<const Word>(Word{Word::simple, g, nullptr, nullptr}); }
WordPtr carrier(int y) { return std::make_shared<const Word>(Word{Word::carrier, y, nullptr, nullptr}); }
WordPtr tensor(WordPtr a, WordPtr b) { return std::make_shared<const Word>(Word{Word::product, 0, a, b}); }

bool same(const WordPtr& a, const WordPtr& b)
{
    if (a->kind != b->kind) return false;
    if (a->kind != Word::product) return a->label == b->label;
    return same(a->left, b->left) && same(a->right, b->right);
}

// Phase of a composite 2-isomorphism: a constant in Z/m plus a formal sum
// of half-braiding phases R(y,g).
struct Phase {
    std::int64_t constant = 0;
    std::map<std::pair<int, int>, std::int64_t> braid;

    void add_braid(int y, int g, std::int64_t k)
    {
        auto& v = braid[{y, g}];
        v += k;
        if (v == 0) braid.erase({y, g});
    }
};

class SkeletalCalculus {
public:
    explicit SkeletalCalculus(const MultiplicativeTwisting& t) : t_(t), G_(t.group) {}

    int degree(const WordPtr& w) const
    {
        if (w->kind != Word::product) return w->label;
        return G_.mul(degree(w->left), degree(w->right));
    }

    // A(BC) -> (AB)C, the associator ω(|A|,|B|,|C|)
    WordPtr assoc_left(const WordPtr& w, Phase& p) const
    {
        require(w->kind == Word::product && w->right->kind == Word::product, "assoc_left");
        const auto &A = w->left, &B = w->right->left, &C = w->right->right;
        p.constant += t_.at(degree(A), degree(B), degree(C));
        return tensor(tensor(A, B), C);
    }

    // (AB)C -> A(BC), the inverse associator
    WordPtr assoc_right(const WordPtr& w, Phase& p) const
    {
        require(w->kind == Word::product && w->left->kind == Word::product, "assoc_right");
        const auto &A = w->left->left, &B = w->left->right, &C = w->right;
        p.constant -= t_.at(degree(A), degree(B), degree(C));
        return tensor(A, tensor(B, C));
    }

    // a ⊗ b -> ab through the multiplicative 1-isomorphism, which carries no
    // data in the skeletal model
    WordPtr fuse(const WordPtr& w) const
    {
        require(w->kind == Word::product && w->left->kind == Word::simple && w->right->kind == Word::simple, "fuse");
        return simple(G_.mul(w->left->label, w->right->label));
    }

    WordPtr unfuse(const WordPtr& w, int a, int b) const
    {
        require(w->kind == Word::simple && w->label == G_.mul(a, b), "unfuse");
        return tensor(simple(a), simple(b));
    }

    // V_y ⊗ g -> g ⊗ V_{g⁻¹yg}, the half-braiding R(y,g)
    WordPtr braid(const WordPtr& w, Phase& p) const
    {
        require(w->kind == Word::product && w->left->kind == Word::carrier && w->right->kind == Word::simple, "braid");
        const int y = w->left->label, g = w->right->label;
        p.add_braid(y, g, 1);
        return tensor(w->right, carrier(G_.mul(G_.inverse(g), G_.mul(y, g))));
    }

    // apply f to the left or right factor of a product
    template <class F>
    WordPtr on_left(const WordPtr& w, F f) const
    {
        return tensor(f(w->left), w->right);
    }
    template <class F>
    WordPtr on_right(const WordPtr& w, F f) const
    {
        return tensor(w->left, f(w->right));
    }

private:
    static void require(bool ok, const char* move)
    {
        if (!ok) throw std::logic_error(std::string("move ") + move + " does not apply");
    }

    const MultiplicativeTwisting& t_;
    const GroupTable& G_;
};

}  // namespace

ValidationReport validate_multiplicative(const MultiplicativeTwisting& t, const Limits& limits)
{
    ValidationReport r;
    const std::size_t n = t.group.order();
    if (t.omega.size() != n * n * n) {
        r.add("ω shape", "ω needs |G|³ = " + std::to_string(n * n * n) + " values");
        return r;
    }
    check_modulus(t.modulus);
    if (t.modulus == 0) {
        r.add("ω modulus", "multiplicative twistings need a finite modulus");
        return r;
    }
    if (static_cast<std::size_t>(limits.nerve_cap) < n * n * n * n)
        throw CapExceededError("nerve level 4 has " + std::to_string(n * n * n * n) + " elements", limits.nerve_cap);
    const auto& G = t.group;
    const int k = static_cast<int>(n);
    // δω(a,b,c,d) = ω(b,c,d) - ω(ab,c,d) + ω(a,bc,d) - ω(a,b,cd) + ω(a,b,c)
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                for (int d = 0; d < k; ++d) {
                    const std::int64_t v = mod_reduce(t.at(b, c, d) - t.at(G.mul(a, b), c, d) + t.at(a, G.mul(b, c), d) -
                                                          t.at(a, b, G.mul(c, d)) + t.at(a, b, c),
                                                      t.modulus);
                    if (v == 0) continue;
                    r.add("ω cocycle", "δω = " + std::to_string(v) + " at (" + G.element_id(a) + "|" + G.element_id(b) +
                                           "|" + G.element_id(c) + "|" + G.element_id(d) + ")");
                    return r;
                }
    return r;
}

Cochain omega_cochain(const MultiplicativeTwisting& t, const GroupoidPtr& delooped)
{
    check_modulus(t.modulus);
    if (t.modulus == 0) throw InvalidError("multiplicative twistings need a finite modulus");
    return Cochain(delooped, 3, {t.modulus, Involution::trivial}, t.omega);
}

TwistedExtension transgress(const MultiplicativeTwisting& t, const GroupoidPtr& conjugation, const Limits& limits)
{
    auto rep = validate_multiplicative(t, limits);
    if (!rep.ok()) throw InvalidError("invalid multiplicative twisting", rep);
    const auto& G = t.group;
    const int n = G.order();
    if (conjugation->num_objects() != n || conjugation->num_morphisms() != n * n)
        throw InvalidError("groupoid is not the conjugation action groupoid of the group");
    SkeletalCalculus calc(t);
    NerveLevel pairs(*conjugation, 2, limits.nerve_cap);
    std::vector<std::int64_t> lam(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int* tp = pairs.tuple(i);
        // (a,x)∘(b,x·a) with morphism (g,x) at index g·n + x
        const int a = tp[0] / n, x = tp[0] % n, b = tp[1] / n;
        const int y1 = tp[1] % n;  // x·a
        const WordPtr start = tensor(tensor(carrier(x), simple(a)), simple(b));

        // move V_x past a⊗b in one step
        Phase p1;
        WordPtr w1 = calc.assoc_right(start, p1);
        w1 = calc.on_right(w1, [&](const WordPtr& v) { return calc.fuse(v); });
        w1 = calc.braid(w1, p1);
        const int ab = G.mul(a, b);
        w1 = calc.on_left(w1, [&](const WordPtr& v) { return calc.unfuse(v, a, b); });

        // move it past a, then past b
        Phase p2;
        WordPtr w2 = calc.on_left(start, [&](const WordPtr& v) { return calc.braid(v, p2); });
        w2 = calc.assoc_right(w2, p2);
        w2 = calc.on_right(w2, [&](const WordPtr& v) { return calc.braid(v, p2); });
        w2 = calc.assoc_left(w2, p2);

        if (!same(w1, w2)) throw std::logic_error("half-braiding composites end at different words");
        // both composites agree as 2-isomorphisms, so the braid terms
        // R(x,a) + R(x·a,b) - R(x,ab) equal p1 - p2 in the constants
        Phase expected;
        expected.add_braid(x, a, 1);
        expected.add_braid(y1, b, 1);
        expected.add_braid(x, ab, -1);
        Phase diff = p2;
        for (auto [k, v] : p1.braid) diff.add_braid(k.first, k.second, -v);
        if (diff.braid != expected.braid) throw std::logic_error("unexpected half-braiding terms");
        // T(a,x) is the inverse half-braiding, so λ = -(R(x,a) + R(x·a,b) - R(x,ab))
        lam[i] = p2.constant - p1.constant;
    }
    TwistedExtension out(Cochain::zero(conjugation, 1, grading_coefficients(), limits),
                         Cochain(conjugation, 2, phase_coefficients(t.modulus), std::move(lam)));
    require_valid(out, limits);
    return out;
}

TwistedExtension transgress(const MultiplicativeTwisting& t, const Limits& limits)
{
    return transgress(t, share(corpus::conjugation_groupoid(t.group)), limits);
}

}  // namespace twistbench
