#include "twistbench/cohomology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace twistbench {

std::string to_string(Involution inv) { return inv == Involution::trivial ? "trivial" : "negation"; }

Involution parse_involution(const std::string& s)
{
    if (s == "trivial") return Involution::trivial;
    if (s == "negation") return Involution::negation;
    throw ParseError("involution must be 'trivial' or 'negation', got '" + s + "'");
}

std::int64_t CoefficientModule::act(int epsilon, std::int64_t a) const
{
    if (epsilon == -1 && involution == Involution::negation) return reduce(-a);
    return a;
}

void check_modulus(std::int64_t m)
{
    if (m < 0 || m == 1) throw InvalidError("modulus must be 0 (integers) or at least 2, got " + std::to_string(m));
    if (m > (std::int64_t(1) << 31)) throw UnsupportedError("modulus above 2^31 is not supported");
}

Cochain::Cochain(GroupoidPtr g, int level, CoefficientModule coeff, std::vector<std::int64_t> values)
    : g_(std::move(g)), level_(level), coeff_(coeff), values_(std::move(values))
{
    check_modulus(coeff_.modulus);
    if (level_ < 0) throw InvalidError("cochain level must be nonnegative");
    if (values_.size() != nerve_size(*g_, level_))
        throw InvalidError("cochain needs one value per level-" + std::to_string(level_) + " tuple");
    for (auto& v : values_) v = coeff_.reduce(v);
}

Cochain Cochain::zero(GroupoidPtr g, int level, CoefficientModule coeff, const Limits& limits)
{
    std::size_t n = nerve_size(*g, level);
    if (n > limits.nerve_cap)
        throw CapExceededError("nerve level " + std::to_string(level) + " has " + std::to_string(n) + " elements",
                               limits.nerve_cap);
    return Cochain(std::move(g), level, coeff, std::vector<std::int64_t>(n, 0));
}

bool Cochain::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](std::int64_t v) { return v == 0; });
}

void Cochain::check_compatible(const Cochain& o) const
{
    if (g_ != o.g_ || level_ != o.level_ || !(coeff_ == o.coeff_))
        throw InvalidError("cochains live on different groupoids, levels or coefficients");
}

Cochain Cochain::operator+(const Cochain& o) const
{
    check_compatible(o);
    auto v = values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
    return Cochain(g_, level_, coeff_, std::move(v));
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator-() const { return scaled(-1); }

Cochain Cochain::scaled(std::int64_t k) const
{
    auto v = values_;
    for (auto& x : v) x = coeff_.reduce(x * k);
    return Cochain(g_, level_, coeff_, std::move(v));
}

bool Cochain::operator==(const Cochain& o) const
{
    return g_ == o.g_ && level_ == o.level_ && coeff_ == o.coeff_ && values_ == o.values_;
}

std::string tuple_key(const GradedGroupoid& g, const int* tuple, int level)
{
    if (level == 0) return g.object_id(tuple[0]);
    std::string s;
    for (int i = 0; i < level; ++i) {
        if (i) s += '|';
        s += g.morphism_id(tuple[i]);
    }
    return s;
}

DifferentialMatrix differential_matrix(const GradedGroupoid& g, int l, Involution inv, const Limits& limits)
{
    NerveLevel lower(g, l, limits.nerve_cap);
    NerveLevel upper(g, l + 1, limits.nerve_cap);
    DifferentialMatrix D;
    D.rows = upper.size();
    D.cols = lower.size();
    D.entries.resize(D.rows);
    std::vector<int> face(std::max(l, 1));
    for (std::size_t r = 0; r < D.rows; ++r) {
        const int* t = upper.tuple(r);
        std::map<std::size_t, int> row;
        const int last = t[l];
        const int twist = (inv == Involution::negation && g.phi(last) == -1) ? -1 : 1;
        if (l == 0) {
            face[0] = g.src(t[0]);
            row[lower.index_of(face.data())] += 1;
            face[0] = g.tgt(t[0]);
            row[lower.index_of(face.data())] -= twist;
        } else {
            for (int p = 0; p <= l + 1; ++p) {
                int k = 0;
                for (int i = 0; i <= l; ++i) {
                    // 0-based: face p drops entry 0 (p = 0), composes entries p-1, p, or drops entry l
                    if (p == 0 && i == 0) continue;
                    if (p == l + 1 && i == l) continue;
                    if (p >= 1 && p <= l && i == p) continue;
                    if (p >= 1 && p <= l && i == p - 1) {
                        face[k++] = g.compose(t[p - 1], t[p]);
                        continue;
                    }
                    face[k++] = t[i];
                }
                int sign = (p % 2 == 0) ? 1 : -1;
                if (p == l + 1) sign *= twist;
                row[lower.index_of(face.data())] += sign;
            }
        }
        for (auto [c, v] : row)
            if (v != 0) D.entries[r].push_back({c, v});
    }
    return D;
}

Cochain graded_differential(const Cochain& c, const Limits& limits)
{
    auto D = differential_matrix(*c.groupoid(), c.level(), c.coefficients().involution, limits);
    std::vector<std::int64_t> out(D.rows, 0);
    for (std::size_t r = 0; r < D.rows; ++r) {
        std::int64_t acc = 0;
        for (auto [col, v] : D.entries[r]) acc += v * c.value(col);
        out[r] = acc;
    }
    return Cochain(c.groupoid(), c.level() + 1, c.coefficients(), std::move(out));
}

BigInt AbelianGroupPresentation::order() const
{
    BigInt o = 1;
    for (auto d : invariant_factors) {
        if (d == 0) return 0;
        o *= d;
    }
    return o;
}

std::string AbelianGroupPresentation::to_string() const
{
    if (invariant_factors.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (i) s += " ⊕ ";
        s += invariant_factors[i] == 0 ? "Z" : "Z/" + std::to_string(invariant_factors[i]);
    }
    return s;
}

bool CohomologyClass::is_zero() const
{
    return std::all_of(coordinates.begin(), coordinates.end(), [](std::int64_t v) { return v == 0; });
}

namespace {

Matrix<std::int64_t> dense_mod(const DifferentialMatrix& D, std::int64_t m)
{
    Matrix<std::int64_t> A(D.rows, D.cols);
    for (std::size_t r = 0; r < D.rows; ++r)
        for (auto [c, v] : D.entries[r]) A(r, c) = mod_reduce(A(r, c) + v, m);
    return A;
}

BigMatrix dense_big(const DifferentialMatrix& D)
{
    BigMatrix A(D.rows, D.cols);
    for (std::size_t r = 0; r < D.rows; ++r)
        for (auto [c, v] : D.entries[r]) A(r, c) += v;
    return A;
}

std::int64_t to_i64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

BigInt big_mod(const BigInt& v, const BigInt& m)
{
    if (m == 0) return v;
    BigInt r = v % m;
    return r < 0 ? BigInt(r + m) : r;
}

}  // namespace

CohomologyGroup::CohomologyGroup(GroupoidPtr g, int degree, CoefficientModule coeff, const Limits& limits)
    : g_(std::move(g)), n_(degree), coeff_(coeff), limits_(limits)
{
    check_modulus(coeff_.modulus);
    if (n_ < 0 || n_ > limits_.max_degree)
        throw UnsupportedError("cohomology degree " + std::to_string(n_) + " outside the supported range 0.." +
                               std::to_string(limits_.max_degree));
    const std::int64_t m = coeff_.modulus;
    up_ = differential_matrix(*g_, n_, coeff_.involution, limits_);
    has_down_ = n_ > 0;
    if (has_down_) down_ = differential_matrix(*g_, n_ - 1, coeff_.involution, limits_);

    // kernel of Δ at level n
    std::size_t r = 0;
    if (m != 0) {
        auto ks = modular_smith(dense_mod(up_, m), m, false);
        kV_ = std::move(ks.V);
        kV_inv_ = std::move(ks.V_inv);
        for (std::size_t i = 0; i < up_.cols; ++i) {
            std::int64_t gi = std::gcd(ks.d[i], m);
            if (gi == 1) continue;
            gen_cols_.push_back(i);
            gen_order_.push_back(gi);
            gen_scale_.push_back(m / gi);
        }
    } else {
        auto ks = smith_normal_form(dense_big(up_), true);
        kVz_ = std::move(ks.V);
        kVz_inv_ = std::move(ks.V_inv);
        for (std::size_t i = ks.rank; i < up_.cols; ++i) {
            gen_cols_.push_back(i);
            gen_order_.push_back(0);
            gen_scale_.push_back(1);
        }
    }
    r = gen_cols_.size();

    // coordinates of the images of basis cochains at level n-1
    std::vector<std::vector<BigInt>> images;
    if (has_down_) {
        std::vector<std::vector<std::pair<std::size_t, int>>> columns(down_.cols);
        for (std::size_t row = 0; row < down_.rows; ++row)
            for (auto [c, v] : down_.entries[row]) columns[c].push_back({row, v});
        for (std::size_t j = 0; j < down_.cols; ++j) {
            std::vector<std::int64_t> x(down_.rows, 0);
            for (auto [row, v] : columns[j]) x[row] = coeff_.reduce(x[row] + v);
            images.push_back(kernel_coordinates(x));
        }
    }

    if (m != 0) {
        Matrix<std::int64_t> R(r, r + images.size());
        for (std::size_t i = 0; i < r; ++i) R(i, i) = gen_order_[i] % m;
        for (std::size_t j = 0; j < images.size(); ++j)
            for (std::size_t i = 0; i < r; ++i) R(i, r + j) = to_i64(big_mod(images[j][i], m));
        auto rs = modular_smith(R, m, true);
        BigMatrix H(r, r);
        for (std::size_t i = 0; i < r; ++i) H(i, i) = std::gcd(rs.d[i], m);
        auto hs = smith_normal_form(H, false);
        BigMatrix U(r, r), Uinv(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                U(i, j) = rs.U(i, j);
                Uinv(i, j) = rs.U_inv(i, j);
            }
        map_ = multiply(hs.U, U);
        rep_ = multiply(Uinv, hs.U_inv);
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t e = to_i64(hs.D(j, j));
            if (e == 1) continue;
            kept_rows_.push_back(j);
            group_.invariant_factors.push_back(e);
        }
    } else {
        BigMatrix K(r, images.size());
        for (std::size_t j = 0; j < images.size(); ++j)
            for (std::size_t i = 0; i < r; ++i) K(i, j) = images[j][i];
        auto ks = smith_normal_form(K, false);
        map_ = ks.U;
        rep_ = ks.U_inv;
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t e = j < std::min(K.rows(), K.cols()) ? to_i64(ks.D(j, j)) : 0;
            if (e == 1) continue;
            kept_rows_.push_back(j);
            group_.invariant_factors.push_back(e);
        }
    }

    if (has_down_) {
        if (m != 0)
            solve_mod_ = modular_smith(dense_mod(down_, m), m, true);
        else
            solve_int_ = smith_normal_form(dense_big(down_), true);
    }
}

std::vector<std::int64_t> CohomologyGroup::apply(const DifferentialMatrix& D, const std::vector<std::int64_t>& x) const
{
    std::vector<std::int64_t> out(D.rows, 0);
    for (std::size_t r = 0; r < D.rows; ++r) {
        std::int64_t acc = 0;
        for (auto [c, v] : D.entries[r]) acc = coeff_.reduce(acc + v * x[c]);
        out[r] = acc;
    }
    return out;
}

std::vector<BigInt> CohomologyGroup::kernel_coordinates(const std::vector<std::int64_t>& x) const
{
    const std::int64_t m = coeff_.modulus;
    std::vector<BigInt> k(gen_cols_.size());
    for (std::size_t i = 0; i < gen_cols_.size(); ++i) {
        std::size_t row = gen_cols_[i];
        if (m != 0) {
            std::int64_t acc = 0;
            for (std::size_t c = 0; c < x.size(); ++c) acc = mod_reduce(acc + kV_inv_(row, c) * x[c], m);
            if (acc % gen_scale_[i] != 0) throw InvalidError("cochain is not in the kernel of the differential");
            k[i] = (acc / gen_scale_[i]) % gen_order_[i];
        } else {
            BigInt acc = 0;
            for (std::size_t c = 0; c < x.size(); ++c) acc += kVz_inv_(row, c) * x[c];
            k[i] = acc;
        }
    }
    return k;
}

void CohomologyGroup::check(const Cochain& c) const
{
    if (c.groupoid() != g_ && c.groupoid()->base().morphism_ids() != g_->base().morphism_ids())
        throw InvalidError("cochain lives on a different groupoid");
    if (c.level() != n_) throw InvalidError("cochain level does not match the cohomology degree");
    if (!(c.coefficients() == coeff_)) throw InvalidError("cochain coefficients do not match");
}

Cochain CohomologyGroup::differential(const Cochain& c) const
{
    check(c);
    return Cochain(g_, n_ + 1, coeff_, apply(up_, c.values()));
}

Cochain CohomologyGroup::coboundary_of(const Cochain& eta) const
{
    if (n_ == 0) throw UnsupportedError("no coboundaries in degree 0");
    if (eta.level() != n_ - 1 || !(eta.coefficients() == coeff_)) throw InvalidError("cochain does not match degree n-1");
    return Cochain(g_, n_, coeff_, apply(down_, eta.values()));
}

std::optional<std::size_t> CohomologyGroup::first_violation(const Cochain& c) const
{
    check(c);
    auto dx = apply(up_, c.values());
    for (std::size_t i = 0; i < dx.size(); ++i)
        if (dx[i] != 0) return i;
    return std::nullopt;
}

std::vector<std::int64_t> CohomologyGroup::coordinates(const Cochain& c) const
{
    if (auto bad = first_violation(c)) {
        NerveLevel lv(*g_, n_ + 1, limits_.nerve_cap);
        throw InvalidError("not a cocycle: Δ^φ is nonzero at (" + tuple_key(*g_, lv.tuple(*bad), n_ + 1) + ")");
    }
    auto k = kernel_coordinates(c.values());
    std::vector<std::int64_t> z;
    for (std::size_t idx = 0; idx < kept_rows_.size(); ++idx) {
        std::size_t j = kept_rows_[idx];
        BigInt acc = 0;
        for (std::size_t i = 0; i < k.size(); ++i) acc += map_(j, i) * k[i];
        z.push_back(to_i64(big_mod(acc, group_.invariant_factors[idx])));
    }
    return z;
}

CohomologyClass CohomologyGroup::reduce(const Cochain& c) const
{
    auto z = coordinates(c);
    return CohomologyClass{n_, c, group_, std::move(z)};
}

Cochain CohomologyGroup::representative(const std::vector<std::int64_t>& z) const
{
    if (z.size() != kept_rows_.size()) throw InvalidError("coordinate vector has the wrong length");
    const std::size_t r = gen_cols_.size();
    std::vector<BigInt> full(r, 0);
    for (std::size_t idx = 0; idx < kept_rows_.size(); ++idx) full[kept_rows_[idx]] = z[idx];
    std::vector<BigInt> k(r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) k[i] += rep_(i, j) * full[j];
    const std::int64_t m = coeff_.modulus;
    std::vector<std::int64_t> x(up_.cols, 0);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t col = gen_cols_[i];
        if (m != 0) {
            std::int64_t ki = to_i64(big_mod(k[i], gen_order_[i]));
            if (ki == 0) continue;
            std::int64_t s = mod_reduce(ki * gen_scale_[i], m);
            for (std::size_t rr = 0; rr < x.size(); ++rr) x[rr] = mod_reduce(x[rr] + s * kV_(rr, col), m);
        } else {
            for (std::size_t rr = 0; rr < x.size(); ++rr) x[rr] += to_i64(k[i] * kVz_(rr, col));
        }
    }
    return Cochain(g_, n_, coeff_, std::move(x));
}

std::optional<Cochain> CohomologyGroup::solve_coboundary(const Cochain& b) const
{
    check(b);
    if (!has_down_) throw UnsupportedError("degree 0 has no coboundaries");
    const std::int64_t m = coeff_.modulus;
    const std::size_t rows = down_.rows, cols = down_.cols;
    std::vector<std::int64_t> eta(cols, 0);
    if (m != 0) {
        const auto& S = solve_mod_;
        std::vector<std::int64_t> y(cols, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            std::int64_t c = 0;
            for (std::size_t j = 0; j < rows; ++j) c = mod_reduce(c + S.U(i, j) * b.value(j), m);
            std::int64_t d = i < cols ? S.d[i] : 0;
            if (d == 0) {
                if (c != 0) return std::nullopt;
                continue;
            }
            std::int64_t g = std::gcd(d, m);
            if (c % g != 0) return std::nullopt;
            std::int64_t mg = m / g;
            y[i] = mg == 1 ? 0 : mod_reduce((c / g) * mod_inverse(d / g, mg), mg);
        }
        for (std::size_t i = 0; i < cols; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < cols; ++j) acc = mod_reduce(acc + S.V(i, j) * y[j], m);
            eta[i] = acc;
        }
    } else {
        const auto& S = solve_int_;
        std::vector<BigInt> y(cols, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            BigInt c = 0;
            for (std::size_t j = 0; j < rows; ++j) c += S.U(i, j) * b.value(j);
            BigInt d = (i < std::min(rows, cols)) ? S.D(i, i) : BigInt(0);
            if (d == 0) {
                if (c != 0) return std::nullopt;
                continue;
            }
            if (c % d != 0) return std::nullopt;
            y[i] = c / d;
        }
        for (std::size_t i = 0; i < cols; ++i) {
            BigInt acc = 0;
            for (std::size_t j = 0; j < cols; ++j) acc += S.V(i, j) * y[j];
            eta[i] = to_i64(acc);
        }
    }
    Cochain out(g_, n_ - 1, coeff_, std::move(eta));
    if (apply(down_, out.values()) != b.values()) throw Error("internal error: coboundary solver mismatch");
    return out;
}

std::optional<Cochain> CohomologyGroup::cohomologous(const Cochain& c1, const Cochain& c2) const
{
    if (!is_cocycle(c1) || !is_cocycle(c2)) throw InvalidError("is_cohomologous needs two cocycles");
    if (n_ == 0) throw UnsupportedError("degree 0 has no coboundaries; compare the cocycles directly");
    return solve_coboundary(c2 - c1);
}

std::vector<std::vector<std::int64_t>> CohomologyGroup::enumerate(std::size_t max_count) const
{
    BigInt ord = group_.order();
    if (ord == 0) throw UnsupportedError("cannot enumerate an infinite cohomology group");
    if (ord > max_count) throw CapExceededError("cohomology group has " + ord.str() + " elements", max_count);
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> z(group_.invariant_factors.size(), 0);
    for (;;) {
        out.push_back(z);
        std::size_t i = 0;
        for (; i < z.size(); ++i) {
            if (++z[i] < group_.invariant_factors[i]) break;
            z[i] = 0;
        }
        if (i == z.size()) break;
    }
    return out;
}

CohomologyGroup cohomology_group(const GroupoidPtr& g, int degree, CoefficientModule coeff, const Limits& limits)
{
    return CohomologyGroup(g, degree, coeff, limits);
}

CohomologyClass reduce_to_class(const Cochain& cocycle, const Limits& limits)
{
    CohomologyGroup H(cocycle.groupoid(), cocycle.level(), cocycle.coefficients(), limits);
    return H.reduce(cocycle);
}

std::optional<Cochain> is_cohomologous(const Cochain& c1, const Cochain& c2, const Limits& limits)
{
    if (c1.groupoid() != c2.groupoid() || c1.level() != c2.level() || !(c1.coefficients() == c2.coefficients()))
        throw InvalidError("is_cohomologous needs cochains on the same groupoid, level and coefficients");
    CohomologyGroup H(c1.groupoid(), c1.level(), c1.coefficients(), limits);
    return H.cohomologous(c1, c2);
}

Cochain pullback(const Cochain& c, const GroupoidFunctor& F, const Limits& limits)
{
    if (F.target() != c.groupoid()) throw InvalidError("pullback functor does not land on the cochain's groupoid");
    const auto& coeff = c.coefficients();
    bool twist = coeff.involution == Involution::negation && coeff.modulus != 2;
    if (twist && !F.even()) throw InvalidError("pullback with twisted coefficients needs an even functor");
    const int k = c.level();
    NerveLevel src(*F.source(), k, limits.nerve_cap);
    NerveLevel tgt(*F.target(), k, limits.nerve_cap);
    std::vector<std::int64_t> out(src.size());
    std::vector<int> image(std::max(k, 1));
    for (std::size_t i = 0; i < src.size(); ++i) {
        const int* t = src.tuple(i);
        if (k == 0)
            image[0] = F.obj(t[0]);
        else
            for (int j = 0; j < k; ++j) image[j] = F.mor(t[j]);
        out[i] = c.value(tgt.index_of(image.data()));
    }
    return Cochain(F.source(), k, coeff, std::move(out));
}

std::int64_t default_modulus(const GradedGroupoid& g)
{
    std::int64_t l = 1;
    for (int h = 0; h < g.num_morphisms(); ++h) {
        if (g.src(h) != g.tgt(h)) continue;
        std::int64_t order = 1;
        for (int p = h; p != g.identity(g.src(h)); p = g.compose(p, h)) ++order;
        l = std::lcm(l, order);
    }
    return 2 * l;
}

std::int64_t circle_lift(const GradedGroupoid& g, int degree, Involution inv, const Limits& limits)
{
    if (degree <= 0) return 1;
    auto d = differential_matrix(g, degree - 1, inv, limits);
    BigMatrix M(d.rows, d.cols);
    for (std::size_t i = 0; i < d.rows; ++i)
        for (auto [j, v] : d.entries[i]) M(i, j) += v;
    std::int64_t L = 1;
    for (const auto& v : smith_normal_form(M, false).diagonal())
        if (v != 0) L = std::lcm(L, static_cast<std::int64_t>(v));
    return L;
}

}  // namespace twistbench
