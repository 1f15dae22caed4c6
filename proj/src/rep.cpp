#include "twistbench/rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace twistbench {

namespace {

bool odd_index(const SuperDim& d, int i) { return i >= d.even; }

CMatrix conj_if(const CMatrix& m, bool c) { return c ? CMatrix(m.conjugate()) : m; }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// the entries of m outside the blocks of the given degree
double off_degree(const CMatrix& m, const SuperDim& rows, const SuperDim& cols, int degree)
{
    double worst = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if ((odd_index(rows, i) + odd_index(cols, j)) % 2 != degree) worst = std::max(worst, std::abs(m(i, j)));
    return worst;
}

int operator_degree(const TwistedMorphismData& r, int h)
{
    return (r.source().grading(h) + r.target().grading(h)) % 2;
}

// σ_{φ}(phase(λs - λt)) on one composable pair
Complex pair_scalar(const TwistedMorphismData& r, std::size_t pair, int phi)
{
    Complex z = phase(r.source().lambda().value(pair), r.source().modulus()) *
                std::conj(phase(r.target().lambda().value(pair), r.target().modulus()));
    return phi == -1 ? std::conj(z) : z;
}

void check_same_ends(const TwistedMorphismData& a, const TwistedMorphismData& b, const char* what)
{
    if (a.groupoid() != b.groupoid() || !(a.source() == b.source()) || !(a.target() == b.target()))
        throw InvalidError(std::string(what) + " needs 1-morphisms between the same extensions");
}

// permutation sending the concatenated bases (a, b) to even-first order
std::vector<int> sum_order(const SuperDim& a, const SuperDim& b)
{
    std::vector<int> to(a.total() + b.total());
    int next = 0;
    for (int i = 0; i < a.even; ++i) to[i] = next++;
    for (int i = 0; i < b.even; ++i) to[a.total() + i] = next++;
    for (int i = a.even; i < a.total(); ++i) to[i] = next++;
    for (int i = b.even; i < b.total(); ++i) to[a.total() + i] = next++;
    return to;
}

CMatrix permuted(const CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    CMatrix out = CMatrix::Zero(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(rows[i], cols[j]) = m(i, j);
    return out;
}

// real null space of A, as columns, with singular values below tol·max(1, σmax) dropped
Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, double tol)
{
    const auto n = A.cols();
    if (n == 0) return Eigen::MatrixXd(0, 0);
    if (A.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

struct Unknowns {
    std::vector<int> offset;  // per object, into the real coordinate vector
    int size = 0;
};

Unknowns layout(const SuperDims& d1, const SuperDims& d2)
{
    Unknowns u;
    for (std::size_t x = 0; x < d1.size(); ++x) {
        u.offset.push_back(u.size);
        u.size += 2 * d1[x].total() * d2[x].total();
    }
    return u;
}

std::vector<CMatrix> unpack(const Eigen::VectorXd& v, const Unknowns& u, const SuperDims& d1, const SuperDims& d2)
{
    std::vector<CMatrix> X;
    for (std::size_t x = 0; x < d1.size(); ++x) {
        const int rows = d2[x].total(), cols = d1[x].total();
        CMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                const int k = u.offset[x] + 2 * (i * cols + j);
                m(i, j) = Complex(v(k), v(k + 1));
            }
        X.push_back(std::move(m));
    }
    return X;
}

TwistedMorphismData unitarize(const TwistedMorphismData& r)
{
    const auto& g = *r.groupoid();
    std::vector<CMatrix> G;
    for (const auto& d : r.dims()) G.push_back(CMatrix::Zero(d.total(), d.total()));
    for (int h = 0; h < g.num_morphisms(); ++h) {
        const auto& op = r.op(h);
        CMatrix H = op.matrix.adjoint() * op.matrix;
        G[g.src(h)] += op.antilinear ? CMatrix(H.transpose()) : H;
    }
    std::vector<CMatrix> P;
    for (std::size_t x = 0; x < G.size(); ++x) {
        const auto& d = r.dims()[x];
        for (int i = 0; i < d.total(); ++i)
            for (int j = 0; j < d.total(); ++j)
                if (odd_index(d, i) != odd_index(d, j)) G[x](i, j) = 0;
        Eigen::LLT<CMatrix> llt(G[x]);
        P.push_back(llt.matrixL().adjoint());
    }
    return change_basis(r, P);
}

}  // namespace

Complex phase(std::int64_t k, std::int64_t m)
{
    const double t = 2 * std::numbers::pi * static_cast<double>(mod_reduce(k, m)) / static_cast<double>(m);
    return {std::cos(t), std::sin(t)};
}

TwistedMorphismData::TwistedMorphismData(TwistedExtension source, TwistedExtension target, SuperDims dims,
                                         std::vector<Operator> ops, double tolerance)
    : source_(std::move(source)), target_(std::move(target)), dims_(std::move(dims)), ops_(std::move(ops)),
      tolerance_(tolerance)
{
    if (source_.groupoid() != target_.groupoid())
        throw InvalidError("source and target extensions live on different groupoids");
    if (!(tolerance_ > 0)) throw InvalidError("tolerance must be positive");
    const auto& g = *source_.groupoid();
    if (dims_.size() != static_cast<std::size_t>(g.num_objects()))
        throw InvalidError("dims must list every object");
    for (std::size_t x = 0; x < dims_.size(); ++x)
        if (dims_[x].even < 0 || dims_[x].odd < 0)
            throw InvalidError("negative dimension at " + g.object_id(static_cast<int>(x)));
    if (ops_.size() != static_cast<std::size_t>(g.num_morphisms()))
        throw InvalidError("ops must list every morphism");
    for (int h = 0; h < g.num_morphisms(); ++h) {
        const auto& m = ops_[h].matrix;
        if (m.rows() != dims_[g.tgt(h)].total() || m.cols() != dims_[g.src(h)].total())
            throw InvalidError("matrix of " + g.morphism_id(h) + " has shape " + std::to_string(m.rows()) + "x" +
                               std::to_string(m.cols()) + ", expected " + std::to_string(dims_[g.tgt(h)].total()) +
                               "x" + std::to_string(dims_[g.src(h)].total()));
    }
}

int TwistedMorphismData::total_dimension() const
{
    int n = 0;
    for (const auto& d : dims_) n += d.total();
    return n;
}

ValidationReport validate_rep(const TwistedMorphismData& r, const Limits& limits)
{
    ValidationReport rep;
    const auto& g = *r.groupoid();
    const double tol = r.tolerance();
    bool flag_seen = false, parity_seen = false, inv_seen = false;
    for (int h = 0; h < g.num_morphisms(); ++h) {
        const auto& op = r.op(h);
        const auto& ds = r.dims()[g.src(h)];
        const auto& dt = r.dims()[g.tgt(h)];
        if (!flag_seen && op.antilinear != (g.phi(h) == -1)) {
            rep.add("antilinear flag", g.morphism_id(h) + " has φ = " + std::to_string(g.phi(h)) + " but antilinear = " +
                                           (op.antilinear ? "true" : "false"));
            flag_seen = true;
        }
        const int deg = operator_degree(r, h);
        if (!parity_seen && off_degree(op.matrix, dt, ds, deg) > tol * std::max(1.0, max_abs(op.matrix))) {
            rep.add("parity", g.morphism_id(h) + " is not homogeneous of degree " + std::to_string(deg));
            parity_seen = true;
        }
        if (!inv_seen && ds.total() != dt.total()) {
            rep.add("invertible", g.morphism_id(h) + " maps dimension " + std::to_string(ds.total()) + " to " +
                                      std::to_string(dt.total()));
            inv_seen = true;
        } else if (!inv_seen && ds.total() > 0) {
            Eigen::JacobiSVD<CMatrix> svd(op.matrix);
            const auto& s = svd.singularValues();
            if (s(s.size() - 1) <= tol * s(0)) {
                rep.add("invertible", g.morphism_id(h) + " is singular");
                inv_seen = true;
            }
        }
    }
    if (!rep.ok()) return rep;

    NerveLevel pairs(g, 2, limits.nerve_cap);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int* t = pairs.tuple(i);
        const int h12 = g.compose(t[0], t[1]);
        const auto& o1 = r.op(t[0]);
        const auto& o2 = r.op(t[1]);
        CMatrix lhs = o1.matrix * conj_if(o2.matrix, o1.antilinear);
        const int kappa = (r.source().grading(t[0]) + r.target().grading(t[0])) * r.target().grading(t[1]) % 2;
        Complex z = pair_scalar(r, i, g.phi(h12)) * (kappa ? -1.0 : 1.0);
        CMatrix rhs = z * r.op(h12).matrix;
        const double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
        if (max_abs(lhs - rhs) > tol * scale) {
            rep.add("relation", "T(γ1)T(γ2) != σ(phase λ)·T(γ1∘γ2) at (" + tuple_key(g, t, 2) + "), deviation " +
                                    std::to_string(max_abs(lhs - rhs)));
            break;
        }
    }
    return rep;
}

TwistedMorphismData identity_morphism(const TwistedExtension& e, double tolerance)
{
    const auto& g = *e.groupoid();
    std::vector<Operator> ops;
    for (int h = 0; h < g.num_morphisms(); ++h) ops.push_back({CMatrix::Identity(1, 1), g.phi(h) == -1});
    return TwistedMorphismData(e, e, SuperDims(g.num_objects(), SuperDim{1, 0}), std::move(ops), tolerance);
}

TwistedMorphismData zero_morphism(const TwistedExtension& source, const TwistedExtension& target, double tolerance)
{
    const auto& g = *source.groupoid();
    std::vector<Operator> ops;
    for (int h = 0; h < g.num_morphisms(); ++h) ops.push_back({CMatrix(0, 0), g.phi(h) == -1});
    return TwistedMorphismData(source, target, SuperDims(g.num_objects()), std::move(ops), tolerance);
}

TwistedMorphismData rank_one_morphism(const TwistedExtension& source, const TwistedExtension& target,
                                      const LineMorphism& w, double tolerance)
{
    const auto& g = *source.groupoid();
    const auto m = source.modulus();
    if (target.modulus() != m || w.eta.coefficients().modulus != m)
        throw InvalidError("line morphism data must share the extensions' modulus");
    SuperDims dims;
    for (int x = 0; x < g.num_objects(); ++x)
        dims.push_back(w.parity.value(x) ? SuperDim{0, 1} : SuperDim{1, 0});
    std::vector<Operator> ops;
    for (int h = 0; h < g.num_morphisms(); ++h) {
        Complex u = phase(g.phi(h) * w.eta.value(h), m) * (w.sign.value(h) ? -1.0 : 1.0);
        ops.push_back({CMatrix::Constant(1, 1, u), g.phi(h) == -1});
    }
    return TwistedMorphismData(source, target, std::move(dims), std::move(ops), tolerance);
}

TwistedMorphismData direct_sum(const TwistedMorphismData& r1, const TwistedMorphismData& r2)
{
    check_same_ends(r1, r2, "direct_sum");
    const auto& g = *r1.groupoid();
    SuperDims dims;
    std::vector<std::vector<int>> order;
    for (int x = 0; x < g.num_objects(); ++x) {
        const auto& a = r1.dims()[x];
        const auto& b = r2.dims()[x];
        dims.push_back({a.even + b.even, a.odd + b.odd});
        order.push_back(sum_order(a, b));
    }
    std::vector<Operator> ops;
    for (int h = 0; h < g.num_morphisms(); ++h) {
        const auto& m1 = r1.op(h).matrix;
        const auto& m2 = r2.op(h).matrix;
        CMatrix block = CMatrix::Zero(m1.rows() + m2.rows(), m1.cols() + m2.cols());
        block.topLeftCorner(m1.rows(), m1.cols()) = m1;
        block.bottomRightCorner(m2.rows(), m2.cols()) = m2;
        if (r1.op(h).antilinear != r2.op(h).antilinear)
            throw InvalidError("direct_sum: antilinear flags differ at " + g.morphism_id(h));
        ops.push_back({permuted(block, order[g.tgt(h)], order[g.src(h)]), r1.op(h).antilinear});
    }
    return TwistedMorphismData(r1.source(), r1.target(), std::move(dims), std::move(ops),
                               std::max(r1.tolerance(), r2.tolerance()));
}

TwistedMorphismData compose_morphisms(const TwistedMorphismData& r2, const TwistedMorphismData& r1)
{
    if (r1.groupoid() != r2.groupoid() || !(r1.target() == r2.source()))
        throw InvalidError("compose_morphisms: the middle extensions do not match");
    const auto& g = *r1.groupoid();
    SuperDims dims;
    std::vector<std::vector<int>> order;  // kron index -> even-first index
    std::vector<std::vector<int>> parity;
    for (int x = 0; x < g.num_objects(); ++x) {
        const auto& a = r2.dims()[x];
        const auto& b = r1.dims()[x];
        std::vector<int> par(a.total() * b.total());
        SuperDim d;
        for (int i = 0; i < a.total(); ++i)
            for (int j = 0; j < b.total(); ++j) {
                par[i * b.total() + j] = (odd_index(a, i) + odd_index(b, j)) % 2;
                (par[i * b.total() + j] ? d.odd : d.even)++;
            }
        std::vector<int> to(par.size());
        int ne = 0, no = d.even;
        for (std::size_t k = 0; k < par.size(); ++k) to[k] = par[k] ? no++ : ne++;
        dims.push_back(d);
        order.push_back(std::move(to));
        parity.push_back(std::move(par));
    }
    std::vector<Operator> ops;
    for (int h = 0; h < g.num_morphisms(); ++h) {
        const auto& f = r2.op(h).matrix;
        const auto& k = r1.op(h).matrix;
        if (r1.op(h).antilinear != r2.op(h).antilinear)
            throw InvalidError("compose_morphisms: antilinear flags differ at " + g.morphism_id(h));
        const int gdeg = operator_degree(r1, h);
        const auto& a = r2.dims()[g.src(h)];
        CMatrix m(f.rows() * k.rows(), f.cols() * k.cols());
        for (int i1 = 0; i1 < f.rows(); ++i1)
            for (int j1 = 0; j1 < f.cols(); ++j1) {
                const double sign = (gdeg && odd_index(a, j1)) ? -1.0 : 1.0;
                m.block(i1 * k.rows(), j1 * k.cols(), k.rows(), k.cols()) = (sign * f(i1, j1)) * k;
            }
        ops.push_back({permuted(m, order[g.tgt(h)], order[g.src(h)]), r1.op(h).antilinear});
    }
    return TwistedMorphismData(r1.source(), r2.target(), std::move(dims), std::move(ops),
                               std::max(r1.tolerance(), r2.tolerance()));
}

TwistedMorphismData change_basis(const TwistedMorphismData& r, const std::vector<CMatrix>& P)
{
    const auto& g = *r.groupoid();
    if (P.size() != r.dims().size()) throw InvalidError("change_basis needs one matrix per object");
    std::vector<CMatrix> Pinv;
    for (std::size_t x = 0; x < P.size(); ++x) {
        const auto& d = r.dims()[x];
        if (P[x].rows() != d.total() || P[x].cols() != d.total())
            throw InvalidError("change_basis matrix has the wrong shape at " + g.object_id(static_cast<int>(x)));
        if (off_degree(P[x], d, d, 0) > r.tolerance() * std::max(1.0, max_abs(P[x])))
            throw InvalidError("change_basis matrix is not even at " + g.object_id(static_cast<int>(x)));
        Eigen::FullPivLU<CMatrix> lu(P[x]);
        if (d.total() > 0 && !lu.isInvertible())
            throw InvalidError("change_basis matrix is singular at " + g.object_id(static_cast<int>(x)));
        Pinv.push_back(d.total() ? CMatrix(lu.inverse()) : CMatrix(0, 0));
    }
    std::vector<Operator> ops;
    for (int h = 0; h < g.num_morphisms(); ++h) {
        const auto& op = r.op(h);
        ops.push_back({P[g.tgt(h)] * op.matrix * conj_if(Pinv[g.src(h)], op.antilinear), op.antilinear});
    }
    return TwistedMorphismData(r.source(), r.target(), r.dims(), std::move(ops), r.tolerance());
}

IntertwinerSpace intertwiner_space(const TwistedMorphismData& r1, const TwistedMorphismData& r2)
{
    check_same_ends(r1, r2, "intertwiner_space");
    const auto& g = *r1.groupoid();
    const auto& d1 = r1.dims();
    const auto& d2 = r2.dims();
    const Unknowns u = layout(d1, d2);

    std::vector<int> row_offset;
    int rows = 0;
    for (int h = 0; h < g.num_morphisms(); ++h) {
        row_offset.push_back(rows);
        rows += 2 * d2[g.tgt(h)].total() * d1[g.src(h)].total();
    }
    // residual X_t M1 - M2 conj^a(X_s), column by column over the real unknowns
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, u.size);
    std::vector<bool> even(u.size);
    for (int x = 0; x < g.num_objects(); ++x) {
        const int nr = d2[x].total(), nc = d1[x].total();
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j)
                for (int part = 0; part < 2; ++part) {
                    const int col = u.offset[x] + 2 * (i * nc + j) + part;
                    even[col] = odd_index(d2[x], i) == odd_index(d1[x], j);
                    const Complex val = part ? Complex(0, 1) : Complex(1, 0);
                    for (int h = 0; h < g.num_morphisms(); ++h) {
                        if (g.tgt(h) != x && g.src(h) != x) continue;
                        const auto& o1 = r1.op(h);
                        const auto& o2 = r2.op(h);
                        CMatrix res = CMatrix::Zero(d2[g.tgt(h)].total(), d1[g.src(h)].total());
                        if (g.tgt(h) == x) res.row(i) += val * o1.matrix.row(j);
                        if (g.src(h) == x) res.col(j) -= (o1.antilinear ? std::conj(val) : val) * o2.matrix.col(i);
                        for (int a = 0; a < res.rows(); ++a)
                            for (int b = 0; b < res.cols(); ++b) {
                                const int k = row_offset[h] + 2 * (a * res.cols() + b);
                                A(k, col) = res(a, b).real();
                                A(k + 1, col) = res(a, b).imag();
                            }
                    }
                }
    }
    const double tol = std::max(r1.tolerance(), r2.tolerance());
    IntertwinerSpace out;
    Eigen::MatrixXd N = null_space(A, tol);
    for (Eigen::Index c = 0; c < N.cols(); ++c) out.basis.push_back(unpack(N.col(c), u, d1, d2));

    std::vector<int> cols;
    for (int c = 0; c < u.size; ++c)
        if (even[c]) cols.push_back(c);
    Eigen::MatrixXd Ae(rows, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) Ae.col(static_cast<Eigen::Index>(c)) = A.col(cols[c]);
    Eigen::MatrixXd Ne = null_space(Ae, tol);
    for (Eigen::Index c = 0; c < Ne.cols(); ++c) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(u.size);
        for (std::size_t k = 0; k < cols.size(); ++k) v(cols[k]) = Ne(static_cast<Eigen::Index>(k), c);
        out.even_basis.push_back(unpack(v, u, d1, d2));
    }
    return out;
}

std::string to_string(EndoType t)
{
    switch (t) {
    case EndoType::R: return "R";
    case EndoType::C: return "C";
    case EndoType::H: return "H";
    }
    return "?";
}

bool is_irreducible(const TwistedMorphismData& r, std::uint64_t seed)
{
    auto report = validate_rep(r);
    if (!report.ok()) throw InvalidError("irreducibility needs a valid representation", report);
    if (r.total_dimension() == 0) return false;
    auto u = unitarize(r);
    auto space = intertwiner_space(u, u);
    const int k = space.even_real_dimension();
    if (k != 1 && k != 2 && k != 4) return false;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<CMatrix> X;
    for (const auto& d : u.dims()) X.push_back(CMatrix::Zero(d.total(), d.total()));
    for (const auto& b : space.even_basis) {
        const double c = normal(rng);
        for (std::size_t x = 0; x < X.size(); ++x) X[x] += c * b[x];
    }
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& m : X) {
        if (m.size() == 0) continue;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m + m.adjoint());
        lo = std::min(lo, es.eigenvalues().minCoeff());
        hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    return hi - lo <= std::max(1e3 * r.tolerance(), 1e-7) * scale;
}

EndoType endo_type(const TwistedMorphismData& r, std::uint64_t seed)
{
    if (!is_irreducible(r, seed)) throw InvalidError("endo_type needs an irreducible representation");
    switch (intertwiner_space(r, r).even_real_dimension()) {
    case 1: return EndoType::R;
    case 2: return EndoType::C;
    default: return EndoType::H;
    }
}

SimpleCount count_simples(const TwistedExtension& e, double tolerance, const Limits& limits)
{
    const auto& g = *e.groupoid();
    if (!g.is_ungraded()) throw UnsupportedError("count_simples needs φ ≡ 1");
    if (!e.c().is_zero()) throw UnsupportedError("count_simples needs c ≡ 0");
    const auto N = static_cast<std::size_t>(g.num_morphisms());
    if (N > limits.nerve_cap) throw CapExceededError("too many morphisms for count_simples", limits.nerve_cap);
    require_valid(e, limits);
    NerveLevel pairs(g, 2, limits.nerve_cap);
    auto lam = [&](int a, int b) {
        int t[2] = {a, b};
        return phase(e.lambda().value(pairs.index_of(t)), e.modulus());
    };

    // greedy generating set: add a morphism whenever it is not yet generated
    std::vector<int> gens;
    std::vector<char> reached(N, 0);
    for (int h = 0; h < static_cast<int>(N); ++h) {
        if (reached[h]) continue;
        gens.push_back(h);
        std::vector<int> queue;
        for (int s : gens)
            for (int v : {s, g.inverse(s)}) {
                if (!reached[v]) queue.push_back(v);
                reached[v] = 1;
            }
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (int s : gens)
                for (int v : {s, g.inverse(s)}) {
                    if (g.src(queue[q]) != g.tgt(v)) continue;
                    const int w = g.compose(queue[q], v);
                    if (!reached[w]) {
                        reached[w] = 1;
                        queue.push_back(w);
                    }
                }
        std::fill(reached.begin(), reached.end(), 0);
        for (int v : queue) reached[v] = 1;
    }

    // central elements are supported on loops
    std::vector<int> loops;
    for (int h = 0; h < static_cast<int>(N); ++h)
        if (g.src(h) == g.tgt(h)) loops.push_back(h);
    const auto L = static_cast<Eigen::Index>(loops.size());

    std::vector<CMatrix> blocks;
    Eigen::Index rows = 0;
    for (int d : gens) {
        CMatrix block = CMatrix::Zero(static_cast<Eigen::Index>(N), L);
        for (Eigen::Index k = 0; k < L; ++k) {
            const int h = loops[k];
            if (g.src(h) == g.tgt(d)) block(g.compose(h, d), k) += lam(h, d);
            if (g.tgt(h) == g.src(d)) block(g.compose(d, h), k) -= lam(d, h);
        }
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < block.rows(); ++i)
            if (block.row(i).cwiseAbs().maxCoeff() > 0) keep.push_back(i);
        CMatrix packed(static_cast<Eigen::Index>(keep.size()), L);
        for (std::size_t i = 0; i < keep.size(); ++i) packed.row(static_cast<Eigen::Index>(i)) = block.row(keep[i]);
        rows += packed.rows();
        blocks.push_back(std::move(packed));
    }
    CMatrix A(rows, L);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        A.middleRows(at, b.rows()) = b;
        at += b.rows();
    }

    SimpleCount out;
    out.tolerance = tolerance;
    if (L == 0) return out;
    if (rows == 0) {
        out.count = static_cast<int>(L);
        return out;
    }
    Eigen::JacobiSVD<CMatrix> svd(A);
    const auto& s = svd.singularValues();
    const double top = s(0) > 0 ? s(0) : 1.0;
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) / top > tolerance) ++rank;
    out.count = static_cast<int>(L - rank);
    out.rank = static_cast<int>(rank);
    out.smallest_kept = rank > 0 ? s(rank - 1) / top : 0.0;
    out.largest_dropped = rank < s.size() ? s(rank) / top : 0.0;
    return out;
}

std::int64_t lifted_modulus(const TwistedExtension& e, const Limits& limits)
{
    return e.modulus() * circle_lift(*e.groupoid(), 2, Involution::negation, limits);
}

bool trivial_in_circle(const TwistedExtension& e, const Limits& limits)
{
    const auto M = lifted_modulus(e, limits);
    auto lifted = lift_modulus(e, M);
    CohomologyGroup h2(e.groupoid(), 2, phase_coefficients(M), limits);
    return h2.solve_coboundary(lifted.lambda()).has_value();
}

KramersReport kramers_check(const TwistedExtension& e, const std::vector<TwistedMorphismData>& reps,
                            const Limits& limits)
{
    require_valid(e, limits);
    const auto& g = *e.groupoid();
    KramersReport out;

    for (int x = 0; x < g.num_objects(); ++x) {
        auto loops = g.base().hom(x, x);
        bool z2_real = loops.size() == 2 && g.phi(loops[0]) * g.phi(loops[1]) == -1;
        out.forced_even.push_back(z2_real && !trivial_in_circle(isotropy_extension(e, x, limits), limits));
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& r = reps[i];
        const std::string name = "rep " + std::to_string(i);
        if (r.groupoid() != e.groupoid() || !(r.source() == e)) {
            out.report.add("source", name + " is not a representation of this extension");
            continue;
        }
        auto v = validate_rep(r, limits);
        if (!v.ok()) {
            out.report.merge(v, name + ": ");
            continue;
        }
        for (int x = 0; x < g.num_objects(); ++x)
            if (out.forced_even[x] && r.dims()[x].total() % 2)
                out.report.add("Kramers", name + " has odd dimension " + std::to_string(r.dims()[x].total()) +
                                              " at " + g.object_id(x));
    }

    // dimension one: parity a with Δa = c and phases k/M with Δ^φ k = (M/m)·λ exactly
    const auto M = lifted_modulus(e, limits);
    out.grid_modulus = M;
    CohomologyGroup h1(e.groupoid(), 1, grading_coefficients(), limits);
    const bool parity_ok = h1.solve_coboundary(e.c()).has_value();
    out.rank_one_exists = parity_ok && trivial_in_circle(e, limits);

    NerveLevel pairs(g, 2, limits.nerve_cap);
    const auto n = static_cast<std::size_t>(g.num_morphisms());
    const double budget = 5e6;
    double candidates = std::pow(static_cast<double>(M), static_cast<double>(n));
    if (candidates * static_cast<double>(std::max<std::size_t>(pairs.size(), 1)) > budget) return out;

    std::vector<std::int64_t> lam(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) lam[i] = e.lambda().value(i) * (M / e.modulus());
    int parities = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << g.num_objects()) && g.num_objects() < 20; ++a) {
        bool ok = true;
        for (int h = 0; h < g.num_morphisms() && ok; ++h)
            ok = static_cast<int>(((a >> g.src(h)) ^ (a >> g.tgt(h))) & 1) == e.grading(h);
        parities += ok;
    }
    std::vector<std::int64_t> k(n, 0);
    int solutions = 0;
    for (;;) {
        ++out.rank_one_candidates;
        bool ok = true;
        for (std::size_t i = 0; i < pairs.size() && ok; ++i) {
            const int* t = pairs.tuple(i);
            const int h12 = g.compose(t[0], t[1]);
            ok = mod_reduce(k[t[0]] + g.phi(t[0]) * k[t[1]] - g.phi(h12) * lam[i] - k[h12], M) == 0;
        }
        solutions += ok;
        std::size_t j = 0;
        while (j < n && ++k[j] == M) k[j++] = 0;
        if (j == n) break;
    }
    out.rank_one_candidates *= std::max(parities, 1);
    out.rank_one_solutions = solutions * parities;
    return out;
}

}  // namespace twistbench
