#include "jetvar/errors.hpp"
#include "jetvar/jet_ops.hpp"

#include <algorithm>
#include <cassert>

namespace jetvar {

namespace {

// ---------------------------------------------------------------------------
// dense univariate polynomials with Expr coefficients, for the rational
// antiderivative (Ostrogradsky) used by the n = 1 inversion path

using UniExpr = std::vector<Expr>; // index = degree in the distinguished var

void trim(UniExpr& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UniExpr& p) { return static_cast<int>(p.size()) - 1; }

UniExpr uni_from(const Polynomial& poly, const VarKey& v) {
    UniExpr out;
    for (const auto& [e, coeff] : poly.univariate_view(v)) {
        if (deg(out) < e) out.resize(static_cast<std::size_t>(e) + 1);
        out[static_cast<std::size_t>(e)] = Expr::make(nullptr, coeff, Polynomial::one());
    }
    trim(out);
    return out;
}

UniExpr uni_sub(UniExpr a, const UniExpr& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    trim(a);
    return a;
}

UniExpr uni_mul(const UniExpr& a, const UniExpr& b) {
    if (a.empty() || b.empty()) return {};
    UniExpr out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

UniExpr uni_derivative(const UniExpr& p) {
    UniExpr out;
    for (std::size_t k = 1; k < p.size(); ++k)
        out.push_back(p[k] * Expr::from_rational(Rational(static_cast<long>(k))));
    trim(out);
    return out;
}

/// Quotient and remainder over the coefficient field.
std::pair<UniExpr, UniExpr> uni_divmod(UniExpr a, const UniExpr& b) {
    UniExpr q;
    if (b.empty()) throw DivisionByZero();
    int db = deg(b);
    const Expr& lb = b.back();
    while (deg(a) >= db) {
        int shift = deg(a) - db;
        Expr c = a.back() / lb;
        if (deg(q) < shift) q.resize(static_cast<std::size_t>(shift) + 1);
        q[static_cast<std::size_t>(shift)] += c;
        for (int k = 0; k <= db; ++k)
            a[static_cast<std::size_t>(k + shift)] -= c * b[static_cast<std::size_t>(k)];
        a.pop_back(); // leading term cancels exactly
        trim(a);
    }
    trim(q);
    return {std::move(q), std::move(a)};
}

UniExpr uni_divide_exact(const UniExpr& a, const UniExpr& b) {
    auto [q, r] = uni_divmod(a, b);
    if (!r.empty()) throw InternalInconsistency("univariate division expected to be exact");
    return q;
}

UniExpr uni_monic(UniExpr p) {
    if (p.empty()) return p;
    Expr lead = p.back();
    for (auto& c : p) c = c / lead;
    return p;
}

UniExpr uni_gcd(UniExpr a, UniExpr b) {
    while (!b.empty()) {
        auto [q, r] = uni_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(std::move(a));
}

Expr uni_to_expr(const UniExpr& p, const Expr& v) {
    Expr out;
    Expr pw = Expr::from_rational(1);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!p[k].is_zero()) out += p[k] * pw;
        if (k + 1 < p.size()) pw *= v;
    }
    return out;
}

/// Solve the square linear system M x = rhs by Gaussian elimination over the
/// exact Expr field. Returns false when singular.
bool solve_linear(std::vector<std::vector<Expr>>& M, std::vector<Expr>& rhs,
                  std::vector<Expr>& x) {
    std::size_t nvar = M.empty() ? 0 : M[0].size();
    std::size_t row = 0;
    std::vector<int> pivot_col(M.size(), -1);
    for (std::size_t col = 0; col < nvar && row < M.size(); ++col) {
        std::size_t p = row;
        while (p < M.size() && M[p][col].is_zero()) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[row]);
        std::swap(rhs[p], rhs[row]);
        for (std::size_t r = 0; r < M.size(); ++r) {
            if (r == row || M[r][col].is_zero()) continue;
            Expr f = M[r][col] / M[row][col];
            for (std::size_t c = col; c < nvar; ++c) M[r][c] -= f * M[row][c];
            rhs[r] -= f * rhs[row];
        }
        pivot_col[row] = static_cast<int>(col);
        ++row;
    }
    for (std::size_t r = row; r < M.size(); ++r)
        if (!rhs[r].is_zero()) return false;
    x.assign(nvar, Expr{});
    for (std::size_t r = 0; r < row; ++r)
        x[static_cast<std::size_t>(pivot_col[r])] =
            rhs[r] / M[r][static_cast<std::size_t>(pivot_col[r])];
    return true;
}

/// Antiderivative of e with respect to v inside the rational functions.
/// Polynomial part integrates termwise; the proper part goes through the
/// Ostrogradsky decomposition, and a nonzero logarithmic remainder raises
/// UnsupportedFragment.
Expr rational_antiderivative(const Expr& e, const VarKey& vkey, const BundleSpec& spec) {
    if (e.is_zero()) return e;
    Expr v = spec.var(vkey);
    if (e.is_polynomial()) {
        return Expr::make(e.bundle() ? e.bundle() : &spec, e.num().antiderivative(vkey),
                          Polynomial::one());
    }
    UniExpr N = uni_from(e.num(), vkey);
    UniExpr D = uni_from(e.den(), vkey);
    auto [U, R] = uni_divmod(N, D);

    Expr result;
    for (std::size_t k = 0; k < U.size(); ++k)
        if (!U[k].is_zero())
            result += U[k] * v.pow(static_cast<int>(k) + 1) /
                      Expr::from_rational(Rational(static_cast<long>(k + 1)));
    trim(R);
    if (R.empty()) return result;

    UniExpr Dp = uni_derivative(D);
    UniExpr Q1 = uni_gcd(D, Dp);
    if (deg(Q1) < 1)
        throw UnsupportedFragment("antiderivative has a logarithmic part");
    UniExpr Q2 = uni_divide_exact(D, Q1);
    UniExpr T = uni_divide_exact(uni_mul(uni_derivative(Q1), Q2), Q1);

    // unknowns: P1 (deg < deg Q1), P2 (deg < deg Q2);
    // identity: P1'·Q2 − P1·T + P2·Q1 = R
    int d1 = deg(Q1), d2 = deg(Q2);
    int rows = d1 + d2;
    std::vector<std::vector<Expr>> M(static_cast<std::size_t>(rows),
                                     std::vector<Expr>(static_cast<std::size_t>(d1 + d2)));
    std::vector<Expr> rhs(static_cast<std::size_t>(rows));
    for (int k = 0; k < d1; ++k) {
        UniExpr basis(static_cast<std::size_t>(k) + 1);
        basis[static_cast<std::size_t>(k)] = Expr::from_rational(1);
        UniExpr term = uni_sub(uni_mul(uni_derivative(basis), Q2), uni_mul(basis, T));
        // columns 0..d1-1 hold P1 coefficients
        for (std::size_t j = 0; j < term.size(); ++j)
            if (static_cast<int>(j) < rows) M[j][static_cast<std::size_t>(k)] += term[j];
    }
    for (int k = 0; k < d2; ++k) {
        UniExpr basis(static_cast<std::size_t>(k) + 1);
        basis[static_cast<std::size_t>(k)] = Expr::from_rational(1);
        UniExpr term = uni_mul(basis, Q1);
        for (std::size_t j = 0; j < term.size(); ++j)
            if (static_cast<int>(j) < rows) M[j][static_cast<std::size_t>(d1 + k)] += term[j];
    }
    for (std::size_t j = 0; j < R.size(); ++j) rhs[j] = R[j];

    std::vector<Expr> sol;
    if (!solve_linear(M, rhs, sol))
        throw UnsupportedFragment("Ostrogradsky system is singular on this input");
    UniExpr P1(static_cast<std::size_t>(d1)), P2(static_cast<std::size_t>(d2));
    for (int k = 0; k < d1; ++k) P1[static_cast<std::size_t>(k)] = sol[static_cast<std::size_t>(k)];
    for (int k = 0; k < d2; ++k)
        P2[static_cast<std::size_t>(k)] = sol[static_cast<std::size_t>(d1 + k)];
    trim(P1);
    trim(P2);
    if (!P2.empty()) throw UnsupportedFragment("antiderivative has a logarithmic part");

    result += uni_to_expr(P1, v) / uni_to_expr(Q1, v);
    return result;
}

// ---------------------------------------------------------------------------
// n = 1: descending elimination of the highest jet variable

int syntactic_jet_order(const Expr& e, const BundleSpec& spec) {
    int order = 0;
    for (const VarKey& v : e.variables()) {
        if (v.is_jet())
            order = std::max(order, v.jet.degree());
        else if (v.is_atom())
            order = std::max(order, spec.atom(v.id).jet_order);
    }
    return order;
}

bool has_atoms(const Expr& e) {
    for (const VarKey& v : e.variables())
        if (v.is_atom()) return true;
    return false;
}

std::vector<Expr> invert_mechanics(const Expr& h_in, const BundleSpec& spec) {
    const int dir = 0;
    Expr h = h_in;
    Expr sigma = spec.zero();
    int guard = syntactic_jet_order(h, spec) + 2;

    while (true) {
        int k = syntactic_jet_order(h, spec);
        if (h.is_zero()) break;
        if (k == 0) {
            // pure base dependence; atoms cannot be integrated here
            if (has_atoms(h))
                throw UnsupportedFragment(
                    "remainder depends on atoms; cannot integrate in the base variable");
            sigma += rational_antiderivative(h, VarKey::base(dir), spec);
            h = spec.zero();
            break;
        }
        if (--guard < 0)
            throw UnsupportedFragment("descending elimination failed to reduce the order");

        MultiIndex top(1);
        for (int j = 0; j < k; ++j) top = top.plus(dir);
        MultiIndex below(1);
        for (int j = 0; j < k - 1; ++j) below = below.plus(dir);

        std::vector<Expr> A(static_cast<std::size_t>(spec.field_count()));
        for (int i = 0; i < spec.field_count(); ++i) {
            A[static_cast<std::size_t>(i)] = h.partial(VarKey::jet_var(i, top));
            for (int j = 0; j < spec.field_count(); ++j)
                if (!A[static_cast<std::size_t>(i)].partial(VarKey::jet_var(j, top)).is_zero())
                    throw UnsupportedFragment("density is not affine in its top jet variables");
        }

        // potential P with dP/dy^i_(k-1) = A_i, built by sequential integration
        Expr P = spec.zero();
        for (int i = 0; i < spec.field_count(); ++i) {
            VarKey w = VarKey::jet_var(i, below);
            Expr target = A[static_cast<std::size_t>(i)] - P.partial(w);
            if (target.is_zero()) continue;
            if (k == 1 && (has_atoms(target) || has_atoms(P)))
                throw UnsupportedFragment(
                    "fibre potential step would need to integrate through atoms");
            P += rational_antiderivative(target, w, spec);
        }
        for (int i = 0; i < spec.field_count(); ++i) {
            VarKey w = VarKey::jet_var(i, below);
            if (!(P.partial(w) - A[static_cast<std::size_t>(i)]).is_zero())
                throw UnsupportedFragment("top-order coefficients are not a closed family");
        }
        sigma += P;
        h -= total_derivative(P, dir);
        if (syntactic_jet_order(h, spec) >= k && !h.is_zero())
            throw UnsupportedFragment("descending elimination failed to reduce the order");
    }
    return {sigma};
}

// ---------------------------------------------------------------------------
// n >= 2: scaling homotopy on densities polynomial in the jet variables

/// Boundary components B^l with sum_L (d_L y^i)(del^L_i g) = y^i E_i(g) + div B,
/// obtained by integrating each term by parts along the smallest direction.
std::vector<Expr> boundary_components(const Expr& g, const BundleSpec& spec) {
    const int n = spec.base_dim();
    std::vector<Expr> B(static_cast<std::size_t>(n), spec.zero());
    for (const VarKey& v : g.variables()) {
        if (!v.is_jet() || v.jet.degree() == 0) continue;
        Expr W = g.partial_formal(v);
        if (W.is_zero()) continue;
        MultiIndex cur = v.jet;
        while (cur.degree() > 0) {
            int lambda = 0;
            while (cur.count(lambda) == 0) ++lambda;
            MultiIndex next = *cur.minus(lambda);
            B[static_cast<std::size_t>(lambda)] += spec.jet(v.id, next) * W;
            W = -total_derivative(W, lambda);
            cur = next;
        }
    }
    return B;
}

std::vector<Expr> invert_field(const Expr& h, const BundleSpec& spec) {
    const int n = spec.base_dim();
    if (has_atoms(h))
        throw UnsupportedFragment("homotopy inversion requires an atom-free density");
    if (!h.den().is_constant()) {
        std::set<VarKey> dvars;
        h.den().collect_vars(dvars);
        for (const VarKey& v : dvars)
            if (!v.is_base())
                throw UnsupportedFragment("density must be polynomial in the jet variables");
    }

    // split the numerator by total degree in the jet variables
    std::map<int, Polynomial> parts;
    for (const auto& [m, c] : h.num().terms()) {
        int d = 0;
        for (const auto& [v, e] : m.factors())
            if (v.is_jet()) d += e;
        parts[d].add_term(m, c);
    }

    std::vector<Expr> sigma(static_cast<std::size_t>(n), spec.zero());
    for (const auto& [d, poly] : parts) {
        if (d == 0) continue;
        Expr part = Expr::make(&spec, poly, h.den());
        std::vector<Expr> B = boundary_components(part, spec);
        Expr inv_d = Expr::from_rational(Rational(1, d));
        for (int l = 0; l < n; ++l) sigma[static_cast<std::size_t>(l)] += inv_d * B[static_cast<std::size_t>(l)];
    }

    // pure-base remainder, integrated along the first coordinate ray
    auto it = parts.find(0);
    if (it != parts.end() && !it->second.is_zero()) {
        Expr rest = Expr::make(&spec, it->second, h.den());
        sigma[0] += rational_antiderivative(rest, VarKey::base(0), spec);
    }
    return sigma;
}

} // namespace

std::vector<Expr> invert_total_divergence(const Expr& h, const BundleSpec& spec) {
    Lagrangian as_density(&spec, h);
    if (!euler_lagrange(as_density).is_zero())
        throw NotExact("density has a nonzero Euler-Lagrange form");

    std::vector<Expr> sigma = spec.base_dim() == 1 ? invert_mechanics(h, spec)
                                                   : invert_field(h, spec);
    if (!(total_divergence(sigma, spec) - h).is_zero())
        throw UnsupportedFragment("reconstructed potential failed exact verification");
    return sigma;
}

} // namespace jetvar
