#include "mongesym/lie_algebra.hpp"

#include "mongesym/error.hpp"

#include <algorithm>

namespace mongesym {

namespace {

Rational trace_product(const Matrix& a, const Matrix& b)
{
    Rational t = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t l = 0; l < a.size(); ++l)
            if (a[k][l] != 0 && b[l][k] != 0) t += a[k][l] * b[l][k];
    return t;
}

Vector combine(const Matrix& rows, const Vector& coefficients, std::size_t n)
{
    Vector v = zero_vector(n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (coefficients[r] == 0) continue;
        for (std::size_t i = 0; i < n; ++i) v[i] += coefficients[r] * rows[r][i];
    }
    return v;
}

/// Splits coordinates into the pivot columns of an echelon subspace I and
/// their complement, which indexes a basis of g / I.
struct Quotient {
    Matrix ideal;                   // rref
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free;  // complement coordinates
    StructureConstants constants;   // of g / I in the basis e_free

    /// Coordinates of v + I in the basis e_free.
    Vector reduce(const Vector& v) const
    {
        Vector w = v;
        for (std::size_t r = 0; r < ideal.size(); ++r) {
            Rational f = w[pivots[r]];
            if (f == 0) continue;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * ideal[r][i];
        }
        Vector out;
        out.reserve(free.size());
        for (auto i : free) out.push_back(w[i]);
        return out;
    }

    Vector lift(const Vector& q, std::size_t n) const
    {
        Vector v = zero_vector(n);
        for (std::size_t a = 0; a < free.size(); ++a) v[free[a]] = q[a];
        return v;
    }
};

Quotient make_quotient(const StructureConstants& c, Matrix ideal)
{
    const std::size_t n = c.dimension();
    Quotient q;
    q.pivots = rref(ideal);
    q.ideal = std::move(ideal);
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(q.pivots.begin(), q.pivots.end(), i) == q.pivots.end()) q.free.push_back(i);
    q.constants = StructureConstants(q.free.size());
    for (std::size_t a = 0; a < q.free.size(); ++a)
        for (std::size_t b = a + 1; b < q.free.size(); ++b)
            q.constants.set_bracket(a, b, q.reduce(c.bracket_of_basis(q.free[a], q.free[b])));
    return q;
}

/// Complement when rad is an abelian ideal: w_a + t_a with t_a in rad solving
/// [w_a, t_b] - [w_b, t_a] - sum_k c_ab^k t_k = -(defect of [w_a, w_b]).
std::optional<Matrix> abelian_layer(const StructureConstants& c, const Matrix& rad)
{
    const std::size_t n = c.dimension();
    Quotient q = make_quotient(c, rad);
    const std::size_t m = q.free.size(), r = q.ideal.size();
    if (m == 0) return Matrix{};

    Matrix w;
    for (auto i : q.free) w.push_back(unit_vector(n, i));
    const std::size_t unknowns = m * r;
    auto column = [r](std::size_t a, std::size_t s) { return a * r + s; };

    Matrix rows;
    Vector rhs;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            Vector defect = c.bracket(w[a], w[b]);
            Vector modelled = combine(w, q.constants.bracket_of_basis(a, b), n);
            for (std::size_t l = 0; l < n; ++l) defect[l] -= modelled[l];
            Matrix block(n, zero_vector(unknowns));
            for (std::size_t s = 0; s < r; ++s) {
                Vector wa_rs = c.bracket(w[a], q.ideal[s]);
                Vector wb_rs = c.bracket(w[b], q.ideal[s]);
                for (std::size_t l = 0; l < n; ++l) {
                    block[l][column(b, s)] += wa_rs[l];
                    block[l][column(a, s)] -= wb_rs[l];
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const Rational& ck = q.constants(a, b, k);
                    if (ck == 0) continue;
                    for (std::size_t l = 0; l < n; ++l) block[l][column(k, s)] -= ck * q.ideal[s][l];
                }
            }
            for (std::size_t l = 0; l < n; ++l) {
                rows.push_back(std::move(block[l]));
                rhs.push_back(-defect[l]);
            }
        }
    Vector tau = zero_vector(unknowns);
    if (!rows.empty()) {
        auto solution = solve(rows, rhs, unknowns);
        if (!solution) return std::nullopt;
        tau = std::move(*solution);
    }
    Matrix out;
    for (std::size_t a = 0; a < m; ++a) {
        Vector coeffs(tau.begin() + static_cast<std::ptrdiff_t>(a * r),
                      tau.begin() + static_cast<std::ptrdiff_t>((a + 1) * r));
        Vector t = combine(q.ideal, coeffs, n);
        for (std::size_t l = 0; l < n; ++l) t[l] += w[a][l];
        out.push_back(std::move(t));
    }
    return row_basis(std::move(out));
}

} // namespace

StructureConstants::StructureConstants(std::size_t dimension) : n_(dimension), c_(dimension * dimension * dimension) {}

void StructureConstants::set_bracket(std::size_t i, std::size_t j, const Vector& v)
{
    if (v.size() != n_) throw Error("bracket vector has the wrong length");
    for (std::size_t k = 0; k < n_; ++k) {
        at(i, j, k) = v[k];
        at(j, i, k) = -v[k];
    }
}

Vector StructureConstants::bracket_of_basis(std::size_t i, std::size_t j) const
{
    Vector v(n_);
    for (std::size_t k = 0; k < n_; ++k) v[k] = (*this)(i, j, k);
    return v;
}

Vector StructureConstants::bracket(const Vector& a, const Vector& b) const
{
    Vector v = zero_vector(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            Rational f = a[i] * b[j];
            for (std::size_t k = 0; k < n_; ++k)
                if ((*this)(i, j, k) != 0) v[k] += f * (*this)(i, j, k);
        }
    }
    return v;
}

Matrix StructureConstants::ad(const Vector& a) const
{
    Matrix m(n_, zero_vector(n_));
    for (std::size_t j = 0; j < n_; ++j) {
        Vector col = bracket(a, unit_vector(n_, j));
        for (std::size_t k = 0; k < n_; ++k) m[k][j] = col[k];
    }
    return m;
}

bool is_antisymmetric(const StructureConstants& c)
{
    const std::size_t n = c.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (c(i, j, k) != -c(j, i, k)) return false;
    return true;
}

std::optional<std::array<std::size_t, 4>> jacobi_violation(const StructureConstants& c)
{
    const std::size_t n = c.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Rational sum = 0;
                    for (std::size_t m = 0; m < n; ++m)
                        sum += c(j, k, m) * c(i, m, l) + c(k, i, m) * c(j, m, l) + c(i, j, m) * c(k, m, l);
                    if (sum != 0) return std::array<std::size_t, 4>{i, j, k, l};
                }
    return std::nullopt;
}

Matrix whole_algebra(std::size_t n)
{
    Matrix m;
    for (std::size_t i = 0; i < n; ++i) m.push_back(unit_vector(n, i));
    return m;
}

Matrix bracket_span(const StructureConstants& c, const Matrix& a, const Matrix& b)
{
    Matrix rows;
    for (const auto& u : a)
        for (const auto& v : b) {
            Vector w = c.bracket(u, v);
            if (!is_zero(w)) rows.push_back(std::move(w));
        }
    return row_basis(std::move(rows));
}

Matrix center(const StructureConstants& c)
{
    const std::size_t n = c.dimension();
    Matrix eqs;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            Vector row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = c(i, j, k);
            if (!is_zero(row)) eqs.push_back(std::move(row));
        }
    return row_basis(nullspace(eqs, n));
}

namespace {

template <typename Next>
std::vector<Matrix> series(const StructureConstants& c, Next next)
{
    std::vector<Matrix> out{whole_algebra(c.dimension())};
    while (!out.back().empty()) {
        Matrix s = next(out.back());
        bool repeated = s.size() == out.back().size();
        out.push_back(std::move(s));
        if (repeated) break;
    }
    return out;
}

} // namespace

std::vector<Matrix> derived_series(const StructureConstants& c)
{
    return series(c, [&](const Matrix& d) { return bracket_span(c, d, d); });
}

std::vector<Matrix> lower_central_series(const StructureConstants& c)
{
    Matrix g = whole_algebra(c.dimension());
    return series(c, [&](const Matrix& l) { return bracket_span(c, g, l); });
}

std::vector<std::size_t> dimensions(const std::vector<Matrix>& s)
{
    std::vector<std::size_t> out;
    for (const auto& m : s) out.push_back(m.size());
    return out;
}

bool is_solvable(const StructureConstants& c)
{
    return derived_series(c).back().empty();
}

bool is_nilpotent(const StructureConstants& c)
{
    return lower_central_series(c).back().empty();
}

bool is_abelian(const StructureConstants& c)
{
    const std::size_t n = c.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!is_zero(c.bracket_of_basis(i, j))) return false;
    return true;
}

Matrix killing_form(const StructureConstants& c)
{
    const std::size_t n = c.dimension();
    std::vector<Matrix> ads;
    for (std::size_t i = 0; i < n; ++i) ads.push_back(c.ad(unit_vector(n, i)));
    Matrix k(n, zero_vector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) k[i][j] = k[j][i] = trace_product(ads[i], ads[j]);
    return k;
}

Matrix radical(const StructureConstants& c)
{
    const std::size_t n = c.dimension();
    Matrix g = whole_algebra(n);
    Matrix derived = bracket_span(c, g, g);
    Matrix k = killing_form(c);
    Matrix eqs = multiply(derived, k, n);
    return row_basis(nullspace(eqs, n));
}

StructureConstants restrict_to(const StructureConstants& c, const Matrix& basis)
{
    const std::size_t m = basis.size();
    StructureConstants out(m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q) {
            auto coords = coordinates_in(basis, c.bracket(basis[p], basis[q]));
            if (!coords) throw Error("subspace is not closed under the bracket");
            out.set_bracket(p, q, *coords);
        }
    return out;
}

std::optional<Matrix> levi_complement(const StructureConstants& c, const Matrix& rad)
{
    const std::size_t n = c.dimension();
    if (rad.empty()) return whole_algebra(n);
    Matrix inner = bracket_span(c, rad, rad);
    if (inner.empty()) return abelian_layer(c, rad);
    if (inner.size() == rad.size()) return std::nullopt; // not solvable

    // Split off the abelian top layer in g / [rad, rad], then recurse inside
    // the preimage of the complement found there.
    Quotient q = make_quotient(c, inner);
    Matrix rad_q;
    for (const auto& v : rad) rad_q.push_back(q.reduce(v));
    rad_q = row_basis(std::move(rad_q));
    auto top = levi_complement(q.constants, rad_q);
    if (!top) return std::nullopt;

    Matrix h;
    for (const auto& v : *top) h.push_back(q.lift(v, n));
    const std::size_t lifted = h.size();
    for (const auto& v : q.ideal) h.push_back(v);
    StructureConstants hc = restrict_to(c, h);
    Matrix inner_h;
    for (std::size_t i = lifted; i < h.size(); ++i) inner_h.push_back(unit_vector(h.size(), i));
    auto sub = levi_complement(hc, inner_h);
    if (!sub) return std::nullopt;
    Matrix out;
    for (const auto& v : *sub) out.push_back(combine(h, v, n));
    return row_basis(std::move(out));
}

bool is_heisenberg(const StructureConstants& c)
{
    if (c.dimension() != 3) return false;
    if (dimensions(lower_central_series(c)) != std::vector<std::size_t>{3, 1, 0}) return false;
    Matrix z = center(c);
    Matrix g = whole_algebra(3);
    return z.size() == 1 && z == bracket_span(c, g, g);
}

bool is_sl2(const StructureConstants& c)
{
    if (c.dimension() != 3) return false;
    Signature s = signature(killing_form(c));
    return s.zero == 0 && s.positive > 0 && s.negative > 0;
}

std::optional<std::array<std::size_t, 3>> standard_sl2_triple(const StructureConstants& c, const Matrix& basis)
{
    if (basis.size() != 3) return std::nullopt;
    std::array<std::size_t, 3> p{0, 1, 2};
    auto scaled = [](const Vector& v, long f) {
        Vector w = v;
        for (auto& x : w) x *= f;
        return w;
    };
    do {
        const Vector &e = basis[p[0]], &h = basis[p[1]], &f = basis[p[2]];
        if (c.bracket(h, e) == scaled(e, 2) && c.bracket(h, f) == scaled(f, -2) && c.bracket(e, f) == h) return p;
    } while (std::next_permutation(p.begin(), p.end()));
    return std::nullopt;
}

Recognition recognize(const StructureConstants& c)
{
    Recognition r;
    r.radical = radical(c);
    const std::size_t n = c.dimension();
    if (is_heisenberg(c)) {
        r.verdict = "heisenberg";
        r.complement = Matrix{};
        return r;
    }
    if (is_sl2(c)) {
        r.verdict = "sl2";
        r.complement = whole_algebra(n);
        return r;
    }
    r.verdict = "unrecognized";
    if (r.radical.size() == n || !is_solvable(restrict_to(c, r.radical))) return r;
    r.complement = levi_complement(c, r.radical);
    if (n == 6 && r.radical.size() == 3 && r.complement && r.complement->size() == 3 &&
        is_heisenberg(restrict_to(c, r.radical)) && is_sl2(restrict_to(c, *r.complement)))
        r.verdict = "sl2_semidirect_heisenberg";
    return r;
}

StructureReport analyze(const StructureConstants& c)
{
    StructureReport r;
    r.dimension = c.dimension();
    r.center = center(c);
    r.derived_dims = dimensions(derived_series(c));
    r.lcs_dims = dimensions(lower_central_series(c));
    r.solvable = r.derived_dims.back() == 0;
    r.nilpotent = r.lcs_dims.back() == 0;
    r.abelian = is_abelian(c);
    r.killing = killing_form(c);
    r.killing_signature = signature(r.killing);
    r.killing_rank = r.killing_signature.positive + r.killing_signature.negative;
    r.recognition = recognize(c);
    return r;
}

nlohmann::ordered_json subspace_json(const Matrix& subspace)
{
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& v : subspace) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& x : v) row.push_back(to_string(x));
        basis.push_back(std::move(row));
    }
    return basis;
}

namespace {

nlohmann::ordered_json indices_json(const Matrix& subspace)
{
    auto idx = coordinate_indices(subspace);
    if (!idx) return nullptr;
    return *idx;
}

} // namespace

nlohmann::ordered_json to_json(const StructureReport& r)
{
    nlohmann::ordered_json j;
    j["dimension"] = r.dimension;
    j["center"] = indices_json(r.center);
    j["center_basis"] = subspace_json(r.center);
    j["derived_dims"] = r.derived_dims;
    j["lcs_dims"] = r.lcs_dims;
    j["solvable"] = r.solvable;
    j["nilpotent"] = r.nilpotent;
    j["abelian"] = r.abelian;
    nlohmann::ordered_json k;
    k["matrix"] = subspace_json(r.killing);
    k["rank"] = r.killing_rank;
    k["signature"] = {r.killing_signature.positive, r.killing_signature.negative};
    k["nullity"] = r.killing_signature.zero;
    j["killing"] = k;
    j["radical"] = indices_json(r.recognition.radical);
    j["radical_basis"] = subspace_json(r.recognition.radical);
    if (r.recognition.complement) {
        j["complement"] = indices_json(*r.recognition.complement);
        j["complement_basis"] = subspace_json(*r.recognition.complement);
    } else {
        j["complement"] = nullptr;
        j["complement_basis"] = nullptr;
    }
    j["verdict"] = r.recognition.verdict;
    return j;
}

std::string format_combination(const Vector& coefficients, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const Rational& q = coefficients[i];
        if (q == 0) continue;
        Rational a = abs(q);
        std::string piece = a == 1 ? names.at(i) : to_string(Rational(a)) + "*" + names.at(i);
        if (out.empty())
            out = q < 0 ? "-" + piece : piece;
        else
            out += (q < 0 ? " - " : " + ") + piece;
    }
    return out.empty() ? "0" : out;
}

std::vector<std::string> bracket_table(const StructureConstants& c, const std::vector<std::string>& names)
{
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < c.dimension(); ++i)
        for (std::size_t j = i + 1; j < c.dimension(); ++j)
            lines.push_back("[" + names.at(i) + "," + names.at(j) + "] = " +
                            format_combination(c.bracket_of_basis(i, j), names));
    return lines;
}

} // namespace mongesym
