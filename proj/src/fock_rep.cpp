#include "tdse/fock_rep.hpp"

#include <cmath>

#include "tdse/errors.hpp"

namespace tdse {

namespace {

using Mat = Eigen::MatrixXcd;

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

double band_norm(const Mat& r, int band) {
    const int cols = std::min<int>(band + 1, static_cast<int>(r.cols()));
    return r.leftCols(cols).norm();
}

}  // namespace

LadderOperators build_ladder(int n_dim) {
    if (n_dim < 2) throw ConfigError("ladder operators need dimension >= 2");
    Mat jm = Mat::Zero(n_dim, n_dim);
    for (int n = 1; n < n_dim; ++n) jm(n - 1, n) = std::sqrt(static_cast<double>(n));
    Mat jp = jm.adjoint();
    Mat m = Mat::Zero(n_dim, n_dim);
    for (int n = 0; n < n_dim; ++n) m(n, n) = n + 0.5;
    return {
        {jm, n_dim - 2},
        {jp, n_dim - 2},
        {m, n_dim - 1},
        {Mat::Identity(n_dim, n_dim), n_dim - 1},
    };
}

Su11Operators build_su11(int n_dim) {
    if (n_dim < 3) throw ConfigError("su(1,1) operators need dimension >= 3");
    auto l = build_ladder(n_dim);
    Mat km = 0.5 * l.j_minus.m * l.j_minus.m;
    Mat kp = 0.5 * l.j_plus.m * l.j_plus.m;
    Mat k3 = l.j_plus.m * l.j_minus.m + 0.5 * Mat::Identity(n_dim, n_dim);
    return {{km, n_dim - 3}, {kp, n_dim - 3}, {k3, n_dim - 1}};
}

TruncatedOperator casimir(int n_dim) {
    auto l = build_ladder(n_dim);
    return {l.j_plus.m * l.j_minus.m - l.number.m, n_dim - 1};
}

Eigen::VectorXcd number_state(int n, int n_dim) {
    if (n >= n_dim)
        throw ConfigError("number state index exceeds the truncation dimension");
    auto l = build_ladder(n_dim);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_dim);
    v(0) = 1.0;
    double norm = 1.0;
    for (int k = 1; k <= n; ++k) {
        v = l.j_plus.m * v;
        norm *= static_cast<double>(k);
    }
    return v / std::sqrt(norm);
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
    // Higham's degree-13 diagonal Pade with scaling and squaring.
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const int n = static_cast<int>(a.rows());
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    int squarings = 0;
    if (norm > theta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));

    const Mat as = a / std::pow(2.0, squarings);
    const Mat id = Mat::Identity(n, n);
    const Mat a2 = as * as;
    const Mat a4 = a2 * a2;
    const Mat a6 = a2 * a4;

    const Mat u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                        b[3] * a2 + b[1] * id);
    const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                  b[2] * a2 + b[0] * id;

    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

bool displacement_within_truncation(Complex alpha, int n_dim) {
    return std::norm(alpha) <= 0.25 * static_cast<double>(n_dim);
}

TruncatedOperator displacement(Complex alpha, int n_dim) {
    auto l = build_ladder(n_dim);
    Mat gen = alpha * l.j_plus.m - std::conj(alpha) * l.j_minus.m;
    return {matrix_exponential(gen), n_dim / 2};
}

TruncatedOperator squeeze(SqueezeParams sq, int n_dim) {
    auto k = build_su11(n_dim);
    const Complex z = sq.z();
    Mat gen = z * k.k_plus.m - std::conj(z) * k.k_minus.m;
    return {matrix_exponential(gen), n_dim / 2};
}

TruncatedOperator bch_squeeze(SqueezeParams sq, int n_dim) {
    auto k = build_su11(n_dim);
    if (sq.r == 0.0)
        return {Mat::Identity(n_dim, n_dim), n_dim / 2};
    const Complex z = sq.z();
    const double az = std::abs(z);
    const Complex gp = (z / az) * std::tanh(az);
    const Complex gm = -(std::conj(z) / az) * std::tanh(az);
    const double g3 = -std::log(std::cosh(az));
    Mat result = matrix_exponential(gp * k.k_plus.m) * matrix_exponential(g3 * k.k3.m) *
                 matrix_exponential(gm * k.k_minus.m);
    return {result, n_dim / 2};
}

std::vector<RelationResidual> algebra_relation_residuals(int n_dim) {
    auto l = build_ladder(n_dim);
    auto k = build_su11(n_dim);
    const Mat& jm = l.j_minus.m;
    const Mat& jp = l.j_plus.m;
    const Mat& m = l.number.m;
    const Mat& id = l.identity.m;
    const Mat& km = k.k_minus.m;
    const Mat& kp = k.k_plus.m;
    const Mat& k3 = k.k3.m;

    const int band = n_dim - 3;  // interior block safe for all products here

    std::vector<RelationResidual> out;
    auto add = [&](const std::string& name, const Mat& residual, int b) {
        out.push_back({name, n_dim, b, band_norm(residual, b)});
    };

    // w1c subalgebra
    add("[J-,J+] = I", commutator(jm, jp) - id, band);
    // oscillator relations
    add("[M,J+] = +J+", commutator(m, jp) - jp, band);
    add("[M,J-] = -J-", commutator(m, jm) + jm, band);
    // su(1,1)
    add("[K+,K-] = -K3", commutator(kp, km) + k3, band);
    add("[K3,K+] = +2K+", commutator(k3, kp) - 2.0 * kp, band);
    add("[K3,K-] = -2K-", commutator(k3, km) + 2.0 * km, band);
    // cross relations
    add("[K-,J-] = 0", commutator(km, jm), band);
    add("[K+,J-] = -J+", commutator(kp, jm) + jp, band);
    add("[K3,J-] = -J-", commutator(k3, jm) + jm, band);
    add("[K-,J+] = J-", commutator(km, jp) - jm, band);
    add("[K+,J+] = 0", commutator(kp, jp), band);
    add("[K3,J+] = +J+", commutator(k3, jp) - jp, band);
    // Casimir: exact entry-wise, so the band is the full dimension
    add("C = -(1/2) I", casimir(n_dim).m + 0.5 * id, n_dim - 1);
    // in this representation the su(1,1) diagonal generator coincides with M
    add("K3 = M", k3 - m, n_dim - 1);

    return out;
}

ClosureReport closure_report(int n_dim) {
    auto l = build_ladder(n_dim);
    auto k = build_su11(n_dim);

    struct Basis {
        std::string name;
        const Mat* op;
    };
    const Basis basis[] = {
        {"K+", &k.k_plus.m}, {"K-", &k.k_minus.m}, {"K3", &k.k3.m},
        {"J+", &l.j_plus.m}, {"J-", &l.j_minus.m}, {"I", &l.identity.m},
    };
    constexpr int nb = 6;

    const int band = n_dim - 5;  // two quadratic applications deep
    const int cols = band + 1;
    const int rows = n_dim;

    Eigen::MatrixXcd design(rows * cols, nb);
    for (int b = 0; b < nb; ++b)
        design.col(b) = basis[b].op->leftCols(cols).reshaped();
    const auto qr = design.colPivHouseholderQr();

    // structure constants: expected coefficients of [row, col] in the basis
    // order above; taken from the su(1,1) relations, the w1c relation, and
    // the cross relations.
    auto expected = [&](int a, int b) {
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(nb);
        auto set = [&](int i, double v) { c(i) = v; };
        const std::string& an = basis[a].name;
        const std::string& bn = basis[b].name;
        auto is = [&](const char* x, const char* y) { return an == x && bn == y; };
        if (is("K+", "K-")) set(2, -1);
        if (is("K3", "K+")) set(0, 2);
        if (is("K3", "K-")) set(1, -2);
        if (is("K+", "J-")) set(3, -1);
        if (is("K3", "J-")) set(4, -1);
        if (is("K-", "J+")) set(4, 1);
        if (is("K3", "J+")) set(3, 1);
        if (is("J-", "J+")) set(5, 1);
        return c;
    };

    ClosureReport rep{0.0, 0.0};
    for (int a = 0; a < nb; ++a) {
        for (int b = a + 1; b < nb; ++b) {
            Mat comm = commutator(*basis[a].op, *basis[b].op);
            Eigen::VectorXcd target = comm.leftCols(cols).reshaped();
            Eigen::VectorXcd coef = qr.solve(target);
            const double resid = (design * coef - target).norm();

            Eigen::VectorXcd want = expected(a, b);
            if (want.isZero(0.0)) {
                // antisymmetric counterpart or a vanishing commutator
                want = -expected(b, a);
            }
            rep.max_decomposition_residual = std::max(rep.max_decomposition_residual, resid);
            rep.max_coefficient_error =
                std::max(rep.max_coefficient_error, (coef - want).cwiseAbs().maxCoeff());
        }
    }
    return rep;
}

}  // namespace tdse
