#include "pairbec/lobpcg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "pairbec/errors.hpp"

namespace pairbec {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd multiply(const CsrMatrix& A, const MatrixXd& X) {
    MatrixXd Y(X.rows(), X.cols());
    if (X.cols() > 0)
        kernels::spmm(A, X.data(), static_cast<int>(X.cols()), Y.data());
    return Y;
}

// M-orthonormalizes W through the eigendecomposition of its Gram matrix.
// Columns are first scaled to unit B-norm so the rank cutoff measures
// near-dependence, not the wide dynamic range of raw column norms; scaled
// Gram directions below 1e-8 of the largest are dropped (kept ones are
// amplified at most 1e4, so a single Gram pass still orthonormalizes them
// adequately).  BW is recomputed from scratch; AW, if given, is transformed
// alongside.
void b_orthonormalize(const CsrMatrix& M, MatrixXd& W, MatrixXd& BW,
                      MatrixXd* AW) {
    BW = multiply(M, W);
    if (W.cols() == 0) return;
    MatrixXd G = W.transpose() * BW;
    G = 0.5 * (G + G.transpose()).eval();
    VectorXd scale(G.rows());
    for (int j = 0; j < G.rows(); ++j)
        scale(j) = G(j, j) > 0.0 ? 1.0 / std::sqrt(G(j, j)) : 0.0;
    G = (scale.asDiagonal() * G * scale.asDiagonal()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(G);
    const VectorXd& lam = es.eigenvalues();  // ascending
    const double cutoff = 1e-8 * std::max(lam(lam.size() - 1), 0.0);
    int first = 0;
    while (first < lam.size() && !(lam(first) > cutoff)) ++first;
    const int kept = static_cast<int>(lam.size()) - first;
    MatrixXd T(lam.size(), kept);
    for (int j = 0; j < kept; ++j)
        T.col(j) = scale.asDiagonal() * es.eigenvectors().col(first + j) /
                   std::sqrt(lam(first + j));
    W = (W * T).eval();
    BW = (BW * T).eval();
    if (AW) *AW = (*AW * T).eval();
}

// Rayleigh-Ritz for the pencil (Ab, Bb) with Bb symmetric positive
// semidefinite up to roundoff: eigendecompose Bb, drop directions below
// 1e-10 of its largest eigenvalue, and solve the reduced standard problem.
// A plain Cholesky-based solve breaks down once roundoff makes Bb
// indefinite, and the spurious directions then carry arbitrary Ritz values.
// Returns false only if the dense eigensolves themselves fail.
bool rayleigh_ritz(const MatrixXd& Ab, const MatrixXd& Bb, VectorXd& values,
                   MatrixXd& vectors) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> bes(Bb);
    if (bes.info() != Eigen::Success) return false;
    const VectorXd& bl = bes.eigenvalues();  // ascending
    const double cutoff = 1e-10 * std::max(bl(bl.size() - 1), 0.0);
    int first = 0;
    while (first < bl.size() && !(bl(first) > cutoff)) ++first;
    const int kept = static_cast<int>(bl.size()) - first;
    if (kept == 0) return false;
    MatrixXd C(Bb.rows(), kept);
    for (int j = 0; j < kept; ++j)
        C.col(j) = bes.eigenvectors().col(first + j) / std::sqrt(bl(first + j));
    MatrixXd Ar = C.transpose() * Ab * C;
    Ar = 0.5 * (Ar + Ar.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> aes(Ar);
    if (aes.info() != Eigen::Success) return false;
    values = aes.eigenvalues();
    vectors = C * aes.eigenvectors();
    return true;
}

EigenResult snapshot(const MatrixXd& X, const VectorXd& lam,
                     const VectorXd& rn, int k, int iterations,
                     long long matvecs, int converged) {
    EigenResult out;
    out.n = static_cast<int>(X.rows());
    const int kk = std::min<int>(k, static_cast<int>(lam.size()));
    out.eigenvalues.assign(lam.data(), lam.data() + kk);
    out.eigenvectors.assign(X.data(), X.data() + X.rows() * kk);
    out.residual_norms.assign(rn.data(), rn.data() + kk);
    out.iterations = iterations;
    out.matvec_count = matvecs;
    out.converged = std::min(converged, kk);
    return out;
}

}  // namespace

int lobpcg_block_size(int k) {
    const int buffer = std::max(5, static_cast<int>(std::ceil(0.15 * k)));
    return k + buffer;
}

std::vector<double> gaussian_block(int n, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> block(static_cast<std::size_t>(n) * cols);
    for (double& x : block) x = normal(rng);
    return block;
}

EigenResult lobpcg(const CsrMatrix& A, const CsrMatrix& M, int k,
                   const LobpcgOptions& options,
                   const kernels::SsorPreconditioner* preconditioner,
                   const std::vector<double>* initial_block) {
    const int n = A.n;
    if (M.n != n) throw InputError("eigensolver: operator sizes disagree");
    if (k < 1) throw InputError("eigensolver: requested pair count must be >= 1");
    if (k > n) throw InputError("eigensolver: requested more pairs than unknowns");
    if (!(options.tol > 0.0)) throw InputError("eigensolver: tolerance must be > 0");
    if (preconditioner && preconditioner->size() != n)
        throw InputError("eigensolver: preconditioner size disagrees");

    // The dense subspace algebra must not depend on the OpenMP thread count.
    Eigen::setNbThreads(1);

    int nb = std::min(lobpcg_block_size(k), n);
    MatrixXd X(n, nb);
    if (initial_block) {
        if (initial_block->size() != static_cast<std::size_t>(n) * nb)
            throw InputError("eigensolver: initial block has the wrong shape");
        std::copy(initial_block->begin(), initial_block->end(), X.data());
    } else {
        const std::vector<double> rnd = gaussian_block(n, nb, options.seed);
        std::copy(rnd.begin(), rnd.end(), X.data());
    }

    MatrixXd BX, AX;
    b_orthonormalize(M, X, BX, nullptr);
    if (X.cols() < k)
        throw ConvergenceError("eigensolver: initial block is rank deficient",
                               EigenResult{});
    nb = static_cast<int>(X.cols());
    long long matvecs = 0;
    AX = multiply(A, X);
    matvecs += nb;
    VectorXd lam(nb);
    {
        MatrixXd Ab = X.transpose() * AX;
        Ab = 0.5 * (Ab + Ab.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(Ab);
        const MatrixXd& C = es.eigenvectors();
        X = (X * C).eval();
        AX = (AX * C).eval();
        BX = (BX * C).eval();
        lam = es.eigenvalues();
    }

    MatrixXd P, AP, BP;
    bool have_p = false;
    // Pairs are frozen (removed from the active block) only once they are
    // far tighter than the reported tolerance: a frozen pair's leftover
    // residual re-enters the residuals of every later pair, so freezing at
    // the user tolerance would put an uncorrectable floor right at the
    // threshold the later pairs must reach.
    const double freeze_factor = 1e-3;
    int locked = 0;
    int converged = 0;
    VectorXd rn(nb), bn(nb);

    for (int it = 0; it < options.max_iterations; ++it) {
        MatrixXd Rres = AX - BX * lam.asDiagonal();
        rn = Rres.colwise().norm();
        bn = BX.colwise().norm();
        const auto within = [&](int l, double tol) {
            return rn(l) <= tol * bn(l) * (1.0 + std::abs(lam(l)));
        };
        converged = 0;
        while (converged < k && within(converged, options.tol)) ++converged;
        while (locked < converged &&
               within(locked, freeze_factor * options.tol))
            ++locked;
        if (converged >= k)
            return snapshot(X, lam, rn, k, it, matvecs, converged);

        const int na = nb - locked;
        // Columns already within the convergence tolerance stay in the
        // Rayleigh-Ritz basis (their leftover error keeps shrinking, so no
        // residual floor forms under later pairs) but contribute no search
        // direction: their preconditioned residuals are roundoff noise that,
        // once normalized, can make the subspace Gram matrix indefinite.
        std::vector<int> work;
        work.reserve(na);
        for (int i = locked; i < nb; ++i)
            if (!within(i, options.tol)) work.push_back(i);
        const int wa = static_cast<int>(work.size());
        MatrixXd Ract(n, wa);
        for (int j = 0; j < wa; ++j) Ract.col(j) = Rres.col(work[j]);
        MatrixXd W(n, wa);
        if (preconditioner) {
            preconditioner->apply(Ract.data(), wa, W.data());
        } else {
            W = Ract;
        }
        for (int pass = 0; pass < 2; ++pass) {
            W -= X * (BX.transpose() * W);
            if (have_p) W -= P * (BP.transpose() * W);
        }
        MatrixXd BW, AW;
        b_orthonormalize(M, W, BW, nullptr);
        AW = multiply(A, W);
        matvecs += AW.cols();

        const int wc = static_cast<int>(W.cols());
        const int pc = have_p ? static_cast<int>(P.cols()) : 0;
        const int sc = na + wc + pc;
        if (sc < na + 1)
            throw ConvergenceError(
                "eigensolver: search space collapsed at iteration " +
                    std::to_string(it),
                snapshot(X, lam, rn, k, it, matvecs, converged));
        MatrixXd S(n, sc), AS(n, sc), BS(n, sc);
        S.leftCols(na) = X.rightCols(na);
        AS.leftCols(na) = AX.rightCols(na);
        BS.leftCols(na) = BX.rightCols(na);
        S.middleCols(na, wc) = W;
        AS.middleCols(na, wc) = AW;
        BS.middleCols(na, wc) = BW;
        if (pc > 0) {
            S.rightCols(pc) = P;
            AS.rightCols(pc) = AP;
            BS.rightCols(pc) = BP;
        }

        MatrixXd Ab = S.transpose() * AS;
        MatrixXd Bb = S.transpose() * BS;
        Ab = 0.5 * (Ab + Ab.transpose()).eval();
        Bb = 0.5 * (Bb + Bb.transpose()).eval();
        VectorXd ritz_values;
        MatrixXd ritz_vectors;
        if (!rayleigh_ritz(Ab, Bb, ritz_values, ritz_vectors) ||
            ritz_vectors.cols() < na)
            throw ConvergenceError(
                "eigensolver: subspace solve failed at iteration " +
                    std::to_string(it),
                snapshot(X, lam, rn, k, it, matvecs, converged));

        const MatrixXd Cx = ritz_vectors.leftCols(na);
        MatrixXd Xn = S * Cx;
        MatrixXd AXn = AS * Cx;
        MatrixXd BXn = BS * Cx;
        // P keeps directions only for the pairs still being corrected;
        // converged pairs need none, and carrying theirs re-widens every
        // dense block product for no progress.
        MatrixXd Cp(sc - na, wa);
        for (int j = 0; j < wa; ++j)
            Cp.col(j) = Cx.col(work[j] - locked).tail(sc - na);
        MatrixXd Pn = S.rightCols(sc - na) * Cp;
        MatrixXd APn = AS.rightCols(sc - na) * Cp;
        MatrixXd BPn;
        b_orthonormalize(M, Pn, BPn, &APn);

        X.rightCols(na) = Xn;
        AX.rightCols(na) = AXn;
        BX.rightCols(na) = BXn;
        lam.tail(na) = ritz_values.head(na);
        P = std::move(Pn);
        AP = std::move(APn);
        BP = std::move(BPn);
        have_p = P.cols() > 0;
    }

    throw ConvergenceError(
        "eigensolver: converged " + std::to_string(converged) + " of " +
            std::to_string(k) + " pairs within the iteration budget of " +
            std::to_string(options.max_iterations),
        snapshot(X, lam, rn, k, options.max_iterations, matvecs, converged));
}

}  // namespace pairbec
