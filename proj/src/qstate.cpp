#include "entfloor/qstate.hpp"

#include <algorithm>
#include <cmath>

namespace entfloor {

namespace {

int qubits_for_dim(Eigen::Index d) {
    switch (d) {
        case 2: return 1;
        case 4: return 2;
        case 8: return 3;
        case 16: return 4;
        default:
            throw std::invalid_argument("matrix dimension must be 2, 4, 8 or 16");
    }
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

CMat pauli(char letter) {
    CMat m(2, 2);
    switch (letter) {
        case '1':
        case 'i':
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'x':
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'y':
        case 'Y':
            m << complexd(0, 0), complexd(0, -1), complexd(0, 1), complexd(0, 0);
            break;
        case 'z':
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
    }
    return m;
}

CMat pauli_word_matrix(const std::string& word) {
    if (word.empty() || word.size() > 4)
        throw std::invalid_argument("Pauli word must have 1 to 4 letters");
    CMat m = pauli(word[0]);
    for (size_t k = 1; k < word.size(); ++k) m = kron(m, pauli(word[k]));
    return m;
}

Observable Observable::from_word(const std::string& word) {
    return Observable{word, pauli_word_matrix(word)};
}

Observable Observable::from_matrix(CMat m, std::string label) {
    if (m.rows() != m.cols()) throw std::invalid_argument("observable must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("observable must be Hermitian");
    return Observable{std::move(label), std::move(m)};
}

DensityMatrix DensityMatrix::from_matrix(CMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
    int nq = qubits_for_dim(m.rows());
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol)
        throw std::invalid_argument("density matrix not Hermitian (residual " + fmt12(herm) + ")");
    double tr = std::abs(m.trace() - complexd(1.0, 0.0));
    if (tr > kTraceTol)
        throw std::invalid_argument("density matrix trace differs from 1 by " + fmt12(tr));
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < -kPsdTol)
        throw std::invalid_argument("density matrix not positive semidefinite (min eig " + fmt12(lmin) + ")");
    // exact hermitization so downstream eigensolves see a clean input
    CMat sym = 0.5 * (m + m.adjoint());
    return DensityMatrix(std::move(sym), nq);
}

DensityMatrix DensityMatrix::pure(const CVec& psi) {
    double n2 = psi.squaredNorm();
    if (n2 <= 0) throw std::invalid_argument("zero state vector");
    CVec v = psi / std::sqrt(n2);
    return from_matrix(v * v.adjoint());
}

CMat partial_transpose_mask(const CMat& m, int qubits, unsigned mask) {
    Eigen::Index d = m.rows();
    if (d != (Eigen::Index(1) << qubits) || m.cols() != d)
        throw std::invalid_argument("partial transpose: dimension mismatch");
    if (mask >= (1u << qubits)) throw std::invalid_argument("partial transpose: bad qubit mask");
    // qubit i occupies bit (qubits-1-i) of the row index (MSB-first labels)
    unsigned bitmask = 0;
    for (int q = 0; q < qubits; ++q)
        if (mask & (1u << q)) bitmask |= 1u << (qubits - 1 - q);
    CMat out(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            Eigen::Index rr = (r & ~Eigen::Index(bitmask)) | (c & Eigen::Index(bitmask));
            Eigen::Index cc = (c & ~Eigen::Index(bitmask)) | (r & Eigen::Index(bitmask));
            out(rr, cc) = m(r, c);
        }
    }
    return out;
}

CMat partial_transpose(const DensityMatrix& rho, Bipartition cut) {
    if (cut.qubit < 0 || cut.qubit >= rho.qubits())
        throw std::invalid_argument("partial transpose: cut does not match state dimension");
    return partial_transpose_mask(rho.matrix(), rho.qubits(), 1u << cut.qubit);
}

CMat partial_trace_to_qubit(const CMat& m, int qubits, int keep) {
    if (keep < 0 || keep >= qubits) throw std::invalid_argument("partial trace: bad qubit index");
    Eigen::Index d = m.rows();
    int shift = qubits - 1 - keep;
    CMat out = CMat::Zero(2, 2);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            if ((r & ~(Eigen::Index(1) << shift)) != (c & ~(Eigen::Index(1) << shift))) continue;
            out((r >> shift) & 1, (c >> shift) & 1) += m(r, c);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return eigs;
}

double trace_norm_hermitian(const CMat& m) {
    double s = 0.0;
    for (double e : hermitian_eigenvalues(m)) s += std::abs(e);
    return s;
}

double log_negativity(const DensityMatrix& rho, Bipartition cut) {
    return std::log2(trace_norm_hermitian(partial_transpose(rho, cut)));
}

double correlation(const DensityMatrix& rho, const std::string& word) {
    if (static_cast<int>(word.size()) != rho.qubits())
        throw std::invalid_argument("Pauli word '" + word + "' does not match state dimension");
    complexd tr = (pauli_word_matrix(word) * rho.matrix()).trace();
    return tr.real();
}

std::vector<double> correlations(const DensityMatrix& rho, const std::vector<std::string>& words) {
    std::vector<double> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(correlation(rho, w));
    return out;
}

double connected_czz(const DensityMatrix& rho) {
    if (rho.qubits() != 2) throw std::invalid_argument("connected_czz requires a two-qubit state");
    double joint = correlation(rho, "zz");
    CMat a = partial_trace_to_qubit(rho.matrix(), 2, 0);
    CMat b = partial_trace_to_qubit(rho.matrix(), 2, 1);
    double z1 = (a(0, 0) - a(1, 1)).real();
    double z2 = (b(0, 0) - b(1, 1)).real();
    return joint - z1 * z2;
}

double purity_Q(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

double purity_P(const DensityMatrix& rho) {
    if (rho.qubits() != 2) throw std::invalid_argument("purity_P requires a two-qubit state");
    return (4.0 / 3.0) * (purity_Q(rho) - 0.25);
}

double entropy_of_eigenvalues(const std::vector<double>& eigs) {
    double s = 0.0;
    for (double e : eigs) {
        if (e < -kPsdTol) throw std::invalid_argument("entropy: negative eigenvalue " + fmt12(e));
        if (e > kSupportTol) s -= e * std::log2(e);
    }
    return s;
}

double entropy(const DensityMatrix& rho) {
    return entropy_of_eigenvalues(hermitian_eigenvalues(rho.matrix()));
}

double mutual_information(const DensityMatrix& rho) {
    if (rho.qubits() != 2) throw std::invalid_argument("mutual_information requires a two-qubit state");
    double sa = entropy_of_eigenvalues(hermitian_eigenvalues(partial_trace_to_qubit(rho.matrix(), 2, 0)));
    double sb = entropy_of_eigenvalues(hermitian_eigenvalues(partial_trace_to_qubit(rho.matrix(), 2, 1)));
    return sa + sb - entropy(rho);
}

double relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho) {
    if (sigma.dim() != rho.dim()) throw std::invalid_argument("relative_entropy: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<CMat> es_s(sigma.matrix());
    Eigen::SelfAdjointEigenSolver<CMat> es_r(rho.matrix());
    const auto& s = es_s.eigenvalues();
    const auto& r = es_r.eigenvalues();
    // overlap weights |<u_i|v_j>|^2
    CMat u = es_s.eigenvectors();
    CMat v = es_r.eigenvectors();
    CMat ov = u.adjoint() * v;

    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        double si = std::max(0.0, s(i));
        if (si > kSupportTol) acc += si * std::log2(si);
    }
    for (Eigen::Index j = 0; j < r.size(); ++j) {
        double rj = std::max(0.0, r(j));
        double w = 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            double si = std::max(0.0, s(i));
            if (si > kSupportTol) w += si * std::norm(ov(i, j));
        }
        if (rj <= kSupportTol) {
            if (w > 1e-9) return kInf;  // support violation
            continue;
        }
        acc -= w * std::log2(rj);
    }
    return std::max(0.0, acc);
}

DensityMatrix twirl(const DensityMatrix& rho, TwirlMode mode) {
    const CMat& m = rho.matrix();
    switch (mode) {
        case TwirlMode::ZzPinch: {
            if (rho.qubits() != 2) throw std::invalid_argument("zz-pinch acts on two qubits");
            CMat z1 = pauli_word_matrix("z1");
            CMat z2 = pauli_word_matrix("1z");
            CMat zz = pauli_word_matrix("zz");
            CMat out = 0.25 * (m + z2 * m * z2 + z1 * m * z1 + zz * m * zz);
            return DensityMatrix::from_matrix(out);
        }
        case TwirlMode::BellTwirl: {
            if (rho.qubits() != 2) throw std::invalid_argument("bell-twirl acts on two qubits");
            CMat out = CMat::Zero(4, 4);
            for (char c : std::string("1xyz")) {
                CMat u = pauli_word_matrix(std::string(2, c));
                out += 0.25 * (u * m * u);
            }
            return DensityMatrix::from_matrix(out);
        }
        case TwirlMode::GhzSymmetrize: {
            if (rho.qubits() != 3) throw std::invalid_argument("ghz-symmetrize acts on three qubits");
            CMat out = CMat::Zero(8, 8);
            const char* zz_words[4] = {"111", "zz1", "1zz", "z1z"};
            CMat xxx = pauli_word_matrix("xxx");
            for (const char* w : zz_words) {
                CMat u = pauli_word_matrix(w);
                CMat conj = u * m * u;
                out += 0.125 * conj;
                out += 0.125 * (xxx * conj * xxx);
            }
            return DensityMatrix::from_matrix(out);
        }
    }
    throw std::logic_error("unreachable twirl mode");
}

SampleFamily SampleFamily::parse(const std::string& name, int qubits) {
    SampleFamily f;
    f.qubits = qubits;
    if (name == "haar-pure") f.kind = SampleKind::HaarPure;
    else if (name == "hilbert-schmidt-mixed") f.kind = SampleKind::HilbertSchmidtMixed;
    else if (name == "pure-product") f.kind = SampleKind::PureProduct;
    else if (name == "separable-mixture") f.kind = SampleKind::SeparableMixture;
    else throw std::invalid_argument("unknown sample family '" + name + "'");
    return f;
}

std::string SampleFamily::name() const {
    switch (kind) {
        case SampleKind::HaarPure: return "haar-pure";
        case SampleKind::HilbertSchmidtMixed: return "hilbert-schmidt-mixed";
        case SampleKind::PureProduct: return "pure-product";
        case SampleKind::SeparableMixture: return "separable-mixture";
    }
    return "?";
}

namespace {

CVec haar_vector(Rng& rng, int dim) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.cgauss();
    v /= v.norm();
    return v;
}

}  // namespace

DensityMatrix sample(const SampleFamily& family, uint64_t seed) {
    if (family.qubits < 1 || family.qubits > 3)
        throw std::invalid_argument("sampler supports 1 to 3 qubits");
    if (family.mixture_k < 1) throw std::invalid_argument("mixture size must be >= 1");
    int d = 1 << family.qubits;
    Rng rng(seed, static_cast<uint64_t>(family.kind) * 4u + family.qubits);
    switch (family.kind) {
        case SampleKind::HaarPure: {
            CVec v = haar_vector(rng, d);
            return DensityMatrix::from_matrix(v * v.adjoint());
        }
        case SampleKind::HilbertSchmidtMixed: {
            // Ginibre with square ancilla: rho = G G^dag / Tr
            CMat g(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) g(i, j) = rng.cgauss();
            CMat rho = g * g.adjoint();
            rho /= rho.trace().real();
            return DensityMatrix::from_matrix(rho);
        }
        case SampleKind::PureProduct: {
            CVec v = haar_vector(rng, 2);
            for (int q = 1; q < family.qubits; ++q) {
                CVec w = haar_vector(rng, 2);
                CVec t(v.size() * 2);
                for (Eigen::Index i = 0; i < v.size(); ++i)
                    for (int j = 0; j < 2; ++j) t(i * 2 + j) = v(i) * w(j);
                v = t;
            }
            return DensityMatrix::from_matrix(v * v.adjoint());
        }
        case SampleKind::SeparableMixture: {
            int k = family.mixture_k;
            std::vector<double> w(k);
            double tot = 0.0;
            for (int i = 0; i < k; ++i) {
                w[i] = -std::log(rng.uniform());  // Dirichlet(1,...,1)
                tot += w[i];
            }
            CMat rho = CMat::Zero(d, d);
            for (int i = 0; i < k; ++i) {
                CVec v = haar_vector(rng, 2);
                for (int q = 1; q < family.qubits; ++q) {
                    CVec u = haar_vector(rng, 2);
                    CVec t(v.size() * 2);
                    for (Eigen::Index a = 0; a < v.size(); ++a)
                        for (int b = 0; b < 2; ++b) t(a * 2 + b) = v(a) * u(b);
                    v = t;
                }
                rho += (w[i] / tot) * (v * v.adjoint());
            }
            return DensityMatrix::from_matrix(rho);
        }
    }
    throw std::logic_error("unreachable sample kind");
}

DensityMatrix bell_phi_plus() {
    CVec v = CVec::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return DensityMatrix::pure(v);
}

DensityMatrix singlet() {
    CVec v = CVec::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return DensityMatrix::pure(v);
}

DensityMatrix ghz3() {
    CVec v = CVec::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    return DensityMatrix::pure(v);
}

DensityMatrix maximally_mixed(int qubits) {
    int d = 1 << qubits;
    return DensityMatrix::from_matrix(CMat::Identity(d, d) / double(d));
}

}  // namespace entfloor
