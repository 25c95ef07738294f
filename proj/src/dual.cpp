#include "entfloor/dual.hpp"

#include <cmath>

namespace entfloor {

CMat certificate_gamma(const CMat& m, bool two_copy) {
    if (two_copy) {
        if (m.rows() != 16) throw std::invalid_argument("two-copy certificate must be 16x16");
        return partial_transpose_mask(m, 4, (1u << 1) | (1u << 3));  // B and B'
    }
    if (m.rows() != 4) throw std::invalid_argument("certificate must be 4x4");
    return partial_transpose_mask(m, 2, 1u << 1);
}

CertificateReport verify_certificate(const DualCertificate& cert) {
    if (cert.observables.size() != cert.nus.size())
        throw std::invalid_argument("certificate: observables and multipliers differ in length");
    for (const auto& ob : cert.observables)
        if (ob.matrix.rows() != cert.M.rows())
            throw std::invalid_argument("certificate: observable dimension mismatch");

    CertificateReport rep;
    double norm = 0.0;
    for (double e : hermitian_eigenvalues(cert.M)) norm = std::max(norm, std::abs(e));
    rep.operator_norm = norm;

    CMat slack = certificate_gamma(cert.M, cert.two_copy);
    for (size_t i = 0; i < cert.nus.size(); ++i) slack -= cert.nus[i] * cert.observables[i].matrix;
    double min_eig = kInf;
    for (double e : hermitian_eigenvalues(slack)) min_eig = std::min(min_eig, e);
    rep.min_eig_slack = min_eig;
    rep.valid = std::abs(norm - 1.0) <= 1e-9 && min_eig >= -kPsdTol;
    return rep;
}

double bound_from_certificate(const DualCertificate& cert, const std::vector<double>& values) {
    CertificateReport rep = verify_certificate(cert);
    if (!rep.valid)
        throw std::invalid_argument("certificate '" + cert.name + "' failed verification (norm " +
                                    fmt12(rep.operator_norm) + ", slack " + fmt12(rep.min_eig_slack) + ")");
    if (values.size() != cert.nus.size())
        throw std::invalid_argument("expected " + std::to_string(cert.nus.size()) + " measured values");
    double acc = 0.0;
    for (size_t i = 0; i < values.size(); ++i) acc += cert.nus[i] * values[i];
    return log2_plus(acc);
}

TwoCopyOperators two_copy_operators() {
    TwoCopyOperators ops;
    ops.Z = pauli_word_matrix("zz11") - pauli_word_matrix("1zz1");
    // F swaps copy (A,B) with copy (A',B'): |a b a' b'> -> |a' b' a b>
    ops.F = CMat::Zero(16, 16);
    for (int i = 0; i < 16; ++i) {
        int hi = (i >> 2) & 3, lo = i & 3;
        ops.F((lo << 2) | hi, i) = 1.0;
    }
    ops.Zprime = 0.5 * (ops.Z + ops.F * ops.Z * ops.F);
    return ops;
}

DualCertificate xxzz_certificate() {
    DualCertificate c;
    c.name = "xxzz";
    c.M = CMat::Zero(4, 4);
    c.M(0, 0) = c.M(3, 3) = 1.0;
    c.M(1, 2) = c.M(2, 1) = 1.0;
    c.observables = {Observable::from_word("11"), Observable::from_word("xx"),
                     Observable::from_word("zz")};
    c.nus = {0.0, 1.0, 1.0};
    return c;
}

DualCertificate xyz_certificate() {
    DualCertificate c;
    c.name = "xyz";
    // M^Gamma equals sum nu_i A_i exactly; tight on the all-negative ray where
    // the three-correlator floor is attained by the singlet.
    c.M = 0.5 * (CMat::Identity(4, 4) - pauli_word_matrix("xx") + pauli_word_matrix("yy") -
                 pauli_word_matrix("zz"));
    c.observables = {Observable::from_word("11"), Observable::from_word("xx"),
                     Observable::from_word("yy"), Observable::from_word("zz")};
    c.nus = {0.5, -0.5, -0.5, -0.5};
    return c;
}

DualCertificate purity_certificate() {
    TwoCopyOperators ops = two_copy_operators();
    // The dual condition is M^Gamma >= Z'/2 + F. Completing the right side
    // with twice the projector onto its negative eigenvector makes the slack
    // exactly PSD, and the partial transpose of that completed operator has
    // unit norm, so it serves as M.
    CMat W = 0.5 * ops.Zprime + ops.F;
    CVec v = CVec::Zero(16);
    v(6) = 1.0 / std::sqrt(2.0);   // |0110> - |1001>, the -2 eigenvector of W
    v(9) = -1.0 / std::sqrt(2.0);
    CMat X = W + 2.0 * (v * v.adjoint());
    DualCertificate c;
    c.name = "purity";
    c.two_copy = true;
    c.M = certificate_gamma(X, true);
    c.observables = {Observable::from_matrix(ops.Zprime, "Z'"), Observable::from_matrix(ops.F, "F")};
    c.nus = {0.5, 1.0};
    return c;
}

DualCertificate builtin_certificate(const std::string& name) {
    if (name == "xxzz") return xxzz_certificate();
    if (name == "xyz") return xyz_certificate();
    if (name == "purity") return purity_certificate();
    throw std::invalid_argument("unknown built-in certificate '" + name + "'");
}

}  // namespace entfloor
