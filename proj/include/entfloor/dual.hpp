// dual.hpp — SDP-duality certificate machinery: representation, verification
// and evaluation of (M, nu) entanglement lower-bound certificates, plus the
// three built-ins (xxzz, xyz, two-copy purity).
#pragma once

#include <string>
#include <vector>

#include "entfloor/qstate.hpp"

namespace entfloor {

// A Hermitian M with unit operator norm and multipliers nu such that
// M^Gamma - sum_i nu_i A_i is positive semidefinite. Every state consistent
// with measured values a_i then obeys E_N >= log2+(sum nu_i a_i).
struct DualCertificate {
    std::string name = "custom";
    CMat M;                               // dim 4, or 16 for two-copy
    std::vector<Observable> observables;  // same dimension as M
    std::vector<double> nus;
    bool two_copy = false;
};

struct CertificateReport {
    double operator_norm = 0.0;
    double min_eig_slack = 0.0;
    bool valid = false;
};

// Partial transpose used by certificates: qubit B for dim 4; the (B, B') pair
// for two-copy dim 16 in A,B,A',B' ordering.
CMat certificate_gamma(const CMat& m, bool two_copy);

// Exact eigenvalue-based report; a failing certificate is never rounded valid.
CertificateReport verify_certificate(const DualCertificate& cert);

// log2+(sum nu_i a_i); refuses invalid certificates.
double bound_from_certificate(const DualCertificate& cert, const std::vector<double>& values);

struct TwoCopyOperators {
    CMat Z;       // zz11 - 1zz1: Tr[(rho x rho) Z] = connected Czz
    CMat Zprime;  // (Z + FZF)/2
    CMat F;       // copy flip: Tr[(rho x rho) F] = Tr rho^2
};

TwoCopyOperators two_copy_operators();

DualCertificate xxzz_certificate();   // observables (1, xx, zz), nu = (0, 1, 1)
DualCertificate xyz_certificate();    // observables (1, xx, yy, zz), tight on the singlet ray
DualCertificate purity_certificate(); // two-copy, observables (Z', F), nu = (1/2, 1)

DualCertificate builtin_certificate(const std::string& name);

}  // namespace entfloor
