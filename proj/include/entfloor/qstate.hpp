// qstate.hpp — density matrices over 1-3 qubits: Hermitian operator algebra,
// entanglement and entropy functionals, symmetrization channels and seeded
// random-state samplers.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entfloor/common.hpp"

namespace entfloor {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

CMat pauli(char letter);  // '1', 'x', 'y', 'z'

// Tensor product of single-qubit Paulis named by a word like "xz" or "1zz".
CMat pauli_word_matrix(const std::string& word);

// A Pauli word together with its matrix.
struct Observable {
    std::string label;
    CMat matrix;

    static Observable from_word(const std::string& word);
    static Observable from_matrix(CMat m, std::string label = "custom");
};

// Which single qubit is transposed against the rest (0-based, MSB first).
struct Bipartition {
    int qubit = 1;  // default: subsystem B of a two-qubit state

    static Bipartition cut(int qubit) { return Bipartition{qubit}; }
};

class DensityMatrix {
public:
    // Validates hermiticity, unit trace and positivity before accepting.
    static DensityMatrix from_matrix(CMat m);

    static DensityMatrix pure(const CVec& psi);

    const CMat& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    int qubits() const { return qubits_; }

private:
    DensityMatrix(CMat m, int qubits) : m_(std::move(m)), qubits_(qubits) {}
    CMat m_;
    int qubits_;
};

// --- operator algebra -------------------------------------------------------

// Transpose the qubits selected by `mask` (bit i set = qubit i, MSB first).
CMat partial_transpose_mask(const CMat& m, int qubits, unsigned mask);

CMat partial_transpose(const DensityMatrix& rho, Bipartition cut);

// Reduced state of one qubit.
CMat partial_trace_to_qubit(const CMat& m, int qubits, int keep);

std::vector<double> hermitian_eigenvalues(const CMat& m);

double trace_norm_hermitian(const CMat& m);

// --- functionals -------------------------------------------------------------

// log2 of the trace norm of the partial transpose; 0 iff PPT.
double log_negativity(const DensityMatrix& rho, Bipartition cut = Bipartition{});

// Tr[A rho] for each Pauli word; values are real within 1e-12.
std::vector<double> correlations(const DensityMatrix& rho, const std::vector<std::string>& words);

double correlation(const DensityMatrix& rho, const std::string& word);

// Tr[rho (sz x sz)] - Tr[rho_A sz] Tr[rho_B sz] (two qubits).
double connected_czz(const DensityMatrix& rho);

double purity_Q(const DensityMatrix& rho);            // Tr rho^2
double purity_P(const DensityMatrix& rho);            // (4/3)(Tr rho^2 - 1/4), two qubits

double entropy(const DensityMatrix& rho);             // von Neumann entropy, bits
double entropy_of_eigenvalues(const std::vector<double>& eigs);

// S(rho_A) + S(rho_B) - S(rho_AB) for a two-qubit state.
double mutual_information(const DensityMatrix& rho);

// S(sigma || rho) in bits; +infinity when supp(sigma) is not inside supp(rho).
double relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho);

// --- symmetrization channels -------------------------------------------------

enum class TwirlMode { ZzPinch, BellTwirl, GhzSymmetrize };

// ZzPinch / BellTwirl act on two qubits, GhzSymmetrize on three.
DensityMatrix twirl(const DensityMatrix& rho, TwirlMode mode);

// --- samplers ------------------------------------------------------------------

enum class SampleKind { HaarPure, HilbertSchmidtMixed, PureProduct, SeparableMixture };

struct SampleFamily {
    SampleKind kind = SampleKind::HilbertSchmidtMixed;
    int qubits = 2;
    int mixture_k = 16;  // component count for SeparableMixture

    static SampleFamily parse(const std::string& name, int qubits = 2);
    std::string name() const;
};

// Deterministic in (family, seed); PureProduct and SeparableMixture outputs
// are separable by construction.
DensityMatrix sample(const SampleFamily& family, uint64_t seed);

// --- convenience states --------------------------------------------------------

DensityMatrix bell_phi_plus();   // (|00>+|11>)/sqrt2
DensityMatrix singlet();         // (|01>-|10>)/sqrt2
DensityMatrix ghz3();            // (|000>+|111>)/sqrt2
DensityMatrix maximally_mixed(int qubits);

}  // namespace entfloor
